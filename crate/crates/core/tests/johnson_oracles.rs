use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use torelli_core::johnson::{
    f_map, handle_mix, inner_endo, johnson_tau, symplectic_moves, tau_tilde, validate_endo, GroupEndo, TorelliEndo,
    ValidationMode,
};
use torelli_core::linalg::IntMatrix;
use torelli_core::magnus::{Letter, Word};
use torelli_core::sp_modules::{build_standard_maps, wedge_basis};
use torelli_core::Error;

const G: usize = 3;

fn endo(text: &str) -> GroupEndo {
    GroupEndo::parse(text).unwrap()
}

fn seed() -> GroupEndo {
    endo("genus 3\nb1 -> b1 [a2, a3]\nb2 -> b2 [a3, a1]\nb3 -> b3 [a1, a2]\n")
}

fn separating_twist() -> GroupEndo {
    endo("genus 3\na1 -> [a1, b1] a1 [a1, b1]^-1\nb1 -> [a1, b1] b1 [a1, b1]^-1\n")
}

fn relaxed(phi: &GroupEndo, m: usize) -> TorelliEndo {
    validate_endo(phi, ValidationMode::Relaxed(m)).unwrap()
}

fn strict(phi: &GroupEndo) -> TorelliEndo {
    validate_endo(phi, ValidationMode::Strict).unwrap()
}

fn tau(phi: &TorelliEndo) -> Vec<i64> {
    johnson_tau(phi).unwrap().iter().map(|x| x.to_i64().unwrap()).collect()
}

/// Coefficient of `X_i X_j` (`i != j`) in the Magnus expansion: each letter
/// contributes its sign linearly, so only ordered pairs of letters count.
fn quadratic_coefficient(w: &Word, i: u8, j: u8) -> i64 {
    let mut seen_i = 0i64;
    let mut total = 0i64;
    for l in w.letters() {
        let s = if l.inverse { -1 } else { 1 };
        if l.generator == j {
            total += seen_i * s;
        }
        if l.generator == i {
            seen_i += s;
        }
    }
    total
}

/// Pairs `i < j` of `0..2g`, minus the eliminated pair `(g-1, 2g-1)`.
fn gr2_pairs(g: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..2 * g {
        for j in i + 1..2 * g {
            if (i, j) != (g - 1, 2 * g - 1) {
                v.push((i, j));
            }
        }
    }
    v
}

/// Λ² coordinates modulo `q`, by subtracting the multiple of `q` that clears
/// the eliminated pair.
fn gr2_reduce(g: usize, w2: &dyn Fn(usize, usize) -> i64) -> Vec<i64> {
    let last = w2(g - 1, 2 * g - 1);
    gr2_pairs(g)
        .iter()
        .map(|&(i, j)| w2(i, j) - if j == i + g { last } else { 0 })
        .collect()
}

fn epsilon1_oracle(phi: &GroupEndo, x: usize) -> Vec<i64> {
    let g = phi.genus();
    let gx = Word::generator(g, x as u8);
    let w = phi.image(x as u8).mul(&gx.inverse());
    gr2_reduce(g, &|i, j| quadratic_coefficient(&w, i as u8, j as u8))
}

fn tau_tilde_oracle(phi: &GroupEndo) -> Vec<i64> {
    let g = phi.genus();
    let r2 = gr2_pairs(g).len();
    let mut out = vec![0i64; 2 * g * r2];
    for j in 0..g {
        let eb = epsilon1_oracle(phi, g + j);
        let ea = epsilon1_oracle(phi, j);
        for k in 0..r2 {
            out[j * r2 + k] += eb[k];
            out[(g + j) * r2 + k] -= ea[k];
        }
    }
    out
}

/// `f(x∧y∧z) = x⊗(y∧z) + y⊗(z∧x) + z⊗(x∧y)`, reduced modulo `q` per factor.
fn f_oracle(g: usize) -> Vec<Vec<i64>> {
    let r2 = gr2_pairs(g).len();
    wedge_basis(2 * g, 3)
        .iter()
        .map(|t| {
            let mut col = vec![0i64; 2 * g * r2];
            for (u, v, w) in [(t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])] {
                // v∧w at the pair i < j
                let red = gr2_reduce(g, &|i, j| i64::from((i, j) == (v, w)) - i64::from((i, j) == (w, v)));
                for (k, x) in red.into_iter().enumerate() {
                    col[u * r2 + k] += x;
                }
            }
            col
        })
        .collect()
}

fn q_wedge(g: usize, x: usize) -> Vec<i64> {
    let basis = wedge_basis(2 * g, 3);
    let mut v = vec![0i64; basis.len()];
    for j in 0..g {
        let mut idx = [j, g + j, x];
        if idx.iter().collect::<HashSet<_>>().len() < 3 {
            continue;
        }
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        let pos = basis.iter().position(|s| s[..] == idx[..]).unwrap();
        v[pos] += sign;
    }
    v
}

fn apply_oracle(cols: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; cols[0].len()];
    for (c, &s) in cols.iter().zip(x) {
        for (o, v) in out.iter_mut().zip(c) {
            *o += s * v;
        }
    }
    out
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap()).collect()
}

#[test]
fn validation_examples() {
    assert!(validate_endo(&GroupEndo::identity(G), ValidationMode::Strict).is_ok());
    let w = Word::parse(G, "a2 b1^-1 a3 a3").unwrap();
    assert!(validate_endo(&inner_endo(&w), ValidationMode::Strict).is_ok());
    let bad = endo("genus 3\na1 -> a2\n");
    assert!(matches!(
        validate_endo(&bad, ValidationMode::Strict),
        Err(Error::NotTorelli(_))
    ));
    assert!(matches!(
        validate_endo(&bad, ValidationMode::Relaxed(3)),
        Err(Error::NotTorelli(_))
    ));

    let hc = endo("genus 3\na1 -> a1 [a2, b2]\n");
    assert!(validate_endo(&hc, ValidationMode::Strict).is_err());
    assert!(validate_endo(&hc, ValidationMode::Relaxed(2)).is_ok());
    assert!(validate_endo(&hc, ValidationMode::Relaxed(3)).is_err());

    assert!(validate_endo(&seed(), ValidationMode::Strict).is_err());
    let s = relaxed(&seed(), 3);
    assert_eq!(s.validated_to_degree(), Some(3));
    assert!(s.is_relaxed());
    let t = strict(&separating_twist());
    assert_eq!(t.validated_to_degree(), None);
}

#[test]
fn mode_parsing() {
    assert_eq!(ValidationMode::parse("strict").unwrap(), ValidationMode::Strict);
    assert_eq!(ValidationMode::parse("relaxed 4").unwrap(), ValidationMode::Relaxed(4));
    assert!(ValidationMode::parse("relaxed 1").is_err());
    assert!(ValidationMode::parse("loose").is_err());
}

#[test]
fn f_matches_oracle() {
    for g in 1..=3 {
        let f = f_map(g).unwrap();
        let want = f_oracle(g);
        assert_eq!(f.matrix.cols(), want.len());
        for (c, col) in want.iter().enumerate() {
            assert_eq!(to_i64(&f.matrix.column(c)), *col, "g={g} column {c}");
        }
    }
    assert_eq!(f_map(1).unwrap().matrix.cols(), 0);
}

#[test]
fn tau_tilde_matches_oracle() {
    let examples = [
        relaxed(&endo("genus 3\na1 -> a1 [a2, b2]\n"), 2),
        relaxed(&seed(), 3),
        strict(&separating_twist()),
        strict(&inner_endo(&Word::parse(G, "a1").unwrap())),
        strict(&inner_endo(&Word::parse(G, "b2 a3^-1 b1").unwrap())),
    ];
    for phi in &examples {
        assert_eq!(to_i64(&tau_tilde(phi).unwrap()), tau_tilde_oracle(phi.endo()));
    }
}

#[test]
fn handle_commutator_tau_tilde_and_failure() {
    let phi = relaxed(&endo("genus 3\na1 -> a1 [a2, b2]\n"), 2);
    let t = tau_tilde(&phi).unwrap();
    let r2 = gr2_pairs(G).len();
    let k = gr2_pairs(G).iter().position(|&p| p == (1, 4)).unwrap();
    let mut want = vec![0i64; 2 * G * r2];
    want[G * r2 + k] = -1;
    assert_eq!(to_i64(&t), want);
    assert_eq!(johnson_tau(&phi), Err(Error::NotInImage));
}

#[test]
fn seed_tau_is_a1_a2_a3() {
    let t = tau(&relaxed(&seed(), 3));
    let pos = wedge_basis(2 * G, 3).iter().position(|s| s[..] == [0, 1, 2]).unwrap();
    let mut want = vec![0i64; 20];
    want[pos] = 1;
    assert_eq!(t, want);
}

#[test]
fn identity_and_separating_twist_have_zero_tau() {
    assert!(tau(&strict(&GroupEndo::identity(G))).iter().all(|&x| x == 0));
    assert!(tau(&strict(&separating_twist())).iter().all(|&x| x == 0));
}

#[test]
fn inner_generators_give_minus_q_wedge() {
    // f(q∧x) = -tau_tilde(inner x) since the a_x ⊗ q term dies in Gr²
    for x in 0..2 * G {
        let phi = strict(&inner_endo(&Word::generator(G, x as u8)));
        let t = tau(&phi);
        let want: Vec<i64> = q_wedge(G, x).iter().map(|v| -v).collect();
        assert_eq!(t, want, "x={x}");
        let p = build_standard_maps(G)
            .unwrap()
            .p
            .apply(&johnson_tau(&phi).unwrap())
            .unwrap();
        assert!(p.iter().all(Zero::is_zero));
    }
}

#[test]
fn tau_factors_through_f_oracle() {
    let fo = f_oracle(G);
    let phis = [relaxed(&seed(), 3), strict(&separating_twist())];
    for phi in &phis {
        assert_eq!(apply_oracle(&fo, &tau(phi)), tau_tilde_oracle(phi.endo()));
    }
}

#[test]
fn tau_is_additive() {
    let w1 = Word::parse(G, "a2 b3").unwrap();
    let w2 = Word::parse(G, "b1^-1 a1").unwrap();
    let pairs = [
        (seed(), inner_endo(&w1)),
        (inner_endo(&w2), seed()),
        (seed(), seed()),
        (separating_twist(), symplectic_moves(G).unwrap()[4].conjugate(&seed())),
    ];
    for (p, q) in &pairs {
        let sum: Vec<i64> = tau(&relaxed(p, 3))
            .iter()
            .zip(tau(&relaxed(q, 3)))
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(tau(&relaxed(&p.compose(q), 3)), sum);
    }
}

#[test]
fn tau_is_equivariant_under_moves() {
    let phis = [
        seed(),
        separating_twist(),
        inner_endo(&Word::parse(G, "a1 b3").unwrap()),
    ];
    let mut count = 0;
    for m in symplectic_moves(G).unwrap() {
        let l3 = m.on_lambda3();
        for phi in &phis {
            let before = johnson_tau(&relaxed(phi, 3)).unwrap();
            let after = johnson_tau(&relaxed(&m.conjugate(phi), 3)).unwrap();
            assert_eq!(after, l3.mul_vec(&before).unwrap(), "{}", m.label);
            count += 1;
        }
    }
    assert!(count >= 10);
}

#[test]
fn conjugates_of_strict_endos_stay_strict() {
    let m = handle_mix(G, 2).unwrap();
    let phi = m.conjugate(&separating_twist());
    assert!(validate_endo(&phi, ValidationMode::Strict).is_ok());
}

#[test]
fn move_matrices_generate_sp4_mod_two() {
    let g = 2;
    let n = 2 * g;
    let red = |s: &IntMatrix| -> Vec<u8> {
        (0..n * n)
            .map(|k| (s[(k / n, k % n)].clone() & BigInt::from(1)).to_u8().unwrap())
            .collect()
    };
    let gens: Vec<Vec<u8>> = symplectic_moves(g).unwrap().iter().map(|m| red(m.matrix())).collect();
    let id = red(&IntMatrix::identity(n));
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in &gens {
            let y: Vec<u8> = (0..n * n)
                .map(|k| (0..n).fold(0, |acc, t| acc ^ (s[(k / n) * n + t] & x[t * n + k % n])))
                .collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    assert_eq!(seen.len(), 720);
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..2 * G as u8, any::<bool>()), 0..max_len)
        .prop_map(|ls| Word::from_letters(G, ls.into_iter().map(|(g, i)| Letter::new(g, i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_tau_depends_on_abelianization(w in word_strategy(8)) {
        let phi = strict(&inner_endo(&w));
        let ab = to_i64(&w.abelianization());
        let mut want = vec![0i64; 20];
        for (x, c) in ab.iter().enumerate() {
            for (o, v) in want.iter_mut().zip(q_wedge(G, x)) {
                *o -= c * v;
            }
        }
        prop_assert_eq!(tau(&phi), want);
    }
}
