use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use torelli_core::finite_coh::{
    bockstein_check, h1_bruteforce, invariants_mod_p, sp_invariants_mod_p, special_linear_2, FiniteGroupTable,
    FiniteModule,
};
use torelli_core::linalg::IntMatrix;
use torelli_core::sp_modules::ModuleKind;
use torelli_core::Error;

type Vector = Vec<i64>;

fn act(a: &IntMatrix, v: &[i64], n: i64) -> Vector {
    (0..a.rows())
        .map(|i| {
            let s: i64 = (0..a.cols()).map(|j| a[(i, j)].to_i64().unwrap() * v[j]).sum();
            s.rem_euclid(n)
        })
        .collect()
}

fn add(u: &[i64], v: &[i64], n: i64) -> Vector {
    u.iter().zip(v).map(|(a, b)| (a + b).rem_euclid(n)).collect()
}

fn all_vectors(rank: usize, n: i64) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vector| {
                (0..n).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `(|Z¹|, |B¹|, exponent of Z¹/B¹)` by enumerating values on `gens`,
/// extending along the Cayley graph, and checking the cocycle identity on
/// every pair.
fn h1_oracle(group: &FiniteGroupTable, module: &FiniteModule, gens: &[usize]) -> (usize, usize, usize) {
    let n = module.modulus() as i64;
    let r = module.rank();
    let ord = group.order();
    let vectors = all_vectors(r, n);
    let a = |x: usize| module.action(x);
    let mut cocycles: Vec<Vec<Vector>> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut f: Vec<Option<Vector>> = vec![None; ord];
        f[group.identity()] = Some(vec![0; r]);
        let mut queue = VecDeque::from([group.identity()]);
        let mut ok = true;
        while let Some(x) = queue.pop_front() {
            for (t, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                let val = add(f[x].as_ref().unwrap(), &act(a(x), &vectors[choice[t]], n), n);
                match &f[y] {
                    None => {
                        f[y] = Some(val);
                        queue.push_back(y);
                    }
                    Some(old) => ok &= *old == val,
                }
            }
        }
        let f: Vec<Vector> = f.into_iter().map(Option::unwrap).collect();
        if ok {
            ok = (0..ord).all(|g| (0..ord).all(|h| f[group.mul(g, h)] == add(&f[g], &act(a(g), &f[h], n), n)));
        }
        if ok {
            cocycles.push(f);
        }
        let mut t = 0;
        while t < choice.len() {
            choice[t] += 1;
            if choice[t] < vectors.len() {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
        if t == choice.len() {
            break;
        }
    }
    let boundaries: HashSet<Vec<Vector>> = vectors
        .iter()
        .map(|v| {
            (0..ord)
                .map(|g| add(&act(a(g), v, n), &v.iter().map(|x| -x).collect::<Vec<_>>(), n))
                .collect()
        })
        .collect();
    let mut exponent = 1;
    for f in &cocycles {
        let mut m = 1;
        loop {
            let mf: Vec<Vector> = f
                .iter()
                .map(|v| v.iter().map(|x| (x * m).rem_euclid(n)).collect())
                .collect();
            if boundaries.contains(&mf) {
                break;
            }
            m += 1;
        }
        exponent = num_integer::lcm(exponent, m as usize);
    }
    (cocycles.len(), boundaries.len(), exponent)
}

fn check_against_oracle(group: &FiniteGroupTable, module: &FiniteModule, gens: &[usize]) {
    let h1 = h1_bruteforce(group, module).unwrap();
    let (z, b, e) = h1_oracle(group, module, gens);
    assert_eq!(z % b, 0);
    assert_eq!(h1.order(), BigInt::from(z / b), "order");
    assert_eq!(h1.exponent(), BigInt::from(e), "exponent");
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn negation(group: &FiniteGroupTable, modulus: u64, rank: usize, negate: impl Fn(usize) -> bool) -> FiniteModule {
    FiniteModule::sign_character(group, modulus, rank, negate).unwrap()
}

/// Dihedral group of order 8 on `Z²`: rotation by a quarter turn and a
/// reflection, so the half turn is central and acts as `-1`.
fn d4_module(modulus: u64) -> (FiniteGroupTable, FiniteModule) {
    let g = FiniteGroupTable::dihedral(4).unwrap();
    let rot = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
    let refl = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
    let m = FiniteModule::from_generators(&g, modulus, 2, &[(1, rot), (4, refl)]).unwrap();
    (g, m)
}

#[test]
fn group_tables() {
    let c = FiniteGroupTable::cyclic(5).unwrap();
    assert_eq!(c.order(), 5);
    assert_eq!(c.inverse(2), 3);
    let d = FiniteGroupTable::dihedral(4).unwrap();
    assert_eq!(d.order(), 8);
    assert!(d.is_central(2));
    assert!(!d.is_central(1));
    assert_eq!(FiniteGroupTable::parse(&d.to_text()).unwrap(), d);
    let (sl, elems) = special_linear_2(4).unwrap();
    assert_eq!(sl.order(), 48);
    let minus = elems
        .iter()
        .position(|m| *m == IntMatrix::from_i64(&[&[3, 0], &[0, 3]]))
        .unwrap();
    assert!(sl.is_central(minus));
    assert_eq!(special_linear_2(2).unwrap().0.order(), 6);
    assert!(FiniteGroupTable::parse("order 2\n0 1\n1 1\n").is_err());
    assert!(FiniteGroupTable::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]]).is_err());
}

#[test]
fn invariants_examples() {
    let id = IntMatrix::identity(3);
    assert_eq!(invariants_mod_p(&[id.clone(), id], 3, 2).unwrap().len(), 3);
    let s = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
    let t = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
    assert!(invariants_mod_p(&[s, t], 2, 2).unwrap().is_empty());
    assert!(matches!(invariants_mod_p(&[], 2, 4), Err(Error::InvalidModulus(4))));
}

#[test]
fn sp_mod_two_invariants_vanish() {
    assert!(sp_invariants_mod_p(1, ModuleKind::H, 2).unwrap().is_empty());
    for g in 2..=3 {
        for kind in [ModuleKind::H, ModuleKind::Lambda3, ModuleKind::LmodH] {
            assert!(sp_invariants_mod_p(g, kind, 2).unwrap().is_empty(), "g={g} {kind:?}");
        }
    }
    assert!(sp_invariants_mod_p(3, ModuleKind::Gr2, 2).is_err());
}

#[test]
fn h1_spec_examples() {
    let trivial = FiniteGroupTable::cyclic(1).unwrap();
    let m = FiniteModule::trivial(&trivial, 4, 2).unwrap();
    assert!(h1_bruteforce(&trivial, &m).unwrap().is_trivial());
    let c2 = FiniteGroupTable::cyclic(2).unwrap();
    for k in 1..=4 {
        let m = negation(&c2, 1 << k, 1, |x| x == 1);
        assert_eq!(h1_bruteforce(&c2, &m).unwrap().divisors(), vec![int(2)], "k={k}");
    }
}

#[test]
fn h1_matches_enumeration() {
    let c2 = FiniteGroupTable::cyclic(2).unwrap();
    for (n, r) in [(4u64, 1usize), (8, 1), (16, 1), (4, 2), (8, 2), (6, 1), (9, 1)] {
        check_against_oracle(&c2, &negation(&c2, n, r, |x| x == 1), &[1]);
    }
    let c6 = FiniteGroupTable::cyclic(6).unwrap();
    check_against_oracle(&c6, &FiniteModule::trivial(&c6, 4, 1).unwrap(), &[1]);
    check_against_oracle(&c6, &negation(&c6, 8, 1, |x| x % 2 == 1), &[1]);
    for n in [2, 4, 8] {
        let (g, m) = d4_module(n);
        check_against_oracle(&g, &m, &[1, 4]);
    }
    let (sl, elems) = special_linear_2(4).unwrap();
    let m = FiniteModule::new(&sl, 4, 2, elems.clone()).unwrap();
    let gens: Vec<usize> = [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]
        .iter()
        .map(|x| {
            let want = IntMatrix::from_i64(&[&x[0], &x[1]]);
            elems.iter().position(|e| *e == want).unwrap()
        })
        .collect();
    check_against_oracle(&sl, &m, &gens);
}

#[test]
fn center_kills() {
    let mut cases: Vec<(FiniteGroupTable, FiniteModule)> = Vec::new();
    for k in 2..=4 {
        cases.push(d4_module(1 << k));
        let c2 = FiniteGroupTable::cyclic(2).unwrap();
        let m = negation(&c2, 1 << k, 2, |x| x == 1);
        cases.push((c2, m));
    }
    let (sl, elems) = special_linear_2(4).unwrap();
    let m = FiniteModule::new(&sl, 4, 2, elems).unwrap();
    cases.push((sl, m));
    for (g, m) in &cases {
        let z = (0..g.order())
            .find(|&z| g.is_central(z) && m.acts_as_minus_one(z))
            .expect("central element acting as -1");
        assert_ne!(z, g.identity());
        let h1 = h1_bruteforce(g, m).unwrap();
        assert!(h1.exponent() <= int(2), "{:?}", h1.divisors());
    }
}

#[test]
fn bockstein_examples() {
    let c2 = FiniteGroupTable::cyclic(2).unwrap();
    for k in 1..=4 {
        for r in 1..=2 {
            let lift = negation(&c2, 2 << k, r, |x| x == 1);
            let rep = bockstein_check(&c2, &lift, k).unwrap();
            assert!(rep.passed, "{}", rep.to_text());
            assert_eq!(rep.data["h0_dim"], r);
            assert_eq!(rep.data["h1_divisors"], serde_json::json!(vec!["2"; r]));
        }
    }
    let trivial = FiniteGroupTable::cyclic(1).unwrap();
    let rep = bockstein_check(&trivial, &FiniteModule::trivial(&trivial, 16, 0).unwrap(), 3).unwrap();
    assert!(rep.passed);
    assert_eq!(rep.data["h0_dim"], 0);
    // without -1 in the group, invariants lift and the connecting map has a kernel
    let rep = bockstein_check(&trivial, &FiniteModule::trivial(&trivial, 16, 1).unwrap(), 3).unwrap();
    assert_eq!(rep.data["h0_dim"], 1);
    assert_eq!(rep.data["h1_divisors"], serde_json::json!(Vec::<String>::new()));
    assert!(!rep.passed);
    for k in 1..=3 {
        let (g, lift) = d4_module(2 << k);
        let rep = bockstein_check(&g, &lift, k).unwrap();
        // H0(V') -> H0(V/2) is zero here, so the map is injective; H1 keeps
        // a second Z/2 at every level, so it is not onto
        let status: Vec<(&str, bool)> = rep.checks.iter().map(|c| (c.name.as_str(), c.passed)).collect();
        assert_eq!(
            status,
            [
                ("lifts give cocycles", true),
                ("injective", true),
                ("surjective", false)
            ],
            "{}",
            rep.to_text()
        );
        assert_eq!(rep.data["h1_divisors"], serde_json::json!(["2", "2"]));
    }
    let c3 = FiniteGroupTable::cyclic(3).unwrap();
    assert!(matches!(
        bockstein_check(&c3, &FiniteModule::trivial(&c3, 6, 1).unwrap(), 1),
        Err(Error::InvalidModulus(6))
    ));
    assert!(bockstein_check(&c2, &negation(&c2, 4, 1, |x| x == 1), 2).is_err());
}

#[test]
fn size_guard() {
    let big = FiniteGroupTable::cyclic(1025).unwrap();
    let m = FiniteModule::trivial(&big, 2, 4).unwrap();
    assert!(matches!(h1_bruteforce(&big, &m), Err(Error::TooLarge(_))));
}

#[test]
fn module_parsing() {
    let d = FiniteGroupTable::dihedral(4).unwrap();
    let text = "modulus 8\nrank 2\nelement 1\n0 -1\n1 0\nelement 4\n1 0\n0 -1\n";
    let m = FiniteModule::parse(&d, text).unwrap();
    assert_eq!(m, d4_module(8).1);
    assert!(FiniteModule::parse(&d, "modulus 8\nrank 2\nelement 1\n0 -1\n").is_err());
    let singular = "modulus 8\nrank 1\nelement 1\n-1\nelement 4\n2\n";
    assert!(FiniteModule::parse(&d, singular).is_err());
    // the reflection must invert the rotation
    let twisted = "modulus 5\nrank 1\nelement 1\n2\nelement 4\n1\n";
    assert!(FiniteModule::parse(&d, twisted).is_err());
}

fn cyclic_cases() -> impl Strategy<Value = (usize, u64, i64)> {
    (1usize..=6, 2u64..=12, 1i64..12).prop_filter("unit of order dividing m", |&(m, n, u)| {
        let n = n as i64;
        num_integer::gcd(u, n) == 1 && (0..m).fold(1i64, |acc, _| acc * u % n) == 1 % n
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclic_h1_matches_enumeration((m, n, u) in cyclic_cases()) {
        let g = FiniteGroupTable::cyclic(m).unwrap();
        let gens: Vec<usize> = if m == 1 { vec![] } else { vec![1] };
        let module = if m == 1 {
            FiniteModule::trivial(&g, n, 1).unwrap()
        } else {
            FiniteModule::from_generators(&g, n, 1, &[(1, IntMatrix::from_i64(&[&[u]]))]).unwrap()
        };
        let h1 = h1_bruteforce(&g, &module).unwrap();
        let (z, b, e) = h1_oracle(&g, &module, &gens);
        prop_assert_eq!(h1.order(), BigInt::from(z / b));
        prop_assert_eq!(h1.exponent(), BigInt::from(e));
    }
}
