use std::path::Path;

use torelli_core::corpus::{regenerate_expected, save_corpus, verify_corpus, Corpus, TauChange};
use torelli_core::finite_coh::{h1_bruteforce, sp_invariants_report, FiniteGroupTable, FiniteModule};
use torelli_core::johnson::{johnson_tau, validate_endo, GroupEndo, ValidationMode};
use torelli_core::linalg::{smith_normal_form, IntMatrix};
use torelli_core::magnus::generator_name;
use torelli_core::magnus::surface_gr_capped;
use torelli_core::report::int_list;
use torelli_core::sp_modules::{check_ci_identity, check_decomposition, jacobi_exactness, wedge_basis, ModuleKind};
use torelli_core::{Error, Result};

use crate::output::Outcome;
use crate::{CheckKind, Command, CorpusAction, ModuleArg};

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Grdim { .. } => "grdim",
        Command::Tau { .. } => "tau",
        Command::Check { which, .. } => match which {
            CheckKind::Jacobi => "check jacobi",
            CheckKind::Ci => "check ci",
            CheckKind::Decomp => "check decomp",
        },
        Command::Invariants { .. } => "invariants",
        Command::H1 { .. } => "h1",
        Command::Snf { .. } => "snf",
        Command::Corpus { action } => match action {
            CorpusAction::Verify { .. } => "corpus verify",
            CorpusAction::Regenerate { .. } => "corpus regenerate",
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn run(cmd: &Command, max_degree: usize) -> Result<Outcome> {
    let label = name(cmd);
    match cmd {
        Command::Grdim { g, n } => {
            let s = surface_gr_capped(*g, *n, max_degree)?;
            let mut out = Outcome::value(label);
            out.set("genus", g);
            out.set("degree", n);
            out.set("rank", s.rank());
            out.set("ambient_rank", s.ambient_rank());
            out.set("ideal_rank", s.ideal_rank());
            Ok(out)
        }
        Command::Tau { file, relaxed } => {
            let endo = GroupEndo::parse(&read(file)?)?;
            let mode = match relaxed {
                Some(m) if *m > max_degree => {
                    return Err(Error::DegreeOverflow {
                        degree: *m,
                        max: max_degree,
                    })
                }
                Some(m) => ValidationMode::parse(&format!("relaxed {m}"))?,
                None => ValidationMode::Strict,
            };
            if max_degree < 3 {
                return Err(Error::DegreeOverflow {
                    degree: 3,
                    max: max_degree,
                });
            }
            let t = johnson_tau(&validate_endo(&endo, mode)?)?;
            let g = endo.genus();
            let support: Vec<String> = wedge_basis(2 * g, 3)
                .iter()
                .zip(&t)
                .filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign)
                .map(|(idx, c)| {
                    let w: Vec<String> = idx.iter().map(|&i| generator_name(g, i as u8)).collect();
                    format!("{c}*{}", w.join("^"))
                })
                .collect();
            let mut out = Outcome::value(label);
            out.set("genus", g);
            out.set("mode", mode.to_string());
            out.set("tau", int_list(&t));
            out.set("support", support);
            Ok(out)
        }
        Command::Check { which, g } => {
            let r = match which {
                CheckKind::Jacobi => jacobi_exactness(*g)?,
                CheckKind::Ci => check_ci_identity(*g)?,
                CheckKind::Decomp => check_decomposition(*g)?,
            };
            Ok(Outcome::from_report(label, &r))
        }
        Command::Invariants { g, module, p } => {
            let kind = match module {
                ModuleArg::H => ModuleKind::H,
                ModuleArg::L => ModuleKind::Lambda3,
                ModuleArg::LmodH => ModuleKind::LmodH,
            };
            Ok(Outcome::from_report(label, &sp_invariants_report(*g, kind, *p)?))
        }
        Command::H1 { group, module } => {
            let grp = FiniteGroupTable::parse(&read(group)?)?;
            let m = FiniteModule::parse(&grp, &read(module)?)?;
            let h = h1_bruteforce(&grp, &m)?;
            let mut out = Outcome::value(label);
            out.set("group_order", grp.order());
            out.set("modulus", m.modulus());
            out.set("rank", m.rank());
            out.set("divisors", int_list(&h.divisors()));
            out.set("order", h.order().to_string());
            out.set("exponent", h.exponent().to_string());
            Ok(out)
        }
        Command::Snf { file } => {
            let a = IntMatrix::parse(&read(file)?)?;
            let s = smith_normal_form(&a);
            let mut out = Outcome::value(label);
            out.set("rows", a.rows());
            out.set("cols", a.cols());
            out.set("rank", s.rank());
            out.set("divisors", int_list(&s.diag));
            out.set("torsion", int_list(&s.nontrivial_divisors()));
            Ok(out)
        }
        Command::Corpus { action } => match action {
            CorpusAction::Verify { path } => {
                let c = Corpus::parse(&read(path)?)?;
                Ok(Outcome::from_report(label, &verify_corpus(&c)?))
            }
            CorpusAction::Regenerate { path, write } => {
                let c = Corpus::parse(&read(path)?)?;
                let r = regenerate_expected(&c)?;
                let diffs: Vec<String> = r
                    .diffs
                    .iter()
                    .map(|d| match d {
                        TauChange::Frozen { id, .. } => format!("frozen {id}"),
                        TauChange::Changed { id, .. } => format!("changed {id}"),
                    })
                    .collect();
                if *write {
                    save_corpus(path, &r.corpus, true)?;
                }
                let mut out = Outcome::value(label);
                out.set("entries", r.corpus.entries.len());
                out.set("diff_count", diffs.len());
                out.set("diffs", diffs);
                out.set("written", write);
                Ok(out)
            }
        },
    }
}
