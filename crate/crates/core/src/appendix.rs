//! Engine checks of the duality/form lemma and the tensor-restriction lemma
//! for every graded simple algebra up to a rank bound.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Parity, TRIVIAL};
use crate::error::{Error, Result};
use crate::par;
use crate::tkk::GradedSimpleLieKind as K;
use crate::weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// The engine disagrees with the tabulated statement in a documented way.
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixCase {
    /// `duality` or `tensor`.
    pub lemma: String,
    pub item: u8,
    pub algebra: String,
    pub statement: String,
    pub expected: String,
    pub computed: String,
    pub status: CaseStatus,
}

/// Algebras covered by each lemma item with `rank <= max_rank`.
pub fn algebras(max_rank: usize) -> Vec<K> {
    let mut out = vec![K::SL2];
    out.extend((3..).map(|n| K::SL { n }).take_while(|k| k.rank() <= max_rank));
    out.extend((3..).map(|n| K::SP { n }).take_while(|k| k.rank() <= max_rank));
    out.extend((2..).map(|n| K::SO1 { n }).take_while(|k| k.rank() <= max_rank));
    out.extend((2..).map(|m| K::SO2Odd { m }).take_while(|k| k.rank() <= max_rank));
    out.extend((3..).map(|m| K::SO2Even { m }).take_while(|k| k.rank() <= max_rank));
    out
}

fn fmt_map(m: &BTreeMap<String, u64>) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter().map(|(k, &n)| if n == 1 { k.clone() } else { format!("{n}{k}") }).collect::<Vec<_>>().join("+")
}

fn expect(items: &[&str]) -> BTreeMap<String, u64> {
    items.iter().map(|s| (s.to_string(), 1)).collect()
}

struct TensorCase {
    item: u8,
    kind: K,
    m: String,
    n: String,
    /// `n` is an `S1/2` label rather than an `S1` one.
    n_half: bool,
    expected: BTreeMap<String, u64>,
}

fn tensor_cases(kind: K) -> Vec<TensorCase> {
    let mut out = Vec::new();
    let mut case = |item: u8, m: &str, n: &str, n_half: bool, e: &[&str]| {
        out.push(TensorCase { item, kind, m: m.into(), n: n.into(), n_half, expected: expect(e) })
    };
    match kind {
        K::SL { n } if n >= 3 => {
            for (u, ud, star) in [("V", "V*", ""), ("V*", "V", "*")] {
                case(1, u, &format!("L2V{star}"), false, &[]);
                case(1, u, &format!("S2V{star}"), false, &[]);
                case(1, ud, &format!("L2V{star}"), false, &[u]);
                case(1, ud, &format!("S2V{star}"), false, &[u]);
                case(1, u, "ad", false, &[u]);
                case(1, u, u, true, &[]);
                case(1, u, ud, true, &[TRIVIAL]);
            }
        }
        K::SP { n } if n >= 3 => {
            case(2, "V", "ad", false, &["V"]);
            case(2, "V", "L2V", false, &["V"]);
            case(2, "V", "V", true, &[TRIVIAL]);
        }
        K::SO1 { .. } => {
            case(3, "V", "ad", false, &["V"]);
            case(3, "V", "S2V", false, &["V"]);
            case(3, "V", "V", true, &[TRIVIAL]);
            if catalog::s_one_label(kind, "Gamma+").is_some() {
                case(3, "V", "Gamma+", false, &[]);
            }
        }
        K::SO2Odd { m } => {
            for r in 1..=m {
                case(4, "Gamma", &format!("L{r}V"), false, &["Gamma"]);
            }
            case(4, "Gamma", "Gamma", true, &[TRIVIAL]);
        }
        K::SO2Even { m } if m >= 3 => {
            let even = m % 2 == 0;
            for (g, gbar) in [("Gamma+", "Gamma-"), ("Gamma-", "Gamma+")] {
                for r in 1..m {
                    case(5, g, &format!("L{r}V"), false, &[if r % 2 == 0 { g } else { gbar }]);
                }
                case(5, g, g, true, if even { &[TRIVIAL] } else { &[] });
                let (lam, lambar) = if g == "Gamma+" { ("Lambda+", "Lambda-") } else { ("Lambda-", "Lambda+") };
                let (same, other): (Vec<&str>, Vec<&str>) = if even { (vec![g], vec![]) } else { (vec![], vec![gbar]) };
                case(5, g, lam, false, &same);
                case(5, g, lambar, false, &other);
            }
            case(5, "Gamma+", "Gamma-", true, if even { &[] } else { &[TRIVIAL] });
        }
        _ => {}
    }
    out
}

fn run_tensor(c: &TensorCase) -> Result<AppendixCase> {
    let m = catalog::s_half_label(c.kind, &c.m).ok_or_else(|| Error::Input(format!("no label {}", c.m)))?;
    let n = if c.n_half { catalog::s_half_label(c.kind, &c.n) } else { catalog::s_one_label(c.kind, &c.n) }
        .ok_or_else(|| Error::Input(format!("no label {}", c.n)))?;
    let got = catalog::restrict_s(c.kind, &m, &n)?;
    Ok(AppendixCase {
        lemma: "tensor".into(),
        item: c.item,
        algebra: c.kind.to_string(),
        statement: format!("({} (x) {})^s", c.m, c.n),
        expected: fmt_map(&c.expected),
        computed: fmt_map(&got),
        status: if got == c.expected { CaseStatus::Pass } else { CaseStatus::Fail },
    })
}

fn parity_name(fs: i32) -> &'static str {
    match fs {
        1 => "symmetric",
        -1 => "skew",
        _ => "not self-dual",
    }
}

fn tabulated_parity(p: Parity) -> &'static str {
    match p {
        Parity::Symmetric => "symmetric",
        Parity::Skew => "skew",
        Parity::None => "not self-dual",
    }
}

fn duality_cases(kind: K) -> Result<Vec<AppendixCase>> {
    let sys = kind.root_system().ok_or_else(|| Error::Input(format!("no character data for {kind}")))?;
    let mut out = Vec::new();
    let case = |item: u8, statement: String, expected: String, computed: String, status: CaseStatus| AppendixCase {
        lemma: "duality".into(),
        item,
        algebra: kind.to_string(),
        statement,
        expected,
        computed,
        status,
    };
    let item_half = match kind {
        K::SL2 | K::SO1 { .. } => Some(1),
        K::SP { .. } => Some(2),
        K::SO2Odd { .. } => Some(3),
        K::SO2Even { m } if m % 2 == 0 => Some(4),
        K::SO2Even { .. } => Some(5),
        _ => None,
    };
    for l in catalog::s_half_simples(kind) {
        let Some(item) = item_half else { continue };
        let hw = l.highest.clone().expect("classical label");
        let form = catalog::duality_form(kind, &l.name).expect("catalog label");
        let dual = catalog::dual_label(kind, &l.name, true).unwrap_or_default();
        let fs = weights::fs_indicator(&sys, &hw);
        let computed = format!("dual {dual}, {}", parity_name(fs));
        let expected = format!("dual {}, {}", form.dual_label, tabulated_parity(form.parity));
        let status = if computed == expected {
            CaseStatus::Pass
        } else if dual == form.dual_label && matches!(kind, K::SP { .. } | K::SO1 { .. }) {
            CaseStatus::Discrepancy
        } else {
            CaseStatus::Fail
        };
        out.push(case(item, format!("form on {}", l.name), expected, computed, status));
    }
    for l in catalog::s_one_simples(kind) {
        let dual = catalog::dual_label(kind, &l.name, false).unwrap_or_default();
        let (item, expected) = match kind {
            K::SL { .. } => (
                7,
                match l.name.as_str() {
                    "ad" => "ad".to_string(),
                    n if n.ends_with('*') => n.trim_end_matches('*').to_string(),
                    n => format!("{n}*"),
                },
            ),
            K::SO2Even { m } if m % 2 == 1 => (
                8,
                match l.name.as_str() {
                    "Lambda+" => "Lambda-".to_string(),
                    "Lambda-" => "Lambda+".to_string(),
                    n => n.to_string(),
                },
            ),
            _ => (6, l.name.clone()),
        };
        let status = if dual == expected { CaseStatus::Pass } else { CaseStatus::Fail };
        out.push(case(item, format!("dual of {}", l.name), expected, dual, status));
    }
    Ok(out)
}

/// Runs both lemmas on every algebra of rank at most `max_rank`.
pub fn verify_appendix(max_rank: usize) -> Result<Vec<AppendixCase>> {
    let kinds = algebras(max_rank);
    let mut out = Vec::new();
    for k in &kinds {
        out.extend(duality_cases(*k)?);
    }
    let tensor: Vec<TensorCase> = kinds.iter().flat_map(|k| tensor_cases(*k)).collect();
    for c in par::map(&tensor, run_tensor) {
        out.push(c?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rank_suite() {
        let cases = verify_appendix(3).unwrap();
        let failed: Vec<_> = cases.iter().filter(|c| c.status == CaseStatus::Fail).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(cases.iter().any(|c| c.algebra == "so2(7)" && c.statement == "(Gamma (x) Gamma)^s"));
        let disc: Vec<_> = cases.iter().filter(|c| c.status == CaseStatus::Discrepancy).collect();
        assert!(disc.iter().all(|c| c.algebra.starts_with("sp") || c.algebra.starts_with("so1")));
    }

    #[test]
    fn algebra_list() {
        let names: Vec<String> = algebras(6).iter().map(ToString::to_string).collect();
        for n in ["sl(6)", "sp(6)", "so1(12)", "so2(5)", "so2(7)", "so2(9)", "so2(8)", "so2(10)", "so2(12)"] {
            assert!(names.contains(&n.to_string()), "{n}");
        }
    }
}
