//! Simple objects of `S1/2` and `S1` per graded simple Lie algebra, their
//! duality and invariant-form data, and the restriction `(M (x) N)^s` that
//! keeps only `S1/2` and trivial constituents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tkk::GradedSimpleLieKind;
use crate::weights::{self, Weight};

/// Name used for the trivial module in restriction results.
pub const TRIVIAL: &str = "tr";

/// A catalog module: a name from the fixed label namespace plus its highest
/// weight (absent only for E7, which has no root system data here).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleLabel {
    pub kind: GradedSimpleLieKind,
    pub name: String,
    pub highest: Option<Weight>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Symmetric,
    Skew,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormData {
    pub dual_label: String,
    pub parity: Parity,
}

fn labels(kind: GradedSimpleLieKind, entries: Vec<(String, Vec<i64>)>) -> Vec<ModuleLabel> {
    let sys = kind.root_system().expect("classical kind");
    entries
        .into_iter()
        .map(|(name, coeffs)| ModuleLabel { kind, name, highest: Some(sys.from_fundamental(&coeffs)) })
        .collect()
}

/// `e_k` scaled by `c` in `r` fundamental coordinates (1-based `k`).
fn fw(r: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; r];
    for &(k, c) in terms {
        v[k - 1] += c;
    }
    v
}

pub fn s_half_simples(kind: GradedSimpleLieKind) -> Vec<ModuleLabel> {
    use GradedSimpleLieKind as K;
    let r = kind.rank();
    let entries = match kind {
        K::E7 => return Vec::new(),
        K::SL2 => vec![("L".to_string(), fw(1, &[(1, 1)]))],
        K::SP { .. } | K::SO1 { .. } => vec![("V".to_string(), fw(r, &[(1, 1)]))],
        K::SL { .. } => vec![("V".to_string(), fw(r, &[(1, 1)])), ("V*".to_string(), fw(r, &[(r, 1)]))],
        K::SO2Odd { .. } => vec![("Gamma".to_string(), fw(r, &[(r, 1)]))],
        K::SO2Even { .. } => {
            vec![("Gamma+".to_string(), fw(r, &[(r, 1)])), ("Gamma-".to_string(), fw(r, &[(r - 1, 1)]))]
        }
    };
    labels(kind, entries)
}

pub fn s_one_simples(kind: GradedSimpleLieKind) -> Vec<ModuleLabel> {
    use GradedSimpleLieKind as K;
    let r = kind.rank();
    let entries: Vec<(String, Vec<i64>)> = match kind {
        K::E7 => return vec![ModuleLabel { kind, name: "ad".into(), highest: None }],
        K::SL2 => vec![("ad".into(), fw(1, &[(1, 2)]))],
        K::SP { .. } => vec![("ad".into(), fw(r, &[(1, 2)])), ("L2V".into(), fw(r, &[(2, 1)]))],
        K::SL { .. } => vec![
            ("ad".into(), fw(r, &[(1, 1), (r, 1)])),
            ("S2V".into(), fw(r, &[(1, 2)])),
            ("S2V*".into(), fw(r, &[(r, 2)])),
            ("L2V".into(), fw(r, &[(2, 1)])),
            ("L2V*".into(), fw(r, &[(r - 1, 1)])),
        ],
        K::SO1 { n } => {
            let mut v = vec![("ad".into(), fw(r, &[(2, 1)])), ("S2V".into(), fw(r, &[(1, 2)]))];
            if n == 3 {
                v.push(("Gamma+".into(), fw(r, &[(r, 1)])));
            }
            v
        }
        K::SO2Odd { m } => {
            let m = m as usize;
            (1..=m).map(|k| (format!("L{k}V"), if k < m { fw(r, &[(k, 1)]) } else { fw(r, &[(m, 2)]) })).collect()
        }
        K::SO2Even { m } => {
            let m = m as usize;
            let mut v: Vec<(String, Vec<i64>)> =
                (1..m.saturating_sub(1)).map(|k| (format!("L{k}V"), fw(r, &[(k, 1)]))).collect();
            v.push((format!("L{}V", m - 1), fw(r, &[(m - 1, 1), (m, 1)])));
            v.push(("Lambda+".into(), fw(r, &[(m, 2)])));
            v.push(("Lambda-".into(), fw(r, &[(m - 1, 2)])));
            v
        }
    };
    labels(kind, entries)
}

fn canonical_s_one_name(kind: GradedSimpleLieKind, name: &str) -> String {
    use GradedSimpleLieKind as K;
    if matches!(kind, K::SO2Odd { .. } | K::SO2Even { .. }) {
        if name == "V" {
            return "L1V".into();
        }
        if let Some(r) = name.strip_prefix("LrV(").and_then(|s| s.strip_suffix(')')) {
            return format!("L{r}V");
        }
    }
    name.to_string()
}

/// Looks up an `S1/2` label by name.
pub fn s_half_label(kind: GradedSimpleLieKind, name: &str) -> Option<ModuleLabel> {
    s_half_simples(kind).into_iter().find(|l| l.name == name)
}

/// Looks up an `S1` label by name, accepting `V` and `LrV(r)` as aliases for
/// the exterior powers `L1V`, `L{r}V` of orthogonal algebras.
pub fn s_one_label(kind: GradedSimpleLieKind, name: &str) -> Option<ModuleLabel> {
    let name = canonical_s_one_name(kind, name);
    s_one_simples(kind).into_iter().find(|l| l.name == name)
}

fn lookup(kind: GradedSimpleLieKind, name: &str, half: bool) -> Option<ModuleLabel> {
    if half {
        s_half_label(kind, name)
    } else {
        s_one_label(kind, name)
    }
}

/// Label of the dual module, computed from `-w_0` of the highest weight.
pub fn dual_label(kind: GradedSimpleLieKind, name: &str, half: bool) -> Option<String> {
    let label = lookup(kind, name, half)?;
    let Some(hw) = label.highest else { return Some(label.name) };
    let sys = kind.root_system()?;
    let dual = weights::dual_weight(&sys, &hw).ok()?;
    let list = if half { s_half_simples(kind) } else { s_one_simples(kind) };
    list.into_iter().find(|l| l.highest.as_ref() == Some(&dual)).map(|l| l.name)
}

pub fn is_s_half(kind: GradedSimpleLieKind, lambda: &[i64]) -> bool {
    weights::grading_eigenvalues(kind, lambda).is_ok_and(|s| s.into_iter().eq([-1, 1]))
}

/// Constituents of `M (x) N` lying in `S1/2` or trivial, by label, with
/// multiplicity. Other constituents are dropped.
pub fn restrict_s(kind: GradedSimpleLieKind, m: &ModuleLabel, n: &ModuleLabel) -> Result<BTreeMap<String, u64>> {
    let sys = kind.root_system().ok_or_else(|| Error::Input(format!("no character data for {kind}")))?;
    let hw =
        |l: &ModuleLabel| l.highest.clone().ok_or_else(|| Error::Input(format!("{} has no highest weight", l.name)));
    let cm = weights::weight_multiplicities(&sys, &hw(m)?)?;
    let cn = weights::weight_multiplicities(&sys, &hw(n)?)?;
    let half = s_half_simples(kind);
    let mut out = BTreeMap::new();
    for (w, k) in weights::tensor_decompose(&cm, &cn)? {
        if w == sys.zero() {
            *out.entry(TRIVIAL.to_string()).or_default() += k;
        } else if is_s_half(kind, &w) {
            let name = half
                .iter()
                .find(|l| l.highest.as_ref() == Some(&w))
                .map(|l| l.name.clone())
                .unwrap_or_else(|| format!("{w:?}"));
            *out.entry(name).or_default() += k;
        }
    }
    Ok(out)
}

/// The duality and invariant-form table for `S1/2` simples.
///
/// Parities here are the contract used for block classification; they are
/// not derived from the character engine (see [`weights::fs_indicator`]).
pub fn duality_form(kind: GradedSimpleLieKind, label: &str) -> Option<FormData> {
    use GradedSimpleLieKind as K;
    use Parity::*;
    let own = |p: Parity| FormData { dual_label: label.to_string(), parity: p };
    let other = |d: &str| FormData { dual_label: d.to_string(), parity: Parity::None };
    s_half_label(kind, label)?;
    Some(match kind {
        K::SL2 => own(Skew),
        K::SP { .. } => own(Symmetric),
        K::SO1 { .. } => own(Skew),
        K::SL { .. } => other(if label == "V" { "V*" } else { "V" }),
        K::SO2Odd { m } => own(if matches!(m % 4, 0 | 3) { Symmetric } else { Skew }),
        K::SO2Even { m } if m % 2 == 0 => own(if (m / 2) % 2 == 0 { Symmetric } else { Skew }),
        K::SO2Even { .. } => other(if label == "Gamma+" { "Gamma-" } else { "Gamma+" }),
        K::E7 => return Option::None,
    })
}
