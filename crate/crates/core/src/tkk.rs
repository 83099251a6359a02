//! The Tits-Kantor-Koecher construction.
//!
//! [`tkk_construct`] builds `Lie(J) = g_-1 + g_0 + g_1` from explicit structure
//! constants, realizing `g_0` as operators on `J` and `g_1` as symmetric
//! bilinear maps `J x J -> J`. [`lie_datum_of_spec`] is the classification-level
//! counterpart that maps a [`JordanSpec`] to graded simple summands and a
//! labelled radical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::jordan::{validate_spec, JordanSpec, RadicalComponentSpec, SimpleIdealKind, StructureConstants};
use crate::linalg::{self, axpy, is_zero_vec, zeros, Span, Q};
use crate::par;
use crate::weights::{self, Family, RootSystem};

/// Largest `dim J` accepted by [`tkk_construct`].
pub const TKK_MAX_DIM: usize = 16;

/// A short-graded Lie algebra on an ordered basis `g_-1`, `g_0`, `g_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortGradedLie {
    pub dims: (usize, usize, usize),
    /// `brackets[i][j]` = coordinates of `[b_i, b_j]`.
    pub brackets: Vec<Vec<Vec<Q>>>,
    pub e: Vec<Q>,
    pub h: Vec<Q>,
    pub f: Vec<Q>,
}

impl ShortGradedLie {
    pub fn dim(&self) -> usize {
        self.dims.0 + self.dims.1 + self.dims.2
    }

    pub fn degree(&self, i: usize) -> i32 {
        if i < self.dims.0 {
            -1
        } else if i < self.dims.0 + self.dims.1 {
            0
        } else {
            1
        }
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = zeros(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi * yj), &self.brackets[i][j]);
                }
            }
        }
        out
    }

    /// Jacobi identity on all basis triples; antisymmetry on all pairs.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let c = &self.brackets;
        for i in 0..n {
            for j in 0..=i {
                let s: Vec<Q> = c[i][j].iter().zip(&c[j][i]).map(|(a, b)| a + b).collect();
                if !is_zero_vec(&s) {
                    return Err(Error::JacobiFails(i, j, j));
                }
            }
        }
        let bad = par::find_first_range(n, |i| {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = zeros(n);
                    for (a, b, cc) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, coef) in c[a][b].iter().enumerate() {
                            if !coef.is_zero() {
                                axpy(&mut acc, coef, &c[l][cc]);
                            }
                        }
                    }
                    if !is_zero_vec(&acc) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        match bad {
            Some((i, j, k)) => Err(Error::JacobiFails(i, j, k)),
            None => Ok(()),
        }
    }

    /// `sl(2)` on the basis `x` (degree -1), `H`, `y` (degree 1) with
    /// `[H, x] = x`, `[H, y] = -y`, `[y, x] = H`, and triple `(x, -H, y)`.
    pub fn sl2() -> Self {
        let v = |a: i64, b: i64, c: i64| vec![linalg::q(a), linalg::q(b), linalg::q(c)];
        let mut br = vec![vec![zeros(3); 3]; 3];
        br[1][0] = v(1, 0, 0);
        br[0][1] = v(-1, 0, 0);
        br[1][2] = v(0, 0, -1);
        br[2][1] = v(0, 0, 1);
        br[2][0] = v(0, 1, 0);
        br[0][2] = v(0, -1, 0);
        ShortGradedLie { dims: (1, 1, 1), brackets: br, e: v(1, 0, 0), h: v(0, -1, 0), f: v(0, 0, 1) }
    }
}

fn flatten(m: &[Vec<Q>]) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

fn flatten3(t: &[Vec<Vec<Q>>]) -> Vec<Q> {
    t.iter().flatten().flatten().cloned().collect()
}

fn commutator(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    linalg::mat_sub(&linalg::mat_mul(a, b), &linalg::mat_mul(b, a))
}

type Bilinear = Vec<Vec<Vec<Q>>>;

/// `[L, B](x, y) = L(B(x, y)) - B(Lx, y) - B(x, Ly)`.
fn op_on_bilinear(l: &[Vec<Q>], b: &Bilinear) -> Bilinear {
    let n = l.len();
    let mut out = vec![vec![zeros(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut v = linalg::mat_vec(l, &b[i][j]);
            for k in 0..n {
                let lki = &l[k][i];
                if !lki.is_zero() {
                    axpy(&mut v, &-lki.clone(), &b[k][j]);
                }
                let lkj = &l[k][j];
                if !lkj.is_zero() {
                    axpy(&mut v, &-lkj.clone(), &b[i][k]);
                }
            }
            out[i][j] = v;
        }
    }
    out
}

/// `[B, x]` as the operator `y -> B(x, y)`.
fn bilinear_at(b: &Bilinear, x: &[Q]) -> Vec<Vec<Q>> {
    let n = x.len();
    let mut m = vec![zeros(n); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for c in 0..n {
            for r in 0..n {
                let v = &b[i][c][r];
                if !v.is_zero() {
                    m[r][c] += xi * v;
                }
            }
        }
    }
    m
}

pub fn tkk_construct(sc: &StructureConstants) -> Result<ShortGradedLie> {
    let n = sc.dim;
    if n > TKK_MAX_DIM {
        return Err(Error::CapExceeded(format!("TKK construction is limited to dim J <= {TKK_MAX_DIM}, got {n}")));
    }
    if !sc.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let unit = sc.unit().ok_or(Error::NotUnital)?;
    let basis_j: Vec<Vec<Q>> = (0..n).map(|i| linalg::unit(n, i)).collect();
    let lmul: Vec<Vec<Vec<Q>>> = basis_j.iter().map(|a| sc.left_mult(a)).collect();

    let mut g0: Vec<Vec<Vec<Q>>> = Vec::new();
    let mut g0_span = Span::new(n * n);
    let mut push0 = |m: Vec<Vec<Q>>, g0: &mut Vec<Vec<Vec<Q>>>| {
        if g0_span.insert(&flatten(&m)) {
            g0.push(m);
        }
    };
    for l in &lmul {
        push0(l.clone(), &mut g0);
    }
    for i in 0..n {
        for j in i + 1..n {
            push0(commutator(&lmul[i], &lmul[j]), &mut g0);
        }
    }
    let g0_span = Span::from_vectors(n * n, &g0.iter().map(|m| flatten(m)).collect::<Vec<_>>());

    let p: Bilinear = sc.products.clone();
    let mut g1: Vec<Bilinear> = Vec::new();
    let mut g1_span = Span::new(n * n * n);
    for cand in std::iter::once(p.clone()).chain(lmul.iter().map(|l| op_on_bilinear(l, &p))) {
        if g1_span.insert(&flatten3(&cand)) {
            g1.push(cand);
        }
    }

    let (d0, d1) = (g0.len(), g1.len());
    let total = n + d0 + d1;
    let in0 = |m: &[Vec<Q>], what: &str| -> Result<Vec<Q>> {
        let c = g0_span.coords(&flatten(m)).ok_or_else(|| Error::BracketOutOfSpan(what.to_string()))?;
        let mut v = zeros(total);
        v[n..n + d0].clone_from_slice(&c);
        Ok(v)
    };
    let in1 = |b: &Bilinear| -> Result<Vec<Q>> {
        let c = g1_span.coords(&flatten3(b)).ok_or_else(|| Error::BracketOutOfSpan("[g_0, g_1]".into()))?;
        let mut v = zeros(total);
        v[n + d0..].clone_from_slice(&c);
        Ok(v)
    };
    let inm1 = |x: Vec<Q>| {
        let mut v = zeros(total);
        v[..n].clone_from_slice(&x);
        v
    };
    let neg = |v: Vec<Q>| v.into_iter().map(|x| -x).collect::<Vec<Q>>();

    // Upper triangle computed directly; the rest by antisymmetry.
    let rows = par::map_range(total, |a| -> Result<Vec<Vec<Q>>> {
        let mut row = vec![zeros(total); total];
        for b in a + 1..total {
            let v = match (a < n, a < n + d0, b < n + d0) {
                (true, _, true) if b < n => zeros(total),
                // [x, L] = -L(x)
                (true, _, true) => neg(inm1(linalg::mat_vec(&g0[b - n], &basis_j[a]))),
                // [x, B] = -[B, x]
                (true, _, false) => neg(in0(&bilinear_at(&g1[b - n - d0], &basis_j[a]), "[g_1, g_-1]")?),
                (false, true, true) => in0(&commutator(&g0[a - n], &g0[b - n]), "[g_0, g_0]")?,
                (false, true, false) => in1(&op_on_bilinear(&g0[a - n], &g1[b - n - d0]))?,
                _ => zeros(total),
            };
            row[b] = v;
        }
        Ok(row)
    });
    let mut brackets = rows.into_iter().collect::<Result<Vec<_>>>()?;
    for a in 0..total {
        for b in 0..a {
            brackets[a][b] = neg(brackets[b][a].clone());
        }
    }

    let e = inm1(unit.clone());
    let h = neg(in0(&sc.left_mult(&unit), "h")?);
    let f = in1(&p)?;
    let g = ShortGradedLie { dims: (n, d0, d1), brackets, e, h, f };
    g.check_jacobi()?;
    Ok(g)
}

/// Recovers `x o y = [[f, x], y]` on `g_-1`.
pub fn jordan_from_short_pair(g: &ShortGradedLie) -> StructureConstants {
    let n = g.dims.0;
    let total = g.dim();
    let mut sc = StructureConstants::zero(n);
    for i in 0..n {
        let fx = g.bracket(&g.f, &linalg::unit(total, i));
        for j in 0..n {
            let v = g.bracket(&fx, &linalg::unit(total, j));
            sc.products[i][j] = v[..n].to_vec();
        }
    }
    sc
}

/// True iff `[g_-1, g_1] = g_0` and the center is zero.
pub fn minimality_check(g: &ShortGradedLie) -> bool {
    let (dm, d0, d1) = g.dims;
    let total = g.dim();
    let mut span = Span::new(total);
    for i in 0..dm {
        for j in dm + d0..dm + d0 + d1 {
            span.insert(&g.brackets[i][j]);
        }
    }
    let g0_filled = span.dim() == d0 && span.pivots().iter().all(|&p| p >= dm && p < dm + d0);
    if !g0_filled {
        return false;
    }
    // z is central iff sum_i z_i c_{ij}^l = 0 for all j, l
    let mut rows = Vec::with_capacity(total * total);
    for j in 0..total {
        for l in 0..total {
            rows.push((0..total).map(|i| g.brackets[i][j][l].clone()).collect::<Vec<_>>());
        }
    }
    linalg::kernel(&rows, total).is_empty()
}

/// Graded simple Lie algebras with a short grading, by family.
///
/// Parameters follow the usual names: `SP { n }` is `sp(2n)`, `SO1 { n }` is
/// `so(4n)` with the first short grading, `SL { n }` is `sl(2n)`,
/// `SO2Odd { m }` is `so(2m+1)` and `SO2Even { m }` is `so(2m)`, both with the
/// second short grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GradedSimpleLieKind {
    SL2,
    SP { n: u32 },
    SO1 { n: u32 },
    SL { n: u32 },
    SO2Odd { m: u32 },
    SO2Even { m: u32 },
    E7,
}

impl fmt::Display for GradedSimpleLieKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GradedSimpleLieKind::SL2 => write!(f, "sl(2)"),
            GradedSimpleLieKind::SP { n } => write!(f, "sp({})", 2 * n),
            GradedSimpleLieKind::SO1 { n } => write!(f, "so1({})", 4 * n),
            GradedSimpleLieKind::SL { n } => write!(f, "sl({})", 2 * n),
            GradedSimpleLieKind::SO2Odd { m } => write!(f, "so2({})", 2 * m + 1),
            GradedSimpleLieKind::SO2Even { m } => write!(f, "so2({})", 2 * m),
            GradedSimpleLieKind::E7 => write!(f, "e7"),
        }
    }
}

impl GradedSimpleLieKind {
    /// The summand attached to a simple ideal; `None` for out-of-range
    /// parameters.
    pub fn of_ideal(ideal: &SimpleIdealKind) -> Option<Self> {
        use GradedSimpleLieKind as K;
        match *ideal {
            SimpleIdealKind::Field => Some(K::SL2),
            SimpleIdealKind::Albert => Some(K::E7),
            SimpleIdealKind::Hermitian { comp, n } if n >= 3 => match comp {
                1 => Some(K::SP { n }),
                2 => Some(K::SL { n }),
                4 => Some(K::SO1 { n }),
                _ => None,
            },
            SimpleIdealKind::Bilinear { dim } if dim >= 3 => {
                if dim % 2 == 1 {
                    Some(K::SO2Odd { m: dim.div_ceil(2) })
                } else {
                    Some(K::SO2Even { m: (dim + 2) / 2 })
                }
            }
            _ => None,
        }
    }

    /// Root system of the underlying simple algebra (`None` for E7).
    pub fn root_system(&self) -> Option<RootSystem> {
        use GradedSimpleLieKind as K;
        let (family, rank) = match *self {
            K::SL2 => (Family::A, 1),
            K::SP { n } => (Family::C, n),
            K::SO1 { n } => (Family::D, 2 * n),
            K::SL { n } => (Family::A, 2 * n - 1),
            K::SO2Odd { m } => (Family::B, m),
            K::SO2Even { m } => (Family::D, m),
            K::E7 => return None,
        };
        Some(RootSystem::simple(family, rank as usize))
    }

    /// Rank of the underlying simple algebra.
    pub fn rank(&self) -> usize {
        self.root_system().map_or(7, |s| s.rank())
    }
}

/// One labelled simple module on one summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SummandLabel {
    pub summand: usize,
    pub label: String,
}

/// Support of a radical isotypic component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum RadicalSupport {
    /// An S1 module over one summand.
    Single(SummandLabel),
    /// Tensor product of S1/2 modules over two distinct summands, `a.summand < b.summand`.
    Pair { a: SummandLabel, b: SummandLabel },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RadicalEntry {
    pub support: RadicalSupport,
    /// Dimension of the multiplicity space `W`.
    pub w: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieDatum {
    pub summands: Vec<GradedSimpleLieKind>,
    pub radical: Vec<RadicalEntry>,
}

impl LieDatum {
    /// Merges isomorphic entries into multiplicity spaces; the result is sorted
    /// by support.
    pub fn merged(summands: Vec<GradedSimpleLieKind>, entries: impl IntoIterator<Item = RadicalEntry>) -> Self {
        let mut acc: BTreeMap<RadicalSupport, u32> = BTreeMap::new();
        for e in entries {
            let support = match e.support {
                RadicalSupport::Pair { a, b } if b.summand < a.summand => RadicalSupport::Pair { a: b, b: a },
                s => s,
            };
            *acc.entry(support).or_default() += e.w;
        }
        LieDatum { summands, radical: acc.into_iter().map(|(support, w)| RadicalEntry { support, w }).collect() }
    }

    /// Replaces every `so(4)` summand by two copies of `sl(2)`.
    ///
    /// Spinors `Gamma+`/`Gamma-` become the standard module `L` of the first and
    /// second copy, the vector module becomes `L (x) L'`, and `Lambda+`/`Lambda-`
    /// become the adjoint of the respective copy.
    pub fn with_so4_split(&self) -> LieDatum {
        let mut index = Vec::with_capacity(self.summands.len());
        let mut summands = Vec::new();
        for k in &self.summands {
            index.push(summands.len());
            if *k == (GradedSimpleLieKind::SO2Even { m: 2 }) {
                summands.push(GradedSimpleLieKind::SL2);
            }
            summands.push(if *k == (GradedSimpleLieKind::SO2Even { m: 2 }) { GradedSimpleLieKind::SL2 } else { *k });
        }
        let is_so4 = |s: usize| self.summands[s] == GradedSimpleLieKind::SO2Even { m: 2 };
        let half = |sl: &SummandLabel| -> SummandLabel {
            if !is_so4(sl.summand) {
                return SummandLabel { summand: index[sl.summand], label: sl.label.clone() };
            }
            let off = usize::from(sl.label == "Gamma-");
            SummandLabel { summand: index[sl.summand] + off, label: "L".into() }
        };
        let entries = self.radical.iter().map(|e| {
            let support = match &e.support {
                RadicalSupport::Single(sl) if is_so4(sl.summand) => {
                    let base = index[sl.summand];
                    match sl.label.as_str() {
                        "Lambda+" => RadicalSupport::Single(SummandLabel { summand: base, label: "ad".into() }),
                        "Lambda-" => RadicalSupport::Single(SummandLabel { summand: base + 1, label: "ad".into() }),
                        _ => RadicalSupport::Pair {
                            a: SummandLabel { summand: base, label: "L".into() },
                            b: SummandLabel { summand: base + 1, label: "L".into() },
                        },
                    }
                }
                RadicalSupport::Single(sl) => {
                    RadicalSupport::Single(SummandLabel { summand: index[sl.summand], label: sl.label.clone() })
                }
                RadicalSupport::Pair { a, b } => RadicalSupport::Pair { a: half(a), b: half(b) },
            };
            RadicalEntry { support, w: e.w }
        });
        LieDatum::merged(summands, entries.collect::<Vec<_>>())
    }
}

pub fn lie_datum_of_spec(spec: &JordanSpec) -> Result<LieDatum> {
    let report = validate_spec(spec);
    let summands: Vec<GradedSimpleLieKind> = spec
        .ideals
        .iter()
        .map(|i| GradedSimpleLieKind::of_ideal(i).ok_or_else(|| Error::Validation(report.violations.clone())))
        .collect::<Result<_>>()?;
    let unknown =
        |kind: GradedSimpleLieKind, label: &str| Error::UnknownLabel { kind: kind.to_string(), label: label.into() };
    let summand = |i: usize| summands.get(i).copied().ok_or_else(|| Error::Validation(report.violations.clone()));
    let mut entries = Vec::new();
    for comp in &spec.radical {
        let support = match comp {
            RadicalComponentSpec::Unital { ideal, label, .. } => {
                let kind = summand(*ideal)?;
                let l = catalog::s_one_label(kind, label).ok_or_else(|| unknown(kind, label))?;
                RadicalSupport::Single(SummandLabel { summand: *ideal, label: l.name })
            }
            RadicalComponentSpec::Tensor { a, b, .. } => {
                if a.ideal == b.ideal {
                    return Err(Error::Validation(report.violations.clone()));
                }
                let (ka, kb) = (summand(a.ideal)?, summand(b.ideal)?);
                let la = catalog::s_half_label(ka, &a.label).ok_or_else(|| unknown(ka, &a.label))?;
                let lb = catalog::s_half_label(kb, &b.label).ok_or_else(|| unknown(kb, &b.label))?;
                RadicalSupport::Pair {
                    a: SummandLabel { summand: a.ideal, label: la.name },
                    b: SummandLabel { summand: b.ideal, label: lb.name },
                }
            }
        };
        entries.push(RadicalEntry { support, w: comp.mult() });
    }
    Ok(LieDatum::merged(summands, entries))
}

/// `dim Lambda^2(r)^{g_s}`, split into per-entry and per-pair contributions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralExtension {
    /// One value per radical entry of the datum.
    pub per_group: Vec<u64>,
    /// `(i, j, dim W_i * dim W_j)` for entries `i < j` with dual base modules.
    pub pairs: Vec<(usize, usize, u64)>,
    pub total: u64,
}

/// Frobenius-Schur indicator of the base module of a radical entry.
pub fn base_fs_indicator(d: &LieDatum, support: &RadicalSupport) -> i32 {
    let fs = |sl: &SummandLabel, half: bool| -> i32 {
        let kind = d.summands[sl.summand];
        let label = if half { catalog::s_half_label(kind, &sl.label) } else { catalog::s_one_label(kind, &sl.label) };
        match (label.and_then(|l| l.highest), kind.root_system()) {
            (Some(hw), Some(sys)) => weights::fs_indicator(&sys, &hw),
            // the only E7 module in the catalog is the adjoint
            _ => 1,
        }
    };
    match support {
        RadicalSupport::Single(sl) => fs(sl, false),
        RadicalSupport::Pair { a, b } => fs(a, true) * fs(b, true),
    }
}

/// Base module of the dual of a radical entry.
pub fn dual_support(d: &LieDatum, support: &RadicalSupport) -> RadicalSupport {
    let dual = |sl: &SummandLabel, half: bool| SummandLabel {
        summand: sl.summand,
        label: catalog::dual_label(d.summands[sl.summand], &sl.label, half).unwrap_or_else(|| sl.label.clone()),
    };
    match support {
        RadicalSupport::Single(sl) => RadicalSupport::Single(dual(sl, false)),
        RadicalSupport::Pair { a, b } => RadicalSupport::Pair { a: dual(a, true), b: dual(b, true) },
    }
}

pub fn central_extension_dim(d: &LieDatum) -> CentralExtension {
    let mut out = CentralExtension::default();
    for e in &d.radical {
        let w = u64::from(e.w);
        let (s2, l2) = (w * (w + 1) / 2, w * w.saturating_sub(1) / 2);
        let v = match base_fs_indicator(d, &e.support) {
            // invariants in S^2 W (x) Lambda^2 R + Lambda^2 W (x) S^2 R
            -1 => s2,
            1 => l2,
            _ => 0,
        };
        out.per_group.push(v);
    }
    for i in 0..d.radical.len() {
        let dual = dual_support(d, &d.radical[i].support);
        for j in i + 1..d.radical.len() {
            if d.radical[j].support == dual {
                out.pairs.push((i, j, u64::from(d.radical[i].w) * u64::from(d.radical[j].w)));
            }
        }
    }
    out.total = out.per_group.iter().sum::<u64>() + out.pairs.iter().map(|p| p.2).sum::<u64>();
    out
}
