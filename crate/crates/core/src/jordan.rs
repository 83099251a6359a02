//! Jordan algebras: classification-level specs of `J = I + R` with `R^2 = 0`,
//! explicit structure constants, and the identity checks for algebras and
//! (bi)representations.
//!
//! The product convention is the symmetric one, `a o b = ab + ba` for
//! `A^+`, so a unit `e` acts by `1/2` on special modules. Module actions are
//! written on the left throughout.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, is_zero_mat, is_zero_vec, q, qr, zeros, Span, Q};
use crate::par;
use crate::tkk::GradedSimpleLieKind;

/// A simple summand of the semisimple part, by classification label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SimpleIdealKind {
    Field,
    /// Jordan algebra of a nondegenerate bilinear form; `dim` counts the unit.
    Bilinear {
        dim: u32,
    },
    /// `H_n(C)` for a composition algebra of dimension `comp` in {1, 2, 4}.
    Hermitian {
        comp: u32,
        n: u32,
    },
    Albert,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelRef {
    pub ideal: usize,
    pub label: String,
}

fn one_u32() -> u32 {
    1
}

/// One isotypic radical component `M_j` (with multiplicity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RadicalComponentSpec {
    /// A unital module over a single ideal, named by its S1 label.
    Unital {
        ideal: usize,
        label: String,
        #[serde(default = "one_u32")]
        mult: u32,
    },
    /// Tensor product of two special modules over distinct ideals.
    Tensor {
        a: LabelRef,
        b: LabelRef,
        #[serde(default = "one_u32")]
        mult: u32,
    },
}

impl RadicalComponentSpec {
    pub fn mult(&self) -> u32 {
        match self {
            RadicalComponentSpec::Unital { mult, .. } | RadicalComponentSpec::Tensor { mult, .. } => *mult,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanSpec {
    pub ideals: Vec<SimpleIdealKind>,
    #[serde(default)]
    pub radical: Vec<RadicalComponentSpec>,
    #[serde(default = "default_true")]
    pub unital: bool,
}

fn default_true() -> bool {
    true
}

impl JordanSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("JordanSpec JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Validation(self.violations))
        }
    }
}

fn is_trivial_label(label: &str) -> bool {
    matches!(label, "tr" | "trivial" | "k")
}

pub fn validate_spec(spec: &JordanSpec) -> ValidationReport {
    let mut v = Vec::new();
    for (i, ideal) in spec.ideals.iter().enumerate() {
        match *ideal {
            SimpleIdealKind::Bilinear { dim } if dim < 3 => {
                v.push(format!("ideal {i}: Bilinear requires dim >= 3, got {dim}"))
            }
            SimpleIdealKind::Hermitian { comp, .. } if !matches!(comp, 1 | 2 | 4) => {
                v.push(format!("ideal {i}: Hermitian composition dimension must be 1, 2 or 4, got {comp}"))
            }
            SimpleIdealKind::Hermitian { n, .. } if n < 3 => {
                v.push(format!("ideal {i}: Hermitian requires n >= 3, got n = {n}"))
            }
            _ => {}
        }
    }
    if spec.ideals.is_empty() && spec.unital {
        v.push("no simple ideals".to_string());
    }
    let kind_of =
        |i: usize| -> Option<GradedSimpleLieKind> { spec.ideals.get(i).and_then(GradedSimpleLieKind::of_ideal) };
    let check_label = |v: &mut Vec<String>, j: usize, ideal: usize, label: &str, half: bool| {
        if is_trivial_label(label) {
            v.push(format!("radical {j}: trivial radical component `{label}`"));
            return;
        }
        let Some(kind) = kind_of(ideal) else {
            if ideal >= spec.ideals.len() {
                v.push(format!("radical {j}: ideal index {ideal} out of range"));
            }
            return;
        };
        let found = if half {
            catalog::s_half_label(kind, label).is_some()
        } else {
            catalog::s_one_label(kind, label).is_some()
        };
        if !found {
            let cat = if half { "S1/2" } else { "S1" };
            v.push(format!("radical {j}: `{label}` is not an {cat} label of {kind}"));
        }
    };
    for (j, comp) in spec.radical.iter().enumerate() {
        if comp.mult() == 0 {
            v.push(format!("radical {j}: multiplicity must be >= 1"));
        }
        match comp {
            RadicalComponentSpec::Unital { ideal, label, .. } => check_label(&mut v, j, *ideal, label, false),
            RadicalComponentSpec::Tensor { a, b, .. } => {
                if a.ideal == b.ideal {
                    v.push(format!("radical {j}: tensor components must reference distinct ideals"));
                }
                check_label(&mut v, j, a.ideal, &a.label, true);
                check_label(&mut v, j, b.ideal, &b.label, true);
            }
        }
    }
    ValidationReport { violations: v }
}

/// Formal adjunction of a unit: appends a `Field` summand.
pub fn unitalize(spec: &JordanSpec) -> JordanSpec {
    if spec.unital {
        return spec.clone();
    }
    let mut out = spec.clone();
    out.ideals.push(SimpleIdealKind::Field);
    out.unital = true;
    out
}

/// Commutative multiplication table: `products[i][j]` holds the coordinates of
/// `e_i o e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub dim: usize,
    pub products: Vec<Vec<Vec<Q>>>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, products: vec![vec![zeros(dim); dim]; dim] }
    }

    /// Sets `e_i o e_j = e_j o e_i = value`.
    pub fn set(&mut self, i: usize, j: usize, value: Vec<Q>) {
        self.products[j][i] = value.clone();
        self.products[i][j] = value;
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.products[i][j] == self.products[j][i]))
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.products[i][j]);
            }
        }
        out
    }

    /// Matrix of left multiplication `L_x` (columns are images of basis vectors).
    pub fn left_mult(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let cols: Vec<Vec<Q>> = (0..self.dim).map(|j| self.mul(x, &linalg::unit(self.dim, j))).collect();
        (0..self.dim).map(|r| (0..self.dim).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// The unit element, if any: the `u` with `L_u = id`.
    pub fn unit(&self) -> Option<Vec<Q>> {
        let n = self.dim;
        // unknowns u_k; equations sum_k u_k c_{k j}^r = delta_{j r}
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n * n);
        for j in 0..n {
            for r in 0..n {
                rows.push((0..n).map(|k| self.products[k][j][r].clone()).collect::<Vec<_>>());
                rhs.push(if j == r { Q::one() } else { Q::zero() });
            }
        }
        solve(&rows, &rhs, n)
    }

    /// Direct sum of algebras.
    pub fn direct_sum(&self, other: &StructureConstants) -> StructureConstants {
        let n = self.dim + other.dim;
        let mut out = StructureConstants::zero(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = zeros(n);
                v[..self.dim].clone_from_slice(&self.products[i][j]);
                out.products[i][j] = v;
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                let mut v = zeros(n);
                v[self.dim..].clone_from_slice(&other.products[i][j]);
                out.products[self.dim + i][self.dim + j] = v;
            }
        }
        out
    }

    /// Parses `{"dim": n, "products": [[[c, ...], ...], ...]}` where
    /// `products[i][j]` lists the coordinates of `e_i o e_j` as integers or
    /// `"a/b"` strings.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Num {
            Int(i64),
            Str(String),
        }
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            products: Vec<Vec<Vec<Num>>>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("structure constants JSON: {e}")))?;
        let n = raw.dim;
        let shape_ok =
            raw.products.len() == n && raw.products.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(Error::Input(format!("products must be a {n} x {n} x {n} array")));
        }
        let products = raw
            .products
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .map(|c| match c {
                                Num::Int(i) => Ok(q(i)),
                                Num::Str(s) => linalg::parse_q(&s),
                            })
                            .collect::<Result<Vec<Q>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StructureConstants { dim: n, products })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let num = |c: &Q| {
            if c.is_integer() {
                c.numer()
                    .to_string()
                    .parse::<i64>()
                    .map_or_else(|_| serde_json::json!(linalg::fmt_q(c)), |i| serde_json::json!(i))
            } else {
                serde_json::json!(linalg::fmt_q(c))
            }
        };
        let products: Vec<Vec<Vec<serde_json::Value>>> =
            self.products.iter().map(|r| r.iter().map(|v| v.iter().map(num).collect()).collect()).collect();
        serde_json::json!({ "dim": self.dim, "products": products })
    }

    /// The one-dimensional algebra `e o e = e`.
    pub fn field() -> Self {
        let mut sc = StructureConstants::zero(1);
        sc.set(0, 0, vec![Q::one()]);
        sc
    }
}

/// Solves `A x = b` (row-major `A` with `n` unknowns); any solution.
fn solve(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Vec<Q>> {
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let span = Span::from_vectors(n + 1, &aug);
    if span.pivots().contains(&n) {
        return None;
    }
    let mut x = zeros(n);
    for (row, &p) in span.rows().iter().zip(span.pivots()) {
        x[p] = row[n].clone();
    }
    Some(x)
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Jordan identity `((a o a) o b) o a = (a o a) o (b o a)`, checked in fully
/// linearized form on all basis quadruples.
pub fn check_jordan_identity(sc: &StructureConstants) -> bool {
    if !sc.is_commutative() {
        return false;
    }
    let n = sc.dim;
    let e = |i: usize| linalg::unit(n, i);
    par::all_range(n, |l| {
        let b = e(l);
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let a = [e(i), e(j), e(k)];
                    let mut acc = zeros(n);
                    for p in PERMS3 {
                        let aa = sc.mul(&a[p[0]], &a[p[1]]);
                        let lhs = sc.mul(&sc.mul(&aa, &b), &a[p[2]]);
                        let rhs = sc.mul(&aa, &sc.mul(&b, &a[p[2]]));
                        axpy(&mut acc, &Q::one(), &lhs);
                        axpy(&mut acc, &-Q::one(), &rhs);
                    }
                    if !is_zero_vec(&acc) {
                        return false;
                    }
                }
            }
        }
        true
    })
}

/// A linear map `rho: J -> End(M)` given on the basis of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiRepresentation {
    pub algebra: StructureConstants,
    pub matrices: Vec<Vec<Vec<Q>>>,
}

impl BiRepresentation {
    pub fn module_dim(&self) -> usize {
        self.matrices.first().map_or(0, Vec::len)
    }

    pub fn rho(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let d = self.module_dim();
        let mut out = vec![zeros(d); d];
        for (c, m) in x.iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(m) {
                axpy(orow, c, mrow);
            }
        }
        out
    }
}

/// Checks `[rho(a), rho(a o a)] = 0` and the cubic birepresentation identity
/// on all basis triples.
pub fn check_birepresentation(rep: &BiRepresentation) -> bool {
    let n = rep.algebra.dim;
    if rep.matrices.len() != n {
        return false;
    }
    let sc = &rep.algebra;
    let e = |i: usize| linalg::unit(n, i);
    let r: Vec<Vec<Vec<Q>>> = rep.matrices.clone();
    let mm = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| linalg::mat_mul(a, b);
    par::all_range(n, |i| {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (e(i), e(j), e(k));
                // rho(a)rho(b)rho(c) + rho(c)rho(b)rho(a) + rho((a o c) o b)
                //   = rho(a)rho(b o c) + rho(b)rho(c o a) + rho(c)rho(a o b)
                let lhs = linalg::mat_add(
                    &linalg::mat_add(&mm(&mm(&r[i], &r[j]), &r[k]), &mm(&mm(&r[k], &r[j]), &r[i])),
                    &rep.rho(&sc.mul(&sc.mul(&a, &c), &b)),
                );
                let rhs = linalg::mat_add(
                    &linalg::mat_add(&mm(&r[i], &rep.rho(&sc.mul(&b, &c))), &mm(&r[j], &rep.rho(&sc.mul(&c, &a)))),
                    &mm(&r[k], &rep.rho(&sc.mul(&a, &b))),
                );
                if !is_zero_mat(&linalg::mat_sub(&lhs, &rhs)) {
                    return false;
                }
                if i <= j && j <= k {
                    // linearized [rho(a), rho(a o a)] = 0
                    let comm = |x: &Vec<Vec<Q>>, y: &Vec<Vec<Q>>| linalg::mat_sub(&mm(x, y), &mm(y, x));
                    let t1 = comm(&r[i], &rep.rho(&sc.mul(&b, &c)));
                    let t2 = comm(&r[j], &rep.rho(&sc.mul(&c, &a)));
                    let t3 = comm(&r[k], &rep.rho(&sc.mul(&a, &b)));
                    if !is_zero_mat(&linalg::mat_add(&linalg::mat_add(&t1, &t2), &t3)) {
                        return false;
                    }
                }
            }
        }
        true
    })
}

/// Eigenspace decomposition `M = M_0 + M_1/2 + M_1` of `rho(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceSplit {
    pub zero: Vec<Vec<Q>>,
    pub half: Vec<Vec<Q>>,
    pub one: Vec<Vec<Q>>,
}

impl PeirceSplit {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.zero.len(), self.half.len(), self.one.len())
    }
}

pub fn peirce_split(rep: &BiRepresentation, unit_index: usize) -> Result<PeirceSplit> {
    let d = rep.module_dim();
    let re = rep.matrices.get(unit_index).ok_or_else(|| Error::Input("unit index out of range".into()))?;
    let id = linalg::identity(d);
    let shifted = |c: Q| linalg::mat_sub(re, &linalg::mat_scale(&id, &c));
    let cubic =
        linalg::mat_mul(&linalg::mat_mul(re, &shifted(q(1))), &linalg::mat_sub(&linalg::mat_scale(re, &q(2)), &id));
    if !is_zero_mat(&cubic) {
        return Err(Error::CubicIdentityFails);
    }
    Ok(PeirceSplit {
        zero: linalg::kernel(&shifted(q(0)), d),
        half: linalg::kernel(&shifted(qr(1, 2)), d),
        one: linalg::kernel(&shifted(q(1)), d),
    })
}

/// Symmetrized product `a o b = ab + ba` of an associative table.
pub fn plus_product(assoc: &[Vec<Vec<Q>>]) -> Result<StructureConstants> {
    let n = assoc.len();
    let m = |x: &[Q], y: &[Q]| {
        let mut out = zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi * yj), &assoc[i][j]);
                }
            }
        }
        out
    };
    let bad = par::find_first_range(n, |i| {
        for j in 0..n {
            for k in 0..n {
                let lhs = m(&assoc[i][j], &linalg::unit(n, k));
                let rhs = m(&linalg::unit(n, i), &assoc[j][k]);
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    if let Some((i, j, k)) = bad {
        return Err(Error::NotAssociative(i, j, k));
    }
    let mut sc = StructureConstants::zero(n);
    for i in 0..n {
        for j in 0..n {
            sc.products[i][j] = assoc[i][j].iter().zip(&assoc[j][i]).map(|(a, b)| a + b).collect();
        }
    }
    Ok(sc)
}

/// Associative table of `n x n` matrices on the basis of matrix units
/// `E_{ab}` (index `a*n + b`).
pub fn matrix_algebra(n: usize) -> Vec<Vec<Vec<Q>>> {
    let dim = n * n;
    let mut t = vec![vec![zeros(dim); dim]; dim];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if b == c {
                        t[a * n + b][c * n + d][a * n + d] = Q::one();
                    }
                }
            }
        }
    }
    t
}

/// `Sym_n^+(k)`: symmetric `n x n` matrices under `a o b = ab + ba`, on the
/// basis `E_aa` followed by `E_ab + E_ba` (a < b).
pub fn symmetric_matrices(n: usize) -> StructureConstants {
    let mut basis: Vec<Vec<Vec<Q>>> = Vec::new();
    let mat = |entries: &[(usize, usize)]| {
        let mut m = vec![zeros(n); n];
        for &(a, b) in entries {
            m[a][b] = Q::one();
        }
        m
    };
    for a in 0..n {
        basis.push(mat(&[(a, a)]));
    }
    for a in 0..n {
        for b in a + 1..n {
            basis.push(mat(&[(a, b), (b, a)]));
        }
    }
    let dim = basis.len();
    let flat = |m: &Vec<Vec<Q>>| m.iter().flatten().cloned().collect::<Vec<Q>>();
    let span = Span::from_vectors(n * n, &basis.iter().map(flat).collect::<Vec<_>>());
    let mut sc = StructureConstants::zero(dim);
    for i in 0..dim {
        for j in i..dim {
            let p = linalg::mat_add(&linalg::mat_mul(&basis[i], &basis[j]), &linalg::mat_mul(&basis[j], &basis[i]));
            sc.set(i, j, span.coords(&flat(&p)).expect("symmetric product stays symmetric"));
        }
    }
    sc
}
