//! Exact rational linear algebra: incremental row echelon spans, kernels and
//! quotient coordinates. Everything is dense but skips zero entries, which is
//! where nearly all of the work goes for the sparse systems built elsewhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Reduced row echelon span of a set of vectors, built incrementally.
///
/// Each stored row also carries its expression in terms of the independent
/// vectors accepted so far, so coordinates relative to those originals can be
/// recovered.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<Q>>,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Span { len, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a Vec<Q>>>(len: usize, vs: I) -> Self {
        let mut s = Span::new(len);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Residual of `v` after eliminating all pivot columns, together with the
    /// coefficients used per row.
    fn reduce_with(&self, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut r = v.to_vec();
        let mut used = zeros(self.rows.len());
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            axpy(&mut r, &-&c, row);
            used[k] = c;
        }
        (r, used)
    }

    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns true iff it was independent of the current span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let (mut r, used) = self.reduce_with(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let n_orig = self.combos.first().map_or(0, Vec::len) + 1;
        // combo(r) = e_new - sum used_k combo_k
        let mut combo = zeros(n_orig);
        combo[n_orig - 1] = Q::one();
        for (k, c) in used.iter().enumerate() {
            if !c.is_zero() {
                for (a, b) in combo.iter_mut().zip(&self.combos[k]) {
                    if !b.is_zero() {
                        *a -= c * b;
                    }
                }
            }
        }
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for x in combo.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for combo_k in self.combos.iter_mut() {
            combo_k.push(Q::zero());
        }
        for k in 0..self.rows.len() {
            if self.rows[k][p].is_zero() {
                continue;
            }
            let c = self.rows[k][p].clone();
            axpy(&mut self.rows[k], &-&c, &r);
            let ck = std::mem::take(&mut self.combos[k]);
            let mut ck = ck;
            axpy(&mut ck, &-&c, &combo);
            self.combos[k] = ck;
        }
        // keep rows sorted by pivot
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        self.combos.insert(at, combo);
        true
    }

    /// Coordinates of `v` in terms of the independent vectors accepted by
    /// [`Span::insert`], in insertion order. `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let n_orig = self.combos.first().map_or(0, Vec::len);
        let mut out = zeros(n_orig);
        let mut r = v.to_vec();
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            axpy(&mut r, &-&c, row);
            axpy(&mut out, &c, &self.combos[k]);
        }
        is_zero_vec(&r).then_some(out)
    }

    /// Columns that are not pivots: a basis of the quotient `k^len / span`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.len).filter(|&j| !is_pivot[j]).collect()
    }

    /// Image of `v` in the quotient, expressed on the free columns
    /// (as returned by [`Span::free_columns`]).
    pub fn quotient_coords(&self, v: &[Q], free: &[usize]) -> Vec<Q> {
        let r = self.reduce(v);
        free.iter().map(|&j| r[j].clone()).collect()
    }
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    Span::from_vectors(ncols, rows).dim()
}

/// Basis of `{x : A x = 0}` for a row-major `m x n` matrix.
pub fn kernel(a: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let span = Span::from_vectors(n, a);
    let free = span.free_columns();
    free.iter()
        .map(|&j| {
            let mut x = unit(n, j);
            for (row, &p) in span.rows().iter().zip(span.pivots()) {
                if !row[j].is_zero() {
                    x[p] = -row[j].clone();
                }
            }
            x
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zeros(n);
            for (k, x) in row.iter().enumerate() {
                axpy(&mut out, x, &b[k]);
            }
            out
        })
        .collect()
}

pub fn mat_sub(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn mat_add(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &[Vec<Q>], c: &Q) -> Vec<Vec<Q>> {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn is_zero_mat(a: &[Vec<Q>]) -> bool {
    a.iter().all(|r| is_zero_vec(r))
}

pub fn mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Q::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn abs_max(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&qr(-3, 9)), "-1/3");
    }

    #[test]
    fn span_coords_roundtrip() {
        let a = vec![q(1), q(2), q(0)];
        let b = vec![q(0), q(1), q(1)];
        let mut s = Span::new(3);
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        assert!(!s.insert(&[q(2), q(5), q(1)]));
        let c = s.coords(&[q(3), q(7), q(1)]).unwrap();
        assert_eq!(c, vec![q(3), q(1)]);
        assert!(s.coords(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![q(1), q(1), q(1)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
    }

    #[test]
    fn quotient_reduction() {
        // span{e0 - e1}; quotient basis {e1, e2}
        let s = Span::from_vectors(3, &[vec![q(1), q(-1), q(0)]]);
        let free = s.free_columns();
        assert_eq!(free, vec![1, 2]);
        assert_eq!(s.quotient_coords(&unit(3, 0), &free), vec![q(1), q(0)]);
    }
}
