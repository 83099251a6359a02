//! Finite-dimensional graded pointed algebras.
//!
//! Products are written in traversal order: for paths `p` and `q`, `p * q` is
//! `p` followed by `q`, nonzero only when `p` ends where `q` starts. An algebra
//! is stored by structure constants on a per-degree basis whose degree-zero
//! part is the vertex idempotents. Resolutions are taken of the simple right
//! modules, with projective covers `e_v A`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel, q, unit, Span, Q};
use crate::par;
use crate::quiver::{BlockTemplate, QuiverReport, Relation};

pub const DEFAULT_HOM_CAP: usize = 5;
pub const DEFAULT_DEG_CAP: usize = 8;
/// Largest free module rank a resolution step may reach.
pub const MAX_FREE_RANK: usize = 4096;

/// Sparse vector: `(basis index, coefficient)` with distinct indices.
pub type Sparse = Vec<(usize, Q)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub src: usize,
    pub dst: usize,
    pub name: String,
}

/// Quiver with relations. Relations are combinations of paths of length at
/// least two, each path a list of arrow indices in traversal order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub n_vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Vec<(Q, Vec<usize>)>>,
}

fn quadratic(r: &Relation) -> Vec<(Q, Vec<usize>)> {
    r.terms.iter().map(|(c, p)| (q(*c), p.to_vec())).collect()
}

impl Presentation {
    pub fn from_report(r: &QuiverReport) -> Self {
        Presentation {
            n_vertices: r.quiver.vertices.len(),
            arrows: r.quiver.arrows.iter().map(|a| (a.src, a.dst)).collect(),
            relations: r.relations.relations.iter().map(quadratic).collect(),
        }
    }

    /// The sub-presentation on one block: its vertices (re-indexed in
    /// order), its arrows, and the relations supported on them.
    pub fn of_block(r: &QuiverReport, block: usize) -> Self {
        let b = &r.blocks[block];
        let vmap: HashMap<usize, usize> = b.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let amap: HashMap<usize, usize> = b.arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let arrows = b.arrows.iter().map(|&a| (vmap[&r.quiver.arrows[a].src], vmap[&r.quiver.arrows[a].dst])).collect();
        let relations = r
            .relations
            .relations
            .iter()
            .filter(|rel| rel.terms.iter().all(|(_, p)| p.iter().all(|a| amap.contains_key(a))))
            .map(|rel| rel.terms.iter().map(|(c, p)| (q(*c), p.iter().map(|a| amap[a]).collect())).collect())
            .collect();
        Presentation { n_vertices: b.vertices.len(), arrows, relations }
    }

    pub fn from_template(t: &BlockTemplate) -> Self {
        Presentation {
            n_vertices: t.vertex_count,
            arrows: t.arrows.iter().map(|a| (a.src, a.dst)).collect(),
            relations: t.relations.relations.iter().map(quadratic).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PointedAlgebra {
    pub n_vertices: usize,
    /// `basis[d]` spans the degree-`d` part; `basis[0][v]` is `e_v`.
    pub basis: Vec<Vec<BasisElem>>,
    /// `products[&(d1, d2)][i][j]` for `d1, d2 >= 1`, `d1 + d2 <= top`.
    products: HashMap<(usize, usize), Vec<Vec<Sparse>>>,
}

impl PointedAlgebra {
    fn build<F>(n_vertices: usize, basis: Vec<Vec<BasisElem>>, product: F) -> Self
    where
        F: Fn(usize, usize, usize, usize) -> Sparse + Sync + Send,
    {
        let top = basis.len() - 1;
        let keys: Vec<(usize, usize)> =
            (1..=top).flat_map(|d1| (1..=top - d1).map(move |d2| (d1, d2))).filter(|(a, b)| a + b <= top).collect();
        let tables = par::map(&keys, |&(d1, d2)| {
            (0..basis[d1].len())
                .map(|i| {
                    (0..basis[d2].len())
                        .map(|j| if basis[d1][i].dst == basis[d2][j].src { product(d1, i, d2, j) } else { Vec::new() })
                        .collect()
                })
                .collect()
        });
        PointedAlgebra { n_vertices, basis, products: keys.into_iter().zip(tables).collect() }
    }

    /// The semisimple algebra `k^n`.
    pub fn semisimple(n_vertices: usize) -> Self {
        PointedAlgebra::build(n_vertices, vec![idempotents(n_vertices)], |_, _, _, _| Vec::new())
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// Per-degree dimensions of `e_src A e_dst`.
    pub fn dims_between(&self, src: usize, dst: usize) -> Vec<usize> {
        self.basis.iter().map(|b| b.iter().filter(|e| e.src == src && e.dst == dst).count()).collect()
    }

    /// Product of basis elements `x = basis[d1][i]` and `y = basis[d2][j]`.
    pub fn mul(&self, d1: usize, i: usize, d2: usize, j: usize) -> Sparse {
        let (x, y) = (&self.basis[d1][i], &self.basis[d2][j]);
        if x.dst != y.src || d1 + d2 > self.top_degree() {
            return Vec::new();
        }
        match (d1, d2) {
            (0, _) => vec![(j, Q::one())],
            (_, 0) => vec![(i, Q::one())],
            _ => self.products[&(d1, d2)][i][j].clone(),
        }
    }

    pub fn check_associative(&self) -> bool {
        let top = self.top_degree();
        for d1 in 0..=top {
            for d2 in 0..=top - d1 {
                for d3 in 0..=top - d1 - d2 {
                    for i in 0..self.basis[d1].len() {
                        for j in 0..self.basis[d2].len() {
                            for k in 0..self.basis[d3].len() {
                                let left = self.mul_sparse_right(d1 + d2, &self.mul(d1, i, d2, j), d3, k);
                                let right = self.mul_sparse_left(d1, i, d2 + d3, &self.mul(d2, j, d3, k));
                                if !sparse_eq(&left, &right) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn mul_sparse_right(&self, d: usize, x: &Sparse, t: usize, a: usize) -> Sparse {
        let mut acc = BTreeMap::new();
        for (b, c) in x {
            for (r, e) in self.mul(d, *b, t, a) {
                *acc.entry(r).or_insert_with(Q::zero) += c * e;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn mul_sparse_left(&self, t: usize, a: usize, d: usize, x: &Sparse) -> Sparse {
        let mut acc = BTreeMap::new();
        for (b, c) in x {
            for (r, e) in self.mul(t, a, d, *b) {
                *acc.entry(r).or_insert_with(Q::zero) += c * e;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn sparse_eq(a: &Sparse, b: &Sparse) -> bool {
    let norm = |s: &Sparse| s.iter().filter(|(_, c)| !c.is_zero()).cloned().collect::<BTreeMap<_, _>>();
    norm(a) == norm(b)
}

fn idempotents(n: usize) -> Vec<BasisElem> {
    (0..n).map(|v| BasisElem { src: v, dst: v, name: format!("e{v}") }).collect()
}

fn path_name(p: &[usize]) -> String {
    p.iter().map(|a| format!("a{a}")).collect::<Vec<_>>().join("*")
}

/// Basis of the path algebra modulo the ideal generated by the relations,
/// computed degree by degree until a degree vanishes.
pub fn from_presentation(p: &Presentation, deg_cap: usize) -> Result<PointedAlgebra> {
    for (a, &(s, t)) in p.arrows.iter().enumerate() {
        if s >= p.n_vertices || t >= p.n_vertices {
            return Err(Error::Input(format!("arrow {a} has an endpoint outside the vertex set")));
        }
    }
    for r in &p.relations {
        if r.iter().any(|(_, path)| path.len() < 2 || path.iter().any(|&a| a >= p.arrows.len())) {
            return Err(Error::Input("relations must be combinations of paths of length >= 2".into()));
        }
    }
    let endpoints = |path: &[usize]| (p.arrows[path[0]].0, p.arrows[path[path.len() - 1]].1);
    let mut basis = vec![idempotents(p.n_vertices)];
    let mut reps: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut levels: Vec<(Vec<Vec<usize>>, Span, Vec<usize>)> = vec![(Vec::new(), Span::new(0), Vec::new())];
    let mut paths: Vec<Vec<usize>> = (0..p.arrows.len()).map(|a| vec![a]).collect();
    let mut d = 1;
    while !paths.is_empty() {
        let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(i, x)| (x.as_slice(), i)).collect();
        let mut ideal = Span::new(paths.len());
        for r in p.relations.iter().filter(|r| r.first().is_some_and(|t| t.1.len() == d)) {
            let mut v = vec![Q::zero(); paths.len()];
            for (c, path) in r {
                if let Some(&i) = index.get(path.as_slice()) {
                    v[i] += c;
                }
            }
            ideal.insert(&v);
        }
        if d > 1 {
            let (prev_paths, prev_ideal, _) = &levels[d - 1];
            for row in prev_ideal.rows() {
                for a in 0..p.arrows.len() {
                    for left in [true, false] {
                        let mut v = vec![Q::zero(); paths.len()];
                        for (k, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            let x = &prev_paths[k];
                            let ext: Vec<usize> = if left {
                                std::iter::once(a).chain(x.iter().copied()).collect()
                            } else {
                                x.iter().copied().chain(std::iter::once(a)).collect()
                            };
                            if let Some(&i) = index.get(ext.as_slice()) {
                                v[i] += c;
                            }
                        }
                        ideal.insert(&v);
                    }
                }
            }
        }
        let free = ideal.free_columns();
        if free.is_empty() {
            break;
        }
        if d > deg_cap {
            return Err(Error::NonTerminating(deg_cap));
        }
        basis.push(
            free.iter()
                .map(|&i| {
                    let (src, dst) = endpoints(&paths[i]);
                    BasisElem { src, dst, name: path_name(&paths[i]) }
                })
                .collect(),
        );
        reps.push(free.iter().map(|&i| paths[i].clone()).collect());
        let next: Vec<Vec<usize>> = paths
            .iter()
            .flat_map(|x| {
                let end = p.arrows[x[x.len() - 1]].1;
                (0..p.arrows.len())
                    .filter(move |&a| p.arrows[a].0 == end)
                    .map(move |a| x.iter().copied().chain(std::iter::once(a)).collect::<Vec<_>>())
            })
            .collect();
        levels.push((std::mem::replace(&mut paths, next), ideal, free));
        d += 1;
    }
    let indices: Vec<HashMap<Vec<usize>, usize>> =
        levels.iter().map(|(ps, _, _)| ps.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect()).collect();
    Ok(PointedAlgebra::build(p.n_vertices, basis, |d1, i, d2, j| {
        let path: Vec<usize> = reps[d1][i].iter().chain(&reps[d2][j]).copied().collect();
        let (all, ideal, free) = &levels[d1 + d2];
        let v = unit(all.len(), indices[d1 + d2][&path]);
        ideal.quotient_coords(&v, free).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }))
}

/// One-vertex graded algebra from a monomial basis and a product that returns
/// `(sign, index)` or nothing.
fn one_vertex<F>(basis: Vec<Vec<String>>, product: F) -> PointedAlgebra
where
    F: Fn(usize, usize, usize, usize) -> Option<(i64, usize)> + Sync + Send,
{
    let basis = basis
        .into_iter()
        .map(|names| names.into_iter().map(|name| BasisElem { src: 0, dst: 0, name }).collect())
        .collect();
    PointedAlgebra::build(1, basis, |d1, i, d2, j| {
        product(d1, i, d2, j).map(|(s, k)| vec![(k, q(s))]).unwrap_or_default()
    })
}

fn monomials(w: usize, d: usize) -> Vec<Vec<usize>> {
    if w == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(w - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `S(W)` truncated above degree `top`.
pub fn symmetric_algebra(w: usize, top: usize) -> PointedAlgebra {
    let levels: Vec<Vec<Vec<usize>>> = (0..=top).map(|d| monomials(w, d)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect();
    let names = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|m| {
                    let s: Vec<String> =
                        m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, e)| format!("x{i}^{e}")).collect();
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s.join("")
                    }
                })
                .collect()
        })
        .collect();
    one_vertex(names, |d1, i, d2, j| {
        let m: Vec<usize> = levels[d1][i].iter().zip(&levels[d2][j]).map(|(a, b)| a + b).collect();
        Some((1, index[d1 + d2][&m]))
    })
}

/// `Lambda(W)`.
pub fn exterior_algebra(w: usize) -> PointedAlgebra {
    let levels: Vec<Vec<u32>> =
        (0..=w).map(|d| (0u32..1 << w).filter(|m| m.count_ones() as usize == d).collect()).collect();
    let index: HashMap<u32, usize> = levels.iter().flat_map(|l| l.iter().enumerate().map(|(i, &m)| (m, i))).collect();
    let names = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|&m| {
                    let s: Vec<String> = (0..w).filter(|b| m >> b & 1 == 1).map(|b| format!("x{b}")).collect();
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s.join("^")
                    }
                })
                .collect()
        })
        .collect();
    one_vertex(names, |d1, i, d2, j| {
        let (a, b) = (levels[d1][i], levels[d2][j]);
        if a & b != 0 {
            return None;
        }
        // sign of moving each generator of b past the larger generators of a
        let swaps: u32 = (0..w).filter(|k| b >> k & 1 == 1).map(|k| (a >> (k + 1)).count_ones()).sum();
        Some((if swaps.is_multiple_of(2) { 1 } else { -1 }, index[&(a | b)]))
    })
}

/// Degreewise tensor product `A o B` for a one-vertex graded algebra `B`.
pub fn segre_product(a: &PointedAlgebra, b: &PointedAlgebra) -> Result<PointedAlgebra> {
    if b.n_vertices != 1 {
        return Err(Error::Input("the second Segre factor must have a single vertex".into()));
    }
    let top = a.top_degree().min(b.top_degree());
    let pairs: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|d| (0..a.basis[d].len()).flat_map(|i| (0..b.basis[d].len()).map(move |k| (i, k))).collect())
        .collect();
    let index: Vec<HashMap<(usize, usize), usize>> =
        pairs.iter().map(|l| l.iter().enumerate().map(|(n, &p)| (p, n)).collect()).collect();
    let basis = pairs
        .iter()
        .enumerate()
        .map(|(d, l)| {
            l.iter()
                .map(|&(i, k)| {
                    let x = &a.basis[d][i];
                    let name = if d == 0 { x.name.clone() } else { format!("{}(x){}", x.name, b.basis[d][k].name) };
                    BasisElem { src: x.src, dst: x.dst, name }
                })
                .collect()
        })
        .collect();
    Ok(PointedAlgebra::build(a.n_vertices, basis, |d1, m, d2, n| {
        let ((i, k), (j, l)) = (pairs[d1][m], pairs[d2][n]);
        let mut out = Vec::new();
        for (x, c) in a.mul(d1, i, d2, j) {
            for (y, e) in b.mul(d1, k, d2, l) {
                out.push((index[d1 + d2][&(x, y)], &c * &e));
            }
        }
        out
    }))
}

/// Gluing along degree zero with mixed positive-degree products zero.
pub fn pi_product(a: &PointedAlgebra, b: &PointedAlgebra) -> Result<PointedAlgebra> {
    if a.n_vertices != b.n_vertices {
        return Err(Error::VertexMismatch(a.n_vertices, b.n_vertices));
    }
    let top = a.top_degree().max(b.top_degree());
    let part = |x: &PointedAlgebra, d: usize| x.basis.get(d).cloned().unwrap_or_default();
    let mut basis = vec![idempotents(a.n_vertices)];
    for d in 1..=top {
        let mut level = part(a, d);
        level.extend(part(b, d));
        basis.push(level);
    }
    let na = |d: usize| a.basis.get(d).map_or(0, Vec::len);
    Ok(PointedAlgebra::build(a.n_vertices, basis, |d1, i, d2, j| {
        let (ia, ja) = (i < na(d1), j < na(d2));
        if ia && ja && d1 + d2 <= a.top_degree() {
            a.mul(d1, i, d2, j)
        } else if !ia && !ja && d1 + d2 <= b.top_degree() {
            let off = na(d1 + d2);
            b.mul(d1, i - na(d1), d2, j - na(d2)).into_iter().map(|(k, c)| (k + off, c)).collect()
        } else {
            Vec::new()
        }
    }))
}

/// Graded Betti numbers of the minimal resolution of one simple module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub vertex: usize,
    /// `betti[i][j][w]`: generators of the `i`-th free module in internal
    /// degree `j` that sit at vertex `w`.
    pub betti: Vec<BTreeMap<usize, Vec<usize>>>,
    /// The resolution reached zero before the homological cap.
    pub finite: bool,
}

impl Resolution {
    pub fn b(&self, i: usize, j: usize) -> usize {
        self.betti.get(i).and_then(|m| m.get(&j)).map_or(0, |v| v.iter().sum())
    }

    /// Every generator in homological degree `i` has internal degree `i`.
    pub fn is_linear(&self) -> bool {
        self.betti.iter().enumerate().all(|(i, m)| m.iter().all(|(&j, v)| j == i || v.iter().all(|&n| n == 0)))
    }
}

/// Free right module `(+)_g e_{w_g} A (-s_g)`.
struct Free<'a> {
    alg: &'a PointedAlgebra,
    gens: Vec<(usize, usize)>,
    by_src: &'a [Vec<Vec<usize>>],
    pos: &'a [Vec<usize>],
}

impl Free<'_> {
    /// Offsets of each generator's block in degree `j` (`None` if empty).
    fn layout(&self, j: usize) -> (Vec<Option<usize>>, usize) {
        let mut off = Vec::with_capacity(self.gens.len());
        let mut len = 0;
        for &(w, s) in &self.gens {
            match j.checked_sub(s).filter(|&t| t <= self.alg.top_degree()) {
                Some(t) => {
                    off.push(Some(len));
                    len += self.by_src[t][w].len();
                }
                None => off.push(None),
            }
        }
        (off, len)
    }

    /// `x * a` for `x` in degree `j` and `a = basis[t][k]`.
    fn act(&self, j: usize, x: &[Q], t: usize, k: usize) -> Vec<Q> {
        let (off_j, _) = self.layout(j);
        let (off_out, len_out) = self.layout(j + t);
        let mut out = vec![Q::zero(); len_out];
        for (g, &(w, s)) in self.gens.iter().enumerate() {
            let (Some(o), Some(oo)) = (off_j[g], off_out[g]) else { continue };
            let d = j - s;
            for (p, &b) in self.by_src[d][w].iter().enumerate() {
                let c = &x[o + p];
                if c.is_zero() {
                    continue;
                }
                for (r, e) in self.alg.mul(d, b, t, k) {
                    out[oo + self.pos[d + t][r]] += c * &e;
                }
            }
        }
        out
    }

    /// Component of `x` (degree `j`) supported on elements ending at `w`.
    fn project(&self, j: usize, x: &[Q], w: usize) -> Vec<Q> {
        let (off, _) = self.layout(j);
        let mut out = vec![Q::zero(); x.len()];
        for (g, &(v, s)) in self.gens.iter().enumerate() {
            let Some(o) = off[g] else { continue };
            let d = j - s;
            for (p, &b) in self.by_src[d][v].iter().enumerate() {
                if self.alg.basis[d][b].dst == w {
                    out[o + p] = x[o + p].clone();
                }
            }
        }
        out
    }
}

/// Minimal graded projective resolution of the simple at `vertex`, up to
/// homological degree `hom_cap`.
pub fn minimal_resolution(alg: &PointedAlgebra, vertex: usize, hom_cap: usize) -> Result<Resolution> {
    if vertex >= alg.n_vertices {
        return Err(Error::Input(format!("vertex {vertex} out of range")));
    }
    let top = alg.top_degree();
    let by_src: Vec<Vec<Vec<usize>>> = alg
        .basis
        .iter()
        .map(|b| (0..alg.n_vertices).map(|v| (0..b.len()).filter(|&i| b[i].src == v).collect()).collect())
        .collect();
    let pos: Vec<Vec<usize>> = alg
        .basis
        .iter()
        .enumerate()
        .map(|(d, b)| {
            let mut p = vec![0; b.len()];
            for list in &by_src[d] {
                for (n, &i) in list.iter().enumerate() {
                    p[i] = n;
                }
            }
            p
        })
        .collect();
    let mut res = Resolution { vertex, ..Default::default() };
    let mut counts = vec![0; alg.n_vertices];
    counts[vertex] = 1;
    res.betti.push(BTreeMap::from([(0, counts)]));

    let mut free = Free { alg, gens: vec![(vertex, 0)], by_src: &by_src, pos: &pos };
    // the syzygy, as a basis per internal degree
    let mut syz: BTreeMap<usize, Vec<Vec<Q>>> = (1..=top)
        .map(|j| {
            let n = free.layout(j).1;
            (j, (0..n).map(|i| unit(n, i)).collect())
        })
        .filter(|(_, v): &(usize, Vec<Vec<Q>>)| !v.is_empty())
        .collect();

    for _ in 1..=hom_cap {
        if syz.is_empty() {
            res.finite = true;
            break;
        }
        // minimal generators: complement of syz * A_+ in each degree and vertex
        let mut gens: Vec<(usize, usize, Vec<Q>)> = Vec::new();
        let mut betti: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&j, basis_j) in &syz {
            let len = free.layout(j).1;
            let mut span = Span::new(len);
            for (&i, basis_i) in syz.range(..j) {
                let t = j - i;
                if t > top {
                    continue;
                }
                for x in basis_i {
                    for k in 0..alg.basis[t].len() {
                        span.insert(&free.act(i, x, t, k));
                    }
                }
            }
            for w in 0..alg.n_vertices {
                for x in basis_j {
                    let part = free.project(j, x, w);
                    if span.insert(&part) {
                        betti.entry(j).or_insert_with(|| vec![0; alg.n_vertices])[w] += 1;
                        gens.push((w, j, part));
                    }
                }
            }
        }
        if gens.len() > MAX_FREE_RANK {
            return Err(Error::CapExceeded(format!("free module of rank {} in a resolution", gens.len())));
        }
        res.betti.push(betti);
        let next = Free { alg, gens: gens.iter().map(|(w, j, _)| (*w, *j)).collect(), by_src: &by_src, pos: &pos };
        let lo = gens.iter().map(|g| g.1).min().unwrap_or(0);
        let hi = gens.iter().map(|g| g.1).max().unwrap_or(0) + top;
        let kernels = par::map_range(hi - lo + 1, |off| {
            let j = lo + off;
            let (layout, n) = next.layout(j);
            let m = free.layout(j).1;
            let mut cols: Vec<Vec<Q>> = Vec::with_capacity(n);
            for (g, (w, s, x)) in gens.iter().enumerate() {
                if layout[g].is_none() {
                    continue;
                }
                for &b in &by_src[j - s][*w] {
                    cols.push(free.act(*s, x, j - s, b));
                }
            }
            let rows: Vec<Vec<Q>> = (0..m).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            (j, if m == 0 { (0..n).map(|i| unit(n, i)).collect() } else { kernel(&rows, n) })
        });
        syz = kernels.into_iter().filter(|(_, k)| !k.is_empty()).collect();
        free = next;
    }
    if syz.is_empty() {
        res.finite = true;
    }
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub koszul: bool,
    pub resolutions: Vec<Resolution>,
}

/// Linearity of the minimal resolutions of all simples up to `hom_cap`.
pub fn koszul_check(alg: &PointedAlgebra, hom_cap: usize) -> Result<KoszulReport> {
    let resolutions = par::map_range(alg.n_vertices, |v| minimal_resolution(alg, v, hom_cap))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(KoszulReport { koszul: resolutions.iter().all(Resolution::is_linear), resolutions })
}

/// Koszul verdict for one block of a quiver report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockKoszul {
    pub block: usize,
    pub dims: Vec<usize>,
    pub report: KoszulReport,
}

/// Builds each block's algebra and checks linearity of its resolutions.
pub fn koszul_blocks(r: &QuiverReport, hom_cap: usize, deg_cap: usize) -> Result<Vec<BlockKoszul>> {
    (0..r.blocks.len())
        .map(|b| {
            let alg = from_presentation(&Presentation::of_block(r, b), deg_cap)?;
            Ok(BlockKoszul { block: b, dims: alg.dims(), report: koszul_check(&alg, hom_cap)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{relations_of, BlockKind};

    fn loops(n: usize) -> Presentation {
        Presentation { n_vertices: 1, arrows: vec![(0, 0); n], relations: Vec::new() }
    }

    #[test]
    fn exterior_by_presentation() {
        let mut p = loops(2);
        p.relations =
            vec![vec![(q(1), vec![0, 0])], vec![(q(1), vec![1, 1])], vec![(q(1), vec![0, 1]), (q(1), vec![1, 0])]];
        let a = from_presentation(&p, DEFAULT_DEG_CAP).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 1]);
        assert!(a.check_associative());
        assert_eq!(exterior_algebra(2).dims(), vec![1, 2, 1]);
    }

    #[test]
    fn a1_dimension() {
        let p = Presentation { n_vertices: 2, arrows: vec![(0, 1), (1, 0)], relations: vec![vec![(q(1), vec![1, 0])]] };
        let a = from_presentation(&p, DEFAULT_DEG_CAP).unwrap();
        assert_eq!(a.dims(), vec![2, 2, 1]);
        assert_eq!(a.dims_between(0, 0), vec![1, 0, 1]);
    }

    #[test]
    fn zero_relation_two_cycle() {
        let p = Presentation {
            n_vertices: 2,
            arrows: vec![(0, 1), (1, 0)],
            relations: vec![vec![(q(1), vec![0, 1])], vec![(q(1), vec![1, 0])]],
        };
        assert_eq!(from_presentation(&p, DEFAULT_DEG_CAP).unwrap().dim(), 4);
    }

    #[test]
    fn free_loop_does_not_terminate() {
        assert!(matches!(from_presentation(&loops(1), 4), Err(Error::NonTerminating(4))));
    }

    #[test]
    fn segre_matches_templates() {
        let p = Presentation { n_vertices: 2, arrows: vec![(0, 1), (1, 0)], relations: vec![vec![(q(1), vec![1, 0])]] };
        let a1 = from_presentation(&p, DEFAULT_DEG_CAP).unwrap();
        for (b, kind) in
            [(symmetric_algebra(2, 2), BlockKind::A1SegreSym), (exterior_algebra(2), BlockKind::A1SegreAlt)]
        {
            let s = segre_product(&a1, &b).unwrap();
            assert!(s.check_associative());
            let t =
                from_presentation(&Presentation::from_template(&relations_of(kind, &[2])), DEFAULT_DEG_CAP).unwrap();
            for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                assert_eq!(s.dims_between(x, y), t.dims_between(x, y));
            }
        }
        let trivial = symmetric_algebra(0, 0);
        assert_eq!(segre_product(&a1, &trivial).unwrap().dims(), vec![2]);
    }

    #[test]
    fn pi_products() {
        let p = pi_product(&exterior_algebra(1), &exterior_algebra(1)).unwrap();
        assert_eq!(p.dims(), vec![1, 2]);
        assert!(p.check_associative());
        let a = exterior_algebra(2);
        assert_eq!(pi_product(&a, &PointedAlgebra::semisimple(1)).unwrap().dims(), a.dims());
        assert!(matches!(pi_product(&a, &PointedAlgebra::semisimple(2)), Err(Error::VertexMismatch(1, 2))));
    }

    #[test]
    fn exterior_resolution() {
        let r = minimal_resolution(&exterior_algebra(2), 0, 5).unwrap();
        for i in 0..=5 {
            assert_eq!(r.b(i, i), i + 1);
        }
        assert!(r.is_linear());
    }

    #[test]
    fn semisimple_resolution() {
        let r = minimal_resolution(&PointedAlgebra::semisimple(1), 0, 5).unwrap();
        assert_eq!(r.betti.len(), 1);
        assert!(r.finite);
    }

    #[test]
    fn cubic_relation_is_not_koszul() {
        let mut p = loops(1);
        p.relations = vec![vec![(q(1), vec![0, 0, 0])]];
        let a = from_presentation(&p, DEFAULT_DEG_CAP).unwrap();
        let k = koszul_check(&a, 3).unwrap();
        assert!(!k.koszul);
        assert_eq!(k.resolutions[0].b(2, 3), 1);
    }

    #[test]
    fn radical_square_zero_is_koszul() {
        let p = Presentation {
            n_vertices: 2,
            arrows: vec![(0, 1), (1, 0), (0, 0)],
            relations: vec![
                vec![(q(1), vec![0, 1])],
                vec![(q(1), vec![1, 0])],
                vec![(q(1), vec![2, 2])],
                vec![(q(1), vec![2, 0])],
                vec![(q(1), vec![1, 2])],
            ],
        };
        let a = from_presentation(&p, DEFAULT_DEG_CAP).unwrap();
        assert_eq!(a.top_degree(), 1);
        assert!(koszul_check(&a, 5).unwrap().koszul);
    }

    #[test]
    fn a2_first_syzygies() {
        let (k, l) = (2, 1);
        let t = relations_of(BlockKind::A2Segre, &[k, l]);
        let a = from_presentation(&Presentation::from_template(&t), DEFAULT_DEG_CAP).unwrap();
        assert!(a.check_associative());
        let rep = koszul_check(&a, 5).unwrap();
        assert!(rep.koszul);
        // 0 -> (k e_L)^l -> P_S -> k e_S -> 0
        let s = &rep.resolutions[0];
        assert_eq!(s.betti[1], BTreeMap::from([(1, vec![0, l, 0])]));
        assert_eq!(s.betti[2], BTreeMap::from([(2, vec![k * l, 0, l * l])]));
        let lv = &rep.resolutions[1];
        assert_eq!(lv.betti[1], BTreeMap::from([(1, vec![k, 0, l])]));
        assert_eq!(lv.betti[2], BTreeMap::from([(2, vec![0, k * l, 0])]));
    }
}
