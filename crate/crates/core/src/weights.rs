//! Exact characters of classical Lie algebras.
//!
//! Weights are stored in the standard `epsilon` basis with every coordinate
//! doubled, so spin weights stay integral. Type `A_r` uses `r + 1` coordinates
//! normalized so that the last one is zero. Products of simple systems are
//! handled by concatenating coordinates, which makes the character of an outer
//! tensor product the Cartesian product of the factor characters.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::tkk::GradedSimpleLieKind;

/// Doubled `epsilon` coordinates.
pub type Weight = Vec<i64>;

/// Upper bound on the number of distinct weights in any character built here.
pub const MAX_WEIGHT_POINTS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl SimpleFactor {
    fn len(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    fn positive_roots(&self) -> Vec<Weight> {
        let n = self.len();
        let mut out = Vec::new();
        let e = |i: usize, c: i64| {
            let mut v = vec![0; n];
            v[i] = c;
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                let mut v = e(i, 2);
                v[j] = -2;
                out.push(v);
                if self.family != Family::A {
                    let mut v = e(i, 2);
                    v[j] = 2;
                    out.push(v);
                }
            }
            match self.family {
                Family::B => out.push(e(i, 2)),
                Family::C => out.push(e(i, 4)),
                _ => {}
            }
        }
        out
    }

    fn rho(&self) -> Weight {
        let r = self.rank as i64;
        (0..self.len() as i64)
            .map(|i| match self.family {
                Family::A => 2 * (r - i),
                Family::B => 2 * r - 1 - 2 * i,
                Family::C => 2 * (r - i),
                Family::D => 2 * (r - 1 - i),
            })
            .collect()
    }

    /// A `W`-invariant inner product (scaled by `r + 1` for type A).
    fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let dot: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        match self.family {
            Family::A => {
                let n = self.len() as i64;
                n * dot - x.iter().sum::<i64>() * y.iter().sum::<i64>()
            }
            _ => dot,
        }
    }

    fn normalize(&self, x: &mut [i64]) {
        if self.family == Family::A {
            let last = x[x.len() - 1];
            if last != 0 {
                x.iter_mut().for_each(|c| *c -= last);
            }
        }
    }

    fn is_dominant(&self, x: &[i64]) -> bool {
        let n = x.len();
        let desc = x.windows(2).all(|w| w[0] >= w[1]);
        match self.family {
            Family::A => desc,
            Family::B | Family::C => desc && x[n - 1] >= 0,
            Family::D => x[..n - 1].windows(2).all(|w| w[0] >= w[1]) && (n < 2 || x[n - 2] >= x[n - 1].abs()),
        }
    }

    fn is_integral(&self, x: &[i64]) -> bool {
        match self.family {
            Family::A | Family::C => x.iter().all(|c| c % 2 == 0),
            Family::B | Family::D => {
                let p = x[0].rem_euclid(2);
                x.iter().all(|c| c.rem_euclid(2) == p)
            }
        }
    }

    fn dominant_rep(&self, x: &[i64]) -> Weight {
        let mut v = x.to_vec();
        match self.family {
            Family::A => {
                v.sort_unstable_by(|a, b| b.cmp(a));
                self.normalize(&mut v);
            }
            Family::B | Family::C => {
                v.iter_mut().for_each(|c| *c = c.abs());
                v.sort_unstable_by(|a, b| b.cmp(a));
            }
            Family::D => {
                let negs = v.iter().filter(|&&c| c < 0).count();
                let zero = v.contains(&0);
                v.iter_mut().for_each(|c| *c = c.abs());
                v.sort_unstable_by(|a, b| b.cmp(a));
                if negs % 2 == 1 && !zero {
                    let n = v.len();
                    v[n - 1] = -v[n - 1];
                }
            }
        }
        v
    }

    /// Moves `x` into the dominant chamber, returning the image and the sign
    /// of the Weyl element used, or `None` when `x` lies on a wall.
    fn strict_dominant_with_sign(&self, x: &[i64]) -> Option<(Weight, i64)> {
        let mut v = x.to_vec();
        let mut sign = 1i64;
        if matches!(self.family, Family::B | Family::C) {
            for c in v.iter_mut() {
                if *c < 0 {
                    *c = -*c;
                    sign = -sign;
                }
            }
        }
        let mut dneg = false;
        if self.family == Family::D {
            let negs = v.iter().filter(|&&c| c < 0).count();
            dneg = negs % 2 == 1 && !v.contains(&0);
            v.iter_mut().for_each(|c| *c = c.abs());
        }
        // inversion parity of the descending sort; ties lie on a wall
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                match v[i].cmp(&v[j]) {
                    std::cmp::Ordering::Less => sign = -sign,
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        let n = v.len();
        match self.family {
            Family::A => self.normalize(&mut v),
            Family::B | Family::C => {
                if v[n - 1] == 0 {
                    return None;
                }
            }
            Family::D => {
                if dneg {
                    v[n - 1] = -v[n - 1];
                }
                if n >= 2 && v[n - 2] == v[n - 1].abs() {
                    return None;
                }
            }
        }
        Some((v, sign))
    }

    fn simple_reflections(&self, x: &[i64]) -> Vec<Weight> {
        let n = x.len();
        let mut out = Vec::new();
        for i in 0..n - 1 {
            if x[i] != x[i + 1] {
                let mut v = x.to_vec();
                v.swap(i, i + 1);
                self.normalize(&mut v);
                out.push(v);
            }
        }
        match self.family {
            Family::B | Family::C if x[n - 1] != 0 => {
                let mut v = x.to_vec();
                v[n - 1] = -v[n - 1];
                out.push(v);
            }
            Family::D if n >= 2 && x[n - 2] != -x[n - 1] => {
                let mut v = x.to_vec();
                let (a, b) = (v[n - 2], v[n - 1]);
                v[n - 2] = -b;
                v[n - 1] = -a;
                out.push(v);
            }
            _ => {}
        }
        out
    }

    fn orbit(&self, x: &[i64]) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(x.to_vec());
        queue.push_back(x.to_vec());
        while let Some(v) = queue.pop_front() {
            for w in self.simple_reflections(&v) {
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `-w_0 x`.
    fn dual(&self, x: &[i64]) -> Weight {
        match self.family {
            Family::A => {
                let mut v: Weight = x.iter().rev().map(|c| -c).collect();
                self.normalize(&mut v);
                v
            }
            Family::D if self.rank % 2 == 1 => {
                let mut v = x.to_vec();
                let n = v.len();
                v[n - 1] = -v[n - 1];
                v
            }
            _ => x.to_vec(),
        }
    }

    fn fundamental(&self, k: usize) -> Weight {
        let n = self.len();
        let r = self.rank;
        assert!((1..=r).contains(&k), "fundamental weight index {k} out of range for {self}");
        match (self.family, k) {
            (Family::B, k) if k == r => vec![1; n],
            (Family::D, k) if k == r => vec![1; n],
            (Family::D, k) if k == r - 1 => {
                let mut v = vec![1; n];
                v[n - 1] = -1;
                v
            }
            _ => (0..n).map(|i| if i < k { 2 } else { 0 }).collect(),
        }
    }

    fn weyl_dim(&self, lambda: &[i64]) -> u128 {
        let rho = self.rho();
        let lr: Weight = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let (mut num, mut den) = (1u128, 1u128);
        for a in self.positive_roots() {
            let dot = |x: &[i64]| x.iter().zip(&a).map(|(p, q)| p * q).sum::<i64>();
            num *= dot(&lr) as u128;
            den *= dot(&rho) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }

    /// Multiplicities of the dominant weights of `V_lambda` (Freudenthal).
    fn dominant_multiplicities(&self, lambda: &[i64]) -> Vec<(Weight, u64)> {
        let rho = self.rho();
        let roots = self.positive_roots();
        // dominant weights below lambda
        let mut dom: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        dom.insert(lambda.to_vec());
        queue.push_back(lambda.to_vec());
        while let Some(mu) = queue.pop_front() {
            for a in &roots {
                let mut nu: Weight = mu.iter().zip(a).map(|(x, y)| x - y).collect();
                self.normalize(&mut nu);
                if self.is_dominant(&nu) && !dom.contains(&nu) {
                    dom.insert(nu.clone());
                    queue.push_back(nu);
                }
            }
        }
        let height = |x: &[i64]| self.inner(x, &rho);
        let mut order: Vec<Weight> = dom.into_iter().collect();
        order.sort_by(|x, y| height(y).cmp(&height(x)).then_with(|| y.cmp(x)));
        let plus = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(a, b)| a + b).collect::<Weight>();
        let lr = plus(lambda, &rho);
        let norm_lr = self.inner(&lr, &lr);
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        for mu in &order {
            if mu.as_slice() == lambda {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let mr = plus(mu, &rho);
            let denom = norm_lr - self.inner(&mr, &mr);
            let mut sum: i64 = 0;
            for a in &roots {
                let mut k = 1;
                loop {
                    let nu: Weight = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                    let Some(&m) = mult.get(&self.dominant_rep(&nu)) else { break };
                    sum += m as i64 * self.inner(&nu, a);
                    k += 1;
                }
            }
            let m = 2 * sum / denom;
            debug_assert_eq!(2 * sum % denom, 0);
            mult.insert(mu.clone(), m as u64);
        }
        order
            .into_iter()
            .map(|w| {
                let m = mult[&w];
                (w, m)
            })
            .filter(|(_, m)| *m > 0)
            .collect()
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A product of simple classical root systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystem {
    pub factors: Vec<SimpleFactor>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl RootSystem {
    pub fn simple(family: Family, rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        assert!(family != Family::D || rank >= 2, "type D needs rank >= 2");
        RootSystem { factors: vec![SimpleFactor { family, rank }] }
    }

    pub fn product(parts: &[RootSystem]) -> Self {
        RootSystem { factors: parts.iter().flat_map(|p| p.factors.iter().copied()).collect() }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn coord_len(&self) -> usize {
        self.factors.iter().map(SimpleFactor::len).sum()
    }

    fn slices(&self) -> Vec<(SimpleFactor, std::ops::Range<usize>)> {
        let mut at = 0;
        self.factors
            .iter()
            .map(|f| {
                let r = at..at + f.len();
                at += f.len();
                (*f, r)
            })
            .collect()
    }

    fn map_factors(&self, x: &[i64], f: impl Fn(&SimpleFactor, &[i64]) -> Weight) -> Weight {
        self.slices().into_iter().flat_map(|(s, r)| f(&s, &x[r])).collect()
    }

    pub fn zero(&self) -> Weight {
        vec![0; self.coord_len()]
    }

    pub fn rho(&self) -> Weight {
        self.factors.iter().flat_map(SimpleFactor::rho).collect()
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        let n = self.coord_len();
        let mut out = Vec::new();
        for (f, r) in self.slices() {
            for a in f.positive_roots() {
                let mut v = vec![0; n];
                v[r.clone()].copy_from_slice(&a);
                out.push(v);
            }
        }
        out
    }

    /// Fundamental weight `omega_k` (1-based) of factor `factor`.
    pub fn fundamental(&self, factor: usize, k: usize) -> Weight {
        let mut v = self.zero();
        let (f, r) = self.slices()[factor].clone();
        v[r].copy_from_slice(&f.fundamental(k));
        v
    }

    /// `sum_k c_k omega_k` for a simple system.
    pub fn from_fundamental(&self, coeffs: &[i64]) -> Weight {
        assert_eq!(coeffs.len(), self.rank(), "one coefficient per simple root");
        let mut v = self.zero();
        let mut idx = 0;
        for (fi, f) in self.factors.iter().enumerate() {
            for k in 1..=f.rank {
                let w = self.fundamental(fi, k);
                for (a, b) in v.iter_mut().zip(&w) {
                    *a += coeffs[idx] * b;
                }
                idx += 1;
            }
        }
        v
    }

    pub fn normalize(&self, x: &[i64]) -> Weight {
        self.map_factors(x, |f, s| {
            let mut v = s.to_vec();
            f.normalize(&mut v);
            v
        })
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        x.len() == self.coord_len() && self.slices().into_iter().all(|(f, r)| f.is_dominant(&x[r]))
    }

    pub fn dominant_rep(&self, x: &[i64]) -> Weight {
        self.map_factors(x, SimpleFactor::dominant_rep)
    }

    /// `<x, h> ` pairing of doubled coordinates (plain dot product).
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Functional that is strictly positive on positive roots and constant on
    /// type-A shifts.
    fn height_vector(&self) -> Weight {
        self.slices()
            .into_iter()
            .flat_map(|(f, _)| {
                let rho = f.rho();
                if f.family == Family::A {
                    let n = f.len() as i64;
                    let s: i64 = rho.iter().sum();
                    rho.iter().map(|c| n * c - s).collect()
                } else {
                    rho
                }
            })
            .collect()
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<Weight> {
        if lambda.len() != self.coord_len() {
            return Err(Error::NotDominant(format!("{lambda:?} (expected {} coordinates)", self.coord_len())));
        }
        let l = self.normalize(lambda);
        let ok = self.slices().into_iter().all(|(f, r)| f.is_dominant(&l[r.clone()]) && f.is_integral(&l[r]));
        if ok {
            Ok(l)
        } else {
            Err(Error::NotDominant(format!("{lambda:?} for {self}")))
        }
    }
}

pub fn weyl_dim(sys: &RootSystem, lambda: &[i64]) -> Result<u128> {
    let l = sys.check_dominant(lambda)?;
    Ok(sys.slices().into_iter().map(|(f, r)| f.weyl_dim(&l[r])).product())
}

/// A finite weight multiset over a fixed root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub system: RootSystem,
    pub mults: BTreeMap<Weight, u64>,
}

impl Character {
    pub fn zero(system: RootSystem) -> Self {
        Character { system, mults: BTreeMap::new() }
    }

    pub fn trivial(system: RootSystem) -> Self {
        let mut c = Character::zero(system);
        c.mults.insert(c.system.zero(), 1);
        c
    }

    pub fn dim(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Character, k: u64) {
        for (w, m) in &other.mults {
            *self.mults.entry(w.clone()).or_default() += k * m;
        }
    }

    /// `self^{(+) k}`, i.e. `k` copies.
    pub fn scaled(&self, k: u64) -> Character {
        let mut c = Character::zero(self.system.clone());
        c.add_scaled(self, k);
        c
    }

    pub fn direct_sum(&self, other: &Character) -> Result<Character> {
        same_system(self, other)?;
        let mut c = self.clone();
        c.add_scaled(other, 1);
        Ok(c)
    }

    /// Internal tensor product over the same root system.
    pub fn tensor(&self, other: &Character) -> Result<Character> {
        same_system(self, other)?;
        let pairs = self.len().saturating_mul(other.len());
        if pairs > MAX_WEIGHT_POINTS.saturating_mul(100) {
            return Err(Error::CapExceeded(format!(
                "tensor product of characters with {} x {} weights",
                self.len(),
                other.len()
            )));
        }
        let sys = &self.system;
        let partials = par::map(&self.mults.iter().collect::<Vec<_>>(), |(w1, m1)| {
            let mut acc: HashMap<Weight, u64> = HashMap::with_capacity(other.len());
            for (w2, m2) in &other.mults {
                let w = sys.normalize(&w1.iter().zip(w2.iter()).map(|(a, b)| a + b).collect::<Weight>());
                *acc.entry(w).or_default() += *m1 * m2;
            }
            acc
        });
        let mut mults = BTreeMap::new();
        for p in partials {
            for (w, m) in p {
                *mults.entry(w).or_default() += m;
            }
            if mults.len() > MAX_WEIGHT_POINTS {
                return Err(Error::CapExceeded(format!("product character exceeds {MAX_WEIGHT_POINTS} weight points")));
            }
        }
        Ok(Character { system: sys.clone(), mults })
    }

    /// Outer tensor product: a character of the product root system.
    pub fn outer(&self, other: &Character) -> Result<Character> {
        let n = self.len().saturating_mul(other.len());
        if n > MAX_WEIGHT_POINTS {
            return Err(Error::CapExceeded(format!("outer product with {n} weight points")));
        }
        let mut mults = BTreeMap::new();
        for (w1, m1) in &self.mults {
            for (w2, m2) in &other.mults {
                let w: Weight = w1.iter().chain(w2).copied().collect();
                mults.insert(w, m1 * m2);
            }
        }
        Ok(Character { system: RootSystem::product(&[self.system.clone(), other.system.clone()]), mults })
    }

    pub fn dual(&self) -> Character {
        let mults = self
            .mults
            .iter()
            .map(|(w, m)| (self.system.normalize(&w.iter().map(|c| -c).collect::<Weight>()), *m))
            .collect();
        Character { system: self.system.clone(), mults }
    }

    /// Invariance under every simple reflection.
    pub fn is_weyl_invariant(&self) -> bool {
        self.mults.iter().all(|(w, m)| {
            self.system.slices().into_iter().all(|(f, r)| {
                f.simple_reflections(&w[r.clone()]).into_iter().all(|img| {
                    let mut v = w.clone();
                    v[r.clone()].copy_from_slice(&img);
                    self.mults.get(&v) == Some(m)
                })
            })
        })
    }
}

fn same_system(a: &Character, b: &Character) -> Result<()> {
    if a.system == b.system {
        Ok(())
    } else {
        Err(Error::Input(format!("characters over different root systems ({} vs {})", a.system, b.system)))
    }
}

type MemoKey = (SimpleFactor, Weight);
type Memo = Mutex<HashMap<MemoKey, Arc<BTreeMap<Weight, u64>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn factor_character(f: SimpleFactor, lambda: &[i64]) -> Result<Arc<BTreeMap<Weight, u64>>> {
    let key = (f, lambda.to_vec());
    if let Some(c) = memo().lock().expect("memo lock").get(&key) {
        return Ok(c.clone());
    }
    let dim = f.weyl_dim(lambda);
    let dominant = f.dominant_multiplicities(lambda);
    let mut out = BTreeMap::new();
    for (mu, m) in dominant {
        for w in f.orbit(&mu) {
            out.insert(w, m);
        }
        if out.len() > MAX_WEIGHT_POINTS {
            return Err(Error::CapExceeded(format!(
                "character of {lambda:?} over {f} exceeds {MAX_WEIGHT_POINTS} weights"
            )));
        }
    }
    let mass: u64 = out.values().sum();
    if u128::from(mass) != dim {
        return Err(Error::NonDecomposable(format!("Freudenthal mass {mass} differs from Weyl dimension {dim}")));
    }
    let out = Arc::new(out);
    memo().lock().expect("memo lock").insert(key, out.clone());
    Ok(out)
}

/// Full character of the irreducible module with highest weight `lambda`.
pub fn weight_multiplicities(sys: &RootSystem, lambda: &[i64]) -> Result<Character> {
    let l = sys.check_dominant(lambda)?;
    let mut acc: Vec<(Weight, u64)> = vec![(Vec::new(), 1)];
    for (f, r) in sys.slices() {
        let fc = factor_character(f, &l[r])?;
        if acc.len().saturating_mul(fc.len()) > MAX_WEIGHT_POINTS {
            return Err(Error::CapExceeded(format!("character of {lambda:?} exceeds {MAX_WEIGHT_POINTS} weights")));
        }
        let mut next = Vec::with_capacity(acc.len() * fc.len());
        for (w, m) in &acc {
            for (w2, m2) in fc.iter() {
                next.push((w.iter().chain(w2).copied().collect(), m * m2));
            }
        }
        acc = next;
    }
    Ok(Character { system: sys.clone(), mults: acc.into_iter().collect() })
}

/// Decomposition into irreducibles by repeatedly removing the character of
/// the highest remaining weight.
pub fn decompose_leading(chi: &Character) -> Result<BTreeMap<Weight, u64>> {
    let sys = &chi.system;
    let hv = sys.height_vector();
    let mut rest: BTreeMap<Weight, i64> = chi.mults.iter().map(|(w, m)| (w.clone(), *m as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some((top, m)) = rest
        .iter()
        .filter(|(_, m)| **m != 0)
        .max_by(|(a, _), (b, _)| sys.pairing(a, &hv).cmp(&sys.pairing(b, &hv)).then_with(|| a.cmp(b)))
        .map(|(w, m)| (w.clone(), *m))
    {
        if m < 0 || !sys.is_dominant(&top) {
            return Err(Error::NonDecomposable(format!("leading weight {top:?} has multiplicity {m}")));
        }
        let irr = weight_multiplicities(sys, &top)?;
        for (w, k) in &irr.mults {
            let e = rest.entry(w.clone()).or_default();
            *e -= m * *k as i64;
            if *e == 0 {
                rest.remove(w);
            }
        }
        out.insert(top, m as u64);
    }
    Ok(out)
}

/// Decomposition by the alternating sum over the Weyl group: each weight
/// `mu` contributes `sign(w)` to the constituent `w(mu + rho) - rho`.
pub fn decompose_alternating(chi: &Character) -> Result<BTreeMap<Weight, u64>> {
    let sys = &chi.system;
    let rho = sys.rho();
    let slices = sys.slices();
    let entries: Vec<(&Weight, &u64)> = chi.mults.iter().collect();
    let partial = par::map(&entries, |(w, m)| {
        let shifted: Weight = w.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut sign = 1;
        let mut image = Vec::with_capacity(shifted.len());
        for (f, r) in &slices {
            let (v, s) = f.strict_dominant_with_sign(&shifted[r.clone()])?;
            sign *= s;
            image.extend(v.iter().zip(&rho[r.clone()]).map(|(a, b)| a - b));
        }
        Some((sys.normalize(&image), sign * **m as i64))
    });
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (w, c) in partial.into_iter().flatten() {
        *acc.entry(w).or_default() += c;
    }
    let mut out = BTreeMap::new();
    for (w, c) in acc {
        match c {
            0 => {}
            c if c > 0 => {
                out.insert(w, c as u64);
            }
            c => return Err(Error::NonDecomposable(format!("negative multiplicity {c} at {w:?}"))),
        }
    }
    Ok(out)
}

/// Constituents of `chi1 (x) chi2` with multiplicities.
pub fn tensor_decompose(chi1: &Character, chi2: &Character) -> Result<BTreeMap<Weight, u64>> {
    let prod = chi1.tensor(chi2)?;
    let out = decompose_leading(&prod)?;
    let total: u128 =
        out.iter().map(|(w, m)| weyl_dim(&prod.system, w).map(|d| d * u128::from(*m))).sum::<Result<u128>>()?;
    if total != u128::from(prod.dim()) {
        return Err(Error::NonDecomposable(format!("constituent dimensions sum to {total}, expected {}", prod.dim())));
    }
    Ok(out)
}

pub fn dual_weight(sys: &RootSystem, lambda: &[i64]) -> Result<Weight> {
    let l = sys.check_dominant(lambda)?;
    Ok(sys.map_factors(&l, SimpleFactor::dual))
}

/// Characters of `S^2 V` and `Lambda^2 V`.
pub fn ext_sym_square(chi: &Character) -> (Character, Character) {
    let sys = &chi.system;
    let mut s2 = Character::zero(sys.clone());
    let mut l2 = Character::zero(sys.clone());
    let entries: Vec<(&Weight, &u64)> = chi.mults.iter().collect();
    for (i, (w, m)) in entries.iter().enumerate() {
        let double = sys.normalize(&w.iter().map(|c| 2 * c).collect::<Weight>());
        let m = **m;
        if m * (m + 1) / 2 > 0 {
            *s2.mults.entry(double.clone()).or_default() += m * (m + 1) / 2;
        }
        if m > 1 {
            *l2.mults.entry(double).or_default() += m * (m - 1) / 2;
        }
        for (w2, m2) in &entries[i + 1..] {
            let sum = sys.normalize(&w.iter().zip(w2.iter()).map(|(a, b)| a + b).collect::<Weight>());
            *s2.mults.entry(sum.clone()).or_default() += m * **m2;
            *l2.mults.entry(sum).or_default() += m * **m2;
        }
    }
    (s2, l2)
}

/// Multiplicity of the trivial module in `chi`.
pub fn trivial_multiplicity(chi: &Character) -> Result<u64> {
    let zero = chi.system.zero();
    Ok(decompose_alternating(chi)?.get(&zero).copied().unwrap_or(0))
}

/// `+1` if `V_lambda` carries an invariant symmetric form, `-1` if skew, `0`
/// if it is not self-dual.
pub fn fs_indicator(sys: &RootSystem, lambda: &[i64]) -> i32 {
    let Ok(dual) = dual_weight(sys, lambda) else { return 0 };
    if dual != sys.normalize(lambda) {
        return 0;
    }
    let chi = weight_multiplicities(sys, lambda).expect("dominant weight has a character");
    let (s2, _) = ext_sym_square(&chi);
    if trivial_multiplicity(&s2).expect("symmetric square decomposes") > 0 {
        1
    } else {
        -1
    }
}

/// Grading element of a short-graded simple algebra, in doubled coordinates.
pub fn grading_cocharacter(kind: GradedSimpleLieKind) -> Option<Weight> {
    use GradedSimpleLieKind as K;
    match kind {
        K::SL2 => Some(vec![1, -1]),
        K::SL { n } => Some((0..2 * n).map(|i| if i < n { 1 } else { -1 }).collect()),
        K::SP { n } => Some(vec![1; n as usize]),
        K::SO1 { n } => {
            let mut v = vec![1; 2 * n as usize];
            *v.last_mut().unwrap() = -1;
            Some(v)
        }
        K::SO2Odd { m } | K::SO2Even { m } => {
            let mut v = vec![0; m as usize];
            v[0] = 2;
            Some(v)
        }
        K::E7 => None,
    }
}

/// Eigenvalues of the grading element on `V_lambda`, doubled (so `{-1, 1}`
/// means `{-1/2, 1/2}`).
pub fn grading_eigenvalues(kind: GradedSimpleLieKind, lambda: &[i64]) -> Result<BTreeSet<i64>> {
    let sys = kind.root_system().ok_or_else(|| Error::Input(format!("no root system data for {kind}")))?;
    let h = grading_cocharacter(kind).expect("classical kinds have a cocharacter");
    let chi = weight_multiplicities(&sys, lambda)?;
    Ok(chi.mults.keys().map(|w| sys.pairing(w, &h) / 2).collect())
}
