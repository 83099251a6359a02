#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use special_quiver::jordan::{JordanSpec, LabelRef, RadicalComponentSpec, SimpleIdealKind};
use special_quiver::quiver::QuiverReport;

pub fn field() -> SimpleIdealKind {
    SimpleIdealKind::Field
}

/// `sp(2n)`.
pub fn sp(n: u32) -> SimpleIdealKind {
    SimpleIdealKind::Hermitian { comp: 1, n }
}

/// `sl(2n)`.
pub fn sl(n: u32) -> SimpleIdealKind {
    SimpleIdealKind::Hermitian { comp: 2, n }
}

/// `so1(4n)`.
pub fn so1(n: u32) -> SimpleIdealKind {
    SimpleIdealKind::Hermitian { comp: 4, n }
}

/// `so(2m+1)` with the second grading.
pub fn so_odd(m: u32) -> SimpleIdealKind {
    SimpleIdealKind::Bilinear { dim: 2 * m - 1 }
}

/// `so(2m)` with the second grading.
pub fn so_even(m: u32) -> SimpleIdealKind {
    SimpleIdealKind::Bilinear { dim: 2 * m - 2 }
}

pub fn unital(ideal: usize, label: &str, mult: u32) -> RadicalComponentSpec {
    RadicalComponentSpec::Unital { ideal, label: label.into(), mult }
}

pub fn tensor(a: usize, la: &str, b: usize, lb: &str, mult: u32) -> RadicalComponentSpec {
    RadicalComponentSpec::Tensor {
        a: LabelRef { ideal: a, label: la.into() },
        b: LabelRef { ideal: b, label: lb.into() },
        mult,
    }
}

pub fn spec(ideals: Vec<SimpleIdealKind>, radical: Vec<RadicalComponentSpec>) -> JordanSpec {
    JordanSpec { ideals, radical, unital: true }
}

/// Labeled quiver up to isomorphism: vertex labels `c{color}:{label}` and
/// the multiset of arrows between them.
#[derive(Debug, PartialEq, Eq)]
pub struct Shape {
    pub vertices: BTreeSet<String>,
    pub arrows: BTreeMap<(String, String), usize>,
}

pub fn shape_of(r: &QuiverReport) -> Shape {
    let name = |v: usize| format!("c{}:{}", r.quiver.vertices[v].color, r.quiver.vertices[v].label);
    let mut arrows = BTreeMap::new();
    for a in &r.quiver.arrows {
        *arrows.entry((name(a.src), name(a.dst))).or_insert(0) += 1;
    }
    Shape { vertices: (0..r.quiver.vertices.len()).map(name).collect(), arrows }
}

pub fn shape(vertices: &[&str], arrows: &[(&str, &str)]) -> Shape {
    let mut map = BTreeMap::new();
    for (s, t) in arrows {
        *map.entry((s.to_string(), t.to_string())).or_insert(0) += 1;
    }
    Shape { vertices: vertices.iter().map(|s| s.to_string()).collect(), arrows: map }
}

/// Writes a criterion verdict to stderr, bypassing the test harness capture.
pub fn verdict(n: u32, ok: bool, detail: &str) {
    use std::io::Write;
    let line = format!("[AC-{n}] {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}
