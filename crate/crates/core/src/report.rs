//! Serialization of quiver reports: versioned JSON, DOT and plain text.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path_algebra::KoszulReport;
use crate::quiver::{Block, BlockKind, QuiverReport, Relation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Versioned<T> {
    #[serde(rename = "schemaVersion")]
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

/// Pretty JSON with a `schemaVersion` field, newline-terminated.
pub fn to_json<T: Serialize>(body: &T) -> String {
    let mut s =
        serde_json::to_string_pretty(&Versioned { schema_version: SCHEMA_VERSION, body }).expect("serializable");
    s.push('\n');
    s
}

pub fn report_from_json(text: &str) -> Result<QuiverReport> {
    let v: Versioned<QuiverReport> = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    if v.schema_version != SCHEMA_VERSION {
        return Err(Error::Input(format!("unsupported schemaVersion {}", v.schema_version)));
    }
    Ok(v.body)
}

fn relation_text(r: &Relation) -> String {
    let mut s = String::new();
    for (i, (c, [x, y])) in r.terms.iter().enumerate() {
        let sign = if *c < 0 {
            "-"
        } else if i > 0 {
            "+"
        } else {
            ""
        };
        let mag = c.unsigned_abs();
        let coef = if mag == 1 { String::new() } else { format!("{mag}") };
        let sep = if i > 0 { " " } else { "" };
        let _ = write!(s, "{sep}{sign}{coef}a{x}.a{y}");
    }
    s + " = 0"
}

pub fn emit_dot(r: &QuiverReport) -> String {
    let mut s = String::from("digraph quiver {\n  rankdir=LR;\n");
    for (i, v) in r.quiver.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label=\"c{}:{}\"];", v.color, v.label);
    }
    for a in &r.quiver.arrows {
        let style = if a.color % 2 == 1 { ", style=dashed" } else { "" };
        let _ = writeln!(s, "  v{} -> v{} [label=\"g{}w{}\"{style}]; // a{}", a.src, a.dst, a.color, a.w_index, a.id);
    }
    for rel in &r.relations.relations {
        let _ = writeln!(s, "  // relation: {}", relation_text(rel));
    }
    if r.wild {
        s.push_str("  // wild\n");
    }
    s.push_str("}\n");
    s
}

/// Short name of the underlying arrow pattern of a block (one arrow per
/// shape, ignoring `W`).
pub fn block_shape(r: &QuiverReport, b: &Block) -> String {
    let mut edges: Vec<(usize, usize)> =
        b.arrows.iter().map(|&a| (r.quiver.arrows[a].src, r.quiver.arrows[a].dst)).collect();
    edges.sort_unstable();
    edges.dedup();
    let loops = edges.iter().filter(|(x, y)| x == y).count();
    let others = edges.len() - loops;
    let back = edges.iter().filter(|(x, y)| x < y && edges.contains(&(*y, *x))).count();
    match (b.vertices.len(), loops, others, back) {
        (1, 1, 0, _) => "loop".into(),
        (_, 2, 0, _) => "two loops".into(),
        (2, 0, 2, 1) => "2-cycle".into(),
        (2, 0, 1, _) => "arrow".into(),
        (3, 0, 4, 2) => "two 2-cycles through a middle vertex".into(),
        (v, l, o, _) => format!("{v} vertices, {l} loops, {o} arrows"),
    }
}

pub fn kind_name(k: BlockKind) -> &'static str {
    match k {
        BlockKind::ZeroRelations => "zero relations",
        BlockKind::A1SegreSym => "A1 o S(W)",
        BlockKind::A1SegreAlt => "A1 o Lambda(W)",
        BlockKind::A2Segre => "A2 o S(W+W')",
        BlockKind::CliffordOdd => "Lambda(W)",
        BlockKind::CliffordEven => "Z2-graded Lambda(W)",
    }
}

pub fn emit_blocks(r: &QuiverReport) -> String {
    let mut s = String::from("block\tkind\tshape\tvertices\tarrows\tmodule\n");
    for (i, b) in r.blocks.iter().enumerate() {
        let verts: Vec<String> = b.vertices.iter().map(|&v| r.quiver.vertices[v].label.clone()).collect();
        let _ = writeln!(
            s,
            "{i}\t{}\t{}\t{}\t{}\t{}",
            kind_name(b.kind),
            block_shape(r, b),
            verts.join(","),
            b.arrows.len(),
            b.name
        );
    }
    s
}

pub fn emit_text(r: &QuiverReport) -> String {
    let mut s = String::new();
    let summands: Vec<String> = r.datum.summands.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "summands: {}", summands.join(" + "));
    let _ = writeln!(s, "vertices: {}", r.quiver.vertices.len());
    for (i, v) in r.quiver.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} c{}:{}", v.color, v.label);
    }
    let _ = writeln!(s, "arrows: {}", r.quiver.arrows.len());
    for a in &r.quiver.arrows {
        let _ = writeln!(s, "  a{}: v{} -> v{} (g{}w{})", a.id, a.src, a.dst, a.color, a.w_index);
    }
    let _ = writeln!(s, "relations: {}", r.relations.relations.len());
    for rel in &r.relations.relations {
        let _ = writeln!(s, "  {}", relation_text(rel));
    }
    let _ = writeln!(s, "blocks: {}", r.blocks.len());
    s.push_str(&emit_blocks(r));
    let _ = writeln!(s, "isolated vertices: {:?}", r.isolated_vertices);
    let _ = writeln!(s, "wild: {}", r.wild);
    let _ = writeln!(s, "central extension: {}", r.central_extension.total);
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn emit_koszul_text(k: &KoszulReport) -> String {
    let mut s = String::new();
    for res in &k.resolutions {
        let _ = writeln!(s, "simple at v{}:{}", res.vertex, if res.finite { " (finite)" } else { "" });
        for (i, row) in res.betti.iter().enumerate() {
            let entries: Vec<String> = row.iter().map(|(j, v)| format!("b[{i},{j}]={v:?}")).collect();
            let _ = writeln!(s, "  {}", entries.join(" "));
        }
    }
    let _ = writeln!(s, "koszul: {}", k.koszul);
    s
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| Error::Input(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{JordanSpec, RadicalComponentSpec, SimpleIdealKind};
    use crate::quiver::assemble;

    fn sl6_ad() -> QuiverReport {
        let spec = JordanSpec {
            ideals: vec![SimpleIdealKind::Hermitian { comp: 2, n: 3 }],
            radical: vec![RadicalComponentSpec::Unital { ideal: 0, label: "ad".into(), mult: 1 }],
            unital: true,
        };
        assemble(&spec).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let r = sl6_ad();
        let text = to_json(&r);
        assert!(text.contains("\"schemaVersion\": 1"));
        assert_eq!(report_from_json(&text).unwrap(), r);
    }

    #[test]
    fn dot_is_deterministic() {
        let r = sl6_ad();
        let dot = emit_dot(&r);
        assert_eq!(dot, emit_dot(&sl6_ad()));
        assert!(dot.contains("v0 [label=\"c0:V\"]"));
        assert!(dot.contains("v0 -> v0 [label=\"g0w0\"]"));
        assert!(dot.contains("// relation: a0.a0 = 0"));
    }

    #[test]
    fn relation_formatting() {
        assert_eq!(relation_text(&Relation::binomial([0, 1], -1, [2, 3])), "a0.a1 +a2.a3 = 0");
        assert_eq!(relation_text(&Relation::binomial([0, 1], 1, [2, 3])), "a0.a1 -a2.a3 = 0");
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, "x").unwrap();
        write_atomic(&p, "y").unwrap();
        assert_eq!(std::fs::read_to_string(p).unwrap(), "y");
    }
}
