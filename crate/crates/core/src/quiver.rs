//! Quiver with relations of the category of special modules.
//!
//! Vertices are the `S1/2` simples of each summand. Each radical group (an
//! isotypic component with multiplicity space `W`) contributes one arrow per
//! basis vector of `W` for every pair `L_j -> L_k` with `L_k` a constituent of
//! `(L_j (x) r)^s`. Relations come from block templates, and every length-2
//! path that leaves its block is zero.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Parity};
use crate::error::Result;
use crate::jordan::{unitalize, validate_spec, JordanSpec};
use crate::par;
use crate::tkk::{
    central_extension_dim, lie_datum_of_spec, CentralExtension, GradedSimpleLieKind, LieDatum, RadicalSupport,
    SummandLabel,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    /// Index of the summand the simple module lives on.
    pub color: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
    /// Index of the radical group.
    pub color: usize,
    /// Index of the basis vector of `W`.
    pub w_index: usize,
    pub w_dim: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn arrows_between(&self, src: usize, dst: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == src && a.dst == dst)
    }

    /// Vertices with no incident arrow.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let touched: BTreeSet<usize> = self.arrows.iter().flat_map(|a| [a.src, a.dst]).collect();
        (0..self.vertices.len()).filter(|v| !touched.contains(v)).collect()
    }

    /// The three coloring conditions: at most two vertices per color, at most
    /// two arrows per color before `W`-multiplicity, and same-color arrows
    /// with distinct heads and tails.
    pub fn coloring_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut per_color: BTreeMap<usize, usize> = BTreeMap::new();
        for v in &self.vertices {
            *per_color.entry(v.color).or_default() += 1;
        }
        for (c, n) in per_color {
            if n > 2 {
                out.push(format!("{n} vertices of color {c}"));
            }
        }
        let mut by_group: BTreeMap<(usize, usize), Vec<&Arrow>> = BTreeMap::new();
        for a in &self.arrows {
            by_group.entry((a.color, a.w_index)).or_default().push(a);
        }
        for ((g, w), arrows) in by_group {
            if arrows.len() > 2 {
                out.push(format!("{} arrows of color {g} (W index {w})", arrows.len()));
            }
            for (i, x) in arrows.iter().enumerate() {
                for y in &arrows[i + 1..] {
                    if x.src == y.src || x.dst == y.dst {
                        out.push(format!("arrows {} and {} of color {g} share an endpoint", x.id, y.id));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    /// `L_1 (x) L_2` over two distinct summands.
    I,
    /// A simple `S1` module over one summand.
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RadicalGroup {
    pub index: usize,
    pub support: RadicalSupport,
    pub group_type: GroupType,
    pub w_dim: u32,
    /// The degree-one piece of the base module is one-dimensional.
    pub singular: bool,
    /// Form parity of the base module from the duality table (type I only;
    /// product of the two factors).
    pub form_parity: Parity,
    /// Produces no arrows.
    pub inert: bool,
}

/// A linear relation among length-2 paths; paths list arrow ids in
/// traversal order (first arrow first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<(i64, [usize; 2])>,
}

impl Relation {
    pub fn monomial(a: usize, b: usize) -> Self {
        Relation { terms: vec![(1, [a, b])] }
    }

    pub fn binomial(p: [usize; 2], sign: i64, q: [usize; 2]) -> Self {
        Relation { terms: vec![(1, p), (-sign, q)] }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    ZeroRelations,
    A1SegreSym,
    A1SegreAlt,
    A2Segre,
    CliffordOdd,
    CliffordEven,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub groups: Vec<usize>,
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
    /// Human-readable module description, e.g. `sl(2)+sp(6) | L(x)V (x) W^2`.
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverReport {
    pub datum: LieDatum,
    pub groups: Vec<RadicalGroup>,
    pub quiver: Quiver,
    pub relations: RelationSet,
    pub blocks: Vec<Block>,
    pub isolated_vertices: Vec<usize>,
    pub wild: bool,
    pub central_extension: CentralExtension,
    pub notes: Vec<String>,
}

fn is_sl2_standard(d: &LieDatum, sl: &SummandLabel) -> bool {
    d.summands[sl.summand] == GradedSimpleLieKind::SL2 && sl.label == "L"
}

fn is_singular(d: &LieDatum, support: &RadicalSupport) -> bool {
    use GradedSimpleLieKind as K;
    match support {
        RadicalSupport::Pair { a, b } => is_sl2_standard(d, a) && is_sl2_standard(d, b),
        // the standard module of so(n) with the second grading; sl(2) = so(3) with V = ad
        RadicalSupport::Single(sl) => match d.summands[sl.summand] {
            K::SL2 => sl.label == "ad",
            K::SO2Odd { .. } | K::SO2Even { .. } => sl.label == "L1V",
            _ => false,
        },
    }
}

fn pair_parity(d: &LieDatum, a: &SummandLabel, b: &SummandLabel) -> Parity {
    let p =
        |sl: &SummandLabel| catalog::duality_form(d.summands[sl.summand], &sl.label).map_or(Parity::None, |f| f.parity);
    match (p(a), p(b)) {
        (Parity::None, _) | (_, Parity::None) => Parity::None,
        (x, y) if x == y => Parity::Symmetric,
        _ => Parity::Skew,
    }
}

/// One group per radical entry of the (so(4)-split) datum.
pub fn group_radical(d: &LieDatum) -> Vec<RadicalGroup> {
    d.radical
        .iter()
        .enumerate()
        .map(|(index, e)| {
            let (group_type, form_parity) = match &e.support {
                RadicalSupport::Pair { a, b } => (GroupType::I, pair_parity(d, a, b)),
                RadicalSupport::Single(_) => (GroupType::II, Parity::None),
            };
            RadicalGroup {
                index,
                support: e.support.clone(),
                group_type,
                w_dim: e.w,
                singular: is_singular(d, &e.support),
                form_parity,
                inert: false,
            }
        })
        .collect()
}

/// Vertex list in (color, catalog) order.
pub fn vertices_of(d: &LieDatum) -> Vec<Vertex> {
    d.summands
        .iter()
        .enumerate()
        .flat_map(|(color, k)| catalog::s_half_simples(*k).into_iter().map(move |l| Vertex { color, label: l.name }))
        .collect()
}

/// Arrow shapes `(src, dst)` of one group, before `W`-multiplicity.
fn group_arrow_shapes(d: &LieDatum, vertices: &[Vertex], g: &RadicalGroup) -> Result<Vec<(usize, usize)>> {
    let vid = |color: usize, label: &str| vertices.iter().position(|v| v.color == color && v.label == label);
    let mut out = Vec::new();
    match &g.support {
        RadicalSupport::Single(sl) => {
            let kind = d.summands[sl.summand];
            let Some(r) = catalog::s_one_label(kind, &sl.label) else { return Ok(out) };
            if r.highest.is_none() {
                return Ok(out);
            }
            for (j, v) in vertices.iter().enumerate().filter(|(_, v)| v.color == sl.summand) {
                let lj = catalog::s_half_label(kind, &v.label).expect("vertex label");
                for (name, _) in catalog::restrict_s(kind, &lj, &r)? {
                    if let Some(k) = vid(sl.summand, &name) {
                        out.push((j, k));
                    }
                }
            }
        }
        RadicalSupport::Pair { a, b } => {
            // L_j (x) A (x) B has an S1/2 constituent only through tr in L_j (x) A
            for (x, y) in [(a, b), (b, a)] {
                let kind = d.summands[x.summand];
                let lx = catalog::s_half_label(kind, &x.label).expect("radical label");
                let target = vid(y.summand, &y.label).expect("vertex for radical label");
                for (j, v) in vertices.iter().enumerate().filter(|(_, v)| v.color == x.summand) {
                    let lj = catalog::s_half_label(kind, &v.label).expect("vertex label");
                    if catalog::restrict_s(kind, &lj, &lx)?.contains_key(catalog::TRIVIAL) {
                        out.push((j, target));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Builds the colored quiver; groups that produce no arrows are marked inert.
pub fn arrows_of(d: &LieDatum, groups: &mut [RadicalGroup]) -> Result<Quiver> {
    let vertices = vertices_of(d);
    let shapes = par::map(groups, |g| group_arrow_shapes(d, &vertices, g));
    let mut arrows = Vec::new();
    for (g, shapes) in groups.iter_mut().zip(shapes) {
        let shapes = shapes?;
        g.inert = shapes.is_empty();
        for w in 0..g.w_dim as usize {
            for &(src, dst) in &shapes {
                arrows.push(Arrow { id: 0, src, dst, color: g.index, w_index: w, w_dim: g.w_dim });
            }
        }
    }
    arrows.sort_by_key(|a| (a.color, a.w_index, a.src, a.dst));
    for (i, a) in arrows.iter_mut().enumerate() {
        a.id = i;
    }
    Ok(Quiver { vertices, arrows })
}

/// Arrow of a block template on local vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateArrow {
    /// Role name: `a`, `b`, `g`, `d` or `x` (loops).
    pub role: char,
    pub w_index: usize,
    pub src: usize,
    pub dst: usize,
}

/// A block presented on local vertices with local arrow ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTemplate {
    pub kind: BlockKind,
    pub vertex_count: usize,
    pub arrows: Vec<TemplateArrow>,
    pub relations: RelationSet,
}

impl BlockTemplate {
    pub fn arrow(&self, role: char, w: usize) -> usize {
        self.arrows.iter().position(|a| a.role == role && a.w_index == w).expect("template arrow")
    }

    /// Every composable pair of arrows that no relation mentions and that is
    /// not in `keep` is added as a zero monomial.
    fn close_with_monomials(mut self, keep: &[[usize; 2]]) -> Self {
        let mut used: BTreeSet<[usize; 2]> =
            self.relations.relations.iter().flat_map(|r| r.terms.iter().map(|t| t.1)).collect();
        used.extend(keep.iter().copied());
        for (i, x) in self.arrows.iter().enumerate() {
            for (j, y) in self.arrows.iter().enumerate() {
                if x.dst == y.src && !used.contains(&[i, j]) {
                    self.relations.relations.push(Relation::monomial(i, j));
                }
            }
        }
        self.relations.relations.sort();
        self
    }
}

/// Relation template of a block kind with the given multiplicity-space
/// dimensions (`[dim W]`, or `[dim W, dim W']` for [`BlockKind::A2Segre`]).
///
/// Local vertices: `A1*` and `CliffordEven` use `0 = L` (resp. `+`) and
/// `1 = S` (resp. `-`); `A2Segre` uses `0 = S`, `1 = L`, `2 = S*`.
/// For [`BlockKind::ZeroRelations`] the template is a single loop per `W`
/// index; real zero-relation blocks take their monomials from the quiver.
pub fn relations_of(kind: BlockKind, w_dims: &[usize]) -> BlockTemplate {
    let w = w_dims.first().copied().unwrap_or(1);
    let mut arrows = Vec::new();
    let mut push = |role: char, count: usize, src: usize, dst: usize| {
        for i in 0..count {
            arrows.push(TemplateArrow { role, w_index: i, src, dst });
        }
    };
    let vertex_count = match kind {
        BlockKind::ZeroRelations | BlockKind::CliffordOdd => {
            push('x', w, 0, 0);
            1
        }
        BlockKind::A1SegreSym | BlockKind::A1SegreAlt | BlockKind::CliffordEven => {
            push('a', w, 0, 1);
            push('b', w, 1, 0);
            2
        }
        BlockKind::A2Segre => {
            let l = w_dims.get(1).copied().unwrap_or(1);
            push('a', w, 1, 0);
            push('g', w, 2, 1);
            push('d', l, 1, 2);
            push('b', l, 0, 1);
            3
        }
    };
    let mut t = BlockTemplate { kind, vertex_count, arrows, relations: RelationSet::default() };
    let mut rels = Vec::new();
    let id = |t: &BlockTemplate, r: char, i: usize| t.arrow(r, i);
    match kind {
        BlockKind::ZeroRelations => {}
        BlockKind::A1SegreSym => {
            for i in 0..w {
                for j in i + 1..w {
                    rels.push(Relation::binomial(
                        [id(&t, 'a', i), id(&t, 'b', j)],
                        1,
                        [id(&t, 'a', j), id(&t, 'b', i)],
                    ));
                }
            }
        }
        BlockKind::A1SegreAlt => {
            for i in 0..w {
                for j in i + 1..w {
                    rels.push(Relation::binomial(
                        [id(&t, 'a', i), id(&t, 'b', j)],
                        -1,
                        [id(&t, 'a', j), id(&t, 'b', i)],
                    ));
                }
            }
        }
        BlockKind::A2Segre => {
            let l = w_dims.get(1).copied().unwrap_or(1);
            for i in 0..w {
                for j in 0..l {
                    rels.push(Relation::binomial(
                        [id(&t, 'a', i), id(&t, 'b', j)],
                        1,
                        [id(&t, 'd', j), id(&t, 'g', i)],
                    ));
                }
            }
        }
        BlockKind::CliffordOdd => {
            for i in 0..w {
                for j in i + 1..w {
                    rels.push(Relation::binomial(
                        [id(&t, 'x', i), id(&t, 'x', j)],
                        -1,
                        [id(&t, 'x', j), id(&t, 'x', i)],
                    ));
                }
            }
        }
        BlockKind::CliffordEven => {
            for i in 0..w {
                for j in i + 1..w {
                    rels.push(Relation::binomial(
                        [id(&t, 'a', i), id(&t, 'b', j)],
                        -1,
                        [id(&t, 'a', j), id(&t, 'b', i)],
                    ));
                    rels.push(Relation::binomial(
                        [id(&t, 'b', i), id(&t, 'a', j)],
                        -1,
                        [id(&t, 'b', j), id(&t, 'a', i)],
                    ));
                }
            }
        }
    }
    // in the symmetric case the diagonal cycles `a_i b_i` survive
    let keep: Vec<[usize; 2]> = match kind {
        BlockKind::A1SegreSym => (0..w).map(|i| [t.arrow('a', i), t.arrow('b', i)]).collect(),
        _ => Vec::new(),
    };
    t.relations.relations = rels;
    t.close_with_monomials(&keep)
}

/// Block kind of a single group, or of the pair `(g, partner)` for the
/// `A2` pattern.
pub fn classify_block(d: &LieDatum, g: &RadicalGroup, partner: Option<&RadicalGroup>) -> BlockKind {
    use GradedSimpleLieKind as K;
    match &g.support {
        RadicalSupport::Single(sl) if g.singular => match d.summands[sl.summand] {
            K::SO2Even { .. } => BlockKind::CliffordEven,
            _ => BlockKind::CliffordOdd,
        },
        RadicalSupport::Single(_) => BlockKind::ZeroRelations,
        RadicalSupport::Pair { .. } if g.singular => BlockKind::CliffordEven,
        RadicalSupport::Pair { a, b } => {
            let other = if is_sl2_standard(d, a) {
                b
            } else if is_sl2_standard(d, b) {
                a
            } else {
                return BlockKind::ZeroRelations;
            };
            let kind = d.summands[other.summand];
            match catalog::duality_form(kind, &other.label).map(|f| f.parity) {
                Some(Parity::Symmetric) => BlockKind::A1SegreSym,
                Some(Parity::Skew) => BlockKind::A1SegreAlt,
                _ if partner.is_some() => BlockKind::A2Segre,
                _ => BlockKind::ZeroRelations,
            }
        }
    }
}

/// For a type-I group `L (x) S` with `S` not self-dual, the group `L (x) S*`
/// on the same summands, if present.
fn a2_partner(d: &LieDatum, groups: &[RadicalGroup], g: &RadicalGroup) -> Option<usize> {
    let RadicalSupport::Pair { a, b } = &g.support else { return None };
    let (l, s) = if is_sl2_standard(d, a) && !is_sl2_standard(d, b) {
        (a, b)
    } else if is_sl2_standard(d, b) && !is_sl2_standard(d, a) {
        (b, a)
    } else {
        return None;
    };
    let form = catalog::duality_form(d.summands[s.summand], &s.label)?;
    if form.dual_label == s.label {
        return None;
    }
    let dual = SummandLabel { summand: s.summand, label: form.dual_label };
    groups.iter().position(|h| match &h.support {
        RadicalSupport::Pair { a: x, b: y } => (x == l && *y == dual) || (y == l && *x == dual),
        _ => false,
    })
}

fn describe(d: &LieDatum, g: &RadicalGroup) -> String {
    let kinds: Vec<String> = match &g.support {
        RadicalSupport::Single(sl) => vec![format!("{}", d.summands[sl.summand])],
        RadicalSupport::Pair { a, b } => vec![d.summands[a.summand].to_string(), d.summands[b.summand].to_string()],
    };
    let module = match &g.support {
        RadicalSupport::Single(sl) => sl.label.clone(),
        RadicalSupport::Pair { a, b } => format!("{}(x){}", a.label, b.label),
    };
    format!("{} | {} (x) W^{}", kinds.join("+"), module, g.w_dim)
}

fn local_vertex_map(kind: BlockKind, d: &LieDatum, q: &Quiver, groups: &[&RadicalGroup]) -> Option<Vec<usize>> {
    let vid = |sl: &SummandLabel| q.vertices.iter().position(|v| v.color == sl.summand && v.label == sl.label);
    match kind {
        BlockKind::A1SegreSym | BlockKind::A1SegreAlt => {
            let RadicalSupport::Pair { a, b } = &groups[0].support else { return None };
            let (l, s) = if is_sl2_standard(d, a) { (a, b) } else { (b, a) };
            Some(vec![vid(l)?, vid(s)?])
        }
        BlockKind::A2Segre => {
            let RadicalSupport::Pair { a, b } = &groups[0].support else { return None };
            let (l, s) = if is_sl2_standard(d, a) { (a, b) } else { (b, a) };
            let form = catalog::duality_form(d.summands[s.summand], &s.label)?;
            let sd = SummandLabel { summand: s.summand, label: form.dual_label };
            Some(vec![vid(s)?, vid(l)?, vid(&sd)?])
        }
        BlockKind::CliffordEven => {
            let arrows: Vec<&Arrow> =
                q.arrows.iter().filter(|a| a.color == groups[0].index && a.w_index == 0).collect();
            let first = arrows.iter().min_by_key(|a| a.src)?;
            Some(vec![first.src, first.dst])
        }
        BlockKind::CliffordOdd | BlockKind::ZeroRelations => {
            let a = q.arrows.iter().find(|a| a.color == groups[0].index)?;
            Some(vec![a.src])
        }
    }
}

/// Translates a template into global relations on the quiver.
fn instantiate(t: &BlockTemplate, local: &[usize], q: &Quiver, groups: &[&RadicalGroup]) -> Vec<Relation> {
    let global = |ta: &TemplateArrow| -> usize {
        let group = match (t.kind, ta.role) {
            (BlockKind::A2Segre, 'd' | 'b') => groups[1].index,
            _ => groups[0].index,
        };
        q.arrows
            .iter()
            .find(|a| a.color == group && a.w_index == ta.w_index && a.src == local[ta.src] && a.dst == local[ta.dst])
            .map(|a| a.id)
            .expect("template arrow present in quiver")
    };
    let ids: Vec<usize> = t.arrows.iter().map(global).collect();
    t.relations
        .relations
        .iter()
        .map(|r| Relation { terms: r.terms.iter().map(|(c, [x, y])| (*c, [ids[*x], ids[*y]])).collect() })
        .collect()
}

/// Blocks and the full relation set of an assembled quiver.
pub fn blocks_and_relations(d: &LieDatum, groups: &[RadicalGroup], q: &Quiver) -> (Vec<Block>, RelationSet) {
    let mut blocks = Vec::new();
    let mut claimed = vec![false; groups.len()];
    for g in groups {
        if g.inert || claimed[g.index] {
            continue;
        }
        let partner = a2_partner(d, groups, g).filter(|&p| !groups[p].inert);
        let members: Vec<&RadicalGroup> = match partner {
            Some(p) => {
                // S comes first in catalog order
                let (first, second) = {
                    let s_of = |h: &RadicalGroup| match &h.support {
                        RadicalSupport::Pair { a, b } if is_sl2_standard(d, a) => b.label.clone(),
                        RadicalSupport::Pair { a, .. } => a.label.clone(),
                        _ => String::new(),
                    };
                    let kind_other = match &g.support {
                        RadicalSupport::Pair { a, b } => {
                            if is_sl2_standard(d, a) {
                                d.summands[b.summand]
                            } else {
                                d.summands[a.summand]
                            }
                        }
                        _ => unreachable!(),
                    };
                    let order = catalog::s_half_simples(kind_other);
                    let pos = |h: &RadicalGroup| order.iter().position(|l| l.name == s_of(h)).unwrap_or(0);
                    if pos(g) <= pos(&groups[p]) {
                        (g, &groups[p])
                    } else {
                        (&groups[p], g)
                    }
                };
                vec![first, second]
            }
            None => vec![g],
        };
        for m in &members {
            claimed[m.index] = true;
        }
        let kind = classify_block(d, members[0], members.get(1).copied());
        let arrow_ids: Vec<usize> =
            q.arrows.iter().filter(|a| members.iter().any(|m| m.index == a.color)).map(|a| a.id).collect();
        let vertex_ids: BTreeSet<usize> = arrow_ids.iter().flat_map(|&i| [q.arrows[i].src, q.arrows[i].dst]).collect();
        let name = members.iter().map(|m| describe(d, m)).collect::<Vec<_>>().join(" + ");
        blocks.push((
            Block {
                kind,
                groups: members.iter().map(|m| m.index).collect(),
                vertices: vertex_ids.into_iter().collect(),
                arrows: arrow_ids,
                name,
            },
            members.iter().map(|m| m.index).collect::<Vec<_>>(),
        ));
    }

    let mut relations: BTreeSet<Relation> = BTreeSet::new();
    let mut block_of = vec![usize::MAX; q.arrows.len()];
    for (bi, (block, member_ids)) in blocks.iter().enumerate() {
        for &a in &block.arrows {
            block_of[a] = bi;
        }
        let members: Vec<&RadicalGroup> = member_ids.iter().map(|&i| &groups[i]).collect();
        let templated = block.kind != BlockKind::ZeroRelations;
        let local = if templated { local_vertex_map(block.kind, d, q, &members) } else { None };
        match local {
            Some(local) => {
                let w_dims: Vec<usize> = members.iter().map(|m| m.w_dim as usize).collect();
                let t = relations_of(block.kind, &w_dims);
                relations.extend(instantiate(&t, &local, q, &members));
            }
            None => {
                for &x in &block.arrows {
                    for &y in &block.arrows {
                        if q.arrows[x].dst == q.arrows[y].src {
                            relations.insert(Relation::monomial(x, y));
                        }
                    }
                }
            }
        }
    }
    for x in &q.arrows {
        for y in &q.arrows {
            if x.dst == y.src && block_of[x.id] != block_of[y.id] {
                relations.insert(Relation::monomial(x.id, y.id));
            }
        }
    }
    (blocks.into_iter().map(|(b, _)| b).collect(), RelationSet { relations: relations.into_iter().collect() })
}

/// True iff some isomorphism class of radical component occurs at least
/// three times.
pub fn wildness_flag(groups: &[RadicalGroup]) -> bool {
    groups.iter().any(|g| g.w_dim >= 3)
}

/// Full pipeline from a Lie datum.
pub fn assemble_datum(datum: &LieDatum) -> Result<QuiverReport> {
    let mut notes = Vec::new();
    let split = datum.with_so4_split();
    if split.summands.len() != datum.summands.len() {
        notes.push("so(4) summands replaced by sl(2)+sl(2)".to_string());
    }
    let d = split;
    let mut groups = group_radical(&d);
    let quiver = arrows_of(&d, &mut groups)?;
    for g in groups.iter().filter(|g| g.inert) {
        notes.push(format!("group {} ({}) is inert: it induces no arrows", g.index, describe(&d, g)));
    }
    let (blocks, relations) = blocks_and_relations(&d, &groups, &quiver);
    let shared: BTreeSet<usize> = {
        let mut seen = BTreeMap::new();
        for b in &blocks {
            for &v in &b.vertices {
                *seen.entry(v).or_insert(0) += 1;
            }
        }
        seen.into_iter().filter(|(_, n)| *n > 1).map(|(v, _)| v).collect()
    };
    if !shared.is_empty() {
        notes.push(format!(
            "blocks share vertices {shared:?}; they are glued along degree zero with all cross-block products zero"
        ));
    }
    let isolated_vertices = quiver.isolated_vertices();
    let wild = wildness_flag(&groups);
    let central_extension = central_extension_dim(&d);
    Ok(QuiverReport { datum: d, groups, quiver, relations, blocks, isolated_vertices, wild, central_extension, notes })
}

/// Full pipeline from a Jordan spec: validate, unitalize, map to the Lie
/// datum and build the quiver with relations.
pub fn assemble(spec: &JordanSpec) -> Result<QuiverReport> {
    let spec = unitalize(spec);
    validate_spec(&spec).into_result()?;
    assemble_datum(&lie_datum_of_spec(&spec)?)
}
