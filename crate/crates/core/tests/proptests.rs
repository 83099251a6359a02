mod common;

use proptest::prelude::*;

use common::*;
use special_quiver::catalog::{s_half_simples, s_one_simples};
use special_quiver::jordan::{plus_product, JordanSpec, RadicalComponentSpec, SimpleIdealKind};
use special_quiver::linalg::{q, Q};
use special_quiver::path_algebra::{
    exterior_algebra, from_presentation, segre_product, symmetric_algebra, Presentation,
};
use special_quiver::quiver::{assemble, relations_of, BlockKind};
use special_quiver::report::{report_from_json, to_json};
use special_quiver::tkk::GradedSimpleLieKind;
use special_quiver::Error;

const KINDS: [BlockKind; 6] = [
    BlockKind::ZeroRelations,
    BlockKind::A1SegreSym,
    BlockKind::A1SegreAlt,
    BlockKind::A2Segre,
    BlockKind::CliffordOdd,
    BlockKind::CliffordEven,
];

fn template(kind: usize, w: usize, w2: usize) -> Presentation {
    Presentation::from_template(&relations_of(KINDS[kind], &[w, w2]))
}

/// Renames vertices and arrows and reorders the relations.
fn relabel(p: &Presentation, vperm: &[usize], aperm: &[usize], rperm: &[usize]) -> Presentation {
    let mut arrows = vec![(0, 0); p.arrows.len()];
    for (a, &(s, t)) in p.arrows.iter().enumerate() {
        arrows[aperm[a]] = (vperm[s], vperm[t]);
    }
    let relations = rperm
        .iter()
        .map(|&r| {
            p.relations[r].iter().map(|(c, path)| (c.clone(), path.iter().map(|&a| aperm[a]).collect())).collect()
        })
        .collect();
    Presentation { n_vertices: p.n_vertices, arrows, relations }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn relabelled_template() -> impl Strategy<Value = (Presentation, Presentation)> {
    (0..KINDS.len(), 1usize..=3, 1usize..=2).prop_flat_map(|(k, w, w2)| {
        let p = template(k, w, w2);
        let (nv, na, nr) = (p.n_vertices, p.arrows.len(), p.relations.len());
        (Just(p), permutation(nv), permutation(na), permutation(nr)).prop_map(|(p, v, a, r)| {
            let moved = relabel(&p, &v, &a, &r);
            (p, moved)
        })
    })
}

const IDEALS: [SimpleIdealKind; 8] = [
    SimpleIdealKind::Field,
    SimpleIdealKind::Hermitian { comp: 1, n: 3 },
    SimpleIdealKind::Hermitian { comp: 2, n: 3 },
    SimpleIdealKind::Hermitian { comp: 4, n: 3 },
    SimpleIdealKind::Bilinear { dim: 3 },
    SimpleIdealKind::Bilinear { dim: 5 },
    SimpleIdealKind::Bilinear { dim: 6 },
    SimpleIdealKind::Bilinear { dim: 8 },
];

fn rank(i: &SimpleIdealKind) -> usize {
    GradedSimpleLieKind::of_ideal(i).unwrap().rank()
}

/// Specs with total rank at most 6 and up to three radical components.
fn specs() -> impl Strategy<Value = JordanSpec> {
    let ideals = prop::collection::vec(0..IDEALS.len(), 1..=3).prop_map(|ix| {
        let mut out = Vec::new();
        let mut total = 0;
        for i in ix {
            if total + rank(&IDEALS[i]) <= 6 {
                total += rank(&IDEALS[i]);
                out.push(IDEALS[i].clone());
            }
        }
        out
    });
    let components =
        prop::collection::vec((any::<bool>(), 0usize..8, 0usize..8, 0usize..8, 0usize..8, 1u32..=3), 0..=3);
    (ideals, components).prop_map(|(ideals, comps)| {
        let n = ideals.len();
        let kind = |i: usize| GradedSimpleLieKind::of_ideal(&ideals[i]).unwrap();
        let radical = comps
            .into_iter()
            .map(|(pair, a, b, la, lb, mult)| {
                let a = a % n;
                if pair && n > 1 {
                    let b = (a + 1 + b % (n - 1)) % n;
                    let (ha, hb) = (s_half_simples(kind(a)), s_half_simples(kind(b)));
                    tensor(a, &ha[la % ha.len()].name, b, &hb[lb % hb.len()].name, mult)
                } else {
                    let labels = s_one_simples(kind(a));
                    unital(a, &labels[la % labels.len()].name, mult)
                }
            })
            .collect::<Vec<RadicalComponentSpec>>();
        spec(ideals, radical)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dims_ignore_labelling((p, moved) in relabelled_template()) {
        let a = from_presentation(&p, 8).unwrap();
        let b = from_presentation(&moved, 8).unwrap();
        prop_assert_eq!(a.dims(), b.dims());
    }

    #[test]
    fn segre_series_is_hadamard(kind in 0..KINDS.len(), w in 1usize..=3, v in 1usize..=3, exterior in any::<bool>()) {
        let a = from_presentation(&template(kind, w, 1), 8).unwrap();
        let b = if exterior { exterior_algebra(v) } else { symmetric_algebra(v, 3) };
        let s = segre_product(&a, &b).unwrap();
        let (da, db) = (a.dims(), b.dims());
        let expected: Vec<usize> = (0..da.len().min(db.len())).map(|d| da[d] * db[d]).collect();
        let mut got = s.dims();
        while got.len() > 1 && got.last() == Some(&0) {
            got.pop();
        }
        let mut expected = expected;
        while expected.len() > 1 && expected.last() == Some(&0) {
            expected.pop();
        }
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn free_algebras_are_associative(w in 1usize..=4, top in 1usize..=3) {
        prop_assert!(exterior_algebra(w).check_associative());
        prop_assert!(symmetric_algebra(w, top).check_associative());
    }

    #[test]
    fn specs_and_reports_round_trip(s in specs()) {
        let text = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(JordanSpec::from_json(&text).unwrap(), s.clone());
        let r = assemble(&s).unwrap();
        prop_assert_eq!(report_from_json(&to_json(&r)).unwrap(), r);
    }
}

/// Basis product `e_i e_j = sign * e_k` of the Cayley-Dickson algebra of
/// dimension `n`.
fn cayley_dickson(n: usize, i: usize, j: usize) -> (i64, usize) {
    if n == 1 {
        return (1, 0);
    }
    let m = n / 2;
    let conj = |k: usize| if k == 0 { 1 } else { -1 };
    match (i < m, j < m) {
        (true, true) => cayley_dickson(m, i, j),
        (true, false) => {
            let (s, k) = cayley_dickson(m, j - m, i);
            (s, k + m)
        }
        (false, true) => {
            let (s, k) = cayley_dickson(m, i - m, j);
            (s * conj(j), k + m)
        }
        (false, false) => {
            let (s, k) = cayley_dickson(m, j - m, i - m);
            (-s * conj(j - m), k)
        }
    }
}

fn cayley_dickson_table(n: usize) -> Vec<Vec<Vec<Q>>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (s, k) = cayley_dickson(n, i, j);
                    let mut v = vec![q(0); n];
                    v[k] = q(s);
                    v
                })
                .collect()
        })
        .collect()
}

#[test]
fn quaternions_pass_and_octonions_fail_associativity() {
    assert!(plus_product(&cayley_dickson_table(4)).is_ok());
    assert!(matches!(plus_product(&cayley_dickson_table(8)), Err(Error::NotAssociative(..))));
}
