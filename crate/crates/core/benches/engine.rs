use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use special_quiver::appendix::verify_appendix;
use special_quiver::jordan::{JordanSpec, LabelRef, RadicalComponentSpec, SimpleIdealKind};
use special_quiver::par;
use special_quiver::path_algebra::{
    exterior_algebra, from_presentation, koszul_check, segre_product, symmetric_algebra, Presentation,
};
use special_quiver::quiver::{assemble, relations_of, BlockKind};
use special_quiver::weights::{tensor_decompose, weight_multiplicities, Family, RootSystem};

fn both<R: Send>(c: &mut Criterion, group: &str, f: impl Fn() -> R + Sync + Send + Copy) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("path", "parallel"), |b| b.iter(f));
    g.bench_function(BenchmarkId::new("path", "sequential"), |b| b.iter(|| par::sequential(f)));
    g.finish();
}

fn tensor(c: &mut Criterion) {
    let d6 = RootSystem::simple(Family::D, 6);
    let spin = d6.fundamental(0, 6);
    let l4 = d6.fundamental(0, 4);
    both(c, "tensor_d6_spin_x_l4v", || {
        let a = weight_multiplicities(&d6, &spin).unwrap();
        let b = weight_multiplicities(&d6, &l4).unwrap();
        tensor_decompose(&a, &b).unwrap()
    });
}

fn appendix(c: &mut Criterion) {
    both(c, "verify_appendix_rank5", || verify_appendix(5).unwrap());
}

fn koszul(c: &mut Criterion) {
    let a1 = from_presentation(&Presentation::from_template(&relations_of(BlockKind::A1SegreSym, &[1])), 8).unwrap();
    let b = segre_product(&a1, &symmetric_algebra(3, 2)).unwrap();
    let ext = exterior_algebra(3);
    both(c, "koszul_a1_sym3_and_ext3", || (koszul_check(&b, 5).unwrap(), koszul_check(&ext, 5).unwrap()));
}

fn pipeline(c: &mut Criterion) {
    let spec = JordanSpec {
        ideals: vec![
            SimpleIdealKind::Field,
            SimpleIdealKind::Bilinear { dim: 9 },
            SimpleIdealKind::Hermitian { comp: 2, n: 3 },
        ],
        radical: vec![
            RadicalComponentSpec::Tensor {
                a: LabelRef { ideal: 0, label: "L".into() },
                b: LabelRef { ideal: 1, label: "Gamma".into() },
                mult: 2,
            },
            RadicalComponentSpec::Unital { ideal: 1, label: "L3V".into(), mult: 1 },
            RadicalComponentSpec::Unital { ideal: 2, label: "ad".into(), mult: 1 },
        ],
        unital: true,
    };
    both(c, "assemble_three_summands", || assemble(&spec).unwrap());
}

criterion_group!(benches, tensor, appendix, koszul, pipeline);
criterion_main!(benches);
