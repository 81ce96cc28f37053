use criterion::{criterion_group, criterion_main, Criterion};

use llvkit::sample::{random_nonisotropic, rng_from_seed};
use llvkit::{
    derivation_action, fujiki_coefficient, hard_lefschetz_check, laplacian, lefschetz_e,
    lsc_certificate, sample::degree_swap, SymBasis,
};
use llvkit_bench::{kummer_extension, kummer_sym_basis, norm_two_class};

fn bench_laplacian_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("laplacian_rank");
    group.sample_size(10);
    for n in [2u32, 3, 4] {
        let basis = kummer_sym_basis(2, n);
        group.bench_function(format!("sym{n}_dim{}", basis.len()), |b| {
            b.iter(|| {
                let (delta, target) = laplacian(&basis).unwrap();
                assert_eq!(delta.to_qmatrix().rank(), target.len());
            })
        });
    }
    group.finish();
}

fn bench_derivation_build(c: &mut Criterion) {
    let ext = kummer_extension(2);
    let f = norm_two_class();
    let raising = lefschetz_e(&ext, &f).unwrap();
    let mut group = c.benchmark_group("derivation_build");
    for n in [2u32, 3, 4] {
        let basis = SymBasis::new(&ext, n);
        group.bench_function(format!("sym{n}"), |b| {
            b.iter(|| derivation_action(&raising, &basis).unwrap())
        });
    }
    group.finish();
}

fn bench_hard_lefschetz(c: &mut Criterion) {
    let mut group = c.benchmark_group("hard_lefschetz");
    group.sample_size(10);
    let f = norm_two_class();
    for n in [2u32, 3] {
        let basis = kummer_sym_basis(2, n);
        group.bench_function(format!("sym{n}"), |b| {
            b.iter(|| {
                let report = hard_lefschetz_check(&basis, &f).unwrap();
                assert!(report.all_full_rank);
            })
        });
    }
    group.finish();
}

fn bench_fujiki(c: &mut Criterion) {
    let mut group = c.benchmark_group("fujiki_constant");
    let mut rng = rng_from_seed(1);
    for n in [2u32, 3] {
        let basis = kummer_sym_basis(2, n);
        let lattice = basis.extension().base().clone();
        let f = random_nonisotropic(&mut rng, &lattice, 10);
        group.bench_function(format!("sym{n}"), |b| {
            b.iter(|| fujiki_coefficient(&basis, &f).unwrap())
        });
    }
    group.finish();
}

fn bench_lsc_certificate(c: &mut Criterion) {
    let ext = kummer_extension(2);
    let tau = degree_swap(&ext);
    let f = norm_two_class();
    c.bench_function("lsc_certificate_swap", |b| {
        b.iter(|| lsc_certificate(&ext, &tau, &f).unwrap())
    });
}

criterion_group!(
    benches,
    bench_laplacian_rank,
    bench_derivation_build,
    bench_hard_lefschetz,
    bench_fujiki,
    bench_lsc_certificate
);
criterion_main!(benches);
