use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use zdg_bench::{adjacency, partition, MODULI};
use zdg_core::spectra::{jacobi_eigenvalues, DEFAULT_TOLERANCE};
use zdg_core::{
    bfs_distances, build_adjacency, spectrum, Convention, SpectrumMode, DEFAULT_DENSE_CAP,
};

fn adjacency_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_adjacency");
    for n in MODULI {
        let cs = partition(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &cs, |b, cs| {
            b.iter(|| build_adjacency(black_box(cs), Convention::PaperLoops, DEFAULT_DENSE_CAP))
        });
    }
    g.finish();
}

fn dense_jacobi(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobi");
    g.sample_size(10);
    for n in [27u64, 125, 300] {
        let a = adjacency(n);
        let m = a.to_f64();
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| jacobi_eigenvalues(black_box(m), a.order(), DEFAULT_TOLERANCE))
        });
    }
    g.finish();
}

fn reduced_spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_reduced_spectrum");
    for n in MODULI {
        let cs = partition(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &cs, |b, cs| {
            b.iter(|| {
                spectrum(
                    black_box(cs),
                    Convention::PaperLoops,
                    SpectrumMode::ClassReduced,
                    DEFAULT_DENSE_CAP,
                )
            })
        });
    }
    g.finish();
}

fn bfs_wiener(c: &mut Criterion) {
    let mut g = c.benchmark_group("bfs_distances");
    for n in MODULI {
        let a = adjacency(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| bfs_distances(black_box(a)))
        });
    }
    g.finish();
}

criterion_group!(
    kernels,
    adjacency_build,
    dense_jacobi,
    reduced_spectrum,
    bfs_wiener
);
criterion_main!(kernels);
