use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use poncelet_core::{trace_locus, Dd, Family, FamilyConfig, Tracked, Triangle};
use std::hint::black_box;

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    for family in [Family::BicI, Family::BicII, Family::BicIII, Family::ConfI, Family::ConfII, Family::ConfIII] {
        let cfg = FamilyConfig::representative(family);
        g.bench_with_input(BenchmarkId::new("f64", family), &cfg, |b, cfg| b.iter(|| black_box(cfg.sweep::<f64>(256))));
        g.bench_with_input(BenchmarkId::new("dd", family), &cfg, |b, cfg| b.iter(|| black_box(cfg.sweep::<Dd>(256))));
    }
    g.finish();
}

fn single_triangle(c: &mut Criterion) {
    let cfg = FamilyConfig::representative(Family::ConfII);
    c.bench_function("triangle/conf-II/dd", |b| b.iter(|| black_box(cfg.triangle::<Dd>(black_box(0.7)).map(|t: Triangle<Dd>| t.p1))));
}

fn traces(c: &mut Criterion) {
    let cfg = FamilyConfig::representative(Family::BicII);
    let mut g = c.benchmark_group("trace_locus");
    for n in [64, 256, 1024] {
        g.bench_with_input(BenchmarkId::new("bic-II/X2", n), &n, |b, &n| b.iter(|| black_box(trace_locus(&cfg, Tracked::Center(2), n))));
    }
    g.finish();
}

criterion_group!(benches, sweeps, single_triangle, traces);
criterion_main!(benches);
