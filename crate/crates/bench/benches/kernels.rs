//! Benchmarks of the hot exact-arithmetic paths: distribution
//! construction, total-variation evaluation, and full certification runs
//! at the sizes the sweeps visit.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use steincert::dist::{narayana_dist, poisson_binomial_dist};
use steincert::metrics::tv_distance;
use steincert::rat::{rat, Rat};
use steincert::{binhat_dist, binhat_params, hyp, narayana};

fn bench_narayana(c: &mut Criterion) {
    let mut g = c.benchmark_group("narayana");
    g.sample_size(10);
    g.bench_function("dist n=200", |b| {
        b.iter(|| narayana_dist(black_box(200)).unwrap())
    });
    g.bench_function("certify n=100", |b| {
        b.iter(|| narayana::certify(black_box(100)).unwrap())
    });
    let inst = narayana::instance(150).unwrap();
    let params = binhat_params(&inst.mu, &inst.sigma2).unwrap();
    let target = binhat_dist(&params).unwrap();
    g.bench_function("tv n=150", |b| {
        b.iter(|| tv_distance(black_box(&inst.dist), black_box(&target)))
    });
    g.finish();
}

fn bench_hyp(c: &mut Criterion) {
    let mut g = c.benchmark_group("hypergeometric");
    g.sample_size(10);
    g.bench_function("certify N=60 n=30 m=30", |b| {
        b.iter(|| hyp::certify(black_box(60), 30, 30).unwrap())
    });
    g.bench_function("variance identities N=25 n=12 m=12", |b| {
        b.iter(|| hyp::s_and_variance_identities(black_box(25), 12, 12).unwrap())
    });
    g.finish();
}

fn bench_pb(c: &mut Criterion) {
    let mut g = c.benchmark_group("indicator-sum");
    g.sample_size(10);
    let long: Vec<Rat> = (0..150).map(|i| rat(i % 7 + 1, 16)).collect();
    g.bench_function("convolution 150 trials", |b| {
        b.iter(|| poisson_binomial_dist(black_box(&long)).unwrap())
    });
    let short: Vec<Rat> = (0..60).map(|i| rat(i % 7 + 1, 16)).collect();
    g.bench_function("certify 60 trials", |b| {
        b.iter(|| steincert::pb::certify(black_box(&short)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench_narayana, bench_hyp, bench_pb);
criterion_main!(benches);
