//! Parallel against sequential execution on the data-parallel kernels.
//! Without the `parallel` feature both paths run sequentially.

use std::hint::black_box;

use ccr_hopf::algebra::Presentation;
use ccr_hopf::fock::{boundedness_trend, Family};
use ccr_hopf::hopf::{AxiomChecker, HopfSpec};
use ccr_hopf::measure::{bochner_mc, GaussianModel};
use ccr_hopf::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn hopf_check(c: &mut Criterion) {
    let p = Presentation::strict();
    let mut g = c.benchmark_group("hopf_coassociativity_degree3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let checker = AxiomChecker::new(HopfSpec::deformed(), &p).degree(3).execution(exec);
                black_box(checker.coassociativity().unwrap())
            })
        });
    }
    g.finish();
}

fn bochner(c: &mut Criterion) {
    let model = GaussianModel::fock(4);
    let v = [0.3, -0.2, 0.5, 0.1];
    let mut g = c.benchmark_group("bochner_mc_200k");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(bochner_mc(&model, &v, 200_000, 42, exec).unwrap()))
        });
    }
    g.finish();
}

fn trend(c: &mut Criterion) {
    let r = 0.5 * 2f64.ln();
    let families = [Family::Uniform { r }, Family::Summable { r }];
    let mut g = c.benchmark_group("boundedness_trend_nmax30");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(boundedness_trend(&families, &[1, 2, 3], 30, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, hopf_check, bochner, trend);
criterion_main!(benches);
