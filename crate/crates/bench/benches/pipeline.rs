//! Closed-form pipeline, oracle and Cartan chain timings.

use criterion::{criterion_group, criterion_main, Criterion};
use g235::cartan::{cartan_chain, gauged_flat_coframe};
use g235::oracle::oracle_invariants;
use g235::{int, Invariants, OracleOptions, PipelineOptions};
use g235_bench::{monge, point};

fn closed_form(c: &mut Criterion) {
    for f in ["q^3", "q^3 + q^2*y"] {
        let (x1, x2) = monge(f);
        c.bench_function(&format!("invariants {f}"), |b| b.iter(|| Invariants::compute(&x1, &x2, PipelineOptions::default()).unwrap()));
    }
}

fn oracle(c: &mut Criterion) {
    let (x1, x2) = monge("q^3 + q^2*y");
    let inv = Invariants::compute(&x1, &x2, PipelineOptions::default()).unwrap();
    let q = point();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for order in [12, 14] {
        let opts = OracleOptions { order, ..OracleOptions::default() };
        group.bench_function(format!("order {order}"), |b| b.iter(|| oracle_invariants(&inv.abnormal.frame, &q, &int(1), &int(2), opts).unwrap()));
    }
    group.finish();
}

fn cartan(c: &mut Criterion) {
    let cf = gauged_flat_coframe();
    let points = vec![point()];
    let mut group = c.benchmark_group("cartan");
    group.sample_size(10);
    group.bench_function("gauged flat chain", |b| b.iter(|| cartan_chain(&cf, &points, PipelineOptions::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, closed_form, oracle, cartan);
criterion_main!(benches);
