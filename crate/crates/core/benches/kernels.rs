//! Sequential against data-parallel evaluation of the main kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use schubert_fgl::degeneracy::essential_sufficiency_check;
use schubert_fgl::exec::Strategy;
use schubert_fgl::flag::{ck_schubert_class, fingerprint, FlagContext};
use schubert_fgl::perm::Permutation;
use schubert_fgl::verify::{self, Options};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn class_fingerprint(c: &mut Criterion) {
    let mut g = c.benchmark_group("fingerprint_ck_s5");
    let w: Permutation = "[3,5,1,4,2]".parse().unwrap();
    let class = ck_schubert_class(&FlagContext::ck(5), &w).unwrap();
    for (name, s) in STRATEGIES {
        let ctx = FlagContext::ck(5).with_strategy(s);
        g.bench_with_input(BenchmarkId::from_parameter(name), &ctx, |b, ctx| {
            b.iter(|| fingerprint(ctx, black_box(&class)))
        });
    }
    g.finish();
}

fn sufficiency(c: &mut Criterion) {
    let mut g = c.benchmark_group("essential_sufficiency_s5");
    let w: Permutation = "[2,5,3,1,4]".parse().unwrap();
    for (name, s) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| essential_sufficiency_check(black_box(&w), 200, 1, s)));
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_suites");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        let opts = Options { seed: 1, samples: 20, stop_at_first: false, strategy: s };
        g.bench_with_input(BenchmarkId::new("braid_n5", name), &opts, |b, o| b.iter(|| verify::braid(5, o)));
        g.bench_with_input(BenchmarkId::new("bott_ck_n3", name), &opts, |b, o| b.iter(|| verify::bott_ck(3, None, o)));
    }
    g.finish();
}

criterion_group!(benches, class_fingerprint, sufficiency, suites);
criterion_main!(benches);
