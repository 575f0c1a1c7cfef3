use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fusionlim::amalgam::{cgp_functor, completion_fusion};
use fusionlim::fixtures::psl32_amalgam;
use fusionlim::funmod::{cohomology_functor, DEFAULT_BAR_BOUND};
use fusionlim::holim::{higher_limits, DEFAULT_CHAIN_BUDGET};
use fusionlim::orbitcat::OrbitCategory;
use std::hint::black_box;
use std::sync::Arc;

fn pools() -> Vec<(&'static str, Option<rayon::ThreadPool>)> {
    let mut v = vec![(
        "sequential",
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap(),
        ),
    )];
    if cfg!(feature = "parallel") {
        v.push(("parallel", None));
    }
    v
}

fn run<R: Send>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> R + Send) -> R {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn bench(c: &mut Criterion) {
    let tree = psl32_amalgam().unwrap();
    let f = Arc::new(completion_fusion(&tree).unwrap());
    let coll = f.centric_collection().unwrap();
    let oc = OrbitCategory::new(f.clone(), &coll).unwrap();
    let h1 = cohomology_functor(&oc, 1, DEFAULT_BAR_BOUND).unwrap();

    let mut g = c.benchmark_group("psl32");
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new("centric_collection", name), |b| {
            b.iter(|| run(&pool, || black_box(f.centric_collection().unwrap())))
        });
        g.bench_function(BenchmarkId::new("higher_limits_h1", name), |b| {
            b.iter(|| {
                run(&pool, || {
                    black_box(higher_limits(&oc.cat, &h1, 3, DEFAULT_CHAIN_BUDGET).unwrap())
                })
            })
        });
        g.bench_function(BenchmarkId::new("cgp", name), |b| {
            b.iter(|| run(&pool, || black_box(cgp_functor(&tree, &oc).unwrap())))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench
}
criterion_main!(benches);
