use criterion::{criterion_group, criterion_main, Criterion};
use medusa_core::generate::{generate, GeneratorParams};
use medusa_core::kernel::KernelOptions;
use medusa_core::run::simulate;
use medusa_core::{Config, Rational};

fn config(prune: bool, kernel: KernelOptions) -> Config {
    Config {
        prune_certificates: prune,
        kernel,
        check_invariants: false,
        ..Config::new(Rational::from_integer(2.into()))
    }
}

fn pipeline(c: &mut Criterion) {
    let input = generate(7, &GeneratorParams::new(16, 6, 5, true)).unwrap();
    let mut group = c.benchmark_group("simulate 16 points, 6 pieces");
    group.sample_size(10);
    let variants = [
        ("all optimizations", config(true, KernelOptions::default())),
        ("no pruning", config(false, KernelOptions::default())),
        ("no filter", config(true, KernelOptions { descartes_filter: false, root_cache: true })),
        ("no cache", config(true, KernelOptions { descartes_filter: true, root_cache: false })),
    ];
    for (name, cfg) in variants {
        group.bench_function(name, |b| b.iter(|| simulate(&input, cfg.clone(), &[]).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
