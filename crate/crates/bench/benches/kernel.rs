use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use medusa_core::certificates::{self as cert, LinearMotion};
use medusa_core::kernel::{isolate_roots, AlgebraicReal, Kernel, KernelOptions, Poly, RootCache};
use medusa_core::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn motions() -> Vec<LinearMotion> {
    let pts = [
        ([0, 0, 0], [3, 1, 2]),
        ([7, 1, 0], [5, 2, 1]),
        ([1, 6, 1], [2, 4, -1]),
        ([1, 1, 6], [0, 3, 5]),
        ([3, 3, 3], [4, -1, 2]),
    ];
    pts.iter()
        .map(|(a, b)| LinearMotion::new(a.map(|c| q(c, 3)), b.map(|c| q(c, 3)), q(0, 1), q(1, 1)))
        .collect()
}

fn certificates(c: &mut Criterion) {
    let m = motions();
    let a2 = q(2, 1);
    c.bench_function("flip certificate, five points", |b| {
        b.iter(|| cert::flip_certificate_5([&m[0], &m[1], &m[2], &m[3], &m[4]]))
    });
    c.bench_function("triangle certificate, degree 6", |b| {
        b.iter(|| cert::radius_certificate_triangle(&m[0], &m[1], &m[2], black_box(&a2)))
    });
    c.bench_function("triangle certificate, degree 10", |b| {
        b.iter(|| cert::radius_certificate_triangle_deg10(&m[0], &m[1], &m[2], black_box(&a2)))
    });
    c.bench_function("tetrahedron certificate", |b| {
        b.iter(|| cert::radius_certificate_tet([&m[0], &m[1], &m[2], &m[3]], black_box(&a2)))
    });
}

fn isolation(c: &mut Criterion) {
    let roots: Vec<Rational> = (1..=8).map(|k| q(k, 9)).collect();
    let p = &Poly::from_roots(&roots) + &Poly::constant(q(1, 1_000_000));
    c.bench_function("isolate degree 8 on [0, 1]", |b| {
        b.iter_batched(RootCache::new, |mut cache| isolate_roots(&p, &q(0, 1), &q(1, 1), &mut cache), BatchSize::SmallInput)
    });
    let m = motions();
    let flip = cert::flip_certificate_5([&m[0], &m[1], &m[2], &m[3], &m[4]]);
    let start = AlgebraicReal::from_rational(q(0, 1));
    for (name, filter) in [("with filter", true), ("without filter", false)] {
        c.bench_function(&format!("next root of a flip certificate, {name}"), |b| {
            b.iter_batched(
                || Kernel::new(KernelOptions { descartes_filter: filter, root_cache: false }),
                |mut k| k.next_root(&flip, &start, &q(0, 1), &q(1, 1)),
                BatchSize::SmallInput,
            )
        });
    }
}

criterion_group!(benches, certificates, isolation);
criterion_main!(benches);
