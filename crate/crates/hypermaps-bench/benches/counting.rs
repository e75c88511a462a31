//! Spanning-hypertree counting routes and the pencil spanning-tree formulas.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypermaps::ladder::{theta_closed, theta_rec, PencilSpec};
use hypermaps::refine::RefinementSpace;
use hypermaps::{refine, twocolor, whitney};
use hypermaps_bench::ladder_reciprocal;

fn bench_hypertree_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("hypertrees_ladder_reciprocal");
    for m in [2u32, 4, 6] {
        let h = ladder_reciprocal(m);
        group.bench_with_input(BenchmarkId::new("twocolor_signed_sum", m), &h, |b, h| {
            b.iter(|| std::hint::black_box(twocolor::hypertree_count(h).unwrap()))
        });
        if m <= 4 {
            group.bench_with_input(BenchmarkId::new("whitney_at_origin", m), &h, |b, h| {
                b.iter(|| std::hint::black_box(whitney::hypertree_count(h).unwrap()))
            });
        }
        if m <= 2 {
            group.bench_with_input(BenchmarkId::new("enumeration", m), &h, |b, h| {
                b.iter(|| std::hint::black_box(refine::count_spanning_hypertrees(h).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_pencils(c: &mut Criterion) {
    let mut group = c.benchmark_group("pencil_spanning_trees");
    for m in [4usize, 7, 10] {
        let spec = PencilSpec::new(vec![6; m], 2).unwrap();
        group.bench_with_input(BenchmarkId::new("recurrence", m), &spec, |b, spec| {
            b.iter(|| std::hint::black_box(theta_rec(spec)))
        });
        group.bench_with_input(BenchmarkId::new("closed_sum", m), &spec, |b, spec| {
            b.iter(|| std::hint::black_box(theta_closed(spec)))
        });
        group.bench_with_input(BenchmarkId::new("matrix_tree", m), &spec, |b, spec| {
            b.iter(|| std::hint::black_box(spec.graph().spanning_tree_count()))
        });
    }
    group.finish();
}

fn bench_refinement_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("refinement_enumeration");
    for len in [6u32, 9, 12] {
        let alpha =
            hypermaps::Permutation::from_cycles(len, &[(1..=len).collect::<Vec<u32>>()]).unwrap();
        group.bench_with_input(BenchmarkId::new("single_cycle", len), &alpha, |b, alpha| {
            b.iter(|| {
                let space = RefinementSpace::new(alpha);
                let mut count = 0u64;
                for beta in space.iter() {
                    count += u64::from(beta.cycle_count());
                }
                std::hint::black_box(count)
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_hypertree_routes,
    bench_pencils,
    bench_refinement_enumeration
);
criterion_main!(benches);
