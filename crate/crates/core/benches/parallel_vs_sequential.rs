//! Sequential vs rayon execution on the data-parallel entry points.
//!
//! Without the `parallel` feature both variants run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use quiver_moduli::doubling::{bipartify_with, NChoice};
use quiver_moduli::toric::presentation_with;
use quiver_moduli::{DimVector, Exec, GenericExt, Quiver, Weight};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn example() -> Quiver {
    Quiver::from_edges(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
}

fn semistable(c: &mut Criterion) {
    let q = Quiver::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
    let alpha = DimVector::from_entries(vec![6, 6, 6]);
    let theta = Weight::from_entries(vec![1, 0, -1]);
    let mut group = c.benchmark_group("enumerate_semistable");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            // Fresh memo each iteration so the work is not cached away.
            b.iter(|| {
                let g = GenericExt::new(&q).with_exec(exec);
                black_box(g.enumerate_semistable(&alpha, &theta).unwrap())
            })
        });
    }
    group.finish();
}

fn toric(c: &mut Criterion) {
    let q = example();
    let bip = bipartify_with(
        &q,
        &DimVector::from_entries(vec![1, 1]),
        &Weight::zero(2),
        NChoice::Fixed(1),
    )
    .unwrap();
    let sigma = Weight::from_entries(vec![-1, 1, -2, 2]);
    let mut group = c.benchmark_group("presentation");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(presentation_with(&bip.quiver, &sigma, 6, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, semistable, toric);
criterion_main!(benches);
