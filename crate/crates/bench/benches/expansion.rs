use criterion::{criterion_group, criterion_main, Criterion};

use quiverpoly::{
    compute_vertex_form, enumerate_orbits, find_directed_partition, positive_roots,
    ComputeOptions, PartitionStrategy, PositiveRoot, Quiver,
};

fn bench_reference_orbit(c: &mut Criterion) {
    let q = quiverpoly::suite::reference_quiver();
    let m = quiverpoly::suite::reference_orbit();
    let (p1, _) = quiverpoly::suite::reference_partitions();
    let opts = ComputeOptions::default();
    c.bench_function("reference orbit, per-vertex form", |b| {
        b.iter(|| compute_vertex_form(&q, &[2, 3, 2], &m, &p1, &opts).unwrap())
    });
}

fn bench_orbit_sweep(c: &mut Criterion) {
    let q = Quiver::new(3, vec![(1, 2), (3, 2)]).unwrap();
    let roots = positive_roots(&q).unwrap();
    let orbits = enumerate_orbits(&q, &[2, 2, 2]).unwrap();
    let opts = ComputeOptions::default();
    c.bench_function("orbit sweep e=(2,2,2)", |b| {
        b.iter(|| {
            for m in &orbits {
                let support: Vec<PositiveRoot> =
                    m.support(&roots).into_iter().cloned().collect();
                let partition =
                    find_directed_partition(&q, &support, PartitionStrategy::PreferLow)
                        .unwrap();
                compute_vertex_form(&q, &[2, 2, 2], m, &partition, &opts).unwrap();
            }
        })
    });
}

fn bench_root_closure(c: &mut Criterion) {
    // E8 orientation along a fixed labelling.
    let q = Quiver::new(
        8,
        vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)],
    )
    .unwrap();
    c.bench_function("root closure E8", |b| {
        b.iter(|| positive_roots(&q).unwrap())
    });
}

criterion_group!(benches, bench_reference_orbit, bench_orbit_sweep, bench_root_closure);
criterion_main!(benches);
