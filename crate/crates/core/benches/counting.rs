use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use corrcount::correspondence::random_permutation_assignment;
use corrcount::counting::{count_colourings, min_count_over_permutations_reduced, CountConfig};
use corrcount::families;

fn single_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    let cases = [
        ("icosahedron/k5", families::icosahedron(), 5),
        ("grid4x4/k4", families::grid(4, 4).unwrap(), 4),
        ("dodecahedron/k3", families::dodecahedron(), 3),
    ];
    for (name, g, k) in &cases {
        let a = random_permutation_assignment(g, *k, &mut ChaCha8Rng::seed_from_u64(1));
        for (mode, config) in [("parallel", CountConfig::default()), ("sequential", CountConfig::sequential())] {
            group.bench_with_input(BenchmarkId::new(mode, name), &a, |b, a| {
                b.iter(|| count_colourings(g, a, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn minimum_over_assignments(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_over_permutations");
    group.sample_size(10);
    let g = families::grid(2, 4).unwrap();
    for (mode, config) in [("parallel", CountConfig::default()), ("sequential", CountConfig::sequential())] {
        group.bench_function(BenchmarkId::new(mode, "grid2x4/k3"), |b| {
            b.iter(|| min_count_over_permutations_reduced(&g, 3, u128::MAX, &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, single_counts, minimum_over_assignments);
criterion_main!(benches);
