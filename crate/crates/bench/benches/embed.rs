use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simulembed_core::engine::{embed, EmbedOptions};
use simulembed_core::generate::random_compatible_set;
use simulembed_core::seqpart::{greedy_partition, tuple_partition, TupleSequence};

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition");
    for n in [256usize, 4096] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let seq: Vec<i64> = (0..n).map(|_| rng.gen_range(0..n as i64)).collect();
        group.bench_with_input(BenchmarkId::new("greedy", n), &seq, |b, s| {
            b.iter(|| greedy_partition(s, 0.5).unwrap())
        });
        let dims: Vec<Vec<i64>> = (0..2).map(|_| (0..n).map(|_| rng.gen_range(0..n as i64)).collect()).collect();
        let tuples = TupleSequence::from_dimensions(&dims).unwrap();
        group.bench_with_input(BenchmarkId::new("pairs", n), &tuples, |b, t| {
            b.iter(|| tuple_partition(t, 0.5).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("embed");
    group.sample_size(10);
    for n in [64usize, 256] {
        let set = random_compatible_set(n, 2, n as u32, 0.9, &mut ChaCha8Rng::seed_from_u64(1));
        group.bench_with_input(BenchmarkId::new("k2", n), &set, |b, s| {
            b.iter(|| embed(s, EmbedOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, partition, pipeline);
criterion_main!(benches);
