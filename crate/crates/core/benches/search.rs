use capeq::{search_equilibria, tensor_general, Capacity, Execution, FiniteSpace, Game, Rational, SearchMode, Subset, TNorm};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space(n: usize) -> FiniteSpace {
    FiniteSpace::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

fn unit(rng: &mut ChaCha8Rng, grid: i128) -> Rational {
    Rational::new(rng.gen_range(0..=grid), grid)
}

fn random_game(rng: &mut ChaCha8Rng, counts: &[usize]) -> Game<Rational> {
    let size: usize = counts.iter().product();
    let payoffs = counts.iter().map(|_| (0..size).map(|_| unit(rng, 4)).collect()).collect();
    Game::new(counts.iter().map(|&k| space(k)).collect(), payoffs).unwrap()
}

fn random_capacity(rng: &mut ChaCha8Rng, n: usize) -> Capacity<Rational> {
    let full = (1usize << n) - 1;
    let mut raw: Vec<Rational> = (0..=full).map(|m| if m == 0 { Rational::new(0, 1) } else { unit(rng, 8) }).collect();
    raw[full] = Rational::new(1, 1);
    for m in 0..=full {
        for x in Subset::from_bits(m as u64).iter() {
            let lower = raw[m ^ (1 << x)];
            if lower > raw[m] {
                raw[m] = lower;
            }
        }
    }
    Capacity::new(space(n), raw).unwrap()
}

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_search(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let two = random_game(&mut rng, &[3, 3]);
    let three = random_game(&mut rng, &[3, 3, 3]);
    let mut group = c.benchmark_group("search_equilibria");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("3x3 grid:4", name), &exec, |b, &exec| {
            b.iter(|| search_equilibria(&two, TNorm::Product, TNorm::Minimum, SearchMode::Grid(4), 10_000_000, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("3x3x3 indicator", name), &exec, |b, &exec| {
            b.iter(|| search_equilibria(&three, TNorm::Minimum, TNorm::Product, SearchMode::Indicator, 10_000_000, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_tensor(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mu1 = random_capacity(&mut rng, 4);
    let mu2 = random_capacity(&mut rng, 4);
    let mut group = c.benchmark_group("tensor_general");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("4x4", name), &exec, |b, &exec| {
            b.iter(|| tensor_general(&mu1, &mu2, TNorm::Lukasiewicz, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_search, bench_tensor);
criterion_main!(benches);
