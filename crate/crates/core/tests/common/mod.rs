//! Shared generators and brute-force oracles for the integration tests.
//!
//! The oracles here deliberately avoid the crate's evaluation paths: the
//! integral is computed as `max_A μ(A) ∗ min_{x∈A} f(x)` over all subsets,
//! and residuals are found by scanning tuples one by one.

#![allow(dead_code)]

use capeq::{Capacity, FiniteSpace, Game, Measure, PossibilityCapacity, Rational, Scalar, SetFunction, Subset, TNorm};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn space(n: usize) -> FiniteSpace {
    FiniteSpace::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

pub fn grid_value(rng: &mut TestRng, grid: i64) -> Rational {
    q(rng.gen_range(0..=grid), grid)
}

pub fn random_density(rng: &mut TestRng, space: &FiniteSpace, grid: i64) -> PossibilityCapacity<Rational> {
    let mut density: Vec<Rational> = (0..space.len()).map(|_| grid_value(rng, grid)).collect();
    let top = rng.gen_range(0..space.len());
    density[top] = q(1, 1);
    PossibilityCapacity::new(space.clone(), density).unwrap()
}

/// A random capacity vanishing on every subset of `zero_outside`'s
/// complement: raw grid values are closed upward under inclusion.
pub fn random_capacity_supported(
    rng: &mut TestRng,
    space: &FiniteSpace,
    grid: i64,
    support: Subset,
) -> Capacity<Rational> {
    let n = space.len();
    let full = (1usize << n) - 1;
    let outside = support.complement(n).bits() as usize;
    let mut raw: Vec<Rational> = (0..=full)
        .map(|m| {
            if m & !outside == 0 {
                q(0, 1)
            } else {
                grid_value(rng, grid)
            }
        })
        .collect();
    raw[full] = q(1, 1);
    // Upward closure: value(F) = max over subsets of F.
    for x in 0..n {
        for m in 0..=full {
            if m & (1 << x) != 0 {
                let lower = raw[m ^ (1 << x)];
                if lower > raw[m] {
                    raw[m] = lower;
                }
            }
        }
    }
    Capacity::new(space.clone(), raw).unwrap()
}

pub fn random_capacity(rng: &mut TestRng, space: &FiniteSpace, grid: i64) -> Capacity<Rational> {
    random_capacity_supported(rng, space, grid, space.full())
}

pub fn random_strategy_counts(rng: &mut TestRng, players: usize, min: usize, max: usize) -> Vec<usize> {
    (0..players).map(|_| rng.gen_range(min..=max)).collect()
}

pub fn random_game(rng: &mut TestRng, counts: &[usize], grid: i64) -> Game<Rational> {
    let spaces: Vec<FiniteSpace> = counts.iter().map(|&k| space(k)).collect();
    let size: usize = counts.iter().product();
    let payoffs = (0..counts.len())
        .map(|_| (0..size).map(|_| grid_value(rng, grid)).collect())
        .collect();
    Game::new(spaces, payoffs).unwrap()
}

/// `max_A μ(A) ∗ min_{x∈A} f(x)` over every non-empty subset.
pub fn oracle_integral<M: SetFunction<Rational>>(f: &[Rational], mu: &M, star: TNorm) -> Rational {
    let n = f.len();
    let mut best = q(0, 1);
    for mask in 1u64..(1 << n) {
        let s = Subset::from_bits(mask);
        let low = s.iter().map(|x| f[x]).min().unwrap();
        let v = star.eval(&mu.measure(s), &low);
        if v > best {
            best = v;
        }
    }
    best
}

/// Mixed-radix decoding with coordinate 0 most significant.
pub fn decode(counts: &[usize], mut index: usize) -> Vec<usize> {
    let mut coords = vec![0; counts.len()];
    for (slot, &c) in coords.iter_mut().zip(counts).rev() {
        *slot = index % c;
        index /= c;
    }
    coords
}

pub fn encode(counts: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(counts).fold(0, |acc, (&c, &k)| acc * k + c)
}

/// Recomputes the equilibrium verdict of a belief system from scratch.
/// Returns (best-response sets as index lists, residuals).
pub fn oracle_verify(
    game: &Game<Rational>,
    beliefs: &[Measure<Rational>],
    star: TNorm,
) -> (Vec<Vec<usize>>, Vec<Rational>) {
    let n = game.players();
    let counts: Vec<usize> = (0..n).map(|i| game.strategies(i).len()).collect();
    let mut best = Vec::new();
    for i in 0..n {
        let opp_counts: Vec<usize> = (0..n).filter(|&j| j != i).map(|j| counts[j]).collect();
        let opp_size: usize = opp_counts.iter().product();
        let payoffs: Vec<Rational> = (0..counts[i])
            .map(|x| {
                let f: Vec<Rational> = (0..opp_size)
                    .map(|k| {
                        let mut coords = decode(&opp_counts, k);
                        coords.insert(i, x);
                        *game.payoff(i, &coords)
                    })
                    .collect();
                oracle_integral(&f, &beliefs[i], star)
            })
            .collect();
        let top = *payoffs.iter().max().unwrap();
        best.push((0..counts[i]).filter(|&x| payoffs[x] == top).collect::<Vec<_>>());
    }
    let residuals = (0..n)
        .map(|i| {
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let opp_counts: Vec<usize> = others.iter().map(|&j| counts[j]).collect();
            let opp_size: usize = opp_counts.iter().product();
            let mut outside = Subset::EMPTY;
            for k in 0..opp_size {
                let coords = decode(&opp_counts, k);
                let inside = coords.iter().zip(&others).all(|(c, &j)| best[j].contains(c));
                if !inside {
                    outside = outside.with(k);
                }
            }
            beliefs[i].measure(outside)
        })
        .collect();
    (best, residuals)
}

/// All possibility densities on `{0, 1/g, ..., 1}` with maximum 1.
pub fn all_grid_densities(space: &FiniteSpace, g: i64) -> Vec<PossibilityCapacity<Rational>> {
    let n = space.len();
    let total = ((g + 1) as usize).pow(n as u32);
    (0..total)
        .filter_map(|idx| {
            let digits = decode(&vec![(g + 1) as usize; n], idx);
            let density = digits.iter().map(|&d| q(d as i64, g)).collect();
            PossibilityCapacity::new(space.clone(), density).ok()
        })
        .collect()
}
