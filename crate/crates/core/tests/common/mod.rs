//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::test_runner::{Config, RngSeed};

pub fn config() -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(0x5EED), failure_persistence: None, ..Config::default() }
}

/// Walks on `0, 1, 2, …` with steps ±1: number of length-`n` walks from 0
/// to `k`. Equals the multiplicity of `u_k` in `u_1^{⊗n}`.
pub fn walks(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; n + 2];
    row[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; n + 2];
        for (h, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[h + 1] += c;
            if h > 0 {
                next[h - 1] += c;
            }
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// `u_a ⊗ u_b` by peeling highest weights off the product character.
pub fn su2_by_weights(a: u32, b: u32) -> BTreeMap<u32, u128> {
    let mut weights: BTreeMap<i64, i64> = BTreeMap::new();
    for i in 0..=a as i64 {
        for j in 0..=b as i64 {
            *weights.entry((a as i64 - 2 * i) + (b as i64 - 2 * j)).or_insert(0) += 1;
        }
    }
    let mut out = BTreeMap::new();
    while let Some((&top, _)) = weights.iter().rev().find(|(_, c)| **c > 0) {
        *out.entry(top as u32).or_insert(0) += 1;
        for k in 0..=top {
            *weights.get_mut(&(top - 2 * k)).unwrap() -= 1;
        }
    }
    out
}

/// `[n]_q = q^{n-1} + q^{n-3} + … + q^{1-n}`.
pub fn q_int(n: u32, q: f64) -> f64 {
    (0..n).map(|i| q.powi(n as i32 - 1 - 2 * i as i32)).sum()
}

/// Smaller root of `x² − t x + 1`, school formula.
pub fn small_root(t: f64) -> f64 {
    (t - (t * t - 4.0).sqrt()) / 2.0
}

/// `dim(u_r)` of `A_o(F)` with `rank F = m`: Chebyshev closed form.
pub fn ao_dim(m: usize, r: u32) -> u64 {
    if m == 2 {
        return r as u64 + 1;
    }
    let m = m as f64;
    let rho = (m + (m * m - 4.0).sqrt()) / 2.0;
    ((rho.powi(r as i32 + 1) - rho.powi(-(r as i32) - 1)) / (rho - 1.0 / rho)).round() as u64
}
