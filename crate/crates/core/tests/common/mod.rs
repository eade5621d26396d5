//! Helpers shared by the integration test targets: random inputs and naive reference
//! computations that avoid the library code paths they check.

#![allow(dead_code)]

use cuspidal_core::num_bigint::BigInt;
use cuspidal_core::{CharPairSeq, Chain};
use num_integer::Integer;
use rand::Rng;

/// Every chain with `len_min..=len_max` entries drawn from `weights`.
pub fn all_chains(len_min: usize, len_max: usize, weights: std::ops::RangeInclusive<i64>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for len in 0..=len_max {
        if len >= len_min {
            out.extend(layer.iter().cloned());
        }
        if len == len_max {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|c| {
                weights.clone().map(move |w| {
                    let mut c = c.clone();
                    c.push(w);
                    c
                })
            })
            .collect();
    }
    out
}

/// Continuant of the weights, accumulated from the first entry onward in machine integers.
pub fn continuant(w: &[i64]) -> i128 {
    let (mut prev, mut cur) = (0i128, 1i128);
    for &a in w {
        let next = a as i128 * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Leibniz expansion of a small integer determinant.
pub fn leibniz(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i64>], total: &mut i128) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][perm[i]] as i128).product();
        *total += if inversions % 2 == 0 { prod } else { -prod };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Random cusp: a valid pair sequence with at most `h_max` pairs and `2 <= p_1 < c_1 <= c1_max`.
pub fn random_pairs<R: Rng>(rng: &mut R, h_max: usize, c1_max: u64) -> CharPairSeq {
    let p1 = rng.gen_range(2..c1_max);
    let c1 = rng.gen_range(p1 + 1..=c1_max);
    let mut pairs = vec![(c1, p1)];
    let mut g = c1.gcd(&p1);
    while g > 1 {
        let p = if pairs.len() + 1 == h_max {
            let coprime: Vec<u64> = (1..=g).filter(|p| p.gcd(&g) == 1).collect();
            coprime[rng.gen_range(0..coprime.len())]
        } else {
            rng.gen_range(1..=g)
        };
        pairs.push((g, p));
        g = g.gcd(&p);
    }
    CharPairSeq::new(pairs).expect("generated sequence is valid")
}

/// All `(d, k)` with `3d = a0 + b.k`, `d^2 = q0 + bq.k`, `d_min <= d <= d_max`, `k_i <= k_max`,
/// by plain nested loops over the unknowns.
pub fn brute_force(
    a0: i64,
    b: &[i64],
    q0: i64,
    bq: &[i64],
    d_min: i64,
    d_max: i64,
    k_max: i64,
) -> Vec<(i64, Vec<i64>)> {
    let mut out = Vec::new();
    let mut k = vec![0i64; b.len()];
    loop {
        let lin = a0 + b.iter().zip(&k).map(|(x, y)| x * y).sum::<i64>();
        if lin % 3 == 0 {
            let d = lin / 3;
            let quad = q0 + bq.iter().zip(&k).map(|(x, y)| x * y).sum::<i64>();
            if d >= d_min && d <= d_max && d * d == quad {
                out.push((d, k.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == k.len() {
                out.sort();
                return out;
            }
            k[i] += 1;
            if k[i] <= k_max {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn chain(w: &[i64]) -> Chain {
    Chain::new(w.to_vec())
}

/// `[(2)_k, tail...]`
pub fn twos_then(k: usize, tail: &[i64]) -> Vec<i64> {
    let mut w = vec![2; k];
    w.extend_from_slice(tail);
    w
}
