//! Index tuples, subsets, and cycle enumeration.

use itertools::Itertools;

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// `d (d - 1) ... (d - k + 1)`, zero once a factor reaches zero.
pub fn falling_factorial(d: usize, k: usize) -> u128 {
    if k > d {
        return 0;
    }
    (0..k).map(|i| (d - i) as u128).product()
}

/// Decodes a flat index into the tuple `x ∈ [d]^n`, least significant
/// position first, writing into `out`.
pub fn decode_tuple(mut index: usize, d: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = index % d;
        index /= d;
    }
}

pub fn tuple(index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    decode_tuple(index, d, &mut out);
    out
}

/// Inverse of [`decode_tuple`].
pub fn encode_tuple(x: &[usize], d: usize) -> usize {
    x.iter().rev().fold(0, |acc, &v| acc * d + v)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// The `(k-1)!` cyclic orders on `0..k`, each written as a sequence starting
/// at 0. A sequence `[c_0, c_1, ..., c_{k-1}]` stands for the cycle mapping
/// `c_i -> c_{i+1}` and `c_{k-1} -> c_0`.
pub fn cycles(k: usize) -> Vec<Vec<usize>> {
    match k {
        0 => Vec::new(),
        1 => vec![vec![0]],
        _ => (1..k)
            .permutations(k - 1)
            .map(|tail| std::iter::once(0).chain(tail).collect())
            .collect(),
    }
}
