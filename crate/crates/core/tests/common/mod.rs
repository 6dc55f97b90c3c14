//! Brute-force oracles shared by the integration tests. Deliberately naive:
//! nothing here goes through the bitset kernel or the semigroup tree.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// `n·A` by enumerating every multiset of `n` elements of `A`.
pub fn naive_multiple(set: &[i64], n: usize) -> BTreeSet<i64> {
    let elems: Vec<i64> = set
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = BTreeSet::new();
    if elems.is_empty() || n == 0 {
        return out;
    }
    fn rec(elems: &[i64], start: usize, left: usize, acc: i64, out: &mut BTreeSet<i64>) {
        if left == 0 {
            out.insert(acc);
            return;
        }
        for i in start..elems.len() {
            rec(elems, i, left - 1, acc + elems[i], out);
        }
    }
    rec(&elems, 0, n, 0, &mut out);
    out
}

pub fn naive_beta(set: &[i64], n: usize) -> i64 {
    let k = set.iter().collect::<BTreeSet<_>>().len() as i64;
    naive_multiple(set, n).len() as i64 - (2 * n as i64 - 1) * (k - 1)
}

/// Next integer with the same popcount (Gosper's hack).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// All gapsets of genus `g`, as bitmasks over `[1, 2g − 1]` (bit `i` is the
/// integer `i`). Uses `F(S) ≤ 2g − 1` to bound the universe and checks
/// additive closure of the complement directly.
pub fn oracle_gapsets(g: u32) -> Vec<u64> {
    if g == 0 {
        return vec![0];
    }
    let width = 2 * g - 1;
    let universe: u64 = ((1u64 << width) - 1) << 1;
    let mut out = Vec::new();
    let mut combo: u64 = (1u64 << g) - 1;
    while combo < 1u64 << width {
        let gaps = combo << 1;
        let members = !gaps & universe | 1;
        let closed = (1..=width as u64)
            .filter(|&s| members >> s & 1 == 1)
            .all(|s| (members << s) & gaps == 0);
        if closed {
            out.push(gaps);
        }
        combo = next_combination(combo);
    }
    out
}

pub fn oracle_counts(g_max: u32) -> Vec<u64> {
    (0..=g_max)
        .map(|g| oracle_gapsets(g).len() as u64)
        .collect()
}

pub fn mask_to_vec(mask: u64) -> Vec<i64> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}
