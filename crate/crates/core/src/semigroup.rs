//! Numerical semigroups built from generators or from a gapset.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use thiserror::Error;

use crate::intset::{FiniteIntSet, IntSetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {0}; the complement would be infinite")]
    GcdNotOne(i64),
    #[error("gaps must be positive integers, got {0}")]
    InvalidGap(i64),
    #[error("complement is not closed under addition: {x}+{y}={sum} is a gap")]
    NotClosed { x: i64, y: i64, sum: i64 },
    #[error("symmetry is undefined for genus 0")]
    GenusZero,
    #[error("sieve bound {0} is too large")]
    TooLarge(i64),
    #[error(transparent)]
    IntSet(#[from] IntSetError),
}

const MAX_SIEVE: i64 = 1 << 32;

/// A numerical semigroup `S ⊆ ℕ`, stored through its gapset `G = ℕ ∖ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gapset: FiniteIntSet,
    generators: Vec<i64>,
    multiplicity: i64,
    frobenius: i64,
    genus: i64,
}

impl NumericalSemigroup {
    /// The semigroup `ℕa1 + ⋯ + ℕar`. The generators need not be minimal.
    pub fn from_generators(gens: &[i64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&a| a < 1) {
            return Err(SemigroupError::NonPositiveGenerator(bad));
        }
        let g = gens.iter().fold(0, |acc, a| acc.gcd(a));
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap();
        // Frobenius number < min·max, so membership beyond the bound is automatic.
        let bound = lo
            .checked_mul(hi)
            .filter(|&b| b <= MAX_SIEVE)
            .ok_or(SemigroupError::TooLarge(lo.saturating_mul(hi)))?;
        let mut member = vec![false; bound as usize + 1];
        member[0] = true;
        for x in 1..=bound as usize {
            member[x] = gens
                .iter()
                .any(|&a| a as usize <= x && member[x - a as usize]);
        }
        let gapset: FiniteIntSet = (1..=bound).filter(|&x| !member[x as usize]).collect();
        Ok(Self::from_valid_gapset(gapset))
    }

    /// The semigroup `ℕ ∖ G`, after checking that `ℕ ∖ G` is closed under addition.
    pub fn from_gapset(gapset: &FiniteIntSet) -> Result<Self, SemigroupError> {
        if let Some(m) = gapset.min().filter(|&m| m < 1) {
            return Err(SemigroupError::InvalidGap(m));
        }
        if let Some((x, y)) = closure_violation(gapset) {
            return Err(SemigroupError::NotClosed { x, y, sum: x + y });
        }
        Ok(Self::from_valid_gapset(gapset.clone()))
    }

    fn from_valid_gapset(gapset: FiniteIntSet) -> Self {
        let frobenius = gapset.max().unwrap_or(-1);
        let multiplicity = (1..).find(|x| !gapset.contains(*x)).unwrap();
        let genus = gapset.len() as i64;
        let generators = minimal_generators(&gapset, multiplicity, frobenius + 1);
        NumericalSemigroup {
            gapset,
            generators,
            multiplicity,
            frobenius,
            genus,
        }
    }

    pub fn gapset(&self) -> &FiniteIntSet {
        &self.gapset
    }

    pub fn minimal_generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    /// Largest gap, or −1 when `S = ℕ`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `⌈c/m⌉`.
    pub fn depth(&self) -> i64 {
        Integer::div_ceil(&self.conductor(), &self.multiplicity)
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && !self.gapset.contains(x)
    }

    /// `f = 2g − 1`.
    pub fn is_symmetric(&self) -> Result<bool, SemigroupError> {
        if self.genus == 0 {
            return Err(SemigroupError::GenusZero);
        }
        Ok(self.frobenius == 2 * self.genus - 1)
    }
}

/// First pair `x ≤ y` of nonzero semigroup elements whose sum is a gap.
fn closure_violation(gapset: &FiniteIntSet) -> Option<(i64, i64)> {
    let f = gapset.max()?;
    for x in 1..=f / 2 {
        if gapset.contains(x) {
            continue;
        }
        for y in x..=f - x {
            if !gapset.contains(y) && gapset.contains(x + y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Elements `s ∈ S∖{0}` with `s ≤ c + m − 1` that are not a sum of two
/// nonzero elements of `S`.
fn minimal_generators(gapset: &FiniteIntSet, m: i64, c: i64) -> Vec<i64> {
    let in_s = |x: i64| !gapset.contains(x);
    (m..=(c + m - 1).max(m))
        .filter(|&s| in_s(s))
        .filter(|&s| !(m..=s / 2).any(|x| in_s(x) && in_s(s - x)))
        .collect()
}

/// Frobenius number and genus of the submonoid of ℕ generated by `gens`,
/// computed from the Apéry set with respect to the smallest generator
/// (shortest paths over residues), without enumerating gaps.
///
/// `gens` must be positive with gcd 1; zeros are ignored.
pub fn frobenius_and_genus(gens: &[i64]) -> Result<(i64, i64), SemigroupError> {
    let gens: Vec<i64> = gens.iter().copied().filter(|&a| a != 0).collect();
    if gens.is_empty() {
        return Err(SemigroupError::NoGenerators);
    }
    if let Some(&bad) = gens.iter().find(|&&a| a < 0) {
        return Err(SemigroupError::NonPositiveGenerator(bad));
    }
    let g = gens.iter().fold(0, |acc, a| acc.gcd(a));
    if g != 1 {
        return Err(SemigroupError::GcdNotOne(g));
    }
    let m = *gens.iter().min().unwrap();
    if m > MAX_SIEVE {
        return Err(SemigroupError::TooLarge(m));
    }
    let m_us = m as usize;
    let mut apery = vec![i64::MAX; m_us];
    apery[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0i64, 0usize))]);
    while let Some(Reverse((w, r))) = heap.pop() {
        if w > apery[r] {
            continue;
        }
        for &a in &gens {
            let nr = (r + (a % m) as usize) % m_us;
            let nw = w + a;
            if nw < apery[nr] {
                apery[nr] = nw;
                heap.push(Reverse((nw, nr)));
            }
        }
    }
    let frobenius = apery.iter().max().unwrap() - m;
    let genus = apery.iter().map(|w| w / m).sum();
    Ok((frobenius, genus))
}
