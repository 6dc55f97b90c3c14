//! The deficiency function `β_A(n) = |nA| − (2n − 1)(|A| − 1)` and the
//! Buchweitz set `{n ≥ 2 : β_A(n) ≥ 1}`.
//!
//! `β_A` is eventually linear, so a [`BetaProfile`] stores finitely many
//! explicit values followed by an exact affine tail, and the Buchweitz set is
//! read off in closed form from it.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::intset::{
    iterated_sumsets, multiple_sumset, nathanson_threshold, normalize, FiniteIntSet, IntSetError,
    DEFAULT_WINDOW_CAP_BITS,
};
use crate::semigroup::{frobenius_and_genus, NumericalSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuchweitzError {
    #[error(transparent)]
    IntSet(#[from] IntSetError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Largest sumset window, in bits, the explicit phase may allocate.
    pub window_cap_bits: u64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            window_cap_bits: DEFAULT_WINDOW_CAP_BITS,
        }
    }
}

/// `β(1), …, β(n*)` explicitly, then `β(n) = slope·n + intercept` for every
/// `n ≥ n*` (the tail formula already holds at `n*`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaProfile {
    values: Vec<i64>,
    tail_slope: i64,
    tail_intercept: i64,
    a0: i64,
    k: usize,
}

impl BetaProfile {
    /// `β(1..=n*)`.
    pub fn explicit(&self) -> &[i64] {
        &self.values
    }

    /// `n*`, the last explicitly computed multiple.
    pub fn explicit_end(&self) -> i64 {
        self.values.len() as i64
    }

    /// First `n` answered by the tail formula alone.
    pub fn tail_start(&self) -> i64 {
        self.explicit_end() + 1
    }

    pub fn tail_slope(&self) -> i64 {
        self.tail_slope
    }

    pub fn tail_intercept(&self) -> i64 {
        self.tail_intercept
    }

    /// Largest element of the normalized set.
    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn cardinality(&self) -> usize {
        self.k
    }

    pub fn tail_value(&self, n: i64) -> i64 {
        self.tail_slope * n + self.tail_intercept
    }

    /// `β(n)` for any `n ≥ 1`.
    pub fn value(&self, n: i64) -> i64 {
        assert!(n >= 1, "beta is defined for n >= 1");
        if n <= self.explicit_end() {
            self.values[n as usize - 1]
        } else {
            self.tail_value(n)
        }
    }

    /// `β(from..=to)`.
    pub fn values_between(&self, from: i64, to: i64) -> Vec<i64> {
        (from..=to).map(|n| self.value(n)).collect()
    }
}

/// `β_A(n)`. The empty set gives `2n − 1`.
pub fn beta(set: &FiniteIntSet, n: i64) -> Result<i64, BuchweitzError> {
    beta_with(set, n, &ProfileOptions::default())
}

pub fn beta_with(set: &FiniteIntSet, n: i64, opts: &ProfileOptions) -> Result<i64, BuchweitzError> {
    if n < 1 {
        return Err(IntSetError::InvalidMultiple(n).into());
    }
    if set.is_empty() {
        return Ok(2 * n - 1);
    }
    let norm = normalize(set)?;
    let card = multiple_sumset(&norm.base, n, opts.window_cap_bits)?.len() as i64;
    Ok(card - (2 * n - 1) * (norm.k as i64 - 1))
}

pub fn beta_profile(set: &FiniteIntSet) -> Result<BetaProfile, BuchweitzError> {
    beta_profile_with(set, &ProfileOptions::default())
}

/// Computes `β` explicitly until `n·A0` has reached its stable shape.
///
/// Let `S1` be the monoid generated by `A0` and `S2` the one generated by
/// `a0 − A0`, with Frobenius numbers `f1, f2` and genera `g1, g2`. Every
/// `n·A0` lies inside `S1 ∩ (a0·n − S2) ∩ [0, a0·n]`, which has
/// `a0·n + 1 − g1 − g2` elements once `a0·n − f1 − f2 − 1 ≥ a0`. If `n·A0`
/// fills that set, then `(n+1)·A0 ⊇ n·A0 ∪ (a0 + n·A0)` fills the next one:
/// the two central intervals `[f1+1, a0·n−f2−1]` and its translate by `a0`
/// overlap because the interval has at least `a0` elements. So the first
/// such `n` ends the explicit phase, with
/// `β(n) = (a0 − 2(k−1))·n + (1 − g1 − g2) + (k − 1)` from there on. The
/// full-interval case `n·A0 = [0, a0·n]` is `f1 = f2 = −1`.
pub fn beta_profile_with(
    set: &FiniteIntSet,
    opts: &ProfileOptions,
) -> Result<BetaProfile, BuchweitzError> {
    let k = set.len();
    if k < 2 {
        return Err(IntSetError::TooFewElements(k).into());
    }
    let norm = normalize(set)?;
    let a0 = norm.a0;
    let km1 = k as i64 - 1;

    let (f1, g1) = frobenius_and_genus(&norm.base.to_vec())?;
    let mirrored: Vec<i64> = norm.base.iter().map(|x| a0 - x).collect();
    let (f2, g2) = frobenius_and_genus(&mirrored)?;
    let b = 1 - g1 - g2;

    // Past the structure threshold the shape is fixed; the central interval
    // then needs at most a few more steps to reach width a0.
    let limit = nathanson_threshold(&norm)
        .unwrap_or(i64::MAX)
        .saturating_add((f1 + f2 + 2) / a0 + 2);

    let mut values = Vec::new();
    for (i, sumset) in iterated_sumsets(&norm.base, usize::MAX)
        .with_window_cap(opts.window_cap_bits)
        .enumerate()
    {
        let sumset = sumset?;
        let n = i as i64 + 1;
        let card = sumset.len() as i64;
        values.push(card - (2 * n - 1) * km1);
        if a0 * n - f1 - f2 - 1 >= a0 && card == a0 * n + b {
            return Ok(BetaProfile {
                values,
                tail_slope: a0 - 2 * km1,
                tail_intercept: b + km1,
                a0,
                k,
            });
        }
        if n >= limit {
            break;
        }
    }
    Err(BuchweitzError::Inconsistent(format!(
        "sumsets of {set} did not stabilize by n = {limit}"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuchKind {
    Finite,
    Cofinite,
}

/// `Buch(A)`: either a finite set, or `head ∪ [cofinite_from, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchweitzResult {
    pub kind: BuchKind,
    /// All members when finite; the members below `cofinite_from` otherwise.
    pub head: Vec<i64>,
    pub cofinite_from: Option<i64>,
}

impl BuchweitzResult {
    pub fn finite(members: Vec<i64>) -> Self {
        BuchweitzResult {
            kind: BuchKind::Finite,
            head: members,
            cofinite_from: None,
        }
    }

    pub fn cofinite(head: Vec<i64>, from: i64) -> Self {
        BuchweitzResult {
            kind: BuchKind::Cofinite,
            head,
            cofinite_from: Some(from),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.kind == BuchKind::Finite
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.head.is_empty()
    }

    pub fn contains(&self, n: i64) -> bool {
        self.cofinite_from.is_some_and(|from| n >= from) || self.head.binary_search(&n).is_ok()
    }
}

/// `∅`, `{2, 3, 4}`, `[2, ∞)` or `{3} ∪ [5, ∞)`.
impl fmt::Display for BuchweitzResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = self
            .head
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        match (self.cofinite_from, self.head.is_empty()) {
            (None, true) => f.write_str("∅"),
            (None, false) => write!(f, "{{{head}}}"),
            (Some(from), true) => write!(f, "[{from}, ∞)"),
            (Some(from), false) => write!(f, "{{{head}}} ∪ [{from}, ∞)"),
        }
    }
}

pub fn buchweitz_set(set: &FiniteIntSet) -> Result<BuchweitzResult, BuchweitzError> {
    buchweitz_set_with(set, &ProfileOptions::default())
}

pub fn buchweitz_set_with(
    set: &FiniteIntSet,
    opts: &ProfileOptions,
) -> Result<BuchweitzResult, BuchweitzError> {
    if set.len() <= 1 {
        return Ok(BuchweitzResult::cofinite(Vec::new(), 2));
    }
    Ok(buchweitz_from_profile(&beta_profile_with(set, opts)?))
}

/// Reads `Buch` off a profile: explicit members, then the solutions of
/// `slope·n + intercept ≥ 1` on the tail.
pub fn buchweitz_from_profile(profile: &BetaProfile) -> BuchweitzResult {
    let start = profile.tail_start();
    let (s, t) = (profile.tail_slope(), profile.tail_intercept());
    let explicit: Vec<i64> = (2..start).filter(|&n| profile.value(n) >= 1).collect();

    let cofinite_tail = if s > 0 {
        Some(ceil_div(1 - t, s).max(start))
    } else if s == 0 && t >= 1 {
        Some(start)
    } else {
        None
    };
    match cofinite_tail {
        Some(mut from) => {
            if from == start {
                while from > 2 && profile.value(from - 1) >= 1 {
                    from -= 1;
                }
            }
            BuchweitzResult::cofinite(explicit.into_iter().filter(|&n| n < from).collect(), from)
        }
        None => {
            let mut members = explicit;
            if s < 0 {
                // s·n + t ≥ 1  ⇔  n ≤ (t − 1)/(−s)
                let last = (t - 1).div_euclid(-s);
                members.extend(start..=last);
            }
            BuchweitzResult::finite(members)
        }
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `B(S) = Buch(ℕ ∖ S)`; always finite when the genus is at least 2.
pub fn buchweitz_set_of_semigroup(
    s: &NumericalSemigroup,
) -> Result<BuchweitzResult, BuchweitzError> {
    let result = buchweitz_set(s.gapset())?;
    if s.genus() >= 2 && !result.is_finite() {
        return Err(BuchweitzError::Inconsistent(format!(
            "cofinite Buchweitz set for a semigroup of genus {}",
            s.genus()
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> FiniteIntSet {
        FiniteIntSet::from_values(v.iter().copied())
    }

    fn buchweitz_gapset() -> FiniteIntSet {
        (1..=12).chain([19, 21, 24, 25]).collect()
    }

    /// β straight from n-way sums, no normalization.
    fn brute_beta(a: &[i64], n: usize) -> i64 {
        let mut sums = vec![0i64];
        for _ in 0..n {
            let mut next: Vec<i64> = sums
                .iter()
                .flat_map(|s| a.iter().map(move |x| s + x))
                .collect();
            next.sort_unstable();
            next.dedup();
            sums = next;
        }
        sums.len() as i64 - (2 * n as i64 - 1) * (a.len() as i64 - 1)
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&buchweitz_gapset(), 2), Ok(1));
        for n in 1..8 {
            assert_eq!(beta(&set(&[5]), n), Ok(1));
            assert_eq!(beta(&FiniteIntSet::empty(), n), Ok(2 * n - 1));
        }
        let g = set(&[1, 2, 4, 5, 8, 11]);
        for n in 2..=10 {
            assert_eq!(beta(&g, n), Ok(0));
        }
        assert!(beta(&g, 0).is_err());
    }

    #[test]
    fn profile_of_two_generator_gapsets() {
        for b in [5i64, 7, 9, 13, 21] {
            let g: FiniteIntSet = (1..=b - 2).step_by(2).collect();
            let genus = g.len() as i64;
            let p = beta_profile(&g).unwrap();
            assert_eq!(p.tail_slope(), -(genus - 1));
            for n in 1..30 {
                assert_eq!(p.value(n), -(n - 1) * genus + n);
            }
            assert!(p.explicit()[1..].iter().all(|&v| v <= 0));
        }
    }

    #[test]
    fn profile_of_unit_interval() {
        let p = beta_profile(&set(&[0, 1])).unwrap();
        assert_eq!(p.tail_slope(), -1);
        assert_eq!(p.explicit(), &[1]);
        for n in 1..20 {
            assert_eq!(p.value(n), 2 - n);
        }
    }

    #[test]
    fn profile_seam_and_invariants() {
        let cases: &[&[i64]] = &[
            &[1, 2, 4, 5, 8, 11],
            &[0, 1, 10],
            &[0, 3, 7, 12],
            &[-4, 2, 5, 11],
            &[2, 3, 9],
        ];
        for a in cases {
            let p = beta_profile(&set(a)).unwrap();
            assert_eq!(p.explicit()[0], 1);
            let n_star = p.explicit_end();
            assert_eq!(p.explicit()[n_star as usize - 1], p.tail_value(n_star));
            assert_eq!(p.tail_slope(), p.a0() - 2 * (p.cardinality() as i64 - 1));
            for n in 1..=(n_star + 10) as usize {
                assert_eq!(p.value(n as i64), brute_beta(a, n), "A = {a:?}, n = {n}");
            }
        }
    }

    #[test]
    fn profile_rejects_small_sets() {
        assert!(matches!(
            beta_profile(&set(&[3])),
            Err(BuchweitzError::IntSet(IntSetError::TooFewElements(1)))
        ));
    }

    #[test]
    fn profile_respects_window_cap() {
        let opts = ProfileOptions {
            window_cap_bits: 100,
        };
        let err = beta_profile_with(&set(&[0, 1, 40]), &opts).unwrap_err();
        assert!(matches!(
            err,
            BuchweitzError::IntSet(IntSetError::WindowTooLarge { .. })
        ));
    }

    #[test]
    fn buchweitz_set_examples() {
        assert_eq!(
            buchweitz_set(&FiniteIntSet::empty()),
            Ok(BuchweitzResult::cofinite(vec![], 2))
        );
        assert_eq!(
            buchweitz_set(&set(&[5])),
            Ok(BuchweitzResult::cofinite(vec![], 2))
        );
        assert_eq!(
            buchweitz_set(&set(&[1, 2, 4, 5, 8, 11])),
            Ok(BuchweitzResult::finite(vec![]))
        );
        assert_eq!(
            buchweitz_set(&set(&[0, 1])),
            Ok(BuchweitzResult::finite(vec![]))
        );
        let komeda: FiniteIntSet = (1..=74).chain([139, 146, 147]).collect();
        assert_eq!(
            buchweitz_set(&komeda),
            Ok(BuchweitzResult::finite(vec![9, 10, 11]))
        );
    }

    #[test]
    fn cofinite_from_is_minimal() {
        // {1, 2, 10}: β(2) = 6 − 6 = 0, β(n) grows like 5n afterwards
        let a = set(&[1, 2, 10]);
        let r = buchweitz_set(&a).unwrap();
        assert_eq!(r.kind, BuchKind::Cofinite);
        let from = r.cofinite_from.unwrap();
        for n in 2..from + 20 {
            assert_eq!(
                r.contains(n),
                brute_beta(&[1, 2, 10], n as usize) >= 1,
                "n = {n}"
            );
        }
        assert!(from == 2 || brute_beta(&[1, 2, 10], from as usize - 1) < 1);
    }

    #[test]
    fn constant_tail_cases() {
        // slope 0 needs a0 = 2(k − 1)
        let a = set(&[0, 1, 4]);
        let p = beta_profile(&a).unwrap();
        assert_eq!(p.tail_slope(), 0);
        let r = buchweitz_from_profile(&p);
        let t = p.tail_intercept();
        assert_eq!(r.kind == BuchKind::Cofinite, t >= 1);
        for n in 2..40 {
            assert_eq!(r.contains(n), brute_beta(&[0, 1, 4], n as usize) >= 1);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(BuchweitzResult::finite(vec![]).to_string(), "∅");
        assert_eq!(BuchweitzResult::finite(vec![2, 3]).to_string(), "{2, 3}");
        assert_eq!(BuchweitzResult::cofinite(vec![], 2).to_string(), "[2, ∞)");
        assert_eq!(
            BuchweitzResult::cofinite(vec![3], 5).to_string(),
            "{3} ∪ [5, ∞)"
        );
    }

    #[test]
    fn semigroup_examples() {
        let s = NumericalSemigroup::from_generators(&[13, 14, 15, 16, 17, 18, 20, 22, 23]).unwrap();
        let r = buchweitz_set_of_semigroup(&s).unwrap();
        assert!(r.is_finite() && r.contains(2));

        let s = NumericalSemigroup::from_generators(&[2, 7]).unwrap();
        assert_eq!(
            buchweitz_set_of_semigroup(&s),
            Ok(BuchweitzResult::finite(vec![]))
        );

        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(
            buchweitz_set_of_semigroup(&s),
            Ok(BuchweitzResult::cofinite(vec![], 2))
        );
    }
}
