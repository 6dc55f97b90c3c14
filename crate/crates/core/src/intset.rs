//! Finite integer sets stored as dense bitsets over their `[min, max]` window,
//! together with the iterated-sumset engine and the structure utilities that
//! describe the eventual shape of `n·A`.
//!
//! The dominant kernel is `A + B`: one of the operands is split into maximal
//! runs of consecutive integers and the other operand's bitset is shifted and
//! OR-ed once per run, widened to the run length by a logarithmic number of
//! in-place shift-ORs. Gapsets of numerical semigroups consist of a handful of
//! runs, so `n·G` costs a few dozen word passes per step.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

const WORD_BITS: usize = 64;

/// Default upper bound on the number of bits a sumset window may occupy.
pub const DEFAULT_WINDOW_CAP_BITS: u64 = 1 << 30;

/// Largest window accepted when building a set from raw values.
const MAX_INPUT_SPAN: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntSetError {
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("operation requires at least 2 elements, got {0}")]
    TooFewElements(usize),
    #[error("sumset window of {bits} bits exceeds the cap of {cap} bits")]
    WindowTooLarge { bits: u64, cap: u64 },
    #[error("input span {0} is too large for a dense set")]
    SpanTooLarge(u64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("n must be at least 1, got {0}")]
    InvalidMultiple(i64),
    #[error("no structure decomposition of {n}·A0: {reason}")]
    NoDecomposition { n: i64, reason: String },
}

/// A finite set of integers.
///
/// Elements live in a bitset indexed from `min`; bit `i` stands for
/// `min + i`. The window is always exactly `[min, max]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteIntSet {
    lo: i64,
    span: usize,
    len: usize,
    words: Vec<u64>,
}

impl FiniteIntSet {
    pub fn empty() -> Self {
        FiniteIntSet {
            lo: 0,
            span: 0,
            len: 0,
            words: Vec::new(),
        }
    }

    /// The integer interval `[lo, hi]`; empty when `hi < lo`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        if hi < lo {
            return Self::empty();
        }
        let span = (hi - lo + 1) as usize;
        let mut words = vec![u64::MAX; span.div_ceil(WORD_BITS)];
        clear_tail(&mut words, span);
        FiniteIntSet {
            lo,
            span,
            len: span,
            words,
        }
    }

    /// Builds the deduplicated set of `values`.
    ///
    /// Panics if the values span more than 2^32 integers; use
    /// [`FiniteIntSet::try_from_values`] for untrusted input.
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Self::try_from_values(values).expect("set span too large")
    }

    pub fn try_from_values<I: IntoIterator<Item = i64>>(values: I) -> Result<Self, IntSetError> {
        let mut values: Vec<i64> = values.into_iter().collect();
        if values.is_empty() {
            return Ok(Self::empty());
        }
        values.sort_unstable();
        values.dedup();
        let lo = values[0];
        let hi = *values.last().unwrap();
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span > MAX_INPUT_SPAN as u128 {
            return Err(IntSetError::SpanTooLarge(span.min(u64::MAX as u128) as u64));
        }
        let span = span as usize;
        let mut words = vec![0u64; span.div_ceil(WORD_BITS)];
        for v in &values {
            let i = (v - lo) as usize;
            words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        Ok(FiniteIntSet {
            lo,
            span,
            len: values.len(),
            words,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn min(&self) -> Option<i64> {
        (!self.is_empty()).then_some(self.lo)
    }

    pub fn max(&self) -> Option<i64> {
        (!self.is_empty()).then(|| self.lo + self.span as i64 - 1)
    }

    /// Number of integers in `[min, max]`.
    pub fn span(&self) -> usize {
        self.span
    }

    pub fn contains(&self, x: i64) -> bool {
        if self.is_empty() || x < self.lo {
            return false;
        }
        let i = (x - self.lo) as u64;
        if i >= self.span as u64 {
            return false;
        }
        let i = i as usize;
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let lo = self.lo;
        self.words
            .iter()
            .enumerate()
            .flat_map(move |(wi, &w)| BitIter(w).map(move |b| lo + (wi * WORD_BITS + b) as i64))
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    /// Maximal runs of consecutive elements, as inclusive `(start, end)` pairs.
    pub fn runs(&self) -> Vec<(i64, i64)> {
        self.offset_runs()
            .into_iter()
            .map(|(s, e)| (self.lo + s as i64, self.lo + e as i64))
            .collect()
    }

    pub fn is_interval(&self) -> bool {
        self.len == self.span
    }

    /// `{x + delta : x ∈ self}`.
    pub fn translate(&self, delta: i64) -> Self {
        let mut out = self.clone();
        out.lo += delta;
        out
    }

    /// `{center - x : x ∈ self}`.
    pub fn reflect(&self, center: i64) -> Self {
        Self::from_values(self.iter().map(|x| center - x))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_values(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self::from_values(self.iter().filter(|x| !other.contains(*x)))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_values(self.iter().filter(|x| other.contains(*x)))
    }

    /// The sumset `A + B = {a + b}`. Empty if either operand is empty.
    pub fn sumset(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let self_runs = self.offset_runs();
        let other_runs = other.offset_runs();
        let (runs, pattern) = if self_runs.len() <= other_runs.len() {
            (self_runs, other)
        } else {
            (other_runs, self)
        };

        let span = self.span + other.span - 1;
        let n_words = span.div_ceil(WORD_BITS);
        let mut out = vec![0u64; n_words];
        let mut scratch = vec![0u64; n_words];
        for (start, end) in runs {
            let run_len = end - start + 1;
            let first = start / WORD_BITS;
            let last = ((start + pattern.span + run_len - 2) / WORD_BITS).min(n_words - 1);
            let window = &mut scratch[first..=last];
            window.fill(0);
            or_shifted(window, &pattern.words, start % WORD_BITS);
            dilate(window, run_len);
            for (o, s) in out[first..=last].iter_mut().zip(window.iter()) {
                *o |= *s;
            }
        }
        clear_tail(&mut out, span);
        let len = out.iter().map(|w| w.count_ones() as usize).sum();
        FiniteIntSet {
            lo: self.lo + other.lo,
            span,
            len,
            words: out,
        }
    }

    fn offset_runs(&self) -> Vec<(usize, usize)> {
        let mut runs = Vec::new();
        let mut pos = 0;
        while let Some(start) = self.next_bit(pos, true) {
            let end = self.next_bit(start, false).unwrap_or(self.span);
            runs.push((start, end - 1));
            pos = end;
        }
        runs
    }

    /// First offset `>= from` whose bit equals `value`.
    fn next_bit(&self, from: usize, value: bool) -> Option<usize> {
        if from >= self.span {
            return None;
        }
        let mut wi = from / WORD_BITS;
        let flip = if value { 0 } else { u64::MAX };
        let mut w = (self.words[wi] ^ flip) & (u64::MAX << (from % WORD_BITS));
        loop {
            if w != 0 {
                let pos = wi * WORD_BITS + w.trailing_zeros() as usize;
                return (pos < self.span).then_some(pos);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi] ^ flip;
        }
    }
}

impl fmt::Debug for FiniteIntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as a brace list, compressing runs of three or more: `{1..12, 19, 21}`.
impl fmt::Display for FiniteIntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, e)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match e - s {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}, {e}")?,
                _ => write!(f, "{s}..{e}")?,
            }
        }
        f.write_str("}")
    }
}

impl FromIterator<i64> for FiniteIntSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        Self::from_values(iter)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

fn clear_tail(words: &mut [u64], span: usize) {
    let rem = span % WORD_BITS;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

/// `dst |= src << shift`, truncated to `dst`, with `shift < 64`.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    if shift == 0 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= *s;
        }
        return;
    }
    for (i, &w) in src.iter().enumerate() {
        if i < dst.len() {
            dst[i] |= w << shift;
        }
        if i + 1 < dst.len() {
            dst[i + 1] |= w >> (WORD_BITS - shift);
        }
    }
}

/// In place `x |= x << shift`.
fn or_self_shifted(x: &mut [u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    for j in (ws..x.len()).rev() {
        let mut v = x[j - ws] << bs;
        if bs != 0 && j > ws {
            v |= x[j - ws - 1] >> (WORD_BITS - bs);
        }
        x[j] |= v;
    }
}

/// Replaces `x` by the union of its shifts by `0..len`.
fn dilate(x: &mut [u64], len: usize) {
    let mut covered = 1;
    while covered < len {
        let step = covered.min(len - covered);
        or_self_shifted(x, step);
        covered += step;
    }
}

/// An affine normalization `A = scale·base + offset` with `0 ∈ base` and
/// `gcd(base) = 1` (for `|A| ≥ 2`). Sumset cardinalities are preserved:
/// `|n·base| = |n·A|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSet {
    pub base: FiniteIntSet,
    pub offset: i64,
    pub scale: i64,
    pub a0: i64,
    pub k: usize,
}

impl NormalizedSet {
    pub fn reconstruct(&self) -> FiniteIntSet {
        self.base
            .iter()
            .map(|x| self.scale * x + self.offset)
            .collect()
    }
}

pub fn normalize(set: &FiniteIntSet) -> Result<NormalizedSet, IntSetError> {
    let offset = set.min().ok_or(IntSetError::EmptySet)?;
    let scale = set.iter().fold(0i64, |g, x| g.gcd(&(x - offset)));
    let scale = if scale == 0 { 1 } else { scale };
    let base: FiniteIntSet = set.iter().map(|x| (x - offset) / scale).collect();
    Ok(NormalizedSet {
        a0: base.max().unwrap(),
        k: base.len(),
        base,
        offset,
        scale,
    })
}

/// `max((k − 2)(a0 − 1)a0, 1)`: from this multiple on, `n·A0` is known to
/// have the eventual three-part structure.
pub fn nathanson_threshold(norm: &NormalizedSet) -> Result<i64, IntSetError> {
    if norm.k < 2 {
        return Err(IntSetError::TooFewElements(norm.k));
    }
    let t = (norm.k as i64 - 2)
        .checked_mul(norm.a0 - 1)
        .and_then(|x| x.checked_mul(norm.a0))
        .ok_or(IntSetError::Overflow("nathanson threshold"))?;
    Ok(t.max(1))
}

/// Lazily produces `1·A, 2·A, …, n_max·A` using `n·A = A + (n−1)·A`.
///
/// Each step checks the next window against the configured cap before
/// allocating it; an oversized step yields an error and ends the stream.
pub struct IteratedSumsets<'a> {
    base: &'a FiniteIntSet,
    current: Option<FiniteIntSet>,
    n: usize,
    n_max: usize,
    cap_bits: u64,
    failed: bool,
}

pub fn iterated_sumsets(set: &FiniteIntSet, n_max: usize) -> IteratedSumsets<'_> {
    IteratedSumsets {
        base: set,
        current: None,
        n: 0,
        n_max,
        cap_bits: DEFAULT_WINDOW_CAP_BITS,
        failed: false,
    }
}

impl<'a> IteratedSumsets<'a> {
    pub fn with_window_cap(mut self, cap_bits: u64) -> Self {
        self.cap_bits = cap_bits;
        self
    }

    /// Multiple of the most recently produced sumset (0 before the first).
    pub fn multiple(&self) -> usize {
        self.n
    }

    fn step(&mut self) -> Result<FiniteIntSet, IntSetError> {
        let next = match &self.current {
            None => self.base.clone(),
            Some(prev) => {
                if !prev.is_empty() {
                    let bits = (prev.span as u64)
                        .checked_add(self.base.span as u64 - 1)
                        .ok_or(IntSetError::Overflow("sumset window"))?;
                    if bits > self.cap_bits {
                        return Err(IntSetError::WindowTooLarge {
                            bits,
                            cap: self.cap_bits,
                        });
                    }
                }
                self.base.sumset(prev)
            }
        };
        self.n += 1;
        self.current = Some(next.clone());
        Ok(next)
    }
}

impl Iterator for IteratedSumsets<'_> {
    type Item = Result<FiniteIntSet, IntSetError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.n >= self.n_max {
            return None;
        }
        let r = self.step();
        self.failed = r.is_err();
        Some(r)
    }
}

/// `n·A`, computed by repeated addition.
pub fn multiple_sumset(
    set: &FiniteIntSet,
    n: i64,
    cap_bits: u64,
) -> Result<FiniteIntSet, IntSetError> {
    if n < 1 {
        return Err(IntSetError::InvalidMultiple(n));
    }
    iterated_sumsets(set, n as usize)
        .with_window_cap(cap_bits)
        .last()
        .expect("n >= 1 yields at least one term")
}

/// `n·A0 = lower ⊔ [c, a0·n − d] ⊔ (a0·n − upper)`, extracted at a given `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NathansonDecomposition {
    pub n: i64,
    pub a0: i64,
    pub c: i64,
    pub d: i64,
    /// `C ⊆ [0, c − 2]`.
    pub lower: FiniteIntSet,
    /// `D ⊆ [0, d − 2]`.
    pub upper: FiniteIntSet,
}

impl NathansonDecomposition {
    /// Rebuilds `n·A0` from the three parts.
    pub fn reassemble(&self) -> FiniteIntSet {
        let top = self.a0 * self.n;
        self.lower
            .iter()
            .chain(self.c..=top - self.d)
            .chain(self.upper.iter().map(|x| top - x))
            .collect()
    }

    /// Whether `lower` and `upper` coincide with another extraction.
    pub fn same_boundary(&self, other: &Self) -> bool {
        self.c == other.c
            && self.d == other.d
            && self.lower == other.lower
            && self.upper == other.upper
    }
}

pub fn extract_decomposition(
    norm: &NormalizedSet,
    n: i64,
) -> Result<NathansonDecomposition, IntSetError> {
    if norm.k < 2 {
        return Err(IntSetError::TooFewElements(norm.k));
    }
    let sumset = multiple_sumset(&norm.base, n, DEFAULT_WINDOW_CAP_BITS)?;
    decompose(&sumset, norm.a0, n)
}

/// Splits an already computed `n·A0` around its longest maximal run of
/// consecutive integers (the leftmost one on ties).
///
/// Once `n·A0` has its eventual shape, every run inside `C` is shorter than
/// the smallest positive element of `A0` and every run inside `a0·n − D`
/// shorter than the smallest positive element of `a0 − A0`, both at most
/// `a0`, while the central interval has at least `a0` elements. The
/// midpoint `⌊a0·n/2⌋` is not a safe anchor: for `A0 = {0, 5, 6}` and
/// `n = 5` the central interval is `[20, 30]`.
pub fn decompose(
    sumset: &FiniteIntSet,
    a0: i64,
    n: i64,
) -> Result<NathansonDecomposition, IntSetError> {
    let top = a0 * n;
    let fail = |reason: String| IntSetError::NoDecomposition { n, reason };
    if sumset.min() != Some(0) || sumset.max() != Some(top) {
        return Err(fail(format!("sumset is not spread over [0, {top}]")));
    }
    let (c, e) = sumset
        .runs()
        .into_iter()
        .rev()
        .max_by_key(|&(s, e)| e - s)
        .expect("nonempty sumset has a run");
    let d = top - e;
    let lower: FiniteIntSet = sumset.iter().take_while(|&x| x < c).collect();
    let upper: FiniteIntSet = sumset.iter().filter(|&x| x > e).map(|x| top - x).collect();
    if lower.max().is_some_and(|x| x > c - 2) || upper.max().is_some_and(|x| x > d - 2) {
        return Err(fail("boundary parts touch the central interval".into()));
    }
    Ok(NathansonDecomposition {
        n,
        a0,
        c,
        d,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> FiniteIntSet {
        FiniteIntSet::from_values(v.iter().copied())
    }

    #[test]
    fn make_set_examples() {
        let g = set(&[1, 2, 4, 5, 8, 11]);
        assert_eq!((g.len(), g.min(), g.max()), (6, Some(1), Some(11)));
        let e = set(&[]);
        assert!(e.is_empty());
        assert_eq!(e.min(), None);
        let s = set(&[3, 3, 3]);
        assert_eq!(s.to_vec(), vec![3]);
    }

    #[test]
    fn membership_agrees_with_listing() {
        let a = set(&[-70, -3, 0, 5, 63, 64, 65, 200]);
        let listed = a.to_vec();
        for x in -100..300 {
            assert_eq!(a.contains(x), listed.contains(&x), "x = {x}");
        }
    }

    #[test]
    fn runs_and_display() {
        let a = set(&[1, 2, 3, 4, 19, 21, 24, 25]);
        assert_eq!(a.runs(), vec![(1, 4), (19, 19), (21, 21), (24, 25)]);
        assert_eq!(a.to_string(), "{1..4, 19, 21, 24, 25}");
        assert_eq!(FiniteIntSet::interval(0, 127).runs(), vec![(0, 127)]);
        assert!(FiniteIntSet::interval(5, 4).is_empty());
    }

    #[test]
    fn sumset_small_cases() {
        let g = set(&[1, 2, 4, 5, 8, 11]);
        let gg = g.sumset(&g);
        assert_eq!(gg.len(), 15);
        assert_eq!(gg.len() as i64 - 3 * 5, 0);
        assert!(g.sumset(&FiniteIntSet::empty()).is_empty());
        assert_eq!(set(&[0]).sumset(&g), g);
        let neg = set(&[-5, -1]).sumset(&set(&[2, 10]));
        assert_eq!(neg.to_vec(), vec![-3, 1, 5, 9]);
    }

    #[test]
    fn sumset_crossing_word_boundaries() {
        let a: FiniteIntSet = (0..70).chain([130, 131, 200]).collect();
        let b: FiniteIntSet = [0, 63, 64, 65, 190].into_iter().collect();
        let naive: FiniteIntSet = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x + y))
            .collect();
        assert_eq!(a.sumset(&b), naive);
        assert_eq!(b.sumset(&a), naive);
    }

    #[test]
    fn buchweitz_gapset_doubled() {
        let g: FiniteIntSet = (1..=12).chain([19, 21, 24, 25]).collect();
        let two_g = iterated_sumsets(&g, 2).last().unwrap().unwrap();
        let expected: FiniteIntSet = (2..=50).filter(|x| ![39, 41, 47].contains(x)).collect();
        assert_eq!(two_g, expected);
        assert_eq!(two_g.len(), 46);
    }

    #[test]
    fn iterated_sumsets_singleton_and_family() {
        for s in iterated_sumsets(&set(&[0]), 5) {
            assert_eq!(s.unwrap().to_vec(), vec![0]);
        }
        let a: FiniteIntSet = [0, 1, 4, 6].into_iter().chain(21..=40).collect();
        let two_a = multiple_sumset(&a, 2, DEFAULT_WINDOW_CAP_BITS).unwrap();
        let expected: FiniteIntSet = (0..=2)
            .chain(4..=8)
            .chain([10, 12])
            .chain(21..=80)
            .collect();
        assert_eq!(two_a, expected);
    }

    #[test]
    fn iterated_sumsets_is_lazy_and_capped() {
        let a = set(&[0, 1000]);
        let mut it = iterated_sumsets(&a, 100).with_window_cap(5001);
        for _ in 0..5 {
            assert!(it.next().unwrap().is_ok());
        }
        assert_eq!(it.multiple(), 5);
        assert!(matches!(
            it.next(),
            Some(Err(IntSetError::WindowTooLarge { .. }))
        ));
        assert!(it.next().is_none());
    }

    #[test]
    fn normalize_examples() {
        let b = 11;
        let odd: FiniteIntSet = (1..=b - 2).step_by(2).collect();
        let n = normalize(&odd).unwrap();
        assert_eq!(n.base, FiniteIntSet::interval(0, (b - 3) / 2));
        assert_eq!((n.scale, n.offset), (2, 1));
        assert_eq!(n.reconstruct(), odd);

        let n = normalize(&set(&[1, 2, 4, 5, 8, 11])).unwrap();
        assert_eq!(n.base.to_vec(), vec![0, 1, 3, 4, 7, 10]);
        assert_eq!((n.scale, n.offset, n.a0, n.k), (1, 1, 10, 6));

        let n = normalize(&set(&[7])).unwrap();
        assert_eq!(n.base.to_vec(), vec![0]);
        assert_eq!((n.scale, n.offset), (1, 7));

        assert_eq!(
            normalize(&FiniteIntSet::empty()),
            Err(IntSetError::EmptySet)
        );
    }

    #[test]
    fn normalize_negative_values() {
        let a = set(&[-9, -3, 6]);
        let n = normalize(&a).unwrap();
        assert_eq!(n.base.to_vec(), vec![0, 2, 5]);
        assert_eq!((n.offset, n.scale), (-9, 3));
        assert_eq!(n.reconstruct(), a);
    }

    #[test]
    fn threshold_examples() {
        let g: FiniteIntSet = (1..=12).chain([19, 21, 24, 25]).collect();
        assert_eq!(nathanson_threshold(&normalize(&g).unwrap()), Ok(7728));
        assert_eq!(
            nathanson_threshold(&normalize(&set(&[0, 9])).unwrap()),
            Ok(1)
        );
        assert_eq!(
            nathanson_threshold(&normalize(&set(&[0, 2, 5])).unwrap()),
            Ok(20)
        );
        assert_eq!(
            nathanson_threshold(&normalize(&set(&[4])).unwrap()),
            Err(IntSetError::TooFewElements(1))
        );
    }

    #[test]
    fn decomposition_of_full_interval() {
        let norm = normalize(&set(&[0, 1])).unwrap();
        for n in 1..6 {
            let dec = extract_decomposition(&norm, n).unwrap();
            assert_eq!((dec.c, dec.d), (0, 0));
            assert!(dec.lower.is_empty() && dec.upper.is_empty());
            assert_eq!(dec.reassemble(), FiniteIntSet::interval(0, n));
        }
    }

    #[test]
    fn decomposition_of_family_sumsets() {
        // A = [0,1] ⊔ {4,6} ⊔ [m, 2(m−1)] with m = 33
        let m = 33;
        let a: FiniteIntSet = [0, 1, 4, 6].into_iter().chain(m..=2 * (m - 1)).collect();
        let norm = normalize(&a).unwrap();
        assert_eq!((norm.offset, norm.scale), (0, 1));
        let dec = extract_decomposition(&norm, 3).unwrap();
        assert_eq!((dec.c, dec.d), (m, 0));
        assert_eq!(dec.lower, (0..=14).chain([16, 18]).collect());
        assert_eq!(
            dec.reassemble(),
            multiple_sumset(&a, 3, DEFAULT_WINDOW_CAP_BITS).unwrap()
        );
        let full = extract_decomposition(&norm, 6).unwrap();
        assert_eq!((full.c, full.d), (0, 0));
        assert!(full.lower.is_empty());
    }

    #[test]
    fn decomposition_anchors_on_the_longest_run() {
        let norm = normalize(&set(&[0, 5, 6])).unwrap();
        let d = extract_decomposition(&norm, 5).unwrap();
        assert_eq!((d.c, d.d), (20, 0));
        assert_eq!(d.lower.to_vec(), vec![0, 5, 6, 10, 11, 12, 15, 16, 17, 18]);
        assert!(d.same_boundary(&extract_decomposition(&norm, 9).unwrap()));
    }

    #[test]
    fn decomposition_needs_the_full_span() {
        let err = decompose(&set(&[0, 1, 2]), 3, 1).unwrap_err();
        assert!(matches!(err, IntSetError::NoDecomposition { n: 1, .. }));
    }
}
