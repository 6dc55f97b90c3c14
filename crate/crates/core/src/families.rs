//! Parametric numerical semigroups whose Buchweitz sets are known intervals,
//! each paired with its predicted interval and, where a closed form is
//! known, its predicted `β`.
//!
//! | family | multiplicity       | extra gaps above `m`                    | `Buch(S)`        |
//! |--------|--------------------|-----------------------------------------|------------------|
//! | P2     | `6k + 15`          | `2m−7, 2m−5, 2m−2, 2m−1`                | `[2, k+2]`       |
//! | P3     | `6k + 19`          | `2m−7, 2m−6, 2m−2, 2m−1`                | `[3, k+3]`       |
//! | P4     | `4k + 22`          | `2m−6, 2m−2, 2m−1`                      | `[4, k+4]`       |
//! | P5     | `7k + 44`          | `2m−10, 2m−4, 2m−3, 2m−2`               | `[5, k+5]`       |
//! | P6     | `5k + 55`          | `2m−10, 2m−9, 2m−2`                     | `[6, k+6]`       |
//! | Komeda | `4k² + 27k + 44`   | `8k²+51k+80, 8k²+53k+85, 8k²+53k+86`    | `[7+2k, 7+4k]`   |
//!
//! All gapsets are `[1, m−1]` plus the listed gaps, so every family has depth 2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::buchweitz::{buchweitz_set_with, BuchweitzError, BuchweitzResult, ProfileOptions};
use crate::intset::{iterated_sumsets, FiniteIntSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?} (expected P2, P3, P4, P5, P6 or komeda)")]
    UnknownFamily(String),
    #[error("family parameter k must be at least 1, got {0}")]
    InvalidParameter(i64),
    #[error("family {family} supports k up to {max}, got {k}")]
    ParameterTooLarge {
        family: FamilyName,
        k: i64,
        max: i64,
    },
    #[error("family {0} has no closed form for beta")]
    NoBetaFormula(FamilyName),
    #[error("beta formula of {family} is undefined at n = {n}")]
    OutOfDomain { family: FamilyName, n: i64 },
    #[error("beta formula of {family} is not an integer at n = {n}")]
    NonIntegral { family: FamilyName, n: i64 },
    #[error(transparent)]
    Engine(#[from] BuchweitzError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyName {
    P2,
    P3,
    P4,
    P5,
    P6,
    #[serde(rename = "komeda")]
    Komeda,
}

impl FamilyName {
    pub const ALL: [FamilyName; 6] = [
        FamilyName::P2,
        FamilyName::P3,
        FamilyName::P4,
        FamilyName::P5,
        FamilyName::P6,
        FamilyName::Komeda,
    ];

    /// Largest supported `k`. Chosen so that verification windows
    /// (`max(G)·(hi + n_extra)` bits) stay far below the default cap.
    pub fn max_parameter(self) -> i64 {
        match self {
            FamilyName::Komeda => 100,
            _ => 2000,
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::P2 => "P2",
            FamilyName::P3 => "P3",
            FamilyName::P4 => "P4",
            FamilyName::P5 => "P5",
            FamilyName::P6 => "P6",
            FamilyName::Komeda => "komeda",
        })
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// `2β(n) = c0 + c1·n + c2·n²` for `from ≤ n ≤ to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BetaPiece {
    pub from: i64,
    pub to: Option<i64>,
    pub twice: [i64; 3],
}

impl BetaPiece {
    fn covers(&self, n: i64) -> bool {
        n >= self.from && self.to.is_none_or(|to| n <= to)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub k: i64,
    pub multiplicity: i64,
    pub gapset: FiniteIntSet,
    pub predicted_interval: (i64, i64),
    pub predicted_beta: Option<Vec<BetaPiece>>,
}

pub fn build_family(name: FamilyName, k: i64) -> Result<FamilySpec, FamilyError> {
    if k < 1 {
        return Err(FamilyError::InvalidParameter(k));
    }
    if k > name.max_parameter() {
        return Err(FamilyError::ParameterTooLarge {
            family: name,
            k,
            max: name.max_parameter(),
        });
    }
    let piece = |from, to, twice| BetaPiece { from, to, twice };
    let (m, extra, interval, beta): (i64, Vec<i64>, _, _) = match name {
        FamilyName::P2 => {
            let m = 6 * k + 15;
            let beta = vec![
                piece(2, Some(2), [2, 0, 0]),
                piece(3, Some(k + 2), [4, 0, 0]),
                piece(k + 3, None, [12 * k + 36, -12, 0]),
            ];
            (
                m,
                vec![2 * m - 7, 2 * m - 5, 2 * m - 2, 2 * m - 1],
                (2, k + 2),
                Some(beta),
            )
        }
        FamilyName::P3 => {
            let m = 6 * k + 19;
            let beta = vec![
                piece(2, Some(2), [0, 0, 0]),
                piece(3, Some(3), [2, 0, 0]),
                piece(4, Some(k + 3), [8, 0, 0]),
                piece(k + 4, None, [12 * k + 44, -12, 0]),
            ];
            (
                m,
                vec![2 * m - 7, 2 * m - 6, 2 * m - 2, 2 * m - 1],
                (3, k + 3),
                Some(beta),
            )
        }
        FamilyName::P4 => {
            let m = 4 * k + 22;
            (m, vec![2 * m - 6, 2 * m - 2, 2 * m - 1], (4, k + 4), None)
        }
        FamilyName::P5 => {
            let m = 7 * k + 44;
            (
                m,
                vec![2 * m - 10, 2 * m - 4, 2 * m - 3, 2 * m - 2],
                (5, k + 5),
                None,
            )
        }
        FamilyName::P6 => {
            let m = 5 * k + 55;
            (m, vec![2 * m - 10, 2 * m - 9, 2 * m - 2], (6, k + 6), None)
        }
        FamilyName::Komeda => {
            let k2 = k * k;
            let m = 4 * k2 + 27 * k + 44;
            let beta = vec![
                piece(2, Some(5 + 2 * k), [8 + 2 * k, -(7 + 2 * k), 1]),
                piece(6 + 2 * k, Some(6 + 2 * k), [0, 0, 0]),
                piece(
                    7 + 2 * k,
                    Some(11 + 4 * k),
                    [-40 - 38 * k - 8 * k2, 6 * k + 13, -1],
                ),
                piece(
                    12 + 4 * k,
                    None,
                    [2 * (4 * k2 + 27 * k + 46), -2 * (k + 5), 0],
                ),
            ];
            let extra = vec![
                80 + 51 * k + 8 * k2,
                85 + 53 * k + 8 * k2,
                86 + 53 * k + 8 * k2,
            ];
            (m, extra, (7 + 2 * k, 7 + 4 * k), Some(beta))
        }
    };
    Ok(FamilySpec {
        name,
        k,
        multiplicity: m,
        gapset: (1..m).chain(extra).collect(),
        predicted_interval: interval,
        predicted_beta: beta,
    })
}

/// The P2 family indexed by the right end `b ≥ 3` of `Buch(S) = [2, b]`.
pub fn p2_for_interval_end(b: i64) -> Result<FamilySpec, FamilyError> {
    if b < 3 {
        return Err(FamilyError::InvalidParameter(b - 2));
    }
    build_family(FamilyName::P2, b - 2)
}

impl FamilySpec {
    /// Predicted `β(n)` for `n ≥ 2`, evaluated exactly over `2β`.
    pub fn predicted_beta_value(&self, n: i64) -> Result<i64, FamilyError> {
        let pieces = self
            .predicted_beta
            .as_ref()
            .ok_or(FamilyError::NoBetaFormula(self.name))?;
        let out_of_domain = FamilyError::OutOfDomain {
            family: self.name,
            n,
        };
        let piece = pieces.iter().find(|p| p.covers(n)).ok_or(out_of_domain)?;
        let [c0, c1, c2] = piece.twice;
        let twice = c0 + c1 * n + c2 * n * n;
        if twice % 2 != 0 {
            return Err(FamilyError::NonIntegral {
                family: self.name,
                n,
            });
        }
        Ok(twice / 2)
    }

    pub fn predicted_contains(&self, n: i64) -> bool {
        let (lo, hi) = self.predicted_interval;
        lo <= n && n <= hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mismatch {
    Membership {
        n: i64,
        predicted: bool,
        computed: bool,
    },
    Beta {
        n: i64,
        predicted: i64,
        computed: i64,
    },
}

impl Mismatch {
    fn n(&self) -> i64 {
        match self {
            Mismatch::Membership { n, .. } | Mismatch::Beta { n, .. } => *n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: FamilyName,
    pub k: i64,
    pub predicted: (i64, i64),
    pub computed: BuchweitzResult,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<Mismatch>,
    /// Explicit `β(2), β(3), …, β(hi + n_extra)`.
    pub beta: Vec<i64>,
}

impl VerificationReport {
    pub fn beta_at(&self, n: i64) -> Option<i64> {
        (n >= 2)
            .then(|| self.beta.get(n as usize - 2).copied())
            .flatten()
    }
}

pub fn verify_family(spec: &FamilySpec, n_extra: i64) -> Result<VerificationReport, FamilyError> {
    verify_family_with(spec, n_extra, &ProfileOptions::default())
}

/// Compares the computed Buchweitz set (from the eventual-linear profile) and
/// explicitly iterated `β(2..=hi + n_extra)` against the predictions.
pub fn verify_family_with(
    spec: &FamilySpec,
    n_extra: i64,
    opts: &ProfileOptions,
) -> Result<VerificationReport, FamilyError> {
    let computed = buchweitz_set_with(&spec.gapset, opts)?;
    let (lo, hi) = spec.predicted_interval;
    let n_end = hi + n_extra.max(0);

    let g_minus_one = spec.gapset.len() as i64 - 1;
    let mut beta = Vec::new();
    for (i, sumset) in iterated_sumsets(&spec.gapset, n_end as usize)
        .with_window_cap(opts.window_cap_bits)
        .enumerate()
    {
        let n = i as i64 + 1;
        let sumset = sumset.map_err(BuchweitzError::from)?;
        if n >= 2 {
            beta.push(sumset.len() as i64 - (2 * n - 1) * g_minus_one);
        }
    }

    let mut mismatches = Vec::new();
    let membership_end = n_end
        .max(computed.head.last().copied().unwrap_or(0))
        .max(computed.cofinite_from.unwrap_or(0));
    if let Some(n) =
        (2..=membership_end).find(|&n| computed.contains(n) != spec.predicted_contains(n))
    {
        mismatches.push(Mismatch::Membership {
            n,
            predicted: spec.predicted_contains(n),
            computed: computed.contains(n),
        });
    }
    for (i, &b) in beta.iter().enumerate() {
        let n = i as i64 + 2;
        let explicit_member = b >= 1;
        if explicit_member != computed.contains(n) {
            return Err(BuchweitzError::Inconsistent(format!(
                "profile and explicit sumsets disagree on {} (k = {}) at n = {n}",
                spec.name, spec.k
            ))
            .into());
        }
        if spec.predicted_beta.is_some() {
            let predicted = spec.predicted_beta_value(n)?;
            if predicted != b {
                mismatches.push(Mismatch::Beta {
                    n,
                    predicted,
                    computed: b,
                });
                break;
            }
        }
    }
    let first_mismatch = mismatches.into_iter().min_by_key(Mismatch::n);
    Ok(VerificationReport {
        family: spec.name,
        k: spec.k,
        predicted: (lo, hi),
        matches: first_mismatch.is_none(),
        computed,
        first_mismatch,
        beta,
    })
}

/// Builds and verifies one family for each `k`, spreading the parameters
/// over up to `workers` threads. Results come back in the order of `ks`.
pub fn verify_parameters(
    name: FamilyName,
    ks: &[i64],
    n_extra: i64,
    opts: &ProfileOptions,
    workers: usize,
) -> Vec<Result<VerificationReport, FamilyError>> {
    let run =
        |k: i64| build_family(name, k).and_then(|spec| verify_family_with(&spec, n_extra, opts));
    let workers = workers.clamp(1, ks.len().max(1));
    if workers == 1 {
        return ks.iter().map(|&k| run(k)).collect();
    }
    let chunk = ks.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = ks
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&k| run(k)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification worker panicked"))
            .collect()
    })
}
