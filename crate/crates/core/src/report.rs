//! Machine-readable records: semigroup summaries, survey CSV and its JSON
//! sidecar, and the counterexample stream.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::buchweitz::{BetaProfile, BuchweitzResult};
use crate::enumeration::{Counterexample, SurveyRow};
use crate::semigroup::NumericalSemigroup;

pub const SURVEY_CSV_HEADER: &str =
    "genus,count,nonempty_buchweitz,max_beta2,non_interval_count,max_buch_size";

/// Invariants of a numerical semigroup. `symmetric` is null for `S = ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupRecord {
    pub generators: Vec<i64>,
    pub gapset: Vec<i64>,
    pub m: i64,
    pub f: i64,
    pub c: i64,
    pub g: i64,
    pub q: i64,
    pub symmetric: Option<bool>,
}

impl From<&NumericalSemigroup> for SemigroupRecord {
    fn from(s: &NumericalSemigroup) -> Self {
        SemigroupRecord {
            generators: s.minimal_generators().to_vec(),
            gapset: s.gapset().to_vec(),
            m: s.multiplicity(),
            f: s.frobenius(),
            c: s.conductor(),
            g: s.genus(),
            q: s.depth(),
            symmetric: s.is_symmetric().ok(),
        }
    }
}

/// A semigroup record with its Buchweitz set and `β(2..=tail_start)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoRecord {
    #[serde(flatten)]
    pub semigroup: SemigroupRecord,
    pub buch: BuchweitzResult,
    pub beta: Vec<i64>,
}

/// Buchweitz set of an arbitrary finite set, with its tail description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchRecord {
    pub set: Vec<i64>,
    pub buch: BuchweitzResult,
    pub beta: Vec<i64>,
    pub tail_slope: Option<i64>,
    pub tail_intercept: Option<i64>,
    pub tail_start: Option<i64>,
}

impl BuchRecord {
    pub fn new(set: Vec<i64>, buch: BuchweitzResult, profile: Option<&BetaProfile>) -> Self {
        BuchRecord {
            set,
            buch,
            beta: profile
                .map(|p| p.values_between(2, p.tail_start()))
                .unwrap_or_default(),
            tail_slope: profile.map(BetaProfile::tail_slope),
            tail_intercept: profile.map(BetaProfile::tail_intercept),
            tail_start: profile.map(BetaProfile::tail_start),
        }
    }
}

pub fn write_survey_csv<W: Write>(w: &mut W, rows: &[SurveyRow]) -> io::Result<()> {
    writeln!(w, "{SURVEY_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.genus,
            r.count,
            r.nonempty_buchweitz,
            r.max_beta2,
            r.non_interval_count,
            r.max_buch_size
        )?;
    }
    Ok(())
}

/// The CSV columns of a survey row (the histogram lives in the sidecar).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyCsvRow {
    pub genus: u32,
    pub count: u64,
    pub nonempty_buchweitz: u64,
    pub max_beta2: i64,
    pub non_interval_count: u64,
    pub max_buch_size: u64,
}

impl From<&SurveyRow> for SurveyCsvRow {
    fn from(r: &SurveyRow) -> Self {
        SurveyCsvRow {
            genus: r.genus,
            count: r.count,
            nonempty_buchweitz: r.nonempty_buchweitz,
            max_beta2: r.max_beta2,
            non_interval_count: r.non_interval_count,
            max_buch_size: r.max_buch_size,
        }
    }
}

pub fn read_survey_csv<R: BufRead>(r: R) -> io::Result<Vec<SurveyCsvRow>> {
    let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut lines = r.lines();
    match lines.next().transpose()? {
        Some(h) if h.trim() == SURVEY_CSV_HEADER => {}
        other => return Err(bad(format!("unexpected header {other:?}"))),
    }
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(bad(format!("expected 6 fields: {line}")));
        }
        let parse_err = |e: std::num::ParseIntError| bad(format!("{e} in {line}"));
        rows.push(SurveyCsvRow {
            genus: f[0].parse().map_err(parse_err)?,
            count: f[1].parse().map_err(parse_err)?,
            nonempty_buchweitz: f[2].parse().map_err(parse_err)?,
            max_beta2: f[3].parse().map_err(parse_err)?,
            non_interval_count: f[4].parse().map_err(parse_err)?,
            max_buch_size: f[5].parse().map_err(parse_err)?,
        });
    }
    Ok(rows)
}

/// `{"<genus>": {"<shape class>": count}}`.
pub fn shapes_json(rows: &[SurveyRow]) -> String {
    let map: BTreeMap<u32, &BTreeMap<String, u64>> =
        rows.iter().map(|r| (r.genus, &r.shape_histogram)).collect();
    serde_json::to_string_pretty(&map).expect("histograms serialize")
}

/// One JSON object per line.
pub fn write_counterexamples<W: Write>(w: &mut W, items: &[Counterexample]) -> io::Result<()> {
    for c in items {
        serde_json::to_writer(&mut *w, c)?;
        writeln!(w)?;
    }
    Ok(())
}
