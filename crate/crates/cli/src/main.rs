mod intlist;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use buchweitz_core::buchweitz::{beta_profile_with, buchweitz_from_profile, buchweitz_set_with};
use buchweitz_core::enumeration::{survey, SurveyConfig, SurveyError, SurveyReport};
use buchweitz_core::families::{verify_parameters, FamilyError, FamilyName, VerificationReport};
use buchweitz_core::intset::DEFAULT_WINDOW_CAP_BITS;
use buchweitz_core::report::{
    shapes_json, write_counterexamples, write_survey_csv, BuchRecord, InfoRecord, SemigroupRecord,
};
use buchweitz_core::{
    buchweitz_set_of_semigroup, BuchweitzError, BuchweitzResult, FiniteIntSet, NumericalSemigroup,
    ProfileOptions,
};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use intlist::{parse_int_list_arg, IntList};

const EXIT_BAD_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_CHECKPOINT: u8 = 4;

const GENUS_GUARD: u32 = 20;
const GENUS_WARN: u32 = 25;

/// Buchweitz sets of numerical semigroups and finite integer sets.
#[derive(Parser)]
#[command(name = "buchweitz", version)]
struct Cli {
    /// Largest sumset window (in bits) the engine may allocate.
    #[arg(long, global = true, env = "BUCHWEITZ_WINDOW_CAP", default_value_t = DEFAULT_WINDOW_CAP_BITS)]
    window_cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, symmetry, Buchweitz set and β values of a semigroup.
    #[command(group(ArgGroup::new("input").required(true).args(["gens", "gaps"])))]
    Info {
        /// Generators, e.g. 3,7 or 13..18,20,22,23.
        #[arg(long, value_parser = parse_int_list_arg, allow_hyphen_values = true)]
        gens: Option<IntList>,
        /// Gapset, e.g. 1,2,4,5,8,11.
        #[arg(long, value_parser = parse_int_list_arg, allow_hyphen_values = true)]
        gaps: Option<IntList>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Buchweitz set of an arbitrary finite set of integers.
    Buch {
        #[arg(long, value_parser = parse_int_list_arg, allow_hyphen_values = true)]
        set: IntList,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Checks a parametric family against its predicted Buchweitz interval.
    Family {
        /// P2, P3, P4, P5, P6 or komeda.
        #[arg(value_parser = parse_family)]
        name: FamilyName,
        /// Parameters, e.g. 1..10 or 1,3,5.
        #[arg(long, value_parser = parse_int_list_arg, default_value = "1")]
        k: IntList,
        /// Extra β values computed past the right end of the interval.
        #[arg(long, default_value_t = 5)]
        n_extra: i64,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Buchweitz sets of every semigroup with genus 2..=g_max.
    Survey {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        g_max: u32,
        /// Worker threads (the report does not depend on this).
        #[arg(long)]
        workers: Option<usize>,
        /// Genus at which subtrees become units of parallel work.
        #[arg(long, default_value_t = 8)]
        split_genus: u32,
        /// Resume from and periodically write to this checkpoint.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Semigroups visited between checkpoint writes.
        #[arg(long, default_value_t = 100_000)]
        checkpoint_every: u64,
        /// Write the counterexample stream (JSON lines) here.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
        /// Write the shape histogram sidecar (JSON) here.
        #[arg(long)]
        shapes: Option<PathBuf>,
        /// Required for g_max above 20.
        #[arg(long)]
        allow_large_genus: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn parse_family(s: &str) -> Result<FamilyName, String> {
    s.parse().map_err(|e: FamilyError| e.to_string())
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(1, e)
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = ProfileOptions {
        window_cap_bits: cli.window_cap,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Info { gens, gaps, format } => cmd_info(
            &mut out,
            gens.map(|l| l.0),
            gaps.map(|l| l.0),
            format,
            &opts,
        ),
        Command::Buch { set, format } => cmd_buch(&mut out, set.0, format, &opts),
        Command::Family {
            name,
            k,
            n_extra,
            format,
        } => cmd_family(&mut out, name, &k.0, n_extra, format, &opts),
        Command::Survey {
            g_max,
            workers,
            split_genus,
            checkpoint,
            checkpoint_every,
            counterexamples,
            shapes,
            allow_large_genus,
            format,
        } => {
            if g_max > GENUS_GUARD && !allow_large_genus {
                Err(Failure::new(
                    EXIT_BAD_INPUT,
                    format!("g_max {g_max} exceeds {GENUS_GUARD}; pass --allow-large-genus to run it anyway"),
                ))
            } else {
                if g_max > GENUS_WARN {
                    eprintln!("warning: genus {g_max} means billions of semigroups; expect a very long run");
                }
                let config = SurveyConfig {
                    workers: workers.unwrap_or_else(|| {
                        std::thread::available_parallelism().map_or(1, usize::from)
                    }),
                    split_genus,
                    checkpoint,
                    checkpoint_every,
                    profile: opts,
                };
                cmd_survey(&mut out, g_max, &config, counterexamples, shapes, format)
            }
        }
    };
    let flushed = out.flush();
    match result {
        Ok(code) => match flushed {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn join(values: &[i64], sep: &str) -> String {
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn compact(set: &[i64]) -> String {
    if set.is_empty() {
        "∅".into()
    } else {
        set.iter().copied().collect::<FiniteIntSet>().to_string()
    }
}

fn beta_line(from: i64, values: &[i64]) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        let _ = write!(
            s,
            "{}β({})={v}",
            if i == 0 { "" } else { " " },
            from + i as i64
        );
    }
    s
}

fn cmd_info(
    out: &mut impl Write,
    gens: Option<Vec<i64>>,
    gaps: Option<Vec<i64>>,
    format: Format,
    opts: &ProfileOptions,
) -> CmdResult {
    let s = match (gens, gaps) {
        (Some(g), _) => NumericalSemigroup::from_generators(&g),
        (_, Some(g)) => FiniteIntSet::try_from_values(g)
            .map_err(Into::into)
            .and_then(|set| NumericalSemigroup::from_gapset(&set)),
        (None, None) => unreachable!("clap requires one input"),
    }
    .map_err(|e| Failure::new(EXIT_BAD_INPUT, e))?;
    let record = info_record(&s, opts)?;
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        )?,
        Format::Csv => {
            writeln!(out, "generators,gapset,m,f,c,g,q,symmetric,buch,beta")?;
            let r = &record.semigroup;
            let symmetric = r.symmetric.map_or(String::new(), |b| b.to_string());
            writeln!(
                out,
                "{},{},{},{},{},{},{},{symmetric},{},{}",
                join(&r.generators, " "),
                join(&r.gapset, " "),
                r.m,
                r.f,
                r.c,
                r.g,
                r.q,
                buch_csv(&record.buch),
                join(&record.beta, " ")
            )?;
        }
        Format::Human => {
            let r = &record.semigroup;
            writeln!(out, "generators  ⟨{}⟩", join(&r.generators, ", "))?;
            writeln!(out, "gapset      {}", compact(&r.gapset))?;
            writeln!(out, "m={} f={} c={} g={} q={}", r.m, r.f, r.c, r.g, r.q)?;
            let sym = match r.symmetric {
                Some(true) => "yes",
                Some(false) => "no",
                None => "n/a (genus 0)",
            };
            writeln!(out, "symmetric   {sym}")?;
            writeln!(out, "Buch(S)     {}", record.buch)?;
            if !record.beta.is_empty() {
                writeln!(out, "beta        {}", beta_line(2, &record.beta))?;
            }
        }
    }
    Ok(0)
}

fn info_record(s: &NumericalSemigroup, opts: &ProfileOptions) -> Result<InfoRecord, Failure> {
    let engine = |e: BuchweitzError| Failure::new(1, e);
    let (buch, beta) = if s.genus() >= 2 {
        let profile = beta_profile_with(s.gapset(), opts).map_err(engine)?;
        (
            buchweitz_from_profile(&profile),
            profile.values_between(2, profile.tail_start()),
        )
    } else {
        (buchweitz_set_of_semigroup(s).map_err(engine)?, Vec::new())
    };
    Ok(InfoRecord {
        semigroup: SemigroupRecord::from(s),
        buch,
        beta,
    })
}

/// `2 3 5+` style: members, then `n+` for a cofinite tail from `n`.
fn buch_csv(b: &BuchweitzResult) -> String {
    let mut parts: Vec<String> = b.head.iter().map(i64::to_string).collect();
    if let Some(from) = b.cofinite_from {
        parts.push(format!("{from}+"));
    }
    parts.join(" ")
}

fn cmd_buch(
    out: &mut impl Write,
    set: Vec<i64>,
    format: Format,
    opts: &ProfileOptions,
) -> CmdResult {
    let a = FiniteIntSet::try_from_values(set).map_err(|e| Failure::new(EXIT_BAD_INPUT, e))?;
    let buch = buchweitz_set_with(&a, opts).map_err(|e| Failure::new(1, e))?;
    let profile = if a.len() >= 2 {
        Some(beta_profile_with(&a, opts).map_err(|e| Failure::new(1, e))?)
    } else {
        None
    };
    let record = BuchRecord::new(a.to_vec(), buch, profile.as_ref());
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        )?,
        Format::Csv => {
            writeln!(out, "set,buch,beta,tail_slope,tail_intercept,tail_start")?;
            let opt = |v: Option<i64>| v.map_or(String::new(), |x| x.to_string());
            writeln!(
                out,
                "{},{},{},{},{},{}",
                join(&record.set, " "),
                buch_csv(&record.buch),
                join(&record.beta, " "),
                opt(record.tail_slope),
                opt(record.tail_intercept),
                opt(record.tail_start)
            )?;
        }
        Format::Human => {
            writeln!(out, "A           {}", compact(&record.set))?;
            let note = match (record.buch.cofinite_from, record.buch.head.is_empty()) {
                (Some(2), true) => "  (all n ≥ 2)",
                _ => "",
            };
            writeln!(out, "Buch(A)     {}{note}", record.buch)?;
            if let (Some(slope), Some(intercept), Some(start)) =
                (record.tail_slope, record.tail_intercept, record.tail_start)
            {
                writeln!(out, "beta        {}", beta_line(2, &record.beta))?;
                let sign = if intercept < 0 { '-' } else { '+' };
                let c = intercept.abs();
                writeln!(
                    out,
                    "tail        β(n) = {slope}·n {sign} {c} for n ≥ {start}"
                )?;
            }
        }
    }
    Ok(0)
}

fn cmd_family(
    out: &mut impl Write,
    name: FamilyName,
    ks: &[i64],
    n_extra: i64,
    format: Format,
    opts: &ProfileOptions,
) -> CmdResult {
    if n_extra < 0 {
        return Err(Failure::new(
            EXIT_BAD_INPUT,
            "--n-extra must be nonnegative",
        ));
    }
    let workers = std::thread::available_parallelism().map_or(1, usize::from);
    let mut reports = Vec::new();
    for result in verify_parameters(name, ks, n_extra, opts, workers) {
        match result {
            Ok(r) => reports.push(r),
            Err(e @ FamilyError::Engine(_)) => return Err(Failure::new(1, e)),
            Err(e) => return Err(Failure::new(EXIT_BAD_INPUT, e)),
        }
    }
    if format == Format::Csv {
        writeln!(
            out,
            "family,k,predicted_lo,predicted_hi,computed,match,first_mismatch"
        )?;
    }
    for r in &reports {
        write_family_record(out, r, format)?;
    }
    let failed = reports.iter().filter(|r| !r.matches).count();
    if format == Format::Human {
        writeln!(
            out,
            "{} of {} parameters match",
            reports.len() - failed,
            reports.len()
        )?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_MISMATCH })
}

fn write_family_record(
    out: &mut impl Write,
    r: &VerificationReport,
    format: Format,
) -> io::Result<()> {
    let mismatch = r
        .first_mismatch
        .as_ref()
        .map(|m| serde_json::to_string(m).expect("mismatch serializes"));
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(r).expect("report serializes")
        ),
        Format::Csv => writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.family,
            r.k,
            r.predicted.0,
            r.predicted.1,
            buch_csv(&r.computed),
            r.matches,
            mismatch.map_or(String::new(), |m| format!("\"{}\"", m.replace('"', "\"\"")))
        ),
        Format::Human => {
            let status = if r.matches { "ok" } else { "MISMATCH" };
            writeln!(
                out,
                "{} k={}: predicted [{}, {}], computed {}  {status}",
                r.family, r.k, r.predicted.0, r.predicted.1, r.computed
            )?;
            if let Some(m) = mismatch {
                writeln!(out, "    first mismatch {m}")?;
            }
            writeln!(out, "    {}", beta_line(2, &r.beta))
        }
    }
}

fn cmd_survey(
    out: &mut impl Write,
    g_max: u32,
    config: &SurveyConfig,
    counterexamples: Option<PathBuf>,
    shapes: Option<PathBuf>,
    format: Format,
) -> CmdResult {
    let report = survey(g_max, config).map_err(|e| match e {
        SurveyError::Checkpoint { .. } | SurveyError::Io(_) => Failure::new(EXIT_CHECKPOINT, e),
        SurveyError::GenusTooLarge(_) | SurveyError::GenusTooSmall(_) => {
            Failure::new(EXIT_BAD_INPUT, e)
        }
        e => Failure::new(1, e),
    })?;
    if let Some(path) = counterexamples {
        let mut w = BufWriter::new(File::create(&path)?);
        write_counterexamples(&mut w, &report.counterexamples)?;
        w.flush()?;
    }
    if let Some(path) = shapes {
        std::fs::write(&path, shapes_json(&report.rows) + "\n")?;
    }
    match format {
        Format::Csv => write_survey_csv(out, &report.rows)?,
        Format::Json => {
            for row in &report.rows {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(row).expect("row serializes")
                )?;
            }
        }
        Format::Human => write_survey_human(out, &report)?,
    }
    eprintln!(
        "{} semigroups, {} with nonempty Buchweitz set",
        report.rows.iter().map(|r| r.count).sum::<u64>(),
        report.counterexamples.len()
    );
    Ok(0)
}

fn write_survey_human(out: &mut impl Write, report: &SurveyReport) -> io::Result<()> {
    writeln!(
        out,
        "{:>5} {:>12} {:>10} {:>9} {:>12} {:>9}",
        "genus", "count", "nonempty", "max β(2)", "non-interval", "max |B|"
    )?;
    for r in &report.rows {
        writeln!(
            out,
            "{:>5} {:>12} {:>10} {:>9} {:>12} {:>9}",
            r.genus,
            r.count,
            r.nonempty_buchweitz,
            r.max_beta2,
            r.non_interval_count,
            r.max_buch_size
        )?;
    }
    for c in &report.counterexamples {
        writeln!(
            out,
            "⟨{}⟩  g={}  Buch = {}",
            join(&c.generators, ","),
            c.gapset.len(),
            compact(&c.buch)
        )?;
    }
    Ok(())
}
