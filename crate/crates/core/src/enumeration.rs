//! Exhaustive enumeration of numerical semigroups by genus and the Buchweitz
//! survey built on top of it.
//!
//! Semigroups form a tree rooted at `ℕ`: the children of `S` are `S ∖ {x}`
//! for each minimal generator `x` of `S` larger than its Frobenius number.
//! Every semigroup of genus `g` sits at depth `g`, exactly once.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::buchweitz::{
    beta_profile_with, buchweitz_from_profile, BetaProfile, BuchweitzError, BuchweitzResult,
    ProfileOptions,
};
use crate::intset::FiniteIntSet;
use crate::semigroup::NumericalSemigroup;

/// Gaps are kept in a `u128`; generators of a genus-`g` node are at most `3g`.
pub const MAX_TREE_GENUS: u32 = 40;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("genus bound {0} exceeds the supported maximum {MAX_TREE_GENUS}")]
    GenusTooLarge(u32),
    #[error("survey requires g_max >= 2, got {0}")]
    GenusTooSmall(u32),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error("checkpoint io: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Engine(#[from] BuchweitzError),
    #[error("shape classification: {0}")]
    Shape(#[from] ShapeError),
}

/// One vertex of the semigroup tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemigroupNode {
    gaps: u128,
    genus: u32,
    frobenius: i64,
    multiplicity: i64,
}

impl SemigroupNode {
    pub fn root() -> Self {
        SemigroupNode {
            gaps: 0,
            genus: 0,
            frobenius: -1,
            multiplicity: 1,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    pub fn is_gap(&self, x: i64) -> bool {
        (0..128).contains(&x) && self.gaps >> x & 1 == 1
    }

    pub fn gaps(&self) -> impl Iterator<Item = i64> + '_ {
        (1..=self.frobenius.max(0)).filter(|&x| self.is_gap(x))
    }

    pub fn gapset(&self) -> FiniteIntSet {
        self.gaps().collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.frobenius == 2 * self.genus as i64 - 1
    }

    /// Minimal generators above the Frobenius number, ascending.
    pub fn right_generators(&self) -> Vec<i64> {
        let m = self.multiplicity;
        let f = self.frobenius;
        let in_s = |x: i64| !self.is_gap(x);
        ((f + 1).max(1)..=(f + m).max(m))
            .filter(|&x| !(m..=x / 2).any(|y| in_s(y) && in_s(x - y)))
            .collect()
    }

    pub fn children(&self) -> Vec<SemigroupNode> {
        self.right_generators()
            .into_iter()
            .map(|x| {
                let gaps = self.gaps | 1u128 << x;
                let multiplicity = if x == self.multiplicity {
                    (x + 1..).find(|&y| gaps >> y & 1 == 0).unwrap()
                } else {
                    self.multiplicity
                };
                SemigroupNode {
                    gaps,
                    genus: self.genus + 1,
                    frobenius: x,
                    multiplicity,
                }
            })
            .collect()
    }
}

/// Depth-first walk of the subtree under `start`, down to genus `g_max`.
fn walk<F: FnMut(&SemigroupNode)>(start: SemigroupNode, g_max: u32, visit: &mut F) {
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        visit(&node);
        if node.genus < g_max {
            stack.extend(node.children().into_iter().rev());
        }
    }
}

/// Visits every numerical semigroup of genus at most `g_max` once and
/// returns the number found at each genus.
pub fn enumerate_by_genus<F: FnMut(&SemigroupNode)>(
    g_max: u32,
    mut visitor: F,
) -> Result<Vec<u64>, SurveyError> {
    if g_max > MAX_TREE_GENUS {
        return Err(SurveyError::GenusTooLarge(g_max));
    }
    let mut counts = vec![0u64; g_max as usize + 1];
    walk(SemigroupNode::root(), g_max, &mut |node| {
        counts[node.genus as usize] += 1;
        visitor(node);
    });
    Ok(counts)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("shape classification needs a finite Buchweitz set")]
    Cofinite,
}

/// Shape of a finite Buchweitz set and of the sign sequence of `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeClass {
    pub is_interval: bool,
    /// Number of maximal runs of `n` with `β(n) ≥ 1`.
    pub peak_count: usize,
    /// Run-length signs of `β(2..=tail_start)`, then ` / ` and the tail's
    /// limiting sign, e.g. `0*3 +*2 -*5 / -inf`.
    pub sign_pattern: String,
}

impl ShapeClass {
    /// The sign pattern with run lengths dropped, e.g. `0+- / -inf`.
    pub fn class_key(&self) -> String {
        let (runs, tail) = self
            .sign_pattern
            .split_once(" / ")
            .unwrap_or((&self.sign_pattern, ""));
        let symbols: String = runs.split(' ').filter_map(|r| r.chars().next()).collect();
        format!("{symbols} / {tail}")
    }
}

fn sign_symbol(v: i64) -> char {
    match v.signum() {
        1 => '+',
        0 => '0',
        _ => '-',
    }
}

pub fn classify_shape(
    result: &BuchweitzResult,
    profile: &BetaProfile,
) -> Result<ShapeClass, ShapeError> {
    if !result.is_finite() {
        return Err(ShapeError::Cofinite);
    }
    let peak_count = result
        .head
        .iter()
        .zip(result.head.iter().skip(1))
        .filter(|(a, b)| **b != **a + 1)
        .count()
        + usize::from(!result.head.is_empty());

    let mut runs: Vec<(char, usize)> = Vec::new();
    for v in profile.values_between(2, profile.tail_start()) {
        let s = sign_symbol(v);
        match runs.last_mut() {
            Some((last, count)) if *last == s => *count += 1,
            _ => runs.push((s, 1)),
        }
    }
    let tail = match (profile.tail_slope(), profile.tail_intercept()) {
        (s, _) if s < 0 => "-inf",
        (_, 0) => "0",
        _ => "-",
    };
    let body: Vec<String> = runs.iter().map(|(s, c)| format!("{s}*{c}")).collect();
    Ok(ShapeClass {
        is_interval: peak_count <= 1,
        peak_count,
        sign_pattern: format!("{} / {tail}", body.join(" ")),
    })
}

/// Aggregate over all semigroups of one genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub genus: u32,
    pub count: u64,
    pub nonempty_buchweitz: u64,
    pub max_beta2: i64,
    pub non_interval_count: u64,
    pub shape_histogram: BTreeMap<String, u64>,
    pub max_buch_size: u64,
}

impl SurveyRow {
    pub fn new(genus: u32) -> Self {
        SurveyRow {
            genus,
            count: 0,
            nonempty_buchweitz: 0,
            max_beta2: i64::MIN,
            non_interval_count: 0,
            shape_histogram: BTreeMap::new(),
            max_buch_size: 0,
        }
    }

    pub fn merge(&mut self, other: &SurveyRow) {
        debug_assert_eq!(self.genus, other.genus);
        self.count += other.count;
        self.nonempty_buchweitz += other.nonempty_buchweitz;
        self.max_beta2 = self.max_beta2.max(other.max_beta2);
        self.non_interval_count += other.non_interval_count;
        for (key, n) in &other.shape_histogram {
            *self.shape_histogram.entry(key.clone()).or_default() += n;
        }
        self.max_buch_size = self.max_buch_size.max(other.max_buch_size);
    }
}

/// A semigroup with nonempty Buchweitz set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub generators: Vec<i64>,
    pub gapset: Vec<i64>,
    pub buch: Vec<i64>,
    /// `β(2..=tail_start)`.
    pub beta_head: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub g_max: u32,
    pub rows: Vec<SurveyRow>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub workers: usize,
    /// Subtrees rooted at this genus are the unit of parallel work.
    pub split_genus: u32,
    pub checkpoint: Option<PathBuf>,
    /// Write the checkpoint after at least this many new semigroups.
    pub checkpoint_every: u64,
    pub profile: ProfileOptions,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            workers: 1,
            split_genus: 8,
            checkpoint: None,
            checkpoint_every: 100_000,
            profile: ProfileOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct TaskResult {
    visited: u64,
    rows: BTreeMap<u32, SurveyRow>,
    counterexamples: Vec<Counterexample>,
}

impl TaskResult {
    fn record(&mut self, node: &SemigroupNode, opts: &ProfileOptions) -> Result<(), SurveyError> {
        self.visited += 1;
        if node.genus < 2 {
            return Ok(());
        }
        let gapset = node.gapset();
        let profile = beta_profile_with(&gapset, opts)?;
        let result = buchweitz_from_profile(&profile);
        if !result.is_finite() {
            return Err(BuchweitzError::Inconsistent(format!(
                "cofinite Buchweitz set for gapset {gapset}"
            ))
            .into());
        }
        let shape = classify_shape(&result, &profile)?;

        let row = self
            .rows
            .entry(node.genus)
            .or_insert_with(|| SurveyRow::new(node.genus));
        row.count += 1;
        row.max_beta2 = row.max_beta2.max(profile.value(2));
        *row.shape_histogram.entry(shape.class_key()).or_default() += 1;
        if !shape.is_interval {
            row.non_interval_count += 1;
        }
        row.max_buch_size = row.max_buch_size.max(result.head.len() as u64);
        if !result.head.is_empty() {
            row.nonempty_buchweitz += 1;
            let s = NumericalSemigroup::from_gapset(&gapset).map_err(BuchweitzError::from)?;
            self.counterexamples.push(Counterexample {
                generators: s.minimal_generators().to_vec(),
                gapset: gapset.to_vec(),
                buch: result.head.clone(),
                beta_head: profile.values_between(2, profile.tail_start()),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
enum Task {
    /// All semigroups with genus below the split genus.
    Head(u32),
    /// The subtree under one node at the split genus.
    Subtree(SemigroupNode),
}

fn plan_tasks(g_max: u32, split: u32) -> Vec<Task> {
    let split = split.min(g_max);
    let mut tasks = vec![Task::Head(split)];
    walk(SemigroupNode::root(), split, &mut |node| {
        if node.genus == split {
            tasks.push(Task::Subtree(*node));
        }
    });
    tasks
}

fn run_task(task: Task, g_max: u32, opts: &ProfileOptions) -> Result<TaskResult, SurveyError> {
    let mut out = TaskResult::default();
    let mut failure = None;
    let mut visit = |node: &SemigroupNode| {
        if failure.is_none() {
            if let Err(e) = out.record(node, opts) {
                failure = Some(e);
            }
        }
    };
    match task {
        Task::Head(0) => {}
        Task::Head(split) => walk(SemigroupNode::root(), split - 1, &mut visit),
        Task::Subtree(node) => walk(node, g_max, &mut visit),
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

const CHECKPOINT_FORMAT: &str = "buchweitz-survey-checkpoint";
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    format: String,
    version: u32,
    g_max: u32,
    split_genus: u32,
    tasks: usize,
    completed: BTreeMap<usize, TaskResult>,
}

fn load_checkpoint(
    path: &Path,
    g_max: u32,
    split: u32,
    tasks: usize,
) -> Result<BTreeMap<usize, TaskResult>, SurveyError> {
    let corrupt = |reason: String| SurveyError::Checkpoint {
        path: path.to_path_buf(),
        reason,
    };
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    let cp: Checkpoint =
        serde_json::from_str(&text).map_err(|e| corrupt(format!("unreadable: {e}")))?;
    if cp.format != CHECKPOINT_FORMAT || cp.version != CHECKPOINT_VERSION {
        return Err(corrupt(format!(
            "unsupported format {} v{}",
            cp.format, cp.version
        )));
    }
    if (cp.g_max, cp.split_genus, cp.tasks) != (g_max, split, tasks) {
        return Err(corrupt(format!(
            "written for g_max={} split={} tasks={}, resuming g_max={g_max} split={split} tasks={tasks}",
            cp.g_max, cp.split_genus, cp.tasks
        )));
    }
    if let Some(bad) = cp.completed.keys().find(|&&i| i >= tasks) {
        return Err(corrupt(format!("task index {bad} out of range")));
    }
    Ok(cp.completed)
}

fn save_checkpoint(
    path: &Path,
    g_max: u32,
    split: u32,
    tasks: usize,
    completed: &BTreeMap<usize, TaskResult>,
) -> Result<(), SurveyError> {
    #[derive(Serialize)]
    struct CheckpointRef<'a> {
        format: &'a str,
        version: u32,
        g_max: u32,
        split_genus: u32,
        tasks: usize,
        completed: &'a BTreeMap<usize, TaskResult>,
    }
    let body = serde_json::to_string(&CheckpointRef {
        format: CHECKPOINT_FORMAT,
        version: CHECKPOINT_VERSION,
        g_max,
        split_genus: split,
        tasks,
        completed,
    })
    .expect("checkpoint serializes");
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Buchweitz sets and shapes of every semigroup with genus in `[2, g_max]`.
///
/// Work is split into subtrees rooted at `config.split_genus` and handed to
/// `config.workers` threads; the calling thread merges results in task order,
/// so the report does not depend on the worker count.
pub fn survey(g_max: u32, config: &SurveyConfig) -> Result<SurveyReport, SurveyError> {
    if g_max < 2 {
        return Err(SurveyError::GenusTooSmall(g_max));
    }
    if g_max > MAX_TREE_GENUS {
        return Err(SurveyError::GenusTooLarge(g_max));
    }
    let split = config.split_genus.min(g_max);
    let tasks = plan_tasks(g_max, split);
    let mut completed = match &config.checkpoint {
        Some(path) => load_checkpoint(path, g_max, split, tasks.len())?,
        None => BTreeMap::new(),
    };
    let pending: Vec<usize> = (0..tasks.len())
        .filter(|i| !completed.contains_key(i))
        .collect();

    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    let workers = config.workers.max(1).min(pending.len().max(1));
    let mut first_error = None;
    thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, stop, tasks, pending) = (&next, &stop, &tasks, &pending);
            scope.spawn(move || {
                while !stop.load(Ordering::Relaxed) {
                    let slot = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&index) = pending.get(slot) else {
                        break;
                    };
                    let result = run_task(tasks[index], g_max, &config.profile);
                    if tx.send((index, result)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        let mut since_save = 0u64;
        for (index, result) in rx {
            match result {
                Ok(r) => {
                    since_save += r.visited;
                    completed.insert(index, r);
                }
                Err(e) => {
                    stop.store(true, Ordering::Relaxed);
                    first_error.get_or_insert(e);
                    continue;
                }
            }
            if let Some(path) = &config.checkpoint {
                if since_save >= config.checkpoint_every {
                    since_save = 0;
                    if let Err(e) = save_checkpoint(path, g_max, split, tasks.len(), &completed) {
                        stop.store(true, Ordering::Relaxed);
                        first_error.get_or_insert(e);
                    }
                }
            }
        }
    });
    if let Some(e) = first_error {
        return Err(e);
    }
    if let Some(path) = &config.checkpoint {
        save_checkpoint(path, g_max, split, tasks.len(), &completed)?;
    }

    let mut rows: BTreeMap<u32, SurveyRow> = (2..=g_max).map(|g| (g, SurveyRow::new(g))).collect();
    let mut counterexamples = Vec::new();
    for result in completed.values() {
        for (g, row) in &result.rows {
            rows.get_mut(g).expect("genus within bounds").merge(row);
        }
        counterexamples.extend(result.counterexamples.iter().cloned());
    }
    counterexamples.sort_by(|a, b| (a.gapset.len(), &a.gapset).cmp(&(b.gapset.len(), &b.gapset)));
    Ok(SurveyReport {
        g_max,
        rows: rows.into_values().collect(),
        counterexamples,
    })
}
