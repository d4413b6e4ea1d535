//! The benchmark harness: runs the prover over problem collections with
//! limits and worker pools, aggregates per-group statistics, and renders
//! reports and proofs.

mod latex;

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::format::{parse_problem, Problem};
use crate::illf::{self, ProveResult, SearchLimits, UnknownReason};
use crate::translate::TranslationKind;

pub use latex::render_latex_proof;

/// Why a run ended without a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnknownCause {
    Timeout,
    BoundHit,
    /// The problem file did not parse; the message says why.
    ParseError(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Provable,
    NotProvable,
    Unknown(UnknownCause),
}

impl Verdict {
    pub fn is_decided(&self) -> bool {
        matches!(self, Verdict::Provable | Verdict::NotProvable)
    }
}

/// One prover run over one problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    /// Group tag before the first `-` of the name, e.g. `KLE`.
    pub category: String,
    /// Translation token at the end of the name, when recognizable.
    pub translation: Option<String>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    /// Proof size in nodes, for provable runs.
    pub proof_nodes: Option<usize>,
}

/// A problem source for [`run_suite`]: a name and the file text.
#[derive(Clone, Debug)]
pub struct SuiteProblem {
    pub name: String,
    pub source: String,
}

/// Loads every `.p` file of a directory, sorted by file name.
pub fn suite_from_dir(dir: &Path) -> std::io::Result<Vec<SuiteProblem>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "p") {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.push(SuiteProblem {
                name,
                source: std::fs::read_to_string(&path)?,
            });
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

fn tags_of(name: &str) -> (String, Option<String>) {
    let mut parts = name.split('-');
    let category = parts.next().unwrap_or(name).to_string();
    let translation = name
        .rsplit('-')
        .next()
        .filter(|last| TranslationKind::from_token(last).is_some() || last.starts_with("alt"))
        .map(str::to_string);
    (category, translation)
}

/// Attempts every problem once and records verdicts and timings. Parse
/// failures become `Unknown` records; they never abort the suite. With
/// `workers > 1` the problems run concurrently; record order always
/// follows input order.
pub fn run_suite(
    problems: &[SuiteProblem],
    limits: &SearchLimits,
    workers: usize,
) -> Vec<RunRecord> {
    let parsed: Vec<(String, Result<Problem, String>)> = problems
        .iter()
        .map(|p| {
            (
                p.name.clone(),
                parse_problem(&p.source).map_err(|e| e.to_string()),
            )
        })
        .collect();
    run_parsed(&parsed, limits, workers)
}

/// Runs already-materialized problems (used for generated libraries).
pub fn run_suite_problems(
    problems: &[Problem],
    limits: &SearchLimits,
    workers: usize,
) -> Vec<RunRecord> {
    let parsed: Vec<(String, Result<Problem, String>)> = problems
        .iter()
        .map(|p| (p.name.clone(), Ok(p.clone())))
        .collect();
    run_parsed(&parsed, limits, workers)
}

fn run_parsed(
    problems: &[(String, Result<Problem, String>)],
    limits: &SearchLimits,
    workers: usize,
) -> Vec<RunRecord> {
    let workers = workers.max(1);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RunRecord>>> = Mutex::new(vec![None; problems.len()]);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= problems.len() {
                    break;
                }
                let record = run_one(&problems[i].0, &problems[i].1, limits);
                slots.lock().expect("no poisoned slots")[i] = Some(record);
            });
        }
    });

    slots
        .into_inner()
        .expect("no poisoned slots")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

fn run_one(name: &str, parsed: &Result<Problem, String>, limits: &SearchLimits) -> RunRecord {
    let (category, translation) = tags_of(name);
    let base = RunRecord {
        problem: name.to_string(),
        category,
        translation,
        verdict: Verdict::NotProvable,
        elapsed_ms: 0,
        proof_nodes: None,
    };

    let problem = match parsed {
        Ok(p) => p,
        Err(msg) => {
            return RunRecord {
                verdict: Verdict::Unknown(UnknownCause::ParseError(msg.clone())),
                ..base
            };
        }
    };

    let sequent = problem.to_sequent();
    match illf::prove(&sequent, limits) {
        Ok(ProveResult::Provable(tree, elapsed)) => {
            debug_assert!(
                illf::check_proof(&tree, &sequent),
                "emitted proof fails its own checker on {name}"
            );
            RunRecord {
                verdict: Verdict::Provable,
                elapsed_ms: elapsed.as_millis() as u64,
                proof_nodes: Some(tree.len()),
                ..base
            }
        }
        Ok(ProveResult::NotProvable(elapsed)) => RunRecord {
            verdict: Verdict::NotProvable,
            elapsed_ms: elapsed.as_millis() as u64,
            ..base
        },
        Ok(ProveResult::Unknown(reason, elapsed)) => RunRecord {
            verdict: Verdict::Unknown(match reason {
                UnknownReason::Timeout => UnknownCause::Timeout,
                UnknownReason::BoundHit => UnknownCause::BoundHit,
            }),
            elapsed_ms: elapsed.as_millis() as u64,
            ..base
        },
        Err(e) => RunRecord {
            verdict: Verdict::Unknown(UnknownCause::ParseError(e.to_string())),
            ..base
        },
    }
}

/// Aggregate over one group of runs. Time statistics cover only decided
/// runs; a group with none reports them as absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteStats {
    pub num_problems: usize,
    pub unsolved: usize,
    pub solved_theorems: usize,
    pub non_theorems: usize,
    pub min_ms: Option<u64>,
    pub avg_ms: Option<f64>,
    pub max_ms: Option<u64>,
}

impl SuiteStats {
    fn from_records(records: &[&RunRecord]) -> SuiteStats {
        let mut stats = SuiteStats {
            num_problems: records.len(),
            unsolved: 0,
            solved_theorems: 0,
            non_theorems: 0,
            min_ms: None,
            avg_ms: None,
            max_ms: None,
        };
        let mut decided_times = Vec::new();
        for r in records {
            match &r.verdict {
                Verdict::Provable => stats.solved_theorems += 1,
                Verdict::NotProvable => stats.non_theorems += 1,
                Verdict::Unknown(_) => stats.unsolved += 1,
            }
            if r.verdict.is_decided() {
                decided_times.push(r.elapsed_ms);
            }
        }
        if !decided_times.is_empty() {
            stats.min_ms = decided_times.iter().min().copied();
            stats.max_ms = decided_times.iter().max().copied();
            stats.avg_ms =
                Some(decided_times.iter().sum::<u64>() as f64 / decided_times.len() as f64);
        }
        stats
    }

    /// The counts partition the problem set.
    pub fn partition_holds(&self) -> bool {
        self.num_problems == self.unsolved + self.solved_theorems + self.non_theorems
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupBy {
    Category,
    Translation,
    CategoryTranslation,
}

/// Groups records and aggregates each group, sorted by group name.
pub fn summarize(records: &[RunRecord], group_by: GroupBy) -> Vec<(String, SuiteStats)> {
    let mut groups: std::collections::BTreeMap<String, Vec<&RunRecord>> = Default::default();
    for r in records {
        let key = match group_by {
            GroupBy::Category => r.category.clone(),
            GroupBy::Translation => r.translation.clone().unwrap_or_else(|| "-".into()),
            GroupBy::CategoryTranslation => format!(
                "{}/{}",
                r.category,
                r.translation.as_deref().unwrap_or("-")
            ),
        };
        groups.entry(key).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(name, rs)| (name, SuiteStats::from_records(&rs)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Latex,
}

/// Renders grouped statistics: CSV has one row per group; the LaTeX
/// table follows the comparison-table layout with one metric per row and
/// one column per group.
pub fn emit_report(stats: &[(String, SuiteStats)], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(stats),
        ReportFormat::Latex => emit_latex(stats),
    }
}

fn opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn opt_avg(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2}")).unwrap_or_else(|| "-".into())
}

fn emit_csv(stats: &[(String, SuiteStats)]) -> String {
    let mut out = String::from(
        "group,num_problems,unsolved,solved_theorems,non_theorems,min_ms,avg_ms,max_ms\n",
    );
    for (name, s) in stats {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            name,
            s.num_problems,
            s.unsolved,
            s.solved_theorems,
            s.non_theorems,
            opt_u64(s.min_ms),
            opt_avg(s.avg_ms),
            opt_u64(s.max_ms),
        ));
    }
    out
}

fn emit_latex(stats: &[(String, SuiteStats)]) -> String {
    let cols = "l|".to_string() + &"c|".repeat(stats.len());
    let mut out = format!("\\begin{{tabular}}{{{cols}}}\n\\hline\n");
    out.push_str(
        &stats
            .iter()
            .map(|(name, _)| format!(" & {name}"))
            .collect::<String>(),
    );
    out.push_str(" \\\\\\hline\n");
    let rows: [(&str, Box<dyn Fn(&SuiteStats) -> String>); 7] = [
        ("Num. of Problems", Box::new(|s| s.num_problems.to_string())),
        ("Unsolved (timeouts)", Box::new(|s| s.unsolved.to_string())),
        ("Solved (Theorems)", Box::new(|s| s.solved_theorems.to_string())),
        ("Non-Theorems", Box::new(|s| s.non_theorems.to_string())),
        ("Min Time", Box::new(|s| opt_u64(s.min_ms))),
        ("Avg Time", Box::new(|s| opt_avg(s.avg_ms))),
        ("Max Time", Box::new(|s| opt_u64(s.max_ms))),
    ];
    for (label, cell) in rows {
        out.push_str(label);
        for (_, s) in stats {
            out.push_str(&format!(" & {}", cell(s)));
        }
        out.push_str(" \\\\\\hline\n");
    }
    out.push_str("\\end{tabular}\n");
    out
}
