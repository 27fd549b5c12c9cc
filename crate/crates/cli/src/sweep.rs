//! Parallel sweeps with an ordered sink.
//!
//! Workers claim indices from a shared counter and send `(index, result)`
//! back; the sink buffers out-of-order results and writes strictly by index.
//! Output is therefore byte-identical for any worker count.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use tck_core::oracle::OracleConfig;
use tck_core::semigroup::{valid_triples, validate_up_to_scaling, CaseTag, Semigroup};

use crate::error::CliError;
use crate::report::{evaluate, Row, CSV_HEADER};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

/// One unit of work: the triple as written and its primitive semigroup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Job {
    pub input: [i64; 3],
    pub semigroup: Semigroup,
}

#[derive(Clone, Debug, Default)]
pub struct Filters {
    pub case: Option<CaseTag>,
    pub width_min: Option<i64>,
    pub width_max: Option<i64>,
}

impl Filters {
    pub fn accepts(&self, job: &Job) -> Result<bool, CliError> {
        let s = &job.semigroup;
        if self.width_min.is_some_and(|w| s.width < w) || self.width_max.is_some_and(|w| s.width > w) {
            return Ok(false);
        }
        match self.case {
            None => Ok(true),
            Some(tag) => Ok(tck_core::semigroup::compute_herzog_data(s)?.case_tag == tag),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Sorted lexicographically by input triple, no duplicates.
    pub jobs: Vec<Job>,
    pub oracle: Option<OracleConfig>,
    pub workers: usize,
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SweepSummary {
    pub rows: usize,
    pub failed: usize,
}

pub fn range_jobs(n3_max: i64) -> Vec<Job> {
    let mut jobs: Vec<Job> = valid_triples(n3_max)
        .into_iter()
        .map(|s| Job {
            input: s.generators(),
            semigroup: s,
        })
        .collect();
    jobs.sort_by_key(|j| j.input);
    jobs
}

/// Parses a triple list: three integers per line separated by whitespace or
/// commas; `#` starts a comment. Non-primitive triples are divided out.
pub fn parse_triples(text: &str, path: &str) -> Result<Vec<Job>, CliError> {
    let mut jobs = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CliError::TripleFile {
            path: path.to_string(),
            line: k + 1,
            message,
        };
        let nums: Vec<i64> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|e| err(format!("{t:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let [n1, n2, n3] = nums[..] else {
            return Err(err(format!("expected 3 integers, found {}", nums.len())));
        };
        let (semigroup, _) = validate_up_to_scaling(n1, n2, n3).map_err(|e| err(e.to_string()))?;
        jobs.push(Job {
            input: [n1, n2, n3],
            semigroup,
        });
    }
    jobs.sort_by_key(|j| j.input);
    jobs.dedup_by_key(|j| j.input);
    Ok(jobs)
}

pub fn read_triples(path: &str) -> Result<Vec<Job>, CliError> {
    parse_triples(&fs::read_to_string(path)?, path)
}

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

fn header(out: &mut impl Write, format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{CSV_HEADER}"),
        Format::Jsonl => Ok(()),
    }
}

fn row(out: &mut impl Write, format: Format, r: &Row) -> std::io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{}", r.to_csv()),
        Format::Jsonl => writeln!(out, "{}", r.to_jsonl()),
    }
}

fn status(out: &mut impl Write, format: Format, job: &Job, e: &CliError) -> std::io::Result<()> {
    let [n1, n2, n3] = job.input;
    match format {
        Format::Csv => writeln!(out, "# status: aborted at {n1},{n2},{n3}: {e}"),
        Format::Jsonl => writeln!(
            out,
            "{}",
            serde_json::json!({"status": "aborted", "triple": job.input, "message": e.to_string()})
        ),
    }
}

/// Runs the sweep and writes every row in job order. On the first error the
/// rows before it are written, followed by a status record, and the error is
/// returned.
pub fn run_sweep(spec: &SweepSpec, out: &mut impl Write) -> Result<SweepSummary, CliError> {
    header(out, spec.format)?;
    let next = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Result<Row, CliError>)>();
    let workers = spec.workers.clamp(1, spec.jobs.len().max(1));

    thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, abort) = (&next, &abort);
            scope.spawn(move || {
                while !abort.load(Ordering::Relaxed) {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(job) = spec.jobs.get(i) else { break };
                    let result = evaluate(job.input, &job.semigroup, spec.oracle.as_ref());
                    if tx.send((i, result)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut summary = SweepSummary::default();
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&summary.rows) {
                match result {
                    Ok(r) => {
                        row(out, spec.format, &r)?;
                        summary.rows += 1;
                        summary.failed += usize::from(!r.passed());
                    }
                    Err(e) => {
                        abort.store(true, Ordering::Relaxed);
                        status(out, spec.format, &spec.jobs[summary.rows], &e)?;
                        out.flush()?;
                        return Err(e);
                    }
                }
            }
        }
        out.flush()?;
        Ok(summary)
    })
}
