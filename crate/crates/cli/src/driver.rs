//! Runs the verification drivers across worker threads.
//!
//! Every driver in the core crate accepts a case index range and produces
//! reports that merge positionally, so a run splits into contiguous chunks,
//! one per worker, and the merged result is identical to a sequential pass.
//! Wall-clock time is measured here and stamped onto the merged reports.

use std::thread;
use std::time::{Duration, Instant};

use outward_core::oracle::{
    extrema_case_count, exhaustive_extrema_check_range, exhaustive_pair_check_range,
    merge_reports, negative_control_check_range, pair_case_count, random_pair_check_range,
    CheckReport, Property,
};
use outward_core::{ArithOp, FpFormat};

/// Which case stream to run.
#[derive(Clone, Copy, Debug)]
pub enum VerifyMode {
    /// Every pair of valid intervals of the format, plus every value tuple
    /// when the extremum lemmas are requested.
    Exhaustive,
    /// `count` deterministic pseudorandom binary64 pairs per operator.
    Random { count: u64, seed: u64 },
    /// The widening multiplication variant against the endpoint-pairing
    /// baseline; this run is expected to find violations.
    NegativeControl,
}

/// A complete verification request.
#[derive(Clone, Debug)]
pub struct VerifyJob {
    pub format: FpFormat,
    pub ops: Vec<ArithOp>,
    pub props: Vec<Property>,
    pub mode: VerifyMode,
    pub jobs: usize,
}

/// Splits `0..total` into at most `jobs` contiguous nonempty ranges.
fn split_ranges(total: u64, jobs: usize) -> Vec<(u64, u64)> {
    let jobs = jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs).max(1);
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        ranges.push((start, end));
        start = end;
    }
    ranges
}

/// Runs `worker` over the split of `0..total` and merges the partial
/// reports in range order.
fn run_split<W>(total: u64, jobs: usize, worker: W) -> Vec<CheckReport>
where
    W: Fn(u64, u64) -> Vec<CheckReport> + Sync,
{
    let ranges = split_ranges(total, jobs);
    let worker = &worker;
    let parts = thread::scope(|s| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(start, end)| s.spawn(move || worker(start, end)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification worker panicked"))
            .collect::<Vec<_>>()
    });
    merge_reports(parts)
}

fn stamp(reports: &mut [CheckReport], elapsed: Duration) {
    for r in reports.iter_mut() {
        r.elapsed = elapsed;
    }
}

/// Runs a verification job and returns one report per operator/property
/// combination, in operator order. Configuration problems (a format too
/// large to enumerate, a random run over a non-binary64 format) come back
/// as an error message.
pub fn run(job: &VerifyJob) -> Result<Vec<CheckReport>, String> {
    match job.mode {
        VerifyMode::Exhaustive => run_exhaustive(job),
        VerifyMode::Random { count, seed } => run_random(job, count, seed),
        VerifyMode::NegativeControl => run_negative_control(job),
    }
}

fn run_exhaustive(job: &VerifyJob) -> Result<Vec<CheckReport>, String> {
    let fmt = job.format;
    let pair_props: Vec<Property> =
        job.props.iter().copied().filter(|p| Property::PAIR.contains(p)).collect();
    let mut out = Vec::new();
    if !pair_props.is_empty() {
        let total = pair_case_count(fmt).map_err(|e| e.to_string())?;
        for &op in &job.ops {
            let t0 = Instant::now();
            let mut reports = run_split(total, job.jobs, |start, end| {
                exhaustive_pair_check_range(fmt, op, &pair_props, start, end)
                    .expect("enumeration already sized")
            });
            stamp(&mut reports, t0.elapsed());
            out.extend(reports);
        }
    }
    if job.props.contains(&Property::ExtremaLemmas) {
        let total = extrema_case_count(fmt).map_err(|e| e.to_string())?;
        let t0 = Instant::now();
        let mut reports = run_split(total, job.jobs, |start, end| {
            vec![exhaustive_extrema_check_range(fmt, start, end)
                .expect("enumeration already sized")]
        });
        stamp(&mut reports, t0.elapsed());
        out.extend(reports);
    }
    Ok(out)
}

fn run_random(job: &VerifyJob, count: u64, seed: u64) -> Result<Vec<CheckReport>, String> {
    if !job.format.is_binary64() {
        return Err(String::from(
            "random verification draws 64-bit operands; use --format binary64",
        ));
    }
    let pair_props: Vec<Property> =
        job.props.iter().copied().filter(|p| Property::PAIR.contains(p)).collect();
    if pair_props.is_empty() {
        return Err(String::from("no pair-driven properties selected"));
    }
    let mut out = Vec::new();
    for &op in &job.ops {
        let t0 = Instant::now();
        let mut reports = run_split(count, job.jobs, |start, end| {
            random_pair_check_range(op, &pair_props, seed, start, end)
        });
        stamp(&mut reports, t0.elapsed());
        out.extend(reports);
    }
    Ok(out)
}

fn run_negative_control(job: &VerifyJob) -> Result<Vec<CheckReport>, String> {
    let fmt = job.format;
    let total = pair_case_count(fmt).map_err(|e| e.to_string())?;
    let t0 = Instant::now();
    let mut reports = run_split(total, job.jobs, |start, end| {
        vec![negative_control_check_range(fmt, start, end).expect("enumeration already sized")]
    });
    stamp(&mut reports, t0.elapsed());
    Ok(reports)
}
