//! Batch runs over generated suites and the CSV files they emit.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use super::aocc::{aocc, RunTrace};
use super::optimizers::{run_optimizer, Algorithm, Budget};
use super::sweep::SweepCell;
use crate::error::Result;
use crate::seeding::derive_seed;
use crate::suite::{write_atomic, SuiteDefinition};

pub const TRACE_HEADER: &str = "evaluation,raw_y,best_so_far";
pub const SWEEP_HEADER: &str = "alpha,instance,mean_aocc";
pub const RESULTS_HEADER: &str = "problem_id,run,seed,aocc";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRecord {
    pub problem_id: usize,
    pub run: usize,
    pub seed: u64,
    pub aocc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResults {
    pub algorithm: Algorithm,
    pub budget: Budget,
    /// Problem-major, run-minor.
    pub records: Vec<RunRecord>,
    /// `(problem_id, mean AOCC)`
    pub means: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct SuiteRunConfig {
    pub algorithm: Algorithm,
    pub budget_multiplier: usize,
    pub runs: usize,
    pub seed: u64,
}

pub fn run_seed(seed: u64, problem_id: usize, run: usize) -> u64 {
    derive_seed(&[seed, problem_id as u64, run as u64])
}

/// Runs every problem of `suite` `runs` times. When `trace_dir` is given,
/// each run's trace is written to `p{problem}_r{run}.csv` inside it.
pub fn run_suite(suite: &SuiteDefinition, config: &SuiteRunConfig, trace_dir: Option<&Path>) -> Result<SuiteResults> {
    let budget = Budget::scaled(config.budget_multiplier, suite.dim)?;
    if let Some(dir) = trace_dir {
        fs::create_dir_all(dir)?;
    }
    let problems = suite.build_problems()?;
    let jobs: Vec<(usize, usize)> = (0..problems.len())
        .flat_map(|p| (0..config.runs).map(move |r| (p, r)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(p, run)| {
            let problem_id = suite.problems[p].problem_id;
            let seed = run_seed(config.seed, problem_id, run);
            let mut trace = run_optimizer(config.algorithm, &problems[p], budget, seed)?;
            trace.problem_id = Some(problem_id);
            if let Some(dir) = trace_dir {
                let mut buf = Vec::new();
                write_trace_csv(&trace, &mut buf)?;
                write_atomic(&dir.join(format!("p{problem_id}_r{run}.csv")), &buf)?;
            }
            Ok(RunRecord {
                problem_id,
                run,
                seed,
                aocc: aocc(&trace)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let means = records
        .chunks(config.runs.max(1))
        .filter(|c| !c.is_empty())
        .map(|c| (c[0].problem_id, c.iter().map(|r| r.aocc).sum::<f64>() / c.len() as f64))
        .collect();
    Ok(SuiteResults {
        algorithm: config.algorithm,
        budget,
        records,
        means,
    })
}

/// Per-run rows followed by one `mean` row per problem.
pub fn write_results_csv<W: Write>(results: &SuiteResults, mut w: W) -> Result<()> {
    writeln!(w, "{RESULTS_HEADER}")?;
    for r in &results.records {
        writeln!(w, "{},{},{},{}", r.problem_id, r.run, r.seed, r.aocc)?;
    }
    for (p, m) in &results.means {
        writeln!(w, "{p},mean,,{m}")?;
    }
    Ok(())
}

pub fn write_trace_csv<W: Write>(trace: &RunTrace, mut w: W) -> Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for (i, (y, b)) in trace.raw.iter().zip(&trace.best_so_far).enumerate() {
        writeln!(w, "{},{:e},{:e}", i + 1, y, b)?;
    }
    Ok(())
}

pub fn write_sweep_csv<W: Write>(cells: &[SweepCell], mut w: W) -> Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for c in cells {
        writeln!(w, "{},{},{}", c.alpha, c.instance, c.mean_aocc)?;
    }
    Ok(())
}
