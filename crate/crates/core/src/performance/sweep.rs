//! Alpha sweeps over pairwise combinations.

use rand::Rng;
use rayon::prelude::*;

use super::aocc::{aocc, RunTrace};
use super::optimizers::{run_optimizer, Algorithm, Budget};
use crate::affine::PairwiseProblem;
use crate::bbob::{ComponentProblem, FunctionId, InstanceId};
use crate::error::{Error, Result};
use crate::seeding::{derive_seed, rng_from};

/// Stream tag for the per-instance optimum location.
const XOPT_STREAM: u64 = 0x786f_7074;

/// `steps` evenly spaced values from 0 to 1 inclusive.
pub fn alpha_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidArgument("alpha_steps must be >= 2".into()));
    }
    Ok((0..steps).map(|i| i as f64 / (steps - 1) as f64).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Component weighted by `alpha`.
    pub f1: FunctionId,
    /// Component weighted by `1 - alpha`; always instance 1.
    pub f2: FunctionId,
    pub alphas: Vec<f64>,
    pub dim: usize,
    pub runs: usize,
    /// Instances `1..=instances` of `f1`, each with its own optimum location.
    pub instances: u32,
    pub budget: Budget,
    pub algorithm: Algorithm,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub alpha: f64,
    pub instance: u32,
    pub mean_aocc: f64,
}

/// Uniform optimum location shared by every alpha of one instance.
pub fn sweep_optimum(seed: u64, instance: u32, dim: usize) -> Vec<f64> {
    let mut rng = rng_from(&[seed, XOPT_STREAM, u64::from(instance)]);
    (0..dim).map(|_| rng.random_range(-5.0..=5.0)).collect()
}

/// Seed of run `run` on instance `instance`; independent of alpha.
pub fn sweep_run_seed(seed: u64, instance: u32, run: usize) -> u64 {
    derive_seed(&[seed, u64::from(instance), run as u64])
}

/// Mean AOCC for every (alpha, instance) pair, alpha-major.
pub fn alpha_sweep(config: &SweepConfig) -> Result<Vec<SweepCell>> {
    if let Some(&a) = config.alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::InvalidAlpha(a));
    }
    if config.runs == 0 || config.instances == 0 {
        return Err(Error::InvalidArgument("runs and instances must be >= 1".into()));
    }
    let second = ComponentProblem::new(config.f2, InstanceId::new(1)?, config.dim)?;
    let firsts = (1..=config.instances)
        .map(|k| ComponentProblem::new(config.f1, InstanceId::new(k)?, config.dim))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(f64, u32)> = config
        .alphas
        .iter()
        .flat_map(|&a| (1..=config.instances).map(move |k| (a, k)))
        .collect();
    jobs.par_iter()
        .map(|&(alpha, instance)| {
            let x_opt = sweep_optimum(config.seed, instance, config.dim);
            let problem = PairwiseProblem::new(firsts[instance as usize - 1].clone(), second.clone(), alpha)?
                .with_optimum_at(&x_opt)?;
            let mut total = 0.0;
            for run in 0..config.runs {
                let seed = sweep_run_seed(config.seed, instance, run);
                total += aocc(&run_optimizer(config.algorithm, &problem, config.budget, seed)?)?;
            }
            Ok(SweepCell {
                alpha,
                instance,
                mean_aocc: total / config.runs as f64,
            })
        })
        .collect()
}

/// Averages sweep cells over instances, one value per distinct alpha in
/// first-seen order.
pub fn mean_by_alpha(cells: &[SweepCell]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64, usize)> = Vec::new();
    for c in cells {
        match out.iter_mut().find(|(a, _, _)| *a == c.alpha) {
            Some(entry) => {
                entry.1 += c.mean_aocc;
                entry.2 += 1;
            }
            None => out.push((c.alpha, c.mean_aocc, 1)),
        }
    }
    out.into_iter().map(|(a, s, n)| (a, s / n as f64)).collect()
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument(
            "spearman needs two equally long samples of length >= 2".into(),
        ));
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::InvalidArgument(
            "spearman is undefined for a constant sample".into(),
        ));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Runs used by [`alpha_sweep`] for one cell, exposed for inspection.
pub fn sweep_cell_traces(config: &SweepConfig, alpha: f64, instance: u32) -> Result<Vec<RunTrace>> {
    let x_opt = sweep_optimum(config.seed, instance, config.dim);
    let problem = PairwiseProblem::new(
        ComponentProblem::new(config.f1, InstanceId::new(instance)?, config.dim)?,
        ComponentProblem::new(config.f2, InstanceId::new(1)?, config.dim)?,
        alpha,
    )?
    .with_optimum_at(&x_opt)?;
    (0..config.runs)
        .map(|run| {
            run_optimizer(
                config.algorithm,
                &problem,
                config.budget,
                sweep_run_seed(config.seed, instance, run),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::RelocatedComponent;
    use crate::performance::aocc::mean_aocc;

    fn small_config(alphas: Vec<f64>) -> SweepConfig {
        SweepConfig {
            f1: FunctionId::new(21).unwrap(),
            f2: FunctionId::new(1).unwrap(),
            alphas,
            dim: 2,
            runs: 4,
            instances: 3,
            budget: Budget::new(400).unwrap(),
            algorithm: Algorithm::OnePlusOneEs,
            seed: 17,
        }
    }

    #[test]
    fn grid_values() {
        let g = alpha_grid(21).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1], 0.05);
        assert_eq!(g[20], 1.0);
        assert!(alpha_grid(1).is_err());
    }

    #[test]
    fn spearman_basics() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]).unwrap(), 1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), -1.0);
        assert_eq!(average_ranks(&[5.0, 1.0, 5.0]), vec![2.5, 1.0, 2.5]);
        assert!(spearman(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn grid_shape_and_determinism() {
        let cfg = small_config(alpha_grid(3).unwrap());
        let a = alpha_sweep(&cfg).unwrap();
        assert_eq!(a.len(), 9);
        assert_eq!(a, alpha_sweep(&cfg).unwrap());
        assert!(a.iter().all(|c| (0.0..=1.0).contains(&c.mean_aocc)));
        assert_eq!(mean_by_alpha(&a).len(), 3);
    }

    #[test]
    fn endpoints_match_pure_components() {
        let cfg = small_config(vec![0.0, 1.0]);
        let cells = alpha_sweep(&cfg).unwrap();
        for cell in cells {
            let x_opt = sweep_optimum(cfg.seed, cell.instance, cfg.dim);
            let component = if cell.alpha == 1.0 {
                ComponentProblem::new(cfg.f1, InstanceId::new(cell.instance).unwrap(), 2).unwrap()
            } else {
                ComponentProblem::new(cfg.f2, InstanceId::new(1).unwrap(), 2).unwrap()
            };
            let pure = RelocatedComponent::new(component, &x_opt).unwrap();
            let traces: Vec<RunTrace> = (0..cfg.runs)
                .map(|r| {
                    run_optimizer(
                        cfg.algorithm,
                        &pure,
                        cfg.budget,
                        sweep_run_seed(cfg.seed, cell.instance, r),
                    )
                    .unwrap()
                })
                .collect();
            let expected = traces.iter().map(|t| aocc(t).unwrap()).sum::<f64>() / cfg.runs as f64;
            assert_eq!(cell.mean_aocc, expected);
            let cell_traces = sweep_cell_traces(&cfg, cell.alpha, cell.instance).unwrap();
            assert_eq!(cell_traces, traces);
            assert!((mean_aocc(&traces).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_alpha() {
        assert!(matches!(
            alpha_sweep(&small_config(vec![1.2])),
            Err(Error::InvalidAlpha(_))
        ));
    }
}
