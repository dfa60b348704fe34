//! Baseline optimizers: uniform random search, a (1+1)-ES with the
//! one-fifth success rule, and DE/rand/1/bin.
//!
//! Every candidate is clamped to `[-5, 5]^d` before evaluation and every
//! evaluation is recorded, so a trace always has exactly `budget` entries.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::aocc::RunTrace;
use crate::error::{Error, Result};
use crate::objective::Objective;

const LOWER: f64 = -5.0;
const UPPER: f64 = 5.0;

pub const ES_INITIAL_STEP: f64 = 2.0;
pub const ES_STEP_FACTOR: f64 = 1.5;
pub const ES_WINDOW: usize = 10;
pub const DE_POP_PER_DIM: usize = 10;
pub const DE_F: f64 = 0.5;
pub const DE_CR: f64 = 0.9;

/// Number of objective evaluations allotted to one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(usize);

impl Budget {
    pub fn new(evaluations: usize) -> Result<Self> {
        if evaluations == 0 {
            return Err(Error::InvalidArgument("budget must be >= 1".into()));
        }
        Ok(Budget(evaluations))
    }

    /// `multiplier * dim` evaluations.
    pub fn scaled(multiplier: usize, dim: usize) -> Result<Self> {
        Self::new(multiplier * dim)
    }

    /// The default `2000 * dim`.
    pub fn for_dim(dim: usize) -> Result<Self> {
        Self::scaled(2000, dim)
    }

    pub fn evaluations(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    RandomSearch,
    OnePlusOneEs,
    BasicDe,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::RandomSearch, Algorithm::OnePlusOneEs, Algorithm::BasicDe];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RandomSearch => "random-search",
            Algorithm::OnePlusOneEs => "one-plus-one-es",
            Algorithm::BasicDe => "basic-de",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "random-search" | "random" | "rs" => Ok(Algorithm::RandomSearch),
            "one-plus-one-es" | "1+1-es" | "es" => Ok(Algorithm::OnePlusOneEs),
            "basic-de" | "de" => Ok(Algorithm::BasicDe),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// Counts evaluations and records the trace.
struct Evaluator<'a, P: Objective + ?Sized> {
    problem: &'a P,
    budget: usize,
    raw: Vec<f64>,
}

impl<'a, P: Objective + ?Sized> Evaluator<'a, P> {
    fn new(problem: &'a P, budget: Budget) -> Self {
        Evaluator {
            problem,
            budget: budget.evaluations(),
            raw: Vec::with_capacity(budget.evaluations()),
        }
    }

    fn exhausted(&self) -> bool {
        self.raw.len() >= self.budget
    }

    /// Clamps `x` into the box in place and evaluates it.
    fn eval(&mut self, x: &mut [f64]) -> Result<f64> {
        debug_assert!(!self.exhausted());
        for v in x.iter_mut() {
            *v = v.clamp(LOWER, UPPER);
        }
        let y = self.problem.evaluate(x)?;
        self.raw.push(y);
        Ok(y)
    }

    fn into_trace(self, seed: u64) -> RunTrace {
        RunTrace::from_raw(self.raw, seed)
    }
}

fn uniform_point<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(LOWER..=UPPER)).collect()
}

fn random_search<P: Objective + ?Sized, R: Rng + ?Sized>(ev: &mut Evaluator<'_, P>, rng: &mut R) -> Result<()> {
    let dim = ev.problem.dim();
    while !ev.exhausted() {
        let mut x = uniform_point(rng, dim);
        ev.eval(&mut x)?;
    }
    Ok(())
}

fn one_plus_one_es<P: Objective + ?Sized, R: Rng + ?Sized>(ev: &mut Evaluator<'_, P>, rng: &mut R) -> Result<()> {
    let dim = ev.problem.dim();
    let mut parent = uniform_point(rng, dim);
    let mut parent_y = ev.eval(&mut parent)?;
    let mut sigma = ES_INITIAL_STEP;
    let (mut successes, mut trials) = (0usize, 0usize);
    let mut child = vec![0.0; dim];
    while !ev.exhausted() {
        for (c, p) in child.iter_mut().zip(&parent) {
            *c = p + sigma * rng.sample::<f64, _>(StandardNormal);
        }
        let y = ev.eval(&mut child)?;
        trials += 1;
        if y < parent_y {
            successes += 1;
        }
        if y <= parent_y {
            parent.copy_from_slice(&child);
            parent_y = y;
        }
        if trials == ES_WINDOW {
            // one-fifth rule: 2 successes out of 10 keeps the step
            match (5 * successes).cmp(&trials) {
                std::cmp::Ordering::Greater => sigma *= ES_STEP_FACTOR,
                std::cmp::Ordering::Less => sigma /= ES_STEP_FACTOR,
                std::cmp::Ordering::Equal => {}
            }
            successes = 0;
            trials = 0;
        }
    }
    Ok(())
}

fn distinct_indices<R: Rng + ?Sized>(rng: &mut R, n: usize, exclude: usize) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let c = rng.random_range(0..n);
        if c != exclude && !picked[..k].contains(&c) {
            picked[k] = c;
            k += 1;
        }
    }
    picked
}

fn basic_de<P: Objective + ?Sized, R: Rng + ?Sized>(ev: &mut Evaluator<'_, P>, rng: &mut R) -> Result<()> {
    let dim = ev.problem.dim();
    let np = (DE_POP_PER_DIM * dim).max(4);
    let mut pop = Vec::with_capacity(np);
    let mut fit = Vec::with_capacity(np);
    for _ in 0..np {
        if ev.exhausted() {
            return Ok(());
        }
        let mut x = uniform_point(rng, dim);
        fit.push(ev.eval(&mut x)?);
        pop.push(x);
    }
    let mut next = pop.clone();
    while !ev.exhausted() {
        for i in 0..np {
            if ev.exhausted() {
                break;
            }
            let [r1, r2, r3] = distinct_indices(rng, np, i);
            let forced = rng.random_range(0..dim);
            let mut trial: Vec<f64> = (0..dim)
                .map(|j| {
                    if j == forced || rng.random::<f64>() < DE_CR {
                        pop[r1][j] + DE_F * (pop[r2][j] - pop[r3][j])
                    } else {
                        pop[i][j]
                    }
                })
                .collect();
            let y = ev.eval(&mut trial)?;
            if y <= fit[i] {
                fit[i] = y;
                next[i] = trial;
            }
        }
        pop.clone_from(&next);
    }
    Ok(())
}

/// Runs `algo` on `problem` for exactly `budget` evaluations.
pub fn run_optimizer<P: Objective + ?Sized>(
    algo: Algorithm,
    problem: &P,
    budget: Budget,
    seed: u64,
) -> Result<RunTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ev = Evaluator::new(problem, budget);
    match algo {
        Algorithm::RandomSearch => random_search(&mut ev, &mut rng)?,
        Algorithm::OnePlusOneEs => one_plus_one_es(&mut ev, &mut rng)?,
        Algorithm::BasicDe => basic_de(&mut ev, &mut rng)?,
    }
    Ok(ev.into_trace(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{ManyAffineProblem, WeightVector};
    use crate::bbob::{FunctionId, InstanceId, NUM_FUNCTIONS};
    use crate::calibration::ScaleTable;
    use crate::performance::aocc::mean_aocc;
    use std::sync::Mutex;

    /// Records every queried point.
    struct Spy {
        dim: usize,
        seen: Mutex<Vec<Vec<f64>>>,
    }

    impl Objective for Spy {
        fn dim(&self) -> usize {
            self.dim
        }
        fn evaluate(&self, x: &[f64]) -> Result<f64> {
            self.seen.lock().unwrap().push(x.to_vec());
            Ok(x.iter().map(|v| v * v).sum::<f64>() + 1.0)
        }
    }

    fn sphere_problem(dim: usize) -> ManyAffineProblem {
        let w = WeightVector::single(FunctionId::new(1).unwrap());
        let inst = [InstanceId::new(1).unwrap(); NUM_FUNCTIONS];
        ManyAffineProblem::new(&w, &inst, &vec![1.0; dim], dim, &ScaleTable::paper()).unwrap()
    }

    #[test]
    fn parse_algorithms() {
        assert_eq!("es".parse::<Algorithm>().unwrap(), Algorithm::OnePlusOneEs);
        assert_eq!("random_search".parse::<Algorithm>().unwrap(), Algorithm::RandomSearch);
        assert_eq!("DE".parse::<Algorithm>().unwrap(), Algorithm::BasicDe);
        assert_eq!(
            "cma-es".parse::<Algorithm>(),
            Err(Error::UnknownAlgorithm("cma-es".into()))
        );
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
    }

    #[test]
    fn budget_rules() {
        assert!(Budget::new(0).is_err());
        assert_eq!(Budget::for_dim(5).unwrap().evaluations(), 10_000);
    }

    #[test]
    fn single_evaluation_random_search() {
        let p = sphere_problem(2);
        let t = run_optimizer(Algorithm::RandomSearch, &p, Budget::new(1).unwrap(), 3).unwrap();
        assert_eq!(t.raw.len(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = uniform_point(&mut rng, 2);
        assert_eq!(t.best_so_far[0], p.evaluate(&x).unwrap());
    }

    #[test]
    fn exact_budget_inside_box_and_deterministic() {
        for algo in Algorithm::ALL {
            for budget in [1, 2, 7, 33, 500] {
                let spy = Spy {
                    dim: 3,
                    seen: Mutex::new(Vec::new()),
                };
                let t = run_optimizer(algo, &spy, Budget::new(budget).unwrap(), 11).unwrap();
                assert_eq!(t.raw.len(), budget, "{algo}");
                {
                    let seen = spy.seen.lock().unwrap();
                    assert_eq!(seen.len(), budget);
                    assert!(seen.iter().flatten().all(|v| (-5.0..=5.0).contains(v)));
                }
                assert!(t.best_so_far.windows(2).all(|w| w[1] <= w[0]));
                let again = run_optimizer(algo, &spy, Budget::new(budget).unwrap(), 11).unwrap();
                assert_eq!(t, again);
            }
        }
    }

    #[test]
    fn traces_respect_the_floor() {
        let p = sphere_problem(2);
        for algo in Algorithm::ALL {
            let t = run_optimizer(algo, &p, Budget::new(2000).unwrap(), 1).unwrap();
            assert!(t.best_so_far.iter().all(|y| *y >= 1e-8));
        }
    }

    #[test]
    fn es_beats_random_search_on_sphere() {
        let p = sphere_problem(2);
        let budget = Budget::new(4000).unwrap();
        let runs = |algo| -> Vec<RunTrace> { (0..50).map(|s| run_optimizer(algo, &p, budget, s).unwrap()).collect() };
        let es = mean_aocc(&runs(Algorithm::OnePlusOneEs)).unwrap();
        let rs = mean_aocc(&runs(Algorithm::RandomSearch)).unwrap();
        assert!(es > rs, "es {es} vs rs {rs}");
        let de = mean_aocc(&runs(Algorithm::BasicDe)).unwrap();
        assert!(de > rs, "de {de} vs rs {rs}");
    }
}
