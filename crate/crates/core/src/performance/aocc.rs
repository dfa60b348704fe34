use crate::error::{Error, Result};

const LOG_LOWER: f64 = -8.0;
const LOG_UPPER: f64 = 2.0;

/// Best-so-far record of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    /// Objective value of every evaluation, in order.
    pub raw: Vec<f64>,
    /// Running minimum of `raw`.
    pub best_so_far: Vec<f64>,
    pub seed: u64,
    pub problem_id: Option<usize>,
}

impl RunTrace {
    /// Builds a trace from raw evaluations, computing the running minimum.
    pub fn from_raw(raw: Vec<f64>, seed: u64) -> Self {
        let best_so_far = raw
            .iter()
            .scan(f64::INFINITY, |best, &y| {
                *best = best.min(y);
                Some(*best)
            })
            .collect();
        RunTrace {
            raw,
            best_so_far,
            seed,
            problem_id: None,
        }
    }

    pub fn budget(&self) -> usize {
        self.best_so_far.len()
    }

    pub fn final_best(&self) -> Option<f64> {
        self.best_so_far.last().copied()
    }
}

/// Contribution of one best-so-far value: `1 - (clamp(log10 y, -8, 2) + 8) / 10`.
#[inline]
pub fn aocc_step(y: f64) -> f64 {
    1.0 - (y.log10().clamp(LOG_LOWER, LOG_UPPER) - LOG_LOWER) / (LOG_UPPER - LOG_LOWER)
}

/// Normalized area over the convergence curve of a sequence of
/// best-so-far values. Higher is better; always in `[0, 1]`.
pub fn aocc_of(best_so_far: &[f64]) -> Result<f64> {
    if best_so_far.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut acc = 0.0;
    for (index, &value) in best_so_far.iter().enumerate() {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::NonPositiveValue { index, value });
        }
        acc += aocc_step(value);
    }
    Ok(acc / best_so_far.len() as f64)
}

pub fn aocc(trace: &RunTrace) -> Result<f64> {
    aocc_of(&trace.best_so_far)
}

/// Average AOCC over runs that share one budget.
pub fn mean_aocc(traces: &[RunTrace]) -> Result<f64> {
    let first = traces.first().ok_or(Error::EmptyTrace)?;
    let mut acc = 0.0;
    for t in traces {
        if t.budget() != first.budget() {
            return Err(Error::MixedBudgets(first.budget(), t.budget()));
        }
        acc += aocc(t)?;
    }
    Ok(acc / traces.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trace(values: &[f64]) -> RunTrace {
        RunTrace::from_raw(values.to_vec(), 0)
    }

    #[test]
    fn unit_values() {
        assert_eq!(aocc(&trace(&[1e-8; 5])).unwrap(), 1.0);
        assert_eq!(aocc(&trace(&[1e2, 5e3, 1e300])).unwrap(), 0.0);
        assert_eq!(aocc(&trace(&[1e-3])).unwrap(), 0.5);
    }

    #[test]
    fn errors() {
        assert_eq!(aocc_of(&[]), Err(Error::EmptyTrace));
        assert_eq!(
            aocc_of(&[1.0, 0.0]),
            Err(Error::NonPositiveValue { index: 1, value: 0.0 })
        );
        assert!(aocc_of(&[f64::NAN]).is_err());
        assert_eq!(mean_aocc(&[]), Err(Error::EmptyTrace));
        assert_eq!(
            mean_aocc(&[trace(&[1.0]), trace(&[1.0, 1.0])]),
            Err(Error::MixedBudgets(1, 2))
        );
    }

    #[test]
    fn mean_over_runs() {
        let good = trace(&[1e-8, 1e-9]);
        let bad = trace(&[1e3, 1e2]);
        assert_eq!(mean_aocc(&[good.clone(), bad]).unwrap(), 0.5);
        let one = trace(&[3.0, 0.02, 1e-4]);
        let a = aocc(&one).unwrap();
        assert!((mean_aocc(&vec![one; 7]).unwrap() - a).abs() < 1e-15);
    }

    #[test]
    fn running_minimum() {
        let t = trace(&[5.0, 7.0, 2.0, 3.0]);
        assert_eq!(t.best_so_far, vec![5.0, 5.0, 2.0, 2.0]);
        assert_eq!(t.final_best(), Some(2.0));
    }

    proptest! {
        #[test]
        fn bounded_and_saturating(ys in prop::collection::vec(1e-15f64..1e6, 1..50)) {
            let a = aocc_of(&ys).unwrap();
            prop_assert!((0.0..=1.0).contains(&a));
            let clamped: Vec<f64> = ys.iter().map(|y| y.clamp(1e-8, 1e2)).collect();
            prop_assert_eq!(a, aocc_of(&clamped).unwrap());
        }

        #[test]
        fn dominating_trace_scores_higher(
            ys in prop::collection::vec(1e-12f64..1e4, 1..50),
            factors in prop::collection::vec(0.0f64..1.0, 50),
        ) {
            let lower: Vec<f64> = ys.iter().zip(&factors).map(|(y, f)| (y * f).max(1e-300)).collect();
            prop_assert!(aocc_of(&lower).unwrap() >= aocc_of(&ys).unwrap());
        }
    }
}
