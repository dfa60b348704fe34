//! Affine combinations of BBOB components in log-precision space.
//!
//! Two constructions live here:
//!
//! * [`PairwiseProblem`]: the weighted geometric mean of two component
//!   precisions, with the second component shifted so that both optima
//!   coincide.
//! * [`ManyAffineProblem`]: every component's log-precision is floored at
//!   -8, shifted to start at 0, divided by its scale factor, blended with the
//!   weights and mapped back through `10^(10 y - 8)`. The optimum sits at a
//!   freely chosen `x_opt` where the value is exactly `1e-8`.

use std::cmp::Ordering;

use crate::bbob::{check_point, ComponentProblem, FunctionId, InstanceId, NUM_FUNCTIONS};
use crate::calibration::ScaleTable;
use crate::error::{Error, Result};
use crate::objective::Objective;

/// Lowest log10-precision distinguished by the generator.
pub const LOG_PRECISION_FLOOR: f64 = -8.0;
/// `10^LOG_PRECISION_FLOOR`, the value of every generated problem at its optimum.
pub const PRECISION_FLOOR: f64 = 1e-8;

const SUM_TOLERANCE: f64 = 1e-12;
const DOMAIN_BOUND: f64 = 5.0;

/// `max(log10(p), -8) + 8`; zero precision maps to 0.
#[inline]
pub fn shifted_log_precision(precision: f64) -> f64 {
    precision.log10().max(LOG_PRECISION_FLOOR) - LOG_PRECISION_FLOOR
}

/// Rescales a raw precision: `(max(log10(p), -8) + 8) / s`.
pub fn rescale_component(precision: f64, scale: f64) -> Result<f64> {
    if precision.is_nan() || precision < 0.0 {
        return Err(Error::NegativePrecision(precision));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidScaleFactor(scale));
    }
    Ok(shifted_log_precision(precision) / scale)
}

/// Inverse rescaling `10^(10 y - 8)`.
#[inline]
pub fn inverse_rescale(y: f64) -> f64 {
    10f64.powf(10.0 * y + LOG_PRECISION_FLOOR)
}

fn check_box(x_opt: &[f64], dim: usize) -> Result<()> {
    check_point(x_opt, dim)?;
    match x_opt.iter().position(|v| v.abs() > DOMAIN_BOUND) {
        Some(index) => Err(Error::OptimumOutOfDomain {
            index,
            value: x_opt[index],
        }),
        None => Ok(()),
    }
}

/// 24 non-negative weights summing to one, indexed by function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightVector([f64; NUM_FUNCTIONS]);

impl WeightVector {
    /// Validates finiteness, non-negativity, unit sum (within 1e-12) and at
    /// least one positive entry.
    pub fn new(weights: [f64; NUM_FUNCTIONS]) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weights[{i}] = {} is negative or not finite",
                weights[i]
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, expected 1")));
        }
        Ok(WeightVector(weights))
    }

    pub fn from_slice(weights: &[f64]) -> Result<Self> {
        let arr: [f64; NUM_FUNCTIONS] = weights
            .try_into()
            .map_err(|_| Error::InvalidWeights(format!("expected {NUM_FUNCTIONS} weights, got {}", weights.len())))?;
        Self::new(arr)
    }

    /// All mass on one function.
    pub fn single(fid: FunctionId) -> Self {
        let mut w = [0.0; NUM_FUNCTIONS];
        w[fid.index()] = 1.0;
        WeightVector(w)
    }

    pub fn as_array(&self) -> &[f64; NUM_FUNCTIONS] {
        &self.0
    }

    pub fn get(&self, fid: FunctionId) -> f64 {
        self.0[fid.index()]
    }

    pub fn positive_count(&self) -> usize {
        self.0.iter().filter(|w| **w > 0.0).count()
    }
}

/// One summand of a many-affine problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub fid: FunctionId,
    pub iid: InstanceId,
    pub weight: f64,
}

#[derive(Debug, Clone)]
struct ActiveTerm {
    weight: f64,
    scale: f64,
    component: ComponentProblem,
}

/// A generated MA-BBOB problem.
#[derive(Debug, Clone)]
pub struct ManyAffineProblem {
    dim: usize,
    x_opt: Vec<f64>,
    terms: Vec<Term>,
    scale_table: ScaleTable,
    active: Vec<ActiveTerm>,
}

impl ManyAffineProblem {
    /// Builds a problem from per-function weights and instances. Components
    /// with zero weight are never instantiated.
    pub fn new(
        weights: &WeightVector,
        instances: &[InstanceId; NUM_FUNCTIONS],
        x_opt: &[f64],
        dim: usize,
        scale_table: &ScaleTable,
    ) -> Result<Self> {
        let terms = FunctionId::all()
            .map(|fid| Term {
                fid,
                iid: instances[fid.index()],
                weight: weights.get(fid),
            })
            .collect();
        Self::from_terms(terms, x_opt, dim, scale_table)
    }

    /// Builds a problem from an arbitrary list of terms. The list may be in
    /// any order and may repeat a function; the summation order is fixed by
    /// sorting, which makes evaluation bit-identical under permutations.
    pub fn from_terms(mut terms: Vec<Term>, x_opt: &[f64], dim: usize, scale_table: &ScaleTable) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        if let Some(t) = terms.iter().find(|t| !t.weight.is_finite() || t.weight < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weight {} for {} is negative or not finite",
                t.weight, t.fid
            )));
        }
        let sum: f64 = terms.iter().map(|t| t.weight).sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, expected 1")));
        }
        check_box(x_opt, dim)?;
        terms.retain(|t| t.weight > 0.0);
        terms.sort_by(|a, b| {
            (a.fid, a.iid)
                .cmp(&(b.fid, b.iid))
                .then(a.weight.partial_cmp(&b.weight).unwrap_or(Ordering::Equal))
        });
        let active = terms
            .iter()
            .map(|t| {
                Ok(ActiveTerm {
                    weight: t.weight,
                    scale: scale_table.factor(t.fid),
                    component: ComponentProblem::new(t.fid, t.iid, dim)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ManyAffineProblem {
            dim,
            x_opt: x_opt.to_vec(),
            terms,
            scale_table: scale_table.clone(),
            active,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x_opt(&self) -> &[f64] {
        &self.x_opt
    }

    /// Terms with positive weight, in summation order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn scale_table(&self) -> &ScaleTable {
        &self.scale_table
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.dim)?;
        let offset: Vec<f64> = x.iter().zip(&self.x_opt).map(|(a, b)| a - b).collect();
        let mut shifted = vec![0.0; self.dim];
        let mut acc = 0.0;
        for term in &self.active {
            for ((s, d), o) in shifted.iter_mut().zip(&offset).zip(term.component.optimum_location()) {
                *s = d + o;
            }
            let precision = term.component.precision_unchecked(&shifted);
            acc += term.weight * (shifted_log_precision(precision) / term.scale);
        }
        Ok(inverse_rescale(acc))
    }
}

impl Objective for ManyAffineProblem {
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        ManyAffineProblem::evaluate(self, x)
    }
}

/// Weighted log-mean of two components, optionally relocated so that the
/// optimum sits at a chosen point instead of the first component's optimum.
#[derive(Debug, Clone)]
pub struct PairwiseProblem {
    first: ComponentProblem,
    second: ComponentProblem,
    alpha: f64,
    x_opt: Option<Vec<f64>>,
}

impl PairwiseProblem {
    pub fn new(first: ComponentProblem, second: ComponentProblem, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: second.dim(),
            });
        }
        Ok(PairwiseProblem {
            first,
            second,
            alpha,
            x_opt: None,
        })
    }

    /// Moves the optimum of the combination to `x_opt`.
    pub fn with_optimum_at(mut self, x_opt: &[f64]) -> Result<Self> {
        check_box(x_opt, self.dim())?;
        self.x_opt = Some(x_opt.to_vec());
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn first(&self) -> &ComponentProblem {
        &self.first
    }

    pub fn second(&self) -> &ComponentProblem {
        &self.second
    }

    pub fn optimum_location(&self) -> &[f64] {
        self.x_opt.as_deref().unwrap_or(self.first.optimum_location())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.dim())?;
        let anchor = self.optimum_location();
        let offset: Vec<f64> = x.iter().zip(anchor).map(|(a, b)| a - b).collect();
        let shifted = |c: &ComponentProblem| -> Vec<f64> {
            offset.iter().zip(c.optimum_location()).map(|(d, o)| d + o).collect()
        };
        let first = || match self.x_opt {
            Some(_) => self.first.precision_unchecked(&shifted(&self.first)),
            None => self.first.precision_unchecked(x),
        };
        let second = || self.second.precision_unchecked(&shifted(&self.second));

        if self.alpha == 1.0 {
            return Ok(first().max(PRECISION_FLOOR));
        }
        if self.alpha == 0.0 {
            return Ok(second().max(PRECISION_FLOOR));
        }
        let log_first = first().log10().max(LOG_PRECISION_FLOOR);
        let log_second = second().log10().max(LOG_PRECISION_FLOOR);
        Ok(10f64.powf(self.alpha * log_first + (1.0 - self.alpha) * log_second))
    }
}

/// Pairwise combination `C(F_{f1,i1}, F_{f2,i2}, alpha)` in dimension `dim`.
pub fn combine_pairwise(f1: u32, i1: u32, f2: u32, i2: u32, alpha: f64, dim: usize) -> Result<PairwiseProblem> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    PairwiseProblem::new(
        ComponentProblem::from_ids(f1, i1, dim)?,
        ComponentProblem::from_ids(f2, i2, dim)?,
        alpha,
    )
}

impl Objective for PairwiseProblem {
    fn dim(&self) -> usize {
        PairwiseProblem::dim(self)
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        PairwiseProblem::evaluate(self, x)
    }
}

/// A single component with its optimum moved to `x_opt`, valued by its
/// precision floored at `1e-8`.
#[derive(Debug, Clone)]
pub struct RelocatedComponent {
    component: ComponentProblem,
    x_opt: Vec<f64>,
}

impl RelocatedComponent {
    pub fn new(component: ComponentProblem, x_opt: &[f64]) -> Result<Self> {
        check_box(x_opt, component.dim())?;
        Ok(RelocatedComponent {
            component,
            x_opt: x_opt.to_vec(),
        })
    }
}

impl Objective for RelocatedComponent {
    fn dim(&self) -> usize {
        self.component.dim()
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.component.dim())?;
        let shifted: Vec<f64> = x
            .iter()
            .zip(&self.x_opt)
            .zip(self.component.optimum_location())
            .map(|((a, b), o)| (a - b) + o)
            .collect();
        Ok(self.component.precision_unchecked(&shifted).max(PRECISION_FLOOR))
    }
}
