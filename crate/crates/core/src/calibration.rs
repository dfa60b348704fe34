//! Per-function scale factors.
//!
//! A scale factor summarizes how far random points in `[-5, 5]^d` typically
//! are from the optimum of a component, measured in shifted log-precision
//! `max(log10(p), -8) + 8`. Dividing by it maps every component onto a
//! roughly comparable `[0, 1]` range before blending.
//!
//! By default the sampled precisions are aggregated first and the aggregate
//! is then moved to shifted log-precision ([`AggregationSpace::Precision`]).
//! With the mid-range aggregator this reproduces [`TABLE_1`]; aggregating
//! already-transformed samples ([`AggregationSpace::LogPrecision`]) gives
//! systematically smaller factors for mean and mid-range. Min and max agree
//! in both spaces.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::shifted_log_precision;
use crate::bbob::{ComponentProblem, FunctionId, InstanceId, NUM_FUNCTIONS};
use crate::error::{Error, Result};
use crate::seeding::rng_from;

/// Published static scale factors, F1 through F24.
pub const TABLE_1: [f64; NUM_FUNCTIONS] = [
    11.0, 17.5, 12.3, 12.6, 11.5, 15.3, 12.1, 15.3, 15.2, 17.4, 13.4, 20.4, //
    12.9, 10.4, 12.3, 10.3, 9.8, 10.6, 10.0, 14.7, 10.7, 10.8, 9.0, 12.1,
];

/// Factor used by every function under [`Aggregator::Equal`].
pub const EQUAL_FACTOR: f64 = 10.0;

pub const DEFAULT_SAMPLES: usize = 50_000;
pub const DEFAULT_DIMS: [usize; 6] = [2, 3, 5, 10, 20, 40];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleTableSource {
    PaperTable1,
    Recalibrated,
}

/// Scale factor per function.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleTable {
    factors: [f64; NUM_FUNCTIONS],
    source: ScaleTableSource,
}

impl ScaleTable {
    pub fn paper() -> Self {
        ScaleTable {
            factors: TABLE_1,
            source: ScaleTableSource::PaperTable1,
        }
    }

    pub fn equal() -> Self {
        ScaleTable {
            factors: [EQUAL_FACTOR; NUM_FUNCTIONS],
            source: ScaleTableSource::Recalibrated,
        }
    }

    /// A custom table. Every factor must be positive and finite. Tables equal
    /// to the published constants are tagged as such.
    pub fn from_factors(factors: &[f64]) -> Result<Self> {
        let factors: [f64; NUM_FUNCTIONS] = factors.try_into().map_err(|_| {
            Error::InvalidArgument(format!(
                "scale table needs {NUM_FUNCTIONS} factors, got {}",
                factors.len()
            ))
        })?;
        if let Some(bad) = factors.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidScaleFactor(*bad));
        }
        let source = if factors == TABLE_1 {
            ScaleTableSource::PaperTable1
        } else {
            ScaleTableSource::Recalibrated
        };
        Ok(ScaleTable { factors, source })
    }

    pub fn factor(&self, fid: FunctionId) -> f64 {
        self.factors[fid.index()]
    }

    pub fn factors(&self) -> &[f64; NUM_FUNCTIONS] {
        &self.factors
    }

    pub fn source(&self) -> ScaleTableSource {
        self.source
    }
}

impl Default for ScaleTable {
    fn default() -> Self {
        Self::paper()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregator {
    Min,
    Mean,
    Max,
    /// `(max + min) / 2`
    MidRange,
    /// No sampling; every factor is 10.
    Equal,
}

impl Aggregator {
    pub fn name(self) -> &'static str {
        match self {
            Aggregator::Min => "min",
            Aggregator::Mean => "mean",
            Aggregator::Max => "max",
            Aggregator::MidRange => "mid_range",
            Aggregator::Equal => "equal",
        }
    }

    /// Aggregates a non-empty sample.
    pub fn apply(self, values: &[f64]) -> Result<f64> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("cannot aggregate an empty sample".into()));
        }
        let min = || values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = || values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        match self {
            Aggregator::Min => Ok(min()),
            Aggregator::Max => Ok(max()),
            Aggregator::Mean => Ok(values.iter().sum::<f64>() / values.len() as f64),
            Aggregator::MidRange => Ok((max() + min()) / 2.0),
            Aggregator::Equal => Err(Error::InvalidArgument(
                "the equal aggregator defines a whole table, not a per-function factor".into(),
            )),
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Aggregator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "min" => Ok(Aggregator::Min),
            "mean" => Ok(Aggregator::Mean),
            "max" => Ok(Aggregator::Max),
            "mid_range" | "midrange" => Ok(Aggregator::MidRange),
            "equal" => Ok(Aggregator::Equal),
            _ => Err(Error::UnknownAggregator(s.to_string())),
        }
    }
}

/// Where the aggregator is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationSpace {
    /// Aggregate raw precisions, then transform the aggregate.
    #[default]
    Precision,
    /// Transform every sample, then aggregate.
    LogPrecision,
}

impl FromStr for AggregationSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "precision" => Ok(AggregationSpace::Precision),
            "log_precision" | "log" => Ok(AggregationSpace::LogPrecision),
            _ => Err(Error::InvalidArgument(format!("unknown aggregation space: {s}"))),
        }
    }
}

/// Precisions of `n_samples` uniform points in `[-5, 5]^dim`.
pub fn sample_precisions<F, R>(precision: F, dim: usize, n_samples: usize, rng: &mut R) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    let mut x = vec![0.0; dim];
    (0..n_samples)
        .map(|_| {
            for v in x.iter_mut() {
                *v = rng.random_range(-5.0..=5.0);
            }
            precision(&x)
        })
        .collect()
}

/// Reduces sampled precisions to one shifted log-precision value.
pub fn aggregate_precisions(samples: &[f64], agg: Aggregator, space: AggregationSpace) -> Result<f64> {
    match space {
        AggregationSpace::Precision => agg.apply(samples).map(shifted_log_precision),
        AggregationSpace::LogPrecision => {
            let logs: Vec<f64> = samples.iter().map(|p| shifted_log_precision(*p)).collect();
            agg.apply(&logs)
        }
    }
}

/// Scale factor of an arbitrary precision function.
pub fn scale_factor_of<F, R>(
    precision: F,
    dim: usize,
    n_samples: usize,
    rng: &mut R,
    agg: Aggregator,
    space: AggregationSpace,
) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be >= 1".into()));
    }
    if agg == Aggregator::Equal {
        return Err(Error::InvalidArgument(
            "the equal aggregator defines a whole table, not a per-function factor".into(),
        ));
    }
    aggregate_precisions(&sample_precisions(precision, dim, n_samples, rng), agg, space)
}

/// Scale factor of one BBOB instance, aggregating in [`AggregationSpace::Precision`].
pub fn compute_scale_factor<R: Rng + ?Sized>(
    fid: FunctionId,
    iid: InstanceId,
    dim: usize,
    n_samples: usize,
    rng: &mut R,
    agg: Aggregator,
) -> Result<f64> {
    compute_scale_factor_in(fid, iid, dim, n_samples, rng, agg, AggregationSpace::Precision)
}

pub fn compute_scale_factor_in<R: Rng + ?Sized>(
    fid: FunctionId,
    iid: InstanceId,
    dim: usize,
    n_samples: usize,
    rng: &mut R,
    agg: Aggregator,
    space: AggregationSpace,
) -> Result<f64> {
    let component = ComponentProblem::new(fid, iid, dim)?;
    scale_factor_of(|x| component.precision_unchecked(x), dim, n_samples, rng, agg, space)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Rounds half away from zero to one decimal place.
pub fn round_one_decimal(v: f64) -> f64 {
    (v * 10.0).round() / 10.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationConfig {
    pub dims: Vec<usize>,
    pub n_samples: usize,
    pub seed: u64,
    pub aggregator: Aggregator,
    pub space: AggregationSpace,
    pub iid: InstanceId,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        CalibrationConfig {
            dims: DEFAULT_DIMS.to_vec(),
            n_samples: DEFAULT_SAMPLES,
            seed: 0,
            aggregator: Aggregator::MidRange,
            space: AggregationSpace::Precision,
            iid: InstanceId::new(1).expect("1 is a valid instance"),
        }
    }
}

/// Unrounded factors for every (function, dimension) pair plus the final table.
#[derive(Debug, Clone)]
pub struct Calibration {
    pub dims: Vec<usize>,
    /// `per_dim[fid index][dim index]`; empty rows for the equal aggregator.
    pub per_dim: Vec<Vec<f64>>,
    pub table: ScaleTable,
}

/// Runs the calibration. Each (function, dimension) pair draws from its own
/// stream derived from `(seed, fid, dim)`, so results do not depend on
/// thread scheduling.
pub fn calibrate(config: &CalibrationConfig) -> Result<Calibration> {
    if config.dims.is_empty() {
        return Err(Error::InvalidArgument("dims must not be empty".into()));
    }
    if let Some(&d) = config.dims.iter().find(|d| **d == 0) {
        return Err(Error::InvalidDimension(d));
    }
    if config.aggregator == Aggregator::Equal {
        return Ok(Calibration {
            dims: config.dims.clone(),
            per_dim: vec![Vec::new(); NUM_FUNCTIONS],
            table: ScaleTable::equal(),
        });
    }
    let jobs: Vec<(FunctionId, usize)> = FunctionId::all()
        .flat_map(|f| config.dims.iter().map(move |&d| (f, d)))
        .collect();
    let values = jobs
        .par_iter()
        .map(|&(fid, dim)| {
            let mut rng = rng_from(&[config.seed, u64::from(fid.get()), dim as u64]);
            compute_scale_factor_in(
                fid,
                config.iid,
                dim,
                config.n_samples,
                &mut rng,
                config.aggregator,
                config.space,
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    let per_dim: Vec<Vec<f64>> = values.chunks(config.dims.len()).map(<[f64]>::to_vec).collect();
    let factors: Vec<f64> = per_dim
        .iter()
        .map(|row| round_one_decimal(median(&mut row.clone())))
        .collect();
    let mut table = ScaleTable::from_factors(&factors)?;
    table.source = ScaleTableSource::Recalibrated;
    Ok(Calibration {
        dims: config.dims.clone(),
        per_dim,
        table,
    })
}

/// Convenience wrapper returning only the table.
pub fn compute_scale_table(dims: &[usize], n_samples: usize, seed: u64, agg: Aggregator) -> Result<ScaleTable> {
    calibrate(&CalibrationConfig {
        dims: dims.to_vec(),
        n_samples,
        seed,
        aggregator: agg,
        ..Default::default()
    })
    .map(|c| c.table)
}

/// One line of the comparison against the published table.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorComparison {
    pub fid: FunctionId,
    pub computed: f64,
    pub published: f64,
    pub relative_deviation: f64,
    pub flagged: bool,
}

/// Compares `table` against [`TABLE_1`], flagging relative deviations above
/// `tolerance`.
pub fn compare_with_published(table: &ScaleTable, tolerance: f64) -> Vec<FactorComparison> {
    FunctionId::all()
        .map(|fid| {
            let computed = table.factor(fid);
            let published = TABLE_1[fid.index()];
            let relative_deviation = (computed - published).abs() / published;
            FactorComparison {
                fid,
                computed,
                published,
                relative_deviation,
                flagged: relative_deviation > tolerance,
            }
        })
        .collect()
}
