//! Suite files, scale-table files and point files.
//!
//! Suites and scale tables are pretty-printed JSON with a trailing newline.
//! Floats are written in shortest round-trip form, so loading and re-saving a
//! file reproduces it byte for byte.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affine::{ManyAffineProblem, WeightVector};
use crate::bbob::{InstanceId, NUM_FUNCTIONS};
use crate::calibration::{AggregationSpace, Aggregator, Calibration, CalibrationConfig, ScaleTable, ScaleTableSource};
use crate::error::{Error, Result};
use crate::sampling::sample_instance;
use crate::seeding::rng_from;

pub const SUITE_VERSION: &str = "mabbob-suite/1";
pub const SCALE_TABLE_VERSION: &str = "mabbob-scale-table/1";

/// One generated problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemRecord {
    pub problem_id: usize,
    pub weights: Vec<f64>,
    pub instances: Vec<u32>,
    pub x_opt: Vec<f64>,
    pub scale_factors: Vec<f64>,
}

impl ProblemRecord {
    /// Checks the record against `dim` and builds the problem.
    pub fn to_problem(&self, dim: usize) -> Result<ManyAffineProblem> {
        let weights = WeightVector::from_slice(&self.weights)?;
        if weights.positive_count() < 2 {
            return Err(Error::InvalidWeights(format!(
                "problem {} has {} positive weights, need at least 2",
                self.problem_id,
                weights.positive_count()
            )));
        }
        if self.instances.len() != NUM_FUNCTIONS {
            return Err(Error::InvalidArgument(format!(
                "problem {} has {} instance ids, expected {NUM_FUNCTIONS}",
                self.problem_id,
                self.instances.len()
            )));
        }
        let mut instances = [InstanceId::new(1)?; NUM_FUNCTIONS];
        for (slot, &iid) in instances.iter_mut().zip(&self.instances) {
            *slot = InstanceId::new(iid)?;
        }
        let table = ScaleTable::from_factors(&self.scale_factors)?;
        ManyAffineProblem::new(&weights, &instances, &self.x_opt, dim, &table)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDefinition {
    pub version: String,
    pub master_seed: u64,
    pub dim: usize,
    pub threshold: f64,
    pub instance_range: u32,
    pub problems: Vec<ProblemRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateConfig {
    pub count: usize,
    pub dim: usize,
    pub seed: u64,
    pub threshold: f64,
    pub instance_range: u32,
    pub scale_table: ScaleTable,
}

impl SuiteDefinition {
    /// Samples `count` problems from one stream seeded by `seed`.
    pub fn generate(config: &GenerateConfig) -> Result<Self> {
        if config.count == 0 {
            return Err(Error::InvalidArgument("count must be >= 1".into()));
        }
        let mut rng = rng_from(&[config.seed]);
        let problems = (0..config.count)
            .map(|problem_id| {
                let s = sample_instance(&mut rng, config.dim, config.threshold, config.instance_range)?;
                Ok(ProblemRecord {
                    problem_id,
                    weights: s.weights.as_array().to_vec(),
                    instances: s.instances.iter().map(|i| i.get()).collect(),
                    x_opt: s.x_opt,
                    scale_factors: config.scale_table.factors().to_vec(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let suite = SuiteDefinition {
            version: SUITE_VERSION.to_string(),
            master_seed: config.seed,
            dim: config.dim,
            threshold: config.threshold,
            instance_range: config.instance_range,
            problems,
        };
        suite.validate()?;
        Ok(suite)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != SUITE_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported suite version: {}",
                self.version
            )));
        }
        self.build_problems().map(|_| ())
    }

    /// Problems in file order. Ids must be the dense range `0..len`.
    pub fn build_problems(&self) -> Result<Vec<ManyAffineProblem>> {
        self.problems
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.problem_id != i {
                    return Err(Error::InvalidArgument(format!(
                        "problem ids must be 0..{}, found {} at position {i}",
                        self.problems.len(),
                        p.problem_id
                    )));
                }
                p.to_problem(self.dim)
            })
            .collect()
    }

    pub fn problem(&self, problem_id: usize) -> Result<ManyAffineProblem> {
        self.problems
            .get(problem_id)
            .ok_or_else(|| Error::InvalidArgument(format!("no problem with id {problem_id}")))?
            .to_problem(self.dim)
    }

    pub fn to_json(&self) -> Result<String> {
        to_pretty_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let suite: SuiteDefinition = serde_json::from_str(text)?;
        suite.validate()?;
        Ok(suite)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json()?.as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Serialized form of a scale table together with how it was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleTableFile {
    pub version: String,
    pub provenance: ScaleTableSource,
    pub aggregator: Option<Aggregator>,
    pub space: Option<AggregationSpace>,
    pub dims: Vec<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub scale_factors: Vec<f64>,
}

impl ScaleTableFile {
    pub fn from_calibration(config: &CalibrationConfig, calibration: &Calibration) -> Self {
        let sampled = config.aggregator != Aggregator::Equal;
        ScaleTableFile {
            version: SCALE_TABLE_VERSION.to_string(),
            provenance: calibration.table.source(),
            aggregator: Some(config.aggregator),
            space: sampled.then_some(config.space),
            dims: if sampled { config.dims.clone() } else { Vec::new() },
            samples: sampled.then_some(config.n_samples),
            seed: sampled.then_some(config.seed),
            scale_factors: calibration.table.factors().to_vec(),
        }
    }

    pub fn paper() -> Self {
        ScaleTableFile {
            version: SCALE_TABLE_VERSION.to_string(),
            provenance: ScaleTableSource::PaperTable1,
            aggregator: None,
            space: None,
            dims: Vec::new(),
            samples: None,
            seed: None,
            scale_factors: ScaleTable::paper().factors().to_vec(),
        }
    }

    pub fn table(&self) -> Result<ScaleTable> {
        ScaleTable::from_factors(&self.scale_factors)
    }

    pub fn to_json(&self) -> Result<String> {
        to_pretty_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScaleTableFile = serde_json::from_str(text)?;
        if file.version != SCALE_TABLE_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported scale table version: {}",
                file.version
            )));
        }
        file.table()?;
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json()?.as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path)
        .map_err(|e| Error::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

/// Parses a headerless CSV of points, one per line. Blank lines are skipped;
/// line numbers in errors are 1-based.
pub fn parse_points(text: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let point = line
            .split(',')
            .map(|field| {
                let field = field.trim();
                match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    Ok(_) => Err(Error::Parse {
                        line: line_no,
                        reason: format!("non-finite value '{field}'"),
                    }),
                    Err(_) => Err(Error::Parse {
                        line: line_no,
                        reason: format!("not a number: '{field}'"),
                    }),
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        if point.len() != dim {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("expected {dim} columns, found {}", point.len()),
            });
        }
        points.push(point);
    }
    Ok(points)
}

/// Output form of an objective value: 17 significant digits, exponent form.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}
