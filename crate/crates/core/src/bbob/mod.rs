//! The 24 noiseless BBOB component functions.
//!
//! A [`ComponentProblem`] is one function instance. Its instance parameters
//! (shifts, rotations, sign patterns, peak layouts) come from a ChaCha
//! stream seeded by `(fid, iid, dim)`, so construction is reproducible but
//! not bit-compatible with COCO's legacy generator. The value returned by
//! [`ComponentProblem::evaluate_raw`] is the precision `f(x) - f(x_opt)`,
//! which is zero at [`ComponentProblem::optimum_location`].

mod functions;
mod linalg;
mod transforms;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeding::rng_from;
use functions::Landscape;

pub const NUM_FUNCTIONS: usize = 24;

const FUNCTION_NAMES: [&str; NUM_FUNCTIONS] = [
    "Sphere",
    "Separable Ellipsoid",
    "Separable Rastrigin",
    "Buche-Rastrigin",
    "Linear Slope",
    "Attractive Sector",
    "Step Ellipsoid",
    "Rosenbrock",
    "Rotated Rosenbrock",
    "Ellipsoid",
    "Discus",
    "Bent Cigar",
    "Sharp Ridge",
    "Different Powers",
    "Rastrigin",
    "Weierstrass",
    "Schaffers F7",
    "Schaffers F7 (ill-conditioned)",
    "Griewank-Rosenbrock",
    "Schwefel",
    "Gallagher 101 Peaks",
    "Gallagher 21 Peaks",
    "Katsuura",
    "Lunacek bi-Rastrigin",
];

/// BBOB function number, 1 through 24.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FunctionId(u32);

impl FunctionId {
    pub fn new(id: u32) -> Result<Self> {
        if (1..=NUM_FUNCTIONS as u32).contains(&id) {
            Ok(FunctionId(id))
        } else {
            Err(Error::InvalidFunctionId(id))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based slot in 24-entry vectors.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(index: usize) -> Result<Self> {
        Self::new(index as u32 + 1)
    }

    pub fn name(self) -> &'static str {
        FUNCTION_NAMES[self.index()]
    }

    pub fn all() -> impl Iterator<Item = FunctionId> {
        (1..=NUM_FUNCTIONS as u32).map(FunctionId)
    }
}

impl TryFrom<u32> for FunctionId {
    type Error = Error;
    fn try_from(v: u32) -> Result<Self> {
        FunctionId::new(v)
    }
}

impl From<FunctionId> for u32 {
    fn from(f: FunctionId) -> u32 {
        f.0
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

/// Instance number, any value >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct InstanceId(u32);

impl InstanceId {
    pub fn new(iid: u32) -> Result<Self> {
        if iid >= 1 {
            Ok(InstanceId(iid))
        } else {
            Err(Error::InvalidInstanceId(iid))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for InstanceId {
    type Error = Error;
    fn try_from(v: u32) -> Result<Self> {
        InstanceId::new(v)
    }
}

impl From<InstanceId> for u32 {
    fn from(i: InstanceId) -> u32 {
        i.0
    }
}

/// Checks length and finiteness of an evaluation point.
pub(crate) fn check_point(x: &[f64], dim: usize) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    match x.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFiniteInput(i)),
        None => Ok(()),
    }
}

/// One instantiated BBOB function with a known optimum.
#[derive(Debug, Clone)]
pub struct ComponentProblem {
    fid: FunctionId,
    iid: InstanceId,
    dim: usize,
    optimum: Vec<f64>,
    landscape: Landscape,
    value_at_optimum: f64,
}

impl ComponentProblem {
    pub fn new(fid: FunctionId, iid: InstanceId, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut rng = rng_from(&[u64::from(fid.get()), u64::from(iid.get()), dim as u64]);
        let (landscape, optimum) = Landscape::build(fid.get(), dim, &mut rng);
        let value_at_optimum = landscape.raw(&optimum);
        Ok(ComponentProblem {
            fid,
            iid,
            dim,
            optimum,
            landscape,
            value_at_optimum,
        })
    }

    /// Convenience constructor from plain integers.
    pub fn from_ids(fid: u32, iid: u32, dim: usize) -> Result<Self> {
        Self::new(FunctionId::new(fid)?, InstanceId::new(iid)?, dim)
    }

    pub fn fid(&self) -> FunctionId {
        self.fid
    }

    pub fn iid(&self) -> InstanceId {
        self.iid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn optimum_location(&self) -> &[f64] {
        &self.optimum
    }

    /// Precision `f(x) - f(x_opt)`: finite and non-negative for every
    /// finite `x`, exactly zero at the optimum.
    pub fn evaluate_raw(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.dim)?;
        Ok(self.precision_unchecked(x))
    }

    /// Same as [`evaluate_raw`](Self::evaluate_raw) without input checks.
    pub(crate) fn precision_unchecked(&self, x: &[f64]) -> f64 {
        let v = self.landscape.raw(x) - self.value_at_optimum;
        if v.is_nan() || v == f64::INFINITY {
            // overflow in a transformation far outside the box
            f64::MAX
        } else {
            v.max(0.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn uniform_points(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = rng_from(&[seed]);
        (0..n)
            .map(|_| (0..dim).map(|_| rng.random_range(-5.0..=5.0)).collect())
            .collect()
    }

    #[test]
    fn ids_are_validated() {
        assert_eq!(FunctionId::new(0), Err(Error::InvalidFunctionId(0)));
        assert_eq!(FunctionId::new(25), Err(Error::InvalidFunctionId(25)));
        assert_eq!(InstanceId::new(0), Err(Error::InvalidInstanceId(0)));
        assert_eq!(
            ComponentProblem::from_ids(1, 1, 0).unwrap_err(),
            Error::InvalidDimension(0)
        );
        let msg = ComponentProblem::from_ids(30, 1, 2).unwrap_err().to_string();
        assert!(msg.contains("fid"), "{msg}");
        assert_eq!(FunctionId::new(24).unwrap().name(), "Lunacek bi-Rastrigin");
    }

    #[test]
    fn sphere_unit_step() {
        let p = ComponentProblem::from_ids(1, 1, 2).unwrap();
        let o = p.optimum_location().to_vec();
        assert_eq!(p.evaluate_raw(&o).unwrap(), 0.0);
        let x = [o[0] + 1.0, o[1]];
        assert!((p.evaluate_raw(&x).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separable_ellipsoid_is_symmetric_in_first_axis() {
        let p = ComponentProblem::from_ids(2, 1, 3).unwrap();
        let o = p.optimum_location().to_vec();
        let mut plus = o.clone();
        plus[0] += 1.0;
        let mut minus = o.clone();
        minus[0] -= 1.0;
        // |T_osz(1)| = |T_osz(-1)| = 1
        assert_eq!(p.evaluate_raw(&plus).unwrap(), p.evaluate_raw(&minus).unwrap());
    }

    #[test]
    fn input_checks() {
        let p = ComponentProblem::from_ids(3, 1, 3).unwrap();
        assert_eq!(
            p.evaluate_raw(&[0.0, 0.0]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
        assert_eq!(p.evaluate_raw(&[0.0, f64::NAN, 0.0]), Err(Error::NonFiniteInput(1)));
        assert_eq!(
            p.evaluate_raw(&[f64::INFINITY, 0.0, 0.0]),
            Err(Error::NonFiniteInput(0))
        );
    }

    #[test]
    fn construction_is_deterministic() {
        let a = ComponentProblem::from_ids(1, 1, 2).unwrap();
        let b = ComponentProblem::from_ids(1, 1, 2).unwrap();
        for x in uniform_points(2, 1000, 9) {
            assert_eq!(
                a.evaluate_raw(&x).unwrap().to_bits(),
                b.evaluate_raw(&x).unwrap().to_bits()
            );
        }
        for fid in 1..=24 {
            let a = ComponentProblem::from_ids(fid, 4, 5).unwrap();
            let b = ComponentProblem::from_ids(fid, 4, 5).unwrap();
            assert_eq!(a.optimum_location(), b.optimum_location());
        }
    }

    #[test]
    fn every_function_is_zero_at_its_optimum() {
        for dim in [1, 2, 3, 5, 10, 20, 40] {
            for fid in 1..=24 {
                for iid in 1..=3 {
                    let p = ComponentProblem::from_ids(fid, iid, dim).unwrap();
                    assert_eq!(p.optimum_location().len(), dim);
                    assert_eq!(
                        p.evaluate_raw(p.optimum_location()).unwrap(),
                        0.0,
                        "f{fid} i{iid} d{dim}"
                    );
                }
            }
        }
    }

    #[test]
    fn rosenbrock_f8_optimum_beats_random_samples() {
        let p = ComponentProblem::from_ids(8, 3, 5).unwrap();
        let best = p.evaluate_raw(p.optimum_location()).unwrap();
        for x in uniform_points(5, 10_000, 11) {
            assert!(best <= p.evaluate_raw(&x).unwrap());
        }
    }

    #[test]
    fn optimum_beats_random_samples_for_all_functions() {
        let points = uniform_points(2, 10_000, 12);
        for fid in 1..=24 {
            for iid in 1..=5 {
                let p = ComponentProblem::from_ids(fid, iid, 2).unwrap();
                let at_opt = p.evaluate_raw(p.optimum_location()).unwrap();
                assert_eq!(at_opt, 0.0);
                let min = points
                    .iter()
                    .map(|x| p.evaluate_raw(x).unwrap())
                    .fold(f64::INFINITY, f64::min);
                assert!(min >= at_opt, "f{fid} i{iid}: sampled {min}");
            }
        }
    }

    #[test]
    fn instances_differ() {
        let points = uniform_points(3, 100, 13);
        for fid in 1..=24 {
            let a = ComponentProblem::from_ids(fid, 1, 3).unwrap();
            let b = ComponentProblem::from_ids(fid, 2, 3).unwrap();
            let differs = points
                .iter()
                .any(|x| a.evaluate_raw(x).unwrap() != b.evaluate_raw(x).unwrap());
            assert!(differs, "f{fid}");
        }
    }

    #[test]
    fn total_far_outside_the_box() {
        let far = [
            vec![1e3, -1e3, 50.0],
            vec![1e8, 1e8, -1e8],
            vec![-1e300, 1e300, 0.0],
            vec![12.0, -14.0, 9.5],
        ];
        for fid in 1..=24 {
            let p = ComponentProblem::from_ids(fid, 1, 3).unwrap();
            for x in &far {
                let v = p.evaluate_raw(x).unwrap();
                assert!(v.is_finite() && v >= 0.0, "f{fid} at {x:?}: {v}");
            }
        }
    }

    #[test]
    fn optimum_locations_follow_function_structure() {
        // Location patterns of the 2-d optima over many instances.
        for iid in 1..=200 {
            let opt = |fid| {
                ComponentProblem::from_ids(fid, iid, 2)
                    .unwrap()
                    .optimum_location()
                    .to_vec()
            };
            assert!(opt(5).iter().all(|v| v.abs() == 5.0));
            assert!(opt(20).iter().all(|v| (v.abs() - 2.104_843_731_137_518).abs() < 1e-12));
            assert!(opt(24).iter().all(|v| v.abs() == 1.25));
            assert!(opt(8).iter().all(|v| v.abs() <= 3.0));
            for fid in [9, 19] {
                // R^T (1/2) 1 has norm sqrt(2)/2 in 2-d
                let n = opt(fid).iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((n - 0.5f64.sqrt()).abs() < 1e-12);
            }
            assert!(opt(4)[0] >= 0.0);
            assert!(opt(21).iter().all(|v| v.abs() <= 4.0 + 1e-9));
            assert!(opt(22).iter().all(|v| v.abs() <= 3.92 + 1e-9));
            for fid in [1, 2, 3, 6, 7, 10, 11, 12, 13, 14, 15, 16, 17, 18, 23] {
                assert!(opt(fid).iter().all(|v| v.abs() <= 4.0));
            }
        }
    }
}
