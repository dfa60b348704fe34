//! Random problem sampling: thresholded weights, instance ids and a uniform
//! optimum location.

use rand::Rng;

use crate::affine::WeightVector;
use crate::bbob::{InstanceId, NUM_FUNCTIONS};
use crate::error::{Error, Result};

pub const DEFAULT_THRESHOLD: f64 = 0.85;
pub const DEFAULT_INSTANCE_RANGE: u32 = 100;

/// Turns 24 raw uniforms into a weight vector.
///
/// The effective threshold is `min(threshold, third-highest raw value)`;
/// entries strictly above it keep `raw - effective`, everything else drops
/// to zero, and the survivors are normalized. If ties leave fewer than two
/// survivors the threshold drops to the next lower distinct raw value.
pub fn threshold_weights(raw: &[f64; NUM_FUNCTIONS], threshold: f64) -> Result<WeightVector> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidThreshold(threshold));
    }
    if let Some(i) = raw.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidWeights(format!("raw weight {i} is not finite")));
    }
    let mut sorted = *raw;
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut effective = threshold.min(sorted[2]);
    if raw.iter().filter(|v| **v > effective).count() < 2 {
        effective = sorted
            .iter()
            .copied()
            .find(|v| *v < sorted[1])
            .unwrap_or(sorted[1] - 1.0);
    }
    let mut w = raw.map(|v| if v > effective { v - effective } else { 0.0 });
    let total: f64 = w.iter().sum();
    for v in &mut w {
        *v /= total;
    }
    WeightVector::new(w)
}

pub fn sample_weights<R: Rng + ?Sized>(rng: &mut R, threshold: f64) -> Result<WeightVector> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let raw: [f64; NUM_FUNCTIONS] = std::array::from_fn(|_| rng.random::<f64>());
    threshold_weights(&raw, threshold)
}

/// Everything needed to build a random many-affine problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledInstance {
    pub weights: WeightVector,
    pub instances: [InstanceId; NUM_FUNCTIONS],
    pub x_opt: Vec<f64>,
}

/// Draws weights, then 24 instance ids uniform in `1..=instance_range`, then
/// `x_opt` uniform in `[-5, 5]^dim`, in that order.
pub fn sample_instance<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    threshold: f64,
    instance_range: u32,
) -> Result<SampledInstance> {
    if dim == 0 {
        return Err(Error::InvalidDimension(dim));
    }
    if instance_range == 0 {
        return Err(Error::InvalidArgument("instance_range must be >= 1".into()));
    }
    let weights = sample_weights(rng, threshold)?;
    let mut instances = [InstanceId::new(1)?; NUM_FUNCTIONS];
    for slot in &mut instances {
        *slot = InstanceId::new(rng.random_range(1..=instance_range))?;
    }
    let x_opt = (0..dim).map(|_| rng.random_range(-5.0..=5.0)).collect();
    Ok(SampledInstance {
        weights,
        instances,
        x_opt,
    })
}
