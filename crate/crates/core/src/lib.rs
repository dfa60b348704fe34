//! Many-affine combinations of the BBOB noiseless benchmark functions.
//!
//! The crate builds new continuous black-box problems by blending the 24
//! BBOB functions in log-precision space, places the optimum of every
//! generated problem uniformly in `[-5, 5]^d`, calibrates the per-function
//! scale factors, and measures anytime performance (AOCC) of a few baseline
//! optimizers on the result.

pub mod affine;
pub mod bbob;
pub mod calibration;
pub mod error;
mod objective;
pub mod performance;
pub mod sampling;
pub mod seeding;
pub mod suite;

pub use affine::{
    combine_pairwise, inverse_rescale, rescale_component, ManyAffineProblem, PairwiseProblem, RelocatedComponent, Term,
    WeightVector,
};
pub use bbob::{ComponentProblem, FunctionId, InstanceId, NUM_FUNCTIONS};
pub use calibration::{Aggregator, ScaleTable, ScaleTableSource};
pub use error::{Error, Result};
pub use objective::Objective;
pub use performance::{aocc, mean_aocc, run_optimizer, Algorithm, Budget, RunTrace};
pub use suite::{ProblemRecord, SuiteDefinition};
