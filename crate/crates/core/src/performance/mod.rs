//! Anytime performance measurement and baseline optimizers.

mod aocc;
pub mod harness;
pub mod optimizers;
pub mod sweep;

pub use aocc::{aocc, aocc_of, aocc_step, mean_aocc, RunTrace};
pub use optimizers::{run_optimizer, Algorithm, Budget};
pub use sweep::{alpha_grid, alpha_sweep, mean_by_alpha, spearman, SweepCell, SweepConfig};
