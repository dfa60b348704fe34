use crate::error::Result;

/// A minimization problem over `[-5, 5]^dim` that optimizers can query.
pub trait Objective: Sync {
    fn dim(&self) -> usize;
    fn evaluate(&self, x: &[f64]) -> Result<f64>;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        (**self).evaluate(x)
    }
}

impl Objective for crate::bbob::ComponentProblem {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.evaluate_raw(x)
    }
}
