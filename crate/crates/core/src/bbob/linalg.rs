//! Small dense row-major matrices and seeded random rotations.

use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    #[cfg(test)]
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    /// `self * x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self^T * x`
    pub fn apply_transposed(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * xi;
            }
        }
        out
    }

    /// `self * other`
    pub fn compose(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Matrix { n, data }
    }

    /// `diag(d) * self`
    pub fn scale_rows(&self, d: &[f64]) -> Matrix {
        let n = self.n;
        let mut data = self.data.clone();
        for (i, &s) in d.iter().enumerate() {
            for v in &mut data[i * n..(i + 1) * n] {
                *v *= s;
            }
        }
        Matrix { n, data }
    }

    /// `self * diag(d)`
    pub fn scale_cols(&self, d: &[f64]) -> Matrix {
        let n = self.n;
        let mut data = self.data.clone();
        for row in data.chunks_mut(n) {
            for (v, &s) in row.iter_mut().zip(d) {
                *v *= s;
            }
        }
        Matrix { n, data }
    }
}

/// Orthonormalizes the rows of `rows` in place with modified Gram-Schmidt.
/// Returns `false` if a row collapses (numerically rank deficient input).
pub(crate) fn gram_schmidt(rows: &mut [Vec<f64>]) -> bool {
    for i in 0..rows.len() {
        for j in 0..i {
            let (done, rest) = rows.split_at_mut(i);
            let dot: f64 = rest[0].iter().zip(&done[j]).map(|(a, b)| a * b).sum();
            for (a, b) in rest[0].iter_mut().zip(&done[j]) {
                *a -= dot * b;
            }
        }
        let norm = rows[i].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 1e-10 {
            return false;
        }
        for v in &mut rows[i] {
            *v /= norm;
        }
    }
    true
}

/// Draws a random orthogonal matrix by orthonormalizing a standard-normal
/// matrix. Redraws on rank deficiency.
pub(crate) fn random_rotation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect())
            .collect();
        if gram_schmidt(&mut rows) {
            return Matrix {
                n,
                data: rows.into_iter().flatten().collect(),
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::rng_from;

    #[test]
    fn rotation_is_orthonormal() {
        let mut rng = rng_from(&[42]);
        for n in [1, 2, 5, 17] {
            let r = random_rotation(&mut rng, n);
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = r.row(i).iter().zip(r.row(j)).map(|(a, b)| a * b).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - expected).abs() < 1e-12, "n={n} ({i},{j}) -> {dot}");
                }
            }
        }
    }

    #[test]
    fn gram_schmidt_rejects_dependent_rows() {
        let mut rows = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(!gram_schmidt(&mut rows));
    }

    #[test]
    fn transpose_inverts_rotation() {
        let mut rng = rng_from(&[3]);
        let r = random_rotation(&mut rng, 6);
        let x = [0.3, -1.2, 4.0, 2.2, -3.3, 0.01];
        let back = r.apply_transposed(&r.apply(&x));
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn compose_and_scale() {
        let id = Matrix::identity(3);
        let d = [1.0, 2.0, 3.0];
        let m = id.scale_rows(&d).compose(&id.scale_cols(&d));
        assert_eq!(m.apply(&[1.0, 1.0, 1.0]), vec![1.0, 4.0, 9.0]);
    }
}
