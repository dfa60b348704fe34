//! Elementwise transformations shared by the BBOB functions.

/// Arguments of logarithms and fractional powers are floored here.
pub(crate) const TINY: f64 = 1e-300;

/// `i / (dim - 1)`, with the one-dimensional case mapped to 0.
#[inline]
pub(crate) fn ratio(i: usize, dim: usize) -> f64 {
    if dim > 1 {
        i as f64 / (dim - 1) as f64
    } else {
        0.0
    }
}

/// Oscillation transformation T_osz.
#[inline]
pub(crate) fn t_osz(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let xh = x.abs().max(TINY).ln();
    let (c1, c2) = if x > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    x.signum() * (xh + 0.049 * ((c1 * xh).sin() + (c2 * xh).sin())).exp()
}

pub(crate) fn t_osz_vec(x: &mut [f64]) {
    for v in x {
        *v = t_osz(*v);
    }
}

/// Asymmetric transformation T_asy^beta.
pub(crate) fn t_asy(x: &mut [f64], beta: f64) {
    let d = x.len();
    for (i, v) in x.iter_mut().enumerate() {
        if *v > 0.0 {
            *v = v.powf(1.0 + beta * ratio(i, d) * v.sqrt());
        }
    }
}

/// Diagonal of the conditioning matrix Lambda^alpha.
pub(crate) fn lambda_diag(alpha: f64, dim: usize) -> Vec<f64> {
    (0..dim).map(|i| alpha.powf(0.5 * ratio(i, dim))).collect()
}

/// Boundary penalty: squared excess outside [-5, 5].
#[inline]
pub(crate) fn f_pen(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| {
            let e = v.abs() - 5.0;
            if e > 0.0 {
                e * e
            } else {
                0.0
            }
        })
        .sum()
}

/// `10 * (D - sum cos(2 pi z_i))`
#[inline]
pub(crate) fn rastrigin_term(z: &[f64]) -> f64 {
    10.0 * z
        .iter()
        .map(|v| 1.0 - (2.0 * std::f64::consts::PI * v).cos())
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_osz_fixes_zero_and_keeps_sign() {
        assert_eq!(t_osz(0.0), 0.0);
        assert!(t_osz(2.0) > 0.0);
        assert!(t_osz(-2.0) < 0.0);
        // T_osz(1) = exp(0.049 * (sin 0 + sin 0)) = 1
        assert_eq!(t_osz(1.0), 1.0);
    }

    #[test]
    fn t_osz_is_monotone() {
        let mut prev = t_osz(-50.0);
        for k in -4999..5000 {
            let v = t_osz(k as f64 * 0.01);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn t_asy_leaves_negatives() {
        let mut x = vec![-1.0, -2.0, 4.0];
        t_asy(&mut x, 0.5);
        assert_eq!(&x[..2], &[-1.0, -2.0]);
        // last coordinate: 4^(1 + 0.5 * 1 * 2) = 16
        assert!((x[2] - 16.0).abs() < 1e-12);
    }

    #[test]
    fn penalty_is_zero_inside_box() {
        assert_eq!(f_pen(&[5.0, -5.0, 0.0]), 0.0);
        assert_eq!(f_pen(&[7.0, -6.0]), 5.0);
    }

    #[test]
    fn lambda_endpoints() {
        let l = lambda_diag(100.0, 3);
        assert_eq!(l[0], 1.0);
        assert!((l[2] - 10.0).abs() < 1e-12);
        assert_eq!(lambda_diag(10.0, 1), vec![1.0]);
    }
}
