//! Definitions of the 24 noiseless BBOB functions.
//!
//! Every landscape is stored with its instance parameters already folded
//! into the matrices it needs, so evaluation is a handful of mat-vecs plus
//! the base function. `raw` returns the function value without any target
//! offset; the caller subtracts the value at the optimum.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;

use super::linalg::{random_rotation, Matrix};
use super::transforms::{f_pen, lambda_diag, rastrigin_term, ratio, t_asy, t_osz, t_osz_vec, TINY};

const SCHWEFEL_OPT: f64 = 4.209_687_462_275_036;
const SCHWEFEL_OFFSET: f64 = 4.189_828_872_724_339;
const LUNACEK_MU0: f64 = 2.5;

#[derive(Debug, Clone)]
pub(crate) struct Peak {
    /// Peak center after rotation by R.
    center: Vec<f64>,
    /// Diagonal of C_i.
    scales: Vec<f64>,
    weight: f64,
}

#[derive(Debug, Clone)]
pub(crate) enum Landscape {
    Sphere {
        xopt: Vec<f64>,
    },
    EllipsoidSeparable {
        xopt: Vec<f64>,
        coeffs: Vec<f64>,
    },
    RastriginSeparable {
        xopt: Vec<f64>,
        lambda: Vec<f64>,
    },
    BucheRastrigin {
        xopt: Vec<f64>,
        base: Vec<f64>,
    },
    LinearSlope {
        xopt: Vec<f64>,
        slope: Vec<f64>,
    },
    AttractiveSector {
        xopt: Vec<f64>,
        m: Matrix,
    },
    StepEllipsoid {
        xopt: Vec<f64>,
        lr: Matrix,
        q: Matrix,
        coeffs: Vec<f64>,
    },
    Rosenbrock {
        xopt: Vec<f64>,
        scale: f64,
    },
    RosenbrockRotated {
        scaled_r: Matrix,
    },
    Ellipsoid {
        xopt: Vec<f64>,
        r: Matrix,
        coeffs: Vec<f64>,
    },
    Discus {
        xopt: Vec<f64>,
        r: Matrix,
    },
    BentCigar {
        xopt: Vec<f64>,
        r: Matrix,
    },
    SharpRidge {
        xopt: Vec<f64>,
        m: Matrix,
    },
    DifferentPowers {
        xopt: Vec<f64>,
        r: Matrix,
        exponents: Vec<f64>,
    },
    Rastrigin {
        xopt: Vec<f64>,
        r: Matrix,
        m: Matrix,
    },
    Weierstrass {
        xopt: Vec<f64>,
        r: Matrix,
        m: Matrix,
    },
    Schaffers {
        xopt: Vec<f64>,
        r: Matrix,
        m: Matrix,
    },
    GriewankRosenbrock {
        scaled_r: Matrix,
    },
    Schwefel {
        signs: Vec<f64>,
        lambda: Vec<f64>,
        anchor: Vec<f64>,
    },
    Gallagher {
        r: Matrix,
        peaks: Vec<Peak>,
    },
    Katsuura {
        xopt: Vec<f64>,
        m: Matrix,
    },
    Lunacek {
        signs: Vec<f64>,
        m: Matrix,
        s: f64,
        mu1: f64,
    },
}

fn rosenbrock_scale(dim: usize) -> f64 {
    ((dim as f64).sqrt() / 8.0).max(1.0)
}

fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn weighted_squares(z: &[f64], coeffs: &[f64]) -> f64 {
    z.iter().zip(coeffs).map(|(v, c)| c * v * v).sum()
}

fn rosenbrock_sum(z: &[f64]) -> f64 {
    z.windows(2)
        .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

/// `sum_{k=0}^{11} 2^-k cos(2 pi 3^k (z + 1/2))`
fn weierstrass_sum(z: f64) -> f64 {
    let mut amp = 1.0;
    let mut freq = 1.0;
    let mut acc = 0.0;
    for _ in 0..12 {
        acc += amp * (2.0 * PI * freq * (z + 0.5)).cos();
        amp *= 0.5;
        freq *= 3.0;
    }
    acc
}

fn schaffers_core(z: &[f64]) -> f64 {
    if z.len() < 2 {
        return 0.0;
    }
    let mean = z
        .windows(2)
        .map(|w| {
            let s = (w[0] * w[0] + w[1] * w[1]).sqrt();
            let root = s.sqrt();
            root + root * (50.0 * s.max(TINY).powf(0.2)).sin().powi(2)
        })
        .sum::<f64>()
        / (z.len() - 1) as f64;
    mean * mean
}

fn gallagher_peaks<R: Rng + ?Sized>(
    rng: &mut R,
    r: &Matrix,
    dim: usize,
    n_peaks: usize,
    first_condition: f64,
    half_width: f64,
) -> Vec<Peak> {
    let others = n_peaks - 1;
    let mut condition_exponents: Vec<usize> = (0..others).collect();
    condition_exponents.shuffle(rng);
    let mut peaks = Vec::with_capacity(n_peaks);
    for i in 0..n_peaks {
        let (weight, alpha, width) = if i == 0 {
            (10.0, first_condition, 0.8 * half_width)
        } else {
            let j = condition_exponents[i - 1] as f64;
            let weight = 1.1 + 8.0 * (i - 1) as f64 / (others - 1) as f64;
            (weight, 1000f64.powf(2.0 * j / (others - 1) as f64), half_width)
        };
        let y: Vec<f64> = (0..dim).map(|_| rng.random_range(-width..=width)).collect();
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(rng);
        let scales = perm.iter().map(|&p| alpha.powf(0.5 * ratio(p, dim) - 0.25)).collect();
        peaks.push(Peak {
            center: r.apply(&y),
            scales,
            weight,
        });
    }
    peaks
}

impl Landscape {
    /// Draws the instance parameters for function `fid` and returns the
    /// landscape together with the location of its global optimum.
    pub(crate) fn build<R: Rng + ?Sized>(fid: u32, dim: usize, rng: &mut R) -> (Landscape, Vec<f64>) {
        let uniform_opt: Vec<f64> = (0..dim).map(|_| rng.random_range(-4.0..=4.0)).collect();
        let signs: Vec<f64> = (0..dim)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let r = random_rotation(rng, dim);
        let q = random_rotation(rng, dim);
        let cond = |alpha: f64| lambda_diag(alpha, dim);
        let pow_coeffs = |e: f64| -> Vec<f64> { (0..dim).map(|i| 10f64.powf(e * ratio(i, dim))).collect() };
        // Q * diag(l) * R
        let qlr = |alpha: f64| q.scale_cols(&cond(alpha)).compose(&r);

        let xopt = uniform_opt.clone();
        let landscape = match fid {
            1 => Landscape::Sphere { xopt },
            2 => Landscape::EllipsoidSeparable {
                xopt,
                coeffs: pow_coeffs(6.0),
            },
            3 => Landscape::RastriginSeparable {
                xopt,
                lambda: cond(10.0),
            },
            4 => {
                let xopt = xopt
                    .iter()
                    .enumerate()
                    .map(|(i, v)| if i % 2 == 0 { v.abs() } else { *v })
                    .collect();
                Landscape::BucheRastrigin {
                    xopt,
                    base: pow_coeffs(0.5),
                }
            }
            5 => {
                let xopt: Vec<f64> = signs.iter().map(|s| 5.0 * s).collect();
                let slope = (0..dim).map(|i| signs[i] * 10f64.powf(ratio(i, dim))).collect();
                Landscape::LinearSlope { xopt, slope }
            }
            6 => Landscape::AttractiveSector { xopt, m: qlr(10.0) },
            7 => Landscape::StepEllipsoid {
                xopt,
                lr: r.scale_rows(&cond(10.0)),
                q: q.clone(),
                coeffs: pow_coeffs(2.0),
            },
            8 => Landscape::Rosenbrock {
                xopt: xopt.iter().map(|v| 0.75 * v).collect(),
                scale: rosenbrock_scale(dim),
            },
            9 | 19 => {
                let scale = rosenbrock_scale(dim);
                let scaled_r = r.scale_rows(&vec![scale; dim]);
                // c R x + 1/2 = 1  <=>  x = R^T (1 / 2c)
                let opt = r.apply_transposed(&vec![0.5 / scale; dim]);
                let l = if fid == 9 {
                    Landscape::RosenbrockRotated { scaled_r }
                } else {
                    Landscape::GriewankRosenbrock { scaled_r }
                };
                return (l, opt);
            }
            10 => Landscape::Ellipsoid {
                xopt,
                r: r.clone(),
                coeffs: pow_coeffs(6.0),
            },
            11 => Landscape::Discus { xopt, r: r.clone() },
            12 => Landscape::BentCigar { xopt, r: r.clone() },
            13 => Landscape::SharpRidge { xopt, m: qlr(10.0) },
            14 => Landscape::DifferentPowers {
                xopt,
                r: r.clone(),
                exponents: (0..dim).map(|i| 2.0 + 4.0 * ratio(i, dim)).collect(),
            },
            15 => Landscape::Rastrigin {
                xopt,
                r: r.clone(),
                m: r.scale_cols(&cond(10.0)).compose(&q),
            },
            16 => Landscape::Weierstrass {
                xopt,
                r: r.clone(),
                m: r.scale_cols(&cond(0.01)).compose(&q),
            },
            17 | 18 => {
                let alpha = if fid == 17 { 10.0 } else { 1000.0 };
                Landscape::Schaffers {
                    xopt,
                    r: r.clone(),
                    m: q.scale_rows(&cond(alpha)),
                }
            }
            20 => {
                let opt: Vec<f64> = signs.iter().map(|s| 0.5 * SCHWEFEL_OPT * s).collect();
                let l = Landscape::Schwefel {
                    signs: signs.clone(),
                    lambda: cond(10.0),
                    anchor: vec![SCHWEFEL_OPT; dim],
                };
                return (l, opt);
            }
            21 | 22 => {
                let (n_peaks, first_condition, half_width) = if fid == 21 {
                    (101, 1000.0, 5.0)
                } else {
                    (21, 1.0e6, 4.9)
                };
                let peaks = gallagher_peaks(rng, &r, dim, n_peaks, first_condition, half_width);
                let opt = r.apply_transposed(&peaks[0].center);
                return (Landscape::Gallagher { r: r.clone(), peaks }, opt);
            }
            23 => Landscape::Katsuura { xopt, m: qlr(100.0) },
            24 => {
                let d = dim as f64;
                let s = 1.0 - 1.0 / (2.0 * (d + 20.0).sqrt() - 8.2);
                let mu1 = -((LUNACEK_MU0 * LUNACEK_MU0 - 1.0) / s).sqrt();
                let opt = signs.iter().map(|v| 0.5 * LUNACEK_MU0 * v).collect();
                let l = Landscape::Lunacek {
                    signs: signs.clone(),
                    m: qlr(100.0),
                    s,
                    mu1,
                };
                return (l, opt);
            }
            _ => unreachable!("fid validated by caller"),
        };
        let opt = landscape.shift().to_vec();
        (landscape, opt)
    }

    fn shift(&self) -> &[f64] {
        match self {
            Landscape::Sphere { xopt }
            | Landscape::EllipsoidSeparable { xopt, .. }
            | Landscape::RastriginSeparable { xopt, .. }
            | Landscape::BucheRastrigin { xopt, .. }
            | Landscape::LinearSlope { xopt, .. }
            | Landscape::AttractiveSector { xopt, .. }
            | Landscape::StepEllipsoid { xopt, .. }
            | Landscape::Rosenbrock { xopt, .. }
            | Landscape::Ellipsoid { xopt, .. }
            | Landscape::Discus { xopt, .. }
            | Landscape::BentCigar { xopt, .. }
            | Landscape::SharpRidge { xopt, .. }
            | Landscape::DifferentPowers { xopt, .. }
            | Landscape::Rastrigin { xopt, .. }
            | Landscape::Weierstrass { xopt, .. }
            | Landscape::Schaffers { xopt, .. }
            | Landscape::Katsuura { xopt, .. } => xopt,
            _ => unreachable!("optimum of this landscape is not a plain shift"),
        }
    }

    /// Function value with the BBOB target offset removed.
    pub(crate) fn raw(&self, x: &[f64]) -> f64 {
        let dim = x.len();
        let d = dim as f64;
        match self {
            Landscape::Sphere { xopt } => x.iter().zip(xopt).map(|(a, b)| (a - b) * (a - b)).sum(),
            Landscape::EllipsoidSeparable { xopt, coeffs } => {
                let mut z = sub(x, xopt);
                t_osz_vec(&mut z);
                weighted_squares(&z, coeffs)
            }
            Landscape::RastriginSeparable { xopt, lambda } => {
                let mut z = sub(x, xopt);
                t_osz_vec(&mut z);
                t_asy(&mut z, 0.2);
                for (v, l) in z.iter_mut().zip(lambda) {
                    *v *= l;
                }
                rastrigin_term(&z) + z.iter().map(|v| v * v).sum::<f64>()
            }
            Landscape::BucheRastrigin { xopt, base } => {
                let z: Vec<f64> = x
                    .iter()
                    .zip(xopt)
                    .zip(base)
                    .enumerate()
                    .map(|(i, ((a, b), s))| {
                        let t = t_osz(a - b);
                        if t > 0.0 && i % 2 == 0 {
                            10.0 * s * t
                        } else {
                            s * t
                        }
                    })
                    .collect();
                rastrigin_term(&z) + z.iter().map(|v| v * v).sum::<f64>() + 100.0 * f_pen(x)
            }
            Landscape::LinearSlope { xopt, slope } => x
                .iter()
                .zip(xopt)
                .zip(slope)
                .map(|((&xi, &oi), &si)| {
                    let z = if xi * oi < 25.0 { xi } else { oi };
                    5.0 * si.abs() - si * z
                })
                .sum(),
            Landscape::AttractiveSector { xopt, m } => {
                let z = m.apply(&sub(x, xopt));
                let s: f64 = z
                    .iter()
                    .zip(xopt)
                    .map(|(v, o)| if v * o > 0.0 { 1e4 * v * v } else { v * v })
                    .sum();
                t_osz(s).powf(0.9)
            }
            Landscape::StepEllipsoid { xopt, lr, q, coeffs } => {
                let zh = lr.apply(&sub(x, xopt));
                let zt: Vec<f64> = zh
                    .iter()
                    .map(|&v| {
                        if v.abs() > 0.5 {
                            (0.5 + v).floor()
                        } else {
                            (0.5 + 10.0 * v).floor() / 10.0
                        }
                    })
                    .collect();
                let z = q.apply(&zt);
                0.1 * (zh[0].abs() / 1e4).max(weighted_squares(&z, coeffs)) + f_pen(x)
            }
            Landscape::Rosenbrock { xopt, scale } => {
                let z: Vec<f64> = x.iter().zip(xopt).map(|(a, b)| scale * (a - b) + 1.0).collect();
                rosenbrock_sum(&z)
            }
            Landscape::RosenbrockRotated { scaled_r } => {
                let z: Vec<f64> = scaled_r.apply(x).into_iter().map(|v| v + 0.5).collect();
                rosenbrock_sum(&z)
            }
            Landscape::Ellipsoid { xopt, r, coeffs } => {
                let mut z = r.apply(&sub(x, xopt));
                t_osz_vec(&mut z);
                weighted_squares(&z, coeffs)
            }
            Landscape::Discus { xopt, r } => {
                let mut z = r.apply(&sub(x, xopt));
                t_osz_vec(&mut z);
                1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>()
            }
            Landscape::BentCigar { xopt, r } => {
                let mut z = r.apply(&sub(x, xopt));
                t_asy(&mut z, 0.5);
                let z = r.apply(&z);
                z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
            }
            Landscape::SharpRidge { xopt, m } => {
                let z = m.apply(&sub(x, xopt));
                z[0] * z[0] + 100.0 * z[1..].iter().map(|v| v * v).sum::<f64>().sqrt()
            }
            Landscape::DifferentPowers { xopt, r, exponents } => {
                let z = r.apply(&sub(x, xopt));
                z.iter()
                    .zip(exponents)
                    .map(|(v, e)| v.abs().powf(*e))
                    .sum::<f64>()
                    .sqrt()
            }
            Landscape::Rastrigin { xopt, r, m } => {
                let mut z = r.apply(&sub(x, xopt));
                t_osz_vec(&mut z);
                t_asy(&mut z, 0.2);
                let z = m.apply(&z);
                rastrigin_term(&z) + z.iter().map(|v| v * v).sum::<f64>()
            }
            Landscape::Weierstrass { xopt, r, m } => {
                let mut z = r.apply(&sub(x, xopt));
                t_osz_vec(&mut z);
                let z = m.apply(&z);
                let f0 = weierstrass_sum(0.0);
                let mean = z.iter().map(|&v| weierstrass_sum(v) - f0).sum::<f64>() / d;
                10.0 * mean.powi(3) + 10.0 / d * f_pen(x)
            }
            Landscape::Schaffers { xopt, r, m } => {
                let mut z = r.apply(&sub(x, xopt));
                t_asy(&mut z, 0.5);
                let z = m.apply(&z);
                schaffers_core(&z) + 10.0 * f_pen(x)
            }
            Landscape::GriewankRosenbrock { scaled_r } => {
                if dim < 2 {
                    return 0.0;
                }
                let z: Vec<f64> = scaled_r.apply(x).into_iter().map(|v| v + 0.5).collect();
                let acc: f64 = z
                    .windows(2)
                    .map(|w| {
                        let s = 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2);
                        s / 4000.0 + (1.0 - s.cos())
                    })
                    .sum();
                10.0 / (d - 1.0) * acc
            }
            Landscape::Schwefel { signs, lambda, anchor } => {
                let xh: Vec<f64> = x.iter().zip(signs).map(|(v, s)| 2.0 * s * v).collect();
                let mut zh = xh.clone();
                for i in 1..dim {
                    zh[i] += 0.25 * (xh[i - 1] - anchor[i - 1]);
                }
                let z: Vec<f64> = zh
                    .iter()
                    .zip(lambda)
                    .zip(anchor)
                    .map(|((v, l), a)| 100.0 * (l * (v - a) + a))
                    .collect();
                let core = -z.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>() / (100.0 * d);
                let scaled: Vec<f64> = z.iter().map(|v| v / 100.0).collect();
                core + SCHWEFEL_OFFSET + 100.0 * f_pen(&scaled)
            }
            Landscape::Gallagher { r, peaks } => {
                let rx = r.apply(x);
                let best = peaks
                    .iter()
                    .map(|p| {
                        let q: f64 = rx
                            .iter()
                            .zip(&p.center)
                            .zip(&p.scales)
                            .map(|((a, b), c)| c * (a - b) * (a - b))
                            .sum();
                        p.weight * (-q / (2.0 * d)).exp()
                    })
                    .fold(0.0, f64::max);
                t_osz(10.0 - best).powi(2) + f_pen(x)
            }
            Landscape::Katsuura { xopt, m } => {
                let z = m.apply(&sub(x, xopt));
                let exponent = 10.0 / d.powf(1.2);
                let prod: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let mut pow2 = 1.0;
                        let mut acc = 0.0;
                        for _ in 0..32 {
                            pow2 *= 2.0;
                            let t = pow2 * v;
                            acc += (t - t.round()).abs() / pow2;
                        }
                        (1.0 + (i + 1) as f64 * acc).powf(exponent)
                    })
                    .product();
                10.0 / (d * d) * (prod - 1.0) + f_pen(x)
            }
            Landscape::Lunacek { signs, m, s, mu1 } => {
                let xh: Vec<f64> = x.iter().zip(signs).map(|(v, g)| 2.0 * g * v).collect();
                let near: f64 = xh.iter().map(|v| (v - LUNACEK_MU0).powi(2)).sum();
                let far: f64 = d + s * xh.iter().map(|v| (v - mu1).powi(2)).sum::<f64>();
                let centered: Vec<f64> = xh.iter().map(|v| v - LUNACEK_MU0).collect();
                let z = m.apply(&centered);
                near.min(far) + rastrigin_term(&z) + 1e4 * f_pen(x)
            }
        }
    }
}
