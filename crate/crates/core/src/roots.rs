//! Polynomial root finding sized for partition functions: simultaneous
//! Aberth iteration on exponent-scaled arithmetic, Newton-polygon starting
//! points, a companion-matrix fallback for stubborn low-degree cases, and
//! an exact-coefficient Newton polish for high-degree integer polynomials.

use crate::bigfloat::BigComplex;
use crate::error::{Error, Result};
use crate::expnum::{ExpComplex, ExpReal};
use crate::poly::{bigint_to_scaled, IntPoly};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct RootOptions {
    pub max_sweeps: usize,
    /// Accept a point once `|p(z)| <= residual_factor * sum_k |c_k| |z|^k`.
    pub residual_factor: f64,
    /// Re-run Newton on the exact integer coefficients afterwards. Worth it
    /// once coefficients no longer fit a double mantissa.
    pub polish: bool,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            max_sweeps: 400,
            residual_factor: 1e-12,
            polish: false,
        }
    }
}

/// All complex roots, with multiplicity, of an integer polynomial.
pub fn roots_int(p: &IntPoly, opts: &RootOptions) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::input("zero polynomial has no well-defined roots"));
    }
    let coeffs: Vec<ExpComplex> = p
        .coeffs()
        .iter()
        .map(|c| {
            let (m, e) = bigint_to_scaled(c);
            ExpComplex::from_scaled(m, e)
        })
        .collect();
    let mut roots = solve_scaled(&coeffs, opts)?;
    if opts.polish {
        polish_roots_int(p, &mut roots, 3);
    }
    Ok(roots)
}

/// All complex roots, with multiplicity, of a polynomial given by ascending
/// double-precision complex coefficients.
pub fn roots_complex(coeffs: &[Complex64], opts: &RootOptions) -> Result<Vec<Complex64>> {
    let mut trimmed: Vec<ExpComplex> = coeffs.iter().map(|&c| ExpComplex::from_complex(c)).collect();
    while trimmed.last().map_or(false, |c| c.is_zero()) {
        trimmed.pop();
    }
    if trimmed.is_empty() {
        return Err(Error::input("zero polynomial has no well-defined roots"));
    }
    solve_scaled(&trimmed, opts)
}

fn solve_scaled(coeffs: &[ExpComplex], opts: &RootOptions) -> Result<Vec<Complex64>> {
    debug_assert!(!coeffs.last().unwrap().is_zero());
    let mut origin = 0;
    while origin < coeffs.len() && coeffs[origin].is_zero() {
        origin += 1;
    }
    let body = &coeffs[origin..];
    let mut roots = vec![Complex64::ZERO; origin];
    let n = body.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(body[0].neg().ratio(&body[1]));
        return Ok(roots);
    }
    let deriv: Vec<ExpComplex> = (1..=n)
        .map(|k| body[k].mul_complex(Complex64::new(k as f64, 0.0)))
        .collect();
    let mut pts = initial_points(body);
    let mut converged = vec![false; n];
    let log_tol = opts.residual_factor.log2();
    for _sweep in 0..opts.max_sweeps {
        let updates: Vec<(Complex64, bool)> = maybe_par(n, |i| {
            if converged[i] {
                return (pts[i], true);
            }
            let z = pts[i];
            let ze = ExpComplex::from_complex(z);
            let (pv, scale) = eval_with_scale(body, ze);
            if pv.log2_norm() <= scale.log2() + log_tol {
                return (z, true);
            }
            let (dv, _) = eval_with_scale(&deriv, ze);
            let newton = if dv.is_zero() {
                Complex64::new(1e-8, 1e-8)
            } else {
                pv.ratio(&dv)
            };
            let mut repulse = Complex64::ZERO;
            for (j, &other) in pts.iter().enumerate() {
                if j != i {
                    let d = z - other;
                    if d.norm_sqr() > 0.0 {
                        repulse += d.inv();
                    }
                }
            }
            let den = Complex64::ONE - newton * repulse;
            let step = if den.norm() < 1e-290 { newton } else { newton / den };
            let mut next = z - step;
            if !next.re.is_finite() || !next.im.is_finite() {
                next = z * Complex64::new(1.0001, 0.0002) + Complex64::new(1e-6, 1e-6);
            }
            (next, step.norm() <= 1e-15 * next.norm().max(1e-300))
        });
        let mut all = true;
        for (i, (z, ok)) in updates.into_iter().enumerate() {
            pts[i] = z;
            converged[i] = ok;
            all &= ok;
        }
        if all {
            roots.extend(pts);
            return Ok(roots);
        }
    }
    if let Some(eigs) = companion_roots(body) {
        roots.extend(eigs);
        return Ok(roots);
    }
    Err(Error::numeric(format!(
        "root iteration failed to settle within {} sweeps on degree {}",
        opts.max_sweeps, n
    )))
}

fn maybe_par<F: Fn(usize) -> (Complex64, bool) + Sync + Send>(n: usize, f: F) -> Vec<(Complex64, bool)> {
    if n >= 128 {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

/// Horner evaluation returning the value together with `sum_k |c_k| |z|^k`,
/// both in scaled form so exponent range is never an issue.
fn eval_with_scale(coeffs: &[ExpComplex], z: ExpComplex) -> (ExpComplex, ExpReal) {
    let zn = ExpReal::from_scaled(z.m.norm(), z.e);
    let mut v = ExpComplex::zero();
    let mut s = ExpReal::zero();
    for c in coeffs.iter().rev() {
        v = v.mul(&z).add(c);
        s = s.mul(&zn).add(&ExpReal::from_scaled(c.m.norm(), c.e));
    }
    (v, s)
}

/// Starting circles from the upper convex hull of `(k, log2 |c_k|)`; each
/// hull segment contributes as many points as its horizontal span, placed
/// at the radius where the segment's endpoint terms balance.
fn initial_points(coeffs: &[ExpComplex]) -> Vec<Complex64> {
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as f64, c.log2_norm()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(coeffs.len() - 1);
    for (si, w) in hull.windows(2).enumerate() {
        let (k1, l1) = w[0];
        let (k2, l2) = w[1];
        let count = (k2 - k1).round() as usize;
        let r = (2f64).powf(((l1 - l2) / (k2 - k1)).clamp(-500.0, 500.0));
        for j in 0..count {
            let theta = std::f64::consts::TAU * (j as f64 + 0.37) / count as f64
                + 1.2345 * si as f64
                + 0.41;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    debug_assert_eq!(out.len(), coeffs.len() - 1);
    out
}

/// Eigenvalues of the companion matrix, usable when the coefficient ratios
/// fit in doubles and the degree is modest.
fn companion_roots(coeffs: &[ExpComplex]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n > 512 {
        return None;
    }
    let top = coeffs[n];
    let ratios: Vec<Complex64> = (0..n).map(|k| coeffs[k].ratio(&top)).collect();
    if ratios
        .iter()
        .any(|r| !r.re.is_finite() || !r.im.is_finite())
    {
        return None;
    }
    let mut m = DMatrix::from_element(n, n, Complex64::ZERO);
    for i in 0..n {
        m[(i, n - 1)] = -ratios[i];
        if i > 0 {
            m[(i, i - 1)] = Complex64::ONE;
        }
    }
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-14, 20000)?;
    let eigs = schur.eigenvalues()?;
    Some(eigs.iter().copied().collect())
}

/// A few Newton steps per root against the exact integer coefficients,
/// removing the error introduced by rounding coefficients to doubles.
pub fn polish_roots_int(p: &IntPoly, roots: &mut [Complex64], iters: usize) {
    let coeffs: Vec<BigComplex> = p.coeffs().iter().map(BigComplex::from_bigint).collect();
    let deriv: Vec<BigComplex> = (1..p.coeffs().len())
        .map(|k| {
            coeffs[k].mul(&BigComplex::from_complex(Complex64::new(k as f64, 0.0)))
        })
        .collect();
    roots.par_iter_mut().for_each(|z| {
        for _ in 0..iters {
            let zb = BigComplex::from_complex(*z);
            let pv = horner_big(&coeffs, &zb);
            let dv = horner_big(&deriv, &zb);
            if dv.norm_sqr().is_zero() {
                return;
            }
            let step = pv.div(&dv).to_complex();
            if !step.re.is_finite() || !step.im.is_finite() {
                return;
            }
            *z -= step;
            if step.norm() <= 1e-15 * z.norm().max(1e-300) {
                return;
            }
        }
    });
}

fn horner_big(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let mut v = BigComplex::zero();
    for c in coeffs.iter().rev() {
        v = v.mul(z).add(c);
    }
    v
}
