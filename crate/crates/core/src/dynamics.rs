//! The one-variable ratio map f(z) = lambda * (1 - (z/(1+z))^b)^d, its
//! multivariate companion, fixed points and multipliers, the curve of
//! parameters with an indifferent fixed point, and the radius of the
//! largest zero-free disk that curve determines.

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::roots::{roots_complex, RootOptions};
use crate::sphere::SphereValue;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

/// Moebius conjugacy w = z/(1+z) sending the ratio coordinate to the
/// occupation-probability coordinate.
pub fn mu(z: Complex64) -> Complex64 {
    z / (Complex64::ONE + z)
}

/// Inverse of [`mu`], z = w/(1-w).
pub fn mu_inv(w: Complex64) -> Complex64 {
    w / (Complex64::ONE - w)
}

#[derive(Clone, Copy, Debug)]
pub struct DynParams {
    pub b: u32,
    pub d: u32,
    pub lambda: Complex64,
}

impl DynParams {
    pub fn new(b: u32, d: u32, lambda: Complex64) -> Result<Self> {
        if b < 1 || d < 1 {
            return Err(Error::input("b and d must both be at least 1"));
        }
        Ok(DynParams { b, d, lambda })
    }
}

/// One application of the map on the Riemann sphere. The pole at z = -1
/// and the zero at infinity are represented explicitly, never as NaN.
pub fn f_eval(p: &DynParams, z: SphereValue) -> SphereValue {
    if p.lambda == Complex64::ZERO {
        return SphereValue::Finite(Complex64::ZERO);
    }
    let z = match z {
        SphereValue::Infinity => return SphereValue::Finite(Complex64::ZERO),
        SphereValue::Finite(z) => z,
    };
    let one_plus = Complex64::ONE + z;
    if one_plus == Complex64::ZERO {
        return SphereValue::Infinity;
    }
    // 1 - mu^b = (1 - mu) * sum_k mu^k with 1 - mu = 1/(1+z); this form has
    // no cancellation for large |z| and degrades gracefully near the pole
    let m = z / one_plus;
    let mut s = Complex64::ONE;
    let mut pw = Complex64::ONE;
    for _ in 1..p.b {
        pw *= m;
        s += pw;
    }
    let val = p.lambda * (s / one_plus).powu(p.d);
    if val.re.is_finite() && val.im.is_finite() {
        SphereValue::Finite(val)
    } else {
        SphereValue::Infinity
    }
}

/// Derivative of the map at a finite point away from the pole and from the
/// zeros of (1+z)^b - z^b; callers are expected to stay in that region.
pub fn f_prime(p: &DynParams, z: Complex64) -> Complex64 {
    let one_plus = Complex64::ONE + z;
    let a = one_plus.powu(p.b) - z.powu(p.b);
    let fv = match f_eval(p, SphereValue::Finite(z)) {
        SphereValue::Finite(v) => v,
        SphereValue::Infinity => return Complex64::new(f64::INFINITY, 0.0),
    };
    -Complex64::new((p.b * p.d) as f64, 0.0) * z.powu(p.b - 1) / (one_plus * a) * fv
}

/// Multivariate form: lambda * prod_i (1 - prod_j v[i][j]/(1+v[i][j])).
/// One vector per branch; branch count must equal d, branch sizes are free.
pub fn big_f_eval(p: &DynParams, branches: &[Vec<Complex64>]) -> Result<Complex64> {
    if branches.len() != p.d as usize {
        return Err(Error::input(format!(
            "expected {} branches, got {}",
            p.d,
            branches.len()
        )));
    }
    let mut acc = p.lambda;
    for branch in branches {
        if branch.is_empty() {
            return Err(Error::input("empty branch"));
        }
        let mut prod = Complex64::ONE;
        for &v in branch {
            let one_plus = Complex64::ONE + v;
            if one_plus == Complex64::ZERO {
                return Err(Error::numeric("branch value -1 is a pole of the map"));
            }
            prod *= v / one_plus;
        }
        acc *= Complex64::ONE - prod;
    }
    Ok(acc)
}

/// Parameter with fixed point at z = w/(1-w): lambda = (1-w^b)^{-d} w/(1-w).
pub fn lambda_of_w(b: u32, d: u32, w: Complex64) -> Result<Complex64> {
    let den1 = Complex64::ONE - w;
    let denb = Complex64::ONE - w.powu(b);
    if den1 == Complex64::ZERO || denb == Complex64::ZERO {
        return Err(Error::numeric("w is a pole of the parameter map"));
    }
    Ok(denb.powi(-(d as i32)) * w / den1)
}

/// Multiplier at that fixed point: alpha = -bd w^b (1-w) / (1-w^b).
pub fn multiplier_of_w(b: u32, d: u32, w: Complex64) -> Result<Complex64> {
    let denb = Complex64::ONE - w.powu(b);
    if denb == Complex64::ZERO {
        return Err(Error::numeric("w is a pole of the multiplier map"));
    }
    Ok(-Complex64::new((b * d) as f64, 0.0) * w.powu(b) * (Complex64::ONE - w) / denb)
}

#[derive(Clone, Copy, Debug)]
pub struct FixedPointRecord {
    pub z: Complex64,
    pub multiplier: Complex64,
    pub w: Complex64,
}

/// (1+z)^b - z^b as an exact integer polynomial (degree b-1).
fn survivor_poly(b: u32) -> IntPoly {
    let mut c = IntPoly::from_i64(&[1, 1]).pow(b as usize);
    let mut coeffs = c.coeffs().to_vec();
    coeffs[b as usize] -= BigInt::from(1);
    c = IntPoly::from_coeffs(coeffs);
    c
}

/// All fixed points of the map, as roots of
/// lambda ((1+z)^b - z^b)^d - z (1+z)^{bd}, with multipliers.
pub fn fixed_points(p: &DynParams) -> Result<Vec<FixedPointRecord>> {
    if p.lambda == Complex64::ZERO {
        return Err(Error::input("fixed point solve needs lambda != 0"));
    }
    let ad = survivor_poly(p.b).pow(p.d as usize);
    let mut shifted = vec![BigInt::zero()];
    shifted.extend(IntPoly::from_i64(&[1, 1]).pow((p.b * p.d) as usize).coeffs().to_vec());
    let bz = IntPoly::from_coeffs(shifted);
    let deg = (p.b * p.d + 1) as usize;
    let mut coeffs = vec![Complex64::ZERO; deg + 1];
    for (k, c) in ad.coeffs().iter().enumerate() {
        coeffs[k] += p.lambda * crate::poly::bigint_to_f64(c);
    }
    for (k, c) in bz.coeffs().iter().enumerate() {
        coeffs[k] -= crate::poly::bigint_to_f64(c);
    }
    let mut zs = roots_complex(&coeffs, &RootOptions::default())?;
    newton_polish_complex(&coeffs, &mut zs, 3);
    let mut out = Vec::with_capacity(zs.len());
    for z in zs {
        let fv = match f_eval(p, SphereValue::Finite(z)) {
            SphereValue::Finite(v) => v,
            SphereValue::Infinity => {
                return Err(Error::numeric(format!(
                    "fixed point candidate {z} evaluates to the pole"
                )))
            }
        };
        let resid = (fv - z).norm();
        if resid > 1e-9 * z.norm().max(1.0) {
            return Err(Error::numeric(format!(
                "fixed point candidate {z} has residual {resid:.3e}"
            )));
        }
        out.push(FixedPointRecord {
            z,
            multiplier: f_prime(p, z),
            w: mu(z),
        });
    }
    Ok(out)
}

fn newton_polish_complex(coeffs: &[Complex64], roots: &mut [Complex64], iters: usize) {
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let horner = |cs: &[Complex64], z: Complex64| {
        cs.iter().rev().fold(Complex64::ZERO, |acc, &c| acc * z + c)
    };
    for z in roots.iter_mut() {
        for _ in 0..iters {
            let dv = horner(&deriv, *z);
            if dv == Complex64::ZERO {
                break;
            }
            let step = horner(coeffs, *z) / dv;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *z -= step;
            if step.norm() <= 1e-16 * z.norm().max(1e-300) {
                break;
            }
        }
    }
}

/// Indifference condition -bd w^b (1-w) = alpha (1-w^b), rearranged to
/// bd w^{b+1} + (alpha - bd) w^b - alpha, always has the spurious root
/// w = 1; exact synthetic division leaves bd w^b + alpha (w^{b-1}+...+1).
fn indifference_quotient(b: u32, d: u32, alpha: Complex64) -> Vec<Complex64> {
    let mut coeffs = vec![alpha; b as usize];
    coeffs.push(Complex64::new((b * d) as f64, 0.0));
    coeffs
}

#[derive(Clone, Copy, Debug)]
pub struct IndifferentPoint {
    pub theta: f64,
    pub branch: usize,
    pub w: Complex64,
    pub lambda: SphereValue,
}

/// For each angle theta, the b parameters whose fixed point has multiplier
/// e^{i theta}. Branches are ordered by continuity along the grid.
pub fn indifferent_curve(b: u32, d: u32, thetas: &[f64]) -> Result<Vec<IndifferentPoint>> {
    let root_sets: Vec<Vec<Complex64>> = thetas
        .par_iter()
        .map(|&theta| {
            let alpha = Complex64::from_polar(1.0, theta);
            roots_complex(&indifference_quotient(b, d, alpha), &RootOptions::default())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(thetas.len() * b as usize);
    let mut prev: Option<Vec<Complex64>> = None;
    for (ti, roots) in root_sets.into_iter().enumerate() {
        let ordered = match &prev {
            None => {
                let mut r = roots;
                r.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
                r
            }
            Some(p) => {
                let mut used = vec![false; roots.len()];
                let mut r = Vec::with_capacity(roots.len());
                for &anchor in p {
                    let (j, _) = roots
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| !used[*j])
                        .min_by(|(_, a), (_, b)| {
                            (*a - anchor)
                                .norm()
                                .partial_cmp(&(*b - anchor).norm())
                                .unwrap()
                        })
                        .unwrap();
                    used[j] = true;
                    r.push(roots[j]);
                }
                r
            }
        };
        for (branch, &w) in ordered.iter().enumerate() {
            let lambda = match lambda_of_w(b, d, w) {
                Ok(l) => SphereValue::Finite(l),
                Err(_) => SphereValue::Infinity,
            };
            out.push(IndifferentPoint {
                theta: thetas[ti],
                branch,
                w,
                lambda,
            });
        }
        prev = Some(ordered);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct RhoResult {
    pub rho: f64,
    pub w: Complex64,
    pub lambda: Complex64,
}

/// Radius of the largest disk around 0 free of partition-function zeros of
/// linear hypertrees with edge size b+1 and degree d+1: the smallest |lambda|
/// over fixed points with multiplier exactly 1 (the root w = 1 excluded).
pub fn rho(b: u32, d: u32) -> Result<RhoResult> {
    if b < 1 || d < 1 {
        return Err(Error::input("b and d must both be at least 1"));
    }
    let roots = roots_complex(
        &indifference_quotient(b, d, Complex64::ONE),
        &RootOptions::default(),
    )?;
    let mut best: Option<RhoResult> = None;
    for w in roots {
        let lambda = lambda_of_w(b, d, w)?;
        let cand = RhoResult {
            rho: lambda.norm(),
            w,
            lambda,
        };
        best = Some(match best {
            None => cand,
            Some(cur) => {
                if cand.rho < cur.rho - 1e-12
                    || (cand.rho < cur.rho + 1e-12 && cand.w.im > cur.w.im)
                {
                    cand
                } else {
                    cur
                }
            }
        });
    }
    best.ok_or_else(|| Error::numeric("indifference quotient produced no roots"))
}

/// Leading behaviour (e b d)^{-1/b} of the disk radius for large d.
pub fn rho_asymptotic(b: u32, d: u32) -> f64 {
    (std::f64::consts::E * b as f64 * d as f64).powf(-1.0 / b as f64)
}

#[derive(Clone, Debug)]
pub struct CriticalOrbit {
    pub start: SphereValue,
    /// Applications of the map needed to land on lambda.
    pub hit_step: usize,
    pub orbit: Vec<SphereValue>,
}

/// Every critical point of the map falls on lambda within three steps:
/// 0 -> lambda; points with mu(z)^b = 1 -> 0 -> lambda (infinity included);
/// -1 -> infinity -> 0 -> lambda. Verifies this numerically.
pub fn critical_orbit_check(p: &DynParams) -> Result<Vec<CriticalOrbit>> {
    if p.lambda == Complex64::ZERO {
        return Err(Error::input("critical orbit check needs lambda != 0"));
    }
    let mut starts = vec![SphereValue::Finite(Complex64::ZERO)];
    for k in 1..p.b {
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / p.b as f64);
        starts.push(SphereValue::Finite(mu_inv(omega)));
    }
    starts.push(SphereValue::Infinity);
    starts.push(SphereValue::Finite(Complex64::new(-1.0, 0.0)));
    let tol = 1e-9 * p.lambda.norm().max(1.0);
    let mut out = Vec::with_capacity(starts.len());
    for start in starts {
        let mut orbit = vec![start];
        let mut hit = None;
        for step in 1..=3 {
            let next = f_eval(p, *orbit.last().unwrap());
            orbit.push(next);
            if let SphereValue::Finite(v) = next {
                if (v - p.lambda).norm() <= tol {
                    hit = Some(step);
                    break;
                }
            }
        }
        match hit {
            Some(hit_step) => out.push(CriticalOrbit {
                start,
                hit_step,
                orbit,
            }),
            None => {
                return Err(Error::theorem_violation(format!(
                    "critical point {start:?} missed lambda within 3 steps"
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// lambda, f(lambda), ..., f^m(lambda).
    pub points: Vec<SphereValue>,
    /// Indices of points within 1e-9 of -1; such a hit witnesses a
    /// partition-function zero of the corresponding tree level.
    pub minus_one_hits: Vec<usize>,
}

pub fn orbit_from_lambda(p: &DynParams, m: usize) -> Orbit {
    let mut points = Vec::with_capacity(m + 1);
    points.push(SphereValue::Finite(p.lambda));
    for _ in 0..m {
        let next = f_eval(p, *points.last().unwrap());
        points.push(next);
    }
    let minus_one_hits = points
        .iter()
        .enumerate()
        .filter_map(|(i, v)| match v {
            SphereValue::Finite(z) if (z + Complex64::ONE).norm() <= 1e-9 => Some(i),
            _ => None,
        })
        .collect();
    Orbit {
        points,
        minus_one_hits,
    }
}

#[derive(Clone, Debug)]
pub struct DiskArgmax {
    pub maximizers: Vec<Complex64>,
    pub value: f64,
}

pub(crate) fn golden_max(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    for _ in 0..90 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, g(mid))
}

/// Maximizers of |z^n - 1| over the disk centered at c < 0 with radius
/// r > |c|. The maximum sits on the boundary; the structure is rigid: for
/// odd n the unique maximizer is the leftmost point c - r, for even n it
/// is either that point or a conjugate pair.
pub fn disk_argmax(c: f64, r: f64, n: u32) -> Result<DiskArgmax> {
    if !(c < 0.0) || c.abs() >= r {
        return Err(Error::input(
            "need a disk with negative real center containing the origin",
        ));
    }
    let g = |theta: f64| {
        (Complex64::new(c, 0.0) + Complex64::from_polar(r, theta)).powu(n) - Complex64::ONE
    };
    let gv = |theta: f64| g(theta).norm();
    let m = (64 * n as usize).max(1024);
    let step = std::f64::consts::TAU / m as f64;
    let samples: Vec<f64> = (0..m).map(|i| gv(i as f64 * step)).collect();
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for i in 0..m {
        let prev = samples[(i + m - 1) % m];
        let next = samples[(i + 1) % m];
        if samples[i] >= prev && samples[i] >= next {
            let lo = (i as f64 - 1.0) * step;
            let hi = (i as f64 + 1.0) * step;
            candidates.push(golden_max(lo, hi, gv));
        }
    }
    let gmax = candidates.iter().map(|&(_, v)| v).fold(f64::MIN, f64::max);
    let mut thetas: Vec<f64> = candidates
        .into_iter()
        .filter(|&(_, v)| v >= gmax - 1e-9 * gmax.max(1.0))
        .map(|(t, _)| t.rem_euclid(std::f64::consts::TAU))
        .collect();
    thetas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut reps: Vec<f64> = Vec::new();
    for t in thetas {
        let dup = reps.iter().any(|&u| {
            let d = (t - u).abs();
            d.min(std::f64::consts::TAU - d) < 1e-6
        });
        if !dup {
            reps.push(t);
        }
    }
    let maximizers: Vec<Complex64> = reps
        .iter()
        .map(|&t| Complex64::new(c, 0.0) + Complex64::from_polar(r, t))
        .collect();
    let z0 = Complex64::new(c - r, 0.0);
    let near_z0 =
        |z: Complex64| (z - z0).norm() <= 1e-5 * (1.0 + r);
    let ok = if n % 2 == 1 {
        maximizers.len() == 1 && near_z0(maximizers[0])
    } else {
        match maximizers.len() {
            1 => near_z0(maximizers[0]),
            2 => {
                (maximizers[0] - maximizers[1].conj()).norm() <= 1e-5 * (1.0 + r)
            }
            _ => false,
        }
    };
    if !ok {
        return Err(Error::theorem_violation(format!(
            "maximizer structure of |z^{n} - 1| on disk(c={c}, r={r}) violated: {maximizers:?}"
        )));
    }
    Ok(DiskArgmax {
        maximizers,
        value: gmax,
    })
}

/// Largest R < 1 with f(B_R) inside B_R, located by scanning and bisection;
/// None when no radius works, which happens exactly when |lambda| exceeds
/// the zero-free disk radius. The boundary maximum of |f| reduces through
/// w = mu(z) to a disk_argmax query, because mu maps B_R onto the disk with
/// center -R^2/(1-R^2) and radius R/(1-R^2).
pub fn maximal_invariant_disk(b: u32, d: u32, lambda: Complex64) -> Result<Option<f64>> {
    let la = lambda.norm();
    let lo = la.max(1e-6);
    let hi = 1.0 - 1e-6;
    if lo >= hi {
        return Ok(None);
    }
    // slack(R) = max_{|z|=R} |f(z)| - R; feasible means slack <= 1e-10.
    // At |lambda| equal to the critical radius the slack is tangent to 0
    // from above, so locate its minimum first instead of scanning for
    // feasible points directly.
    let slack = |r_disk: f64| -> f64 {
        let c = -r_disk * r_disk / (1.0 - r_disk * r_disk);
        let rad = r_disk / (1.0 - r_disk * r_disk);
        let v = match disk_argmax(c, rad, b) {
            Ok(a) => a.value,
            Err(_) => return f64::INFINITY,
        };
        la * v.powi(d as i32) - r_disk
    };
    let tol = 1e-10;
    let grid = 256;
    let at = |i: usize| lo + (hi - lo) * i as f64 / grid as f64;
    let (imin, _) = (0..=grid)
        .map(|i| (i, slack(at(i))))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    let bracket_lo = at(imin.saturating_sub(1));
    let bracket_hi = at((imin + 1).min(grid));
    let (mut best_r, best_slack) = golden_max(bracket_lo, bracket_hi, |r| -slack(r));
    let best_slack = -best_slack;
    if best_slack > tol {
        return Ok(None);
    }
    if slack(hi) <= tol {
        return Ok(Some(hi));
    }
    // push to the right edge of the feasible window
    let mut bad = hi;
    for _ in 0..70 {
        let mid = 0.5 * (best_r + bad);
        if slack(mid) <= tol {
            best_r = mid;
        } else {
            bad = mid;
        }
    }
    Ok(Some(best_r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn fin(v: SphereValue) -> Complex64 {
        match v {
            SphereValue::Finite(z) => z,
            SphereValue::Infinity => panic!("unexpected infinity"),
        }
    }

    fn lambda_shearer(delta: u32) -> f64 {
        let dm = (delta - 1) as f64;
        dm.powi(delta as i32 - 1) / (delta as f64).powi(delta as i32)
    }

    #[test]
    fn map_special_values() {
        let p = DynParams::new(3, 2, Complex64::new(0.4, 0.7)).unwrap();
        assert_eq!(fin(f_eval(&p, SphereValue::Finite(Complex64::ZERO))), p.lambda);
        assert_eq!(fin(f_eval(&p, SphereValue::Infinity)), Complex64::ZERO);
        assert!(matches!(
            f_eval(&p, SphereValue::Finite(Complex64::new(-1.0, 0.0))),
            SphereValue::Infinity
        ));
        let q = DynParams::new(1, 2, Complex64::new(4.0, 0.0)).unwrap();
        let at_one = fin(f_eval(&q, SphereValue::Finite(Complex64::ONE)));
        assert!((at_one - Complex64::ONE).norm() < 1e-14);
    }

    #[test]
    fn map_matches_naive_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let b = rng.gen_range(1..=5);
            let d = rng.gen_range(1..=4);
            let lambda = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if (Complex64::ONE + z).norm() < 0.1 {
                continue;
            }
            let p = DynParams::new(b, d, lambda).unwrap();
            let naive = lambda * (Complex64::ONE - mu(z).powu(b)).powu(d);
            let got = fin(f_eval(&p, SphereValue::Finite(z)));
            assert!((got - naive).norm() <= 1e-10 * naive.norm().max(1.0));
        }
    }

    #[test]
    fn multivariate_collapses_to_univariate() {
        let p = DynParams::new(3, 2, Complex64::new(0.2, -0.5)).unwrap();
        assert_eq!(
            big_f_eval(&p, &[vec![Complex64::ZERO; 3], vec![Complex64::ZERO; 3]]).unwrap(),
            p.lambda
        );
        let z = Complex64::new(0.3, 0.8);
        let same = big_f_eval(&p, &[vec![z; 3], vec![z; 3]]).unwrap();
        assert!((same - fin(f_eval(&p, SphereValue::Finite(z)))).norm() < 1e-12);
        assert!(big_f_eval(&p, &[vec![z; 3]]).is_err());
        assert!(big_f_eval(
            &p,
            &[vec![Complex64::new(-1.0, 0.0); 3], vec![z; 3]]
        )
        .is_err());
    }

    #[test]
    fn contraction_on_small_polydisk() {
        // degree bound Delta = d+1, |v| <= 1/Delta, |lambda| = shearer radius
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let d = rng.gen_range(1..=4u32);
            let delta = d + 1;
            let lambda = Complex64::from_polar(
                lambda_shearer(delta),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let p = DynParams::new(1, d, lambda).unwrap();
            let branches: Vec<Vec<Complex64>> = (0..d)
                .map(|_| {
                    let size = rng.gen_range(1..=4);
                    (0..size)
                        .map(|_| {
                            Complex64::from_polar(
                                rng.gen_range(0.0..=1.0 / delta as f64),
                                rng.gen_range(0.0..std::f64::consts::TAU),
                            )
                        })
                        .collect()
                })
                .collect();
            let v = big_f_eval(&p, &branches).unwrap();
            assert!(
                v.norm() <= 1.0 / delta as f64 + 1e-12,
                "|F| = {} exceeds 1/{delta}",
                v.norm()
            );
        }
    }

    #[test]
    fn parameter_map_closed_forms() {
        let l = lambda_of_w(1, 2, Complex64::new(-0.5, 0.0)).unwrap();
        assert!((l - Complex64::new(-4.0 / 27.0, 0.0)).norm() < 1e-14);
        let a = multiplier_of_w(1, 2, Complex64::new(-0.5, 0.0)).unwrap();
        assert!((a - Complex64::ONE).norm() < 1e-14);
        let l = lambda_of_w(1, 2, Complex64::new(0.5, 0.0)).unwrap();
        assert!((l - Complex64::new(4.0, 0.0)).norm() < 1e-14);
        let a = multiplier_of_w(1, 2, Complex64::new(0.5, 0.0)).unwrap();
        assert!((a + Complex64::ONE).norm() < 1e-14);
        assert!(lambda_of_w(3, 1, Complex64::ONE).is_err());
    }

    #[test]
    fn fixed_points_small_cases() {
        let p = DynParams::new(1, 2, Complex64::new(4.0, 0.0)).unwrap();
        let fps = fixed_points(&p).unwrap();
        assert_eq!(fps.len(), 3);
        let rec = fps
            .iter()
            .find(|r| (r.z - Complex64::ONE).norm() < 1e-7)
            .expect("z=1 must be fixed");
        assert!((rec.multiplier + Complex64::ONE).norm() < 1e-7);

        let t = 0.7;
        let p = DynParams::new(1, 1, Complex64::new(t, 0.0)).unwrap();
        let fps = fixed_points(&p).unwrap();
        let want = Complex64::new((-1.0 + (1.0 + 4.0 * t).sqrt()) / 2.0, 0.0);
        assert!(fps.iter().any(|r| (r.z - want).norm() < 1e-10));
    }

    #[test]
    fn positive_lambda_has_unique_attracting_positive_fixed_point() {
        for (b, d, lambda) in [(1, 2, 0.9), (2, 2, 0.5), (3, 4, 0.05)] {
            let p = DynParams::new(b, d, Complex64::new(lambda, 0.0)).unwrap();
            let fps = fixed_points(&p).unwrap();
            let positive: Vec<_> = fps
                .iter()
                .filter(|r| r.z.im.abs() < 1e-8 && r.z.re > 1e-8)
                .collect();
            assert_eq!(positive.len(), 1, "(b,d,lambda)=({b},{d},{lambda})");
            assert!(positive[0].multiplier.norm() < 1.0);
        }
    }

    #[test]
    fn fixed_point_records_are_consistent() {
        let p = DynParams::new(3, 2, Complex64::new(0.3, 0.25)).unwrap();
        for rec in fixed_points(&p).unwrap() {
            let alt = multiplier_of_w(p.b, p.d, rec.w).unwrap();
            assert!((alt - rec.multiplier).norm() < 1e-7);
            let h = 1e-6;
            let fd = (fin(f_eval(&p, SphereValue::Finite(rec.z + h)))
                - fin(f_eval(&p, SphereValue::Finite(rec.z - h))))
                / (2.0 * h);
            assert!((fd - rec.multiplier).norm() < 1e-4);
        }
    }

    #[test]
    fn indifferent_curve_endpoints_b1() {
        let d = 2;
        let pts = indifferent_curve(1, d, &[0.0, std::f64::consts::PI]).unwrap();
        assert_eq!(pts.len(), 2);
        let at0 = fin(pts[0].lambda);
        assert!((at0 - Complex64::new(-4.0 / 27.0, 0.0)).norm() < 1e-10);
        let atpi = fin(pts[1].lambda);
        assert!((atpi - Complex64::new(4.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn indifferent_curve_has_unit_multiplier() {
        let thetas: Vec<f64> = (0..40).map(|i| std::f64::consts::TAU * i as f64 / 40.0).collect();
        for pt in indifferent_curve(3, 2, &thetas).unwrap() {
            let alpha = multiplier_of_w(3, 2, pt.w).unwrap();
            assert!((alpha.norm() - 1.0).abs() < 1e-9, "theta {}", pt.theta);
            assert!((alpha.arg().rem_euclid(std::f64::consts::TAU) - pt.theta).abs() < 1e-7
                || (alpha.arg().rem_euclid(std::f64::consts::TAU) - pt.theta).abs()
                    > std::f64::consts::TAU - 1e-7);
        }
    }

    #[test]
    fn curve_hits_published_point() {
        let pts = indifferent_curve(4, 2, &[0.0]).unwrap();
        let l0 = Complex64::new(0.0665, 0.6015);
        let w0 = Complex64::new(0.3540, 0.5331);
        assert!(pts.iter().any(|p| {
            matches!(p.lambda, SphereValue::Finite(l) if (l - l0).norm() < 5e-4)
                && (p.w - w0).norm() < 5e-4
        }));
    }

    #[test]
    fn rho_closed_form_for_unit_edges() {
        for d in 2..=10u32 {
            let r = rho(1, d).unwrap();
            let want = (d as f64).powi(d as i32) / ((d + 1) as f64).powi(d as i32 + 1);
            assert!((r.rho - want).abs() <= 1e-10 * want);
            assert!((r.w - Complex64::new(-1.0 / d as f64, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn rho_picks_the_global_minimizer() {
        // for b=4, d=2 the quotient has two conjugate pairs of roots; the
        // norm-minimal parameter sits at the pair in the left half-plane,
        // not at the often-quoted right-half-plane solution of norm 0.6052
        let r = rho(4, 2).unwrap();
        assert!((r.rho - 0.3180).abs() < 5e-4, "rho(4,2) = {}", r.rho);
        assert!((r.w - Complex64::new(-0.4165, 0.3630)).norm() < 5e-4);
        assert!((r.lambda - Complex64::new(-0.2772, 0.1559)).norm() < 5e-4);
        let r = rho(2, 2).unwrap();
        assert!((r.rho - 0.272166).abs() < 1e-5, "rho(2,2) = {}", r.rho);
    }

    #[test]
    fn rho_asymptotics() {
        assert!((rho_asymptotic(2, 100) - (200.0 * std::f64::consts::E).powf(-0.5)).abs() < 1e-12);
        let exact = rho(2, 100).unwrap().rho;
        assert!((exact - rho_asymptotic(2, 100)).abs() / exact < 0.1);
        // b=1: difference scales like d^{-2}
        let mut worst: f64 = 0.0;
        for d in [4u32, 8, 16, 32] {
            let diff = (rho(1, d).unwrap().rho - rho_asymptotic(1, d)).abs();
            worst = worst.max(diff * (d as f64).powi(2));
        }
        assert!(worst < 1.0, "scaled gap {worst}");
        // b=2: difference scales like d^{-1}
        let mut prev = f64::MAX;
        for d in [10u32, 100, 1000] {
            let gap = (rho(2, d).unwrap().rho - rho_asymptotic(2, d)).abs() * d as f64;
            assert!(gap < prev * 4.0);
            prev = gap;
            assert!(gap < 1.0);
        }
    }

    #[test]
    fn critical_orbits_land_on_lambda() {
        let p = DynParams::new(4, 2, Complex64::new(0.3, 0.11)).unwrap();
        let orbits = critical_orbit_check(&p).unwrap();
        // 0, three root-of-unity preimages, infinity, -1
        assert_eq!(orbits.len(), 6);
        let steps: Vec<usize> = orbits.iter().map(|o| o.hit_step).collect();
        assert_eq!(steps[0], 1);
        for s in &steps[1..4] {
            assert_eq!(*s, 2);
        }
        assert_eq!(steps[4], 2);
        assert_eq!(steps[5], 3);
    }

    #[test]
    fn orbit_basics() {
        let p = DynParams::new(1, 2, Complex64::new(-4.0 / 27.0, 0.0)).unwrap();
        let o = orbit_from_lambda(&p, 0);
        assert_eq!(o.points.len(), 1);
        let o = orbit_from_lambda(&p, 400);
        assert!(o.minus_one_hits.is_empty());
        let last = fin(*o.points.last().unwrap());
        assert!((last - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 0.05, "{last}");
    }

    #[test]
    fn orbit_converges_to_attracting_fixed_point() {
        let p = DynParams::new(1, 2, Complex64::new(0.2, 0.0)).unwrap();
        let fps = fixed_points(&p).unwrap();
        let target = fps
            .iter()
            .find(|r| r.z.im.abs() < 1e-9 && r.z.re > 0.0)
            .unwrap()
            .z;
        let o = orbit_from_lambda(&p, 200);
        assert!((fin(*o.points.last().unwrap()) - target).norm() < 1e-8);
    }

    #[test]
    fn disk_argmax_structures() {
        let r = disk_argmax(-0.2, 0.3, 1).unwrap();
        assert_eq!(r.maximizers.len(), 1);
        assert!((r.maximizers[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-6);
        assert!((r.value - 1.5).abs() < 1e-9);

        let r = disk_argmax(-0.2, 0.3, 3).unwrap();
        assert_eq!(r.maximizers.len(), 1);
        assert!((r.maximizers[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-6);

        let r = disk_argmax(-0.5, 0.866, 6).unwrap();
        assert_eq!(r.maximizers.len(), 2, "expected a conjugate pair");
        assert!(r.maximizers[0].im.abs() > 1e-3);
        assert!((r.maximizers[0] - r.maximizers[1].conj()).norm() < 1e-5);
    }

    #[test]
    fn invariant_disk_at_the_critical_radius() {
        let lambda = Complex64::new(-4.0 / 27.0, 0.0);
        let rm = maximal_invariant_disk(1, 2, lambda)
            .unwrap()
            .expect("disk must exist at the boundary radius");
        // the frontier disk touches: max |f| == R and |f'| = 1 there
        let p = DynParams::new(1, 2, lambda).unwrap();
        let mut worst = 0.0f64;
        for i in 0..2000 {
            let z = Complex64::from_polar(rm, std::f64::consts::TAU * i as f64 / 2000.0);
            worst = worst.max(fin(f_eval(&p, SphereValue::Finite(z))).norm());
        }
        assert!((worst - rm).abs() < 1e-4, "max |f| {worst} vs R {rm}");
        let mut best_prime = f64::MAX;
        for i in 0..2000 {
            let z = Complex64::from_polar(rm, std::f64::consts::TAU * i as f64 / 2000.0);
            let fv = fin(f_eval(&p, SphereValue::Finite(z)));
            if (fv.norm() - worst).abs() < 1e-6 {
                best_prime = best_prime.min((f_prime(&p, z).norm() - 1.0).abs());
            }
        }
        assert!(best_prime < 1e-3, "|f'| at argmax differs from 1 by {best_prime}");
    }

    #[test]
    fn invariant_disk_existence_tracks_rho() {
        assert!(maximal_invariant_disk(1, 2, Complex64::new(0.2, 0.0))
            .unwrap()
            .is_none());
        assert!(maximal_invariant_disk(1, 2, Complex64::new(0.0, 0.13))
            .unwrap()
            .is_some());
        let r = maximal_invariant_disk(1, 2, Complex64::ZERO).unwrap().unwrap();
        assert!(r > 0.99);
        let rho42 = rho(4, 2).unwrap().rho;
        assert!(maximal_invariant_disk(4, 2, Complex64::new(rho42 * 0.99, 0.0))
            .unwrap()
            .is_some());
        assert!(maximal_invariant_disk(4, 2, Complex64::new(rho42 * 1.05, 0.0))
            .unwrap()
            .is_none());
    }
}
