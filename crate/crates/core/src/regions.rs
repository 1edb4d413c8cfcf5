//! Region geometry for zero-free certification.
//!
//! Provides the closed-form radii `lambda_s` and `lambda_c`, the cone and
//! wedge regions used to trap ratio orbits, the lens that the Mobius map
//! `mu` turns a wedge into, and sampling-based checkers for the three
//! properties a trapping region needs: log-convexity of its +1 shift,
//! closure of its `mu` image under multiplication, and strict forward
//! invariance under the ratio map.

use std::f64::consts::{E, FRAC_PI_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{f_eval, golden_max, mu, mu_inv, DynParams};
use crate::error::{Error, Result};
use crate::sphere::SphereValue;

/// Default truncation modulus when sampling unbounded cone edges.
pub const CONE_MODULUS_CAP: f64 = 1e3;

/// Membership slack used by the sampling certifiers.
pub const CHECK_TOL: f64 = 1e-9;

const ONE_C: Complex64 = Complex64::new(1.0, 0.0);

/// `(delta-1)^(delta-1) / delta^delta`, the radius of the zero-free disk
/// shared by all graphs of maximum degree `delta`.
pub fn lambda_s(delta: u32) -> Result<BigRational> {
    if delta < 2 {
        return Err(Error::input("lambda_s needs a degree bound of at least 2"));
    }
    let num = num_traits::pow(BigInt::from(delta - 1), (delta - 1) as usize);
    let den = num_traits::pow(BigInt::from(delta), delta as usize);
    Ok(BigRational::new(num, den))
}

/// `(delta-1)^(delta-1) / (delta-2)^delta`, the uniqueness threshold on the
/// positive axis for branching factor `delta - 1`.
pub fn lambda_c(delta: u32) -> Result<BigRational> {
    if delta < 3 {
        return Err(Error::input("lambda_c needs a degree bound of at least 3"));
    }
    let num = num_traits::pow(BigInt::from(delta - 1), (delta - 1) as usize);
    let den = num_traits::pow(BigInt::from(delta - 2), delta as usize);
    Ok(BigRational::new(num, den))
}

pub fn lambda_s_f64(delta: u32) -> Result<f64> {
    Ok(lambda_s(delta)?.to_f64().unwrap())
}

pub fn lambda_c_f64(delta: u32) -> Result<f64> {
    Ok(lambda_c(delta)?.to_f64().unwrap())
}

/// Closed regions in the ratio plane (or its `mu` image).
///
/// `Cone { x, eps }` is `{ z : |Arg(z - x)| <= eps }` together with its
/// vertex. `RegionA` is the wedge `Cone(x, eps) intersect Cone(-1, eps~)`
/// where `eps~` is chosen so the two upper edges cross at real part `x0`.
/// `LensB` lies between the two circular arcs through `y` and `1` that
/// leave `y` at angle `eps`, cut off by a cone with vertex `1` opening
/// toward the left whose edges cross the arcs at real part `y0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionSpec {
    Disk { center: Complex64, radius: f64 },
    Cone { x: f64, eps: f64 },
    RegionA { x: f64, x0: f64, eps: f64 },
    LensB { y: f64, y0: f64, eps: f64 },
}

impl RegionSpec {
    pub fn disk(center: Complex64, radius: f64) -> Result<Self> {
        if !center.re.is_finite() || !center.im.is_finite() || !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::input("disk needs a finite center and radius >= 0"));
        }
        Ok(RegionSpec::Disk { center, radius })
    }

    pub fn cone(x: f64, eps: f64) -> Result<Self> {
        if !x.is_finite() || !(eps > 0.0 && eps < PI) {
            return Err(Error::input("cone needs a finite vertex and half-angle in (0, pi)"));
        }
        Ok(RegionSpec::Cone { x, eps })
    }

    pub fn region_a(x: f64, x0: f64, eps: f64) -> Result<Self> {
        if !(x > -1.0 && x0 > x) || !x0.is_finite() {
            return Err(Error::input("wedge needs -1 < x < x0"));
        }
        if !(eps > 0.0 && eps < FRAC_PI_2) {
            return Err(Error::input("wedge half-angle must lie in (0, pi/2)"));
        }
        Ok(RegionSpec::RegionA { x, x0, eps })
    }

    pub fn lens_b(y: f64, y0: f64, eps: f64) -> Result<Self> {
        if !(y < y0 && y0 < 1.0) || !y.is_finite() {
            return Err(Error::input("lens needs y < y0 < 1"));
        }
        if !(eps > 0.0 && eps < FRAC_PI_2) {
            return Err(Error::input("lens opening angle must lie in (0, pi/2)"));
        }
        Ok(RegionSpec::LensB { y, y0, eps })
    }

    /// Half-angle at the vertex -1 of the second cone bounding the wedge.
    pub fn eps_tilde(&self) -> Option<f64> {
        match *self {
            RegionSpec::RegionA { x, x0, eps } => Some((((x0 - x) / (x0 + 1.0)) * eps.tan()).atan()),
            _ => None,
        }
    }

    /// Half-angle at the vertex 1 of the reflected cone bounding the lens.
    pub fn eta_tilde(&self) -> Option<f64> {
        match *self {
            RegionSpec::LensB { y, y0, eps } => {
                let height = lens_height_at(y, y0, eps);
                Some((height / (1.0 - y0)).atan())
            }
            _ => None,
        }
    }

    /// Upper corner of the boundary: the edge crossing of the wedge, or
    /// the arc-to-segment transition of the lens.
    pub fn upper_corner(&self) -> Option<Complex64> {
        match *self {
            RegionSpec::RegionA { x, x0, eps } => Some(Complex64::new(x0, (x0 - x) * eps.tan())),
            RegionSpec::LensB { y, y0, eps } => Some(Complex64::new(y0, lens_height_at(y, y0, eps))),
            _ => None,
        }
    }

    /// Signed distance to the region: negative inside, positive outside.
    /// The sign is exact. The magnitude is the Euclidean boundary distance
    /// for disks and cones and a lower bound for the intersections.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match *self {
            RegionSpec::Disk { center, radius } => (z - center).norm() - radius,
            RegionSpec::Cone { x, eps } => cone_sd(z, x, eps),
            RegionSpec::RegionA { x, eps, .. } => {
                let et = self.eps_tilde().unwrap();
                cone_sd(z, x, eps).max(cone_sd(z, -1.0, et))
            }
            RegionSpec::LensB { y, eps, .. } => {
                let (mid, r, h) = lens_circle(y, eps);
                let lower = (z - Complex64::new(mid, -h)).norm() - r;
                let upper = (z - Complex64::new(mid, h)).norm() - r;
                let eta = self.eta_tilde().unwrap();
                lower.max(upper).max(reflected_cone_sd(z, eta))
            }
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.signed_distance(z) <= 0.0
    }

    /// `m` points tracing the boundary in order, corners included.
    /// Unbounded edges are truncated at modulus [`CONE_MODULUS_CAP`].
    pub fn boundary_samples(&self, m: usize) -> Vec<Complex64> {
        self.boundary_samples_capped(m, CONE_MODULUS_CAP)
    }

    pub fn boundary_samples_capped(&self, m: usize, cap: f64) -> Vec<Complex64> {
        let m = m.max(4);
        match *self {
            RegionSpec::Disk { center, radius } => (0..m)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / m as f64;
                    center + radius * Complex64::new(t.cos(), t.sin())
                })
                .collect(),
            RegionSpec::Cone { x, eps } => {
                let lo = (m - 1) / 2;
                let hi = m - 1 - lo;
                let v = Complex64::new(x, 0.0);
                let down = Complex64::from_polar(1.0, -eps);
                let up = Complex64::from_polar(1.0, eps);
                let mut out = Vec::with_capacity(m);
                for j in (0..lo).rev() {
                    out.push(v + ray_modulus(j, lo, cap) * down);
                }
                out.push(v);
                for j in 0..hi {
                    out.push(v + ray_modulus(j, hi, cap) * up);
                }
                out
            }
            RegionSpec::RegionA { x, .. } => {
                let et = self.eps_tilde().unwrap();
                let corner = self.upper_corner().unwrap();
                let vx = Complex64::new(x, 0.0);
                let minus1 = Complex64::new(-1.0, 0.0);
                let t_corner = (corner - minus1).norm();
                let rem = m - 3;
                let n_seg = rem / 4;
                let ray_total = rem - 2 * n_seg;
                let ray_lo = ray_total / 2;
                let ray_up = ray_total - ray_lo;
                let ray_pt = |j: usize, n: usize, conj: bool| {
                    let frac = (j + 1) as f64 / n as f64;
                    let t = t_corner * (cap / t_corner).powf(frac);
                    let ang = if conj { -et } else { et };
                    minus1 + t * Complex64::from_polar(1.0, ang)
                };
                let mut out = Vec::with_capacity(m);
                for j in (0..ray_lo).rev() {
                    out.push(ray_pt(j, ray_lo, true));
                }
                out.push(corner.conj());
                for k in 1..=n_seg {
                    let s = k as f64 / (n_seg + 1) as f64;
                    out.push(corner.conj() + s * (vx - corner.conj()));
                }
                out.push(vx);
                for k in 1..=n_seg {
                    let s = k as f64 / (n_seg + 1) as f64;
                    out.push(vx + s * (corner - vx));
                }
                out.push(corner);
                for j in 0..ray_up {
                    out.push(ray_pt(j, ray_up, false));
                }
                out
            }
            RegionSpec::LensB { y, eps, .. } => {
                let (mid, r, h) = lens_circle(y, eps);
                let center = Complex64::new(mid, -h);
                let corner = self.upper_corner().unwrap();
                let py = Complex64::new(y, 0.0);
                let phi_y = (py - center).arg();
                let phi_p = (corner - center).arg();
                let rem = m - 4;
                let n_arc = rem / 3;
                let n_segs = rem - 2 * n_arc;
                let n_seg_lo = n_segs / 2;
                let n_seg_up = n_segs - n_seg_lo;
                let arc_pt = |phi: f64| center + r * Complex64::from_polar(1.0, phi);
                let mut out = Vec::with_capacity(m);
                out.push(py);
                for k in 1..=n_arc {
                    let phi = phi_y + (phi_p - phi_y) * k as f64 / (n_arc + 1) as f64;
                    out.push(arc_pt(phi).conj());
                }
                out.push(corner.conj());
                for k in 1..=n_seg_lo {
                    let s = k as f64 / (n_seg_lo + 1) as f64;
                    out.push(corner.conj() + s * (ONE_C - corner.conj()));
                }
                out.push(ONE_C);
                for k in 1..=n_seg_up {
                    let s = k as f64 / (n_seg_up + 1) as f64;
                    out.push(ONE_C + s * (corner - ONE_C));
                }
                out.push(corner);
                for k in 1..=n_arc {
                    let phi = phi_p + (phi_y - phi_p) * k as f64 / (n_arc + 1) as f64;
                    out.push(arc_pt(phi));
                }
                out
            }
        }
    }
}

/// Circle data for the lens arcs: real midpoint of the chord [y, 1],
/// radius, and the distance of the two centers from the real axis.
fn lens_circle(y: f64, eps: f64) -> (f64, f64, f64) {
    let mid = 0.5 * (1.0 + y);
    let r = (1.0 - y) / (2.0 * eps.sin());
    (mid, r, r * eps.cos())
}

/// Height of the upper lens arc over real part `y0`, computed in a form
/// that stays accurate when the arcs are nearly flat.
fn lens_height_at(y: f64, y0: f64, eps: f64) -> f64 {
    let (mid, r, h) = lens_circle(y, eps);
    let root = (r * r - (y0 - mid) * (y0 - mid)).max(0.0).sqrt();
    (1.0 - y0) * (y0 - y) / (root + h)
}

fn cone_sd(z: Complex64, x: f64, eps: f64) -> f64 {
    let w = z - Complex64::new(x, 0.0);
    let r = w.norm();
    if r == 0.0 {
        return 0.0;
    }
    let t = (w.arg().abs() - eps).clamp(-FRAC_PI_2, FRAC_PI_2);
    r * t.sin()
}

/// Cone with vertex 1 opening toward -infinity: `|Arg(1 - z)| <= eta`.
fn reflected_cone_sd(z: Complex64, eta: f64) -> f64 {
    cone_sd(Complex64::new(1.0 - z.re, -z.im), 0.0, eta)
}

fn ray_modulus(j: usize, n: usize, cap: f64) -> f64 {
    let t_min = 1e-6_f64.min(cap / 2.0);
    if n <= 1 {
        return cap;
    }
    t_min * (cap / t_min).powf(j as f64 / (n - 1) as f64)
}

/// Minimum distance from `z` to the polyline through `pts`.
pub fn polyline_distance(z: Complex64, pts: &[Complex64], closed: bool) -> f64 {
    let n = pts.len();
    if n == 0 {
        return f64::INFINITY;
    }
    if n == 1 {
        return (z - pts[0]).norm();
    }
    let segments = if closed { n } else { n - 1 };
    let mut best = f64::INFINITY;
    for i in 0..segments {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        best = best.min(segment_distance(z, a, b));
    }
    best
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + t * ab)).norm()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    pub pass: bool,
    pub pairs: usize,
    pub violations: usize,
    /// Largest signed distance of an exponentiated midpoint to the region.
    pub worst: f64,
}

/// Core of the log-convexity check: `log_samples` trace the boundary of
/// the log of a region and `shifted_sd` is the signed distance to the
/// region itself. Midpoints of all sample pairs are exponentiated back
/// and tested for membership.
pub fn log_convexity_core(
    log_samples: &[Complex64],
    shifted_sd: impl Fn(Complex64) -> f64,
    tol: f64,
) -> ConvexityReport {
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    let mut pairs = 0usize;
    for (i, &wi) in log_samples.iter().enumerate() {
        for &wj in &log_samples[i..] {
            let p = (0.5 * (wi + wj)).exp();
            let sd = shifted_sd(p);
            if sd > worst {
                worst = sd;
            }
            if sd > tol {
                violations += 1;
            }
            pairs += 1;
        }
    }
    ConvexityReport { pass: violations == 0, pairs, violations, worst }
}

/// Checks that the region shifted by +1 is log-convex, by sampling.
pub fn check_log_convexity(region: &RegionSpec, m: usize) -> Result<ConvexityReport> {
    let samples = region.boundary_samples(m);
    let mut logs = Vec::with_capacity(samples.len());
    for &z in &samples {
        let w = z + ONE_C;
        if w.re <= 0.0 && w.im.abs() < 1e-14 {
            return Err(Error::input("region shifted by +1 touches the branch cut of log"));
        }
        logs.push(w.ln());
    }
    Ok(log_convexity_core(&logs, |p| region.signed_distance(p - ONE_C), CHECK_TOL))
}

#[derive(Debug, Clone, Serialize)]
pub struct SemigroupReport {
    pub pass: bool,
    pub pairs: usize,
    pub violations: usize,
    /// Largest signed distance of a pairwise product to the region.
    pub worst: f64,
}

pub fn semigroup_core(
    samples: &[Complex64],
    sd: impl Fn(Complex64) -> f64,
    tol: f64,
) -> SemigroupReport {
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    let mut pairs = 0usize;
    for (i, &zi) in samples.iter().enumerate() {
        for &zj in &samples[i..] {
            let v = sd(zi * zj);
            if v > worst {
                worst = v;
            }
            if v > tol {
                violations += 1;
            }
            pairs += 1;
        }
    }
    SemigroupReport { pass: violations == 0, pairs, violations, worst }
}

/// Tests closure of the region under multiplication on boundary samples.
pub fn check_semigroup(region: &RegionSpec, m: usize) -> SemigroupReport {
    let samples = region.boundary_samples(m);
    semigroup_core(&samples, |p| region.signed_distance(p), CHECK_TOL)
}

/// Tests closure of `mu(A)` under multiplication without constructing the
/// lens: membership of a product `p` is decided by pulling back through
/// the exact inverse `mu_inv` and testing against the wedge itself.
pub fn check_semigroup_mu_image(wedge: &RegionSpec, m: usize) -> Result<SemigroupReport> {
    if !matches!(wedge, RegionSpec::RegionA { .. }) {
        return Err(Error::input("mu-image semigroup check expects a wedge region"));
    }
    let samples: Vec<Complex64> = wedge.boundary_samples(m).iter().map(|&z| mu(z)).collect();
    Ok(semigroup_core(
        &samples,
        |p| {
            if p == ONE_C {
                // mu(infinity); a limit point of the image, counted as inside
                return 0.0;
            }
            wedge.signed_distance(mu_inv(p))
        },
        CHECK_TOL,
    ))
}

/// Open interval of crossing abscissas `x0` for which the `mu` image of
/// the wedge at vertex `x` is closed under multiplication once the
/// opening angle is small: `mu_inv(mu(x)^2) < x0 < mu_inv(sqrt(-mu(x)))`.
pub fn semigroup_x0_window(x: f64) -> Result<(f64, f64)> {
    if !(-1.0 < x && x < 0.0) {
        return Err(Error::input("semigroup window needs a vertex in (-1, 0)"));
    }
    let y = x / (1.0 + x);
    let lo = (y * y) / (1.0 - y * y);
    let s = (-y).sqrt();
    let hi = if s < 1.0 { s / (1.0 - s) } else { f64::INFINITY };
    Ok((lo, hi))
}

/// Lens parameters of the Mobius image of a wedge: `mu(A(x, x0, eps))`
/// equals the lens at `y = mu(x)` with crossing abscissa `Re mu(corner)`
/// and the same opening angle, minus the point 1.
pub fn mu_image_of_wedge(wedge: &RegionSpec) -> Result<RegionSpec> {
    let RegionSpec::RegionA { x, eps, .. } = *wedge else {
        return Err(Error::input("mu image is defined for wedge regions"));
    };
    let corner = wedge.upper_corner().unwrap();
    RegionSpec::lens_b(x / (1.0 + x), mu(corner).re, eps)
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub pass: bool,
    /// Smallest distance from a boundary image to the boundary; positive
    /// means every sampled image lies strictly inside.
    pub margin: f64,
    pub samples: usize,
    /// Boundary points mapped to infinity (the pole at -1).
    pub pole_hits: usize,
    pub worst_point: Option<[f64; 2]>,
}

/// Checks that the ratio map sends the region strictly into itself by
/// imaging boundary samples.
pub fn check_forward_invariance(region: &RegionSpec, p: &DynParams, m: usize) -> InvarianceReport {
    let samples = region.boundary_samples(m);
    let mut margin = f64::INFINITY;
    let mut pole_hits = 0usize;
    let mut worst_point = None;
    for &z in &samples {
        match f_eval(p, SphereValue::Finite(z)) {
            SphereValue::Infinity => pole_hits += 1,
            SphereValue::Finite(w) => {
                let g = -region.signed_distance(w);
                if g < margin {
                    margin = g;
                    worst_point = Some([w.re, w.im]);
                }
            }
        }
    }
    InvarianceReport {
        pass: pole_hits == 0 && margin > 0.0,
        margin,
        samples: samples.len(),
        pole_hits,
        worst_point,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WedgeCertificate {
    pub forward: InvarianceReport,
    pub log_convexity: ConvexityReport,
    pub semigroup: SemigroupReport,
    pub pass: bool,
}

/// Runs all three wedge checks for one parameter instance: strict forward
/// invariance under the ratio map, log-convexity of the +1 shift, and the
/// multiplicative semigroup property of the `mu` image.
pub fn certify_wedge(wedge: &RegionSpec, p: &DynParams, m: usize) -> Result<WedgeCertificate> {
    if !matches!(wedge, RegionSpec::RegionA { .. }) {
        return Err(Error::input("certification expects a wedge region"));
    }
    let forward = check_forward_invariance(wedge, p, m);
    let log_convexity = check_log_convexity(wedge, m)?;
    let semigroup = check_semigroup_mu_image(wedge, m)?;
    let pass = forward.pass && log_convexity.pass && semigroup.pass;
    Ok(WedgeCertificate { forward, log_convexity, semigroup, pass })
}

/// Obstruction curves for the wedge invariance argument at branching
/// factors 2 and 3. `t` parameterizes the bounded wedge edge.
pub fn b_curve(d: u32, lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::input("curve needs lambda > 0"));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::input("curve parameter must lie in [0, 1]"));
    }
    match d {
        2 => {
            let u = 7.0 * t + 2.0;
            Ok(-162.0 * t / (9.0 * u + u.powi(3) / lambda))
        }
        3 => {
            let u = 5.0 * t + 3.0;
            Ok(-1536.0 * t / (64.0 * u + u.powi(4) / lambda))
        }
        _ => Err(Error::input("curve is defined for branching factors 2 and 3")),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveMin {
    pub t: f64,
    pub value: f64,
}

/// Minimum of the obstruction curve over `t` in `[0, 1]`. The derivative
/// has the sign of `9 lambda + (7t+2)^2 (1-7t)` (branching 2) resp.
/// `64 lambda + (5t+3)^3 (1-5t)` (branching 3); both are decreasing in
/// `t`, so the critical point is found by bisection and cross-checked
/// with a golden-section sweep.
pub fn b_curve_min(d: u32, lambda: f64) -> Result<CurveMin> {
    let h = move |t: f64| -> f64 {
        match d {
            2 => {
                let u = 7.0 * t + 2.0;
                9.0 * lambda + u * u * (1.0 - 7.0 * t)
            }
            _ => {
                let u = 5.0 * t + 3.0;
                64.0 * lambda + u * u * u * (1.0 - 5.0 * t)
            }
        }
    };
    // validates d and lambda
    b_curve(d, lambda, 0.0)?;
    let t_bisect = if h(1.0) >= 0.0 {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let (t_golden, _) = golden_max(0.0, 1.0, |t| -b_curve(d, lambda, t).unwrap());
    let mut best = CurveMin { t: t_bisect, value: b_curve(d, lambda, t_bisect)? };
    let golden_val = b_curve(d, lambda, t_golden)?;
    if golden_val < best.value {
        best = CurveMin { t: t_golden, value: golden_val };
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct CriticalGapReport {
    pub d: u32,
    /// `lambda_c(d+1) - 1/(d+1)`, exact.
    pub lhs: BigRational,
    /// Certified rational enclosure of `1/(sqrt(d) - 1)`.
    pub rhs_lo: BigRational,
    pub rhs_hi: BigRational,
    /// Whether `lhs < 1/(sqrt(d) - 1)`, certified through the enclosure.
    pub holds: bool,
}

/// Compares the gap between the uniqueness threshold and the escape term
/// `1/(d+1)` against `1/(sqrt(d) - 1)`, exactly. The square root is
/// enclosed by an integer-square-root interval at denominator 10^12.
pub fn critical_gap_inequality(d: u32) -> Result<CriticalGapReport> {
    if d < 2 {
        return Err(Error::input("inequality needs d >= 2"));
    }
    let lhs = lambda_c(d + 1)? - BigRational::new(BigInt::one(), BigInt::from(d + 1));
    let scale = num_traits::pow(BigInt::from(10u32), 12);
    let root = (BigInt::from(d) * &scale * &scale).sqrt();
    let sqrt_lo = BigRational::new(root.clone(), scale.clone());
    let sqrt_hi = BigRational::new(root + BigInt::one(), scale);
    let one = BigRational::one();
    if sqrt_lo <= one {
        return Err(Error::numeric("sqrt enclosure must stay above 1"));
    }
    let rhs_lo = (sqrt_hi.clone() - &one).recip();
    let rhs_hi = (sqrt_lo.clone() - &one).recip();
    let holds = lhs < rhs_lo;
    if !holds && lhs < rhs_hi {
        return Err(Error::numeric("sqrt enclosure too coarse to decide the inequality"));
    }
    Ok(CriticalGapReport { d, lhs, rhs_lo, rhs_hi, holds })
}

/// Crossing point of `(d/(d-1)^2) e - 1/(d+1) = 1/(sqrt(d) - 1)` over
/// real `d`, the asymptotic form of the gap comparison.
pub fn critical_gap_crossing() -> f64 {
    let g = |d: f64| (d / ((d - 1.0) * (d - 1.0))) * E - 1.0 / (d + 1.0) - 1.0 / (d.sqrt() - 1.0);
    let (mut lo, mut hi) = (2.5f64, 8.0f64);
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximum deviation over `samples` between the depth-`d` rescaled ratio
/// map `Lambda / (1 + Z/d)^d` and its limit `Lambda e^{-Z}`. Samples at
/// the pole `Z = -d` are excluded.
pub fn limit_map_check(big_lambda: Complex64, d: u32, samples: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for &z in samples {
        if (z + Complex64::new(d as f64, 0.0)).norm() < 1e-12 {
            continue;
        }
        let g = big_lambda / (ONE_C + z / d as f64).powi(d as i32);
        let e = big_lambda * (-z).exp();
        worst = worst.max((g - e).norm());
    }
    worst
}

#[derive(Debug, Clone, Serialize)]
pub struct ShearerReport {
    pub delta: u32,
    pub mu_bound: f64,
    pub max_mu: f64,
    pub ratio_bound: f64,
    pub max_ratio: f64,
    pub pass: bool,
}

/// Samples the bound chain behind the shared zero-free disk: for inputs
/// in the closed disk of radius `1/delta`, occupation ratios stay within
/// `1/(delta-1)` and one step of the ratio map with `|lambda| =
/// lambda_s(delta)` and `delta - 1` subtree arguments stays within
/// `1/delta`. Both bounds are tight, so the check allows 1e-12 slack.
pub fn shearer_disk_check(delta: u32, n: usize, seed: u64) -> Result<ShearerReport> {
    if delta < 2 {
        return Err(Error::input("disk check needs a degree bound of at least 2"));
    }
    let radius = 1.0 / delta as f64;
    let lam_mod = lambda_s_f64(delta)?;
    let d = (delta - 1) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let r = radius * rng.gen::<f64>().sqrt();
        let a = rng.gen::<f64>() * 2.0 * PI;
        Complex64::from_polar(r, a)
    };
    let mut max_mu = 0.0f64;
    let mut max_ratio = 0.0f64;
    let mut record = |v: Complex64, lam: Complex64, bs: &[Complex64]| {
        max_mu = max_mu.max(mu(v).norm());
        let mut f = lam;
        for &b in bs {
            f /= ONE_C + b;
        }
        max_ratio = max_ratio.max(f.norm());
    };
    // the extremal corner attains both bounds exactly
    let corner = Complex64::new(-radius, 0.0);
    record(corner, Complex64::new(lam_mod, 0.0), &vec![corner; d]);
    for _ in 0..n {
        let v = draw(&mut rng);
        let lam = Complex64::from_polar(lam_mod, rng.gen::<f64>() * 2.0 * PI);
        let bs: Vec<Complex64> = (0..d).map(|_| draw(&mut rng)).collect();
        record(v, lam, &bs);
    }
    let mu_bound = 1.0 / (delta - 1) as f64;
    let ratio_bound = 1.0 / delta as f64;
    let pass = max_mu <= mu_bound + 1e-12 && max_ratio <= ratio_bound + 1e-12;
    Ok(ShearerReport { delta, mu_bound, max_mu, ratio_bound, max_ratio, pass })
}
