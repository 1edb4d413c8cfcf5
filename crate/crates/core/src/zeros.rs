//! Truncated regular hypertree families and the location of their
//! partition function zeros. The family is parameterised by an edge
//! branching count `d`, an edge size `b + 1`, and a depth `m`; its members
//! grow exponentially in `m`, so alongside the explicit hypergraph and the
//! exact polynomial pair this module offers exponent-scaled pointwise
//! evaluation, contour based zero counting, and experiments that measure
//! how fast zeros approach a target fugacity as the depth grows.

use crate::error::{Error, Result};
use crate::expnum::{ExpComplex, ExpReal};
use crate::hypergraph::Hypergraph;
use crate::poly::{bigint_to_scaled, IntPoly};
use crate::roots::{roots_int, RootOptions};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Vertex budget for materialising a truncated tree as an explicit hypergraph.
pub const TREE_VERTEX_CAP: u128 = 1_000_000;

/// Default degree budget for the exact polynomial pair recursion.
pub const TREE_DEGREE_CAP: usize = 4096;

/// Refinement ceiling for contour sampling in winding computations.
const MAX_CONTOUR_SAMPLES: usize = 1 << 19;

/// Depth-`m` truncated regular hypertree: the root lies in `d` hyperedges
/// of size `b + 1`, and every non-root vertex of those edges is the root of
/// a disjoint copy of the depth `m - 1` tree. Depth 0 is a single vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeFamilySpec {
    pub b: u32,
    pub d: u32,
    pub m: u32,
}

impl TreeFamilySpec {
    pub fn new(b: u32, d: u32, m: u32) -> Result<Self> {
        if b < 1 || d < 1 {
            return Err(Error::input("branching parameters b and d must be at least 1"));
        }
        Ok(TreeFamilySpec { b, d, m })
    }

    /// Number of vertices, following v(m) = 1 + d b v(m-1) with v(0) = 1.
    /// Saturates instead of overflowing.
    pub fn vertex_count(&self) -> u128 {
        let bd = self.b as u128 * self.d as u128;
        let mut v: u128 = 1;
        for _ in 0..self.m {
            v = bd.saturating_mul(v).saturating_add(1);
        }
        v
    }

    /// Exact degree of the partition function, which is the maximum
    /// independent set size. Both members of the pair recursion keep
    /// nonnegative coefficients, and the difference of powers factors as
    /// the root-free part times a sum of products, so degrees follow a
    /// clean recurrence with no cancellation to account for.
    pub fn z_degree(&self) -> u128 {
        let b = self.b as u128;
        let d = self.d as u128;
        let (mut din, mut dout): (u128, u128) = (1, 0);
        for _ in 0..self.m {
            let dz = din.max(dout);
            let base = dout.saturating_add((b - 1).saturating_mul(dz));
            let next_in = d.saturating_mul(base).saturating_add(1);
            let next_out = b.saturating_mul(d).saturating_mul(dz);
            din = next_in;
            dout = next_out;
        }
        din.max(dout)
    }
}

/// Materialises the truncated tree as an explicit hypergraph. The root is
/// vertex 0 and each subtree occupies a consecutive block of indices.
pub fn build_tree(spec: &TreeFamilySpec) -> Result<Hypergraph> {
    let v = spec.vertex_count();
    if v > TREE_VERTEX_CAP {
        return Err(Error::resource(format!(
            "depth {} tree has {} vertices, over the cap of {}",
            spec.m, v, TREE_VERTEX_CAP
        )));
    }
    let mut edges = Vec::new();
    let total = attach(spec.b as usize, spec.d as usize, spec.m, 0, &mut edges);
    debug_assert_eq!(total as u128, v);
    Hypergraph::new(total, edges)
}

/// Appends the edges of a depth-`m` subtree rooted at `root` and returns the
/// number of vertices the subtree occupies.
fn attach(b: usize, d: usize, m: u32, root: usize, edges: &mut Vec<Vec<usize>>) -> usize {
    if m == 0 {
        return 1;
    }
    let mut next = root + 1;
    for _ in 0..d {
        let mut edge = Vec::with_capacity(b + 1);
        edge.push(root);
        for _ in 0..b {
            edge.push(next);
            next += attach(b, d, m - 1, next, edges);
        }
        edges.push(edge);
    }
    next - root
}

/// Exact integer pair (partition sum with the root occupied, with the root
/// free) under the default degree budget.
pub fn tree_zpair(spec: &TreeFamilySpec) -> Result<(IntPoly, IntPoly)> {
    tree_zpair_capped(spec, TREE_DEGREE_CAP)
}

/// One level of the pair recursion maps (zin, zout) with z = zin + zout to
/// zin' = lambda (z^b - zin^b)^d and zout' = z^(b d). Coefficients stay
/// nonnegative throughout, so the cap check can predict result degrees and
/// fire before any oversized product is formed.
pub fn tree_zpair_capped(spec: &TreeFamilySpec, degree_cap: usize) -> Result<(IntPoly, IntPoly)> {
    let b = spec.b as usize;
    let d = spec.d as usize;
    let mut zin = IntPoly::lambda();
    let mut zout = IntPoly::one();
    for level in 1..=spec.m {
        let z = zin.add(&zout);
        if (b as u128) * (d as u128) * (z.degree() as u128) > degree_cap as u128 {
            return Err(Error::resource(format!(
                "root-free polynomial reaches degree {} at depth {level}, over the cap of {degree_cap}",
                b * d * z.degree()
            )));
        }
        let zb = z.pow(b);
        let base = zb.sub(&zin.pow(b));
        if 1 + d * base.degree() > degree_cap {
            return Err(Error::resource(format!(
                "root-occupied polynomial reaches degree {} at depth {level}, over the cap of {degree_cap}",
                1 + d * base.degree()
            )));
        }
        zin = IntPoly::lambda().mul(&base.pow(d));
        zout = zb.pow(d);
    }
    Ok((zin, zout))
}

/// The pair at a single fugacity, carried in exponent-scaled form so depth
/// is limited by time rather than floating point range. The difference of
/// powers is expanded as zout times a sum of products, which avoids
/// subtracting nearly equal quantities when the occupation ratio sits near
/// a root of unity.
pub fn eval_zpair(spec: &TreeFamilySpec, lambda: Complex64) -> (ExpComplex, ExpComplex) {
    let lam = ExpComplex::from_complex(lambda);
    let mut zin = lam;
    let mut zout = ExpComplex::one();
    for _ in 0..spec.m {
        let z = zin.add(&zout);
        let mut sum = ExpComplex::zero();
        for k in 0..spec.b {
            sum = sum.add(&z.powi(k).mul(&zin.powi(spec.b - 1 - k)));
        }
        let base = zout.mul(&sum);
        zin = lam.mul(&base.powi(spec.d));
        zout = z.powi(spec.b * spec.d);
    }
    (zin, zout)
}

/// Scaled value of the partition function at one fugacity.
pub fn eval_z(spec: &TreeFamilySpec, lambda: Complex64) -> ExpComplex {
    let (zin, zout) = eval_zpair(spec, lambda);
    zin.add(&zout)
}

/// Zero count plus contour diagnostics from an argument sweep.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WindingCount {
    pub zeros: usize,
    /// Samples used by the accepted sweep.
    pub samples: usize,
    /// Smallest log2 modulus seen on the contour; a deep dip means a zero
    /// sits close to it.
    pub min_log2_modulus: f64,
}

/// Outcome of one contour sweep: either a settled count, or evidence that
/// a zero sits within the sampler's resolution of the circle.
enum Sweep {
    Resolved(WindingCount),
    Grazing,
}

fn winding_sweep<F>(f: &F, center: Complex64, radius: f64) -> Result<Sweep>
where
    F: Fn(Complex64) -> ExpComplex + Sync,
{
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::input("contour radius must be positive and finite"));
    }
    let mut n = 512usize;
    loop {
        let vals: Vec<(f64, f64, bool)> = (0..n)
            .into_par_iter()
            .map(|j| {
                let theta = TAU * j as f64 / n as f64;
                let v = f(center + Complex64::from_polar(radius, theta));
                (v.arg(), v.log2_norm(), v.is_zero())
            })
            .collect();
        if vals.iter().any(|&(_, _, vanished)| vanished) {
            return Ok(Sweep::Grazing);
        }
        let mut total = 0.0f64;
        let mut min_log = f64::INFINITY;
        let mut resolved = true;
        for j in 0..n {
            let (a1, l1, _) = vals[j];
            let (a2, _, _) = vals[(j + 1) % n];
            min_log = min_log.min(l1);
            let mut step = a2 - a1;
            while step > PI {
                step -= TAU;
            }
            while step <= -PI {
                step += TAU;
            }
            if step.abs() > 0.5 * PI {
                resolved = false;
                break;
            }
            total += step;
        }
        if resolved {
            let turns = total / TAU;
            let zeros = turns.round();
            if (turns - zeros).abs() > 0.25 || zeros < -0.5 {
                return Err(Error::numeric(format!(
                    "winding sum {turns:.4} does not settle on a count"
                )));
            }
            return Ok(Sweep::Resolved(WindingCount {
                zeros: zeros as usize,
                samples: n,
                min_log2_modulus: min_log,
            }));
        }
        n *= 2;
        if n > MAX_CONTOUR_SAMPLES {
            return Ok(Sweep::Grazing);
        }
    }
}

impl WindingCount {
    fn ok(sweep: Sweep) -> Result<WindingCount> {
        match sweep {
            Sweep::Resolved(w) => Ok(w),
            Sweep::Grazing => Err(Error::numeric(
                "a zero sits on or essentially on the counting contour",
            )),
        }
    }
}

/// Number of zeros of `f` strictly inside the circle, by the argument
/// principle. Sampling doubles until no phase step exceeds a quarter turn,
/// which pins the winding number. A zero on or essentially on the contour
/// defeats every refinement and is reported as a numeric error.
pub fn winding_zero_count<F>(f: F, center: Complex64, radius: f64) -> Result<WindingCount>
where
    F: Fn(Complex64) -> ExpComplex + Sync,
{
    WindingCount::ok(winding_sweep(&f, center, radius)?)
}

/// Zeros of the family's partition function inside the given circle.
pub fn count_zeros_in_disk(
    spec: &TreeFamilySpec,
    center: Complex64,
    radius: f64,
) -> Result<WindingCount> {
    winding_zero_count(|lam| eval_z(spec, lam), center, radius)
}

/// Distance from the zero set of the partition function to `target`,
/// located by bisecting the radius of a counting contour centred there,
/// to absolute accuracy `tol`. Contours that graze a zero are retried at
/// slightly shifted radii inside the current bracket; when every retry
/// grazes, the graze itself pins a zero to within the sampler's
/// resolution of the probed circle and the bracket is updated from that.
pub fn min_root_distance(spec: &TreeFamilySpec, target: Complex64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::input("distance tolerance must be positive and finite"));
    }
    enum Probe {
        Counted(f64, usize),
        Pinned(f64),
    }
    let f = |lam: Complex64| eval_z(spec, lam);
    let probe = |r: f64, room: f64| -> Result<Probe> {
        let mut top = 0.0f64;
        for k in [0i32, 1, -1, 2, -2] {
            let rr = r + k as f64 * room * 1e-3;
            if rr <= 0.0 {
                continue;
            }
            match winding_sweep(&f, target, rr)? {
                Sweep::Resolved(w) => return Ok(Probe::Counted(rr, w.zeros)),
                Sweep::Grazing => top = top.max(rr),
            }
        }
        // the finest sweep places 2^19 samples on the circle, so a graze
        // leaves a zero within a couple of sample spacings of it
        Ok(Probe::Pinned(top * (1.0 + 4.0 * PI / MAX_CONTOUR_SAMPLES as f64)))
    };
    let mut lo = 0.0f64;
    let mut hi = tol.max(1e-9);
    loop {
        match probe(hi, hi)? {
            Probe::Counted(r, 0) => {
                lo = r;
                hi *= 2.0;
                if hi > 1e9 {
                    return Err(Error::numeric("no zeros within radius 1e9 of the target"));
                }
            }
            Probe::Counted(r, _) | Probe::Pinned(r) => {
                hi = r;
                break;
            }
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match probe(mid, 0.5 * (hi - lo))? {
            Probe::Counted(r, 0) => lo = r,
            Probe::Counted(r, _) => hi = r,
            Probe::Pinned(r) => {
                if r >= hi {
                    return Err(Error::numeric(
                        "zeros pin every probe contour; the bracket cannot reach the requested tolerance",
                    ));
                }
                hi = r;
            }
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One row of an accumulation experiment.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DistanceRecord {
    pub m: u32,
    /// Degree of the partition function at this depth, saturating.
    pub degree: u64,
    pub min_dist: f64,
}

/// Distance from the zero set at each depth in `m_lo..=m_hi` to a fixed
/// target fugacity. Broadly decreasing distances show the zeros
/// accumulating at the target. Depths are independent and run in parallel.
pub fn accumulation_experiment(
    b: u32,
    d: u32,
    target: Complex64,
    m_lo: u32,
    m_hi: u32,
    tol: f64,
) -> Result<Vec<DistanceRecord>> {
    if m_hi < m_lo {
        return Err(Error::input("depth range is empty"));
    }
    (m_lo..=m_hi)
        .into_par_iter()
        .map(|m| {
            let spec = TreeFamilySpec::new(b, d, m)?;
            let min_dist = min_root_distance(&spec, target, tol)?;
            Ok(DistanceRecord {
                m,
                degree: spec.z_degree().min(u64::MAX as u128) as u64,
                min_dist,
            })
        })
        .collect()
}

/// A root cluster: the averaged centre and how many raw roots fell into it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClusteredRoot {
    pub z: [f64; 2],
    pub multiplicity: usize,
}

/// All roots of an integer polynomial with relative residuals and
/// multiplicities recovered by clustering.
#[derive(Clone, Debug, Serialize)]
pub struct PolyRoots {
    pub roots: Vec<[f64; 2]>,
    /// Per root, |p(z)| over the sum of |coefficient| |z|^k.
    pub residuals: Vec<f64>,
    pub clusters: Vec<ClusteredRoot>,
}

/// Complex roots of an integer polynomial of degree at least one. High
/// degrees are polished against the exact coefficients, since rounding
/// them to doubles perturbs clustered roots noticeably.
pub fn poly_roots(p: &IntPoly) -> Result<PolyRoots> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::input("root finding needs degree at least 1"));
    }
    let opts = RootOptions {
        polish: p.degree() > 512,
        ..RootOptions::default()
    };
    let roots = roots_int(p, &opts)?;
    let residuals = roots.iter().map(|&z| relative_residual(p, z)).collect();
    let scale = roots.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    // a k-fold root is only computable to roughly eps^(1/k) in doubles, so
    // the merge radius has to be generous to reunite its members
    let clusters = cluster_roots(&roots, 1e-3 * scale);
    Ok(PolyRoots {
        roots: roots.iter().map(|z| [z.re, z.im]).collect(),
        residuals,
        clusters,
    })
}

/// Greedy clustering: a root joins the first centre within `tol`, and the
/// centre is re-averaged over its members.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<ClusteredRoot> {
    let mut centers: Vec<(Complex64, usize)> = Vec::new();
    for &z in roots {
        if let Some((c, k)) = centers.iter_mut().find(|(c, _)| (*c - z).norm() <= tol) {
            let members = *k as f64;
            *c = (*c * members + z) / (members + 1.0);
            *k += 1;
        } else {
            centers.push((z, 1));
        }
    }
    centers
        .into_iter()
        .map(|(c, k)| ClusteredRoot {
            z: [c.re, c.im],
            multiplicity: k,
        })
        .collect()
}

fn relative_residual(p: &IntPoly, z: Complex64) -> f64 {
    let ze = ExpComplex::from_complex(z);
    let zn = ExpReal::from_scaled(z.norm(), 0);
    let mut v = ExpComplex::zero();
    let mut s = ExpReal::zero();
    for c in p.coeffs().iter().rev() {
        let (m, e) = bigint_to_scaled(c);
        v = v.mul(&ze).add(&ExpComplex::from_scaled(m, e));
        s = s.mul(&zn).add(&ExpReal::from_scaled(m.abs(), e));
    }
    (2f64).powf((v.log2_norm() - s.log2()).clamp(-1074.0, 1024.0))
}
