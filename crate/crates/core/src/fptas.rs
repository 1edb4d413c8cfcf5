//! Approximate counting at desk scale: an epsilon-relative estimate of the
//! independence partition function from a truncated Taylor expansion of
//! log Z around fugacity zero. The expansion converges geometrically while
//! the fugacity stays inside a zero-free neighbourhood of the origin, so
//! the estimator accepts only fugacities in the regimes it can certify and
//! refuses the rest outright.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::partition::{count_independent_sets, z_eval};
use crate::poly::IntPoly;
use crate::regions::{lambda_c_f64, lambda_s_f64};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Highest Taylor order the coefficient engine will compute.
pub const LOG_ORDER_CAP: usize = 12;

/// Largest instance for which the estimate is also compared against the
/// exactly computed partition function.
pub const EMPIRICAL_N_CAP: usize = 20;

/// Imaginary slack under which a fugacity is treated as lying on the real
/// axis when testing the positive-axis regime.
pub const REAL_AXIS_SLACK: f64 = 1e-9;

/// Outcome of an approximation run.
#[derive(Clone, Copy, Debug)]
pub struct ApproxResult {
    pub estimate: Complex64,
    /// Taylor order actually summed.
    pub order: usize,
    /// Relative deviation from the exact partition function, filled for
    /// instances small enough to evaluate exactly.
    pub empirical_rel_error: Option<f64>,
}

/// Leading Taylor coefficients of log Z at fugacity zero, exact rationals.
/// Order `m` needs independent-set counts up to size `m` only, so the work
/// is polynomial in the vertex count for fixed `m`.
pub fn log_z_coeffs(h: &Hypergraph, m: usize) -> Result<Vec<BigRational>> {
    if m > LOG_ORDER_CAP {
        return Err(Error::resource(format!(
            "Taylor order {m} is over the cap of {LOG_ORDER_CAP}"
        )));
    }
    let counts = count_independent_sets(h, Some(m))?;
    IntPoly::from_coeffs(counts).log_series(m)
}

/// Whether the estimator's guarantee covers this fugacity for hypergraphs
/// of maximum degree `delta`: either the open disk of radius lambda_s or
/// the open positive real segment up to lambda_c. Both thresholds shrink
/// as the degree grows, so degrees below their domains clamp up, which
/// only makes the test stricter than necessary.
pub fn in_certified_region(delta: u32, lambda: Complex64) -> bool {
    let disk = lambda_s_f64(delta.max(2)).expect("clamped degree is in range");
    if lambda.norm() < disk {
        return true;
    }
    let segment = lambda_c_f64(delta.max(3)).expect("clamped degree is in range");
    lambda.im.abs() <= REAL_AXIS_SLACK && lambda.re > 0.0 && lambda.re < segment
}

/// Epsilon-relative estimate of Z at one fugacity. The Taylor order grows
/// until the magnitude of the last included term drops under eps/2 or the
/// order cap is reached; the estimate is the exponential of the truncated
/// series. Fugacities outside the certified regimes are refused because
/// the method's guarantee does not apply to them.
pub fn approx_z(h: &Hypergraph, lambda: Complex64, eps: f64) -> Result<ApproxResult> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::input("eps must lie in (0, 1)"));
    }
    if lambda == Complex64::ZERO {
        return Ok(ApproxResult {
            estimate: Complex64::ONE,
            order: 0,
            empirical_rel_error: empirical_error(h, lambda, Complex64::ONE)?,
        });
    }
    let delta = h.max_degree() as u32;
    if !in_certified_region(delta, lambda) {
        return Err(Error::refusal(format!(
            "fugacity {lambda} is outside the certified regimes for degree {delta} \
             (open disk of radius lambda_s and open real segment up to lambda_c)"
        )));
    }
    let coeffs = log_z_coeffs(h, LOG_ORDER_CAP)?;
    let mut sum = Complex64::ZERO;
    let mut order = 0;
    let mut power = Complex64::ONE;
    for (j, c) in coeffs.iter().enumerate() {
        power *= lambda;
        let term = c.to_f64().unwrap_or(f64::INFINITY) * power;
        sum += term;
        order = j + 1;
        if term.norm() < 0.5 * eps {
            break;
        }
    }
    let estimate = sum.exp();
    Ok(ApproxResult {
        estimate,
        order,
        empirical_rel_error: empirical_error(h, lambda, estimate)?,
    })
}

fn empirical_error(h: &Hypergraph, lambda: Complex64, estimate: Complex64) -> Result<Option<f64>> {
    if h.n() > EMPIRICAL_N_CAP {
        return Ok(None);
    }
    let exact = z_eval(h, &vec![lambda; h.n()])?;
    if exact.norm() == 0.0 {
        return Ok(None);
    }
    Ok(Some((estimate - exact).norm() / exact.norm()))
}
