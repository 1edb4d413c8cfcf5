//! Release gate: one test per acceptance criterion, each printing a
//! single `[acceptance] ...: PASS/FAIL` line. Tolerances and instance
//! sizes are pinned here so the gate cannot drift silently.

use hyperzero::dynamics::{indifferent_curve, rho, DynParams};
use hyperzero::fptas::approx_z;
use hyperzero::gen::{
    all_connected_graphs, random_connected_linear_hypergraph, random_hypergraph,
    random_linear_hypertree, random_rooted_hypertree,
};
use hyperzero::partition::{ratio, tree_ratio, RatioValue};
use hyperzero::poly::IntPoly;
use hyperzero::regions::{
    b_curve, b_curve_min, certify_wedge, check_forward_invariance, critical_gap_crossing,
    critical_gap_inequality, lambda_c_f64, lambda_s_f64, limit_map_check, shearer_disk_check,
    RegionSpec,
};
use hyperzero::sphere::SphereValue;
use hyperzero::weitz::{verify_divisibility, verify_ratio_identity};
use hyperzero::zeros::{accumulation_experiment, count_zeros_in_disk, poly_roots, TreeFamilySpec};
use hyperzero::Error;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const RHO_CLOSED_FORM_REL_TOL: f64 = 1e-10;
const INDIFFERENCE_COMPONENT_TOL: f64 = 5e-4;
const CURVE_ENDPOINT_TOL: f64 = 1e-10;
const CURVE_MIN_T_RESOLUTION: f64 = 1e-6;
const CROSSING_TOL: f64 = 1e-3;
const RATIO_IDENTITY_TOL: f64 = 1e-10;
const SHEARER_RATIO_SLACK: f64 = 1e-12;
const SHEARER_TREE_SLACK: f64 = 1e-9;
const ZERO_FREE_RADIUS_SLACK: f64 = 1e-9;
const ACCUMULATION_DECREASE: f64 = 0.30;
const WEDGE_SAMPLES: usize = 4096;
// midpoints of log-boundary pairs on the same straight side land exactly on
// the boundary again, so the convexity defect can only be machine noise
const CONVEXITY_NOISE: f64 = 1e-12;
const FPTAS_EPS: f64 = 1e-2;
const NONREAL_IM_TOL: f64 = 1e-12;

fn report(name: &str, pass: bool, detail: String) {
    println!("[acceptance] {name}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

fn within(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol
}

/// The b=4, d=2 fixed point with multiplier exactly one closest to the
/// published value, as (w, lambda).
fn indifference_solution() -> (Complex64, Complex64) {
    let pts = indifferent_curve(4, 2, &[0.0]).unwrap();
    let guess = Complex64::new(0.3540, 0.5331);
    let pt = pts
        .iter()
        .min_by(|p, q| {
            (p.w - guess)
                .norm()
                .partial_cmp(&(q.w - guess).norm())
                .unwrap()
        })
        .unwrap();
    let lambda = match pt.lambda {
        SphereValue::Finite(l) => l,
        SphereValue::Infinity => panic!("indifference solution escaped to infinity"),
    };
    (pt.w, lambda)
}

#[test]
fn criterion_01_closed_form_disk_radii_for_unit_edges() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for d in 2u32..=10 {
        let got = rho(1, d).unwrap().rho;
        let want = (d as f64).powi(d as i32) / ((d + 1) as f64).powi(d as i32 + 1);
        worst = worst.max((got - want).abs() / want);
    }
    let special = (rho(1, 2).unwrap().rho - 4.0 / 27.0).abs() / (4.0 / 27.0);
    worst = worst.max(special);
    let elapsed = start.elapsed();
    report(
        "01 closed-form disk radii d=2..10",
        worst <= RHO_CLOSED_FORM_REL_TOL && elapsed < Duration::from_secs(1),
        format!("worst rel err {worst:.3e}, elapsed {elapsed:?}"),
    );
}

#[test]
fn criterion_02_indifference_solution_for_five_uniform_trees() {
    let start = Instant::now();
    let (w, lambda) = indifference_solution();
    let w_want = Complex64::new(0.3540, 0.5331);
    let l_want = Complex64::new(0.0665, 0.6015);
    let elapsed = start.elapsed();
    let pass = within(w.re, w_want.re, INDIFFERENCE_COMPONENT_TOL)
        && within(w.im, w_want.im, INDIFFERENCE_COMPONENT_TOL)
        && within(lambda.re, l_want.re, INDIFFERENCE_COMPONENT_TOL)
        && within(lambda.im, l_want.im, INDIFFERENCE_COMPONENT_TOL)
        && within(lambda.norm(), 0.6052, INDIFFERENCE_COMPONENT_TOL)
        && lambda.norm() < 0.875
        && elapsed < Duration::from_secs(1);
    report(
        "02 b=4 d=2 indifference solution",
        pass,
        format!("w={w}, lambda={lambda}, |lambda|={}, elapsed {elapsed:?}", lambda.norm()),
    );
}

#[test]
fn criterion_03_curve_endpoints_hit_both_thresholds() {
    let mut worst = 0.0f64;
    for d in 2u32..=4 {
        let at = |theta: f64| -> Complex64 {
            let pts = indifferent_curve(1, d, &[theta]).unwrap();
            match pts[0].lambda {
                SphereValue::Finite(l) => l,
                SphereValue::Infinity => panic!("endpoint escaped to infinity"),
            }
        };
        let zero = at(0.0);
        let pi = at(std::f64::consts::PI);
        let want_zero = -lambda_s_f64(d + 1).unwrap();
        let want_pi = lambda_c_f64(d + 1).unwrap();
        worst = worst.max((zero - Complex64::new(want_zero, 0.0)).norm());
        worst = worst.max((pi - Complex64::new(want_pi, 0.0)).norm());
    }
    report(
        "03 b=1 curve endpoints d=2..4",
        worst <= CURVE_ENDPOINT_TOL,
        format!("worst endpoint error {worst:.3e}"),
    );
}

#[test]
fn criterion_04_obstruction_curve_minima() {
    let mut pass = true;
    let mut detail = String::new();
    for (d, lambda, floor) in [(2u32, 4.0, -0.916), (3, 27.0 / 16.0, -0.891)] {
        let min = b_curve_min(d, lambda).unwrap();
        let lo = b_curve(d, lambda, (min.t - CURVE_MIN_T_RESOLUTION).max(0.0)).unwrap();
        let hi = b_curve(d, lambda, (min.t + CURVE_MIN_T_RESOLUTION).min(1.0)).unwrap();
        let ok = min.value > floor
            && min.value <= 0.0
            && min.value > -1.0
            && lo >= min.value - 1e-12
            && hi >= min.value - 1e-12;
        pass &= ok;
        detail.push_str(&format!(
            "d={d}: min {:.6} at t={:.8} (neighbors {:.6}, {:.6}); ",
            min.value, min.t, lo, hi
        ));
    }
    report("04 obstruction curve minima", pass, detail);
}

#[test]
fn criterion_05_critical_gap_constants() {
    let gap = critical_gap_inequality(4).unwrap();
    let want = BigRational::new(BigInt::from(1037), BigInt::from(1215));
    let crossing = critical_gap_crossing();
    let pass =
        gap.lhs == want && gap.holds && within(crossing, 4.0389, CROSSING_TOL);
    report(
        "05 critical gap: exact d=4 value and crossing",
        pass,
        format!("lhs={}, crossing={crossing:.5}", gap.lhs),
    );
}

#[test]
fn criterion_06_unfolding_identities_across_the_census() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let mut graphs = Vec::new();
    for n in 1..=6 {
        graphs.extend(all_connected_graphs(n).unwrap());
    }
    assert_eq!(graphs.len(), 143);
    for _ in 0..200 {
        let n = rng.gen_range(2..=9);
        graphs.push(random_connected_linear_hypergraph(n, 3, 4, rng.gen_range(0..=2), &mut rng).unwrap());
    }
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    let mut pass = true;
    for h in &graphs {
        for v in 0..h.n() {
            pass &= verify_divisibility(h, v).is_ok();
            let vectors: Vec<Vec<Complex64>> = (0..10)
                .map(|_| {
                    (0..h.n())
                        .map(|_| Complex64::new(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9)))
                        .collect()
                })
                .collect();
            let rep = verify_ratio_identity(h, v, &vectors).unwrap();
            pass &= rep.pass;
            worst = worst.max(rep.max_rel_err);
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        "06 divisibility and ratio identity suite",
        pass && worst <= RATIO_IDENTITY_TOL && elapsed < Duration::from_secs(120),
        format!("{checked} roots checked, worst rel err {worst:.3e}, elapsed {elapsed:?}"),
    );
}

#[test]
fn criterion_07_tree_recursion_against_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let mut worst = 0.0f64;
    for trial in 0..200 {
        let n = rng.gen_range(2..=12);
        let t = random_linear_hypertree(n, 3, 4, &mut rng).unwrap();
        let root = rng.gen_range(0..n);
        let mut attempts = 0;
        loop {
            let fug: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9)))
                .collect();
            let fast = tree_ratio(&t, root, &fug).unwrap();
            let slow = ratio(&t, root, &fug).unwrap();
            match (fast, slow) {
                (RatioValue::Finite(a), RatioValue::Finite(b)) => {
                    worst = worst.max((a - b).norm() / a.norm().max(1.0));
                    break;
                }
                (RatioValue::Infinite, RatioValue::Infinite) => break,
                _ => {
                    attempts += 1;
                    assert!(attempts < 5, "trial {trial}: persistent degenerate draw");
                }
            }
        }
    }
    report(
        "07 tree recursion equals enumeration",
        worst <= RATIO_IDENTITY_TOL,
        format!("worst rel err {worst:.3e}"),
    );
}

#[test]
fn criterion_08_shearer_disk_invariance() {
    let mut pass = true;
    let mut detail = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for delta in 3u32..=5 {
        let rep = shearer_disk_check(delta, 10_000, 800 + delta as u64).unwrap();
        let bound = 1.0 / delta as f64;
        pass &= rep.pass && rep.max_ratio <= bound + SHEARER_RATIO_SLACK;
        detail.push_str(&format!("delta={delta}: max |F| {:.12}; ", rep.max_ratio));

        let strength = lambda_s_f64(delta).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let n = rng.gen_range(2..=25);
            let (t, root) =
                random_rooted_hypertree(n, 4, (delta - 1) as usize, &mut rng).unwrap();
            let fug: Vec<Complex64> = (0..n)
                .map(|_| Complex64::from_polar(strength, rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            match tree_ratio(&t, root, &fug).unwrap() {
                RatioValue::Finite(r) => worst = worst.max(r.norm()),
                RatioValue::Infinite => {
                    pass = false;
                    detail.push_str("unexpected pole; ");
                }
            }
        }
        pass &= worst <= bound + SHEARER_TREE_SLACK;
        detail.push_str(&format!("max tree ratio {worst:.12}; "));
    }
    report("08 shearer disk invariance", pass, detail);
}

#[test]
fn criterion_09_zero_free_disks_for_truncated_trees() {
    let mut pass = true;
    let mut detail = String::new();
    for (b, d) in [(1u32, 2u32), (2, 2), (4, 2)] {
        let radius = rho(b, d).unwrap().rho - ZERO_FREE_RADIUS_SLACK;
        for m in 0..=6u32 {
            let spec = TreeFamilySpec::new(b, d, m).unwrap();
            let count = count_zeros_in_disk(&spec, Complex64::ZERO, radius)
                .unwrap()
                .zeros;
            pass &= count == 0;
            if count != 0 {
                detail.push_str(&format!("b={b} d={d} m={m}: {count} zeros inside; "));
            }
        }
        detail.push_str(&format!("b={b} d={d}: clean at radius {radius:.6}; "));
    }
    report("09 zero-free disks up to depth 6", pass, detail);
}

#[test]
fn criterion_10_zeros_accumulate_on_their_targets() {
    let start = Instant::now();
    let real_target = Complex64::new(-lambda_s_f64(3).unwrap(), 0.0);
    let rows_a = accumulation_experiment(1, 2, real_target, 3, 10, 1e-5).unwrap();
    let drop_a = rows_a.last().unwrap().min_dist / rows_a[0].min_dist;

    let (_, lambda0) = indifference_solution();
    let rows_b = accumulation_experiment(4, 2, lambda0, 3, 6, 1e-5).unwrap();
    let drop_b = rows_b.last().unwrap().min_dist / rows_b[0].min_dist;

    let elapsed = start.elapsed();
    let pass = drop_a <= 1.0 - ACCUMULATION_DECREASE
        && drop_b <= 1.0 - ACCUMULATION_DECREASE
        && elapsed < Duration::from_secs(300);
    report(
        "10 accumulation toward both targets",
        pass,
        format!(
            "b=1: {:.5} -> {:.5} (x{drop_a:.3}); b=4: {:.5} -> {:.5} (x{drop_b:.3}); elapsed {elapsed:?}",
            rows_a[0].min_dist,
            rows_a.last().unwrap().min_dist,
            rows_b[0].min_dist,
            rows_b.last().unwrap().min_dist
        ),
    );
}

#[test]
fn criterion_11_wedge_certificates_and_negative_control() {
    let mut pass = true;
    let mut detail = String::new();
    let instances = [(-1.0 / 3.0, 2.0, 3.9, 2u32), (-0.25, 1.0, 1.68, 3)];
    for (x, x0, lambda, d) in instances {
        let wedge = RegionSpec::region_a(x, x0, 1e-3).unwrap();
        let p = DynParams::new(1, d, Complex64::new(lambda, 0.0)).unwrap();
        let cert = certify_wedge(&wedge, &p, WEDGE_SAMPLES).unwrap();
        let strict = cert.pass
            && cert.forward.margin > 0.0
            && cert.log_convexity.worst <= CONVEXITY_NOISE
            && cert.semigroup.worst < 0.0;
        pass &= strict;
        detail.push_str(&format!(
            "lambda={lambda} d={d}: inv margin {:.3e}, convexity worst {:.3e}, semigroup worst {:.3e}; ",
            cert.forward.margin, cert.log_convexity.worst, cert.semigroup.worst
        ));
    }
    let wedge = RegionSpec::region_a(-1.0 / 3.0, 2.0, 1e-3).unwrap();
    let p = DynParams::new(1, 2, Complex64::new(4.2, 0.0)).unwrap();
    let control = check_forward_invariance(&wedge, &p, WEDGE_SAMPLES);
    pass &= !control.pass;
    detail.push_str(&format!(
        "negative control margin {:.3e} (must fail)",
        control.margin
    ));
    report("11 wedge certification", pass, detail);
}

#[test]
fn criterion_12_approximate_counting_inside_the_certified_regimes() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1200);
    let mut worst = 0.0f64;
    let mut runs = 0usize;
    for _ in 0..50 {
        let n = rng.gen_range(8..=18);
        let h = random_hypergraph(n, 3, 4, rng.gen_range(0..=3), &mut rng).unwrap();
        let delta = (h.max_degree() as u32).max(2);
        let base = 0.5 * lambda_s_f64(delta).unwrap();
        for k in 0..5 {
            let lam = Complex64::from_polar(base, k as f64 * std::f64::consts::TAU / 5.0);
            let r = approx_z(&h, lam, FPTAS_EPS).unwrap();
            let err = r.empirical_rel_error.expect("instances are small enough");
            worst = worst.max(err);
            runs += 1;
        }
    }
    let mut refusals = true;
    for _ in 0..3 {
        let n = rng.gen_range(8..=14);
        let h = random_hypergraph(n, 3, 4, 1, &mut rng).unwrap();
        let delta = (h.max_degree() as u32).max(2);
        let past_segment = Complex64::new(lambda_c_f64(delta.max(3)).unwrap() + 0.1, 0.0);
        let off_axis = Complex64::from_polar(1.05 * lambda_s_f64(delta).unwrap(), 0.7);
        refusals &= matches!(approx_z(&h, past_segment, FPTAS_EPS), Err(Error::Refusal(_)));
        refusals &= matches!(approx_z(&h, off_axis, FPTAS_EPS), Err(Error::Refusal(_)));
    }
    let elapsed = start.elapsed();
    report(
        "12 approximate counting with refusals",
        worst <= FPTAS_EPS && refusals && elapsed < Duration::from_secs(120),
        format!("{runs} runs, worst empirical err {worst:.3e}, elapsed {elapsed:?}"),
    );
}

#[test]
fn criterion_13_single_edge_roots_are_nonreal() {
    let rep = poly_roots(&IntPoly::from_i64(&[1, 3, 3])).unwrap();
    let min_im = rep
        .roots
        .iter()
        .map(|r| r[1].abs())
        .fold(f64::INFINITY, f64::min);
    report(
        "13 non-real roots of the single-edge polynomial",
        rep.roots.len() == 2 && min_im > NONREAL_IM_TOL,
        format!("roots {:?}", rep.roots),
    );
}

#[test]
fn criterion_14_rescaled_map_converges_to_the_exponential() {
    let grid: Vec<Complex64> = (0..=40)
        .flat_map(|i| {
            (0..=40).map(move |j| {
                Complex64::new(2.0 * i as f64 / 40.0, -1.0 + 2.0 * j as f64 / 40.0)
            })
        })
        .collect();
    let lam = Complex64::new(2.0, 0.0);
    let devs: Vec<f64> = [10u32, 100, 1000]
        .iter()
        .map(|&d| limit_map_check(lam, d, &grid))
        .collect();
    let r1 = devs[0] / devs[1];
    let r2 = devs[1] / devs[2];
    let pass = (5.0..20.0).contains(&r1) && (5.0..20.0).contains(&r2);
    report(
        "14 deviation shrinks tenfold per decade",
        pass,
        format!("deviations {devs:?}, ratios {r1:.2} and {r2:.2}"),
    );
}
