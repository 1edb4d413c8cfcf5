//! Command line front end. Every subcommand prints exactly one JSON
//! document to stdout and encodes its status twice: in a `status` field
//! and in the process exit code (0 ok, 2 input error, 3 resource limit,
//! 4 numeric failure, 5 theorem violation, 6 refusal). Exact rationals
//! are serialized as `p/q` strings, big integers as decimal strings, and
//! complex numbers as `[re, im]` pairs.

use clap::{Parser, Subcommand};
use hyperzero::dynamics::{indifferent_curve, orbit_from_lambda, rho, DynParams};
use hyperzero::fptas::approx_z;
use hyperzero::hypergraph::{
    constant_fugacities, parse_hypergraph_json, Hypergraph, HypergraphFile,
};
use hyperzero::partition::{ratio, z_poly, RatioValue};
use hyperzero::regions::{
    b_curve, b_curve_min, certify_wedge, critical_gap_crossing, critical_gap_inequality, lambda_c,
    lambda_s, shearer_disk_check, RegionSpec,
};
use hyperzero::sphere::SphereValue;
use hyperzero::weitz::{build_weitz, prune_unit_edges, verify_divisibility};
use hyperzero::zeros::accumulation_experiment;
use hyperzero::{Error, Result};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "hyperzero",
    version,
    about = "Independence polynomials, zero-free disks, and hypertree zero experiments"
)]
struct Cli {
    /// Cap on worker threads (0 = automatic); HYPERZERO_THREADS applies when the flag is absent
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural facts about a hypergraph file
    Classify { file: PathBuf },
    /// Exact coefficients of the independence polynomial
    Zpoly { file: PathBuf },
    /// Occupation ratio of one vertex at a constant fugacity
    Ratio {
        file: PathBuf,
        /// Root vertex; defaults to the file's "root" field
        #[arg(long)]
        vertex: Option<usize>,
        /// Fugacity, written like 0.25, -0.1, or 0.05-0.6i
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Unfold one vertex into its rooted hypertree
    Weitz {
        file: PathBuf,
        /// Root vertex; defaults to the file's "root" field
        #[arg(long)]
        vertex: Option<usize>,
        /// Drop unit edges and restrict to the root component afterwards
        #[arg(long)]
        prune: bool,
        /// Write the tree as hypergraph JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the unfolded tree's polynomial is a multiple of the input's
    VerifyDivisibility {
        file: PathBuf,
        /// Root vertex; defaults to the file's "root" field
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Exact zero-free thresholds for a degree bound (delta >= 3)
    Radii {
        #[arg(long)]
        delta: u32,
    },
    /// Certify a wedge region: forward invariance, log-convexity, semigroup
    CertifyRegion {
        /// Region family; only the truncated wedge "A" is certifiable
        #[arg(long, default_value = "A")]
        kind: String,
        /// Wedge vertex on the real axis
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Abscissa where the wedge is truncated
        #[arg(long)]
        x0: f64,
        /// Opening parameter of the wedge
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Fugacity, real or a+bi
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Edge size minus one of the tree family
        #[arg(long, default_value_t = 1)]
        b: u32,
        /// Branching number of the tree family
        #[arg(long)]
        d: u32,
        /// Boundary samples per check
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Random multivariate check that the ratio map keeps the 1/delta disk
    CertifyDisk {
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Largest zero-free disk radius for a uniform linear hypertree family
    Rho {
        /// Edge size minus one
        #[arg(long)]
        b: u32,
        /// Branching number
        #[arg(long)]
        d: u32,
    },
    /// Trace the parameters whose fixed point has a unit multiplier
    IndifferentCurve {
        /// Edge size minus one
        #[arg(long)]
        b: u32,
        /// Branching number
        #[arg(long)]
        d: u32,
        /// Subdivisions of [0, pi]; steps+1 angles are sampled
        #[arg(long, default_value_t = 720)]
        steps: usize,
        /// Write CSV (theta, re_w, im_w, re_lambda, im_lambda) here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the ratio map starting from lambda itself
    Orbit {
        /// Edge size minus one
        #[arg(long)]
        b: u32,
        /// Branching number
        #[arg(long)]
        d: u32,
        /// Fugacity, real or a+bi
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Distance from truncated-tree zeros to a target, depth by depth
    TreeZeros {
        /// Edge size minus one
        #[arg(long)]
        b: u32,
        /// Branching number
        #[arg(long)]
        d: u32,
        /// Largest depth
        #[arg(long)]
        depth: u32,
        /// Smallest depth
        #[arg(long, default_value_t = 1)]
        from: u32,
        /// Accumulation target, real or a+bi
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Absolute accuracy of each distance
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        /// Write CSV (m, degree, min_dist) here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate the partition function inside the certified regimes
    Approx {
        file: PathBuf,
        /// Fugacity, real or a+bi
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Relative accuracy target in (0, 1)
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
    },
    /// Minimum of the obstruction curve over [0, 1]
    BCurves {
        /// Branching number, 2 or 3
        #[arg(long)]
        d: u32,
        #[arg(long)]
        lambda: f64,
        /// CSV subdivisions of [0, 1]
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Write CSV (t, value) here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact gap between the uniqueness threshold and the escape term
    CriticalGap {
        #[arg(long, default_value_t = 4)]
        d: u32,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = thread_cap(cli.threads) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let code = match run(&cli.command) {
        Ok(mut payload) => {
            let obj = payload.as_object_mut().expect("payloads are JSON objects");
            obj.insert("status".into(), json!("ok"));
            println!("{payload}");
            0
        }
        Err(e) => {
            let (status, code) = status_code(&e);
            println!("{}", json!({ "status": status, "message": e.to_string() }));
            eprintln!("{e}");
            code
        }
    };
    std::process::exit(code);
}

fn run(cmd: &Cmd) -> Result<Value> {
    match cmd {
        Cmd::Classify { file } => {
            let (h, _) = load(file)?;
            Ok(serde_json::to_value(h.classify()).expect("classification serializes"))
        }
        Cmd::Zpoly { file } => {
            let (h, _) = load(file)?;
            let p = z_poly(&h)?;
            Ok(json!({ "coeffs": decimal_strings(p.coeffs()) }))
        }
        Cmd::Ratio { file, vertex, lambda } => {
            let (h, root) = load(file)?;
            let v = pick_vertex(*vertex, root, h.n())?;
            let lam = parse_complex(lambda)?;
            let r = ratio(&h, v, &constant_fugacities(h.n(), lam))?;
            Ok(json!({ "ratio": ratio_json(r) }))
        }
        Cmd::Weitz { file, vertex, prune, out } => {
            let (h, root) = load(file)?;
            let v = pick_vertex(*vertex, root, h.n())?;
            let mut t = build_weitz(&h, v)?;
            if *prune {
                t = prune_unit_edges(&t)?;
            }
            let doc = HypergraphFile {
                n: t.tree.n(),
                edges: t.tree.edges().to_vec(),
                root: Some(t.root),
                labels: Some(t.labels),
            };
            match out {
                Some(path) => {
                    write_text(path, &serde_json::to_string_pretty(&doc).expect("tree serializes"))?;
                    Ok(json!({
                        "vertices": doc.n,
                        "edge_count": doc.edges.len(),
                        "root": doc.root,
                        "out": path.display().to_string(),
                    }))
                }
                None => Ok(serde_json::to_value(&doc).expect("tree serializes")),
            }
        }
        Cmd::VerifyDivisibility { file, vertex } => {
            let (h, root) = load(file)?;
            let v = pick_vertex(*vertex, root, h.n())?;
            let q = verify_divisibility(&h, v)?;
            Ok(json!({ "quotient": decimal_strings(q.coeffs()), "degree": q.degree() }))
        }
        Cmd::Radii { delta } => Ok(json!({
            "lambda_s": lambda_s(*delta)?.to_string(),
            "lambda_c": lambda_c(*delta)?.to_string(),
        })),
        Cmd::CertifyRegion { kind, x, x0, eps, lambda, b, d, samples } => {
            if kind != "A" {
                return Err(Error::input(format!(
                    "region kind '{kind}' has no end-to-end certificate; use kind A"
                )));
            }
            let wedge = RegionSpec::region_a(*x, *x0, *eps)?;
            let p = DynParams::new(*b, *d, parse_complex(lambda)?)?;
            let cert = certify_wedge(&wedge, &p, *samples)?;
            let margin = cert.forward.margin;
            let mut v = serde_json::to_value(&cert).expect("certificate serializes");
            v.as_object_mut().unwrap().insert("margin".into(), json!(margin));
            Ok(v)
        }
        Cmd::CertifyDisk { delta, samples, seed } => {
            let rep = shearer_disk_check(*delta, *samples, *seed)?;
            Ok(serde_json::to_value(&rep).expect("report serializes"))
        }
        Cmd::Rho { b, d } => {
            let r = rho(*b, *d)?;
            Ok(json!({
                "rho": r.rho,
                "w": [r.w.re, r.w.im],
                "lambda": [r.lambda.re, r.lambda.im],
            }))
        }
        Cmd::IndifferentCurve { b, d, steps, out } => {
            if *steps == 0 {
                return Err(Error::input("steps must be positive"));
            }
            let thetas: Vec<f64> = (0..=*steps).map(|j| PI * j as f64 / *steps as f64).collect();
            let pts = indifferent_curve(*b, *d, &thetas)?;
            match out {
                Some(path) => {
                    let mut csv = String::from("theta,re_w,im_w,re_lambda,im_lambda\n");
                    for p in &pts {
                        let (lr, li) = match p.lambda {
                            SphereValue::Finite(l) => (l.re, l.im),
                            SphereValue::Infinity => (f64::INFINITY, f64::INFINITY),
                        };
                        csv.push_str(&format!("{},{},{},{},{}\n", p.theta, p.w.re, p.w.im, lr, li));
                    }
                    write_text(path, &csv)?;
                    Ok(json!({ "written": pts.len(), "out": path.display().to_string() }))
                }
                None => {
                    let rows: Vec<Value> = pts
                        .iter()
                        .map(|p| {
                            json!({
                                "theta": p.theta,
                                "branch": p.branch,
                                "w": [p.w.re, p.w.im],
                                "lambda": sphere_json(p.lambda),
                            })
                        })
                        .collect();
                    Ok(json!({ "points": rows }))
                }
            }
        }
        Cmd::Orbit { b, d, lambda, steps } => {
            let p = DynParams::new(*b, *d, parse_complex(lambda)?)?;
            let orb = orbit_from_lambda(&p, *steps);
            Ok(json!({
                "points": orb.points.iter().map(|&s| sphere_json(s)).collect::<Vec<_>>(),
                "minus_one_hits": orb.minus_one_hits,
            }))
        }
        Cmd::TreeZeros { b, d, depth, from, target, tol, out } => {
            let rows = accumulation_experiment(*b, *d, parse_complex(target)?, *from, *depth, *tol)?;
            match out {
                Some(path) => {
                    let mut csv = String::from("m,degree,min_dist\n");
                    for r in &rows {
                        csv.push_str(&format!("{},{},{}\n", r.m, r.degree, r.min_dist));
                    }
                    write_text(path, &csv)?;
                    Ok(json!({ "written": rows.len(), "out": path.display().to_string() }))
                }
                None => Ok(json!({ "rows": serde_json::to_value(&rows).expect("rows serialize") })),
            }
        }
        Cmd::Approx { file, lambda, eps } => {
            let (h, _) = load(file)?;
            let r = approx_z(&h, parse_complex(lambda)?, *eps)?;
            Ok(json!({
                "estimate_re": r.estimate.re,
                "estimate_im": r.estimate.im,
                "order": r.order,
                "empirical_rel_error": r.empirical_rel_error,
            }))
        }
        Cmd::BCurves { d, lambda, steps, out } => {
            let min = b_curve_min(*d, *lambda)?;
            let mut obj = json!({
                "d": *d,
                "lambda": *lambda,
                "t_min": min.t,
                "value_min": min.value,
            });
            if let Some(path) = out {
                if *steps == 0 {
                    return Err(Error::input("steps must be positive"));
                }
                let mut csv = String::from("t,value\n");
                for j in 0..=*steps {
                    let t = j as f64 / *steps as f64;
                    csv.push_str(&format!("{},{}\n", t, b_curve(*d, *lambda, t)?));
                }
                write_text(path, &csv)?;
                let fields = obj.as_object_mut().unwrap();
                fields.insert("out".into(), json!(path.display().to_string()));
                fields.insert("written".into(), json!(*steps + 1));
            }
            Ok(obj)
        }
        Cmd::CriticalGap { d } => {
            let rep = critical_gap_inequality(*d)?;
            Ok(json!({
                "d": rep.d,
                "lhs": rep.lhs.to_string(),
                "rhs_lo": rep.rhs_lo.to_string(),
                "rhs_hi": rep.rhs_hi.to_string(),
                "holds": rep.holds,
                "crossing": critical_gap_crossing(),
            }))
        }
    }
}

fn status_code(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Input(_) => ("input-error", 2),
        Error::Resource(_) => ("resource-error", 3),
        Error::Numeric(_) | Error::DegenerateRatio(_) => ("numeric-error", 4),
        Error::TheoremViolation(_) => ("theorem-violation", 5),
        Error::Refusal(_) => ("refusal", 6),
    }
}

fn thread_cap(flag: usize) -> Option<usize> {
    if flag > 0 {
        return Some(flag);
    }
    std::env::var("HYPERZERO_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn load(path: &Path) -> Result<(Hypergraph, Option<usize>)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_hypergraph_json(&text)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn pick_vertex(flag: Option<usize>, file_root: Option<usize>, n: usize) -> Result<usize> {
    let v = flag
        .or(file_root)
        .ok_or_else(|| Error::input("pass --vertex or put a \"root\" field in the file"))?;
    if v >= n {
        return Err(Error::input(format!("vertex {v} out of range (n = {n})")));
    }
    Ok(v)
}

fn decimal_strings<T: std::fmt::Display>(coeffs: &[T]) -> Vec<String> {
    coeffs.iter().map(|c| c.to_string()).collect()
}

fn ratio_json(r: RatioValue) -> Value {
    match r {
        RatioValue::Finite(z) => json!([z.re, z.im]),
        RatioValue::Infinite => json!("infinite"),
    }
}

fn sphere_json(s: SphereValue) -> Value {
    match s {
        SphereValue::Finite(z) => json!([z.re, z.im]),
        SphereValue::Infinity => json!("infinity"),
    }
}

/// Accepts "a", "bi", "a+bi", and "a-bi", with bare "i" and "-i" for unit
/// imaginary parts; exponent notation is fine on either part.
fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::input(format!("cannot parse '{s}' as a complex number"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &c) in bytes.iter().enumerate().skip(1) {
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { 0.0 } else { re_part.parse().map_err(|_| bad())? };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => im_part.parse().map_err(|_| bad())?,
        };
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}
