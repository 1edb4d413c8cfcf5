//! Self-avoiding unfoldings: every hypergraph unrolls, from a chosen
//! vertex, into a rooted linear hypertree whose root occupation ratio
//! equals the original one and whose independence polynomial the
//! original polynomial divides exactly.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Fugacities, Hypergraph};
use crate::partition::{ratio, tree_ratio, tree_z_poly, z_poly, RatioValue};
use crate::poly::IntPoly;

/// Default ceiling on constructed tree vertices; unfoldings grow
/// exponentially in the input size.
pub const WEITZ_VERTEX_CAP: usize = 1_000_000;

/// Relative tolerance for the ratio identity verifier.
pub const RATIO_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct RootedHypertree {
    pub tree: Hypergraph,
    pub root: usize,
    /// Origin vertex in the input hypergraph for every tree vertex.
    pub labels: Vec<usize>,
}

/// Unrolls the component of `v` into a rooted linear hypertree.
///
/// If that component already is a linear hypertree the result is the
/// component itself with an identity labeling. Otherwise the incident
/// edges of `v` are visited in input order; the child under edge `e_i`
/// at its `j`-th other vertex is built from the component of that vertex
/// in the hypergraph with edges `e_1..e_i` removed and the vertices `v`
/// and the first `j-1` other vertices of `e_i` shrunk away, and a fresh
/// root is joined to the child roots of each `e_i` by a new edge.
pub fn build_weitz(h: &Hypergraph, v: usize) -> Result<RootedHypertree> {
    build_weitz_capped(h, v, WEITZ_VERTEX_CAP)
}

pub fn build_weitz_capped(h: &Hypergraph, v: usize, cap: usize) -> Result<RootedHypertree> {
    let (comp, map) = h.component_of(v)?;
    let labels: Vec<usize> = map.kept().to_vec();
    let root = map.new_id(v).unwrap();
    let mut budget = 0usize;
    build_rec(&comp, &labels, root, cap, &mut budget)
}

fn charge(budget: &mut usize, amount: usize, cap: usize) -> Result<()> {
    *budget += amount;
    if *budget > cap {
        return Err(Error::resource(format!(
            "unfolding exceeds the {cap}-vertex cap"
        )));
    }
    Ok(())
}

fn build_rec(
    h: &Hypergraph,
    labels: &[usize],
    v: usize,
    cap: usize,
    budget: &mut usize,
) -> Result<RootedHypertree> {
    if h.classify().is_linear_hypertree {
        charge(budget, h.n(), cap)?;
        return Ok(RootedHypertree {
            tree: h.clone(),
            root: v,
            labels: labels.to_vec(),
        });
    }
    charge(budget, 1, cap)?;
    let incident = h.incident_edges(v);
    let mut children: Vec<RootedHypertree> = Vec::new();
    let mut edge_groups: Vec<Vec<usize>> = Vec::with_capacity(incident.len());
    for (i, &ei) in incident.iter().enumerate() {
        let others: Vec<usize> = h.edges()[ei].iter().copied().filter(|&u| u != v).collect();
        let removed = h.remove_edges(&incident[..=i])?;
        let mut group = Vec::with_capacity(others.len());
        for j in 0..others.len() {
            let mut gone = vec![v];
            gone.extend_from_slice(&others[..j]);
            let (shrunk, m1) = removed.shrink(&gone)?;
            let target = m1.new_id(others[j]).unwrap();
            let (comp, m2) = shrunk.component_of(target)?;
            let child_labels: Vec<usize> =
                m2.kept().iter().map(|&u| labels[m1.old_id(u)]).collect();
            let child_root = m2.new_id(target).unwrap();
            group.push(children.len());
            children.push(build_rec(&comp, &child_labels, child_root, cap, budget)?);
        }
        edge_groups.push(group);
    }
    let mut offsets = Vec::with_capacity(children.len());
    let mut n = 1usize;
    for c in &children {
        offsets.push(n);
        n += c.tree.n();
    }
    let mut out_labels = Vec::with_capacity(n);
    out_labels.push(labels[v]);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for (c, &off) in children.iter().zip(&offsets) {
        for e in c.tree.edges() {
            edges.push(e.iter().map(|&u| u + off).collect());
        }
        out_labels.extend_from_slice(&c.labels);
    }
    for group in &edge_groups {
        let mut e = vec![0usize];
        e.extend(group.iter().map(|&k| offsets[k] + children[k].root));
        edges.push(e);
    }
    Ok(RootedHypertree {
        tree: Hypergraph::new(n, edges)?,
        root: 0,
        labels: out_labels,
    })
}

/// Drops every size-1 hyperedge together with its vertex and all edges
/// meeting that vertex, then restricts to the component of the root.
/// Such vertices are excluded from every independent set, so the
/// polynomial and the root ratio are unchanged.
pub fn prune_unit_edges(t: &RootedHypertree) -> Result<RootedHypertree> {
    let mut unit: Vec<usize> = t
        .tree
        .edges()
        .iter()
        .filter(|e| e.len() == 1)
        .map(|e| e[0])
        .collect();
    unit.sort_unstable();
    unit.dedup();
    if unit.is_empty() {
        return Ok(t.clone());
    }
    if unit.contains(&t.root) {
        return Err(Error::DegenerateRatio(
            "root sits in a unit edge; its ratio leg vanishes identically".into(),
        ));
    }
    let (cut, m1) = t.tree.remove_vertices(&unit)?;
    let (comp, m2) = cut.component_of(m1.new_id(t.root).unwrap())?;
    let labels = m2
        .kept()
        .iter()
        .map(|&u| t.labels[m1.old_id(u)])
        .collect();
    Ok(RootedHypertree {
        root: m2.new_id(m1.new_id(t.root).unwrap()).unwrap(),
        tree: comp,
        labels,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub checked: usize,
    pub max_rel_err: f64,
    /// Fugacity vectors that stayed degenerate through all retries.
    pub inconclusive: usize,
    pub pass: bool,
}

/// Checks, for each fugacity vector, that the occupation ratio of `v` in
/// `h` matches the root ratio of the unfolding with fugacities pulled
/// back through the labeling. Degenerate samples are retried nearby a
/// few times before being reported inconclusive.
pub fn verify_ratio_identity(
    h: &Hypergraph,
    v: usize,
    vectors: &[Fugacities],
) -> Result<RatioReport> {
    let t = build_weitz(h, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a71_0123);
    let mut max_rel_err = 0.0f64;
    let mut inconclusive = 0usize;
    for lam in vectors {
        if lam.len() != h.n() {
            return Err(Error::input(format!(
                "fugacity vector has length {} but n = {}",
                lam.len(),
                h.n()
            )));
        }
        let mut attempt = lam.clone();
        let mut err = None;
        for _ in 0..4 {
            let pushed: Fugacities = t.labels.iter().map(|&u| attempt[u]).collect();
            let pair = (ratio(h, v, &attempt), tree_ratio(&t.tree, t.root, &pushed));
            match pair {
                (Ok(RatioValue::Finite(a)), Ok(RatioValue::Finite(b))) => {
                    err = Some((a - b).norm() / a.norm().max(1.0));
                    break;
                }
                (Ok(RatioValue::Infinite), Ok(RatioValue::Infinite)) => {
                    err = Some(0.0);
                    break;
                }
                _ => {
                    // pole or 0/0 on either side; jiggle and retry
                    for x in attempt.iter_mut() {
                        let phase = rng.gen::<f64>() * std::f64::consts::TAU;
                        *x = *x * (1.0 + 0.05 * Complex64::from_polar(1.0, phase))
                            + 1e-3 * Complex64::from_polar(1.0, phase);
                    }
                }
            }
        }
        match err {
            Some(e) => max_rel_err = max_rel_err.max(e),
            None => inconclusive += 1,
        }
    }
    Ok(RatioReport {
        checked: vectors.len(),
        max_rel_err,
        inconclusive,
        pass: inconclusive == 0 && max_rel_err <= RATIO_TOL,
    })
}

/// Divides the unfolding's independence polynomial by the one of the
/// component of `v`, both over exact integers, and returns the quotient.
/// A nonzero remainder is reported as a theorem violation.
pub fn verify_divisibility(h: &Hypergraph, v: usize) -> Result<IntPoly> {
    let (comp, map) = h.component_of(v)?;
    let t = build_weitz(&comp, map.new_id(v).unwrap())?;
    let zt = tree_z_poly(&t.tree, t.root)?;
    let zh = z_poly(&comp)?;
    zt.div_exact(&zh).map_err(|_| {
        Error::theorem_violation(
            "unfolding polynomial is not an exact multiple of the input polynomial",
        )
    })
}
