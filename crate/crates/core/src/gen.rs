//! Instance generators for the test suites: the census of connected
//! graphs up to isomorphism, and seeded random (hyper)tree and
//! hypergraph families with degree, edge-size, and linearity caps.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// All connected simple graphs on `n` vertices up to isomorphism,
/// returned as hypergraphs with 2-edges. Counts for n = 1..6 are
/// 1, 1, 2, 6, 21, 112.
pub fn all_connected_graphs(n: usize) -> Result<Vec<Hypergraph>> {
    if n == 0 || n > 7 {
        return Err(Error::input("graph census supports 1 <= n <= 7"));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i][j] = k;
        pair_index[j][i] = k;
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permutations(n, &mut (0..n).collect::<Vec<_>>(), 0, &mut perms);

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if !mask_connected(mask, &pairs, n) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        m |= 1 << pair_index[p[i]][p[j]];
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<Vec<usize>> = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| canon >> k & 1 == 1)
                .map(|(_, &(i, j))| vec![i, j])
                .collect();
            out.push(Hypergraph::new(n, edges)?);
        }
    }
    Ok(out)
}

fn permutations(n: usize, items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == n {
        out.push(items.clone());
        return;
    }
    for i in k..n {
        items.swap(k, i);
        permutations(n, items, k + 1, out);
        items.swap(k, i);
    }
}

fn mask_connected(mask: u32, pairs: &[(usize, usize)], n: usize) -> bool {
    if n == 1 {
        return true;
    }
    let mut reach = 1usize;
    loop {
        let mut next = reach;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if next >> i & 1 == 1 {
                    next |= 1 << j;
                }
                if next >> j & 1 == 1 {
                    next |= 1 << i;
                }
            }
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    reach == (1 << n) - 1
}

/// Random linear hypertree on exactly `n` vertices: every new edge takes
/// one existing attach vertex (degree below `max_deg`) plus fresh
/// vertices, so linearity and the tree edge-count identity hold by
/// construction. Edge sizes are drawn from `2..=max_size`, clipped to
/// the vertices that remain.
pub fn random_linear_hypertree(
    n: usize,
    max_size: usize,
    max_deg: usize,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    if n == 0 || max_size < 2 || max_deg == 0 {
        return Err(Error::input("hypertree generator needs n >= 1, max_size >= 2, max_deg >= 1"));
    }
    let mut degree = vec![0usize; n];
    let mut built = 1usize;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    while built < n {
        let open: Vec<usize> = (0..built).filter(|&v| degree[v] < max_deg).collect();
        if open.is_empty() {
            return Err(Error::input(format!(
                "degree cap {max_deg} cannot host {n} vertices with edges of size <= {max_size}"
            )));
        }
        let attach = open[rng.gen_range(0..open.len())];
        let fresh = (rng.gen_range(2..=max_size) - 1).min(n - built);
        let mut e = vec![attach];
        e.extend(built..built + fresh);
        degree[attach] += 1;
        for v in &e[1..] {
            degree[*v] += 1;
        }
        built += fresh;
        edges.push(e);
    }
    Hypergraph::new(n, edges)
}

/// Random connected linear hypergraph: a spanning linear hypertree plus
/// up to `extra_edges` additional edges that keep linearity and the
/// degree cap. Fewer extras are added when the caps leave no room.
pub fn random_connected_linear_hypergraph(
    n: usize,
    max_size: usize,
    max_deg: usize,
    extra_edges: usize,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    let tree = random_linear_hypertree(n, max_size, max_deg, rng)?;
    let mut edges: Vec<Vec<usize>> = tree.edges().to_vec();
    let mut degree = vec![0usize; n];
    for e in &edges {
        for &v in e {
            degree[v] += 1;
        }
    }
    let mut covered: std::collections::HashSet<(usize, usize)> = edges
        .iter()
        .flat_map(|e| pair_list(e))
        .collect();
    let mut added = 0usize;
    let mut attempts = 0usize;
    while added < extra_edges && attempts < 50 * (extra_edges + 1) {
        attempts += 1;
        let s = rng.gen_range(2..=max_size.min(n));
        let mut e: Vec<usize> = Vec::with_capacity(s);
        while e.len() < s {
            let v = rng.gen_range(0..n);
            if !e.contains(&v) {
                e.push(v);
            }
        }
        e.sort_unstable();
        if e.iter().any(|&v| degree[v] >= max_deg) {
            continue;
        }
        if pair_list(&e).iter().any(|p| covered.contains(p)) {
            continue;
        }
        for p in pair_list(&e) {
            covered.insert(p);
        }
        for &v in &e {
            degree[v] += 1;
        }
        edges.push(e);
        added += 1;
    }
    Hypergraph::new(n, edges)
}

fn pair_list(e: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            out.push((e[i].min(e[j]), e[i].max(e[j])));
        }
    }
    out
}

/// Random rooted linear hypertree in which every vertex hangs at most
/// `down_deg` child edges (so the maximum total degree is `down_deg + 1`
/// away from the root and `down_deg` at the root). Returns the tree and
/// its root, vertex 0.
pub fn random_rooted_hypertree(
    n: usize,
    max_size: usize,
    down_deg: usize,
    rng: &mut impl Rng,
) -> Result<(Hypergraph, usize)> {
    if n == 0 || max_size < 2 || down_deg == 0 {
        return Err(Error::input("rooted generator needs n >= 1, max_size >= 2, down_deg >= 1"));
    }
    let mut children = vec![0usize; n];
    let mut built = 1usize;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    while built < n {
        let open: Vec<usize> = (0..built).filter(|&v| children[v] < down_deg).collect();
        if open.is_empty() {
            return Err(Error::input(format!(
                "down-degree cap {down_deg} cannot host {n} vertices"
            )));
        }
        let attach = open[rng.gen_range(0..open.len())];
        let fresh = (rng.gen_range(2..=max_size) - 1).min(n - built);
        let mut e = vec![attach];
        e.extend(built..built + fresh);
        children[attach] += 1;
        built += fresh;
        edges.push(e);
    }
    Ok((Hypergraph::new(n, edges)?, 0))
}

/// Random connected hypergraph with bounded degree and edge size but no
/// linearity requirement: a spanning linear hypertree plus extra edges
/// that only respect the degree cap and avoid duplicating an edge.
pub fn random_hypergraph(
    n: usize,
    max_size: usize,
    max_deg: usize,
    extra_edges: usize,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    let tree = random_linear_hypertree(n, max_size, max_deg, rng)?;
    let mut edges: Vec<Vec<usize>> = tree.edges().to_vec();
    for e in edges.iter_mut() {
        e.sort_unstable();
    }
    let mut degree = vec![0usize; n];
    for e in &edges {
        for &v in e {
            degree[v] += 1;
        }
    }
    let mut added = 0usize;
    let mut attempts = 0usize;
    while added < extra_edges && attempts < 50 * (extra_edges + 1) {
        attempts += 1;
        let s = rng.gen_range(2..=max_size.min(n));
        let mut e: Vec<usize> = Vec::with_capacity(s);
        while e.len() < s {
            let v = rng.gen_range(0..n);
            if !e.contains(&v) {
                e.push(v);
            }
        }
        e.sort_unstable();
        if e.iter().any(|&v| degree[v] >= max_deg) || edges.contains(&e) {
            continue;
        }
        for &v in &e {
            degree[v] += 1;
        }
        edges.push(e);
        added += 1;
    }
    Hypergraph::new(n, edges)
}
