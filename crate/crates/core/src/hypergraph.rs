//! Finite hypergraphs on vertex set `0..n` and the operations used by the
//! rest of the crate: induced subhypergraphs (vertex deletion), shrinking
//! (vertex deletion inside edges), edge deletion, reduction to a normal
//! form without unit edges or nested edges, classification, and a small
//! JSON file format.
//!
//! An independent set is a vertex subset containing no edge entirely, so a
//! unit edge `{v}` forces `v` out of every independent set and an edge that
//! contains another edge is redundant.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hypergraph on vertices `0..n`. Each edge is a sorted, duplicate-free
/// vertex list; the edge *list* may contain repeats (shrinking two distinct
/// edges can make them equal) and repeats are kept until `reduce`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Vertex renumbering produced by operations that delete vertices.
#[derive(Clone, Debug)]
pub struct VertexMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl VertexMap {
    fn from_kept(n_old: usize, kept: &[usize]) -> Self {
        let mut old_to_new = vec![None; n_old];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        VertexMap {
            old_to_new,
            new_to_old: kept.to_vec(),
        }
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    /// New id of an old vertex, `None` if it was deleted.
    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    /// Old id of a surviving vertex.
    pub fn old_id(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn kept(&self) -> &[usize] {
        &self.new_to_old
    }
}

/// Output of `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub max_degree: usize,
    pub is_linear: bool,
    pub is_linear_hypertree: bool,
    /// Common edge size when all edges have one, `None` otherwise (and for
    /// edgeless hypergraphs).
    pub uniformity: Option<usize>,
    /// Number of connected components (isolated vertices count).
    pub components: usize,
}

/// Output of `reduce`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub hypergraph: Hypergraph,
    /// Vertices of the *input* that a unit edge forced out of every
    /// independent set.
    pub forced_out: Vec<usize>,
    pub map: VertexMap,
}

impl Hypergraph {
    /// Validates vertex ids and edge shape. Edges are sorted internally;
    /// a vertex repeated inside one edge or an empty edge is rejected.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::input(format!("edge {i} is empty")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {i} repeats a vertex")));
            }
            if *e.last().unwrap() >= n {
                return Err(Error::input(format!(
                    "edge {i} mentions vertex {} but n = {n}",
                    e.last().unwrap()
                )));
            }
            normalized.push(e);
        }
        Ok(Hypergraph {
            n,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Indices of the edges containing `v`, in input order.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].binary_search(&v).is_ok())
            .collect()
    }

    /// Whether a sorted-or-not vertex list is an independent set: no edge
    /// is entirely contained in it.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let members: HashSet<usize> = set.iter().copied().collect();
        !self
            .edges
            .iter()
            .any(|e| e.iter().all(|v| members.contains(v)))
    }

    fn check_vertex_set(&self, s: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return Err(Error::input(format!("vertex {v} out of range (n = {})", self.n)));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Induced subhypergraph on the complement of `s`: keeps exactly the
    /// edges disjoint from `s`.
    pub fn remove_vertices(&self, s: &[usize]) -> Result<(Hypergraph, VertexMap)> {
        let mask = self.check_vertex_set(s)?;
        let kept: Vec<usize> = (0..self.n).filter(|&v| !mask[v]).collect();
        let map = VertexMap::from_kept(self.n, &kept);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| !mask[v]))
            .map(|e| e.iter().map(|&v| map.new_id(v).unwrap()).collect())
            .collect();
        Ok((
            Hypergraph {
                n: kept.len(),
                edges,
            },
            map,
        ))
    }

    /// Shrink by `s`: deletes the vertices of `s` and replaces every edge
    /// `e` not contained in `s` by `e \ s`. Edges inside `s` disappear.
    pub fn shrink(&self, s: &[usize]) -> Result<(Hypergraph, VertexMap)> {
        let mask = self.check_vertex_set(s)?;
        let kept: Vec<usize> = (0..self.n).filter(|&v| !mask[v]).collect();
        let map = VertexMap::from_kept(self.n, &kept);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().any(|&v| !mask[v]))
            .map(|e| {
                e.iter()
                    .filter(|&&v| !mask[v])
                    .map(|&v| map.new_id(v).unwrap())
                    .collect()
            })
            .collect();
        Ok((
            Hypergraph {
                n: kept.len(),
                edges,
            },
            map,
        ))
    }

    /// Removes the edges at the given indices; the vertex set is unchanged.
    pub fn remove_edges(&self, idx: &[usize]) -> Result<Hypergraph> {
        let mut drop = vec![false; self.edges.len()];
        for &i in idx {
            if i >= self.edges.len() {
                return Err(Error::input(format!(
                    "edge index {i} out of range ({} edges)",
                    self.edges.len()
                )));
            }
            drop[i] = true;
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| !drop[i])
            .map(|(_, e)| e.clone())
            .collect();
        Ok(Hypergraph { n: self.n, edges })
    }

    /// Normal form preserving the independence polynomial up to the deleted
    /// vertices: repeatedly drops duplicate edges, edges that properly
    /// contain another edge, and unit edges together with their vertices.
    /// The returned `forced_out` lists input vertices excluded from every
    /// independent set.
    pub fn reduce(&self) -> Reduced {
        let mut current = self.clone();
        // vertex ids of `current` expressed in input ids
        let mut to_input: Vec<usize> = (0..self.n).collect();
        let mut forced_out = Vec::new();
        loop {
            // drop duplicates and anything that properly contains another edge
            let mut seen = HashSet::new();
            let mut kept_edges: Vec<Vec<usize>> = Vec::new();
            for e in &current.edges {
                if seen.insert(e.clone()) {
                    kept_edges.push(e.clone());
                }
            }
            let contains_other = |e: &Vec<usize>| {
                kept_edges.iter().any(|f| {
                    f.len() < e.len() && f.iter().all(|v| e.binary_search(v).is_ok())
                })
            };
            let kept_edges: Vec<Vec<usize>> =
                kept_edges.iter().filter(|e| !contains_other(e)).cloned().collect();
            let unit_vertices: Vec<usize> = kept_edges
                .iter()
                .filter(|e| e.len() == 1)
                .map(|e| e[0])
                .collect();
            let changed = kept_edges.len() != current.edges.len() || !unit_vertices.is_empty();
            current = Hypergraph {
                n: current.n,
                edges: kept_edges.iter().filter(|e| e.len() > 1).cloned().collect(),
            };
            if !unit_vertices.is_empty() {
                for &v in &unit_vertices {
                    forced_out.push(to_input[v]);
                }
                let (next, map) = current.remove_vertices(&unit_vertices).unwrap();
                to_input = map.kept().iter().map(|&v| to_input[v]).collect();
                current = next;
            }
            if !changed {
                break;
            }
        }
        forced_out.sort_unstable();
        let map = VertexMap::from_kept(self.n, &to_input);
        Reduced {
            hypergraph: current,
            forced_out,
            map,
        }
    }

    /// Component label of every vertex (labels are 0-based and dense).
    pub fn component_labels(&self) -> Vec<usize> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &ei in &incident[v] {
                    for &u in &self.edges[ei] {
                        if label[u] == usize::MAX {
                            label[u] = next;
                            queue.push_back(u);
                        }
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Connected component containing `v`, with the renumbering map.
    pub fn component_of(&self, v: usize) -> Result<(Hypergraph, VertexMap)> {
        if v >= self.n {
            return Err(Error::input(format!("vertex {v} out of range (n = {})", self.n)));
        }
        let labels = self.component_labels();
        let target = labels[v];
        let drop: Vec<usize> = (0..self.n).filter(|&u| labels[u] != target).collect();
        self.remove_vertices(&drop)
    }

    /// Linearity, hypertree recognition, uniformity, degree, components.
    ///
    /// Linear: two distinct edges share at most one vertex. Linear
    /// hypertree: linear, connected, and `sum(|e| - 1) = n - 1`, which for
    /// linear hypergraphs is equivalent to unique paths between vertices.
    pub fn classify(&self) -> Classification {
        let mut pair_seen: HashSet<(usize, usize)> = HashSet::new();
        let mut is_linear = true;
        'outer: for e in &self.edges {
            for i in 0..e.len() {
                for j in (i + 1)..e.len() {
                    if !pair_seen.insert((e[i], e[j])) {
                        is_linear = false;
                        break 'outer;
                    }
                }
            }
        }
        let components = self
            .component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1);
        let size_sum: usize = self.edges.iter().map(|e| e.len() - 1).sum();
        let is_linear_hypertree = is_linear && components <= 1 && size_sum + 1 == self.n;
        let uniformity = match self.edges.split_first() {
            None => None,
            Some((first, rest)) => {
                if rest.iter().all(|e| e.len() == first.len()) {
                    Some(first.len())
                } else {
                    None
                }
            }
        };
        Classification {
            max_degree: self.max_degree(),
            is_linear,
            is_linear_hypertree,
            uniformity,
            components,
        }
    }
}

/// JSON file form: `{"n": 3, "edges": [[0,1],[1,2]]}`, with optional
/// `root` and `labels` fields used for rooted trees.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

impl HypergraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: HypergraphFile =
            serde_json::from_str(text).map_err(|e| Error::input(format!("bad hypergraph JSON: {e}")))?;
        if let Some(r) = file.root {
            if r >= file.n {
                return Err(Error::input(format!("root {r} out of range (n = {})", file.n)));
            }
        }
        if let Some(labels) = &file.labels {
            if labels.len() != file.n {
                return Err(Error::input(format!(
                    "labels has {} entries but n = {}",
                    labels.len(),
                    file.n
                )));
            }
        }
        Ok(file)
    }

    pub fn hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::new(self.n, self.edges.clone())
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        HypergraphFile {
            n: h.n(),
            edges: h.edges().to_vec(),
            root: None,
            labels: None,
        }
    }
}

/// Multivariate fugacity assignment: one complex value per vertex.
pub type Fugacities = Vec<num_complex::Complex64>;

/// Builds the constant assignment `lambda_v = lambda`.
pub fn constant_fugacities(n: usize, lambda: num_complex::Complex64) -> Fugacities {
    vec![lambda; n]
}

/// Canonical key for memo tables: the sorted edge list. Instances met
/// during the deletion recursion keep their original vertex ids, so equal
/// keys really are the same instance with the same fugacities.
pub fn edge_key(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut key = edges.to_vec();
    key.sort_unstable();
    key
}

/// Vertices covered by at least one edge, ascending.
pub fn covered_vertices(edges: &[Vec<usize>]) -> Vec<usize> {
    let mut set: Vec<usize> = edges.iter().flatten().copied().collect();
    set.sort_unstable();
    set.dedup();
    set
}

/// Reads a hypergraph plus optional root from a JSON string.
pub fn parse_hypergraph_json(text: &str) -> Result<(Hypergraph, Option<usize>)> {
    let file = HypergraphFile::parse(text)?;
    Ok((file.hypergraph()?, file.root))
}
