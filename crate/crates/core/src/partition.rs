//! Independence partition functions.
//!
//! `Z(H; lambda) = sum over independent sets U of prod_{v in U} lambda_v`,
//! where a set is independent when it contains no edge entirely. The module
//! offers three routes with identical semantics: direct backtracking
//! enumeration, a memoised deletion recursion for multivariate evaluation,
//! and a bottom-up pair recursion on linear hypertrees that scales to very
//! large trees. Exact (integer/rational) and floating entry points are kept
//! separate.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{covered_vertices, edge_key, Hypergraph};
use crate::poly::IntPoly;

/// Value of `Z_in / Z_out`, allowing the pole `Z_out = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RatioValue {
    Finite(Complex64),
    Infinite,
}

impl RatioValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            RatioValue::Finite(z) => Some(z),
            RatioValue::Infinite => None,
        }
    }
}

fn enumeration_guard(n: usize, max_size: Option<usize>) -> Result<()> {
    let ok = match max_size {
        Some(m) => m <= 4 || n <= 30,
        None => n <= 30,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::resource(format!(
            "enumeration over {n} vertices needs n <= 30 (or a size bound <= 4)"
        )))
    }
}

/// Counts independent sets by size with backtracking (never by filtering
/// all `2^n` subsets). Entry `k` of the result is the number of independent
/// sets of size `k`; the vector has `bound + 1` entries where `bound` is
/// `min(max_size, n)`.
pub fn count_independent_sets(h: &Hypergraph, max_size: Option<usize>) -> Result<Vec<BigInt>> {
    enumeration_guard(h.n(), max_size)?;
    let n = h.n();
    let bound = max_size.unwrap_or(n).min(n);
    let edges = h.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut counts = vec![BigInt::zero(); bound + 1];
    counts[0] = BigInt::one();
    let mut chosen_in_edge = vec![0usize; edges.len()];
    // grows each independent set by its largest vertex, so every set is
    // visited exactly once
    fn grow(
        start: usize,
        size: usize,
        bound: usize,
        n: usize,
        edges: &[Vec<usize>],
        incident: &[Vec<usize>],
        chosen_in_edge: &mut [usize],
        counts: &mut [BigInt],
    ) {
        if size == bound {
            return;
        }
        for v in start..n {
            let blocked = incident[v]
                .iter()
                .any(|&i| chosen_in_edge[i] + 1 == edges[i].len());
            if blocked {
                continue;
            }
            for &i in &incident[v] {
                chosen_in_edge[i] += 1;
            }
            counts[size + 1] += 1;
            grow(v + 1, size + 1, bound, n, edges, incident, chosen_in_edge, counts);
            for &i in &incident[v] {
                chosen_in_edge[i] -= 1;
            }
        }
    }
    grow(0, 0, bound, n, edges, &incident, &mut chosen_in_edge, &mut counts);
    Ok(counts)
}

/// Exact univariate independence polynomial (all fugacities equal).
pub fn z_poly(h: &Hypergraph) -> Result<IntPoly> {
    Ok(IntPoly::from_coeffs(count_independent_sets(h, None)?))
}

/// Scalar types the deletion recursion runs over.
pub trait PartitionScalar:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl<T> PartitionScalar for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

struct DeletionRecursion<'a, T> {
    lambda: &'a [T],
    memo: HashMap<Vec<Vec<usize>>, T>,
}

impl<'a, T: PartitionScalar> DeletionRecursion<'a, T> {
    fn one_plus(&self, v: usize) -> T {
        T::one() + self.lambda[v].clone()
    }

    /// Z of the hypergraph whose vertex set is exactly the union of
    /// `edges` (vertices keep their outer ids, so fugacities line up).
    fn eval(&mut self, edges: Vec<Vec<usize>>) -> T {
        if edges.is_empty() {
            return T::one();
        }
        if let Some(z) = self.memo.get(&edges) {
            return z.clone();
        }
        let e = edges[0].clone();
        let rest: Vec<Vec<usize>> = edges[1..].to_vec();
        let all_covered = covered_vertices(&edges);
        let rest_covered = covered_vertices(&rest);

        // Z(H - e) over the same vertex set: freshly uncovered vertices
        // contribute a free (1 + lambda) factor.
        let mut out_term = self.eval(edge_key(&rest));
        for &v in &all_covered {
            if rest_covered.binary_search(&v).is_err() {
                out_term = out_term * self.one_plus(v);
            }
        }

        // Z_e^in(H - e): zero as soon as some remaining edge sits inside e,
        // otherwise prod(lambda_e) * Z((H - e) shrunk by e).
        let nested = rest
            .iter()
            .any(|f| f.iter().all(|v| e.binary_search(v).is_ok()));
        let in_term = if nested {
            T::zero()
        } else {
            let shrunk: Vec<Vec<usize>> = rest
                .iter()
                .filter(|f| !f.iter().all(|v| e.binary_search(v).is_ok()))
                .map(|f| {
                    f.iter()
                        .filter(|v| e.binary_search(v).is_err())
                        .copied()
                        .collect::<Vec<usize>>()
                })
                .collect();
            let shrunk_covered = covered_vertices(&shrunk);
            let mut t = self.eval(edge_key(&shrunk));
            for &v in &all_covered {
                if e.binary_search(&v).is_err() && shrunk_covered.binary_search(&v).is_err() {
                    t = t * self.one_plus(v);
                }
            }
            for &v in &e {
                t = t * self.lambda[v].clone();
            }
            t
        };

        let z = out_term - in_term;
        self.memo.insert(edges, z.clone());
        z
    }

    fn run(h: &Hypergraph, lambda: &'a [T]) -> T {
        let mut rec = DeletionRecursion {
            lambda,
            memo: HashMap::new(),
        };
        let edges = edge_key(h.edges());
        let covered = covered_vertices(&edges);
        let mut z = rec.eval(edges);
        for v in 0..h.n() {
            if covered.binary_search(&v).is_err() {
                z = z * rec.one_plus(v);
            }
        }
        z
    }
}

fn check_lambda_len<T>(h: &Hypergraph, lambda: &[T]) -> Result<()> {
    if lambda.len() != h.n() {
        return Err(Error::input(format!(
            "{} fugacities supplied for {} vertices",
            lambda.len(),
            h.n()
        )));
    }
    Ok(())
}

/// Multivariate evaluation over complex doubles via the deletion recursion.
pub fn z_eval(h: &Hypergraph, lambda: &[Complex64]) -> Result<Complex64> {
    check_lambda_len(h, lambda)?;
    Ok(DeletionRecursion::run(h, lambda))
}

/// Multivariate evaluation over exact rationals; same recursion, no
/// rounding anywhere.
pub fn z_eval_exact(h: &Hypergraph, lambda: &[BigRational]) -> Result<BigRational> {
    check_lambda_len(h, lambda)?;
    Ok(DeletionRecursion::run(h, lambda))
}

/// `(Z_in, Z_out)` at a vertex: the partition function restricted to
/// independent sets containing, respectively avoiding, `v`.
pub fn z_in_out(h: &Hypergraph, v: usize, lambda: &[Complex64]) -> Result<(Complex64, Complex64)> {
    check_lambda_len(h, lambda)?;
    if v >= h.n() {
        return Err(Error::input(format!("vertex {v} out of range (n = {})", h.n())));
    }
    let restrict = |lam: &[Complex64], kept: &[usize]| -> Vec<Complex64> {
        kept.iter().map(|&old| lam[old]).collect()
    };
    let unit = h.edges().iter().any(|e| e.as_slice() == [v]);
    let z_in = if unit {
        Complex64::new(0.0, 0.0)
    } else {
        let (shrunk, map) = h.shrink(&[v])?;
        lambda[v] * z_eval(&shrunk, &restrict(lambda, map.kept()))?
    };
    let (rest, map) = h.remove_edges(&h.incident_edges(v))?.remove_vertices(&[v])?;
    let z_out = z_eval(&rest, &restrict(lambda, map.kept()))?;
    Ok((z_in, z_out))
}

/// Occupation ratio `Z_in / Z_out` at a vertex.
pub fn ratio(h: &Hypergraph, v: usize, lambda: &[Complex64]) -> Result<RatioValue> {
    let (z_in, z_out) = z_in_out(h, v, lambda)?;
    ratio_of_pair(z_in, z_out)
}

/// Forms `Z_in / Z_out`, reporting the pole and the indeterminate case.
pub fn ratio_of_pair(z_in: Complex64, z_out: Complex64) -> Result<RatioValue> {
    if z_out.norm() == 0.0 {
        if z_in.norm() == 0.0 {
            return Err(Error::DegenerateRatio(
                "both Z_in and Z_out vanished".into(),
            ));
        }
        return Ok(RatioValue::Infinite);
    }
    Ok(RatioValue::Finite(z_in / z_out))
}

/// Rooted view of a linear hypertree: per-vertex child edges in a
/// bottom-up processing order.
struct RootedTree {
    /// vertices in an order where children precede parents
    order: Vec<usize>,
    /// for each vertex, the incident edges leading away from the root;
    /// each entry lists the child vertices of that edge
    child_edges: Vec<Vec<Vec<usize>>>,
}

fn root_tree(t: &Hypergraph, root: usize) -> Result<RootedTree> {
    if root >= t.n() {
        return Err(Error::input(format!("root {root} out of range (n = {})", t.n())));
    }
    if !t.classify().is_linear_hypertree {
        return Err(Error::input("hypergraph is not a linear hypertree"));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); t.n()];
    for (i, e) in t.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut parent_edge = vec![usize::MAX; t.n()];
    let mut seen = vec![false; t.n()];
    let mut order = Vec::with_capacity(t.n());
    let mut child_edges: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t.n()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &ei in &incident[v] {
            if ei == parent_edge[v] {
                continue;
            }
            let children: Vec<usize> = t.edges()[ei].iter().copied().filter(|&u| u != v).collect();
            for &u in &children {
                // unique paths in a hypertree mean u is unseen
                seen[u] = true;
                parent_edge[u] = ei;
                queue.push_back(u);
            }
            child_edges[v].push(children);
        }
    }
    if order.len() != t.n() {
        return Err(Error::input("tree is not connected"));
    }
    Ok(RootedTree { order, child_edges })
}

/// Root occupation ratio of a linear hypertree by the bottom-up recursion
/// `R_v = lambda_v * prod_e (1 - prod_{u in e} R_u / (1 + R_u))`, carried
/// as rescaled `(Z_in, Z_out)` pairs so poles need no special casing.
pub fn tree_ratio(t: &Hypergraph, root: usize, lambda: &[Complex64]) -> Result<RatioValue> {
    check_lambda_len(t, lambda)?;
    let rooted = root_tree(t, root)?;
    let mut pair: Vec<(Complex64, Complex64)> = vec![(Complex64::ZERO, Complex64::ZERO); t.n()];
    for &v in rooted.order.iter().rev() {
        let mut z_in = lambda[v];
        let mut z_out = Complex64::ONE;
        for edge in &rooted.child_edges[v] {
            let mut prod_z = Complex64::ONE;
            let mut prod_in = Complex64::ONE;
            for &u in edge {
                let (ui, uo) = pair[u];
                prod_z *= ui + uo;
                prod_in *= ui;
            }
            z_in *= prod_z - prod_in;
            z_out *= prod_z;
        }
        // rescale: only the ratio matters and products overflow otherwise
        let scale = z_in.norm().max(z_out.norm());
        if scale > 0.0 {
            z_in /= scale;
            z_out /= scale;
        }
        pair[v] = (z_in, z_out);
    }
    let (z_in, z_out) = pair[root];
    ratio_of_pair(z_in, z_out)
}

/// Exact `(Z_in, Z_out)` polynomials at the root of a linear hypertree,
/// all vertices carrying the same variable fugacity. Using the same
/// bottom-up recursion, this reaches trees far beyond enumeration range.
pub fn tree_zpair_poly(t: &Hypergraph, root: usize) -> Result<(IntPoly, IntPoly)> {
    let rooted = root_tree(t, root)?;
    let mut pair: Vec<(IntPoly, IntPoly)> = vec![(IntPoly::zero(), IntPoly::zero()); t.n()];
    for &v in rooted.order.iter().rev() {
        let mut z_in = IntPoly::lambda();
        let mut z_out = IntPoly::one();
        for edge in &rooted.child_edges[v] {
            let mut prod_z = IntPoly::one();
            let mut prod_in = IntPoly::one();
            for &u in edge {
                let (ui, uo) = &pair[u];
                prod_z = prod_z.mul(&ui.add(uo));
                prod_in = prod_in.mul(ui);
            }
            z_in = z_in.mul(&prod_z.sub(&prod_in));
            z_out = z_out.mul(&prod_z);
        }
        pair[v] = (z_in, z_out);
    }
    Ok(pair[root].clone())
}

/// Exact univariate independence polynomial of a linear hypertree via the
/// pair recursion (agrees with `z_poly` where both apply).
pub fn tree_z_poly(t: &Hypergraph, root: usize) -> Result<IntPoly> {
    let (z_in, z_out) = tree_zpair_poly(t, root)?;
    Ok(z_in.add(&z_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::constant_fugacities;

    /// Independent oracle: filters all subsets directly.
    fn brute_z(h: &Hypergraph, lambda: &[Complex64]) -> Complex64 {
        let n = h.n();
        let mut z = Complex64::ZERO;
        for mask in 0u64..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if h.is_independent(&set) {
                z += set.iter().map(|&v| lambda[v]).product::<Complex64>();
            }
        }
        z
    }

    fn brute_counts(h: &Hypergraph) -> Vec<BigInt> {
        let n = h.n();
        let mut counts = vec![BigInt::zero(); n + 1];
        for mask in 0u64..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if h.is_independent(&set) {
                counts[set.len()] += 1;
            }
        }
        counts
    }

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    fn three_edge() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn counts_for_single_triple_edge() {
        let counts = count_independent_sets(&three_edge(), None).unwrap();
        assert_eq!(counts, vec![1.into(), 3.into(), 3.into(), 0.into()]);
    }

    #[test]
    fn counts_for_edgeless_graph_are_binomials() {
        let h = Hypergraph::new(3, vec![]).unwrap();
        let counts = count_independent_sets(&h, None).unwrap();
        assert_eq!(counts, vec![1.into(), 3.into(), 3.into(), 1.into()]);
    }

    #[test]
    fn counts_respect_max_size() {
        let h = Hypergraph::new(6, vec![vec![0, 1]]).unwrap();
        let counts = count_independent_sets(&h, Some(1)).unwrap();
        assert_eq!(counts, vec![1.into(), 6.into()]);
    }

    #[test]
    fn enumeration_guard_triggers() {
        let h = Hypergraph::new(31, vec![]).unwrap();
        assert!(count_independent_sets(&h, None).is_err());
        assert!(count_independent_sets(&h, Some(2)).is_ok());
    }

    #[test]
    fn z_poly_of_triangle() {
        assert_eq!(z_poly(&triangle()).unwrap(), IntPoly::from_i64(&[1, 3]));
    }

    #[test]
    fn z_poly_matches_brute_force_on_small_hypergraphs() {
        let cases = vec![
            Hypergraph::new(4, vec![vec![0, 1], vec![1, 2, 3], vec![0, 3]]).unwrap(),
            Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 4]]).unwrap(),
            Hypergraph::new(4, vec![vec![0], vec![0, 1], vec![2, 3]]).unwrap(),
        ];
        for h in cases {
            let counts = brute_counts(&h);
            assert_eq!(z_poly(&h).unwrap(), IntPoly::from_coeffs(counts));
        }
    }

    #[test]
    fn z_eval_on_single_edge_cases() {
        let one = Complex64::ONE;
        let z = z_eval(&three_edge(), &constant_fugacities(3, one)).unwrap();
        assert!((z - 7.0).norm() < 1e-12);
        let z = z_eval(&three_edge(), &constant_fugacities(3, -one)).unwrap();
        assert!((z - 1.0).norm() < 1e-12);
        let mixed = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.5),
        ];
        assert!((z_eval(&three_edge(), &mixed).unwrap() - brute_z(&three_edge(), &mixed)).norm() < 1e-12);
    }

    #[test]
    fn z_eval_matches_brute_force_on_random_hypergraphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=9);
            let m = rng.gen_range(0..=6);
            let edges: Vec<Vec<usize>> = (0..m)
                .map(|_| {
                    let size = rng.gen_range(1..=3.min(n));
                    let mut e: Vec<usize> = (0..n).collect();
                    for i in (1..n).rev() {
                        let j = rng.gen_range(0..=i);
                        e.swap(i, j);
                    }
                    e.truncate(size);
                    e
                })
                .collect();
            let h = Hypergraph::new(n, edges).unwrap();
            let lambda: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let fast = z_eval(&h, &lambda).unwrap();
            let slow = brute_z(&h, &lambda);
            assert!((fast - slow).norm() <= 1e-10 * (1.0 + slow.norm()), "mismatch on {h:?}");
        }
    }

    #[test]
    fn z_eval_exact_is_exact() {
        use num_traits::FromPrimitive;
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        let lambda: Vec<BigRational> = (0..4)
            .map(|v| BigRational::from_i64(v as i64 - 2).unwrap())
            .collect();
        // brute force over all subsets with exact arithmetic
        let mut expected = BigRational::zero();
        for mask in 0u64..16 {
            let set: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
            if h.is_independent(&set) {
                let mut term = BigRational::one();
                for &v in &set {
                    term *= lambda[v].clone();
                }
                expected += term;
            }
        }
        assert_eq!(z_eval_exact(&h, &lambda).unwrap(), expected);
    }

    #[test]
    fn z_in_out_on_triple_edge() {
        let lambda = constant_fugacities(3, Complex64::ONE);
        let (z_in, z_out) = z_in_out(&three_edge(), 0, &lambda).unwrap();
        assert!((z_in - 3.0).norm() < 1e-12);
        assert!((z_out - 4.0).norm() < 1e-12);
    }

    #[test]
    fn z_in_out_sums_to_z() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![0, 5]]).unwrap();
        for _ in 0..20 {
            let lambda: Vec<Complex64> = (0..6)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let z = z_eval(&h, &lambda).unwrap();
            for v in 0..6 {
                let (zi, zo) = z_in_out(&h, v, &lambda).unwrap();
                assert!((zi + zo - z).norm() <= 1e-12 * (1.0 + z.norm()));
            }
        }
    }

    #[test]
    fn z_in_is_zero_on_unit_edge() {
        let h = Hypergraph::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        let (z_in, z_out) = z_in_out(&h, 0, &constant_fugacities(2, Complex64::ONE)).unwrap();
        assert_eq!(z_in, Complex64::ZERO);
        assert!((z_out - 2.0).norm() < 1e-12);
        assert_eq!(
            ratio(&h, 0, &constant_fugacities(2, Complex64::ONE)).unwrap(),
            RatioValue::Finite(Complex64::ZERO)
        );
    }

    #[test]
    fn ratio_on_triangle_has_closed_form() {
        for lam in [
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.2, 0.7),
            Complex64::new(1.5, -0.4),
        ] {
            let r = ratio(&triangle(), 0, &constant_fugacities(3, lam)).unwrap();
            let expected = lam / (1.0 + 2.0 * lam);
            assert!((r.finite().unwrap() - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn ratio_on_single_vertex_is_lambda() {
        let h = Hypergraph::new(1, vec![]).unwrap();
        let lam = Complex64::new(0.25, 1.0);
        let r = ratio(&h, 0, &[lam]).unwrap();
        assert!((r.finite().unwrap() - lam).norm() < 1e-15);
    }

    #[test]
    fn ratio_reports_pole_and_degenerate_cases() {
        // single edge {0,1}: Z_out(0) = 1 + lambda_1 vanishes at lambda_1 = -1
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let lambda = vec![Complex64::ONE, -Complex64::ONE];
        assert_eq!(ratio(&h, 0, &lambda).unwrap(), RatioValue::Infinite);
        assert!(matches!(
            ratio_of_pair(Complex64::ZERO, Complex64::ZERO),
            Err(Error::DegenerateRatio(_))
        ));
    }

    #[test]
    fn tree_ratio_matches_enumeration_ratio() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        // a fixed linear hypertree: root 0, edges of mixed sizes
        let t = Hypergraph::new(
            8,
            vec![vec![0, 1, 2], vec![0, 3], vec![2, 4, 5], vec![3, 6], vec![6, 7]],
        )
        .unwrap();
        for _ in 0..25 {
            let lambda: Vec<Complex64> = (0..8)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let fast = tree_ratio(&t, 0, &lambda).unwrap();
            let slow = ratio(&t, 0, &lambda).unwrap();
            match (fast, slow) {
                (RatioValue::Finite(a), RatioValue::Finite(b)) => {
                    assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()))
                }
                (a, b) => assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn tree_ratio_rejects_non_trees() {
        let lambda = constant_fugacities(3, Complex64::ONE);
        assert!(tree_ratio(&triangle(), 0, &lambda).is_err());
    }

    #[test]
    fn tree_zpair_on_paths() {
        // path on 2 vertices rooted at an end: Z_in = lambda, Z_out = 1 + lambda
        let p2 = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let (z_in, z_out) = tree_zpair_poly(&p2, 0).unwrap();
        assert_eq!(z_in, IntPoly::from_i64(&[0, 1]));
        assert_eq!(z_out, IntPoly::from_i64(&[1, 1]));
        // total matches enumeration on a bigger tree
        let t = Hypergraph::new(
            7,
            vec![vec![0, 1], vec![0, 2, 3], vec![1, 4], vec![3, 5, 6]],
        )
        .unwrap();
        assert_eq!(tree_z_poly(&t, 0).unwrap(), z_poly(&t).unwrap());
        assert_eq!(tree_z_poly(&t, 4).unwrap(), z_poly(&t).unwrap());
    }

    #[test]
    fn first_coefficient_counts_free_vertices() {
        // unit edges force vertices out, so the linear coefficient drops
        let h = Hypergraph::new(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        let p = z_poly(&h).unwrap();
        let forced = h.reduce().forced_out.len();
        assert_eq!(p.coeff(1), BigInt::from(4 - forced as i64));
    }
}
