//! Spectra of walks and graphs under the `Π`-weighted inner products,
//! threshold rank, splittability and link expansion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::graph::WeightedGraph;
use crate::linalg::{
    singular_values as jacobi_singular_values, symmetric_eigen, symmetric_eigenvalues,
};
use crate::scalar::Real;
use crate::walks::{block_antidiagonal, swap_graph, WalkOperator};

/// Tolerance for "equals 1" and threshold comparisons.
pub const EIGEN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Eigen,
    Singular,
}

/// A spectrum in descending order.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport<T> {
    pub object: String,
    pub kind: SpectrumKind,
    pub values: Vec<T>,
    pub tolerance: f64,
}

impl<T: Real> SpectralReport<T> {
    /// The `i`-th largest value, 1-based as in `λ_i`.
    pub fn nth(&self, i: usize) -> Option<T> {
        i.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// `|{i : value_i ≥ τ − tol}|`.
    pub fn count_at_least(&self, tau: f64) -> usize {
        count_at_least(&self.values, tau, self.tolerance)
    }

    /// How many values equal 1 within the tolerance.
    pub fn multiplicity_of_one(&self) -> usize {
        self.values
            .iter()
            .filter(|v| (v.to_f64().unwrap_or(f64::NAN) - 1.0).abs() <= self.tolerance)
            .count()
    }
}

fn count_at_least<T: Real>(values: &[T], tau: f64, tol: f64) -> usize {
    values
        .iter()
        .filter(|v| v.to_f64().unwrap_or(f64::NAN) >= tau - tol)
        .count()
}

/// `diag(Π_cod)^{1/2} · A · diag(Π_dom)^{-1/2}`: the operator in orthonormal
/// coordinates for the weighted inner products.
fn orthonormal_form<T: Real>(op: &WalkOperator<T>) -> Array2<T> {
    let m = op.matrix();
    let rs: Vec<T> = op.row_measure().iter().map(|p| p.sqrt()).collect();
    let cs: Vec<T> = op.col_measure().iter().map(|p| p.sqrt().recip()).collect();
    Array2::from_shape_fn(m.dim(), |(i, j)| rs[i] * m[(i, j)] * cs[j])
}

/// Singular values with respect to the `Π`-weighted inner products.
pub fn singular_values<T: Real>(op: &WalkOperator<T>) -> SpectralReport<T> {
    SpectralReport {
        object: op.name().to_string(),
        kind: SpectrumKind::Singular,
        values: jacobi_singular_values(&orthonormal_form(op)),
        tolerance: EIGEN_TOL,
    }
}

/// Eigenvalues of a self-adjoint walk on a single level, e.g. `N²_{m,l}`.
pub fn walk_eigenvalues<T: Real>(op: &WalkOperator<T>) -> Result<SpectralReport<T>> {
    if !op.is_square_walk() {
        return Err(Error::ShapeMismatch(format!(
            "{} maps level {} to level {}; eigenvalues need a walk on one level",
            op.name(),
            op.domain_level(),
            op.codomain_level()
        )));
    }
    Ok(SpectralReport {
        object: op.name().to_string(),
        kind: SpectrumKind::Eigen,
        values: symmetric_eigenvalues(&orthonormal_form(op)),
        tolerance: EIGEN_TOL,
    })
}

/// Eigenvalues of the doubled system `[[0, A], [A†, 0]]`, built from the
/// adjoint and symmetrized by the concatenated level measures.
pub fn doubled_eigenvalues<T: Real>(op: &WalkOperator<T>) -> SpectralReport<T> {
    let adj = op.adjoint();
    let b = block_antidiagonal(op.matrix(), adj.matrix());
    let measure: Vec<T> = op
        .row_measure()
        .iter()
        .chain(op.col_measure())
        .copied()
        .collect();
    let sym = Array2::from_shape_fn(b.dim(), |(i, j)| {
        measure[i].sqrt() * b[(i, j)] / measure[j].sqrt()
    });
    SpectralReport {
        object: format!("[[0,{0}],[{0}†,0]]", op.name()),
        kind: SpectrumKind::Eigen,
        values: symmetric_eigenvalues(&sym),
        tolerance: EIGEN_TOL,
    }
}

/// Eigenvalues of the random-walk matrix of `g`, computed from the similar
/// symmetric matrix `D^{-1/2} A D^{-1/2}`.
pub fn eigenvalues<T: Real>(
    g: &WeightedGraph<T>,
    object: impl Into<String>,
) -> Result<SpectralReport<T>> {
    Ok(SpectralReport {
        object: object.into(),
        kind: SpectrumKind::Eigen,
        values: symmetric_eigenvalues(&g.normalized_adjacency()?),
        tolerance: EIGEN_TOL,
    })
}

fn check_tau(tau: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&tau) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "threshold {tau} outside [-1, 1]"
        )))
    }
}

/// `rank_{≥τ}` of the random walk on `g`.
pub fn threshold_rank<T: Real>(g: &WeightedGraph<T>, tau: f64) -> Result<usize> {
    check_tau(tau)?;
    Ok(eigenvalues(g, "")?.count_at_least(tau))
}

/// A binary tree whose leaves are labelled 1 and whose internal labels are
/// the sums of their children; the root carries `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingTree {
    pub label: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SplittingTree>,
}

impl SplittingTree {
    pub fn leaf() -> Self {
        SplittingTree {
            label: 1,
            children: Vec::new(),
        }
    }

    pub fn join(left: SplittingTree, right: SplittingTree) -> Self {
        SplittingTree {
            label: left.label + right.label,
            children: vec![left, right],
        }
    }

    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(SplittingTree::leaves).sum()
        }
    }

    /// Checks leaf labels, the sum rule and binary branching.
    pub fn is_valid(&self) -> bool {
        match self.children.as_slice() {
            [] => self.label == 1,
            [a, b] => a.label + b.label == self.label && a.is_valid() && b.is_valid(),
            _ => false,
        }
    }

    /// Child-label pairs `(a, b)`, `a ≤ b`, of the internal nodes; these
    /// select the swap graphs `G_{a,b}` of the tree.
    pub fn swap_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        self.collect_pairs(&mut out);
        out
    }

    fn collect_pairs(&self, out: &mut BTreeSet<(usize, usize)>) {
        if let [a, b] = self.children.as_slice() {
            out.insert((a.label.min(b.label), a.label.max(b.label)));
            a.collect_pairs(out);
            b.collect_pairs(out);
        }
    }

    /// One representative tree per distinct set of swap pairs, since the
    /// swap graphs of a tree depend only on its labels.
    pub fn enumerate(k: usize, budget: usize) -> Result<Vec<SplittingTree>> {
        if k == 0 {
            return Err(Error::InvalidParameter("splitting trees need k ≥ 1".into()));
        }
        let mut memo: HashMap<usize, BTreeMap<BTreeSet<(usize, usize)>, SplittingTree>> =
            HashMap::new();
        for c in 1..=k {
            let mut here = BTreeMap::new();
            if c == 1 {
                here.insert(BTreeSet::new(), SplittingTree::leaf());
            }
            for a in 1..=c / 2 {
                let (left, right) = (&memo[&a], &memo[&(c - a)]);
                for (lp, lt) in left {
                    for (rp, rt) in right {
                        let mut pairs: BTreeSet<_> = lp.union(rp).copied().collect();
                        pairs.insert((a, c - a));
                        here.entry(pairs)
                            .or_insert_with(|| SplittingTree::join(lt.clone(), rt.clone()));
                        if here.len() > budget {
                            return Err(Error::EnumerationBudget(format!(
                                "more than {budget} label patterns at node label {c}"
                            )));
                        }
                    }
                }
            }
            memo.insert(c, here);
        }
        Ok(memo.remove(&k).expect("filled").into_values().collect())
    }
}

impl fmt::Display for SplittingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children.as_slice() {
            [a, b] => write!(f, "{}({a},{b})", self.label),
            _ => write!(f, "{}", self.label),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SplittabilityOptions {
    /// Largest `k` for which trees are enumerated.
    pub max_k: usize,
    pub tree_budget: usize,
    /// Eigenvalues within `tol` below `τ` still count toward the rank.
    pub tol: f64,
}

impl Default for SplittabilityOptions {
    fn default() -> Self {
        SplittabilityOptions {
            max_k: 8,
            tree_budget: 100_000,
            tol: EIGEN_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRank {
    pub a: usize,
    pub b: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplittabilityVerdict {
    pub tau: f64,
    pub r: usize,
    pub splittable: bool,
    /// Smallest `rank_{≥τ}(Swap(T, X))` over all trees.
    pub min_tree_rank: usize,
    /// A tree attaining `min_tree_rank`.
    pub witness_tree: SplittingTree,
    /// The swap graph that attains the maximum inside the witness tree.
    pub blocking_pair: PairRank,
    /// `min_l rank_{≥τ}(G_{l,k-l})`, a lower bound on every tree's rank.
    pub root_lower_bound: usize,
    pub pair_ranks: Vec<PairRank>,
    pub trees_examined: usize,
}

/// Decides `(τ, r)`-splittability by enumerating splitting-tree label patterns.
pub fn splittability<T: Real>(
    x: &SimplicialComplex<T>,
    tau: f64,
    r: usize,
    opts: SplittabilityOptions,
) -> Result<SplittabilityVerdict> {
    check_tau(tau)?;
    let k = x.k();
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "splittability needs k ≥ 2, got {k}"
        )));
    }
    if k > opts.max_k {
        return Err(Error::EnumerationBudget(format!(
            "k = {k} exceeds the splitting-tree limit {}",
            opts.max_k
        )));
    }
    let trees = SplittingTree::enumerate(k, opts.tree_budget)?;
    let pairs: BTreeSet<(usize, usize)> = trees.iter().flat_map(|t| t.swap_pairs()).collect();
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let ranks: Vec<usize> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let g = swap_graph(x, a, b)?;
            Ok(count_at_least(&eigenvalues(&g, "")?.values, tau, opts.tol))
        })
        .collect::<Result<_>>()?;
    let rank_of: HashMap<(usize, usize), usize> =
        pairs.iter().copied().zip(ranks.iter().copied()).collect();

    let mut best: Option<(usize, usize, (usize, usize))> = None;
    for (i, t) in trees.iter().enumerate() {
        let (worst_pair, worst) =
            t.swap_pairs()
                .into_iter()
                .map(|p| (p, rank_of[&p]))
                .fold(((0, 0), 0), |acc, cur| {
                    if cur.1 > acc.1 || acc.0 == (0, 0) {
                        cur
                    } else {
                        acc
                    }
                });
        if best.is_none_or(|(_, b, _)| worst < b) {
            best = Some((i, worst, worst_pair));
        }
    }
    let (idx, min_rank, (a, b)) = best.expect("at least one tree");
    let root_lower_bound = (1..=k / 2).map(|l| rank_of[&(l, k - l)]).min().unwrap_or(0);

    Ok(SplittabilityVerdict {
        tau,
        r,
        splittable: min_rank <= r,
        min_tree_rank: min_rank,
        witness_tree: trees[idx].clone(),
        blocking_pair: PairRank {
            a,
            b,
            rank: min_rank,
        },
        root_lower_bound,
        pair_ranks: pairs
            .iter()
            .zip(&ranks)
            .map(|(&(a, b), &rank)| PairRank { a, b, rank })
            .collect(),
        trees_examined: trees.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkSpectrum<T> {
    pub face: Face,
    /// Second-largest singular value of the skeleton's normalized adjacency.
    pub sigma2: T,
    /// Second-largest eigenvalue of the same matrix.
    pub lambda2: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkExpansionReport<T> {
    /// `max_s σ_2(G(X_s))`.
    pub gamma: T,
    /// `1 − γ`.
    pub link_expansion: T,
    pub witness: Face,
    /// `max_s λ_2(G(X_s))`, the one-sided analogue of `γ`.
    pub gamma_one_sided: T,
    pub one_sided_witness: Face,
    pub links: Vec<LinkSpectrum<T>>,
    pub tolerance: f64,
}

/// `(λ_2, σ_2)` of a graph's random walk: the second-largest eigenvalue and
/// the second-largest absolute eigenvalue.
pub fn second_eigenvalue<T: Real>(g: &WeightedGraph<T>) -> Result<(T, T)> {
    let values = symmetric_eigen(&g.normalized_adjacency()?).values;
    if values.len() < 2 {
        return Err(Error::GraphTooSmall);
    }
    let mut abs: Vec<T> = values.iter().map(|v| v.abs()).collect();
    abs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok((values[1], abs[1]))
}

/// `γ = max_{s ∈ X(≤k-2)} σ_2(G(X_s))`, where `G(X_s)` is the skeleton of
/// the link of `s` (including `s = ∅`); link expansion is `1 − γ`.
/// Ties keep the first face in level-then-lexicographic order.
pub fn hdx_gamma<T: Real>(x: &SimplicialComplex<T>) -> Result<LinkExpansionReport<T>> {
    if x.k() < 2 {
        return Err(Error::NoSkeleton(x.k()));
    }
    let faces: Vec<&Face> = (0..=x.k() - 2)
        .flat_map(|l| x.faces(l).expect("level in range").iter())
        .collect();
    let links: Vec<LinkSpectrum<T>> = faces
        .par_iter()
        .map(|&s| {
            let skeleton = x.link(s)?.skeleton()?;
            let (lambda2, sigma2) = second_eigenvalue(&skeleton).map_err(|e| match e {
                Error::IsolatedVertex(vertex) => Error::IsolatedLinkVertex {
                    face: s.clone(),
                    vertex,
                },
                other => other,
            })?;
            Ok(LinkSpectrum {
                face: s.clone(),
                sigma2,
                lambda2,
            })
        })
        .collect::<Result<_>>()?;
    let top = links.iter().fold(
        &links[0],
        |best, cur| if cur.sigma2 > best.sigma2 { cur } else { best },
    );
    let one_sided = links.iter().fold(&links[0], |best, cur| {
        if cur.lambda2 > best.lambda2 {
            cur
        } else {
            best
        }
    });
    Ok(LinkExpansionReport {
        gamma: top.sigma2,
        link_expansion: T::one() - top.sigma2,
        witness: top.face.clone(),
        gamma_one_sided: one_sided.lambda2,
        one_sided_witness: one_sided.face.clone(),
        tolerance: EIGEN_TOL,
        links,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;
    use crate::hypergraph::Hypergraph;
    use crate::walks::{down_operator, updown_walk};
    use approx::assert_abs_diff_eq;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedGraph<f64> {
        let labels = (0..n as u32)
            .map(|v| Vertex::new(0, Face::singleton(v)))
            .collect();
        WeightedGraph::from_edges(labels, edges.iter().copied())
    }

    fn cycle(n: usize) -> WeightedGraph<f64> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
        graph(n, &edges)
    }

    #[test]
    fn path_spectrum_and_ranks() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let e = eigenvalues(&g, "P3").unwrap();
        assert_abs_diff_eq!(e.values[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.values[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.values[2], -1.0, epsilon = 1e-12);
        assert_eq!(threshold_rank(&g, 0.0).unwrap(), 2);
        assert_eq!(threshold_rank(&g, 1.0).unwrap(), 1);
        assert_eq!(threshold_rank(&g, -1.0).unwrap(), 3);
        assert!(threshold_rank(&g, 1.5).is_err());
    }

    #[test]
    fn cycle_second_eigenvalue() {
        let (l2, s2) = second_eigenvalue(&cycle(12)).unwrap();
        assert_abs_diff_eq!(l2, (std::f64::consts::PI / 6.0).cos(), epsilon = 1e-12);
        // an even cycle is bipartite, so −1 is an eigenvalue
        assert_abs_diff_eq!(s2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn disconnected_graph_has_repeated_one() {
        let g = graph(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (3, 4, 2.0),
                (4, 5, 1.0),
                (5, 3, 1.0),
            ],
        );
        let e = eigenvalues(&g, "two").unwrap();
        assert_eq!(e.multiplicity_of_one(), 2);
        assert_eq!(e.nth(2).map(|v| (v - 1.0).abs() < 1e-12), Some(true));
    }

    #[test]
    fn walk_eigenvalues_need_square_walk() {
        let h = Hypergraph::<f64>::uniform(3, 5, vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        let x = h.complex().unwrap();
        assert!(walk_eigenvalues(&down_operator(&x, 2).unwrap()).is_err());
        let e = walk_eigenvalues(&updown_walk(&x, 1, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(e.values[0], 1.0, epsilon = 1e-12);
        assert!(e.values.iter().all(|&v| v > -1e-12 && v < 1.0 + 1e-12));
    }

    #[test]
    fn disconnected_hypergraph_has_second_singular_value_one() {
        let h = Hypergraph::<f64>::uniform(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let x = h.complex().unwrap();
        let s = singular_values(&down_operator(&x, 2).unwrap());
        assert_abs_diff_eq!(s.values[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.values[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn splitting_trees() {
        assert_eq!(
            SplittingTree::enumerate(1, 10).unwrap(),
            vec![SplittingTree::leaf()]
        );
        let two = SplittingTree::enumerate(2, 10).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].swap_pairs(), BTreeSet::from([(1, 1)]));
        // k = 4: root (1,3) then 3 = (1,2), 2 = (1,1); or root (2,2)
        let four = SplittingTree::enumerate(4, 10).unwrap();
        let patterns: BTreeSet<_> = four.iter().map(|t| t.swap_pairs()).collect();
        assert_eq!(
            patterns,
            BTreeSet::from([
                BTreeSet::from([(1, 1), (1, 2), (1, 3)]),
                BTreeSet::from([(1, 1), (2, 2)]),
            ])
        );
        for k in 1..=8 {
            for t in SplittingTree::enumerate(k, 10_000).unwrap() {
                assert!(t.is_valid());
                assert_eq!(t.label, k);
                assert_eq!(t.leaves(), k);
            }
        }
        assert!(SplittingTree::enumerate(8, 1).unwrap_err().is_budget());
        assert_eq!(four[1].to_string(), "4(2(1,1),2(1,1))");
    }

    #[test]
    fn k2_splittability_uses_the_single_swap_graph() {
        let h = Hypergraph::<f64>::uniform(2, 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let v = splittability(
            &h.complex().unwrap(),
            0.9,
            1,
            SplittabilityOptions::default(),
        )
        .unwrap();
        assert_eq!(v.trees_examined, 1);
        assert_eq!(v.pair_ranks.len(), 1);
        assert_eq!((v.pair_ranks[0].a, v.pair_ranks[0].b), (1, 1));
        // G_{1,1} of a triangle is the bipartite double cover: a 6-cycle
        assert_eq!(v.min_tree_rank, 1);
        assert!(v.splittable);
    }

    #[test]
    fn splittability_rejects_large_k() {
        let h = Hypergraph::<f64>::uniform(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let opts = SplittabilityOptions {
            max_k: 2,
            ..Default::default()
        };
        assert!(splittability(&h.complex().unwrap(), 0.5, 1, opts)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn single_edge_gamma() {
        let h = Hypergraph::<f64>::uniform(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let r = hdx_gamma(&h.complex().unwrap()).unwrap();
        // the empty face links to the whole triangle
        assert_abs_diff_eq!(r.links[0].sigma2, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.gamma, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.gamma_one_sided, -0.5, epsilon = 1e-12);
        assert_eq!(r.links.len(), 4);
        // vertex links are single edges: λ_2 = −1 and σ_2 = 1
        assert_abs_diff_eq!(r.links[1].lambda2, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.links[1].sigma2, 1.0, epsilon = 1e-12);
        assert_eq!(r.witness, Face::singleton(0));
        assert_eq!(r.one_sided_witness, Face::empty());
    }

    #[test]
    fn complete_complex_on_four_vertices() {
        let h = Hypergraph::<f64>::uniform(
            3,
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        let r = hdx_gamma(&h.complex().unwrap()).unwrap();
        assert_abs_diff_eq!(r.links[0].sigma2, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.links[0].lambda2, -1.0 / 3.0, epsilon = 1e-12);
    }
}
