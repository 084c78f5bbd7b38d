//! The sunflower and cycle-link families, random instances, and checks of
//! the numeric claims made about the two families.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{induce_complex, SimplicialComplex, DEFAULT_FACE_BUDGET};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::hypergraph::Hypergraph;
use crate::partition::{brute_force_min_conductance, DEFAULT_ORACLE_CAP};
use crate::scalar::Field;
use crate::spectra::{
    eigenvalues, hdx_gamma, second_eigenvalue, singular_values, splittability, walk_eigenvalues,
    SplittabilityOptions, EIGEN_TOL,
};
use crate::walks::{bipartite_walk_graph, swap_graph, swap_operator, updown_walk};

/// `r` edges of size `k` sharing exactly vertex 0:
/// `e_i = {0} ∪ {(i−1)(k−1)+1, …, i(k−1)}` on `n = r(k−1)+1` vertices.
pub fn sunflower_hypergraph<T: Field>(r: usize, k: usize) -> Result<Hypergraph<T>> {
    if r < 1 || k < 3 {
        return Err(Error::InvalidParameter(format!(
            "sunflower needs r ≥ 1 and k ≥ 3, got r = {r}, k = {k}"
        )));
    }
    let petal = (k - 1) as u32;
    let edges = (0..r as u32)
        .map(|i| {
            std::iter::once(0)
                .chain(i * petal + 1..=(i + 1) * petal)
                .collect()
        })
        .collect();
    Hypergraph::uniform(k, r * (k - 1) + 1, edges)
}

/// All `k`-subsets of `0..n` plus, for every base edge `{a, b}`, the edge
/// `{a, b} ∪ τ` with tail `τ = {n, …, n+k−3}`.
pub fn cycle_link_with_base<T: Field>(
    n: usize,
    k: usize,
    base: &[(u32, u32)],
) -> Result<Hypergraph<T>> {
    if k < 3 || n < k {
        return Err(Error::InvalidParameter(format!(
            "cycle-link needs k ≥ 3 and n ≥ k, got n = {n}, k = {k}"
        )));
    }
    let tail: Vec<u32> = (n as u32..(n + k - 2) as u32).collect();
    let mut edges: Vec<Vec<u32>> = Face::new(0..n as u32)
        .subfaces(k)
        .map(|f| f.vertices().to_vec())
        .collect();
    for &(a, b) in base {
        if a == b || a as usize >= n || b as usize >= n {
            return Err(Error::InvalidParameter(format!(
                "base edge ({a}, {b}) is not an edge on 0..{n}"
            )));
        }
        edges.push([a, b].iter().chain(&tail).copied().collect());
    }
    Hypergraph::uniform(k, n + k - 2, edges)
}

/// The cycle-link family: base graph the `n`-cycle, `n ≥ 3k`.
pub fn cycle_link_hypergraph<T: Field>(n: usize, k: usize) -> Result<Hypergraph<T>> {
    if k < 3 || n < 3 * k {
        return Err(Error::InvalidParameter(format!(
            "cycle-link needs k ≥ 3 and n ≥ 3k, got n = {n}, k = {k}"
        )));
    }
    let cycle: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    cycle_link_with_base(n, k, &cycle)
}

/// A random `k`-uniform hypergraph on `n` vertices: a random cover of the
/// vertices by edges, plus `extra` random edges. With `weighted`, weights
/// are random integers in `1..=5`, normalized.
pub fn random_hypergraph<T: Field, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    extra: usize,
    weighted: bool,
) -> Result<Hypergraph<T>> {
    if k < 2 || n < k {
        return Err(Error::InvalidParameter(format!(
            "random hypergraph needs 2 ≤ k ≤ n, got n = {n}, k = {k}"
        )));
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for chunk in order.chunks(k) {
        let mut e = chunk.to_vec();
        while e.len() < k {
            let v = rng.random_range(0..n as u32);
            if !e.contains(&v) {
                e.push(v);
            }
        }
        edges.push(e);
    }
    for _ in 0..extra {
        edges.push(sample(rng, n, k).into_iter().map(|v| v as u32).collect());
    }
    let mut unique: BTreeMap<Face, ()> = BTreeMap::new();
    edges.retain(|e| unique.insert(Face::new(e.iter().copied()), ()).is_none());
    let weights = weighted.then(|| {
        let raw: Vec<u64> = edges.iter().map(|_| rng.random_range(1..=5)).collect();
        let total: u64 = raw.iter().sum();
        raw.iter().map(|&w| T::from_ratio(w, total)).collect()
    });
    Hypergraph::new(k, n, edges, weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Exact value when the claim was checked in rational arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl Claim {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        measured: f64,
        relation: Relation,
        bound: f64,
        tolerance: f64,
    ) -> Self {
        let pass = match relation {
            Relation::Eq => (measured - bound).abs() <= tolerance,
            Relation::Ge => measured >= bound - tolerance,
            Relation::Le => measured <= bound + tolerance,
        };
        Claim {
            id: id.into(),
            statement: statement.into(),
            measured,
            relation,
            bound,
            tolerance,
            pass,
            exact: None,
        }
    }

    fn count(
        id: impl Into<String>,
        statement: impl Into<String>,
        measured: usize,
        relation: Relation,
        bound: usize,
    ) -> Self {
        Claim::new(id, statement, measured as f64, relation, bound as f64, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub construction: String,
    pub parameters: BTreeMap<String, usize>,
    pub notes: Vec<String>,
    /// Sorted by id.
    pub claims: Vec<Claim>,
}

impl ClaimReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub face_budget: usize,
    pub oracle_cap: usize,
    pub taus: Vec<f64>,
    pub splittability: SplittabilityOptions,
    pub eigen_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            face_budget: DEFAULT_FACE_BUDGET,
            oracle_cap: DEFAULT_ORACLE_CAP,
            taus: vec![-1.0, -0.5, 0.0, 0.5, 1.0],
            splittability: SplittabilityOptions::default(),
            eigen_tol: EIGEN_TOL,
        }
    }
}

fn nth(values: &[f64], i: usize) -> f64 {
    values.get(i - 1).copied().unwrap_or(f64::NAN)
}

/// Pairs `(m, l)` with `m + l ≤ k` and either `m, l ≥ 2` or `m + l = k`.
pub fn admissible_swap_pairs(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 1..k {
        for l in 1..=k - m {
            if (m >= 2 && l >= 2) || m + l == k {
                out.push((m, l));
            }
        }
    }
    out
}

fn swap_claims(
    x: &SimplicialComplex<f64>,
    r: usize,
    m: usize,
    l: usize,
    tol: f64,
) -> Result<Vec<Claim>> {
    let g = swap_graph(x, m, l)?;
    let lambda = eigenvalues(&g, format!("G_{{{m},{l}}}"))?;
    let sigma = singular_values(&swap_operator(x, m, l)?);
    let tag = format!("[m={m},l={l}]");
    Ok(vec![
        Claim::new(
            format!("swap_lambda_r{tag}"),
            format!("λ_{r}(G_{{{m},{l}}}) = 1"),
            nth(&lambda.values, r),
            Relation::Eq,
            1.0,
            tol,
        ),
        Claim::new(
            format!("swap_sigma_r{tag}"),
            format!("σ_{r}(S_{{{m},{l}}}) = 1"),
            nth(&sigma.values, r),
            Relation::Eq,
            1.0,
            tol,
        ),
        Claim::count(
            format!("swap_components{tag}"),
            format!("G_{{{m},{l}}} has at least {r} components"),
            g.component_count(),
            Relation::Ge,
            r,
        ),
    ])
}

/// Checks the sunflower claims: `λ_r(G_{m,l}) = σ_r(S_{m,l}) = 1` on every
/// admissible pair, `λ_r(N²_{m,l}) = 1` for `2 ≤ m < l ≤ k`, `B_{2,k}` has
/// `r` components, the exact minimum conductance is at least `1/k`, and the
/// complex is not `(τ, r)`-splittable for each sampled `τ`.
pub fn verify_sunflower_claims(r: usize, k: usize, opts: &VerifyOptions) -> Result<ClaimReport> {
    let exact: Hypergraph<Rational64> = sunflower_hypergraph(r, k)?;
    let h: Hypergraph<f64> = exact.convert()?;
    let x = induce_complex(&h, opts.face_budget)?;
    let tol = opts.eigen_tol;

    let swap: Vec<Vec<Claim>> = admissible_swap_pairs(k)
        .par_iter()
        .map(|&(m, l)| swap_claims(&x, r, m, l, tol))
        .collect::<Result<_>>()?;
    let updown_pairs: Vec<(usize, usize)> = (2..=k)
        .flat_map(|m| (m + 1..=k).map(move |l| (m, l)))
        .collect();
    let updown: Vec<Claim> = updown_pairs
        .par_iter()
        .map(|&(m, l)| {
            let e = walk_eigenvalues(&updown_walk(&x, m, l)?)?;
            Ok(Claim::new(
                format!("updown_lambda_r[m={m},l={l}]"),
                format!("λ_{r}(N²_{{{m},{l}}}) = 1"),
                nth(&e.values, r),
                Relation::Eq,
                1.0,
                tol,
            ))
        })
        .collect::<Result<_>>()?;
    let mut claims: Vec<Claim> = swap.into_iter().flatten().chain(updown).collect();

    claims.push(Claim::count(
        "bipartite_components[m=2]",
        format!("B_{{2,{k}}} has exactly {r} components"),
        bipartite_walk_graph(&x, 2, k)?.component_count(),
        Relation::Eq,
        r,
    ));

    let oracle = brute_force_min_conductance(&exact, opts.oracle_cap)?;
    let bound = Rational64::new(1, k as i64);
    let mut c = Claim::new(
        "oracle_conductance",
        format!("min φ_H ≥ 1/{k}"),
        oracle.conductance.to_f64_value(),
        Relation::Ge,
        bound.to_f64_value(),
        0.0,
    );
    c.pass = oracle.conductance >= bound;
    c.exact = Some(format!(
        "{} at S = {}",
        oracle.conductance,
        Face::new(oracle.set.iter().copied())
    ));
    claims.push(c);

    for &tau in &opts.taus {
        let v = splittability(&x, tau, r, opts.splittability)?;
        let mut c = Claim::count(
            format!("not_splittable[tau={tau}]"),
            format!("every splitting tree has rank_≥{tau} > {r}"),
            v.min_tree_rank,
            Relation::Ge,
            r + 1,
        );
        c.pass = !v.splittable;
        claims.push(c);
    }
    claims.sort_by(|a, b| a.id.cmp(&b.id));

    let star = swap_graph(&x, 1, k - 1)?.component_count();
    Ok(ClaimReport {
        construction: "sunflower".into(),
        parameters: BTreeMap::from([("r".into(), r), ("k".into(), k), ("n".into(), h.num_vertices())]),
        notes: vec![
            format!("edges e_i = {{0}} ∪ {{(i-1)(k-1)+1, ..., i(k-1)}}; the indexing {{0, k(i-1), ..., ki-1}} is not {k}-uniform for i ≥ 2"),
            format!("G_{{1,{}}} has {star} components (1 + r(k-1)), at least r as required", k - 1),
        ],
        claims,
    })
}

/// Checks the cycle-link claims: the link of the tail has skeleton
/// `λ_2 = cos(2π/n)`, `γ ≥ cos(2π/n)`, the minimum conductance is at least
/// `1/(3k)^k`, and the vertex degrees match the construction.
pub fn verify_cycle_link_claims(n: usize, k: usize, opts: &VerifyOptions) -> Result<ClaimReport> {
    let h: Hypergraph<f64> = cycle_link_hypergraph(n, k)?;
    let x = induce_complex(&h, opts.face_budget)?;
    let tol = opts.eigen_tol;
    let target = (2.0 * std::f64::consts::PI / n as f64).cos();
    let tail = Face::new(n as u32..(n + k - 2) as u32);

    let link_skeleton = x.link(&tail)?.skeleton()?;
    let (lambda2, _) = second_eigenvalue(&link_skeleton)?;
    let gamma = hdx_gamma(&x)?;
    let oracle = brute_force_min_conductance(&h, opts.oracle_cap)?;
    let floor = (3.0 * k as f64).powi(k as i32).recip();

    let counts = h.edge_counts();
    let base_degree = crate::scalar::binomial(n - 1, k - 1) as usize + 2;
    let mut claims = vec![
        Claim::new(
            "link_lambda2",
            format!("λ_2(skeleton(link({tail}))) = cos(2π/{n})"),
            lambda2,
            Relation::Eq,
            target,
            tol,
        ),
        Claim::new(
            "gamma",
            format!("γ ≥ cos(2π/{n}) (witness {})", gamma.witness),
            gamma.gamma,
            Relation::Ge,
            target,
            tol,
        ),
        Claim::new(
            "oracle_conductance",
            format!("min φ_H ≥ 1/(3·{k})^{k}"),
            oracle.conductance,
            Relation::Ge,
            floor,
            tol,
        ),
        Claim::count(
            "tail_degree",
            format!("every tail vertex lies in {n} edges"),
            counts[n..].iter().copied().min().unwrap_or(0),
            Relation::Eq,
            n,
        ),
        Claim::count(
            "base_degree",
            format!(
                "every base vertex lies in C({},{})+2 = {base_degree} edges",
                n - 1,
                k - 1
            ),
            counts[..n].iter().copied().min().unwrap_or(0),
            Relation::Eq,
            base_degree,
        ),
    ];
    if counts[n..].iter().any(|&c| c != n) {
        claims[3].pass = false;
    }
    if counts[..n].iter().any(|&c| c != base_degree) {
        claims[4].pass = false;
    }
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(ClaimReport {
        construction: "cycle-link".into(),
        parameters: BTreeMap::from([
            ("n".into(), n),
            ("k".into(), k),
            ("vertices".into(), h.num_vertices()),
        ]),
        notes: vec![
            format!(
                "tail τ = {tail}; λ_2 is the second-largest eigenvalue of the normalized adjacency"
            ),
            format!(
                "oracle minimizer S = {} with φ_H = {}",
                Face::new(oracle.set.iter().copied()),
                oracle.conductance
            ),
        ],
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sunflower_shape() {
        let h = sunflower_hypergraph::<f64>(2, 3).unwrap();
        assert_eq!(h.num_vertices(), 5);
        assert_eq!(h.edges(), &[Face::from([0, 1, 2]), Face::from([0, 3, 4])]);
        assert_eq!(sunflower_hypergraph::<f64>(1, 4).unwrap().num_edges(), 1);
        for r in 1..=6 {
            for k in 3..=5 {
                let h = sunflower_hypergraph::<f64>(r, k).unwrap();
                assert_eq!(h.num_vertices(), r * (k - 1) + 1);
                for (i, a) in h.edges().iter().enumerate() {
                    for b in &h.edges()[i + 1..] {
                        let common: Vec<u32> = a
                            .vertices()
                            .iter()
                            .copied()
                            .filter(|&v| b.contains(v))
                            .collect();
                        assert_eq!(common, vec![0]);
                    }
                }
            }
        }
        assert!(sunflower_hypergraph::<f64>(0, 3).is_err());
        assert!(sunflower_hypergraph::<f64>(2, 2).is_err());
    }

    #[test]
    fn cycle_link_shape() {
        let h = cycle_link_hypergraph::<f64>(9, 3).unwrap();
        assert_eq!(h.num_vertices(), 10);
        assert_eq!(h.num_edges(), 84 + 9);
        assert_eq!(h.edges().iter().filter(|e| e.contains(9)).count(), 9);
        for n in 12..=15 {
            let h = cycle_link_hypergraph::<f64>(n, 4).unwrap();
            let counts = h.edge_counts();
            assert!(counts[n..].iter().all(|&c| c == n));
        }
        assert!(cycle_link_hypergraph::<f64>(8, 3).is_err());
        assert!(cycle_link_with_base::<f64>(5, 3, &[(0, 0)]).is_err());
    }

    #[test]
    fn random_instances_are_valid_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_hypergraph::<f64, _>(&mut a, 9, 3, 4, true).unwrap();
            let y = random_hypergraph::<f64, _>(&mut b, 9, 3, 4, true).unwrap();
            assert_eq!(x.to_json(), y.to_json());
        }
        let q = random_hypergraph::<Rational64, _>(&mut a, 7, 3, 2, true).unwrap();
        assert_eq!(
            q.weights().iter().sum::<Rational64>(),
            Rational64::from_integer(1)
        );
    }

    #[test]
    fn admissible_pairs() {
        assert_eq!(admissible_swap_pairs(3), vec![(1, 2), (2, 1)]);
        assert_eq!(admissible_swap_pairs(4), vec![(1, 3), (2, 2), (3, 1)]);
        assert!(admissible_swap_pairs(5).contains(&(2, 2)));
    }

    #[test]
    fn small_sunflower_report() {
        let r = verify_sunflower_claims(2, 3, &VerifyOptions::default()).unwrap();
        assert!(r.pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.claim("bipartite_components[m=2]").unwrap().measured, 2.0);
        let ids: Vec<&str> = r.claims.iter().map(|c| c.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn small_cycle_link_report() {
        let r = verify_cycle_link_claims(9, 3, &VerifyOptions::default()).unwrap();
        assert!(r.pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
