//! Conductance, the brute-force oracle, the Fiedler sweep and the
//! hypergraph sparse-cut algorithm with its certificate.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::{Conductance, WeightedGraph};
use crate::hypergraph::Hypergraph;
use crate::linalg::symmetric_eigen;
use crate::scalar::{binom, Field, Real};
use crate::spectra::{singular_values, walk_eigenvalues};
use crate::walks::{compose_down, two_step_graph, updown_walk};

/// Tolerance used by certificate and bound checks.
pub const BOUND_TOL: f64 = 1e-9;

/// Default vertex cap of the brute-force oracle.
pub const DEFAULT_ORACLE_CAP: usize = 24;

fn membership(n: usize, set: &[u32]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        match mask.get_mut(v as usize) {
            Some(m) => *m = true,
            None => return Err(Error::InvalidCut(format!("vertex {v} is not below {n}"))),
        }
    }
    let inside = mask.iter().filter(|&&m| m).count();
    if inside == 0 || inside == n {
        return Err(Error::InvalidCut(format!(
            "{inside} of {n} vertices selected"
        )));
    }
    Ok(mask)
}

fn hypergraph_cut<T: Field>(h: &Hypergraph<T>, degrees: &[T], mask: &[bool]) -> Conductance<T> {
    let mut boundary = T::zero();
    for (e, w) in h.edges_with_weights() {
        let inside = e.vertices().iter().filter(|&&v| mask[v as usize]).count();
        if inside > 0 && inside < e.level() {
            boundary += w;
        }
    }
    let mut volume = T::zero();
    let mut total = T::zero();
    for (d, &m) in degrees.iter().zip(mask) {
        total += *d;
        if m {
            volume += *d;
        }
    }
    let half = total / T::from_count(2);
    Conductance {
        value: boundary / volume,
        boundary,
        volume,
        within_half: volume <= half + T::tolerance(1e-12),
    }
}

/// `φ_H(S) = Π(∂_H(S)) / vol_H(S)` with `Π`-weighted degrees. The value is
/// returned whichever side of the volume split `S` is on; `within_half`
/// records the side.
pub fn conductance_hypergraph<T: Field>(h: &Hypergraph<T>, set: &[u32]) -> Result<Conductance<T>> {
    let mask = membership(h.num_vertices(), set)?;
    Ok(hypergraph_cut(h, &h.degrees(), &mask))
}

/// Conductance of a set of graph vertex indices.
pub fn conductance_graph<T: Field>(g: &WeightedGraph<T>, set: &[usize]) -> Result<Conductance<T>> {
    let mut mask = vec![false; g.len()];
    for &v in set {
        match mask.get_mut(v) {
            Some(m) => *m = true,
            None => {
                return Err(Error::InvalidCut(format!(
                    "vertex {v} is not below {}",
                    g.len()
                )))
            }
        }
    }
    g.conductance_of_mask(&mask)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleResult<T> {
    pub set: Vec<u32>,
    pub conductance: T,
    pub boundary: T,
    pub volume: T,
    pub subsets_examined: u64,
}

fn mask_vertices(mask: u64) -> Vec<u32> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Better candidate: strictly smaller conductance, or a tie broken by the
/// lexicographically smaller vertex list.
fn better<T: Field>(cand: (T, u64), best: (T, u64), tie: T) -> bool {
    let diff = cand.0 - best.0;
    if diff < -tie {
        true
    } else if diff > tie {
        false
    } else {
        mask_vertices(cand.1) < mask_vertices(best.1)
    }
}

/// Exact minimum of `φ_H(S)` over all `S` with `vol_H(S) ≤ vol_H(V)/2`,
/// by exhaustive subset scan. Ties go to the lexicographically smallest `S`.
pub fn brute_force_min_conductance<T: Field>(
    h: &Hypergraph<T>,
    cap: usize,
) -> Result<OracleResult<T>> {
    let n = h.num_vertices();
    if n > cap.min(63) {
        return Err(Error::OracleCap {
            cap: cap.min(63),
            vertices: n,
        });
    }
    if n < 2 {
        return Err(Error::GraphTooSmall);
    }
    let edges: Vec<(u64, T)> = h
        .edges_with_weights()
        .map(|(e, w)| (e.vertices().iter().fold(0u64, |m, &v| m | 1 << v), w))
        .collect();
    let degrees = h.degrees();
    let total = degrees.iter().fold(T::zero(), |a, &b| a + b);
    let limit = total / T::from_count(2) + T::tolerance(1e-12);
    let tie = T::tolerance(1e-12);
    let full = (1u64 << n) - 1;

    const CHUNK: u64 = 1 << 12;
    let chunks = full.div_ceil(CHUNK);
    let partial: Vec<Option<(T, u64, T, T)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best: Option<(T, u64, T, T)> = None;
            for mask in (c * CHUNK).max(1)..((c + 1) * CHUNK).min(full) {
                let mut volume = T::zero();
                let mut bits = mask;
                while bits != 0 {
                    volume += degrees[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                if volume > limit {
                    continue;
                }
                let mut boundary = T::zero();
                for &(e, w) in &edges {
                    if e & mask != 0 && e & !mask != 0 {
                        boundary += w;
                    }
                }
                let phi = boundary / volume;
                if best.is_none_or(|b| better((phi, mask), (b.0, b.1), tie)) {
                    best = Some((phi, mask, boundary, volume));
                }
            }
            best
        })
        .collect();
    let (phi, mask, boundary, volume) = partial
        .into_iter()
        .flatten()
        .reduce(|best, cand| {
            if better((cand.0, cand.1), (best.0, best.1), tie) {
                cand
            } else {
                best
            }
        })
        .expect("some proper subset has at most half the volume");
    Ok(OracleResult {
        set: mask_vertices(mask),
        conductance: phi,
        boundary,
        volume,
        subsets_examined: full - 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Prefix,
    Complement,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepCut<T> {
    /// Graph vertex indices, ascending.
    pub set: Vec<usize>,
    pub conductance: Conductance<T>,
    pub side: Side,
    pub lambda2: T,
    /// `‖N x − λ_2 x‖ / ‖x‖` for the sweep vector `x`.
    pub residual: T,
    /// `√(2(1 − λ_2))`.
    pub cheeger_bound: T,
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &b| a + b * b).sqrt()
}

/// Spectral sweep: order vertices by `D^{-1/2} x` for the second eigenvector
/// `x` of the normalized adjacency (ties by index), scan every prefix in
/// both directions and keep the sparsest cut, taking the complement of a
/// prefix holding more than half the volume.
pub fn fiedler_sweep<T: Real>(g: &WeightedGraph<T>) -> Result<SweepCut<T>> {
    let n = g.len();
    if n < 2 {
        return Err(Error::GraphTooSmall);
    }
    let na = g.normalized_adjacency()?;
    let eig = symmetric_eigen(&na);
    let lambda2 = eig.values[1];
    let sqrt_deg: Vec<T> = g.degrees().iter().map(|d| d.sqrt()).collect();
    let top_norm = norm(&sqrt_deg);
    let project = |col: usize| -> Vec<T> {
        let v: Vec<T> = eig.vectors.column(col).to_vec();
        let dot = v
            .iter()
            .zip(&sqrt_deg)
            .fold(T::zero(), |a, (&x, &d)| a + x * d)
            / (top_norm * top_norm);
        v.iter()
            .zip(&sqrt_deg)
            .map(|(&x, &d)| x - dot * d)
            .collect()
    };
    let mut x = project(1);
    if norm(&x) < T::from_f64_lossy(1e-8) {
        // the eigensolver returned the trivial vector in second place
        x = project(0);
    }
    let xn = norm(&x);
    let nx = na.dot(&ndarray::Array1::from(x.clone()));
    let residual = norm(
        &nx.iter()
            .zip(&x)
            .map(|(&a, &b)| a - lambda2 * b)
            .collect::<Vec<_>>(),
    ) / xn;

    let f: Vec<T> = x.iter().zip(&sqrt_deg).map(|(&a, &d)| a / d).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        f[a].partial_cmp(&f[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });

    let adj = g.adjacency();
    let total = g.total_volume();
    let half = total / T::from_count(2);
    let tol = T::tolerance(1e-12);
    let mut best: Option<(T, Vec<usize>, Side)> = None;
    for sequence in [
        order.clone(),
        order.iter().rev().copied().collect::<Vec<_>>(),
    ] {
        let mut inside = vec![false; n];
        let mut boundary = T::zero();
        let mut volume = T::zero();
        for (count, &v) in sequence[..n - 1].iter().enumerate() {
            for u in 0..n {
                if u == v {
                    continue;
                }
                if inside[u] {
                    boundary -= adj[(v, u)];
                } else {
                    boundary += adj[(v, u)];
                }
            }
            inside[v] = true;
            volume += g.degree(v);
            let (side, side_volume) = if volume <= half + tol {
                (Side::Prefix, volume)
            } else {
                (Side::Complement, total - volume)
            };
            let phi = boundary.max(T::zero()) / side_volume;
            if best.as_ref().is_none_or(|b| phi < b.0) {
                let set: Vec<usize> = match side {
                    Side::Prefix => sequence[..=count].to_vec(),
                    Side::Complement => sequence[count + 1..].to_vec(),
                };
                best = Some((phi, set, side));
            }
        }
    }
    let (_, mut set, side) = best.expect("n ≥ 2 gives a prefix");
    set.sort_unstable();
    let conductance = conductance_graph(g, &set)?;
    Ok(SweepCut {
        set,
        conductance,
        side,
        lambda2,
        residual,
        cheeger_bound: (T::from_count(2) * (T::one() - lambda2))
            .max(T::zero())
            .sqrt(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateChecks {
    /// `φ_H(S) ≤ 2 φ_{B²_{1,2}}(S)`.
    pub relate_expansion: bool,
    /// `φ_H(S) ≤ 4√ε`.
    pub upper_bound: bool,
    /// Sweep conductance within the Cheeger bound.
    pub cheeger: bool,
    /// `vol_H(S) ≤ vol_H(V)/2`.
    pub within_half: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.relate_expansion && self.upper_bound && self.cheeger && self.within_half
    }
}

/// Output of [`hypergraph_sparse_cut`].
#[derive(Debug, Clone, Serialize)]
pub struct CutCertificate<T> {
    pub set: Vec<u32>,
    pub level: usize,
    pub phi_h: T,
    pub phi_b2: T,
    /// `1 − σ_2(D_{1,2})`.
    pub epsilon: T,
    /// `1 − σ_2(D_{1,l})`.
    pub epsilon_l: T,
    /// `λ_2(N²_{1,l})`.
    pub lambda2_updown: T,
    /// `(1 − λ_2(N²_{1,l})) / k`, a lower bound on every `φ_H(S)`.
    pub spectral_lower_bound: T,
    /// `(ε/k, 4√ε)`.
    pub bounds: (T, T),
    /// `√(2(1 − (1−ε)²))`, the sweep guarantee on `B²_{1,2}`.
    pub cheeger_bound: T,
    pub vol_side: Side,
    pub within_half: bool,
    pub residual: T,
    pub checks: CertificateChecks,
    pub pass: bool,
}

fn second<T: Real>(values: &[T]) -> T {
    values.get(1).copied().unwrap_or_else(T::zero)
}

/// Sparse cut of `H` by a Fiedler sweep on `B²_{1,2}`, certified against
/// the spectral quantities of levels 2 and `l`.
pub fn hypergraph_sparse_cut<T: Real>(
    h: &Hypergraph<T>,
    l: usize,
    face_budget: usize,
) -> Result<CutCertificate<T>> {
    let k = h.k();
    if l < 2 || l > k {
        return Err(Error::LevelOutOfRange { level: l, max: k });
    }
    let x = crate::complex::induce_complex(h, face_budget)?;
    sparse_cut_on(h, &x, l)
}

pub(crate) fn sparse_cut_on<T: Real>(
    h: &Hypergraph<T>,
    x: &SimplicialComplex<T>,
    l: usize,
) -> Result<CutCertificate<T>> {
    let k = T::from_count(h.k() as u64);
    let epsilon = T::one() - second(&singular_values(&compose_down(x, 1, 2)?).values);
    let epsilon_l = T::one() - second(&singular_values(&compose_down(x, 1, l)?).values);
    let lambda2_updown = second(&walk_eigenvalues(&updown_walk(x, 1, l)?)?.values);

    let g = two_step_graph(x, 1, 2)?;
    let sweep = fiedler_sweep(&g)?;
    let set: Vec<u32> = sweep
        .set
        .iter()
        .map(|&i| g.labels()[i].face.vertices()[0])
        .collect();
    let cut = conductance_hypergraph(h, &set)?;

    let tol = T::from_f64_lossy(BOUND_TOL);
    let two = T::from_count(2);
    let upper = T::from_count(4) * epsilon.max(T::zero()).sqrt();
    let one_minus = T::one() - epsilon;
    let cheeger_bound = (two * (T::one() - one_minus * one_minus))
        .max(T::zero())
        .sqrt();
    let checks = CertificateChecks {
        relate_expansion: cut.value <= two * sweep.conductance.value + tol,
        upper_bound: cut.value <= upper + tol,
        cheeger: sweep.conductance.value <= sweep.cheeger_bound + tol,
        within_half: cut.within_half,
    };
    Ok(CutCertificate {
        set,
        level: l,
        phi_h: cut.value,
        phi_b2: sweep.conductance.value,
        epsilon,
        epsilon_l,
        lambda2_updown,
        spectral_lower_bound: (T::one() - lambda2_updown) / k,
        bounds: (epsilon / k, upper),
        cheeger_bound,
        vol_side: sweep.side,
        within_half: cut.within_half,
        residual: sweep.residual,
        pass: checks.all(),
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck<T> {
    pub name: String,
    pub lhs: T,
    pub rhs: T,
    /// `rhs − lhs` (for identities, `−|rhs − lhs|`).
    pub slack: T,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport<T> {
    pub set: Vec<u32>,
    pub level: usize,
    pub boundary_h: T,
    pub volume_h: T,
    pub checks: Vec<BoundCheck<T>>,
}

impl<T: Field> BoundReport<T> {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Precomputes the `B²_{1,l}` graphs of a hypergraph so that the boundary
/// inequalities can be evaluated for many sets.
#[derive(Debug, Clone)]
pub struct ExpansionBoundChecker<'a, T> {
    h: &'a Hypergraph<T>,
    degrees: Vec<T>,
    graphs: Vec<WeightedGraph<T>>,
}

impl<'a, T: Field> ExpansionBoundChecker<'a, T> {
    pub fn new(h: &'a Hypergraph<T>, face_budget: usize) -> Result<Self> {
        let x = crate::complex::induce_complex(h, face_budget)?;
        let graphs = (2..=h.k())
            .map(|l| two_step_graph(&x, 1, l))
            .collect::<Result<_>>()?;
        Ok(ExpansionBoundChecker {
            h,
            degrees: h.degrees(),
            graphs,
        })
    }

    /// `B²_{1,l}`; vertex `i` of the graph is hypergraph vertex `i`.
    pub fn graph(&self, l: usize) -> Result<&WeightedGraph<T>> {
        if l < 2 || l > self.h.k() {
            return Err(Error::LevelOutOfRange {
                level: l,
                max: self.h.k(),
            });
        }
        Ok(&self.graphs[l - 2])
    }

    pub fn check(&self, set: &[u32], l: usize) -> Result<BoundReport<T>> {
        let mask = membership(self.h.num_vertices(), set)?;
        self.check_mask(&mask, l).map(|mut r| {
            r.set = BTreeSet::from_iter(set.iter().copied())
                .into_iter()
                .collect();
            r
        })
    }

    /// Evaluates, for `S` given as a membership mask:
    /// `(k−1) Π(∂_H S) ≤ w(∂_{B²_{1,2}} S)`,
    /// `w(∂_{B²_{1,l}} S) ≤ C(k,l) C(l,2) Π(∂_H S)`,
    /// `φ_H(S) ≤ 2 φ_{B²_{1,2}}(S)`, `φ_H(S) ≥ (2/k) φ_{B²_{1,l}}(S)`
    /// and the identity `vol_{B²_{1,l}}(S) = C(k,l) (l²/k) vol_H(S)`.
    pub fn check_mask(&self, mask: &[bool], l: usize) -> Result<BoundReport<T>> {
        let k = self.h.k();
        let b2 = self.graph(2)?.conductance_of_mask(mask)?;
        let bl = self.graph(l)?.conductance_of_mask(mask)?;
        let hc = hypergraph_cut(self.h, &self.degrees, mask);
        let kf = T::from_count(k as u64);
        let lf = T::from_count(l as u64);
        let two = T::from_count(2);
        let tol = T::tolerance(BOUND_TOL);
        let ident_tol = T::tolerance(1e-12);
        let ckl: T = binom(k, l);
        let cl2: T = binom(l, 2);

        let le = |name: &str, lhs: T, rhs: T| BoundCheck {
            name: name.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass: rhs - lhs >= -tol,
        };
        let vol_rhs = ckl * lf * lf / kf * hc.volume;
        let vol_gap = (bl.volume - vol_rhs).magnitude();
        let checks = vec![
            le(
                "related_boundary",
                (kf - T::one()) * hc.boundary,
                b2.boundary,
            ),
            le("boundary_upper", bl.boundary, ckl * cl2 * hc.boundary),
            le("relate_expansion", hc.value, two * b2.value),
            le("lowerbound_expansion", two / kf * bl.value, hc.value),
            BoundCheck {
                name: "volume_identity".to_string(),
                lhs: bl.volume,
                rhs: vol_rhs,
                slack: -vol_gap,
                pass: vol_gap <= ident_tol * (T::one() + vol_rhs.magnitude()),
            },
        ];
        Ok(BoundReport {
            set: mask
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| i as u32)
                .collect(),
            level: l,
            boundary_h: hc.boundary,
            volume_h: hc.volume,
            checks,
        })
    }
}

/// One-off evaluation of the boundary and expansion inequalities.
pub fn verify_expansion_bounds<T: Field>(
    h: &Hypergraph<T>,
    set: &[u32],
    l: usize,
) -> Result<BoundReport<T>> {
    ExpansionBoundChecker::new(h, crate::complex::DEFAULT_FACE_BUDGET)?.check(set, l)
}
