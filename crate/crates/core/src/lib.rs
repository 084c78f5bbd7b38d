//! Simplicial complexes induced by weighted uniform hypergraphs, their
//! up-down and swap walks, spectra, conductance and sparse cuts, and the
//! sunflower and cycle-link counterexample families.
//!
//! Combinatorial and measure-theoretic code is generic over [`Field`], so it
//! runs in exact rational arithmetic; spectral code is generic over [`Real`].

pub mod complex;
pub mod constructions;
pub mod error;
pub mod face;
pub mod graph;
pub mod hypergraph;
pub mod linalg;
pub mod partition;
pub mod scalar;
pub mod spectra;
pub mod walks;

pub use complex::{induce_complex, LevelMeasure, SimplicialComplex, DEFAULT_FACE_BUDGET};
pub use constructions::{
    cycle_link_hypergraph, cycle_link_with_base, random_hypergraph, sunflower_hypergraph,
    verify_cycle_link_claims, verify_sunflower_claims, Claim, ClaimReport, Relation, VerifyOptions,
};
pub use error::{Error, Result};
pub use face::Face;
pub use graph::{Conductance, Vertex, WeightedGraph};
pub use hypergraph::{Hypergraph, HypergraphFile};
pub use partition::{
    brute_force_min_conductance, conductance_graph, conductance_hypergraph, fiedler_sweep,
    hypergraph_sparse_cut, verify_expansion_bounds, BoundReport, CutCertificate,
    ExpansionBoundChecker, OracleResult, SweepCut, DEFAULT_ORACLE_CAP,
};
pub use scalar::{binomial, Field, Real};
pub use spectra::{
    doubled_eigenvalues, eigenvalues, hdx_gamma, singular_values, splittability, threshold_rank,
    walk_eigenvalues, LinkExpansionReport, SpectralReport, SplittabilityOptions,
    SplittabilityVerdict, SplittingTree, EIGEN_TOL,
};
pub use walks::{
    bipartite_updown_matrix, bipartite_walk_graph, compose_down, compose_up, down_operator,
    inner_product, swap_block_matrix, swap_graph, swap_operator, two_step_graph, up_operator,
    updown_walk, MatrixExport, WalkOperator,
};

/// Exact rationals.
pub type Q = num_rational::Rational64;

pub type Hypergraph64 = Hypergraph<f64>;
pub type HypergraphQ = Hypergraph<Q>;
pub type SimplicialComplex64 = SimplicialComplex<f64>;
pub type SimplicialComplexQ = SimplicialComplex<Q>;
pub type WalkOperator64 = WalkOperator<f64>;
pub type WalkOperatorQ = WalkOperator<Q>;
pub type WeightedGraph64 = WeightedGraph<f64>;
pub type WeightedGraphQ = WeightedGraph<Q>;
pub type CutCertificate64 = CutCertificate<f64>;
pub type SpectralReport64 = SpectralReport<f64>;
