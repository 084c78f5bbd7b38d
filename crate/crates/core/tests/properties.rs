//! Randomized invariants of complexes, walks, spectra and cuts.

mod common;

use hsx_core::partition::fiedler_sweep;
use hsx_core::{
    binomial, bipartite_walk_graph, compose_down, eigenvalues, hypergraph_sparse_cut,
    random_hypergraph, swap_graph, threshold_rank, two_step_graph, updown_walk, walk_eigenvalues,
    Face, Hypergraph, SimplicialComplex, WalkOperator, DEFAULT_FACE_BUDGET, Q,
};
use proptest::prelude::*;

fn hypergraph(seed: u64, n_max: usize, k_max: usize) -> Hypergraph<f64> {
    common::random_family(seed, 1, 2..=k_max, n_max).remove(0)
}

fn exact(seed: u64, n_max: usize, k_max: usize) -> Hypergraph<Q> {
    common::random_family(seed, 1, 2..=k_max, n_max).remove(0)
}

fn all_walks(x: &SimplicialComplex<f64>) -> Vec<WalkOperator<f64>> {
    let k = x.k();
    let mut ops = Vec::new();
    for m in 1..=k {
        for l in m..=k {
            let down = compose_down(x, m, l).unwrap();
            ops.push(down.adjoint());
            ops.push(down);
            ops.push(updown_walk(x, m, l).unwrap());
        }
    }
    ops
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complex_is_closed_pure_and_consistent(seed in any::<u64>()) {
        let h = exact(seed, 10, 4);
        let x = h.complex().unwrap();
        prop_assert_eq!(x.faces(0).unwrap(), &[Face::empty()][..]);
        for l in 0..=x.k() {
            let level = x.level(l).unwrap();
            let total: Q = level.probabilities().iter().sum();
            prop_assert_eq!(total, Q::from_integer(1));
            for (t, p) in level.iter() {
                prop_assert!(p > Q::from_integer(0));
                prop_assert!(h.edges().iter().any(|e| t.is_subset(e)));
                if l > 0 {
                    for s in t.subfaces(l - 1) {
                        prop_assert!(x.contains(&s));
                    }
                }
            }
            for m in 0..=l {
                let lower = x.level(m).unwrap();
                let mut sums = vec![Q::from_integer(0); lower.len()];
                for (t, p) in level.iter() {
                    for s in t.subfaces(m) {
                        sums[lower.index_of(&s).unwrap()] += p;
                    }
                }
                let c = Q::from_integer(binomial(l, m) as i64);
                for (sum, p) in sums.iter().zip(lower.probabilities()) {
                    prop_assert_eq!(*sum, c * p);
                }
            }
        }
    }

    #[test]
    fn links_are_probability_measures(seed in any::<u64>()) {
        let x = exact(seed, 9, 4).complex().unwrap();
        for l in 0..=x.k().saturating_sub(2) {
            for s in x.faces(l).unwrap() {
                let link = x.link(s).unwrap();
                prop_assert_eq!(link.k(), x.k() - l);
                for level in link.levels() {
                    let total: Q = level.probabilities().iter().sum();
                    prop_assert_eq!(total, Q::from_integer(1));
                }
            }
        }
    }

    #[test]
    fn json_round_trip_is_idempotent(seed in any::<u64>()) {
        let h = hypergraph(seed, 10, 4);
        let text = h.to_json();
        let again = Hypergraph::<f64>::from_json(&text).unwrap();
        prop_assert_eq!(&again, &h);
        prop_assert_eq!(again.to_json(), text);
    }

    #[test]
    fn walks_are_stochastic_and_adjoint_is_an_involution(seed in any::<u64>()) {
        let x = hypergraph(seed, 9, 4).complex().unwrap();
        for op in all_walks(&x) {
            prop_assert!(op.stochastic_defect() <= 1e-12);
            prop_assert!(op.matrix().iter().all(|&v| v >= 0.0));
            let back = op.adjoint().adjoint();
            let gap = back.matrix().iter().zip(op.matrix().iter()).fold(0.0f64, |w, (a, b)| w.max((a - b).abs()));
            prop_assert!(gap <= 1e-12);
        }
    }

    #[test]
    fn updown_spectrum_lies_in_unit_interval(seed in any::<u64>()) {
        let x = hypergraph(seed, 9, 4).complex().unwrap();
        for m in 1..=x.k() {
            for l in m..=x.k() {
                let e = walk_eigenvalues(&updown_walk(&x, m, l).unwrap()).unwrap();
                prop_assert!((e.values[0] - 1.0).abs() <= 1e-9);
                prop_assert!(e.values.iter().all(|&v| (-1e-9..=1.0 + 1e-9).contains(&v)));
            }
        }
    }

    #[test]
    fn bipartite_spectra_are_symmetric(seed in any::<u64>()) {
        let x = hypergraph(seed, 8, 4).complex().unwrap();
        let k = x.k();
        let mut graphs = Vec::new();
        for m in 1..k {
            graphs.push(bipartite_walk_graph(&x, m, k).unwrap());
            for l in 1..=k - m {
                graphs.push(swap_graph(&x, m, l).unwrap());
            }
        }
        for g in graphs {
            let values = eigenvalues(&g, "").unwrap().values;
            let n = values.len();
            for i in 0..n {
                prop_assert!((values[i] + values[n - 1 - i]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn threshold_rank_is_monotone_and_counts_components(seed in any::<u64>(), taus in proptest::collection::vec(-1.0f64..=1.0, 2..6)) {
        let x = hypergraph(seed, 9, 4).complex().unwrap();
        let g = two_step_graph(&x, 1, 2).unwrap();
        let mut sorted = taus.clone();
        sorted.sort_by(f64::total_cmp);
        let ranks: Vec<usize> = sorted.iter().map(|&t| threshold_rank(&g, t).unwrap()).collect();
        prop_assert!(ranks.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(threshold_rank(&g, -1.0).unwrap(), g.len());
        let s = swap_graph(&x, 1, 1).unwrap();
        prop_assert_eq!(eigenvalues(&s, "").unwrap().multiplicity_of_one(), s.component_count());
    }

    #[test]
    fn sweep_respects_cheeger_and_certificate_holds(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = 5 + (seed % 8) as usize;
        let h: Hypergraph<f64> = random_hypergraph(&mut rng, n, 3, (seed % 5) as usize, seed % 2 == 0).unwrap();
        let x = h.complex().unwrap();
        let sweep = fiedler_sweep(&two_step_graph(&x, 1, 2).unwrap()).unwrap();
        prop_assert!(sweep.conductance.value <= sweep.cheeger_bound + 1e-9);
        prop_assert!(sweep.conductance.within_half);
        for l in 2..=3 {
            let cert = hypergraph_sparse_cut(&h, l, DEFAULT_FACE_BUDGET).unwrap();
            prop_assert!(cert.pass, "{:?}", cert);
            prop_assert!((0.0..=1.0).contains(&cert.phi_h));
            prop_assert!(cert.epsilon <= cert.epsilon_l + 1e-9);
        }
    }
}
