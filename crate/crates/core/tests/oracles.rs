//! Cross-checks against independent computations and worked examples.

mod common;

use hsx_core::{
    bipartite_walk_graph, brute_force_min_conductance, conductance_hypergraph,
    cycle_link_hypergraph, eigenvalues, hdx_gamma, hypergraph_sparse_cut, singular_values,
    splittability, sunflower_hypergraph, swap_graph, threshold_rank, updown_walk, Face, Hypergraph,
    SplittabilityOptions, WeightedGraph, Q,
};
use nalgebra::DMatrix;

fn nalgebra_eigenvalues(g: &WeightedGraph<f64>) -> Vec<f64> {
    let n = g.len();
    let deg: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| g.weight(i, j)).sum())
        .collect();
    let m = DMatrix::from_fn(n, n, |i, j| g.weight(i, j) / (deg[i] * deg[j]).sqrt());
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

#[test]
fn graph_spectra_match_nalgebra() {
    for h in common::random_family::<f64>(11, 15, 2..=4, 9) {
        let x = h.complex().unwrap();
        for m in 1..x.k() {
            let g = swap_graph(&x, m, x.k() - m).unwrap();
            let ours = eigenvalues(&g, "G").unwrap().values;
            for (a, b) in ours.iter().zip(nalgebra_eigenvalues(&g)) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }
}

#[test]
fn walk_singular_values_match_nalgebra() {
    for h in common::random_family::<f64>(12, 15, 2..=4, 9) {
        let x = h.complex().unwrap();
        for m in 1..=x.k() {
            for l in m..=x.k() {
                let op = updown_walk(&x, m, l).unwrap();
                let (rows, cols) = op.matrix().dim();
                let k = DMatrix::from_fn(rows, cols, |i, j| {
                    op.row_measure()[i].sqrt() * op.matrix()[(i, j)] / op.col_measure()[j].sqrt()
                });
                let mut reference: Vec<f64> = k.singular_values().iter().copied().collect();
                reference.sort_by(|a, b| b.total_cmp(a));
                for (a, b) in singular_values(&op).values.iter().zip(reference) {
                    assert!((a - b).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn oracle_matches_naive_scan() {
    for h in common::random_family::<Q>(13, 12, 2..=4, 9) {
        let n = h.num_vertices() as u32;
        let total: Q = h.degrees().iter().sum();
        let mut best: Option<(Q, Vec<u32>)> = None;
        for mask in 1u32..(1 << n) - 1 {
            let set: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let c = conductance_hypergraph(&h, &set).unwrap();
            if c.volume * Q::from_integer(2) > total {
                continue;
            }
            let better = match &best {
                None => true,
                Some((phi, s)) => c.value < *phi || (c.value == *phi && set < *s),
            };
            if better {
                best = Some((c.value, set));
            }
        }
        let (phi, set) = best.unwrap();
        let oracle = brute_force_min_conductance(&h, 24).unwrap();
        assert_eq!(oracle.conductance, phi);
        assert_eq!(oracle.set, set);
    }
}

#[test]
fn cycle_link_tail_link_is_the_cycle() {
    let h = cycle_link_hypergraph::<Q>(12, 3).unwrap();
    let x = h.complex().unwrap();
    let link = x.link(&Face::singleton(12)).unwrap();
    assert_eq!(link.k(), 2);
    let edges: Vec<Face> = (0..12u32).map(|i| Face::new([i, (i + 1) % 12])).collect();
    let mut sorted = edges.clone();
    sorted.sort();
    assert_eq!(link.faces(2).unwrap(), &sorted[..]);
    let g = link.skeleton().unwrap();
    assert_eq!(g.len(), 12);
    for i in 0..12 {
        assert_eq!(g.degree(i), g.degree(0));
        assert_eq!(
            g.adjacency()
                .row(i)
                .iter()
                .filter(|&&w| w > Q::from_integer(0))
                .count(),
            2
        );
    }
}

#[test]
fn sunflower_swap_graph_components() {
    let x = sunflower_hypergraph::<f64>(2, 3)
        .unwrap()
        .complex()
        .unwrap();
    // one component through {0}, plus four pendant edges {i}–e∖{i}
    assert_eq!(swap_graph(&x, 1, 2).unwrap().component_count(), 5);
    let x = sunflower_hypergraph::<f64>(4, 3)
        .unwrap()
        .complex()
        .unwrap();
    let g = swap_graph(&x, 1, 2).unwrap();
    for tau in [-1.0, -0.5, 0.0, 0.5, 0.99, 1.0] {
        assert!(threshold_rank(&g, tau).unwrap() >= 4);
    }
}

#[test]
fn single_edge_star() {
    let h = Hypergraph::<f64>::uniform(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
    let g = bipartite_walk_graph(&h.complex().unwrap(), 1, 4).unwrap();
    assert_eq!(g.len(), 5);
    assert_eq!(g.component_count(), 1);
    assert_eq!(g.adjacency().row(4).iter().filter(|&&w| w > 0.0).count(), 4);
}

#[test]
fn sunflower_is_not_splittable() {
    let x = sunflower_hypergraph::<f64>(3, 3)
        .unwrap()
        .complex()
        .unwrap();
    for tau in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let v = splittability(&x, tau, 3, SplittabilityOptions::default()).unwrap();
        assert!(!v.splittable);
        assert!(v.root_lower_bound > 3);
    }
}

#[test]
fn single_edge_root_graphs_are_matchings() {
    // each root swap graph G_{l,4-l} pairs a face with its complement
    let x = Hypergraph::<f64>::uniform(4, 4, vec![vec![0, 1, 2, 3]])
        .unwrap()
        .complex()
        .unwrap();
    assert_eq!(swap_graph(&x, 1, 3).unwrap().component_count(), 4);
    assert_eq!(swap_graph(&x, 2, 2).unwrap().component_count(), 6);
    let v = splittability(&x, 0.99, 1, SplittabilityOptions::default()).unwrap();
    assert_eq!(v.root_lower_bound, 4);
    assert!(!v.splittable);
    assert_eq!(v.trees_examined, 2);
}

#[test]
fn walk_export_is_json() {
    let x = sunflower_hypergraph::<f64>(2, 3)
        .unwrap()
        .complex()
        .unwrap();
    let export = updown_walk(&x, 1, 2).unwrap().export();
    let value = serde_json::to_value(&export).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 5);
    assert_eq!(value["rows"][0], serde_json::json!([0]));
    assert_eq!(value["data"].as_array().unwrap().len(), 5);
}

#[test]
fn single_precision_agrees_with_double() {
    let h32 = sunflower_hypergraph::<f32>(2, 3).unwrap();
    let h64 = sunflower_hypergraph::<f64>(2, 3).unwrap();
    let g32 = hdx_gamma(&h32.complex().unwrap()).unwrap();
    let g64 = hdx_gamma(&h64.complex().unwrap()).unwrap();
    assert!((f64::from(g32.gamma) - g64.gamma).abs() < 1e-4);
    let c32 = hypergraph_sparse_cut(&h32, 2, 100_000).unwrap();
    let c64 = hypergraph_sparse_cut(&h64, 2, 100_000).unwrap();
    assert!((f64::from(c32.phi_h) - c64.phi_h).abs() < 1e-4);
    assert!(c32.checks.all());
}
