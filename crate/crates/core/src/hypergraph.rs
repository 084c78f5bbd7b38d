use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::scalar::Field;

/// Tolerance on the total edge weight of float-weighted inputs.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// On-disk form of a hypergraph.
///
/// `{"k":3,"vertices":5,"edges":[[0,1,2],[0,3,4]],"weights":[0.5,0.5]}`;
/// `weights` may be omitted for the uniform distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub k: usize,
    pub vertices: usize,
    pub edges: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

/// A weighted k-uniform hypergraph on vertices `0..n`.
///
/// Edges are canonical (sorted, lexicographically ordered, merged) and the
/// weights form the top-level distribution over edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph<T> {
    k: usize,
    n: usize,
    edges: Vec<Face>,
    weights: Vec<T>,
}

impl<T: Field> Hypergraph<T> {
    /// Validates and canonicalizes. Without `weights` every edge gets the
    /// same mass; duplicated edges are merged by summing their weight.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<u32>>, weights: Option<Vec<T>>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|e| e.into_iter().map(i64::from).collect())
            .collect();
        Self::build(k, n, edges, weights)
    }

    pub fn uniform(k: usize, n: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(k, n, edges, None)
    }

    fn build(k: usize, n: usize, raw: Vec<Vec<i64>>, weights: Option<Vec<T>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidUniformity(k));
        }
        if raw.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut faces = Vec::with_capacity(raw.len());
        for (index, edge) in raw.iter().enumerate() {
            if let Some(&bad) = edge.iter().find(|&&v| v < 0 || v >= n as i64) {
                return Err(Error::VertexOutOfRange {
                    index,
                    vertex: bad,
                    vertices: n,
                });
            }
            let face = Face::new(edge.iter().map(|&v| v as u32));
            if face.level() != k {
                return Err(Error::NonUniformEdge {
                    index,
                    found: face.level(),
                    expected: k,
                });
            }
            faces.push(face);
        }

        let weights = match weights {
            Some(w) => {
                if w.len() != faces.len() {
                    return Err(Error::WeightCount {
                        given: w.len(),
                        edges: faces.len(),
                    });
                }
                for (index, &x) in w.iter().enumerate() {
                    if !x.is_positive() {
                        return Err(Error::NonPositiveWeight {
                            index,
                            value: x.to_f64_value(),
                        });
                    }
                }
                let sum = w.iter().fold(T::zero(), |a, &b| a + b);
                if (sum - T::one()).magnitude() > T::tolerance(WEIGHT_SUM_TOL) {
                    return Err(Error::WeightSum {
                        sum: sum.to_f64_value(),
                    });
                }
                w
            }
            None => vec![T::from_ratio(1, faces.len() as u64); faces.len()],
        };

        let mut merged: BTreeMap<Face, T> = BTreeMap::new();
        for (face, w) in faces.into_iter().zip(weights) {
            *merged.entry(face).or_insert_with(T::zero) += w;
        }

        let mut covered = vec![false; n];
        for face in merged.keys() {
            for &v in face.vertices() {
                covered[v as usize] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::UncoveredVertex(v as u32));
        }

        let (edges, weights) = merged.into_iter().unzip();
        Ok(Hypergraph {
            k,
            n,
            edges,
            weights,
        })
    }

    pub fn from_file(file: HypergraphFile) -> Result<Self> {
        let weights = match file.weights {
            Some(w) => Some(
                w.iter()
                    .enumerate()
                    .map(|(index, &x)| {
                        T::from_f64_value(x).ok_or(Error::NonPositiveWeight { index, value: x })
                    })
                    .collect::<Result<Vec<T>>>()?,
            ),
            None => None,
        };
        Self::build(file.k, file.vertices, file.edges, weights)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    /// Canonical file form; weights are always written out.
    pub fn to_file(&self) -> HypergraphFile {
        HypergraphFile {
            k: self.k,
            vertices: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| e.vertices().iter().map(|&v| i64::from(v)).collect())
                .collect(),
            weights: Some(self.weights.iter().map(|w| w.to_f64_value()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("hypergraph serializes")
    }

    /// Reinterprets the weights in another scalar type.
    pub fn convert<U: Field>(&self) -> Result<Hypergraph<U>> {
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(index, w)| {
                U::from_f64_value(w.to_f64_value()).ok_or(Error::NonPositiveWeight {
                    index,
                    value: w.to_f64_value(),
                })
            })
            .collect::<Result<Vec<U>>>()?;
        Ok(Hypergraph {
            k: self.k,
            n: self.n,
            edges: self.edges.clone(),
            weights,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Face] {
        &self.edges
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn edges_with_weights(&self) -> impl Iterator<Item = (&Face, T)> + '_ {
        self.edges.iter().zip(self.weights.iter().copied())
    }

    /// Weighted degrees `deg(i) = Σ_{e∋i} Π_k(e)`.
    pub fn degrees(&self) -> Vec<T> {
        let mut deg = vec![T::zero(); self.n];
        for (e, w) in self.edges_with_weights() {
            for &v in e.vertices() {
                deg[v as usize] += w;
            }
        }
        deg
    }

    /// Number of edges containing each vertex.
    pub fn edge_counts(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e.vertices() {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// `vol_H(V)`, which equals `k` for a probability distribution on edges.
    pub fn total_volume(&self) -> T {
        self.degrees().into_iter().fold(T::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn uniform_default_weights() {
        let h = Hypergraph::<f64>::from_json(r#"{"k":3,"vertices":5,"edges":[[0,1,2],[0,3,4]]}"#)
            .unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.weights(), &[0.5, 0.5]);
        assert_eq!(h.edges()[1], Face::from([0, 3, 4]));
    }

    #[test]
    fn duplicate_edges_merge() {
        let h = Hypergraph::<f64>::new(
            3,
            5,
            vec![vec![1, 2, 3], vec![0, 3, 4], vec![3, 2, 1]],
            Some(vec![0.3, 0.5, 0.2]),
        )
        .unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.edges()[0], Face::from([0, 3, 4]));
        assert!((h.weights()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_uniform_edge() {
        let err = Hypergraph::<f64>::from_json(r#"{"k":3,"vertices":3,"edges":[[0,1],[0,1,2]]}"#)
            .unwrap_err();
        assert!(
            matches!(
                err,
                Error::NonUniformEdge {
                    index: 0,
                    found: 2,
                    expected: 3
                }
            ),
            "{err}"
        );
        assert!(err.to_string().contains("edge 0"));
    }

    #[test]
    fn repeated_vertex_is_non_uniform() {
        let err = Hypergraph::<f64>::new(3, 3, vec![vec![0, 1, 1]], None).unwrap_err();
        assert!(matches!(err, Error::NonUniformEdge { found: 2, .. }));
    }

    #[test]
    fn rejects_bad_weight_sum() {
        let err = Hypergraph::<f64>::from_json(
            r#"{"k":3,"vertices":5,"edges":[[0,1,2],[0,3,4]],"weights":[0.6,0.6]}"#,
        )
        .unwrap_err();
        match err {
            Error::WeightSum { sum } => assert!((sum - 1.2).abs() < 1e-12),
            other => panic!("unexpected {other}"),
        }
        assert!(
            err_text(r#"{"k":3,"vertices":5,"edges":[[0,1,2],[0,3,4]],"weights":[0.6,0.6]}"#)
                .contains("1.2")
        );
    }

    fn err_text(json: &str) -> String {
        Hypergraph::<f64>::from_json(json).unwrap_err().to_string()
    }

    #[test]
    fn rejects_nonpositive_weight() {
        let err = Hypergraph::<f64>::new(2, 3, vec![vec![0, 1], vec![1, 2]], Some(vec![1.0, 0.0]))
            .unwrap_err();
        assert!(matches!(err, Error::NonPositiveWeight { index: 1, .. }));
    }

    #[test]
    fn rejects_out_of_range_and_negative_vertices() {
        assert!(matches!(
            Hypergraph::<f64>::from_json(r#"{"k":2,"vertices":2,"edges":[[0,2]]}"#).unwrap_err(),
            Error::VertexOutOfRange { vertex: 2, .. }
        ));
        assert!(matches!(
            Hypergraph::<f64>::from_json(r#"{"k":2,"vertices":2,"edges":[[-1,0]]}"#).unwrap_err(),
            Error::VertexOutOfRange { vertex: -1, .. }
        ));
    }

    #[test]
    fn rejects_uncovered_vertex_and_bad_k() {
        assert!(matches!(
            Hypergraph::<f64>::uniform(2, 4, vec![vec![0, 1], vec![1, 2]]).unwrap_err(),
            Error::UncoveredVertex(3)
        ));
        assert!(matches!(
            Hypergraph::<f64>::uniform(1, 1, vec![vec![0]]).unwrap_err(),
            Error::InvalidUniformity(1)
        ));
        assert!(matches!(
            Hypergraph::<f64>::uniform(2, 0, vec![]).unwrap_err(),
            Error::NoEdges
        ));
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(
            Hypergraph::<f64>::from_json("{\"k\":3").unwrap_err(),
            Error::Json(_)
        ));
    }

    #[test]
    fn exact_weights_and_degrees() {
        let h =
            Hypergraph::<Rational64>::uniform(3, 5, vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        let deg = h.degrees();
        assert_eq!(deg[0], Rational64::from_integer(1));
        assert_eq!(deg[3], Rational64::new(1, 2));
        assert_eq!(h.total_volume(), Rational64::from_integer(3));
        assert_eq!(h.edge_counts(), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn serialization_is_stable() {
        let h = Hypergraph::<f64>::uniform(3, 7, vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]])
            .unwrap();
        let once = h.to_json();
        let again = Hypergraph::<f64>::from_json(&once).unwrap();
        assert_eq!(again, h);
        assert_eq!(again.to_json(), once);
    }
}
