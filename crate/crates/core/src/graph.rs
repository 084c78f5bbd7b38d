use std::fmt;

use ndarray::Array2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::scalar::{Field, Real};

/// A graph vertex: a face tagged with the side it lives on. Bipartite walk
/// graphs between a level and itself need the tag to tell the copies apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    pub part: u8,
    pub face: Face,
}

impl Vertex {
    pub fn new(part: u8, face: Face) -> Self {
        Vertex { part, face }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.part == 0 {
            write!(f, "{}", self.face)
        } else {
            write!(f, "{}'{}", self.face, self.part)
        }
    }
}

/// Boundary, volume and conductance of a vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conductance<T> {
    pub value: T,
    pub boundary: T,
    pub volume: T,
    /// Whether the set holds at most half of the total volume.
    pub within_half: bool,
}

/// Symmetric non-negative weighted graph stored as a dense adjacency matrix.
///
/// A self-loop `w(v,v)` sits on the diagonal and counts once toward `deg(v)`.
#[derive(Debug, Clone)]
pub struct WeightedGraph<T> {
    labels: Vec<Vertex>,
    adjacency: Array2<T>,
    degrees: Vec<T>,
}

impl<T: Field> WeightedGraph<T> {
    /// Accumulates undirected edges `(i, j, w)`; `i == j` adds a self-loop.
    pub fn from_edges<I>(labels: Vec<Vertex>, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let n = labels.len();
        let mut adjacency = Array2::from_elem((n, n), T::zero());
        for (i, j, w) in edges {
            adjacency[(i, j)] += w;
            if i != j {
                adjacency[(j, i)] += w;
            }
        }
        Self::from_adjacency(labels, adjacency)
    }

    pub fn from_adjacency(labels: Vec<Vertex>, adjacency: Array2<T>) -> Self {
        assert_eq!(adjacency.dim(), (labels.len(), labels.len()));
        let degrees = adjacency
            .rows()
            .into_iter()
            .map(|row| row.iter().fold(T::zero(), |a, &b| a + b))
            .collect();
        WeightedGraph {
            labels,
            adjacency,
            degrees,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn adjacency(&self) -> &Array2<T> {
        &self.adjacency
    }

    pub fn weight(&self, i: usize, j: usize) -> T {
        self.adjacency[(i, j)]
    }

    pub fn degree(&self, i: usize) -> T {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[T] {
        &self.degrees
    }

    pub fn total_volume(&self) -> T {
        self.degrees.iter().fold(T::zero(), |a, &b| a + b)
    }

    fn check_degrees(&self) -> Result<()> {
        match self.degrees.iter().position(|d| !d.is_positive()) {
            Some(i) => Err(Error::IsolatedVertex(self.labels[i].to_string())),
            None => Ok(()),
        }
    }

    /// `D^{-1} A`.
    pub fn random_walk_matrix(&self) -> Result<Array2<T>> {
        self.check_degrees()?;
        let mut w = self.adjacency.clone();
        for (mut row, &d) in w.rows_mut().into_iter().zip(&self.degrees) {
            row.mapv_inplace(|x| x / d);
        }
        Ok(w)
    }

    /// Connected components over positive-weight edges: a component id per
    /// vertex (numbered by first appearance) and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.adjacency[(i, j)] > T::zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut roots = Vec::new();
        for (i, slot) in ids.iter_mut().enumerate() {
            let r = find(&mut parent, i);
            *slot = match roots.iter().position(|&x| x == r) {
                Some(id) => id,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
        }
        (ids, roots.len())
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Conductance of the set marked in `members`; loops never cross the cut.
    pub fn conductance_of_mask(&self, members: &[bool]) -> Result<Conductance<T>> {
        let inside = members.iter().filter(|&&m| m).count();
        if members.len() != self.len() || inside == 0 || inside == self.len() {
            return Err(Error::InvalidCut(format!(
                "{inside} of {} vertices selected",
                self.len()
            )));
        }
        let mut boundary = T::zero();
        let mut volume = T::zero();
        for i in (0..self.len()).filter(|&i| members[i]) {
            volume += self.degrees[i];
            for j in (0..self.len()).filter(|&j| !members[j]) {
                boundary += self.adjacency[(i, j)];
            }
        }
        let total = self.total_volume();
        let half = total / (T::one() + T::one());
        Ok(Conductance {
            value: if volume > T::zero() {
                boundary / volume
            } else {
                T::zero()
            },
            boundary,
            volume,
            within_half: volume <= half + T::tolerance(1e-12),
        })
    }
}

impl<T: Real> WeightedGraph<T> {
    /// `D^{-1/2} A D^{-1/2}`, symmetric and similar to the random-walk matrix.
    pub fn normalized_adjacency(&self) -> Result<Array2<T>> {
        self.check_degrees()?;
        let inv_sqrt: Vec<T> = self.degrees.iter().map(|d| d.sqrt().recip()).collect();
        let n = self.len();
        Ok(Array2::from_shape_fn((n, n), |(i, j)| {
            inv_sqrt[i] * self.adjacency[(i, j)] * inv_sqrt[j]
        }))
    }
}
