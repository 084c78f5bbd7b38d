//! Weighted simplicial complexes induced by hypergraphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::graph::{Vertex, WeightedGraph};
use crate::hypergraph::Hypergraph;
use crate::scalar::{binom, Field};

pub const DEFAULT_FACE_BUDGET: usize = 200_000;

/// The faces of one level together with their probability measure `Π_l`.
#[derive(Debug, Clone)]
pub struct LevelMeasure<T> {
    level: usize,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    probabilities: Vec<T>,
}

impl<T: Field> LevelMeasure<T> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }

    pub fn probability(&self, face: &Face) -> Option<T> {
        self.index_of(face).map(|i| self.probabilities[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Face, T)> + '_ {
        self.faces.iter().zip(self.probabilities.iter().copied())
    }
}

/// A pure `k`-dimensional simplicial complex with level measures `Π_0..Π_k`.
///
/// Immutable once built. Level `l` holds the cardinality-`l` faces in
/// lexicographic order; level 0 is `{∅}`.
#[derive(Debug, Clone)]
pub struct SimplicialComplex<T> {
    k: usize,
    levels: Vec<LevelMeasure<T>>,
}

impl<T: Field> SimplicialComplex<T> {
    /// Downward closure of weighted top faces. Each top face must have `k`
    /// vertices and the weights must already sum to one.
    pub fn from_top_faces<'a, I>(k: usize, tops: I, face_budget: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Face, T)>,
    {
        let mut mass: Vec<HashMap<Face, T>> = vec![HashMap::new(); k + 1];
        let mut total = 0usize;
        for (top, w) in tops {
            debug_assert_eq!(top.level(), k);
            for (l, level) in mass.iter_mut().enumerate() {
                for s in top.subfaces(l) {
                    let slot = level.entry(s).or_insert_with(|| {
                        total += 1;
                        T::zero()
                    });
                    *slot += w;
                }
                if total > face_budget {
                    return Err(Error::FaceBudget {
                        budget: face_budget,
                        reached: total,
                    });
                }
            }
        }

        let levels = mass
            .into_iter()
            .enumerate()
            .map(|(l, level)| {
                let scale = binom::<T>(k, l);
                let mut entries: Vec<(Face, T)> = level.into_iter().collect();
                entries.sort_by(|a, b| a.0.cmp(&b.0));
                let (faces, probabilities): (Vec<Face>, Vec<T>) =
                    entries.into_iter().map(|(f, m)| (f, m / scale)).unzip();
                let index = faces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), i))
                    .collect();
                LevelMeasure {
                    level: l,
                    faces,
                    index,
                    probabilities,
                }
            })
            .collect();
        Ok(SimplicialComplex { k, levels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn level(&self, l: usize) -> Result<&LevelMeasure<T>> {
        self.levels.get(l).ok_or(Error::LevelOutOfRange {
            level: l,
            max: self.k,
        })
    }

    pub fn levels(&self) -> &[LevelMeasure<T>] {
        &self.levels
    }

    pub fn faces(&self, l: usize) -> Result<&[Face]> {
        Ok(self.level(l)?.faces())
    }

    pub fn measure(&self, l: usize) -> Result<&[T]> {
        Ok(self.level(l)?.probabilities())
    }

    pub fn probability(&self, face: &Face) -> Option<T> {
        self.levels.get(face.level())?.probability(face)
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.probability(face).is_some()
    }

    pub fn total_faces(&self) -> usize {
        self.levels.iter().map(LevelMeasure::len).sum()
    }

    /// The link `X_s = {t ∖ s : s ⊆ t ∈ X}` with renormalized measures.
    pub fn link(&self, s: &Face) -> Result<SimplicialComplex<T>> {
        if !self.contains(s) {
            return Err(Error::FaceNotFound(s.clone()));
        }
        if s.is_empty() {
            return Ok(self.clone());
        }
        let top = &self.levels[self.k];
        let restricted: Vec<(Face, T)> = top
            .iter()
            .filter(|(t, _)| s.is_subset(t))
            .map(|(t, w)| (t.minus(s), w))
            .collect();
        let z = restricted.iter().fold(T::zero(), |a, (_, w)| a + *w);
        SimplicialComplex::from_top_faces(
            self.k - s.level(),
            restricted.iter().map(|(f, w)| (f, *w / z)),
            usize::MAX,
        )
    }

    /// The skeleton graph on `X(1)` with edges `X(2)` weighted by `Π_2`.
    pub fn skeleton(&self) -> Result<WeightedGraph<T>> {
        if self.k < 2 {
            return Err(Error::NoSkeleton(self.k));
        }
        let vertices = &self.levels[1];
        let labels = vertices
            .faces()
            .iter()
            .map(|f| Vertex::new(0, f.clone()))
            .collect();
        let edges = self.levels[2].iter().map(|(pair, w)| {
            let v = pair.vertices();
            let i = vertices.index_of(&Face::singleton(v[0])).expect("closed");
            let j = vertices.index_of(&Face::singleton(v[1])).expect("closed");
            (i, j, w)
        });
        Ok(WeightedGraph::from_edges(labels, edges))
    }
}

/// Induces the weighted complex of a hypergraph; `Π_k` equals the edge weights.
pub fn induce_complex<T: Field>(
    h: &Hypergraph<T>,
    face_budget: usize,
) -> Result<SimplicialComplex<T>> {
    SimplicialComplex::from_top_faces(h.k(), h.edges_with_weights(), face_budget)
}

impl<T: Field> Hypergraph<T> {
    pub fn complex(&self) -> Result<SimplicialComplex<T>> {
        induce_complex(self, DEFAULT_FACE_BUDGET)
    }
}
