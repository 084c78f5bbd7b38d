use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// A face of a simplicial complex: a sorted, duplicate-free set of vertex ids.
///
/// Faces of one level compare lexicographically, which fixes the row and
/// column order of every matrix built from a level.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<u32>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn singleton(v: u32) -> Self {
        Face(vec![v])
    }

    pub(crate) fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .merge(other.0.iter())
                .dedup()
                .copied()
                .collect(),
        )
    }

    /// `self ∖ other`.
    pub fn minus(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    /// All subfaces of the given cardinality, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        self.0
            .iter()
            .copied()
            .combinations(size)
            .map(Face::from_sorted)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl From<Vec<u32>> for Face {
    fn from(v: Vec<u32>) -> Self {
        Face::new(v)
    }
}

impl<const N: usize> From<[u32; N]> for Face {
    fn from(v: [u32; N]) -> Self {
        Face::new(v)
    }
}
