//! Walk operators between levels of a complex and the graphs that realize them.
//!
//! A [`WalkOperator`] is stored as a row-stochastic matrix whose rows are
//! indexed by the codomain level and whose columns are indexed by the domain
//! level: `[A f](s) = Σ_t A(s,t) f(t)`. Read as a random walk it moves from a
//! row face to a column face.

use ndarray::Array2;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::graph::{Vertex, WeightedGraph};
use crate::scalar::{binom, Field};

#[derive(Debug, Clone)]
pub struct WalkOperator<T> {
    name: String,
    /// Level of the functions the operator consumes (columns).
    domain_level: usize,
    /// Level of the functions it produces (rows).
    codomain_level: usize,
    row_faces: Vec<Face>,
    col_faces: Vec<Face>,
    row_measure: Vec<T>,
    col_measure: Vec<T>,
    matrix: Array2<T>,
}

/// JSON export of a walk matrix for cross-checking.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixExport {
    pub name: String,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub data: Vec<Vec<f64>>,
}

impl<T: Field> WalkOperator<T> {
    fn on_levels(
        x: &SimplicialComplex<T>,
        name: String,
        codomain: usize,
        domain: usize,
        matrix: Array2<T>,
    ) -> Self {
        let rows = x.level(codomain).expect("checked level");
        let cols = x.level(domain).expect("checked level");
        WalkOperator {
            name,
            domain_level: domain,
            codomain_level: codomain,
            row_faces: rows.faces().to_vec(),
            col_faces: cols.faces().to_vec(),
            row_measure: rows.probabilities().to_vec(),
            col_measure: cols.probabilities().to_vec(),
            matrix,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain_level(&self) -> usize {
        self.domain_level
    }

    pub fn codomain_level(&self) -> usize {
        self.codomain_level
    }

    pub fn row_faces(&self) -> &[Face] {
        &self.row_faces
    }

    pub fn col_faces(&self) -> &[Face] {
        &self.col_faces
    }

    /// `Π` of the codomain level, the inner product on the output space.
    pub fn row_measure(&self) -> &[T] {
        &self.row_measure
    }

    /// `Π` of the domain level, the inner product on the input space.
    pub fn col_measure(&self) -> &[T] {
        &self.col_measure
    }

    pub fn matrix(&self) -> &Array2<T> {
        &self.matrix
    }

    pub fn entry(&self, row: &Face, col: &Face) -> Option<T> {
        let i = self.row_faces.binary_search(row).ok()?;
        let j = self.col_faces.binary_search(col).ok()?;
        Some(self.matrix[(i, j)])
    }

    /// Whether domain and codomain are the same level, so the operator is a
    /// walk on one level.
    pub fn is_square_walk(&self) -> bool {
        self.domain_level == self.codomain_level && self.row_faces == self.col_faces
    }

    pub fn apply(&self, f: &[T]) -> Vec<T> {
        assert_eq!(f.len(), self.col_faces.len());
        self.matrix
            .rows()
            .into_iter()
            .map(|row| row.iter().zip(f).fold(T::zero(), |a, (&m, &x)| a + m * x))
            .collect()
    }

    /// Largest `|Σ_t A(s,t) − 1|` over rows.
    pub fn stochastic_defect(&self) -> T {
        self.matrix
            .rows()
            .into_iter()
            .map(|row| (row.iter().fold(T::zero(), |a, &b| a + b) - T::one()).magnitude())
            .fold(T::zero(), T::max_of)
    }

    /// Adjoint under the `Π`-weighted inner products:
    /// `diag(Π_dom)^{-1} · Aᵀ · diag(Π_cod)`.
    pub fn adjoint(&self) -> WalkOperator<T> {
        let (r, c) = self.matrix.dim();
        let matrix = Array2::from_shape_fn((c, r), |(j, i)| {
            self.matrix[(i, j)] * self.row_measure[i] / self.col_measure[j]
        });
        WalkOperator {
            name: format!("({})†", self.name),
            domain_level: self.codomain_level,
            codomain_level: self.domain_level,
            row_faces: self.col_faces.clone(),
            col_faces: self.row_faces.clone(),
            row_measure: self.col_measure.clone(),
            col_measure: self.row_measure.clone(),
            matrix,
        }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WalkOperator<T>) -> Result<WalkOperator<T>> {
        if self.col_faces != other.row_faces {
            return Err(Error::ShapeMismatch(format!(
                "{} consumes level {}, {} produces level {}",
                self.name, self.domain_level, other.name, other.codomain_level
            )));
        }
        Ok(WalkOperator {
            name: format!("{}·{}", self.name, other.name),
            domain_level: other.domain_level,
            codomain_level: self.codomain_level,
            row_faces: self.row_faces.clone(),
            col_faces: other.col_faces.clone(),
            row_measure: self.row_measure.clone(),
            col_measure: other.col_measure.clone(),
            matrix: self.matrix.dot(&other.matrix),
        })
    }

    pub fn export(&self) -> MatrixExport {
        MatrixExport {
            name: self.name.clone(),
            rows: self.row_faces.clone(),
            cols: self.col_faces.clone(),
            data: self
                .matrix
                .rows()
                .into_iter()
                .map(|r| r.iter().map(|x| x.to_f64_value()).collect())
                .collect(),
        }
    }
}

/// `⟨f, g⟩_μ = Σ_s f(s) g(s) μ(s)`.
pub fn inner_product<T: Field>(measure: &[T], f: &[T], g: &[T]) -> T {
    measure
        .iter()
        .zip(f)
        .zip(g)
        .fold(T::zero(), |acc, ((&m, &a), &b)| acc + m * a * b)
}

fn check_level<T: Field>(x: &SimplicialComplex<T>, level: usize) -> Result<()> {
    if level > x.k() {
        Err(Error::LevelOutOfRange { level, max: x.k() })
    } else {
        Ok(())
    }
}

fn check_order<T: Field>(x: &SimplicialComplex<T>, m: usize, l: usize) -> Result<()> {
    check_level(x, l)?;
    if m > l {
        return Err(Error::LevelOrder { lower: m, upper: l });
    }
    Ok(())
}

/// `U_i : R^{X(i)} → R^{X(i+1)}`, averaging over the `i+1` sub-faces.
pub fn up_operator<T: Field>(x: &SimplicialComplex<T>, i: usize) -> Result<WalkOperator<T>> {
    if i >= x.k() {
        return Err(Error::LevelOutOfRange {
            level: i,
            max: x.k() - 1,
        });
    }
    let upper = x.level(i + 1)?;
    let lower = x.level(i)?;
    let share = T::from_ratio(1, (i + 1) as u64);
    let mut m = Array2::from_elem((upper.len(), lower.len()), T::zero());
    for (r, s) in upper.faces().iter().enumerate() {
        for sub in s.subfaces(i) {
            m[(r, lower.index_of(&sub).expect("downward closed"))] = share;
        }
    }
    Ok(WalkOperator::on_levels(x, format!("U_{i}"), i + 1, i, m))
}

/// `D_j : R^{X(j)} → R^{X(j-1)}`, moving to a super-face with probability
/// `Π_j(t) / (j · Π_{j-1}(s))`.
pub fn down_operator<T: Field>(x: &SimplicialComplex<T>, j: usize) -> Result<WalkOperator<T>> {
    if j == 0 || j > x.k() {
        return Err(Error::LevelOutOfRange {
            level: j,
            max: x.k(),
        });
    }
    let upper = x.level(j)?;
    let lower = x.level(j - 1)?;
    let jj = T::from_count(j as u64);
    let mut m = Array2::from_elem((lower.len(), upper.len()), T::zero());
    for (c, (t, pt)) in upper.iter().enumerate() {
        for sub in t.subfaces(j - 1) {
            let r = lower.index_of(&sub).expect("downward closed");
            m[(r, c)] = pt / (jj * lower.probabilities()[r]);
        }
    }
    Ok(WalkOperator::on_levels(x, format!("D_{j}"), j - 1, j, m))
}

fn identity<T: Field>(x: &SimplicialComplex<T>, m: usize) -> Result<WalkOperator<T>> {
    let n = x.level(m)?.len();
    let id = Array2::from_shape_fn((n, n), |(i, j)| if i == j { T::one() } else { T::zero() });
    Ok(WalkOperator::on_levels(x, format!("I_{m}"), m, m, id))
}

/// `D_{m,l} = D_{m+1} ··· D_l : R^{X(l)} → R^{X(m)}`.
pub fn compose_down<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<WalkOperator<T>> {
    check_order(x, m, l)?;
    let mut acc = identity(x, m)?;
    for j in (m + 1)..=l {
        acc = acc.compose(&down_operator(x, j)?)?;
    }
    acc.name = format!("D_{{{m},{l}}}");
    Ok(acc)
}

/// `U_{l,m} = U_{l-1} ··· U_m : R^{X(m)} → R^{X(l)}`.
pub fn compose_up<T: Field>(
    x: &SimplicialComplex<T>,
    l: usize,
    m: usize,
) -> Result<WalkOperator<T>> {
    check_order(x, m, l)?;
    let mut acc = identity(x, m)?;
    for i in m..l {
        acc = up_operator(x, i)?.compose(&acc)?;
    }
    acc.name = format!("U_{{{l},{m}}}");
    Ok(acc)
}

/// The up-down walk `N²_{m,l} = D_{m,l} U_{l,m}` on `X(m)`.
pub fn updown_walk<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<WalkOperator<T>> {
    let mut w = compose_down(x, m, l)?.compose(&compose_up(x, l, m)?)?;
    w.name = format!("N2_{{{m},{l}}}");
    Ok(w)
}

fn check_swap<T: Field>(x: &SimplicialComplex<T>, m: usize, l: usize) -> Result<()> {
    if m == 0 || l == 0 {
        return Err(Error::InvalidParameter(format!(
            "swap levels must be positive, got ({m},{l})"
        )));
    }
    if m + l > x.k() {
        return Err(Error::LevelSum {
            sum: m + l,
            k: x.k(),
        });
    }
    Ok(())
}

/// `S_{m,l} : R^{X(l)} → R^{X(m)}`, moving from `s` to a disjoint `t` with
/// probability `Π_{m+l}(s ⊔ t) / (C(m+l,m) Π_m(s))`.
pub fn swap_operator<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<WalkOperator<T>> {
    check_swap(x, m, l)?;
    let rows = x.level(m)?;
    let cols = x.level(l)?;
    let scale: T = binom(m + l, m);
    let mut a = Array2::from_elem((rows.len(), cols.len()), T::zero());
    for (u, pu) in x.level(m + l)?.iter() {
        for s in u.subfaces(m) {
            let t = u.minus(&s);
            let r = rows.index_of(&s).expect("closed");
            let c = cols.index_of(&t).expect("closed");
            a[(r, c)] += pu / (scale * rows.probabilities()[r]);
        }
    }
    Ok(WalkOperator::on_levels(
        x,
        format!("S_{{{m},{l}}}"),
        m,
        l,
        a,
    ))
}

/// Transition matrix of the bipartite walk `N_{m,l}` on `X(m) ⊔ X(l)`:
/// `[[0, D_{m,l}], [U_{l,m}, 0]]`.
pub fn bipartite_updown_matrix<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<Array2<T>> {
    let down = compose_down(x, m, l)?;
    let up = compose_up(x, l, m)?;
    Ok(block_antidiagonal(down.matrix(), up.matrix()))
}

/// `W_{m,l} = [[0, S_{m,l}], [S_{l,m}, 0]]`.
pub fn swap_block_matrix<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<Array2<T>> {
    let forward = swap_operator(x, m, l)?;
    let back = swap_operator(x, l, m)?;
    Ok(block_antidiagonal(forward.matrix(), back.matrix()))
}

pub(crate) fn block_antidiagonal<T: Field>(
    upper_right: &Array2<T>,
    lower_left: &Array2<T>,
) -> Array2<T> {
    let (p, q) = upper_right.dim();
    debug_assert_eq!(lower_left.dim(), (q, p));
    let n = p + q;
    Array2::from_shape_fn((n, n), |(i, j)| match (i < p, j < p) {
        (true, false) => upper_right[(i, j - p)],
        (false, true) => lower_left[(i - p, j)],
        _ => T::zero(),
    })
}

fn two_part_labels<T: Field>(x: &SimplicialComplex<T>, m: usize, l: usize) -> Vec<Vertex> {
    let left = x
        .faces(m)
        .expect("checked")
        .iter()
        .map(|f| Vertex::new(0, f.clone()));
    let right = x
        .faces(l)
        .expect("checked")
        .iter()
        .map(|f| Vertex::new(1, f.clone()));
    left.chain(right).collect()
}

/// `B_{m,l}`: `s ∈ X(m)` joined to `t ∈ X(l)` when `s ⊆ t`, with weight
/// `C(k,l) Π_l(t)`. Vertices are `X(m)` (part 0) followed by `X(l)` (part 1).
pub fn bipartite_walk_graph<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<WeightedGraph<T>> {
    check_order(x, m, l)?;
    let lower = x.level(m)?;
    let upper = x.level(l)?;
    let offset = lower.len();
    let scale: T = binom(x.k(), l);
    let mut edges = Vec::new();
    for (c, (t, pt)) in upper.iter().enumerate() {
        for s in t.subfaces(m) {
            let r = lower.index_of(&s).expect("closed");
            edges.push((r, offset + c, scale * pt));
        }
    }
    Ok(WeightedGraph::from_edges(two_part_labels(x, m, l), edges))
}

/// `B²_{m,l}` on `X(m)`: `w(s,t) = C(k,l) Σ_{s' ∈ X(l), s' ⊇ s ∪ t} Π_l(s')`,
/// self-loops included.
pub fn two_step_graph<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<WeightedGraph<T>> {
    check_order(x, m, l)?;
    let lower = x.level(m)?;
    let scale: T = binom(x.k(), l);
    let n = lower.len();
    let mut a = Array2::from_elem((n, n), T::zero());
    for (u, pu) in x.level(l)?.iter() {
        let idx: Vec<usize> = u
            .subfaces(m)
            .map(|s| lower.index_of(&s).expect("closed"))
            .collect();
        for &i in &idx {
            for &j in &idx {
                a[(i, j)] += scale * pu;
            }
        }
    }
    let labels = lower
        .faces()
        .iter()
        .map(|f| Vertex::new(0, f.clone()))
        .collect();
    Ok(WeightedGraph::from_adjacency(labels, a))
}

/// The swap graph `G_{m,l}` on `X(m) ⊔ X(l)` with weight
/// `Π_{m+l}(s ⊔ t) / C(m+l,m)`.
pub fn swap_graph<T: Field>(
    x: &SimplicialComplex<T>,
    m: usize,
    l: usize,
) -> Result<WeightedGraph<T>> {
    check_swap(x, m, l)?;
    let left = x.level(m)?;
    let right = x.level(l)?;
    let offset = left.len();
    let scale: T = binom(m + l, m);
    let mut edges = Vec::new();
    for (u, pu) in x.level(m + l)?.iter() {
        for s in u.subfaces(m) {
            let t = u.minus(&s);
            let i = left.index_of(&s).expect("closed");
            let j = right.index_of(&t).expect("closed");
            edges.push((i, offset + j, pu / scale));
        }
    }
    Ok(WeightedGraph::from_edges(two_part_labels(x, m, l), edges))
}
