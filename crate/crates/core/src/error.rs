use thiserror::Error;

use crate::face::Face;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity k must be at least 2, got {0}")]
    InvalidUniformity(usize),

    #[error("hypergraph has no edges")]
    NoEdges,

    #[error("edge {index} has {found} distinct vertices, expected k = {expected}")]
    NonUniformEdge {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("edge {index} contains vertex {vertex}, but vertex ids must be below {vertices}")]
    VertexOutOfRange {
        index: usize,
        vertex: i64,
        vertices: usize,
    },

    #[error("{given} weights supplied for {edges} edges")]
    WeightCount { given: usize, edges: usize },

    #[error("weight {index} is {value}; weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },

    #[error("vertex {0} does not appear in any edge")]
    UncoveredVertex(u32),

    #[error("complex needs more than {budget} faces (reached {reached})")]
    FaceBudget { budget: usize, reached: usize },

    #[error("face {0} is not in the complex")]
    FaceNotFound(Face),

    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("levels out of order: {lower} > {upper}")]
    LevelOrder { lower: usize, upper: usize },

    #[error("level sum {sum} exceeds dimension {k}")]
    LevelSum { sum: usize, k: usize },

    #[error("complex of dimension {0} has no level 2, so it has no skeleton")]
    NoSkeleton(usize),

    #[error("graph vertex {0} has zero degree")]
    IsolatedVertex(String),

    #[error("skeleton of the link of {face} has isolated vertex {vertex}")]
    IsolatedLinkVertex { face: Face, vertex: String },

    #[error("graph needs at least two vertices")]
    GraphTooSmall,

    #[error("cut must be a nonempty proper subset of the vertices: {0}")]
    InvalidCut(String),

    #[error("brute-force oracle supports at most {cap} vertices, got {vertices}")]
    OracleCap { cap: usize, vertices: usize },

    #[error("splitting-tree enumeration exceeded its budget: {0}")]
    EnumerationBudget(String),

    #[error("operator shapes do not compose: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed hypergraph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors raised because a size or enumeration budget was exceeded,
    /// as opposed to malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::FaceBudget { .. } | Error::OracleCap { .. } | Error::EnumerationBudget(_)
        )
    }
}
