//! Error type shared by the library modules.

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    /// One or more structural invariants of the dual graph fail.
    #[error("graph validation failed: {0}")]
    Validation(String),

    /// The principality system has no solution (singular intersection matrix).
    #[error("intersection matrix is singular; the graph cannot be decorated")]
    SingularSystem,

    /// A solved multiplicity is not an integer: the graph is not the dual
    /// graph of a germ resolution.
    #[error("multiplicity of {vertex} solves to {value}, which is not an integer")]
    NonIntegralMultiplicity { vertex: VertexId, value: String },

    /// A solved multiplicity is not positive.
    #[error("multiplicity of {vertex} solves to {value} <= 0")]
    NonPositiveMultiplicity { vertex: VertexId, value: String },

    /// A decoration entry is missing for a vertex of the graph.
    #[error("decoration has no entry for vertex {vertex}")]
    MissingDecoration { vertex: VertexId },

    /// An ample coefficient violates the sign requirement.
    #[error("ample coefficient of {vertex} is {value}, expected < 0")]
    AmpleNotNegative { vertex: VertexId, value: String },

    /// An operation that needs ample data was called without it.
    #[error("decoration carries no ample coefficients")]
    MissingAmple,

    /// Cover topology is only implemented for genus-zero strata.
    #[error("vertex {vertex} has positive genus; its cover is unsupported")]
    PositiveGenusUnsupported { vertex: VertexId },

    /// The open stratum has no punctures, so it is not an open cover base.
    #[error("vertex {vertex} has no incident edges or arrows")]
    ClosedStratum { vertex: VertexId },

    /// Puncture residues that no cyclic cover realizes (they must sum to 0
    /// mod the covering degree; principality guarantees this on solved
    /// decorations).
    #[error("residues at {vertex} sum to {sum}, not 0 mod {modulus}")]
    InconsistentResidues {
        vertex: VertexId,
        sum: i64,
        modulus: i64,
    },

    /// The graph is not m-separating at the named intersection.
    #[error("graph is not {m}-separated: {site} has multiplicity sum {sum} <= {m}")]
    NotSeparated { m: i64, site: String, sum: i64 },

    /// A spectral-sequence column m*b_i/m_i failed to be an integer.
    #[error("column m*b/m_i of {vertex} is {value}, not an integer; rescale the ample divisor")]
    NonIntegralColumn { vertex: VertexId, value: String },

    /// A Conley-Zehnder index failed to be an integer (non-integral discrepancy).
    #[error("Conley-Zehnder index of {vertex} is {value}, not an integer")]
    NonIntegralGrading { vertex: VertexId, value: String },

    /// Feasibility search refused an oversized page.
    #[error("degeneration search bound exceeded: {columns} columns, total rank {total_rank} (limits: 4 columns, rank 64)")]
    SearchBoundExceeded { columns: usize, total_rank: u64 },

    /// Tangent-cone report requested on an untagged graph.
    #[error("no first-blowup vertex tag on this graph")]
    MissingFirstBlowupTag,

    /// Invalid germ-generator or CLI parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Argument outside the mathematical domain of a dynamics function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A sampled point violates the separation bound for the fixed-point set.
    #[error("separation bound violated on stratum {stratum}: m*l_j = {value} at w = {witness:?}")]
    SeparationViolated {
        stratum: String,
        value: f64,
        witness: Vec<f64>,
    },

    /// A numeric calculus identity failed beyond tolerance.
    #[error("identity `{name}` violated: relative error {rel_err:.3e} at sample {at:?}")]
    IdentityViolated { name: String, rel_err: f64, at: Vec<f64> },
}
