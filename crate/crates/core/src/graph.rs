//! Weighted resolution dual graphs of reduced plane-curve germs.
//!
//! Vertices are the exceptional curves of a log resolution, weighted by
//! self-intersection and genus. Edges record intersections between
//! exceptional curves; arrows record branches of the strict transform and
//! the curve they are attached to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::linalg;

pub type VertexId = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub self_intersection: i64,
    pub genus: u32,
}

/// A branch of the strict transform attached to an exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub attached_to: VertexId,
    /// Multiplicity of the branch in the divisor of the germ; 1 for a
    /// reduced germ.
    pub branch_multiplicity: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    /// Unordered pairs of vertex ids; a pair may repeat when two curves meet
    /// in more than one point. Self-loops are not allowed.
    pub edges: Vec<(VertexId, VertexId)>,
    pub arrows: Vec<Arrow>,
}

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, self_intersection: i64) {
        self.vertices.push(Vertex {
            id: id.into(),
            self_intersection,
            genus: 0,
        });
    }

    pub fn add_vertex_with_genus(
        &mut self,
        id: impl Into<VertexId>,
        self_intersection: i64,
        genus: u32,
    ) {
        self.vertices.push(Vertex {
            id: id.into(),
            self_intersection,
            genus,
        });
    }

    pub fn add_edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) {
        self.edges.push((a.into(), b.into()));
    }

    pub fn add_arrow(&mut self, attached_to: impl Into<VertexId>) {
        self.arrows.push(Arrow {
            attached_to: attached_to.into(),
            branch_multiplicity: 1,
        });
    }

    pub fn add_arrow_with_multiplicity(&mut self, attached_to: impl Into<VertexId>, m: i64) {
        self.arrows.push(Arrow {
            attached_to: attached_to.into(),
            branch_multiplicity: m,
        });
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().map(|v| &v.id)
    }

    /// Number of edge endpoints at `id`, counting edge multiplicity.
    pub fn edge_valence(&self, id: &str) -> usize {
        self.edges
            .iter()
            .map(|(a, b)| usize::from(a == id) + usize::from(b == id))
            .sum()
    }

    /// Arrows attached to `id`.
    pub fn arrows_at<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.iter().filter(move |a| a.attached_to == id)
    }

    /// Total valence of the open stratum: incident edges plus arrows.
    pub fn valence(&self, id: &str) -> usize {
        self.edge_valence(id) + self.arrows_at(id).count()
    }

    /// Sum of branch multiplicities of arrows at `id`.
    pub fn arrow_load(&self, id: &str) -> i64 {
        self.arrows_at(id).map(|a| a.branch_multiplicity).sum()
    }

    /// Intersection matrix M: diagonal entries are self-intersections,
    /// off-diagonal entries count edges between the pair.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0i64; n]; n];
        for (k, v) in self.vertices.iter().enumerate() {
            m[k][k] = v.self_intersection;
        }
        for (a, b) in &self.edges {
            if let (Some(i), Some(j)) = (self.vertex_index(a), self.vertex_index(b)) {
                if i != j {
                    m[i][j] += 1;
                    m[j][i] += 1;
                }
            }
        }
        m
    }

    fn is_connected(&self) -> bool {
        if self.vertices.len() <= 1 {
            return true;
        }
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for (a, b) in &self.edges {
            if let (Some(&i), Some(&j)) = (index.get(a.as_str()), index.get(b.as_str())) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Check every structural invariant and report the outcome.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id.as_str()) {
                violations.push(Violation::DuplicateVertexId(v.id.clone()));
            }
        }

        for (a, b) in &self.edges {
            if a == b {
                violations.push(Violation::SelfLoop(a.clone()));
            }
            for id in [a, b] {
                if self.vertex_index(id).is_none() {
                    violations.push(Violation::UnknownVertex(id.clone()));
                }
            }
        }
        for arrow in &self.arrows {
            if self.vertex_index(&arrow.attached_to).is_none() {
                violations.push(Violation::UnknownVertex(arrow.attached_to.clone()));
            }
            if arrow.branch_multiplicity < 1 {
                violations.push(Violation::NonPositiveBranchMultiplicity(
                    arrow.attached_to.clone(),
                ));
            }
        }

        let connected = self.is_connected();
        if !connected {
            violations.push(Violation::NotConnected);
        }
        let has_arrow = !self.arrows.is_empty();
        if !has_arrow {
            violations.push(Violation::NoArrows);
        }

        // Negative definiteness of M via leading principal minors of -M.
        let mut neg_minors = Vec::new();
        if violations
            .iter()
            .all(|v| !matches!(v, Violation::DuplicateVertexId(_) | Violation::UnknownVertex(_)))
        {
            let m = self.intersection_matrix();
            let neg: Vec<Vec<BigInt>> = m
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(-x)).collect())
                .collect();
            let minors = linalg::leading_principal_minors(&neg);
            for (k, minor) in minors.iter().enumerate() {
                match minor {
                    Some(d) if *d > BigInt::from(0) => neg_minors.push(d.clone()),
                    Some(d) => {
                        neg_minors.push(d.clone());
                        violations.push(Violation::NotNegativeDefinite { minor_index: k + 1 });
                        break;
                    }
                    None => break,
                }
            }
        }

        ValidationReport {
            violations,
            neg_minors,
            connected,
            has_arrow,
        }
    }

    /// Validate and convert failures into an [`crate::Error`].
    pub fn require_valid(&self) -> Result<(), crate::Error> {
        let report = self.validate();
        if report.passes() {
            Ok(())
        } else {
            Err(crate::Error::Validation(report.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertexId(VertexId),
    UnknownVertex(VertexId),
    SelfLoop(VertexId),
    NonPositiveBranchMultiplicity(VertexId),
    NotConnected,
    NoArrows,
    /// The k-th leading principal minor of -M is not strictly positive.
    NotNegativeDefinite { minor_index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertexId(id) => write!(f, "duplicate vertex id {id}"),
            Violation::UnknownVertex(id) => write!(f, "edge or arrow references unknown vertex {id}"),
            Violation::SelfLoop(id) => write!(f, "self-loop at {id}"),
            Violation::NonPositiveBranchMultiplicity(id) => {
                write!(f, "arrow at {id} has branch multiplicity < 1")
            }
            Violation::NotConnected => write!(f, "graph is not connected"),
            Violation::NoArrows => write!(f, "graph has no arrows (at least one branch required)"),
            Violation::NotNegativeDefinite { minor_index } => write!(
                f,
                "intersection matrix is not negative definite (leading minor {minor_index} of -M is not positive)"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Leading principal minors of -M, up to the first non-positive one.
    pub neg_minors: Vec<BigInt>,
    pub connected: bool,
    pub has_arrow: bool,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passes() {
            write!(f, "valid")
        } else {
            let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", lines.join("; "))
        }
    }
}
