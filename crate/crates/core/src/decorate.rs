//! Exact decorations of a dual graph: multiplicities, discrepancies and
//! ample divisor coefficients.
//!
//! All three are solutions of small linear systems driven by the
//! intersection matrix M:
//!
//! * multiplicities: `M * m = -(arrow load)`, from principality of the total
//!   transform;
//! * discrepancies: `M * a = -2 + 2g - diag(M)`, from adjunction, with
//!   arrows carrying `a = 0`;
//! * ample coefficients: any `b < 0` with `M * b > 0` componentwise
//!   (relative Nakai-Moishezon positivity `H . D_i > 0`).

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::graph::{DualGraph, VertexId};
use crate::linalg;
use crate::{rat_int, Int, Rat};

/// Per-vertex decoration of a dual graph. Arrows implicitly carry
/// multiplicity equal to their branch multiplicity, discrepancy 0 and ample
/// coefficient 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoration {
    pub mult: BTreeMap<VertexId, i64>,
    pub discrepancy: BTreeMap<VertexId, Rat>,
    pub ample: Option<BTreeMap<VertexId, Rat>>,
}

impl Decoration {
    /// Solve multiplicities and discrepancies for a valid graph.
    pub fn solve(g: &DualGraph) -> Result<Self, Error> {
        Ok(Decoration {
            mult: solve_multiplicities(g)?,
            discrepancy: solve_discrepancies(g)?,
            ample: None,
        })
    }

    pub fn mult_of(&self, id: &str) -> Result<i64, Error> {
        self.mult
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingDecoration { vertex: id.to_string() })
    }

    pub fn discrepancy_of(&self, id: &str) -> Result<&Rat, Error> {
        self.discrepancy
            .get(id)
            .ok_or_else(|| Error::MissingDecoration { vertex: id.to_string() })
    }

    pub fn ample_of(&self, id: &str) -> Result<&Rat, Error> {
        self.ample
            .as_ref()
            .ok_or(Error::MissingAmple)?
            .get(id)
            .ok_or_else(|| Error::MissingDecoration { vertex: id.to_string() })
    }

    /// True when some discrepancy is not an integer; such a graph passes
    /// validation but is not the dual graph of a germ resolution.
    pub fn has_non_integral_discrepancy(&self) -> bool {
        self.discrepancy.values().any(|a| !a.is_integer())
    }

    /// Attach ample coefficients, enforcing `b_i < 0` on every vertex.
    pub fn with_ample(mut self, b: BTreeMap<VertexId, Rat>) -> Result<Self, Error> {
        for (id, v) in &b {
            if !v.is_negative() {
                return Err(Error::AmpleNotNegative {
                    vertex: id.clone(),
                    value: v.to_string(),
                });
            }
        }
        self.ample = Some(b);
        Ok(self)
    }
}

fn rat_matrix(g: &DualGraph) -> Vec<Vec<Rat>> {
    g.intersection_matrix()
        .iter()
        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
        .collect()
}

/// Unique exact solution of `M * m = -(arrow load)`; errors when some entry
/// is non-integral or non-positive.
pub fn solve_multiplicities(g: &DualGraph) -> Result<BTreeMap<VertexId, i64>, Error> {
    let m = rat_matrix(g);
    let rhs: Vec<Rat> = g
        .vertices
        .iter()
        .map(|v| -rat_int(g.arrow_load(&v.id)))
        .collect();
    let x = linalg::solve(&m, &rhs).ok_or(Error::SingularSystem)?;

    let mut out = BTreeMap::new();
    for (v, value) in g.vertices.iter().zip(x) {
        if !value.is_integer() {
            return Err(Error::NonIntegralMultiplicity {
                vertex: v.id.clone(),
                value: value.to_string(),
            });
        }
        let n = value.to_integer();
        if n <= Int::zero() {
            return Err(Error::NonPositiveMultiplicity {
                vertex: v.id.clone(),
                value: value.to_string(),
            });
        }
        let n = n.to_i64().ok_or_else(|| Error::NonIntegralMultiplicity {
            vertex: v.id.clone(),
            value: value.to_string(),
        })?;
        out.insert(v.id.clone(), n);
    }
    Ok(out)
}

/// Unique solution of the adjunction system
/// `sum_j M_ij a_j = -2 + 2 g_i - M_ii` (arrows contribute 0).
///
/// Integrality is not required; callers may warn via
/// [`Decoration::has_non_integral_discrepancy`].
pub fn solve_discrepancies(g: &DualGraph) -> Result<BTreeMap<VertexId, Rat>, Error> {
    let m = rat_matrix(g);
    let rhs: Vec<Rat> = g
        .vertices
        .iter()
        .map(|v| rat_int(-2 + 2 * i64::from(v.genus) - v.self_intersection))
        .collect();
    let x = linalg::solve(&m, &rhs).ok_or(Error::SingularSystem)?;
    Ok(g.vertices
        .iter()
        .map(|v| v.id.clone())
        .zip(x)
        .collect())
}

/// Outcome of the ample positivity check: each intersection number
/// `H . D_i = sum_j M_ij b_j` exactly, and whether all are positive.
#[derive(Debug, Clone)]
pub struct AmpleReport {
    pub margins: BTreeMap<VertexId, Rat>,
    pub ample: bool,
}

/// Relative Nakai-Moishezon positivity: `H = sum b_i D_i` is ample iff
/// `H . D_i > 0` for every vertex.
pub fn check_ample(g: &DualGraph, b: &BTreeMap<VertexId, Rat>) -> Result<AmpleReport, Error> {
    let m = g.intersection_matrix();
    let bs: Vec<&Rat> = g
        .vertices
        .iter()
        .map(|v| {
            b.get(&v.id).ok_or_else(|| Error::MissingDecoration {
                vertex: v.id.clone(),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut margins = BTreeMap::new();
    let mut ample = true;
    for (i, v) in g.vertices.iter().enumerate() {
        let mut dot = Rat::zero();
        for (j, bj) in bs.iter().enumerate() {
            dot += rat_int(m[i][j]) * *bj;
        }
        if !dot.is_positive() {
            ample = false;
        }
        margins.insert(v.id.clone(), dot);
    }
    Ok(AmpleReport { margins, ample })
}

/// Produce integer ample coefficients by solving `M * b = 1` and clearing
/// denominators. Negative definiteness of M forces `b < 0` componentwise.
pub fn suggest_ample(g: &DualGraph) -> Result<BTreeMap<VertexId, i64>, Error> {
    let m = rat_matrix(g);
    let ones = vec![rat_int(1); g.vertices.len()];
    let x = linalg::solve(&m, &ones).ok_or(Error::SingularSystem)?;

    let mut lcm = Int::from(1);
    for v in &x {
        lcm = lcm.lcm(v.denom());
    }
    let mut out = BTreeMap::new();
    for (v, value) in g.vertices.iter().zip(&x) {
        let scaled = value * Rat::from_integer(lcm.clone());
        debug_assert!(scaled.is_integer());
        let n = scaled.to_integer();
        if n >= Int::zero() {
            // Cannot happen on a negative definite graph.
            return Err(Error::AmpleNotNegative {
                vertex: v.id.clone(),
                value: n.to_string(),
            });
        }
        let n = n.to_i64().ok_or_else(|| Error::InvalidParams(format!(
            "suggested ample coefficient for {} overflows i64",
            v.id
        )))?;
        out.insert(v.id.clone(), n);
    }
    Ok(out)
}

/// Convert integer coefficients into the rational map used by [`Decoration`].
pub fn ample_from_integers(b: &BTreeMap<VertexId, i64>) -> BTreeMap<VertexId, Rat> {
    b.iter().map(|(k, &v)| (k.clone(), rat_int(v))).collect()
}
