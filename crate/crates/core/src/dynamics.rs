//! Numeric verification of the radius-zero monodromy dynamics.
//!
//! On the boundary stratum with support I, the tropical weights satisfy
//! `sum_{i in I} w_i = 1`; with `u_i = eta(w_i)` the monodromy rotates the
//! angle about the j-th divisor by `m * l_j`, where
//! `l_j = zeta(u_j) / sum_i m_i zeta(u_i)`. A point is fixed by the m-th
//! iterate iff every `m * l_j` is an integer; on an m-separated graph this
//! happens exactly on the pure strata with `m_i | m`.
//!
//! Everything here is double precision with explicit tolerances: 1e-12 for
//! the simplex closure and the rotation-number sum, 1e-9 for integrality,
//! 1e-6 for finite differences.

use std::collections::BTreeMap;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decorate::Decoration;
use crate::error::Error;
use crate::graph::{DualGraph, VertexId};

pub const SIMPLEX_TOL: f64 = 1e-12;
pub const INTEGRALITY_TOL: f64 = 1e-9;
pub const FD_REL_TOL: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-6;
/// Distance to the bound below which a sample is recorded as a near miss.
pub const NEAR_MISS_TOL: f64 = 1e-6;

/// `eta(s) = (1 - log s)^{-1}` for `s > 0`, `eta(0) = 0`: a continuous
/// increasing bijection of [0, 1].
pub fn eta<F: Float>(s: F) -> Result<F, Error> {
    if s < F::zero() || s > F::one() {
        return Err(Error::Domain(format!(
            "eta needs s in [0, 1], got {}",
            s.to_f64().unwrap_or(f64::NAN)
        )));
    }
    if s.is_zero() {
        return Ok(F::zero());
    }
    Ok((F::one() - s.ln()).recip())
}

/// `zeta(s) = s^{-2} e^{1 - 1/s}` for `s > 0`, `zeta(0) = 0`: the derivative
/// of the inverse of `eta`; smooth, with all derivatives vanishing at 0.
pub fn zeta_fn<F: Float>(s: F) -> F {
    debug_assert!(s >= F::zero());
    if s.is_zero() {
        return F::zero();
    }
    (F::one() - s.recip()).exp() / (s * s)
}

/// Inverse of `eta`: `t(g) = e^{1 - 1/g}`, with `t(0) = 0`.
pub fn eta_inverse<F: Float>(g: F) -> F {
    if g.is_zero() {
        return F::zero();
    }
    (F::one() - g.recip()).exp()
}

/// A point of the boundary simplex of a stratum: support labels with
/// weights summing to 1.
#[derive(Debug, Clone)]
pub struct SimplexPoint {
    pub support: Vec<VertexId>,
    pub w: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(support: Vec<VertexId>, w: Vec<f64>) -> Result<Self, Error> {
        if support.len() != w.len() || support.is_empty() {
            return Err(Error::Domain(
                "simplex point needs matching nonempty support and weights".into(),
            ));
        }
        if w.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
            return Err(Error::Domain("simplex weights must lie in (0, 1]".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::Domain(format!(
                "simplex weights sum to {sum}, expected 1 within {SIMPLEX_TOL:e}"
            )));
        }
        Ok(SimplexPoint { support, w })
    }

    /// `u_i = eta(w_i)` along the support.
    pub fn u(&self) -> Vec<f64> {
        self.w.iter().map(|&x| eta(x).expect("w in (0,1]")).collect()
    }

    /// Uniform sample of the open face simplex on `support`.
    pub fn sample(support: Vec<VertexId>, rng: &mut impl Rng) -> Self {
        // Normalized exponentials give the flat Dirichlet distribution.
        loop {
            let e: Vec<f64> = support
                .iter()
                .map(|_| -(1.0 - rng.gen::<f64>()).ln())
                .collect();
            let total: f64 = e.iter().sum();
            if total <= 0.0 {
                continue;
            }
            let w: Vec<f64> = e.iter().map(|&x| x / total).collect();
            if w.iter().all(|&x| x > 0.0) {
                let drift: f64 = w.iter().sum::<f64>() - 1.0;
                debug_assert!(drift.abs() <= SIMPLEX_TOL);
                return SimplexPoint { support, w };
            }
        }
    }
}

/// Rotation numbers `l_j = zeta(u_j) / sum_i m_i zeta(u_i)` for the support.
pub fn rotation_numbers(
    pt: &SimplexPoint,
    mult: &BTreeMap<VertexId, i64>,
) -> Result<BTreeMap<VertexId, f64>, Error> {
    let u = pt.u();
    let mut denom = 0.0;
    for (id, &ui) in pt.support.iter().zip(&u) {
        let mi = *mult.get(id).ok_or_else(|| Error::MissingDecoration {
            vertex: id.clone(),
        })?;
        denom += mi as f64 * zeta_fn(ui);
    }
    if denom <= 0.0 {
        return Err(Error::Domain("vanishing rotation denominator".into()));
    }
    Ok(pt
        .support
        .iter()
        .zip(&u)
        .map(|(id, &ui)| (id.clone(), zeta_fn(ui) / denom))
        .collect())
}

/// True iff every `m * l_j` is within `tol` of an integer.
pub fn fixed_point_test(
    pt: &SimplexPoint,
    mult: &BTreeMap<VertexId, i64>,
    m: i64,
    tol: f64,
) -> Result<bool, Error> {
    let l = rotation_numbers(pt, mult)?;
    Ok(l.values().all(|&lj| {
        let x = m as f64 * lj;
        (x - x.round()).abs() <= tol
    }))
}

/// A two-label boundary stratum of the graph: an edge or an arrow
/// attachment, with the multiplicities on both sides.
#[derive(Debug, Clone)]
pub struct EdgeStratum {
    pub label: String,
    pub ids: [VertexId; 2],
    pub mults: [i64; 2],
}

/// All two-label strata of a decorated graph. Arrow attachments count with
/// the branch multiplicity on the arrow side.
pub fn edge_strata(g: &DualGraph, dec: &Decoration) -> Result<Vec<EdgeStratum>, Error> {
    let mut out = Vec::new();
    for (k, (a, b)) in g.edges.iter().enumerate() {
        out.push(EdgeStratum {
            label: format!("edge {k} ({a}, {b})"),
            ids: [a.clone(), b.clone()],
            mults: [dec.mult_of(a)?, dec.mult_of(b)?],
        });
    }
    for (k, arrow) in g.arrows.iter().enumerate() {
        let v = &arrow.attached_to;
        out.push(EdgeStratum {
            label: format!("arrow {k} at {v}"),
            ids: [v.clone(), format!("arrow{k}")],
            mults: [dec.mult_of(v)?, arrow.branch_multiplicity],
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct NearMiss {
    pub stratum: String,
    pub w: Vec<f64>,
    pub value: f64,
}

/// Outcome of the separation-bound sampling.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub m: i64,
    pub strata: usize,
    pub samples_per_stratum: usize,
    /// Smallest and largest `m * l_j` observed at the minimal-weight label.
    pub min_observed: f64,
    pub max_observed: f64,
    /// Samples approaching the open bound (0, 1) closer than
    /// [`NEAR_MISS_TOL`]; documented, not flagged.
    pub near_misses: Vec<NearMiss>,
}

/// Sample every two-label stratum and check the fixed-point exclusion bound
/// `0 < m * l_j < 1` at the label j of minimal rotation number. That label
/// realizes `m * l_j <= m / sum(m_i)`, which separation keeps below 1.
/// (Minimal rotation number, not minimal weight: zeta is not monotone above
/// 1/2, so the label of minimal weight can exceed the bound.) Each stratum
/// also probes the exact midpoint, where an unseparated intersection
/// (`m_i + m_j <= m`) makes `m * l_j` reach 1 and fail the strict bound.
pub fn separation_bound_check(
    g: &DualGraph,
    dec: &Decoration,
    m: i64,
    samples: usize,
    seed: u64,
) -> Result<SeparationReport, Error> {
    let strata = edge_strata(g, dec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_observed = f64::INFINITY;
    let mut max_observed = f64::NEG_INFINITY;
    let mut near_misses = Vec::new();

    for stratum in &strata {
        let mult: BTreeMap<VertexId, i64> = stratum
            .ids
            .iter()
            .cloned()
            .zip(stratum.mults.iter().copied())
            .collect();
        let midpoint = SimplexPoint::new(stratum.ids.to_vec(), vec![0.5, 0.5])?;
        for k in 0..=samples {
            let pt = if k == 0 {
                midpoint.clone()
            } else {
                SimplexPoint::sample(stratum.ids.to_vec(), &mut rng)
            };
            let l = rotation_numbers(&pt, &mult)?;
            let value = m as f64
                * l.values()
                    .cloned()
                    .fold(f64::INFINITY, f64::min);
            min_observed = min_observed.min(value);
            max_observed = max_observed.max(value);
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::SeparationViolated {
                    stratum: stratum.label.clone(),
                    value,
                    witness: pt.w.clone(),
                });
            }
            if value > 1.0 - NEAR_MISS_TOL || value < NEAR_MISS_TOL {
                near_misses.push(NearMiss {
                    stratum: stratum.label.clone(),
                    w: pt.w.clone(),
                    value,
                });
            }
        }
    }
    Ok(SeparationReport {
        m,
        strata: strata.len(),
        samples_per_stratum: samples,
        min_observed,
        max_observed,
        near_misses,
    })
}

/// One verified identity with its worst observed deviation.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub samples: usize,
    pub worst_rel_err: f64,
    pub worst_at: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct CalculusReport {
    pub checks: Vec<IdentityCheck>,
}

fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn rel_err(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

/// Rotation numbers on a two-label stratum parametrized by
/// `w = (s, 1 - s)`, as functions of s.
fn edge_rotation(s: f64, mi: f64, mj: f64) -> (f64, f64) {
    let ui = eta(s).expect("s in (0,1)");
    let uj = eta(1.0 - s).expect("s in (0,1)");
    let denom = mi * zeta_fn(ui) + mj * zeta_fn(uj);
    (zeta_fn(ui) / denom, zeta_fn(uj) / denom)
}

/// Verify the closed-form derivatives behind the rotation numbers by
/// central finite differences on a grid of sample points in (0.05, 0.95):
///
/// 1. `dt/dg = t (1 - log t)^2` for `t = eta^{-1}(g)` (equals `zeta(g)`);
/// 2. `eta'(w) = u^2 / w` with `u = eta(w)`;
/// 3. the telescoping identity along an edge path:
///    `vbar_i dl_i + vbar_j dl_j = d(vbar_i l_i + vbar_j l_j)` with
///    `vbar = -u`, checked for several multiplicity pairs.
pub fn calculus_identity_suite(samples: usize) -> Result<CalculusReport, Error> {
    let grid: Vec<f64> = (0..samples)
        .map(|k| 0.05 + 0.9 * (k as f64 + 0.5) / samples as f64)
        .collect();
    let mut checks = Vec::new();

    let record = |name: &str,
                  worst: (f64, Vec<f64>),
                  count: usize|
     -> Result<IdentityCheck, Error> {
        if worst.0 > FD_REL_TOL {
            return Err(Error::IdentityViolated {
                name: name.into(),
                rel_err: worst.0,
                at: worst.1,
            });
        }
        Ok(IdentityCheck {
            name: name.into(),
            samples: count,
            worst_rel_err: worst.0,
            worst_at: worst.1,
        })
    };

    // t' = t (1 - log t)^2, with t = e^{1 - 1/g}; also equals zeta(g).
    let mut worst = (0.0f64, vec![0.0f64]);
    for &g in &grid {
        let fd = central_difference(eta_inverse::<f64>, g, FD_STEP);
        let t: f64 = eta_inverse(g);
        let closed = t * (1.0 - t.ln()).powi(2);
        debug_assert!((closed - zeta_fn(g)).abs() <= 1e-9 * closed.abs().max(1.0));
        let err = rel_err(fd, closed);
        if err > worst.0 {
            worst = (err, vec![g]);
        }
    }
    checks.push(record("t' = t (1 - log t)^2", worst, grid.len())?);

    // eta'(w) = u^2 / w.
    let mut worst = (0.0f64, vec![0.0f64]);
    for &w in &grid {
        let fd = central_difference(|x| eta(x).unwrap(), w, FD_STEP);
        let u: f64 = eta(w).unwrap();
        let closed = u * u / w;
        let err = rel_err(fd, closed);
        if err > worst.0 {
            worst = (err, vec![w]);
        }
    }
    checks.push(record("eta'(w) = u^2 / w", worst, grid.len())?);

    // Telescoping along the edge path w = (s, 1-s), vbar = -u.
    let mut worst = (0.0f64, vec![0.0f64]);
    let mut count = 0;
    for (mi, mj) in [(2.0, 6.0), (3.0, 6.0), (2.0, 3.0), (5.0, 5.0)] {
        for &s in &grid {
            let vbar_i = -eta(s).unwrap();
            let vbar_j = -eta(1.0 - s).unwrap();
            let dli = central_difference(|x| edge_rotation(x, mi, mj).0, s, FD_STEP);
            let dlj = central_difference(|x| edge_rotation(x, mi, mj).1, s, FD_STEP);
            let lhs = vbar_i * dli + vbar_j * dlj;
            let rhs = central_difference(
                |x| {
                    let (li, lj) = edge_rotation(x, mi, mj);
                    -eta(x).unwrap() * li - eta(1.0 - x).unwrap() * lj
                },
                s,
                FD_STEP,
            );
            let err = rel_err(lhs, rhs);
            if err > worst.0 {
                worst = (err, vec![s, mi, mj]);
            }
            count += 1;
        }
    }
    checks.push(record(
        "vbar_i dl_i + vbar_j dl_j = d(vbar_i l_i + vbar_j l_j)",
        worst,
        count,
    )?);

    Ok(CalculusReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ;

    #[test]
    fn eta_boundary_and_interior_values() {
        assert_eq!(eta(0.0f64).unwrap(), 0.0);
        assert_eq!(eta(1.0f64).unwrap(), 1.0);
        // eta(e^{-1}) = 1/2 since 1 - log(e^{-1}) = 2.
        let v: f64 = eta((-1.0f64).exp()).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert!(eta(-0.1f64).is_err());
        assert!(eta(1.1f64).is_err());
    }

    #[test]
    fn zeta_fn_values() {
        assert_eq!(zeta_fn(0.0f64), 0.0);
        assert!((zeta_fn(1.0f64) - 1.0).abs() < 1e-15);
        // zeta(1/2) = 4 e^{-1}.
        let v: f64 = zeta_fn(0.5);
        assert!((v - 4.0 * (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn eta_is_increasing_and_zeta_peaks_at_one_half() {
        // Start at 0.002: below that, e^{1 - 1/s} underflows to 0.0 in f64.
        let mut last_eta = 0.0;
        let mut last_zeta = 0.0;
        for k in 2..=999 {
            let s = k as f64 / 1000.0;
            let e: f64 = eta(s).unwrap();
            assert!(e > last_eta, "eta not increasing at {s}");
            last_eta = e;
            // zeta' = e^{1-1/s} s^{-4} (1 - 2s): increasing only up to 1/2.
            if s <= 0.5 {
                let z: f64 = zeta_fn(s);
                assert!(z > last_zeta, "zeta not increasing at {s}");
                last_zeta = z;
            }
        }
        assert!(zeta_fn(0.5f64) > zeta_fn(0.75f64));
        assert!(zeta_fn(0.75f64) > zeta_fn(1.0f64));
    }

    #[test]
    fn minimal_rotation_label_realizes_the_bound_where_minimal_weight_fails() {
        // On an edge with multiplicities (2, 100) at m = 101 (separated:
        // 2 + 100 > 101), the minimal-weight label can exceed 1 because
        // zeta is not monotone; the minimal rotation number stays below
        // m / (m_i + m_j) < 1.
        let mult: BTreeMap<VertexId, i64> =
            [("A".to_string(), 2), ("B".to_string(), 100)].into();
        let pt = SimplexPoint::new(
            vec!["A".to_string(), "B".to_string()],
            vec![0.23, 0.77],
        )
        .unwrap();
        let l = rotation_numbers(&pt, &mult).unwrap();
        let m = 101.0;
        assert!(m * l["A"] > 1.0, "minimal-weight label exceeds the bound");
        let min_value = m * l.values().cloned().fold(f64::INFINITY, f64::min);
        assert!(min_value > 0.0 && min_value < 1.0);
        assert!(min_value <= m / 102.0 + 1e-12);
    }

    #[test]
    fn eta_inverse_inverts_eta() {
        for k in 1..=99 {
            let s = k as f64 / 100.0;
            let g: f64 = eta(s).unwrap();
            assert!((eta_inverse(g) - s).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_stratum_rotation_is_reciprocal_multiplicity() {
        let pt = SimplexPoint::new(vec!["V".to_string()], vec![1.0]).unwrap();
        let mult: BTreeMap<VertexId, i64> = [("V".to_string(), 6)].into();
        let l = rotation_numbers(&pt, &mult).unwrap();
        assert!((l["V"] - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_equal_multiplicity_edge_splits_evenly() {
        let pt = SimplexPoint::new(
            vec!["A".to_string(), "B".to_string()],
            vec![0.5, 0.5],
        )
        .unwrap();
        let mult: BTreeMap<VertexId, i64> =
            [("A".to_string(), 4), ("B".to_string(), 4)].into();
        let l = rotation_numbers(&pt, &mult).unwrap();
        assert!((l["A"] - 1.0 / 8.0).abs() < 1e-15);
        assert!((l["B"] - 1.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_numbers_sum_against_multiplicities_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mult: BTreeMap<VertexId, i64> =
            [("A".to_string(), 2), ("B".to_string(), 6)].into();
        for _ in 0..1000 {
            let pt = SimplexPoint::sample(vec!["A".to_string(), "B".to_string()], &mut rng);
            let l = rotation_numbers(&pt, &mult).unwrap();
            let total: f64 = l.iter().map(|(id, lj)| mult[id] as f64 * lj).sum();
            assert!((total - 1.0).abs() <= SIMPLEX_TOL);
        }
    }

    #[test]
    fn cusp_edge_value_matches_direct_formula() {
        let pt = SimplexPoint::new(
            vec!["A".to_string(), "B".to_string()],
            vec![0.3, 0.7],
        )
        .unwrap();
        let mult: BTreeMap<VertexId, i64> =
            [("A".to_string(), 2), ("B".to_string(), 6)].into();
        let l = rotation_numbers(&pt, &mult).unwrap();
        let ua = 1.0 / (1.0 - 0.3f64.ln());
        let ub = 1.0 / (1.0 - 0.7f64.ln());
        let za = ua.powi(-2) * (1.0 - 1.0 / ua).exp();
        let zb = ub.powi(-2) * (1.0 - 1.0 / ub).exp();
        let denom = 2.0 * za + 6.0 * zb;
        assert!((l["A"] - za / denom).abs() < 1e-14);
        assert!((l["B"] - zb / denom).abs() < 1e-14);
    }

    #[test]
    fn fixed_points_on_pure_strata_follow_divisibility() {
        let pt = SimplexPoint::new(vec!["V".to_string()], vec![1.0]).unwrap();
        let mult: BTreeMap<VertexId, i64> = [("V".to_string(), 3)].into();
        assert!(fixed_point_test(&pt, &mult, 6, INTEGRALITY_TOL).unwrap());
        assert!(!fixed_point_test(&pt, &mult, 4, INTEGRALITY_TOL).unwrap());
    }

    #[test]
    fn mixed_strata_of_the_separated_cusp_have_no_fixed_points() {
        let germ = germ::cusp();
        let dec = Decoration::solve(&germ.graph).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for stratum in edge_strata(&germ.graph, &dec).unwrap() {
            let mult: BTreeMap<VertexId, i64> = stratum
                .ids
                .iter()
                .cloned()
                .zip(stratum.mults.iter().copied())
                .collect();
            for _ in 0..1000 {
                let pt = SimplexPoint::sample(stratum.ids.to_vec(), &mut rng);
                assert!(!fixed_point_test(&pt, &mult, 6, INTEGRALITY_TOL).unwrap());
            }
        }
    }

    #[test]
    fn separated_cusp_passes_the_bound_check() {
        let germ = germ::cusp();
        let dec = Decoration::solve(&germ.graph).unwrap();
        let report = separation_bound_check(&germ.graph, &dec, 6, 500, 42).unwrap();
        assert!(report.min_observed > 0.0);
        assert!(report.max_observed < 1.0);
        assert!(report.near_misses.is_empty());
    }

    #[test]
    fn unseparated_edge_is_caught_at_the_midpoint() {
        // Two curves of multiplicities 2 and 4 meeting once: 2 + 4 <= 6, so
        // the m = 6 bound fails exactly at the midpoint probe.
        let mut g = DualGraph::new();
        g.add_vertex("A", -3);
        g.add_vertex("B", -1);
        g.add_edge("A", "B");
        g.add_arrow_with_multiplicity("B", 2);
        let dec = Decoration {
            mult: [("A".to_string(), 2), ("B".to_string(), 4)].into(),
            discrepancy: [
                ("A".to_string(), crate::rat_int(1)),
                ("B".to_string(), crate::rat_int(2)),
            ]
            .into(),
            ample: None,
        };
        match separation_bound_check(&g, &dec, 6, 100, 1) {
            Err(Error::SeparationViolated { value, .. }) => {
                assert!((value - 1.0).abs() < 1e-12);
            }
            other => panic!("expected SeparationViolated, got {other:?}"),
        }
    }

    #[test]
    fn smooth_branch_bound_check_is_vacuously_fine() {
        let germ = germ::smooth();
        let dec = Decoration::solve(&germ.graph).unwrap();
        let report = separation_bound_check(&germ.graph, &dec, 1, 100, 3).unwrap();
        assert_eq!(report.strata, 1);
        assert!(report.min_observed > 0.0 && report.max_observed < 1.0);
    }

    #[test]
    fn calculus_identities_hold() {
        let report = calculus_identity_suite(1000).unwrap();
        assert_eq!(report.checks.len(), 3);
        for check in &report.checks {
            assert!(check.worst_rel_err <= FD_REL_TOL, "{}", check.name);
        }
    }

    #[test]
    fn t_prime_identity_exact_at_e_minus_two() {
        // At t = e^{-2}: 1 - log t = 3, so t' = 9 t.
        let t = (-2.0f64).exp();
        let g: f64 = eta(t).unwrap();
        assert!((g - 1.0 / 3.0).abs() < 1e-15);
        let closed = t * (1.0 - t.ln()).powi(2);
        assert!((closed - 9.0 * t).abs() < 1e-15);
        assert!((zeta_fn(g) - 9.0 * t).abs() < 1e-12);
    }

    #[test]
    fn telescoping_vanishes_at_the_symmetric_midpoint() {
        // Equal multiplicities: both sides are 0 at s = 1/2 by symmetry.
        let h = FD_STEP;
        let mid_lhs = {
            let vbar = -eta(0.5f64).unwrap();
            let dli = central_difference(|x| edge_rotation(x, 5.0, 5.0).0, 0.5, h);
            let dlj = central_difference(|x| edge_rotation(x, 5.0, 5.0).1, 0.5, h);
            vbar * (dli + dlj)
        };
        assert!(mid_lhs.abs() < 1e-9);
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new(vec!["A".into()], vec![0.4]).is_err());
        assert!(SimplexPoint::new(vec!["A".into(), "B".into()], vec![0.4, 0.6]).is_ok());
        assert!(SimplexPoint::new(vec!["A".into()], vec![]).is_err());
    }
}
