//! Classical monodromy invariants derived from the decorated graph:
//! Lefschetz numbers of the iterates, the monodromy zeta function, the
//! Milnor number, the multiplicity, and the tangent-cone column report.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cover;
use crate::decorate::{self, Decoration};
use crate::error::Error;
use crate::graph::{DualGraph, VertexId};
use crate::page::{assemble_page, integralize_ample};
use crate::separate;
use crate::{rat_int, Rat};

/// Euler characteristic of the open stratum of `id`:
/// `2 - 2 genus - valence`.
pub fn chi_open_stratum(g: &DualGraph, id: &str) -> i64 {
    let v = g.vertex(id).expect("vertex exists");
    2 - 2 * i64::from(v.genus) - g.valence(id) as i64
}

/// Lefschetz number of the m-th iterate:
/// `sum over vertices with m_i | m of chi(B_i)`, where
/// `chi(B_i) = m_i * chi(D_i)`. Branches of the strict transform contribute
/// zero for every m.
pub fn lefschetz_number(g: &DualGraph, dec: &Decoration, m: i64) -> Result<i64, Error> {
    let mut total = 0;
    for v in &g.vertices {
        let mi = dec.mult_of(&v.id)?;
        if m % mi == 0 {
            total += mi * chi_open_stratum(g, &v.id);
        }
    }
    Ok(total)
}

/// Lefschetz numbers for `m = 1..=max_m`.
pub fn lefschetz_numbers(
    g: &DualGraph,
    dec: &Decoration,
    max_m: i64,
) -> Result<BTreeMap<i64, i64>, Error> {
    (1..=max_m)
        .map(|m| Ok((m, lefschetz_number(g, dec, m)?)))
        .collect()
}

fn series_mul(a: &[Rat], b: &[Rat], order: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// `(1 - t^k)^e` as a truncated power series, for any integer exponent.
fn one_minus_tk_pow(k: usize, e: i64, order: usize) -> Vec<Rat> {
    let mut base = vec![Rat::zero(); order + 1];
    base[0] = Rat::one();
    if e >= 0 {
        if k <= order {
            base[k] = -Rat::one();
        }
        let mut out = vec![Rat::zero(); order + 1];
        out[0] = Rat::one();
        for _ in 0..e {
            out = series_mul(&out, &base, order);
        }
        out
    } else {
        // (1 - t^k)^{-1} = sum t^{jk}.
        let mut inv = vec![Rat::zero(); order + 1];
        for j in (0..=order).step_by(k) {
            inv[j] = Rat::one();
        }
        let mut out = vec![Rat::zero(); order + 1];
        out[0] = Rat::one();
        for _ in 0..(-e) {
            out = series_mul(&out, &inv, order);
        }
        out
    }
}

/// `exp(s)` of a series with zero constant term, via `E' = s' E`.
fn series_exp(s: &[Rat], order: usize) -> Vec<Rat> {
    assert!(s[0].is_zero());
    let mut out = vec![Rat::zero(); order + 1];
    out[0] = Rat::one();
    for j in 1..=order {
        let mut acc = Rat::zero();
        for i in 1..=j {
            if !s[i].is_zero() {
                acc += rat_int(i as i64) * &s[i] * &out[j - i];
            }
        }
        out[j] = acc / rat_int(j as i64);
    }
    out
}

/// Coefficients of the monodromy zeta function up to `t^order`, exact.
///
/// Two routes are compared and must agree: the product
/// `prod_i (1 - t^{m_i})^{-chi(D_i)}` over exceptional vertices, and
/// `exp(sum_m Lefschetz(m) t^m / m)`. The product form is returned.
pub fn zeta_function(g: &DualGraph, dec: &Decoration, order: usize) -> Result<Vec<Rat>, Error> {
    let mut product = vec![Rat::zero(); order + 1];
    product[0] = Rat::one();
    for v in &g.vertices {
        let mi = dec.mult_of(&v.id)? as usize;
        let chi = chi_open_stratum(g, &v.id);
        product = series_mul(&product, &one_minus_tk_pow(mi, -chi, order), order);
    }

    let mut log_sum = vec![Rat::zero(); order + 1];
    for (m, lambda) in lefschetz_numbers(g, dec, order as i64)? {
        log_sum[m as usize] = rat_int(lambda) / rat_int(m);
    }
    let exp_form = series_exp(&log_sum, order);
    assert_eq!(
        product, exp_form,
        "zeta function: product and exponential forms disagree"
    );
    Ok(product)
}

/// Euler characteristic of the Milnor fiber:
/// `chi(F) = sum_i m_i chi(D_i)` over exceptional vertices.
pub fn euler_fiber(g: &DualGraph, dec: &Decoration) -> Result<i64, Error> {
    let mut total = 0;
    for v in &g.vertices {
        total += dec.mult_of(&v.id)? * chi_open_stratum(g, &v.id);
    }
    Ok(total)
}

/// Milnor number `mu = 1 - chi(F)` of the reduced plane-curve germ.
pub fn milnor_number(g: &DualGraph, dec: &Decoration) -> Result<i64, Error> {
    Ok(1 - euler_fiber(g, dec)?)
}

/// Multiplicity of the germ: the minimum exceptional multiplicity.
///
/// Internally asserts the spectral characterization: the first pages for the
/// m-separated refinements are empty for `m` below the returned value and
/// nonzero at it.
pub fn multiplicity(g: &DualGraph, dec: &Decoration) -> Result<i64, Error> {
    let nu = dec
        .mult
        .values()
        .min()
        .copied()
        .ok_or(Error::SingularSystem)?;
    for m in 1..=nu {
        let (g2, dec2) = separate::separate(g, dec, m)?;
        let b = decorate::suggest_ample(&g2)?;
        let dec2 = dec2.with_ample(decorate::ample_from_integers(&b))?;
        let dec2 = integralize_ample(&dec2)?;
        let page = assemble_page(&g2, &dec2, m)?;
        assert_eq!(
            page.is_empty(),
            m < nu,
            "multiplicity: page emptiness at m={m} contradicts min multiplicity {nu}"
        );
    }
    Ok(nu)
}

/// Tangent-cone column: the Borel-Moore ranks of the cover over the
/// first-blowup vertex, with the degree shift of the limit recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentConeReport {
    pub vertex: VertexId,
    pub bm_ranks: [u64; 3],
    /// The limit in degree d is the Borel-Moore group in degree
    /// `d + degree_shift`, with `degree_shift = 3n - 1 - 2 nu` and n = 2.
    pub degree_shift: i64,
    /// Set when the graph shows infinitely-near points on the first-blowup
    /// curve, i.e. the tangent cone has a repeated factor.
    pub non_reduced_warning: bool,
}

pub fn tangent_cone_column(
    g: &DualGraph,
    dec: &Decoration,
    first_blowup: Option<&VertexId>,
) -> Result<TangentConeReport, Error> {
    let vertex = first_blowup.ok_or(Error::MissingFirstBlowupTag)?;
    let nu = dec
        .mult
        .values()
        .min()
        .copied()
        .ok_or(Error::SingularSystem)?;
    let m = dec.mult_of(vertex)?;
    if m != nu {
        return Err(Error::InvalidParams(format!(
            "first-blowup vertex {vertex} has multiplicity {m}, expected the minimum {nu}"
        )));
    }
    let cover = cover::stratum_cover(g, dec, vertex)?;
    // Reduced tangent cone: all tangent directions distinct, so the minimal
    // resolution has no exceptional curve meeting the first-blowup curve.
    let non_reduced_warning = g
        .edges
        .iter()
        .any(|(a, b)| a == vertex || b == vertex);
    Ok(TangentConeReport {
        vertex: vertex.clone(),
        bm_ranks: cover.bm_ranks,
        degree_shift: 3 * 2 - 1 - 2 * nu,
        non_reduced_warning,
    })
}

/// Bundle of the classical invariants for reporting.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub lefschetz: BTreeMap<i64, i64>,
    pub zeta_coeffs: Vec<Rat>,
    pub euler_fiber: i64,
    pub milnor: i64,
    pub multiplicity: i64,
    pub tangent_cone: Option<TangentConeReport>,
}

impl InvariantReport {
    pub fn compute(
        g: &DualGraph,
        dec: &Decoration,
        max_m: i64,
        zeta_order: usize,
        first_blowup: Option<&VertexId>,
    ) -> Result<Self, Error> {
        let chi = euler_fiber(g, dec)?;
        Ok(InvariantReport {
            lefschetz: lefschetz_numbers(g, dec, max_m)?,
            zeta_coeffs: zeta_function(g, dec, zeta_order)?,
            euler_fiber: chi,
            milnor: 1 - chi,
            multiplicity: multiplicity(g, dec)?,
            tangent_cone: first_blowup
                .map(|v| tangent_cone_column(g, dec, Some(v)))
                .transpose()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ;

    fn decorated(germ: &germ::GermGraph) -> Decoration {
        Decoration::solve(&germ.graph).unwrap()
    }

    #[test]
    fn cusp_lefschetz_numbers() {
        let germ = germ::cusp();
        let dec = decorated(&germ);
        let table = lefschetz_numbers(&germ.graph, &dec, 6).unwrap();
        assert_eq!(table[&1], 0);
        assert_eq!(table[&2], 2);
        assert_eq!(table[&3], 3);
        assert_eq!(table[&4], 2);
        assert_eq!(table[&5], 0);
        assert_eq!(table[&6], -1);
    }

    #[test]
    fn smooth_branch_has_lefschetz_one() {
        let germ = germ::smooth();
        let dec = decorated(&germ);
        assert_eq!(lefschetz_number(&germ.graph, &dec, 1).unwrap(), 1);
    }

    #[test]
    fn singular_corpus_germs_have_vanishing_first_lefschetz_number() {
        for (name, germ) in germ::corpus() {
            if name == "smooth" {
                continue;
            }
            let dec = decorated(&germ);
            assert_eq!(lefschetz_number(&germ.graph, &dec, 1).unwrap(), 0, "{name}");
        }
    }

    #[test]
    fn cusp_zeta_coefficients_to_t6() {
        let germ = germ::cusp();
        let dec = decorated(&germ);
        let z = zeta_function(&germ.graph, &dec, 6).unwrap();
        let expected: Vec<Rat> = [1, 0, 1, 1, 1, 1, 1].iter().map(|&c| rat_int(c)).collect();
        assert_eq!(z, expected);
    }

    #[test]
    fn smooth_zeta_is_geometric_series() {
        let germ = germ::smooth();
        let dec = decorated(&germ);
        let z = zeta_function(&germ.graph, &dec, 8).unwrap();
        assert!(z.iter().all(|c| *c == rat_int(1)));
    }

    #[test]
    fn zeta_forms_agree_to_order_twenty_on_the_corpus() {
        // The agreement of the product and exponential forms is asserted
        // inside zeta_function; this drives it across the corpus.
        for (name, germ) in germ::corpus() {
            let dec = decorated(&germ);
            let z = zeta_function(&germ.graph, &dec, 20).unwrap();
            assert_eq!(z.len(), 21, "{name}");
        }
    }

    #[test]
    fn milnor_numbers_match_the_classical_values() {
        let cusp = germ::cusp();
        assert_eq!(milnor_number(&cusp.graph, &decorated(&cusp)).unwrap(), 2);
        for k in 2..=6 {
            let g = germ::homogeneous(k).unwrap();
            assert_eq!(
                milnor_number(&g.graph, &decorated(&g)).unwrap(),
                (k - 1) * (k - 1),
                "k={k}"
            );
        }
        for (p, q) in [(2i64, 3i64), (2, 5), (3, 4), (3, 5)] {
            let g = germ::puiseux(p, q).unwrap();
            assert_eq!(
                milnor_number(&g.graph, &decorated(&g)).unwrap(),
                (p - 1) * (q - 1),
                "(p,q)=({p},{q})"
            );
        }
        let smooth = germ::smooth();
        assert_eq!(milnor_number(&smooth.graph, &decorated(&smooth)).unwrap(), 0);
    }

    #[test]
    fn multiplicities_match_min_exceptional_multiplicity() {
        assert_eq!(
            multiplicity(&germ::cusp().graph, &decorated(&germ::cusp())).unwrap(),
            2
        );
        for k in 2..=4 {
            let g = germ::homogeneous(k).unwrap();
            assert_eq!(multiplicity(&g.graph, &decorated(&g)).unwrap(), k);
        }
        let smooth = germ::smooth();
        assert_eq!(multiplicity(&smooth.graph, &decorated(&smooth)).unwrap(), 1);
    }

    #[test]
    fn tangent_cone_reports() {
        // Homogeneous: reduced tangent cone, Milnor-fiber ranks.
        for k in 2..=4 {
            let g = germ::homogeneous(k).unwrap();
            let dec = decorated(&g);
            let report =
                tangent_cone_column(&g.graph, &dec, Some(&g.first_blowup)).unwrap();
            assert_eq!(report.bm_ranks, [0, ((k - 1) * (k - 1)) as u64, 1]);
            assert!(!report.non_reduced_warning);
            assert_eq!(report.degree_shift, 5 - 2 * k);
        }
        // Smooth: a disk.
        let s = germ::smooth();
        let report =
            tangent_cone_column(&s.graph, &decorated(&s), Some(&s.first_blowup)).unwrap();
        assert_eq!(report.bm_ranks, [0, 0, 1]);
        assert!(!report.non_reduced_warning);
        // Cusp: two disks over the multiplicity-2 vertex, non-reduced cone.
        let c = germ::cusp();
        let report =
            tangent_cone_column(&c.graph, &decorated(&c), Some(&c.first_blowup)).unwrap();
        assert_eq!(report.bm_ranks, [0, 0, 2]);
        assert!(report.non_reduced_warning);
        // Untagged graphs are refused.
        assert!(matches!(
            tangent_cone_column(&c.graph, &decorated(&c), None),
            Err(Error::MissingFirstBlowupTag)
        ));
    }

    #[test]
    fn milnor_number_is_nonnegative_and_zero_only_for_smooth() {
        for (name, germ) in germ::corpus() {
            let mu = milnor_number(&germ.graph, &decorated(&germ)).unwrap();
            assert!(mu >= 0, "{name}");
            assert_eq!(mu == 0, name == "smooth", "{name}");
        }
    }
}
