//! First page of the spectral sequence converging to the fixed-point Floer
//! homology of a monodromy iterate, with Conley-Zehnder gradings and action
//! keys.
//!
//! For an m-separated decorated graph, the vertices with `m_i | m`
//! contribute at column `p = m*b_i/m_i`; the entry at `(p, q)` collects the
//! Borel-Moore rank in degree `n - 1 + p + q + CZ_i`, where
//! `CZ_i = 2 (m/m_i) (a_i + 1) - 2m`. Branches of the strict transform lie
//! in every `S_m` but contribute zero.
//!
//! Actions are ordered by the exact pair `(m*b_i/m_i, m/m_i)`,
//! lexicographically: the second component carries the infinitesimal
//! deformation term, which is arbitrarily small against the first.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::cover;
use crate::decorate::Decoration;
use crate::error::Error;
use crate::graph::{DualGraph, VertexId};
use crate::separate;
use crate::{rat_int, Rat};

/// One vertex contribution inside a page entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contribution {
    pub vertex: VertexId,
    pub bm_degree: i64,
    pub rank: u64,
}

/// Exact action key compared lexicographically; the first component is the
/// column `m*b_i/m_i`, the second the coefficient `m/m_i` of the
/// infinitesimal term.
pub type ActionKey = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPage {
    pub m: i64,
    /// Complex ambient dimension; 2 for plane curves.
    pub n: i64,
    /// Nonzero entries only.
    pub entries: BTreeMap<(i64, i64), Vec<Contribution>>,
    pub cz: BTreeMap<VertexId, i64>,
    pub action_key: BTreeMap<VertexId, ActionKey>,
}

impl SpectralPage {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_at(&self, p: i64, q: i64) -> u64 {
        self.entries
            .get(&(p, q))
            .map(|cs| cs.iter().map(|c| c.rank).sum())
            .unwrap_or(0)
    }

    pub fn total_rank(&self) -> u64 {
        self.entries
            .values()
            .flat_map(|cs| cs.iter().map(|c| c.rank))
            .sum()
    }

    /// Distinct columns p, ascending.
    pub fn columns(&self) -> Vec<i64> {
        let mut ps: Vec<i64> = self.entries.keys().map(|&(p, _)| p).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// `sum (-1)^(p+q) rank` over the page. Taking homology preserves it,
    /// so it matches the Euler characteristic of the limit; against the
    /// Lefschetz number it carries the sign `(-1)^(n+1)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&(p, q), cs)| {
                let sign = if (p + q).rem_euclid(2) == 0 { 1 } else { -1 };
                sign * cs.iter().map(|c| c.rank as i64).sum::<i64>()
            })
            .sum()
    }
}

/// Conley-Zehnder index `2 (m/m_i) (a_i + 1) - 2m` of the fixed family over
/// vertex `id`. Requires `m_i | m`; errors when the discrepancy makes the
/// index non-integral.
pub fn cz_index(dec: &Decoration, id: &str, m: i64) -> Result<i64, Error> {
    let mi = dec.mult_of(id)?;
    assert!(m % mi == 0, "cz_index needs m_i | m");
    let a = dec.discrepancy_of(id)?;
    let value = rat_int(2 * (m / mi)) * (a + rat_int(1)) - rat_int(2 * m);
    rat_to_i64(&value).ok_or_else(|| Error::NonIntegralGrading {
        vertex: id.to_string(),
        value: value.to_string(),
    })
}

/// Column `p = m*b_i/m_i`; errors when not an integer.
pub fn column(dec: &Decoration, id: &str, m: i64) -> Result<i64, Error> {
    let mi = dec.mult_of(id)?;
    let b = dec.ample_of(id)?;
    let value = rat_int(m) * b / rat_int(mi);
    rat_to_i64(&value).ok_or_else(|| Error::NonIntegralColumn {
        vertex: id.to_string(),
        value: value.to_string(),
    })
}

fn rat_to_i64(value: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if !value.is_integer() {
        return None;
    }
    value.to_integer().to_i64()
}

/// Data of one vertex contribution for page assembly; allows injecting
/// Borel-Moore rank vectors directly (e.g. for ambient dimension n > 2).
#[derive(Debug, Clone)]
pub struct PagePart {
    pub vertex: VertexId,
    pub mult: i64,
    pub cz: i64,
    pub column: i64,
    /// `bm_ranks[k]` is the Borel-Moore rank in degree k.
    pub bm_ranks: Vec<u64>,
}

/// Assemble a page from explicit parts. Only parts with `m_i | m` enter.
pub fn assemble_from_parts(parts: &[PagePart], m: i64, n: i64) -> SpectralPage {
    let mut entries: BTreeMap<(i64, i64), Vec<Contribution>> = BTreeMap::new();
    let mut cz = BTreeMap::new();
    let mut action_key = BTreeMap::new();
    for part in parts {
        if m % part.mult != 0 {
            continue;
        }
        cz.insert(part.vertex.clone(), part.cz);
        action_key.insert(part.vertex.clone(), (part.column, m / part.mult));
        for (k, &rank) in part.bm_ranks.iter().enumerate() {
            if rank == 0 {
                continue;
            }
            let degree = k as i64;
            // degree = n - 1 + p + q + cz.
            let q = degree - (n - 1) - part.column - part.cz;
            entries
                .entry((part.column, q))
                .or_default()
                .push(Contribution {
                    vertex: part.vertex.clone(),
                    bm_degree: degree,
                    rank,
                });
        }
    }
    SpectralPage {
        m,
        n,
        entries,
        cz,
        action_key,
    }
}

/// Assemble the first page for the iterate `m` of a decorated, m-separated
/// plane-curve graph carrying ample coefficients.
pub fn assemble_page(g: &DualGraph, dec: &Decoration, m: i64) -> Result<SpectralPage, Error> {
    separate::require_separated(g, dec, m)?;
    if dec.ample.is_none() {
        return Err(Error::MissingAmple);
    }

    let mut parts = Vec::new();
    for v in &g.vertices {
        let mi = dec.mult_of(&v.id)?;
        if m % mi != 0 {
            continue;
        }
        let cover = cover::stratum_cover(g, dec, &v.id)?;
        parts.push(PagePart {
            vertex: v.id.clone(),
            mult: mi,
            cz: cz_index(dec, &v.id, m)?,
            column: column(dec, &v.id, m)?,
            bm_ranks: cover.bm_ranks.to_vec(),
        });
    }
    // Branches of the strict transform belong to S_m for every m but carry
    // vanishing Borel-Moore homology, hence no entries.
    Ok(assemble_from_parts(&parts, m, 2))
}

/// Vertices with `m_i | m` sorted by ascending action, ties grouped.
pub fn action_order(dec: &Decoration, m: i64) -> Result<Vec<Vec<VertexId>>, Error> {
    let mut keyed: Vec<(ActionKey, VertexId)> = Vec::new();
    for (id, &mi) in &dec.mult {
        if m % mi != 0 {
            continue;
        }
        keyed.push(((column(dec, id, m)?, m / mi), id.clone()));
    }
    keyed.sort();
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut last: Option<ActionKey> = None;
    for (key, id) in keyed {
        if last == Some(key) {
            groups.last_mut().unwrap().push(id);
        } else {
            groups.push(vec![id]);
            last = Some(key);
        }
    }
    Ok(groups)
}

/// Ordered pairs of distinct columns `(source, target)` for which every
/// differential vanishes because the action strictly increases from every
/// source contributor to every target contributor. With the lexicographic
/// action key this is exactly the direction of increasing column.
pub fn forbidden_arrows(page: &SpectralPage) -> Vec<(i64, i64)> {
    let mut by_column: BTreeMap<i64, Vec<ActionKey>> = BTreeMap::new();
    for key in page.action_key.values() {
        by_column.entry(key.0).or_default().push(*key);
    }
    let columns: Vec<i64> = by_column.keys().copied().collect();
    let mut out = Vec::new();
    for &src in &columns {
        for &tgt in &columns {
            if src == tgt {
                continue;
            }
            let forbidden = by_column[&src]
                .iter()
                .all(|s| by_column[&tgt].iter().all(|t| s < t));
            if forbidden {
                out.push((src, tgt));
            }
        }
    }
    out
}

/// Convenience: rescale rational ample coefficients so that every column
/// `m*b_i/m_i` is an integer for every m, by multiplying with the least
/// common multiple of the multiplicities. Rescaling by a positive integer
/// preserves ampleness.
pub fn integralize_ample(dec: &Decoration) -> Result<Decoration, Error> {
    use num_integer::Integer;
    let b = dec.ample.as_ref().ok_or(Error::MissingAmple)?;
    let mut scale = crate::Int::from(1);
    for &mi in dec.mult.values() {
        scale = scale.lcm(&crate::Int::from(mi));
    }
    for v in b.values() {
        scale = scale.lcm(v.denom());
    }
    let scale = Rat::from_integer(scale);
    let rescaled: BTreeMap<VertexId, Rat> = b
        .iter()
        .map(|(k, v)| (k.clone(), v * &scale))
        .collect();
    debug_assert!(rescaled.values().all(|v| v.is_negative()));
    Ok(Decoration {
        mult: dec.mult.clone(),
        discrepancy: dec.discrepancy.clone(),
        ample: Some(rescaled),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorate;
    use crate::germ;
    use crate::rat;

    /// Cusp with b_i/m_i ratios given over a common denominator of 6.
    fn cusp_with_ratios(r1: i64, r2: i64, r3: i64) -> (DualGraph, Decoration) {
        let g = germ::cusp().graph;
        let dec = Decoration::solve(&g).unwrap();
        let b: BTreeMap<VertexId, Rat> = [
            ("E1".to_string(), rat(r1, 6) * rat_int(2)),
            ("E2".to_string(), rat(r2, 6) * rat_int(3)),
            ("E3".to_string(), rat(r3, 6) * rat_int(6)),
        ]
        .into();
        let dec = dec.with_ample(b).unwrap();
        (g, dec)
    }

    #[test]
    fn cusp_cz_indices() {
        let (_, dec) = cusp_with_ratios(-13, -13, -12);
        assert_eq!(cz_index(&dec, "E1", 6).unwrap(), 0);
        assert_eq!(cz_index(&dec, "E2", 6).unwrap(), 0);
        assert_eq!(cz_index(&dec, "E3", 6).unwrap(), -2);
    }

    #[test]
    fn cz_vanishes_when_m_equals_mult_and_a_is_mult_minus_one() {
        // 2 (a_i + 1) - 2 m_i = 0 when a_i = m_i - 1.
        let mut dec = Decoration {
            mult: [("V".to_string(), 5)].into(),
            discrepancy: [("V".to_string(), rat_int(4))].into(),
            ample: None,
        };
        assert_eq!(cz_index(&dec, "V", 5).unwrap(), 0);
        dec.discrepancy.insert("V".to_string(), rat(1, 3));
        assert!(matches!(
            cz_index(&dec, "V", 5),
            Err(Error::NonIntegralGrading { .. })
        ));
    }

    #[test]
    fn cusp_first_ample_choice_page() {
        let (g, dec) = cusp_with_ratios(-13, -13, -12);
        let page = assemble_page(&g, &dec, 6).unwrap();
        assert_eq!(page.rank_at(-13, 14), 5);
        assert_eq!(page.rank_at(-12, 14), 7);
        assert_eq!(page.rank_at(-12, 15), 1);
        assert_eq!(page.total_rank(), 13);
        assert_eq!(page.columns(), vec![-13, -12]);
    }

    #[test]
    fn cusp_page_is_empty_below_the_multiplicity() {
        let (g, dec) = cusp_with_ratios(-13, -13, -12);
        let page = assemble_page(&g, &dec, 1).unwrap();
        assert!(page.is_empty());
    }

    #[test]
    fn non_integral_column_is_rejected() {
        let g = germ::cusp().graph;
        let dec = Decoration::solve(&g).unwrap();
        let b: BTreeMap<VertexId, Rat> = [
            ("E1".to_string(), rat(-13, 6)),
            ("E2".to_string(), rat(-13, 6)),
            ("E3".to_string(), rat(-12, 6)),
        ]
        .into();
        let dec = dec.with_ample(b).unwrap();
        assert!(matches!(
            assemble_page(&g, &dec, 6),
            Err(Error::NonIntegralColumn { .. })
        ));
    }

    #[test]
    fn unseparated_graph_is_rejected() {
        let (g, dec) = cusp_with_ratios(-13, -13, -12);
        assert!(matches!(
            assemble_page(&g, &dec, 12),
            Err(Error::NotSeparated { .. })
        ));
    }

    #[test]
    fn action_order_second_choice() {
        let (_, dec) = cusp_with_ratios(-13, -14, -12);
        let order = action_order(&dec, 6).unwrap();
        let flat: Vec<String> = order.into_iter().flatten().collect();
        assert_eq!(flat, vec!["E2", "E1", "E3"]);
    }

    #[test]
    fn action_order_first_choice_breaks_tie_by_infinitesimal() {
        let (_, dec) = cusp_with_ratios(-13, -13, -12);
        let order = action_order(&dec, 6).unwrap();
        // Equal first keys -13; m/m_i = 2 for E2 sorts before 3 for E1.
        assert_eq!(order, vec![
            vec!["E2".to_string()],
            vec!["E1".to_string()],
            vec!["E3".to_string()],
        ]);
    }

    #[test]
    fn equal_keys_are_grouped() {
        let mut dec = Decoration {
            mult: [("A".to_string(), 2), ("B".to_string(), 2)].into(),
            discrepancy: [
                ("A".to_string(), rat_int(1)),
                ("B".to_string(), rat_int(1)),
            ]
            .into(),
            ample: None,
        };
        dec.ample = Some(
            [
                ("A".to_string(), rat_int(-2)),
                ("B".to_string(), rat_int(-2)),
            ]
            .into(),
        );
        let order = action_order(&dec, 2).unwrap();
        assert_eq!(order, vec![vec!["A".to_string(), "B".to_string()]]);
    }

    #[test]
    fn forbidden_directions_point_up_the_columns() {
        let (g, dec) = cusp_with_ratios(-13, -13, -12);
        let page = assemble_page(&g, &dec, 6).unwrap();
        let forbidden = forbidden_arrows(&page);
        assert!(forbidden.contains(&(-13, -12)));
        assert!(!forbidden.contains(&(-12, -13)));
    }

    #[test]
    fn page_identical_after_separating_an_already_separated_graph() {
        let (g, dec) = cusp_with_ratios(-13, -13, -12);
        let page = assemble_page(&g, &dec, 6).unwrap();
        let (g2, dec2) = crate::separate::separate(&g, &dec, 6).unwrap();
        let page2 = assemble_page(&g2, &dec2, 6).unwrap();
        assert_eq!(page, page2);
    }

    #[test]
    fn grading_shift_is_affine_within_a_column() {
        let (g, dec) = cusp_with_ratios(-13, -14, -12);
        let page = assemble_page(&g, &dec, 6).unwrap();
        for (&(p, q), cs) in &page.entries {
            for c in cs {
                assert_eq!(c.bm_degree, page.n - 1 + p + q + page.cz[&c.vertex]);
            }
        }
    }

    #[test]
    fn injected_parts_support_general_ambient_dimension() {
        // A synthetic n = 3 contributor with ranks in degrees 0..=4.
        let parts = [PagePart {
            vertex: "V".to_string(),
            mult: 2,
            cz: -4,
            column: -7,
            bm_ranks: vec![0, 0, 3, 1, 2],
        }];
        let page = assemble_from_parts(&parts, 4, 3);
        // degree = n - 1 + p + q + cz => q = degree - 2 + 7 + 4.
        assert_eq!(page.rank_at(-7, 11), 3);
        assert_eq!(page.rank_at(-7, 12), 1);
        assert_eq!(page.rank_at(-7, 13), 2);
    }

    #[test]
    fn integralized_ample_gives_integer_columns_for_all_m() {
        let g = germ::cusp().graph;
        let dec = Decoration::solve(&g).unwrap();
        let b = decorate::suggest_ample(&g).unwrap();
        let dec = dec.with_ample(decorate::ample_from_integers(&b)).unwrap();
        let dec = integralize_ample(&dec).unwrap();
        for m in 1..=12 {
            for id in ["E1", "E2", "E3"] {
                if m % dec.mult[id] == 0 {
                    assert!(column(&dec, id, m).is_ok());
                }
            }
        }
    }
}
