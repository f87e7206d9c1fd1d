//! Exhaustive search for degeneration patterns: assignments of ranks to the
//! differentials of a spectral sequence that respect the bidegree, the
//! action-forbidden directions and the entry dimensions, and whose limit has
//! prescribed total ranks.
//!
//! Differentials themselves are never computed; only these structural
//! constraints are enforced, and the search either produces one consistent
//! rank pattern or proves that none exists.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::page::SpectralPage;

/// Bidegree convention for the r-th differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bidegree {
    /// `d_r : E_{p,q} -> E_{p-r, q+r-1}` (homological filtration).
    #[default]
    Homological,
    /// `d_r : E_{p,q} -> E_{p+r, q-r+1}`.
    Cohomological,
}

impl Bidegree {
    fn target(self, r: i64, p: i64, q: i64) -> (i64, i64) {
        match self {
            Bidegree::Homological => (p - r, q + r - 1),
            Bidegree::Cohomological => (p + r, q - r + 1),
        }
    }
}

/// One differential with its chosen rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialRank {
    pub page: i64,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub rank: u64,
}

const MAX_COLUMNS: usize = 4;
const MAX_TOTAL_RANK: u64 = 64;

/// Search for a pattern of differential ranks under which the sequence
/// degenerates to `target` (total rank per total degree `p+q`; absent
/// degrees mean rank zero). Directions in `forbidden` (pairs of source and
/// target column) are pinned to rank zero.
///
/// Returns one consistent assignment, or `None` when the target is
/// unreachable. Errors when the page exceeds the exhaustive-search bounds.
pub fn degeneration_feasibility(
    page: &SpectralPage,
    forbidden: &[(i64, i64)],
    target: &BTreeMap<i64, u64>,
    bidegree: Bidegree,
) -> Result<Option<Vec<DifferentialRank>>, Error> {
    let columns = page.columns();
    let total_rank = page.total_rank();
    if columns.len() > MAX_COLUMNS || total_rank > MAX_TOTAL_RANK {
        return Err(Error::SearchBoundExceeded {
            columns: columns.len(),
            total_rank,
        });
    }

    let dims: BTreeMap<(i64, i64), u64> = page
        .entries
        .keys()
        .map(|&slot| (slot, page.rank_at(slot.0, slot.1)))
        .collect();

    // Differentials preserve the Euler characteristic, so a mismatch proves
    // infeasibility outright.
    let page_euler: i64 = dims
        .iter()
        .map(|(&(p, q), &r)| if (p + q).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
        .sum();
    let target_euler: i64 = target
        .iter()
        .map(|(&d, &r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
        .sum();
    if page_euler != target_euler {
        return Ok(None);
    }

    let span = match (columns.first(), columns.last()) {
        (Some(min), Some(max)) => max - min,
        _ => 0,
    };

    Ok(search(&dims, 1, span, forbidden, target, bidegree))
}

fn matches_target(dims: &BTreeMap<(i64, i64), u64>, target: &BTreeMap<i64, u64>) -> bool {
    let mut totals: BTreeMap<i64, u64> = BTreeMap::new();
    for (&(p, q), &r) in dims {
        if r > 0 {
            *totals.entry(p + q).or_default() += r;
        }
    }
    let want: BTreeMap<i64, u64> = target
        .iter()
        .filter(|(_, &r)| r > 0)
        .map(|(&d, &r)| (d, r))
        .collect();
    totals == want
}

fn search(
    dims: &BTreeMap<(i64, i64), u64>,
    r: i64,
    span: i64,
    forbidden: &[(i64, i64)],
    target: &BTreeMap<i64, u64>,
    bidegree: Bidegree,
) -> Option<Vec<DifferentialRank>> {
    if r > span {
        return matches_target(dims, target).then(Vec::new);
    }

    // Candidate d_r arrows between populated slots.
    let arrows: Vec<((i64, i64), (i64, i64), u64)> = dims
        .iter()
        .filter(|(_, &d)| d > 0)
        .filter_map(|(&(p, q), &src_dim)| {
            let to = bidegree.target(r, p, q);
            let tgt_dim = dims.get(&to).copied().unwrap_or(0);
            if tgt_dim == 0 || forbidden.contains(&(p, to.0)) {
                return None;
            }
            Some(((p, q), to, src_dim.min(tgt_dim)))
        })
        .collect();

    // Enumerate rank choices for all arrows of this page, tracking how much
    // of each slot is consumed by outgoing plus incoming ranks.
    fn assign(
        arrows: &[((i64, i64), (i64, i64), u64)],
        idx: usize,
        used: &mut BTreeMap<(i64, i64), u64>,
        chosen: &mut Vec<DifferentialRank>,
        dims: &BTreeMap<(i64, i64), u64>,
        r: i64,
        span: i64,
        forbidden: &[(i64, i64)],
        target: &BTreeMap<i64, u64>,
        bidegree: Bidegree,
    ) -> Option<Vec<DifferentialRank>> {
        if idx == arrows.len() {
            let next: BTreeMap<(i64, i64), u64> = dims
                .iter()
                .map(|(&slot, &d)| (slot, d - used.get(&slot).copied().unwrap_or(0)))
                .collect();
            let tail = search(&next, r + 1, span, forbidden, target, bidegree)?;
            let mut all = chosen.clone();
            all.extend(tail);
            return Some(all);
        }
        let (from, to, cap) = arrows[idx];
        let cap = cap
            .min(dims[&from] - used.get(&from).copied().unwrap_or(0))
            .min(dims[&to] - used.get(&to).copied().unwrap_or(0));
        for rank in 0..=cap {
            if rank > 0 {
                *used.entry(from).or_default() += rank;
                *used.entry(to).or_default() += rank;
                chosen.push(DifferentialRank {
                    page: r,
                    from,
                    to,
                    rank,
                });
            }
            let result = assign(
                arrows, idx + 1, used, chosen, dims, r, span, forbidden, target, bidegree,
            );
            if rank > 0 {
                *used.get_mut(&from).unwrap() -= rank;
                *used.get_mut(&to).unwrap() -= rank;
                chosen.pop();
            }
            if result.is_some() {
                return result;
            }
        }
        None
    }

    let mut used = BTreeMap::new();
    let mut chosen = Vec::new();
    assign(
        &arrows, 0, &mut used, &mut chosen, dims, r, span, forbidden, target, bidegree,
    )
}
