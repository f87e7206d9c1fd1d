//! m-separating refinement: blow up intersection points until any two
//! meeting components have multiplicity sum exceeding m.
//!
//! Each blowup inserts a (-1) vertex carrying the sum of the two
//! multiplicities, so every new intersection sum strictly exceeds the one it
//! replaces and the refinement terminates. Decorations are updated
//! incrementally; re-solving on the refined graph gives the same values.
//! Ample coefficients are dropped: the pullback of an ample divisor along a
//! blowup is no longer ample, and a fresh one is chosen on the refined graph.

use std::collections::BTreeSet;

use num_traits::One;

use crate::decorate::Decoration;
use crate::error::Error;
use crate::graph::{DualGraph, VertexId};
use crate::Rat;

/// An intersection point of the total transform: an edge between two
/// exceptional curves, or an arrow attachment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    Edge { index: usize, pair: (VertexId, VertexId) },
    Arrow { index: usize, vertex: VertexId },
}

impl Site {
    pub fn describe(&self) -> String {
        match self {
            Site::Edge { pair, .. } => format!("edge ({}, {})", pair.0, pair.1),
            Site::Arrow { vertex, .. } => format!("arrow at {vertex}"),
        }
    }
}

/// Multiplicity sum at a site; arrows count with their branch multiplicity.
fn site_sum(g: &DualGraph, dec: &Decoration, site: &Site) -> Result<i64, Error> {
    Ok(match site {
        Site::Edge { pair, .. } => dec.mult_of(&pair.0)? + dec.mult_of(&pair.1)?,
        Site::Arrow { index, vertex } => {
            dec.mult_of(vertex)? + g.arrows[*index].branch_multiplicity
        }
    })
}

fn sites(g: &DualGraph) -> Vec<Site> {
    let mut out = Vec::new();
    for (index, (a, b)) in g.edges.iter().enumerate() {
        out.push(Site::Edge {
            index,
            pair: (a.clone(), b.clone()),
        });
    }
    for (index, arrow) in g.arrows.iter().enumerate() {
        out.push(Site::Arrow {
            index,
            vertex: arrow.attached_to.clone(),
        });
    }
    out
}

/// All sites whose multiplicity sum is `<= m`.
pub fn separation_violations(
    g: &DualGraph,
    dec: &Decoration,
    m: i64,
) -> Result<Vec<Site>, Error> {
    let mut out = Vec::new();
    for site in sites(g) {
        if site_sum(g, dec, &site)? <= m {
            out.push(site);
        }
    }
    Ok(out)
}

/// True when every intersection satisfies `m_i + m_j > m`.
pub fn is_separated(g: &DualGraph, dec: &Decoration, m: i64) -> Result<bool, Error> {
    Ok(separation_violations(g, dec, m)?.is_empty())
}

/// Return `Err(NotSeparated)` naming the first failing site.
pub fn require_separated(g: &DualGraph, dec: &Decoration, m: i64) -> Result<(), Error> {
    match separation_violations(g, dec, m)?.first() {
        None => Ok(()),
        Some(site) => Err(Error::NotSeparated {
            m,
            site: site.describe(),
            sum: site_sum(g, dec, site)?,
        }),
    }
}

fn fresh_id(g: &DualGraph, counter: &mut u64) -> VertexId {
    let taken: BTreeSet<&str> = g.vertices.iter().map(|v| v.id.as_str()).collect();
    loop {
        *counter += 1;
        let id = format!("s{counter}");
        if !taken.contains(id.as_str()) {
            return id;
        }
    }
}

fn decrement_self_intersection(g: &mut DualGraph, id: &str) {
    let k = g.vertex_index(id).expect("vertex exists");
    g.vertices[k].self_intersection -= 1;
}

fn insert_decorated_vertex(
    g: &mut DualGraph,
    dec: &mut Decoration,
    id: &VertexId,
    mult: i64,
    discrepancy: Rat,
) {
    g.add_vertex(id.clone(), -1);
    dec.mult.insert(id.clone(), mult);
    dec.discrepancy.insert(id.clone(), discrepancy);
}

/// Blow up the intersection point of the edge at `edge_index`.
///
/// The new vertex gets `m = m_i + m_j` and `a = a_i + a_j + 1`; both
/// neighbors lose one self-intersection and the edge is replaced by the two
/// edges through the new vertex.
pub fn blow_up_edge(
    g: &mut DualGraph,
    dec: &mut Decoration,
    edge_index: usize,
    counter: &mut u64,
) -> Result<VertexId, Error> {
    let (a, b) = g.edges[edge_index].clone();
    let id = fresh_id(g, counter);
    let mult = dec.mult_of(&a)? + dec.mult_of(&b)?;
    let disc = dec.discrepancy_of(&a)? + dec.discrepancy_of(&b)? + Rat::one();
    insert_decorated_vertex(g, dec, &id, mult, disc);
    g.edges.remove(edge_index);
    g.add_edge(a.clone(), id.clone());
    g.add_edge(id.clone(), b.clone());
    decrement_self_intersection(g, &a);
    decrement_self_intersection(g, &b);
    dec.ample = None;
    Ok(id)
}

/// Blow up the attachment point of the arrow at `arrow_index`.
///
/// The arrow and the old vertex each meet the new exceptional curve: the
/// attachment is replaced by the edge (old, new) and the arrow moves to the
/// new vertex. The new vertex gets `m = m_i + r` and `a = a_i + 1`.
pub fn blow_up_arrow(
    g: &mut DualGraph,
    dec: &mut Decoration,
    arrow_index: usize,
    counter: &mut u64,
) -> Result<VertexId, Error> {
    let old = g.arrows[arrow_index].attached_to.clone();
    let r = g.arrows[arrow_index].branch_multiplicity;
    let id = fresh_id(g, counter);
    let mult = dec.mult_of(&old)? + r;
    let disc = dec.discrepancy_of(&old)? + Rat::one();
    insert_decorated_vertex(g, dec, &id, mult, disc);
    g.arrows[arrow_index].attached_to = id.clone();
    g.add_edge(old.clone(), id.clone());
    decrement_self_intersection(g, &old);
    dec.ample = None;
    Ok(id)
}

/// Blow up a free point of the curve `vertex` (a point on no other
/// component). The new vertex inherits `m = m_i` and gets `a = a_i + 1`.
pub fn blow_up_free(
    g: &mut DualGraph,
    dec: &mut Decoration,
    vertex: &str,
    counter: &mut u64,
) -> Result<VertexId, Error> {
    let mult = dec.mult_of(vertex)?;
    let disc = dec.discrepancy_of(vertex)? + Rat::one();
    let id = fresh_id(g, counter);
    insert_decorated_vertex(g, dec, &id, mult, disc);
    g.add_edge(vertex.to_string(), id.clone());
    decrement_self_intersection(g, vertex);
    dec.ample = None;
    Ok(id)
}

/// Refine `(g, dec)` until it is m-separating. Returns the refined pair;
/// the input is left untouched. Idempotent: a separated graph comes back
/// unchanged (with any ample coefficients preserved).
pub fn separate(
    g: &DualGraph,
    dec: &Decoration,
    m: i64,
) -> Result<(DualGraph, Decoration), Error> {
    let mut g = g.clone();
    let mut dec = dec.clone();
    let mut counter = 0u64;

    loop {
        let bad = separation_violations(&g, &dec, m)?;
        match bad.first() {
            None => break,
            Some(Site::Edge { index, .. }) => {
                blow_up_edge(&mut g, &mut dec, *index, &mut counter)?;
            }
            Some(Site::Arrow { index, .. }) => {
                blow_up_arrow(&mut g, &mut dec, *index, &mut counter)?;
            }
        }
    }
    Ok((g, dec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ;
    use crate::rat_int;

    fn decorated_cusp() -> (DualGraph, Decoration) {
        let g = germ::cusp().graph;
        let dec = Decoration::solve(&g).unwrap();
        (g, dec)
    }

    #[test]
    fn cusp_is_already_six_separated() {
        let (g, dec) = decorated_cusp();
        assert!(is_separated(&g, &dec, 6).unwrap());
        let (g2, dec2) = separate(&g, &dec, 6).unwrap();
        assert_eq!(g, g2);
        assert_eq!(dec, dec2);
    }

    #[test]
    fn incremental_decoration_matches_resolve() {
        for m in [6, 9, 12] {
            for (name, germ) in germ::corpus() {
                let dec = Decoration::solve(&germ.graph).unwrap();
                let (g2, dec2) = separate(&germ.graph, &dec, m).unwrap();
                assert!(g2.validate().passes(), "{name} m={m}");
                let resolved = Decoration::solve(&g2).unwrap();
                assert_eq!(dec2.mult, resolved.mult, "{name} m={m}");
                assert_eq!(dec2.discrepancy, resolved.discrepancy, "{name} m={m}");
                assert!(is_separated(&g2, &dec2, m).unwrap(), "{name} m={m}");
            }
        }
    }

    #[test]
    fn separate_is_idempotent() {
        let (g, dec) = decorated_cusp();
        let (g1, dec1) = separate(&g, &dec, 12).unwrap();
        let (g2, dec2) = separate(&g1, &dec1, 12).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(dec1, dec2);
    }

    #[test]
    fn arrow_blowup_traced_by_hand_for_k_2() {
        // Single vertex of multiplicity 2 with two arrows; m = 3 forces one
        // blowup per arrow (sum 2+1=3), each creating multiplicity 3; then
        // every sum exceeds 3 (edge 2+3=5, arrows 3+1=4).
        let germ = germ::homogeneous(2).unwrap();
        let dec = Decoration::solve(&germ.graph).unwrap();
        assert_eq!(dec.mult["E1"], 2);
        let (g2, dec2) = separate(&germ.graph, &dec, 3).unwrap();
        assert_eq!(g2.vertices.len(), 3);
        for arrow in &g2.arrows {
            assert_ne!(arrow.attached_to, "E1");
            assert_eq!(dec2.mult[&arrow.attached_to], 3);
        }
        assert!(is_separated(&g2, &dec2, 3).unwrap());
    }

    #[test]
    fn extra_blowup_on_cusp_edge_gets_discrepancy_six() {
        // Blowing up the (E1, E3) edge inserts a vertex with
        // a = a_1 + a_3 + 1 = 1 + 4 + 1 = 6; re-solving agrees.
        let (mut g, mut dec) = decorated_cusp();
        let idx = g
            .edges
            .iter()
            .position(|(a, b)| (a == "E1" && b == "E3") || (a == "E3" && b == "E1"))
            .unwrap();
        let mut counter = 0;
        let id = blow_up_edge(&mut g, &mut dec, idx, &mut counter).unwrap();
        assert_eq!(dec.discrepancy[&id], rat_int(6));
        assert_eq!(dec.mult[&id], 8);
        let resolved = Decoration::solve(&g).unwrap();
        assert_eq!(resolved.discrepancy[&id], rat_int(6));
        assert_eq!(resolved.mult[&id], 8);
    }

    #[test]
    fn free_blowup_keeps_decoration_consistent() {
        let (mut g, mut dec) = decorated_cusp();
        let mut counter = 0;
        let id = blow_up_free(&mut g, &mut dec, "E3", &mut counter).unwrap();
        assert_eq!(dec.mult[&id], 6);
        assert_eq!(dec.discrepancy[&id], rat_int(5));
        assert!(g.validate().passes());
        let resolved = Decoration::solve(&g).unwrap();
        assert_eq!(dec.mult, resolved.mult);
        assert_eq!(dec.discrepancy, resolved.discrepancy);
    }
}
