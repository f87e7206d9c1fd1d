//! Topology of the cyclic covers over the open strata of the exceptional
//! divisor, and their Borel-Moore homology ranks over Z2.
//!
//! Over a genus-zero stratum with k punctures, the degree-m cover is the
//! Z_m-cover whose monodromy around the puncture cut out by a neighbor of
//! multiplicity m_j is the residue `m_j mod m` (from the local normal
//! crossing model `f = unit * z_i^{m_i} z_j^{m_j}`). Component and puncture
//! counts follow from the subgroup generated by the residues; genus follows
//! from the Euler characteristic.
//!
//! For an open orientable surface there is no torsion, so the Z2 ranks equal
//! the integer ranks, and Poincare duality gives `h^BM_k = h^{2-k}`.

use num_integer::Integer;

use crate::decorate::Decoration;
use crate::error::Error;
use crate::graph::{DualGraph, VertexId};

/// Shape shared by all connected components of one cover (the deck group
/// acts transitively on them).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentShape {
    pub genus: i64,
    pub punctures: i64,
    pub euler: i64,
}

/// Topology of the cyclic cover over one open stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCover {
    pub vertex: VertexId,
    /// Covering degree, equal to the multiplicity of the vertex.
    pub degree: i64,
    pub components: i64,
    pub per_component: ComponentShape,
    pub total_euler: i64,
    /// Borel-Moore ranks `[h0, h1, h2]` over Z2, totalled over components.
    pub bm_ranks: [u64; 3],
}

/// Monodromy residues of the cover at the punctures of the stratum of `id`:
/// one residue `m_j mod m_i` per incident edge and `r mod m_i` per arrow.
pub fn puncture_residues(
    g: &DualGraph,
    dec: &Decoration,
    id: &str,
) -> Result<Vec<i64>, Error> {
    let m = dec.mult_of(id)?;
    let mut residues = Vec::new();
    for (a, b) in &g.edges {
        if a == id {
            residues.push(dec.mult_of(b)?.rem_euclid(m));
        } else if b == id {
            residues.push(dec.mult_of(a)?.rem_euclid(m));
        }
    }
    for arrow in g.arrows_at(id) {
        residues.push(arrow.branch_multiplicity.rem_euclid(m));
    }
    Ok(residues)
}

/// Compute the cover over the open stratum of `id`. The stratum must have
/// genus zero and at least one puncture.
pub fn stratum_cover(g: &DualGraph, dec: &Decoration, id: &str) -> Result<StratumCover, Error> {
    let vertex = g.vertex(id).ok_or_else(|| Error::MissingDecoration {
        vertex: id.to_string(),
    })?;
    if vertex.genus != 0 {
        return Err(Error::PositiveGenusUnsupported {
            vertex: id.to_string(),
        });
    }
    let residues = puncture_residues(g, dec, id)?;
    if residues.is_empty() {
        return Err(Error::ClosedStratum {
            vertex: id.to_string(),
        });
    }
    let m = dec.mult_of(id)?;

    // The puncture loops multiply to 1 in the fundamental group of the
    // punctured sphere, so their residues must sum to 0 mod m. Principality
    // guarantees this on solved decorations; reject synthetic ones that
    // break it, since no cover realizes them.
    let residue_sum: i64 = residues.iter().sum();
    if residue_sum.rem_euclid(m) != 0 {
        return Err(Error::InconsistentResidues {
            vertex: id.to_string(),
            sum: residue_sum,
            modulus: m,
        });
    }

    // Components = index of the subgroup of Z_m generated by the residues.
    let components = residues.iter().fold(m, |acc, &r| acc.gcd(&r));
    // Over the puncture of residue r the cover has gcd(m, r) punctures,
    // split evenly among the components.
    let total_punctures: i64 = residues.iter().map(|&r| m.gcd(&r)).sum();
    debug_assert_eq!(total_punctures % components, 0);

    let base_euler = 2 - residues.len() as i64;
    let total_euler = m * base_euler;
    let punctures = total_punctures / components;
    let euler = total_euler / components;
    // chi = 2 - 2g - n on each component.
    let two_genus = 2 - punctures - euler;
    assert!(
        two_genus >= 0 && two_genus % 2 == 0,
        "component Euler characteristic is inconsistent at {id}"
    );
    let per_component = ComponentShape {
        genus: two_genus / 2,
        punctures,
        euler,
    };

    let cover = StratumCover {
        vertex: id.to_string(),
        degree: m,
        components,
        per_component,
        total_euler,
        bm_ranks: [0, 0, 0],
    };
    let ranks = bm_ranks(&cover);
    Ok(StratumCover {
        bm_ranks: ranks,
        ..cover
    })
}

/// Borel-Moore ranks of an open orientable surface: `h0 = 0`,
/// `h2 = components`, `h1 = sum(2g + n - 1)` over components.
pub fn bm_ranks(cover: &StratumCover) -> [u64; 3] {
    if cover.components == 0 {
        return [0, 0, 0];
    }
    let c = cover.per_component;
    let h1 = cover.components * (2 * c.genus + c.punctures - 1);
    let h2 = cover.components;
    let ranks = [0, h1 as u64, h2 as u64];
    debug_assert_eq!(h2 - h1, cover.total_euler);
    ranks
}

/// Stratum record for a branch of the strict transform.
///
/// In the Milnor-ball regime the piece of the fiber over a branch is a
/// product collar, so its Borel-Moore homology vanishes; the record carries
/// all-zero ranks. With `literal_mode` the record instead reports the
/// punctured-disk ranks `[0, 0, 1]` for the branch piece, keeping Euler
/// characteristic 0 (a cone minus its vertex).
pub fn proper_transform_stratum(
    g: &DualGraph,
    arrow_index: usize,
    literal_mode: bool,
) -> Result<StratumCover, Error> {
    let arrow = g
        .arrows
        .get(arrow_index)
        .ok_or_else(|| Error::InvalidParams(format!("no arrow with index {arrow_index}")))?;
    let vertex = format!("arrow{}@{}", arrow_index, arrow.attached_to);
    if literal_mode {
        Ok(StratumCover {
            vertex,
            degree: arrow.branch_multiplicity,
            components: 1,
            per_component: ComponentShape {
                genus: 0,
                punctures: 2,
                euler: 0,
            },
            total_euler: 0,
            bm_ranks: [0, 0, 1],
        })
    } else {
        Ok(StratumCover {
            vertex,
            degree: arrow.branch_multiplicity,
            components: 0,
            per_component: ComponentShape {
                genus: 0,
                punctures: 0,
                euler: 0,
            },
            total_euler: 0,
            bm_ranks: [0, 0, 0],
        })
    }
}
