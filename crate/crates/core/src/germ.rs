//! Built-in germ generators: minimal resolution dual graphs of standard
//! plane-curve singularities, with the first-blowup vertex tagged.

use num_integer::Integer;

use crate::error::Error;
use crate::graph::{DualGraph, VertexId};

/// A generated dual graph together with the vertex created by the first
/// blowup of the origin.
#[derive(Debug, Clone)]
pub struct GermGraph {
    pub graph: DualGraph,
    pub first_blowup: VertexId,
}

/// Smooth branch: one blowup of a smooth point. Single (-1) vertex of
/// multiplicity 1 carrying the arrow.
pub fn smooth() -> GermGraph {
    let mut g = DualGraph::new();
    g.add_vertex("E1", -1);
    g.add_arrow("E1");
    GermGraph {
        graph: g,
        first_blowup: "E1".into(),
    }
}

/// Generic homogeneous germ of degree `k` (`x^k - y^k` up to coordinates):
/// one blowup separates the k lines, leaving a single (-1) vertex with k
/// arrows.
pub fn homogeneous(k: i64) -> Result<GermGraph, Error> {
    if k < 1 {
        return Err(Error::InvalidParams(format!("degree k = {k} must be >= 1")));
    }
    let mut g = DualGraph::new();
    g.add_vertex("E1", -1);
    for _ in 0..k {
        g.add_arrow("E1");
    }
    Ok(GermGraph {
        graph: g,
        first_blowup: "E1".into(),
    })
}

/// Irreducible germ with one Puiseux pair, `x^p - y^q` for coprime
/// `2 <= p < q`. The minimal resolution is built by following the blowup
/// process: the Euclidean algorithm on `(p, q)` drives which infinitely-near
/// point is blown up next, and each new exceptional curve receives the sum
/// of the multiplicities of the curves through that point plus the local
/// multiplicity of the strict transform.
pub fn puiseux(p: i64, q: i64) -> Result<GermGraph, Error> {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    if p < 2 {
        return Err(Error::InvalidParams(format!(
            "puiseux pair ({p}, {q}) needs p >= 2; use the smooth or homogeneous generator"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParams(format!(
            "puiseux pair ({p}, {q}) must be coprime"
        )));
    }

    fn blow_up(
        g: &mut DualGraph,
        mults: &mut Vec<i64>,
        next: &mut usize,
        cx: Option<usize>,
        cy: Option<usize>,
        local_mult: i64,
    ) -> usize {
        let id = format!("E{next}");
        *next += 1;
        g.add_vertex(id.clone(), -1);
        let mut m_new = local_mult;
        for c in [cx, cy].into_iter().flatten() {
            m_new += mults[c];
            let cid = g.vertices[c].id.clone();
            g.vertices[c].self_intersection -= 1;
            g.add_edge(cid, id.clone());
        }
        if let (Some(i), Some(j)) = (cx, cy) {
            // The two carriers met at the blown-up point; they are now
            // separated by the new curve.
            let (ia, ib) = (g.vertices[i].id.clone(), g.vertices[j].id.clone());
            let pos = g
                .edges
                .iter()
                .position(|(x, y)| (x == &ia && y == &ib) || (x == &ib && y == &ia))
                .expect("carriers were adjacent");
            g.edges.remove(pos);
        }
        mults.push(m_new);
        mults.len() - 1
    }

    let mut g = DualGraph::new();
    let mut mults: Vec<i64> = Vec::new();
    let mut next = 1usize;

    // Carriers: the exceptional curves through the current singular point of
    // the strict transform, one along each local coordinate axis.
    let mut cx: Option<usize> = None;
    let mut cy: Option<usize> = None;
    let (mut a, mut b) = (p, q);

    loop {
        if a == 1 && b == 1 {
            let e = blow_up(&mut g, &mut mults, &mut next, cx, cy, 1);
            g.add_arrow(g.vertices[e].id.clone());
            break;
        }
        if a < b {
            let e = blow_up(&mut g, &mut mults, &mut next, cx, cy, a);
            b -= a;
            cy = Some(e);
        } else {
            let e = blow_up(&mut g, &mut mults, &mut next, cx, cy, b);
            a -= b;
            cx = Some(e);
        }
    }

    Ok(GermGraph {
        graph: g,
        first_blowup: "E1".into(),
    })
}

/// The simple cusp `x^2 - y^3`: the three-vertex chain with multiplicities
/// (2, 3, 6) and the arrow on the central curve.
pub fn cusp() -> GermGraph {
    puiseux(2, 3).expect("(2, 3) is a valid puiseux pair")
}

/// Resolve a generator name with parameters, as accepted on the command
/// line: `cusp`, `smooth`, `xk-yk k`, `xp-yq p q`.
pub fn by_name(name: &str, params: &[i64]) -> Result<GermGraph, Error> {
    match (name, params) {
        ("cusp", []) => Ok(cusp()),
        ("smooth", []) => Ok(smooth()),
        ("xk-yk", [k]) => homogeneous(*k),
        ("xp-yq", [p, q]) => puiseux(*p, *q),
        ("cusp" | "smooth", _) => Err(Error::InvalidParams(format!(
            "generator `{name}` takes no parameters"
        ))),
        ("xk-yk", _) => Err(Error::InvalidParams("xk-yk takes one parameter k".into())),
        ("xp-yq", _) => Err(Error::InvalidParams(
            "xp-yq takes two coprime parameters p q".into(),
        )),
        _ => Err(Error::InvalidParams(format!(
            "unknown germ `{name}`; available: cusp, smooth, xk-yk, xp-yq"
        ))),
    }
}

/// The standard test corpus used across the crate.
pub fn corpus() -> Vec<(String, GermGraph)> {
    let mut out = vec![("cusp".to_string(), cusp())];
    for k in 2..=6 {
        out.push((format!("xk-yk {k}"), homogeneous(k).unwrap()));
    }
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
        out.push((format!("xp-yq {p} {q}"), puiseux(p, q).unwrap()));
    }
    out.push(("smooth".to_string(), smooth()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorate::{solve_discrepancies, solve_multiplicities};
    use crate::rat_int;

    #[test]
    fn cusp_is_the_three_vertex_chain() {
        let germ = cusp();
        let g = &germ.graph;
        assert!(g.validate().passes());
        assert_eq!(g.vertices.len(), 3);
        let m = solve_multiplicities(g).unwrap();
        assert_eq!(m["E1"], 2);
        assert_eq!(m["E2"], 3);
        assert_eq!(m["E3"], 6);
        let a = solve_discrepancies(g).unwrap();
        assert_eq!(a["E1"], rat_int(1));
        assert_eq!(a["E2"], rat_int(2));
        assert_eq!(a["E3"], rat_int(4));
        // Chain shape: both tips meet the central curve, the arrow is there.
        assert_eq!(g.valence("E3"), 3);
        assert_eq!(g.arrows.len(), 1);
        assert_eq!(g.arrows[0].attached_to, "E3");
        assert_eq!(germ.first_blowup, "E1");
    }

    #[test]
    fn homogeneous_degree_four() {
        let germ = homogeneous(4).unwrap();
        assert!(germ.graph.validate().passes());
        assert_eq!(germ.graph.vertices.len(), 1);
        assert_eq!(germ.graph.arrows.len(), 4);
        assert_eq!(solve_multiplicities(&germ.graph).unwrap()["E1"], 4);
    }

    #[test]
    fn xp_yq_2_3_is_isomorphic_to_cusp() {
        let a = puiseux(2, 3).unwrap();
        let b = cusp();
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn corpus_graphs_are_valid_with_positive_multiplicities() {
        for (name, germ) in corpus() {
            assert!(germ.graph.validate().passes(), "{name}");
            let m = solve_multiplicities(&germ.graph).unwrap();
            assert!(m.values().all(|&v| v >= 1), "{name}");
            // The first-blowup vertex always realizes the minimal multiplicity.
            let min = m.values().min().copied().unwrap();
            assert_eq!(m[&germ.first_blowup], min, "{name}");
        }
    }

    #[test]
    fn puiseux_rejects_bad_pairs() {
        assert!(matches!(puiseux(2, 4), Err(Error::InvalidParams(_))));
        assert!(matches!(puiseux(1, 5), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn principality_holds_on_every_generated_graph() {
        for (name, germ) in corpus() {
            let g = &germ.graph;
            let m = solve_multiplicities(g).unwrap();
            let matrix = g.intersection_matrix();
            for (i, v) in g.vertices.iter().enumerate() {
                let mut total = g.arrow_load(&v.id);
                for (j, w) in g.vertices.iter().enumerate() {
                    total += matrix[i][j] * m[&w.id];
                }
                assert_eq!(total, 0, "{name} at {}", v.id);
            }
        }
    }
}
