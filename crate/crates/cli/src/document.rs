//! The graph document: the structured text format accepted and emitted by
//! the tool. JSON with exact rationals rendered as `p/q` strings, unknown
//! fields rejected, lossless round-trips.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use radzero::{DualGraph, Error, Rat, VertexId};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub schema_version: String,
    pub graph: GraphBody,
    /// Optional ample coefficients b_i, exact rationals as "p/q" strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Tags>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphBody {
    pub vertices: Vec<VertexBody>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub arrows: Vec<ArrowBody>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VertexBody {
    pub id: String,
    pub self_intersection: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub genus: u32,
}

fn is_zero(g: &u32) -> bool {
    *g == 0
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowBody {
    pub attached_to: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub branch_multiplicity: i64,
}

fn one() -> i64 {
    1
}

fn is_one(m: &i64) -> bool {
    *m == 1
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Tags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_blowup: Option<String>,
}

impl GraphDocument {
    pub fn from_graph(g: &DualGraph, first_blowup: Option<&VertexId>) -> Self {
        GraphDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            graph: GraphBody {
                vertices: g
                    .vertices
                    .iter()
                    .map(|v| VertexBody {
                        id: v.id.clone(),
                        self_intersection: v.self_intersection,
                        genus: v.genus,
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|(a, b)| [a.clone(), b.clone()])
                    .collect(),
                arrows: g
                    .arrows
                    .iter()
                    .map(|a| ArrowBody {
                        attached_to: a.attached_to.clone(),
                        branch_multiplicity: a.branch_multiplicity,
                    })
                    .collect(),
            },
            ample: None,
            tags: first_blowup.map(|v| Tags {
                first_blowup: Some(v.clone()),
            }),
        }
    }

    pub fn to_graph(&self) -> DualGraph {
        let mut g = DualGraph::new();
        for v in &self.graph.vertices {
            g.add_vertex_with_genus(v.id.clone(), v.self_intersection, v.genus);
        }
        for [a, b] in &self.graph.edges {
            g.add_edge(a.clone(), b.clone());
        }
        for a in &self.graph.arrows {
            g.add_arrow_with_multiplicity(a.attached_to.clone(), a.branch_multiplicity);
        }
        g
    }

    pub fn first_blowup(&self) -> Option<&String> {
        self.tags.as_ref().and_then(|t| t.first_blowup.as_ref())
    }

    /// Parsed ample coefficients, if the document carries them.
    pub fn ample_coefficients(&self) -> Result<Option<BTreeMap<VertexId, Rat>>, Error> {
        match &self.ample {
            None => Ok(None),
            Some(map) => {
                let mut out = BTreeMap::new();
                for (k, v) in map {
                    out.insert(k.clone(), parse_rational(v)?);
                }
                Ok(Some(out))
            }
        }
    }

    pub fn serialize(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

/// Parse a document, reporting schema problems with serde's line/column
/// diagnostics and structural problems via validation.
pub fn parse_graph(text: &str) -> Result<GraphDocument, Error> {
    let doc: GraphDocument = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParams(format!("document schema: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidParams(format!(
            "unsupported schema_version {:?}, expected {:?}",
            doc.schema_version, SCHEMA_VERSION
        )));
    }
    doc.to_graph().require_valid()?;
    Ok(doc)
}

/// Exact rational from an integer or `p/q` string.
pub fn parse_rational(text: &str) -> Result<Rat, Error> {
    let parse_int = |s: &str| -> Result<radzero::Int, Error> {
        s.trim()
            .parse::<radzero::Int>()
            .map_err(|_| Error::InvalidParams(format!("bad rational component {s:?}")))
    };
    match text.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == radzero::Int::from(0) {
                return Err(Error::InvalidParams("rational with denominator 0".into()));
            }
            Ok(Rat::new(parse_int(num)?, den))
        }
    }
}

/// Render an exact rational as an integer or `p/q` string.
pub fn render_rational(value: &Rat) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
