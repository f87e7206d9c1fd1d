//! Report assembly: one machine-readable JSON tree per run, plus the
//! human-readable text rendering. Exact values are rendered as integers or
//! `p/q` strings so they survive round-trips; output is deterministic for a
//! fixed (input, flags, seed).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use radzero::decorate::AmpleReport;
use radzero::dynamics::{CalculusReport, SeparationReport};
use radzero::feasibility::DifferentialRank;
use radzero::graph::ValidationReport;
use radzero::invariants::InvariantReport;
use radzero::page::SpectralPage;
use radzero::Decoration;

use crate::document::{render_rational, GraphDocument};

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool_version: String,
    pub input_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(input_bytes: &[u8], seed: Option<u64>) -> Self {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(input_bytes);
        Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256: format!("{:x}", hasher.finalize()),
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationDoc {
    pub valid: bool,
    pub connected: bool,
    pub has_arrow: bool,
    pub negative_definite: bool,
    /// Leading principal minors of -M, as computed.
    pub neg_minors: Vec<String>,
    pub violations: Vec<String>,
}

impl ValidationDoc {
    pub fn from(report: &ValidationReport) -> Self {
        ValidationDoc {
            valid: report.passes(),
            connected: report.connected,
            has_arrow: report.has_arrow,
            negative_definite: !report
                .violations
                .iter()
                .any(|v| matches!(v, radzero::graph::Violation::NotNegativeDefinite { .. })),
            neg_minors: report.neg_minors.iter().map(|m| m.to_string()).collect(),
            violations: report.violations.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecorationDoc {
    pub mult: BTreeMap<String, i64>,
    pub discrepancy: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ample: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub non_integral_discrepancy_warning: bool,
}

impl DecorationDoc {
    pub fn from(dec: &Decoration) -> Self {
        DecorationDoc {
            mult: dec.mult.clone(),
            discrepancy: dec
                .discrepancy
                .iter()
                .map(|(k, v)| (k.clone(), render_rational(v)))
                .collect(),
            ample: dec.ample.as_ref().map(|b| {
                b.iter()
                    .map(|(k, v)| (k.clone(), render_rational(v)))
                    .collect()
            }),
            non_integral_discrepancy_warning: dec.has_non_integral_discrepancy(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AmpleDoc {
    pub ample: bool,
    /// Intersection numbers H . D_i, exact.
    pub margins: BTreeMap<String, String>,
}

impl AmpleDoc {
    pub fn from(report: &AmpleReport) -> Self {
        AmpleDoc {
            ample: report.ample,
            margins: report
                .margins
                .iter()
                .map(|(k, v)| (k.clone(), render_rational(v)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryDoc {
    pub p: i64,
    pub q: i64,
    pub rank: u64,
    pub contributions: Vec<ContributionDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContributionDoc {
    pub vertex: String,
    pub bm_degree: i64,
    pub rank: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PageDoc {
    pub m: i64,
    pub n: i64,
    pub empty: bool,
    pub entries: Vec<EntryDoc>,
    pub cz: BTreeMap<String, i64>,
    /// Vertices by ascending action; inner groups share the exact key.
    pub action_order: Vec<Vec<String>>,
    /// Column directions along which every differential vanishes.
    pub forbidden_differentials: Vec<[i64; 2]>,
    /// sum (-1)^(p+q) rank over the page.
    pub euler_characteristic: i64,
}

impl PageDoc {
    pub fn from(page: &SpectralPage, action_order: Vec<Vec<String>>) -> Self {
        let forbidden = radzero::page::forbidden_arrows(page);
        PageDoc {
            m: page.m,
            n: page.n,
            empty: page.is_empty(),
            entries: page
                .entries
                .iter()
                .map(|(&(p, q), cs)| EntryDoc {
                    p,
                    q,
                    rank: cs.iter().map(|c| c.rank).sum(),
                    contributions: cs
                        .iter()
                        .map(|c| ContributionDoc {
                            vertex: c.vertex.clone(),
                            bm_degree: c.bm_degree,
                            rank: c.rank,
                        })
                        .collect(),
                })
                .collect(),
            cz: page.cz.iter().map(|(k, &v)| (k.clone(), v)).collect(),
            action_order,
            forbidden_differentials: forbidden.iter().map(|&(a, b)| [a, b]).collect(),
            euler_characteristic: page.euler_characteristic(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TangentConeDoc {
    pub vertex: String,
    pub bm_ranks: [u64; 3],
    pub degree_shift: i64,
    pub non_reduced_warning: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsDoc {
    pub milnor: i64,
    pub multiplicity: i64,
    pub euler_fiber: i64,
    /// Pairs [m, Lefschetz(m)].
    pub lefschetz: Vec<[i64; 2]>,
    /// Zeta coefficients from t^0 upward, exact.
    pub zeta: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_cone: Option<TangentConeDoc>,
}

impl InvariantsDoc {
    pub fn from(report: &InvariantReport) -> Self {
        InvariantsDoc {
            milnor: report.milnor,
            multiplicity: report.multiplicity,
            euler_fiber: report.euler_fiber,
            lefschetz: report.lefschetz.iter().map(|(&m, &l)| [m, l]).collect(),
            zeta: report.zeta_coeffs.iter().map(render_rational).collect(),
            tangent_cone: report.tangent_cone.as_ref().map(|t| TangentConeDoc {
                vertex: t.vertex.clone(),
                bm_ranks: t.bm_ranks,
                degree_shift: t.degree_shift,
                non_reduced_warning: t.non_reduced_warning,
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DynamicsDoc {
    pub m: i64,
    pub samples_per_stratum: usize,
    pub seed: u64,
    pub pure_strata_fixed: BTreeMap<String, bool>,
    pub mixed_strata: usize,
    pub mixed_fixed_points_found: usize,
    pub rotation_sum_worst_deviation: f64,
    pub bound_min: f64,
    pub bound_max: f64,
    pub near_misses: usize,
    pub calculus: Vec<CalculusCheckDoc>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CalculusCheckDoc {
    pub name: String,
    pub samples: usize,
    pub worst_rel_err: f64,
}

impl DynamicsDoc {
    pub fn assemble(
        m: i64,
        samples: usize,
        seed: u64,
        pure_strata_fixed: BTreeMap<String, bool>,
        mixed_strata: usize,
        mixed_fixed_points_found: usize,
        rotation_sum_worst_deviation: f64,
        separation: &SeparationReport,
        calculus: &CalculusReport,
    ) -> Self {
        DynamicsDoc {
            m,
            samples_per_stratum: samples,
            seed,
            pure_strata_fixed,
            mixed_strata,
            mixed_fixed_points_found,
            rotation_sum_worst_deviation,
            bound_min: separation.min_observed,
            bound_max: separation.max_observed,
            near_misses: separation.near_misses.len(),
            calculus: calculus
                .checks
                .iter()
                .map(|c| CalculusCheckDoc {
                    name: c.name.clone(),
                    samples: c.samples,
                    worst_rel_err: c.worst_rel_err,
                })
                .collect(),
            pass: mixed_fixed_points_found == 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityDoc {
    pub m: i64,
    pub target: BTreeMap<i64, u64>,
    pub feasible: bool,
    pub pattern: Vec<DifferentialDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DifferentialDoc {
    pub page: i64,
    pub from: [i64; 2],
    pub to: [i64; 2],
    pub rank: u64,
}

impl FeasibilityDoc {
    pub fn from(m: i64, target: BTreeMap<i64, u64>, pattern: Option<&[DifferentialRank]>) -> Self {
        FeasibilityDoc {
            m,
            target,
            feasible: pattern.is_some(),
            pattern: pattern
                .unwrap_or(&[])
                .iter()
                .map(|d| DifferentialDoc {
                    page: d.page,
                    from: [d.from.0, d.from.1],
                    to: [d.to.0, d.to.1],
                    rank: d.rank,
                })
                .collect(),
        }
    }
}

/// The full machine-readable report for one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decoration: Option<DecorationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ample: Option<AmpleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suggested_ample: Option<BTreeMap<String, i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub pages: Vec<PageDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynamics: Option<DynamicsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<FeasibilityDoc>,
}

impl Report {
    pub fn new(command: &str, provenance: Provenance) -> Self {
        Report {
            command: command.to_string(),
            provenance,
            validation: None,
            graph: None,
            decoration: None,
            ample: None,
            suggested_ample: None,
            invariants: None,
            pages: Vec::new(),
            dynamics: None,
            feasibility: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "radzero {} — {}", self.provenance.tool_version, self.command);

        if let Some(v) = &self.validation {
            let _ = writeln!(out, "\nvalidation: {}", if v.valid { "valid" } else { "INVALID" });
            let _ = writeln!(
                out,
                "  connected: {}  arrows: {}  negative definite: {}",
                v.connected, v.has_arrow, v.negative_definite
            );
            if !v.neg_minors.is_empty() {
                let _ = writeln!(out, "  leading minors of -M: {}", v.neg_minors.join(", "));
            }
            for violation in &v.violations {
                let _ = writeln!(out, "  violation: {violation}");
            }
        }

        if let Some(d) = &self.decoration {
            let _ = writeln!(out, "\nvertex      mult  discrepancy  ample");
            for (id, m) in &d.mult {
                let a = d.discrepancy.get(id).cloned().unwrap_or_default();
                let b = d
                    .ample
                    .as_ref()
                    .and_then(|map| map.get(id).cloned())
                    .unwrap_or_else(|| "-".to_string());
                let _ = writeln!(out, "{id:<10}  {m:<4}  {a:<11}  {b}");
            }
            if d.non_integral_discrepancy_warning {
                let _ = writeln!(out, "warning: non-integral discrepancies (not a germ resolution)");
            }
        }

        if let Some(a) = &self.ample {
            let _ = writeln!(out, "\nample: {}", a.ample);
            for (id, margin) in &a.margins {
                let _ = writeln!(out, "  H . D({id}) = {margin}");
            }
        }

        if let Some(b) = &self.suggested_ample {
            let _ = writeln!(out, "\nsuggested ample coefficients:");
            for (id, v) in b {
                let _ = writeln!(out, "  b({id}) = {v}");
            }
        }

        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "\nMilnor number: {}", inv.milnor);
            let _ = writeln!(out, "multiplicity:  {}", inv.multiplicity);
            let _ = writeln!(out, "chi(F):        {}", inv.euler_fiber);
            let _ = writeln!(out, "\nLefschetz numbers:");
            let ms: Vec<String> = inv.lefschetz.iter().map(|p| p[0].to_string()).collect();
            let ls: Vec<String> = inv.lefschetz.iter().map(|p| p[1].to_string()).collect();
            let _ = writeln!(out, "  m:      {}", ms.join("  "));
            let _ = writeln!(out, "  Lambda: {}", ls.join("  "));
            let _ = writeln!(out, "\nzeta coefficients (t^0 ..): {}", inv.zeta.join(", "));
            if let Some(tc) = &inv.tangent_cone {
                let _ = writeln!(
                    out,
                    "\ntangent cone column at {}: BM ranks {:?}, degree shift {}{}",
                    tc.vertex,
                    tc.bm_ranks,
                    tc.degree_shift,
                    if tc.non_reduced_warning {
                        " (warning: non-reduced tangent cone)"
                    } else {
                        ""
                    }
                );
            }
        }

        for page in &self.pages {
            let _ = writeln!(out, "\nfirst page at m = {} (n = {}):", page.m, page.n);
            if page.empty {
                let _ = writeln!(out, "  empty");
            }
            for e in &page.entries {
                let contribs: Vec<String> = e
                    .contributions
                    .iter()
                    .map(|c| format!("{} H^BM_{} rank {}", c.vertex, c.bm_degree, c.rank))
                    .collect();
                let _ = writeln!(
                    out,
                    "  E1[{}, {}] = rank {}   ({})",
                    e.p,
                    e.q,
                    e.rank,
                    contribs.join(" + ")
                );
            }
            if !page.cz.is_empty() {
                let czs: Vec<String> =
                    page.cz.iter().map(|(k, v)| format!("CZ({k}) = {v}")).collect();
                let _ = writeln!(out, "  {}", czs.join(", "));
            }
            if !page.action_order.is_empty() {
                let groups: Vec<String> = page
                    .action_order
                    .iter()
                    .map(|g| g.join(" = "))
                    .collect();
                let _ = writeln!(out, "  action order (ascending): {}", groups.join(" < "));
            }
            if !page.forbidden_differentials.is_empty() {
                let fs: Vec<String> = page
                    .forbidden_differentials
                    .iter()
                    .map(|[a, b]| format!("{a} -> {b}"))
                    .collect();
                let _ = writeln!(out, "  forbidden column directions: {}", fs.join(", "));
            }
            let _ = writeln!(out, "  Euler characteristic: {}", page.euler_characteristic);
        }

        if let Some(dy) = &self.dynamics {
            let _ = writeln!(
                out,
                "\ndynamics at m = {} ({} samples per stratum, seed {}):",
                dy.m, dy.samples_per_stratum, dy.seed
            );
            for (stratum, fixed) in &dy.pure_strata_fixed {
                let _ = writeln!(out, "  pure stratum {stratum}: fixed = {fixed}");
            }
            let _ = writeln!(
                out,
                "  mixed strata: {} checked, {} fixed points found",
                dy.mixed_strata, dy.mixed_fixed_points_found
            );
            let _ = writeln!(
                out,
                "  rotation sum worst deviation: {:.3e}",
                dy.rotation_sum_worst_deviation
            );
            let _ = writeln!(
                out,
                "  exclusion bound observed in ({:.6}, {:.6}), near misses: {}",
                dy.bound_min, dy.bound_max, dy.near_misses
            );
            for c in &dy.calculus {
                let _ = writeln!(
                    out,
                    "  identity {}: worst relative error {:.3e} over {} samples",
                    c.name, c.worst_rel_err, c.samples
                );
            }
            let _ = writeln!(out, "  pass: {}", dy.pass);
        }

        if let Some(f) = &self.feasibility {
            let _ = writeln!(
                out,
                "\ndegeneration feasibility at m = {}: {}",
                f.m,
                if f.feasible { "feasible" } else { "infeasible" }
            );
            for d in &f.pattern {
                let _ = writeln!(
                    out,
                    "  d_{}: ({}, {}) -> ({}, {}) rank {}",
                    d.page, d.from[0], d.from[1], d.to[0], d.to[1], d.rank
                );
            }
        }

        out
    }
}
