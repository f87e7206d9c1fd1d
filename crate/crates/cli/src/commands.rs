//! Subcommand dispatch. Exit codes: 0 success, 1 validation or input
//! failure, 2 internal assertion failure.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use radzero::decorate::{self, Decoration};
use radzero::dynamics::{self, INTEGRALITY_TOL, SIMPLEX_TOL};
use radzero::feasibility::{degeneration_feasibility, Bidegree};
use radzero::invariants::InvariantReport;
use radzero::page::{self, assemble_page};
use radzero::{germ, separate, DualGraph, Error, Rat, VertexId};

use crate::document::{parse_graph, GraphDocument};
use crate::report::{
    AmpleDoc, DecorationDoc, DynamicsDoc, FeasibilityDoc, InvariantsDoc, PageDoc, Provenance,
    Report, ValidationDoc,
};

#[derive(Parser)]
#[command(
    name = "radzero",
    version,
    about = "Monodromy invariants of plane-curve singularities from resolution dual graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in germ generator: cusp, smooth, xk-yk, xp-yq.
    #[arg(long, conflicts_with = "input")]
    germ: Option<String>,
    /// Parameters for the generator (e.g. --params 2,3 for xp-yq).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<i64>,
    /// Graph document to read instead of a generator.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Emit the machine-readable JSON report on stdout instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AmpleValues {
    /// Numerators of the ratios b_i/m_i in vertex order (the column of
    /// vertex i at iterate m is m * b_i/m_i).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    ample: Vec<i64>,
    /// Common denominator of the ratios given in --ample.
    #[arg(long, default_value_t = 1)]
    scale: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of the graph.
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Solve and print multiplicities and discrepancies.
    Decorate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check given ample coefficients, or suggest integral ones.
    Ample {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        values: AmpleValues,
        /// Suggest coefficients instead of checking given ones.
        #[arg(long, conflicts_with = "ample")]
        suggest: bool,
    },
    /// Refine the graph until it is m-separating.
    Separate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: i64,
    },
    /// Assemble the first page of the spectral sequence at iterate m.
    Page {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: i64,
        #[command(flatten)]
        values: AmpleValues,
    },
    /// Lefschetz numbers, zeta function, Milnor number, multiplicity.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 12)]
        max_m: i64,
        #[arg(long, default_value_t = 20)]
        zeta_order: usize,
    },
    /// Numeric verification of the radius-zero monodromy dynamics.
    Dynamics {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Search for a degeneration pattern reaching the target limit ranks.
    Feasibility {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: i64,
        #[command(flatten)]
        values: AmpleValues,
        /// Target total ranks of the limit, as degree:rank pairs
        /// (e.g. --target 2:2,3:1).
        #[arg(long, value_delimiter = ',')]
        target: Vec<String>,
    },
}

/// Parse arguments from the process environment and run; returns the exit
/// code. Internal assertion failures (panics) map to exit code 2.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| dispatch(&cli.command)) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(_) => {
            eprintln!("error: internal assertion failure");
            2
        }
    }
}

struct LoadedInput {
    graph: DualGraph,
    document: GraphDocument,
    provenance: Provenance,
}

fn load(input: &InputArgs, seed: Option<u64>) -> Result<LoadedInput, Error> {
    match (&input.germ, &input.input) {
        (Some(name), None) => {
            let germ = germ::by_name(name, &input.params)?;
            let canonical = format!("germ:{name}:{:?}", input.params);
            let document = GraphDocument::from_graph(&germ.graph, Some(&germ.first_blowup));
            Ok(LoadedInput {
                graph: germ.graph,
                document,
                provenance: Provenance::new(canonical.as_bytes(), seed),
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
            let document = parse_graph(&text)?;
            Ok(LoadedInput {
                graph: document.to_graph(),
                document,
                provenance: Provenance::new(text.as_bytes(), seed),
            })
        }
        _ => Err(Error::InvalidParams(
            "provide exactly one of --germ or --input".into(),
        )),
    }
}

fn emit(input: &InputArgs, report: &Report) -> Result<(), Error> {
    let json = report.to_json();
    if input.json {
        print!("{json}");
    } else {
        print!("{}", report.to_text());
    }
    if let Some(path) = &input.out {
        std::fs::write(path, &json)
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Ample coefficients from ratio numerators: `b_i = m_i * v_i / scale`.
fn ample_from_ratios(
    graph: &DualGraph,
    dec: &Decoration,
    values: &AmpleValues,
) -> Result<BTreeMap<VertexId, Rat>, Error> {
    if values.ample.len() != graph.vertices.len() {
        return Err(Error::InvalidParams(format!(
            "--ample needs {} values (one per vertex, in order), got {}",
            graph.vertices.len(),
            values.ample.len()
        )));
    }
    if values.scale <= 0 {
        return Err(Error::InvalidParams("--scale must be positive".into()));
    }
    let mut out = BTreeMap::new();
    for (v, &num) in graph.vertices.iter().zip(&values.ample) {
        let mi = dec.mult_of(&v.id)?;
        out.insert(v.id.clone(), radzero::rat(mi * num, values.scale));
    }
    Ok(out)
}

fn decorated(loaded: &LoadedInput) -> Result<Decoration, Error> {
    loaded.graph.require_valid()?;
    let dec = Decoration::solve(&loaded.graph)?;
    match loaded.document.ample_coefficients()? {
        Some(b) => dec.with_ample(b),
        None => Ok(dec),
    }
}

fn dispatch(command: &Command) -> Result<(), Error> {
    match command {
        Command::Validate { input } => {
            let loaded = load(input, None)?;
            let validation = loaded.graph.validate();
            let mut report = Report::new("validate", loaded.provenance);
            report.validation = Some(ValidationDoc::from(&validation));
            report.graph = Some(loaded.document);
            emit(input, &report)?;
            if !validation.passes() {
                return Err(Error::Validation(validation.to_string()));
            }
            Ok(())
        }
        Command::Decorate { input } => {
            let loaded = load(input, None)?;
            let dec = decorated(&loaded)?;
            let mut report = Report::new("decorate", loaded.provenance);
            report.decoration = Some(DecorationDoc::from(&dec));
            emit(input, &report)
        }
        Command::Ample {
            input,
            values,
            suggest,
        } => {
            let loaded = load(input, None)?;
            let dec = decorated(&loaded)?;
            let mut report = Report::new("ample", loaded.provenance);
            if *suggest {
                let b = decorate::suggest_ample(&loaded.graph)?;
                let check =
                    decorate::check_ample(&loaded.graph, &decorate::ample_from_integers(&b))?;
                report.suggested_ample = Some(b);
                report.ample = Some(AmpleDoc::from(&check));
                emit(input, &report)
            } else {
                let b = ample_from_ratios(&loaded.graph, &dec, values)?;
                let check = decorate::check_ample(&loaded.graph, &b)?;
                report.ample = Some(AmpleDoc::from(&check));
                emit(input, &report)
            }
        }
        Command::Separate { input, m } => {
            let loaded = load(input, None)?;
            let dec = decorated(&loaded)?;
            let (g2, dec2) = separate::separate(&loaded.graph, &dec, *m)?;
            let mut report = Report::new("separate", loaded.provenance);
            report.graph = Some(GraphDocument::from_graph(
                &g2,
                loaded.document.first_blowup(),
            ));
            report.decoration = Some(DecorationDoc::from(&dec2));
            emit(input, &report)
        }
        Command::Page { input, m, values } => {
            let loaded = load(input, None)?;
            let dec = decorated(&loaded)?;
            let dec = if values.ample.is_empty() {
                if dec.ample.is_some() {
                    dec
                } else {
                    return Err(Error::MissingAmple);
                }
            } else {
                let b = ample_from_ratios(&loaded.graph, &dec, values)?;
                let check = decorate::check_ample(&loaded.graph, &b)?;
                if !check.ample {
                    return Err(Error::Validation(
                        "given coefficients are not ample (some H . D_i <= 0)".into(),
                    ));
                }
                dec.with_ample(b)?
            };
            let page = assemble_page(&loaded.graph, &dec, *m)?;
            let order = page::action_order(&dec, *m)?;
            let mut report = Report::new("page", loaded.provenance);
            report.pages = vec![PageDoc::from(&page, order)];
            emit(input, &report)
        }
        Command::Invariants {
            input,
            max_m,
            zeta_order,
        } => {
            let loaded = load(input, None)?;
            let dec = decorated(&loaded)?;
            let inv = InvariantReport::compute(
                &loaded.graph,
                &dec,
                *max_m,
                *zeta_order,
                loaded.document.first_blowup(),
            )?;
            let mut report = Report::new("invariants", loaded.provenance);
            report.decoration = Some(DecorationDoc::from(&dec));
            report.invariants = Some(InvariantsDoc::from(&inv));
            emit(input, &report)
        }
        Command::Dynamics {
            input,
            m,
            samples,
            seed,
        } => {
            let loaded = load(input, Some(*seed))?;
            let dec = decorated(&loaded)?;
            let doc = run_dynamics(&loaded.graph, &dec, *m, *samples, *seed)?;
            let pass = doc.pass;
            let mut report = Report::new("dynamics", loaded.provenance);
            report.dynamics = Some(doc);
            emit(input, &report)?;
            if !pass {
                return Err(Error::Validation(
                    "fixed points found on mixed strata".into(),
                ));
            }
            Ok(())
        }
        Command::Feasibility {
            input,
            m,
            values,
            target,
        } => {
            let loaded = load(input, None)?;
            let dec = decorated(&loaded)?;
            let b = ample_from_ratios(&loaded.graph, &dec, values)?;
            let dec = dec.with_ample(b)?;
            let page = assemble_page(&loaded.graph, &dec, *m)?;
            let forbidden = page::forbidden_arrows(&page);
            let target = parse_target(target)?;
            let pattern =
                degeneration_feasibility(&page, &forbidden, &target, Bidegree::Homological)?;
            let mut report = Report::new("feasibility", loaded.provenance);
            report.feasibility = Some(FeasibilityDoc::from(*m, target, pattern.as_deref()));
            emit(input, &report)
        }
    }
}

fn parse_target(pairs: &[String]) -> Result<BTreeMap<i64, u64>, Error> {
    let mut out = BTreeMap::new();
    for pair in pairs {
        let (d, r) = pair.split_once(':').ok_or_else(|| {
            Error::InvalidParams(format!("target entry {pair:?} is not degree:rank"))
        })?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad degree {d:?}")))?;
        let r: u64 = r
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad rank {r:?}")))?;
        out.insert(d, r);
    }
    Ok(out)
}

fn run_dynamics(
    g: &DualGraph,
    dec: &Decoration,
    m: i64,
    samples: usize,
    seed: u64,
) -> Result<DynamicsDoc, Error> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // Pure strata: fixed exactly when m_i | m.
    let mut pure = BTreeMap::new();
    for v in &g.vertices {
        let pt = dynamics::SimplexPoint::new(vec![v.id.clone()], vec![1.0])?;
        let mult: BTreeMap<VertexId, i64> = [(v.id.clone(), dec.mult_of(&v.id)?)].into();
        let fixed = dynamics::fixed_point_test(&pt, &mult, m, INTEGRALITY_TOL)?;
        assert_eq!(
            fixed,
            m % dec.mult_of(&v.id)? == 0,
            "pure stratum fixed-point test disagrees with divisibility at {}",
            v.id
        );
        pure.insert(v.id.clone(), fixed);
    }

    // Mixed strata: sample and count (expected zero) fixed points; verify
    // the rotation-number sum on every sample.
    let strata = dynamics::edge_strata(g, dec)?;
    let mut mixed_fixed = 0usize;
    let mut worst_sum_dev = 0.0f64;
    for stratum in &strata {
        let mult: BTreeMap<VertexId, i64> = stratum
            .ids
            .iter()
            .cloned()
            .zip(stratum.mults.iter().copied())
            .collect();
        for _ in 0..samples {
            let pt = dynamics::SimplexPoint::sample(stratum.ids.to_vec(), &mut rng);
            let l = dynamics::rotation_numbers(&pt, &mult)?;
            let total: f64 = l.iter().map(|(id, lj)| mult[id] as f64 * lj).sum();
            let dev = (total - 1.0).abs();
            worst_sum_dev = worst_sum_dev.max(dev);
            if dev > SIMPLEX_TOL {
                return Err(Error::IdentityViolated {
                    name: "sum m_j l_j = 1".into(),
                    rel_err: dev,
                    at: pt.w.clone(),
                });
            }
            if dynamics::fixed_point_test(&pt, &mult, m, INTEGRALITY_TOL)? {
                mixed_fixed += 1;
            }
        }
    }

    let separation = dynamics::separation_bound_check(g, dec, m, samples, seed)?;
    let calculus = dynamics::calculus_identity_suite(1000)?;

    Ok(DynamicsDoc::assemble(
        m,
        samples,
        seed,
        pure,
        strata.len(),
        mixed_fixed,
        worst_sum_dev,
        &separation,
        &calculus,
    ))
}
