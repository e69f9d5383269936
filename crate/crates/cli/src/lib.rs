//! The `csn` command-line tool: argument model, dispatch, and reports.
//!
//! Every command writes one report to the output stream and returns an exit
//! status. Failures are returned as [`CliError`], which the binary prints as
//! JSON on stderr.

pub mod formats;
pub mod svg;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use csn::metric::{
    find_kalmanson_ordering, four_point_check, kalmanson_check, metric_from_network, recover_split_weights,
    DissimilarityMatrix, KalmansonInequality, Recovery, Verdict,
};
use csn::moduli::DEFAULT_ATLAS_BOUND;
use csn::polygon::DEFAULT_ORDERING_BOUND;
use csn::space::{self, CensusFormulas, DEFAULT_CELL_BOUND};
use csn::{Rational, Scalar, TwistPath};
use serde_json::{json, Map, Value};

use formats::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { kind: "input".into(), message: message.into(), code: EXIT_INPUT }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self { kind: "io".into(), message: format!("{}: {e}", path.display()), code: EXIT_INPUT }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "code": self.code } })
    }
}

impl From<csn::Error> for CliError {
    fn from(e: csn::Error) -> Self {
        let (kind, code) = match &e {
            csn::Error::Capacity { .. } => ("capacity", EXIT_CAPACITY),
            csn::Error::Consistency(_) => ("internal", EXIT_INPUT),
            _ => ("input", EXIT_INPUT),
        };
        Self { kind: kind.into(), message: e.to_string(), code }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
    Svg,
}

/// Tools for circular split networks and the moduli embedding.
#[derive(Debug, Clone, Parser)]
#[command(name = "csn", version)]
pub struct RunConfig {
    /// Largest n for exhaustive enumeration (default depends on the command).
    #[arg(long, global = true, value_parser = parse_n_max)]
    pub n_max: Option<usize>,
    /// Relative tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = parse_tol)]
    pub tol: f64,
    /// Read numbers as exact rationals instead of floats.
    #[arg(long, global = true)]
    pub exact: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write numbers as decimals rather than "p/q".
    #[arg(long, global = true)]
    pub decimal: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_n_max(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a count"))?;
    if n < 4 {
        return Err("n-max must be at least 4".into());
    }
    Ok(n)
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !(t > 0.0 && t.is_finite()) {
        return Err("tolerance must be positive".into());
    }
    Ok(t)
}

#[derive(Debug, Clone, Args)]
pub struct MatrixInput {
    /// Matrix file, or "-" for stdin.
    pub matrix: PathBuf,
    /// Circular ordering such as "1,3,2,4"; searched for when absent.
    #[arg(long)]
    pub ordering: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Four-point test for a tree metric.
    CheckTreeMetric {
        /// Matrix file, or "-" for stdin.
        matrix: PathBuf,
    },
    /// Kalmanson test for a given ordering, or search for a passing one.
    CheckKalmanson(MatrixInput),
    /// Recover circular split weights realizing a metric.
    FitNetwork(MatrixInput),
    /// Metric induced by a weighted split system.
    NetworkMetric { splits: PathBuf },
    /// Circular orderings compatible with a split system.
    Orderings { splits: PathBuf },
    /// Twists carrying a polygon representation to a target ordering.
    TwistPath {
        polygon: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Cell counts of the link complex against the closed formulas.
    Census {
        #[arg(long)]
        n: usize,
        /// Also count cells by unlabelled type.
        #[arg(long)]
        types: bool,
    },
    /// Stream the cells of the link complex as JSON lines.
    Cells {
        #[arg(long)]
        n: usize,
        /// Only cells of this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Three pairwise-adjacent splits spanning no 2-cell.
    EmptyTriangle {
        #[arg(long)]
        n: usize,
    },
    /// Image of a moduli point in network space.
    Embed { point: PathBuf },
    /// Recover the moduli point from an embedded point.
    Decode { point: PathBuf },
    /// Gluing table of the chamber associahedra.
    ModuliAtlas {
        #[arg(long)]
        n: usize,
    },
    /// SVG drawing of a polygon representation.
    Render { polygon: PathBuf },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::io(path, e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    parse_json(&read_input(path)?)
}

/// A finished report: what to print and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    /// A single JSON document.
    Doc(Value),
    /// A JSON-lines stream.
    Lines(Vec<Value>),
    /// Preformatted output (SVG, text tables).
    Raw(String),
}

/// Runs one command, writing its report to `out`; returns the exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    if config.format == OutputFormat::Svg && !matches!(config.command, Command::Render { .. }) {
        return Err(CliError::input("svg output is only available for render"));
    }
    let (report, status) = if config.exact { dispatch::<Rational>(config)? } else { dispatch::<f64>(config)? };
    let text = match (report, config.format) {
        (Report::Raw(s), _) => s,
        (Report::Doc(v), OutputFormat::Text) => text_of(&v),
        (Report::Doc(v), _) => format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize")),
        (Report::Lines(lines), OutputFormat::Text) => lines.iter().map(text_line).collect(),
        (Report::Lines(lines), _) => lines.iter().map(|v| format!("{v}\n")).collect(),
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<output>"), e))?;
    Ok(status)
}

fn verdict_status(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn tolerance<T: Scalar>(config: &RunConfig) -> T {
    if T::EXACT {
        T::zero()
    } else {
        T::parse_scalar(&format!("{:e}", config.tol)).unwrap_or_else(T::default_tolerance)
    }
}

fn dispatch<T: Scalar>(config: &RunConfig) -> Result<(Report, i32), CliError> {
    let dec = config.decimal;
    let bound = |default: usize| config.n_max.unwrap_or(default);
    let tol: T = tolerance(config);
    match &config.command {
        Command::CheckTreeMetric { matrix } => {
            let d: DissimilarityMatrix<T> = parse_matrix(&read_input(matrix)?)?;
            let verdict = four_point_check(&d, &tol)?;
            let mut doc = Map::new();
            doc.insert("check".into(), json!("four-point"));
            doc.insert("verdict".into(), json!(if verdict.is_pass() { "pass" } else { "fail" }));
            if let Some(w) = verdict.witness() {
                doc.insert(
                    "witness".into(),
                    json!({
                        "quadruple": w.quadruple,
                        "sums": w.sums.iter().map(|s| scalar_json(s, dec)).collect::<Vec<_>>(),
                    }),
                );
            }
            Ok((Report::Doc(Value::Object(doc)), verdict_status(verdict.is_pass())))
        }
        Command::CheckKalmanson(input) => {
            let d: DissimilarityMatrix<T> = parse_matrix(&read_input(&input.matrix)?)?;
            let mut doc = Map::new();
            doc.insert("check".into(), json!("kalmanson"));
            let pass = match &input.ordering {
                Some(text) => {
                    let ordering = parse_ordering(text)?;
                    let verdict = kalmanson_check(&d, &ordering, &tol)?;
                    doc.insert("ordering".into(), ordering_json(&ordering));
                    if let Verdict::Fail(w) = &verdict {
                        let inequality = match w.inequality {
                            KalmansonInequality::Adjacent => "adjacent",
                            KalmansonInequality::Wrapped => "wrapped",
                        };
                        doc.insert(
                            "witness".into(),
                            json!({
                                "taxa": w.taxa,
                                "inequality": inequality,
                                "lhs": scalar_json(&w.lhs, dec),
                                "rhs": scalar_json(&w.rhs, dec),
                            }),
                        );
                    }
                    verdict.is_pass()
                }
                None => {
                    let found = find_kalmanson_ordering(&d, &tol, bound(DEFAULT_ORDERING_BOUND))?;
                    doc.insert("ordering".into(), found.as_ref().map_or(Value::Null, ordering_json));
                    found.is_some()
                }
            };
            doc.insert("verdict".into(), json!(if pass { "pass" } else { "fail" }));
            Ok((Report::Doc(Value::Object(doc)), verdict_status(pass)))
        }
        Command::FitNetwork(input) => {
            let d: DissimilarityMatrix<T> = parse_matrix(&read_input(&input.matrix)?)?;
            let ordering = match &input.ordering {
                Some(text) => Some(parse_ordering(text)?),
                None => find_kalmanson_ordering(&d, &tol, bound(DEFAULT_ORDERING_BOUND))?,
            };
            let Some(ordering) = ordering else {
                let doc = json!({ "verdict": "fail", "ordering": null, "reason": "no Kalmanson ordering" });
                return Ok((Report::Doc(doc), EXIT_NEGATIVE));
            };
            match recover_split_weights(&d, &ordering, &tol)? {
                Recovery::Realized { weights, residual } => {
                    let doc = json!({
                        "verdict": "pass",
                        "ordering": ordering_json(&ordering),
                        "network": weighted_system_json(&weights, dec),
                        "residual": scalar_json(&residual, dec),
                    });
                    Ok((Report::Doc(doc), EXIT_OK))
                }
                Recovery::Infeasible(report) => {
                    let offending: Vec<Value> = report
                        .offending
                        .iter()
                        .map(|(s, w)| json!({ "block": s.block(), "weight": scalar_json(w, dec) }))
                        .collect();
                    let doc = json!({
                        "verdict": "fail",
                        "ordering": ordering_json(&ordering),
                        "residual": scalar_json(&report.residual, dec),
                        "offending": offending,
                    });
                    Ok((Report::Doc(doc), EXIT_NEGATIVE))
                }
            }
        }
        Command::NetworkMetric { splits } => {
            let w = parse_weighted_system::<T>(&read_json(splits)?)?;
            let d = metric_from_network(&w);
            let report = match config.format {
                OutputFormat::Text => Report::Raw(matrix_text(&d, dec)),
                _ => Report::Doc(matrix_json(&d, dec)),
            };
            Ok((report, EXIT_OK))
        }
        Command::Orderings { splits } => {
            let sys = parse_split_system(&read_json(splits)?)?;
            let found = csn::compatible_orderings(&sys, bound(DEFAULT_ORDERING_BOUND))?;
            let doc = json!({
                "n": sys.n(),
                "count": found.len(),
                "orderings": found.iter().map(ordering_json).collect::<Vec<_>>(),
            });
            Ok((Report::Doc(doc), verdict_status(!found.is_empty())))
        }
        Command::TwistPath { polygon, target } => {
            let rep = parse_polygon::<T>(&read_json(polygon)?)?;
            let target = parse_ordering(target)?;
            match csn::twist_sequence(&rep, &target)? {
                TwistPath::Sequence(steps) => {
                    let end = csn::polygon::replay_twists(&rep, &steps)?;
                    let steps: Vec<Value> = steps
                        .iter()
                        .map(|s| json!({ "chord": s.chord.block(), "side": s.side, "ordering": ordering_json(&s.ordering) }))
                        .collect();
                    let doc = json!({
                        "verdict": "pass",
                        "target": ordering_json(&target),
                        "twists": steps.len(),
                        "steps": steps,
                        "result": polygon_json(&end, dec),
                    });
                    Ok((Report::Doc(doc), EXIT_OK))
                }
                TwistPath::Incompatible { split } => {
                    let doc = json!({
                        "verdict": "fail",
                        "target": ordering_json(&target),
                        "incompatible": split.block(),
                    });
                    Ok((Report::Doc(doc), EXIT_NEGATIVE))
                }
            }
        }
        Command::Census { n, types } => census_report(*n, *types, bound(DEFAULT_CELL_BOUND), config.format),
        Command::Cells { n, dim } => {
            let b = bound(DEFAULT_CELL_BOUND);
            let top = CensusFormulas::new(*n)?.dimension;
            let dims: Vec<usize> = match dim {
                Some(k) if *k > top => {
                    return Err(CliError::input(format!("cells have dimension at most {top} for n = {n}")))
                }
                Some(k) => vec![*k],
                None => (0..=top).collect(),
            };
            let mut lines = Vec::new();
            for k in dims {
                for cell in space::link_cells(*n, k, b)? {
                    let splits: Vec<Value> = cell.splits().iter().map(|s| json!(s.block())).collect();
                    lines.push(json!({ "dim": k, "splits": splits }));
                }
            }
            Ok((Report::Lines(lines), EXIT_OK))
        }
        Command::EmptyTriangle { n } => {
            let witness = space::empty_triangle_witness(*n, bound(DEFAULT_CELL_BOUND))?;
            let doc = json!({
                "n": n,
                "witness": witness.map(|w| w.iter().map(|s| json!(s.block())).collect::<Vec<_>>()),
            });
            Ok((Report::Doc(doc), verdict_status(witness.is_some())))
        }
        Command::Embed { point } => {
            let p = parse_moduli_point::<Rational>(&read_json(point)?)?;
            let x = csn::phi_point(&p)?;
            Ok((Report::Doc(embedded_point_json(&x, dec)), EXIT_OK))
        }
        Command::Decode { point } => {
            let x = parse_embedded_point::<Rational>(&read_json(point)?)?;
            let p = csn::decode(&x)?;
            Ok((Report::Doc(moduli_point_json(&p)), EXIT_OK))
        }
        Command::ModuliAtlas { n } => {
            let atlas = csn::glue_moduli::<Rational>(*n, bound(DEFAULT_ATLAS_BOUND))?;
            let mut lines: Vec<Value> = atlas
                .gluings
                .iter()
                .map(|g| {
                    json!({
                        "from": face_json(&atlas.face(g.from)),
                        "to": face_json(&atlas.face(g.to)),
                        "diagonal": g.diagonal.block(),
                    })
                })
                .collect();
            lines.push(json!({
                "summary": {
                    "n": n,
                    "chambers": atlas.chambers.len(),
                    "gluings": atlas.gluings.len(),
                    "cells_by_dim": atlas.cells_by_dim(),
                    "euler_characteristic": atlas.euler_characteristic(),
                }
            }));
            Ok((Report::Lines(lines), EXIT_OK))
        }
        Command::Render { polygon } => {
            let rep = parse_polygon::<T>(&read_json(polygon)?)?;
            Ok((Report::Raw(svg::render_polygon(&rep, dec)), EXIT_OK))
        }
    }
}

fn census_report(n: usize, types: bool, bound: usize, format: OutputFormat) -> Result<(Report, i32), CliError> {
    let formulas = CensusFormulas::new(n)?;
    let formula_doc = json!({
        "chambers": formulas.chambers.to_string(),
        "dimension": formulas.dimension,
        "ridges": formulas.ridges.to_string(),
        "vertices": formulas.vertices.to_string(),
        "edges": formulas.edges.to_string(),
    });
    let enumerated = match space::census(n, bound) {
        Ok(c) => Some(c),
        Err(csn::Error::Capacity { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut doc = Map::new();
    doc.insert("n".into(), json!(n));
    doc.insert("formulas".into(), formula_doc);
    let mut rows: Vec<(String, String, String)> = vec![
        ("chambers".into(), formulas.chambers.to_string(), String::new()),
        ("dimension".into(), formulas.dimension.to_string(), String::new()),
        ("ridges".into(), formulas.ridges.to_string(), String::new()),
        ("vertices".into(), formulas.vertices.to_string(), String::new()),
        ("edges".into(), formulas.edges.to_string(), String::new()),
    ];
    let mut type_rows = Vec::new();
    match &enumerated {
        Some(c) => {
            let matches = c.chambers as u128 == formulas.chambers
                && c.dimension == formulas.dimension
                && c.ridges as u128 == formulas.ridges
                && c.vertices as u128 == formulas.vertices
                && c.edges as u128 == formulas.edges;
            doc.insert(
                "enumerated".into(),
                json!({
                    "chambers": c.chambers,
                    "dimension": c.dimension,
                    "ridges": c.ridges,
                    "vertices": c.vertices,
                    "edges": c.edges,
                    "cells_by_dim": c.cells_by_dim,
                    "max_chambers_per_ridge": c.max_chambers_per_ridge,
                }),
            );
            doc.insert("formulas_match".into(), json!(matches));
            for (row, value) in rows.iter_mut().zip([c.chambers, c.dimension, c.ridges, c.vertices, c.edges]) {
                row.2 = value.to_string();
            }
            if types {
                let counts: BTreeMap<_, _> = space::cell_type_counts(n, bound)?;
                let list: Vec<Value> = counts
                    .iter()
                    .map(|(t, k)| {
                        type_rows.push((t.to_string(), *k));
                        json!({ "dim": t.dim(), "chords": t.chords, "count": k })
                    })
                    .collect();
                doc.insert("cell_types".into(), Value::Array(list));
            }
        }
        None => {
            doc.insert("enumerated".into(), Value::Null);
            doc.insert("note".into(), json!(format!("n = {n} exceeds the exhaustive bound {bound}; formulas only")));
        }
    }
    let report = match format {
        OutputFormat::Text => {
            let mut s = format!("census n = {n}\n");
            let _ = writeln!(s, "{:<12} {:>24} {:>12}", "", "formula", "enumerated");
            for (name, f, e) in &rows {
                let e = if e.is_empty() { "-" } else { e };
                let _ = writeln!(s, "{name:<12} {f:>24} {e:>12}");
            }
            if let Some(c) = &enumerated {
                let _ = writeln!(s, "cells by dimension: {:?}", c.cells_by_dim);
            }
            for (t, k) in &type_rows {
                let _ = writeln!(s, "{k:>6}  {t}");
            }
            Report::Raw(s)
        }
        _ => Report::Doc(Value::Object(doc)),
    };
    Ok((report, EXIT_OK))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_of(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", inline(v))).collect(),
        other => format!("{}\n", inline(other)),
    }
}

fn text_line(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect();
            format!("{}\n", parts.join(" "))
        }
        other => format!("{}\n", inline(other)),
    }
}
