use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use klcells::cells::{cells_with_interior, CellKind, CellPartition, DEFAULT_MARGIN};
use klcells::g2::{emit_svg, predicted_partition, Classifier, RegionMap, SvgStyle};
use klcells::induction::{build_preset, class_names, DatumFile, InductionDatum, Preset};
use klcells::klbasis::KlData;
use klcells::{Ball, Elem, Error, LaurentPoly};
use serde_json::{json, Value};

use crate::accept::{self, AcceptOptions};
use crate::config::RunConfig;
use crate::output::{emit, render, Format, Payload};

#[derive(Parser, Debug)]
#[command(name = "klcells", version, about = "Kazhdan-Lusztig cells with unequal parameters")]
pub struct Cli {
    /// TOML file with `names`, `matrix`, `weights` and optionally `radius` and `seed`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Length bound of the ball.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Comma-separated weights overriding the config file, e.g. `9,2,2`.
    #[arg(long, global = true)]
    pub weights: Option<String>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Built-in induction datum for `induct`, e.g. `g2_C_sets` or `parabolic(s2,s3)`.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Seed of the randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Left,
    Right,
    TwoSided,
}

impl From<KindArg> for CellKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Left => CellKind::Left,
            KindArg::Right => CellKind::Right,
            KindArg::TwoSided => CellKind::TwoSided,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SvgSource {
    /// Cells computed from the KL graph.
    Computed,
    /// Regions of the alcove classifier.
    Predicted,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the ball and report its size per length.
    Ball,
    /// Table of nonzero KL polynomials P_{y,w} with y < w.
    Kl,
    /// Table of nonzero M-polynomials.
    Mu,
    /// Expansion of C_w in the T basis, for one word or for the whole ball.
    Cbasis {
        #[arg(long)]
        word: Option<String>,
    },
    /// Cell partition with its order.
    Cells {
        #[arg(long, value_enum, default_value = "left")]
        kind: KindArg,
        /// Elements up to this length count as interior (default: radius minus the margin).
        #[arg(long)]
        interior: Option<usize>,
    },
    /// Difference between the computed left cells and a reference partition on the interior.
    Compare {
        /// Partition JSON written by `cells`; defaults to the affine G2 region map.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        interior: Option<usize>,
    },
    /// Check the induction conditions for a preset or a datum file and build the induced ideal.
    Induct {
        #[arg(long)]
        datum: Option<PathBuf>,
        /// Members spanning the ideal (default: all of U).
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
    },
    /// SVG picture of the alcoves of affine G2 colored by cell.
    G2Svg {
        #[arg(long, value_enum, default_value = "computed")]
        source: SvgSource,
        #[arg(long)]
        interior: Option<usize>,
        #[arg(long)]
        no_walls: bool,
    },
    /// Hasse diagram of the cell order.
    Hasse {
        #[arg(long, value_enum, default_value = "left")]
        kind: KindArg,
        #[arg(long)]
        interior: Option<usize>,
        /// Keep uncertified cells near the boundary.
        #[arg(long)]
        all: bool,
    },
    /// Run the acceptance suite.
    Accept {
        /// Directory with reference outputs for the determinism check.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ball => "ball",
            Command::Kl => "kl",
            Command::Mu => "mu",
            Command::Cbasis { .. } => "cbasis",
            Command::Cells { .. } => "cells",
            Command::Compare { .. } => "compare",
            Command::Induct { .. } => "induct",
            Command::G2Svg { .. } => "g2-svg",
            Command::Hasse { .. } => "hasse",
            Command::Accept { .. } => "accept",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::G2Svg { .. } => Format::Svg,
            Command::Hasse { .. } => Format::Dot,
            Command::Accept { .. } => Format::Text,
            _ => Format::Json,
        }
    }
}

/// Failure of a command, reported as a JSON record on standard error.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        Self { kind: kind.into(), message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind, "message": self.message})
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Self { kind, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new("Io", e.to_string())
    }
}

/// Artifact of a command and whether it reports a difference or failure.
pub struct Outcome {
    pub payload: Payload,
    pub clean: bool,
}

impl Outcome {
    fn ok(payload: Payload) -> Self {
        Self { payload, clean: true }
    }
}

/// Runs the command line and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok((cfg, outcome)) => {
            let text = render(&cfg, cli.command.name(), &outcome.payload);
            if let Err(e) = emit(&text, cli.out.as_deref()) {
                eprintln!("{}", CliError::from(e).to_json());
                return 2;
            }
            if outcome.clean {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            2
        }
    }
}

/// Builds the configuration and runs the command without writing anything.
pub fn execute(cli: &Cli) -> Result<(RunConfig, Outcome), CliError> {
    let cfg = RunConfig::load(cli.config.as_deref(), cli.radius, cli.weights.as_deref(), cli.seed)
        .map_err(|e| CliError::new("Config", e.0))?;
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let outcome = dispatch(cli, &cfg, format)?;
    Ok((cfg, outcome))
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::new("UnsupportedFormat", format!("{command} cannot be written as {}", format.name()))
}

fn kl_data(cfg: &RunConfig) -> Result<KlData, CliError> {
    Ok(KlData::new(cfg.ball()?)?)
}

fn interior_or_default(cfg: &RunConfig, interior: Option<usize>) -> usize {
    interior.unwrap_or(cfg.radius.saturating_sub(DEFAULT_MARGIN))
}

/// Region names for left cells and family names for two-sided cells on affine G2.
fn cell_labels(cfg: &RunConfig, ball: &Ball, partition: &CellPartition) -> Result<Option<Vec<String>>, CliError> {
    if !cfg.is_g2() || partition.kind == CellKind::Right {
        return Ok(None);
    }
    let map = RegionMap::new(&Classifier::new()?, ball)?;
    let labels = partition
        .cells
        .iter()
        .map(|c| {
            let r = map.region(c.elements[0]);
            match partition.kind {
                CellKind::TwoSided => r.family().to_string(),
                _ => r.to_string(),
            }
        })
        .collect();
    Ok(Some(labels))
}

fn dispatch(cli: &Cli, cfg: &RunConfig, format: Format) -> Result<Outcome, CliError> {
    let name = cli.command.name();
    match &cli.command {
        Command::Ball => {
            let ball = cfg.ball()?;
            let per_length: Vec<usize> = (0..=ball.radius()).map(|l| ball.level(l).count()).collect();
            match format {
                Format::Json => {
                    let elements: Vec<String> = ball.elements().map(|w| ball.word_string(w)).collect();
                    Ok(Outcome::ok(Payload::Json(json!({
                        "size": ball.len(),
                        "per_length": per_length,
                        "elements": elements,
                    }))))
                }
                Format::Text => {
                    let mut s = format!("size {}\n", ball.len());
                    for (l, n) in per_length.iter().enumerate() {
                        s.push_str(&format!("length {l}: {n}\n"));
                    }
                    Ok(Outcome::ok(Payload::Text(s)))
                }
                f => Err(unsupported(name, f)),
            }
        }
        Command::Kl => {
            let kl = kl_data(cfg)?;
            table(name, format, kl.p_table_json(), |r| {
                format!("P[{}, {}] = {}", text(&r["y"]), text(&r["w"]), poly(&r["poly"]))
            })
        }
        Command::Mu => {
            let kl = kl_data(cfg)?;
            table(name, format, kl.m_table_json(), |r| {
                format!("M[{}; {}, {}] = {}", text(&r["s"]), text(&r["y"]), text(&r["w"]), poly(&r["poly"]))
            })
        }
        Command::Cbasis { word } => {
            let kl = kl_data(cfg)?;
            let ball = kl.ball();
            let elems: Vec<Elem> = match word {
                Some(w) => vec![ball.parse(w)?],
                None => ball.elements().collect(),
            };
            match format {
                Format::Json => {
                    let rows: Vec<Value> = elems
                        .iter()
                        .map(|w| json!({"w": ball.word_string(*w), "c": kl.c_elt(*w).to_json(ball)}))
                        .collect();
                    Ok(Outcome::ok(Payload::Json(Value::Array(rows))))
                }
                Format::Text => {
                    let s: String = elems
                        .iter()
                        .map(|w| format!("C[{}] = {}\n", ball.word_string(*w), kl.c_elt(*w).display(ball)))
                        .collect();
                    Ok(Outcome::ok(Payload::Text(s)))
                }
                f => Err(unsupported(name, f)),
            }
        }
        Command::Cells { kind, interior } => {
            let kl = kl_data(cfg)?;
            let ball = kl.ball();
            let p = cells_with_interior(&kl, (*kind).into(), interior_or_default(cfg, *interior));
            let labels = cell_labels(cfg, ball, &p)?;
            match format {
                Format::Json => {
                    let mut v = p.to_json(ball);
                    if let Some(l) = &labels {
                        v["labels"] = json!(l);
                    }
                    Ok(Outcome::ok(Payload::Json(v)))
                }
                Format::Dot => Ok(Outcome::ok(Payload::Dot(p.to_dot(ball, labels.as_deref())))),
                Format::Text => {
                    let mut s = String::new();
                    for (i, c) in p.cells.iter().enumerate() {
                        let words: Vec<String> = c.elements.iter().map(|w| ball.word_string(*w)).collect();
                        let label = labels.as_ref().map(|l| format!(" {}", l[i])).unwrap_or_default();
                        let mark = if c.certified { "" } else { " (uncertified)" };
                        s.push_str(&format!("cell {i}{label}{mark}: {}\n", words.join(" ")));
                    }
                    Ok(Outcome::ok(Payload::Text(s)))
                }
                Format::Svg => {
                    if !cfg.is_g2() || p.kind != CellKind::Left {
                        return Err(unsupported(name, format));
                    }
                    let svg = emit_svg(ball, &p, labels.as_deref(), &SvgStyle::default())?;
                    Ok(Outcome::ok(Payload::Svg(svg)))
                }
            }
        }
        Command::Compare { against, interior } => {
            let kl = kl_data(cfg)?;
            let ball = kl.ball();
            let interior = interior_or_default(cfg, *interior);
            let computed = cells_with_interior(&kl, CellKind::Left, interior);
            let reference = match against {
                Some(path) => read_partition(ball, path, interior)?,
                None => predicted_partition(&Classifier::new()?, ball, interior)?,
            };
            let diff = computed.interior_diff(ball, &reference, interior);
            let clean = diff.is_empty();
            let payload = match format {
                Format::Json => Payload::Json(json!({"interior_length": interior, "diff": diff})),
                Format::Text => Payload::Text(diff.iter().map(|d| format!("{d}\n")).collect()),
                f => return Err(unsupported(name, f)),
            };
            Ok(Outcome { payload, clean })
        }
        Command::Induct { datum, subset } => induct(cli, cfg, format, datum.as_ref(), subset),
        Command::G2Svg { source, interior, no_walls } => {
            if format != Format::Svg {
                return Err(unsupported(name, format));
            }
            let ball = cfg.ball()?;
            let interior = interior_or_default(cfg, *interior);
            let classifier = Classifier::new()?;
            let p = match source {
                SvgSource::Predicted => predicted_partition(&classifier, &ball, interior)?,
                SvgSource::Computed => cells_with_interior(&KlData::new(ball.clone())?, CellKind::Left, interior),
            };
            let labels = cell_labels(cfg, &ball, &p)?;
            let style = SvgStyle { show_walls: !no_walls, ..SvgStyle::default() };
            Ok(Outcome::ok(Payload::Svg(emit_svg(&ball, &p, labels.as_deref(), &style)?)))
        }
        Command::Hasse { kind, interior, all } => {
            let kl = kl_data(cfg)?;
            let ball = kl.ball();
            let p = cells_with_interior(&kl, (*kind).into(), interior_or_default(cfg, *interior));
            let labels = cell_labels(cfg, ball, &p)?;
            let name_of = |i: usize| match &labels {
                Some(l) => l[i].clone(),
                None => ball.word_string(p.cells[i].elements[0]),
            };
            let edges = if *all { p.hasse() } else { p.certified_hasse() };
            match format {
                Format::Dot => {
                    let mut s = String::from("digraph order {\n  rankdir=BT;\n");
                    for (i, c) in p.cells.iter().enumerate() {
                        if *all || c.certified {
                            s.push_str(&format!("  c{i} [label=\"{}\"];\n", name_of(i)));
                        }
                    }
                    for (lo, hi) in &edges {
                        s.push_str(&format!("  c{lo} -> c{hi};\n"));
                    }
                    s.push_str("}\n");
                    Ok(Outcome::ok(Payload::Dot(s)))
                }
                Format::Json => {
                    let rows: Vec<Value> =
                        edges.iter().map(|(lo, hi)| json!({"lower": name_of(*lo), "upper": name_of(*hi)})).collect();
                    Ok(Outcome::ok(Payload::Json(Value::Array(rows))))
                }
                Format::Text => {
                    let s: String = edges.iter().map(|(lo, hi)| format!("{} < {}\n", name_of(*lo), name_of(*hi))).collect();
                    Ok(Outcome::ok(Payload::Text(s)))
                }
                f => Err(unsupported(name, f)),
            }
        }
        Command::Accept { golden, only } => {
            let exe = std::env::current_exe().ok();
            let golden = golden.clone().or_else(|| {
                let p = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"));
                p.is_dir().then_some(p)
            });
            let opts = AcceptOptions { seed: cfg.seed, exe, golden, only: only.clone() };
            let results = accept::run(&opts);
            let clean = results.iter().all(|r| r.pass());
            let payload = match format {
                Format::Text => Payload::Text(results.iter().map(|r| format!("{}\n", r.line())).collect()),
                Format::Json => Payload::Json(Value::Array(results.iter().map(|r| r.to_json()).collect())),
                f => return Err(unsupported(name, f)),
            };
            Ok(Outcome { payload, clean })
        }
    }
}

fn text(v: &Value) -> &str {
    v.as_str().unwrap_or_default()
}

fn poly(v: &Value) -> String {
    serde_json::from_value::<LaurentPoly>(v.clone()).map(|p| p.to_string()).unwrap_or_else(|_| v.to_string())
}

fn table(name: &str, format: Format, rows: Value, line: impl Fn(&Value) -> String) -> Result<Outcome, CliError> {
    match format {
        Format::Json => Ok(Outcome::ok(Payload::Json(rows))),
        Format::Text => {
            let s: String = rows.as_array().expect("table").iter().map(|r| line(r) + "\n").collect();
            Ok(Outcome::ok(Payload::Text(s)))
        }
        f => Err(unsupported(name, f)),
    }
}

/// Reads the `cells` JSON output (with or without its header) as a left-cell partition of `ball`.
fn read_partition(ball: &Ball, path: &PathBuf, interior: usize) -> Result<CellPartition, CliError> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| CliError::new("InvalidData", e.to_string()))?;
    let body = doc.get("data").unwrap_or(&doc);
    let cells = body["cells"]
        .as_array()
        .ok_or_else(|| CliError::new("InvalidData", "missing cells array"))?;
    let mut sets = Vec::with_capacity(cells.len());
    for c in cells {
        let words = c["elements"]
            .as_array()
            .ok_or_else(|| CliError::new("InvalidData", "cell without elements"))?;
        let mut set = Vec::with_capacity(words.len());
        for w in words {
            let w = w.as_str().ok_or_else(|| CliError::new("InvalidData", "element is not a string"))?;
            match ball.parse(w) {
                Ok(e) => set.push(e),
                Err(Error::NotInBall(..)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        if !set.is_empty() {
            sets.push(set);
        }
    }
    Ok(CellPartition::from_sets(ball, CellKind::Left, sets, interior)?)
}

fn induct(
    cli: &Cli,
    cfg: &RunConfig,
    format: Format,
    datum: Option<&PathBuf>,
    subset: &[String],
) -> Result<Outcome, CliError> {
    let kl = kl_data(cfg)?;
    let ball = kl.ball();
    let classifier = if cfg.is_g2() { Some(Classifier::new()?) } else { None };
    let d: InductionDatum = match (datum, &cli.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let file: DatumFile =
                serde_json::from_str(&text).map_err(|e| CliError::new("InvalidData", e.to_string()))?;
            let specs = file.member_specs(ball)?;
            InductionDatum::new(&kl, file.name, specs, classifier.as_ref())?
        }
        (None, Some(p)) => build_preset(&kl, &Preset::parse(ball, p)?, classifier.as_ref())?,
        _ => return Err(CliError::new("Usage", "induct needs exactly one of --preset and --datum")),
    };
    let report = d.check_conditions();
    let members: Vec<usize> = if subset.is_empty() {
        (0..d.members.len()).collect()
    } else {
        subset
            .iter()
            .map(|n| d.member(n).ok_or_else(|| CliError::new("InvalidData", format!("no member named {n}"))))
            .collect::<Result<_, _>>()?
    };
    let failures: Vec<Value> = report
        .i5_failures
        .iter()
        .map(|f| {
            json!({
                "member": d.members[f.member].name,
                "u1": ball.word_string(f.u1),
                "x": ball.word_string(f.x),
            })
        })
        .collect();
    let ideal = match d.induced_ideal(&report, &members) {
        Ok(ideal) => {
            let words: Vec<String> = ideal.elements.ones().map(|i| ball.word_string(Elem(i as u32))).collect();
            let repairs: Vec<Value> = ideal
                .repairs
                .iter()
                .map(|r| json!({"basis": d.label_string(r.basis), "correction": r.correction.to_json(ball)}))
                .collect();
            json!({"elements": words, "verdict": format!("{:?}", ideal.verdict), "repairs": repairs})
        }
        Err(e) => CliError::from(e).to_json(),
    };
    let doc = json!({
        "name": d.name,
        "members": d.members.iter().map(|m| json!({
            "name": m.name,
            "x_in_ball": m.x.len(),
            "escaped": m.escaped.len(),
        })).collect::<Vec<_>>(),
        "conditions": report.to_json(),
        "i5_failures": failures,
        "classes": class_names(&d),
        "ideal": ideal,
    });
    let payload = match format {
        Format::Json => Payload::Json(doc),
        Format::Text => {
            let mut s = format!("datum {}\n", d.name);
            for (i, st) in report.statuses.iter().enumerate() {
                s.push_str(&format!("I{}: {:?}\n", i + 1, st));
            }
            for c in class_names(&d) {
                s.push_str(&format!("class {}\n", c.join(" ")));
            }
            Payload::Text(s)
        }
        f => return Err(unsupported("induct", f)),
    };
    Ok(Outcome::ok(payload))
}
