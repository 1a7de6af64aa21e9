//! Command-line front end. Every command reads one model file and prints a
//! report, either as a plain-text rendering or as JSON.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cones::Cone;
use crate::derham::wedge::binomial;
use crate::derham::{hdiff_general, BettiMode, DeRham};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::linalg::{box_points, lattice_index, Int, Sublattice, Vector};
use crate::model::{digest, Model};
use crate::monoid::{relative_sn, relative_wn, AffineMonoid, Characteristic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_POSTCONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "torf",
    version,
    about = "Exact computations on monoidal complexes and their h-differential forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Model file; standard input when omitted or `-`.
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Degree bound for generator extraction (default: derived from the data).
    #[arg(long)]
    degree_bound: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sn,
    Wn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan and the compatibility of the monoids.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Seminormalize or weakly normalize the complex.
    Normalize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Mode::Sn)]
        mode: Mode,
        #[arg(long = "char")]
        characteristic: Option<u64>,
        /// Verification box radius.
        #[arg(long = "box")]
        box_bound: Option<u64>,
    },
    /// Lattice family, seminormality and weak normality.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Characteristics to test (repeat or separate by commas).
        #[arg(long = "char", value_delimiter = ',')]
        characteristics: Vec<u64>,
        /// Verification box radius.
        #[arg(long = "box")]
        box_bound: Option<u64>,
    },
    /// Torus orbits, one per cone.
    Orbits {
        #[command(flatten)]
        input: Input,
    },
    /// Cohomology of the de Rham complex of global h-differential forms.
    Betti {
        #[command(flatten)]
        input: Input,
        /// Name of a pair declared in the model.
        #[arg(long)]
        pair: Option<String>,
        /// Sum over all degrees in `[-B, B]^n`.
        #[arg(long = "box", conflicts_with = "theoretical")]
        box_bound: Option<u64>,
        /// Use the degree-zero formula (the default).
        #[arg(long)]
        theoretical: bool,
    },
    /// The complex describing a neighbourhood of an orbit.
    Germ {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cone: String,
    },
    /// Per-degree dimensions of the forms of degree `p`.
    Forms {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long = "box")]
        box_bound: Option<u64>,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Print a built-in model file, or list the built-ins.
    Fixtures { name: Option<String> },
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    /// `ok`, `invalid` or `error`.
    pub status: String,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input digest: {}\n", self.input_digest));
        out.push_str(&format!("status: {}\n", self.status));
        render(&mut out, &self.results, 0);
        if !self.diagnostics.is_empty() {
            out.push_str("diagnostics:\n");
            for d in &self.diagnostics {
                out.push_str(&format!("  - {d}\n"));
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.to_human(),
            Format::Machine => self.to_machine(),
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => v.to_string(),
        _ => v.to_string(),
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    let Value::Object(map) = v else {
        out.push_str(&format!("{pad}{}\n", inline(v)));
        return;
    };
    for (k, v) in map {
        match v {
            Value::Object(_) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(out, v, indent + 2);
            }
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                table(out, rows, indent + 2);
            }
            _ => out.push_str(&format!("{pad}{k}: {}\n", inline(v))),
        }
    }
}

/// Aligned columns keyed by the fields of the first row.
fn table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let keys: Vec<String> = rows[0].as_object().expect("object rows").keys().cloned().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| keys.iter().map(|k| inline(r.get(k).unwrap_or(&Value::Null))).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| cells.iter().map(|c| c[i].chars().count()).chain([k.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |items: &[String]| -> String {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&keys));
    for c in &cells {
        out.push_str(&line(c));
    }
}

fn vector_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|k| Value::String(k.to_string())).collect())
}

fn small_json(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|k| Value::String(k.to_string())).collect())
}

fn vectors_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

fn lattice_json(l: &Sublattice) -> Value {
    vectors_json(&l.basis_vectors())
}

fn index_json(sub: &Sublattice, cone: &Cone) -> Value {
    match lattice_index(sub, cone.span_lattice()) {
        Ok(k) => Value::String(k.to_string()),
        Err(_) => Value::Null,
    }
}

fn error_json(e: &Error) -> Value {
    let witness = match e {
        Error::MissingFace { face, .. } => Some(face.clone()),
        _ => e.witness().map(|w| crate::linalg::fmt_vector(w)),
    };
    json!({
        "class": e.class(),
        "message": e.to_string(),
        "witness": witness,
    })
}

/// Exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnknownFixture(_)
        | Error::InvalidCharacteristic(_)
        | Error::DimensionMismatch { .. } => EXIT_USAGE,
        Error::GeneratorExtractionIncomplete { .. } | Error::Postcondition(_) => EXIT_POSTCONDITION,
        _ => EXIT_INVALID,
    }
}

/// Runs the command line `args` (program name first). `stdin` supplies the
/// model when no file is named.
pub fn run(args: &[String], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let echo = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let input = match &cli.command {
        Command::Fixtures { name } => return run_fixtures(name.as_deref()),
        Command::Validate { input }
        | Command::Normalize { input, .. }
        | Command::Classify { input, .. }
        | Command::Orbits { input }
        | Command::Betti { input, .. }
        | Command::Germ { input, .. }
        | Command::Forms { input, .. } => input.clone(),
    };
    let text = match read_input(&input, stdin) {
        Ok(t) => t,
        Err(msg) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg },
    };
    let mut report = Report {
        command: echo,
        input_digest: digest(&text),
        status: "ok".into(),
        results: Value::Null,
        diagnostics: Vec::new(),
    };
    let result = Model::parse(&text).and_then(|model| execute(&cli.command, &input, &model, &mut report));
    let (code, stderr) = match result {
        Ok(results) => {
            report.results = results;
            (EXIT_OK, String::new())
        }
        Err(e) => {
            let code = exit_code(&e);
            report.status = if code == EXIT_INVALID { "invalid" } else { "error" }.into();
            let mut results = Map::new();
            if matches!(cli.command, Command::Validate { .. }) {
                results.insert("valid".into(), Value::Bool(false));
            }
            results.insert("error".into(), error_json(&e));
            report.results = Value::Object(results);
            (code, format!("torf: {e}\n"))
        }
    };
    Outcome { code, stdout: report.render(input.format), stderr }
}

fn run_fixtures(name: Option<&str>) -> Outcome {
    match name {
        None => {
            let mut out = String::new();
            for n in fixtures::names().into_iter().chain(fixtures::broken_names()) {
                out.push_str(&n);
                out.push('\n');
            }
            Outcome { code: EXIT_OK, stdout: out, stderr: String::new() }
        }
        Some(n) => match fixtures::fixture(n) {
            Ok(text) => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
            Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("torf: {e}\n") },
        },
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> std::result::Result<String, String> {
    match &input.file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("torf: cannot read {}: {e}\n", p.display()))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| format!("torf: cannot read standard input: {e}\n"))?;
            Ok(s)
        }
    }
}

fn execute(command: &Command, input: &Input, model: &Model, report: &mut Report) -> Result<Value> {
    let degree_bound = input.degree_bound.or(model.options.degree_bound);
    let radius = |flag: &Option<u64>| flag.unwrap_or(model.options.box_bound);
    let default_char = || model.options.characteristic.unwrap_or_else(Characteristic::zero);
    match command {
        Command::Validate { .. } => Ok(validate(model)),
        Command::Normalize {
            mode,
            characteristic,
            box_bound,
            ..
        } => {
            let p = match characteristic {
                Some(p) => Characteristic::new(*p)?,
                None => default_char(),
            };
            normalize(model, *mode, p, degree_bound, radius(box_bound), &mut report.diagnostics)
        }
        Command::Classify {
            characteristics,
            box_bound,
            ..
        } => {
            let chars = if characteristics.is_empty() {
                match model.options.characteristic {
                    Some(p) => vec![p],
                    None => [0, 2, 3, 5].iter().map(|&p| Characteristic::new(p).expect("prime")).collect(),
                }
            } else {
                characteristics.iter().map(|&p| Characteristic::new(p)).collect::<Result<Vec<_>>>()?
            };
            classify(model, &chars, radius(box_bound), &mut report.diagnostics)
        }
        Command::Orbits { .. } => Ok(orbits(model)),
        Command::Betti {
            pair, box_bound, ..
        } => {
            let mode = match box_bound {
                Some(b) => BettiMode::Box(*b),
                None => BettiMode::Theoretical,
            };
            betti(model, pair.as_deref(), mode)
        }
        Command::Germ { cone, .. } => germ(model, cone),
        Command::Forms {
            p, box_bound, pair, ..
        } => forms(model, *p, radius(box_bound), pair.as_deref(), degree_bound, &mut report.diagnostics),
        Command::Fixtures { .. } => unreachable!("handled before reading input"),
    }
}

fn cone_rows(model: &Model, cones: &[Cone], monoids: &[AffineMonoid]) -> Value {
    Value::Array(
        cones
            .iter()
            .zip(monoids)
            .map(|(c, s)| {
                json!({
                    "cone": model.label(c),
                    "dim": c.dim(),
                    "generators": vectors_json(s.generators()),
                })
            })
            .collect(),
    )
}

fn validate(model: &Model) -> Value {
    let x = &model.complex;
    let pairs: Map<String, Value> = model
        .pairs
        .iter()
        .map(|(name, fan)| {
            let cones: Vec<Value> = fan.cones().iter().map(|c| Value::String(model.label(c))).collect();
            (name.clone(), Value::Array(cones))
        })
        .collect();
    json!({
        "valid": true,
        "ambient_rank": x.ambient_rank(),
        "cones": cone_rows(model, x.cones(), x.monoids()),
        "pairs": pairs,
    })
}

fn normalize(
    model: &Model,
    mode: Mode,
    p: Characteristic,
    degree_bound: Option<u64>,
    radius: u64,
    diagnostics: &mut Vec<String>,
) -> Result<Value> {
    let x = &model.complex;
    let (out, already, name) = match mode {
        Mode::Sn => (x.sn_complex(degree_bound, radius)?, x.is_seminormal_complex(radius)?, "seminormal"),
        Mode::Wn => (
            x.wn_complex(p, degree_bound, radius)?,
            x.is_weakly_normal_complex(p, radius)?,
            "weakly normal",
        ),
    };
    if already {
        diagnostics.push(format!("input is already {name}"));
    }
    let strata: Vec<Value> = out
        .cones()
        .iter()
        .zip(out.monoids())
        .flat_map(|(c, s)| {
            let st = s.stratify();
            st.strata()
                .map(|(f, lat)| {
                    json!({
                        "cone": model.label(c),
                        "face": model.label(f),
                        "basis": lattice_json(lat),
                        "index": index_json(lat, f),
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut results = json!({
        "mode": match mode { Mode::Sn => "sn", Mode::Wn => "wn" },
        "char": p.get(),
        "already_normal": already,
        "cones": cone_rows(model, out.cones(), out.monoids()),
        "strata": strata,
    });
    if let Some(rel) = &model.relative {
        let r = match mode {
            Mode::Sn => relative_sn(&rel.base, &rel.over)?,
            Mode::Wn => relative_wn(&rel.base, &rel.over, p)?,
        };
        let gens = r.generators(degree_bound, radius)?.minimize();
        results["relative"] = json!({
            "cone": model.label(&rel.cone),
            "base": vectors_json(rel.base.generators()),
            "over": vectors_json(rel.over.generators()),
            "generators": vectors_json(gens.generators()),
        });
    }
    Ok(results)
}

fn classify(model: &Model, chars: &[Characteristic], radius: u64, diagnostics: &mut Vec<String>) -> Result<Value> {
    let x = &model.complex;
    let family: Vec<Value> = x
        .classify()
        .iter()
        .map(|(c, lat)| {
            json!({
                "cone": model.label(c),
                "basis": lattice_json(lat),
                "index": index_json(lat, c),
            })
        })
        .collect();
    let mut verdicts = Vec::new();
    for &p in chars {
        let verdict = x.is_weakly_normal_complex(p, radius)?;
        let index = x.facet_index_criterion(p);
        if verdict != index {
            diagnostics.push(format!(
                "characteristic {p}: the facet index test gives {index}, the facet monoid test gives {verdict}"
            ));
        }
        verdicts.push(json!({
            "char": p.get(),
            "weakly_normal": verdict,
            "facet_index_test": index,
        }));
    }
    Ok(json!({
        "family": family,
        "seminormal": x.is_seminormal_complex(radius)?,
        "weakly_normal": verdicts,
    }))
}

fn orbits(model: &Model) -> Value {
    let rows: Vec<Value> = model
        .complex
        .orbits()
        .rows
        .iter()
        .map(|r| {
            json!({
                "cone": model.label(&r.cone),
                "torus_dim": r.lattice.rank(),
                "lattice": lattice_json(&r.lattice),
                "facet": r.is_facet,
                "closed": r.is_closed,
            })
        })
        .collect();
    json!({
        "orbits": rows,
        "components": model.complex.components().len(),
    })
}

fn betti(model: &Model, pair: Option<&str>, mode: BettiMode) -> Result<Value> {
    let subfan = pair.map(|name| model.pair_named(name)).transpose()?;
    let d = DeRham::new(model.complex.clone(), model.options.box_bound)?;
    let table = d.betti(subfan, mode)?;
    Ok(json!({
        "mode": mode.to_string(),
        "pair": pair,
        "dims": table.dims,
    }))
}

fn germ(model: &Model, name: &str) -> Result<Value> {
    let t = model.cone_named(name)?;
    let g = model.complex.germ_at(&t)?;
    let rows: Vec<Value> = g
        .cones()
        .iter()
        .zip(g.monoids())
        .map(|(c, s)| {
            json!({
                "cone": vectors_json(&c.generators()),
                "dim": c.dim(),
                "generators": vectors_json(s.generators()),
            })
        })
        .collect();
    Ok(json!({
        "at": model.label(&t),
        "germ": rows,
    }))
}

fn forms(
    model: &Model,
    p: usize,
    radius: u64,
    pair: Option<&str>,
    degree_bound: Option<u64>,
    diagnostics: &mut Vec<String>,
) -> Result<Value> {
    let verify = model.options.box_bound;
    let dims = |table: std::collections::BTreeMap<Vec<i64>, usize>| -> Vec<Value> {
        table
            .into_iter()
            .map(|(m, dim)| json!({ "degree": small_json(&m), "dim": dim }))
            .collect()
    };
    let rows: Vec<Value> = match DeRham::new(model.complex.clone(), verify) {
        Ok(d) => match pair {
            Some(name) => d
                .pair_dims(model.pair_named(name)?, p, radius)?
                .into_iter()
                .map(|r| {
                    json!({
                        "degree": small_json(&r.degree),
                        "whole": r.whole,
                        "sub": r.sub,
                        "pair": r.pair,
                    })
                })
                .collect(),
            None => {
                let x = d.complex();
                let table = box_points(x.ambient_rank(), radius)
                    .filter_map(|m| x.locate_small(&m).map(|i| (m, binomial(x.group(i).rank(), p))))
                    .collect();
                dims(table)
            }
        },
        Err(Error::NotWeaklyNormal) if pair.is_none() => {
            diagnostics.push("complex is not weakly normal; dimensions are those of its weak normalization".into());
            dims(hdiff_general(&model.complex, p, radius, degree_bound, verify)?)
        }
        Err(e) => return Err(e),
    };
    Ok(json!({
        "p": p,
        "box": radius,
        "pair": pair,
        "degrees": rows,
    }))
}
