//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::render::{render_latex, render_text, to_json};
use crate::algebra::{exp_substitute, parse_poly, MultiPoly, PolyMatrix, VarNames};
use crate::checks;
use crate::chordio::parse_chord_diagram;
use crate::finitetype::{series_names, verify_theorem};
use crate::link::parse_link;
use crate::relations::{check_minor_relation, parse_relation};
use crate::weight::{weight, weight_invariance_report};

#[derive(Parser, Debug)]
#[command(name = "mva-weight", version, about = "Multivariable Alexander polynomial and its chord-diagram weight system")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weight of a coloured chord diagram.
    Weight {
        file: PathBuf,
        #[arg(long)]
        show_matrix: bool,
        /// Also recompute under side swaps, subdivisions and marked-point moves.
        #[arg(long)]
        report: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Multivariable Alexander polynomial of a link diagram.
    Mva {
        file: PathBuf,
        /// Crossing id whose row is deleted (default: the first crossing).
        #[arg(long)]
        delete: Option<String>,
        /// Arc id whose column is deleted (default: same as --delete).
        #[arg(long)]
        column: Option<String>,
        #[arg(long)]
        show_matrix: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand a polynomial under t_k = exp(u_k).
    Expand {
        poly: String,
        /// Comma-separated variable names (default t1..tn by usage).
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare a singular link's resolution sum with its chord-diagram weight.
    VerifyTheorem {
        file: PathBuf,
        /// Series cap (default: number of double points).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, value_enum)]
        report: Option<ReportFormat>,
    },
    /// Check a relation given by block matrices.
    CheckRelation {
        file: PathBuf,
        #[arg(long)]
        witness: bool,
        /// Ignore the file's fixed columns and use every minor.
        #[arg(long)]
        all_minors: bool,
    },
    /// Run every bundled example and property suite.
    Selftest,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn located<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn render(p: &MultiPoly, names: &VarNames, format: Format) -> String {
    match format {
        Format::Latex => render_latex(p, names),
        _ => render_text(p, names),
    }
}

fn matrix_text(m: &PolyMatrix, names: &VarNames) -> String {
    let mut s = String::new();
    for r in 0..m.nrows() {
        let cells: Vec<String> = (0..m.ncols()).map(|c| render_text(&m.get(r, c), names)).collect();
        s.push_str(&format!("{}: [{}]\n", m.row_labels().get(r).map_or("", String::as_str), cells.join(", ")));
    }
    s
}

fn matrix_json(m: &PolyMatrix, names: &VarNames) -> serde_json::Value {
    json!({
        "rows": m.row_labels(),
        "columns": m.col_labels(),
        "entries": (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| render_text(&m.get(r, c), names)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Weight { file, show_matrix, report, format } => {
            let d = parse_chord_diagram(&read(&file)?).map_err(located(&file))?;
            let r = weight(&d).map_err(located(&file))?;
            let names = d.variables();
            let rep = if report { Some(weight_invariance_report(&d).map_err(located(&file))?) } else { None };
            if format == Format::Json {
                let mut v = json!({
                    "weight": to_json(&r.weight, names),
                    "text": render_text(&r.weight, names),
                    "det": render_text(&r.det, names),
                    "marked_colour": names.name(r.marked_colour),
                });
                if show_matrix {
                    v["matrix"] = matrix_json(&r.matrix, names);
                }
                if let Some(rep) = &rep {
                    v["report"] = rep.to_json(names);
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                if show_matrix {
                    write!(out, "{}", matrix_text(&r.matrix, names)).map_err(io)?;
                }
                writeln!(out, "{}", render(&r.weight, names, format)).map_err(io)?;
                if let Some(rep) = &rep {
                    writeln!(out, "{}", serde_json::to_string_pretty(&rep.to_json(names)).expect("json")).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Mva { file, delete, column, show_matrix, format } => {
            let d = parse_link(&read(&file)?).map_err(located(&file))?;
            let index = |id: &str| d.crossing_index(id).ok_or_else(|| format!("{}: unknown crossing '{id}'", file.display()));
            let i = match &delete {
                Some(id) => index(id)?,
                None => 0,
            };
            let j = match &column {
                Some(id) => index(id)?,
                None => i,
            };
            let r = d.mva(i, j).map_err(located(&file))?;
            let names = d.variables();
            let word = render_text(&MultiPoly::monomial(names.len(), r.word.clone()), names);
            if format == Format::Json {
                let mut v = json!({
                    "value": to_json(&r.value, names),
                    "text": render_text(&r.value, names),
                    "det": render_text(&r.det, names),
                    "row": d.crossings()[i].id,
                    "column": d.crossings()[j].id,
                    "word": word,
                    "mu": r.mu,
                    "rot": r.rot,
                });
                if let Some(k) = &r.knot {
                    v["knot_normalization"] = json!({
                        "times_t_minus_one": render_text(&k.times_t_minus_one, names),
                        "over_t_minus_one": k.over_t_minus_one.as_ref().map(|p| render_text(p, names)),
                    });
                }
                if show_matrix {
                    v["matrix"] = matrix_json(&r.matrix, names);
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                if show_matrix {
                    write!(out, "{}", matrix_text(&r.matrix, names)).map_err(io)?;
                    writeln!(out, "w = {word}, mu = {:?}, rot = {:?}", r.mu, r.rot).map_err(io)?;
                }
                writeln!(out, "{}", render(&r.value, names, format)).map_err(io)?;
                if let Some(k) = &r.knot {
                    writeln!(out, "knot normalization: no division by (t - 1)").map_err(io)?;
                    writeln!(out, "  times (t - 1): {}", render(&k.times_t_minus_one, names, format)).map_err(io)?;
                    match &k.over_t_minus_one {
                        Some(p) => writeln!(out, "  over (t - 1): {}", render(p, names, format)),
                        None => writeln!(out, "  over (t - 1): not exact"),
                    }
                    .map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Expand { poly, vars, degree, format } => {
            let names = if vars.is_empty() { guess_names(&poly) } else { VarNames::new(vars) };
            let p = parse_poly(&poly, &names).map_err(|e| e.to_string())?;
            let s = exp_substitute(&p, degree);
            let u = series_names(names.len());
            if format == Format::Json {
                let parts: Vec<_> = (0..=degree).map(|k| to_json(&s.coefficient(k), &u)).collect();
                let v = json!({"variables": u.names(), "degree": degree, "parts": parts});
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                for k in 0..=degree {
                    writeln!(out, "degree {k}: {}", render(&s.coefficient(k), &u, format)).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::VerifyTheorem { file, degree, report } => {
            let d = parse_link(&read(&file)?).map_err(located(&file))?;
            let cap = degree.unwrap_or(d.double_points().len() as u32);
            let c = verify_theorem(&d, cap).map_err(located(&file))?;
            if report.is_some() {
                writeln!(out, "{}", serde_json::to_string_pretty(&c.to_json()).expect("json")).map_err(io)?;
            } else {
                let u = series_names(d.variables().len());
                writeln!(out, "double points: {}", c.m).map_err(io)?;
                for (k, p) in c.coefficients.iter().enumerate() {
                    writeln!(out, "degree {k}: {}", render_text(p, &u)).map_err(io)?;
                }
                writeln!(out, "weight: {}", render_text(&c.weight, &u)).map_err(io)?;
                writeln!(out, "lower degrees vanish: {}", c.lower_vanish()).map_err(io)?;
                writeln!(out, "verdict: {}", c.verdict.as_str()).map_err(io)?;
            }
            Ok(if c.holds() { 0 } else { 1 })
        }
        Command::CheckRelation { file, witness, all_minors } => {
            let mut spec = parse_relation(&read(&file)?).map_err(located(&file))?;
            if all_minors {
                spec = spec.without_fixed();
            }
            let v = check_minor_relation(&spec).map_err(located(&file))?;
            writeln!(out, "{}", serde_json::to_string_pretty(&v.to_json(&spec.variables, witness)).expect("json")).map_err(io)?;
            Ok(if v.holds { 0 } else { 1 })
        }
        Command::Selftest => {
            let results = checks::selftest();
            let width = results.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &results {
                writeln!(out, "{:<4}  {:<width$}  {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail).map_err(io)?;
            }
            let failed = results.iter().filter(|c| !c.pass).count();
            writeln!(out, "{} passed, {failed} failed", results.len() - failed).map_err(io)?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

// identifiers in the text, sorted by name and then by numeric suffix
fn guess_names(text: &str) -> VarNames {
    let mut found: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            cur.push(ch);
        } else if !cur.is_empty() {
            if cur.starts_with(|c: char| c.is_ascii_alphabetic()) && !found.contains(&cur) {
                found.push(cur.clone());
            }
            cur.clear();
        }
    }
    let key = |s: &String| {
        let stem = s.trim_end_matches(|c: char| c.is_ascii_digit()).to_string();
        let num: u64 = s[stem.len()..].parse().unwrap_or(0);
        (stem, num)
    };
    found.sort_by_key(key);
    if found.is_empty() {
        found.push("t".into());
    }
    VarNames::new(found)
}
