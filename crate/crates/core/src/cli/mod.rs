//! Command surface. [`run`] executes one command line and returns its exit
//! code and output; `main` only forwards to it.

pub mod morphfile;
pub mod parse;

use std::collections::BTreeMap;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::acs::{
    eigenbasis_closure_check, integrable_deformation_check, is_acs, lie_deformation, nijenhuis, DeformationH, R22,
};
use crate::error::Error;
use crate::moduli::{aut_dim, extension_table, serialize_table, spin_count, srs_teich_dim, vect_teich_dim};
use crate::morph::{base_indices, differential, factorize, invert, pullback_tensor, SuperMorphism, Tensor11};
use crate::ring::{contact_bracket, poisson, RingSignature, SuperPoly};
use crate::sconf::{k_f, k_member, svect_member, SVectorField};
pub use morphfile::{parse_morph_file, MorphFile};
pub use parse::{infer_sizes, parse, parse_field, parse_poly, ParseError, Value};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Syntax(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "supergeom", version, about = "Exact supergeometry calculator")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BracketKind {
    Contact,
    Poisson,
    Lie,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algebra {
    K,
    Km,
    Svect,
}

#[derive(Args, Debug)]
struct Sizes {
    /// Number of odd coordinates th1..thN; inferred when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Number of base odds p1..pK; inferred when omitted.
    #[arg(long)]
    base: Option<usize>,
}

#[derive(Args, Debug)]
struct Deform {
    #[arg(long, default_value = "0")]
    alpha: String,
    #[arg(long, default_value = "0")]
    beta: String,
    #[arg(long, default_value = "0")]
    gamma: String,
    #[arg(long, default_value = "0")]
    delta: String,
    #[arg(long)]
    base: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Contact vector field K_f.
    Kf {
        #[command(flatten)]
        sizes: Sizes,
        expr: String,
    },
    /// Contact or Poisson bracket of functions, or Lie bracket of fields.
    Bracket {
        #[arg(long, value_enum)]
        kind: BracketKind,
        #[command(flatten)]
        sizes: Sizes,
        a: String,
        b: String,
    },
    /// Membership in k, the Möbius algebra km, or svect_lambda.
    Member {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(long, default_value = "0")]
        lambda: String,
        #[command(flatten)]
        sizes: Sizes,
        field: String,
    },
    /// exp(N) applied to a function.
    Exp { file: String, expr: String },
    /// Pullback of a function.
    Apply { file: String, expr: String },
    /// Normal form from the `[images]` table.
    Factorize { file: String },
    Invert { file: String },
    /// Differential applied to a field.
    Diff { file: String, field: String },
    /// Pullback of a (1,1)-tensor given by its columns.
    Pullback {
        file: String,
        #[arg(required = true)]
        columns: Vec<String>,
    },
    /// Nijenhuis tensor of J0 + t*H on two fields.
    Nijenhuis {
        #[command(flatten)]
        h: Deform,
        x: String,
        y: String,
    },
    /// Coefficient and eigenbasis integrability verdicts.
    Integrable {
        #[command(flatten)]
        h: Deform,
    },
    /// Deformation induced by an even field.
    LieDeform {
        #[arg(long)]
        base: Option<usize>,
        field: String,
    },
    Dims(DimsArgs),
    Table {
        #[arg(long, required = true)]
        extensions: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DimsArgs {
    #[arg(long, num_args = 2, value_names = ["G", "D"], allow_hyphen_values = true)]
    vect: Option<Vec<i64>>,
    #[arg(long, value_name = "G", allow_hyphen_values = true)]
    srs: Option<i64>,
    #[arg(long, num_args = 2, value_names = ["G", "D"], allow_hyphen_values = true)]
    aut: Option<Vec<i64>>,
    #[arg(long, value_name = "G")]
    spin: Option<u32>,
}

/// Result of a command: text lines and the JSON form.
struct Report {
    lines: Vec<String>,
    json: Json,
}

impl Report {
    fn single(s: String) -> Self {
        Report {
            json: json!({ "result": s }),
            lines: vec![s],
        }
    }
}

fn superline(sizes: &Sizes, texts: &[&str]) -> Arc<RingSignature> {
    let (n, k) = infer_sizes(texts.iter().copied());
    RingSignature::superline(sizes.n.unwrap_or(n), sizes.base.unwrap_or(k))
}

fn read_morph(path: &str) -> Result<MorphFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    parse_morph_file(&text)
}

fn morph_report(phi: &SuperMorphism) -> Report {
    let sig = phi.sig();
    let mut lines: Vec<String> = phi.underlying().to_string().lines().map(str::to_string).collect();
    let mut under = BTreeMap::new();
    for (v, img) in sig.coords().iter().zip(phi.underlying().images()) {
        under.insert(sig.var_name(*v), img.to_string());
    }
    let mut nil = BTreeMap::new();
    for (&mask, x) in phi.nilpart() {
        let key = base_indices(sig, mask)
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        lines.push(format!("X[{key}] = {x}"));
        nil.insert(key, x.to_string());
    }
    Report {
        lines,
        json: json!({ "underlying": under, "nilpart": nil }),
    }
}

fn field_json(x: &SVectorField) -> Json {
    let sig = x.sig();
    let comps: BTreeMap<String, String> = sig
        .coords()
        .iter()
        .zip(x.coeffs())
        .filter(|(_, c)| !c.is_zero())
        .map(|(v, c)| (sig.var_name(*v), c.to_string()))
        .collect();
    json!({ "result": x.to_string(), "components": comps })
}

fn field_report(x: &SVectorField) -> Report {
    Report {
        lines: vec![x.to_string()],
        json: field_json(x),
    }
}

fn deformation(h: &Deform, extra: &[&str]) -> Result<(R22, DeformationH), CliError> {
    let texts = [h.alpha.as_str(), &h.beta, &h.gamma, &h.delta];
    let (_, k) = infer_sizes(texts.iter().copied().chain(extra.iter().copied()));
    let ctx = R22::new(h.base.unwrap_or(k));
    let p = |s: &str| parse_poly(s, &ctx.sig);
    let d = DeformationH::new(p(&h.alpha)?, p(&h.beta)?, p(&h.gamma)?, p(&h.delta)?)?;
    Ok((ctx, d))
}

fn execute(cmd: Cmd) -> Result<Report, CliError> {
    Ok(match cmd {
        Cmd::Kf { sizes, expr } => {
            let sig = superline(&sizes, &[&expr]);
            field_report(&k_f(&parse_poly(&expr, &sig)?)?)
        }
        Cmd::Bracket { kind, sizes, a, b } => {
            let sig = superline(&sizes, &[&a, &b]);
            match kind {
                BracketKind::Lie => field_report(&parse_field(&a, &sig)?.bracket_any(&parse_field(&b, &sig)?)?),
                BracketKind::Contact => Report::single(
                    contact_bracket(&parse_poly(&a, &sig)?, &parse_poly(&b, &sig)?)?.to_string(),
                ),
                BracketKind::Poisson => {
                    Report::single(poisson(&parse_poly(&a, &sig)?, &parse_poly(&b, &sig)?)?.to_string())
                }
            }
        }
        Cmd::Member {
            algebra,
            lambda,
            sizes,
            field,
        } => {
            let sig = superline(&sizes, &[&field]);
            let x = parse_field(&field, &sig)?;
            match algebra {
                Algebra::Svect => {
                    let lam = parse_poly(&lambda, &sig)?
                        .as_constant()
                        .ok_or_else(|| CliError::Syntax("lambda must be a constant".into()))?;
                    let m = svect_member(&x, &lam)?;
                    Report {
                        lines: vec![m.to_string()],
                        json: json!({ "member": m }),
                    }
                }
                Algebra::K | Algebra::Km => {
                    let mult = k_member(&x, matches!(algebra, Algebra::Km))?;
                    let mut lines = vec![mult.is_some().to_string()];
                    lines.extend(mult.as_ref().map(|f| f.to_string()));
                    Report {
                        lines,
                        json: json!({
                            "member": mult.is_some(),
                            "multiplier": mult.map(|f| f.to_string()),
                        }),
                    }
                }
            }
        }
        Cmd::Exp { file, expr } => {
            let m = read_morph(&file)?;
            let f = parse_poly(&expr, &m.sig)?;
            Report::single(crate::morph::exp_apply(&m.sig, &m.nilpart, &f)?.to_string())
        }
        Cmd::Apply { file, expr } => {
            let m = read_morph(&file)?;
            let f = parse_poly(&expr, &m.sig)?;
            Report::single(m.morphism()?.apply(&f)?.to_string())
        }
        Cmd::Factorize { file } => {
            let m = read_morph(&file)?;
            let images = m
                .images
                .as_ref()
                .ok_or_else(|| CliError::Syntax("factorize needs an [images] table".into()))?;
            morph_report(&factorize(&m.sig, images, m.inverse.as_ref())?)
        }
        Cmd::Invert { file } => morph_report(&invert(&read_morph(&file)?.morphism()?)?),
        Cmd::Diff { file, field } => {
            let m = read_morph(&file)?;
            let y = parse_field(&field, &m.sig)?;
            field_report(&differential(&m.morphism()?, &y)?)
        }
        Cmd::Pullback { file, columns } => {
            let m = read_morph(&file)?;
            let cols = columns
                .iter()
                .map(|c| parse_field(c, &m.sig))
                .collect::<Result<Vec<_>, _>>()?;
            let sigma = Tensor11::from_columns(&m.sig, cols)?;
            let out = pullback_tensor(&m.morphism()?, &sigma)?;
            let cols: Vec<String> = out.columns().iter().map(SVectorField::to_string).collect();
            Report {
                lines: out.to_string().lines().map(str::to_string).collect(),
                json: json!({ "columns": cols }),
            }
        }
        Cmd::Nijenhuis { h, x, y } => {
            let (ctx, d) = deformation(&h, &[&x, &y])?;
            let t = SuperPoly::gen(&ctx.sig, ctx.t);
            let j = ctx.j0().add(&d.tensor(&ctx)?.map_columns(|c| Ok(c.mul_left(&t)))?);
            debug_assert!(is_acs(&j)?);
            let xf = parse_field(&x, &ctx.sig)?;
            let yf = parse_field(&y, &ctx.sig)?;
            field_report(&nijenhuis(&j, &xf, &yf)?)
        }
        Cmd::Integrable { h } => {
            let (ctx, d) = deformation(&h, &[])?;
            let coeff = integrable_deformation_check(&ctx, &d);
            let eig = eigenbasis_closure_check(&ctx, &d)?;
            let mut lines = vec![format!("conditions: {coeff}"), format!("eigenbasis: {}", eig.closed)];
            lines.extend(eig.offending.iter().map(|o| format!("offending: {o}")));
            Report {
                lines,
                json: json!({ "conditions": coeff, "eigenbasis": eig.closed, "offending": eig.offending }),
            }
        }
        Cmd::LieDeform { base, field } => {
            let (_, k) = infer_sizes([field.as_str()]);
            let ctx = R22::new(base.unwrap_or(k));
            let d = lie_deformation(&ctx, &parse_field(&field, &ctx.sig)?)?;
            let parts = [("alpha", &d.alpha), ("beta", &d.beta), ("gamma", &d.gamma), ("delta", &d.delta)];
            Report {
                lines: parts.iter().map(|(n, p)| format!("{n}: {p}")).collect(),
                json: Json::Object(parts.iter().map(|(n, p)| (n.to_string(), json!(p.to_string()))).collect()),
            }
        }
        Cmd::Dims(a) => {
            let dim = if let Some(v) = a.vect {
                vect_teich_dim(v[0], v[1])?
            } else if let Some(g) = a.srs {
                srs_teich_dim(g)?
            } else if let Some(v) = a.aut {
                aut_dim(v[0], v[1])?
            } else {
                let g = a.spin.expect("clap enforces one option");
                return Ok(Report::single(spin_count(g).to_string()));
            };
            Report {
                lines: vec![dim.to_string()],
                json: json!({ "result": dim.to_string(), "even": dim.even, "odd": dim.odd }),
            }
        }
        Cmd::Table { .. } => {
            let table = extension_table();
            Report {
                lines: serialize_table(&table).lines().map(str::to_string).collect(),
                json: json!({ "extensions": table }),
            }
        }
    })
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let format = cli.format;
    match execute(cli.cmd) {
        Ok(r) => {
            let stdout = match format {
                Format::Text => r.lines.iter().map(|l| format!("{l}\n")).collect(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.json).unwrap()),
            };
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
