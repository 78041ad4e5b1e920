use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtchar_core::charalg::{
    associator, stops_probe, AlgorithmOptions, Characters, ProbeOutcome, RepMonomial, Route, Status,
};
use qtchar_core::io;
use qtchar_core::kl::kl_decompose;
use qtchar_core::yalgebra::word::parse_element;
use qtchar_core::yalgebra::{AlgebraContext, ExponentVector, Mode};
use qtchar_core::{charalg, Error};
use serde_json::{json, Value};

use crate::text;

pub const EXIT_TRUNCATED: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "qtchar", version, about = "Deformed (q,t)-characters and Kazhdan-Lusztig decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Tau,
    Axquat,
}

#[derive(Args, Debug)]
pub struct Common {
    /// JSON file with "matrix" and optional "symmetrizer" and "name".
    #[arg(long)]
    pub cartan: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Accept decomposable matrices.
    #[arg(long)]
    pub allow_decomposable: bool,
}

#[derive(Args, Debug)]
pub struct Truncation {
    /// Degree bound relative to the head monomial; echoed in every report.
    #[arg(long, default_value_t = 10)]
    pub max_degree: i64,
    /// Run the algorithm even when some C_ij*C_ji exceeds 3.
    #[arg(long)]
    pub allow_large_cc: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a Cartan matrix and print its symmetrizer, flags and det C(z).
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Character of a Rep monomial such as "X[1,0]*X[2,1]".
    Compute {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: String,
        /// Root-of-unity order; 0 is generic.
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Print the commutative t = 1 image instead.
        #[arg(long)]
        t1: bool,
        #[arg(long, value_enum, default_value = "tau")]
        route: RouteArg,
        #[command(flatten)]
        truncation: Truncation,
    },
    /// Whether the deformed algorithm stops from a Rep monomial seed.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: String,
        #[command(flatten)]
        truncation: Truncation,
    },
    /// Kazhdan-Lusztig decomposition of the standard element of a dominant monomial.
    Kl {
        #[command(flatten)]
        common: Common,
        /// A word such as "Y[0]*Y[1]*Y[2]" or "Y[1,0]*A[1,1]^-1*Y[1,2]".
        #[arg(long)]
        monomial: String,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[command(flatten)]
        truncation: Truncation,
    },
    /// Deformed product of two Rep monomials.
    Star {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also report (left*right)*third - left*(right*third).
        #[arg(long)]
        associator: Option<String>,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[command(flatten)]
        truncation: Truncation,
    },
}

pub struct Report {
    pub body: String,
    pub exit: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub exit: u8,
}

impl Failure {
    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "message": self.message } })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Inconsistent { .. } => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure { code: e.code(), message: e.to_string(), exit }
    }
}

fn status_exit(s: &Status) -> u8 {
    match s {
        Status::Complete => 0,
        Status::Truncated => EXIT_TRUNCATED,
        Status::Inconsistent { .. } => EXIT_INCONSISTENT,
    }
}

fn load(common: &Common) -> Result<qtchar_core::cartan::CartanData, Failure> {
    let raw = std::fs::read_to_string(&common.cartan).map_err(|e| Failure {
        code: "io",
        message: format!("{}: {e}", common.cartan.display()),
        exit: EXIT_IO,
    })?;
    Ok(io::read_cartan(&raw, common.allow_decomposable)?)
}

fn options(t: &Truncation) -> AlgorithmOptions {
    AlgorithmOptions { max_degree: t.max_degree, allow_large_cc: t.allow_large_cc }
}

fn finish(format: Format, json_body: Value, text_body: String, exit: u8) -> Report {
    let body = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&json_body).expect("reports serialize")),
        Format::Text => text_body,
    };
    Report { body, exit }
}

fn single_monomial(ctx: &AlgebraContext, word: &str) -> Result<ExponentVector, Failure> {
    let x = parse_element(ctx, word)?;
    if x.len() != 1 {
        return Err(Error::Parse(format!("{word:?} is not a single monomial")).into());
    }
    Ok(x.leading().expect("one term").0.clone())
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Classify { common } => {
            let cd = load(common)?;
            let report = io::classification_report(&cd);
            Ok(finish(common.format, report.clone(), text::classification(&report), 0))
        }
        Command::Compute { common, seed, s, t1, route, truncation } => {
            let cd = load(common)?;
            let ctx = AlgebraContext::new(cd, *s, Mode::Standard)?;
            let chars = Characters::new(ctx, options(truncation))?;
            let m = RepMonomial::parse(seed, chars.context().rank())?;
            let route = match route {
                RouteArg::Tau => Route::Tau,
                RouteArg::Axquat => Route::Axquat,
            };
            let series = if *s == 0 { chars.chi_qt(&m)? } else { chars.chi_eps_t(&m, route)? };
            let mut body = json!({
                "command": "compute",
                "seed": m.to_string(),
                "s": s,
                "max_degree": truncation.max_degree,
                "status": io::status_to_json(&series.status),
                "collisions": series.collisions.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            });
            if *s != 0 {
                body["route"] = json!(if route == Route::Tau { "tau" } else { "axquat" });
            }
            let text_body = if *t1 {
                let classical = series.element.pi_hat_t1(chars.context());
                body["classical"] = io::classical_to_json(&classical);
                text::classical(&m.to_string(), truncation.max_degree, &series.status, &classical)
            } else {
                body["element"] = io::element_to_json(&series.element);
                text::series(&m.to_string(), truncation.max_degree, &series.status, &series.element)
            };
            Ok(finish(common.format, body, text_body, status_exit(&series.status)))
        }
        Command::Probe { common, seed, truncation } => {
            let cd = load(common)?;
            let ctx = AlgebraContext::new(cd, 0, Mode::Standard)?;
            let m = RepMonomial::parse(seed, ctx.rank())?;
            let report = stops_probe(&ctx, &m.to_y_vector(), options(truncation))?;
            let (kind, value, exit) = match &report.outcome {
                ProbeOutcome::StoppedAt(d) => ("stopped_at", json!(d), 0),
                ProbeOutcome::NotStoppedBy(d) => ("not_stopped_by", json!(d), EXIT_TRUNCATED),
                ProbeOutcome::AntidominantFound(e) => ("antidominant_found", json!(e.to_string()), EXIT_TRUNCATED),
                ProbeOutcome::Inconsistent(e) => ("inconsistent", json!(e.to_string()), EXIT_INCONSISTENT),
            };
            let body = json!({
                "command": "probe",
                "seed": m.to_string(),
                "max_degree": truncation.max_degree,
                "outcome": { "kind": kind, "value": value },
                "monomials": report.monomials,
                "null_vector": report.null_vector,
                "invariant_value": report.invariant_value,
                "invariant_holds": report.invariant_holds,
            });
            let text_body = text::probe(&body);
            Ok(finish(common.format, body, text_body, exit))
        }
        Command::Kl { common, monomial, s, truncation } => {
            let cd = load(common)?;
            let ctx = AlgebraContext::new(cd, *s, Mode::Standard)?;
            let chars = Characters::new(ctx, options(truncation))?;
            let e = single_monomial(chars.context(), monomial)?;
            let result = kl_decompose(&chars, &e)?;
            let mut body = io::kl_to_json(chars.context(), &result);
            // The seed column, diagonal included: the terms of the decomposition itself.
            let mut column = vec![json!({ "from": body["seed"].clone(), "to": body["seed"].clone(), "poly": {"0": 1} })];
            for (m1, p) in result.seed_polynomials() {
                column.push(json!({
                    "from": { "monomial": io::exponent_to_json(&m1), "t_power": chars.context().normalize_invariant(&m1), "text": m1.to_string() },
                    "to": body["seed"].clone(),
                    "poly": io::laurent_to_json(&p),
                }));
            }
            body["P_all"] = body["P"].take();
            body["P"] = Value::Array(column);
            body["command"] = json!("kl");
            body["s"] = json!(s);
            let text_body = text::kl(chars.context(), &result);
            Ok(finish(common.format, body, text_body, status_exit(&result.status)))
        }
        Command::Star { common, left, right, associator: third, s, truncation } => {
            let cd = load(common)?;
            let ctx = AlgebraContext::new(cd, *s, Mode::Standard)?;
            let chars = Characters::new(ctx, options(truncation))?;
            let rank = chars.context().rank();
            let term = |w: &str| -> Result<charalg::RepElement, Failure> {
                Ok(charalg::rep_term(RepMonomial::parse(w, rank)?, qtchar_core::laurent::Laurent::one()))
            };
            let (a, b) = (term(left)?, term(right)?);
            let product = charalg::star_product(&chars, &a, &b)?;
            let mut body = json!({
                "command": "star",
                "left": left,
                "right": right,
                "s": s,
                "max_degree": truncation.max_degree,
                "product": io::rep_to_json(&product),
            });
            let mut text_body = format!("max_degree {}\n{} * {} =\n{}", truncation.max_degree, left, right, text::rep(&product));
            if let Some(c) = third {
                let defect = associator(&chars, &a, &b, &term(c)?)?;
                body["associator"] = json!({ "third": c, "defect": io::rep_to_json(&defect), "associative": defect.is_empty() });
                text_body.push_str(&format!("associator with {c}:\n{}", if defect.is_empty() { "  0\n".to_string() } else { text::rep(&defect) }));
            }
            Ok(finish(common.format, body, text_body, 0))
        }
    }
}
