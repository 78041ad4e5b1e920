//! Human-oriented renderings. Not a stable interface.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use qtchar_core::charalg::{RepElement, Status};
use qtchar_core::kl::KlResult;
use qtchar_core::laurent::Laurent;
use qtchar_core::yalgebra::{AlgebraContext, AlgebraElement, CommMonomial};
use serde_json::Value;

fn status(s: &Status) -> String {
    match s {
        Status::Complete => "complete".into(),
        Status::Truncated => "truncated".into(),
        Status::Inconsistent { witness } => format!("inconsistent at {witness}"),
    }
}

fn poly(p: &Laurent) -> String {
    p.display_in("t")
}

fn element(x: &AlgebraElement) -> String {
    let width = x.terms().map(|(_, c)| poly(c).len()).max().unwrap_or(0);
    let mut out = String::new();
    for (e, c) in x.terms() {
        let _ = writeln!(out, "  {:>width$}  {e}", poly(c));
    }
    out
}

pub fn series(seed: &str, max_degree: i64, st: &Status, x: &AlgebraElement) -> String {
    format!("seed {seed}\nmax_degree {max_degree}\nstatus {}\nterms {}\n{}", status(st), x.len(), element(x))
}

pub fn classical(seed: &str, max_degree: i64, st: &Status, x: &BTreeMap<CommMonomial, BigInt>) -> String {
    let mut out = format!("seed {seed}\nmax_degree {max_degree}\nstatus {}\n", status(st));
    for (m, c) in x {
        let name: Vec<String> = m
            .entries()
            .map(|((i, l), k)| if k == 1 { format!("Y[{},{l}]", i + 1) } else { format!("Y[{},{l}]^{k}", i + 1) })
            .collect();
        let name = if name.is_empty() { "1".to_string() } else { name.join("*") };
        let _ = writeln!(out, "  {c:>4}  {name}");
    }
    out
}

pub fn rep(x: &RepElement) -> String {
    let mut out = String::new();
    for (m, c) in x {
        let _ = writeln!(out, "  {:>12}  {m}", poly(c));
    }
    out
}

pub fn classification(v: &Value) -> String {
    let mut out = String::new();
    if let Some(n) = v["name"].as_str() {
        let _ = writeln!(out, "name         {n}");
    }
    let _ = writeln!(out, "rank         {}", v["rank"]);
    let _ = writeln!(out, "symmetrizer  {}", v["symmetrizer"]);
    let _ = writeln!(out, "r_vee        {}", v["r_vee"]);
    let _ = writeln!(out, "det C(z)     {}", v["det_cz"]);
    if let Some(flags) = v["flags"].as_object() {
        for (k, f) in flags {
            let _ = writeln!(out, "{k:<16} {f}");
        }
    }
    out
}

pub fn probe(v: &Value) -> String {
    format!(
        "seed {}\nmax_degree {}\noutcome {} {}\nmonomials {}\nnull vector {}\ninvariant {} (holds: {})\n",
        v["seed"].as_str().unwrap_or(""),
        v["max_degree"],
        v["outcome"]["kind"].as_str().unwrap_or(""),
        v["outcome"]["value"],
        v["monomials"],
        v["null_vector"],
        v["invariant_value"],
        v["invariant_holds"],
    )
}

pub fn kl(ctx: &AlgebraContext, r: &KlResult) -> String {
    let named = |e: &qtchar_core::yalgebra::ExponentVector| format!("t^{} {e}", ctx.normalize_invariant(e));
    let mut out = format!("seed {}\nmax_degree {}\nstatus {}\n", named(&r.seed), r.max_degree, status(&r.status));
    let _ = writeln!(out, "E = L({})", named(&r.seed));
    for (m, p) in r.seed_polynomials() {
        let _ = writeln!(out, "  + ({}) L({})", poly(&p), named(&m));
    }
    for e in &r.basis {
        let _ = write!(out, "L({}):\n{}", named(e), element(&r.l[e]));
    }
    out
}
