//! JSON encodings shared by the command-line front end and its tests.
//!
//! Indices `(i, l)` are written as the string `"i,l"` with `i` 1-based. Laurent
//! polynomials are objects `{"exponent": coefficient}`; coefficients are JSON integers of
//! arbitrary size.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};

use crate::cartan::{validate_cartan, CartanData, ValidateOptions};
use crate::charalg::{CharacterSeries, RepElement, RepMonomial, Status};
use crate::error::{Error, Result};
use crate::kl::KlResult;
use crate::laurent::Laurent;
use crate::screening::ScreeningElement;
use crate::yalgebra::{AlgebraContext, AlgebraElement, CommMonomial, ExponentVector};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn big(c: &BigInt) -> Value {
    Value::Number(Number::from_str(&c.to_string()).expect("integers are valid JSON numbers"))
}

fn big_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| parse_err(format!("not an integer: {n}"))),
        other => Err(parse_err(format!("expected an integer, got {other}"))),
    }
}

fn int_from(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("expected a small integer, got {v}")))
}

fn key(i: usize, l: i64) -> String {
    format!("{},{}", i + 1, l)
}

fn parse_key(k: &str) -> Result<(usize, i64)> {
    let (i, l) = k.split_once(',').ok_or_else(|| parse_err(format!("bad index key {k:?}")))?;
    let i: usize = i.trim().parse().map_err(|_| parse_err(format!("bad node in {k:?}")))?;
    let l: i64 = l.trim().parse().map_err(|_| parse_err(format!("bad spectral index in {k:?}")))?;
    if i == 0 {
        return Err(parse_err(format!("nodes are 1-based in {k:?}")));
    }
    Ok((i - 1, l))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be a list")))
}

fn field<'a>(m: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    m.get(name).ok_or_else(|| parse_err(format!("missing field {name:?}")))
}

fn index_map<I: Iterator<Item = ((usize, i64), i64)>>(entries: I) -> Value {
    Value::Object(entries.map(|((i, l), x)| (key(i, l), json!(x))).collect())
}

fn index_map_from(v: &Value) -> Result<Vec<((usize, i64), i64)>> {
    object(v, "index map")?
        .iter()
        .map(|(k, x)| Ok((parse_key(k)?, int_from(x)?)))
        .collect()
}

pub fn laurent_to_json(p: &Laurent) -> Value {
    Value::Object(p.terms().map(|(k, c)| (k.to_string(), big(c))).collect())
}

pub fn laurent_from_json(v: &Value) -> Result<Laurent> {
    let mut out = Laurent::zero();
    for (k, c) in object(v, "Laurent polynomial")? {
        let k: i64 = k.parse().map_err(|_| parse_err(format!("bad exponent {k:?}")))?;
        out.add_term(k, big_from(c)?);
    }
    Ok(out)
}

pub fn exponent_to_json(e: &ExponentVector) -> Value {
    json!({ "y": index_map(e.y_entries()), "v": index_map(e.v_entries()) })
}

pub fn exponent_from_json(v: &Value) -> Result<ExponentVector> {
    let m = object(v, "monomial")?;
    let y = match m.get("y") {
        Some(y) => index_map_from(y)?,
        None => Vec::new(),
    };
    let vv = match m.get("v") {
        Some(x) => index_map_from(x)?,
        None => Vec::new(),
    };
    Ok(ExponentVector::from_parts(y, vv))
}

/// A list of `{"y", "v", "coeff"}`, in the module order.
pub fn element_to_json(x: &AlgebraElement) -> Value {
    Value::Array(
        x.terms()
            .map(|(e, c)| {
                json!({ "y": index_map(e.y_entries()), "v": index_map(e.v_entries()), "coeff": laurent_to_json(c) })
            })
            .collect(),
    )
}

pub fn element_from_json(v: &Value) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for t in array(v, "element")? {
        let e = exponent_from_json(t)?;
        let c = laurent_from_json(field(object(t, "term")?, "coeff")?)?;
        out.add_term(e, &c);
    }
    Ok(out)
}

/// A list of `{"monomial", "s_index", "coeff"}`; the screening direction is carried
/// alongside as `node`.
pub fn screening_to_json(x: &ScreeningElement) -> Value {
    json!({
        "node": x.node() + 1,
        "terms": x
            .terms()
            .map(|(e, l, c)| json!({ "monomial": exponent_to_json(e), "s_index": l, "coeff": laurent_to_json(c) }))
            .collect::<Vec<_>>(),
    })
}

pub fn screening_from_json(v: &Value) -> Result<ScreeningElement> {
    let m = object(v, "screening element")?;
    let node = int_from(field(m, "node")?)?;
    if node < 1 {
        return Err(parse_err("nodes are 1-based"));
    }
    let mut out = ScreeningElement::zero(node as usize - 1);
    for t in array(field(m, "terms")?, "terms")? {
        let tm = object(t, "term")?;
        out.add_term(
            exponent_from_json(field(tm, "monomial")?)?,
            int_from(field(tm, "s_index")?)?,
            &laurent_from_json(field(tm, "coeff")?)?,
        );
    }
    Ok(out)
}

pub fn comm_to_json(m: &CommMonomial) -> Value {
    index_map(m.entries())
}

/// `{"x": {"i,l": k}, "coeff"}` per term.
pub fn rep_to_json(x: &RepElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(m, c)| {
                json!({ "x": index_map(m.entries().map(|(k, e)| (k, e as i64))), "coeff": laurent_to_json(c) })
            })
            .collect(),
    )
}

pub fn rep_from_json(v: &Value) -> Result<RepElement> {
    let mut out = RepElement::new();
    for t in array(v, "Rep element")? {
        let tm = object(t, "term")?;
        let mut map = BTreeMap::new();
        for (k, x) in index_map_from(field(tm, "x")?)? {
            let x = u32::try_from(x).map_err(|_| parse_err("Rep exponents are non-negative"))?;
            map.insert(k, x);
        }
        crate::charalg::rep_add_term(&mut out, RepMonomial::from_map(map), &laurent_from_json(field(tm, "coeff")?)?);
    }
    Ok(out)
}

pub fn status_to_json(s: &Status) -> Value {
    match s {
        Status::Complete => json!("complete"),
        Status::Truncated => json!("truncated"),
        Status::Inconsistent { witness } => json!({ "inconsistent": exponent_to_json(witness) }),
    }
}

pub fn status_from_json(v: &Value) -> Result<Status> {
    match v {
        Value::String(s) if s == "complete" => Ok(Status::Complete),
        Value::String(s) if s == "truncated" => Ok(Status::Truncated),
        Value::Object(m) => Ok(Status::Inconsistent { witness: exponent_from_json(field(m, "inconsistent")?)? }),
        other => Err(parse_err(format!("unknown status {other}"))),
    }
}

pub fn series_to_json(x: &CharacterSeries) -> Value {
    json!({
        "seed": exponent_to_json(&x.seed),
        "max_degree": x.max_degree,
        "status": status_to_json(&x.status),
        "element": element_to_json(&x.element),
        "collisions": x.collisions.iter().map(exponent_to_json).collect::<Vec<_>>(),
    })
}

/// The `t = 1` commutative image as a list of `{"y", "coeff"}`.
pub fn classical_to_json(x: &BTreeMap<CommMonomial, BigInt>) -> Value {
    Value::Array(x.iter().map(|(m, c)| json!({ "y": comm_to_json(m), "coeff": big(c) })).collect())
}

/// Monomials are written with their bar-invariant normalization `t^{alpha}`.
pub fn kl_to_json(ctx: &AlgebraContext, r: &KlResult) -> Value {
    let mono = |e: &ExponentVector| {
        json!({ "monomial": exponent_to_json(e), "t_power": ctx.normalize_invariant(e), "text": e.to_string() })
    };
    let pairs = |m: &BTreeMap<(ExponentVector, ExponentVector), Laurent>| {
        m.iter()
            .map(|((from, to), p)| json!({ "from": mono(from), "to": mono(to), "poly": laurent_to_json(p) }))
            .collect::<Vec<_>>()
    };
    json!({
        "seed": mono(&r.seed),
        "basis": r.basis.iter().map(mono).collect::<Vec<_>>(),
        "P": pairs(&r.p),
        "mu": pairs(&r.mu),
        "L": r.basis.iter().map(|e| json!({ "monomial": mono(e), "element": element_to_json(&r.l[e]) })).collect::<Vec<_>>(),
        "standard": element_to_json(&r.standard),
        "max_degree": r.max_degree,
        "status": status_to_json(&r.status),
    })
}

/// The contents of a Cartan input file.
#[derive(Clone, Debug, Deserialize)]
pub struct CartanFile {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub symmetrizer: Option<Vec<i64>>,
    #[serde(default)]
    pub name: Option<String>,
}

pub fn read_cartan(text: &str, allow_decomposable: bool) -> Result<CartanData> {
    let file: CartanFile = serde_json::from_str(text).map_err(|e| parse_err(format!("Cartan file: {e}")))?;
    validate_cartan(
        file.matrix,
        ValidateOptions { symmetrizer: file.symmetrizer, allow_decomposable, name: file.name },
    )
}

pub fn cartan_to_json(cd: &CartanData) -> Value {
    let mut v = json!({ "matrix": cd.matrix(), "symmetrizer": cd.symmetrizer() });
    if let Some(n) = cd.name() {
        v["name"] = json!(n);
    }
    v
}

/// Flags, symmetrizer, `r^vee` and `det C(z)`.
pub fn classification_report(cd: &CartanData) -> Value {
    let det = cd.det_cz();
    json!({
        "name": cd.name(),
        "rank": cd.rank(),
        "matrix": cd.matrix(),
        "symmetrizer": cd.symmetrizer(),
        "r_vee": cd.rvee(),
        "flags": serde_json::to_value(cd.flags()).expect("flags serialize"),
        "det_cz": laurent_to_json(&det.det),
        "det_cz_is_zero": det.is_zero,
    })
}
