//! JSON forms of lines, polynomials and pencils whose coefficients may lie in a number field.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::covmoduli::QuadraticPencil;
use crate::error::{Error, Result};
use crate::exactpoly::{BiForm, Field, NfElem, NumberField, Rat};
use crate::linegeom::{LineData, MultiPoly};

/// Coefficient field named in a JSON document.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Rationals,
    NumberField(Arc<NumberField>),
}

/// Field elements that know their JSON representation.
pub trait JsonElem: Field {
    fn to_json(&self) -> Value;
}

impl JsonElem for Rat {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonElem for NfElem {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_i64()
            .map(Rat::from)
            .ok_or_else(|| bad(format!("non-integer number {n}; write rationals as \"p/q\""))),
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

fn parse_rats(v: &Value) -> Result<Vec<Rat>> {
    v.as_array().ok_or_else(|| bad("expected an array"))?.iter().map(parse_rat).collect()
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn get_u32(v: &Value, key: &str) -> Result<u32> {
    get(v, key)?
        .as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| bad(format!("field {key:?} must be a small nonnegative integer")))
}

/// `"Q"`, a missing field, or `{"modulus": [...]}` (lowest degree first).
pub fn parse_field(v: Option<&Value>) -> Result<FieldSpec> {
    match v {
        None => Ok(FieldSpec::Rationals),
        Some(Value::String(s)) if s == "Q" => Ok(FieldSpec::Rationals),
        Some(obj @ Value::Object(_)) => {
            Ok(FieldSpec::NumberField(NumberField::new(parse_rats(get(obj, "modulus")?)?)?))
        }
        Some(other) => Err(bad(format!("unknown field {other}"))),
    }
}

pub fn field_to_json(spec: &FieldSpec) -> Value {
    match spec {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::NumberField(k) => {
            json!({ "modulus": k.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>() })
        }
    }
}

/// A number-field element is an array of rationals; a bare rational embeds.
pub fn parse_nf(k: &Arc<NumberField>, v: &Value) -> Result<NfElem> {
    match v {
        Value::Array(_) => Ok(k.element(parse_rats(v)?)),
        _ => Ok(k.from_rat(parse_rat(v)?)),
    }
}

/// Parsed line, over whichever field the document names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLine {
    Rational(LineData<Rat>),
    NumberField(LineData<NfElem>),
}

fn parse_forms<F: Field>(v: &Value, elem: &dyn Fn(&Value) -> Result<F>) -> Result<Vec<BiForm<F>>> {
    v.as_array()
        .ok_or_else(|| bad("\"f\" must be an array of coefficient arrays"))?
        .iter()
        .map(|form| {
            let cs = form
                .as_array()
                .ok_or_else(|| bad("each form is an array of coefficients"))?
                .iter()
                .map(elem)
                .collect::<Result<Vec<F>>>()?;
            if cs.is_empty() {
                return Err(bad("empty form"));
            }
            BiForm::new(cs.len() - 1, cs)
        })
        .collect()
}

/// `{"N", "k", "f": [[c_0, ..., c_{k-1}], ...], "field"}` where `c_i` multiplies `s^i t^(k-1-i)`.
pub fn parse_line(v: &Value) -> Result<AnyLine> {
    let (n, k) = (get_u32(v, "N")?, get_u32(v, "k")?);
    let f = get(v, "f")?;
    match parse_field(v.get("field"))? {
        FieldSpec::Rationals => Ok(AnyLine::Rational(LineData::new(n, k, parse_forms(f, &parse_rat)?)?)),
        FieldSpec::NumberField(kf) => {
            let elem = |x: &Value| parse_nf(&kf, x);
            Ok(AnyLine::NumberField(LineData::new(n, k, parse_forms(f, &elem)?)?))
        }
    }
}

pub fn line_to_json<F: JsonElem>(line: &LineData<F>, field: &FieldSpec) -> Value {
    json!({
        "N": line.n,
        "k": line.k,
        "f": line.f.iter().map(|g| g.coeffs().iter().map(JsonElem::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "field": field_to_json(field),
    })
}

/// `[[exponents], coeff]` pairs.
pub fn parse_multipoly<F: Field>(v: &Value, nvars: usize, elem: &dyn Fn(&Value) -> Result<F>) -> Result<MultiPoly<F>> {
    let terms = v
        .as_array()
        .ok_or_else(|| bad("polynomial must be an array of [exponents, coefficient] pairs"))?
        .iter()
        .map(|pair| {
            let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("expected [exponents, coefficient]"))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| bad("exponents must be an array"))?
                .iter()
                .map(|e| e.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<Vec<u32>>>()?;
            Ok((exps, elem(&pair[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::new(nvars, terms)
}

/// A rational pencil from two `(s^2, st, t^2)` triples.
pub fn parse_pencil(v: &Value) -> Result<QuadraticPencil<Rat>> {
    let triple = |key: &str| -> Result<[Rat; 3]> {
        let xs = parse_rats(get(v, key)?)?;
        xs.try_into().map_err(|_| bad(format!("{key:?} needs three coefficients")))
    };
    QuadraticPencil::from_triples(triple("phi1")?, triple("phi2")?)
}

pub fn pencil_to_json<F: JsonElem>(p: &QuadraticPencil<F>) -> Value {
    let t = |phi| QuadraticPencil::triple(phi).iter().map(JsonElem::to_json).collect::<Vec<_>>();
    json!({ "phi1": t(&p.phi1), "phi2": t(&p.phi2) })
}
