//! JSON forms of the engine's values.
//!
//! Rationals are strings `"num/den"` with decimal big integers. Monomials are
//! exponent vectors over the object's `variables` list, which is kept in the
//! engine's canonical variable order.

use std::collections::BTreeSet;
use std::str::FromStr;

use census_core::census::Provenance;
use census_core::{Atom, CurveData, FactoredRat, KacResult, Monomial, Partition, Rational, SparsePoly, Var};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Engine(#[from] census_core::CensusError),
}

type Result<T> = std::result::Result<T, FormatError>;

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Schema(msg.into()))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| FormatError::Schema(format!("expected a rational string, got {v}")))?;
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let parse = |x: &str| BigInt::from_str(x.trim()).map_err(|_| FormatError::Schema(format!("bad integer in {s:?}")));
    let (n, d) = (parse(n)?, parse(d)?);
    if d == BigInt::from(0) {
        return schema(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::from_bigints(n, d))
}

fn sorted_vars(monos: impl IntoIterator<Item = Monomial>) -> Vec<Var> {
    let mut set = BTreeSet::new();
    for m in monos {
        for (v, _) in m.vars() {
            set.insert(v.slot());
        }
    }
    set.into_iter().map(Var::from_slot).collect()
}

fn vars_to_json(vars: &[Var]) -> Value {
    Value::Array(vars.iter().map(|v| Value::String(v.name())).collect())
}

fn vars_from_json(v: Option<&Value>) -> Result<Vec<Var>> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| FormatError::Schema("missing \"variables\" array".into()))?;
    arr.iter()
        .map(|x| {
            let name = x.as_str().unwrap_or_default();
            Var::from_name(name).ok_or_else(|| FormatError::Schema(format!("unknown variable {x}")))
        })
        .collect()
}

fn mono_to_json(m: &Monomial, vars: &[Var]) -> Value {
    Value::Array(vars.iter().map(|&v| json!(m.exp(v))).collect())
}

fn mono_from_json(v: &Value, vars: &[Var]) -> Result<Monomial> {
    let arr = v.as_array().ok_or_else(|| FormatError::Schema(format!("expected exponent vector, got {v}")))?;
    if arr.len() != vars.len() {
        return schema(format!("exponent vector {v} does not match {} variables", vars.len()));
    }
    let mut m = Monomial::ONE;
    for (&var, e) in vars.iter().zip(arr) {
        let e = e.as_i64().filter(|e| e.abs() <= i16::MAX as i64);
        let e = e.ok_or_else(|| FormatError::Schema(format!("bad exponent in {v}")))?;
        m = m.with_exp(var, e as i32);
    }
    Ok(m)
}

fn terms_to_json(p: &SparsePoly, vars: &[Var]) -> Value {
    Value::Array(p.terms().iter().map(|(m, c)| json!([mono_to_json(m, vars), rational_to_json(c)])).collect())
}

fn terms_from_json(v: Option<&Value>, vars: &[Var]) -> Result<SparsePoly> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| FormatError::Schema("missing term list".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        match t.as_array().map(Vec::as_slice) {
            Some([m, c]) => terms.push((mono_from_json(m, vars)?, rational_from_json(c)?)),
            _ => return schema(format!("expected [exponents, coefficient], got {t}")),
        }
    }
    Ok(SparsePoly::from_terms(terms))
}

pub fn poly_to_json(p: &SparsePoly) -> Value {
    let vars = sorted_vars(p.terms().iter().map(|(m, _)| *m));
    json!({ "variables": vars_to_json(&vars), "terms": terms_to_json(p, &vars) })
}

pub fn poly_from_json(v: &Value) -> Result<SparsePoly> {
    let vars = vars_from_json(v.get("variables"))?;
    terms_from_json(v.get("terms"), &vars)
}

pub fn factored_to_json(f: &FactoredRat) -> Value {
    let monos = std::iter::once(*f.prefactor())
        .chain(f.numerator().terms().iter().map(|(m, _)| *m))
        .chain(f.denominator().iter().map(|(a, _)| *a.shape()));
    let vars = sorted_vars(monos);
    let den: Vec<Value> = f
        .denominator()
        .iter()
        .map(|(a, k)| json!([rational_to_json(a.constant()), mono_to_json(a.shape(), &vars), k]))
        .collect();
    json!({
        "variables": vars_to_json(&vars),
        "prefactor": mono_to_json(f.prefactor(), &vars),
        "numerator": terms_to_json(f.numerator(), &vars),
        "denominator": den,
    })
}

pub fn factored_from_json(v: &Value) -> Result<FactoredRat> {
    let vars = vars_from_json(v.get("variables"))?;
    let pre = mono_from_json(v.get("prefactor").unwrap_or(&Value::Null), &vars)?;
    let num = terms_from_json(v.get("numerator"), &vars)?;
    let den = v.get("denominator").and_then(Value::as_array).ok_or_else(|| FormatError::Schema("missing denominator".into()))?;
    let mut atoms = Vec::with_capacity(den.len());
    for d in den {
        let (c, m, k) = match d.as_array().map(Vec::as_slice) {
            Some([c, m]) => (c, m, 1),
            Some([c, m, k]) => (c, m, k.as_u64().filter(|&k| k > 0 && k <= u32::MAX as u64).ok_or_else(|| FormatError::Schema(format!("bad multiplicity in {d}")))?),
            _ => return schema(format!("expected [constant, shape, multiplicity], got {d}")),
        };
        let atom = Atom::from_canonical(rational_from_json(c)?, mono_from_json(m, &vars)?)
            .ok_or_else(|| FormatError::Schema(format!("{d} is not a canonical denominator atom")))?;
        atoms.push((atom, k as u32));
    }
    Ok(FactoredRat::from_parts(pre, num, atoms))
}

pub fn partition_to_json(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn partition_from_json(v: &Value) -> Result<Partition> {
    let parts: Vec<u32> = serde_json::from_value(v.clone())?;
    if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
        return schema(format!("{v} is not a weakly decreasing list of positive integers"));
    }
    Ok(Partition::new(parts))
}

/// Parses a curve file `{"q": …, "genus": …, "point_counts": [N_1, …, N_g]}`.
pub fn curve_from_str(text: &str) -> Result<CurveData> {
    let v: Value = serde_json::from_str(text)?;
    let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| FormatError::Schema("\"q\" must be a positive integer".into()))?;
    let g = v.get("genus").and_then(Value::as_u64).ok_or_else(|| FormatError::Schema("\"genus\" must be a nonnegative integer".into()))?;
    let counts: Vec<i64> = serde_json::from_value(v.get("point_counts").cloned().unwrap_or(Value::Null))
        .map_err(|_| FormatError::Schema("\"point_counts\" must be an integer array".into()))?;
    if counts.len() as u64 != g {
        return schema(format!("genus {g} needs {g} point counts, got {}", counts.len()));
    }
    Ok(census_core::zeta::weil_from_counts(q, &counts)?)
}

pub fn curve_to_json(c: &CurveData) -> Value {
    json!({ "q": c.q, "genus": c.genus, "point_counts": c.point_counts })
}

fn provenance_to_json(p: &Provenance) -> Value {
    json!({ "route": p.route, "t_order": p.t_order, "z_order": p.z_order, "engine": crate::ENGINE_VERSION })
}

/// `{genus, rank, degree_class, polynomial, flags, provenance}`; the wall
/// time is left out so that output is reproducible.
pub fn kac_to_json(k: &KacResult) -> Value {
    let polynomial = match k.polynomial() {
        Some(p) => json!({ "kind": "polynomial", "value": poly_to_json(&p) }),
        None => json!({ "kind": "rational", "value": factored_to_json(&k.value) }),
    };
    json!({
        "genus": k.genus,
        "rank": k.rank,
        "degree_class": k.degree_class,
        "polynomial": polynomial,
        "flags": { "is_polynomial": k.is_polynomial, "is_d_independent": k.is_d_independent },
        "provenance": provenance_to_json(&k.provenance),
    })
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    v.get(key).and_then(Value::as_u64).ok_or_else(|| FormatError::Schema(format!("missing integer {key:?}")))
}

fn get_bool(v: &Value, key: &str) -> Result<bool> {
    v.get(key).and_then(Value::as_bool).ok_or_else(|| FormatError::Schema(format!("missing flag {key:?}")))
}

pub fn kac_from_json(v: &Value) -> Result<KacResult> {
    let poly = v.get("polynomial").ok_or_else(|| FormatError::Schema("missing polynomial".into()))?;
    let body = poly.get("value").unwrap_or(&Value::Null);
    let value = match poly.get("kind").and_then(Value::as_str) {
        Some("polynomial") => FactoredRat::from_poly(poly_from_json(body)?),
        Some("rational") => factored_from_json(body)?,
        _ => return schema("polynomial.kind must be \"polynomial\" or \"rational\""),
    };
    let flags = v.get("flags").unwrap_or(&Value::Null);
    let prov = v.get("provenance").unwrap_or(&Value::Null);
    Ok(KacResult {
        genus: get_u64(v, "genus")? as usize,
        rank: get_u64(v, "rank")? as u32,
        degree_class: get_u64(v, "degree_class")? as u32,
        value,
        is_polynomial: get_bool(flags, "is_polynomial")?,
        is_d_independent: get_bool(flags, "is_d_independent")?,
        provenance: Provenance {
            route: prov.get("route").and_then(Value::as_str).unwrap_or("rational").to_string(),
            t_order: get_u64(prov, "t_order")? as u32,
            z_order: prov.get("z_order").and_then(Value::as_u64).map(|z| z as u32),
            wall_time_ms: None,
        },
    })
}

/// Pretty JSON; object keys come out sorted, so output is reproducible.
pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
