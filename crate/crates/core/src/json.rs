//! Deterministic JSON forms of the domain objects. Field order follows the
//! documented schemas; term order is descending lexicographic on exponent
//! tuples; Weyl elements serialize as 1-based reduced words.

use serde_json::{json, Map, Value};

use crate::demazure::DemazureElement;
use crate::error::{Error, Result};
use crate::homogeneous::HilbertSeries;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::rootdata::RootDatum;
use crate::schubert::SchubertFamily;
use crate::weyl::WeylGroup;

pub fn polynomial_to_json(p: &Polynomial, vars: &[String]) -> Value {
    let terms: Vec<Value> = p
        .terms_desc()
        .map(|(exp, c)| {
            json!({
                "exp": exp,
                "coeff": p.ring().format_scalar(c),
            })
        })
        .collect();
    json!({
        "vars": vars,
        "terms": terms,
    })
}

pub fn polynomial_from_json(ring: &Ring, v: &Value) -> Result<Polynomial> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("polynomial must be an object".into()))?;
    let vars = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing vars".into()))?;
    let nvars = vars.len();
    let mut out = Polynomial::zero(ring, nvars);
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing terms".into()))?;
    for t in terms {
        let exp: Vec<u32> = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("missing exp".into()))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::InvalidInput("bad exponent".into()))
            })
            .collect::<Result<_>>()?;
        if exp.len() != nvars {
            return Err(Error::InvalidInput("exponent arity mismatch".into()));
        }
        let coeff = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidInput("missing coeff".into()))?;
        let c = ring.parse_scalar(coeff)?;
        out = out.add(&Polynomial::monomial(ring, exp, c))?;
    }
    Ok(out)
}

pub fn datum_to_json(d: &RootDatum) -> Value {
    let mut obj = Map::new();
    if let Some(name) = d.name() {
        obj.insert("name".into(), json!(name));
    }
    obj.insert("rank".into(), json!(d.rank()));
    obj.insert("simple_roots".into(), json!(d.simple_roots()));
    obj.insert("simple_coroots".into(), json!(d.simple_coroots()));
    obj.insert("vars".into(), json!(d.var_names()));
    Value::Object(obj)
}

pub fn datum_from_json(v: &Value) -> Result<RootDatum> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("datum must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .map(|s| s.to_string());
    let vars: Vec<String> = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing vars".into()))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(|s| s.to_string())
                .ok_or_else(|| Error::InvalidInput("bad var name".into()))
        })
        .collect::<Result<_>>()?;
    let read_vectors = |key: &str| -> Result<Vec<Vec<i64>>> {
        obj.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput(format!("missing {key}")))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::InvalidInput("bad vector".into()))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::InvalidInput("bad integer".into()))
                    })
                    .collect()
            })
            .collect()
    };
    RootDatum::new(
        name,
        vars,
        read_vectors("simple_roots")?,
        read_vectors("simple_coroots")?,
    )
}

/// A Weyl element as its 1-based reduced word.
pub fn word_to_json(group: &WeylGroup, w: usize) -> Value {
    let word: Vec<usize> = group.element(w).word().iter().map(|&i| i + 1).collect();
    json!(word)
}

pub fn demazure_to_json(group: &WeylGroup, d: &DemazureElement, vars: &[String]) -> Value {
    let terms: Vec<Value> = d
        .terms()
        .map(|(w, coeff)| {
            json!({
                "word": word_to_json(group, w),
                "coeff": polynomial_to_json(coeff, vars),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn family_to_json(group: &WeylGroup, family: &SchubertFamily) -> Value {
    let members: Vec<Value> = family
        .members()
        .map(|(w, poly)| {
            json!({
                "word": word_to_json(group, w),
                "poly": polynomial_to_json(poly, group.datum().var_names()),
            })
        })
        .collect();
    let mut obj = Map::new();
    if let Some(name) = group.datum().name() {
        obj.insert("group".into(), json!(name));
    }
    obj.insert("ring".into(), json!(family.ring().to_string()));
    obj.insert("torsion_index".into(), json!(family.torsion_index()));
    obj.insert("members".into(), json!(members));
    Value::Object(obj)
}

pub fn matrix_to_json(
    group: &WeylGroup,
    generator: usize,
    order: &[usize],
    entries: &[Vec<Polynomial>],
    generator_names: &[String],
) -> Value {
    let basis_order: Vec<Value> = order.iter().map(|&w| word_to_json(group, w)).collect();
    let rows: Vec<Value> = entries
        .iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|p| p.format_with(generator_names))
                .collect();
            json!(cells)
        })
        .collect();
    let mut obj = Map::new();
    if let Some(name) = group.datum().name() {
        obj.insert("group".into(), json!(name));
    }
    obj.insert("generator".into(), json!(generator));
    obj.insert("basis_order".into(), json!(basis_order));
    obj.insert("entries".into(), json!(rows));
    Value::Object(obj)
}

pub fn series_to_json(s: &HilbertSeries) -> Value {
    let mut obj = Map::new();
    obj.insert("coeffs".into(), json!(s.coeffs));
    if let Some(cf) = &s.closed_form {
        obj.insert("closed_form".into(), json!(cf));
    }
    obj.insert("warnings".into(), json!(s.warnings));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset_datum;

    #[test]
    fn polynomial_round_trip() {
        let z = Ring::Integers;
        let e1 = Polynomial::variable(&z, 2, 0);
        let e2 = Polynomial::variable(&z, 2, 1);
        let f = e1
            .pow(2)
            .mul(&e2)
            .unwrap()
            .sub(&e2.pow(3).mul_i64(3))
            .unwrap();
        let vars = vec!["e1".to_string(), "e2".to_string()];
        let v = polynomial_to_json(&f, &vars);
        // descending lexicographic term order
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms[0]["exp"], json!([2, 1]));
        assert_eq!(terms[1]["coeff"], json!("-3"));
        let back = polynomial_from_json(&z, &v).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn fraction_coefficients() {
        let half = Ring::localized([2]).unwrap();
        let f = Polynomial::variable(&half, 1, 0)
            .mul_scalar(&half.parse_scalar("1/2").unwrap());
        let v = polynomial_to_json(&f, &["a1".to_string()]);
        assert_eq!(v["terms"][0]["coeff"], json!("1/2"));
        assert_eq!(polynomial_from_json(&half, &v).unwrap(), f);
    }

    #[test]
    fn datum_round_trip() {
        let sp2 = preset_datum("Sp2").unwrap();
        let v = datum_to_json(&sp2);
        assert_eq!(v["name"], json!("Sp2"));
        assert_eq!(v["simple_roots"], json!([[1, -1], [0, 2]]));
        assert_eq!(v["simple_coroots"], json!([[1, -1], [0, 1]]));
        let back = datum_from_json(&v).unwrap();
        assert_eq!(back, sp2);
    }

    #[test]
    fn family_json_shape() {
        let u2 = WeylGroup::enumerate(preset_datum("U2").unwrap()).unwrap();
        let fam = crate::schubert::schubert_family(
            &u2,
            &Ring::Integers,
            crate::schubert::TopClassStrategy::Preset,
        )
        .unwrap();
        let v = family_to_json(&u2, &fam);
        assert_eq!(v["group"], json!("U2"));
        assert_eq!(v["ring"], json!("Z"));
        assert_eq!(v["torsion_index"], json!(1));
        let members = v["members"].as_array().unwrap();
        assert_eq!(members.len(), 2);
        // identity first (sorted by length then word), empty word
        assert_eq!(members[0]["word"], json!([]));
        assert_eq!(members[1]["word"], json!([1]));
    }
}
