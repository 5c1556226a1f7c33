//! JSON persistence for code specifications.
//!
//! A spec document looks like:
//!
//! ```json
//! {
//!   "kind": "tamo_barg",
//!   "ring": {"p": 11, "s": 2, "m": 1, "modulus": [0, 1]},
//!   "partition": {
//!     "points": [[1], [3], [9]],
//!     "blocks": [[0, 1, 2]],
//!     "certificate": "subtractive"
//!   },
//!   "good_poly": {"g": [[0], [0], [1]], "values": [[1]],
//!                 "monic": true, "values_subtractive": true},
//!   "params": {"r": 2, "t": 1}
//! }
//! ```
//!
//! Elements are arrays of coefficients in little-endian order; a bare
//! integer is accepted as shorthand for a constant. Stored certificates
//! and flags are informational only: loading re-validates the partition
//! and re-verifies the good polynomial from scratch, so a hand-edited
//! document cannot smuggle an unchecked code into the constructors.

use crate::codes::{make_code, CodeSpec, CoeffMap, Construction};
use crate::poly::Poly;
use crate::ring::{Elem, GaloisRing};
use crate::sets::Partition;
use crate::{Error, Result};
use serde_json::{json, Map, Value};

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(what, v))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| parse_err(what, v))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    Ok(as_u64(v, what)? as usize)
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, v))
}

pub fn elem_to_json(e: &Elem) -> Value {
    Value::Array(e.coeffs().iter().map(|&c| json!(c)).collect())
}

pub fn elem_from_json(ring: &GaloisRing, v: &Value) -> Result<Elem> {
    if let Some(i) = v.as_i64() {
        return Ok(ring.from_int(i));
    }
    let arr = as_array(v, "element (integer or coefficient array)")?;
    let coeffs: Vec<i64> = arr
        .iter()
        .map(|c| c.as_i64().ok_or_else(|| parse_err("integer coefficient", c)))
        .collect::<Result<_>>()?;
    if coeffs.len() > ring.m() {
        return Err(Error::Parse(format!(
            "element has {} coefficients, ring degree is {}",
            coeffs.len(),
            ring.m()
        )));
    }
    ring.elem(&coeffs)
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(elem_to_json).collect())
}

pub fn poly_from_json(ring: &GaloisRing, v: &Value) -> Result<Poly> {
    let arr = as_array(v, "polynomial (array of elements)")?;
    let coeffs: Vec<Elem> =
        arr.iter().map(|c| elem_from_json(ring, c)).collect::<Result<_>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

pub fn ring_to_json(ring: &GaloisRing) -> Value {
    json!({
        "p": ring.p(),
        "s": ring.s(),
        "m": ring.m(),
        "modulus": ring.modulus(),
    })
}

pub fn ring_from_json(v: &Value) -> Result<GaloisRing> {
    let obj = as_obj(v, "ring object")?;
    let p = as_u64(get(obj, "p")?, "prime p")?;
    let s = as_u64(get(obj, "s")?, "exponent s")? as u32;
    let m = as_usize(get(obj, "m")?, "degree m")?;
    let modulus = match obj.get("modulus") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let arr = as_array(v, "modulus coefficient array")?;
            Some(
                arr.iter()
                    .map(|c| as_u64(c, "modulus coefficient"))
                    .collect::<Result<Vec<u64>>>()?,
            )
        }
    };
    GaloisRing::new(p, s, m, modulus.as_deref())
}

fn map_label(map: &CoeffMap) -> &'static str {
    map.label()
}

fn map_from_label(s: &str) -> Result<CoeffMap> {
    match s {
        "power_basis" => Ok(CoeffMap::PowerBasis),
        "idempotent_basis" => Ok(CoeffMap::IdempotentBasis),
        other => Err(Error::Parse(format!(
            "unknown coefficient map {other:?}; expected power_basis or idempotent_basis"
        ))),
    }
}

fn params_to_json(kind: &Construction) -> Value {
    match kind {
        Construction::TamoBarg { r, t } => json!({"r": r, "t": t}),
        Construction::Generalized { r, t, map } => {
            json!({"r": r, "t": t, "map": map_label(map)})
        }
        Construction::AlmostOptimal { r, k, m_last } => {
            json!({"r": r, "k": k, "m_last": m_last})
        }
        Construction::RRho { r, rho, t } => json!({"r": r, "rho": rho, "t": t}),
        Construction::Crt { ks } => json!({"ks": ks}),
        Construction::Multiblocks { r, t, g_blocks } => {
            json!({"r": r, "t": t, "g_blocks": g_blocks})
        }
    }
}

fn params_from_json(kind: &str, v: &Value) -> Result<Construction> {
    let obj = as_obj(v, "params object")?;
    let field = |key: &str| -> Result<usize> { as_usize(get(obj, key)?, key) };
    match kind {
        "tamo_barg" => Ok(Construction::TamoBarg { r: field("r")?, t: field("t")? }),
        "generalized" => Ok(Construction::Generalized {
            r: field("r")?,
            t: field("t")?,
            map: map_from_label(
                get(obj, "map")?.as_str().ok_or_else(|| parse_err("map label", v))?,
            )?,
        }),
        "almost_optimal" => Ok(Construction::AlmostOptimal {
            r: field("r")?,
            k: field("k")?,
            m_last: field("m_last")?,
        }),
        "rrho" => Ok(Construction::RRho { r: field("r")?, rho: field("rho")?, t: field("t")? }),
        "crt" => {
            let arr = as_array(get(obj, "ks")?, "ks array")?;
            let ks = arr
                .iter()
                .map(|v| as_usize(v, "block message length"))
                .collect::<Result<Vec<usize>>>()?;
            Ok(Construction::Crt { ks })
        }
        "multiblocks" => Ok(Construction::Multiblocks {
            r: field("r")?,
            t: field("t")?,
            g_blocks: field("g_blocks")?,
        }),
        other => Err(Error::Parse(format!("unknown construction kind {other:?}"))),
    }
}

pub fn spec_to_json(spec: &CodeSpec) -> Value {
    let partition = spec.partition();
    let good_poly = match spec.good_poly() {
        None => Value::Null,
        Some(gp) => json!({
            "g": poly_to_json(&gp.g),
            "values": gp.values.iter().map(elem_to_json).collect::<Vec<_>>(),
            "monic": gp.monic,
            "values_subtractive": gp.values_subtractive,
        }),
    };
    json!({
        "kind": spec.kind().kind_name(),
        "ring": ring_to_json(spec.ring()),
        "partition": {
            "points": partition.points().iter().map(elem_to_json).collect::<Vec<_>>(),
            "blocks": partition.blocks(),
            "certificate": partition.certificate().label(),
        },
        "good_poly": good_poly,
        "params": params_to_json(spec.kind()),
        "n": spec.n(),
        "K": spec.k(),
    })
}

pub fn spec_from_json(v: &Value) -> Result<CodeSpec> {
    let obj = as_obj(v, "spec object")?;
    let kind_value = get(obj, "kind")?;
    let kind_name = kind_value
        .as_str()
        .ok_or_else(|| parse_err("construction kind string", kind_value))?;
    let ring = ring_from_json(get(obj, "ring")?)?;
    let part_obj = as_obj(get(obj, "partition")?, "partition object")?;
    let points = as_array(get(part_obj, "points")?, "points array")?
        .iter()
        .map(|p| elem_from_json(&ring, p))
        .collect::<Result<Vec<Elem>>>()?;
    let blocks = as_array(get(part_obj, "blocks")?, "blocks array")?
        .iter()
        .map(|b| {
            as_array(b, "block index array")?
                .iter()
                .map(|i| as_usize(i, "point index"))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let partition = Partition::new(&ring, points, blocks)?;
    let g = match obj.get("good_poly") {
        None | Some(Value::Null) => None,
        Some(gp) => {
            let gp_obj = as_obj(gp, "good_poly object")?;
            Some(poly_from_json(&ring, get(gp_obj, "g")?)?)
        }
    };
    let kind = params_from_json(kind_name, get(obj, "params")?)?;
    make_code(&ring, kind, partition, g)
}

pub fn spec_to_string(spec: &CodeSpec) -> String {
    let mut s = serde_json::to_string_pretty(&spec_to_json(spec)).expect("value serializes");
    s.push('\n');
    s
}

pub fn spec_from_str(s: &str) -> Result<CodeSpec> {
    let value: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    spec_from_json(&value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{
        almost_optimal_from_subgroup, crt_from_subgroup, encode, generalized_from_subgroup,
        multiblocks_from_subgroup, rrho_from_subgroup, tamo_barg_from_subgroup,
    };

    fn roundtrip(spec: &CodeSpec) -> CodeSpec {
        let text = spec_to_string(spec);
        spec_from_str(&text).unwrap()
    }

    #[test]
    fn roundtrips_preserve_codewords() {
        let r121 = GaloisRing::new(11, 2, 1, None).unwrap();
        let gr42 = GaloisRing::new(2, 2, 2, None).unwrap();
        let specs = vec![
            tamo_barg_from_subgroup(&r121, 5, 2).unwrap(),
            generalized_from_subgroup(&r121, 5, 2, CoeffMap::IdempotentBasis).unwrap(),
            almost_optimal_from_subgroup(&r121, 5, 3, 2, false).unwrap(),
            rrho_from_subgroup(&r121, 5, 2, 2).unwrap(),
            crt_from_subgroup(&r121, 5, vec![2, 3]).unwrap(),
            multiblocks_from_subgroup(&GaloisRing::new(3, 2, 1, None).unwrap(), 2, 1).unwrap(),
            tamo_barg_from_subgroup(&gr42, 3, 1).unwrap(),
        ];
        for spec in specs {
            let loaded = roundtrip(&spec);
            assert_eq!(loaded.n(), spec.n());
            assert_eq!(loaded.k(), spec.k());
            assert_eq!(loaded.kind().kind_name(), spec.kind().kind_name());
            let ring = spec.ring();
            let message: Vec<Elem> =
                (0..spec.k()).map(|i| ring.element_from_index(i as u64 + 1)).collect();
            assert_eq!(encode(&loaded, &message).unwrap(), encode(&spec, &message).unwrap());
        }
    }

    #[test]
    fn elements_accept_bare_integers() {
        let r9 = GaloisRing::new(3, 2, 1, None).unwrap();
        assert_eq!(elem_from_json(&r9, &json!(7)).unwrap(), r9.from_int(7));
        assert_eq!(elem_from_json(&r9, &json!([7])).unwrap(), r9.from_int(7));
        assert_eq!(elem_from_json(&r9, &json!(-1)).unwrap(), r9.from_int(8));
        assert!(elem_from_json(&r9, &json!([1, 2])).is_err());
        assert!(elem_from_json(&r9, &json!("x")).is_err());

        let gr42 = GaloisRing::new(2, 2, 2, None).unwrap();
        let e = elem_from_json(&gr42, &json!([3, 1])).unwrap();
        assert_eq!(e.coeffs(), &[3, 1]);
        // short arrays pad with zero coefficients
        assert_eq!(elem_from_json(&gr42, &json!([3])).unwrap(), gr42.from_int(3));
    }

    #[test]
    fn loading_revalidates_the_document() {
        let r121 = GaloisRing::new(11, 2, 1, None).unwrap();
        let spec = tamo_barg_from_subgroup(&r121, 5, 2).unwrap();
        let mut doc = spec_to_json(&spec);

        // tampering with two points leaves differences divisible by 11 in
        // three pairs, which no single special point can absorb: the load
        // must fail whatever the stored certificate claims
        doc["partition"]["points"][1] = json!([23]);
        doc["partition"]["points"][2] = json!([34]);
        assert!(matches!(
            spec_from_json(&doc).unwrap_err(),
            Error::NotWellConditioned(_, _)
        ));

        // a zero-divisor point is admissible as the one special point of
        // the condition check, but the good polynomial then stops being
        // constant on its block
        let mut doc = spec_to_json(&spec);
        doc["partition"]["points"][1] = json!([11]);
        assert!(matches!(
            spec_from_json(&doc).unwrap_err(),
            Error::NotConstantOnBlock { block: 0, .. }
        ));

        // an altered good polynomial that is not constant on blocks is
        // rejected by the same verification the builders use
        let mut doc = spec_to_json(&spec);
        doc["good_poly"]["g"] = json!([[0], [0], [0], [0], [1]]);
        assert!(spec_from_json(&doc).is_err());

        let mut doc = spec_to_json(&spec);
        doc["kind"] = json!("nonsense");
        assert!(matches!(spec_from_json(&doc).unwrap_err(), Error::Parse(_)));

        assert!(matches!(spec_from_str("{not json").unwrap_err(), Error::Parse(_)));
    }
}
