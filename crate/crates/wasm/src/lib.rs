//! Browser bindings: decompose, classify and Frobenius form, all returning
//! JSON strings.

use nilclean::classifier::{Classifier, Property, RingDescriptor};
use nilclean::decompose::decompose_zm;
use nilclean::frobenius::rcf;
use nilclean::{Modulus, RingMatrix};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_matrix(modulus: &Modulus, text: &str) -> Result<RingMatrix, String> {
    let rows: Vec<Vec<i64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| format!("bad entry {t:?}")))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    RingMatrix::from_ints(modulus, &rows).map_err(|e| e.to_string())
}

fn rows(m: &RingMatrix) -> Value {
    json!(m.to_ints())
}

pub fn decompose_json(modulus: u32, matrix: &str) -> Result<String, String> {
    let modulus = Modulus::new(modulus as u64).map_err(|e| e.to_string())?;
    let a = parse_matrix(&modulus, matrix)?;
    let c = decompose_zm(&a).map_err(|e| e.to_string())?;
    let tags: Vec<String> = c.tags.iter().map(|t| t.to_string()).collect();
    Ok(json!({
        "ring": modulus.to_string(),
        "A": rows(&c.a),
        "E": rows(&c.e),
        "F": rows(&c.f),
        "W": rows(&c.w),
        "nilpotency_exponent": c.nilpotency_exponent,
        "case_tags": tags,
        "verified": c.is_verified(),
    })
    .to_string())
}

pub fn classify_json(ring: &str, properties: &str) -> Result<String, String> {
    let r: RingDescriptor = ring.parse().map_err(|e: nilclean::Error| e.to_string())?;
    let props: Vec<Property> = if properties.trim().is_empty() {
        Property::BASIC.to_vec()
    } else {
        properties
            .split(',')
            .map(|p| p.trim().parse().map_err(|e: nilclean::Error| e.to_string()))
            .collect::<Result<_, _>>()?
    };
    let c = Classifier::new(&r).map_err(|e| e.to_string())?;
    let reports = props
        .iter()
        .map(|&p| {
            let rep = c.check(p).map_err(|e| e.to_string())?;
            Ok(json!({
                "property": p.name(),
                "holds": rep.holds,
                "counterexample": rep.counterexample.as_ref().map(|cx| {
                    cx.iter().map(|a| r.format_elem(a)).collect::<Vec<_>>()
                }),
            }))
        })
        .collect::<Result<Vec<Value>, String>>()?;
    Ok(json!({
        "ring": r.to_string(),
        "size": r.size() as u64,
        "idempotents": c.idempotents().len(),
        "nilpotents": c.nilpotents().len(),
        "reports": reports,
    })
    .to_string())
}

pub fn rcf_json(p: u32, matrix: &str) -> Result<String, String> {
    let modulus = Modulus::new(p as u64).map_err(|e| e.to_string())?;
    let a = parse_matrix(&modulus, matrix)?;
    let r = rcf(&a).map_err(|e| e.to_string())?;
    let blocks: Vec<String> = r.blocks.iter().map(|b| b.poly().to_string()).collect();
    Ok(json!({
        "ring": modulus.to_string(),
        "blocks": blocks,
        "form": rows(&r.form()),
        "P": rows(&r.transform),
        "P_inv": rows(&r.transform_inv),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn decompose(modulus: u32, matrix: &str) -> Result<String, JsError> {
    decompose_json(modulus, matrix).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(ring: &str, properties: &str) -> Result<String, JsError> {
    classify_json(ring, properties).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn frobenius(p: u32, matrix: &str) -> Result<String, JsError> {
    rcf_json(p, matrix).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_returns_verified_certificate() {
        let v: Value = serde_json::from_str(&decompose_json(3, "0 1\n1 0").unwrap()).unwrap();
        assert_eq!(v["verified"], json!(true));
        assert_eq!(v["E"], json!([[1, 0], [0, 1]]));
        assert!(decompose_json(5, "3")
            .unwrap_err()
            .contains("unsupported modulus"));
        assert!(decompose_json(6, "1 2\n3").is_err());
    }

    #[test]
    fn classify_reports() {
        let v: Value = serde_json::from_str(
            &classify_json("Z3xZ3", "two-nil-clean, weakly-nil-clean").unwrap(),
        )
        .unwrap();
        assert_eq!(v["reports"][0]["holds"], json!(true));
        assert_eq!(v["reports"][1]["counterexample"], json!(["(1, 2)"]));
        assert_eq!(v["idempotents"], json!(4));
        assert!(classify_json("Z6", "bogus").is_err());
    }

    #[test]
    fn frobenius_blocks() {
        let v: Value = serde_json::from_str(&rcf_json(3, "1 0\n0 2").unwrap()).unwrap();
        assert_eq!(v["blocks"], json!(["x^2 + 2"]));
        assert!(rcf_json(4, "1").is_err());
    }
}
