//! JSON interchange for polynomials.
//!
//! Canonical form: `{"window":[lo,hi],"terms":[{"vars":[..],"coeff":c},..]}`
//! with terms in canonical monomial order and coefficients written as JSON
//! numbers while `|c| <= 2^53 - 1`, as decimal strings beyond that.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::eulerian::BiPoly;
use crate::poly::{Coeff, MultiaffinePoly, VarWindow};
use crate::varset::VarSet;

const MAX_SAFE_INTEGER: Coeff = (1 << 53) - 1;

#[derive(Serialize)]
struct PolyDoc {
    window: [usize; 2],
    terms: Vec<TermDoc>,
}

#[derive(Serialize)]
struct TermDoc {
    vars: VarSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    vars_y: Option<VarSet>,
    coeff: Value,
}

fn coeff_value(c: Coeff) -> Value {
    if (-MAX_SAFE_INTEGER..=MAX_SAFE_INTEGER).contains(&c) {
        Value::from(c as i64)
    } else {
        Value::String(c.to_string())
    }
}

/// Serializes in the canonical, compact form.
pub fn poly_to_json(p: &MultiaffinePoly) -> String {
    let doc = PolyDoc {
        window: [p.window().lo(), p.window().hi()],
        terms: p
            .terms()
            .map(|(vars, c)| TermDoc {
                vars,
                vars_y: None,
                coeff: coeff_value(c),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

/// Descent-ascent polynomial; each term carries `vars` (descent tops) and
/// `vars_y` (ascent tops).
pub fn bipoly_to_json(p: &BiPoly) -> String {
    let doc = PolyDoc {
        window: [2, p.n() + 1],
        terms: p
            .terms()
            .map(|((x, y), c)| TermDoc {
                vars: x,
                vars_y: Some(y),
                coeff: coeff_value(c),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn univariate_to_json(coeffs: &[Coeff]) -> String {
    let values: Vec<Value> = coeffs.iter().map(|&c| coeff_value(c)).collect();
    serde_json::to_string(&values).expect("serializable")
}

/// Parses the interchange format. Syntax errors report line and column;
/// schema errors name the offending term. Repeated indices within one
/// monomial are rejected as non-multiaffine.
pub fn poly_from_json(text: &str) -> Result<MultiaffinePoly> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;

    let window = match obj
        .get("window")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
    {
        Some([lo, hi]) => {
            let lo = as_index(lo)
                .ok_or_else(|| Error::Parse("window bounds must be positive integers".into()))?;
            let hi = as_index(hi)
                .ok_or_else(|| Error::Parse("window bounds must be positive integers".into()))?;
            VarWindow::new(lo, hi)?
        }
        _ => {
            return Err(Error::Parse(
                "\"window\" must be a two-element array".into(),
            ))
        }
    };

    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("\"terms\" must be an array".into()))?;

    let mut parsed = Vec::with_capacity(terms.len());
    for (k, term) in terms.iter().enumerate() {
        let bad = |what: &str| Error::Parse(format!("term {k}: {what}"));
        let vars = term
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"vars\" must be an array"))?;
        let mut set = VarSet::EMPTY;
        for v in vars {
            let i = as_index(v).ok_or_else(|| bad("variable indices must be positive integers"))?;
            if set.contains(i) {
                return Err(Error::NotMultiaffine(i));
            }
            set.insert(i)?;
        }
        let coeff = match term.get("coeff") {
            Some(Value::Number(num)) => num
                .as_i64()
                .map(Coeff::from)
                .ok_or_else(|| bad("coefficient must be an integer"))?,
            Some(Value::String(s)) => s
                .parse::<Coeff>()
                .map_err(|_| bad("coefficient string must be a decimal integer"))?,
            _ => return Err(bad("missing \"coeff\"")),
        };
        parsed.push((set, coeff));
    }
    MultiaffinePoly::new(window, parsed)
}

fn as_index(v: &Value) -> Option<usize> {
    v.as_u64().and_then(|i| usize::try_from(i).ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> MultiaffinePoly {
        poly_from_json(
            r#"{"window":[2,3],"terms":[{"vars":[2,3],"coeff":1},{"vars":[3],"coeff":3},{"vars":[],"coeff":1},{"vars":[2],"coeff":1}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn canonical_output() {
        assert_eq!(
            poly_to_json(&a2()),
            r#"{"window":[2,3],"terms":[{"vars":[],"coeff":1},{"vars":[2],"coeff":1},{"vars":[3],"coeff":3},{"vars":[2,3],"coeff":1}]}"#
        );
    }

    #[test]
    fn big_coefficients_become_strings() {
        let w = VarWindow::new(2, 3).unwrap();
        let p = MultiaffinePoly::new(
            w,
            [
                (VarSet::EMPTY, MAX_SAFE_INTEGER),
                (VarSet::new([2]).unwrap(), MAX_SAFE_INTEGER + 1),
                (VarSet::new([3]).unwrap(), -(MAX_SAFE_INTEGER + 1)),
            ],
        )
        .unwrap();
        let text = poly_to_json(&p);
        assert_eq!(
            text,
            r#"{"window":[2,3],"terms":[{"vars":[],"coeff":9007199254740991},{"vars":[2],"coeff":"9007199254740992"},{"vars":[3],"coeff":"-9007199254740992"}]}"#
        );
        assert_eq!(poly_from_json(&text).unwrap(), p);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(poly_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(poly_from_json("[]"), Err(Error::Parse(_))));
        assert!(matches!(
            poly_from_json(r#"{"window":[2,3],"terms":[{"vars":[2,2],"coeff":1}]}"#),
            Err(Error::NotMultiaffine(2))
        ));
        assert!(matches!(
            poly_from_json(r#"{"window":[2,3],"terms":[{"vars":[4],"coeff":1}]}"#),
            Err(Error::IndexOutsideWindow { index: 4, .. })
        ));
        assert!(matches!(
            poly_from_json(r#"{"window":[2,3],"terms":[{"vars":[2],"coeff":1.5}]}"#),
            Err(Error::Parse(_))
        ));
        let err = poly_from_json("{\n  \"window\": [2,3],\n  \"terms\": [,]\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn univariate() {
        assert_eq!(univariate_to_json(&[1, 4, 1]), "[1,4,1]");
    }
}
