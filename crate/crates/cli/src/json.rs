//! JSON encodings.
//!
//! * scalar: `"p/q"` (`"p"` when integral)
//! * `HPoly`: array of coefficient strings, constant term first
//! * `PolyX`: `{"<s>": "c"}` over the divided-power basis, degrees ascending
//! * `FMatrix`: `[[i, j, "c"], ...]`, sorted by `(i, j)`
//! * `IOp`: `{"towers": {"<i>": HPoly}, "f": FMatrix}`, tower keys ascending
//! * `B1Elem`: `{"<k>": HPoly}` keyed by `∂`-exponent, ascending
//! * endomorphism files: `{"H": ..., "int": ..., "der": ...}` where each
//!   image is an `IOp` object or an expression string

use serde_json::{json, Map, Value};
use thiserror::Error;

use intdiff::endo::{AutDecomposition, Diagnostics};
use intdiff::{B1Elem, FMatrix, HPoly, IOp, PolyX, Scalar};

use crate::expr::{eval, parse, Dialect};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct FormatError(pub String);

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn hpoly(p: &HPoly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar).collect())
}

pub fn polyx(p: &PolyX) -> Value {
    Value::Object(p.terms().map(|(s, c)| (s.to_string(), scalar(c))).collect())
}

pub fn fmatrix(f: &FMatrix) -> Value {
    Value::Array(
        f.entries()
            .map(|((i, j), c)| json!([i, j, c.to_string()]))
            .collect(),
    )
}

pub fn iop(a: &IOp) -> Value {
    let towers: Map<String, Value> = a
        .towers()
        .iter()
        .map(|(i, p)| (i.to_string(), hpoly(p)))
        .collect();
    let mut m = Map::new();
    m.insert("towers".into(), Value::Object(towers));
    m.insert("f".into(), fmatrix(a.fpart()));
    Value::Object(m)
}

pub fn b1(b: &B1Elem) -> Value {
    Value::Object(
        b.components()
            .iter()
            .map(|(k, p)| (k.to_string(), hpoly(p)))
            .collect(),
    )
}

pub fn diagnostics(d: &Diagnostics) -> Value {
    let mut m = Map::new();
    m.insert("lambda".into(), scalar(&d.lambda));
    m.insert("mu".into(), scalar(&d.mu));
    m.insert("n".into(), json!(d.n));
    m.insert("s".into(), json!(d.s));
    m.insert("kernel_der_deg".into(), json!(d.kernel_der_deg));
    Value::Object(m)
}

pub fn decomposition(d: &AutDecomposition) -> Value {
    let mut m = Map::new();
    m.insert("nu".into(), scalar(&d.nu));
    m.insert("u".into(), fmatrix(&d.u));
    m.insert("diagnostics".into(), diagnostics(&d.diagnostics));
    Value::Object(m)
}

pub fn read_scalar(v: &Value) -> Result<Scalar, FormatError> {
    match v {
        Value::String(s) => s.parse().map_err(|e| bad(format!("{e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::from_int)
            .ok_or_else(|| bad(format!("number {n} is not an integer; write it as \"p/q\""))),
        other => Err(bad(format!("expected a scalar, found {other}"))),
    }
}

pub fn read_hpoly(v: &Value) -> Result<HPoly, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("expected a coefficient array, found {v}")))?;
    Ok(HPoly::from_coeffs(
        arr.iter().map(read_scalar).collect::<Result<_, _>>()?,
    ))
}

fn read_index(v: &Value) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad(format!("expected a matrix index, found {v}")))
}

pub fn read_fmatrix(v: &Value) -> Result<FMatrix, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("expected an entry array, found {v}")))?;
    let mut f = FMatrix::zero();
    for entry in arr {
        match entry.as_array().map(Vec::as_slice) {
            Some([i, j, c]) => f.add_entry(read_index(i)?, read_index(j)?, read_scalar(c)?),
            _ => return Err(bad(format!("expected [i, j, \"c\"], found {entry}"))),
        }
    }
    Ok(f)
}

fn read_key(k: &str) -> Result<i64, FormatError> {
    k.parse()
        .map_err(|_| bad(format!("key {k:?} is not an integer")))
}

pub fn read_iop(v: &Value) -> Result<IOp, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(format!("expected an operator object, found {v}")))?;
    if let Some(k) = obj.keys().find(|k| *k != "towers" && *k != "f") {
        return Err(bad(format!("unknown key {k:?}")));
    }
    let mut towers = Vec::new();
    if let Some(t) = obj.get("towers") {
        let t = t
            .as_object()
            .ok_or_else(|| bad("\"towers\" must be an object"))?;
        for (k, p) in t {
            towers.push((read_key(k)?, read_hpoly(p)?));
        }
    }
    let f = match obj.get("f") {
        Some(f) => read_fmatrix(f)?,
        None => FMatrix::zero(),
    };
    Ok(IOp::from_parts(towers, f))
}

pub fn read_b1(v: &Value) -> Result<B1Elem, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(format!("expected an object, found {v}")))?;
    let mut cs = Vec::new();
    for (k, p) in obj {
        cs.push((read_key(k)?, read_hpoly(p)?));
    }
    Ok(B1Elem::from_components(cs))
}

/// An operator given either as JSON or as an expression string.
pub fn read_operator(v: &Value) -> Result<IOp, FormatError> {
    match v {
        Value::String(s) => {
            let e = parse(s, Dialect::I1).map_err(|e| bad(format!("{s:?}: {e}")))?;
            eval(&e).map_err(|e| bad(format!("{s:?}: {e}")))
        }
        _ => read_iop(v),
    }
}

/// The images `(H′, ∫′, ∂′)` of an endomorphism file.
pub fn read_endo(v: &Value) -> Result<(IOp, IOp, IOp), FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("expected an object with keys H, int, der"))?;
    let get = |k: &str| {
        obj.get(k)
            .ok_or_else(|| bad(format!("missing key {k:?}")))
            .and_then(read_operator)
    };
    Ok((get("H")?, get("int")?, get("der")?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iop_format() {
        let a = &IOp::one() - &IOp::e(0, 0);
        assert_eq!(
            iop(&a).to_string(),
            r#"{"towers":{"0":["1"]},"f":[[0,0,"-1"]]}"#
        );
        let b = IOp::from_parts(
            [
                (-2, HPoly::from_ints(&[0, 1])),
                (10, HPoly::one()),
                (1, HPoly::from_ints(&[-1])),
            ],
            FMatrix::term(2, 1, Scalar::new(3, 4)),
        );
        assert_eq!(
            iop(&b).to_string(),
            r#"{"towers":{"-2":["0","1"],"1":["-1"],"10":["1"]},"f":[[2,1,"3/4"]]}"#
        );
        assert_eq!(read_iop(&iop(&b)).unwrap(), b);
        assert_eq!(iop(&IOp::zero()).to_string(), r#"{"towers":{},"f":[]}"#);
    }

    #[test]
    fn other_formats() {
        let p = PolyX::from_terms([(0, Scalar::one()), (12, Scalar::new(-1, 2))]);
        assert_eq!(polyx(&p).to_string(), r#"{"0":"1","12":"-1/2"}"#);
        let q = B1Elem::from_components([(-1, HPoly::var()), (2, HPoly::one())]);
        assert_eq!(b1(&q).to_string(), r#"{"-1":["0","1"],"2":["1"]}"#);
        assert_eq!(read_b1(&b1(&q)).unwrap(), q);
        let f = FMatrix::from_entries([((1, 0), Scalar::from_int(2)), ((0, 3), Scalar::new(1, 3))]);
        assert_eq!(fmatrix(&f).to_string(), r#"[[0,3,"1/3"],[1,0,"2"]]"#);
        assert_eq!(read_fmatrix(&fmatrix(&f)).unwrap(), f);
    }

    #[test]
    fn lenient_input() {
        let v: Value = serde_json::from_str(r#"{"towers":{"1":[1,"1/2"]}}"#).unwrap();
        assert_eq!(
            read_iop(&v).unwrap(),
            IOp::tower(
                1,
                HPoly::from_coeffs(vec![Scalar::one(), Scalar::new(1, 2)])
            )
        );
        let s: Value = serde_json::from_str(r#""Int*D""#).unwrap();
        assert_eq!(read_operator(&s).unwrap(), &IOp::one() - &IOp::e(0, 0));
        for bad_input in [
            r#"{"towers":{"a":[]}}"#,
            r#"{"g":[]}"#,
            r#"{"f":[[0,0]]}"#,
            r#"{"f":[[0,-1,"1"]]}"#,
            "3",
            r#""D^""#,
        ] {
            let v: Value = serde_json::from_str(bad_input).unwrap();
            assert!(read_operator(&v).is_err(), "{bad_input}");
        }
    }
}
