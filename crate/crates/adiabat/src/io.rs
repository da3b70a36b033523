//! Spectrum and catalyst JSON schemas, inline spectrum literals, and the
//! CSV emitter for rate scans.
//!
//! These parsers face untrusted input (files, CLI arguments, fuzzers), so
//! they must return errors rather than panic on anything.
//!
//! Schema: `{"values": [...], "multiplicities": [...], "ambient_dim": N}`
//! with multiplicities optional (default all one). Values are JSON numbers
//! or strings; in exact mode the literal digits are parsed as exact
//! decimals or fractions. Large integers may be strings. Floats serialize
//! with 17 significant digits, rationals as numerator/denominator strings.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::asymptotics::RatePoint;
use crate::catalysis::{BuiltFor, Catalyst};
use crate::error::{Error, Result};
use crate::scalar::{parse_ratio_literal, Scalar};
use crate::spectrum::Spectrum;

const MAX_JSON_BYTES: usize = 1 << 22;
const MAX_JSON_ENTRIES: usize = 1 << 16;

/// Wire form of a spectrum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub values: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<Value>,
}

/// Wire form of a catalyst: the spectrum fields plus construction metadata.
/// Fields are spelled out rather than flattened; `serde_json`'s
/// arbitrary-precision numbers do not survive flattening.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalystDoc {
    pub values: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub built_for: Option<BuiltForDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<Value>,
}

impl CatalystDoc {
    fn spectrum_doc(&self) -> SpectrumDoc {
        SpectrumDoc {
            values: self.values.clone(),
            multiplicities: self.multiplicities.clone(),
            ambient_dim: self.ambient_dim.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuiltForDoc {
    pub lambda: f64,
    pub eps: Value,
}

/// Value-level scalar decoding shared by both numeric modes.
trait ScalarCodec: Scalar {
    fn decode(v: &Value) -> Result<Self>;
    fn encode(&self) -> Value;
}

impl ScalarCodec for f64 {
    fn decode(v: &Value) -> Result<f64> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("number {n} out of f64 range"))),
            Value::String(s) => {
                let r = parse_ratio_literal(s)?;
                Ok(Scalar::to_f64(&r))
            }
            other => Err(Error::Parse(format!("expected number, got {other}"))),
        }
    }

    fn encode(&self) -> Value {
        float17_value(*self)
    }
}

impl ScalarCodec for BigRational {
    fn decode(v: &Value) -> Result<BigRational> {
        match v {
            // With arbitrary-precision numbers the literal digits survive,
            // so decimals parse exactly.
            Value::Number(n) => parse_ratio_literal(&n.to_string()),
            Value::String(s) => parse_ratio_literal(s),
            other => Err(Error::Parse(format!("expected number, got {other}"))),
        }
    }

    fn encode(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
}

/// A float rendered as a JSON number with 17 significant digits.
pub fn float17_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let formatted = format!("{x:.16e}");
    match formatted.parse::<serde_json::Number>() {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(formatted),
    }
}

fn decode_nat(v: &Value) -> Result<BigUint> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(Error::Parse(format!("expected integer, got {other}"))),
    };
    if text.len() > 1 << 12 {
        return Err(Error::Parse("integer literal too long".into()));
    }
    text.parse::<BigUint>()
        .map_err(|_| Error::Parse(format!("invalid nonnegative integer {text:?}")))
}

fn encode_nat(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(small) => Value::Number(small.into()),
        None => Value::String(n.to_string()),
    }
}

fn spectrum_from_doc<T: ScalarCodec>(doc: &SpectrumDoc) -> Result<Spectrum<T>> {
    if doc.values.len() > MAX_JSON_ENTRIES {
        return Err(Error::Parse("too many eigenvalues".into()));
    }
    let values: Vec<T> = doc.values.iter().map(T::decode).collect::<Result<_>>()?;
    let mults: Vec<BigUint> = match &doc.multiplicities {
        Some(list) => {
            if list.len() != values.len() {
                return Err(Error::Parse(format!(
                    "{} values but {} multiplicities",
                    values.len(),
                    list.len()
                )));
            }
            list.iter().map(decode_nat).collect::<Result<_>>()?
        }
        None => vec![BigUint::from(1u32); values.len()],
    };
    let default_ambient: BigUint = mults.iter().sum();
    let ambient = match &doc.ambient_dim {
        Some(v) => decode_nat(v)?,
        None => default_ambient,
    };
    let entries: Vec<(T, BigUint)> = values.into_iter().zip(mults).collect();
    Spectrum::from_runs(entries, ambient)
}

fn spectrum_to_doc<T: ScalarCodec>(s: &Spectrum<T>) -> SpectrumDoc {
    SpectrumDoc {
        values: s.runs().iter().map(|r| r.value.encode()).collect(),
        multiplicities: Some(s.runs().iter().map(|r| encode_nat(&r.multiplicity)).collect()),
        ambient_dim: Some(encode_nat(s.ambient_dim())),
    }
}

fn parse_doc(input: &str) -> Result<SpectrumDoc> {
    if input.len() > MAX_JSON_BYTES {
        return Err(Error::Parse("document too large".into()));
    }
    serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_spectrum_json_f64(input: &str) -> Result<Spectrum<f64>> {
    spectrum_from_doc(&parse_doc(input)?)
}

pub fn parse_spectrum_json_exact(input: &str) -> Result<Spectrum<BigRational>> {
    spectrum_from_doc(&parse_doc(input)?)
}

pub fn spectrum_to_json_f64(s: &Spectrum<f64>) -> String {
    serde_json::to_string_pretty(&spectrum_to_doc(s)).expect("spectrum docs serialize")
}

pub fn spectrum_to_json_exact(s: &Spectrum<BigRational>) -> String {
    serde_json::to_string_pretty(&spectrum_to_doc(s)).expect("spectrum docs serialize")
}

pub fn spectrum_doc_f64(s: &Spectrum<f64>) -> SpectrumDoc {
    spectrum_to_doc(s)
}

pub fn spectrum_doc_exact(s: &Spectrum<BigRational>) -> SpectrumDoc {
    spectrum_to_doc(s)
}

fn catalyst_from_doc<T: ScalarCodec>(doc: &CatalystDoc) -> Result<Catalyst<T>> {
    let spectrum = spectrum_from_doc(&doc.spectrum_doc())?;
    if let Some(dim) = &doc.dim {
        let dim = decode_nat(dim)?;
        if dim != *spectrum.ambient_dim() {
            return Err(Error::Parse(format!(
                "catalyst dim {dim} does not match its spectrum's dimension {}",
                spectrum.ambient_dim()
            )));
        }
    }
    let built_for = match &doc.built_for {
        Some(b) => {
            let base = crate::catalysis::base_from_lambda(b.lambda)?;
            Some(BuiltFor { base_m: base, eps: T::decode(&b.eps)? })
        }
        None => None,
    };
    Ok(Catalyst { spectrum, built_for })
}

fn catalyst_to_doc<T: ScalarCodec>(c: &Catalyst<T>) -> CatalystDoc {
    let spectrum = spectrum_to_doc(&c.spectrum);
    CatalystDoc {
        values: spectrum.values,
        multiplicities: spectrum.multiplicities,
        ambient_dim: spectrum.ambient_dim,
        built_for: c.built_for.as_ref().map(|b| BuiltForDoc {
            lambda: (b.base_m as f64).log2(),
            eps: b.eps.encode(),
        }),
        dim: Some(encode_nat(c.dim())),
    }
}

pub fn parse_catalyst_json_f64(input: &str) -> Result<Catalyst<f64>> {
    if input.len() > MAX_JSON_BYTES {
        return Err(Error::Parse("document too large".into()));
    }
    let doc: CatalystDoc = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
    catalyst_from_doc(&doc)
}

pub fn parse_catalyst_json_exact(input: &str) -> Result<Catalyst<BigRational>> {
    if input.len() > MAX_JSON_BYTES {
        return Err(Error::Parse("document too large".into()));
    }
    let doc: CatalystDoc = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
    catalyst_from_doc(&doc)
}

pub fn catalyst_to_json_f64(c: &Catalyst<f64>) -> String {
    serde_json::to_string_pretty(&catalyst_to_doc(c)).expect("catalyst docs serialize")
}

pub fn catalyst_to_json_exact(c: &Catalyst<BigRational>) -> String {
    serde_json::to_string_pretty(&catalyst_to_doc(c)).expect("catalyst docs serialize")
}

/// Parse an inline spectrum literal: either a JSON document or a comma
/// list like `3/4,1/4` / `0.75,0.25`.
pub fn parse_inline_spectrum_f64(input: &str) -> Result<Spectrum<f64>> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        return parse_spectrum_json_f64(trimmed);
    }
    let values = inline_values(trimmed)?
        .iter()
        .map(Scalar::to_f64)
        .collect::<Vec<_>>();
    Spectrum::from_values(&values, None)
}

pub fn parse_inline_spectrum_exact(input: &str) -> Result<Spectrum<BigRational>> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        return parse_spectrum_json_exact(trimmed);
    }
    let values = inline_values(trimmed)?;
    Spectrum::from_values(&values, None)
}

fn inline_values(input: &str) -> Result<Vec<BigRational>> {
    if input.is_empty() {
        return Err(Error::Parse("empty spectrum".into()));
    }
    if input.len() > MAX_JSON_BYTES {
        return Err(Error::Parse("spectrum literal too large".into()));
    }
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() > MAX_JSON_ENTRIES {
        return Err(Error::Parse("too many eigenvalues".into()));
    }
    parts.iter().map(|p| parse_ratio_literal(p)).collect()
}

/// CSV emission for rate scans. Header: `n,s_minus_rate,s_plus_rate,target`.
pub fn rate_points_to_csv(points: &[RatePoint]) -> String {
    let mut out = String::from("n,s_minus_rate,s_plus_rate,target\n");
    for p in points {
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e}\n",
            p.n, p.s_minus_rate, p.s_plus_rate, p.target
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_f64() {
        let s = Spectrum::<f64>::from_values(&[0.5, 0.25, 0.25], None).unwrap();
        let json = spectrum_to_json_f64(&s);
        let back = parse_spectrum_json_f64(&json).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn json_round_trip_exact() {
        let s = parse_spectrum_json_exact(r#"{"values": ["1/2", "1/3", "1/6"]}"#).unwrap();
        let json = spectrum_to_json_exact(&s);
        let back = parse_spectrum_json_exact(&json).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn exact_mode_reads_decimal_digits_exactly() {
        let s = parse_spectrum_json_exact(r#"{"values": [0.1, 0.9]}"#).unwrap();
        assert_eq!(s.runs()[1].value, BigRational::from_ratio(1, 10));
    }

    #[test]
    fn multiplicities_and_ambient() {
        let s = parse_spectrum_json_f64(
            r#"{"values": [0.25], "multiplicities": [4], "ambient_dim": 9}"#,
        )
        .unwrap();
        assert_eq!(s.support_size(), BigUint::from(4u32));
        assert_eq!(*s.ambient_dim(), BigUint::from(9u32));

        assert!(parse_spectrum_json_f64(
            r#"{"values": [0.5, 0.5], "multiplicities": [1]}"#
        )
        .is_err());
    }

    #[test]
    fn inline_literals() {
        let s = parse_inline_spectrum_exact("3/4,1/4").unwrap();
        assert_eq!(s.top_value(), BigRational::from_ratio(3, 4));
        let s = parse_inline_spectrum_f64("0.75, 0.25").unwrap();
        assert_eq!(s.top_value(), 0.75);
        assert!(parse_inline_spectrum_f64("").is_err());
        assert!(parse_inline_spectrum_f64("0.75,banana").is_err());
    }

    #[test]
    fn float17_round_trips_bits() {
        for &x in &[0.1, 1.0 / 3.0, 0.8112781244591328, 1e-300] {
            let v = float17_value(x);
            let back: f64 = match &v {
                Value::Number(n) => n.as_f64().unwrap(),
                Value::String(s) => s.parse().unwrap(),
                other => panic!("unexpected value {other:?}"),
            };
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn catalyst_round_trip() {
        let c = crate::catalysis::build_embezzler::<BigRational>(
            2,
            &BigRational::from_ratio(1, 4),
        )
        .unwrap();
        let json = catalyst_to_json_exact(&c);
        let back = parse_catalyst_json_exact(&json).unwrap();
        assert_eq!(back.spectrum, c.spectrum);
        assert_eq!(back.built_for.unwrap().base_m, 2);
    }

    #[test]
    fn malformed_inputs_error_cleanly() {
        for bad in [
            "",
            "{",
            r#"{"values": "nope"}"#,
            r#"{"values": [2.0]}"#,
            r#"{"values": [0.5, 0.5], "ambient_dim": 1}"#,
            r#"{"values": [0.5, 0.5], "ambient_dim": -3}"#,
        ] {
            assert!(parse_spectrum_json_f64(bad).is_err(), "{bad:?}");
            assert!(parse_spectrum_json_exact(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn csv_header_pinned() {
        let points = vec![RatePoint { n: 10, s_minus_rate: 0.5, s_plus_rate: 0.75, target: 0.8 }];
        let csv = rate_points_to_csv(&points);
        assert!(csv.starts_with("n,s_minus_rate,s_plus_rate,target\n"));
        assert!(csv.lines().nth(1).unwrap().starts_with("10,5.0000000000000000e-1"));
    }
}
