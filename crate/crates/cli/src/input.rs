//! JSON payloads accepted by the subcommands.

use serde::{Deserialize, Deserializer};
use serde_json::Value;
use slicereg::{ImaginaryUnit, QFunction, QLaurentPoly, QPoly, Quaternion, RealPoly, Result, SemiRegular};

/// A function description. The layout picks the variant:
///
/// - `{"coeffs": [...]}` is a polynomial,
/// - `{"min_deg": n, "coeffs": [...]}` a Laurent polynomial,
/// - `{"den": {...}, "num": {...}}` a quotient over a real denominator,
/// - `{"pointwise": [f, g, ...]}` the pointwise product of its factors, which
///   is generally not regular and is only meant for `check-regular`.
#[derive(Clone, Debug)]
pub enum Function {
    Poly(QPoly),
    Laurent(QLaurentPoly),
    Quotient(SemiRegular),
    Pointwise(Vec<Function>),
}

impl<'de> Deserialize<'de> for Function {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Value::deserialize(d)?;
        let has = |k: &str| v.get(k).is_some();
        let parsed = if has("pointwise") {
            let factors = v.get("pointwise").cloned().unwrap_or_default();
            serde_json::from_value(factors).map(Function::Pointwise)
        } else if has("den") || has("num") {
            serde_json::from_value(v).map(Function::Quotient)
        } else if has("min_deg") {
            serde_json::from_value(v).map(Function::Laurent)
        } else if has("coeffs") {
            serde_json::from_value(v).map(Function::Poly)
        } else {
            return Err(D::Error::custom(
                "expected a function object with \"coeffs\", \"min_deg\", \"den\"/\"num\" or \"pointwise\"",
            ));
        };
        parsed.map_err(D::Error::custom)
    }
}

impl QFunction for Function {
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        match self {
            Function::Poly(f) => Ok(f.eval(q)),
            Function::Laurent(f) => f.eval(q),
            Function::Quotient(h) => h.eval(q),
            Function::Pointwise(fs) => fs.iter().try_fold(Quaternion::ONE, |acc, f| Ok(acc * f.evaluate(q)?)),
        }
    }
}

impl Function {
    /// The polynomial, when the payload is one.
    pub fn poly(&self) -> Option<&QPoly> {
        match self {
            Function::Poly(f) => Some(f),
            _ => None,
        }
    }

    /// The function as a quotient. A Laurent polynomial `q^m g` with `m < 0`
    /// becomes `(q^{-m})^{-1} g`; pointwise products have no such form.
    pub fn to_quotient(&self) -> Option<Result<SemiRegular>> {
        match self {
            Function::Poly(f) => Some(Ok(SemiRegular::from_poly(f.clone()))),
            Function::Quotient(h) => Some(Ok(h.clone())),
            Function::Laurent(f) => {
                let shift = (-f.min_deg()).max(0) as usize;
                let mut num = vec![Quaternion::ZERO; (f.min_deg() + shift as i64) as usize];
                num.extend_from_slice(f.coeffs());
                let mut den = vec![0.0; shift];
                den.push(1.0);
                Some(SemiRegular::new(RealPoly::new(den), QPoly::new(num)))
            }
            Function::Pointwise(_) => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtPoint {
    pub f: Function,
    pub q: Quaternion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pair {
    pub f: Function,
    pub g: Function,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientAt {
    pub f: QPoly,
    #[serde(default = "QPoly::one")]
    pub g: QPoly,
    pub q: Quaternion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyAt {
    pub f: QPoly,
    pub p: Quaternion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Around {
    pub h: Function,
    pub center: Quaternion,
    pub unit: Option<ImaginaryUnit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Probe {
    pub h: Function,
    pub q: Quaternion,
    pub unit: Option<ImaginaryUnit>,
    pub step: Option<f64>,
}

/// The unit of `q`'s slice, or `i` for a real point.
pub fn slice_unit(q: Quaternion, given: Option<ImaginaryUnit>) -> ImaginaryUnit {
    given.or_else(|| q.unit()).unwrap_or(ImaginaryUnit::I)
}
