//! Evaluated inequalities and JSON helpers shared by every checker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Relative slack granted to rounding when deciding whether an inequality holds.
pub const REPORT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// Both sides of a checked inequality `lhs ≤ rhs` (or `lhs ≥ rhs`).
///
/// `margin` is the signed slack in the direction of the inequality, so a
/// valid instance always has `margin ≥ -REPORT_TOL·max(|lhs|, |rhs|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    #[serde(with = "float")]
    pub lhs: f64,
    #[serde(with = "float")]
    pub rhs: f64,
    #[serde(with = "float")]
    pub ratio: f64,
    #[serde(with = "float")]
    pub margin: f64,
    pub holds: bool,
    pub relation: Relation,
    pub params: BTreeMap<String, f64>,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64, relation: Relation, params: &[(&str, f64)]) -> Self {
        let margin = match relation {
            Relation::Le => rhs - lhs,
            Relation::Ge => lhs - rhs,
        };
        let tol = REPORT_TOL * lhs.abs().max(rhs.abs());
        Self {
            lhs,
            rhs,
            ratio: lhs / rhs,
            margin,
            holds: margin >= -tol,
            relation,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    /// `lhs ≤ rhs`.
    pub fn le(lhs: f64, rhs: f64, params: &[(&str, f64)]) -> Self {
        Self::new(lhs, rhs, Relation::Le, params)
    }

    /// `lhs ≥ rhs`.
    pub fn ge(lhs: f64, rhs: f64, params: &[(&str, f64)]) -> Self {
        Self::new(lhs, rhs, Relation::Ge, params)
    }

    /// Margin divided by the larger side; 0 when both sides vanish.
    pub fn relative_margin(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            self.margin / scale
        }
    }
}

/// Serde adapter writing non-finite floats as the strings `"inf"`, `"-inf"`, `"nan"`.
pub mod float {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("not a float: {other}"))),
            },
        }
    }

    /// Same encoding for `Vec<f64>`.
    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        #[derive(serde::Serialize, Deserialize)]
        struct Wrapped(#[serde(with = "super")] f64);

        pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&Wrapped(*x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Ok(Vec::<Wrapped>::deserialize(d)?.into_iter().map(|w| w.0).collect())
        }
    }
}
