//! Coefficient rings selectable from the command line and their text forms.

use std::fmt;

use clap::ValueEnum;
use gwistor::scalar::{parse_rational, Rational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Rational,
    Float,
}

impl Ring {
    pub fn default_tol(self) -> f64 {
        match self {
            Ring::Rational => Rational::default_tol(),
            Ring::Float => f64::default_tol(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Rational => "rational",
            Ring::Float => "float",
        })
    }
}

/// A number read from JSON: exact when given as an integer or a `"p/q"`
/// string, floating otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Rational),
    Float(f64),
}

impl Num {
    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Num::Exact(Rational::from_int(i)))
                } else {
                    n.as_f64()
                        .map(Num::Float)
                        .ok_or_else(|| format!("unreadable number {n}"))
                }
            }
            Value::String(s) => {
                let exact_syntax = !s.contains(['.', 'e', 'E']);
                match parse_rational(s) {
                    Some(q) if exact_syntax => Ok(Num::Exact(q)),
                    Some(_) => s
                        .trim()
                        .parse::<f64>()
                        .map(Num::Float)
                        .map_err(|e| format!("{s:?}: {e}")),
                    None => Err(format!("{s:?} is not a number")),
                }
            }
            other => Err(format!("expected a number, found {other}")),
        }
    }
}

/// A [`Scalar`] the command line can read and print.
pub trait RingScalar: Scalar {
    const RING: Ring;

    fn from_num(n: &Num) -> Result<Self, String>;

    fn render(&self) -> String;

    fn parse_text(s: &str) -> Option<Self>;

    fn from_rational(q: &Rational) -> Self {
        Self::from_num(&Num::Exact(q.clone())).expect("exact values fit every ring")
    }
}

impl RingScalar for Rational {
    const RING: Ring = Ring::Rational;

    fn from_num(n: &Num) -> Result<Self, String> {
        match n {
            Num::Exact(q) => Ok(q.clone()),
            Num::Float(x) => Err(format!(
                "{x} is not an integer fraction; the rational ring needs \"p/q\" values"
            )),
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn parse_text(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl RingScalar for f64 {
    const RING: Ring = Ring::Float;

    fn from_num(n: &Num) -> Result<Self, String> {
        Ok(match n {
            Num::Exact(q) => q.to_f64(),
            Num::Float(x) => *x,
        })
    }

    /// Shortest text that reads back to the same value.
    fn render(&self) -> String {
        format!("{self:?}")
    }

    fn parse_text(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwistor::scalar::frac;
    use serde_json::json;

    #[test]
    fn numbers_from_json() {
        assert_eq!(
            Num::from_json(&json!(3)),
            Ok(Num::Exact(Rational::from_int(3)))
        );
        assert_eq!(Num::from_json(&json!("-6/4")), Ok(Num::Exact(frac(-3, 2))));
        assert_eq!(Num::from_json(&json!(0.5)), Ok(Num::Float(0.5)));
        assert_eq!(Num::from_json(&json!("0.5")), Ok(Num::Float(0.5)));
        assert!(Num::from_json(&json!("x")).is_err());
        assert!(Num::from_json(&json!([1])).is_err());
    }

    #[test]
    fn rational_ring_rejects_floats() {
        assert!(Rational::from_num(&Num::Float(0.5)).is_err());
        assert_eq!(f64::from_num(&Num::Exact(frac(1, 4))), Ok(0.25));
    }

    #[test]
    fn text_round_trip() {
        let q: Rational = frac(-12, 7);
        assert_eq!(Rational::parse_text(&q.render()), Some(q));
        let x = 0.1 + 0.2;
        assert_eq!(f64::parse_text(&x.render()), Some(x));
    }
}
