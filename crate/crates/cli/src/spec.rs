//! Model descriptions read from JSON.
//!
//! A description is either named (`{"type": "constant_curvature", "c": -2}`)
//! or explicit (`{"R": [[[i,j,k,l], v], ...], "T": [[[i,j,k], v], ...]}`).
//! Explicit components set their skew partners; a listed partner that
//! disagrees is a symmetry violation.

use std::collections::HashMap;

use gwistor::model::{
    constant_curvature, product_spheres, random_model, skew_torsion, vectorial_torsion, Curvature4,
    PointModel, Torsion4,
};
use gwistor::Error as CoreError;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;
use crate::ring::{Num, Ring, RingScalar};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(rename = "type")]
    kind: Option<String>,
    c: Option<Value>,
    nu: Option<Vec<Value>>,
    x: Option<Vec<Value>>,
    a: Option<Value>,
    b: Option<Value>,
    seed: Option<u64>,
    #[serde(rename = "R")]
    r: Option<Vec<(Vec<usize>, Value)>>,
    #[serde(rename = "T")]
    t: Option<Vec<(Vec<usize>, Value)>>,
    u: Option<Vec<Value>>,
    ring: Option<Ring>,
    tol: Option<f64>,
    label: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Named {
    Flat,
    ConstantCurvature { c: Num },
    Vectorial { nu: [Num; 4] },
    Skew { x: [Num; 4] },
    ProductSpheres { a: Num, b: Num },
    Random { seed: u64 },
}

/// Parsed once per input, so the size gap between variants is irrelevant.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Named(Named),
    Explicit {
        r: Vec<([usize; 4], Num)>,
        t: Vec<([usize; 3], Num)>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub source: Source,
    pub u: Option<[Num; 4]>,
    pub ring: Option<Ring>,
    pub tol: Option<f64>,
    pub label: Option<String>,
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn num(v: &Value, what: &str) -> Result<Num, CliError> {
    Num::from_json(v).map_err(|e| parse_err(format!("{what}: {e}")))
}

fn four(v: &[Value], what: &str) -> Result<[Num; 4], CliError> {
    if v.len() != 4 {
        return Err(parse_err(format!(
            "{what} needs 4 entries, got {}",
            v.len()
        )));
    }
    let nums: Vec<Num> = v.iter().map(|x| num(x, what)).collect::<Result<_, _>>()?;
    Ok(std::array::from_fn(|i| nums[i].clone()))
}

fn required<'a>(field: &'a Option<Value>, name: &str) -> Result<&'a Value, CliError> {
    field
        .as_ref()
        .ok_or_else(|| parse_err(format!("missing \"{name}\"")))
}

fn indices<const N: usize>(idx: &[usize], what: &str) -> Result<[usize; N], CliError> {
    if idx.len() != N || idx.iter().any(|&i| i > 3) {
        return Err(parse_err(format!(
            "{what} index {idx:?} must have {N} entries in 0..=3"
        )));
    }
    Ok(std::array::from_fn(|i| idx[i]))
}

impl ModelSpec {
    pub fn from_value(v: &Value) -> Result<Self, CliError> {
        let raw: RawSpec =
            serde_json::from_value(v.clone()).map_err(|e| parse_err(e.to_string()))?;
        let explicit = raw.r.is_some() || raw.t.is_some();
        let source = match (raw.kind.as_deref(), explicit) {
            (Some(_), true) => {
                return Err(parse_err(
                    "give either \"type\" or explicit \"R\"/\"T\", not both",
                ))
            }
            (None, false) => return Err(parse_err("missing \"type\" or explicit \"R\"/\"T\"")),
            (None, true) => {
                let r = raw
                    .r
                    .unwrap_or_default()
                    .iter()
                    .map(|(i, v)| Ok((indices::<4>(i, "R")?, num(v, "R")?)))
                    .collect::<Result<_, CliError>>()?;
                let t = raw
                    .t
                    .unwrap_or_default()
                    .iter()
                    .map(|(i, v)| Ok((indices::<3>(i, "T")?, num(v, "T")?)))
                    .collect::<Result<_, CliError>>()?;
                Source::Explicit { r, t }
            }
            (Some(kind), false) => Source::Named(match kind {
                "flat" => Named::Flat,
                "constant_curvature" => Named::ConstantCurvature {
                    c: num(required(&raw.c, "c")?, "c")?,
                },
                "vectorial" => Named::Vectorial {
                    nu: four(
                        raw.nu
                            .as_deref()
                            .ok_or_else(|| parse_err("missing \"nu\""))?,
                        "nu",
                    )?,
                },
                "skew" => Named::Skew {
                    x: four(
                        raw.x.as_deref().ok_or_else(|| parse_err("missing \"x\""))?,
                        "x",
                    )?,
                },
                "product_spheres" => Named::ProductSpheres {
                    a: num(required(&raw.a, "a")?, "a")?,
                    b: num(required(&raw.b, "b")?, "b")?,
                },
                "random" => Named::Random {
                    seed: raw.seed.ok_or_else(|| parse_err("missing \"seed\""))?,
                },
                other => return Err(parse_err(format!("unknown model type {other:?}"))),
            }),
        };
        let u = raw.u.as_deref().map(|u| four(u, "u")).transpose()?;
        Ok(ModelSpec {
            source,
            u,
            ring: raw.ring,
            tol: raw.tol,
            label: raw.label,
        })
    }

    pub fn default_label(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match &self.source {
            Source::Named(Named::Flat) => "flat".into(),
            Source::Named(Named::ConstantCurvature { .. }) => "constant_curvature".into(),
            Source::Named(Named::Vectorial { .. }) => "vectorial".into(),
            Source::Named(Named::Skew { .. }) => "skew".into(),
            Source::Named(Named::ProductSpheres { .. }) => "product_spheres".into(),
            Source::Named(Named::Random { seed }) => format!("random({seed})"),
            Source::Explicit { .. } => "explicit".into(),
        }
    }

    /// The point model in ring `S`, adapted to `u` when one is given.
    pub fn build<S: RingScalar>(&self, tol: f64) -> Result<PointModel<S>, CliError> {
        let conv = |n: &Num| S::from_num(n).map_err(parse_err);
        let conv4 = |v: &[Num; 4]| -> Result<[S; 4], CliError> {
            let out: Vec<S> = v.iter().map(conv).collect::<Result<_, _>>()?;
            Ok(std::array::from_fn(|i| out[i].clone()))
        };
        let label = self.default_label();
        let (r, t) = match &self.source {
            Source::Named(named) => match named {
                Named::Flat => (Curvature4::zero(), Torsion4::zero()),
                Named::ConstantCurvature { c } => (constant_curvature(conv(c)?), Torsion4::zero()),
                Named::Vectorial { nu } => (Curvature4::zero(), vectorial_torsion(&conv4(nu)?)),
                Named::Skew { x } => (Curvature4::zero(), skew_torsion(&conv4(x)?)),
                Named::ProductSpheres { a, b } => {
                    let r = product_spheres(conv(a)?, conv(b)?)
                        .map_err(|e| parse_err(e.to_string()))?;
                    (r, Torsion4::zero())
                }
                Named::Random { seed } => {
                    let m = random_model(*seed);
                    (
                        m.curvature.map(S::from_rational),
                        m.torsion.map(S::from_rational),
                    )
                }
            },
            Source::Explicit { r, t } => (
                explicit_curvature::<S>(r, tol)?,
                explicit_torsion::<S>(t, tol)?,
            ),
        };
        let model = PointModel::new(r, t, label);
        match &self.u {
            None => Ok(model),
            Some(u) => model.adapted_to(&conv4(u)?, tol).map_err(|e| match e {
                CoreError::InvalidParameter(msg) => parse_err(msg),
                other => CliError::from(other),
            }),
        }
    }
}

fn violation(tensor: &'static str, indices: &[usize]) -> CliError {
    CliError::Symmetry {
        tensor,
        indices: indices.to_vec(),
    }
}

/// Listed values first, then unlisted skew partners filled in, then the
/// symmetry check over every component.
fn explicit_curvature<S: RingScalar>(
    entries: &[([usize; 4], Num)],
    tol: f64,
) -> Result<Curvature4<S>, CliError> {
    let mut listed: HashMap<[usize; 4], S> = HashMap::new();
    for (idx, v) in entries {
        let v = S::from_num(v).map_err(parse_err)?;
        if let Some(prev) = listed.insert(*idx, v.clone()) {
            if !(prev - v).is_negligible(tol) {
                return Err(violation("R", idx));
            }
        }
    }
    let mut filled = listed.clone();
    for (&[i, j, k, l], v) in &listed {
        for (p, s) in [([j, i, k, l], -1), ([i, j, l, k], -1), ([j, i, l, k], 1)] {
            filled
                .entry(p)
                .or_insert_with(|| v.clone() * S::from_int(s));
        }
    }
    let r = Curvature4::from_fn(|i, j, k, l| {
        filled.get(&[i, j, k, l]).cloned().unwrap_or_else(S::zero)
    });
    r.validate(tol).map_err(CliError::from)?;
    Ok(r)
}

fn explicit_torsion<S: RingScalar>(
    entries: &[([usize; 3], Num)],
    tol: f64,
) -> Result<Torsion4<S>, CliError> {
    let mut listed: HashMap<[usize; 3], S> = HashMap::new();
    for (idx, v) in entries {
        let v = S::from_num(v).map_err(parse_err)?;
        if let Some(prev) = listed.insert(*idx, v.clone()) {
            if !(prev - v).is_negligible(tol) {
                return Err(violation("T", idx));
            }
        }
    }
    let mut filled = listed.clone();
    for (&[i, j, k], v) in &listed {
        filled.entry([j, i, k]).or_insert_with(|| -v.clone());
    }
    let t = Torsion4::from_fn(|i, j, k| filled.get(&[i, j, k]).cloned().unwrap_or_else(S::zero));
    t.validate(tol).map_err(CliError::from)?;
    Ok(t)
}

/// One description or a JSON array of them; the flag is true for an array.
pub fn parse_input(text: &str) -> Result<(Vec<ModelSpec>, bool), CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    match &value {
        Value::Array(items) => Ok((
            items
                .iter()
                .map(ModelSpec::from_value)
                .collect::<Result<_, _>>()?,
            true,
        )),
        single => Ok((vec![ModelSpec::from_value(single)?], false)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwistor::scalar::Rational;
    use serde_json::json;

    #[test]
    fn named_and_explicit() {
        let s = ModelSpec::from_value(&json!({"type": "constant_curvature", "c": -2})).unwrap();
        assert!(matches!(
            s.source,
            Source::Named(Named::ConstantCurvature { .. })
        ));
        let s = ModelSpec::from_value(&json!({"T": [[[0, 1, 0], "1/2"]]})).unwrap();
        let m = s.build::<Rational>(0.0).unwrap();
        assert_eq!(m.torsion.get(1, 0, 0), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            json!({"type": "nope"}),
            json!({"type": "flat", "R": []}),
            json!({}),
            json!({"type": "vectorial", "nu": [1, 2]}),
            json!({"R": [[[0, 1, 2, 7], 1]]}),
            json!({"type": "flat", "extra": 1}),
        ] {
            assert!(
                matches!(ModelSpec::from_value(&bad), Err(CliError::Parse(_))),
                "{bad}"
            );
        }
        let s = ModelSpec::from_value(&json!({"type": "constant_curvature", "c": 0.5})).unwrap();
        assert!(matches!(s.build::<Rational>(0.0), Err(CliError::Parse(_))));
        assert!(s.build::<f64>(1e-9).is_ok());
    }

    #[test]
    fn symmetry_violations_name_indices() {
        let s =
            ModelSpec::from_value(&json!({"R": [[[0, 1, 2, 3], 1], [[1, 0, 2, 3], 1]]})).unwrap();
        match s.build::<Rational>(0.0) {
            Err(CliError::Symmetry {
                tensor: "R",
                indices,
            }) => assert_eq!(indices.len(), 4),
            other => panic!("{other:?}"),
        }
        let s = ModelSpec::from_value(&json!({"T": [[[2, 2, 1], 1]]})).unwrap();
        assert!(matches!(
            s.build::<Rational>(0.0),
            Err(CliError::Symmetry { tensor: "T", .. })
        ));
    }

    #[test]
    fn rational_u_must_be_exactly_unit() {
        let s = ModelSpec::from_value(&json!({"type": "flat", "u": ["3/5", "4/5", 0, 0]})).unwrap();
        assert!(s.build::<Rational>(0.0).is_ok());
        let s = ModelSpec::from_value(&json!({"type": "flat", "u": [1, 1, 0, 0]})).unwrap();
        assert!(matches!(s.build::<Rational>(0.0), Err(CliError::Parse(_))));
    }
}
