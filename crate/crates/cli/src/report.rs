//! Classification reports and their JSON form.
//!
//! Scalars are strings: `"p/q"` in the rational ring, shortest round-trip
//! decimals in the float ring. Forms map monomial names such as `"e0123"` to
//! coefficients.

use std::collections::BTreeMap;

use gwistor::check::CheckReport;
use gwistor::derivatives::{assemble, cross_check_dphi};
use gwistor::exterior::{Form, MultiIndex};
use gwistor::g2::{extract_torsion_forms, tau_anti_z, verify_closed_forms, TorsionForms};
use gwistor::model::{CurvDerived, PointModel, TorsDerived};
use gwistor::torsion_space::is_anti_z;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::ring::{Ring, RingScalar};

pub type FormMap = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub r_bar: String,
    pub l: String,
    pub m: String,
    pub r_tilde: [String; 3],
    pub r_tilde_norm_sq: String,
    #[serde(rename = "W")]
    pub w: [String; 4],
    pub anti_z: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub label: String,
    pub ring: Ring,
    pub tol: f64,
    pub tau0: String,
    pub tau1: FormMap,
    pub tau2: FormMap,
    pub tau3: FormMap,
    pub invariants: Invariants,
    pub class_flags: Vec<String>,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Read a form field back into ring `S`.
    pub fn parse_form<S: RingScalar>(map: &FormMap, degree: usize) -> Option<Form<S>> {
        let mut out = Form::zero(degree);
        for (name, value) in map {
            let idx = MultiIndex::parse_name(name)?;
            if idx.degree() != degree {
                return None;
            }
            out.add_term(idx, S::parse_text(value)?);
        }
        Some(out)
    }
}

pub fn form_map<S: RingScalar>(f: &Form<S>) -> FormMap {
    f.terms().map(|(idx, c)| (idx.name(), c.render())).collect()
}

fn entries(report: &CheckReport) -> impl Iterator<Item = CheckEntry> + '_ {
    report.iter().map(|c| CheckEntry {
        name: c.name.clone(),
        passed: c.passed,
    })
}

/// Generic extraction plus every consistency check available for the model.
pub fn classify_model<S: RingScalar>(model: &PointModel<S>, tol: f64) -> Result<Report, CliError> {
    let bundle = assemble(model);
    let forms: TorsionForms<S> = extract_torsion_forms(&bundle.d_phi, &bundle.d_star_phi, tol)?;
    let mut checks = CheckReport::new();
    checks.push(
        "dφ reconstructs",
        forms.d_phi().approx_eq(&bundle.d_phi, tol),
    );
    checks.push(
        "d*φ reconstructs",
        forms.d_star_phi().approx_eq(&bundle.d_star_phi, tol),
    );
    checks.push("τ₂∈Λ²₁₄ and τ₃∈Λ³₂₇", forms.memberships_hold(tol));
    checks.extend(cross_check_dphi(model, &bundle, tol));
    checks.extend(verify_closed_forms(model, tol));
    let anti_z = is_anti_z(&model.torsion, tol);
    if anti_z {
        let closed = tau_anti_z(model, tol)?;
        let same = (closed.tau0.clone() - forms.tau0.clone()).is_negligible(tol)
            && closed.tau1.approx_eq(&forms.tau1, tol)
            && closed.tau2.approx_eq(&forms.tau2, tol)
            && closed.tau3.approx_eq(&forms.tau3, tol);
        checks.push("anti-Z closed form agrees", same);
    }

    let cd = CurvDerived::new(&model.curvature);
    let td = TorsDerived::new(&model.torsion);
    let rt = cd.r_tilde_components();
    let norm = rt
        .iter()
        .fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
    Ok(Report {
        label: model.label.clone(),
        ring: S::RING,
        tol,
        tau0: forms.tau0.render(),
        tau1: form_map(&forms.tau1),
        tau2: form_map(&forms.tau2),
        tau3: form_map(&forms.tau3),
        invariants: Invariants {
            r_bar: cd.r_bar.render(),
            l: cd.l.render(),
            m: td.m.render(),
            r_tilde: rt.map(|x| x.render()),
            r_tilde_norm_sq: norm.render(),
            w: td.w.map(|x| x.render()),
            anti_z,
        },
        class_flags: forms
            .class_flags
            .iter()
            .map(|f| f.name().to_string())
            .collect(),
        checks: entries(&checks).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwistor::model::random_model;
    use gwistor::scalar::Rational;

    #[test]
    fn json_round_trip_is_lossless() {
        let m = random_model(4);
        let report = classify_model(&m, 0.0).unwrap();
        assert!(report.all_passed());
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        let tau3 = Report::parse_form::<Rational>(&back.tau3, 3).unwrap();
        let direct = gwistor::g2::classify(&m, 0.0).unwrap();
        assert_eq!(tau3, direct.tau3);
    }

    #[test]
    fn float_round_trip_is_lossless() {
        let m = random_model(5).map(gwistor::scalar::Scalar::to_f64);
        let report = classify_model(&m, 1e-9).unwrap();
        let back: Report = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(back, report);
        let tau2 = Report::parse_form::<f64>(&back.tau2, 2).unwrap();
        assert_eq!(tau2, gwistor::g2::classify(&m, 1e-9).unwrap().tau2);
    }
}
