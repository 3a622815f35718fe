//! G2-irreducible splitting of 2- and 3-forms, extraction of the torsion
//! forms `τ₀, τ₁, τ₂, τ₃` from `(dφ, d*φ)`, their closed forms in terms of the
//! base curvature and torsion, and the named torsion classes.
//!
//! `L(γ) = *(γ∧φ)` acts on `Λ²` with eigenvalue `−2` on `Λ²₇` and `+1` on
//! `Λ²₁₄`. `Λ³₇` is spanned by `χ_i = *(e^i∧φ)`, whose Gram matrix is `4·1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::check::CheckReport;
use crate::derivatives::{assemble, Blocks};
use crate::error::{Error, Result};
use crate::exterior::{Form, MultiIndex, Vector7};
use crate::linalg::Matrix;
use crate::model::{CurvDerived, Curvature4, PointModel, TorsDerived, Torsion4};
use crate::scalar::{frac, int, Scalar};
use crate::structure::StructureForms;

/// A named torsion class. A model carries every class whose defining
/// conditions it satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassFlag {
    Parallel,
    NearlyParallel,
    Calibrated,
    Cocalibrated,
    Balanced,
    Integrable,
    PureW3,
}

impl ClassFlag {
    pub const ALL: [ClassFlag; 7] = [
        ClassFlag::Parallel,
        ClassFlag::NearlyParallel,
        ClassFlag::Calibrated,
        ClassFlag::Cocalibrated,
        ClassFlag::Balanced,
        ClassFlag::Integrable,
        ClassFlag::PureW3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassFlag::Parallel => "parallel",
            ClassFlag::NearlyParallel => "nearly_parallel",
            ClassFlag::Calibrated => "calibrated",
            ClassFlag::Cocalibrated => "cocalibrated",
            ClassFlag::Balanced => "balanced",
            ClassFlag::Integrable => "integrable",
            ClassFlag::PureW3 => "pure_W3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for ClassFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionForms<S: Scalar> {
    pub tau0: S,
    pub tau1: Form<S>,
    pub tau2: Form<S>,
    pub tau3: Form<S>,
    pub class_flags: BTreeSet<ClassFlag>,
}

impl<S: Scalar> TorsionForms<S> {
    /// `τ₀·*φ + ¾τ₁∧φ + *τ₃`.
    pub fn d_phi(&self) -> Form<S> {
        let f = StructureForms::<S>::literal();
        f.star_phi.clone() * self.tau0.clone()
            + self.tau1.wedge(&f.phi) * frac(3, 4)
            + self.tau3.hodge7()
    }

    /// `τ₁∧*φ + *τ₂`.
    pub fn d_star_phi(&self) -> Form<S> {
        let f = StructureForms::<S>::literal();
        self.tau1.wedge(&f.star_phi) + self.tau2.hodge7()
    }

    pub fn has(&self, flag: ClassFlag) -> bool {
        self.class_flags.contains(&flag)
    }

    /// Membership of `τ₂` in `Λ²₁₄` and of `τ₃` in `Λ³₂₇`.
    pub fn memberships_hold(&self, tol: f64) -> bool {
        in_lambda2_14(&self.tau2, tol) && in_lambda3_27(&self.tau3, tol)
    }
}

/// `L(γ) = *(γ∧φ)`.
pub fn l_operator<S: Scalar>(gamma: &Form<S>) -> Form<S> {
    gamma.wedge(&StructureForms::<S>::literal().phi).hodge7()
}

/// `(γ₇, γ₁₄)` with `γ₇ = (γ − Lγ)/3` and `γ₁₄ = (Lγ + 2γ)/3`.
pub fn proj_lambda2<S: Scalar>(gamma: &Form<S>) -> (Form<S>, Form<S>) {
    let l = l_operator(gamma);
    let third = frac::<S>(1, 3);
    let g7 = (gamma - &l) * third.clone();
    let g14 = (l + gamma * int(2)) * third;
    (g7, g14)
}

pub fn in_lambda2_14<S: Scalar>(gamma: &Form<S>, tol: f64) -> bool {
    gamma.degree() == 2 && l_operator(gamma).approx_eq(gamma, tol)
}

pub fn in_lambda2_7<S: Scalar>(gamma: &Form<S>, tol: f64) -> bool {
    gamma.degree() == 2 && l_operator(gamma).approx_eq(&(gamma * int(-2)), tol)
}

/// `χ_i = *(e^i∧φ)`, a basis of `Λ³₇`.
pub fn chi_basis<S: Scalar>() -> [Form<S>; 7] {
    let phi = StructureForms::<S>::literal().phi;
    std::array::from_fn(|i| Form::basis(&[i]).wedge(&phi).hodge7())
}

/// Coefficients `c` with `Σ c_i χ_i` the orthogonal projection of `γ` on `Λ³₇`.
pub fn lambda3_7_coefficients<S: Scalar>(gamma: &Form<S>) -> [S; 7] {
    let chi = chi_basis::<S>();
    let gram = Matrix::from_fn(7, 7, |r, c| chi[r].inner(&chi[c]));
    let rhs: Vec<S> = chi.iter().map(|x| x.inner(gamma)).collect();
    let sol = gram
        .solve(&rhs, S::default_tol())
        .expect("the χ_i are linearly independent");
    std::array::from_fn(|i| sol[i].clone())
}

/// `(γ₁, γ₇, γ₂₇)` with `γ₁ = (⟨γ,φ⟩/7)φ`, `γ₇` the Gram projection onto
/// `span χ_i`, and `γ₂₇` the remainder.
pub fn proj_lambda3<S: Scalar>(gamma: &Form<S>) -> (Form<S>, Form<S>, Form<S>) {
    let phi = StructureForms::<S>::literal().phi;
    let g1 = &phi * (gamma.inner(&phi) * frac(1, 7));
    let coeffs = lambda3_7_coefficients(gamma);
    let chi = chi_basis::<S>();
    let g7 = chi
        .iter()
        .zip(coeffs)
        .fold(Form::zero(3), |acc, (x, c)| acc + x * c);
    let g27 = &(gamma - &g1) - &g7;
    (g1, g7, g27)
}

pub fn in_lambda3_27<S: Scalar>(gamma: &Form<S>, tol: f64) -> bool {
    let f = StructureForms::<S>::literal();
    gamma.degree() == 3
        && gamma.wedge(&f.phi).is_negligible(tol)
        && gamma.wedge(&f.star_phi).is_negligible(tol)
}

/// Matrix of a linear map `Λ^p → Λ^q` in the lexicographic monomial bases.
pub fn operator_matrix<S: Scalar>(
    from_degree: usize,
    to_degree: usize,
    f: impl Fn(&Form<S>) -> Form<S>,
) -> Matrix<S> {
    let src = MultiIndex::all_of_degree(from_degree);
    let dst = MultiIndex::all_of_degree(to_degree);
    let columns: Vec<Vec<S>> = src
        .iter()
        .map(|idx| {
            let image = f(&Form::basis(&idx.to_vec()));
            dst.iter().map(|d| image.coefficient(*d)).collect()
        })
        .collect();
    Matrix::from_columns(&columns, dst.len())
}

/// Multiplicities of the eigenvalues `−2` and `+1` of `L` on `Λ²`, read off
/// as kernel dimensions of `L + 2` and `L − 1`.
pub fn l_eigen_multiplicities<S: Scalar>(tol: f64) -> (usize, usize) {
    let l = operator_matrix::<S>(2, 2, l_operator);
    let id = Matrix::identity(21);
    let plus2 = l.add(&id.scale(&int(2)));
    let minus1 = l.sub(&id);
    (21 - plus2.rank(tol), 21 - minus1.rank(tol))
}

/// Ranks of `π₇` and `π₁₄` on `Λ²`.
pub fn lambda2_projector_ranks<S: Scalar>(tol: f64) -> (usize, usize) {
    let p7 = operator_matrix::<S>(2, 2, |g| proj_lambda2(g).0);
    let p14 = operator_matrix::<S>(2, 2, |g| proj_lambda2(g).1);
    (p7.rank(tol), p14.rank(tol))
}

/// Ranks of `π₁`, `π₇`, `π₂₇` on `Λ³`.
pub fn lambda3_projector_ranks<S: Scalar>(tol: f64) -> (usize, usize, usize) {
    let p1 = operator_matrix::<S>(3, 3, |g| proj_lambda3(g).0);
    let p7 = operator_matrix::<S>(3, 3, |g| proj_lambda3(g).1);
    let p27 = operator_matrix::<S>(3, 3, |g| proj_lambda3(g).2);
    (p1.rank(tol), p7.rank(tol), p27.rank(tol))
}

fn vanishes<S: Scalar>(f: &Form<S>, tol: f64) -> bool {
    f.is_negligible(tol)
}

fn class_flags<S: Scalar>(
    tau0: &S,
    tau1: &Form<S>,
    tau2: &Form<S>,
    tau3: &Form<S>,
    d_phi: &Form<S>,
    tol: f64,
) -> BTreeSet<ClassFlag> {
    let z0 = tau0.is_negligible(tol);
    let (z1, z2, z3) = (
        vanishes(tau1, tol),
        vanishes(tau2, tol),
        vanishes(tau3, tol),
    );
    let mut flags = BTreeSet::new();
    let mut set = |cond: bool, flag| {
        if cond {
            flags.insert(flag);
        }
    };
    set(z1, ClassFlag::Balanced);
    set(z2, ClassFlag::Integrable);
    set(z1 && z2, ClassFlag::Cocalibrated);
    set(z0 && z1 && z2, ClassFlag::PureW3);
    set(vanishes(d_phi, tol), ClassFlag::Calibrated);
    set(z1 && z2 && z3 && !z0, ClassFlag::NearlyParallel);
    set(z0 && z1 && z2 && z3, ClassFlag::Parallel);
    flags
}

/// `τ₁` read off from `dφ`: the `Λ³₇` part of `*dφ` is `¾ Σ τ₁_i χ_i`.
pub fn tau1_from_d_phi<S: Scalar>(d_phi: &Form<S>) -> Form<S> {
    let c = lambda3_7_coefficients(&d_phi.hodge7());
    (0..7).fold(Form::zero(1), |acc, i| {
        acc + Form::monomial(&[i], c[i].clone() * frac(4, 3))
    })
}

/// Torsion forms of a `(dφ, d*φ)` pair. Fails with
/// [`Error::NotRealizable`] when a membership condition or the agreement of
/// the two `τ₁` readings fails.
pub fn extract_torsion_forms<S: Scalar>(
    d_phi: &Form<S>,
    d_star_phi: &Form<S>,
    tol: f64,
) -> Result<TorsionForms<S>> {
    if d_phi.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            got: d_phi.degree(),
        });
    }
    if d_star_phi.degree() != 5 {
        return Err(Error::DegreeMismatch {
            expected: 5,
            got: d_star_phi.degree(),
        });
    }
    let f = StructureForms::<S>::literal();
    let tau1 = d_star_phi.hodge7().wedge(&f.star_phi).hodge7() * frac(1, 3);
    let tau2 = (d_star_phi - &tau1.wedge(&f.star_phi)).hodge7();
    let tau0 = d_phi.wedge(&f.phi).hodge7().scalar_part() * frac(1, 7);
    let tau3 =
        (&(d_phi - &(&f.star_phi * tau0.clone())) - &(tau1.wedge(&f.phi) * frac(3, 4))).hodge7();

    if !in_lambda2_14(&tau2, tol) {
        return Err(Error::NotRealizable("τ₂ is not in Λ²₁₄".into()));
    }
    if !in_lambda3_27(&tau3, tol) {
        return Err(Error::NotRealizable("τ₃ is not in Λ³₂₇".into()));
    }
    if !tau1_from_d_phi(d_phi).approx_eq(&tau1, tol) {
        return Err(Error::NotRealizable(
            "τ₁ from dφ and from d*φ differ".into(),
        ));
    }
    let class_flags = class_flags(&tau0, &tau1, &tau2, &tau3, d_phi, tol);
    Ok(TorsionForms {
        tau0,
        tau1,
        tau2,
        tau3,
        class_flags,
    })
}

/// Torsion forms of a point model through the generic extraction route.
pub fn classify<S: Scalar>(model: &PointModel<S>, tol: f64) -> Result<TorsionForms<S>> {
    let bundle = assemble(model);
    extract_torsion_forms(&bundle.d_phi, &bundle.d_star_phi, tol)
}

/// Curvature contributions `(τ₁,curv, τ₂,curv)`.
pub fn tau_curv_closed<S: Scalar>(r: &Curvature4<S>) -> (Form<S>, Form<S>) {
    tau_curv_from(&CurvDerived::new(r))
}

fn tau_curv_from<S: Scalar>(cd: &CurvDerived<S>) -> (Form<S>, Form<S>) {
    let f = StructureForms::<S>::literal();
    let rt = cd.r_tilde_components();
    let tau1 = cd.r_tilde.flat() * frac(-1, 3);
    let omega_part = (0..3).fold(Form::zero(2), |acc, i| acc + &f.omega[i] * rt[i].clone());
    let tau2 = f.alpha.interior(&cd.r_tilde) * frac(-2, 3) + omega_part * frac(1, 3);
    (tau1, tau2)
}

/// Torsion contributions `(τ₁,tors, τ₂,tors)`.
pub fn tau_tors_closed<S: Scalar>(t: &Torsion4<S>) -> (Form<S>, Form<S>) {
    let td = TorsDerived::new(t);
    let w = |i: usize| td.w[i].clone() * frac(1, 3);
    let c = |i: usize, j: usize, k: usize| w(i) - td.z(i, j, k);
    let tau1 = (0..4).fold(Form::zero(1), |acc, i| acc + Form::monomial(&[i], w(i)));
    let terms: [(i64, S, [usize; 2]); 12] = [
        (1, c(3, 2, 1), [0, 6]),
        (-1, c(2, 3, 0), [1, 6]),
        (1, c(1, 0, 3), [2, 6]),
        (-1, c(0, 1, 2), [3, 6]),
        (1, c(2, 1, 3), [0, 5]),
        (1, c(3, 0, 2), [1, 5]),
        (-1, c(0, 3, 1), [2, 5]),
        (-1, c(1, 2, 0), [3, 5]),
        (1, c(1, 3, 2), [0, 4]),
        (-1, c(0, 2, 3), [1, 4]),
        (-1, c(3, 1, 0), [2, 4]),
        (1, c(2, 0, 1), [3, 4]),
    ];
    let tau2 = terms
        .into_iter()
        .fold(Form::zero(2), |acc, (sign, v, idx)| {
            acc + Form::monomial(&idx, v * int(sign))
        });
    (tau1, tau2)
}

/// `τ₃′` of the decomposition `ℛα = ⅐(r̄−l)*φ + ¾τ₁,curv∧φ + *τ₃′`.
pub fn tau3_prime<S: Scalar>(r: &Curvature4<S>) -> Form<S> {
    let f = StructureForms::<S>::literal();
    let cd = CurvDerived::new(r);
    let [r1, r2, r3] = cd.r_tilde_components();
    let om = &f.omega;
    let horizontal = |k: usize| {
        let mut acc = Form::zero(2);
        for i in 0..4 {
            for j in i + 1..4 {
                let c = r.get(i, j, 0, k);
                if !c.is_zero() {
                    let star = Form::basis(&[i, j])
                        .hodge4_horizontal()
                        .expect("horizontal 2-form");
                    acc = acc + star * c;
                }
            }
        }
        acc
    };
    let quarter = frac::<S>(1, 4);
    let b1 = horizontal(1) - (&om[2] * r2.clone() - &om[1] * r3.clone()) * quarter.clone();
    let b2 = horizontal(2) - (&om[0] * r3 - &om[2] * r1.clone()) * quarter.clone();
    let b3 = horizontal(3) - (&om[1] * r1 - &om[0] * r2) * quarter;
    let phi_part = &f.phi * ((cd.r_bar - cd.l) * frac(-1, 7));
    phi_part
        + b1.wedge(&Form::basis(&[4]))
        + b2.wedge(&Form::basis(&[5]))
        + b3.wedge(&Form::basis(&[6]))
}

/// Closed-form torsion forms for anti-Z torsion.
pub fn tau_anti_z<S: Scalar>(model: &PointModel<S>, tol: f64) -> Result<TorsionForms<S>> {
    if !crate::torsion_space::is_anti_z(&model.torsion, tol) {
        return Err(Error::NotAntiZ);
    }
    let f = StructureForms::<S>::literal();
    let cd = CurvDerived::new(&model.curvature);
    let s = cd.r_bar.clone() - cd.l.clone();
    let tau0 = (s.clone() + int(6)) * frac(2, 7);
    let (tau1, tau2) = tau_curv_from(&cd);
    let w27 = f.alpha.clone() * int(6) - f.mu.wedge(&f.beta) + f.alpha2.clone();
    let tau3 = tau3_prime(&model.curvature) + w27 * ((s - int(2)) * frac(1, 7));
    let d_phi = assemble(model).d_phi;
    let class_flags = class_flags(&tau0, &tau1, &tau2, &tau3, &d_phi, tol);
    Ok(TorsionForms {
        tau0,
        tau1,
        tau2,
        tau3,
        class_flags,
    })
}

/// `τ₀ = 6(c+2)/7` and `τ₃ = ⅐((15c−12)α + (2−6c)μβ − (c+2)α₂)` for constant
/// curvature `c` and vanishing torsion.
pub fn constant_curvature_taus<S: Scalar>(c: &S) -> (S, Form<S>) {
    let f = StructureForms::<S>::literal();
    let tau0 = (c.clone() + int(2)) * frac(6, 7);
    let a = c.clone() * int(15) - int(12);
    let b = int::<S>(2) - c.clone() * int(6);
    let g = -(c.clone() + int(2));
    let tau3 = (&f.alpha * a + f.mu.wedge(&f.beta) * b + &f.alpha2 * g) * frac(1, 7);
    (tau0, tau3)
}

/// Auxiliary splittings of `2μα₁`, `β²` and `vol` into `Λ⁴₁ ⊕ Λ⁴₂₇`, and
/// `Λ³₂₇` membership of each starred 3-form.
pub fn verify_auxiliary_decompositions<S: Scalar>() -> CheckReport {
    let f = StructureForms::<S>::literal();
    let mb = f.mu.wedge(&f.beta);
    let combo = |a: i64, b: i64, c: i64| {
        (&f.alpha * int(a) + &mb * int(b) + &f.alpha2 * int(c)) * frac(1, 7)
    };
    let cases = [
        (
            "2μα₁=−6/7*φ+*⅐(6α+6μβ+8α₂)",
            f.mu.wedge(&f.alpha1) * int(2),
            frac::<S>(-6, 7),
            combo(6, 6, 8),
        ),
        (
            "β²=−6/7*φ+*⅐(6α−8μβ−6α₂)",
            f.beta.power(2),
            frac(-6, 7),
            combo(6, -8, -6),
        ),
        (
            "vol=⅐*φ+*⅐(6α−μβ+α₂)",
            f.vol.clone(),
            frac(1, 7),
            combo(6, -1, 1),
        ),
    ];
    let mut report = CheckReport::new();
    for (name, lhs, c, g) in cases {
        let rhs = &f.star_phi * c + g.hodge7();
        report.push(name, lhs == rhs);
        report.push(
            format!("{name}: starred part in Λ³₂₇"),
            in_lambda3_27(&g, 0.0),
        );
    }
    report
}

/// Eigen-structure of `L`, projector ranks and idempotence, the `χ` Gram
/// matrix and the auxiliary splittings, all in the exact ring.
pub fn verify_decomposition_identities() -> CheckReport {
    type Q = crate::scalar::Rational;
    let mut report = CheckReport::new();
    let (m2, m1) = l_eigen_multiplicities::<Q>(0.0);
    report.push_detail(
        "L eigenvalue multiplicities (−2:7, 1:14)",
        (m2, m1) == (7, 14),
        format!("({m2}, {m1})"),
    );
    let l = operator_matrix::<Q>(2, 2, l_operator);
    let id = Matrix::identity(21);
    let min_poly = &l.add(&id.scale(&int(2))) * &l.sub(&id);
    report.push("(L+2)(L−1)=0 on Λ²", min_poly.is_zero(0.0));
    let (r7, r14) = lambda2_projector_ranks::<Q>(0.0);
    report.push_detail(
        "rank π₇, π₁₄ on Λ² = 7, 14",
        (r7, r14) == (7, 14),
        format!("({r7}, {r14})"),
    );
    let (s1, s7, s27) = lambda3_projector_ranks::<Q>(0.0);
    report.push_detail(
        "rank π₁, π₇, π₂₇ on Λ³ = 1, 7, 27",
        (s1, s7, s27) == (1, 7, 27),
        format!("({s1}, {s7}, {s27})"),
    );
    let p7 = operator_matrix::<Q>(3, 3, |g| proj_lambda3(g).1);
    report.push("π₇ on Λ³ is idempotent", (&p7 * &p7) == p7);
    let chi = chi_basis::<Q>();
    let gram = Matrix::from_fn(7, 7, |r, c| chi[r].inner(&chi[c]));
    report.push("Gram(χ) = 4·1", gram == Matrix::identity(7).scale(&int(4)));
    let e4_phi = StructureForms::<Q>::literal()
        .phi
        .interior(&Vector7::basis(4));
    report.push("e₄⌟φ ∈ Λ²₇", in_lambda2_7(&e4_phi, 0.0));
    report.extend(verify_auxiliary_decompositions::<Q>());
    report
}

/// The curvature and torsion pieces of `d*φ` against the closed forms, and
/// the `ℛα` splitting through `τ₃′`.
pub fn verify_closed_forms<S: Scalar>(model: &PointModel<S>, tol: f64) -> CheckReport {
    let f = StructureForms::<S>::literal();
    let b = Blocks::new(model);
    let mut report = CheckReport::new();
    let (c1, c2) = tau_curv_closed(&model.curvature);
    let (t1, t2) = tau_tors_closed(&model.torsion);
    let curv_part = crate::derivatives::d_star_phi_curvature_part(&b, &f);
    let tors_part = crate::derivatives::d_star_phi_torsion_part(&b, &f);
    report.push(
        "d*φ_curv = τ₁,curv∧*φ + *τ₂,curv",
        curv_part.approx_eq(&(c1.wedge(&f.star_phi) + c2.hodge7()), tol),
    );
    report.push(
        "d*φ_curv = −R̃♭∧vol",
        curv_part.approx_eq(&(-b.curv.r_tilde.flat().wedge(&f.vol)), tol),
    );
    report.push(
        "d*φ_tors = τ₁,tors∧*φ + *τ₂,tors",
        tors_part.approx_eq(&(t1.wedge(&f.star_phi) + t2.hodge7()), tol),
    );
    report.push("τ₂,curv ∈ Λ²₁₄", in_lambda2_14(&c2, tol));
    report.push("τ₂,tors ∈ Λ²₁₄", in_lambda2_14(&t2, tol));
    let t3p = tau3_prime(&model.curvature);
    let s = b.curv.r_bar.clone() - b.curv.l.clone();
    let rhs = &f.star_phi * (s * frac(1, 7)) + c1.wedge(&f.phi) * frac(3, 4) + t3p.hodge7();
    report.push(
        "ℛα = ⅐(r̄−l)*φ + ¾τ₁,curv∧φ + *τ₃′",
        b.calr_alpha.approx_eq(&rhs, tol),
    );
    report.push("τ₃′ ∈ Λ³₂₇", in_lambda3_27(&t3p, tol));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{constant_curvature, random_model, skew_torsion, vectorial_torsion};
    use crate::scalar::Rational;

    type Q = Rational;

    fn forms() -> StructureForms<Q> {
        StructureForms::literal()
    }

    fn cc_model(c: i64) -> PointModel<Q> {
        PointModel::new(
            constant_curvature(int::<Q>(c)),
            Torsion4::zero(),
            format!("c={c}"),
        )
    }

    #[test]
    fn l_on_interior_of_phi_by_hand() {
        // e₄⌟φ expanded by hand: e₄⌟e^{456} + e₄⌟e^{014} − e₄⌟e^{234}
        let g = Form::<Q>::basis(&[5, 6]) + Form::basis(&[0, 1]) - Form::basis(&[2, 3]);
        assert_eq!(forms().phi.interior(&Vector7::basis(4)), g);
        assert_eq!(l_operator(&g), g.clone() * int(-2));
        let (g7, g14) = proj_lambda2(&g);
        assert_eq!(g7, g);
        assert!(g14.is_zero());
    }

    #[test]
    fn lambda2_split_sums_and_eigenvalues() {
        for idx in MultiIndex::all_of_degree(2) {
            let g = Form::<Q>::basis(&idx.to_vec());
            let (g7, g14) = proj_lambda2(&g);
            assert_eq!(&g7 + &g14, g);
            assert!(in_lambda2_7(&g7, 0.0));
            assert!(in_lambda2_14(&g14, 0.0));
        }
        assert_eq!(
            proj_lambda2(&Form::<Q>::zero(2)),
            (Form::zero(2), Form::zero(2))
        );
    }

    #[test]
    fn decomposition_identities_hold() {
        let report = verify_decomposition_identities();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn lambda3_examples() {
        let f = forms();
        let (g1, g7, g27) = proj_lambda3(&f.phi);
        assert_eq!(
            (g1, g7.is_zero(), g27.is_zero()),
            (f.phi.clone(), true, true)
        );
        let g = &f.alpha * int(6) - f.mu.wedge(&f.beta) + f.alpha2.clone();
        let (g1, g7, g27) = proj_lambda3(&g);
        assert!(g1.is_zero() && g7.is_zero());
        assert_eq!(g27, g);
        for idx in MultiIndex::all_of_degree(3) {
            let g = Form::<Q>::basis(&idx.to_vec());
            let (g1, g7, g27) = proj_lambda3(&g);
            assert_eq!(&(&g1 + &g7) + &g27, g);
            assert!(in_lambda3_27(&g27, 0.0));
        }
    }

    #[test]
    fn flat_and_hyperbolic_and_sphere() {
        let f = forms();
        let flat = classify(&cc_model(0), 0.0).unwrap();
        assert_eq!(flat.tau0, frac(12, 7));
        assert!(flat.tau1.is_zero() && flat.tau2.is_zero());
        let expected =
            (&f.alpha * int(-12) + f.mu.wedge(&f.beta) * int(2) - &f.alpha2 * int(2)) * frac(1, 7);
        assert_eq!(flat.tau3, expected);

        let h4 = classify(&cc_model(-2), 0.0).unwrap();
        assert_eq!(h4.tau0, int(0));
        assert_eq!(h4.tau3, &f.alpha * int(-6) + f.mu.wedge(&f.beta) * int(2));
        assert!(h4.has(ClassFlag::PureW3) && h4.has(ClassFlag::Cocalibrated));
        assert!(!h4.has(ClassFlag::Parallel));

        let s4 = classify(&cc_model(5), 0.0).unwrap();
        assert_eq!(s4.tau0, int(6));
        assert_eq!(
            s4.tau3,
            &f.alpha * int(9) - f.mu.wedge(&f.beta) * int(4) - f.alpha2.clone()
        );
        assert_eq!(s4.d_phi(), assemble(&cc_model(5)).d_phi);
    }

    #[test]
    fn constant_curvature_family() {
        for c in [-2, 0, 1, 5, 3] {
            let m = cc_model(c);
            let t = classify(&m, 0.0).unwrap();
            let (tau0, tau3) = constant_curvature_taus(&int::<Q>(c));
            assert_eq!((t.tau0.clone(), t.tau3.clone()), (tau0, tau3));
            assert_eq!(tau_anti_z(&m, 0.0).unwrap(), t);
            let (c1, c2) = tau_curv_closed(&m.curvature);
            assert!(c1.is_zero() && c2.is_zero());
            let phi = forms().phi;
            let expected = &phi * frac::<Q>(-3 * c, 7) - &forms().alpha2 * int(c);
            assert_eq!(tau3_prime(&m.curvature), expected);
        }
    }

    #[test]
    fn tau2_curv_for_single_r_tilde() {
        let mut r = Curvature4::<Q>::zero();
        r.set(0, 2, 3, 0, int(1));
        assert_eq!(
            CurvDerived::new(&r).r_tilde_components(),
            [int(1), int(0), int(0)]
        );
        let (t1, t2) = tau_curv_closed(&r);
        assert_eq!(t1, Form::monomial(&[4], frac(-1, 3)));
        let expected = Form::<Q>::monomial(&[5, 6], frac(-2, 3))
            + (Form::basis(&[0, 1]) - Form::basis(&[2, 3])) * frac(1, 3);
        assert_eq!(t2, expected);
        assert_eq!(l_operator(&t2), t2);
    }

    #[test]
    fn tau_tors_vectorial_and_skew() {
        let nu = [int::<Q>(1), int(-2), int(3), int(1)];
        let (t1, t2) = tau_tors_closed(&vectorial_torsion(&nu));
        let nu_hat = (0..4).fold(Form::zero(1), |acc, i| {
            acc + Form::monomial(&[i], nu[i].clone())
        });
        assert_eq!(t1, nu_hat * int(2));
        assert!(t2.is_zero());
        let x = [int::<Q>(2), int(1), int(0), int(-1)];
        let (_, t2) = tau_tors_closed(&skew_torsion(&x));
        assert!(t2.is_zero());
    }

    #[test]
    fn extraction_matches_closed_forms_on_random_models() {
        for seed in 0..6 {
            let m = random_model(seed);
            let t = classify(&m, 0.0).expect("realizable");
            let bundle = assemble(&m);
            assert_eq!(t.d_phi(), bundle.d_phi);
            assert_eq!(t.d_star_phi(), bundle.d_star_phi);
            let (c1, c2) = tau_curv_closed(&m.curvature);
            let (t1, t2) = tau_tors_closed(&m.torsion);
            assert_eq!(t.tau1, c1 + t1);
            assert_eq!(t.tau2, c2 + t2);
            let report = verify_closed_forms(&m, 0.0);
            assert!(report.all_passed(), "seed {seed}: {report}");
        }
    }

    #[test]
    fn tau3_prime_is_in_lambda3_27_on_random_curvature() {
        let m = random_model(3);
        let t3p = tau3_prime(&m.curvature);
        let (g1, g7, g27) = proj_lambda3(&t3p);
        assert!(g1.is_zero() && g7.is_zero());
        assert_eq!(g27, t3p);
    }

    #[test]
    fn unrealizable_pair_is_rejected() {
        let f = forms();
        // a Λ⁴₇ component in dφ with d*φ = 0
        let d_phi = Form::<Q>::basis(&[4]).wedge(&f.phi);
        let err = extract_torsion_forms(&d_phi, &Form::zero(5), 0.0).unwrap_err();
        assert!(matches!(err, Error::NotRealizable(_)));
        assert_eq!(
            extract_torsion_forms(&Form::<Q>::zero(3), &Form::zero(5), 0.0),
            Err(Error::DegreeMismatch {
                expected: 4,
                got: 3
            })
        );
    }

    #[test]
    fn float_ring_agrees() {
        let m = random_model(7);
        let exact = classify(&m, 0.0).unwrap();
        let fm = m.map(|x| x.to_f64());
        let approx = classify(&fm, 1e-9).unwrap();
        assert!((approx.tau0 - exact.tau0.to_f64()).abs() < 1e-12);
        assert!(approx
            .tau3
            .approx_eq(&exact.tau3.map(|x| x.to_f64()), 1e-12));
        assert_eq!(approx.class_flags, exact.class_flags);
    }
}
