//! Canonical forms of the G2 structure in the adapted frame.
//!
//! The frame is `e_0 = u`, `e_1..e_3` horizontal, `e_4..e_6 = θ e_1..θ e_3`
//! vertical. All forms are built twice: once from `α = e^{456}` and the mirror
//! map `θ` through [`Form::contract`], once from literal coefficient lists.

use crate::check::CheckReport;
use crate::exterior::{Endo7, Form, Orientation, Vector7};
use crate::scalar::{frac, int, Rational, Scalar};

/// `θ e_i = e_{i+3}` for `i = 1, 2, 3`, zero elsewhere.
pub fn theta<S: Scalar>() -> Endo7<S> {
    Endo7::from_fn(|r, c| {
        if (1..=3).contains(&c) && r == c + 3 {
            S::one()
        } else {
            S::zero()
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureForms<S: Scalar> {
    pub mu: Form<S>,
    pub alpha: Form<S>,
    pub alpha1: Form<S>,
    pub alpha2: Form<S>,
    pub alpha3: Form<S>,
    pub beta: Form<S>,
    pub vol: Form<S>,
    pub phi: Form<S>,
    pub star_phi: Form<S>,
    /// Anti-self-dual horizontal 2-forms `ω̂_1, ω̂_2, ω̂_3`.
    pub omega: [Form<S>; 3],
}

impl<S: Scalar> StructureForms<S> {
    /// Constructive route: contractions of `α` with `θ`.
    pub fn canonical() -> Self {
        let id = Endo7::identity();
        let th = theta::<S>();
        let alpha = Form::basis(&[4, 5, 6]);
        let contract = |endos: [&Endo7<S>; 3], weight: S| {
            let endos: Vec<Endo7<S>> = endos.into_iter().cloned().collect();
            alpha
                .contract(&endos)
                .expect("three endomorphisms for a 3-form")
                * weight
        };
        let alpha1 = contract([&th, &id, &id], frac(1, 2));
        let alpha2 = contract([&th, &th, &id], frac(1, 2));
        let alpha3 = contract([&th, &th, &th], frac(1, 6));

        // β(X, Y) = ⟨θX, Y⟩ − ⟨θY, X⟩
        let mut beta = Form::zero(2);
        for i in 0..7 {
            for j in i + 1..7 {
                let c = th.entry(j, i).clone() - th.entry(i, j).clone();
                beta = beta + Form::monomial(&[i, j], c);
            }
        }
        let mu = Form::basis(&[0]);
        let vol = alpha.hodge7();
        let phi = &(&alpha + &mu.wedge(&beta)) - &alpha2;
        let star_phi = phi.hodge7();
        Self::assemble(mu, alpha, alpha1, alpha2, alpha3, beta, vol, phi, star_phi)
    }

    /// Literal route: hard-coded coefficient lists.
    pub fn literal() -> Self {
        let one = || S::one();
        let form3 =
            |terms: [[usize; 3]; 3]| Form::from_terms(3, terms.iter().map(|t| (&t[..], one())));
        let mu = Form::basis(&[0]);
        let alpha = Form::basis(&[4, 5, 6]);
        let alpha1 = form3([[1, 5, 6], [2, 6, 4], [3, 4, 5]]);
        let alpha2 = form3([[1, 2, 6], [2, 3, 4], [3, 1, 5]]);
        let alpha3 = Form::basis(&[1, 2, 3]);
        let beta = Form::from_terms(
            2,
            [
                (&[1, 4][..], one()),
                (&[2, 5][..], one()),
                (&[3, 6][..], one()),
            ],
        );
        let vol = Form::basis(&[0, 1, 2, 3]);
        let phi = &(&alpha + &mu.wedge(&beta)) - &alpha2;
        let star_phi = &(&vol - &(beta.power(2) * frac(1, 2))) - &mu.wedge(&alpha1);
        Self::assemble(mu, alpha, alpha1, alpha2, alpha3, beta, vol, phi, star_phi)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        mu: Form<S>,
        alpha: Form<S>,
        alpha1: Form<S>,
        alpha2: Form<S>,
        alpha3: Form<S>,
        beta: Form<S>,
        vol: Form<S>,
        phi: Form<S>,
        star_phi: Form<S>,
    ) -> Self {
        let omega = [
            &Form::basis(&[0, 1]) - &Form::basis(&[2, 3]),
            &Form::basis(&[0, 2]) + &Form::basis(&[1, 3]),
            &Form::basis(&[0, 3]) - &Form::basis(&[1, 2]),
        ];
        StructureForms {
            mu,
            alpha,
            alpha1,
            alpha2,
            alpha3,
            beta,
            vol,
            phi,
            star_phi,
            omega,
        }
    }

    /// `e^{0123456}`.
    pub fn big_vol(&self) -> Form<S> {
        Form::volume()
    }

    /// `α_i` with `α_0 = α`.
    pub fn alpha_i(&self, i: usize) -> &Form<S> {
        match i {
            0 => &self.alpha,
            1 => &self.alpha1,
            2 => &self.alpha2,
            3 => &self.alpha3,
            _ => panic!("α_{i} is not defined"),
        }
    }
}

/// The first structure equations, checked exactly under the given orientation
/// of the Hodge star. `Orientation::Reversed` is a negative control.
pub fn verify_structure_equations(orientation: Orientation) -> CheckReport {
    let f = StructureForms::<Rational>::canonical();
    let star = |x: &Form<Rational>| x.hodge7_oriented(orientation);
    let big_vol = f.big_vol();
    let mu = &f.mu;
    let beta2 = f.beta.power(2);
    let beta3 = f.beta.power(3);
    let mut report = CheckReport::new();

    report.push("*α=vol", star(&f.alpha) == f.vol);
    report.push("*α₁=−μ∧α₂", star(&f.alpha1) == -mu.wedge(&f.alpha2));
    report.push("*α₂=μ∧α₁", star(&f.alpha2) == mu.wedge(&f.alpha1));
    report.push("*β=−½μ∧β²", star(&f.beta) == mu.wedge(&beta2) * frac(-1, 2));
    report.push("*β²=−2μ∧β", star(&beta2) == mu.wedge(&f.beta) * int(-2));
    report.push("β³∧μ=−6Vol", beta3.wedge(mu) == &big_vol * int(-6));
    let a1a2 = f.alpha1.wedge(&f.alpha2);
    report.push(
        "α₁∧α₂=3*μ=−½β³",
        a1a2 == star(mu) * int(3) && a1a2 == &beta3 * frac(-1, 2),
    );
    let subscripts = ["₀", "₁", "₂"];
    for (i, sub) in subscripts.iter().enumerate() {
        let ai = f.alpha_i(i);
        report.push(format!("β∧α{sub}=0"), f.beta.wedge(ai).is_zero());
        report.push(format!("β∧*α{sub}=0"), f.beta.wedge(&star(ai)).is_zero());
        report.push(format!("α∧α{sub}=0"), f.alpha.wedge(ai).is_zero());
    }
    report.push("α∧φ=0", f.alpha.wedge(&f.phi).is_zero());
    report.push("α₂∧φ=0", f.alpha2.wedge(&f.phi).is_zero());
    report.push("*α₁∧φ=0", star(&f.alpha1).wedge(&f.phi).is_zero());
    report.push("*α∧φ=Vol", star(&f.alpha).wedge(&f.phi) == big_vol);
    report.push("α∧*φ=Vol", f.alpha.wedge(&star(&f.phi)) == big_vol);
    report
}

/// Checks that tie the two construction routes together and fix the norm of φ.
pub fn verify_form_construction() -> CheckReport {
    let built = StructureForms::<Rational>::canonical();
    let literal = StructureForms::<Rational>::literal();
    let mut report = CheckReport::new();
    report.push("contraction route = literal route", built == literal);
    report.push("*φ=vol−½β²−μ∧α₁", built.phi.hodge7() == literal.star_phi);
    report.push("|φ|²=7", built.phi.norm_sq() == int(7));
    report.push(
        "φ∧*φ=7Vol",
        built.phi.wedge(&built.star_phi) == Form::volume() * int(7),
    );
    let via_omega = built
        .omega
        .iter()
        .enumerate()
        .fold(built.alpha.clone(), |acc, (i, w)| {
            acc + w.wedge(&Form::basis(&[i + 4]))
        });
    report.push("φ=α+Σω̂ᵢ∧e^{i+3}", via_omega == built.phi);
    let asd = built
        .omega
        .iter()
        .all(|w| w.hodge4_horizontal().is_ok_and(|s| s == -w.clone()));
    report.push("ω̂ᵢ anti-self-dual", asd);
    report
}

/// Almost-contact data `(ξ, η, φ')` on the model space.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostContact<S: Scalar> {
    pub xi: Vector7<S>,
    pub eta: Form<S>,
    pub varphi: Endo7<S>,
}

impl<S: Scalar> AlmostContact<S> {
    pub fn canonical() -> Self {
        let xi = Vector7::basis(0).scale(&int(2));
        let eta = Form::basis(&[0]) * frac(1, 2);
        let th = theta::<S>();
        // θ − θᵗ: e_i ↦ e_{i+3}, e_{i+3} ↦ −e_i, e_0 ↦ 0
        let varphi = th.clone() - th.transpose();
        AlmostContact { xi, eta, varphi }
    }

    /// `η(ξ)=1`, `φ'ξ=0` and `φ'² = −1 + η⊗ξ` on every basis vector.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let eta_xi = self
            .eta
            .evaluate(std::slice::from_ref(&self.xi))
            .expect("1-form");
        report.push("η(ξ)=1", eta_xi.is_one());
        report.push("φ'(ξ)=0", self.varphi.apply(&self.xi).is_zero());
        let square = self.varphi.compose(&self.varphi);
        for i in 0..7 {
            let e = Vector7::basis(i);
            let eta_e = self.eta.evaluate(std::slice::from_ref(&e)).expect("1-form");
            let expected = -e.clone() + self.xi.scale(&eta_e);
            report.push(
                format!("φ'²(e{i})=−e{i}+η(e{i})ξ"),
                square.apply(&e) == expected,
            );
        }
        report
    }
}
