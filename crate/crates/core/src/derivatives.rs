//! Exterior derivatives of the structure forms at a point, assembled from the
//! base curvature `R` and torsion `T`.
//!
//! Products such as `(μT)β` are wedge products read left to right. All sums
//! over pairs run over `0 ≤ i < j ≤ 3`.

use crate::check::CheckReport;
use crate::exterior::Form;
use crate::model::{CurvDerived, Curvature4, PointModel, TorsDerived, Torsion4};
use crate::scalar::{int, Scalar};
use crate::structure::StructureForms;

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
}

/// `Σ_{i<j} Σ_(c, k, tail) c·coef(i, j, k) e^{ij}∧e^{tail}` for a fixed table
/// of `(sign, k, tail)` entries.
fn pair_sum<S: Scalar>(
    coef: impl Fn(usize, usize, usize) -> S,
    table: &[(i64, usize, [usize; 2])],
) -> Form<S> {
    let mut out = Form::zero(4);
    for (i, j) in pairs() {
        for &(sign, k, [a, b]) in table {
            let c = coef(i, j, k);
            if c.is_zero() {
                continue;
            }
            out = out + Form::monomial(&[i, j, a, b], c * int(sign));
        }
    }
    out
}

const ALPHA_TABLE: [(i64, usize, [usize; 2]); 3] = [(1, 1, [5, 6]), (1, 2, [6, 4]), (1, 3, [4, 5])];

const ALPHA1_TABLE: [(i64, usize, [usize; 2]); 6] = [
    (1, 1, [2, 6]),
    (1, 1, [5, 3]),
    (-1, 2, [1, 6]),
    (-1, 2, [4, 3]),
    (1, 3, [1, 5]),
    (1, 3, [4, 2]),
];

/// `ℛα = R_{ij01}e^{ij56} + R_{ij02}e^{ij64} + R_{ij03}e^{ij45}`.
pub fn calr_alpha<S: Scalar>(r: &Curvature4<S>) -> Form<S> {
    pair_sum(|i, j, k| r.get(i, j, 0, k), &ALPHA_TABLE)
}

/// `ℛα₁ = R_{ij01}(e^{ij26}+e^{ij53}) − R_{ij02}(e^{ij16}+e^{ij43}) + R_{ij03}(e^{ij15}+e^{ij42})`.
pub fn calr_alpha1<S: Scalar>(r: &Curvature4<S>) -> Form<S> {
    pair_sum(|i, j, k| r.get(i, j, 0, k), &ALPHA1_TABLE)
}

/// `Tα₁ = T_{ij1}e^{ij56} + T_{ij2}e^{ij64} + T_{ij3}e^{ij45}`.
pub fn t_alpha1<S: Scalar>(t: &Torsion4<S>) -> Form<S> {
    pair_sum(|i, j, k| t.get(i, j, k), &ALPHA_TABLE)
}

/// `Tα₂`, the `ℛα₁` pattern with `T_{ij·}`.
pub fn t_alpha2<S: Scalar>(t: &Torsion4<S>) -> Form<S> {
    pair_sum(|i, j, k| t.get(i, j, k), &ALPHA1_TABLE)
}

/// `μT = Σ T_{ij0} e^{ij}`.
pub fn mu_t<S: Scalar>(t: &Torsion4<S>) -> Form<S> {
    pairs().fold(Form::zero(2), |acc, (i, j)| {
        acc + Form::monomial(&[i, j], t.get(i, j, 0))
    })
}

/// `σ = Σ T_{ij1}e^{ij4} + T_{ij2}e^{ij5} + T_{ij3}e^{ij6}`.
pub fn sigma<S: Scalar>(t: &Torsion4<S>) -> Form<S> {
    let mut out = Form::zero(3);
    for (i, j) in pairs() {
        for k in 1..4 {
            out = out + Form::monomial(&[i, j, k + 3], t.get(i, j, k));
        }
    }
    out
}

/// `ϱ = Σ_{i<j<k} ↻R_{ijk0} e^{ijk}`.
pub fn varrho<S: Scalar>(r: &Curvature4<S>) -> Form<S> {
    let mut out = Form::zero(3);
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let c = r.get(i, j, k, 0) + r.get(j, k, i, 0) + r.get(k, i, j, 0);
                out = out + Form::monomial(&[i, j, k], c);
            }
        }
    }
    out
}

/// Pointwise exterior derivatives of the structure forms.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeBundle<S: Scalar> {
    pub d_alpha: Form<S>,
    pub d_alpha1: Form<S>,
    pub d_alpha2: Form<S>,
    pub d_alpha3: Form<S>,
    pub d_mu: Form<S>,
    pub d_beta: Form<S>,
    pub d_phi: Form<S>,
    pub d_star_phi: Form<S>,
    pub delta_phi: Form<S>,
    pub delta_mu: S,
}

/// Building blocks shared by the assembly and its cross-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Blocks<S: Scalar> {
    pub calr_alpha: Form<S>,
    pub calr_alpha1: Form<S>,
    pub t_alpha1: Form<S>,
    pub t_alpha2: Form<S>,
    pub mu_t: Form<S>,
    pub sigma: Form<S>,
    pub varrho: Form<S>,
    pub curv: CurvDerived<S>,
    pub tors: TorsDerived<S>,
}

impl<S: Scalar> Blocks<S> {
    pub fn new(model: &PointModel<S>) -> Self {
        let (r, t) = (&model.curvature, &model.torsion);
        Blocks {
            calr_alpha: calr_alpha(r),
            calr_alpha1: calr_alpha1(r),
            t_alpha1: t_alpha1(t),
            t_alpha2: t_alpha2(t),
            mu_t: mu_t(t),
            sigma: sigma(t),
            varrho: varrho(r),
            curv: CurvDerived::new(r),
            tors: TorsDerived::new(t),
        }
    }
}

/// Every derivative from its literal formula.
pub fn assemble<S: Scalar>(model: &PointModel<S>) -> DerivativeBundle<S> {
    let f = StructureForms::<S>::literal();
    let b = Blocks::new(model);
    let (mu, beta, vol) = (&f.mu, &f.beta, &f.vol);
    let r_bar = b.curv.r_bar.clone();
    let l = b.curv.l.clone();
    let m = b.tors.m.clone();

    let d_alpha = b.calr_alpha.clone();
    let d_alpha1 = mu.wedge(&f.alpha) * int(3) + b.calr_alpha1.clone() + b.t_alpha1.clone();
    let d_alpha2 = mu.wedge(&f.alpha1) * int(2) - vol * r_bar.clone() + b.t_alpha2.clone();
    let d_alpha3 = mu.wedge(&f.alpha2) + vol * m.clone();
    let d_mu = -beta.clone() + b.mu_t.clone();
    let d_beta = &b.varrho + &b.sigma;

    let d_phi =
        b.calr_alpha.clone() + vol * (r_bar - l) - beta.power(2) - mu.wedge(&f.alpha1) * int(2)
            + d_phi_torsion_part(&b, &f);
    let d_star_phi = d_star_phi_curvature_part(&b, &f) + d_star_phi_torsion_part(&b, &f);
    let delta_phi = -d_star_phi.hodge7();

    DerivativeBundle {
        d_alpha,
        d_alpha1,
        d_alpha2,
        d_alpha3,
        d_mu,
        d_beta,
        d_phi,
        d_star_phi,
        delta_phi,
        delta_mu: -m,
    }
}

/// `(μT)β − μσ − Tα₂`.
pub fn d_phi_torsion_part<S: Scalar>(b: &Blocks<S>, f: &StructureForms<S>) -> Form<S> {
    b.mu_t.wedge(&f.beta) - f.mu.wedge(&b.sigma) - b.t_alpha2.clone()
}

/// `−βϱ − ρ vol`.
pub fn d_star_phi_curvature_part<S: Scalar>(b: &Blocks<S>, f: &StructureForms<S>) -> Form<S> {
    -f.beta.wedge(&b.varrho) - b.curv.rho.wedge(&f.vol)
}

/// `−βσ − (μT)α₁ + μ(Tα₁)`.
pub fn d_star_phi_torsion_part<S: Scalar>(b: &Blocks<S>, f: &StructureForms<S>) -> Form<S> {
    -f.beta.wedge(&b.sigma) - b.mu_t.wedge(&f.alpha1) + f.mu.wedge(&b.t_alpha1)
}

/// The `Z`-coefficient form of `(μT)β − μσ − Tα₂`. The `Z₂₁₃ e^{123}∧e⁵` term
/// carries a minus sign; the vectorial case `2ν̂∧(φ − α)` pins it.
pub fn d_phi_torsion_part_from_z<S: Scalar>(t: &TorsDerived<S>) -> Form<S> {
    let z = |i, j, k| t.z(i, j, k);
    let h = |c: S, idx: [usize; 3], v: usize| Form::monomial(&[idx[0], idx[1], idx[2], v], c);
    let (e123, e023, e013, e012) = ([1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]);
    -h(z(1, 3, 2), e123, 4) - h(z(0, 2, 3), e023, 4)
        + h(z(3, 1, 0), e013, 4)
        + h(z(2, 0, 1), e012, 4)
        - h(z(2, 1, 3), e123, 5)
        + h(z(3, 0, 2), e023, 5)
        + h(z(0, 3, 1), e013, 5)
        - h(z(1, 2, 0), e012, 5)
        - h(z(3, 2, 1), e123, 6)
        - h(z(2, 3, 0), e023, 6)
        - h(z(1, 0, 3), e013, 6)
        - h(z(0, 1, 2), e012, 6)
}

/// Leibniz-rule recombination of the item formulas against the two displays:
/// `dφ = dα + dμ∧β − μ∧dβ − dα₂` and `d*φ = −dβ∧β − dμ∧α₁ + μ∧dα₁`, plus the
/// algebraic identities the recombination relies on.
pub fn cross_check_dphi<S: Scalar>(
    model: &PointModel<S>,
    bundle: &DerivativeBundle<S>,
    tol: f64,
) -> CheckReport {
    let f = StructureForms::<S>::literal();
    let b = Blocks::new(model);
    let mu = &f.mu;
    let mut report = CheckReport::new();

    let leibniz_phi = bundle.d_alpha.clone() + bundle.d_mu.wedge(&f.beta)
        - mu.wedge(&bundle.d_beta)
        - bundle.d_alpha2.clone();
    report.push(
        "dφ Leibniz = display",
        leibniz_phi.approx_eq(&bundle.d_phi, tol),
    );

    let leibniz_star =
        -bundle.d_beta.wedge(&f.beta) - bundle.d_mu.wedge(&f.alpha1) + mu.wedge(&bundle.d_alpha1);
    report.push(
        "d*φ Leibniz = display",
        leibniz_star.approx_eq(&bundle.d_star_phi, tol),
    );

    report.push(
        "μ∧ϱ = l·vol",
        mu.wedge(&b.varrho)
            .approx_eq(&(&f.vol * b.curv.l.clone()), tol),
    );
    report.push(
        "μ∧ℛα₁ = −vol∧ρ",
        mu.wedge(&b.calr_alpha1)
            .approx_eq(&-f.vol.wedge(&b.curv.rho), tol),
    );
    report.push("β∧α₁ = 0", f.beta.wedge(&f.alpha1).is_zero());
    report.push(
        "(μT)β−μσ−Tα₂ in Z form",
        d_phi_torsion_part(&b, &f).approx_eq(&d_phi_torsion_part_from_z(&b.tors), tol),
    );
    report.push(
        "δφ = −*d*φ",
        bundle
            .delta_phi
            .approx_eq(&-bundle.d_star_phi.hodge7(), tol),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Vector7;
    use crate::model::{constant_curvature, random_model, skew_torsion, vectorial_torsion};
    use crate::scalar::{frac, Rational};

    type Q = Rational;

    fn flat() -> PointModel<Q> {
        PointModel::new(Curvature4::zero(), Torsion4::zero(), "flat")
    }

    fn vec4(a: [i64; 4]) -> [Q; 4] {
        a.map(int)
    }

    /// `ν̂ = Σ ν_i e^i`.
    fn lift(nu: &[Q; 4]) -> Form<Q> {
        (0..4).fold(Form::zero(1), |acc, i| {
            acc + Form::monomial(&[i], nu[i].clone())
        })
    }

    fn lift_vector(x: &[Q; 4]) -> Vector7<Q> {
        Vector7::from_fn(|i| if i < 4 { x[i].clone() } else { Q::from_int(0) })
    }

    #[test]
    fn flat_derivatives() {
        let f = StructureForms::<Q>::literal();
        let d = assemble(&flat());
        assert_eq!(d.d_phi, -f.beta.power(2) - f.mu.wedge(&f.alpha1) * int(2));
        assert!(d.d_star_phi.is_zero());
        assert!(d.d_alpha.is_zero());
        assert_eq!(d.d_mu, -f.beta.clone());
        assert_eq!(d.d_alpha1, f.mu.wedge(&f.alpha) * int(3));
        assert_eq!(d.d_alpha2, f.mu.wedge(&f.alpha1) * int(2));
        assert!(cross_check_dphi(&flat(), &d, 0.0).all_passed());
    }

    #[test]
    fn calr_alpha_by_second_formulation() {
        // Σ_{i<j} Σ_k R_{ij0k} e^{ij} ∧ (e_{k+3} ⌟ α)
        let f = StructureForms::<Q>::literal();
        let model = random_model(1);
        let r = &model.curvature;
        let mut oracle = Form::zero(4);
        for (i, j) in pairs() {
            for k in 1..4 {
                let tail = f.alpha.interior(&Vector7::basis(k + 3));
                oracle = oracle + Form::basis(&[i, j]).wedge(&tail) * r.get(i, j, 0, k);
            }
        }
        assert_eq!(calr_alpha(r), oracle);
    }

    #[test]
    fn constant_curvature_blocks() {
        let f = StructureForms::<Q>::literal();
        let c: Q = int(5);
        let r = constant_curvature(c.clone());
        assert_eq!(calr_alpha(&r), -f.mu.wedge(&f.alpha1) * c);
        assert!(f.mu.wedge(&calr_alpha1(&r)).is_zero());
        let model = PointModel::new(r, Torsion4::zero(), "S4");
        let d = assemble(&model);
        let expected = &f.vol * int(15) - f.beta.power(2) - f.mu.wedge(&f.alpha1) * int(7);
        assert_eq!(d.d_phi, expected);
    }

    #[test]
    fn vectorial_torsion_closed_forms() {
        let f = StructureForms::<Q>::literal();
        let nu = vec4([1, -2, 3, 1]);
        let t = vectorial_torsion(&nu);
        let hat = lift(&nu);
        assert_eq!(t_alpha1(&t), hat.wedge(&f.alpha1));
        assert_eq!(t_alpha2(&t), hat.wedge(&f.alpha2) * int(2));
        assert_eq!(mu_t(&t), hat.wedge(&f.mu));
        assert_eq!(sigma(&t), f.beta.wedge(&hat));
        let b = Blocks::new(&PointModel::new(Curvature4::zero(), t, "vectorial"));
        assert_eq!(
            d_phi_torsion_part(&b, &f),
            hat.wedge(&f.phi) * int(2) - hat.wedge(&f.alpha) * int(2)
        );
        assert_eq!(
            d_star_phi_torsion_part(&b, &f),
            hat.wedge(&f.star_phi) * int(2)
        );
    }

    #[test]
    fn skew_torsion_closed_forms() {
        let f = StructureForms::<Q>::literal();
        let x = vec4([2, 1, -1, 3]);
        let t = skew_torsion(&x);
        let xv = lift_vector(&x);
        let flat_x = lift(&x);
        let half_mu_beta2 = f.mu.wedge(&f.beta.power(2)) * frac(-1, 2);
        assert_eq!(t_alpha1(&t), half_mu_beta2.interior(&xv));
        assert_eq!(t_alpha2(&t), -flat_x.wedge(&f.mu).wedge(&f.beta));
        assert_eq!(mu_t(&t), -f.alpha3.interior(&xv));
        assert_eq!(sigma(&t), f.mu.wedge(&f.alpha2).interior(&xv));
        let b = Blocks::new(&PointModel::new(Curvature4::zero(), t, "skew"));
        assert_eq!(
            d_phi_torsion_part(&b, &f),
            flat_x.wedge(&(&f.phi - &f.alpha))
        );
        assert_eq!(d_star_phi_torsion_part(&b, &f), flat_x.wedge(&f.star_phi));
    }

    #[test]
    fn cross_checks_on_random_models() {
        for seed in [2, 3, 4, 5] {
            let model = random_model(seed);
            let report = cross_check_dphi(&model, &assemble(&model), 0.0);
            assert!(report.all_passed(), "seed {seed}\n{report}");
        }
        let model = PointModel::new(
            Curvature4::zero(),
            vectorial_torsion(&vec4([1, 0, -1, 2])),
            "v",
        );
        assert!(cross_check_dphi(&model, &assemble(&model), 0.0).all_passed());
    }

    #[test]
    fn assembly_is_linear() {
        let (a, b) = (random_model(6), random_model(7));
        let sum_r = PointModel::new(a.curvature.add(&b.curvature), a.torsion.clone(), "sum");
        let only_b = PointModel::new(b.curvature.clone(), Torsion4::zero(), "b");
        let zero = PointModel::new(Curvature4::zero(), Torsion4::zero(), "0");
        let (da, db, d0, ds) = (
            assemble(&a),
            assemble(&only_b),
            assemble(&zero),
            assemble(&sum_r),
        );
        // the flat part is affine, so subtract it once
        assert_eq!(
            ds.d_phi,
            da.d_phi.clone() + db.d_phi.clone() - d0.d_phi.clone()
        );
        assert_eq!(ds.d_star_phi, da.d_star_phi + db.d_star_phi - d0.d_star_phi);
    }

    #[test]
    fn delta_phi_for_torsion_free_models() {
        let f = StructureForms::<Q>::literal();
        let model = PointModel::new(random_model(8).curvature, Torsion4::zero(), "R only");
        let d = assemble(&model);
        let r_tilde = CurvDerived::new(&model.curvature).r_tilde;
        assert_eq!(d.delta_phi, f.alpha.interior(&r_tilde));
        assert!(!d.delta_phi.is_zero());
    }
}
