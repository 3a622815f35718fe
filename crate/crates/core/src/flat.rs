//! The flat model `ℝ⁴ × S³` in coordinates, with a finite-difference exterior
//! derivative used as an independent check of the algebraic pipeline at
//! `R = T = 0`.
//!
//! Chart coordinates `(x₁..x₄, w₁..w₃)` occupy form slots `0..7`. The sphere
//! chart is stereographic from the pole opposite the largest `|u_i|`.

use rand::Rng;

use crate::check::CheckReport;
use crate::derivatives::assemble;
use crate::error::{Error, Result};
use crate::exterior::{Form, Vector7};
use crate::linalg::Matrix;
use crate::model::{Curvature4, PointModel, Torsion4};
use crate::structure::StructureForms;

pub const DEFAULT_STEP: f64 = 1e-4;
pub const DEFAULT_TOL: f64 = 1e-6;
/// Accepted range of `residual(h) / residual(h/2)`.
pub const CONVERGENCE_RANGE: (f64, f64) = (3.5, 4.5);

/// Residuals below this at both steps carry no truncation error; the
/// convergence ratio is then undefined and the identity counts as exact.
pub const EXACT_FLOOR: f64 = 1e-13;

const UNIT_TOL: f64 = 1e-12;
const GRAM_TOL: f64 = 1e-9;

/// A point of the chart: base coordinates `x`, sphere chart coordinates `w`
/// about pole `pole` with sign `sign`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub x: [f64; 4],
    pub w: [f64; 3],
    pub pole: usize,
    pub sign: f64,
}

impl ChartPoint {
    /// Chart about the largest `|u_i|`; `u` must be a unit vector.
    pub fn new(x: [f64; 4], u: [f64; 4]) -> Result<Self> {
        let norm: f64 = u.iter().map(|v| v * v).sum();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidParameter(format!(
                "|u|² = {norm}, expected 1"
            )));
        }
        let pole = (0..4)
            .max_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()))
            .expect("four components");
        let sign = if u[pole] >= 0.0 { 1.0 } else { -1.0 };
        let den = 1.0 + sign * u[pole];
        let others = others(pole);
        Ok(ChartPoint {
            x,
            w: others.map(|a| u[a] / den),
            pole,
            sign,
        })
    }

    /// The point with chart coordinates `c` in this point's chart.
    pub fn with_coords(&self, c: &[f64; 7]) -> Self {
        ChartPoint {
            x: [c[0], c[1], c[2], c[3]],
            w: [c[4], c[5], c[6]],
            pole: self.pole,
            sign: self.sign,
        }
    }

    pub fn coords(&self) -> [f64; 7] {
        [
            self.x[0], self.x[1], self.x[2], self.x[3], self.w[0], self.w[1], self.w[2],
        ]
    }

    fn r2(&self) -> f64 {
        self.w.iter().map(|v| v * v).sum()
    }

    pub fn u(&self) -> [f64; 4] {
        let r2 = self.r2();
        let mut u = [0.0; 4];
        u[self.pole] = self.sign * (1.0 - r2) / (1.0 + r2);
        for (b, a) in others(self.pole).into_iter().enumerate() {
            u[a] = 2.0 * self.w[b] / (1.0 + r2);
        }
        u
    }

    /// `∂u_i/∂w_c`, a 4×3 matrix.
    pub fn jacobian(&self) -> [[f64; 3]; 4] {
        let r2 = self.r2();
        let q = (1.0 + r2) * (1.0 + r2);
        let mut j = [[0.0; 3]; 4];
        for (slot, w) in j[self.pole].iter_mut().zip(&self.w) {
            *slot = -4.0 * self.sign * w / q;
        }
        for (b, a) in others(self.pole).into_iter().enumerate() {
            for (c, (slot, w)) in j[a].iter_mut().zip(&self.w).enumerate() {
                let delta = if b == c { 2.0 / (1.0 + r2) } else { 0.0 };
                *slot = delta - 4.0 * self.w[b] * w / q;
            }
        }
        j
    }

    /// `du_i` as chart 1-forms.
    pub fn du(&self) -> [Form<f64>; 4] {
        let j = self.jacobian();
        std::array::from_fn(|i| one_form(|s| if s >= 4 { j[i][s - 4] } else { 0.0 }))
    }

    fn validate(&self) -> Result<()> {
        let den = 1.0 + self.sign * self.u()[self.pole];
        if den < 1e-6 || !self.coords().iter().all(|c| c.is_finite()) {
            return Err(Error::ChartDegenerate(format!(
                "chart about pole {} fails at {:?}",
                self.pole, self.w
            )));
        }
        Ok(())
    }
}

fn others(pole: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for a in 0..4 {
        if a != pole {
            out[n] = a;
            n += 1;
        }
    }
    out
}

fn one_form(f: impl Fn(usize) -> f64) -> Form<f64> {
    (0..7).fold(Form::zero(1), |acc, s| acc + Form::monomial(&[s], f(s)))
}

fn dx(i: usize) -> Form<f64> {
    Form::basis(&[i])
}

/// Rows of the quaternionic completion applied to a vector of forms.
fn quaternion_rows(u: &[f64; 4]) -> [[f64; 4]; 3] {
    let [u1, u2, u3, u4] = *u;
    [[-u2, u1, -u4, u3], [-u3, u4, u1, -u2], [-u4, -u3, u2, u1]]
}

/// The coframe `e⁰..e⁶` at a point as chart 1-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct CoframeEval {
    pub forms: [Form<f64>; 7],
}

impl CoframeEval {
    /// `E[k][s]`: component of `e^k` on the chart slot `s`.
    pub fn matrix(&self) -> Matrix<f64> {
        Matrix::from_fn(7, 7, |k, s| self.forms[k].coeff(&[s]))
    }

    /// Frame vectors `e_0..e_6` in chart components, the columns of `E⁻¹`.
    pub fn frame_vectors(&self) -> Result<[Vector7<f64>; 7]> {
        let inv = self.matrix().inverse(1e-14)?;
        Ok(std::array::from_fn(|k| {
            Vector7::from_fn(|s| *inv.get(s, k))
        }))
    }

    /// `Σ c_I e^I` rewritten in chart coordinates.
    pub fn pull_back(&self, frame_form: &Form<f64>) -> Form<f64> {
        let mut out = Form::zero(frame_form.degree());
        for (idx, c) in frame_form.terms() {
            let product = idx
                .indices()
                .fold(Form::scalar(*c), |acc, k| acc.wedge(&self.forms[k]));
            out = out + product;
        }
        out
    }

    /// Frame components of a chart form, by evaluation on the frame vectors.
    pub fn to_frame(&self, chart_form: &Form<f64>) -> Result<Form<f64>> {
        let vectors = self.frame_vectors()?;
        let degree = chart_form.degree();
        let mut out = Form::zero(degree);
        for idx in crate::exterior::MultiIndex::all_of_degree(degree) {
            let args: Vec<Vector7<f64>> = idx.indices().map(|k| vectors[k].clone()).collect();
            let v = chart_form.evaluate(&args)?;
            out.add_term(idx, v);
        }
        Ok(out)
    }
}

/// Sasaki metric in chart coordinates: `diag(1₄, JᵀJ)`.
pub fn chart_metric(p: &ChartPoint) -> Matrix<f64> {
    let j = p.jacobian();
    Matrix::from_fn(7, 7, |a, b| match (a < 4, b < 4) {
        (true, true) => f64::from(u8::from(a == b)),
        (false, false) => (0..4).map(|i| j[i][a - 4] * j[i][b - 4]).sum(),
        _ => 0.0,
    })
}

pub fn coframe_at(p: &ChartPoint) -> Result<CoframeEval> {
    p.validate()?;
    let u = p.u();
    let du = p.du();
    let rows = quaternion_rows(&u);
    let horizontal = |row: &[f64; 4]| (0..4).fold(Form::zero(1), |acc, i| acc + dx(i) * row[i]);
    let vertical = |row: &[f64; 4]| (0..4).fold(Form::zero(1), |acc, i| acc + &du[i] * row[i]);
    let forms = [
        horizontal(&u),
        horizontal(&rows[0]),
        horizontal(&rows[1]),
        horizontal(&rows[2]),
        vertical(&rows[0]),
        vertical(&rows[1]),
        vertical(&rows[2]),
    ];
    Ok(CoframeEval { forms })
}

/// Largest entry of `E G⁻¹ Eᵀ − 1`.
pub fn gram_error(p: &ChartPoint) -> Result<f64> {
    let e = coframe_at(p)?.matrix();
    let g_inv = chart_metric(p).inverse(1e-14)?;
    let gram = &(&e * &g_inv) * &e.transpose();
    let diff = gram.sub(&Matrix::identity(7));
    Ok((0..7)
        .flat_map(|r| (0..7).map(move |c| (r, c)))
        .map(|(r, c)| diff.get(r, c).abs())
        .fold(0.0, f64::max))
}

/// Structure forms in chart coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartForms {
    pub alpha: Form<f64>,
    pub mu: Form<f64>,
    pub beta: Form<f64>,
    pub mu_beta: Form<f64>,
    pub alpha1: Form<f64>,
    pub alpha2: Form<f64>,
    pub phi: Form<f64>,
    pub star_phi: Form<f64>,
}

impl ChartForms {
    fn from_parts(
        mu: Form<f64>,
        alpha: Form<f64>,
        alpha1: Form<f64>,
        alpha2: Form<f64>,
        beta: Form<f64>,
        vol: Form<f64>,
    ) -> Self {
        let mu_beta = mu.wedge(&beta);
        let phi = &(&alpha + &mu_beta) - &alpha2;
        let star_phi = &(&vol - &(beta.power(2) * 0.5)) - &mu.wedge(&alpha1);
        ChartForms {
            alpha,
            mu,
            beta,
            mu_beta,
            alpha1,
            alpha2,
            phi,
            star_phi,
        }
    }

    pub fn named(&self) -> [(&'static str, &Form<f64>); 8] {
        [
            ("α", &self.alpha),
            ("μ", &self.mu),
            ("β", &self.beta),
            ("μ∧β", &self.mu_beta),
            ("α₁", &self.alpha1),
            ("α₂", &self.alpha2),
            ("φ", &self.phi),
            ("*φ", &self.star_phi),
        ]
    }
}

/// Frame route: the frame expressions pulled back through the coframe.
pub fn structure_forms_by_frame(p: &ChartPoint) -> Result<ChartForms> {
    let cf = coframe_at(p)?;
    let f = StructureForms::<f64>::literal();
    let pb = |x: &Form<f64>| cf.pull_back(x);
    Ok(ChartForms::from_parts(
        pb(&f.mu),
        pb(&f.alpha),
        pb(&f.alpha1),
        pb(&f.alpha2),
        pb(&f.beta),
        pb(&f.vol),
    ))
}

/// Coordinate route: the explicit expansions in `dx_i` and `du_i`.
pub fn structure_forms_by_coordinates(p: &ChartPoint) -> Result<ChartForms> {
    p.validate()?;
    let u = p.u();
    let du = p.du();
    // 1-based names as in the expansions
    let x = |i: usize| dx(i - 1);
    let d = |i: usize| du[i - 1].clone();
    let u_ = |i: usize| u[i - 1];
    let du3 = |a, b, c| d(a).wedge(&d(b)).wedge(&d(c));
    let xi_ij_k = |i, j, k| x(i).wedge(&x(j)).wedge(&d(k));
    let xi_i_jk = |i, j, k| x(i).wedge(&d(j)).wedge(&d(k));

    let alpha =
        du3(2, 3, 4) * u_(1) - du3(1, 3, 4) * u_(2) + du3(1, 2, 4) * u_(3) - du3(1, 2, 3) * u_(4);
    let mu = (1..=4).fold(Form::zero(1), |acc, i| acc + x(i) * u_(i));
    let beta = (1..=4).fold(Form::zero(2), |acc, i| acc + x(i).wedge(&d(i)));
    let alpha2 = (xi_ij_k(2, 3, 4) - xi_ij_k(2, 4, 3) + xi_ij_k(3, 4, 2)) * u_(1)
        - (xi_ij_k(1, 3, 4) - xi_ij_k(1, 4, 3) + xi_ij_k(3, 4, 1)) * u_(2)
        + (xi_ij_k(1, 2, 4) + xi_ij_k(2, 4, 1) - xi_ij_k(1, 4, 2)) * u_(3)
        - (xi_ij_k(1, 2, 3) - xi_ij_k(1, 3, 2) + xi_ij_k(2, 3, 1)) * u_(4);
    let alpha1 = (xi_i_jk(2, 3, 4) - xi_i_jk(3, 2, 4) + xi_i_jk(4, 2, 3)) * u_(1)
        - (xi_i_jk(1, 3, 4) - xi_i_jk(3, 1, 4) + xi_i_jk(4, 1, 3)) * u_(2)
        + (xi_i_jk(1, 2, 4) - xi_i_jk(2, 1, 4) + xi_i_jk(4, 1, 2)) * u_(3)
        - (xi_i_jk(1, 2, 3) - xi_i_jk(2, 1, 3) + xi_i_jk(3, 1, 2)) * u_(4);
    let vol = Form::basis(&[0, 1, 2, 3]);
    Ok(ChartForms::from_parts(mu, alpha, alpha1, alpha2, beta, vol))
}

/// Central-difference exterior derivative of a chart form field at `p`.
pub fn numeric_d(
    field: impl Fn(&ChartPoint) -> Result<Form<f64>>,
    p: &ChartPoint,
    h: f64,
) -> Result<Form<f64>> {
    let base = p.coords();
    if h.is_nan() || h <= 0.0 || base.iter().any(|&c| c + h == c || c - h == c) {
        return Err(Error::StepUnderflow(h));
    }
    let degree = field(p)?.degree();
    let mut out = Form::zero(degree + 1);
    for s in 0..7 {
        let shifted = |delta: f64| {
            let mut c = base;
            c[s] += delta;
            field(&p.with_coords(&c))
        };
        let derivative = (shifted(h)? - shifted(-h)?) * (0.5 / h);
        out = out + dx(s).wedge(&derivative);
    }
    Ok(out)
}

/// The six flat identities as `(name, lhs field, rhs)` evaluated at `p`.
type FlatField = fn(&ChartForms) -> Form<f64>;

const FLAT_IDENTITIES: [(&str, FlatField, FlatField); 6] = [
    ("dα=0", |f| f.alpha.clone(), |_| Form::zero(4)),
    ("dμ=−β", |f| f.mu.clone(), |f| -f.beta.clone()),
    (
        "dα₂=2μα₁",
        |f| f.alpha2.clone(),
        |f| f.mu.wedge(&f.alpha1) * 2.0,
    ),
    (
        "dα₁=3μα",
        |f| f.alpha1.clone(),
        |f| f.mu.wedge(&f.alpha) * 3.0,
    ),
    (
        "dφ=−β²−2μα₁",
        |f| f.phi.clone(),
        |f| -f.beta.power(2) - f.mu.wedge(&f.alpha1) * 2.0,
    ),
    ("d*φ=0", |f| f.star_phi.clone(), |_| Form::zero(5)),
];

pub fn flat_identity_names() -> [&'static str; 6] {
    FLAT_IDENTITIES.map(|(n, _, _)| n)
}

/// Residuals `max |d(lhs) − rhs|` of the six identities at one point.
pub fn flat_residuals(p: &ChartPoint, h: f64) -> Result<[f64; 6]> {
    let here = structure_forms_by_coordinates(p)?;
    let mut out = [0.0; 6];
    for (n, (_, lhs, rhs)) in FLAT_IDENTITIES.iter().enumerate() {
        let d = numeric_d(|q| structure_forms_by_coordinates(q).map(|f| lhs(&f)), p, h)?;
        out[n] = (d - rhs(&here)).max_abs();
    }
    Ok(out)
}

/// Largest difference between the two routes over all structure forms.
pub fn route_difference(p: &ChartPoint) -> Result<f64> {
    let a = structure_forms_by_frame(p)?;
    let b = structure_forms_by_coordinates(p)?;
    Ok(a.named()
        .iter()
        .zip(b.named())
        .map(|((_, x), (_, y))| (*x - y).max_abs())
        .fold(0.0, f64::max))
}

/// Numeric `dφ` re-expressed in the moving frame against the algebraic flat
/// pipeline.
pub fn pipeline_difference(p: &ChartPoint, h: f64) -> Result<f64> {
    let cf = coframe_at(p)?;
    let numeric = numeric_d(|q| structure_forms_by_coordinates(q).map(|f| f.phi), p, h)?;
    let in_frame = cf.to_frame(&numeric)?;
    let flat = PointModel::new(Curvature4::<f64>::zero(), Torsion4::zero(), "flat");
    Ok((in_frame - assemble(&flat).d_phi).max_abs())
}

/// Uniform `x ∈ [−1, 1]⁴` and `u` uniform on S³ by rejection sampling.
pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<ChartPoint> {
    (0..n)
        .map(|_| {
            let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            loop {
                let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
                let r2: f64 = v.iter().map(|a| a * a).sum();
                if (0.01..=1.0).contains(&r2) {
                    let r = r2.sqrt();
                    let u = v.map(|a| a / r);
                    if let Ok(p) = ChartPoint::new(x, u) {
                        break p;
                    }
                }
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatReport {
    pub points: usize,
    pub step: f64,
    pub tol: f64,
    /// Largest residual over the points, per identity, at `h` and `h/2`.
    pub residuals: Vec<(String, f64, f64)>,
    pub max_route_difference: f64,
    pub max_gram_error: f64,
    pub max_pipeline_difference: f64,
}

impl FlatReport {
    pub fn ratio(&self, n: usize) -> f64 {
        let (_, a, b) = &self.residuals[n];
        a / b
    }

    pub fn checks(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let (lo, hi) = CONVERGENCE_RANGE;
        for (n, (name, r, r_half)) in self.residuals.iter().enumerate() {
            report.push_detail(name.clone(), *r < self.tol, format!("max residual {r:.3e}"));
            let name = format!("{name}: second-order convergence");
            if *r < EXACT_FLOOR && *r_half < EXACT_FLOOR {
                report.push_detail(name, true, "exact at both steps");
                continue;
            }
            let ratio = self.ratio(n);
            report.push_detail(
                name,
                (lo..=hi).contains(&ratio),
                format!("{r:.3e}/{r_half:.3e} = {ratio:.3}"),
            );
        }
        report.push_detail(
            "frame and coordinate routes agree",
            self.max_route_difference < GRAM_TOL,
            format!("{:.3e}", self.max_route_difference),
        );
        report.push_detail(
            "coframe is orthonormal",
            self.max_gram_error < GRAM_TOL,
            format!("{:.3e}", self.max_gram_error),
        );
        report.push_detail(
            "numeric dφ matches the flat pipeline in the frame",
            self.max_pipeline_difference < self.tol,
            format!("{:.3e}", self.max_pipeline_difference),
        );
        report
    }
}

pub fn verify_flat_equations(points: &[ChartPoint], h: f64, tol: f64) -> Result<FlatReport> {
    let mut at_h = [0.0f64; 6];
    let mut at_half = [0.0f64; 6];
    let (mut route, mut gram, mut pipe) = (0.0f64, 0.0f64, 0.0f64);
    for p in points {
        let r = flat_residuals(p, h)?;
        let r2 = flat_residuals(p, h / 2.0)?;
        for n in 0..6 {
            at_h[n] = at_h[n].max(r[n]);
            at_half[n] = at_half[n].max(r2[n]);
        }
        route = route.max(route_difference(p)?);
        gram = gram.max(gram_error(p)?);
        pipe = pipe.max(pipeline_difference(p, h)?);
    }
    Ok(FlatReport {
        points: points.len(),
        step: h,
        tol,
        residuals: flat_identity_names()
            .iter()
            .zip(at_h.iter().zip(&at_half))
            .map(|(n, (a, b))| (n.to_string(), *a, *b))
            .collect(),
        max_route_difference: route,
        max_gram_error: gram,
        max_pipeline_difference: pipe,
    })
}
