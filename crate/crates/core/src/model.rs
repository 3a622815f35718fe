//! Pointwise curvature and torsion of the base connection in the adapted frame.
//!
//! Horizontal indices run over `0..4` with `e_0 = u`. Curvature components are
//! `R_ijkl = ⟨R(e_i,e_j)e_k, e_l⟩`, torsion components `T_ijk = ⟨T(e_i,e_j), e_k⟩`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{Form, Vector7};
use crate::linalg::Matrix;
use crate::scalar::{frac, int, Rational, Scalar};

/// Even permutations `(i, j, k, l)` of `(0, 1, 2, 3)`, lexicographic.
pub const DIRECT_ORDERINGS: [[usize; 4]; 12] = [
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 2, 1, 0],
];

/// Sign of the permutation `(a, b, c, d)` of `0..4`, zero on repeats.
pub fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> i64 {
    let p = [a, b, c, d];
    for x in 0..4 {
        for y in x + 1..4 {
            if p[x] == p[y] {
                return 0;
            }
        }
    }
    let inversions = (0..4)
        .flat_map(|x| (x + 1..4).map(move |y| (x, y)))
        .filter(|&(x, y)| p[x] > p[y])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A 4×4 matrix, row-major.
pub type Mat4<S> = [[S; 4]; 4];

fn idx4(i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * 4 + j) * 4 + k) * 4 + l
}

fn idx3(i: usize, j: usize, k: usize) -> usize {
    (i * 4 + j) * 4 + k
}

/// Curvature components `R_ijkl`, skew in `ij` and in `kl`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature4<S> {
    data: Vec<S>,
}

impl<S: Scalar> Curvature4<S> {
    pub fn zero() -> Self {
        Curvature4 {
            data: vec![S::zero(); 256],
        }
    }

    /// Raw components; no symmetry is imposed.
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(256);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Curvature4 { data }
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        self.data[idx4(i, j, k, l)].clone()
    }

    /// Set `R_ijkl = v` together with its three skew partners.
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: S) {
        assert!(i != j && k != l, "R_{i}{j}{k}{l} is forced to vanish");
        self.data[idx4(i, j, k, l)] = v.clone();
        self.data[idx4(j, i, k, l)] = -v.clone();
        self.data[idx4(i, j, l, k)] = -v.clone();
        self.data[idx4(j, i, l, k)] = v;
    }

    /// Projection onto tensors skew in `ij` and in `kl`; idempotent.
    pub fn antisymmetrized(&self) -> Self {
        let quarter: S = frac(1, 4);
        Self::from_fn(|i, j, k, l| {
            (self.get(i, j, k, l) - self.get(j, i, k, l) - self.get(i, j, l, k)
                + self.get(j, i, l, k))
                * quarter.clone()
        })
    }

    /// First component breaking a skew symmetry, if any.
    pub fn validate(&self, tol: f64) -> Result<()> {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let v = self.get(i, j, k, l);
                        let bad = !(v.clone() + self.get(j, i, k, l)).is_negligible(tol)
                            || !(v + self.get(i, j, l, k)).is_negligible(tol);
                        if bad {
                            return Err(Error::SymmetryViolation {
                                tensor: "R",
                                indices: vec![i, j, k, l],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j, k, l| self.get(i, j, k, l) + other.get(i, j, k, l))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|i, j, k, l| self.get(i, j, k, l) * s.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Curvature4<T> {
        Curvature4 {
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Nonzero components with `i < j` and `k < l`.
    pub fn independent_components(&self) -> Vec<([usize; 4], S)> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                for k in 0..4 {
                    for l in k + 1..4 {
                        let v = self.get(i, j, k, l);
                        if !v.is_zero() {
                            out.push(([i, j, k, l], v));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Torsion components `T_ijk`, skew in `ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct Torsion4<S> {
    data: Vec<S>,
}

impl<S: Scalar> Torsion4<S> {
    pub fn zero() -> Self {
        Torsion4 {
            data: vec![S::zero(); 64],
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(64);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    data.push(f(i, j, k));
                }
            }
        }
        Torsion4 { data }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.data[idx3(i, j, k)].clone()
    }

    /// Set `T_ijk = v` and `T_jik = −v`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        assert!(i != j, "T_{i}{j}{k} is forced to vanish");
        self.data[idx3(i, j, k)] = v.clone();
        self.data[idx3(j, i, k)] = -v;
    }

    pub fn antisymmetrized(&self) -> Self {
        let half: S = frac(1, 2);
        Self::from_fn(|i, j, k| (self.get(i, j, k) - self.get(j, i, k)) * half.clone())
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    if !(self.get(i, j, k) + self.get(j, i, k)).is_negligible(tol) {
                        return Err(Error::SymmetryViolation {
                            tensor: "T",
                            indices: vec![i, j, k],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j, k| self.get(i, j, k) + other.get(i, j, k))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j, k| self.get(i, j, k) - other.get(i, j, k))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|i, j, k| self.get(i, j, k) * s.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Torsion4<T> {
        Torsion4 {
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// Coefficient inner product over all 64 components.
    pub fn inner(&self, other: &Self) -> S {
        self.data
            .iter()
            .zip(&other.data)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Nonzero components with `i < j`.
    pub fn independent_components(&self) -> Vec<([usize; 3], S)> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                for k in 0..4 {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push(([i, j, k], v));
                    }
                }
            }
        }
        out
    }
}

/// Curvature and torsion at one point, in the adapted frame.
#[derive(Clone, Debug, PartialEq)]
pub struct PointModel<S> {
    pub curvature: Curvature4<S>,
    pub torsion: Torsion4<S>,
    pub label: String,
}

impl<S: Scalar> PointModel<S> {
    pub fn new(curvature: Curvature4<S>, torsion: Torsion4<S>, label: impl Into<String>) -> Self {
        PointModel {
            curvature,
            torsion,
            label: label.into(),
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        self.curvature.validate(tol)?;
        self.torsion.validate(tol)
    }

    /// Re-express the data in the frame adapted to the unit vector `u`.
    pub fn adapted_to(&self, u: &[S; 4], tol: f64) -> Result<Self> {
        let g = adapted_frame(u, tol)?;
        rotate_frame(self, &g, tol)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> PointModel<T> {
        PointModel {
            curvature: self.curvature.map(f),
            torsion: self.torsion.map(f),
            label: self.label.clone(),
        }
    }
}

/// `r_jk = Σ_i R_ijki`.
pub fn ricci<S: Scalar>(r: &Curvature4<S>) -> Mat4<S> {
    std::array::from_fn(|j| {
        std::array::from_fn(|k| (0..4).fold(S::zero(), |acc, i| acc + r.get(i, j, k, i)))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvDerived<S: Scalar> {
    pub ricci: Mat4<S>,
    pub r_bar: S,
    /// Vertical 1-form with `ρ_i = Σ_k R_{k i 0 k}` on `e^{i+3}`.
    pub rho: Form<S>,
    pub l: S,
    /// `R̃_1 e_4 + R̃_2 e_5 + R̃_3 e_6`.
    pub r_tilde: Vector7<S>,
}

impl<S: Scalar> CurvDerived<S> {
    pub fn new(r: &Curvature4<S>) -> Self {
        let ric = ricci(r);
        let r_bar = (0..4).fold(S::zero(), |acc, j| acc + r.get(j, 0, 0, j));
        // k = 0 contributes R_{0i00} = 0
        let mut rho = Form::zero(1);
        for i in 1..4 {
            let c = (0..4).fold(S::zero(), |acc, k| acc + r.get(k, i, 0, k));
            rho = rho + Form::monomial(&[i + 3], c);
        }
        let l = r.get(1, 2, 3, 0) + r.get(2, 3, 1, 0) + r.get(3, 1, 2, 0);
        let t1 = r.get(0, 2, 3, 0) + r.get(3, 0, 2, 0) + r.get(2, 1, 0, 2) + r.get(3, 1, 0, 3);
        let t2 = -r.get(0, 1, 3, 0) - r.get(3, 0, 1, 0) + r.get(1, 2, 0, 1) + r.get(3, 2, 0, 3);
        let t3 = r.get(0, 1, 2, 0) + r.get(2, 0, 1, 0) + r.get(1, 3, 0, 1) + r.get(2, 3, 0, 2);
        let mut r_tilde = Vector7::zero();
        r_tilde.0[4] = t1;
        r_tilde.0[5] = t2;
        r_tilde.0[6] = t3;
        CurvDerived {
            ricci: ric,
            r_bar,
            rho,
            l,
            r_tilde,
        }
    }

    pub fn r_tilde_components(&self) -> [S; 3] {
        std::array::from_fn(|i| self.r_tilde.0[i + 4].clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsDerived<S> {
    pub m: S,
    /// `Z_ijk` aligned with [`DIRECT_ORDERINGS`].
    pub z: [S; 12],
    pub w: [S; 4],
}

impl<S: Scalar> TorsDerived<S> {
    pub fn new(t: &Torsion4<S>) -> Self {
        let m = (1..4).fold(S::zero(), |acc, j| acc + t.get(0, j, j));
        let z: [S; 12] = std::array::from_fn(|n| {
            let [i, j, k, l] = DIRECT_ORDERINGS[n];
            t.get(i, j, j) + t.get(i, k, k) + t.get(j, k, l)
        });
        let w: [S; 4] = std::array::from_fn(|i| {
            DIRECT_ORDERINGS
                .iter()
                .zip(&z)
                .filter(|(o, _)| o[0] == i)
                .fold(S::zero(), |acc, (_, zv)| acc + zv.clone())
        });
        TorsDerived { m, z, w }
    }

    /// `Z_ijk`; panics unless `(i, j, k, l)` is a direct ordering.
    pub fn z(&self, i: usize, j: usize, k: usize) -> S {
        let n = DIRECT_ORDERINGS
            .iter()
            .position(|o| o[0] == i && o[1] == j && o[2] == k)
            .unwrap_or_else(|| panic!("({i},{j},{k},·) is not a direct ordering"));
        self.z[n].clone()
    }
}

fn check_rotation<S: Scalar>(g: &Mat4<S>, tol: f64) -> Result<()> {
    let m = Matrix::from_fn(4, 4, |r, c| g[r][c].clone());
    let gram = &m.transpose() * &m;
    if !gram.approx_eq(&Matrix::identity(4), tol) {
        return Err(Error::NotRotation("gᵀg ≠ 1".into()));
    }
    let det = m.determinant(tol);
    if !(det - S::one()).is_negligible(tol) {
        return Err(Error::NotRotation("det g ≠ 1".into()));
    }
    Ok(())
}

/// `R'_ijkl = Σ g_ai g_bj g_ck g_dl R_abcd`, and likewise for `T`.
pub fn rotate_frame<S: Scalar>(
    model: &PointModel<S>,
    g: &Mat4<S>,
    tol: f64,
) -> Result<PointModel<S>> {
    check_rotation(g, tol)?;
    let transform = |data: &[S], rank: usize| -> Vec<S> {
        let mut cur = data.to_vec();
        for slot in 0..rank {
            let stride = 4usize.pow((rank - 1 - slot) as u32);
            let mut next = vec![S::zero(); cur.len()];
            for (pos, out) in next.iter_mut().enumerate() {
                let new_index = (pos / stride) % 4;
                let base = pos - new_index * stride;
                let mut acc = S::zero();
                for a in 0..4 {
                    let v = &cur[base + a * stride];
                    if !v.is_zero() {
                        acc += g[a][new_index].clone() * v.clone();
                    }
                }
                *out = acc;
            }
            cur = next;
        }
        cur
    };
    Ok(PointModel {
        curvature: Curvature4 {
            data: transform(&model.curvature.data, 4),
        },
        torsion: Torsion4 {
            data: transform(&model.torsion.data, 3),
        },
        label: model.label.clone(),
    })
}

/// Direct orthonormal frame with first column `u`, completed by the rows of
/// the quaternionic matrix `[−u₂ u₁ −u₄ u₃; −u₃ u₄ u₁ −u₂; −u₄ −u₃ u₂ u₁]`.
/// Exact whenever `u` is; requires `|u|² = 1`.
pub fn adapted_frame<S: Scalar>(u: &[S; 4], tol: f64) -> Result<Mat4<S>> {
    let norm = u
        .iter()
        .fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
    if !(norm - S::one()).is_negligible(tol) {
        return Err(Error::InvalidParameter("u must be a unit vector".into()));
    }
    let [u1, u2, u3, u4] = u.clone();
    let cols = [
        [u1.clone(), u2.clone(), u3.clone(), u4.clone()],
        [-u2.clone(), u1.clone(), -u4.clone(), u3.clone()],
        [-u3.clone(), u4.clone(), u1.clone(), -u2.clone()],
        [-u4, -u3, u2, u1],
    ];
    Ok(std::array::from_fn(|r| {
        std::array::from_fn(|c| cols[c][r].clone())
    }))
}

/// Cayley transform `(1 − A)(1 + A)⁻¹` of a skew matrix: a rotation, exact
/// in the rational ring.
pub fn cayley_rotation<S: Scalar>(a: &Mat4<S>) -> Result<Mat4<S>> {
    let a = Matrix::from_fn(4, 4, |r, c| a[r][c].clone());
    let skew = a.add(&a.transpose()).is_zero(S::default_tol());
    if !skew {
        return Err(Error::InvalidParameter(
            "Cayley generator must be skew".into(),
        ));
    }
    let id = Matrix::identity(4);
    let inv = id.add(&a).inverse(S::default_tol())?;
    let g = &id.sub(&a) * &inv;
    Ok(std::array::from_fn(|r| {
        std::array::from_fn(|c| g.get(r, c).clone())
    }))
}

/// `R_ijkl = c(δ_il δ_jk − δ_ik δ_jl)`.
pub fn constant_curvature<S: Scalar>(c: S) -> Curvature4<S> {
    Curvature4::from_fn(|i, j, k, l| {
        let d = |a: usize, b: usize| i64::from(a == b);
        c.clone() * int(d(i, l) * d(j, k) - d(i, k) * d(j, l))
    })
}

/// `T_ijk = ν_i δ_jk − ν_j δ_ik`.
pub fn vectorial_torsion<S: Scalar>(nu: &[S; 4]) -> Torsion4<S> {
    Torsion4::from_fn(|i, j, k| {
        let mut v = S::zero();
        if j == k {
            v += nu[i].clone();
        }
        if i == k {
            v -= nu[j].clone();
        }
        v
    })
}

/// Components of `𝒳⌟vol`: `T_ijk = Σ_a x_a ε_{aijk}`.
pub fn skew_torsion<S: Scalar>(x: &[S; 4]) -> Torsion4<S> {
    Torsion4::from_fn(|i, j, k| {
        (0..4).fold(S::zero(), |acc, a| {
            let e = levi_civita(a, i, j, k);
            if e == 0 {
                acc
            } else {
                acc + x[a].clone() * int(e)
            }
        })
    })
}

/// Product of round 2-spheres of radii `a` and `b` on the planes
/// `span(e_0, e_1)` and `span(e_2, e_3)`.
pub fn product_spheres<S: Scalar>(a: S, b: S) -> Result<Curvature4<S>> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::InvalidParameter(
            "sphere radii must be positive".into(),
        ));
    }
    let ka = S::one() / (a.clone() * a);
    let kb = S::one() / (b.clone() * b);
    Ok(Curvature4::from_fn(|i, j, k, l| {
        let block = |x: usize| x / 2;
        if block(i) != block(j) || block(j) != block(k) || block(k) != block(l) {
            return S::zero();
        }
        let kk = if block(i) == 0 {
            ka.clone()
        } else {
            kb.clone()
        };
        let d = |p: usize, q: usize| i64::from(p == q);
        kk * int(d(i, l) * d(j, k) - d(i, k) * d(j, l))
    }))
}

/// Named models with closed-form torsion, in the unadapted frame.
pub fn catalog() -> Vec<PointModel<Rational>> {
    let zero = Torsion4::zero;
    let flat = Curvature4::zero;
    let mut out = vec![PointModel::new(flat(), zero(), "flat")];
    for c in [-2, -1, 1, 5] {
        out.push(PointModel::new(
            constant_curvature(int(c)),
            zero(),
            format!("constant_curvature({c})"),
        ));
    }
    let basis = |a: usize| -> [Rational; 4] { std::array::from_fn(|i| int(i64::from(i == a))) };
    for a in [0, 1] {
        out.push(PointModel::new(
            flat(),
            vectorial_torsion(&basis(a)),
            format!("vectorial(e{a})"),
        ));
        out.push(PointModel::new(
            flat(),
            skew_torsion(&basis(a)),
            format!("skew(e{a})"),
        ));
    }
    for (a, b) in [(1, 1), (1, 2)] {
        let r = product_spheres(int(a), int(b)).expect("positive radii");
        out.push(PointModel::new(
            r,
            zero(),
            format!("product_spheres({a},{b})"),
        ));
    }
    out
}

/// Seeded generator for reproducible exact test data.
pub fn model_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer components in `[−3, 3]`, then antisymmetrized.
pub fn random_curvature(rng: &mut impl Rng) -> Curvature4<Rational> {
    Curvature4::from_fn(|_, _, _, _| int(rng.gen_range(-3..=3))).antisymmetrized()
}

pub fn random_torsion(rng: &mut impl Rng) -> Torsion4<Rational> {
    Torsion4::from_fn(|_, _, _| int(rng.gen_range(-3..=3))).antisymmetrized()
}

/// Random curvature and torsion from a seed.
pub fn random_model(seed: u64) -> PointModel<Rational> {
    let mut rng = model_rng(seed);
    let curvature = random_curvature(&mut rng);
    let torsion = random_torsion(&mut rng);
    PointModel::new(curvature, torsion, format!("random({seed})"))
}

/// Rational point of S³ by inverse stereographic projection of a random
/// rational point of ℝ³, with the distinguished axis chosen at random.
pub fn random_unit_vector(rng: &mut impl Rng) -> [Rational; 4] {
    let w: [Rational; 3] =
        std::array::from_fn(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    let r2 = w.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    let den = Rational::from_int(1) + r2.clone();
    let pole = rng.gen_range(0..4);
    let mut u: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    let mut it = w.iter();
    for (a, slot) in u.iter_mut().enumerate() {
        *slot = if a == pole {
            (Rational::from_int(1) - r2.clone()) / den.clone()
        } else {
            Rational::from_int(2) * it.next().expect("three chart coordinates").clone()
                / den.clone()
        };
    }
    u
}

/// Random rotation via the Cayley transform of a small integer skew matrix.
pub fn random_rotation(rng: &mut impl Rng, fix_e0: bool) -> Mat4<Rational> {
    let mut a: Mat4<Rational> = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
    let first = usize::from(fix_e0);
    let pairs = (first..4).flat_map(|r| (r + 1..4).map(move |c| (r, c)));
    for (r, c) in pairs {
        let v: Rational = frac(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        a[r][c] = v.clone();
        a[c][r] = -v;
    }
    cayley_rotation(&a).expect("1 + A is invertible for skew A")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_models_are_valid_and_distinct() {
        let cat = catalog();
        let labels: std::collections::BTreeSet<_> = cat.iter().map(|m| m.label.clone()).collect();
        assert_eq!(labels.len(), cat.len());
        for m in &cat {
            m.validate(0.0).unwrap();
        }
    }

    type Q = Rational;

    #[test]
    fn direct_orderings_are_even() {
        for o in DIRECT_ORDERINGS {
            assert_eq!(levi_civita(o[0], o[1], o[2], o[3]), 1);
        }
        let mut sorted = DIRECT_ORDERINGS.to_vec();
        sorted.dedup();
        assert_eq!(sorted.len(), 12);
    }

    #[test]
    fn w_matches_expanded_formula() {
        // W_i = 2T_ijj + 2T_ikk + 2T_ill + ↻T_jkl for (i,j,k,l) direct
        let mut rng = model_rng(11);
        for _ in 0..10 {
            let t = random_torsion(&mut rng);
            let d = TorsDerived::new(&t);
            for i in 0..4 {
                let [_, j, k, l] = *DIRECT_ORDERINGS.iter().find(|o| o[0] == i).unwrap();
                let expected = int::<Q>(2) * (t.get(i, j, j) + t.get(i, k, k) + t.get(i, l, l))
                    + t.get(j, k, l)
                    + t.get(k, l, j)
                    + t.get(l, j, k);
                assert_eq!(d.w[i], expected, "W_{i}");
            }
        }
    }

    #[test]
    fn antisymmetrization_is_idempotent() {
        let mut rng = model_rng(5);
        let raw = Curvature4::<Q>::from_fn(|_, _, _, _| int(rng.gen_range(-3..=3)));
        let once = raw.antisymmetrized();
        assert_eq!(once.antisymmetrized(), once);
        assert!(once.validate(0.0).is_ok());
        assert!(raw.validate(0.0).is_err());
    }

    #[test]
    fn constructors_satisfy_symmetries() {
        let nu = [int::<Q>(1), int(-2), int(0), frac(1, 3)];
        assert!(constant_curvature::<Q>(int(5)).validate(0.0).is_ok());
        assert!(product_spheres::<Q>(int(1), int(2))
            .unwrap()
            .validate(0.0)
            .is_ok());
        assert!(vectorial_torsion(&nu).validate(0.0).is_ok());
        assert!(skew_torsion(&nu).validate(0.0).is_ok());
        assert!(random_model(9).validate(0.0).is_ok());
        assert!(product_spheres::<Q>(int(0), int(1)).is_err());
        assert!(constant_curvature::<Q>(int(0)).is_zero());
    }

    #[test]
    fn ricci_examples() {
        let r = ricci(&constant_curvature::<Q>(int(7)));
        for (j, row) in r.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(v, &int(if j == k { 21 } else { 0 }));
            }
        }
        let p = ricci(&product_spheres::<Q>(int(1), int(2)).unwrap());
        let diag = [int::<Q>(1), int(1), frac(1, 4), frac(1, 4)];
        for j in 0..4 {
            for k in 0..4 {
                let expected = if j == k { diag[j].clone() } else { Q::zero() };
                assert_eq!(p[j][k], expected);
            }
        }
    }

    #[test]
    fn curvature_scalars() {
        let d = CurvDerived::new(&constant_curvature::<Q>(frac(-3, 2)));
        assert_eq!(d.r_bar, frac(-9, 2));
        assert!(d.l.is_zero());
        assert!(d.r_tilde.is_zero());
        assert!(d.rho.is_zero());

        let mut r = Curvature4::<Q>::zero();
        r.set(1, 2, 3, 0, int(1));
        let d = CurvDerived::new(&r);
        assert_eq!(d.l, int(1));
        assert!(d.r_bar.is_zero());
    }

    #[test]
    fn torsion_scalars() {
        let nu = [int::<Q>(2), int(-1), frac(1, 2), int(3)];
        let d = TorsDerived::new(&vectorial_torsion(&nu));
        assert_eq!(d.m, int(6));
        for i in 0..4 {
            assert_eq!(d.w[i], nu[i].clone() * int::<Q>(6));
        }
        let d = TorsDerived::new(&skew_torsion(&nu));
        assert!(d.m.is_zero());
        for i in 0..4 {
            assert_eq!(d.w[i], nu[i].clone() * int::<Q>(3));
        }
    }

    #[test]
    fn torsion_examples_by_substitution() {
        let mut e0 = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        e0[0] = int(1);
        let s = skew_torsion(&e0);
        assert_eq!(s.get(1, 2, 3), int(1));
        assert_eq!(s.get(2, 3, 1), int(1));
        assert_eq!(s.get(2, 1, 3), int(-1));
        assert!(s.get(0, 1, 2).is_zero());

        let mut e1 = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        e1[1] = int(1);
        let v = vectorial_torsion(&e1);
        assert_eq!(v.get(1, 2, 2), int(1));
        assert_eq!(v.get(2, 1, 2), int(-1));
        assert_eq!(v.get(1, 0, 0), int(1));
        assert!(v.get(1, 2, 1).is_zero());
    }

    #[test]
    fn ricci_u_for_torsion_free() {
        // Levi-Civita data obeys the pair and Bianchi symmetries
        let mut rng = model_rng(3);
        for _ in 0..5 {
            let raw = random_curvature(&mut rng);
            let pair = Curvature4::from_fn(|i, j, k, l| {
                (raw.get(i, j, k, l) + raw.get(k, l, i, j)) * frac::<Q>(1, 2)
            });
            let bianchi = Curvature4::from_fn(|i, j, k, l| {
                let cyc = pair.get(i, j, k, l) + pair.get(j, k, i, l) + pair.get(k, i, j, l);
                pair.get(i, j, k, l) - cyc * frac::<Q>(1, 3)
            });
            let d = CurvDerived::new(&bianchi);
            for i in 1..4 {
                assert_eq!(d.r_tilde.0[i + 3], d.ricci[i][0], "R̃_{i}");
            }
        }
    }

    #[test]
    fn frames_and_rotations() {
        let mut rng = model_rng(17);
        for _ in 0..10 {
            let u = random_unit_vector(&mut rng);
            let g = adapted_frame(&u, 0.0).unwrap();
            assert!(check_rotation(&g, 0.0).is_ok());
            let g = random_rotation(&mut rng, false);
            assert!(check_rotation(&g, 0.0).is_ok());
        }
        let bad: Mat4<Q> =
            std::array::from_fn(|r| std::array::from_fn(|c| int(i64::from(r == c) * 2)));
        let model = random_model(1);
        assert!(matches!(
            rotate_frame(&model, &bad, 0.0),
            Err(Error::NotRotation(_))
        ));
        let id: Mat4<Q> = std::array::from_fn(|r| std::array::from_fn(|c| int(i64::from(r == c))));
        assert_eq!(rotate_frame(&model, &id, 0.0).unwrap(), model);
    }

    #[test]
    fn invariants_under_rotation_fixing_e0() {
        let mut rng = model_rng(23);
        for seed in 0..8 {
            let model = random_model(seed);
            let g = random_rotation(&mut rng, true);
            let rotated = rotate_frame(&model, &g, 0.0).unwrap();
            assert!(rotated.validate(0.0).is_ok());
            let (a, b) = (
                CurvDerived::new(&model.curvature),
                CurvDerived::new(&rotated.curvature),
            );
            assert_eq!(a.r_bar, b.r_bar);
            assert_eq!(a.l, b.l);
            let norm = |v: &Vector7<Q>| v.dot(v);
            assert_eq!(norm(&a.r_tilde), norm(&b.r_tilde));
            assert_eq!(
                TorsDerived::new(&model.torsion).m,
                TorsDerived::new(&rotated.torsion).m
            );
        }
    }

    #[test]
    fn product_is_einstein_only_for_equal_radii() {
        let mut rng = model_rng(31);
        let u = random_unit_vector(&mut rng);
        let equal = PointModel::new(
            product_spheres::<Q>(int(1), int(1)).unwrap(),
            Torsion4::zero(),
            "S2xS2",
        );
        let adapted = equal.adapted_to(&u, 0.0).unwrap();
        assert!(CurvDerived::new(&adapted.curvature).r_tilde.is_zero());
    }
}
