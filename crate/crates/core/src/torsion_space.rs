//! The 24-dimensional space of torsion tensors `T_ijk` (skew in `ij`) under
//! SO(4): the Cartan splitting `ℝ⁴ ⊕ 𝒜₊ ⊕ 𝒜₋ ⊕ Λ³`, the spaces `C±`, the
//! anti-Z condition, and the solution spaces of the torsion-form equations.
//!
//! Coordinates are `T_{ij,k}` for `i < j` in lexicographic order, `k` fastest.
//! Self-duality in the `ij` slot uses the horizontal star with volume
//! `e^{0123}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::g2::tau_tors_closed;
use crate::linalg::Matrix;
use crate::model::{skew_torsion, vectorial_torsion, TorsDerived, Torsion4, DIRECT_ORDERINGS};
use crate::scalar::{frac, int, Scalar};

pub const TORSION_DIM: usize = 24;

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn to_vector<S: Scalar>(t: &Torsion4<S>) -> Vec<S> {
    PAIRS
        .iter()
        .flat_map(|&(i, j)| (0..4).map(move |k| t.get(i, j, k)))
        .collect()
}

pub fn from_vector<S: Scalar>(v: &[S]) -> Result<Torsion4<S>> {
    if v.len() != TORSION_DIM {
        return Err(Error::LengthMismatch {
            expected: TORSION_DIM,
            got: v.len(),
        });
    }
    let mut t = Torsion4::zero();
    for (p, &(i, j)) in PAIRS.iter().enumerate() {
        for k in 0..4 {
            t.set(i, j, k, v[4 * p + k].clone());
        }
    }
    Ok(t)
}

/// `T = V(ν) + S(𝒳) + A₊ + A₋`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionDecomposition<S> {
    pub nu: [S; 4],
    pub skew: [S; 4],
    pub a_plus: Torsion4<S>,
    pub a_minus: Torsion4<S>,
}

impl<S: Scalar> TorsionDecomposition<S> {
    pub fn recompose(&self) -> Torsion4<S> {
        vectorial_torsion(&self.nu)
            .add(&skew_torsion(&self.skew))
            .add(&self.a_plus)
            .add(&self.a_minus)
    }

    pub fn vectorial_part(&self) -> Torsion4<S> {
        vectorial_torsion(&self.nu)
    }

    pub fn skew_part(&self) -> Torsion4<S> {
        skew_torsion(&self.skew)
    }
}

/// `˜*` applied to the `ij` slot for each fixed `k`.
pub fn slot_star<S: Scalar>(t: &Torsion4<S>) -> Torsion4<S> {
    let starred: [Form<S>; 4] = std::array::from_fn(|k| {
        let mut form = Form::zero(2);
        for &(i, j) in &PAIRS {
            form = form + Form::monomial(&[i, j], t.get(i, j, k));
        }
        form.hodge4_horizontal().expect("horizontal 2-form")
    });
    Torsion4::from_fn(|i, j, k| {
        if i == j {
            S::zero()
        } else {
            starred[k].coeff(&[i, j])
        }
    })
}

/// `(T ± ˜*_slot T)/2`.
pub fn self_dual_part<S: Scalar>(t: &Torsion4<S>, plus: bool) -> Torsion4<S> {
    let star = slot_star(t);
    let combined = if plus { t.add(&star) } else { t.sub(&star) };
    combined.scale(&frac(1, 2))
}

/// `ν_i = ⅓ Σ_j T_ijj`.
pub fn trace_vector<S: Scalar>(t: &Torsion4<S>) -> [S; 4] {
    std::array::from_fn(|i| (0..4).fold(S::zero(), |acc, j| acc + t.get(i, j, j)) * frac(1, 3))
}

/// `𝒳` with `⅓↻T = 𝒳⌟vol`, so `x_a = (⅓↻T)_{jkl}` for `(a, j, k, l)` direct.
pub fn skew_vector<S: Scalar>(t: &Torsion4<S>) -> [S; 4] {
    std::array::from_fn(|a| {
        let [_, j, k, l] = *DIRECT_ORDERINGS
            .iter()
            .find(|o| o[0] == a)
            .expect("every index leads an ordering");
        (t.get(j, k, l) + t.get(k, l, j) + t.get(l, j, k)) * frac(1, 3)
    })
}

pub fn cartan_decompose<S: Scalar>(t: &Torsion4<S>) -> TorsionDecomposition<S> {
    let nu = trace_vector(t);
    let skew = skew_vector(t);
    let a = t.sub(&vectorial_torsion(&nu)).sub(&skew_torsion(&skew));
    TorsionDecomposition {
        nu,
        skew,
        a_plus: self_dual_part(&a, true),
        a_minus: self_dual_part(&a, false),
    }
}

/// `Σ_j T_ijj` for each `i`.
pub fn traces<S: Scalar>(t: &Torsion4<S>) -> [S; 4] {
    std::array::from_fn(|i| (0..4).fold(S::zero(), |acc, j| acc + t.get(i, j, j)))
}

/// `↻T_ijk = T_ijk + T_jki + T_kij` is zero for all indices.
pub fn cyclic_sum_vanishes<S: Scalar>(t: &Torsion4<S>, tol: f64) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            (0..4).all(|k| (t.get(i, j, k) + t.get(j, k, i) + t.get(k, i, j)).is_negligible(tol))
        })
    })
}

/// The four Cartan projectors as 24×24 matrices, in the order vectorial,
/// `Λ³`, `𝒜₊`, `𝒜₋`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanProjectors<S> {
    pub vectorial: Matrix<S>,
    pub skew: Matrix<S>,
    pub a_plus: Matrix<S>,
    pub a_minus: Matrix<S>,
}

impl<S: Scalar> CartanProjectors<S> {
    pub fn new() -> Self {
        let build = |part: fn(&TorsionDecomposition<S>) -> Torsion4<S>| {
            let columns: Vec<Vec<S>> = (0..TORSION_DIM)
                .map(|c| {
                    let t = from_vector(&unit(c)).expect("24 coordinates");
                    to_vector(&part(&cartan_decompose(&t)))
                })
                .collect();
            Matrix::from_columns(&columns, TORSION_DIM)
        };
        CartanProjectors {
            vectorial: build(|d| d.vectorial_part()),
            skew: build(|d| d.skew_part()),
            a_plus: build(|d| d.a_plus.clone()),
            a_minus: build(|d| d.a_minus.clone()),
        }
    }

    pub fn all(&self) -> [&Matrix<S>; 4] {
        [&self.vectorial, &self.skew, &self.a_plus, &self.a_minus]
    }

    pub fn ranks(&self, tol: f64) -> [usize; 4] {
        self.all().map(|p| p.rank(tol))
    }
}

impl<S: Scalar> Default for CartanProjectors<S> {
    fn default() -> Self {
        Self::new()
    }
}

fn unit<S: Scalar>(c: usize) -> Vec<S> {
    (0..TORSION_DIM)
        .map(|r| if r == c { S::one() } else { S::zero() })
        .collect()
}

/// `T(X,Y,Z) = ν(X)⟨Y,Z⟩ − ν(Y)⟨X,Z⟩ ± 2 ν♯⌟vol(X,Y,Z)`.
pub fn c_space_element<S: Scalar>(nu: &[S; 4], plus: bool) -> Torsion4<S> {
    let sign: S = if plus { int(2) } else { int(-2) };
    vectorial_torsion(nu).add(&skew_torsion(nu).scale(&sign))
}

/// All twelve `Z_ijk` over direct orderings vanish.
pub fn is_anti_z<S: Scalar>(t: &Torsion4<S>, tol: f64) -> bool {
    TorsDerived::new(t).z.iter().all(|z| z.is_negligible(tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolutionCondition {
    /// `W_i = 0`, equivalently `τ₁,tors = 0`.
    Tau1TorsZero,
    /// `τ₂,tors = 0`.
    Tau2TorsZero,
    /// All `Z_ijk = 0`.
    AntiZ,
}

impl SolutionCondition {
    pub const ALL: [SolutionCondition; 3] = [Self::Tau1TorsZero, Self::Tau2TorsZero, Self::AntiZ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Tau1TorsZero => "tau1_tors_zero",
            Self::Tau2TorsZero => "tau2_tors_zero",
            Self::AntiZ => "anti_Z",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn expected_dim(self) -> usize {
        match self {
            Self::Tau1TorsZero => 20,
            Self::Tau2TorsZero => 16,
            Self::AntiZ => 12,
        }
    }

    /// Name of the subspace the solutions are expected to fill.
    pub fn subspace_name(self) -> &'static str {
        match self {
            Self::Tau1TorsZero => "𝒜⊕C₋",
            Self::Tau2TorsZero => "ℝ⁴⊕𝒜₊⊕Λ³",
            Self::AntiZ => "C₋⊕𝒜₊",
        }
    }

    /// Rows of the linear system over the 24 coordinates.
    pub fn system<S: Scalar>(self) -> Matrix<S> {
        let image = |t: &Torsion4<S>| -> Vec<S> {
            match self {
                Self::Tau1TorsZero => TorsDerived::new(t).w.to_vec(),
                Self::Tau2TorsZero => {
                    let tau2 = tau_tors_closed(t).1;
                    crate::exterior::MultiIndex::all_of_degree(2)
                        .into_iter()
                        .map(|idx| tau2.coefficient(idx))
                        .collect()
                }
                Self::AntiZ => TorsDerived::new(t).z.to_vec(),
            }
        };
        let columns: Vec<Vec<S>> = (0..TORSION_DIM)
            .map(|c| image(&from_vector(&unit(c)).expect("24 coordinates")))
            .collect();
        let rows = columns[0].len();
        Matrix::from_columns(&columns, rows)
    }

    /// Membership of `t` in [`Self::subspace_name`] through its Cartan parts.
    pub fn in_named_subspace<S: Scalar>(self, t: &Torsion4<S>, tol: f64) -> bool {
        let d = cartan_decompose(t);
        let linked =
            (0..4).all(|i| (d.skew[i].clone() + d.nu[i].clone() * int(2)).is_negligible(tol));
        let no_minus = d.a_minus.is_negligible(tol);
        match self {
            Self::Tau1TorsZero => linked,
            Self::Tau2TorsZero => no_minus,
            Self::AntiZ => linked && no_minus,
        }
    }
}

impl fmt::Display for SolutionCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace<S> {
    pub condition: SolutionCondition,
    pub basis: Vec<Torsion4<S>>,
    pub dim: usize,
}

/// Null space of the condition's linear system.
pub fn solution_space<S: Scalar>(condition: SolutionCondition, tol: f64) -> SolutionSpace<S> {
    let basis: Vec<Torsion4<S>> = condition
        .system::<S>()
        .nullspace(tol)
        .iter()
        .map(|v| from_vector(v).expect("24 coordinates"))
        .collect();
    SolutionSpace {
        condition,
        dim: basis.len(),
        basis,
    }
}

/// Basis of the orthogonal complement of the solution space: the
/// independent rows of the system.
pub fn complement_basis<S: Scalar>(condition: SolutionCondition, tol: f64) -> Vec<Torsion4<S>> {
    let system = condition.system::<S>();
    let (reduced, pivots) = system.rref(tol);
    (0..pivots.len())
        .map(|r| from_vector(&reduced.row(r)).expect("24 coordinates"))
        .collect()
}

/// Rank of the stacked systems of the first two conditions, of the anti-Z
/// system, and of all three stacked. Equal values mean the anti-Z space is
/// the intersection of the other two.
pub fn intersection_ranks<S: Scalar>(tol: f64) -> (usize, usize, usize) {
    let w = SolutionCondition::Tau1TorsZero.system::<S>();
    let t2 = SolutionCondition::Tau2TorsZero.system::<S>();
    let z = SolutionCondition::AntiZ.system::<S>();
    let stack = |ms: &[&Matrix<S>]| {
        let rows: Vec<Vec<S>> = ms
            .iter()
            .flat_map(|m| (0..m.rows()).map(|r| m.row(r)))
            .collect();
        Matrix::from_rows(&rows)
    };
    (
        stack(&[&w, &t2]).rank(tol),
        z.rank(tol),
        stack(&[&w, &t2, &z]).rank(tol),
    )
}
