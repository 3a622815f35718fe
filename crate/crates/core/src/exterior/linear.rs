use std::ops::{Add, Neg, Sub};

use crate::exterior::{Form, MultiIndex, DIM};
use crate::scalar::Scalar;

/// A tangent vector on the model space in the frame `e_0, …, e_6`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector7<S>(pub [S; DIM]);

impl<S: Scalar> Vector7<S> {
    pub fn zero() -> Self {
        Vector7(std::array::from_fn(|_| S::zero()))
    }

    pub fn basis(i: usize) -> Self {
        Vector7(std::array::from_fn(|j| {
            if i == j {
                S::one()
            } else {
                S::zero()
            }
        }))
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Vector7(std::array::from_fn(f))
    }

    pub fn components(&self) -> &[S; DIM] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &S {
        &self.0[i]
    }

    pub fn dot(&self, other: &Self) -> S {
        self.0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Vector7::from_fn(|i| self.0[i].clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Metric dual 1-form.
    pub fn flat(&self) -> Form<S> {
        let mut form = Form::zero(1);
        for (i, c) in self.0.iter().enumerate() {
            form.add_term(MultiIndex::from_bits(1 << i), c.clone());
        }
        form
    }
}

impl<S: Scalar> Add for Vector7<S> {
    type Output = Vector7<S>;
    fn add(self, rhs: Self) -> Self {
        Vector7::from_fn(|i| self.0[i].clone() + rhs.0[i].clone())
    }
}

impl<S: Scalar> Sub for Vector7<S> {
    type Output = Vector7<S>;
    fn sub(self, rhs: Self) -> Self {
        Vector7::from_fn(|i| self.0[i].clone() - rhs.0[i].clone())
    }
}

impl<S: Scalar> Neg for Vector7<S> {
    type Output = Vector7<S>;
    fn neg(self) -> Self {
        Vector7::from_fn(|i| -self.0[i].clone())
    }
}

/// A linear endomorphism of the model space, stored row-major:
/// `matrix[r][c] = ⟨B e_c, e_r⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo7<S> {
    matrix: [[S; DIM]; DIM],
}

impl<S: Scalar> Endo7<S> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Endo7 {
            matrix: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { S::one() } else { S::zero() })
    }

    /// The endomorphism sending `e_c` to the given images.
    pub fn from_columns(images: [Vector7<S>; DIM]) -> Self {
        Self::from_fn(|r, c| images[c].0[r].clone())
    }

    pub fn entry(&self, row: usize, col: usize) -> &S {
        &self.matrix[row][col]
    }

    pub fn column(&self, c: usize) -> Vector7<S> {
        Vector7::from_fn(|r| self.matrix[r][c].clone())
    }

    pub fn apply(&self, v: &Vector7<S>) -> Vector7<S> {
        Vector7::from_fn(|r| {
            self.matrix[r]
                .iter()
                .zip(&v.0)
                .fold(S::zero(), |acc, (m, x)| acc + m.clone() * x.clone())
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| {
            (0..DIM).fold(S::zero(), |acc, k| {
                acc + self.matrix[r][k].clone() * other.matrix[k][c].clone()
            })
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.matrix[c][r].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|r, c| self.matrix[r][c].clone() * s.clone())
    }
}

impl<S: Scalar> Add for Endo7<S> {
    type Output = Endo7<S>;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.matrix[r][c].clone() + rhs.matrix[r][c].clone())
    }
}

impl<S: Scalar> Sub for Endo7<S> {
    type Output = Endo7<S>;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.matrix[r][c].clone() - rhs.matrix[r][c].clone())
    }
}

impl<S: Scalar> Neg for Endo7<S> {
    type Output = Endo7<S>;
    fn neg(self) -> Self {
        Self::from_fn(|r, c| -self.matrix[r][c].clone())
    }
}
