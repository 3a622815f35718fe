use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exterior::{Endo7, MultiIndex, Vector7, DIM, HORIZONTAL};
use crate::scalar::Scalar;

/// Orientation of the 7-dimensional model. `Reversed` flips the sign of the
/// volume form and exists only as a negative control for identity suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Reversed,
}

/// A homogeneous exterior form on the model space with sparse coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// forms (for the float ring only exact zeros are dropped).
#[derive(Clone, PartialEq)]
pub struct Form<S> {
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "degree {degree} exceeds {DIM}");
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(value: S) -> Self {
        let mut form = Form::zero(0);
        form.add_term(MultiIndex::EMPTY, value);
        form
    }

    /// The signed monomial `e^{i_1 … i_k}` for labels in any order; repeated
    /// labels give the zero form.
    pub fn basis(indices: &[usize]) -> Self {
        Self::monomial(indices, S::one())
    }

    pub fn monomial(indices: &[usize], coefficient: S) -> Self {
        let mut form = Form::zero(indices.len());
        if let Some((sign, idx)) = MultiIndex::signed(indices) {
            form.add_term(idx, if sign < 0 { -coefficient } else { coefficient });
        }
        form
    }

    /// Sum of signed monomials, all of the given degree.
    pub fn from_terms<'a>(
        degree: usize,
        terms: impl IntoIterator<Item = (&'a [usize], S)>,
    ) -> Self {
        let mut form = Form::zero(degree);
        for (indices, c) in terms {
            assert_eq!(
                indices.len(),
                degree,
                "monomial {indices:?} has wrong degree"
            );
            if let Some((sign, idx)) = MultiIndex::signed(indices) {
                form.add_term(idx, if sign < 0 { -c } else { c });
            }
        }
        form
    }

    /// Volume form `e^{0123456}`.
    pub fn volume() -> Self {
        Self::basis(&[0, 1, 2, 3, 4, 5, 6])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: MultiIndex) -> S {
        self.terms.get(&index).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the signed monomial with labels in any order.
    pub fn coeff(&self, indices: &[usize]) -> S {
        match MultiIndex::signed(indices) {
            Some((sign, idx)) => {
                let c = self.coefficient(idx);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
            None => S::zero(),
        }
    }

    /// Value of a 0-form.
    pub fn scalar_part(&self) -> S {
        self.coefficient(MultiIndex::EMPTY)
    }

    /// Accumulate `c·e^index`, dropping the entry if it cancels.
    pub fn add_term(&mut self, index: MultiIndex, c: S) {
        assert_eq!(
            index.degree(),
            self.degree,
            "term {index} in a degree-{} form",
            self.degree
        );
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&index);
                }
            }
            None => {
                self.terms.insert(index, c);
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(*idx, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Form::zero(self.degree);
        if s.is_zero() {
            return out;
        }
        for (idx, c) in &self.terms {
            out.add_term(*idx, c.clone() * s.clone());
        }
        out
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Form<T> {
        let mut out = Form::zero(self.degree);
        for (idx, c) in &self.terms {
            out.add_term(*idx, f(c));
        }
        out
    }

    /// Drop coefficients with magnitude at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, c| !c.is_negligible(tol));
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        if degree > DIM {
            return Form::zero(DIM);
        }
        let mut out = Form::zero(degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = a.wedge_sign(*b) {
                    let prod = ca.clone() * cb.clone();
                    out.add_term(a.union(*b), if sign < 0 { -prod } else { prod });
                }
            }
        }
        out
    }

    /// Iterated wedge power `self^n` (`n ≥ 1`).
    pub fn power(&self, n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(self.clone(), |acc, _| acc.wedge(self))
    }

    /// Hodge star of the Euclidean model with volume `e^{0123456}`.
    pub fn hodge7(&self) -> Self {
        self.hodge7_oriented(Orientation::Standard)
    }

    pub fn hodge7_oriented(&self, orientation: Orientation) -> Self {
        let mut out = Form::zero(DIM - self.degree);
        for (idx, c) in &self.terms {
            let comp = idx.complement();
            let mut sign = idx.wedge_sign(comp).expect("complement is disjoint");
            if orientation == Orientation::Reversed {
                sign = -sign;
            }
            out.add_term(comp, if sign < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Hodge star of the horizontal 4-space, volume `e^{0123}`.
    pub fn hodge4_horizontal(&self) -> Result<Self> {
        if self.degree > 4 {
            return Err(Error::DegreeMismatch {
                expected: 4,
                got: self.degree,
            });
        }
        let mut out = Form::zero(4 - self.degree);
        for (idx, c) in &self.terms {
            if let Some(v) = idx.indices().find(|&i| i > 3) {
                return Err(Error::NotHorizontal { index: v });
            }
            let comp = idx.complement_in(HORIZONTAL);
            let sign = idx.wedge_sign(comp).expect("complement is disjoint");
            out.add_term(comp, if sign < 0 { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Interior product `v ⌟ self`; a 0-form maps to the zero 0-form.
    pub fn interior(&self, v: &Vector7<S>) -> Self {
        if self.degree == 0 {
            return Form::zero(0);
        }
        let mut out = Form::zero(self.degree - 1);
        for (idx, c) in &self.terms {
            for (pos, i) in idx.indices().enumerate() {
                let vi = v.get(i);
                if vi.is_zero() {
                    continue;
                }
                let term = c.clone() * vi.clone();
                out.add_term(idx.without(i), if pos % 2 == 1 { -term } else { term });
            }
        }
        out
    }

    /// Evaluate on a tuple of vectors, with `e^{i_1…i_k}(e_{i_1},…,e_{i_k}) = 1`.
    pub fn evaluate(&self, vectors: &[Vector7<S>]) -> Result<S> {
        if vectors.len() != self.degree {
            return Err(Error::LengthMismatch {
                expected: self.degree,
                got: vectors.len(),
            });
        }
        let mut total = S::zero();
        for (idx, c) in &self.terms {
            let labels = idx.to_vec();
            let minor: Vec<Vec<S>> = vectors
                .iter()
                .map(|v| labels.iter().map(|&i| v.get(i).clone()).collect())
                .collect();
            total += c.clone() * leibniz_det(&minor);
        }
        Ok(total)
    }

    /// The alternating contraction `η∘(B_1∧…∧B_p)`:
    /// `(Y_1,…,Y_p) ↦ Σ_σ sg(σ) η(B_1 Y_σ1, …, B_p Y_σp)`.
    pub fn contract(&self, endos: &[Endo7<S>]) -> Result<Self> {
        let p = self.degree;
        if endos.len() != p {
            return Err(Error::LengthMismatch {
                expected: p,
                got: endos.len(),
            });
        }
        let perms = signed_permutations(p);
        let mut out = Form::zero(p);
        for target in MultiIndex::all_of_degree(p) {
            let labels = target.to_vec();
            let mut value = S::zero();
            for (perm, sign) in &perms {
                let args: Vec<Vector7<S>> = endos
                    .iter()
                    .zip(perm)
                    .map(|(b, &slot)| b.column(labels[slot]))
                    .collect();
                let v = self.evaluate(&args)?;
                value += if *sign < 0 { -v } else { v };
            }
            out.add_term(target, value);
        }
        Ok(out)
    }

    /// Coefficient inner product (sorted multi-indices are orthonormal).
    pub fn inner(&self, other: &Self) -> S {
        if self.degree != other.degree {
            return S::zero();
        }
        self.terms
            .iter()
            .filter_map(|(idx, a)| other.terms.get(idx).map(|b| a.clone() * b.clone()))
            .fold(S::zero(), |acc, x| acc + x)
    }

    /// `*(a ∧ *a)`, the squared norm.
    pub fn norm_sq(&self) -> S {
        self.wedge(&self.hodge7()).hodge7().scalar_part()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.is_negligible(tol))
    }

    /// Equality under the ring's comparison rule.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.degree == other.degree && (self.clone() - other.clone()).is_negligible(tol)
    }

    /// The vector metrically dual to a 1-form.
    pub fn sharp(&self) -> Result<Vector7<S>> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: self.degree,
            });
        }
        Ok(Vector7::from_fn(|i| {
            self.coefficient(MultiIndex::from_bits(1 << i))
        }))
    }

    /// True when every monomial avoids the labels outside `support`.
    pub fn is_supported_on(&self, support: MultiIndex) -> bool {
        self.terms.keys().all(|idx| idx.is_subset_of(support))
    }
}

/// All permutations of `0..p` with their signs.
pub(crate) fn signed_permutations(p: usize) -> Vec<(Vec<usize>, i64)> {
    (0..p)
        .permutations(p)
        .map(|perm| {
            let inversions = (0..p)
                .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            (perm, if inversions % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Determinant by the Leibniz expansion; meant for the small minors here.
pub(crate) fn leibniz_det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    if n == 0 {
        return S::one();
    }
    let mut total = S::zero();
    for (perm, sign) in signed_permutations(n) {
        let mut prod = S::one();
        for (row, &col) in perm.iter().enumerate() {
            let e = &m[row][col];
            if e.is_zero() {
                prod = S::zero();
                break;
            }
            prod = prod * e.clone();
        }
        if !prod.is_zero() {
            total += if sign < 0 { -prod } else { prod };
        }
    }
    total
}

impl<S: Scalar> Add for Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Add for &Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: Self) -> Form<S> {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        self.checked_add(rhs).expect("degrees match")
    }
}

impl<S: Scalar> Sub for Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Sub for &Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: Self) -> Form<S> {
        assert_eq!(
            self.degree, rhs.degree,
            "subtracting forms of different degree"
        );
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.add_term(*idx, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Mul<S> for Form<S> {
    type Output = Form<S>;
    fn mul(self, rhs: S) -> Self {
        self.scale(&rhs)
    }
}

impl<S: Scalar> Mul<S> for &Form<S> {
    type Output = Form<S>;
    fn mul(self, rhs: S) -> Form<S> {
        self.scale(&rhs)
    }
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{idx}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form<{}>[{}]", self.degree, self)
    }
}
