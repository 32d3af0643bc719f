//! Finite-dimensional models of the pair (polyvector cohomology `HT*`, form
//! cohomology `HΩ*`) with wedge products and contractions, together with the
//! Hochschild side realized as a transported copy, Kontsevich twists, the
//! module-compatibility propagation, annihilator subspaces and the Mukai
//! square.
//!
//! Bidegree conventions: a polyvector class in `H^q(Λ^p T)` has bidegree
//! `(p, q)` and `HT` degree `p + q`; a form class in `H^s(Ω^r)` has bidegree
//! `(r, s)` and `HΩ` degree `r − s`. Contraction by `H^q(Λ^p T)` sends
//! `(r, s)` to `(r − p, s + q)`.

mod hochschild;
mod models;

pub use hochschild::*;
pub use models::*;

use thiserror::Error;

use crate::lefschetz::{joint_annihilator, GradedOperatorSpace, LefschetzError};
use crate::linalg::{is_zero_vec, Matrix};
use crate::scalar::Scalar;
use crate::verbitsky::VerbitskyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("class is not invertible")]
    NotInvertible,
    #[error("element is not homogeneous of a diagonal bidegree (p,p)")]
    WrongBidegree,
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("model is inconsistent: {0}")]
    Inconsistent(String),
    #[error("bad model parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Verbitsky(#[from] VerbitskyError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
}

/// A basis vector with a display label and a bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisClass {
    pub label: String,
    pub bidegree: (i64, i64),
}

impl BasisClass {
    pub fn new(label: impl Into<String>, p: i64, q: i64) -> Self {
        Self { label: label.into(), bidegree: (p, q) }
    }
}

/// An algebra `HT` acting on a module `HΩ`, with the form product on `HΩ`,
/// the action of forms on polyvectors, unit, integration and the class `a`.
#[derive(Debug, Clone)]
pub struct PairModel<T> {
    pub name: String,
    /// Complex dimension of the modelled manifold.
    pub dim: usize,
    pub ht_basis: Vec<BasisClass>,
    pub hw_basis: Vec<BasisClass>,
    /// `ht_mul[i]`: matrix of `e_i ∧ ·` on `HT`.
    pub ht_mul: Vec<Matrix<T>>,
    /// `hw_mul[k]`: matrix of `f_k ∧ ·` on `HΩ`.
    pub hw_mul: Vec<Matrix<T>>,
    /// `action[i]`: matrix of `e_i ⌟ ·` on `HΩ`.
    pub action: Vec<Matrix<T>>,
    /// `form_action[k]`: matrix of `f_k ⌟ ·` on `HT`.
    pub form_action: Vec<Matrix<T>>,
    pub ht_unit: Vec<T>,
    pub hw_unit: Vec<T>,
    /// Integration over the manifold, a functional on `HΩ`.
    pub top_integral: Vec<T>,
    pub a_class: Vec<T>,
    pub c1_class: Option<Vec<T>>,
}

/// `Σ c_i M_i w` without forming the combined matrix.
pub(crate) fn apply_combination<T: Scalar>(mats: &[Matrix<T>], coeffs: &[T], w: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); mats.first().map_or(0, |m| m.rows())];
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = crate::linalg::axpy(c, &m.apply(w), &out);
        }
    }
    out
}

/// Linear combination `Σ c_i M_i`.
pub(crate) fn combine<T: Scalar>(mats: &[Matrix<T>], coeffs: &[T], dim: usize) -> Matrix<T> {
    let mut out = Matrix::zeros(dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

impl<T: Scalar> PairModel<T> {
    pub fn ht_dim(&self) -> usize {
        self.ht_basis.len()
    }

    pub fn hw_dim(&self) -> usize {
        self.hw_basis.len()
    }

    pub fn ht_degree(&self, i: usize) -> i64 {
        let (p, q) = self.ht_basis[i].bidegree;
        p + q
    }

    pub fn hw_degree(&self, k: usize) -> i64 {
        let (r, s) = self.hw_basis[k].bidegree;
        r - s
    }

    /// Total cohomological degree `r + s` of a form basis class.
    pub fn hw_total_degree(&self, k: usize) -> i64 {
        let (r, s) = self.hw_basis[k].bidegree;
        r + s
    }

    pub fn ht_index(&self, label: &str) -> Option<usize> {
        self.ht_basis.iter().position(|b| b.label == label)
    }

    pub fn hw_index(&self, label: &str) -> Option<usize> {
        self.hw_basis.iter().position(|b| b.label == label)
    }

    pub fn ht_unit_vector(&self, i: usize) -> Vec<T> {
        crate::linalg::unit_vector(self.ht_dim(), i)
    }

    pub fn hw_unit_vector(&self, k: usize) -> Vec<T> {
        crate::linalg::unit_vector(self.hw_dim(), k)
    }

    /// Matrix of `v ∧ ·` on `HT`.
    pub fn ht_left(&self, v: &[T]) -> Matrix<T> {
        combine(&self.ht_mul, v, self.ht_dim())
    }

    /// Matrix of `α ∧ ·` on `HΩ`.
    pub fn hw_left(&self, alpha: &[T]) -> Matrix<T> {
        combine(&self.hw_mul, alpha, self.hw_dim())
    }

    /// Matrix of `v ⌟ ·` on `HΩ`.
    pub fn action_of(&self, v: &[T]) -> Matrix<T> {
        combine(&self.action, v, self.hw_dim())
    }

    /// Matrix of `α ⌟ ·` on `HT`.
    pub fn form_action_of(&self, alpha: &[T]) -> Matrix<T> {
        combine(&self.form_action, alpha, self.ht_dim())
    }

    pub fn ht_wedge(&self, v: &[T], w: &[T]) -> Vec<T> {
        apply_combination(&self.ht_mul, v, w)
    }

    pub fn hw_wedge(&self, a: &[T], b: &[T]) -> Vec<T> {
        apply_combination(&self.hw_mul, a, b)
    }

    pub fn contract(&self, v: &[T], alpha: &[T]) -> Vec<T> {
        apply_combination(&self.action, v, alpha)
    }

    pub fn integrate(&self, alpha: &[T]) -> T {
        crate::linalg::dot(&self.top_integral, alpha)
    }

    /// `α^{-1}` for the form product, if `α ∧ ·` is invertible.
    pub fn hw_inverse(&self, alpha: &[T]) -> Result<Vec<T>, PairError> {
        let inv = self.hw_left(alpha).inverse().ok_or(PairError::NotInvertible)?;
        Ok(inv.apply(&self.hw_unit))
    }

    /// Basis positions of `HT` classes of total degree `k`.
    pub fn ht_indices_of_degree(&self, k: i64) -> Vec<usize> {
        (0..self.ht_dim()).filter(|&i| self.ht_degree(i) == k).collect()
    }

    /// Basis positions of `HΩ` classes of degree `i = r − s`.
    pub fn hw_indices_of_degree(&self, i: i64) -> Vec<usize> {
        (0..self.hw_dim()).filter(|&k| self.hw_degree(k) == i).collect()
    }

    /// `HΩ` as a graded space weighted by `r − s`.
    pub fn hw_graded_space(&self) -> GradedOperatorSpace<T> {
        GradedOperatorSpace::from_weights((0..self.hw_dim()).map(|k| self.hw_degree(k)).collect())
    }

    /// Exhaustive structural checks: associativity and graded commutativity
    /// of both products, both module axioms, units, and that the integral
    /// vanishes off the top bidegree.
    pub fn validate(&self) -> Result<(), PairError> {
        let inconsistent = |s: String| Err(PairError::Inconsistent(s));
        let (nt, nw) = (self.ht_dim(), self.hw_dim());
        for (name, mats, n, degree) in [
            ("HT", &self.ht_mul, nt, &(|i: usize| self.ht_degree(i)) as &dyn Fn(usize) -> i64),
            ("HΩ", &self.hw_mul, nw, &|k: usize| self.hw_total_degree(k)),
        ] {
            for i in 0..n {
                for j in 0..n {
                    let prod = mats[i].apply(&crate::linalg::unit_vector(n, j));
                    // (e_i e_j) ∧ · = e_i ∧ (e_j ∧ ·)
                    if combine(mats, &prod, n) != &mats[i] * &mats[j] {
                        return inconsistent(format!("{name} product not associative at ({i},{j})"));
                    }
                    let swapped = mats[j].apply(&crate::linalg::unit_vector(n, i));
                    let sign = if degree(i) * degree(j) % 2 == 0 { T::one() } else { -T::one() };
                    if prod != swapped.iter().map(|x| x.clone() * sign.clone()).collect::<Vec<_>>() {
                        return inconsistent(format!("{name} product not graded commutative at ({i},{j})"));
                    }
                }
            }
        }
        for i in 0..nt {
            for j in 0..nt {
                let prod = self.ht_mul[i].apply(&self.ht_unit_vector(j));
                if self.action_of(&prod) != &self.action[i] * &self.action[j] {
                    return inconsistent(format!("HT action is not a module action at ({i},{j})"));
                }
            }
        }
        for k in 0..nw {
            for l in 0..nw {
                let prod = self.hw_mul[k].apply(&self.hw_unit_vector(l));
                if self.form_action_of(&prod) != &self.form_action[k] * &self.form_action[l] {
                    return inconsistent(format!("form action on HT is not a module action at ({k},{l})"));
                }
            }
        }
        if self.action_of(&self.ht_unit) != Matrix::identity(nw) || self.ht_left(&self.ht_unit) != Matrix::identity(nt) {
            return inconsistent("HT unit does not act as identity".into());
        }
        if self.hw_left(&self.hw_unit) != Matrix::identity(nw) || self.form_action_of(&self.hw_unit) != Matrix::identity(nt)
        {
            return inconsistent("HΩ unit does not act as identity".into());
        }
        let top = (self.dim as i64, self.dim as i64);
        if self.top_integral.iter().zip(&self.hw_basis).any(|(c, b)| !c.is_zero() && b.bidegree != top) {
            return inconsistent("integral is nonzero off the top bidegree".into());
        }
        self.hw_inverse(&self.a_class)?;
        Ok(())
    }

    /// If `c₁` is set, checks that contraction with it kills all of `HT`.
    pub fn c1_axiom_holds(&self) -> bool {
        match &self.c1_class {
            None => true,
            Some(c) => self.form_action_of(c).is_zero(),
        }
    }

    /// `(−1)^p ∫ γ∧γ` for `γ` homogeneous of bidegree `(p, p)`.
    pub fn mukai_chi(&self, gamma: &[T]) -> Result<T, PairError> {
        if gamma.len() != self.hw_dim() {
            return Err(PairError::LengthMismatch { expected: self.hw_dim(), found: gamma.len() });
        }
        if is_zero_vec(gamma) {
            return Ok(T::zero());
        }
        let mut degs = gamma.iter().zip(&self.hw_basis).filter(|(c, _)| !c.is_zero()).map(|(_, b)| b.bidegree);
        let first = degs.next().expect("nonzero vector");
        if first.0 != first.1 || degs.any(|d| d != first) {
            return Err(PairError::WrongBidegree);
        }
        let square = self.integrate(&self.hw_wedge(gamma, gamma));
        Ok(if first.0 % 2 == 0 { square } else { -square })
    }

    /// Whether `op` is a derivation of the form product with Koszul sign
    /// `(−1)^{|op|·|α|}` on all basis pairs.
    pub fn is_derivation(&self, op: &Matrix<T>, op_degree: i64) -> bool {
        let nw = self.hw_dim();
        (0..nw).all(|k| {
            (0..nw).all(|l| {
                let (a, b) = (self.hw_unit_vector(k), self.hw_unit_vector(l));
                let lhs = op.apply(&self.hw_wedge(&a, &b));
                let first = self.hw_wedge(&op.apply(&a), &b);
                let mut second = self.hw_wedge(&a, &op.apply(&b));
                if op_degree * self.hw_total_degree(k) % 2 != 0 {
                    second = second.into_iter().map(|x| -x).collect();
                }
                lhs == crate::linalg::axpy(&T::one(), &first, &second)
            })
        })
    }

    /// Whether contraction with `v` is a derivation of the form product.
    pub fn derivation_check(&self, v: &[T]) -> bool {
        let degree = v
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map_or(0, |(i, _)| self.ht_degree(i));
        self.is_derivation(&self.action_of(v), degree)
    }

    /// `a ∧ (v⌟β) = v⌟(a∧β)` for every basis `β`.
    pub fn case_one_identity(&self, v: &[T]) -> bool {
        let la = self.hw_left(&self.a_class);
        let act = self.action_of(v);
        &la * &act == &act * &la
    }

    /// `a ∧ (v⌟β) = v⌟(a∧β) − (v⌟a) ∧ β` for every basis `β`, and `v⌟a = 0`.
    pub fn case_two_identity(&self, v: &[T]) -> bool {
        let la = self.hw_left(&self.a_class);
        let act = self.action_of(v);
        let va = act.apply(&self.a_class);
        let correction = self.hw_left(&va);
        &la * &act == &(&act * &la) - &correction && is_zero_vec(&va)
    }

    /// Joint annihilator of `HT²` acting on `HΩ_0`.
    pub fn r_subspace(&self) -> Vec<Vec<T>> {
        let ops: Vec<Matrix<T>> = self.ht_indices_of_degree(2).into_iter().map(|i| self.action[i].clone()).collect();
        let refs: Vec<&Matrix<T>> = ops.iter().collect();
        joint_annihilator(&self.hw_graded_space(), &refs, 0)
    }

    /// Whether the diagonal corners `(0,0), (1,1), (m−1,m−1), (m,m)` of
    /// `HΩ_0` lie in the annihilator of `HT²`, given that the model has no
    /// `(2,0)` polyvectors and no `(0,2)` polyvectors.
    pub fn corner_containment(&self) -> Result<bool, PairError> {
        if self.ht_basis.iter().any(|b| b.bidegree == (2, 0) || b.bidegree == (0, 2)) {
            return Err(PairError::Inconsistent("model has (2,0) or (0,2) polyvectors".into()));
        }
        let m = self.dim as i64;
        let corners = [0, 1, m - 1, m];
        let ops: Vec<&Matrix<T>> = self.ht_indices_of_degree(2).into_iter().map(|i| &self.action[i]).collect();
        Ok((0..self.hw_dim())
            .filter(|&k| {
                let (r, s) = self.hw_basis[k].bidegree;
                r == s && corners.contains(&r)
            })
            .all(|k| ops.iter().all(|op| is_zero_vec(&op.apply(&self.hw_unit_vector(k))))))
    }
}
