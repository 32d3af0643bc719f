//! Exterior algebra of an odd vector space and its dual, with wedge product
//! and the two contractions.
//!
//! Basis monomials are stored as bitmasks: bit `i-1` set means the factor
//! `e_i` (polyvector) or `e^i` (form) is present, always in increasing index
//! order. A general element is a sparse map from masks to coefficients.
//!
//! Sign conventions:
//! * `e_i ⌟ (e^{j1}∧…∧e^{jq}) = Σ_t (−1)^{t−1} δ_i^{jt} (…ê^{jt}…)`;
//! * `e^j ⌟ e_i = −δ_i^j`, extended as an antiderivation on polyvectors;
//! * for a product `u∧v` acting by contraction, `(u∧v)⌟x = u⌟(v⌟x)`.
//!
//! With these choices `e_i ⌟ e^j = −(e^j ⌟ e_i)` and the identity
//! `(−1)^ℓ (β′⌟w)⌟β = β′∧(w⌟β)` holds for `β` of top degree and `β′` of
//! degree `ℓ`; see [`check_innermax`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

/// Largest supported dimension (monomials are `u32` bitmasks).
pub const MAX_DIM: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("dimension must be between 1 and {MAX_DIM}, got {0}")]
    BadDimension(usize),
    #[error("elements live on spaces of dimension {0} and {1}")]
    SpaceMismatch(usize, usize),
    #[error("expected a {expected}, got a {found}")]
    VarianceMismatch { expected: Variance, found: Variance },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("basis indices must be strictly increasing")]
    UnsortedIndices,
    #[error("expected a top-degree form of degree {dim}")]
    NotTopDegree { dim: usize },
    #[error("expected a homogeneous element")]
    NotHomogeneous,
}

/// An `n`-dimensional odd space with basis `e_1..e_n` and dual basis `e^1..e^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddSpace {
    dim: usize,
}

impl OddSpace {
    pub fn new(dim: usize) -> Result<Self, ExteriorError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(ExteriorError::BadDimension(dim));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Bitmask of the top monomial.
    pub fn top_mask(&self) -> u32 {
        if self.dim == 32 {
            u32::MAX
        } else {
            (1u32 << self.dim) - 1
        }
    }

    /// All basis monomials of the given degree, in increasing mask order.
    pub fn monomials_of_degree(&self, degree: usize) -> Vec<u32> {
        (0..=self.top_mask()).filter(|m| m.count_ones() as usize == degree).collect()
    }

    /// All `2^n` basis monomials.
    pub fn all_monomials(&self) -> impl Iterator<Item = u32> {
        0..=self.top_mask()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Polyvector,
    Form,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Polyvector => "polyvector",
            Variance::Form => "form",
        })
    }
}

/// A (possibly inhomogeneous) polyvector or form.
#[derive(Clone, PartialEq)]
pub struct ExteriorElement<T> {
    space: OddSpace,
    variance: Variance,
    terms: BTreeMap<u32, T>,
}

impl<T: Scalar> fmt::Debug for ExteriorElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let prefix = match self.variance {
            Variance::Polyvector => "e_",
            Variance::Form => "e^",
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let idx = mask_indices(*m);
                if idx.is_empty() {
                    format!("{c:?}")
                } else {
                    let mono: Vec<String> = idx.iter().map(|i| format!("{prefix}{i}")).collect();
                    format!("{c:?}·{}", mono.join("∧"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// 1-based indices of the bits set in `mask`, increasing.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Koszul sign of `m_a ∧ m_b` for disjoint sorted monomials: the parity of
/// the number of pairs `i ∈ a`, `j ∈ b` with `i > j`.
pub fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> j >> 1).count_ones();
    }
    Some(inversions % 2 == 1)
}

/// Number of factors of `mask` with index strictly below bit `bit`.
fn below(mask: u32, bit: u32) -> u32 {
    (mask & ((1u32 << bit) - 1)).count_ones()
}

impl<T: Scalar> ExteriorElement<T> {
    pub fn zero(space: OddSpace, variance: Variance) -> Self {
        Self { space, variance, terms: BTreeMap::new() }
    }

    pub fn one(space: OddSpace, variance: Variance) -> Self {
        Self::from_mask(space, variance, 0, T::one())
    }

    pub fn from_mask(space: OddSpace, variance: Variance, mask: u32, coeff: T) -> Self {
        assert!(mask & !space.top_mask() == 0, "monomial outside the space");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Self { space, variance, terms }
    }

    /// `coeff · e_{i1}∧…∧e_{ik}` (or the dual) from strictly increasing 1-based indices.
    pub fn monomial(space: OddSpace, variance: Variance, indices: &[usize], coeff: T) -> Result<Self, ExteriorError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExteriorError::UnsortedIndices);
        }
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > space.dim {
                return Err(ExteriorError::IndexOutOfRange { index: i, dim: space.dim });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Self::from_mask(space, variance, mask, coeff))
    }

    /// The product `x_{i1}∧…∧x_{ik}` for indices in any order (repeats give 0).
    pub fn word(space: OddSpace, variance: Variance, indices: &[usize]) -> Result<Self, ExteriorError> {
        let mut acc = Self::one(space, variance);
        for &i in indices {
            let g = Self::monomial(space, variance, &[i], T::one())?;
            acc = acc.wedge(&g)?;
        }
        Ok(acc)
    }

    pub fn top_form(space: OddSpace) -> Self {
        Self::from_mask(space, Variance::Form, space.top_mask(), T::one())
    }

    pub fn space(&self) -> OddSpace {
        self.space
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn terms(&self) -> &BTreeMap<u32, T> {
        &self.terms
    }

    pub fn coeff(&self, mask: u32) -> T {
        self.terms.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if homogeneous; zero counts as degree 0.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == degree)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Self { space: self.space, variance: self.variance, terms }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.space, self.variance);
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c.clone() * s.clone())).collect();
        Self { space: self.space, variance: self.variance, terms }
    }

    fn add_term(&mut self, mask: u32, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(T::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.space != other.space {
            return Err(ExteriorError::SpaceMismatch(self.space.dim, other.space.dim));
        }
        if self.variance != other.variance {
            return Err(ExteriorError::VarianceMismatch { expected: self.variance, found: other.variance });
        }
        Ok(())
    }

    fn expect_variance(&self, v: Variance) -> Result<(), ExteriorError> {
        if self.variance != v {
            return Err(ExteriorError::VarianceMismatch { expected: v, found: self.variance });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.space, self.variance);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(neg) = wedge_sign(*ma, *mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(ma | mb, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Contraction of a form by this polyvector, `self ⌟ β`.
    pub fn contract_into_form(&self, beta: &Self) -> Result<Self, ExteriorError> {
        contract_poly_into_form(self, beta)
    }
}

/// `e_i ⌟ e^J` on masks: `Some((negated, J \ i))` or `None` if `i ∉ J`.
fn vector_into_form(bit: u32, form: u32) -> Option<(bool, u32)> {
    if form >> bit & 1 == 0 {
        return None;
    }
    Some((below(form, bit) % 2 == 1, form & !(1 << bit)))
}

/// `e^j ⌟ e_I` on masks: the antiderivation with `e^j ⌟ e_j = −1`.
fn covector_into_poly(bit: u32, poly: u32) -> Option<(bool, u32)> {
    if poly >> bit & 1 == 0 {
        return None;
    }
    Some((below(poly, bit).is_multiple_of(2), poly & !(1 << bit)))
}

/// Contracts a monomial by a word of generators, innermost (last) generator first.
fn contract_monomial(word: u32, target: u32, single: fn(u32, u32) -> Option<(bool, u32)>) -> Option<(bool, u32)> {
    let mut neg = false;
    let mut cur = target;
    for bit in (0..32).rev().filter(|b| word >> b & 1 == 1) {
        let (s, next) = single(bit, cur)?;
        neg ^= s;
        cur = next;
    }
    Some((neg, cur))
}

fn contract_generic<T: Scalar>(
    acting: &ExteriorElement<T>,
    target: &ExteriorElement<T>,
    single: fn(u32, u32) -> Option<(bool, u32)>,
) -> ExteriorElement<T> {
    let mut out = ExteriorElement::zero(target.space, target.variance);
    for (w, cw) in &acting.terms {
        for (t, ct) in &target.terms {
            if w & !t != 0 {
                continue;
            }
            if let Some((neg, rest)) = contract_monomial(*w, *t, single) {
                let c = cw.clone() * ct.clone();
                out.add_term(rest, if neg { -c } else { c });
            }
        }
    }
    out
}

/// `w ⌟ β` for a polyvector `w` and a form `β`.
pub fn contract_poly_into_form<T: Scalar>(
    w: &ExteriorElement<T>,
    beta: &ExteriorElement<T>,
) -> Result<ExteriorElement<T>, ExteriorError> {
    if w.space != beta.space {
        return Err(ExteriorError::SpaceMismatch(w.space.dim, beta.space.dim));
    }
    w.expect_variance(Variance::Polyvector)?;
    beta.expect_variance(Variance::Form)?;
    Ok(contract_generic(w, beta, vector_into_form))
}

/// `β′ ⌟ w` for a form `β′` and a polyvector `w`.
pub fn contract_form_into_poly<T: Scalar>(
    beta: &ExteriorElement<T>,
    w: &ExteriorElement<T>,
) -> Result<ExteriorElement<T>, ExteriorError> {
    if w.space != beta.space {
        return Err(ExteriorError::SpaceMismatch(beta.space.dim, w.space.dim));
    }
    beta.expect_variance(Variance::Form)?;
    w.expect_variance(Variance::Polyvector)?;
    Ok(contract_generic(beta, w, covector_into_poly))
}

/// Checks `(−1)^ℓ (β′⌟w)⌟β = β′∧(w⌟β)` for a top-degree form `β` and a
/// homogeneous form `β′` of degree `ℓ`.
pub fn check_innermax<T: Scalar>(
    space: OddSpace,
    beta: &ExteriorElement<T>,
    beta_prime: &ExteriorElement<T>,
    w: &ExteriorElement<T>,
) -> Result<bool, ExteriorError> {
    let (lhs, rhs) = innermax_sides(space, beta, beta_prime, w)?;
    Ok(lhs == rhs)
}

/// Both sides of the identity checked by [`check_innermax`].
pub fn innermax_sides<T: Scalar>(
    space: OddSpace,
    beta: &ExteriorElement<T>,
    beta_prime: &ExteriorElement<T>,
    w: &ExteriorElement<T>,
) -> Result<(ExteriorElement<T>, ExteriorElement<T>), ExteriorError> {
    for x in [beta, beta_prime, w] {
        if x.space != space {
            return Err(ExteriorError::SpaceMismatch(space.dim, x.space.dim));
        }
    }
    beta.expect_variance(Variance::Form)?;
    if beta.is_zero() || beta.terms.keys().any(|m| *m != space.top_mask()) {
        return Err(ExteriorError::NotTopDegree { dim: space.dim });
    }
    let ell = beta_prime.homogeneous_degree().ok_or(ExteriorError::NotHomogeneous)?;
    let inner = contract_form_into_poly(beta_prime, w)?;
    let mut lhs = contract_poly_into_form(&inner, beta)?;
    if ell % 2 == 1 {
        lhs = -lhs;
    }
    let rhs = beta_prime.wedge(&contract_poly_into_form(w, beta)?)?;
    Ok((lhs, rhs))
}

/// A monomial pair on which the identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnermaxCounterexample {
    pub dim: usize,
    pub beta_prime: Vec<usize>,
    pub w: Vec<usize>,
}

/// Runs [`check_innermax`] on every pair of basis monomials `(β′, w)` with
/// `β` the top form. Returns the number of pairs checked.
pub fn innermax_exhaustive<T: Scalar>(dim: usize) -> Result<Result<usize, InnermaxCounterexample>, ExteriorError> {
    let space = OddSpace::new(dim)?;
    let beta = ExteriorElement::<T>::top_form(space);
    let mut count = 0;
    for bp in space.all_monomials() {
        let beta_prime = ExteriorElement::from_mask(space, Variance::Form, bp, T::one());
        for wm in space.all_monomials() {
            let w = ExteriorElement::from_mask(space, Variance::Polyvector, wm, T::one());
            if !check_innermax(space, &beta, &beta_prime, &w)? {
                return Ok(Err(InnermaxCounterexample { dim, beta_prime: mask_indices(bp), w: mask_indices(wm) }));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

impl<T: Scalar> Add for &ExteriorElement<T> {
    type Output = ExteriorElement<T>;
    fn add(self, rhs: Self) -> ExteriorElement<T> {
        self.try_add(rhs).expect("adding incompatible exterior elements")
    }
}

impl<T: Scalar> Sub for &ExteriorElement<T> {
    type Output = ExteriorElement<T>;
    fn sub(self, rhs: Self) -> ExteriorElement<T> {
        self.try_add(&-rhs).expect("subtracting incompatible exterior elements")
    }
}

impl<T: Scalar> Neg for ExteriorElement<T> {
    type Output = ExteriorElement<T>;
    fn neg(mut self) -> ExteriorElement<T> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<T: Scalar> Neg for &ExteriorElement<T> {
    type Output = ExteriorElement<T>;
    fn neg(self) -> ExteriorElement<T> {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    type E = ExteriorElement<Q>;

    fn sp(n: usize) -> OddSpace {
        OddSpace::new(n).unwrap()
    }

    fn form(n: usize, idx: &[usize]) -> E {
        E::word(sp(n), Variance::Form, idx).unwrap()
    }

    fn poly(n: usize, idx: &[usize]) -> E {
        E::word(sp(n), Variance::Polyvector, idx).unwrap()
    }

    /// Hand-rule oracle on index sequences: `e_i ⌟ (e^{j1}…e^{jq}) = Σ_t (−1)^{t−1} δ …`.
    fn oracle_vector_into_seq(i: usize, seq: &[usize]) -> Vec<(i64, Vec<usize>)> {
        seq.iter()
            .enumerate()
            .filter(|(_, &j)| j == i)
            .map(|(t, _)| {
                let mut rest = seq.to_vec();
                rest.remove(t);
                (if t % 2 == 0 { 1 } else { -1 }, rest)
            })
            .collect()
    }

    /// Sorts an index sequence, returning the sign of the permutation or 0 on repeats.
    fn oracle_sort(seq: &[usize]) -> (i64, Vec<usize>) {
        let mut v = seq.to_vec();
        let mut sign = 1;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] == v[j + 1] {
                    return (0, v);
                }
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return (0, v);
        }
        (sign, v)
    }

    /// Full oracle for `w ⌟ β` on single monomial sequences, nesting vectors
    /// last-to-first.
    fn oracle_contract(n: usize, w: &[usize], beta: &[usize]) -> E {
        let mut states: Vec<(i64, Vec<usize>)> = vec![(1, beta.to_vec())];
        for &i in w.iter().rev() {
            states = states
                .into_iter()
                .flat_map(|(s, seq)| oracle_vector_into_seq(i, &seq).into_iter().map(move |(t, r)| (s * t, r)))
                .collect();
        }
        let mut out = E::zero(sp(n), Variance::Form);
        for (s, seq) in states {
            let (t, sorted) = oracle_sort(&seq);
            if t != 0 {
                out = &out + &E::monomial(sp(n), Variance::Form, &sorted, qi(s * t)).unwrap();
            }
        }
        out
    }

    #[test]
    fn wedge_examples() {
        assert!(form(2, &[1]).wedge(&form(2, &[1])).unwrap().is_zero());
        assert_eq!(form(2, &[2]).wedge(&form(2, &[1])).unwrap(), -form(2, &[1, 2]));
        assert_eq!(form(4, &[1, 2]).wedge(&form(4, &[3, 4])).unwrap(), form(4, &[1, 2, 3, 4]));
    }

    #[test]
    fn wedge_rejects_mismatch() {
        assert!(matches!(form(2, &[1]).wedge(&poly(2, &[1])), Err(ExteriorError::VarianceMismatch { .. })));
        assert!(matches!(form(2, &[1]).wedge(&form(3, &[1])), Err(ExteriorError::SpaceMismatch(2, 3))));
    }

    #[test]
    fn poly_into_form_examples() {
        let c = |w: &E, b: &E| contract_poly_into_form(w, b).unwrap();
        assert_eq!(c(&poly(2, &[1]), &form(2, &[1, 2])), form(2, &[2]));
        assert_eq!(c(&poly(2, &[2, 1]), &form(2, &[1, 2])), E::one(sp(2), Variance::Form));
        assert!(c(&poly(2, &[1]), &E::one(sp(2), Variance::Form)).is_zero());
        assert_eq!(oracle_contract(2, &[2, 1], &[1, 2]), E::one(sp(2), Variance::Form));
    }

    #[test]
    fn form_into_poly_examples() {
        let c = |b: &E, w: &E| contract_form_into_poly(b, w).unwrap();
        assert_eq!(c(&form(2, &[2]), &poly(2, &[2, 1])), -poly(2, &[1]));
        assert_eq!(c(&form(2, &[1]), &poly(2, &[1])), -E::one(sp(2), Variance::Polyvector));
        let w = &poly(3, &[1, 3]) + &poly(3, &[2]);
        assert_eq!(c(&E::one(sp(3), Variance::Form), &w), w);
    }

    #[test]
    fn innermax_worked_instance() {
        let s = sp(2);
        let (lhs, rhs) = innermax_sides(s, &E::top_form(s), &form(2, &[2]), &poly(2, &[2, 1])).unwrap();
        assert_eq!(lhs, form(2, &[2]));
        assert_eq!(rhs, form(2, &[2]));
    }

    #[test]
    fn innermax_trivial_beta_prime() {
        let s = sp(3);
        let one = E::one(s, Variance::Form);
        for m in s.all_monomials() {
            let w = E::from_mask(s, Variance::Polyvector, m, qi(1));
            assert!(check_innermax(s, &E::top_form(s), &one, &w).unwrap());
        }
    }

    #[test]
    fn innermax_requires_top_form() {
        let s = sp(2);
        let err = check_innermax(s, &form(2, &[1]), &form(2, &[1]), &poly(2, &[1]));
        assert_eq!(err, Err(ExteriorError::NotTopDegree { dim: 2 }));
    }

    #[test]
    fn innermax_exhaustive_small() {
        for n in 1..=4 {
            assert_eq!(innermax_exhaustive::<Q>(n).unwrap(), Ok(1 << (2 * n)));
        }
    }

    #[test]
    fn contraction_matches_oracle_exhaustively() {
        let n = 4;
        let s = sp(n);
        for wm in s.all_monomials() {
            for bm in s.all_monomials() {
                let w = E::from_mask(s, Variance::Polyvector, wm, qi(1));
                let b = E::from_mask(s, Variance::Form, bm, qi(1));
                assert_eq!(
                    contract_poly_into_form(&w, &b).unwrap(),
                    oracle_contract(n, &mask_indices(wm), &mask_indices(bm))
                );
            }
        }
    }

    #[test]
    fn wedge_associative_and_graded_commutative() {
        let n = 5;
        let s = sp(n);
        let mono = |v, m| E::from_mask(s, v, m, qi(1));
        for a in s.all_monomials() {
            for b in s.all_monomials() {
                let (x, y) = (mono(Variance::Form, a), mono(Variance::Form, b));
                let xy = x.wedge(&y).unwrap();
                let yx = y.wedge(&x).unwrap();
                let parity = (a.count_ones() * b.count_ones()) % 2;
                assert_eq!(xy, if parity == 1 { -yx } else { yx });
            }
        }
        // Associativity on a spread of triples; the full 2^15 sweep runs in the integration tests.
        for a in (0..32u32).step_by(3) {
            for b in (0..32u32).step_by(5) {
                for c in (0..32u32).step_by(7) {
                    let (x, y, z) = (mono(Variance::Form, a), mono(Variance::Form, b), mono(Variance::Form, c));
                    assert_eq!(
                        x.wedge(&y).unwrap().wedge(&z).unwrap(),
                        x.wedge(&y.wedge(&z).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn degree_one_graded_symmetry() {
        let n = 4;
        for i in 1..=n {
            for j in 1..=n {
                let lhs = contract_poly_into_form(&poly(n, &[i]), &form(n, &[j])).unwrap();
                let rhs = contract_form_into_poly(&form(n, &[j]), &poly(n, &[i])).unwrap();
                let expected = if i == j { qi(1) } else { qi(0) };
                assert_eq!(lhs.coeff(0), expected);
                assert_eq!(rhs.coeff(0), -expected);
            }
        }
    }

    #[test]
    fn contraction_is_module_action() {
        let n = 4;
        let s = sp(n);
        for u in s.all_monomials() {
            for v in s.all_monomials() {
                let uu = E::from_mask(s, Variance::Polyvector, u, qi(1));
                let vv = E::from_mask(s, Variance::Polyvector, v, qi(1));
                let uv = uu.wedge(&vv).unwrap();
                for b in s.all_monomials().step_by(3) {
                    let beta = E::from_mask(s, Variance::Form, b, qi(1));
                    let lhs = contract_poly_into_form(&uv, &beta).unwrap();
                    let rhs =
                        contract_poly_into_form(&uu, &contract_poly_into_form(&vv, &beta).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
