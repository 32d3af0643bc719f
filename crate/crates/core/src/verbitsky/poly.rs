//! Homogeneous polynomials in a fixed number of variables.

use std::collections::{BTreeMap, HashMap};

use crate::linalg::Matrix;
use crate::scalar::{factorial, Scalar};

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// descending lexicographic order (so `x_1^degree` comes first).
pub fn monomials(nvars: usize, degree: usize) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree as u32, &mut Vec::new(), &mut out);
    out
}

/// Position lookup for a monomial list.
pub fn monomial_index(list: &[Vec<u32>]) -> HashMap<Vec<u32>, usize> {
    list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `d! / Π m_i!`.
pub fn multinomial<T: Scalar>(m: &[u32]) -> T {
    let d: u32 = m.iter().sum();
    m.iter().fold(factorial::<T>(d as usize), |acc, &e| acc / factorial::<T>(e as usize))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomPoly<T> {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> HomPoly<T> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], T::one())
    }

    pub fn monomial(exps: Vec<u32>, c: T) -> Self {
        let nvars = exps.len();
        let degree = exps.iter().sum::<u32>() as usize;
        let mut p = Self::zero(nvars, degree);
        p.add_term(exps, c);
        p
    }

    /// The linear form `Σ a_i x_i`.
    pub fn linear(a: &[T]) -> Self {
        let mut p = Self::zero(a.len(), 1);
        for (i, c) in a.iter().enumerate() {
            let mut e = vec![0; a.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// The quadratic form `xᵀ G x`.
    pub fn quadratic(gram: &Matrix<T>) -> Self {
        let b = gram.rows();
        let mut p = Self::zero(b, 2);
        for i in 0..b {
            for j in 0..b {
                let mut e = vec![0; b];
                e[i] += 1;
                e[j] += 1;
                p.add_term(e, gram[(i, j)].clone());
            }
        }
        p
    }

    /// Builds a polynomial from a coefficient vector over [`monomials`].
    pub fn from_coords(nvars: usize, degree: usize, coords: &[T]) -> Self {
        let mons = monomials(nvars, degree);
        assert_eq!(mons.len(), coords.len());
        let mut p = Self::zero(nvars, degree);
        for (m, c) in mons.into_iter().zip(coords) {
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn to_coords(&self, index: &HashMap<Vec<u32>, usize>) -> Vec<T> {
        let mut v = vec![T::zero(); index.len()];
        for (m, c) in &self.terms {
            v[index[m]] = c.clone();
        }
        v
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    fn add_term(&mut self, m: Vec<u32>, c: T) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.iter().sum::<u32>() as usize, self.degree);
        let e = self.terms.entry(m.clone()).or_insert_with(T::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree), "adding polynomials of different shape");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let v = m.iter().zip(x).fold(c.clone(), |p, (&e, xi)| p * xi.pow_u(e));
            acc + v
        })
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            out.add_term(e, c.clone() * T::from_int(m[i] as i64));
        }
        out
    }

    /// `Σ_{ij} h_ij ∂_i ∂_j`.
    pub fn laplacian(&self, h: &Matrix<T>) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(2));
        if self.degree < 2 {
            return out;
        }
        for i in 0..self.nvars {
            let di = self.partial(i);
            for j in 0..self.nvars {
                if !h[(i, j)].is_zero() {
                    out = out.add(&di.partial(j).scale(&h[(i, j)]));
                }
            }
        }
        out
    }

    /// Linear change of variables `x_i ↦ Σ_j m_ji x_j`, i.e. the action of
    /// the matrix `m` on the underlying vector space when `x_i` is the
    /// basis vector `e_i`.
    pub fn substitute(&self, m: &Matrix<T>) -> Self {
        let images: Vec<Self> = (0..self.nvars).map(|i| Self::linear(&m.column(i))).collect();
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let mut term = Self::one(self.nvars).scale(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&images[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn laplacian_of_isotropic_power_vanishes() {
        let g = Matrix::from_rows(vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(-1)]]);
        let a = HomPoly::linear(&[qi(3), qi(4), qi(5)]);
        assert!(a.pow(3).laplacian(&g).is_zero());
        let b = HomPoly::linear(&[qi(1), qi(0), qi(0)]);
        assert!(!b.pow(2).laplacian(&g).is_zero());
    }

    #[test]
    fn eval_matches_power_of_linear_form() {
        let a = [qi(1), qi(-2), qi(3)];
        let p = HomPoly::<Q>::linear(&a).pow(4);
        assert_eq!(p.eval(&[qi(1), qi(1), qi(1)]), qi(16));
        assert_eq!(multinomial::<Q>(&[2, 1, 1]), qi(12));
    }
}
