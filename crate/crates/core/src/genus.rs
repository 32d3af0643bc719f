//! Truncated power series in Chern roots: the Â and Todd genera, square
//! roots, `exp(λ c₁)`, and rewriting symmetric series in elementary classes.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{factorial, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenusError {
    #[error("series must have constant term 1")]
    ConstantTermNotOne,
    #[error("univariate series known to degree {have}, need {need}")]
    SeriesTooShort { have: usize, need: usize },
    #[error("series shapes differ: ({0} roots, degree {1}) vs ({2} roots, degree {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("series is not symmetric in the roots")]
    NotSymmetric,
    #[error("division by a series with zero constant term")]
    NotInvertible,
    #[error("unknown genus name {0:?}")]
    UnknownName(String),
}

/// Coefficients `a_0, a_1, …, a_D` of a truncated series in one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Univariate<T>(pub Vec<T>);

impl<T: Scalar> Univariate<T> {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.0.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, d: usize) -> Self {
        Self((0..=d).map(|k| self.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self, d: usize) -> Self {
        let mut out = vec![T::zero(); d + 1];
        for (i, a) in self.0.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(d + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self(out)
    }

    /// `self / other` to degree `d` by long division from the constant term.
    pub fn div(&self, other: &Self, d: usize) -> Result<Self, GenusError> {
        let b0 = other.coeff(0);
        if b0.is_zero() {
            return Err(GenusError::NotInvertible);
        }
        let mut q: Vec<T> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut r = self.coeff(k);
            for (i, qi) in q.iter().enumerate() {
                r = r - qi.clone() * other.coeff(k - i);
            }
            q.push(r / b0.clone());
        }
        Ok(Self(q))
    }
}

/// `exp(λx)` to degree `d`.
pub fn exp_univariate<T: Scalar>(lambda: &T, d: usize) -> Univariate<T> {
    Univariate((0..=d).map(|k| lambda.pow_u(k as u32) / factorial::<T>(k)).collect())
}

/// `x / (e^{x/2} − e^{−x/2})` to degree `d`, by exact division.
pub fn ahat_univariate<T: Scalar>(d: usize) -> Univariate<T> {
    // (e^{x/2} − e^{−x/2}) / x = Σ_k [odd k+1] 2 (1/2)^{k+1} x^k / (k+1)!
    let half = T::from_ratio(1, 2);
    let den = Univariate(
        (0..=d)
            .map(|k| {
                if (k + 1) % 2 == 1 {
                    T::from_int(2) * half.pow_u(k as u32 + 1) / factorial::<T>(k + 1)
                } else {
                    T::zero()
                }
            })
            .collect(),
    );
    Univariate(vec![T::one()]).div(&den, d).expect("constant term is 1")
}

/// `x / (1 − e^{−x})` to degree `d`, by exact division.
pub fn todd_univariate<T: Scalar>(d: usize) -> Univariate<T> {
    // (1 − e^{−x}) / x = Σ_k (−1)^k x^k / (k+1)!
    let den = Univariate(
        (0..=d)
            .map(|k| {
                let c = T::one() / factorial::<T>(k + 1);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect(),
    );
    Univariate(vec![T::one()]).div(&den, d).expect("constant term is 1")
}

/// Named defining series accepted by the command line.
pub fn named_univariate<T: Scalar>(name: &str, d: usize) -> Result<Univariate<T>, GenusError> {
    match name {
        "ahat" => Ok(ahat_univariate(d)),
        "td" | "todd" => Ok(todd_univariate(d)),
        "exp_half" => Ok(exp_univariate(&T::from_ratio(1, 2), d)),
        _ => Err(GenusError::UnknownName(name.to_string())),
    }
}

/// A truncated power series in `r` Chern roots `x_1..x_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenusSeries<T> {
    roots: usize,
    max_degree: usize,
    terms: BTreeMap<Vec<u32>, T>,
    symmetric: bool,
}

impl<T: Scalar> GenusSeries<T> {
    pub fn constant(c: T, roots: usize, max_degree: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; roots], c);
        }
        Self { roots, max_degree, terms, symmetric: true }
    }

    /// Builds a series from explicit terms; the symmetric flag is computed.
    pub fn from_terms(roots: usize, max_degree: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut out = Self { roots, max_degree, terms: BTreeMap::new(), symmetric: false };
        for (e, c) in terms {
            assert_eq!(e.len(), roots, "exponent length must equal the number of roots");
            out.add_term(e, c);
        }
        out.symmetric = out.compute_symmetric();
        out
    }

    pub fn roots(&self) -> usize {
        self.roots
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.terms
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: T) {
        if c.is_zero() || exps.iter().sum::<u32>() as usize > self.max_degree {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(T::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn compute_symmetric(&self) -> bool {
        (0..self.roots.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.coeff(&s) == *c
            })
        })
    }

    fn check_shape(&self, other: &Self) -> Result<(), GenusError> {
        if self.roots != other.roots || self.max_degree != other.max_degree {
            return Err(GenusError::ShapeMismatch(self.roots, self.max_degree, other.roots, other.max_degree));
        }
        Ok(())
    }

    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.max_degree);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() as usize <= d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { roots: self.roots, max_degree: d, terms, symmetric: self.symmetric }
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() as usize == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { roots: self.roots, max_degree: self.max_degree, terms, symmetric: self.symmetric }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GenusError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out.symmetric = self.symmetric && other.symmetric;
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self, GenusError> {
        self.check_shape(other)?;
        let mut out = Self { roots: self.roots, max_degree: self.max_degree, terms: BTreeMap::new(), symmetric: false };
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if (da + eb.iter().sum::<u32>()) as usize > self.max_degree {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out.symmetric = (self.symmetric && other.symmetric) || out.compute_symmetric();
        Ok(out)
    }

    /// The unique square root with constant term 1, solved degree by degree:
    /// `2 s_0 s_d = a_d − Σ_{0<i<d} s_i s_{d−i}`.
    pub fn sqrt(&self) -> Result<Self, GenusError> {
        if !self.coeff(&vec![0; self.roots]).is_one() {
            return Err(GenusError::ConstantTermNotOne);
        }
        let two = T::from_int(2);
        let mut s = Self::constant(T::one(), self.roots, self.max_degree);
        for d in 1..=self.max_degree {
            // s_{<d} is already final, so (s_{<d})² in degree d is the cross-term sum.
            let known = s.truncate(d - 1);
            let known = Self { max_degree: self.max_degree, ..known };
            let sq = known.mul(&known)?.component(d);
            let target = self.component(d);
            for (e, c) in target.terms.iter() {
                s.add_term(e.clone(), c.clone() / two.clone());
            }
            for (e, c) in sq.terms.iter() {
                s.add_term(e.clone(), -(c.clone() / two.clone()));
            }
        }
        s.symmetric = self.symmetric || s.compute_symmetric();
        Ok(s)
    }
}

/// `Π_{i=1..r} f(x_i)` truncated at total degree `d`.
pub fn genus_from_univariate<T: Scalar>(f: &Univariate<T>, roots: usize, d: usize) -> Result<GenusSeries<T>, GenusError> {
    if !f.coeff(0).is_one() {
        return Err(GenusError::ConstantTermNotOne);
    }
    if f.0.len() < d + 1 && f.0.len() > 1 {
        return Err(GenusError::SeriesTooShort { have: f.degree(), need: d });
    }
    let mut acc = GenusSeries::constant(T::one(), roots, d);
    for i in 0..roots {
        let factor = GenusSeries::from_terms(
            roots,
            d,
            (0..=d).map(|k| {
                let mut e = vec![0u32; roots];
                e[i] = k as u32;
                (e, f.coeff(k))
            }),
        );
        acc = acc.mul(&factor)?;
    }
    acc.symmetric = true;
    Ok(acc)
}

/// `exp(λ · (x_1 + … + x_r))` truncated at degree `d`.
pub fn series_exp_linear<T: Scalar>(lambda: &T, roots: usize, d: usize) -> GenusSeries<T> {
    genus_from_univariate(&exp_univariate(lambda, d), roots, d).expect("exp has constant term 1")
}

pub fn ahat<T: Scalar>(roots: usize, d: usize) -> GenusSeries<T> {
    genus_from_univariate(&ahat_univariate(d), roots, d).expect("constant term 1")
}

pub fn todd<T: Scalar>(roots: usize, d: usize) -> GenusSeries<T> {
    genus_from_univariate(&todd_univariate(d), roots, d).expect("constant term 1")
}

/// Whether `td = exp(c₁/2) · Â` holds to degree `d` in `r` roots.
pub fn check_todd_relation<T: Scalar>(roots: usize, d: usize) -> bool {
    let lhs = todd::<T>(roots, d);
    let rhs = series_exp_linear(&T::from_ratio(1, 2), roots, d).mul(&ahat(roots, d)).expect("same shape");
    lhs == rhs
}

/// A polynomial in Chern classes `c_1..c_r`: exponent vectors of the `c_i`
/// mapped to coefficients. `deg c_i = i`.
pub type ChernPolynomial<T> = BTreeMap<Vec<u32>, T>;

/// Rewrites a symmetric series as a polynomial in the elementary symmetric
/// functions of the roots, by repeatedly cancelling the lexicographically
/// leading monomial.
pub fn to_elementary_basis<T: Scalar>(s: &GenusSeries<T>) -> Result<ChernPolynomial<T>, GenusError> {
    if !s.symmetric || !s.compute_symmetric() {
        return Err(GenusError::NotSymmetric);
    }
    let r = s.roots;
    let elementary: Vec<GenusSeries<T>> = (1..=r).map(|k| elementary_symmetric(k, r, s.max_degree)).collect();
    let mut rest = s.clone();
    let mut out = ChernPolynomial::new();
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        // For symmetric input the lex-largest exponent is nonincreasing.
        debug_assert!(lead.windows(2).all(|w| w[0] >= w[1]));
        let chern: Vec<u32> = (0..r).map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0)).collect();
        let mut prod = GenusSeries::constant(c.clone(), r, s.max_degree);
        for (k, &p) in chern.iter().enumerate() {
            for _ in 0..p {
                prod = prod.mul(&elementary[k])?;
            }
        }
        rest = rest.add(&prod.scale(&-T::one()))?;
        let e = out.entry(chern).or_insert_with(T::zero);
        *e = e.clone() + c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `e_k(x_1..x_r)` as a series.
pub fn elementary_symmetric<T: Scalar>(k: usize, roots: usize, d: usize) -> GenusSeries<T> {
    let terms = (0u32..(1 << roots)).filter(|m| m.count_ones() as usize == k).map(|m| {
        let e: Vec<u32> = (0..roots).map(|i| m >> i & 1).collect();
        (e, T::one())
    });
    GenusSeries::from_terms(roots, d, terms)
}

/// Evaluates a Chern polynomial back to a root series (the inverse of
/// [`to_elementary_basis`]).
pub fn chern_to_roots<T: Scalar>(p: &ChernPolynomial<T>, roots: usize, d: usize) -> GenusSeries<T> {
    let elementary: Vec<GenusSeries<T>> = (1..=roots).map(|k| elementary_symmetric(k, roots, d)).collect();
    let mut acc = GenusSeries::constant(T::zero(), roots, d);
    for (exps, c) in p {
        let mut prod = GenusSeries::constant(c.clone(), roots, d);
        for (k, &pw) in exps.iter().enumerate() {
            for _ in 0..pw {
                prod = prod.mul(&elementary[k]).expect("same shape");
            }
        }
        acc = acc.add(&prod).expect("same shape");
    }
    acc
}
