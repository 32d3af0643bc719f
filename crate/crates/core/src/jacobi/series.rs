use std::collections::BTreeMap;

use super::diagram::JacobiDiagram;
use crate::scalar::Scalar;

/// A rational combination of Jacobi diagrams of degree at most
/// `max_degree`, keyed by canonical representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSeries<T> {
    max_degree: usize,
    terms: BTreeMap<JacobiDiagram, T>,
}

impl<T: Scalar> DiagramSeries<T> {
    pub fn zero(max_degree: usize) -> Self {
        Self { max_degree, terms: BTreeMap::new() }
    }

    /// The empty diagram with coefficient 1.
    pub fn one(max_degree: usize) -> Self {
        Self::single(JacobiDiagram::empty(), max_degree)
    }

    pub fn single(diagram: JacobiDiagram, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.add_term(&diagram, T::one());
        s
    }

    pub fn from_terms(max_degree: usize, terms: impl IntoIterator<Item = (JacobiDiagram, T)>) -> Self {
        let mut s = Self::zero(max_degree);
        for (d, c) in terms {
            s.add_term(&d, c);
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Adds `coeff · diagram`, dropping it beyond the truncation degree.
    pub fn add_term(&mut self, diagram: &JacobiDiagram, coeff: T) {
        if diagram.degree() > self.max_degree || coeff.is_zero() {
            return;
        }
        let key = diagram.canonical();
        let slot = self.terms.entry(key.clone()).or_insert_with(T::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, diagram: &JacobiDiagram) -> T {
        self.terms.get(&diagram.canonical()).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JacobiDiagram, &T)> {
        self.terms.iter()
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

    pub fn coefficient_sum(&self) -> T {
        self.terms.values().fold(T::zero(), |a, c| a + c.clone())
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_terms(max_degree, self.terms.iter().map(|(d, c)| (d.clone(), c.clone())))
    }

    /// The homogeneous part of the given degree.
    pub fn degree_part(&self, degree: usize) -> Self {
        Self {
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.degree() == degree)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_terms(self.max_degree, self.terms.iter().map(|(d, c)| (d.clone(), c.clone() * s.clone())))
    }

    /// Sum, truncated at the smaller of the two degrees.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.max_degree.min(other.max_degree));
        for (d, c) in &other.terms {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }
}
