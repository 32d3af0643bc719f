//! `sl2` triples on weight-graded spaces: completing `L` to `(L, H, Λ)`,
//! primitive decompositions, and joint annihilators.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{joint_kernel, Matrix};
use crate::scalar::Scalar;
use crate::verbitsky::{VElement, VerbitskyAlgebra, VerbitskyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error("operator {name} is {rows}x{cols}, space has dimension {dim}")]
    DimensionMismatch { name: String, rows: usize, cols: usize, dim: usize },
    #[error("operator {name} does not shift weights by {shift}")]
    NotHomogeneous { name: String, shift: i64 },
    #[error("no Λ with [L,Λ] = H and [H,Λ] = −2Λ exists")]
    NoSolution,
    #[error("Λ is not unique: the homogeneous system has a {0}-dimensional kernel")]
    NotUnique(usize),
    #[error(transparent)]
    Verbitsky(#[from] VerbitskyError),
}

/// A finite-dimensional space with a weight attached to each basis vector and
/// a collection of named homogeneous operators.
#[derive(Debug, Clone)]
pub struct GradedOperatorSpace<T> {
    weights: Vec<i64>,
    operators: BTreeMap<String, (Matrix<T>, i64)>,
}

impl<T: Scalar> GradedOperatorSpace<T> {
    /// Basis vectors laid out block by block, `(weight, dimension)` per block.
    pub fn from_components(components: &[(i64, usize)]) -> Self {
        let weights = components.iter().flat_map(|&(w, d)| std::iter::repeat_n(w, d)).collect();
        Self { weights, operators: BTreeMap::new() }
    }

    pub fn from_weights(weights: Vec<i64>) -> Self {
        Self { weights, operators: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Basis positions of weight `j`.
    pub fn indices_of_weight(&self, j: i64) -> Vec<usize> {
        self.weights.iter().enumerate().filter(|(_, &w)| w == j).map(|(i, _)| i).collect()
    }

    pub fn distinct_weights(&self) -> Vec<i64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The diagonal operator acting by the weight.
    pub fn grading(&self) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| if i == j { T::from_int(self.weights[i]) } else { T::zero() })
    }

    /// Whether `m` sends weight `w` to weight `w + shift`.
    pub fn is_homogeneous(&self, m: &Matrix<T>, shift: i64) -> bool {
        (0..m.rows()).all(|r| (0..m.cols()).all(|c| m[(r, c)].is_zero() || self.weights[r] == self.weights[c] + shift))
    }

    pub fn add_operator(&mut self, name: &str, m: Matrix<T>, shift: i64) -> Result<(), LefschetzError> {
        self.check_square(name, &m)?;
        if !self.is_homogeneous(&m, shift) {
            return Err(LefschetzError::NotHomogeneous { name: name.to_string(), shift });
        }
        self.operators.insert(name.to_string(), (m, shift));
        Ok(())
    }

    pub fn operator(&self, name: &str) -> Option<&Matrix<T>> {
        self.operators.get(name).map(|(m, _)| m)
    }

    pub fn operators(&self) -> impl Iterator<Item = (&str, &Matrix<T>, i64)> {
        self.operators.iter().map(|(k, (m, s))| (k.as_str(), m, *s))
    }

    fn check_square(&self, name: &str, m: &Matrix<T>) -> Result<(), LefschetzError> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(LefschetzError::DimensionMismatch {
                name: name.to_string(),
                rows: m.rows(),
                cols: m.cols(),
                dim: self.dim(),
            });
        }
        Ok(())
    }

    /// Embeds a vector given on the weight-`j` block into the full space.
    fn embed(&self, j: i64, v: &[T]) -> Vec<T> {
        let idx = self.indices_of_weight(j);
        let mut out = vec![T::zero(); self.dim()];
        for (&i, x) in idx.iter().zip(v) {
            out[i] = x.clone();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple<T> {
    pub l: Matrix<T>,
    pub h: Matrix<T>,
    pub lambda: Matrix<T>,
}

impl<T: Scalar> Sl2Triple<T> {
    /// `[H,L] = 2L`, `[H,Λ] = −2Λ`, `[L,Λ] = H`.
    pub fn brackets_hold(&self) -> bool {
        let two = T::from_int(2);
        self.h.commutator(&self.l) == self.l.scale(&two)
            && self.h.commutator(&self.lambda) == self.lambda.scale(&-two)
            && self.l.commutator(&self.lambda) == self.h
    }
}

/// Coefficient matrix and right-hand side of the system for `Λ` (unknowns
/// `Λ_ij` at position `i·N + j`).
fn sl2_system<T: Scalar>(l: &Matrix<T>, weights: &[i64]) -> (Matrix<T>, Vec<T>) {
    let n = l.rows();
    let mut rows = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    // (LΛ − ΛL)_ij = H_ij
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![T::zero(); n * n];
            for k in 0..n {
                if !l[(i, k)].is_zero() {
                    row[k * n + j] = row[k * n + j].clone() + l[(i, k)].clone();
                }
                if !l[(k, j)].is_zero() {
                    row[i * n + k] = row[i * n + k].clone() - l[(k, j)].clone();
                }
            }
            rows.push(row);
            rhs.push(if i == j { T::from_int(weights[i]) } else { T::zero() });
        }
    }
    // (HΛ − ΛH + 2Λ)_ij = (w_i − w_j + 2) Λ_ij = 0
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![T::zero(); n * n];
            row[i * n + j] = T::from_int(weights[i] - weights[j] + 2);
            rows.push(row);
            rhs.push(T::zero());
        }
    }
    (Matrix::from_rows(rows), rhs)
}

fn solve_in_order<T: Scalar>(a: &Matrix<T>, b: &[T], order: &[usize]) -> Option<Vec<T>> {
    let cols = a.cols();
    let aug = a.hstack(&Matrix::from_columns(a.rows(), &[b.to_vec()]));
    let mut full_order = order.to_vec();
    full_order.push(cols);
    let e = aug.rref_with_order(&full_order);
    if e.pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &c) in e.pivots.iter().enumerate() {
        x[c] = e.reduced[(r, cols)].clone();
    }
    Some(x)
}

/// Completes a weight-raising `L` to an `sl2` triple, with `H` the grading
/// of `space`. Solves the full linear system for `Λ` twice with opposite
/// pivot orders and requires both solutions to agree.
pub fn complete_sl2<T: Scalar>(space: &GradedOperatorSpace<T>, l: &Matrix<T>) -> Result<Sl2Triple<T>, LefschetzError> {
    space.check_square("L", l)?;
    if !space.is_homogeneous(l, 2) {
        return Err(LefschetzError::NotHomogeneous { name: "L".to_string(), shift: 2 });
    }
    let n = space.dim();
    let (a, b) = sl2_system(l, space.weights());
    let forward: Vec<usize> = (0..n * n).collect();
    let backward: Vec<usize> = (0..n * n).rev().collect();
    let x1 = solve_in_order(&a, &b, &forward).ok_or(LefschetzError::NoSolution)?;
    let x2 = solve_in_order(&a, &b, &backward).ok_or(LefschetzError::NoSolution)?;
    let rank = a.rank();
    if x1 != x2 || rank < n * n {
        return Err(LefschetzError::NotUnique(n * n - rank));
    }
    let lambda = Matrix::from_fn(n, n, |i, j| x1[i * n + j].clone());
    let triple = Sl2Triple { l: l.clone(), h: space.grading(), lambda };
    debug_assert!(triple.brackets_hold());
    Ok(triple)
}

/// Whether `L^j` maps weight `−j` bijectively onto weight `j` for all `j > 0`.
pub fn hard_lefschetz_holds<T: Scalar>(space: &GradedOperatorSpace<T>, l: &Matrix<T>) -> bool {
    space.distinct_weights().into_iter().filter(|&j| j > 0).all(|j| {
        let src = space.indices_of_weight(-j);
        let dst = space.indices_of_weight(j);
        if src.len() != dst.len() {
            return false;
        }
        let lj = l.pow(j as u32);
        lj.select(&dst, &src).rank() == src.len()
    })
}

/// Basis of `ker Λ` in weight `j`, as vectors of the full space.
pub fn primitive_decomposition<T: Scalar>(space: &GradedOperatorSpace<T>, t: &Sl2Triple<T>, j: i64) -> Vec<Vec<T>> {
    joint_annihilator(space, &[&t.lambda], j)
}

/// Whether every weight space is the direct sum of `L^k` applied to the
/// primitives of weight `w − 2k`.
pub fn lefschetz_decomposition_holds<T: Scalar>(space: &GradedOperatorSpace<T>, t: &Sl2Triple<T>) -> bool {
    space.distinct_weights().into_iter().all(|w| {
        let mut span: Vec<Vec<T>> = Vec::new();
        let mut k = 0u32;
        loop {
            let pw = w - 2 * k as i64;
            if pw < space.distinct_weights()[0] {
                break;
            }
            // L^k kills primitives of weight pw once k > −pw.
            if pw > 0 || k as i64 > -pw {
                k += 1;
                continue;
            }
            let lk = t.l.pow(k);
            span.extend(primitive_decomposition(space, t, pw).iter().map(|p| lk.apply(p)));
            k += 1;
        }
        let dim = space.indices_of_weight(w).len();
        span.len() == dim && (dim == 0 || Matrix::from_rows(span).rank() == dim)
    })
}

/// Basis of `∩ ker op` restricted to weight `j`, as vectors of the full space.
pub fn joint_annihilator<T: Scalar>(space: &GradedOperatorSpace<T>, ops: &[&Matrix<T>], j: i64) -> Vec<Vec<T>> {
    let cols = space.indices_of_weight(j);
    let all_rows: Vec<usize> = (0..space.dim()).collect();
    let restricted: Vec<Matrix<T>> = ops.iter().map(|m| m.select(&all_rows, &cols)).collect();
    let refs: Vec<&Matrix<T>> = restricted.iter().collect();
    joint_kernel(cols.len(), &refs).into_iter().map(|v| space.embed(j, &v)).collect()
}

/// The Verbitsky algebra in symmetric degrees `0..=2n` as a graded space
/// with weights `2k − 2n`, together with multiplication by `α = Σ a_i e_i`.
pub fn verbitsky_lefschetz<T: Scalar>(
    alg: &VerbitskyAlgebra<T>,
    a: &[T],
) -> Result<(GradedOperatorSpace<T>, Matrix<T>), LefschetzError> {
    let n = alg.n();
    let dims: Vec<usize> = (0..=2 * n).map(|k| alg.dim(k)).collect();
    let comps: Vec<(i64, usize)> = dims.iter().enumerate().map(|(k, &d)| (2 * k as i64 - 2 * n as i64, d)).collect();
    let space = GradedOperatorSpace::from_components(&comps);
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| {
        let o = *acc;
        *acc += d;
        Some(o)
    }).collect();
    let alpha: VElement<T> = alg.linear(a)?;
    let total = space.dim();
    let mut l = Matrix::zeros(total, total);
    for k in 0..2 * n {
        let block = alg.multiplication_matrix(&alpha, k)?;
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                l[(offsets[k + 1] + r, offsets[k] + c)] = block[(r, c)].clone();
            }
        }
    }
    Ok((space, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};
    use crate::verbitsky::QuadraticSpace;

    fn fundamental() -> (GradedOperatorSpace<Q>, Matrix<Q>) {
        let s = GradedOperatorSpace::from_components(&[(-1, 1), (1, 1)]);
        let l = Matrix::from_rows(vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)]]);
        (s, l)
    }

    #[test]
    fn fundamental_representation() {
        let (s, l) = fundamental();
        let t = complete_sl2(&s, &l).unwrap();
        assert_eq!(t.lambda, l.transpose());
        assert_eq!(l.commutator(&t.lambda), Matrix::from_rows(vec![vec![qi(-1), qi(0)], vec![qi(0), qi(1)]]));
        let p = primitive_decomposition(&s, &t, -1);
        assert_eq!(p, vec![vec![qi(1), qi(0)]]);
    }

    #[test]
    fn zero_operator_has_no_completion() {
        let s = GradedOperatorSpace::<Q>::from_components(&[(-1, 1), (1, 1)]);
        assert_eq!(complete_sl2(&s, &Matrix::zeros(2, 2)), Err(LefschetzError::NoSolution));
    }

    #[test]
    fn trivial_representation() {
        let s = GradedOperatorSpace::<Q>::from_components(&[(0, 3)]);
        let t = complete_sl2(&s, &Matrix::zeros(3, 3)).unwrap();
        assert!(t.lambda.is_zero());
        assert_eq!(primitive_decomposition(&s, &t, 0).len(), 3);
    }

    #[test]
    fn verbitsky_triple() {
        let alg = VerbitskyAlgebra::build(QuadraticSpace::diagonal(&[qi(1), qi(1), qi(-1)]).unwrap(), 1).unwrap();
        let (s, l) = verbitsky_lefschetz(&alg, &[qi(1), qi(0), qi(0)]).unwrap();
        let t = complete_sl2(&s, &l).unwrap();
        assert!(t.brackets_hold());
        assert!(hard_lefschetz_holds(&s, &l));
        assert_eq!(primitive_decomposition(&s, &t, 0).len(), 2);
        assert!(lefschetz_decomposition_holds(&s, &t));
    }

    #[test]
    fn isotropic_class_fails_hard_lefschetz() {
        let alg = VerbitskyAlgebra::build(QuadraticSpace::diagonal(&[qi(1), qi(1), qi(-1)]).unwrap(), 1).unwrap();
        let (s, l) = verbitsky_lefschetz(&alg, &[qi(1), qi(0), qi(1)]).unwrap();
        assert!(!hard_lefschetz_holds(&s, &l));
        assert_eq!(complete_sl2(&s, &l), Err(LefschetzError::NoSolution));
    }

    #[test]
    fn joint_annihilator_edge_cases() {
        let s = GradedOperatorSpace::<Q>::from_components(&[(0, 2)]);
        assert_eq!(joint_annihilator(&s, &[], 0).len(), 2);
        let e = |r: usize, c: usize| Matrix::from_fn(2, 2, |i, j| if (i, j) == (r, c) { qi(1) } else { qi(0) });
        let all = [e(0, 0), e(0, 1), e(1, 0), e(1, 1)];
        let refs: Vec<&Matrix<Q>> = all.iter().collect();
        assert!(joint_annihilator(&s, &refs, 0).is_empty());
    }

    #[test]
    fn rejects_inhomogeneous_operator() {
        let mut s = GradedOperatorSpace::<Q>::from_components(&[(-1, 1), (1, 1)]);
        let bad = Matrix::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), qi(0)]]);
        assert!(matches!(s.add_operator("x", bad, 2), Err(LefschetzError::NotHomogeneous { .. })));
    }
}
