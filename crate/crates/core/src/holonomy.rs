//! Covering-degree arithmetic for products of hyperkähler factors and the
//! permutation of symplectic blocks induced by elements of the normalizer of
//! `Sp(n₁) × ⋯ × Sp(n_k)`.
//!
//! Two-forms act by pullback along `A⁻¹`, i.e. `(A·σ)(u, v) = σ(A⁻¹u, A⁻¹v)`,
//! which makes `A ↦ ρ(A)` a homomorphism.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::sampling::small_rational;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HolonomyError {
    #[error("block sizes must be positive and sum to half the matrix size")]
    BadBlocks,
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("matrix is not invertible")]
    Singular,
    #[error("the pullback of σ_{index} is not a multiple of a single block form")]
    NotInNormalizer { index: usize },
    #[error("σ_{index} is sent to a block of different size")]
    SizeMismatch { index: usize },
    #[error("two blocks are sent to the same block {target}")]
    NotAPermutation { target: usize },
    #[error("σ_{index} is rescaled by a factor other than 1")]
    NontrivialScale { index: usize },
}

/// A partition in nonincreasing order together with the cover degree `d`.
pub type ChiSolution = (u64, Vec<u64>);

fn partitions(n: u64, largest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=largest.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// All `(d, n₁ ≥ … ≥ n_k)` with `Σ nᵢ = n` and `d·(1+n) = ∏(1+nᵢ)`.
pub fn enumerate_chi_solutions(n: u64) -> Vec<ChiSolution> {
    let mut all = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter_map(|p| {
            let product: BigUint = p.iter().map(|&x| BigUint::from(x + 1)).product();
            let rhs = BigUint::from(n + 1);
            (&product % &rhs).is_zero().then(|| {
                let d = &product / &rhs;
                (u64::try_from(d).expect("cover degree fits in u64"), p)
            })
        })
        .collect()
}

/// Why `e·k·(1+k) = 2^k` has no solution beyond `k = 1`: a divisor of a
/// power of two is a power of two, so `k` and `k+1` are both powers of two,
/// which happens only for `k = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerArgument {
    pub statement: &'static str,
    /// `k` for which `k` and `k + 1` are both powers of two, in range.
    pub consecutive_powers: Vec<u64>,
    /// The argument's prediction (solutions only at those `k`) agrees with
    /// the search.
    pub consistent: bool,
}

fn is_power_of_two(x: &BigUint) -> bool {
    !x.is_zero() && (x & (x - BigUint::one())).is_zero()
}

/// All `(e, k)` with `1 ≤ k ≤ k_max` and `e·k·(1+k) = 2^k`, and the
/// argument explaining why the list is `[(1, 1)]`.
pub fn check_power_equation(k_max: u64) -> (Vec<(BigUint, u64)>, PowerArgument) {
    let mut solutions = Vec::new();
    let mut consecutive = Vec::new();
    for k in 1..=k_max {
        let power = BigUint::one() << k;
        let denom = BigUint::from(k) * BigUint::from(k + 1);
        if (&power % &denom).is_zero() {
            solutions.push((&power / &denom, k));
        }
        if is_power_of_two(&BigUint::from(k)) && is_power_of_two(&BigUint::from(k + 1)) {
            consecutive.push(k);
        }
    }
    let consistent = solutions.iter().all(|(_, k)| consecutive.contains(k));
    let argument = PowerArgument {
        statement: "k and k+1 must both be powers of two, forcing k = 1",
        consecutive_powers: consecutive,
        consistent,
    };
    (solutions, argument)
}

/// The solutions of the covering equation whose partition is `k` ones and
/// whose degree `d` is a multiple `e·k` of the number of factors, as
/// `(e, k)` pairs.
pub fn uniform_factor_solutions(k_max: u64) -> Vec<(u64, u64)> {
    (1..=k_max.min(62))
        .filter_map(|k| {
            enumerate_chi_solutions(k)
                .into_iter()
                .find(|(_, p)| p.iter().all(|&x| x == 1))
                .and_then(|(d, _)| (d % k == 0).then_some((d / k, k)))
        })
        .collect()
}

/// A `2n × 2n` matrix with the block decomposition `n = n₁ + … + n_k`.
/// Block `i` occupies `2nᵢ` consecutive coordinates `(q, p)` carrying the
/// standard form `σᵢ = Σ dq ∧ dp`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticBlockMatrix<T> {
    pub matrix: Matrix<T>,
    pub blocks: Vec<usize>,
}

/// The 2-form `σ_i` as a skew matrix, zero outside block `i`.
pub fn block_form<T: Scalar>(blocks: &[usize], i: usize) -> Matrix<T> {
    let size = 2 * blocks.iter().sum::<usize>();
    let offset: usize = 2 * blocks[..i].iter().sum::<usize>();
    let m = blocks[i];
    let mut out = Matrix::zeros(size, size);
    for r in 0..m {
        out[(offset + r, offset + m + r)] = T::one();
        out[(offset + m + r, offset + r)] = -T::one();
    }
    out
}

pub fn total_form<T: Scalar>(blocks: &[usize]) -> Matrix<T> {
    let size = 2 * blocks.iter().sum::<usize>();
    (0..blocks.len()).fold(Matrix::zeros(size, size), |acc, i| &acc + &block_form(blocks, i))
}

fn block_of(blocks: &[usize], coordinate: usize) -> usize {
    let mut end = 0;
    for (i, &m) in blocks.iter().enumerate() {
        end += 2 * m;
        if coordinate < end {
            return i;
        }
    }
    unreachable!("coordinate inside the matrix")
}

impl<T: Scalar> SymplecticBlockMatrix<T> {
    pub fn new(matrix: Matrix<T>, blocks: Vec<usize>) -> Result<Self, HolonomyError> {
        let size = 2 * blocks.iter().sum::<usize>();
        if blocks.is_empty() || blocks.contains(&0) || matrix.rows() != size || matrix.cols() != size {
            return Err(HolonomyError::BadBlocks);
        }
        let omega = total_form::<T>(&blocks);
        if &(&matrix.transpose() * &omega) * &matrix != omega {
            return Err(HolonomyError::NotSymplectic);
        }
        Ok(Self { matrix, blocks })
    }

    pub fn identity(blocks: Vec<usize>) -> Self {
        let size = 2 * blocks.iter().sum::<usize>();
        Self { matrix: Matrix::identity(size), blocks }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: &self.matrix * &other.matrix, blocks: self.blocks.clone() }
    }

    /// `(A·σ_i)` as a skew matrix: `A^{-T} σ_i A^{-1}`.
    pub fn pullback(&self, i: usize) -> Result<Matrix<T>, HolonomyError> {
        let inv = self.matrix.inverse().ok_or(HolonomyError::Singular)?;
        Ok(&(&inv.transpose() * &block_form(&self.blocks, i)) * &inv)
    }
}

/// The permutation `ρ(A)` with `A·σ_i = λ_i σ_{ρ(i)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedPermutation<T> {
    pub rho: Vec<usize>,
    pub lambda: Vec<T>,
}

pub fn induced_permutation<T: Scalar>(m: &SymplecticBlockMatrix<T>) -> Result<InducedPermutation<T>, HolonomyError> {
    let k = m.blocks.len();
    let mut rho = Vec::with_capacity(k);
    let mut lambda = Vec::with_capacity(k);
    for i in 0..k {
        let image = m.pullback(i)?;
        let size = image.rows();
        let (r, c) = (0..size)
            .flat_map(|r| (0..size).map(move |c| (r, c)))
            .find(|&rc| !image[rc].is_zero())
            .ok_or(HolonomyError::NotInNormalizer { index: i })?;
        let j = block_of(&m.blocks, r);
        let target = block_form::<T>(&m.blocks, j);
        if target[(r, c)].is_zero() {
            return Err(HolonomyError::NotInNormalizer { index: i });
        }
        let scale = image[(r, c)].clone() / target[(r, c)].clone();
        if image != target.scale(&scale) {
            return Err(HolonomyError::NotInNormalizer { index: i });
        }
        rho.push(j);
        lambda.push(scale);
    }
    for i in 0..k {
        if m.blocks[rho[i]] != m.blocks[i] {
            return Err(HolonomyError::SizeMismatch { index: i });
        }
        if (0..i).any(|o| rho[o] == rho[i]) {
            return Err(HolonomyError::NotAPermutation { target: rho[i] });
        }
        if lambda[i] != T::one() {
            return Err(HolonomyError::NontrivialScale { index: i });
        }
    }
    Ok(InducedPermutation { rho, lambda })
}

/// A basis of `⊕ sp(2nᵢ)` embedded block-diagonally: `X = −J S` for
/// symmetric `S` inside each block.
pub fn block_lie_algebra_basis<T: Scalar>(blocks: &[usize]) -> Vec<Matrix<T>> {
    let size = 2 * blocks.iter().sum::<usize>();
    let mut basis = Vec::new();
    let mut offset = 0;
    for &m in blocks {
        let w = 2 * m;
        let j = {
            let mut j = Matrix::<T>::zeros(w, w);
            for r in 0..m {
                j[(r, m + r)] = T::one();
                j[(m + r, r)] = -T::one();
            }
            j
        };
        for a in 0..w {
            for b in a..w {
                let mut s = Matrix::<T>::zeros(w, w);
                s[(a, b)] = T::one();
                s[(b, a)] = T::one();
                let x = -&(&j * &s);
                let mut full = Matrix::zeros(size, size);
                for r in 0..w {
                    for c in 0..w {
                        full[(offset + r, offset + c)] = x[(r, c)].clone();
                    }
                }
                basis.push(full);
            }
        }
        offset += w;
    }
    basis
}

fn in_block_lie_algebra<T: Scalar>(x: &Matrix<T>, blocks: &[usize]) -> bool {
    let size = x.rows();
    for r in 0..size {
        for c in 0..size {
            if block_of(blocks, r) != block_of(blocks, c) && !x[(r, c)].is_zero() {
                return false;
            }
        }
    }
    let omega = total_form::<T>(blocks);
    (&(&x.transpose() * &omega) + &(&omega * x)).is_zero()
}

/// Whether conjugation by `A` preserves `⊕ sp(2nᵢ)`.
pub fn is_in_normalizer<T: Scalar>(m: &SymplecticBlockMatrix<T>) -> bool {
    let Some(inv) = m.matrix.inverse() else { return false };
    block_lie_algebra_basis::<T>(&m.blocks)
        .iter()
        .all(|x| in_block_lie_algebra(&(&(&m.matrix * x) * &inv), &m.blocks))
}

/// The symplectic transvection `x ↦ x + c·σ(v, x)·v` for the total form.
pub fn transvection<T: Scalar>(blocks: &[usize], v: &[T], c: &T) -> Matrix<T> {
    let omega = total_form::<T>(blocks);
    let size = omega.rows();
    let sigma_v: Vec<T> =
        (0..size).map(|col| (0..size).fold(T::zero(), |s, r| s + v[r].clone() * omega[(r, col)].clone())).collect();
    Matrix::from_fn(size, size, |r, col| {
        let delta = if r == col { T::one() } else { T::zero() };
        delta + c.clone() * v[r].clone() * sigma_v[col].clone()
    })
}

/// Exchanges blocks `i` and `j`, which must have equal size.
pub fn block_swap<T: Scalar>(blocks: &[usize], i: usize, j: usize) -> Result<Matrix<T>, HolonomyError> {
    if blocks[i] != blocks[j] {
        return Err(HolonomyError::BadBlocks);
    }
    let offsets: Vec<usize> =
        (0..blocks.len()).map(|b| 2 * blocks[..b].iter().sum::<usize>()).collect();
    let size = 2 * blocks.iter().sum::<usize>();
    let mut target: Vec<usize> = (0..size).collect();
    for r in 0..2 * blocks[i] {
        target[offsets[i] + r] = offsets[j] + r;
        target[offsets[j] + r] = offsets[i] + r;
    }
    Ok(Matrix::from_fn(size, size, |r, c| if target[c] == r { T::one() } else { T::zero() }))
}

fn random_vector<T: Scalar>(rng: &mut impl Rng, size: usize, support: Option<(usize, usize)>) -> Vec<T> {
    let (lo, hi) = support.unwrap_or((0, size));
    loop {
        let v: Vec<T> = (0..size)
            .map(|i| if (lo..hi).contains(&i) { T::from_int(rng.gen_range(-2..=2)) } else { T::zero() })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A product of `steps` transvections, each supported in a single block.
pub fn random_block_diagonal<T: Scalar>(rng: &mut impl Rng, blocks: &[usize], steps: usize) -> SymplecticBlockMatrix<T> {
    let size = 2 * blocks.iter().sum::<usize>();
    let mut m = Matrix::identity(size);
    for _ in 0..steps {
        let b = rng.gen_range(0..blocks.len());
        let offset = 2 * blocks[..b].iter().sum::<usize>();
        let v = random_vector(rng, size, Some((offset, offset + 2 * blocks[b])));
        let c: T = small_rational(rng, 3, 3);
        m = &m * &transvection(blocks, &v, &c);
    }
    SymplecticBlockMatrix { matrix: m, blocks: blocks.to_vec() }
}

/// A random normalizer element: block-diagonal factors around a random
/// swap of two equal-size blocks, when one exists.
pub fn random_normalizer_element<T: Scalar>(rng: &mut impl Rng, blocks: &[usize]) -> SymplecticBlockMatrix<T> {
    let left = random_block_diagonal::<T>(rng, blocks, 3);
    let right = random_block_diagonal::<T>(rng, blocks, 3);
    let pairs: Vec<(usize, usize)> = (0..blocks.len())
        .flat_map(|i| (i + 1..blocks.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| blocks[i] == blocks[j])
        .collect();
    let middle = if pairs.is_empty() || rng.gen_bool(0.25) {
        Matrix::identity(left.matrix.rows())
    } else {
        let (i, j) = pairs[rng.gen_range(0..pairs.len())];
        block_swap(blocks, i, j).expect("equal blocks")
    };
    SymplecticBlockMatrix { matrix: &(&left.matrix * &middle) * &right.matrix, blocks: blocks.to_vec() }
}

/// A product of transvections along vectors that meet at least two blocks.
pub fn random_mixing_element<T: Scalar>(rng: &mut impl Rng, blocks: &[usize], steps: usize) -> SymplecticBlockMatrix<T> {
    let size = 2 * blocks.iter().sum::<usize>();
    let mut m = Matrix::identity(size);
    for _ in 0..steps.max(1) {
        let v = loop {
            let v: Vec<T> = random_vector(rng, size, None);
            let touched: std::collections::BTreeSet<usize> =
                (0..size).filter(|&i| !v[i].is_zero()).map(|i| block_of(blocks, i)).collect();
            if touched.len() >= 2 || blocks.len() == 1 {
                break v;
            }
        };
        let c: T = small_rational(rng, 3, 3);
        let c = if c.is_zero() { T::one() } else { c };
        m = &m * &transvection(blocks, &v, &c);
    }
    SymplecticBlockMatrix { matrix: m, blocks: blocks.to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;
    use crate::scalar::{qi, Q};
    use proptest::prelude::*;

    fn brute_force_chi(n: u64) -> Vec<ChiSolution> {
        // Count multisets through nondecreasing tuples of every length.
        fn walk(n: u64, min: u64, tuple: &mut Vec<u64>, total: u64, out: &mut Vec<ChiSolution>) {
            if n == 0 {
                let product: u64 = tuple.iter().map(|x| x + 1).product();
                if product.is_multiple_of(total + 1) {
                    let mut p = tuple.clone();
                    p.reverse();
                    out.push((product / (total + 1), p));
                }
                return;
            }
            for part in min..=n {
                tuple.push(part);
                walk(n - part, part, tuple, total, out);
                tuple.pop();
            }
        }
        let mut out = Vec::new();
        walk(n, 1, &mut Vec::new(), n, &mut out);
        out.sort();
        out
    }

    #[test]
    fn small_chi_solutions() {
        assert_eq!(enumerate_chi_solutions(1), vec![(1, vec![1])]);
        assert_eq!(enumerate_chi_solutions(2), vec![(1, vec![2])]);
        assert_eq!(enumerate_chi_solutions(3), vec![(1, vec![3]), (2, vec![1, 1, 1])]);
        for n in 1..=12 {
            let mut found = enumerate_chi_solutions(n);
            found.sort();
            assert_eq!(found, brute_force_chi(n), "n = {n}");
            assert!(found.contains(&(1, vec![n])));
        }
    }

    #[test]
    fn power_equation_has_only_the_trivial_solution() {
        let (solutions, argument) = check_power_equation(64);
        assert_eq!(solutions, vec![(BigUint::one(), 1)]);
        assert_eq!(argument.consecutive_powers, vec![1]);
        assert!(argument.consistent);
        assert_eq!(uniform_factor_solutions(20), vec![(1, 1)]);
    }

    #[test]
    fn identity_and_swaps() {
        let blocks = vec![1, 2, 1];
        let id = SymplecticBlockMatrix::<Q>::identity(blocks.clone());
        assert_eq!(induced_permutation(&id).unwrap().rho, vec![0, 1, 2]);
        let swap = SymplecticBlockMatrix::new(block_swap::<Q>(&blocks, 0, 2).unwrap(), blocks.clone()).unwrap();
        let p = induced_permutation(&swap).unwrap();
        assert_eq!(p.rho, vec![2, 1, 0]);
        assert!(p.lambda.iter().all(|l| *l == qi(1)));
        assert!(is_in_normalizer(&swap));
        assert!(block_swap::<Q>(&blocks, 0, 1).is_err());
    }

    #[test]
    fn non_symplectic_matrices_are_rejected() {
        let m = Matrix::<Q>::identity(4).scale(&qi(2));
        assert_eq!(SymplecticBlockMatrix::new(m, vec![1, 1]), Err(HolonomyError::NotSymplectic));
        assert_eq!(SymplecticBlockMatrix::new(Matrix::<Q>::identity(4), vec![1]), Err(HolonomyError::BadBlocks));
    }

    #[test]
    fn mixing_transvection_names_the_offending_block() {
        let blocks = vec![1, 1];
        let v = vec![qi(1), qi(0), qi(1), qi(0)];
        let w = vec![qi(0), qi(1), qi(0), qi(0)];
        let m = &transvection(&blocks, &v, &qi(1)) * &transvection(&blocks, &w, &qi(1));
        let m = SymplecticBlockMatrix::new(m, blocks).unwrap();
        assert!(matches!(induced_permutation(&m), Err(HolonomyError::NotInNormalizer { .. })));
        assert!(!is_in_normalizer(&m));
    }

    #[test]
    fn permutation_agrees_with_normalizer_test() {
        let mut r = rng(11);
        let shapes: [&[usize]; 4] = [&[1, 1], &[1, 1, 1], &[2, 1], &[2, 2]];
        for k in 0..100 {
            let blocks = shapes[k % shapes.len()];
            let m: SymplecticBlockMatrix<Q> = if k % 2 == 0 {
                random_normalizer_element(&mut r, blocks)
            } else {
                random_mixing_element(&mut r, blocks, 2)
            };
            SymplecticBlockMatrix::new(m.matrix.clone(), blocks.to_vec()).unwrap();
            assert_eq!(induced_permutation(&m).is_ok(), is_in_normalizer(&m), "case {k}");
            if k % 2 == 0 {
                assert!(is_in_normalizer(&m));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn rho_is_multiplicative(seed in 0u64..10_000) {
            let mut r = rng(seed);
            let blocks = [1usize, 1, 1];
            let a: SymplecticBlockMatrix<Q> = random_normalizer_element(&mut r, &blocks);
            let b: SymplecticBlockMatrix<Q> = random_normalizer_element(&mut r, &blocks);
            let ra = induced_permutation(&a).unwrap().rho;
            let rb = induced_permutation(&b).unwrap().rho;
            let rab = induced_permutation(&a.compose(&b)).unwrap().rho;
            let composed: Vec<usize> = rb.iter().map(|&i| ra[i]).collect();
            prop_assert_eq!(rab, composed);
        }
    }
}
