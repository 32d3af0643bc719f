//! The subalgebra generated by `H²` of a hyperkähler-type manifold, presented
//! as `S*V / ⟨α^{n+1} : q(α) = 0⟩` over a rational quadratic space `(V, q)`.
//!
//! Symmetric degree `k` here corresponds to cohomological degree `2k`. The
//! degree-`(n+1)` part of the ideal is computed as the kernel of the
//! Laplacian `Σ g_ij ∂_i ∂_j`: a power `(a·x)^{n+1}` is annihilated by it
//! exactly when `aᵀ G a = 0`, and for `b ≥ 3` these powers span the whole
//! harmonic kernel over `ℂ`, which is defined over `ℚ`. Higher parts are
//! `S^1 · I_{k−1}`.
//!
//! Quotients are computed by row reduction with pivots searched from the
//! lexicographically last monomial, so each quotient basis consists of the
//! lexicographically first monomials that survive. In the top degree `2n`
//! this fixes the generator `ω`.

pub mod poly;

use std::collections::HashMap;

use thiserror::Error;

use crate::genus::Univariate;
use crate::linalg::{Echelon, Matrix};
use crate::scalar::Scalar;

pub use poly::{monomial_index, monomials, multinomial, HomPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerbitskyError {
    #[error("quadratic space needs dimension at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("half-dimension n must be at least 1")]
    BadHalfDimension,
    #[error("degree {degree} exceeds the computed range 0..={max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("form vanishes identically")]
    ZeroForm,
    #[error("form has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("form is not an n-th power of a quadratic form (probe direction {probe:?})")]
    NotAPower { probe: Vec<String> },
    #[error("form is not a constant multiple of the product of the block quadrics")]
    ProductMismatch,
}

/// A nondegenerate rational quadratic space `(ℚ^b, q)`, `q(x) = xᵀ G x`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSpace<T> {
    gram: Matrix<T>,
}

impl<T: Scalar> QuadraticSpace<T> {
    pub fn new(gram: Matrix<T>) -> Result<Self, VerbitskyError> {
        if !gram.is_square() || gram.rows() < 3 {
            return Err(VerbitskyError::DimensionTooSmall(gram.rows()));
        }
        if gram != gram.transpose() {
            return Err(VerbitskyError::NotSymmetric);
        }
        if gram.determinant().is_zero() {
            return Err(VerbitskyError::Degenerate);
        }
        Ok(Self { gram })
    }

    pub fn diagonal(entries: &[T]) -> Result<Self, VerbitskyError> {
        let b = entries.len();
        Self::new(Matrix::from_fn(b, b, |i, j| if i == j { entries[i].clone() } else { T::zero() }))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        crate::linalg::dot(x, &self.gram.apply(y))
    }

    pub fn q(&self, x: &[T]) -> T {
        self.bilinear(x, x)
    }

    pub fn quadratic_poly(&self) -> HomPoly<T> {
        HomPoly::quadratic(&self.gram)
    }

    /// Reflection `x ↦ x − 2 B(v,x)/q(v) · v` for anisotropic `v`.
    pub fn reflection(&self, v: &[T]) -> Option<Matrix<T>> {
        let qv = self.q(v);
        if qv.is_zero() {
            return None;
        }
        let gv = self.gram.apply(v);
        let b = self.dim();
        let two = T::from_int(2);
        Some(Matrix::from_fn(b, b, |i, j| {
            let id = if i == j { T::one() } else { T::zero() };
            id - two.clone() * v[i].clone() * gv[j].clone() / qv.clone()
        }))
    }

    /// Whether `gᵀ G g = G`.
    pub fn is_isometry(&self, g: &Matrix<T>) -> bool {
        &(&g.transpose() * &self.gram) * g == self.gram
    }
}

/// An element of one graded piece of the quotient, in coordinates over that
/// piece's monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct VElement<T> {
    pub degree: usize,
    pub coords: Vec<T>,
}

#[derive(Debug, Clone)]
struct Piece<T> {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    ideal: Echelon<T>,
    /// Monomial positions forming the quotient basis, increasing.
    basis: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct VerbitskyAlgebra<T> {
    space: QuadraticSpace<T>,
    n: usize,
    pieces: Vec<Piece<T>>,
    fujiki: T,
}

impl<T: Scalar> VerbitskyAlgebra<T> {
    /// Computes the quotient in symmetric degrees `0..=2n+1`.
    pub fn build(space: QuadraticSpace<T>, n: usize) -> Result<Self, VerbitskyError> {
        if n == 0 {
            return Err(VerbitskyError::BadHalfDimension);
        }
        let b = space.dim();
        let mut pieces: Vec<Piece<T>> = Vec::with_capacity(2 * n + 2);
        for k in 0..=2 * n + 1 {
            let mons = monomials(b, k);
            let index = monomial_index(&mons);
            let rows: Vec<Vec<T>> = if k < n + 1 {
                Vec::new()
            } else if k == n + 1 {
                harmonic_kernel(&space, n + 1)
            } else {
                let prev = &pieces[k - 1];
                let mut rows = Vec::new();
                for r in 0..prev.ideal.rank() {
                    let p = HomPoly::from_coords(b, k - 1, prev.ideal.reduced.row(r));
                    for i in 0..b {
                        let mut e = vec![0; b];
                        e[i] = 1;
                        rows.push(p.mul(&HomPoly::monomial(e, T::one())).to_coords(&index));
                    }
                }
                rows
            };
            let m = if rows.is_empty() { Matrix::zeros(0, mons.len()) } else { Matrix::from_rows(rows) };
            let order: Vec<usize> = (0..mons.len()).rev().collect();
            let ideal = m.rref_with_order(&order);
            let basis = ideal.free_columns();
            pieces.push(Piece { monomials: mons, index, ideal, basis });
        }
        let mut alg = Self { space, n, pieces, fujiki: T::zero() };
        alg.fujiki = alg.compute_fujiki_constant();
        Ok(alg)
    }

    pub fn space(&self) -> &QuadraticSpace<T> {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest symmetric degree computed (`2n+1`).
    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    /// Dimension of the quotient in symmetric degree `k`.
    pub fn dim(&self, k: usize) -> usize {
        self.pieces.get(k).map_or(0, |p| p.basis.len())
    }

    /// Dimensions in cohomological degrees `0, 2, …, ≤ max_cohomological`.
    /// Degrees past the computed range are zero since the ideal contains all
    /// of `S^{2n+1}`.
    pub fn dims_through(&self, max_cohomological: usize) -> Vec<usize> {
        (0..=max_cohomological / 2).map(|k| self.dim(k)).collect()
    }

    /// The monomials spanning the quotient basis in degree `k`.
    pub fn basis_monomials(&self, k: usize) -> Vec<Vec<u32>> {
        let p = &self.pieces[k];
        p.basis.iter().map(|&i| p.monomials[i].clone()).collect()
    }

    /// Spanning set of the ideal in degree `k` (reduced echelon rows).
    pub fn ideal_basis(&self, k: usize) -> Vec<HomPoly<T>> {
        let p = &self.pieces[k];
        let b = self.space.dim();
        (0..p.ideal.rank()).map(|r| HomPoly::from_coords(b, k, p.ideal.reduced.row(r))).collect()
    }

    fn check_degree(&self, k: usize) -> Result<(), VerbitskyError> {
        if k > self.max_degree() {
            return Err(VerbitskyError::DegreeOverflow { degree: k, max: self.max_degree() });
        }
        Ok(())
    }

    /// Normal form of a homogeneous polynomial.
    pub fn reduce(&self, p: &HomPoly<T>) -> Result<VElement<T>, VerbitskyError> {
        let k = p.degree();
        self.check_degree(k)?;
        let piece = &self.pieces[k];
        let reduced = piece.ideal.reduce(&p.to_coords(&piece.index));
        Ok(VElement { degree: k, coords: piece.basis.iter().map(|&i| reduced[i].clone()).collect() })
    }

    /// Representative polynomial supported on basis monomials.
    pub fn lift(&self, u: &VElement<T>) -> HomPoly<T> {
        let piece = &self.pieces[u.degree];
        let mut full = vec![T::zero(); piece.monomials.len()];
        for (c, &i) in u.coords.iter().zip(&piece.basis) {
            full[i] = c.clone();
        }
        HomPoly::from_coords(self.space.dim(), u.degree, &full)
    }

    pub fn unit(&self) -> VElement<T> {
        VElement { degree: 0, coords: vec![T::one()] }
    }

    pub fn zero(&self, k: usize) -> VElement<T> {
        VElement { degree: k, coords: vec![T::zero(); self.dim(k)] }
    }

    /// The class of `Σ a_i e_i` in degree 1.
    pub fn linear(&self, a: &[T]) -> Result<VElement<T>, VerbitskyError> {
        if a.len() != self.space.dim() {
            return Err(VerbitskyError::LengthMismatch { expected: self.space.dim(), found: a.len() });
        }
        self.reduce(&HomPoly::linear(a))
    }

    pub fn multiply(&self, u: &VElement<T>, v: &VElement<T>) -> Result<VElement<T>, VerbitskyError> {
        self.check_degree(u.degree + v.degree)?;
        self.reduce(&self.lift(u).mul(&self.lift(v)))
    }

    /// `α^k` for `α = Σ a_i e_i`.
    pub fn power(&self, a: &[T], k: usize) -> Result<VElement<T>, VerbitskyError> {
        self.check_degree(k)?;
        self.reduce(&HomPoly::linear(a).pow(k))
    }

    /// The top generator `ω` in degree `2n`.
    pub fn omega(&self) -> VElement<T> {
        let k = 2 * self.n;
        let mut coords = vec![T::zero(); self.dim(k)];
        coords[0] = T::one();
        VElement { degree: k, coords }
    }

    /// Coefficient of `ω` in a degree-`2n` element.
    pub fn top_coefficient(&self, u: &VElement<T>) -> T {
        assert_eq!(u.degree, 2 * self.n, "top coefficient needs a degree-2n element");
        u.coords[0].clone()
    }

    /// Matrix of `u · −` from degree `k` to degree `k + deg u`, in quotient bases.
    pub fn multiplication_matrix(&self, u: &VElement<T>, k: usize) -> Result<Matrix<T>, VerbitskyError> {
        let target = k + u.degree;
        self.check_degree(target)?;
        let cols: Vec<Vec<T>> = (0..self.dim(k))
            .map(|i| {
                let mut e = vec![T::zero(); self.dim(k)];
                e[i] = T::one();
                self.multiply(u, &VElement { degree: k, coords: e }).map(|p| p.coords)
            })
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_columns(self.dim(target), &cols))
    }

    /// The constant `c` with `α^{2n} = c · q(α)^n · ω`.
    pub fn fujiki_constant(&self) -> &T {
        &self.fujiki
    }

    fn compute_fujiki_constant(&self) -> T {
        let probe = anisotropic_probe(&self.space);
        let top = self.power(&probe, 2 * self.n).expect("top degree is computed");
        self.top_coefficient(&top) / self.space.q(&probe).pow_u(self.n as u32)
    }

    /// Whether `α^{2n} = c · q(α)^n · ω` holds exactly for this `α`.
    pub fn check_fujiki(&self, a: &[T]) -> Result<bool, VerbitskyError> {
        let top = self.power(a, 2 * self.n)?;
        let mut expected = self.omega();
        expected.coords[0] = self.fujiki.clone() * self.space.q(a).pow_u(self.n as u32);
        Ok(top == expected)
    }

    /// The scalar form `f(α) = ⟨α^{2n}, ω⟩` as a polynomial of degree `2n`.
    pub fn top_power_form(&self) -> HomPoly<T> {
        let k = 2 * self.n;
        let b = self.space.dim();
        let piece = &self.pieces[k];
        let mut f = HomPoly::zero(b, k);
        for m in &piece.monomials {
            let c = self.top_coefficient(&self.reduce(&HomPoly::monomial(m.clone(), T::one())).expect("in range"));
            if !c.is_zero() {
                f = f.add(&HomPoly::monomial(m.clone(), c * multinomial::<T>(m)));
            }
        }
        f
    }

    /// Recovers `q` up to scale from the top-power form of this algebra.
    pub fn recover_q(&self) -> Result<RecoveredForm<T>, VerbitskyError> {
        recover_q(&self.top_power_form(), self.n)
    }
}

/// Kernel of `Σ g_ij ∂_i ∂_j : S^k → S^{k−2}` as coordinate vectors over `monomials(b, k)`.
pub fn harmonic_kernel<T: Scalar>(space: &QuadraticSpace<T>, k: usize) -> Vec<Vec<T>> {
    let b = space.dim();
    let src = monomials(b, k);
    let dst_index = monomial_index(&monomials(b, k.saturating_sub(2)));
    let cols: Vec<Vec<T>> = src
        .iter()
        .map(|m| HomPoly::monomial(m.clone(), T::one()).laplacian(space.gram()).to_coords(&dst_index))
        .collect();
    Matrix::from_columns(dst_index.len(), &cols).kernel()
}

/// Deterministic anisotropic vector: the first of `e_i`, `e_i ± e_j`,
/// `(1, 2, …, b)` with `q ≠ 0`.
pub fn anisotropic_probe<T: Scalar>(space: &QuadraticSpace<T>) -> Vec<T> {
    candidate_vectors(space.dim())
        .into_iter()
        .find(|v| !space.q(v).is_zero())
        .expect("a nondegenerate form is anisotropic on some coordinate or sum vector")
}

fn candidate_vectors<T: Scalar>(b: usize) -> Vec<Vec<T>> {
    let e = |i: usize| -> Vec<T> { (0..b).map(|j| if i == j { T::one() } else { T::zero() }).collect() };
    let mut out: Vec<Vec<T>> = (0..b).map(e).collect();
    for i in 0..b {
        for j in i + 1..b {
            for s in [1, -1] {
                let mut v = e(i);
                v[j] = T::from_int(s);
                out.push(v);
            }
        }
    }
    out.push((1..=b as i64).map(T::from_int).collect());
    out.push((1..=b as i64).map(|i| T::from_int(i * i + 1)).collect());
    out
}

/// Result of [`recover_q`].
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredForm<T> {
    /// Gram matrix of the recovered form, scaled so that `q(probe) = 1`.
    pub gram: Matrix<T>,
    /// The anisotropic vector fixing the scale.
    pub probe: Vec<T>,
    /// For even `n`, `−q` is an equally valid root.
    pub sign_ambiguous: bool,
}

/// Restriction `t ↦ f(x + t y)` as a univariate polynomial.
fn restrict<T: Scalar>(f: &HomPoly<T>, x: &[T], y: &[T]) -> Univariate<T> {
    let d = f.degree();
    let mut out = Univariate(vec![T::zero(); d + 1]);
    for (m, c) in f.terms() {
        let mut term = Univariate(vec![c.clone()]);
        for (i, &e) in m.iter().enumerate() {
            let lin = Univariate(vec![x[i].clone(), y[i].clone()]);
            for _ in 0..e {
                term = term.mul(&lin, d);
            }
        }
        for (k, v) in term.0.into_iter().enumerate() {
            out.0[k] = out.0[k].clone() + v;
        }
    }
    out
}

/// Truncated `n`-th root of a series with constant term 1.
fn nth_root<T: Scalar>(g: &Univariate<T>, n: usize, d: usize) -> Univariate<T> {
    let mut h = Univariate(vec![T::one()]);
    let nn = T::from_int(n as i64);
    for k in 1..=d {
        let pw = (0..n).fold(Univariate(vec![T::one()]), |acc, _| acc.mul(&h, k));
        let hk = (g.coeff(k) - pw.coeff(k)) / nn.clone();
        h.0.push(hk);
    }
    h
}

/// Recovers a quadratic form `q` with `q^n ∝ f` from a degree-`2n` form `f`.
///
/// Picks `α₀` with `f(α₀) ≠ 0` and, for each probe direction `β`, takes the
/// truncated `n`-th root of `f(α₀ + tβ)/f(α₀)`. For a genuine power this root
/// is the quadratic polynomial `q(α₀ + tβ)/q(α₀)`, so its `t²` coefficient
/// is `q(β)/q(α₀)`; polarizing over `e_i` and `e_i + e_j` gives the Gram
/// matrix. Any nonzero coefficient beyond `t²`, or a mismatch in the final
/// identity `q^n · f(α₀) = f`, is reported as an error.
pub fn recover_q<T: Scalar>(f: &HomPoly<T>, n: usize) -> Result<RecoveredForm<T>, VerbitskyError> {
    if n == 0 {
        return Err(VerbitskyError::BadHalfDimension);
    }
    if f.degree() != 2 * n {
        return Err(VerbitskyError::WrongDegree { expected: 2 * n, found: f.degree() });
    }
    if f.is_zero() {
        return Err(VerbitskyError::ZeroForm);
    }
    let b = f.nvars();
    let probe = candidate_vectors::<T>(b)
        .into_iter()
        .find(|v| !f.eval(v).is_zero())
        .or_else(|| {
            // Fall back to a small integer grid; a nonzero form cannot vanish on all of it.
            let mut v = vec![T::one(); b];
            for s in 0..(2 * n as i64 + 1).pow(b as u32) {
                let mut t = s;
                for x in v.iter_mut() {
                    *x = T::from_int(t % (2 * n as i64 + 1));
                    t /= 2 * n as i64 + 1;
                }
                if !f.eval(&v).is_zero() {
                    return Some(v);
                }
            }
            None
        })
        .ok_or(VerbitskyError::ZeroForm)?;
    let f0 = f.eval(&probe);
    let d = 2 * n;

    // Returns (linear, quadratic) coefficients of the root along `dir`.
    let root_along = |dir: &[T]| -> Result<(T, T), VerbitskyError> {
        let g = restrict(f, &probe, dir);
        let g = Univariate(g.0.into_iter().map(|c| c / f0.clone()).collect());
        let h = nth_root(&g, n, d);
        if (3..=d).any(|k| !h.coeff(k).is_zero()) {
            return Err(VerbitskyError::NotAPower { probe: dir.iter().map(|x| format!("{x:?}")).collect() });
        }
        Ok((h.coeff(1), h.coeff(2)))
    };

    let unit = |i: usize| -> Vec<T> { (0..b).map(|j| if i == j { T::one() } else { T::zero() }).collect() };
    let mut diag = Vec::with_capacity(b);
    let mut linear = Vec::with_capacity(b);
    for i in 0..b {
        let (l, qd) = root_along(&unit(i))?;
        linear.push(l);
        diag.push(qd);
    }
    let two = T::from_int(2);
    let mut gram = Matrix::zeros(b, b);
    for i in 0..b {
        gram[(i, i)] = diag[i].clone();
        for j in i + 1..b {
            let mut v = unit(i);
            v[j] = T::one();
            let (_, qij) = root_along(&v)?;
            let off = (qij - diag[i].clone() - diag[j].clone()) / two.clone();
            gram[(i, j)] = off.clone();
            gram[(j, i)] = off;
        }
    }
    // Linear coefficients must equal 2 (G̃ α₀)_i.
    let g_probe = gram.apply(&probe);
    if linear.iter().zip(&g_probe).any(|(l, g)| *l != two.clone() * g.clone()) {
        return Err(VerbitskyError::NotAPower { probe: probe.iter().map(|x| format!("{x:?}")).collect() });
    }
    let qpoly = HomPoly::quadratic(&gram);
    if qpoly.pow(n).scale(&f0) != *f {
        return Err(VerbitskyError::NotAPower { probe: probe.iter().map(|x| format!("{x:?}")).collect() });
    }
    Ok(RecoveredForm { gram, probe, sign_ambiguous: n.is_multiple_of(2) })
}

/// Whether two matrices agree up to one nonzero scalar.
pub fn proportional<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let mut ratio: Option<T> = None;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let (x, y) = (&a[(r, c)], &b[(r, c)]);
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let q = x.clone() / y.clone();
                    match &ratio {
                        None => ratio = Some(q),
                        Some(r0) if *r0 != q => return false,
                        _ => {}
                    }
                }
                _ => return false,
            }
        }
    }
    ratio.is_some()
}

/// The form `f(α) = c · Π q_i(α_i)^{n_i}` on `⊕ V_i`.
#[derive(Debug, Clone)]
pub struct ProductPowerForm<T> {
    blocks: Vec<(QuadraticSpace<T>, usize)>,
    form: HomPoly<T>,
}

/// One irreducible component of `{f = 0}`: a quadric of the given rank
/// appearing with the given multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub block: usize,
    pub rank: usize,
    pub multiplicity: usize,
}

impl<T: Scalar> ProductPowerForm<T> {
    /// The product form itself, expanded.
    pub fn from_blocks(blocks: Vec<(QuadraticSpace<T>, usize)>) -> Self {
        let form = block_product(&blocks);
        Self { blocks, form }
    }

    /// Pairs a block structure with an arbitrary form of the right degree.
    pub fn with_form(blocks: Vec<(QuadraticSpace<T>, usize)>, form: HomPoly<T>) -> Result<Self, VerbitskyError> {
        let total: usize = blocks.iter().map(|(s, _)| s.dim()).sum();
        let deg: usize = blocks.iter().map(|(_, n)| 2 * n).sum();
        if form.nvars() != total {
            return Err(VerbitskyError::LengthMismatch { expected: total, found: form.nvars() });
        }
        if form.degree() != deg {
            return Err(VerbitskyError::WrongDegree { expected: deg, found: form.degree() });
        }
        Ok(Self { blocks, form })
    }

    pub fn form(&self) -> &HomPoly<T> {
        &self.form
    }

    pub fn blocks(&self) -> &[(QuadraticSpace<T>, usize)] {
        &self.blocks
    }
}

fn block_product<T: Scalar>(blocks: &[(QuadraticSpace<T>, usize)]) -> HomPoly<T> {
    let total: usize = blocks.iter().map(|(s, _)| s.dim()).sum();
    let mut acc = HomPoly::one(total);
    let mut offset = 0;
    for (s, n) in blocks {
        let b = s.dim();
        let embedded = Matrix::from_fn(total, total, |i, j| {
            if (offset..offset + b).contains(&i) && (offset..offset + b).contains(&j) {
                s.gram()[(i - offset, j - offset)].clone()
            } else {
                T::zero()
            }
        });
        acc = acc.mul(&HomPoly::quadratic(&embedded).pow(*n));
        offset += b;
    }
    acc
}

/// Verifies `f = c · Π q_i^{n_i}` for a nonzero constant `c` and reports one
/// component per block with the rank of its quadric.
pub fn decompose_components<T: Scalar>(p: &ProductPowerForm<T>) -> Result<Vec<Component>, VerbitskyError> {
    let expected = block_product(&p.blocks);
    let (m, c) = expected.terms().iter().next().ok_or(VerbitskyError::ZeroForm)?;
    let ratio = p.form.coeff(m) / c.clone();
    if ratio.is_zero() || expected.scale(&ratio) != p.form {
        return Err(VerbitskyError::ProductMismatch);
    }
    Ok(p
        .blocks
        .iter()
        .enumerate()
        .map(|(i, (s, n))| Component { block: i, rank: s.gram().rank(), multiplicity: *n })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::same_span;
    use crate::sampling::{rng, small_vector};
    use crate::scalar::{qi, Q};

    fn lorentz() -> QuadraticSpace<Q> {
        QuadraticSpace::diagonal(&[qi(1), qi(1), qi(-1)]).unwrap()
    }

    #[test]
    fn dims_b3_n1() {
        let a = VerbitskyAlgebra::build(lorentz(), 1).unwrap();
        assert_eq!(a.dims_through(4), vec![1, 3, 1]);
        assert_eq!(a.dim(3), 0);
    }

    #[test]
    fn dims_b3_n2() {
        let a = VerbitskyAlgebra::build(lorentz(), 2).unwrap();
        assert_eq!(a.dims_through(10), vec![1, 3, 6, 3, 1, 0]);
    }

    #[test]
    fn rejects_bad_spaces() {
        assert_eq!(QuadraticSpace::<Q>::diagonal(&[qi(1), qi(1)]).unwrap_err(), VerbitskyError::DimensionTooSmall(2));
        assert_eq!(QuadraticSpace::<Q>::diagonal(&[qi(1), qi(1), qi(0)]).unwrap_err(), VerbitskyError::Degenerate);
        assert_eq!(VerbitskyAlgebra::build(lorentz(), 0).unwrap_err(), VerbitskyError::BadHalfDimension);
    }

    #[test]
    fn isotropic_square_vanishes() {
        let a = VerbitskyAlgebra::build(lorentz(), 1).unwrap();
        let iso = a.power(&[qi(3), qi(4), qi(5)], 2).unwrap();
        assert_eq!(iso, a.zero(2));
        let aniso = a.power(&[qi(1), qi(0), qi(0)], 2).unwrap();
        assert_ne!(aniso, a.zero(2));
        let u = a.linear(&[qi(1), qi(2), qi(3)]).unwrap();
        assert_eq!(a.multiply(&a.unit(), &u).unwrap(), u);
    }

    #[test]
    fn degree_overflow() {
        let a = VerbitskyAlgebra::build(lorentz(), 1).unwrap();
        let u = a.linear(&[qi(1), qi(0), qi(0)]).unwrap();
        let top = a.power(&[qi(1), qi(0), qi(0)], 3).unwrap();
        assert!(matches!(a.multiply(&u, &top), Err(VerbitskyError::DegreeOverflow { degree: 4, max: 3 })));
    }

    #[test]
    fn fujiki_on_random_classes() {
        for n in 1..=2 {
            let a = VerbitskyAlgebra::build(lorentz(), n).unwrap();
            let mut r = rng(11 + n as u64);
            for _ in 0..20 {
                let v: Vec<Q> = small_vector(&mut r, 3, 9, 5);
                assert!(a.check_fujiki(&v).unwrap());
            }
        }
    }

    #[test]
    fn recover_round_trip() {
        let g = Matrix::from_rows(vec![
            vec![qi(2), qi(1), qi(0)],
            vec![qi(1), qi(-1), qi(0)],
            vec![qi(0), qi(0), qi(3)],
        ]);
        for n in 1..=2 {
            let a = VerbitskyAlgebra::build(QuadraticSpace::new(g.clone()).unwrap(), n).unwrap();
            let rec = a.recover_q().unwrap();
            assert!(proportional(&rec.gram, &g));
            assert_eq!(rec.sign_ambiguous, n == 2);
        }
    }

    #[test]
    fn recover_rejects_product_of_distinct_quadrics() {
        let q1 = HomPoly::quadratic(lorentz().gram());
        let q2 = HomPoly::quadratic(QuadraticSpace::diagonal(&[qi(1), qi(2), qi(3)]).unwrap().gram());
        assert!(matches!(recover_q(&q1.mul(&q2), 2), Err(VerbitskyError::NotAPower { .. })));
    }

    #[test]
    fn recover_n1_is_normalized_input() {
        let q = HomPoly::quadratic(lorentz().gram()).scale(&qi(7));
        let rec = recover_q(&q, 1).unwrap();
        assert_eq!(rec.gram, lorentz().gram().clone());
    }

    #[test]
    fn ideal_is_orthogonally_stable() {
        let s = lorentz();
        let a = VerbitskyAlgebra::build(s.clone(), 1).unwrap();
        let g = &s.reflection(&[qi(1), qi(2), qi(0)]).unwrap() * &s.reflection(&[qi(0), qi(1), qi(3)]).unwrap();
        assert!(s.is_isometry(&g));
        let index = monomial_index(&monomials(3, 2));
        let before: Vec<Vec<Q>> = a.ideal_basis(2).iter().map(|p| p.to_coords(&index)).collect();
        let after: Vec<Vec<Q>> = a.ideal_basis(2).iter().map(|p| p.substitute(&g).to_coords(&index)).collect();
        assert!(same_span(&before, &after));
    }

    #[test]
    fn decomposition_examples() {
        let one = ProductPowerForm::from_blocks(vec![(lorentz(), 1)]);
        assert_eq!(decompose_components(&one).unwrap(), vec![Component { block: 0, rank: 3, multiplicity: 1 }]);
        let two = ProductPowerForm::from_blocks(vec![(lorentz(), 2), (lorentz(), 1)]);
        let comps = decompose_components(&two).unwrap();
        assert_eq!(comps.iter().map(|c| c.multiplicity).collect::<Vec<_>>(), vec![2, 1]);
        let wrong = HomPoly::quadratic(&Matrix::identity(6)).pow(2);
        let bad = ProductPowerForm::with_form(vec![(lorentz(), 1), (lorentz(), 1)], wrong).unwrap();
        assert_eq!(decompose_components(&bad), Err(VerbitskyError::ProductMismatch));
    }
}
