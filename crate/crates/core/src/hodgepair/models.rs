//! Built-in pair models: a complex torus, a K3-like surface and a synthetic
//! Calabi–Yau threefold.

use super::{BasisClass, PairError, PairModel};
use crate::exterior::{
    contract_form_into_poly, contract_poly_into_form, ExteriorElement, OddSpace, Variance,
};
use crate::lefschetz::{complete_sl2, GradedOperatorSpace};
use crate::linalg::{unit_vector, Matrix};
use crate::scalar::Scalar;
use crate::verbitsky::{QuadraticSpace, VElement, VerbitskyAlgebra};

/// Matrix of a linear map on a space with monomial basis `masks`.
fn mask_operator<T: Scalar>(masks: &[u32], f: impl Fn(u32) -> ExteriorElement<T>) -> Matrix<T> {
    let n = masks.len();
    let mut m = Matrix::zeros(n, n);
    for (c, &mask) in masks.iter().enumerate() {
        for (&target, coeff) in f(mask).terms() {
            let r = masks.iter().position(|&x| x == target).expect("image stays in the basis");
            m[(r, c)] = coeff.clone();
        }
    }
    m
}

/// The flat model on an `n`-dimensional complex torus.
///
/// Both `HT` and `HΩ` are exterior algebras on `2n` generators. Slots
/// `1..=n` hold `dz̄_i` on both sides; slots `n+1..=2n` hold `∂_i` on the
/// polyvector side and `dz_i` on the form side. `dz̄_i` acts by wedging,
/// `∂_i` and `dz_i` act by contraction in their slot.
pub fn torus_model<T: Scalar>(n: usize) -> Result<PairModel<T>, PairError> {
    if n == 0 || n > 4 {
        return Err(PairError::BadParameter(format!("torus dimension must be 1..=4, got {n}")));
    }
    let space = OddSpace::new(2 * n).map_err(|e| PairError::BadParameter(e.to_string()))?;
    let mut masks: Vec<u32> = space.all_monomials().collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let antiholo = (1u32 << n) - 1;
    let split = |m: u32| ((m >> n).count_ones() as i64, (m & antiholo).count_ones() as i64);
    let label = |m: u32, holo: &str| {
        if m == 0 {
            return "1".to_string();
        }
        let parts: Vec<String> = (0..2 * n)
            .filter(|i| m & (1 << i) != 0)
            .map(|i| if i < n { format!("dzb{}", i + 1) } else { format!("{holo}{}", i - n + 1) })
            .collect();
        parts.join("^")
    };
    let form = |m: u32| ExteriorElement::<T>::from_mask(space, Variance::Form, m, T::one());
    let poly = |m: u32| ExteriorElement::<T>::from_mask(space, Variance::Polyvector, m, T::one());
    let wedge = |a: &ExteriorElement<T>, b: &ExteriorElement<T>| a.wedge(b).expect("same space and variance");

    // Generator actions, in slot order.
    let on_forms: Vec<Matrix<T>> = (0..2 * n)
        .map(|i| {
            let g = 1u32 << i;
            if i < n {
                mask_operator(&masks, |m| wedge(&form(g), &form(m)))
            } else {
                mask_operator(&masks, |m| contract_poly_into_form(&poly(g), &form(m)).expect("same space"))
            }
        })
        .collect();
    let on_polys: Vec<Matrix<T>> = (0..2 * n)
        .map(|i| {
            let g = 1u32 << i;
            if i < n {
                mask_operator(&masks, |m| wedge(&poly(g), &poly(m)))
            } else {
                mask_operator(&masks, |m| contract_form_into_poly(&form(g), &poly(m)).expect("same space"))
            }
        })
        .collect();
    // A monomial e_{i1}∧…∧e_{ik} acts as the composite, outermost first.
    let compose = |gens: &[Matrix<T>], m: u32| {
        (0..2 * n).filter(|i| m & (1 << i) != 0).fold(Matrix::identity(masks.len()), |acc, i| &acc * &gens[i])
    };

    let dim = masks.len();
    let mut top_integral = vec![T::zero(); dim];
    top_integral[dim - 1] = T::one();
    Ok(PairModel {
        name: format!("torus({n})"),
        dim: n,
        ht_basis: masks.iter().map(|&m| BasisClass::new(label(m, "del"), split(m).0, split(m).1)).collect(),
        hw_basis: masks.iter().map(|&m| BasisClass::new(label(m, "dz"), split(m).0, split(m).1)).collect(),
        ht_mul: masks.iter().map(|&g| mask_operator(&masks, |m| wedge(&poly(g), &poly(m)))).collect(),
        hw_mul: masks.iter().map(|&g| mask_operator(&masks, |m| wedge(&form(g), &form(m)))).collect(),
        action: masks.iter().map(|&m| compose(&on_forms, m)).collect(),
        form_action: masks.iter().map(|&m| compose(&on_polys, m)).collect(),
        ht_unit: unit_vector(dim, 0),
        hw_unit: unit_vector(dim, 0),
        top_integral,
        a_class: unit_vector(dim, 0),
        c1_class: Some(vec![T::zero(); dim]),
    })
}

/// A Verbitsky algebra with `n = 1` flattened to one basis `1, e_1…e_b, ω`.
struct Flat<T> {
    alg: VerbitskyAlgebra<T>,
    offsets: [usize; 3],
    dim: usize,
}

impl<T: Scalar> Flat<T> {
    fn new(gram: Matrix<T>) -> Result<Self, PairError> {
        let alg = VerbitskyAlgebra::build(QuadraticSpace::new(gram)?, 1)?;
        let dims = [alg.dim(0), alg.dim(1), alg.dim(2)];
        Ok(Self { offsets: [0, dims[0], dims[0] + dims[1]], dim: dims.iter().sum(), alg })
    }

    fn element(&self, flat: usize) -> VElement<T> {
        let k = (0..3).rev().find(|&k| flat >= self.offsets[k]).expect("offset 0");
        let mut coords = vec![T::zero(); self.alg.dim(k)];
        coords[flat - self.offsets[k]] = T::one();
        VElement { degree: k, coords }
    }

    fn left_mul(&self, flat: usize) -> Result<Matrix<T>, PairError> {
        let u = self.element(flat);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for k in 0..3 {
            if k + u.degree > 2 {
                continue;
            }
            let block = self.alg.multiplication_matrix(&u, k)?;
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    m[(self.offsets[k + u.degree] + r, self.offsets[k] + c)] = block[(r, c)].clone();
                }
            }
        }
        Ok(m)
    }
}

/// The block gram matrix `[[0,0,1],[0,G,0],[1,0,0]]`.
fn hyperbolic_frame<T: Scalar>(g: &Matrix<T>) -> Matrix<T> {
    let m = g.rows();
    let b = m + 2;
    Matrix::from_fn(b, b, |i, j| {
        if (i == 0 && j == b - 1) || (i == b - 1 && j == 0) {
            T::one()
        } else if (1..=m).contains(&i) && (1..=m).contains(&j) {
            g[(i - 1, j - 1)].clone()
        } else {
            T::zero()
        }
    })
}

/// A K3-like surface with `H² = ⟨σ⟩ ⊕ H^{1,1} ⊕ ⟨σ̄⟩`, where `q(σ,σ̄) = 1` and
/// `q` restricted to `H^{1,1}` is `g`.
///
/// Forms are the Verbitsky algebra of that lattice; `ω = σσ̄` with `∫ω = 1`.
/// Polyvectors form a second Verbitsky algebra on `β ∈ H⁰(Λ²T)`,
/// `ξ_i ∈ H¹(T)`, `θ ∈ H²(O)` acting by `Λ_σ`, `[Λ_σ, γ_i∧]` and `σ̄∧`
/// respectively; its form is `[[0,0,1],[0,−G,0],[1,0,0]]`, the sign on the
/// middle block being forced by `[Λ_σ, γ_i∧][Λ_σ, γ_j∧] = −G_ij Λ_σ σ̄∧`.
/// Forms act on polyvectors through `w ↦ w⌟σ`. The class `a` is `1 + λω`.
pub fn k3_like_model<T: Scalar>(g: &Matrix<T>, lambda: T) -> Result<PairModel<T>, PairError> {
    let m = g.rows();
    if m == 0 || g.cols() != m {
        return Err(PairError::BadParameter("the (1,1) gram matrix must be square and nonempty".into()));
    }
    let forms = Flat::new(hyperbolic_frame(g))?;
    let polys = Flat::new(hyperbolic_frame(&g.scale(&-T::one())))?;
    let (nw, nt) = (forms.dim, polys.dim);
    if nw != m + 4 || nt != m + 4 {
        return Err(PairError::Inconsistent("unexpected K3-like cohomology dimensions".into()));
    }
    let gamma_label = |i: usize| if m == 1 { "gamma".to_string() } else { format!("gamma{}", i + 1) };
    let xi_label = |i: usize| if m == 1 { "xi".to_string() } else { format!("xi{}", i + 1) };
    let mut hw_basis = vec![BasisClass::new("1", 0, 0), BasisClass::new("sigma", 2, 0)];
    hw_basis.extend((0..m).map(|i| BasisClass::new(gamma_label(i), 1, 1)));
    hw_basis.extend([BasisClass::new("sigmabar", 0, 2), BasisClass::new("omega", 2, 2)]);
    let mut ht_basis = vec![BasisClass::new("1", 0, 0), BasisClass::new("beta", 2, 0)];
    ht_basis.extend((0..m).map(|i| BasisClass::new(xi_label(i), 1, 1)));
    ht_basis.extend([BasisClass::new("theta", 0, 2), BasisClass::new("top", 2, 2)]);

    let hw_mul: Vec<Matrix<T>> = (0..nw).map(|k| forms.left_mul(k)).collect::<Result<_, _>>()?;
    let ht_mul: Vec<Matrix<T>> = (0..nt).map(|i| polys.left_mul(i)).collect::<Result<_, _>>()?;
    let (sigma, sigmabar, omega) = (1, m + 2, m + 3);
    let graded = GradedOperatorSpace::from_weights(hw_basis.iter().map(|b| b.bidegree.0 - 1).collect());
    let dual = complete_sl2(&graded, &hw_mul[sigma])?.lambda;
    let contraction_by_h11: Vec<Matrix<T>> = (0..m).map(|i| dual.commutator(&hw_mul[2 + i])).collect();
    let base = &dual * &hw_mul[sigmabar];
    let top_coeff = polys.alg.top_coefficient(&polys.alg.multiply(&polys.element(1), &polys.element(m + 2))?);
    let mut action = vec![Matrix::identity(nw), dual.clone()];
    action.extend(contraction_by_h11);
    action.push(hw_mul[sigmabar].clone());
    action.push(base.scale(&(T::one() / top_coeff)));

    let psi_cols: Vec<Vec<T>> = action.iter().map(|a| a.column(sigma)).collect();
    let psi = Matrix::from_columns(nw, &psi_cols);
    let psi_inv = psi.inverse().ok_or(PairError::Inconsistent("contraction against σ is not bijective".into()))?;
    let form_action = hw_mul.iter().map(|l| &(&psi_inv * l) * &psi).collect();

    let mut top_integral = vec![T::zero(); nw];
    top_integral[omega] = T::one();
    let mut a_class = unit_vector(nw, 0);
    a_class[omega] = lambda;
    Ok(PairModel {
        name: "k3_like".into(),
        dim: 2,
        ht_basis,
        hw_basis,
        ht_mul,
        hw_mul,
        action,
        form_action,
        ht_unit: unit_vector(nt, 0),
        hw_unit: unit_vector(nw, 0),
        top_integral,
        a_class,
        c1_class: Some(vec![T::zero(); nw]),
    })
}

/// A synthetic Calabi–Yau threefold with `h^{1,1} = h^{2,1} = 1`.
///
/// Forms `1, h, h², pt, Ω, χ, χ̄, Ω̄` with `h³ = d·pt`, `Ω∧Ω̄ = pt` and
/// `χ∧χ̄ = −pt`. Polyvectors `1, ξ, ξ², ξ³` with `ξ ∈ H¹(T)` acting by
/// `Ω ↦ χ ↦ κχ̄`, `χ̄ ↦ Ω̄`; `κ` plays the role of the Yukawa coupling. Forms of
/// positive degree act trivially on these polyvectors. `a = 1 + λh²`.
pub fn synthetic_cy3_model<T: Scalar>(degree: T, yukawa: T, lambda: T) -> Result<PairModel<T>, PairError> {
    if degree.is_zero() {
        return Err(PairError::BadParameter("h³ must be nonzero".into()));
    }
    let hw_basis = vec![
        BasisClass::new("1", 0, 0),
        BasisClass::new("h", 1, 1),
        BasisClass::new("h2", 2, 2),
        BasisClass::new("pt", 3, 3),
        BasisClass::new("Omega", 3, 0),
        BasisClass::new("chi", 2, 1),
        BasisClass::new("chibar", 1, 2),
        BasisClass::new("Omegabar", 0, 3),
    ];
    let (one, h, h2, pt, om, chi, chib, omb) = (0, 1, 2, 3, 4, 5, 6, 7);
    let mut products: Vec<(usize, usize, usize, T)> = vec![
        (h, h, h2, T::one()),
        (h, h2, pt, degree.clone()),
        (h2, h, pt, degree),
        (om, omb, pt, T::one()),
        (omb, om, pt, -T::one()),
        (chi, chib, pt, -T::one()),
        (chib, chi, pt, T::one()),
    ];
    for k in 0..8 {
        products.push((one, k, k, T::one()));
        if k != one {
            products.push((k, one, k, T::one()));
        }
    }
    let hw_mul = (0..8)
        .map(|left| {
            let mut mat = Matrix::zeros(8, 8);
            for (l, r, out, c) in &products {
                if *l == left {
                    mat[(*out, *r)] = c.clone();
                }
            }
            mat
        })
        .collect();

    let ht_basis = (0..4).map(|k| BasisClass::new(["1", "xi", "xi2", "xi3"][k], k as i64, k as i64)).collect();
    let ht_mul = (0..4)
        .map(|left| Matrix::from_fn(4, 4, |r, c| if r == left + c { T::one() } else { T::zero() }))
        .collect();
    let mut xi = Matrix::zeros(8, 8);
    xi[(chi, om)] = T::one();
    xi[(chib, chi)] = yukawa;
    xi[(omb, chib)] = T::one();
    let action = (0..4u32).map(|k| xi.pow(k)).collect();
    let form_action =
        (0..8).map(|k| if k == one { Matrix::identity(4) } else { Matrix::zeros(4, 4) }).collect();

    let mut top_integral = vec![T::zero(); 8];
    top_integral[pt] = T::one();
    let mut a_class = unit_vector(8, one);
    a_class[h2] = lambda;
    Ok(PairModel {
        name: "synthetic_cy3".into(),
        dim: 3,
        ht_basis,
        hw_basis,
        ht_mul,
        hw_mul,
        action,
        form_action,
        ht_unit: unit_vector(4, 0),
        hw_unit: unit_vector(8, one),
        top_integral,
        a_class,
        c1_class: Some(vec![T::zero(); 8]),
    })
}
