use super::backend::Backend;
use super::evaluate::{Evaluator, WeightValue};
use super::WeightError;
use crate::jacobi::{exp_strut, inner_glue, relabel_delta, strut, union_product, DiagramSeries, JacobiError};
use crate::scalar::Scalar;

/// One row per backend and degree.
#[derive(Debug, Clone)]
pub struct IdentityRow<T> {
    pub backend: String,
    pub degree: usize,
    /// Weight of `lhs − rhs` in this degree; `None` when it vanishes.
    pub residual: Option<WeightValue<T>>,
    /// Whether the residual rescales by `s^{-degree}` when the form is
    /// multiplied by `s`.
    pub scaling_covariant: bool,
}

#[derive(Debug, Clone)]
pub struct IdentityReport<T> {
    pub rows: Vec<IdentityRow<T>>,
}

impl<T: Scalar> IdentityReport<T> {
    /// All residuals vanish and every degree rescales as expected. Vanishing
    /// on finitely many backends is evidence for the identity in graph
    /// homology, so this reads as "consistent" rather than "equal".
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.residual.is_none() && r.scaling_covariant)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRow<T>> {
        self.rows.iter().filter(|r| r.residual.is_some() || !r.scaling_covariant)
    }
}

/// Compares the weights of `lhs` and `rhs` degree by degree up to
/// `max_degree` on every backend, and checks the expected rescaling of each
/// residual under doubling the invariant form.
pub fn verify_series_identity<T: Scalar>(
    lhs: &DiagramSeries<T>,
    rhs: &DiagramSeries<T>,
    max_degree: usize,
    backends: &[Backend<T>],
) -> Result<IdentityReport<T>, WeightError> {
    let diff = lhs.sub(rhs).truncate(max_degree);
    let factor = T::from_int(2);
    let mut rows = Vec::new();
    for backend in backends {
        let doubled = backend.rescaled(&factor)?;
        let mut plain = Evaluator::new(backend);
        let mut scaled = Evaluator::new(&doubled);
        for degree in 0..=max_degree {
            let part = diff.degree_part(degree);
            let residual = plain.series(&part)?;
            let rescaled = scaled.series(&part)?;
            let expected = residual.scale(&(T::one() / factor.pow_u(degree as u32)));
            rows.push(IdentityRow {
                backend: backend.name.clone(),
                degree,
                scaling_covariant: rescaled == expected,
                residual: (!residual.is_zero()).then_some(residual),
            });
        }
    }
    Ok(IdentityReport { rows })
}

/// Both sides of `Ω_x ⌟_x exp(ₓstrut_y) = Ω_y ∪_y exp(ₓstrut_y)` for a wheel
/// series `omega` labelled `x`, truncated at `max_degree`.
pub fn wheel_strut_identity<T: Scalar>(
    omega: &DiagramSeries<T>,
    max_degree: usize,
) -> Result<(DiagramSeries<T>, DiagramSeries<T>), JacobiError> {
    let omega = omega.truncate(max_degree);
    let exp_xy = exp_strut::<T>("x", "y", 2 * max_degree);
    let lhs = inner_glue(&omega, &exp_xy, "x")?.truncate(max_degree);
    let omega_y = relabel_delta(&omega, "x", "y")?;
    let rhs = union_product(&omega_y, &exp_xy, &["y"])?.truncate(max_degree);
    Ok((lhs, rhs))
}

/// Both sides of
/// `Ω_x ⌟_x (exp(ₓstrut_y) ∪_x ½ ₓstrutₓ) = ½ _ystrut_y ⌟_y (Ω_y ∪_y exp(ₓstrut_y))`.
pub fn wheel_half_strut_identity<T: Scalar>(
    omega: &DiagramSeries<T>,
    max_degree: usize,
) -> Result<(DiagramSeries<T>, DiagramSeries<T>), JacobiError> {
    let big = 2 * max_degree + 2;
    let omega = omega.truncate(max_degree);
    let half = T::one() / T::from_int(2);
    let exp_xy = exp_strut::<T>("x", "y", big);
    let half_xx = DiagramSeries::single(strut("x", "x"), big).scale(&half);
    let half_yy = DiagramSeries::single(strut("y", "y"), big).scale(&half);
    let lhs = inner_glue(&omega, &union_product(&exp_xy, &half_xx, &["x"])?, "x")?.truncate(max_degree);
    let omega_y = relabel_delta(&omega, "x", "y")?.truncate(big);
    let rhs = inner_glue(&half_yy, &union_product(&omega_y, &exp_xy, &["y"])?, "y")?.truncate(max_degree);
    Ok((lhs, rhs))
}
