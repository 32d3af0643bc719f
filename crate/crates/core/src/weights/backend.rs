use serde_json::Value;

use super::WeightError;
use crate::linalg::Matrix;
use crate::scalar::{ExactText, Scalar};

/// A Lie algebra with an ad-invariant nondegenerate symmetric form, given in
/// a basis `e_0, …, e_{dim-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra<T> {
    dim: usize,
    /// `bracket[a·dim + b]` holds the coordinates of `[e_a, e_b]`.
    bracket: Vec<Vec<T>>,
    gram: Matrix<T>,
    gram_inv: Matrix<T>,
    /// `⟨[e_a, e_b], e_c⟩` at `a·dim² + b·dim + c`.
    structure: Vec<T>,
}

impl<T: Scalar> MetricLieAlgebra<T> {
    pub fn from_bracket(
        dim: usize,
        bracket: impl Fn(usize, usize) -> Vec<T>,
        gram: Matrix<T>,
    ) -> Result<Self, WeightError> {
        if gram.rows() != dim || gram.cols() != dim || gram.transpose() != gram {
            return Err(WeightError::Backend("metric must be a symmetric dim × dim matrix".into()));
        }
        let gram_inv = gram.inverse().ok_or_else(|| WeightError::Backend("metric is degenerate".into()))?;
        let table: Vec<Vec<T>> = (0..dim * dim).map(|k| bracket(k / dim, k % dim)).collect();
        if table.iter().any(|v| v.len() != dim) {
            return Err(WeightError::Backend("bracket coordinates have the wrong length".into()));
        }
        let mut structure = vec![T::zero(); dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    structure[(a * dim + b) * dim + c] =
                        (0..dim).fold(T::zero(), |s, d| s + table[a * dim + b][d].clone() * gram[(d, c)].clone());
                }
            }
        }
        let g = Self { dim, bracket: table, gram, gram_inv, structure };
        g.validate()?;
        Ok(g)
    }

    /// The abelian algebra of dimension `n` with the standard form.
    pub fn abelian(n: usize) -> Self {
        Self::from_bracket(n, |_, _| vec![T::zero(); n], Matrix::identity(n)).expect("abelian algebra")
    }

    /// `sl₂` in the basis `(h, e, f)` with `scale · tr(ab)` in the defining
    /// representation.
    pub fn sl2(scale: T) -> Result<Self, WeightError> {
        let bracket = |a: usize, b: usize| -> Vec<T> {
            let v = |h: i64, e: i64, f: i64| vec![T::from_int(h), T::from_int(e), T::from_int(f)];
            match (a, b) {
                (0, 1) => v(0, 2, 0),
                (1, 0) => v(0, -2, 0),
                (0, 2) => v(0, 0, -2),
                (2, 0) => v(0, 0, 2),
                (1, 2) => v(1, 0, 0),
                (2, 1) => v(-1, 0, 0),
                _ => v(0, 0, 0),
            }
        };
        let trace_form = Matrix::from_rows(vec![
            vec![T::from_int(2), T::zero(), T::zero()],
            vec![T::zero(), T::zero(), T::one()],
            vec![T::zero(), T::one(), T::zero()],
        ]);
        Self::from_bracket(3, bracket, trace_form.scale(&scale))
    }

    /// `gl_n` in the basis of matrix units `E_ij` (index `i·n + j`) with
    /// `⟨a, b⟩ = tr(ab)`.
    pub fn gl(n: usize) -> Self {
        let dim = n * n;
        let bracket = |a: usize, b: usize| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            let mut v = vec![T::zero(); dim];
            if j == k {
                v[i * n + l] = v[i * n + l].clone() + T::one();
            }
            if l == i {
                v[k * n + j] = v[k * n + j].clone() - T::one();
            }
            v
        };
        let gram = Matrix::from_fn(dim, dim, |a, b| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k && l == i {
                T::one()
            } else {
                T::zero()
            }
        });
        Self::from_bracket(dim, bracket, gram).expect("gl_n is a metric Lie algebra")
    }

    /// The same bracket with the form multiplied by `s`.
    pub fn rescaled(&self, s: &T) -> Result<Self, WeightError> {
        let table = self.bracket.clone();
        let dim = self.dim;
        Self::from_bracket(dim, move |a, b| table[a * dim + b].clone(), self.gram.scale(s))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix<T> {
        &self.gram_inv
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[T] {
        &self.bracket[a * self.dim + b]
    }

    /// `c_{abc} = ⟨[e_a, e_b], e_c⟩`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> &T {
        &self.structure[(a * self.dim + b) * self.dim + c]
    }

    fn bracket_vec(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for a in 0..self.dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.dim {
                if y[b].is_zero() {
                    continue;
                }
                let k = x[a].clone() * y[b].clone();
                for (o, v) in out.iter_mut().zip(self.bracket(a, b)) {
                    *o = o.clone() + k.clone() * v.clone();
                }
            }
        }
        out
    }

    /// Checks antisymmetry of `c` in every index pair and the Jacobi identity.
    pub fn validate(&self) -> Result<(), WeightError> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let x = self.structure_constant(a, b, c);
                    if *x != -self.structure_constant(b, a, c).clone() || *x != -self.structure_constant(a, c, b).clone() {
                        return Err(WeightError::Backend(format!("⟨[e{a},e{b}],e{c}⟩ is not totally antisymmetric")));
                    }
                }
            }
        }
        let unit = |i: usize| crate::linalg::unit_vector::<T>(n, i);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = self.bracket_vec(&self.bracket_vec(&unit(a), &unit(b)), &unit(c));
                    let bc_a = self.bracket_vec(&self.bracket_vec(&unit(b), &unit(c)), &unit(a));
                    let ca_b = self.bracket_vec(&self.bracket_vec(&unit(c), &unit(a)), &unit(b));
                    if (0..n).any(|k| !(ab_c[k].clone() + bc_a[k].clone() + ca_b[k].clone()).is_zero()) {
                        return Err(WeightError::Backend(format!("Jacobi identity fails on e{a}, e{b}, e{c}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A representation `ρ: g → End(E)`, one matrix per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct LieModule<T> {
    pub rho: Vec<Matrix<T>>,
}

impl<T: Scalar> LieModule<T> {
    pub fn new(g: &MetricLieAlgebra<T>, rho: Vec<Matrix<T>>) -> Result<Self, WeightError> {
        let m = Self { rho };
        m.validate(g)?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.rho.first().map_or(0, |r| r.rows())
    }

    /// Checks `ρ([e_a, e_b]) = [ρ(e_a), ρ(e_b)]` on all basis pairs.
    pub fn validate(&self, g: &MetricLieAlgebra<T>) -> Result<(), WeightError> {
        let e = self.dim();
        if self.rho.len() != g.dim() || self.rho.iter().any(|r| r.rows() != e || r.cols() != e) {
            return Err(WeightError::Backend("module matrices do not match the algebra".into()));
        }
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let mut lhs = Matrix::zeros(e, e);
                for (k, c) in g.bracket(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        lhs = &lhs + &self.rho[k].scale(c);
                    }
                }
                if lhs != self.rho[a].commutator(&self.rho[b]) {
                    return Err(WeightError::Backend(format!("ρ is not a morphism on e{a}, e{b}")));
                }
            }
        }
        Ok(())
    }
}

/// An algebra together with the module used for ordered legs.
#[derive(Debug, Clone)]
pub struct Backend<T> {
    pub name: String,
    pub algebra: MetricLieAlgebra<T>,
    pub module: Option<LieModule<T>>,
}

impl<T: Scalar> Backend<T> {
    /// Abelian of dimension `n`, acting on a line by the characters
    /// `e_a ↦ a + 1`.
    pub fn abelian(n: usize) -> Self {
        let algebra = MetricLieAlgebra::abelian(n);
        let rho = (0..n).map(|a| Matrix::from_rows(vec![vec![T::from_int(a as i64 + 1)]])).collect();
        let module = LieModule::new(&algebra, rho).expect("characters of an abelian algebra");
        Self { name: format!("abelian{n}"), algebra, module: Some(module) }
    }

    /// `sl₂` with its defining representation.
    pub fn sl2(scale: T) -> Result<Self, WeightError> {
        let algebra = MetricLieAlgebra::sl2(scale.clone())?;
        let m = |rows: [[i64; 2]; 2]| Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from_int(x)).collect()).collect());
        let rho = vec![m([[1, 0], [0, -1]]), m([[0, 1], [0, 0]]), m([[0, 0], [1, 0]])];
        let module = LieModule::new(&algebra, rho)?;
        let name = if scale == T::one() { "sl2".to_string() } else { format!("sl2(scale {scale:?})") };
        Ok(Self { name, algebra, module: Some(module) })
    }

    /// `gl_n` with its defining representation.
    pub fn gl(n: usize) -> Self {
        let algebra = MetricLieAlgebra::gl(n);
        let rho = (0..n * n)
            .map(|a| Matrix::from_fn(n, n, |i, j| if i * n + j == a { T::one() } else { T::zero() }))
            .collect();
        let module = LieModule::new(&algebra, rho).expect("defining representation");
        Self { name: format!("gl{n}"), algebra, module: Some(module) }
    }

    /// The same backend with the form multiplied by `s`.
    pub fn rescaled(&self, s: &T) -> Result<Self, WeightError> {
        Ok(Self {
            name: format!("{} rescaled", self.name),
            algebra: self.algebra.rescaled(s)?,
            module: self.module.clone(),
        })
    }
}

impl<T: ExactText> Backend<T> {
    /// Reads `{"kind":"gl","n":2}`, `{"kind":"sl2","scale":"1/2"}` or
    /// `{"kind":"abelian","n":3}`; short names `gl2`, `sl2`, `abelian3` are
    /// accepted as plain strings.
    pub fn from_descriptor(v: &Value) -> Result<Self, WeightError> {
        if let Some(s) = v.as_str() {
            return Self::from_name(s);
        }
        let bad = |m: &str| WeightError::Backend(format!("backend descriptor: {m}"));
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing kind"))?;
        let n = || v.get("n").and_then(Value::as_u64).map(|n| n as usize).ok_or_else(|| bad("missing n"));
        match kind {
            "gl" => Ok(Self::gl(n()?)),
            "abelian" => Ok(Self::abelian(n()?)),
            "sl2" => {
                let scale = match v.get("scale") {
                    None => T::one(),
                    Some(Value::String(s)) => T::parse_exact(s).ok_or_else(|| bad("scale is not a rational"))?,
                    Some(Value::Number(k)) => {
                        T::from_int(k.as_i64().ok_or_else(|| bad("scale must be an integer or a string"))?)
                    }
                    Some(_) => return Err(bad("scale must be an integer or a string")),
                };
                if scale.is_zero() {
                    return Err(bad("scale must be nonzero"));
                }
                Self::sl2(scale)
            }
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }

    pub fn from_name(name: &str) -> Result<Self, WeightError> {
        let bad = || WeightError::Backend(format!("unknown backend {name:?}"));
        if name == "sl2" {
            return Self::sl2(T::one());
        }
        if let Some(n) = name.strip_prefix("gl") {
            return n.parse().ok().filter(|&n| n >= 1).map(Self::gl).ok_or_else(bad);
        }
        if let Some(n) = name.strip_prefix("abelian") {
            return n.parse().ok().map(Self::abelian).ok_or_else(bad);
        }
        Err(bad())
    }
}
