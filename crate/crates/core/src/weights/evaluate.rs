use std::collections::{BTreeMap, HashMap};

use super::backend::{Backend, MetricLieAlgebra};
use super::WeightError;
use crate::jacobi::{DiagramSeries, JacobiDiagram, LabelKind};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A star-label monomial: for each star label with legs, the sorted basis
/// indices carried by those legs.
pub type Monomial = Vec<(String, Vec<u8>)>;

/// An element of `S(g)^{⊗ star labels} ⊗ End(E)`.
///
/// Symmetric tensors are stored as polynomials in the basis of `g`, so the
/// symmetrized tensor product is the polynomial product. The `End(E)` part
/// is an `e × e` matrix in row-major order; diagrams without interval legs
/// contribute scalar multiples of the identity, and without a module `e = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightValue<T> {
    end_dim: usize,
    terms: BTreeMap<Monomial, Vec<T>>,
}

impl<T: Scalar> WeightValue<T> {
    pub fn zero(end_dim: usize) -> Self {
        Self { end_dim, terms: BTreeMap::new() }
    }

    pub fn end_dim(&self) -> usize {
        self.end_dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Vec<T>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Vec<T> {
        self.terms.get(monomial).cloned().unwrap_or_else(|| vec![T::zero(); self.end_dim * self.end_dim])
    }

    fn accumulate(&mut self, key: Monomial, value: &[T], scale: &T) {
        let slot = self.terms.entry(key.clone()).or_insert_with(|| vec![T::zero(); value.len()]);
        for (s, v) in slot.iter_mut().zip(value) {
            *s = s.clone() + v.clone() * scale.clone();
        }
        if slot.iter().all(T::is_zero) {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &T) {
        for (k, v) in &other.terms {
            self.accumulate(k.clone(), v, scale);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-T::one());
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.end_dim);
        out.add_scaled(self, s);
        out
    }

    /// Symmetrized tensor product of the star parts, composition of the
    /// `End(E)` parts (`self` first).
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.end_dim);
        let e = self.end_dim;
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut merged: BTreeMap<String, Vec<u8>> = k1.iter().cloned().collect();
                for (label, idx) in k2 {
                    let slot = merged.entry(label.clone()).or_default();
                    slot.extend(idx);
                    slot.sort_unstable();
                }
                let prod: Vec<T> = (0..e * e)
                    .map(|rc| {
                        let (r, c) = (rc / e, rc % e);
                        (0..e).fold(T::zero(), |s, k| s + v1[r * e + k].clone() * v2[k * e + c].clone())
                    })
                    .collect();
                out.accumulate(merged.into_iter().collect(), &prod, &T::one());
            }
        }
        out
    }
}

/// Tensor values on the open legs, keyed by the basis index of each leg in
/// leg order.
type OpenTensor<T> = HashMap<Vec<u8>, T>;

fn end_dim<T: Scalar>(backend: &Backend<T>) -> usize {
    backend.module.as_ref().map_or(1, |m| m.dim())
}

fn check_labels<T: Scalar>(d: &JacobiDiagram, backend: &Backend<T>) -> Result<Option<String>, WeightError> {
    let mut interval = None;
    for (label, kind) in d.labels() {
        if d.leg_count(label) == 0 {
            continue;
        }
        if kind.is_ordered() && backend.module.is_none() {
            return Err(WeightError::MissingModule(label.clone()));
        }
        if *kind == LabelKind::Interval {
            if interval.is_some() {
                return Err(WeightError::Unsupported("more than one interval label".into()));
            }
            interval = Some(label.clone());
        }
    }
    if backend.algebra.dim() > u8::MAX as usize {
        return Err(WeightError::Unsupported("algebra dimension above 255".into()));
    }
    Ok(interval)
}

/// Turns the open tensor into a weight value: `ρ` applied along interval and
/// circle orders, trace on circles, star legs collected into monomials.
fn finish<T: Scalar>(d: &JacobiDiagram, open: &OpenTensor<T>, backend: &Backend<T>, interval: Option<&str>) -> WeightValue<T> {
    let e = end_dim(backend);
    let mut out = WeightValue::zero(e);
    let stars: Vec<(&String, Vec<usize>)> = d
        .labels()
        .iter()
        .filter(|(l, k)| **k == LabelKind::Star && d.leg_count(l) > 0)
        .map(|(l, _)| (l, d.legs_with(l)))
        .collect();
    let circles: Vec<Vec<usize>> = d
        .labels()
        .iter()
        .filter(|(l, k)| **k == LabelKind::Circle && d.leg_count(l) > 0)
        .map(|(l, _)| d.legs_with(l))
        .collect();
    let interval_legs = interval.map(|l| d.legs_with(l)).unwrap_or_default();
    let rho = backend.module.as_ref().map(|m| &m.rho);
    let compose = |legs: &[usize], idx: &[u8]| -> Matrix<T> {
        legs.iter().fold(Matrix::identity(e), |acc, &l| {
            &acc * &rho.expect("module checked for ordered labels")[idx[l] as usize]
        })
    };

    for (idx, value) in open {
        let mut scalar = value.clone();
        for legs in &circles {
            let m = compose(legs, idx);
            scalar = scalar * (0..e).fold(T::zero(), |s, i| s + m[(i, i)].clone());
        }
        if scalar.is_zero() {
            continue;
        }
        let end = compose(&interval_legs, idx);
        let flat: Vec<T> = (0..e * e).map(|rc| end[(rc / e, rc % e)].clone()).collect();
        let key: Monomial = stars
            .iter()
            .map(|(l, legs)| {
                let mut v: Vec<u8> = legs.iter().map(|&i| idx[i]).collect();
                v.sort_unstable();
                ((*l).clone(), v)
            })
            .collect();
        out.accumulate(key, &flat, &scalar);
    }
    out
}

#[derive(Debug, Clone)]
struct Factor<T> {
    vars: Vec<usize>,
    entries: HashMap<Vec<u8>, T>,
}

impl<T: Scalar> Factor<T> {
    fn multiply(&self, other: &Self) -> Self {
        let shared: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| other.vars.iter().position(|w| w == v).map(|j| (i, j)))
            .collect();
        let extra: Vec<usize> = (0..other.vars.len()).filter(|j| !shared.iter().any(|&(_, s)| s == *j)).collect();
        let mut index: HashMap<Vec<u8>, Vec<(&Vec<u8>, &T)>> = HashMap::new();
        for (k, v) in &other.entries {
            index.entry(shared.iter().map(|&(_, j)| k[j]).collect()).or_default().push((k, v));
        }
        let mut entries = HashMap::new();
        for (k, v) in &self.entries {
            let probe: Vec<u8> = shared.iter().map(|&(i, _)| k[i]).collect();
            if let Some(matches) = index.get(&probe) {
                for (k2, v2) in matches {
                    let mut key = k.clone();
                    key.extend(extra.iter().map(|&j| k2[j]));
                    entries.insert(key, v.clone() * (*v2).clone());
                }
            }
        }
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|&j| other.vars[j]));
        Self { vars, entries }
    }

    fn sum_out(&self, var: usize) -> Self {
        let pos = self.vars.iter().position(|&v| v == var).expect("variable present");
        let mut entries: HashMap<Vec<u8>, T> = HashMap::new();
        for (k, v) in &self.entries {
            let mut key = k.clone();
            key.remove(pos);
            let slot = entries.entry(key).or_insert_with(T::zero);
            *slot = slot.clone() + v.clone();
        }
        entries.retain(|_, v| !v.is_zero());
        let mut vars = self.vars.clone();
        vars.remove(pos);
        Self { vars, entries }
    }
}

fn vertex_factor<T: Scalar>(g: &MetricLieAlgebra<T>, halves: [usize; 3]) -> Factor<T> {
    let n = g.dim();
    let mut entries = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = g.structure_constant(a, b, c);
                if !v.is_zero() {
                    entries.insert(vec![a as u8, b as u8, c as u8], v.clone());
                }
            }
        }
    }
    Factor { vars: halves.to_vec(), entries }
}

fn edge_factor<T: Scalar>(g: &MetricLieAlgebra<T>, h: usize, m: usize) -> Factor<T> {
    let n = g.dim();
    let mut entries = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let v = &g.gram_inv()[(a, b)];
            if !v.is_zero() {
                entries.insert(vec![a as u8, b as u8], v.clone());
            }
        }
    }
    Factor { vars: vec![h, m], entries }
}

/// Contracts the tensor network of `d` by eliminating one inner half-edge
/// at a time, always choosing the elimination that creates the smallest
/// intermediate factor.
fn contract<T: Scalar>(d: &JacobiDiagram, g: &MetricLieAlgebra<T>) -> OpenTensor<T> {
    let t = d.trivalent_count();
    let mut factors: Vec<Factor<T>> = (0..t).map(|v| vertex_factor(g, [3 * v, 3 * v + 1, 3 * v + 2])).collect();
    for (h, &m) in d.mate().iter().enumerate() {
        if h < m {
            factors.push(edge_factor(g, h, m));
        }
    }
    let mut inner: Vec<usize> = (0..3 * t).collect();
    while !inner.is_empty() {
        let (pos, _) = inner
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut span: Vec<usize> =
                    factors.iter().filter(|f| f.vars.contains(&v)).flat_map(|f| f.vars.iter().copied()).collect();
                span.sort_unstable();
                span.dedup();
                (i, span.len())
            })
            .min_by_key(|&(_, size)| size)
            .expect("nonempty");
        let var = inner.swap_remove(pos);
        let (touching, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.vars.contains(&var));
        let merged = touching.iter().skip(1).fold(touching[0].clone(), |acc, f| acc.multiply(f));
        factors = rest;
        factors.push(merged.sum_out(var));
    }
    let legs = d.legs().len();
    let whole = factors.iter().fold(Factor { vars: Vec::new(), entries: HashMap::from([(Vec::new(), T::one())]) }, |acc, f| {
        acc.multiply(f)
    });
    let order: Vec<usize> = (0..legs).map(|i| whole.vars.iter().position(|&v| v == 3 * t + i).expect("open leg")).collect();
    whole
        .entries
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (order.iter().map(|&p| k[p]).collect(), v))
        .collect()
}

/// The weight of a diagram.
pub fn evaluate<T: Scalar>(d: &JacobiDiagram, backend: &Backend<T>) -> Result<WeightValue<T>, WeightError> {
    let interval = check_labels(d, backend)?;
    let open = contract(d, &backend.algebra);
    Ok(finish(d, &open, backend, interval.as_deref()))
}

/// The weight of a diagram by summing over every assignment of basis
/// indices to half-edges. Exponential in the number of half-edges.
pub fn evaluate_naive<T: Scalar>(d: &JacobiDiagram, backend: &Backend<T>) -> Result<WeightValue<T>, WeightError> {
    let interval = check_labels(d, backend)?;
    let g = &backend.algebra;
    let n = g.dim();
    let halves = d.half_edge_count();
    let t = d.trivalent_count();
    let mut assignment = vec![0usize; halves];
    let mut open: OpenTensor<T> = HashMap::new();
    let total = n.checked_pow(halves as u32).ok_or_else(|| WeightError::Unsupported("diagram too large".into()))?;
    for code in 0..total {
        let mut c = code;
        for slot in assignment.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        let mut value = T::one();
        for v in 0..t {
            value = value * g.structure_constant(assignment[3 * v], assignment[3 * v + 1], assignment[3 * v + 2]).clone();
            if value.is_zero() {
                break;
            }
        }
        if value.is_zero() {
            continue;
        }
        for (h, &m) in d.mate().iter().enumerate() {
            if h < m {
                value = value * g.gram_inv()[(assignment[h], assignment[m])].clone();
            }
        }
        if value.is_zero() {
            continue;
        }
        let key: Vec<u8> = (0..d.legs().len()).map(|i| assignment[3 * t + i] as u8).collect();
        let slot = open.entry(key).or_insert_with(T::zero);
        *slot = slot.clone() + value;
    }
    open.retain(|_, v| !v.is_zero());
    Ok(finish(d, &open, backend, interval.as_deref()))
}

/// Evaluates series term by term, reusing the weight of every diagram it
/// has already seen.
pub struct Evaluator<'a, T> {
    backend: &'a Backend<T>,
    cache: HashMap<JacobiDiagram, WeightValue<T>>,
}

impl<'a, T: Scalar> Evaluator<'a, T> {
    pub fn new(backend: &'a Backend<T>) -> Self {
        Self { backend, cache: HashMap::new() }
    }

    pub fn diagram(&mut self, d: &JacobiDiagram) -> Result<WeightValue<T>, WeightError> {
        let key = d.canonical();
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = evaluate(&key, self.backend)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    pub fn series(&mut self, s: &DiagramSeries<T>) -> Result<WeightValue<T>, WeightError> {
        let mut out = WeightValue::zero(end_dim(self.backend));
        for (d, c) in s.terms() {
            let v = self.diagram(d)?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }
}

pub fn evaluate_series<T: Scalar>(s: &DiagramSeries<T>, backend: &Backend<T>) -> Result<WeightValue<T>, WeightError> {
    Evaluator::new(backend).series(s)
}
