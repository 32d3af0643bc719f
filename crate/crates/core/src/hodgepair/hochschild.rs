//! The Hochschild side as a transported copy of a pair model, Kontsevich
//! twists of isomorphism pairs, and the checks built on them.

use rand::Rng;

use super::{apply_combination, combine, PairError, PairModel};
use crate::lefschetz::{joint_annihilator, GradedOperatorSpace};
use crate::linalg::{same_span, span_rank, Matrix};
use crate::sampling::{rng, small_rational};
use crate::scalar::Scalar;

/// A ring isomorphism `HH* → HT*` and a module isomorphism `HH_* → HΩ_*`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedIsoPair<T> {
    pub ring_iso: Matrix<T>,
    pub module_iso: Matrix<T>,
}

impl<T: Scalar> TwistedIsoPair<T> {
    pub fn identity(model: &PairModel<T>) -> Self {
        Self { ring_iso: Matrix::identity(model.ht_dim()), module_iso: Matrix::identity(model.hw_dim()) }
    }

    /// Whether both maps are invertible and preserve the `HT` and `HΩ`
    /// degrees (sources carry the degrees of the model basis).
    pub fn is_graded_iso(&self, model: &PairModel<T>) -> bool {
        let ring_graded = (0..model.ht_dim()).all(|r| {
            (0..model.ht_dim()).all(|c| self.ring_iso[(r, c)].is_zero() || model.ht_degree(r) == model.ht_degree(c))
        });
        let module_graded = (0..model.hw_dim()).all(|r| {
            (0..model.hw_dim()).all(|c| self.module_iso[(r, c)].is_zero() || model.hw_degree(r) == model.hw_degree(c))
        });
        ring_graded
            && module_graded
            && self.ring_iso.inverse().is_some()
            && self.module_iso.inverse().is_some()
    }
}

/// `(a^{-1} ⌟ ·) ∘ ring_iso` and `(a ∧ ·) ∘ module_iso`.
pub fn twist<T: Scalar>(
    model: &PairModel<T>,
    pair: &TwistedIsoPair<T>,
    a: &[T],
) -> Result<TwistedIsoPair<T>, PairError> {
    if a.len() != model.hw_dim() {
        return Err(PairError::LengthMismatch { expected: model.hw_dim(), found: a.len() });
    }
    let a_inv = model.hw_inverse(a)?;
    Ok(TwistedIsoPair {
        ring_iso: &model.form_action_of(&a_inv) * &pair.ring_iso,
        module_iso: &model.hw_left(a) * &pair.module_iso,
    })
}

/// A block-diagonal automorphism for the given degree list: unit lower
/// triangular times an invertible diagonal inside each degree block.
pub fn random_graded_automorphism<T: Scalar>(degrees: &[i64], rng: &mut impl Rng) -> Matrix<T> {
    let n = degrees.len();
    let mut lower = Matrix::identity(n);
    let mut diag = Matrix::zeros(n, n);
    for i in 0..n {
        let mut d: T = small_rational(rng, 3, 2);
        while d.is_zero() {
            d = small_rational(rng, 3, 2);
        }
        diag[(i, i)] = d;
        for j in 0..i {
            if degrees[i] == degrees[j] {
                lower[(i, j)] = small_rational(rng, 2, 3);
            }
        }
    }
    &lower * &diag
}

/// Cup and cap products on the Hochschild side, in coordinates.
#[derive(Debug, Clone)]
pub struct HochschildSide<T> {
    /// `cup[i]`: matrix of `e_i ∪ ·`.
    pub cup: Vec<Matrix<T>>,
    /// `cap[i]`: matrix of `e_i ∩ ·`.
    pub cap: Vec<Matrix<T>>,
    pub ring_degrees: Vec<i64>,
    pub module_degrees: Vec<i64>,
}

impl<T: Scalar> HochschildSide<T> {
    /// Transports the products of `model` along `pair`, so that `pair` is
    /// multiplicative and module-compatible by construction.
    pub fn transport(model: &PairModel<T>, pair: &TwistedIsoPair<T>) -> Result<Self, PairError> {
        let ring_inv = pair.ring_iso.inverse().ok_or(PairError::NotInvertible)?;
        let module_inv = pair.module_iso.inverse().ok_or(PairError::NotInvertible)?;
        let mut cup = Vec::with_capacity(model.ht_dim());
        let mut cap = Vec::with_capacity(model.ht_dim());
        for i in 0..model.ht_dim() {
            let image = pair.ring_iso.column(i);
            cup.push(&(&ring_inv * &model.ht_left(&image)) * &pair.ring_iso);
            cap.push(&(&module_inv * &model.action_of(&image)) * &pair.module_iso);
        }
        Ok(Self {
            cup,
            cap,
            ring_degrees: (0..model.ht_dim()).map(|i| model.ht_degree(i)).collect(),
            module_degrees: (0..model.hw_dim()).map(|k| model.hw_degree(k)).collect(),
        })
    }

    pub fn cup(&self, v: &[T], w: &[T]) -> Vec<T> {
        apply_combination(&self.cup, v, w)
    }

    pub fn cap(&self, v: &[T], alpha: &[T]) -> Vec<T> {
        apply_combination(&self.cap, v, alpha)
    }

    pub fn cap_matrix(&self, v: &[T]) -> Matrix<T> {
        combine(&self.cap, v, self.module_degrees.len())
    }
}

/// A seeded synthetic instance: a Hochschild side transported along a random
/// graded automorphism pair, which then plays the role of `(I^K, I_K)`.
/// Returns the side, that Kontsevich pair, and the untwisted pair obtained
/// by twisting back with `a^{-1}`.
pub fn synthetic_instance<T: Scalar>(
    model: &PairModel<T>,
    seed: u64,
) -> Result<(HochschildSide<T>, TwistedIsoPair<T>, TwistedIsoPair<T>), PairError> {
    let mut r = rng(seed);
    let ht_deg: Vec<i64> = (0..model.ht_dim()).map(|i| model.ht_degree(i)).collect();
    let hw_deg: Vec<i64> = (0..model.hw_dim()).map(|k| model.hw_degree(k)).collect();
    let kontsevich = TwistedIsoPair {
        ring_iso: random_graded_automorphism(&ht_deg, &mut r),
        module_iso: random_graded_automorphism(&hw_deg, &mut r),
    };
    let side = HochschildSide::transport(model, &kontsevich)?;
    let a_inv = model.hw_inverse(&model.a_class)?;
    let untwisted = twist(model, &kontsevich, &a_inv)?;
    Ok((side, kontsevich, untwisted))
}

/// Outcome of comparing a standard and a `td`-modified module isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TdTwistReport {
    /// `tilde = (td ∧ ·) ∘ std` as matrices.
    pub full: bool,
    /// Both maps agree on every source whose standard image lies in top
    /// holomorphic degree.
    pub top_projection: bool,
}

impl TdTwistReport {
    pub fn holds(&self) -> bool {
        self.full && self.top_projection
    }
}

pub fn check_td_twist_relation<T: Scalar>(
    model: &PairModel<T>,
    pair_std: &TwistedIsoPair<T>,
    pair_tilde: &TwistedIsoPair<T>,
    td: &[T],
) -> TdTwistReport {
    let full = pair_tilde.module_iso == &model.hw_left(td) * &pair_std.module_iso;
    // Sources x with std(x) supported on classes H^s(Ω^m): the kernel of
    // std followed by projection away from holomorphic degree m.
    let m = model.dim as i64;
    let off_top: Vec<usize> = (0..model.hw_dim()).filter(|&k| model.hw_basis[k].bidegree.0 != m).collect();
    let all: Vec<usize> = (0..model.hw_dim()).collect();
    let sources = pair_std.module_iso.select(&off_top, &all).kernel();
    let top_projection = sources.iter().all(|x| pair_std.module_iso.apply(x) == pair_tilde.module_iso.apply(x));
    TdTwistReport { full, top_projection }
}

/// One link of the chain `I_K(v∩(v₀∩α)) = … = I^K(v) ⌟ I_K(v₀∩α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStep {
    /// `v∩(v₀∩α) = (v∪v₀)∩α` on the Hochschild side.
    Associativity,
    /// `I_K((v∪v₀)∩α) = I^K(v∪v₀) ⌟ I_K(α)`.
    InnerCompatibility,
    /// `I^K(v∪v₀) = I^K(v) ∧ I^K(v₀)`.
    Multiplicativity,
    /// `(w∧w₀)⌟β = w⌟(w₀⌟β)`.
    ModuleAxiom,
    /// `I^K(v₀) ⌟ I_K(α) = I_K(v₀∩α)`.
    OuterCompatibility,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompatFailure {
    /// `I^K(p_i ∪ p_j) ≠ I^K(p_i) ∧ I^K(p_j)` for probes `i, j`.
    Multiplicativity { left: usize, right: usize },
    /// `I_K(p ∩ g) ≠ I^K(p) ⌟ I_K(g)` for a probe and a generator.
    GeneratorCompatibility { probe: usize, generator: usize },
    /// Compatibility fails for `probe ∩ (word ∩ generator)`, where `word`
    /// lists probe indices from the outside in.
    Chain { probe: usize, word: Vec<usize>, generator: usize, step: Option<ChainStep> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationReport {
    /// Submodule elements visited by the enumeration.
    pub enumerated: usize,
    /// Linearly independent elements on which compatibility was checked;
    /// compatibility on their span follows by linearity.
    pub independent: usize,
    pub failure: Option<CompatFailure>,
}

impl PropagationReport {
    pub fn compatible(&self) -> bool {
        self.failure.is_none()
    }
}

struct Node<T> {
    word: Vec<usize>,
    generator: usize,
    vector: Vec<T>,
}

/// Checks multiplicativity on probe pairs and compatibility on generators,
/// then walks the submodule generated by `generators` under words of at
/// most `depth` probes and checks `I_K(p∩α) = I^K(p) ⌟ I_K(α)` on a basis
/// of every layer. On failure the chain is re-evaluated link by link to
/// name the first link that breaks.
pub fn propagate_module_compat<T: Scalar>(
    model: &PairModel<T>,
    side: &HochschildSide<T>,
    pair: &TwistedIsoPair<T>,
    generators: &[Vec<T>],
    probes: &[Vec<T>],
    depth: usize,
) -> PropagationReport {
    let ring = |v: &[T]| pair.ring_iso.apply(v);
    let module = |a: &[T]| pair.module_iso.apply(a);
    let compatible =
        |v: &[T], a: &[T]| module(&side.cap(v, a)) == model.contract(&ring(v), &module(a));
    let early = |failure| PropagationReport { enumerated: 0, independent: 0, failure: Some(failure) };

    for (i, p) in probes.iter().enumerate() {
        for (j, q) in probes.iter().enumerate() {
            if ring(&side.cup(p, q)) != model.ht_wedge(&ring(p), &ring(q)) {
                return early(CompatFailure::Multiplicativity { left: i, right: j });
            }
        }
    }
    for (g, gen) in generators.iter().enumerate() {
        for (i, p) in probes.iter().enumerate() {
            if !compatible(p, gen) {
                return early(CompatFailure::GeneratorCompatibility { probe: i, generator: g });
            }
        }
    }

    let mut kept: Vec<Vec<T>> = Vec::new();
    let mut layer: Vec<Node<T>> = Vec::new();
    let mut enumerated = 0;
    for (g, gen) in generators.iter().enumerate() {
        enumerated += 1;
        if admit(&mut kept, gen) {
            layer.push(Node { word: Vec::new(), generator: g, vector: gen.clone() });
        }
    }
    for _ in 0..=depth {
        let mut next = Vec::new();
        for node in &layer {
            for (i, p) in probes.iter().enumerate() {
                if !compatible(p, &node.vector) {
                    let step = locate_step(model, side, pair, p, node, probes, generators);
                    return PropagationReport {
                        enumerated,
                        independent: kept.len(),
                        failure: Some(CompatFailure::Chain {
                            probe: i,
                            word: node.word.clone(),
                            generator: node.generator,
                            step,
                        }),
                    };
                }
                if node.word.len() < depth {
                    enumerated += 1;
                    let child = side.cap(p, &node.vector);
                    if admit(&mut kept, &child) {
                        let mut word = vec![i];
                        word.extend(&node.word);
                        next.push(Node { word, generator: node.generator, vector: child });
                    }
                }
            }
        }
        layer = next;
    }
    PropagationReport { enumerated, independent: kept.len(), failure: None }
}

/// Adds `v` to `kept` if it is independent of it.
fn admit<T: Scalar>(kept: &mut Vec<Vec<T>>, v: &[T]) -> bool {
    kept.push(v.to_vec());
    if span_rank(kept) == kept.len() {
        true
    } else {
        kept.pop();
        false
    }
}

fn locate_step<T: Scalar>(
    model: &PairModel<T>,
    side: &HochschildSide<T>,
    pair: &TwistedIsoPair<T>,
    v: &[T],
    node: &Node<T>,
    probes: &[Vec<T>],
    generators: &[Vec<T>],
) -> Option<ChainStep> {
    let (v0, inner) = match node.word.split_first() {
        Some((&first, rest)) => {
            let inner = rest.iter().rev().fold(generators[node.generator].clone(), |acc, &i| side.cap(&probes[i], &acc));
            (probes[first].clone(), inner)
        }
        None => return None,
    };
    let ring = |x: &[T]| pair.ring_iso.apply(x);
    let module = |a: &[T]| pair.module_iso.apply(a);
    let vv0 = side.cup(v, &v0);
    let links = [
        module(&side.cap(v, &side.cap(&v0, &inner))),
        module(&side.cap(&vv0, &inner)),
        model.contract(&ring(&vv0), &module(&inner)),
        model.contract(&model.ht_wedge(&ring(v), &ring(&v0)), &module(&inner)),
        model.contract(&ring(v), &model.contract(&ring(&v0), &module(&inner))),
        model.contract(&ring(v), &module(&side.cap(&v0, &inner))),
    ];
    let steps = [
        ChainStep::Associativity,
        ChainStep::InnerCompatibility,
        ChainStep::Multiplicativity,
        ChainStep::ModuleAxiom,
        ChainStep::OuterCompatibility,
    ];
    links.windows(2).zip(steps).find(|(w, _)| w[0] != w[1]).map(|(_, s)| s)
}

/// Default generators: the classes in `H^s(Ω^m)`, pulled back to the
/// Hochschild side. Default probes: every non-unit `HT` basis class, pulled
/// back likewise.
pub fn default_generators_and_probes<T: Scalar>(
    model: &PairModel<T>,
    pair: &TwistedIsoPair<T>,
) -> Result<(Vec<Vec<T>>, Vec<Vec<T>>), PairError> {
    let ring_inv = pair.ring_iso.inverse().ok_or(PairError::NotInvertible)?;
    let module_inv = pair.module_iso.inverse().ok_or(PairError::NotInvertible)?;
    let m = model.dim as i64;
    let generators = (0..model.hw_dim())
        .filter(|&k| model.hw_basis[k].bidegree.0 == m)
        .map(|k| module_inv.column(k))
        .collect();
    let probes = (0..model.ht_dim()).filter(|&i| model.ht_degree(i) > 0).map(|i| ring_inv.column(i)).collect();
    Ok((generators, probes))
}

/// Perturbs `pair.module_iso` on one element of the form `p ∩ (p′ ∩ g)`
/// while leaving it unchanged on the generators and on every `p ∩ g`.
/// Returns `None` if no such element escapes the span of the lower layers.
pub fn break_on_depth_two<T: Scalar>(
    side: &HochschildSide<T>,
    pair: &TwistedIsoPair<T>,
    generators: &[Vec<T>],
    probes: &[Vec<T>],
) -> Option<TwistedIsoPair<T>> {
    let mut lower: Vec<Vec<T>> = generators.to_vec();
    for g in generators {
        for p in probes {
            lower.push(side.cap(p, g));
        }
    }
    let n = pair.module_iso.cols();
    for g in generators {
        for p1 in probes {
            for p2 in probes {
                let x = side.cap(p1, &side.cap(p2, g));
                let support: Vec<usize> = (0..n).filter(|&i| !x[i].is_zero()).collect();
                let Some(&first) = support.first() else { continue };
                let degree = side.module_degrees[first];
                if support.iter().any(|&i| side.module_degrees[i] != degree) {
                    continue;
                }
                let block: Vec<usize> = (0..n).filter(|&i| side.module_degrees[i] == degree).collect();
                let rows: Vec<Vec<T>> = lower.iter().map(|l| block.iter().map(|&i| l[i].clone()).collect()).collect();
                let xb: Vec<T> = block.iter().map(|&i| x[i].clone()).collect();
                let kernel = if rows.is_empty() {
                    (0..block.len()).map(|i| crate::linalg::unit_vector(block.len(), i)).collect()
                } else {
                    Matrix::from_rows(rows).kernel()
                };
                let Some(phi) = kernel.into_iter().find(|k| !crate::linalg::dot(k, &xb).is_zero()) else { continue };
                let scale = crate::linalg::dot(&phi, &xb);
                let mut functional = vec![T::zero(); n];
                for (&i, c) in block.iter().zip(&phi) {
                    functional[i] = c.clone() / scale.clone();
                }
                let bump = Matrix::from_fn(n, n, |r, c| x[r].clone() * functional[c].clone());
                let perturbed = &Matrix::identity(n) + &bump;
                return Some(TwistedIsoPair {
                    ring_iso: pair.ring_iso.clone(),
                    module_iso: &pair.module_iso * &perturbed,
                });
            }
        }
    }
    None
}

/// The annihilators `A ⊂ HH_0` of `HH²` and `R ⊂ HΩ_0` of `HT²`, and
/// whether the module isomorphism of the pair matches them.
#[derive(Debug, Clone)]
pub struct AnnihilatorReport<T> {
    pub a_basis: Vec<Vec<T>>,
    pub r_basis: Vec<Vec<T>>,
    /// `module_iso(A) = R`, and for every basis vector `x` of `HH_0` and of
    /// `A`: `x ∈ A ⇔ module_iso(x) ∈ R`.
    pub correspondence: bool,
}

pub fn annihilator_subspaces<T: Scalar>(
    model: &PairModel<T>,
    side: &HochschildSide<T>,
    pair: &TwistedIsoPair<T>,
) -> AnnihilatorReport<T> {
    let space = GradedOperatorSpace::from_weights(side.module_degrees.clone());
    let ops: Vec<&Matrix<T>> =
        side.ring_degrees.iter().enumerate().filter(|(_, &d)| d == 2).map(|(i, _)| &side.cap[i]).collect();
    let a_basis = joint_annihilator(&space, &ops, 0);
    let r_basis = model.r_subspace();
    let image: Vec<Vec<T>> = a_basis.iter().map(|x| pair.module_iso.apply(x)).collect();
    let contains = |basis: &[Vec<T>], x: &[T]| {
        let mut with = basis.to_vec();
        with.push(x.to_vec());
        span_rank(&with) == span_rank(basis)
    };
    let degree_zero: Vec<Vec<T>> =
        space.indices_of_weight(0).into_iter().map(|i| crate::linalg::unit_vector(space.dim(), i)).collect();
    let pointwise = degree_zero
        .iter()
        .chain(&a_basis)
        .all(|x| contains(&a_basis, x) == contains(&r_basis, &pair.module_iso.apply(x)));
    let correspondence = pointwise && same_span(&image, &r_basis);
    AnnihilatorReport { a_basis, r_basis, correspondence }
}
