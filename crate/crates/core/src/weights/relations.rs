use std::collections::BTreeMap;

use rand::Rng;

use super::backend::Backend;
use super::evaluate::{evaluate, WeightValue};
use super::WeightError;
use crate::jacobi::random::random_diagram;
use crate::jacobi::{JacobiDiagram, LabelKind};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    As,
    Ihx,
    Stu,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::As => "AS",
            RelationKind::Ihx => "IHX",
            RelationKind::Stu => "STU",
        }
    }
}

/// A signed combination of diagrams that differ only near one vertex, edge
/// or pair of adjacent legs.
#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub terms: Vec<(JacobiDiagram, i64)>,
}

/// Reassembles a diagram from vertices given as triples of half-edge ids,
/// legs as (label, id) and edges as id pairs, all ids arbitrary.
fn assemble(
    labels: &BTreeMap<String, LabelKind>,
    vertices: &[[usize; 3]],
    legs: &[(String, usize)],
    edges: &[(usize, usize)],
) -> Result<JacobiDiagram, WeightError> {
    let mut index = BTreeMap::new();
    for (t, hs) in vertices.iter().enumerate() {
        for (k, &h) in hs.iter().enumerate() {
            index.insert(h, 3 * t + k);
        }
    }
    for (i, (_, h)) in legs.iter().enumerate() {
        index.insert(*h, 3 * vertices.len() + i);
    }
    let mapped: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
    JacobiDiagram::from_edges(labels.clone(), vertices.len(), legs.iter().map(|(l, _)| l.clone()).collect(), &mapped)
        .map_err(|e| WeightError::Malformed(e.to_string()))
}

fn pieces(d: &JacobiDiagram) -> (Vec<[usize; 3]>, Vec<(String, usize)>, Vec<(usize, usize)>) {
    let t = d.trivalent_count();
    let vertices = (0..t).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
    let legs = d.legs().iter().enumerate().map(|(i, l)| (l.clone(), 3 * t + i)).collect();
    let edges = d.mate().iter().enumerate().filter(|(h, m)| h < m).map(|(h, &m)| (h, m)).collect();
    (vertices, legs, edges)
}

/// `D + D' = 0` where `D'` reverses the cyclic order at vertex `t`.
pub fn as_instance(d: &JacobiDiagram, t: usize) -> Result<RelationInstance, WeightError> {
    if t >= d.trivalent_count() {
        return Err(WeightError::Malformed(format!("no trivalent vertex {t}")));
    }
    Ok(RelationInstance { kind: RelationKind::As, terms: vec![(d.clone(), 1), (d.flip_vertex(t), 1)] })
}

/// The three ways of joining the outer half-edges `A, B, C, D` around the
/// internal edge starting at half-edge `h`. With `u = (A, B, e)` and
/// `v = (e, C, D)` the relation reads `I + H + X = 0` for the pairings
/// `(AB|CD)`, `(BC|AD)`, `(CA|BD)`.
pub fn ihx_instance(d: &JacobiDiagram, h: usize) -> Result<RelationInstance, WeightError> {
    let t = d.trivalent_count();
    let m = *d.mate().get(h).ok_or_else(|| WeightError::Malformed(format!("no half-edge {h}")))?;
    if h >= 3 * t || m >= 3 * t || h / 3 == m / 3 {
        return Err(WeightError::Malformed("IHX needs an edge between two distinct trivalent vertices".into()));
    }
    let (u, v) = (h / 3, m / 3);
    let a_h = d.next_around(h);
    let b_h = d.next_around(a_h);
    let c_h = d.next_around(m);
    let d_h = d.next_around(c_h);
    let outer: Vec<usize> = [a_h, b_h, c_h, d_h].iter().map(|&x| d.mate()[x]).collect();
    if outer.iter().any(|&x| x < 3 * t && (x / 3 == u || x / 3 == v)) {
        return Err(WeightError::Malformed("IHX edge is part of a multiple edge or loop".into()));
    }
    let (vertices, legs, edges) = pieces(d);
    let local = |x: usize| x < 3 * t && (x / 3 == u || x / 3 == v);
    let kept: Vec<(usize, usize)> = edges.iter().copied().filter(|&(x, y)| !local(x) && !local(y)).collect();
    let [oa, ob, oc, od] = [outer[0], outer[1], outer[2], outer[3]];
    let build = |left: (usize, usize), right: (usize, usize)| {
        let mut e = kept.clone();
        e.extend([(3 * u, left.0), (3 * u + 1, left.1), (3 * u + 2, 3 * v), (3 * v + 1, right.0), (3 * v + 2, right.1)]);
        assemble(d.labels(), &vertices, &legs, &e)
    };
    Ok(RelationInstance {
        kind: RelationKind::Ihx,
        terms: vec![(build((oa, ob), (oc, od))?, 1), (build((ob, oc), (oa, od))?, 1), (build((oc, oa), (ob, od))?, 1)],
    })
}

/// `T − U − S = 0` for the legs at positions `p, p + 1` of an interval or
/// circle label: `T` is `d`, `U` swaps the two legs, and `S` replaces them
/// by one leg attached to a new vertex `(α, β, leg)`, where `α` and `β` are
/// the half-edges the first and second leg were attached to.
pub fn stu_instance(d: &JacobiDiagram, label: &str, p: usize) -> Result<RelationInstance, WeightError> {
    if !d.kind(label).is_some_and(LabelKind::is_ordered) {
        return Err(WeightError::Malformed(format!("{label} is not an interval or circle label")));
    }
    let ordered = d.legs_with(label);
    if p + 1 >= ordered.len() {
        return Err(WeightError::Malformed(format!("no adjacent legs at position {p} of {label}")));
    }
    let (l1, l2) = (ordered[p], ordered[p + 1]);
    let (h1, h2) = (d.leg_half_edge(l1), d.leg_half_edge(l2));
    let (alpha, beta) = (d.mate()[h1], d.mate()[h2]);
    if alpha == h2 {
        return Err(WeightError::Malformed("the two legs form a strut".into()));
    }

    let mut order: Vec<usize> = (0..d.legs().len()).collect();
    order.swap(l1, l2);
    let swapped = d.reorder_legs(&order);

    let (mut vertices, legs, edges) = pieces(d);
    let fresh = d.half_edge_count();
    vertices.push([fresh, fresh + 1, fresh + 2]);
    let new_leg = fresh + 3;
    let legs: Vec<(String, usize)> = legs
        .into_iter()
        .filter(|&(_, h)| h != h2)
        .map(|(l, h)| if h == h1 { (l, new_leg) } else { (l, h) })
        .collect();
    let mut e: Vec<(usize, usize)> =
        edges.into_iter().filter(|&(x, y)| ![h1, h2].contains(&x) && ![h1, h2].contains(&y)).collect();
    e.extend([(fresh, alpha), (fresh + 1, beta), (fresh + 2, new_leg)]);
    let s = assemble(d.labels(), &vertices, &legs, &e)?;
    Ok(RelationInstance { kind: RelationKind::Stu, terms: vec![(d.clone(), 1), (swapped, -1), (s, -1)] })
}

pub fn relation_value<T: Scalar>(inst: &RelationInstance, backend: &Backend<T>) -> Result<WeightValue<T>, WeightError> {
    let e = backend.module.as_ref().map_or(1, |m| m.dim());
    let mut total = WeightValue::zero(e);
    for (d, c) in &inst.terms {
        total.add_scaled(&evaluate(d, backend)?, &T::from_int(*c));
    }
    Ok(total)
}

/// True iff the signed sum of the instance has zero weight.
pub fn check_relation_vanishing<T: Scalar>(inst: &RelationInstance, backend: &Backend<T>) -> Result<bool, WeightError> {
    Ok(relation_value(inst, backend)?.is_zero())
}

/// Relation instances harvested from random diagrams with a star label
/// `x`, an interval label `y` and a circle label `z`. Diagrams that are
/// disconnected, carry a loop at a vertex or have a single leg are skipped,
/// since their weights mostly vanish for semisimple algebras. Each diagram offers at
/// most one instance of each kind at a random location; sampling stops once
/// `count` instances of every kind are collected.
pub fn relation_corpus(rng: &mut impl Rng, count: usize, max_degree: usize) -> Vec<RelationInstance> {
    let labels = [("x", LabelKind::Star), ("y", LabelKind::Interval), ("z", LabelKind::Circle)];
    let mut found: BTreeMap<RelationKind, Vec<RelationInstance>> = BTreeMap::new();
    let full = |f: &BTreeMap<RelationKind, Vec<RelationInstance>>| {
        [RelationKind::As, RelationKind::Ihx, RelationKind::Stu].iter().all(|k| f.get(k).map_or(0, Vec::len) >= count)
    };
    let mut attempts = 0;
    while !full(&found) && attempts < 10_000 {
        attempts += 1;
        let d = random_diagram(rng, &labels, 1, max_degree);
        if !d.is_connected() || d.has_self_loop() || d.legs().len() == 1 {
            continue;
        }
        let t = d.trivalent_count();
        let mut candidates = Vec::new();
        if t > 0 {
            candidates.push(as_instance(&d, rng.gen_range(0..t)));
            candidates.push(ihx_instance(&d, rng.gen_range(0..3 * t)));
        }
        for label in ["y", "z"] {
            let n = d.leg_count(label);
            if n >= 2 {
                candidates.push(stu_instance(&d, label, rng.gen_range(0..n - 1)));
            }
        }
        for inst in candidates.into_iter().flatten() {
            let bucket = found.entry(inst.kind).or_default();
            if bucket.len() < count {
                bucket.push(inst);
            }
        }
    }
    found.into_values().flatten().collect()
}
