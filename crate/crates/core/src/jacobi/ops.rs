use std::collections::BTreeMap;

use itertools::Itertools;

use super::diagram::{JacobiDiagram, LabelKind};
use super::series::DiagramSeries;
use super::JacobiError;
use crate::scalar::{factorial, Scalar};

fn require_kind(d: &JacobiDiagram, label: &str, kind: LabelKind) -> Result<(), JacobiError> {
    match d.kind(label) {
        Some(found) if found != kind => {
            Err(JacobiError::LabelKind { label: label.to_string(), expected: kind, found })
        }
        _ => Ok(()),
    }
}

/// Labels present in both diagrams must be listed in `shared` and be stars.
fn check_shared(c: &JacobiDiagram, d: &JacobiDiagram, shared: &[&str], kind: LabelKind) -> Result<(), JacobiError> {
    for s in shared {
        require_kind(c, s, kind)?;
        require_kind(d, s, kind)?;
    }
    for label in c.labels().keys() {
        if d.labels().contains_key(label) && !shared.contains(&label.as_str()) {
            return Err(JacobiError::LabelClash(label.clone()));
        }
    }
    Ok(())
}

fn map_series<T: Scalar>(
    a: &DiagramSeries<T>,
    mut f: impl FnMut(&JacobiDiagram) -> Result<Vec<(JacobiDiagram, T)>, JacobiError>,
) -> Result<DiagramSeries<T>, JacobiError> {
    let mut out = DiagramSeries::zero(a.max_degree());
    for (d, c) in a.terms() {
        for (e, k) in f(d)? {
            out.add_term(&e, c.clone() * k);
        }
    }
    Ok(out)
}

fn bilinear<T: Scalar>(
    a: &DiagramSeries<T>,
    b: &DiagramSeries<T>,
    mut f: impl FnMut(&JacobiDiagram, &JacobiDiagram) -> Result<Vec<JacobiDiagram>, JacobiError>,
) -> Result<DiagramSeries<T>, JacobiError> {
    let mut out = DiagramSeries::zero(a.max_degree().min(b.max_degree()));
    for (c, x) in a.terms() {
        for (d, y) in b.terms() {
            let coeff = x.clone() * y.clone();
            for e in f(c, d)? {
                out.add_term(&e, coeff.clone());
            }
        }
    }
    Ok(out)
}

pub fn union_diagrams(c: &JacobiDiagram, d: &JacobiDiagram, shared: &[&str]) -> Result<JacobiDiagram, JacobiError> {
    check_shared(c, d, shared, LabelKind::Star)?;
    Ok(c.disjoint(d))
}

/// `C ∪_{shared} D`: disjoint union, identifying the shared star labels.
pub fn union_product<T: Scalar>(
    a: &DiagramSeries<T>,
    b: &DiagramSeries<T>,
    shared: &[&str],
) -> Result<DiagramSeries<T>, JacobiError> {
    bilinear(a, b, |c, d| Ok(vec![union_diagrams(c, d, shared)?]))
}

/// `C ⋈_x D`: the legs of `C` on the interval `x` come first.
pub fn juxtapose<T: Scalar>(
    a: &DiagramSeries<T>,
    b: &DiagramSeries<T>,
    label: &str,
) -> Result<DiagramSeries<T>, JacobiError> {
    bilinear(a, b, |c, d| {
        check_shared(c, d, &[label], LabelKind::Interval)?;
        let mut e = c.disjoint(d);
        e.set_kind(label, LabelKind::Interval);
        Ok(vec![e])
    })
}

/// `π_x`: averages over all linear orders of the star legs labelled `x`.
pub fn average_map<T: Scalar>(a: &DiagramSeries<T>, label: &str) -> Result<DiagramSeries<T>, JacobiError> {
    map_series(a, |d| {
        require_kind(d, label, LabelKind::Star)?;
        let slots = d.legs_with(label);
        let weight = T::one() / factorial::<T>(slots.len());
        Ok(slots
            .iter()
            .copied()
            .permutations(slots.len())
            .map(|perm| {
                let mut order: Vec<usize> = (0..d.legs().len()).collect();
                for (slot, leg) in slots.iter().zip(perm) {
                    order[*slot] = leg;
                }
                let mut e = d.reorder_legs(&order);
                e.set_kind(label, LabelKind::Interval);
                (e, weight.clone())
            })
            .collect())
    })
}

/// `tr_x`: forgets the linear order on `x` down to a cyclic order.
pub fn trace_map<T: Scalar>(a: &DiagramSeries<T>, label: &str) -> Result<DiagramSeries<T>, JacobiError> {
    map_series(a, |d| {
        require_kind(d, label, LabelKind::Interval)?;
        let mut e = d.clone();
        e.set_kind(label, LabelKind::Circle);
        Ok(vec![(e, T::one())])
    })
}

fn relabel_diagram(d: &JacobiDiagram, from: &str, to: &str) -> Result<JacobiDiagram, JacobiError> {
    let Some(kind) = d.kind(from) else { return Ok(d.clone()) };
    if from == to {
        return Ok(d.clone());
    }
    if let Some(existing) = d.kind(to) {
        if existing != LabelKind::Star || kind != LabelKind::Star {
            return Err(JacobiError::LabelClash(to.to_string()));
        }
    }
    let mut e = d.clone();
    e.rename_legs(|_, l| if l == from { to.to_string() } else { l.to_string() });
    let mut labels = e.labels().clone();
    labels.remove(from);
    labels.insert(to.to_string(), kind);
    Ok(e.with_labels(labels))
}

/// `Δ^from_to`: replaces the label `from` by `to`.
pub fn relabel_delta<T: Scalar>(a: &DiagramSeries<T>, from: &str, to: &str) -> Result<DiagramSeries<T>, JacobiError> {
    map_series(a, |d| Ok(vec![(relabel_diagram(d, from, to)?, T::one())]))
}

/// `Δ^y_{x₁x₂}`: sum over all ways of relabelling each `y` leg by `x₁` or `x₂`.
pub fn split_delta<T: Scalar>(
    a: &DiagramSeries<T>,
    from: &str,
    to: (&str, &str),
) -> Result<DiagramSeries<T>, JacobiError> {
    map_series(a, |d| {
        require_kind(d, from, LabelKind::Star)?;
        for target in [to.0, to.1] {
            if target != from {
                require_kind(d, target, LabelKind::Star)?;
            }
        }
        let legs = d.legs_with(from);
        if legs.is_empty() {
            return Ok(vec![(d.clone(), T::one())]);
        }
        let mut labels = d.labels().clone();
        labels.remove(from);
        labels.insert(to.0.to_string(), LabelKind::Star);
        labels.insert(to.1.to_string(), LabelKind::Star);
        Ok((0u64..1 << legs.len())
            .map(|mask| {
                let mut e = d.clone();
                e.rename_legs(|i, l| match legs.iter().position(|&k| k == i) {
                    Some(bit) if mask >> bit & 1 == 1 => to.1.to_string(),
                    Some(_) => to.0.to_string(),
                    None => l.to_string(),
                });
                (e.with_labels(labels.clone()), T::one())
            })
            .collect())
    })
}

/// All diagrams obtained by gluing every leg of `c` labelled from `glued`
/// to a leg of `d` with the same label, one per bijection.
pub fn pairing_diagrams(c: &JacobiDiagram, d: &JacobiDiagram, glued: &[&str]) -> Result<Vec<JacobiDiagram>, JacobiError> {
    check_shared(c, d, glued, LabelKind::Star)?;
    if c.has_strut_within(glued) && d.has_strut_within(glued) {
        return Err(JacobiError::StrutCondition("both sides contain a strut between glued labels".into()));
    }
    let offset = c.legs().len();
    let mut per_label = Vec::new();
    for label in glued {
        let (cl, dl) = (c.legs_with(label), d.legs_with(label));
        if cl.len() != dl.len() {
            return Ok(Vec::new());
        }
        per_label.push((cl, dl));
    }
    let whole = c.disjoint(d);
    let mut labels = whole.labels().clone();
    for label in glued {
        labels.remove(*label);
    }
    if per_label.is_empty() {
        return Ok(vec![whole.with_labels(labels)]);
    }
    let choices = per_label.iter().map(|(_, dl)| dl.iter().copied().permutations(dl.len()).collect_vec());
    let mut out = Vec::new();
    for assignment in choices.multi_cartesian_product() {
        let pairs: Vec<(usize, usize)> = per_label
            .iter()
            .zip(&assignment)
            .flat_map(|((cl, _), image)| cl.iter().zip(image).map(|(&p, &q)| (p, offset + q)))
            .collect();
        out.push(whole.fuse_legs(&pairs)?.with_labels(labels.clone()));
    }
    Ok(out)
}

/// `⟨C, D⟩_{x₁…x_k}`: sum over all pairwise gluings of the listed labels.
pub fn pairing<T: Scalar>(
    a: &DiagramSeries<T>,
    b: &DiagramSeries<T>,
    glued: &[&str],
) -> Result<DiagramSeries<T>, JacobiError> {
    bilinear(a, b, |c, d| pairing_diagrams(c, d, glued))
}

/// All diagrams obtained by gluing every `x` leg of `c` to some `x` leg of
/// `d`, one per injection. Other labels present on both sides must be stars.
pub fn inner_glue_diagrams(c: &JacobiDiagram, d: &JacobiDiagram, label: &str) -> Result<Vec<JacobiDiagram>, JacobiError> {
    let shared: Vec<&str> = c.labels().keys().filter(|l| d.labels().contains_key(*l)).map(|l| l.as_str()).collect();
    check_shared(c, d, &shared, LabelKind::Star)?;
    require_kind(c, label, LabelKind::Star)?;
    if c.has_strut_within(&[label]) && d.has_strut_within(&[label]) {
        return Err(JacobiError::StrutCondition(format!("both sides contain a {label}-{label} strut")));
    }
    let offset = c.legs().len();
    let (cl, dl) = (c.legs_with(label), d.legs_with(label));
    let whole = c.disjoint(d);
    dl.iter()
        .copied()
        .permutations(cl.len())
        .map(|image| {
            let pairs: Vec<(usize, usize)> = cl.iter().zip(image).map(|(&p, q)| (p, offset + q)).collect();
            whole.fuse_legs(&pairs)
        })
        .collect()
}

/// `C ⌟_x D`: the diagrammatic differential operator of `C` applied to `D`.
pub fn inner_glue<T: Scalar>(
    a: &DiagramSeries<T>,
    b: &DiagramSeries<T>,
    label: &str,
) -> Result<DiagramSeries<T>, JacobiError> {
    bilinear(a, b, |c, d| inner_glue_diagrams(c, d, label))
}

/// The strut joining a leg labelled `x` to a leg labelled `y`, both stars.
pub fn strut(x: &str, y: &str) -> JacobiDiagram {
    strut_with((x, LabelKind::Star), (y, LabelKind::Star)).expect("star labels never clash")
}

pub fn strut_with(x: (&str, LabelKind), y: (&str, LabelKind)) -> Result<JacobiDiagram, JacobiError> {
    let mut labels = BTreeMap::new();
    labels.insert(x.0.to_string(), x.1);
    if let Some(k) = labels.insert(y.0.to_string(), y.1) {
        if k != y.1 {
            return Err(JacobiError::LabelKind { label: y.0.to_string(), expected: k, found: y.1 });
        }
    }
    JacobiDiagram::new(labels, 0, vec![x.0.to_string(), y.0.to_string()], vec![1, 0])
}

/// The wheel with `legs` spokes labelled `label`: a cycle of trivalent
/// vertices, each with half-edges (previous, next, spoke).
pub fn wheel(label: &str, legs: usize) -> Result<JacobiDiagram, JacobiError> {
    if legs < 2 || !legs.is_multiple_of(2) {
        return Err(JacobiError::InvalidSize(format!("wheel needs an even number ≥ 2 of legs, got {legs}")));
    }
    let edges: Vec<(usize, usize)> =
        (0..legs).flat_map(|i| [(3 * i + 1, 3 * ((i + 1) % legs)), (3 * i + 2, 3 * legs + i)]).collect();
    let labels = BTreeMap::from([(label.to_string(), LabelKind::Star)]);
    JacobiDiagram::from_edges(labels, legs, vec![label.to_string(); legs], &edges)
}

/// `exp(s)` with respect to `∪` over `shared`, for `s` without constant term.
pub fn exp_union<T: Scalar>(s: &DiagramSeries<T>, shared: &[&str]) -> Result<DiagramSeries<T>, JacobiError> {
    if s.degree_part(0).len() > 0 {
        return Err(JacobiError::InvalidSize("exponent has a constant term".into()));
    }
    let max = s.max_degree();
    let mut out = DiagramSeries::one(max);
    let mut power = DiagramSeries::one(max);
    for k in 1..=max {
        power = union_product(&power, s, shared)?;
        if power.is_zero() {
            break;
        }
        out = out.add(&power.scale(&(T::one() / factorial::<T>(k))));
    }
    Ok(out)
}

/// `Σ_{d ≤ D} strut_xy^d / d!`.
pub fn exp_strut<T: Scalar>(x: &str, y: &str, max_degree: usize) -> DiagramSeries<T> {
    let s = DiagramSeries::single(strut(x, y), max_degree);
    exp_union(&s, &[x, y]).expect("struts between star labels")
}

/// `exp(Σ c_m w_{2m})` in the wheels labelled `label`; `coefficients[k]`
/// multiplies the wheel with `2(k+1)` legs.
pub fn wheel_series<T: Scalar>(label: &str, coefficients: &[T], max_degree: usize) -> Result<DiagramSeries<T>, JacobiError> {
    let mut s = DiagramSeries::zero(max_degree);
    for (k, c) in coefficients.iter().enumerate() {
        s.add_term(&wheel(label, 2 * (k + 1))?, c.clone());
    }
    exp_union(&s, &[label])
}
