//! Seeded random diagrams for property tests.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{JacobiDiagram, LabelKind};

/// A diagram of degree between `min_degree` and `max_degree` with a uniformly
/// random matching of half-edges and legs labelled uniformly from `labels`.
pub fn random_diagram(
    rng: &mut impl Rng,
    labels: &[(&str, LabelKind)],
    min_degree: usize,
    max_degree: usize,
) -> JacobiDiagram {
    let degree = rng.gen_range(min_degree..=max_degree);
    let legs_count = if labels.is_empty() { 0 } else { rng.gen_range(0..=2 * degree) };
    let trivalent = 2 * degree - legs_count;
    let table: BTreeMap<String, LabelKind> = labels.iter().map(|(n, k)| (n.to_string(), *k)).collect();
    let legs: Vec<String> =
        (0..legs_count).map(|_| labels[rng.gen_range(0..labels.len())].0.to_string()).collect();
    let mut halves: Vec<usize> = (0..3 * trivalent + legs_count).collect();
    halves.shuffle(rng);
    let edges: Vec<(usize, usize)> = halves.chunks(2).map(|p| (p[0], p[1])).collect();
    JacobiDiagram::from_edges(table, trivalent, legs, &edges).expect("random matching is perfect")
}

/// Like [`random_diagram`], rejecting diagrams with a strut whose ends both
/// carry a label from `forbidden`.
pub fn random_diagram_avoiding_struts(
    rng: &mut impl Rng,
    labels: &[(&str, LabelKind)],
    min_degree: usize,
    max_degree: usize,
    forbidden: &[&str],
) -> JacobiDiagram {
    loop {
        let d = random_diagram(rng, labels, min_degree, max_degree);
        if !d.has_strut_within(forbidden) {
            return d;
        }
    }
}

/// Relabels the legs of `d` by a random permutation of its half-edge
/// numbering, keeping cyclic orders and ordered-label sequences. Used to
/// test that results do not depend on the chosen representative.
pub fn shuffle_representative(rng: &mut impl Rng, d: &JacobiDiagram) -> JacobiDiagram {
    let t = d.trivalent_count();
    let mut vertex_order: Vec<usize> = (0..t).collect();
    vertex_order.shuffle(rng);
    let rotations: Vec<usize> = (0..t).map(|_| rng.gen_range(0..3)).collect();
    let mut perm = vec![0; d.half_edge_count()];
    for (new, &old) in vertex_order.iter().enumerate() {
        for k in 0..3 {
            perm[3 * old + k] = 3 * new + (k + rotations[old]) % 3;
        }
    }
    for i in 0..d.legs().len() {
        perm[3 * t + i] = 3 * t + i;
    }
    let mut edges = Vec::new();
    for (h, &m) in d.mate().iter().enumerate() {
        if h < m {
            edges.push((perm[h], perm[m]));
        }
    }
    let base = JacobiDiagram::from_edges(d.labels().clone(), t, d.legs().to_vec(), &edges).expect("relabelled matching");
    let mut star_legs: Vec<usize> =
        (0..d.legs().len()).filter(|&i| d.kind(&d.legs()[i]) == Some(LabelKind::Star)).collect();
    let slots = star_legs.clone();
    star_legs.shuffle(rng);
    let mut order: Vec<usize> = (0..d.legs().len()).collect();
    for (slot, leg) in slots.into_iter().zip(star_legs) {
        order[slot] = leg;
    }
    base.reorder_legs(&order)
}
