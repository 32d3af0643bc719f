use std::collections::{BTreeMap, VecDeque};

use itertools::Itertools;

use super::JacobiError;

/// How the legs carrying a label are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    Star,
    Interval,
    Circle,
}

impl LabelKind {
    pub fn name(self) -> &'static str {
        match self {
            LabelKind::Star => "star",
            LabelKind::Interval => "interval",
            LabelKind::Circle => "circle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "star" => Some(LabelKind::Star),
            "interval" => Some(LabelKind::Interval),
            "circle" => Some(LabelKind::Circle),
            _ => None,
        }
    }

    pub fn is_ordered(self) -> bool {
        self != LabelKind::Star
    }
}

/// A uni-trivalent graph with cyclically oriented trivalent vertices and
/// labelled legs.
///
/// Half-edges are numbered densely. Trivalent vertex `t` owns half-edges
/// `3t, 3t+1, 3t+2` in its cyclic order; leg `i` owns half-edge
/// `3·trivalent + i`. `mate` is the fixed-point-free involution pairing
/// half-edges into edges. Legs of an interval or circle label appear in
/// `legs` in their linear (resp. cyclic) order; the relative order of legs
/// with different labels, and of star legs, carries no meaning.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JacobiDiagram {
    labels: BTreeMap<String, LabelKind>,
    trivalent: usize,
    legs: Vec<String>,
    mate: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Leg(String, usize),
    Vertex(usize, usize),
}

struct Traversal {
    code: Vec<Token>,
    vertices: Vec<(usize, usize)>,
    legs: Vec<usize>,
}

impl JacobiDiagram {
    pub fn new(
        labels: BTreeMap<String, LabelKind>,
        trivalent: usize,
        legs: Vec<String>,
        mate: Vec<usize>,
    ) -> Result<Self, JacobiError> {
        let halves = 3 * trivalent + legs.len();
        if mate.len() != halves {
            return Err(JacobiError::Malformed(format!(
                "matching has {} entries for {halves} half-edges",
                mate.len()
            )));
        }
        for (h, &m) in mate.iter().enumerate() {
            if m >= halves || m == h || mate[m] != h {
                return Err(JacobiError::Malformed(format!("half-edge {h} is not perfectly matched")));
            }
        }
        for label in &legs {
            if !labels.contains_key(label) {
                return Err(JacobiError::UndeclaredLabel(label.clone()));
            }
        }
        Ok(Self { labels, trivalent, legs, mate })
    }

    /// Builds a diagram from an edge list over the half-edge numbering.
    pub fn from_edges(
        labels: BTreeMap<String, LabelKind>,
        trivalent: usize,
        legs: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<Self, JacobiError> {
        let halves = 3 * trivalent + legs.len();
        let mut mate = vec![usize::MAX; halves];
        for &(a, b) in edges {
            if a >= halves || b >= halves || mate[a] != usize::MAX || mate[b] != usize::MAX {
                return Err(JacobiError::Malformed(format!("edge ({a}, {b}) reuses or overflows a half-edge")));
            }
            mate[a] = b;
            mate[b] = a;
        }
        Self::new(labels, trivalent, legs, mate)
    }

    /// The diagram with no vertices, the unit for disjoint union.
    pub fn empty() -> Self {
        Self { labels: BTreeMap::new(), trivalent: 0, legs: Vec::new(), mate: Vec::new() }
    }

    pub fn labels(&self) -> &BTreeMap<String, LabelKind> {
        &self.labels
    }

    pub fn kind(&self, label: &str) -> Option<LabelKind> {
        self.labels.get(label).copied()
    }

    pub fn trivalent_count(&self) -> usize {
        self.trivalent
    }

    pub fn legs(&self) -> &[String] {
        &self.legs
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    pub fn half_edge_count(&self) -> usize {
        self.mate.len()
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        (self.trivalent + self.legs.len()) / 2
    }

    pub fn leg_half_edge(&self, leg: usize) -> usize {
        3 * self.trivalent + leg
    }

    /// The leg owning half-edge `h`, if `h` belongs to a leg.
    pub fn leg_of(&self, h: usize) -> Option<usize> {
        h.checked_sub(3 * self.trivalent)
    }

    /// Indices of the legs with the given label, in order.
    pub fn legs_with(&self, label: &str) -> Vec<usize> {
        self.legs.iter().enumerate().filter(|(_, l)| l.as_str() == label).map(|(i, _)| i).collect()
    }

    pub fn leg_count(&self, label: &str) -> usize {
        self.legs.iter().filter(|l| l.as_str() == label).count()
    }

    /// The cyclic successor of a trivalent half-edge.
    pub fn next_around(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    /// Pairs of legs joined directly by an edge.
    pub fn struts(&self) -> Vec<(usize, usize)> {
        (0..self.legs.len())
            .filter_map(|i| {
                let other = self.leg_of(self.mate[self.leg_half_edge(i)])?;
                (i < other).then_some((i, other))
            })
            .collect()
    }

    /// Whether some strut has both ends labelled from `glued`.
    pub fn has_strut_within(&self, glued: &[&str]) -> bool {
        self.struts()
            .iter()
            .any(|&(a, b)| glued.contains(&self.legs[a].as_str()) && glued.contains(&self.legs[b].as_str()))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether some edge joins two half-edges of the same trivalent vertex.
    pub fn has_self_loop(&self) -> bool {
        (0..3 * self.trivalent).any(|h| self.mate[h] < 3 * self.trivalent && self.mate[h] / 3 == h / 3)
    }

    pub(crate) fn with_labels(mut self, labels: BTreeMap<String, LabelKind>) -> Self {
        self.labels = labels;
        self
    }

    pub(crate) fn set_kind(&mut self, label: &str, kind: LabelKind) {
        if let Some(k) = self.labels.get_mut(label) {
            *k = kind;
        }
    }

    pub(crate) fn rename_legs(&mut self, mut f: impl FnMut(usize, &str) -> String) {
        for (i, l) in self.legs.iter_mut().enumerate() {
            *l = f(i, l);
        }
    }

    /// Reverses the cyclic order at trivalent vertex `t`.
    pub fn flip_vertex(&self, t: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.mate.len()).collect();
        perm.swap(3 * t + 1, 3 * t + 2);
        self.relabel_half_edges(&perm, self.legs.clone())
    }

    /// Reorders the legs: leg `order[k]` becomes leg `k`.
    pub fn reorder_legs(&self, order: &[usize]) -> Self {
        let base = 3 * self.trivalent;
        let mut perm: Vec<usize> = (0..self.mate.len()).collect();
        for (k, &old) in order.iter().enumerate() {
            perm[base + old] = base + k;
        }
        let legs = order.iter().map(|&i| self.legs[i].clone()).collect();
        self.relabel_half_edges(&perm, legs)
    }

    fn relabel_half_edges(&self, perm: &[usize], legs: Vec<String>) -> Self {
        let mut mate = vec![0; self.mate.len()];
        for (h, &m) in self.mate.iter().enumerate() {
            mate[perm[h]] = perm[m];
        }
        Self { labels: self.labels.clone(), trivalent: self.trivalent, legs, mate }
    }

    /// Disjoint union; `other`'s legs come after `self`'s. Label tables are
    /// merged without checks.
    pub(crate) fn disjoint(&self, other: &Self) -> Self {
        let (t1, t2) = (self.trivalent, other.trivalent);
        let (l1, t) = (self.legs.len(), t1 + t2);
        let left = |h: usize| if h < 3 * t1 { h } else { 3 * t + (h - 3 * t1) };
        let right = |h: usize| if h < 3 * t2 { 3 * t1 + h } else { 3 * t + l1 + (h - 3 * t2) };
        let mut mate = vec![0; self.mate.len() + other.mate.len()];
        for (h, &m) in self.mate.iter().enumerate() {
            mate[left(h)] = left(m);
        }
        for (h, &m) in other.mate.iter().enumerate() {
            mate[right(h)] = right(m);
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|(k, v)| (k.clone(), *v)));
        let legs = self.legs.iter().chain(&other.legs).cloned().collect();
        Self { labels, trivalent: t, legs, mate }
    }

    /// Joins each listed pair of legs into a single edge and deletes the
    /// legs. Fails if a pair closes a loop without vertices.
    pub(crate) fn fuse_legs(&self, pairs: &[(usize, usize)]) -> Result<Self, JacobiError> {
        let mut mate = self.mate.clone();
        let mut removed = vec![false; self.legs.len()];
        for &(p, q) in pairs {
            let (hp, hq) = (self.leg_half_edge(p), self.leg_half_edge(q));
            let (a, b) = (mate[hp], mate[hq]);
            if a == hq {
                return Err(JacobiError::StrutCondition("gluing closes a loop without vertices".into()));
            }
            mate[a] = b;
            mate[b] = a;
            removed[p] = true;
            removed[q] = true;
        }
        let base = 3 * self.trivalent;
        let mut new_index = vec![usize::MAX; mate.len()];
        for h in 0..base {
            new_index[h] = h;
        }
        let mut legs = Vec::new();
        for (i, label) in self.legs.iter().enumerate() {
            if !removed[i] {
                new_index[base + i] = base + legs.len();
                legs.push(label.clone());
            }
        }
        let mut new_mate = vec![0; base + legs.len()];
        for (h, &m) in mate.iter().enumerate() {
            if new_index[h] != usize::MAX {
                new_mate[new_index[h]] = new_index[m];
            }
        }
        Ok(Self { labels: self.labels.clone(), trivalent: self.trivalent, legs, mate: new_mate })
    }

    fn node_of(&self, h: usize) -> usize {
        if h < 3 * self.trivalent {
            h / 3
        } else {
            self.trivalent + (h - 3 * self.trivalent)
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let nodes = self.trivalent + self.legs.len();
        let mut seen = vec![false; nodes];
        let mut out = Vec::new();
        for start in 0..nodes {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let halves: Vec<usize> = if v < self.trivalent {
                    (3 * v..3 * v + 3).collect()
                } else {
                    vec![3 * self.trivalent + (v - self.trivalent)]
                };
                for h in halves {
                    let u = self.node_of(self.mate[h]);
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn traverse(&self, start: usize, positions: &[usize]) -> Traversal {
        let t = self.trivalent;
        let mut number: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut vertices = vec![(start / 3, start)];
        number.insert(start / 3, (0, start));
        let mut code = Vec::new();
        let mut legs = Vec::new();
        let mut cursor = 0;
        while cursor < vertices.len() {
            let (_, entry) = vertices[cursor];
            cursor += 1;
            let mut d = entry;
            for _ in 0..3 {
                let m = self.mate[d];
                if m >= 3 * t {
                    let leg = m - 3 * t;
                    code.push(Token::Leg(self.legs[leg].clone(), positions[leg]));
                    legs.push(leg);
                } else {
                    let u = m / 3;
                    let (num, u_entry) = *number.entry(u).or_insert_with(|| {
                        vertices.push((u, m));
                        (vertices.len() - 1, m)
                    });
                    code.push(Token::Vertex(num, (m + 3 - u_entry % 3) % 3));
                }
                d = self.next_around(d);
            }
        }
        Traversal { code, vertices, legs }
    }

    /// Best traversal of a component: minimal code over all starting
    /// half-edges. Components without trivalent vertices are struts.
    fn component_code(&self, comp: &[usize], positions: &[usize]) -> Traversal {
        let t = self.trivalent;
        let trivalent: Vec<usize> = comp.iter().copied().filter(|&v| v < t).collect();
        if trivalent.is_empty() {
            let mut ends: Vec<(Token, usize)> = comp
                .iter()
                .map(|&v| {
                    let leg = v - t;
                    (Token::Leg(self.legs[leg].clone(), positions[leg]), leg)
                })
                .collect();
            ends.sort();
            return Traversal {
                code: ends.iter().map(|(tok, _)| tok.clone()).collect(),
                vertices: Vec::new(),
                legs: ends.iter().map(|&(_, l)| l).collect(),
            };
        }
        trivalent
            .iter()
            .flat_map(|&v| (0..3).map(move |k| 3 * v + k))
            .map(|start| self.traverse(start, positions))
            .min_by(|a, b| a.code.cmp(&b.code))
            .expect("component has a trivalent vertex")
    }

    /// The canonical representative of the isomorphism class: isomorphisms
    /// preserve cyclic orders, labels, interval orders and circle orders up to
    /// rotation. Labels without legs are dropped from the table.
    pub fn canonical(&self) -> Self {
        let labels: BTreeMap<String, LabelKind> = self
            .labels
            .iter()
            .filter(|(name, _)| self.legs.iter().any(|l| l == *name))
            .map(|(k, v)| (k.clone(), *v))
            .collect();

        let mut base_pos = vec![0; self.legs.len()];
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, label) in self.legs.iter().enumerate() {
            let c = counts.entry(label.as_str()).or_insert(0);
            if labels[label].is_ordered() {
                base_pos[i] = *c;
            }
            *c += 1;
        }
        let circles: Vec<&str> =
            labels.iter().filter(|(_, &k)| k == LabelKind::Circle).map(|(n, _)| n.as_str()).collect();
        let components = self.components();

        let rotations = circles.iter().map(|c| 0..counts[c]).multi_cartesian_product();
        let mut best: Option<(Vec<Vec<Token>>, Vec<Traversal>, Vec<usize>)> = None;
        let rotation_choices: Vec<Vec<usize>> =
            if circles.is_empty() { vec![Vec::new()] } else { rotations.collect() };
        for rot in rotation_choices {
            let positions: Vec<usize> = self
                .legs
                .iter()
                .enumerate()
                .map(|(i, label)| match circles.iter().position(|c| c == label) {
                    Some(ci) => (base_pos[i] + counts[circles[ci]] - rot[ci]) % counts[circles[ci]],
                    None => base_pos[i],
                })
                .collect();
            let mut travs: Vec<Traversal> =
                components.iter().map(|c| self.component_code(c, &positions)).collect();
            travs.sort_by(|a, b| a.code.cmp(&b.code));
            let key: Vec<Vec<Token>> = travs.iter().map(|t| t.code.clone()).collect();
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, travs, positions));
            }
        }
        let (_, travs, positions) = best.expect("at least one rotation choice");

        let mut new_half = vec![0; self.mate.len()];
        let mut next_vertex = 0;
        let mut leg_order = Vec::new();
        for trav in &travs {
            for &(v, entry) in &trav.vertices {
                for k in 0..3 {
                    let old = 3 * v + (entry % 3 + k) % 3;
                    new_half[old] = 3 * next_vertex + k;
                }
                next_vertex += 1;
            }
            leg_order.extend(trav.legs.iter().copied());
        }
        let mut seen = vec![false; self.legs.len()];
        leg_order.retain(|&l| !std::mem::replace(&mut seen[l], true));
        leg_order.sort_by(|&a, &b| (&self.legs[a], positions[a]).cmp(&(&self.legs[b], positions[b])));

        let base = 3 * self.trivalent;
        for (k, &old) in leg_order.iter().enumerate() {
            new_half[base + old] = base + k;
        }
        let mut mate = vec![0; self.mate.len()];
        for (h, &m) in self.mate.iter().enumerate() {
            mate[new_half[h]] = new_half[m];
        }
        let legs = leg_order.iter().map(|&i| self.legs[i].clone()).collect();
        Self { labels, trivalent: self.trivalent, legs, mate }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}
