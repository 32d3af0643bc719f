use std::collections::BTreeMap;

use proptest::prelude::*;

use super::random::{random_diagram, random_diagram_avoiding_struts, shuffle_representative};
use super::*;
use crate::sampling::rng;
use crate::scalar::{factorial, q, qi, Q};

const BIG: usize = 32;

fn one_term(d: JacobiDiagram) -> DiagramSeries<Q> {
    DiagramSeries::single(d, BIG)
}

fn star(labels: &[&str]) -> Vec<(String, LabelKind)> {
    labels.iter().map(|l| (l.to_string(), LabelKind::Star)).collect()
}

fn with_kinds(labels: &[(String, LabelKind)]) -> Vec<(&str, LabelKind)> {
    labels.iter().map(|(n, k)| (n.as_str(), *k)).collect()
}

/// Single trivalent vertex with three legs.
fn tripod(labels: [(&str, LabelKind); 3]) -> JacobiDiagram {
    let table: BTreeMap<String, LabelKind> = labels.iter().map(|(n, k)| (n.to_string(), *k)).collect();
    let legs = labels.iter().map(|(n, _)| n.to_string()).collect();
    JacobiDiagram::from_edges(table, 1, legs, &[(0, 3), (1, 4), (2, 5)]).unwrap()
}

fn single_leg_diagram(label: &str, kind: LabelKind, other: &str) -> JacobiDiagram {
    strut_with((label, kind), (other, LabelKind::Star)).unwrap()
}

#[test]
fn canonical_form_ignores_representative() {
    let mut r = rng(11);
    let labels = [("x", LabelKind::Star), ("y", LabelKind::Interval), ("z", LabelKind::Circle)];
    for _ in 0..200 {
        let d = random_diagram(&mut r, &labels, 0, 4);
        let e = shuffle_representative(&mut r, &d);
        assert_eq!(d.canonical(), e.canonical());
        assert_eq!(d.canonical().canonical(), d.canonical());
    }
}

#[test]
fn interval_order_is_not_forgotten() {
    let c = tripod([("y", LabelKind::Interval), ("y", LabelKind::Interval), ("y", LabelKind::Interval)]);
    let swapped = c.reorder_legs(&[1, 0, 2]);
    assert!(!c.is_isomorphic(&swapped));
    let rotated = c.reorder_legs(&[1, 2, 0]);
    assert!(c.is_isomorphic(&rotated), "rotating legs of a single vertex is a rotation of its triple");
}

#[test]
fn circle_order_is_up_to_rotation() {
    let mut r = rng(5);
    let labels = [("z", LabelKind::Circle), ("x", LabelKind::Star)];
    for _ in 0..50 {
        let d = random_diagram(&mut r, &labels, 1, 4);
        let zs = d.legs_with("z");
        if zs.len() < 2 {
            continue;
        }
        let mut order: Vec<usize> = (0..d.legs().len()).collect();
        for (k, &slot) in zs.iter().enumerate() {
            order[slot] = zs[(k + 1) % zs.len()];
        }
        assert!(d.is_isomorphic(&d.reorder_legs(&order)));
    }
}

#[test]
fn union_with_empty_is_identity() {
    let mut r = rng(1);
    for _ in 0..20 {
        let c = one_term(random_diagram(&mut r, &[("x", LabelKind::Star)], 0, 3));
        assert_eq!(union_product(&c, &DiagramSeries::one(BIG), &["x"]).unwrap(), c);
    }
}

#[test]
fn two_struts_union() {
    let s = one_term(strut("x", "y"));
    let two = union_product(&s, &s, &["x", "y"]).unwrap();
    assert_eq!(two.len(), 1);
    let (d, c) = two.terms().next().unwrap();
    assert_eq!(*c, qi(1));
    assert_eq!(d.degree(), 2);
    assert_eq!(d.leg_count("x"), 2);
    assert_eq!(d.struts().len(), 2);
}

#[test]
fn union_is_commutative() {
    let mut r = rng(2);
    let labels = [("x", LabelKind::Star), ("y", LabelKind::Star)];
    for _ in 0..100 {
        let c = one_term(random_diagram(&mut r, &labels, 0, 3));
        let d = one_term(random_diagram(&mut r, &labels, 0, 3));
        assert_eq!(union_product(&c, &d, &["x", "y"]).unwrap(), union_product(&d, &c, &["x", "y"]).unwrap());
    }
}

#[test]
fn union_rejects_non_star_shared_label() {
    let c = one_term(single_leg_diagram("y", LabelKind::Interval, "a"));
    let d = one_term(single_leg_diagram("y", LabelKind::Interval, "b"));
    assert!(matches!(union_product(&c, &d, &["y"]), Err(JacobiError::LabelKind { .. })));
    let e = one_term(strut("x", "a"));
    assert!(matches!(union_product(&e, &e, &["x"]), Err(JacobiError::LabelClash(_))));
}

#[test]
fn juxtaposition_examples() {
    let mut r = rng(3);
    let labels = [("y", LabelKind::Interval)];
    let unit = DiagramSeries::<Q>::one(BIG);
    for _ in 0..30 {
        let a = one_term(random_diagram(&mut r, &labels, 0, 3));
        let b = one_term(random_diagram(&mut r, &labels, 0, 2));
        let c = one_term(random_diagram(&mut r, &labels, 0, 2));
        assert_eq!(juxtapose(&unit, &a, "y").unwrap(), a);
        let left = juxtapose(&juxtapose(&a, &b, "y").unwrap(), &c, "y").unwrap();
        let right = juxtapose(&a, &juxtapose(&b, &c, "y").unwrap(), "y").unwrap();
        assert_eq!(left, right);
    }

    let p = one_term(single_leg_diagram("y", LabelKind::Interval, "a"));
    let q_ = one_term(single_leg_diagram("y", LabelKind::Interval, "b"));
    let pq = juxtapose(&p, &q_, "y").unwrap();
    let qp = juxtapose(&q_, &p, "y").unwrap();
    assert_ne!(pq, qp);
    let (d, _) = pq.terms().next().unwrap();
    assert_eq!(d.leg_count("y"), 2);
    let first_y = d.legs_with("y")[0];
    let partner = d.leg_of(d.mate()[d.leg_half_edge(first_y)]).unwrap();
    assert_eq!(d.legs()[partner], "a");
}

#[test]
fn averaging_examples() {
    let none = one_term(strut("a", "b"));
    assert_eq!(average_map(&none, "x").unwrap(), none);

    let one_leg = one_term(strut("x", "a"));
    let avg = average_map(&one_leg, "x").unwrap();
    assert_eq!(avg.len(), 1);
    assert_eq!(avg.coefficient(&single_leg_diagram("x", LabelKind::Interval, "a")), qi(1));

    let t = tripod([("x", LabelKind::Star), ("x", LabelKind::Star), ("a", LabelKind::Star)]);
    let avg = average_map(&one_term(t.clone()), "x").unwrap();
    let mut as_interval = t.clone();
    as_interval.set_kind("x", LabelKind::Interval);
    let swapped = as_interval.reorder_legs(&[1, 0, 2]);
    assert!(!as_interval.is_isomorphic(&swapped));
    assert_eq!(avg.coefficient(&as_interval), q(1, 2));
    assert_eq!(avg.coefficient(&swapped), q(1, 2));

    let mut r = rng(4);
    for _ in 0..30 {
        let d = one_term(random_diagram(&mut r, &[("x", LabelKind::Star), ("a", LabelKind::Star)], 0, 4));
        assert_eq!(average_map(&d, "x").unwrap().coefficient_sum(), qi(1));
    }
}

#[test]
fn trace_examples() {
    let single = one_term(single_leg_diagram("y", LabelKind::Interval, "a"));
    let traced = trace_map(&single, "y").unwrap();
    assert_eq!(traced.coefficient(&single_leg_diagram("y", LabelKind::Circle, "a")), qi(1));

    let mut r = rng(6);
    let labels = [("y", LabelKind::Interval), ("z", LabelKind::Circle)];
    for _ in 0..30 {
        let c = one_term(random_diagram(&mut r, &labels, 0, 3));
        let d = one_term(random_diagram(&mut r, &labels, 0, 2));
        let c = relabel_delta(&c, "z", "zc").unwrap();
        let d = relabel_delta(&d, "z", "zd").unwrap();
        let cd = trace_map(&juxtapose(&c, &d, "y").unwrap(), "y").unwrap();
        let dc = trace_map(&juxtapose(&d, &c, "y").unwrap(), "y").unwrap();
        assert_eq!(cd, dc);
    }
}

#[test]
fn split_and_relabel_counting() {
    let plain = one_term(strut("a", "b"));
    assert_eq!(split_delta(&plain, "y", ("x1", "x2")).unwrap(), plain);

    let t = one_term(tripod([("y", LabelKind::Star), ("y", LabelKind::Star), ("a", LabelKind::Star)]));
    let split = split_delta(&t, "y", ("x1", "x2")).unwrap();
    assert_eq!(split.coefficient_sum(), qi(4));

    let mut r = rng(7);
    for _ in 0..30 {
        let d = random_diagram(&mut r, &[("y", LabelKind::Star), ("a", LabelKind::Star)], 0, 4);
        let m = d.leg_count("y");
        let s = one_term(d);
        let split = split_delta(&s, "y", ("x1", "x2")).unwrap();
        let back = relabel_delta(&relabel_delta(&split, "x1", "y").unwrap(), "x2", "y").unwrap();
        assert_eq!(back, s.scale(&qi(1 << m)));
    }
}

#[test]
fn pairing_examples() {
    let xy = one_term(strut("x", "y"));
    let xz = one_term(strut("x", "z"));
    assert_eq!(pairing(&xy, &xz, &["x"]).unwrap(), one_term(strut("y", "z")));

    let two = union_product(&xz, &xz, &["x", "z"]).unwrap();
    assert!(pairing(&xy, &two, &["x"]).unwrap().is_zero());

    let d_max = 5;
    let exy = exp_strut::<Q>("x", "y", d_max);
    let exz = exp_strut::<Q>("x", "z", d_max);
    let paired = pairing(&exy, &exz, &["x"]).unwrap();
    let mut yz_power = DiagramSeries::<Q>::one(BIG);
    for d in 0..=d_max {
        assert_eq!(paired.coefficient(yz_power.terms().next().unwrap().0), Q::from(qi(1)) / factorial::<Q>(d));
        yz_power = union_product(&yz_power, &one_term(strut("y", "z")), &["y", "z"]).unwrap();
    }

    let xx = one_term(strut("x", "x"));
    assert!(matches!(pairing(&xx, &xx, &["x"]), Err(JacobiError::StrutCondition(_))));
}

#[test]
fn inner_glue_examples() {
    let mut r = rng(8);
    for _ in 0..20 {
        let c = one_term(random_diagram(&mut r, &[("a", LabelKind::Star)], 0, 3));
        let d = one_term(random_diagram(&mut r, &[("x", LabelKind::Star), ("b", LabelKind::Star)], 0, 3));
        assert_eq!(inner_glue(&c, &d, "x").unwrap(), union_product(&c, &d, &[]).unwrap());
    }
    let yx = one_term(strut("y", "x"));
    let xz = one_term(strut("x", "z"));
    assert_eq!(inner_glue(&yx, &xz, "x").unwrap(), one_term(strut("y", "z")));
}

#[test]
fn inner_glue_with_one_leg_is_a_derivation() {
    let mut r = rng(9);
    let labels = [("x", LabelKind::Star), ("b", LabelKind::Star)];
    for _ in 0..40 {
        let mut c = random_diagram(&mut r, &[("x", LabelKind::Star), ("a", LabelKind::Star)], 1, 3);
        while c.leg_count("x") != 1 {
            c = random_diagram(&mut r, &[("x", LabelKind::Star), ("a", LabelKind::Star)], 1, 3);
        }
        let c = one_term(c);
        let d1 = one_term(random_diagram(&mut r, &labels, 0, 2));
        let d2 = relabel_delta(&one_term(random_diagram(&mut r, &labels, 0, 2)), "b", "b2").unwrap();
        let lhs = inner_glue(&c, &union_product(&d1, &d2, &["x"]).unwrap(), "x").unwrap();
        let rhs = union_product(&inner_glue(&c, &d1, "x").unwrap(), &d2, &["x"])
            .unwrap()
            .add(&union_product(&d1, &inner_glue(&c, &d2, "x").unwrap(), &["x"]).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn inner_glue_counts_injections() {
    let mut r = rng(10);
    for _ in 0..30 {
        let c = random_diagram_avoiding_struts(&mut r, &[("x", LabelKind::Star)], 0, 2, &["x"]);
        let d = random_diagram(&mut r, &[("x", LabelKind::Star), ("b", LabelKind::Star)], 0, 3);
        let (m, n) = (c.leg_count("x"), d.leg_count("x"));
        let expected = if m > n { 0 } else { ((n - m + 1)..=n).product::<usize>() as i64 };
        let glued = inner_glue(&one_term(c), &one_term(d), "x").unwrap();
        assert_eq!(glued.coefficient_sum(), qi(expected));
    }
}

#[test]
fn constructors() {
    for d in 0..6 {
        assert_eq!(exp_strut::<Q>("x", "y", d).len(), d + 1);
    }
    let w2 = wheel("x", 2).unwrap();
    assert_eq!((w2.trivalent_count(), w2.legs().len(), w2.degree()), (2, 2, 2));
    assert!(w2.struts().is_empty());
    assert!(matches!(wheel("x", 3), Err(JacobiError::InvalidSize(_))));
    assert!(matches!(wheel("x", 0), Err(JacobiError::InvalidSize(_))));
    let omega = wheel_series::<Q>("x", &[q(1, 48), q(-1, 5760)], 4).unwrap();
    assert_eq!(omega.truncate(0), DiagramSeries::one(0));
    assert_eq!(omega.coefficient(&w2), q(1, 48));
    let w2w2 = union_diagrams(&w2, &w2, &["x"]).unwrap();
    assert_eq!(omega.coefficient(&w2w2), q(1, 2 * 48 * 48));
}

#[test]
fn series_arithmetic() {
    let s = one_term(strut("x", "y"));
    assert!(s.sub(&s).is_zero());
    assert_eq!(s.add(&s), s.scale(&qi(2)));
    let mixed = s.add(&DiagramSeries::one(BIG));
    assert_eq!(mixed.degree_part(1), s);
    assert_eq!(mixed.truncate(0).len(), 1);
}

fn random_pair_for_gluing(r: &mut crate::sampling::SeededRng) -> (DiagramSeries<Q>, DiagramSeries<Q>) {
    let c = random_diagram_avoiding_struts(r, &[("x", LabelKind::Star), ("z", LabelKind::Star)], 0, 4, &["x"]);
    let d = random_diagram_avoiding_struts(r, &[("x", LabelKind::Star), ("w", LabelKind::Star)], 0, 4, &["x"]);
    (one_term(c), one_term(d))
}

#[test]
fn inner_glue_equals_pairing_with_exponential_strut() {
    let mut r = rng(12);
    let exp_xy = exp_strut::<Q>("x", "y", 8);
    for _ in 0..25 {
        let (c, d) = random_pair_for_gluing(&mut r);
        let lhs = relabel_delta(&inner_glue(&c, &d, "x").unwrap(), "x", "y").unwrap();
        let rhs = pairing(&union_product(&c, &exp_xy, &["x"]).unwrap(), &d, &["x"]).unwrap();
        assert_eq!(lhs.truncate(BIG), rhs.truncate(BIG));
    }
}

#[test]
fn pairing_splits_over_unions() {
    let mut r = rng(13);
    for _ in 0..25 {
        let c = one_term(random_diagram_avoiding_struts(
            &mut r,
            &[("x", LabelKind::Star), ("z", LabelKind::Star)],
            0,
            3,
            &["x"],
        ));
        let d1 = one_term(random_diagram(&mut r, &[("x", LabelKind::Star), ("w1", LabelKind::Star)], 0, 2));
        let d2 = one_term(random_diagram(&mut r, &[("x", LabelKind::Star), ("w2", LabelKind::Star)], 0, 2));
        let lhs = pairing(&c, &union_product(&d1, &d2, &["x"]).unwrap(), &["x"]).unwrap();
        let split = split_delta(&c, "x", ("y1", "y2")).unwrap();
        let tensor = union_product(
            &relabel_delta(&d1, "x", "y1").unwrap(),
            &relabel_delta(&d2, "x", "y2").unwrap(),
            &[],
        )
        .unwrap();
        let rhs = pairing(&split, &tensor, &["y1", "y2"]).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn operations_do_not_depend_on_representatives() {
    let mut r = rng(14);
    for _ in 0..30 {
        let (c, d) = random_pair_for_gluing(&mut r);
        let shuffle = |s: &DiagramSeries<Q>, r: &mut crate::sampling::SeededRng| {
            let (diag, _) = s.terms().next().unwrap();
            shuffle_representative(r, diag)
        };
        let c2 = shuffle(&c, &mut r);
        let d2 = shuffle(&d, &mut r);
        let glued = inner_glue_diagrams(&c2, &d2, "x").unwrap();
        let direct = inner_glue(&c, &d, "x").unwrap();
        assert_eq!(DiagramSeries::from_terms(BIG, glued.into_iter().map(|g| (g, qi(1)))), direct);
    }
}

#[test]
fn text_round_trip() {
    let mut r = rng(15);
    let labels = [("x", LabelKind::Star), ("y", LabelKind::Interval), ("z", LabelKind::Circle)];
    for _ in 0..50 {
        let d = random_diagram(&mut r, &labels, 0, 4);
        let back = parse_diagram(&write_diagram(&d)).unwrap();
        assert!(back.is_isomorphic(&d));
    }
    let s = wheel_series::<Q>("x", &[q(1, 48)], 4).unwrap();
    assert_eq!(parse_series::<Q>(&write_series(&s)).unwrap(), s);
}

#[test]
fn parses_the_documented_format() {
    let theta = parse_diagram(
        "(diagram (tri v1 (h1 h2 h3)) (tri v2 (k1 k2 k3)) (edge h1 k1) (edge h2 k3) (edge h3 k2))",
    )
    .unwrap();
    assert_eq!(theta.degree(), 1);
    let ordered = parse_diagram(
        "(diagram (tri v (a b c)) (leg l1 interval y) (leg l2 interval y) (leg l3 star x)
           (edge a l1) (edge b l2) (edge c l3) (order y (l2 l1)))",
    )
    .unwrap();
    let first = ordered.legs_with("y")[0];
    assert_eq!(ordered.mate()[ordered.leg_half_edge(first)], 1);

    assert!(matches!(parse_diagram("(diagram (tri v (a b)))"), Err(JacobiError::Parse(_))));
    assert!(matches!(parse_diagram("(diagram (leg l1 star x))"), Err(JacobiError::Malformed(_))));
    assert!(parse_diagram("(diagram (leg l1 blob x) (leg l2 star x) (edge l1 l2))").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn flipping_twice_is_identity(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let labels = star(&["x"]);
        let d = random_diagram(&mut r, &with_kinds(&labels), 1, 4);
        if d.trivalent_count() > 0 {
            prop_assert_eq!(d.flip_vertex(0).flip_vertex(0), d);
        }
    }

    #[test]
    fn degree_is_additive_under_union(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let labels = star(&["x", "y"]);
        let c = random_diagram(&mut r, &with_kinds(&labels), 0, 3);
        let d = random_diagram(&mut r, &with_kinds(&labels), 0, 3);
        prop_assert_eq!(union_diagrams(&c, &d, &["x", "y"]).unwrap().degree(), c.degree() + d.degree());
    }
}
