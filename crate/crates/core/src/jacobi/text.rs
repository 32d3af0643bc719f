//! S-expression form of diagrams and series.
//!
//! ```text
//! (diagram
//!   (tri v1 (h1 h2 h3))
//!   (leg l1 star x)
//!   (edge h1 l1)
//!   (order y (l2 l3)))
//! (series (max-degree 4) (term "1/2" (diagram …)) …)
//! ```
//!
//! Legs of interval and circle labels follow the `order` entry for their label
//! when one is given, and their declaration order otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lexpr::Value;

use super::diagram::{JacobiDiagram, LabelKind};
use super::series::DiagramSeries;
use super::JacobiError;
use crate::scalar::ExactText;

fn err(msg: impl Into<String>) -> JacobiError {
    JacobiError::Parse(msg.into())
}

fn items(v: &Value) -> Result<Vec<&Value>, JacobiError> {
    v.list_iter().map(|it| it.collect()).ok_or_else(|| err(format!("expected a list, found {v}")))
}

fn atom(v: &Value) -> Result<String, JacobiError> {
    if let Some(s) = v.as_symbol() {
        return Ok(s.to_string());
    }
    if let Some(s) = v.as_str() {
        return Ok(s.to_string());
    }
    if let Some(n) = v.as_i64() {
        return Ok(n.to_string());
    }
    Err(err(format!("expected a name, found {v}")))
}

fn head<'a>(v: &'a Value, expected: &str) -> Result<Vec<&'a Value>, JacobiError> {
    let parts = items(v)?;
    match parts.first().and_then(|h| h.as_symbol()) {
        Some(h) if h == expected => Ok(parts[1..].to_vec()),
        _ => Err(err(format!("expected ({expected} …), found {v}"))),
    }
}

pub fn parse_diagram(text: &str) -> Result<JacobiDiagram, JacobiError> {
    let v = lexpr::from_str(text).map_err(|e| err(e.to_string()))?;
    diagram_from_value(&v)
}

fn diagram_from_value(v: &Value) -> Result<JacobiDiagram, JacobiError> {
    let mut vertices: Vec<[String; 3]> = Vec::new();
    let mut legs: Vec<(String, String)> = Vec::new();
    let mut labels: BTreeMap<String, LabelKind> = BTreeMap::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut orders: BTreeMap<String, Vec<String>> = BTreeMap::new();

    for entry in head(v, "diagram")? {
        let parts = items(entry)?;
        let tag = parts.first().and_then(|h| h.as_symbol()).ok_or_else(|| err(format!("bad entry {entry}")))?;
        match (tag, parts.len()) {
            ("tri", 3) => {
                let halves = items(parts[2])?.into_iter().map(atom).collect::<Result<Vec<_>, _>>()?;
                let halves: [String; 3] =
                    halves.try_into().map_err(|_| err(format!("trivalent vertex needs 3 half-edges: {entry}")))?;
                vertices.push(halves);
            }
            ("leg", 4) => {
                let kind = LabelKind::parse(&atom(parts[2])?).ok_or_else(|| err(format!("unknown label kind in {entry}")))?;
                let label = atom(parts[3])?;
                if let Some(k) = labels.insert(label.clone(), kind) {
                    if k != kind {
                        return Err(JacobiError::LabelKind { label, expected: k, found: kind });
                    }
                }
                legs.push((atom(parts[1])?, label));
            }
            ("edge", 3) => edges.push((atom(parts[1])?, atom(parts[2])?)),
            ("order", 3) => {
                let seq = items(parts[2])?.into_iter().map(atom).collect::<Result<Vec<_>, _>>()?;
                orders.insert(atom(parts[1])?, seq);
            }
            _ => return Err(err(format!("unrecognized entry {entry}"))),
        }
    }

    let mut ordered_legs: Vec<(String, String)> = Vec::new();
    for (name, label) in &legs {
        if !orders.contains_key(label) {
            ordered_legs.push((name.clone(), label.clone()));
        }
    }
    for (label, seq) in &orders {
        let mut declared: Vec<&String> = legs.iter().filter(|(_, l)| l == label).map(|(n, _)| n).collect();
        let mut given: Vec<&String> = seq.iter().collect();
        declared.sort();
        given.sort();
        if declared != given {
            return Err(err(format!("order for {label} does not list exactly its legs")));
        }
        ordered_legs.extend(seq.iter().map(|n| (n.clone(), label.clone())));
    }

    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (t, halves) in vertices.iter().enumerate() {
        for (k, h) in halves.iter().enumerate() {
            if index.insert(h.clone(), 3 * t + k).is_some() {
                return Err(err(format!("half-edge name {h} used twice")));
            }
        }
    }
    let base = 3 * vertices.len();
    for (i, (name, _)) in ordered_legs.iter().enumerate() {
        if index.insert(name.clone(), base + i).is_some() {
            return Err(err(format!("name {name} used twice")));
        }
    }
    let lookup = |n: &str| index.get(n).copied().ok_or_else(|| err(format!("unknown half-edge {n}")));
    let edge_list = edges.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>, JacobiError>>()?;
    JacobiDiagram::from_edges(labels, vertices.len(), ordered_legs.into_iter().map(|(_, l)| l).collect(), &edge_list)
}

pub fn write_diagram(d: &JacobiDiagram) -> String {
    let name = |h: usize| match d.leg_of(h) {
        Some(i) => format!("l{i}"),
        None => format!("h{h}"),
    };
    let mut out = String::from("(diagram");
    for t in 0..d.trivalent_count() {
        let _ = write!(out, " (tri v{t} ({} {} {}))", name(3 * t), name(3 * t + 1), name(3 * t + 2));
    }
    for (i, label) in d.legs().iter().enumerate() {
        let kind = d.kind(label).expect("declared label");
        let _ = write!(out, " (leg l{i} {} {label})", kind.name());
    }
    for (h, &m) in d.mate().iter().enumerate() {
        if h < m {
            let _ = write!(out, " (edge {} {})", name(h), name(m));
        }
    }
    for (label, kind) in d.labels() {
        if kind.is_ordered() {
            let seq: Vec<String> = d.legs_with(label).iter().map(|i| format!("l{i}")).collect();
            let _ = write!(out, " (order {label} ({}))", seq.join(" "));
        }
    }
    out.push(')');
    out
}

pub fn parse_series<T: ExactText>(text: &str) -> Result<DiagramSeries<T>, JacobiError> {
    let v = lexpr::from_str(text).map_err(|e| err(e.to_string()))?;
    let body = head(&v, "series")?;
    let (first, rest) = body.split_first().ok_or_else(|| err("series needs (max-degree D)"))?;
    let degree = head(first, "max-degree")?;
    let max_degree: usize = match degree.as_slice() {
        [d] => atom(d)?.parse().map_err(|_| err("max-degree must be a nonnegative integer"))?,
        _ => return Err(err("series needs (max-degree D)")),
    };
    let mut s = DiagramSeries::zero(max_degree);
    for term in rest {
        let parts = head(term, "term")?;
        let [coeff, diagram] = parts.as_slice() else { return Err(err(format!("bad term {term}"))) };
        let c = T::parse_exact(&atom(coeff)?).ok_or_else(|| err(format!("bad coefficient in {term}")))?;
        s.add_term(&diagram_from_value(diagram)?, c);
    }
    Ok(s)
}

pub fn write_series<T: ExactText>(s: &DiagramSeries<T>) -> String {
    let mut out = format!("(series (max-degree {})", s.max_degree());
    for (d, c) in s.terms() {
        let _ = write!(out, "\n  (term \"{}\" {})", c.to_exact(), write_diagram(d));
    }
    out.push(')');
    out
}
