//! One-shot evaluations. Each returns the JSON value to print; every number
//! in it is an exact `num/den` string.

use hkrlab_core::genus::{genus_from_univariate, named_univariate};
use hkrlab_core::holonomy::{check_power_equation, enumerate_chi_solutions, induced_permutation, is_in_normalizer, SymplecticBlockMatrix};
use hkrlab_core::hodgepair::{annihilator_subspaces, synthetic_instance, PairModel};
use hkrlab_core::jacobi::{
    average_map, inner_glue, juxtapose, pairing, parse_diagram, parse_series, relabel_delta, split_delta, trace_map,
    union_product, write_diagram, write_series, DiagramSeries,
};
use hkrlab_core::linalg::Matrix;
use hkrlab_core::scalar::{ExactText, Q};
use hkrlab_core::verbitsky::{QuadraticSpace, VerbitskyAlgebra};
use hkrlab_core::weights::{evaluate_series, Backend, WeightValue};
use serde_json::{json, Map, Value};

use crate::CliError;

fn exact(x: &Q) -> Value {
    Value::String(x.to_exact())
}

fn exact_vec(v: &[Q]) -> Value {
    Value::Array(v.iter().map(exact).collect())
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Nonzero coefficients of a named genus keyed by comma-joined exponents.
pub fn genus_series(name: &str, roots: usize, degree: usize) -> Result<Value, CliError> {
    let f = named_univariate::<Q>(name, degree).map_err(|e| CliError::Usage(e.to_string()))?;
    let series = genus_from_univariate(&f, roots, degree).map_err(domain)?;
    let coefficients: Map<String, Value> = series
        .terms()
        .iter()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(e, c)| (e.iter().map(u32::to_string).collect::<Vec<_>>().join(","), exact(c)))
        .collect();
    Ok(json!({"name": name, "roots": roots, "degree": degree, "coefficients": coefficients}))
}

pub fn holonomy_chi(n: u64) -> Result<Value, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let solutions: Vec<Value> = enumerate_chi_solutions(n).into_iter().map(|(d, p)| json!([d, p])).collect();
    Ok(json!({"n": n, "solutions": solutions}))
}

pub fn holonomy_power_equation(k_max: u64) -> Result<Value, CliError> {
    if k_max == 0 {
        return Err(CliError::Usage("kmax must be at least 1".into()));
    }
    let (solutions, argument) = check_power_equation(k_max);
    let solutions: Vec<Value> = solutions.into_iter().map(|(e, k)| json!([e.to_string(), k])).collect();
    Ok(json!({
        "kmax": k_max,
        "solutions": solutions,
        "proof": {
            "statement": argument.statement,
            "consecutive_powers_of_two": argument.consecutive_powers,
            "consistent": argument.consistent,
        },
    }))
}

pub fn holonomy_permutation(matrix: Matrix<Q>, blocks: Vec<usize>) -> Result<Value, CliError> {
    let m = SymplecticBlockMatrix::new(matrix, blocks).map_err(domain)?;
    let normal = is_in_normalizer(&m);
    let p = induced_permutation(&m).map_err(domain)?;
    Ok(json!({"rho": p.rho, "lambda": exact_vec(&p.lambda), "in_normalizer": normal}))
}

pub fn verbitsky_dims(space: QuadraticSpace<Q>, n: usize, max_degree: usize) -> Result<Value, CliError> {
    let alg = VerbitskyAlgebra::build(space, n).map_err(domain)?;
    Ok(json!({"n": n, "dims": alg.dims_through(max_degree)}))
}

pub fn pair_annihilators(model: &PairModel<Q>, seed: u64) -> Result<Value, CliError> {
    let (side, kontsevich, _) = synthetic_instance(model, seed).map_err(domain)?;
    let report = annihilator_subspaces(model, &side, &kontsevich);
    let basis = |b: &[Vec<Q>]| Value::Array(b.iter().map(|v| exact_vec(v)).collect());
    Ok(json!({
        "model": model.name,
        "seed": seed,
        "a_basis": basis(&report.a_basis),
        "r_basis": basis(&report.r_basis),
        "correspondence": report.correspondence,
    }))
}

/// Parses a series file, or a single diagram promoted to a one-term series
/// truncated at `max_degree`.
pub fn read_series(text: &str, max_degree: usize) -> Result<DiagramSeries<Q>, CliError> {
    let parse = |e: hkrlab_core::jacobi::JacobiError| CliError::Usage(e.to_string());
    if text.trim_start().starts_with("(series") {
        parse_series(text).map_err(parse)
    } else {
        Ok(DiagramSeries::single(parse_diagram(text).map_err(parse)?, max_degree))
    }
}

pub fn diagram_summary(text: &str) -> Result<Value, CliError> {
    let d = parse_diagram(text).map_err(|e| CliError::Usage(e.to_string()))?;
    let labels: Map<String, Value> =
        d.labels().iter().map(|(l, k)| (l.clone(), json!({"kind": k.name(), "legs": d.legs_with(l).len()}))).collect();
    Ok(json!({
        "degree": d.degree(),
        "trivalent": d.trivalent_count(),
        "legs": d.legs().len(),
        "connected": d.is_connected(),
        "labels": labels,
        "canonical": write_diagram(&d.canonical()),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramOp {
    Union { shared: Vec<String> },
    Juxtapose { label: String },
    Average { label: String },
    Trace { label: String },
    Relabel { from: String, to: String },
    Split { from: String, to: (String, String) },
    Pair { glued: Vec<String> },
    InnerGlue { label: String },
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

pub fn diagram_op(op: &DiagramOp, left: &DiagramSeries<Q>, right: Option<&DiagramSeries<Q>>) -> Result<Value, CliError> {
    let need_right = || right.ok_or_else(|| CliError::Usage("this operation needs a second operand".into()));
    let result = match op {
        DiagramOp::Union { shared } => union_product(left, need_right()?, &as_strs(shared)),
        DiagramOp::Juxtapose { label } => juxtapose(left, need_right()?, label),
        DiagramOp::Average { label } => average_map(left, label),
        DiagramOp::Trace { label } => trace_map(left, label),
        DiagramOp::Relabel { from, to } => relabel_delta(left, from, to),
        DiagramOp::Split { from, to } => split_delta(left, from, (&to.0, &to.1)),
        DiagramOp::Pair { glued } => pairing(left, need_right()?, &as_strs(glued)),
        DiagramOp::InnerGlue { label } => inner_glue(left, need_right()?, label),
    }
    .map_err(domain)?;
    Ok(json!({"terms": result.len(), "max_degree": result.max_degree(), "series": write_series(&result)}))
}

pub fn weight_json(v: &WeightValue<Q>) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .iter()
        .map(|(mono, end)| {
            let monomial: Vec<Value> = mono.iter().map(|(label, idx)| json!({"label": label, "indices": idx})).collect();
            json!({"monomial": monomial, "endomorphism": exact_vec(end)})
        })
        .collect();
    json!({"end_dim": v.end_dim(), "terms": terms})
}

pub fn weights_eval(series: &DiagramSeries<Q>, backend_name: &str) -> Result<Value, CliError> {
    let backend = Backend::<Q>::from_name(backend_name).map_err(|e| CliError::Usage(e.to_string()))?;
    let value = evaluate_series(series, &backend).map_err(domain)?;
    Ok(json!({"backend": backend.name, "weight": weight_json(&value)}))
}
