//! Named suites of property checks over the core library. Every randomized
//! check draws from a generator seeded by the suite seed, so a report is a
//! pure function of `(suite, seed)`.

use hkrlab_core::exterior::{innermax_exhaustive, innermax_sides, ExteriorElement, OddSpace, Variance};
use hkrlab_core::genus::{ahat, ahat_univariate, check_todd_relation};
use hkrlab_core::hodgepair::{
    annihilator_subspaces, break_on_depth_two, default_generators_and_probes, k3_like_model, propagate_module_compat,
    synthetic_cy3_model, synthetic_instance, torus_model, PairModel, TwistedIsoPair,
};
use hkrlab_core::holonomy::{
    check_power_equation, enumerate_chi_solutions, induced_permutation, is_in_normalizer, random_mixing_element,
    random_normalizer_element, uniform_factor_solutions,
};
use hkrlab_core::jacobi::random::{random_diagram, random_diagram_avoiding_struts, shuffle_representative};
use hkrlab_core::jacobi::{
    exp_strut, inner_glue, pairing, parse_diagram, relabel_delta, union_product, wheel_series, write_diagram,
    DiagramSeries, LabelKind,
};
use hkrlab_core::lefschetz::{complete_sl2, hard_lefschetz_holds, verbitsky_lefschetz};
use hkrlab_core::linalg::Matrix;
use hkrlab_core::sampling::{rng, small_rational, small_vector};
use hkrlab_core::scalar::{q, qi, Q};
use hkrlab_core::verbitsky::{proportional, QuadraticSpace, VerbitskyAlgebra};
use hkrlab_core::weights::{
    check_relation_vanishing, evaluate, evaluate_naive, relation_corpus, verify_series_identity,
    wheel_half_strut_identity, wheel_strut_identity, Backend,
};

use crate::report::{Case, SuiteReport};
use crate::CliError;

pub const SUITES: [&str; 9] = ["innermax", "genus", "verbitsky", "lefschetz", "pair", "jacobi", "weights", "holonomy", "all"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 1 }
    }
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let seed = config.seed;
    let cases = match name {
        "innermax" => innermax_cases(),
        "genus" => genus_cases(),
        "verbitsky" => verbitsky_cases(seed),
        "lefschetz" => lefschetz_cases(),
        "pair" => pair_cases(seed),
        "jacobi" => jacobi_cases(seed),
        "weights" => weights_cases(seed),
        "holonomy" => holonomy_cases(seed),
        "all" => {
            let mut all = Vec::new();
            for suite in &SUITES[..SUITES.len() - 1] {
                let report = run_suite(suite, config)?;
                all.extend(report.cases.into_iter().map(|mut c| {
                    c.name = format!("{suite}/{}", c.name);
                    c
                }));
            }
            all
        }
        other => return Err(CliError::Usage(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport::new(name, seed, cases))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn innermax_cases() -> Vec<Case> {
    const ANCHOR: &str = "(-1)^l (b' ⌟ w) ⌟ b = b' ∧ (w ⌟ b) for b of top degree";
    let mut cases: Vec<Case> = (1..=4)
        .map(|n| {
            let outcome = innermax_exhaustive::<Q>(n).map_err(err).map(|r| match r {
                Ok(count) => (true, format!("{count} monomial pairs")),
                Err(cx) => (false, format!("fails at b' = {:?}, w = {:?}", cx.beta_prime, cx.w)),
            });
            Case::from_check(format!("exhaustive_n{n}"), ANCHOR, outcome)
        })
        .collect();
    let worked = (|| {
        let s = OddSpace::new(2).map_err(err)?;
        let form = ExteriorElement::<Q>::word(s, Variance::Form, &[2]).map_err(err)?;
        let w = ExteriorElement::<Q>::word(s, Variance::Polyvector, &[2, 1]).map_err(err)?;
        let (lhs, rhs) = innermax_sides(s, &ExteriorElement::top_form(s), &form, &w).map_err(err)?;
        Ok((lhs == form && rhs == form, "both sides equal e^2".to_string()))
    })();
    cases.push(Case::from_check("worked_instance_n2", ANCHOR, worked));
    cases
}

fn genus_cases() -> Vec<Case> {
    const TODD: &str = "td = exp(c1/2) ∧ Â";
    let mut cases: Vec<Case> = (1..=3)
        .map(|r| {
            Case::from_check(format!("todd_relation_r{r}_d6"), TODD, Ok((check_todd_relation::<Q>(r, 6), String::new())))
        })
        .collect();
    let f = ahat_univariate::<Q>(4);
    let expected = [qi(1), qi(0), q(-1, 24), qi(0), q(7, 5760)];
    cases.push(Case::from_check(
        "ahat_coefficients",
        "Â: (x/2)/sinh(x/2) = 1 - x²/24 + 7x⁴/5760 - …",
        Ok(((0..=4).all(|k| f.coeff(k) == expected[k]), format!("{:?}", (0..=4).map(|k| f.coeff(k).to_string()).collect::<Vec<_>>()))),
    ));
    let even = ahat::<Q>(1, 8).terms().iter().all(|(e, c)| e[0] % 2 == 0 || *c == qi(0));
    cases.push(Case::from_check("ahat_is_even", "Â has only even-degree terms", Ok((even, String::new()))));
    let coherent = ahat::<Q>(2, 6).truncate(4) == ahat::<Q>(2, 4);
    cases.push(Case::from_check("truncation_coherence", "truncating at D' equals computing at D'", Ok((coherent, String::new()))));
    cases
}

fn lorentz() -> Result<QuadraticSpace<Q>, String> {
    QuadraticSpace::diagonal(&[qi(1), qi(1), qi(-1)]).map_err(err)
}

fn verbitsky_cases(seed: u64) -> Vec<Case> {
    let mut cases = Vec::new();
    for (n, top, expected) in [(1usize, 4usize, vec![1usize, 3, 1]), (2, 8, vec![1, 3, 6, 3, 1])] {
        let outcome = lorentz()
            .and_then(|s| VerbitskyAlgebra::build(s, n).map_err(err))
            .map(|a| {
                let dims = a.dims_through(top);
                (dims == expected, format!("{dims:?}"))
            });
        cases.push(Case::from_check(format!("dims_b3_n{n}"), "Sym*(H²)/⟨α^(n+1) : q(α) = 0⟩", outcome));
    }
    let fujiki = (|| {
        let a = VerbitskyAlgebra::build(lorentz()?, 1).map_err(err)?;
        let mut r = rng(seed);
        for _ in 0..50 {
            let v: Vec<Q> = small_vector(&mut r, 3, 9, 5);
            if !a.check_fujiki(&v).map_err(err)? {
                return Ok((false, format!("fails at {v:?}")));
            }
        }
        Ok((true, "50 random classes".to_string()))
    })();
    cases.push(Case::from_check("fujiki_n1", "α² = q(α)·ω", fujiki));
    let recovered = (|| {
        let g = Matrix::from_rows(vec![vec![qi(2), qi(1), qi(0)], vec![qi(1), qi(-1), qi(0)], vec![qi(0), qi(0), qi(3)]]);
        let mut ok = true;
        for n in 1..=2 {
            let a = VerbitskyAlgebra::build(QuadraticSpace::new(g.clone()).map_err(err)?, n).map_err(err)?;
            ok &= proportional(&a.recover_q().map_err(err)?.gram, &g);
        }
        Ok((ok, "n = 1, 2".to_string()))
    })();
    cases.push(Case::from_check("recover_q_round_trip", "q recovered from α ↦ ∫α^(2n) up to scalar", recovered));
    cases
}

fn lefschetz_cases() -> Vec<Case> {
    let setup = |a: [i64; 3]| -> Result<_, String> {
        let alg = VerbitskyAlgebra::build(lorentz()?, 1).map_err(err)?;
        verbitsky_lefschetz(&alg, &a.map(qi)).map_err(err)
    };
    let complete = setup([1, 0, 0]).and_then(|(s, l)| {
        let t = complete_sl2(&s, &l).map_err(err)?;
        Ok((t.brackets_hold() && hard_lefschetz_holds(&s, &l), "anisotropic class".to_string()))
    });
    let isotropic = setup([1, 0, 1]).map(|(s, l)| {
        let errs = complete_sl2(&s, &l).is_err();
        (errs && !hard_lefschetz_holds(&s, &l), "isotropic class has no completion".to_string())
    });
    vec![
        Case::from_check("complete_sl2_b3_n1", "[L,Λ] = H, [H,L] = 2L, [H,Λ] = -2Λ", complete),
        Case::from_check("no_solution_errors", "hard Lefschetz fails for q(α) = 0", isotropic),
    ]
}

/// Pullbacks of the degree-one polyvector classes, used as probes on models
/// whose full probe set is large.
fn degree_one_probes(model: &PairModel<Q>, pair: &TwistedIsoPair<Q>) -> Result<Vec<Vec<Q>>, String> {
    let inv = pair.ring_iso.inverse().ok_or("ring isomorphism is singular")?;
    Ok(model.ht_indices_of_degree(1).into_iter().map(|i| inv.column(i)).collect())
}

/// Consistency, annihilator correspondence and module compatibility on a
/// seeded synthetic instance of `model`, plus fault injection.
pub fn pair_model_cases(model: &PairModel<Q>, seed: u64) -> Vec<Case> {
    let name = &model.name;
    let mut cases = vec![Case::from_check(
        format!("{name}/validate"),
        "model axioms",
        model.validate().map(|_| (true, String::new())).map_err(err),
    )];
    let instance = synthetic_instance(model, seed).map_err(err);
    let (side, kontsevich) = match instance {
        Ok((side, k, _)) => (side, k),
        Err(e) => {
            cases.push(Case::from_check(format!("{name}/instance"), "synthetic transported pair", Err(e)));
            return cases;
        }
    };
    let report = annihilator_subspaces(model, &side, &kontsevich);
    cases.push(Case::from_check(
        format!("{name}/annihilator_correspondence"),
        "α ∈ Ann(HH²) ⇔ I_K(α) ∈ Ann(HT²)",
        Ok((report.correspondence, format!("dim A = {}, dim R = {}", report.a_basis.len(), report.r_basis.len()))),
    ));
    let compat = (|| {
        let (gens, mut probes) = default_generators_and_probes(model, &kontsevich).map_err(err)?;
        if model.ht_dim() > 8 {
            probes = degree_one_probes(model, &kontsevich)?;
        }
        let r = propagate_module_compat(model, &side, &kontsevich, &gens, &probes, 3);
        let fault = match break_on_depth_two(&side, &kontsevich, &gens, &probes) {
            Some(broken) => !propagate_module_compat(model, &side, &broken, &gens, &probes, 3).compatible(),
            None => true,
        };
        Ok((r.compatible(), fault, r.independent))
    })();
    cases.push(Case::from_check(
        format!("{name}/module_compatibility"),
        "compatibility on generators propagates to the generated submodule",
        compat.clone().map(|(ok, _, k)| (ok, format!("{k} independent elements"))),
    ));
    cases.push(Case::from_check(
        format!("{name}/fault_detected"),
        "a perturbation at depth two is caught",
        compat.map(|(_, caught, _)| (caught, String::new())),
    ));
    if let Ok(contained) = model.corner_containment() {
        cases.push(Case::from_check(
            format!("{name}/corner_containment"),
            "H^(0,0) ⊕ H^(n,n) ⊂ R on a CY-like model",
            Ok((contained, String::new())),
        ));
    }
    cases
}

fn pair_cases(seed: u64) -> Vec<Case> {
    let diag = |g: &[i64]| Matrix::from_fn(g.len(), g.len(), |i, j| if i == j { qi(g[i]) } else { qi(0) });
    let models: Vec<Result<PairModel<Q>, String>> = vec![
        torus_model(1).map_err(err),
        torus_model(2).map_err(err),
        k3_like_model(&diag(&[2, -2]), qi(1)).map_err(err),
        synthetic_cy3_model(qi(5), qi(3), q(-1, 24)).map_err(err),
    ];
    let mut cases = Vec::new();
    for (k, m) in models.into_iter().enumerate() {
        match m {
            Ok(model) => cases.extend(pair_model_cases(&model, seed.wrapping_add(k as u64))),
            Err(e) => cases.push(Case::from_check(format!("model_{k}"), "model construction", Err(e))),
        }
    }
    let point = torus_model::<Q>(2).map_err(err).and_then(|t| {
        let top = t.hw_unit_vector(t.hw_dim() - 1);
        t.mukai_chi(&top).map_err(err).map(|c| (c == qi(0), format!("χ = {c}")))
    });
    cases.push(Case::from_check("mukai_point_class", "χ(k(x), k(x)) = 0", point));
    let anisotropic = k3_like_model(&diag(&[2, -3]), qi(1)).map_err(err).and_then(|m| {
        let mut gamma = vec![qi(0); m.hw_dim()];
        gamma[m.hw_index("gamma1").ok_or("no gamma1")?] = qi(2);
        gamma[m.hw_index("gamma2").ok_or("no gamma2")?] = qi(1);
        m.mukai_chi(&gamma).map_err(err).map(|c| (c != qi(0), format!("χ = {c}")))
    });
    cases.push(Case::from_check("mukai_anisotropic_class", "∫ γ ∧ γ ≠ 0 for q(γ) ≠ 0", anisotropic));
    cases
}

fn jacobi_cases(seed: u64) -> Vec<Case> {
    const BIG: usize = 32;
    let mut r = rng(seed);
    let labels = [("x", LabelKind::Star), ("y", LabelKind::Interval), ("z", LabelKind::Circle)];
    let mut canonical_ok = true;
    let mut text_ok = true;
    for _ in 0..30 {
        let d = random_diagram(&mut r, &labels, 0, 4);
        canonical_ok &= shuffle_representative(&mut r, &d).canonical() == d.canonical();
        text_ok &= parse_diagram(&write_diagram(&d)).map(|b| b.is_isomorphic(&d)).unwrap_or(false);
    }
    let glue = (|| {
        let exp_xy = exp_strut::<Q>("x", "y", 8);
        for k in 0..25 {
            let c = random_diagram_avoiding_struts(&mut r, &[("x", LabelKind::Star), ("z", LabelKind::Star)], 0, 4, &["x"]);
            let d = random_diagram_avoiding_struts(&mut r, &[("x", LabelKind::Star), ("w", LabelKind::Star)], 0, 4, &["x"]);
            let (c, d) = (DiagramSeries::single(c, BIG), DiagramSeries::single(d, BIG));
            let lhs = relabel_delta(&inner_glue(&c, &d, "x").map_err(err)?, "x", "y").map_err(err)?;
            let rhs = pairing(&union_product(&c, &exp_xy, &["x"]).map_err(err)?, &d, &["x"]).map_err(err)?;
            if lhs.truncate(8) != rhs.truncate(8) {
                return Ok((false, format!("pair {k} differs")));
            }
        }
        Ok((true, "25 random pairs, degree ≤ 4".to_string()))
    })();
    vec![
        Case::from_check("canonical_form", "isomorphic diagrams share a canonical form", Ok((canonical_ok, String::new()))),
        Case::from_check("text_round_trip", "write then parse is the identity up to isomorphism", Ok((text_ok, String::new()))),
        Case::from_check("glue_identity", "Δ_y^x(C ⌟ₓ D) = ⟨C ∪ₓ exp(strut_xy), D⟩ₓ", glue),
    ]
}

fn weights_cases(seed: u64) -> Vec<Case> {
    let mut r = rng(seed);
    let mut cases = Vec::new();
    let backends = match Backend::<Q>::sl2(qi(1)) {
        Ok(sl2) => vec![Backend::abelian(3), sl2, Backend::gl(2)],
        Err(e) => return vec![Case::from_check("backends", "metric Lie algebras", Err(err(e)))],
    };
    let corpus = relation_corpus(&mut r, 8, 3);
    for b in &backends {
        let outcome = corpus
            .iter()
            .map(|inst| check_relation_vanishing(inst, b).map(|ok| (ok, inst.kind.name())))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)
            .map(|rows| {
                let bad: Vec<_> = rows.iter().filter(|(ok, _)| !ok).map(|(_, k)| *k).collect();
                (bad.is_empty(), format!("{} instances, failing: {bad:?}", rows.len()))
            });
        cases.push(Case::from_check(format!("relations_{}", b.name), "AS, IHX and STU vanish under weight systems", outcome));
    }
    let naive = (|| {
        let labels = [("x", LabelKind::Star), ("y", LabelKind::Interval)];
        let mut checked = 0;
        while checked < 15 {
            let d = random_diagram(&mut r, &labels, 0, 3);
            if d.half_edge_count() > 10 {
                continue;
            }
            if evaluate(&d, &backends[1]).map_err(err)? != evaluate_naive(&d, &backends[1]).map_err(err)? {
                return Ok((false, write_diagram(&d)));
            }
            checked += 1;
        }
        Ok((true, "15 diagrams on sl2".to_string()))
    })();
    cases.push(Case::from_check("naive_contraction_oracle", "edge-by-edge contraction equals the full index sum", naive));
    let coefficients: Vec<Q> = (0..4).map(|_| small_rational(&mut r, 9, 9)).collect();
    let wheels = (|| {
        let omega = wheel_series("x", &coefficients, 4).map_err(err)?;
        let pair = &backends[1..];
        let mut ok = true;
        for (lhs, rhs) in [wheel_strut_identity(&omega, 4).map_err(err)?, wheel_half_strut_identity(&omega, 4).map_err(err)?] {
            ok &= verify_series_identity(&lhs, &rhs, 4, pair).map_err(err)?.consistent();
        }
        Ok((ok, "degree ≤ 4 on sl2 and gl2".to_string()))
    })();
    cases.push(Case::from_check("wheel_identities", "Ω ⌟ exp(strut) identities for a random wheel series", wheels));
    cases
}

/// Cover degrees by direct search over nondecreasing tuples, independent of
/// the partition generator in the library.
pub fn chi_solutions_by_search(n: u64) -> Vec<(u64, Vec<u64>)> {
    fn walk(left: u64, min: u64, tuple: &mut Vec<u64>, n: u64, out: &mut Vec<(u64, Vec<u64>)>) {
        if left == 0 {
            let product: u128 = tuple.iter().map(|&x| u128::from(x) + 1).product();
            if product.is_multiple_of(u128::from(n + 1)) {
                let mut p = tuple.clone();
                p.reverse();
                out.push(((product / u128::from(n + 1)) as u64, p));
            }
            return;
        }
        for part in min..=left {
            tuple.push(part);
            walk(left - part, part, tuple, n, out);
            tuple.pop();
        }
    }
    let mut out = Vec::new();
    walk(n, 1, &mut Vec::new(), n, &mut out);
    out.sort();
    out
}

fn holonomy_cases(seed: u64) -> Vec<Case> {
    let (solutions, argument) = check_power_equation(64);
    let trivial = solutions.len() == 1 && solutions[0].1 == 1 && solutions[0].0 == 1u32.into();
    let mut cases = vec![
        Case::from_check(
            "power_equation_kmax64",
            "e·k·(1+k) = 2^k has e = k = 1 as its only solution",
            Ok((trivial && argument.consistent, argument.statement.to_string())),
        ),
        Case::from_check(
            "uniform_factors_reduce_to_power_equation",
            "all nᵢ = 1 and d = e·k leave only the trivial cover",
            Ok((uniform_factor_solutions(20) == vec![(1, 1)], String::new())),
        ),
    ];
    let brute = (1..=12).all(|n| {
        let mut found = enumerate_chi_solutions(n);
        found.sort();
        found == chi_solutions_by_search(n)
    });
    cases.push(Case::from_check("chi_solutions_n12", "d·(1+n) = ∏(1+nᵢ)", Ok((brute, "n ≤ 12 against direct search".into()))));

    let mut r = rng(seed);
    let shapes: [&[usize]; 4] = [&[1, 1], &[1, 1, 1], &[2, 1], &[2, 2]];
    let mut agree = 0;
    let mut multiplicative = true;
    for k in 0..100 {
        let blocks = shapes[k % shapes.len()];
        let m = if k % 2 == 0 { random_normalizer_element::<Q>(&mut r, blocks) } else { random_mixing_element::<Q>(&mut r, blocks, 2) };
        if induced_permutation(&m).is_ok() == is_in_normalizer(&m) {
            agree += 1;
        }
        if k % 2 == 0 {
            let other = random_normalizer_element::<Q>(&mut r, blocks);
            multiplicative &= match (induced_permutation(&m), induced_permutation(&other), induced_permutation(&m.compose(&other))) {
                (Ok(a), Ok(b), Ok(ab)) => ab.rho == b.rho.iter().map(|&i| a.rho[i]).collect::<Vec<_>>(),
                _ => false,
            };
        }
    }
    cases.push(Case::from_check(
        "normalizer_agreement",
        "A·σᵢ = σ_ρ(i) exactly for A in the normalizer of ∏ Sp(nᵢ)",
        Ok((agree == 100, format!("{agree}/100 matrices"))),
    ));
    cases.push(Case::from_check("rho_multiplicative", "ρ(AB) = ρ(A)ρ(B)", Ok((multiplicative, "50 pairs".into()))));
    cases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert!(matches!(run_suite("nosuch", &SuiteConfig::default()), Err(CliError::Usage(_))));
    }

    #[test]
    fn fast_suites_pass() {
        for name in ["innermax", "genus", "lefschetz", "holonomy"] {
            let report = run_suite(name, &SuiteConfig { seed: 7 }).unwrap();
            let bad: Vec<_> = report.cases.iter().filter(|c| c.status != Status::Pass).collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }

    #[test]
    fn search_oracle_small_values() {
        assert_eq!(chi_solutions_by_search(3), vec![(1, vec![3]), (2, vec![1, 1, 1])]);
    }
}
