//! Checks that cross module boundaries: models built in one module and
//! consumed in another, text formats round-tripping into evaluation, and
//! the crate-root aliases.

use hkrlab_core::hodgepair::{synthetic_instance, torus_model};
use hkrlab_core::jacobi::{parse_series, wheel_series, write_series};
use hkrlab_core::scalar::{q, qi};
use hkrlab_core::weights::{evaluate_series, wheel_strut_identity};
use hkrlab_core::{QBackend, QDiagramSeries, QPairModel, QVerbitskyAlgebra, Q};
use proptest::prelude::*;

#[test]
fn transported_side_matches_model_dimensions() {
    let model: QPairModel = torus_model(2).unwrap();
    let (side, kontsevich, _) = synthetic_instance(&model, 5).unwrap();
    assert!(kontsevich.is_graded_iso(&model));
    assert_eq!(side.module_degrees.len(), model.hw_dim());
}

#[test]
fn written_series_evaluates_like_the_original() {
    let omega: QDiagramSeries = wheel_series("x", &[q(1, 48), q(-1, 5760)], 4).unwrap();
    let (lhs, _) = wheel_strut_identity(&omega, 4).unwrap();
    let back: QDiagramSeries = parse_series(&write_series(&lhs)).unwrap();
    let gl2 = QBackend::gl(2);
    assert_eq!(evaluate_series(&back, &gl2).unwrap(), evaluate_series(&lhs, &gl2).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The Fujiki relation holds on arbitrary integral classes.
    #[test]
    fn fujiki_on_arbitrary_classes(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        let space = hkrlab_core::verbitsky::QuadraticSpace::diagonal(&[qi(1), qi(2), qi(-1)]).unwrap();
        let alg = QVerbitskyAlgebra::build(space, 2).unwrap();
        let v: Vec<Q> = [a, b, c].map(qi).to_vec();
        prop_assert!(alg.check_fujiki(&v).unwrap());
    }
}
