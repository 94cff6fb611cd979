//! Gaussian-process posterior properties over random queries.

use fastsize_core::regression::{fit, ColumnMeta, RegressionMode, Table};
use proptest::prelude::*;

fn sample_table() -> Table {
    let points: [(f64, f64); 8] = [
        (120.0, 14.0),
        (300.0, 26.0),
        (750.0, 49.0),
        (1_500.0, 80.0),
        (4_000.0, 160.0),
        (9_000.0, 290.0),
        (22_000.0, 560.0),
        (60_000.0, 1_150.0),
    ];
    Table {
        name: "sample".to_string(),
        columns: vec![
            ColumnMeta {
                name: "x".to_string(),
                unit: String::new(),
                description: String::new(),
            },
            ColumnMeta {
                name: "y".to_string(),
                unit: String::new(),
                description: String::new(),
            },
        ],
        rows: points
            .iter()
            .map(|&(x, y)| vec![Some(x), Some(y)])
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn posterior_deviation_is_finite_and_non_negative(exponent in -3.0f64..9.0) {
        let model = fit(&sample_table(), &["x"], "y", RegressionMode::GaussianProcess).unwrap();
        let query = 10f64.powf(exponent);
        let prediction = model.predict(&[query]).unwrap();
        prop_assert!(prediction.mean.is_finite() && prediction.mean > 0.0);
        prop_assert!(prediction.std.is_finite());
        prop_assert!(prediction.std >= 0.0);
    }
}
