//! Property tests for the power-flow propagation: conservation, linearity,
//! monotonicity, and declaration-order invariance.

mod common;

use std::collections::BTreeMap;

use common::{forward_reconstruction_error, random_power_instance};
use fastsize_core::powertrain::build_architecture;
use proptest::prelude::*;

proptest! {
    #[test]
    fn propagation_conserves_energy(seed in 0u64..10_000) {
        let (arch, demands) = random_power_instance(seed);
        let table = arch.propagate_power("op", &demands).unwrap();
        let worst = forward_reconstruction_error(&arch, "op", &table, &demands);
        prop_assert!(worst < 1e-9, "forward reconstruction error {worst}");
    }

    #[test]
    fn propagation_is_linear(seed in 0u64..10_000, scale in 0.0f64..50.0) {
        let (arch, demands) = random_power_instance(seed);
        let table = arch.propagate_power("op", &demands).unwrap();
        let scaled: BTreeMap<String, f64> = demands
            .iter()
            .map(|(id, demand)| (id.clone(), demand * scale))
            .collect();
        let scaled_table = arch.propagate_power("op", &scaled).unwrap();
        for (base, multiplied) in table.output.iter().zip(&scaled_table.output) {
            let expected = base * scale;
            prop_assert!(
                (multiplied - expected).abs() <= 1e-9 * expected.abs().max(1e-9),
                "{multiplied} vs {expected}"
            );
        }
    }

    #[test]
    fn raising_a_demand_never_lowers_a_source_draw(
        seed in 0u64..10_000,
        bump in 1.0f64..1.0e6,
    ) {
        let (arch, demands) = random_power_instance(seed);
        let before = arch.propagate_power("op", &demands).unwrap();
        for sink_id in demands.keys() {
            let mut raised = demands.clone();
            *raised.get_mut(sink_id).unwrap() += bump;
            let after = arch.propagate_power("op", &raised).unwrap();
            for index in arch.source_indices() {
                prop_assert!(
                    after.output[index] >= before.output[index] - 1e-12,
                    "draw at {index} fell when raising {sink_id}"
                );
            }
        }
    }

    #[test]
    fn component_declaration_order_does_not_change_powers(seed in 0u64..2_000) {
        let (arch, demands) = random_power_instance(seed);
        let table = arch.propagate_power("op", &demands).unwrap();

        // Rebuild the same architecture with components listed in reverse.
        let mut components = arch.components().to_vec();
        components.reverse();
        let mut edges = Vec::new();
        for from in 0..arch.components().len() {
            for to in 0..arch.components().len() {
                if arch.feeds(from, to) {
                    edges.push((
                        arch.components()[from].id.clone(),
                        arch.components()[to].id.clone(),
                    ));
                }
            }
        }
        let operation = arch.operation("op").unwrap();
        let mut rows: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
        for to in 0..arch.components().len() {
            let mut row = BTreeMap::new();
            for from in 0..arch.components().len() {
                let fraction = operation.fraction(to, from);
                if fraction > 0.0 {
                    row.insert(arch.components()[from].id.clone(), fraction);
                }
            }
            if !row.is_empty() {
                rows.insert(arch.components()[to].id.clone(), row);
            }
        }
        let mut operations = BTreeMap::new();
        operations.insert("op".to_string(), rows);
        let permuted = build_architecture("random", components, &edges, &operations).unwrap();
        let permuted_table = permuted.propagate_power("op", &demands).unwrap();

        for index in 0..arch.components().len() {
            let id = &arch.components()[index].id;
            let permuted_index = permuted.component_index(id).unwrap();
            prop_assert_eq!(
                table.output[index].to_bits(),
                permuted_table.output[permuted_index].to_bits(),
                "output power of {} changed under permutation",
                id
            );
        }
    }
}
