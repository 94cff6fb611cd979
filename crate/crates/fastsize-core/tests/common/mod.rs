//! Shared fixtures: minimal aircraft, architectures, profiles, and a seeded
//! random-instance builder for power-flow properties.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fastsize_core::model::{
    AircraftSpec, BatteryParams, EnergyKind, EnergySourceSpec, InstalledRating, MissionProfile,
    Segment, SegmentKind, SpeedSchedule, Terminator,
};
use fastsize_core::powertrain::{
    build_architecture, Component, ComponentKind, PropArchitecture, SinkKind, TransmitterKind,
};

pub fn source(id: &str, kind: EnergyKind) -> Component {
    Component {
        id: id.to_string(),
        kind: ComponentKind::Source(kind),
        efficiency: None,
        specific_power: None,
    }
}

pub fn transmitter(id: &str, kind: TransmitterKind, efficiency: f64, sp: f64) -> Component {
    Component {
        id: id.to_string(),
        kind: ComponentKind::Transmitter(kind),
        efficiency: Some(efficiency),
        specific_power: Some(sp),
    }
}

pub fn sink(id: &str, efficiency: f64, sp: f64) -> Component {
    Component {
        id: id.to_string(),
        kind: ComponentKind::Sink(SinkKind::Propeller),
        efficiency: Some(efficiency),
        specific_power: Some(sp),
    }
}

pub fn edges(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(from, to)| ((*from).to_string(), (*to).to_string()))
        .collect()
}

pub type OperationRows = BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>;

pub fn operations(ops: &[(&str, &[(&str, &[(&str, f64)])])]) -> OperationRows {
    ops.iter()
        .map(|(op, rows)| {
            (
                (*op).to_string(),
                rows.iter()
                    .map(|(to, upstream)| {
                        (
                            (*to).to_string(),
                            upstream
                                .iter()
                                .map(|(from, fraction)| ((*from).to_string(), *fraction))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect()
}

/// fuel -> gas turbine (eta_turbine) -> propeller (eta_prop), one operation
/// named "all" used for every segment.
pub fn fuel_chain(eta_turbine: f64, eta_prop: f64) -> PropArchitecture {
    build_architecture(
        "fuel_chain",
        vec![
            source("kerosene", EnergyKind::JetFuel),
            transmitter("turbine", TransmitterKind::GasTurbine, eta_turbine, 1.0e15),
            sink("prop", eta_prop, 1.0e15),
        ],
        &edges(&[("kerosene", "turbine"), ("turbine", "prop")]),
        &operations(&[(
            "all",
            &[
                ("turbine", &[("kerosene", 1.0)]),
                ("prop", &[("turbine", 1.0)]),
            ],
        )]),
    )
    .unwrap()
}

/// battery -> motor -> propeller, one operation named "all".
pub fn battery_chain(eta_motor: f64, eta_prop: f64) -> PropArchitecture {
    build_architecture(
        "battery_chain",
        vec![
            source("pack", EnergyKind::Battery),
            transmitter("motor", TransmitterKind::ElectricMotor, eta_motor, 1.0e15),
            sink("prop", eta_prop, 1.0e15),
        ],
        &edges(&[("pack", "motor"), ("motor", "prop")]),
        &operations(&[(
            "all",
            &[("motor", &[("pack", 1.0)]), ("prop", &[("motor", 1.0)])],
        )]),
    )
    .unwrap()
}

pub fn jet_fuel_source(id: &str) -> EnergySourceSpec {
    EnergySourceSpec {
        id: id.to_string(),
        kind: EnergyKind::JetFuel,
        specific_energy: 4.30e7,
        battery: None,
    }
}

pub fn battery_source(id: &str) -> EnergySourceSpec {
    EnergySourceSpec {
        id: id.to_string(),
        kind: EnergyKind::Battery,
        specific_energy: 9.0e5,
        battery: Some(BatteryParams {
            usable_depth_of_discharge: 0.8,
            max_specific_power: 2_000.0,
        }),
    }
}

/// Sea-level cruise-only profile of the given distance at constant TAS.
pub fn cruise_profile(distance: f64, tas: f64, operation: &str) -> MissionProfile {
    MissionProfile {
        name: "cruise_only".to_string(),
        segments: vec![Segment {
            kind: SegmentKind::Cruise,
            start_altitude: 0.0,
            end_altitude: 0.0,
            speed: Some(SpeedSchedule::ConstantTas(tas)),
            terminator: Terminator::Distance(distance),
            operation_id: operation.to_string(),
            rate_of_climb: None,
        }],
        reserve_segments: vec![],
    }
}

/// Small deterministic generator (xorshift*) so property instances are
/// reproducible from a plain seed.
pub struct SeededRng(u64);

impl SeededRng {
    pub fn new(seed: u64) -> SeededRng {
        SeededRng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x1234_5678))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        low + unit * (high - low)
    }

    pub fn int(&mut self, low: usize, high: usize) -> usize {
        low + (self.next_u64() as usize) % (high - low + 1)
    }
}

/// Random valid layered architecture with one fully-wired operation "op" and
/// random sink demands. Every non-source is active, every sink reachable.
pub fn random_power_instance(seed: u64) -> (PropArchitecture, BTreeMap<String, f64>) {
    use fastsize_core::powertrain::build_architecture;

    let mut rng = SeededRng::new(seed);
    let n_sources = rng.int(1, 3);
    let n_mids = rng.int(0, 4);
    let n_sinks = rng.int(1, 3);

    let source_kinds = [EnergyKind::JetFuel, EnergyKind::Battery, EnergyKind::Hydrogen];
    let mid_kinds = [
        TransmitterKind::GasTurbine,
        TransmitterKind::ElectricMotor,
        TransmitterKind::Generator,
        TransmitterKind::Gearbox,
        TransmitterKind::ElectricalBus,
    ];

    let mut components = Vec::new();
    for index in 0..n_sources {
        components.push(source(&format!("src{index}"), source_kinds[index % 3]));
    }
    for index in 0..n_mids {
        components.push(transmitter(
            &format!("mid{index}"),
            mid_kinds[index % mid_kinds.len()],
            rng.uniform(0.3, 1.0),
            rng.uniform(1.0e3, 1.0e4),
        ));
    }
    for index in 0..n_sinks {
        components.push(sink(
            &format!("snk{index}"),
            rng.uniform(0.5, 1.0),
            rng.uniform(1.0e3, 1.0e4),
        ));
    }

    // Upstream candidates grow layer by layer, keeping the graph acyclic.
    let mut edge_list: Vec<(String, String)> = Vec::new();
    let mut rows: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    let mut pick_upstream = |rng: &mut SeededRng, to: &str, candidates: &[String]| {
        let picks = rng.int(1, candidates.len().min(2));
        let mut chosen: Vec<usize> = Vec::new();
        while chosen.len() < picks {
            let candidate = rng.int(0, candidates.len() - 1);
            if !chosen.contains(&candidate) {
                chosen.push(candidate);
            }
        }
        let mut weights: Vec<f64> = chosen.iter().map(|_| rng.uniform(0.1, 1.0)).collect();
        let total: f64 = weights.iter().sum();
        for weight in &mut weights {
            *weight /= total;
        }
        let mut row = BTreeMap::new();
        for (&index, weight) in chosen.iter().zip(weights) {
            edge_list.push((candidates[index].clone(), to.to_string()));
            row.insert(candidates[index].clone(), weight);
        }
        rows.insert(to.to_string(), row);
    };

    let source_ids: Vec<String> = (0..n_sources).map(|i| format!("src{i}")).collect();
    let mut mid_ids: Vec<String> = Vec::new();
    for index in 0..n_mids {
        let mut candidates = source_ids.clone();
        candidates.extend(mid_ids.iter().cloned());
        pick_upstream(&mut rng, &format!("mid{index}"), &candidates);
        mid_ids.push(format!("mid{index}"));
    }
    for index in 0..n_sinks {
        let mut candidates = source_ids.clone();
        candidates.extend(mid_ids.iter().cloned());
        pick_upstream(&mut rng, &format!("snk{index}"), &candidates);
    }

    let mut operations = BTreeMap::new();
    operations.insert("op".to_string(), rows);
    let arch = build_architecture("random", components, &edge_list, &operations)
        .expect("generated instance is valid");

    let mut demands = BTreeMap::new();
    for index in 0..n_sinks {
        // Occasionally zero to exercise the inactive-demand-free zero path.
        let demand = if rng.int(0, 9) == 0 {
            0.0
        } else {
            rng.uniform(1.0e3, 1.0e6)
        };
        demands.insert(format!("snk{index}"), demand);
    }
    (arch, demands)
}

/// Verify a power table is a conservative flow: efficiency relations hold,
/// every non-sink's output is fully consumed downstream, and a forward sweep
/// from the source draws reproduces the sink demands. Returns the largest
/// relative error seen at the sinks.
pub fn forward_reconstruction_error(
    arch: &PropArchitecture,
    operation_id: &str,
    table: &fastsize_core::powertrain::PowerTable,
    demands: &BTreeMap<String, f64>,
) -> f64 {
    let operation = arch.operation(operation_id).expect("known operation");
    let count = arch.components().len();

    // Node balances.
    for index in 0..count {
        let component = &arch.components()[index];
        if let Some(efficiency) = component.efficiency {
            let residual = (table.input[index] * efficiency - table.output[index]).abs();
            assert!(
                residual <= 1e-9 * table.output[index].max(1.0),
                "efficiency relation broken at {}",
                component.id
            );
        }
        if !component.kind.is_sink() {
            let consumed: f64 = (0..count)
                .map(|to| operation.fraction(to, index) * table.input[to])
                .sum();
            let residual = (consumed - table.output[index]).abs();
            assert!(
                residual <= 1e-9 * table.output[index].max(1.0),
                "output of {} not fully consumed",
                component.id
            );
        }
    }

    // Forward sweep: split each component's output among downstream takers
    // proportionally to the flows implied by the table, then push power from
    // the source draws through the efficiencies.
    let mut forward: Vec<Option<f64>> = vec![None; count];
    for index in 0..count {
        if arch.components()[index].kind.is_source() {
            forward[index] = Some(table.output[index]);
        }
    }
    for _ in 0..count {
        for to in 0..count {
            if forward[to].is_some() || arch.components()[to].kind.is_source() {
                continue;
            }
            let feeders: Vec<usize> = (0..count)
                .filter(|&from| operation.fraction(to, from) > 0.0)
                .collect();
            if feeders.iter().any(|&from| forward[from].is_none()) {
                continue;
            }
            let mut input = 0.0;
            for from in feeders {
                let out_from = table.output[from];
                if out_from > 0.0 {
                    let flow_share = operation.fraction(to, from) * table.input[to] / out_from;
                    input += flow_share * forward[from].unwrap();
                }
            }
            let efficiency = arch.components()[to].efficiency.unwrap_or(1.0);
            forward[to] = Some(input * efficiency);
        }
    }

    let mut worst = 0.0f64;
    for (id, &demand) in demands {
        let index = arch.component_index(id).expect("known sink");
        let reconstructed = forward[index].unwrap_or(0.0);
        let scale = demand.abs().max(1.0);
        worst = worst.max((reconstructed - demand).abs() / scale);
    }
    worst
}

/// A spec with a near-zero induced-drag factor (huge aspect ratio), so drag
/// is wing_area * q * cd0 and fuel burn is exactly linear in MTOW.
pub fn parasite_only_spec(
    name: &str,
    payload: f64,
    cd0: f64,
    wing_loading: f64,
    arch_id: &str,
    sources: Vec<EnergySourceSpec>,
) -> AircraftSpec {
    AircraftSpec {
        name: name.to_string(),
        payload_mass: payload,
        crew_mass: 0.0,
        design_range: 1.0e6,
        rating: InstalledRating::PowerToWeight(120.0),
        wing_loading,
        aspect_ratio: 1.0e12,
        oswald_efficiency: Some(1.0),
        cd0,
        empty_weight_fraction: Some(0.5),
        max_lift_coefficient: 3.0,
        architecture_id: arch_id.to_string(),
        energy_sources: sources,
    }
}
