//! Propulsion architectures as directed acyclic graphs.
//!
//! Components are energy sources, transmitters, or sinks. The connection
//! matrix `B` records which component feeds which; an operation split `Λ`
//! apportions every active component's required input power among its
//! upstream feeders (pull semantics). Mission analysis hands sink output
//! demands to [`PropArchitecture::propagate_power`], which sweeps the graph
//! in reverse topological order and divides through by efficiencies until it
//! reaches the sources.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::EnergyKind;

/// Row-sum tolerance for active split rows.
pub const SPLIT_ROW_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransmitterKind {
    GasTurbine,
    ElectricMotor,
    Generator,
    Gearbox,
    ElectricalBus,
    FuelCell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinkKind {
    Propeller,
    Fan,
}

/// Component role in the power-flow graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Source(EnergyKind),
    Transmitter(TransmitterKind),
    Sink(SinkKind),
}

impl ComponentKind {
    pub fn is_source(self) -> bool {
        matches!(self, ComponentKind::Source(_))
    }

    pub fn is_sink(self) -> bool {
        matches!(self, ComponentKind::Sink(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            ComponentKind::Source(EnergyKind::JetFuel) => "jet_fuel",
            ComponentKind::Source(EnergyKind::Hydrogen) => "hydrogen",
            ComponentKind::Source(EnergyKind::Battery) => "battery",
            ComponentKind::Transmitter(TransmitterKind::GasTurbine) => "gas_turbine",
            ComponentKind::Transmitter(TransmitterKind::ElectricMotor) => "electric_motor",
            ComponentKind::Transmitter(TransmitterKind::Generator) => "generator",
            ComponentKind::Transmitter(TransmitterKind::Gearbox) => "gearbox",
            ComponentKind::Transmitter(TransmitterKind::ElectricalBus) => "electrical_bus",
            ComponentKind::Transmitter(TransmitterKind::FuelCell) => "fuel_cell",
            ComponentKind::Sink(SinkKind::Propeller) => "propeller",
            ComponentKind::Sink(SinkKind::Fan) => "fan",
        }
    }
}

/// One node of the architecture graph.
///
/// Sources carry no efficiency: conversion losses live in the transmitter
/// drawing from them. Sink efficiency folds in propulsive efficiency.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    /// Output power over input power, in (0, 1]. `None` for sources.
    pub efficiency: Option<f64>,
    /// W/kg, used to convert peak power into mass. Optional until sizing.
    pub specific_power: Option<f64>,
}

/// Per-operation split matrix. `fraction(j, i)` is the share of component
/// j's input demand requested from upstream component i. A component whose
/// entire row is zero is inactive in this operation.
#[derive(Debug, Clone, PartialEq)]
pub struct OperationSplit {
    split: Vec<Vec<f64>>,
}

impl OperationSplit {
    pub fn fraction(&self, component: usize, upstream: usize) -> f64 {
        self.split[component][upstream]
    }

    pub fn is_active(&self, component: usize) -> bool {
        self.split[component].iter().any(|&value| value > 0.0)
    }

    /// Replace one row (downstream component -> upstream fractions). Used by
    /// split sweeps; validity is re-checked by the architecture.
    pub fn set_row(&mut self, component: usize, row: Vec<f64>) {
        self.split[component] = row;
    }

    pub fn row(&self, component: usize) -> &[f64] {
        &self.split[component]
    }
}

/// Per-component power state for one flight instant, all W.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerTable {
    /// Output power per component (for sources this is the draw).
    pub output: Vec<f64>,
    /// Input power per component (zero for sources).
    pub input: Vec<f64>,
}

impl PowerTable {
    pub fn zero(count: usize) -> PowerTable {
        PowerTable {
            output: vec![0.0; count],
            input: vec![0.0; count],
        }
    }
}

/// Validated propulsion architecture.
#[derive(Debug, Clone, PartialEq)]
pub struct PropArchitecture {
    pub name: String,
    components: Vec<Component>,
    /// Connection matrix: `feeds[i][j]` means component i feeds component j.
    feeds: Vec<Vec<bool>>,
    /// Cached topological order (sources first).
    topo_order: Vec<usize>,
    operations: BTreeMap<String, OperationSplit>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArchError {
    DuplicateComponent { id: String },
    UnknownComponent { id: String },
    SelfLoop { id: String },
    DuplicateEdge { from: String, to: String },
    CycleDetected { cycle: Vec<String> },
    SourceHasInboundEdge { id: String },
    SinkHasOutboundEdge { id: String },
    NoInboundEdge { id: String },
    UnreachableSink { id: String },
    EfficiencyOnSource { id: String },
    MissingEfficiency { id: String },
    EfficiencyOutOfRange { id: String, value: f64 },
    NonPositiveSpecificPower { id: String, value: f64 },
    SplitOffGraph { operation: String, to: String, from: String },
    NegativeSplit { operation: String, to: String, from: String, value: f64 },
    SplitRowSum { operation: String, id: String, sum: f64 },
    SplitOnSource { operation: String, id: String },
    UnknownOperation { id: String },
}

impl fmt::Display for ArchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArchError::DuplicateComponent { id } => write!(f, "duplicate component id '{id}'"),
            ArchError::UnknownComponent { id } => write!(f, "unknown component id '{id}'"),
            ArchError::SelfLoop { id } => write!(f, "component '{id}' feeds itself"),
            ArchError::DuplicateEdge { from, to } => {
                write!(f, "edge '{from}' -> '{to}' listed more than once")
            }
            ArchError::CycleDetected { cycle } => {
                write!(f, "architecture graph has a cycle: {}", cycle.join(" -> "))
            }
            ArchError::SourceHasInboundEdge { id } => {
                write!(f, "energy source '{id}' cannot receive power")
            }
            ArchError::SinkHasOutboundEdge { id } => {
                write!(f, "sink '{id}' cannot feed another component")
            }
            ArchError::NoInboundEdge { id } => {
                write!(f, "component '{id}' has no upstream feeder")
            }
            ArchError::UnreachableSink { id } => {
                write!(f, "sink '{id}' is not reachable from any energy source")
            }
            ArchError::EfficiencyOnSource { id } => {
                write!(f, "source '{id}' must not declare an efficiency")
            }
            ArchError::MissingEfficiency { id } => {
                write!(f, "component '{id}' needs an efficiency")
            }
            ArchError::EfficiencyOutOfRange { id, value } => {
                write!(f, "component '{id}' efficiency must be in (0, 1], got {value}")
            }
            ArchError::NonPositiveSpecificPower { id, value } => {
                write!(f, "component '{id}' specific power must be positive, got {value}")
            }
            ArchError::SplitOffGraph { operation, to, from } => write!(
                f,
                "operation '{operation}': split '{from}' -> '{to}' has no matching edge"
            ),
            ArchError::NegativeSplit {
                operation,
                to,
                from,
                value,
            } => write!(
                f,
                "operation '{operation}': split '{from}' -> '{to}' is negative ({value})"
            ),
            ArchError::SplitRowSum { operation, id, sum } => write!(
                f,
                "operation '{operation}': splits into '{id}' sum to {sum}, expected 1"
            ),
            ArchError::SplitOnSource { operation, id } => write!(
                f,
                "operation '{operation}': source '{id}' cannot have inbound splits"
            ),
            ArchError::UnknownOperation { id } => write!(f, "unknown operation '{id}'"),
        }
    }
}

impl core::error::Error for ArchError {}

#[derive(Debug, Clone, PartialEq)]
pub enum PropagationError {
    UnknownOperation { id: String },
    NotASink { id: String },
    UnknownComponent { id: String },
    NegativeDemand { id: String, value: f64 },
    /// Power demanded from a component whose split row is all zero.
    InactiveComponentDemand { operation: String, id: String },
}

impl fmt::Display for PropagationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropagationError::UnknownOperation { id } => write!(f, "unknown operation '{id}'"),
            PropagationError::NotASink { id } => {
                write!(f, "component '{id}' is not a sink and cannot take a demand")
            }
            PropagationError::UnknownComponent { id } => write!(f, "unknown component '{id}'"),
            PropagationError::NegativeDemand { id, value } => {
                write!(f, "demand on '{id}' must be non-negative, got {value}")
            }
            PropagationError::InactiveComponentDemand { operation, id } => write!(
                f,
                "operation '{operation}': power demanded from inactive component '{id}'"
            ),
        }
    }
}

impl core::error::Error for PropagationError {}

#[derive(Debug, Clone, PartialEq)]
pub enum ComponentSizingError {
    MissingSpecificPower { id: String, peak_power: f64 },
}

impl fmt::Display for ComponentSizingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentSizingError::MissingSpecificPower { id, peak_power } => write!(
                f,
                "component '{id}' carries {peak_power} W peak power but has no specific power"
            ),
        }
    }
}

impl core::error::Error for ComponentSizingError {}

/// Assemble and validate an architecture from components, edges, and named
/// operations (`operation id -> downstream component -> upstream -> fraction`).
pub fn build_architecture(
    name: &str,
    components: Vec<Component>,
    edges: &[(String, String)],
    operations: &BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>,
) -> Result<PropArchitecture, ArchError> {
    let count = components.len();
    let mut index = BTreeMap::new();
    for (position, component) in components.iter().enumerate() {
        if index.insert(component.id.clone(), position).is_some() {
            return Err(ArchError::DuplicateComponent {
                id: component.id.clone(),
            });
        }
    }

    for component in &components {
        match component.kind {
            ComponentKind::Source(_) => {
                if component.efficiency.is_some() {
                    return Err(ArchError::EfficiencyOnSource {
                        id: component.id.clone(),
                    });
                }
            }
            _ => match component.efficiency {
                None => {
                    return Err(ArchError::MissingEfficiency {
                        id: component.id.clone(),
                    })
                }
                Some(value) if !(value > 0.0 && value <= 1.0) => {
                    return Err(ArchError::EfficiencyOutOfRange {
                        id: component.id.clone(),
                        value,
                    })
                }
                Some(_) => {}
            },
        }
        if let Some(value) = component.specific_power {
            if !(value > 0.0) {
                return Err(ArchError::NonPositiveSpecificPower {
                    id: component.id.clone(),
                    value,
                });
            }
        }
    }

    let mut feeds = vec![vec![false; count]; count];
    for (from, to) in edges {
        let from_index = *index
            .get(from)
            .ok_or_else(|| ArchError::UnknownComponent { id: from.clone() })?;
        let to_index = *index
            .get(to)
            .ok_or_else(|| ArchError::UnknownComponent { id: to.clone() })?;
        if from_index == to_index {
            return Err(ArchError::SelfLoop { id: from.clone() });
        }
        if feeds[from_index][to_index] {
            return Err(ArchError::DuplicateEdge {
                from: from.clone(),
                to: to.clone(),
            });
        }
        if components[to_index].kind.is_source() {
            return Err(ArchError::SourceHasInboundEdge { id: to.clone() });
        }
        if components[from_index].kind.is_sink() {
            return Err(ArchError::SinkHasOutboundEdge { id: from.clone() });
        }
        feeds[from_index][to_index] = true;
    }

    for (position, component) in components.iter().enumerate() {
        if !component.kind.is_source() && !(0..count).any(|from| feeds[from][position]) {
            return Err(ArchError::NoInboundEdge {
                id: component.id.clone(),
            });
        }
    }

    let topo_order = topological_order(&components, &feeds)?;

    // Reachability from sources, following feed edges downstream.
    let mut reachable = vec![false; count];
    for (position, component) in components.iter().enumerate() {
        if component.kind.is_source() {
            reachable[position] = true;
        }
    }
    for &node in &topo_order {
        if reachable[node] {
            for downstream in 0..count {
                if feeds[node][downstream] {
                    reachable[downstream] = true;
                }
            }
        }
    }
    for (position, component) in components.iter().enumerate() {
        if component.kind.is_sink() && !reachable[position] {
            return Err(ArchError::UnreachableSink {
                id: component.id.clone(),
            });
        }
    }

    let mut parsed_operations = BTreeMap::new();
    for (operation_id, rows) in operations {
        let mut split = vec![vec![0.0; count]; count];
        for (to, upstream) in rows {
            let to_index = *index
                .get(to)
                .ok_or_else(|| ArchError::UnknownComponent { id: to.clone() })?;
            if components[to_index].kind.is_source() {
                return Err(ArchError::SplitOnSource {
                    operation: operation_id.clone(),
                    id: to.clone(),
                });
            }
            for (from, &fraction) in upstream {
                let from_index = *index
                    .get(from)
                    .ok_or_else(|| ArchError::UnknownComponent { id: from.clone() })?;
                if fraction < 0.0 {
                    return Err(ArchError::NegativeSplit {
                        operation: operation_id.clone(),
                        to: to.clone(),
                        from: from.clone(),
                        value: fraction,
                    });
                }
                if fraction > 0.0 && !feeds[from_index][to_index] {
                    return Err(ArchError::SplitOffGraph {
                        operation: operation_id.clone(),
                        to: to.clone(),
                        from: from.clone(),
                    });
                }
                split[to_index][from_index] = fraction;
            }
        }
        for (position, row) in split.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            if sum > 0.0 && (sum - 1.0).abs() > SPLIT_ROW_TOLERANCE {
                return Err(ArchError::SplitRowSum {
                    operation: operation_id.clone(),
                    id: components[position].id.clone(),
                    sum,
                });
            }
        }
        parsed_operations.insert(operation_id.clone(), OperationSplit { split });
    }

    Ok(PropArchitecture {
        name: name.to_string(),
        components,
        feeds,
        topo_order,
        operations: parsed_operations,
    })
}

/// Kahn's algorithm with smallest-id-first tie breaking, so the cached order
/// (and with it every power sweep's float summation order) depends only on
/// the graph, never on component declaration order. On failure, walk the
/// leftover nodes to report a cycle.
fn topological_order(
    components: &[Component],
    feeds: &[Vec<bool>],
) -> Result<Vec<usize>, ArchError> {
    let count = components.len();
    let mut in_degree = vec![0usize; count];
    for from in 0..count {
        for to in 0..count {
            if feeds[from][to] {
                in_degree[to] += 1;
            }
        }
    }

    let mut ready: Vec<usize> = (0..count).filter(|&node| in_degree[node] == 0).collect();
    let mut order = Vec::with_capacity(count);
    while !ready.is_empty() {
        ready.sort_by(|&a, &b| components[b].id.cmp(&components[a].id));
        let node = ready.pop().expect("non-empty");
        order.push(node);
        for downstream in 0..count {
            if feeds[node][downstream] {
                in_degree[downstream] -= 1;
                if in_degree[downstream] == 0 {
                    ready.push(downstream);
                }
            }
        }
    }

    if order.len() == count {
        return Ok(order);
    }

    // Find one cycle among the unresolved nodes for the error message.
    let unresolved: Vec<usize> = (0..count).filter(|node| !order.contains(node)).collect();
    let start = unresolved[0];
    let mut cycle = vec![start];
    let mut current = start;
    loop {
        let next = (0..count)
            .find(|&to| feeds[current][to] && unresolved.contains(&to))
            .unwrap_or(start);
        if cycle.contains(&next) {
            let tail_start = cycle.iter().position(|&node| node == next).unwrap();
            let mut names: Vec<String> = cycle[tail_start..]
                .iter()
                .map(|&node| components[node].id.clone())
                .collect();
            names.push(components[next].id.clone());
            return Err(ArchError::CycleDetected { cycle: names });
        }
        cycle.push(next);
        current = next;
    }
}

impl PropArchitecture {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components
            .iter()
            .position(|component| component.id == id)
    }

    pub fn component(&self, index: usize) -> &Component {
        &self.components[index]
    }

    pub fn operation(&self, id: &str) -> Result<&OperationSplit, ArchError> {
        self.operations
            .get(id)
            .ok_or_else(|| ArchError::UnknownOperation { id: id.to_string() })
    }

    pub fn operation_ids(&self) -> impl Iterator<Item = &str> {
        self.operations.keys().map(String::as_str)
    }

    pub fn feeds(&self, from: usize, to: usize) -> bool {
        self.feeds[from][to]
    }

    pub fn sink_indices(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&node| self.components[node].kind.is_sink())
            .collect()
    }

    pub fn source_indices(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&node| self.components[node].kind.is_source())
            .collect()
    }

    /// Replace a component's specific power (regression fill-in path).
    pub fn set_specific_power(&mut self, index: usize, value: f64) {
        self.components[index].specific_power = Some(value);
    }

    /// Install a modified operation split (validity re-checked). Used by
    /// hybridization sweeps.
    pub fn replace_operation(
        &mut self,
        id: &str,
        split: OperationSplit,
    ) -> Result<(), ArchError> {
        for (position, row) in split.split.iter().enumerate() {
            let mut sum = 0.0;
            for (upstream, &fraction) in row.iter().enumerate() {
                if fraction < 0.0 {
                    return Err(ArchError::NegativeSplit {
                        operation: id.to_string(),
                        to: self.components[position].id.clone(),
                        from: self.components[upstream].id.clone(),
                        value: fraction,
                    });
                }
                if fraction > 0.0 && !self.feeds[upstream][position] {
                    return Err(ArchError::SplitOffGraph {
                        operation: id.to_string(),
                        to: self.components[position].id.clone(),
                        from: self.components[upstream].id.clone(),
                    });
                }
                sum += fraction;
            }
            if sum > 0.0 && (sum - 1.0).abs() > SPLIT_ROW_TOLERANCE {
                return Err(ArchError::SplitRowSum {
                    operation: id.to_string(),
                    id: self.components[position].id.clone(),
                    sum,
                });
            }
        }
        self.operations.insert(id.to_string(), split);
        Ok(())
    }

    /// Propagate sink output demands (W) back to the energy sources under
    /// one operation split. Returns per-component input/output powers.
    pub fn propagate_power(
        &self,
        operation_id: &str,
        sink_demands: &BTreeMap<String, f64>,
    ) -> Result<PowerTable, PropagationError> {
        let operation =
            self.operations
                .get(operation_id)
                .ok_or_else(|| PropagationError::UnknownOperation {
                    id: operation_id.to_string(),
                })?;
        self.propagate_power_with(operation_id, operation, sink_demands)
    }

    /// Same as [`propagate_power`](Self::propagate_power) with an explicit
    /// split, for sweeps over modified operations.
    pub fn propagate_power_with(
        &self,
        operation_label: &str,
        operation: &OperationSplit,
        sink_demands: &BTreeMap<String, f64>,
    ) -> Result<PowerTable, PropagationError> {
        let count = self.components.len();
        let mut table = PowerTable::zero(count);

        for (id, &demand) in sink_demands {
            let index = self
                .component_index(id)
                .ok_or_else(|| PropagationError::UnknownComponent { id: id.clone() })?;
            if !self.components[index].kind.is_sink() {
                return Err(PropagationError::NotASink { id: id.clone() });
            }
            if demand < 0.0 || !demand.is_finite() {
                return Err(PropagationError::NegativeDemand {
                    id: id.clone(),
                    value: demand,
                });
            }
            table.output[index] = demand;
        }

        // Reverse topological sweep: by the time a component is visited its
        // entire downstream demand has been accumulated into `output`.
        for &node in self.topo_order.iter().rev() {
            let component = &self.components[node];
            if component.kind.is_source() {
                continue;
            }
            if table.output[node] == 0.0 {
                continue;
            }
            if !operation.is_active(node) {
                return Err(PropagationError::InactiveComponentDemand {
                    operation: operation_label.to_string(),
                    id: component.id.clone(),
                });
            }
            let efficiency = component.efficiency.expect("validated at build");
            let input = table.output[node] / efficiency;
            table.input[node] = input;
            for upstream in 0..count {
                let fraction = operation.fraction(node, upstream);
                if fraction > 0.0 {
                    table.output[upstream] += fraction * input;
                }
            }
        }

        Ok(table)
    }

    /// Convert per-component peak powers into masses by dividing the rating
    /// power by the specific power. The rating power is the component's peak
    /// shaft/electric interface power: input side for transmitters fed by
    /// shaft or electric power, output side for sinks and for converters
    /// whose input is chemical (gas turbines, fuel cells) so that specific
    /// powers stay on the usual shaft/electric-rating basis. Sources are
    /// sized by the energy module, not here.
    pub fn size_components(
        &self,
        peak_input: &[f64],
        peak_output: &[f64],
    ) -> Result<Vec<(String, f64)>, ComponentSizingError> {
        let mut masses = Vec::new();
        for (index, component) in self.components.iter().enumerate() {
            let peak = match component.kind {
                ComponentKind::Source(_) => continue,
                ComponentKind::Transmitter(
                    TransmitterKind::GasTurbine | TransmitterKind::FuelCell,
                ) => peak_output[index],
                ComponentKind::Transmitter(_) => peak_input[index],
                ComponentKind::Sink(_) => peak_output[index],
            };
            let mass = if peak == 0.0 {
                0.0
            } else {
                match component.specific_power {
                    Some(specific_power) => peak / specific_power,
                    None => {
                        return Err(ComponentSizingError::MissingSpecificPower {
                            id: component.id.clone(),
                            peak_power: peak,
                        })
                    }
                }
            };
            masses.push((component.id.clone(), mass));
        }
        Ok(masses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::borrow::ToOwned;

    pub(crate) fn source(id: &str, kind: EnergyKind) -> Component {
        Component {
            id: id.to_owned(),
            kind: ComponentKind::Source(kind),
            efficiency: None,
            specific_power: None,
        }
    }

    pub(crate) fn transmitter(id: &str, kind: TransmitterKind, efficiency: f64) -> Component {
        Component {
            id: id.to_owned(),
            kind: ComponentKind::Transmitter(kind),
            efficiency: Some(efficiency),
            specific_power: Some(5_000.0),
        }
    }

    pub(crate) fn sink(id: &str, efficiency: f64) -> Component {
        Component {
            id: id.to_owned(),
            kind: ComponentKind::Sink(SinkKind::Propeller),
            efficiency: Some(efficiency),
            specific_power: Some(8_000.0),
        }
    }

    fn edges(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(from, to)| ((*from).to_owned(), (*to).to_owned()))
            .collect()
    }

    fn operation(
        rows: &[(&str, &[(&str, f64)])],
    ) -> BTreeMap<String, BTreeMap<String, f64>> {
        rows.iter()
            .map(|(to, upstream)| {
                (
                    (*to).to_owned(),
                    upstream
                        .iter()
                        .map(|(from, fraction)| ((*from).to_owned(), *fraction))
                        .collect(),
                )
            })
            .collect()
    }

    fn chain() -> PropArchitecture {
        let mut operations = BTreeMap::new();
        operations.insert(
            "cruise".to_owned(),
            operation(&[
                ("motor", &[("battery", 1.0)]),
                ("prop", &[("motor", 1.0)]),
            ]),
        );
        build_architecture(
            "chain",
            alloc::vec![
                source("battery", EnergyKind::Battery),
                transmitter("motor", TransmitterKind::ElectricMotor, 0.95),
                sink("prop", 0.80),
            ],
            &edges(&[("battery", "motor"), ("motor", "prop")]),
            &operations,
        )
        .unwrap()
    }

    #[test]
    fn three_node_chain_builds() {
        let arch = chain();
        assert_eq!(arch.components().len(), 3);
        assert_eq!(arch.sink_indices().len(), 1);
    }

    #[test]
    fn figure_like_freighter_builds_with_two_subgraphs() {
        let mut operations = BTreeMap::new();
        operations.insert(
            "cruise".to_owned(),
            operation(&[
                ("turbine_l", &[("kerosene", 1.0)]),
                ("turbine_r", &[("kerosene", 1.0)]),
                ("motor_l", &[("pack", 1.0)]),
                ("motor_r", &[("pack", 1.0)]),
                ("prop_inboard_l", &[("turbine_l", 1.0)]),
                ("prop_inboard_r", &[("turbine_r", 1.0)]),
                ("prop_outboard_l", &[("motor_l", 1.0)]),
                ("prop_outboard_r", &[("motor_r", 1.0)]),
            ]),
        );
        let arch = build_architecture(
            "freighter",
            alloc::vec![
                source("kerosene", EnergyKind::JetFuel),
                source("pack", EnergyKind::Battery),
                transmitter("turbine_l", TransmitterKind::GasTurbine, 0.35),
                transmitter("turbine_r", TransmitterKind::GasTurbine, 0.35),
                transmitter("motor_l", TransmitterKind::ElectricMotor, 0.95),
                transmitter("motor_r", TransmitterKind::ElectricMotor, 0.95),
                sink("prop_inboard_l", 0.85),
                sink("prop_inboard_r", 0.85),
                sink("prop_outboard_l", 0.85),
                sink("prop_outboard_r", 0.85),
            ],
            &edges(&[
                ("kerosene", "turbine_l"),
                ("kerosene", "turbine_r"),
                ("turbine_l", "prop_inboard_l"),
                ("turbine_r", "prop_inboard_r"),
                ("pack", "motor_l"),
                ("pack", "motor_r"),
                ("motor_l", "prop_outboard_l"),
                ("motor_r", "prop_outboard_r"),
            ]),
            &operations,
        )
        .unwrap();
        assert_eq!(arch.sink_indices().len(), 4);
        assert_eq!(arch.source_indices().len(), 2);
    }

    #[test]
    fn sink_outbound_edge_is_rejected() {
        let result = build_architecture(
            "bad",
            alloc::vec![
                source("fuel", EnergyKind::JetFuel),
                transmitter("turbine", TransmitterKind::GasTurbine, 0.35),
                sink("prop", 0.85),
            ],
            &edges(&[("fuel", "turbine"), ("turbine", "prop"), ("prop", "turbine")]),
            &BTreeMap::new(),
        );
        assert!(matches!(result, Err(ArchError::SinkHasOutboundEdge { .. })));
    }

    #[test]
    fn cycle_is_reported_with_node_list() {
        let result = build_architecture(
            "cyclic",
            alloc::vec![
                source("fuel", EnergyKind::JetFuel),
                transmitter("a", TransmitterKind::Gearbox, 1.0),
                transmitter("b", TransmitterKind::Gearbox, 1.0),
                sink("prop", 0.85),
            ],
            &edges(&[("fuel", "a"), ("a", "b"), ("b", "a"), ("b", "prop")]),
            &BTreeMap::new(),
        );
        match result {
            Err(ArchError::CycleDetected { cycle }) => {
                assert!(cycle.contains(&"a".to_owned()) && cycle.contains(&"b".to_owned()));
            }
            other => panic!("expected cycle error, got {other:?}"),
        }
    }

    #[test]
    fn chain_propagation_divides_by_efficiencies() {
        let arch = chain();
        let mut demands = BTreeMap::new();
        demands.insert("prop".to_owned(), 1.0e6);
        let table = arch.propagate_power("cruise", &demands).unwrap();

        let prop = arch.component_index("prop").unwrap();
        let motor = arch.component_index("motor").unwrap();
        let battery = arch.component_index("battery").unwrap();

        assert!((table.input[prop] - 1.25e6).abs() < 1e-3);
        let expected_motor_input = 1.25e6 / 0.95;
        assert!((table.input[motor] - expected_motor_input).abs() < 1e-3);
        assert!((table.output[battery] - expected_motor_input).abs() < 1e-3);
    }

    #[test]
    fn zero_demands_give_zero_powers() {
        let arch = chain();
        let mut demands = BTreeMap::new();
        demands.insert("prop".to_owned(), 0.0);
        let table = arch.propagate_power("cruise", &demands).unwrap();
        assert!(table.output.iter().all(|&p| p == 0.0));
        assert!(table.input.iter().all(|&p| p == 0.0));
    }

    #[test]
    fn parallel_hybrid_branch_arithmetic() {
        let mut operations = BTreeMap::new();
        operations.insert(
            "cruise".to_owned(),
            operation(&[
                ("turbine", &[("kerosene", 1.0)]),
                ("motor", &[("pack", 1.0)]),
                ("gearbox", &[("turbine", 0.7), ("motor", 0.3)]),
                ("prop", &[("gearbox", 1.0)]),
            ]),
        );
        let arch = build_architecture(
            "parallel",
            alloc::vec![
                source("kerosene", EnergyKind::JetFuel),
                source("pack", EnergyKind::Battery),
                transmitter("turbine", TransmitterKind::GasTurbine, 0.35),
                transmitter("motor", TransmitterKind::ElectricMotor, 0.95),
                transmitter("gearbox", TransmitterKind::Gearbox, 1.0),
                sink("prop", 0.85),
            ],
            &edges(&[
                ("kerosene", "turbine"),
                ("pack", "motor"),
                ("turbine", "gearbox"),
                ("motor", "gearbox"),
                ("gearbox", "prop"),
            ]),
            &operations,
        )
        .unwrap();

        let mut demands = BTreeMap::new();
        demands.insert("prop".to_owned(), 850.0e3);
        let table = arch.propagate_power("cruise", &demands).unwrap();

        let gearbox = arch.component_index("gearbox").unwrap();
        let turbine = arch.component_index("turbine").unwrap();
        let motor = arch.component_index("motor").unwrap();
        let kerosene = arch.component_index("kerosene").unwrap();
        let pack = arch.component_index("pack").unwrap();

        assert!((table.output[gearbox] - 1.0e6).abs() < 1e-6);
        assert!((table.output[turbine] - 700.0e3).abs() < 1e-6);
        assert!((table.output[kerosene] - 2.0e6).abs() < 1e-6);
        assert!((table.output[motor] - 300.0e3).abs() < 1e-6);
        assert!((table.output[pack] - 315.789473684e3).abs() < 1e-3);
    }

    #[test]
    fn demand_on_inactive_sink_is_an_error() {
        let mut operations = BTreeMap::new();
        operations.insert(
            "inboard_only".to_owned(),
            operation(&[
                ("turbine", &[("kerosene", 1.0)]),
                ("prop_a", &[("turbine", 1.0)]),
                // prop_b intentionally inactive
            ]),
        );
        let arch = build_architecture(
            "twin",
            alloc::vec![
                source("kerosene", EnergyKind::JetFuel),
                transmitter("turbine", TransmitterKind::GasTurbine, 0.35),
                sink("prop_a", 0.85),
                sink("prop_b", 0.85),
            ],
            &edges(&[
                ("kerosene", "turbine"),
                ("turbine", "prop_a"),
                ("turbine", "prop_b"),
            ]),
            &operations,
        )
        .unwrap();

        let mut demands = BTreeMap::new();
        demands.insert("prop_b".to_owned(), 1.0e5);
        assert!(matches!(
            arch.propagate_power("inboard_only", &demands),
            Err(PropagationError::InactiveComponentDemand { .. })
        ));
    }

    #[test]
    fn bad_split_row_sum_is_rejected_at_build() {
        let mut operations = BTreeMap::new();
        operations.insert(
            "cruise".to_owned(),
            operation(&[
                ("motor", &[("battery", 0.9)]),
                ("prop", &[("motor", 1.0)]),
            ]),
        );
        let result = build_architecture(
            "chain",
            alloc::vec![
                source("battery", EnergyKind::Battery),
                transmitter("motor", TransmitterKind::ElectricMotor, 0.95),
                sink("prop", 0.80),
            ],
            &edges(&[("battery", "motor"), ("motor", "prop")]),
            &operations,
        );
        assert!(matches!(result, Err(ArchError::SplitRowSum { .. })));
    }

    #[test]
    fn component_sizing_divides_peak_by_specific_power() {
        let arch = chain();
        let motor = arch.component_index("motor").unwrap();
        let prop = arch.component_index("prop").unwrap();

        let mut peak_input = alloc::vec![0.0; 3];
        let mut peak_output = alloc::vec![0.0; 3];
        peak_input[motor] = 1.0e6;
        peak_output[prop] = 2.0e6;

        let masses = arch.size_components(&peak_input, &peak_output).unwrap();
        let motor_mass = masses.iter().find(|(id, _)| id == "motor").unwrap().1;
        let prop_mass = masses.iter().find(|(id, _)| id == "prop").unwrap().1;
        assert!((motor_mass - 200.0).abs() < 1e-9);
        assert!((prop_mass - 250.0).abs() < 1e-9);
    }

    #[test]
    fn never_active_component_weighs_nothing() {
        let arch = chain();
        let masses = arch
            .size_components(&alloc::vec![0.0; 3], &alloc::vec![0.0; 3])
            .unwrap();
        assert!(masses.iter().all(|(_, mass)| *mass == 0.0));
    }

    #[test]
    fn sizing_division_oracle() {
        // 2.0e6 W at 3000 W/kg -> 666.67 kg.
        let mut components = alloc::vec![
            source("fuel", EnergyKind::JetFuel),
            transmitter("turbine", TransmitterKind::GasTurbine, 0.35),
            sink("prop", 0.85),
        ];
        components[1].specific_power = Some(3_000.0);
        let arch = build_architecture(
            "t",
            components,
            &edges(&[("fuel", "turbine"), ("turbine", "prop")]),
            &BTreeMap::new(),
        )
        .unwrap();
        let turbine = arch.component_index("turbine").unwrap();
        let mut peak_input = alloc::vec![0.0; 3];
        peak_input[turbine] = 2.0e6;
        let masses = arch
            .size_components(&peak_input, &alloc::vec![0.0; 3])
            .unwrap();
        let turbine_mass = masses.iter().find(|(id, _)| id == "turbine").unwrap().1;
        assert!((turbine_mass - 666.6666666666666).abs() < 1e-9);
    }

    #[test]
    fn missing_specific_power_with_load_is_an_error() {
        let mut components = alloc::vec![
            source("fuel", EnergyKind::JetFuel),
            transmitter("turbine", TransmitterKind::GasTurbine, 0.35),
            sink("prop", 0.85),
        ];
        components[1].specific_power = None;
        let arch = build_architecture(
            "t",
            components,
            &edges(&[("fuel", "turbine"), ("turbine", "prop")]),
            &BTreeMap::new(),
        )
        .unwrap();
        let turbine = arch.component_index("turbine").unwrap();
        let mut peak_input = alloc::vec![0.0; 3];
        peak_input[turbine] = 1.0e5;
        assert!(matches!(
            arch.size_components(&peak_input, &alloc::vec![0.0; 3]),
            Err(ComponentSizingError::MissingSpecificPower { .. })
        ));
    }
}
