//! Fixed-point aircraft sizing: iterate the airframe/propulsion weight
//! build-up and the mission-driven energy-source sizing until the maximum
//! takeoff weight stops moving.
//!
//! The loop is successive substitution with optional relaxation:
//! `mtow <- ω·f(mtow) + (1-ω)·mtow`, where `f` builds weights at the current
//! guess, flies the mission at those weights, sizes fuel and batteries from
//! the energy drawn, and sums the parts. Thrust- or power-to-weight ratio and
//! wing loading are trusted inputs; no constraint analysis is performed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::atmosphere::{atmosphere, SEA_LEVEL_DENSITY};
use crate::mission::{
    fly_mission, resolve_speed, EnergyBudget, InstalledPropulsion, MissionError, MissionHistory,
    MissionOutcome, MissionTotals, Vehicle, DEFAULT_DT_MAX,
};
use crate::model::{
    AircraftSpec, EnergyKind, InstalledRating, MissionProfile, MissionViolation, SegmentKind,
    SpecViolation, validate_mission,
};
use crate::powertrain::{
    ComponentKind, ComponentSizingError, PropArchitecture, TransmitterKind,
};
use crate::regression::{
    engine_specific_power_model, fill_unknowns, FillRecord, HistoricalDatabase, RegressionError,
};
use crate::STANDARD_GRAVITY;

/// Fixed-point iteration controls.
#[derive(Debug, Clone, PartialEq)]
pub struct SizingOptions {
    /// Relative MTOW change below which the loop stops.
    pub tolerance: f64,
    pub max_iterations: u32,
    /// Relaxation factor ω in (0, 1].
    pub relaxation: f64,
    /// kg; defaults to a payload-fraction seed when absent.
    pub initial_mtow_guess: Option<f64>,
    /// Euler step cap handed to the mission integrator, s.
    pub dt_max: f64,
}

impl Default for SizingOptions {
    fn default() -> SizingOptions {
        SizingOptions {
            tolerance: 1e-6,
            max_iterations: 100,
            relaxation: 1.0,
            initial_mtow_guess: None,
            dt_max: DEFAULT_DT_MAX,
        }
    }
}

/// One fixed-point step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: u32,
    /// kg, after relaxation.
    pub mtow: f64,
    /// |Δmtow| / mtow of the previous iterate.
    pub residual: f64,
}

/// Converged weight build-up.
#[derive(Debug, Clone, PartialEq)]
pub struct SizedAircraft {
    /// kg.
    pub mtow: f64,
    /// kg; airframe share of the empty weight after carving out propulsion.
    pub airframe_mass: f64,
    /// (component id, kg).
    pub propulsion_component_masses: Vec<(String, f64)>,
    /// (source id, kg) for consumables, reserves included.
    pub fuel_masses: Vec<(String, f64)>,
    /// (source id, kg) for batteries.
    pub battery_masses: Vec<(String, f64)>,
    /// kg.
    pub payload_and_crew: f64,
    /// m².
    pub wing_area: f64,
    pub installed: InstalledPropulsion,
    pub iteration_log: Vec<IterationRecord>,
}

impl SizedAircraft {
    pub fn total_propulsion_mass(&self) -> f64 {
        self.propulsion_component_masses
            .iter()
            .map(|(_, mass)| mass)
            .sum()
    }

    pub fn total_fuel_mass(&self) -> f64 {
        self.fuel_masses.iter().map(|(_, mass)| mass).sum()
    }

    pub fn total_battery_mass(&self) -> f64 {
        self.battery_masses.iter().map(|(_, mass)| mass).sum()
    }

    /// Sum of every mass account; equals `mtow` within the convergence
    /// tolerance.
    pub fn mass_closure(&self) -> f64 {
        self.payload_and_crew
            + self.airframe_mass
            + self.total_propulsion_mass()
            + self.total_fuel_mass()
            + self.total_battery_mass()
    }
}

/// Everything a caller needs after sizing: the converged aircraft, the
/// completed spec and architecture (regression fills applied), the fill
/// report, and the mission flown once more at converged weights.
#[derive(Debug, Clone)]
pub struct SizingResult {
    pub sized: SizedAircraft,
    pub spec: AircraftSpec,
    pub arch: PropArchitecture,
    pub fill_report: Vec<FillRecord>,
    pub history: MissionHistory,
    pub totals: MissionTotals,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SizingError {
    Spec(SpecViolation),
    Profile(Vec<MissionViolation>),
    UnknownOperation {
        segment: usize,
        operation: String,
    },
    Regression(RegressionError),
    /// A field needs a regression fill but no database was supplied.
    DatabaseRequired {
        field: String,
    },
    /// Seed formula payload/(1 - fe - 0.25) is non-positive.
    InfeasibleSeed {
        empty_weight_fraction: f64,
    },
    /// Propulsion masses exceed the empty-weight allowance.
    InfeasibleDecomposition {
        iteration: u32,
        propulsion_mass: f64,
        allowance: f64,
    },
    ComponentSizing {
        iteration: u32,
        source: ComponentSizingError,
    },
    Mission {
        iteration: u32,
        source: MissionError,
    },
    NonConvergence {
        iterations: u32,
        last_residual: f64,
        log: Vec<IterationRecord>,
    },
    Divergence {
        iteration: u32,
        mtow: f64,
        log: Vec<IterationRecord>,
    },
    /// A component with no specific power could not be filled by regression.
    SpecificPowerUnfillable {
        id: String,
        reason: String,
    },
    BadOptions {
        reason: String,
    },
}

impl fmt::Display for SizingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizingError::Spec(violation) => write!(f, "{violation}"),
            SizingError::Profile(violations) => {
                write!(f, "invalid mission profile:")?;
                for violation in violations {
                    write!(f, "\n  {violation}")?;
                }
                Ok(())
            }
            SizingError::UnknownOperation { segment, operation } => write!(
                f,
                "segment {segment} references operation '{operation}' absent from the architecture"
            ),
            SizingError::Regression(error) => write!(f, "{error}"),
            SizingError::DatabaseRequired { field } => write!(
                f,
                "'{field}' must be regressed but no historical database was supplied"
            ),
            SizingError::InfeasibleSeed {
                empty_weight_fraction,
            } => write!(
                f,
                "cannot seed MTOW: empty weight fraction {empty_weight_fraction} leaves no payload margin"
            ),
            SizingError::InfeasibleDecomposition {
                iteration,
                propulsion_mass,
                allowance,
            } => write!(
                f,
                "iteration {iteration}: propulsion mass {propulsion_mass:.1} kg exceeds the \
                 empty-weight allowance {allowance:.1} kg"
            ),
            SizingError::ComponentSizing { iteration, source } => {
                write!(f, "iteration {iteration}: {source}")
            }
            SizingError::Mission { iteration, source } => {
                write!(f, "iteration {iteration}: {source}")
            }
            SizingError::NonConvergence {
                iterations,
                last_residual,
                ..
            } => write!(
                f,
                "did not converge after {iterations} iterations (last residual {last_residual:.3e})"
            ),
            SizingError::Divergence { iteration, mtow, .. } => {
                write!(f, "diverged at iteration {iteration} (mtow {mtow:.1} kg)")
            }
            SizingError::SpecificPowerUnfillable { id, reason } => {
                write!(f, "cannot fill specific power of '{id}': {reason}")
            }
            SizingError::BadOptions { reason } => write!(f, "bad sizing options: {reason}"),
        }
    }
}

impl core::error::Error for SizingError {}

impl From<RegressionError> for SizingError {
    fn from(error: RegressionError) -> SizingError {
        SizingError::Regression(error)
    }
}

/// Structural cross-validation of the spec/profile/architecture triple.
pub fn validate_case(
    spec: &AircraftSpec,
    profile: &MissionProfile,
    arch: &PropArchitecture,
) -> Result<(), SizingError> {
    spec.validate().map_err(SizingError::Spec)?;

    if arch.name != spec.architecture_id {
        return Err(SizingError::Spec(SpecViolation::ArchitectureMismatch {
            expected: spec.architecture_id.clone(),
            actual: arch.name.clone(),
        }));
    }

    for index in arch.source_indices() {
        let component = arch.component(index);
        match spec.energy_source(&component.id) {
            None => {
                return Err(SizingError::Spec(SpecViolation::UnknownEnergySource {
                    source: component.id.clone(),
                }))
            }
            Some(declared) => {
                if let ComponentKind::Source(kind) = component.kind {
                    if kind != declared.kind {
                        return Err(SizingError::Spec(SpecViolation::UnknownEnergySource {
                            source: component.id.clone(),
                        }));
                    }
                }
            }
        }
    }

    let violations = validate_mission(profile);
    if !violations.is_empty() {
        return Err(SizingError::Profile(violations));
    }

    for (index, segment) in profile.all_segments().enumerate() {
        if arch.operation(&segment.operation_id).is_err() {
            return Err(SizingError::UnknownOperation {
                segment: index,
                operation: segment.operation_id.clone(),
            });
        }
    }

    Ok(())
}

/// Operation split used to apportion the installed rating: the takeoff
/// segment's when present, the first segment's otherwise.
fn reference_operation(profile: &MissionProfile) -> &str {
    profile
        .segments
        .iter()
        .find(|segment| segment.kind == SegmentKind::Takeoff)
        .or_else(|| profile.segments.first())
        .map(|segment| segment.operation_id.as_str())
        .expect("validated profile is non-empty")
}

/// Installed rating at a concrete MTOW.
pub fn installed_propulsion(rating: InstalledRating, mtow: f64) -> InstalledPropulsion {
    let weight = mtow * STANDARD_GRAVITY;
    match rating {
        InstalledRating::ThrustToWeight(ratio) => InstalledPropulsion::Thrust(ratio * weight),
        InstalledRating::PowerToWeight(ratio) => InstalledPropulsion::Power(ratio * weight),
    }
}

/// Takeoff-rated power at `mtow`: direct for power ratings; rated thrust
/// times the speed of the first scheduled segment for thrust ratings.
fn takeoff_rated_power(
    spec: &AircraftSpec,
    profile: &MissionProfile,
    mtow: f64,
) -> Result<f64, SizingError> {
    match installed_propulsion(spec.rating, mtow) {
        InstalledPropulsion::Power(power) => Ok(power),
        InstalledPropulsion::Thrust(thrust) => {
            for segment in profile.all_segments() {
                if let Some(schedule) = segment.speed {
                    let atmo = atmosphere(segment.start_altitude).map_err(|source| {
                        SizingError::Mission {
                            iteration: 0,
                            source: MissionError::Atmosphere { segment: 0, source },
                        }
                    })?;
                    return Ok(thrust * resolve_speed(schedule, &atmo));
                }
            }
            Err(SizingError::Mission {
                iteration: 0,
                source: MissionError::TakeoffNeedsFollowingSpeed { segment: 0 },
            })
        }
    }
}

/// Airframe and propulsion share of one MTOW guess.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightBuildup {
    /// m².
    pub wing_area: f64,
    pub installed: InstalledPropulsion,
    /// kg.
    pub airframe_mass: f64,
    /// (component id, kg).
    pub propulsion_masses: Vec<(String, f64)>,
}

/// Size the airframe and propulsion components for `mtow_guess`.
///
/// Components are sized at the larger of their mission peak power and their
/// share of the installed rating apportioned through `reference_operation`.
/// The empty-weight fraction covers airframe plus propulsion, so the airframe
/// is what remains after carving the propulsion masses out.
pub fn weight_buildup(
    mtow_guess: f64,
    spec: &AircraftSpec,
    arch: &PropArchitecture,
    reference_operation: &str,
    rated_power: f64,
    peak_input: &[f64],
    peak_output: &[f64],
    iteration: u32,
) -> Result<WeightBuildup, SizingError> {
    let weight = mtow_guess * STANDARD_GRAVITY;
    let wing_area = weight / spec.wing_loading;
    let installed = installed_propulsion(spec.rating, mtow_guess);

    // Apportion the rated power among the sinks active under the reference
    // operation, mirroring what the takeoff pseudo-segment demands.
    let operation = arch
        .operation(reference_operation)
        .expect("validated operation");
    let active_sinks: Vec<usize> = arch
        .sink_indices()
        .into_iter()
        .filter(|&sink| operation.is_active(sink))
        .collect();
    let rated_table = if active_sinks.is_empty() || rated_power == 0.0 {
        crate::powertrain::PowerTable::zero(arch.components().len())
    } else {
        let share = rated_power / active_sinks.len() as f64;
        let mut demands = BTreeMap::new();
        for &sink in &active_sinks {
            demands.insert(arch.component(sink).id.clone(), share);
        }
        arch.propagate_power(reference_operation, &demands)
            .map_err(|source| SizingError::Mission {
                iteration,
                source: MissionError::Propagation { segment: 0, source },
            })?
    };

    let count = arch.components().len();
    let mut sizing_input = vec![0.0; count];
    let mut sizing_output = vec![0.0; count];
    for index in 0..count {
        let mission_in = peak_input.get(index).copied().unwrap_or(0.0);
        let mission_out = peak_output.get(index).copied().unwrap_or(0.0);
        sizing_input[index] = mission_in.max(rated_table.input[index]);
        sizing_output[index] = mission_out.max(rated_table.output[index]);
    }

    let propulsion_masses = arch
        .size_components(&sizing_input, &sizing_output)
        .map_err(|source| SizingError::ComponentSizing { iteration, source })?;

    let empty_weight_fraction = spec
        .empty_weight_fraction
        .expect("spec completed before buildup");
    let allowance = empty_weight_fraction * mtow_guess;
    let propulsion_total: f64 = propulsion_masses.iter().map(|(_, mass)| mass).sum();
    if propulsion_total > allowance {
        return Err(SizingError::InfeasibleDecomposition {
            iteration,
            propulsion_mass: propulsion_total,
            allowance,
        });
    }

    Ok(WeightBuildup {
        wing_area,
        installed,
        airframe_mass: allowance - propulsion_total,
        propulsion_masses,
    })
}

/// Fuel and battery masses implied by the mission totals.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyMasses {
    pub fuel_masses: Vec<(String, f64)>,
    pub battery_masses: Vec<(String, f64)>,
}

impl EnergyMasses {
    pub fn total(&self) -> f64 {
        self.fuel_masses
            .iter()
            .chain(self.battery_masses.iter())
            .map(|(_, mass)| mass)
            .sum()
    }
}

/// Convert per-source mission totals into source masses. Consumables carry
/// exactly what the mission (design plus reserve) burned; batteries carry
/// `energy / (specific energy · usable depth of discharge)`, floored by the
/// peak-draw requirement `peak / max specific power`.
pub fn energy_source_sizing(
    totals: &MissionTotals,
    spec: &AircraftSpec,
    arch: &PropArchitecture,
) -> EnergyMasses {
    let mut fuel_masses = Vec::new();
    let mut battery_masses = Vec::new();

    for (id, energy) in &totals.energy_per_source {
        let declared = spec.energy_source(id).expect("validated source");
        match declared.kind {
            EnergyKind::Battery => {
                let params = declared.battery.expect("validated battery params");
                let energy_bound =
                    energy / (declared.specific_energy * params.usable_depth_of_discharge);
                let component = arch.component_index(id).expect("validated source");
                let peak_draw = totals.peak_output[component];
                let power_bound = peak_draw / params.max_specific_power;
                battery_masses.push((id.clone(), energy_bound.max(power_bound)));
            }
            EnergyKind::JetFuel | EnergyKind::Hydrogen => {
                let burned = totals
                    .fuel_per_source
                    .iter()
                    .find(|(fuel_id, _)| fuel_id == id)
                    .map(|(_, mass)| *mass)
                    .unwrap_or(0.0);
                fuel_masses.push((id.clone(), burned));
            }
        }
    }

    EnergyMasses {
        fuel_masses,
        battery_masses,
    }
}

/// Fill missing gas-turbine specific powers from the engine-table regression,
/// evaluated at each component's rated input power at the seed MTOW.
fn fill_specific_powers(
    arch: &mut PropArchitecture,
    spec: &AircraftSpec,
    profile: &MissionProfile,
    db: Option<&HistoricalDatabase>,
    seed_mtow: f64,
    report: &mut Vec<FillRecord>,
) -> Result<(), SizingError> {
    let missing: Vec<usize> = (0..arch.components().len())
        .filter(|&index| {
            let component = arch.component(index);
            component.specific_power.is_none()
                && !matches!(component.kind, ComponentKind::Source(_))
        })
        .collect();
    if missing.is_empty() {
        return Ok(());
    }

    for &index in &missing {
        let component = arch.component(index);
        if !matches!(
            component.kind,
            ComponentKind::Transmitter(TransmitterKind::GasTurbine)
        ) {
            return Err(SizingError::SpecificPowerUnfillable {
                id: component.id.clone(),
                reason: "only gas turbines have a default regression; set specific_power"
                    .to_string(),
            });
        }
    }

    let db = db.ok_or_else(|| SizingError::DatabaseRequired {
        field: "specific_power".to_string(),
    })?;
    let model = engine_specific_power_model(db)?;

    let rated_power = takeoff_rated_power(spec, profile, seed_mtow)?;
    let reference = reference_operation(profile);
    let operation = arch.operation(reference).expect("validated operation");
    let active_sinks: Vec<usize> = arch
        .sink_indices()
        .into_iter()
        .filter(|&sink| operation.is_active(sink))
        .collect();
    let mut demands = BTreeMap::new();
    if !active_sinks.is_empty() && rated_power > 0.0 {
        let share = rated_power / active_sinks.len() as f64;
        for &sink in &active_sinks {
            demands.insert(arch.component(sink).id.clone(), share);
        }
    }
    let table = arch
        .propagate_power(reference, &demands)
        .map_err(|source| SizingError::Mission {
            iteration: 0,
            source: MissionError::Propagation { segment: 0, source },
        })?;

    for index in missing {
        let rated_input = table.input[index];
        let id = arch.component(index).id.clone();
        if !(rated_input > 0.0) {
            return Err(SizingError::SpecificPowerUnfillable {
                id,
                reason: "component is idle under the reference operation".to_string(),
            });
        }
        let prediction = model.predict(&[rated_input])?;
        arch.set_specific_power(index, prediction.mean);
        report.push(FillRecord {
            field: format!("specific_power[{id}]"),
            value: prediction.mean,
            std: prediction.std,
            rows_used: model.rows_used,
            regression: "specific_power_w_per_kg ~ rated_power_w (engine table)".to_string(),
        });
    }
    Ok(())
}

/// Stall-speed guardrail: warn when the implied sea-level stall speed is more
/// than 10% above the first scheduled segment speed.
fn stall_speed_warning(spec: &AircraftSpec, profile: &MissionProfile) -> Option<String> {
    let stall_speed = libm::sqrt(
        2.0 * spec.wing_loading / (SEA_LEVEL_DENSITY * spec.max_lift_coefficient),
    );
    for segment in profile.all_segments() {
        if let Some(schedule) = segment.speed {
            let atmo = atmosphere(segment.start_altitude).ok()?;
            let speed = resolve_speed(schedule, &atmo);
            if stall_speed > 1.1 * speed {
                return Some(format!(
                    "wing loading implies a {stall_speed:.1} m/s stall speed, above 1.1x the \
                     first segment speed {speed:.1} m/s"
                ));
            }
            return None;
        }
    }
    None
}

fn seed_mtow(spec: &AircraftSpec, options: &SizingOptions) -> Result<f64, SizingError> {
    if let Some(guess) = options.initial_mtow_guess {
        return Ok(guess);
    }
    let fraction = spec
        .empty_weight_fraction
        .expect("spec completed before seeding");
    let margin = 1.0 - fraction - 0.25;
    if margin <= 0.0 {
        return Err(SizingError::InfeasibleSeed {
            empty_weight_fraction: fraction,
        });
    }
    Ok((spec.payload_mass + spec.crew_mass) / margin)
}

fn unlimited_budgets(arch: &PropArchitecture) -> BTreeMap<String, EnergyBudget> {
    arch.source_indices()
        .into_iter()
        .map(|index| (arch.component(index).id.clone(), EnergyBudget::Unlimited))
        .collect()
}

/// Run the fixed-point sizing loop.
pub fn size_aircraft(
    spec: &AircraftSpec,
    profile: &MissionProfile,
    arch: &PropArchitecture,
    db: Option<&HistoricalDatabase>,
    options: &SizingOptions,
) -> Result<SizingResult, SizingError> {
    if !(options.tolerance > 0.0) {
        return Err(SizingError::BadOptions {
            reason: "tolerance must be positive".to_string(),
        });
    }
    if !(options.relaxation > 0.0 && options.relaxation <= 1.0) {
        return Err(SizingError::BadOptions {
            reason: "relaxation must lie in (0, 1]".to_string(),
        });
    }
    if options.max_iterations == 0 {
        return Err(SizingError::BadOptions {
            reason: "max_iterations must be at least 1".to_string(),
        });
    }
    if !(options.dt_max > 0.0) {
        return Err(SizingError::BadOptions {
            reason: "dt_max must be positive".to_string(),
        });
    }

    validate_case(spec, profile, arch)?;

    // Step 0: fill unknowns.
    let mut fill_report = Vec::new();
    let spec = if spec.is_complete() {
        spec.clone()
    } else {
        let db = db.ok_or_else(|| SizingError::DatabaseRequired {
            field: spec.missing_fields().first().unwrap_or(&"").to_string(),
        })?;
        let (completed, report) = fill_unknowns(spec, db)?;
        fill_report = report;
        completed
    };
    spec.validate().map_err(SizingError::Spec)?;

    let mut arch = arch.clone();
    let seed = seed_mtow(&spec, options)?;
    fill_specific_powers(&mut arch, &spec, profile, db, seed, &mut fill_report)?;

    let mut warnings = Vec::new();
    if let Some(warning) = stall_speed_warning(&spec, profile) {
        warnings.push(warning);
    }

    let reference = reference_operation(profile).to_string();
    let payload_and_crew = spec.payload_mass + spec.crew_mass;
    let component_count = arch.components().len();

    let mut mtow = seed;
    let mut peak_input = vec![0.0; component_count];
    let mut peak_output = vec![0.0; component_count];
    let mut log: Vec<IterationRecord> = Vec::new();
    let mut converged = false;

    let step = |mtow: f64,
                peak_input: &[f64],
                peak_output: &[f64],
                iteration: u32,
                arch: &PropArchitecture|
     -> Result<(WeightBuildup, MissionOutcome, EnergyMasses), SizingError> {
        let rated_power = takeoff_rated_power(&spec, profile, mtow)?;
        let buildup = weight_buildup(
            mtow,
            &spec,
            arch,
            &reference,
            rated_power,
            peak_input,
            peak_output,
            iteration,
        )?;
        let vehicle = Vehicle {
            spec: &spec,
            arch,
            start_mass: mtow,
            wing_area: buildup.wing_area,
            installed: buildup.installed,
            budgets: unlimited_budgets(arch),
        };
        let outcome = fly_mission(&vehicle, profile, options.dt_max)
            .map_err(|source| SizingError::Mission { iteration, source })?;
        let energy = energy_source_sizing(&outcome.totals, &spec, arch);
        Ok((buildup, outcome, energy))
    };

    for iteration in 1..=options.max_iterations {
        let (buildup, outcome, energy) = step(mtow, &peak_input, &peak_output, iteration, &arch)?;
        peak_input = outcome.totals.peak_input.clone();
        peak_output = outcome.totals.peak_output.clone();

        let computed = payload_and_crew
            + buildup.airframe_mass
            + buildup
                .propulsion_masses
                .iter()
                .map(|(_, mass)| mass)
                .sum::<f64>()
            + energy.total();
        let next = options.relaxation * computed + (1.0 - options.relaxation) * mtow;
        let residual = (next - mtow).abs() / mtow;
        log.push(IterationRecord {
            iteration,
            mtow: next,
            residual,
        });

        if !next.is_finite() || next > 10.0 * seed || next <= 0.0 {
            return Err(SizingError::Divergence {
                iteration,
                mtow: next,
                log,
            });
        }

        mtow = next;
        if residual < options.tolerance {
            converged = true;
            break;
        }
    }

    if !converged {
        let last_residual = log.last().map(|record| record.residual).unwrap_or(f64::NAN);
        return Err(SizingError::NonConvergence {
            iterations: options.max_iterations,
            last_residual,
            log,
        });
    }

    // Final pass at converged weight for the reported state and history.
    let final_iteration = log.len() as u32 + 1;
    let (buildup, outcome, energy) = step(mtow, &peak_input, &peak_output, final_iteration, &arch)?;

    let sized = SizedAircraft {
        mtow,
        airframe_mass: buildup.airframe_mass,
        propulsion_component_masses: buildup.propulsion_masses,
        fuel_masses: energy.fuel_masses,
        battery_masses: energy.battery_masses,
        payload_and_crew,
        wing_area: buildup.wing_area,
        installed: buildup.installed,
        iteration_log: log,
    };

    Ok(SizingResult {
        sized,
        spec,
        arch,
        fill_report,
        history: outcome.history,
        totals: outcome.totals,
        warnings,
    })
}
