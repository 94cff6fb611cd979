//! Energy-based point-mass mission analysis.
//!
//! Each segment is marched with fixed-step forward Euler (step capped at
//! `dt_max`, final partial step landing exactly on the terminator). Every
//! step evaluates the atmosphere, resolves the speed schedule, computes the
//! point-mass thrust and propulsor power demand, propagates that demand
//! through the powertrain, and depletes the energy sources: consumables lose
//! mass, batteries lose energy.
//!
//! Takeoff is a fixed-duration constant-power pseudo-segment at sea level
//! drawing the takeoff-rated power; it advances time and energy but no
//! distance. Thrust is clamped at zero or above (no energy recovery); clamp
//! events are counted, not raised.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::atmosphere::{atmosphere, AltitudeOutOfRange, AtmosphereState, SEA_LEVEL_DENSITY};
use crate::model::{
    AircraftSpec, EnergyKind, MissionProfile, MissionViolation, Segment, SegmentKind,
    SpeedSchedule, Terminator, validate_mission,
};
use crate::powertrain::{PropArchitecture, PropagationError};
use crate::STANDARD_GRAVITY;

/// Default Euler step cap, s.
pub const DEFAULT_DT_MAX: f64 = 10.0;
/// Terminator slack below which a remaining step is considered complete.
const TERMINATOR_EPS: f64 = 1e-9;

/// Installed propulsion capacity at a concrete takeoff mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InstalledPropulsion {
    /// Sea-level static thrust, N.
    Thrust(f64),
    /// Installed shaft/electric power, W.
    Power(f64),
}

/// Per-source availability. Sizing flies with unlimited budgets (the sources
/// are being sized); off-design flight enforces the loaded masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyBudget {
    Unlimited,
    /// kg of consumable available to burn.
    FuelMass(f64),
    /// Usable battery energy, J.
    BatteryEnergy(f64),
}

/// Aircraft in flyable form: completed spec, architecture, concrete masses.
#[derive(Debug, Clone)]
pub struct Vehicle<'a> {
    pub spec: &'a AircraftSpec,
    pub arch: &'a PropArchitecture,
    /// Mass at brake release, kg.
    pub start_mass: f64,
    /// Wing reference area, m².
    pub wing_area: f64,
    pub installed: InstalledPropulsion,
    /// Budgets by source id; absent ids are unlimited.
    pub budgets: BTreeMap<String, EnergyBudget>,
}

/// Point-mass state along the mission.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightState {
    pub time: f64,
    pub distance: f64,
    pub altitude: f64,
    pub true_airspeed: f64,
    pub mass: f64,
    /// Cumulative energy drawn per architecture source (source order), J.
    pub energy_drawn: Vec<f64>,
    /// Cumulative mass burned per architecture source (source order), kg;
    /// stays zero for batteries.
    pub fuel_burned: Vec<f64>,
}

/// One recorded instant.
#[derive(Debug, Clone, PartialEq)]
pub struct HistorySample {
    pub time: f64,
    pub distance: f64,
    pub altitude: f64,
    pub true_airspeed: f64,
    pub mass: f64,
    pub lift_coefficient: f64,
    pub drag: f64,
    pub thrust: f64,
    pub flight_path_angle: f64,
    /// Output power per architecture component (draw for sources), W.
    pub component_power: Vec<f64>,
    /// Cumulative energy drawn per source, J.
    pub cumulative_source_energy: Vec<f64>,
}

/// Time-indexed record of the flown mission.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionHistory {
    pub component_ids: Vec<String>,
    pub source_ids: Vec<String>,
    pub samples: Vec<HistorySample>,
}

impl MissionHistory {
    /// Bookkeeping invariants checked after every run: time strictly
    /// increasing, cumulative source energies non-decreasing, mass
    /// non-increasing.
    pub fn verify(&self) -> Result<(), String> {
        use alloc::format;
        for pair in self.samples.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if !(b.time > a.time) {
                return Err(format!("time not strictly increasing at t={}", a.time));
            }
            if b.mass > a.mass + 1e-9 {
                return Err(format!("mass increased at t={}", b.time));
            }
            for (ea, eb) in a
                .cumulative_source_energy
                .iter()
                .zip(&b.cumulative_source_energy)
            {
                if eb < ea {
                    return Err(format!("cumulative energy decreased at t={}", b.time));
                }
            }
            if !(b.mass.is_finite() && b.time.is_finite()) {
                return Err(format!("non-finite state at t={}", b.time));
            }
        }
        Ok(())
    }
}

/// Per-source and per-component aggregates over design plus reserve.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionTotals {
    /// (source id, J drawn).
    pub energy_per_source: Vec<(String, f64)>,
    /// (source id, kg burned); consumables only.
    pub fuel_per_source: Vec<(String, f64)>,
    /// Peak input power per component index, W.
    pub peak_input: Vec<f64>,
    /// Peak output power per component index, W.
    pub peak_output: Vec<f64>,
    /// Ground distance covered by the design segments, m.
    pub design_distance: f64,
    /// Ground distance including reserves, m.
    pub total_distance: f64,
}

#[derive(Debug, Clone)]
pub struct MissionOutcome {
    pub history: MissionHistory,
    pub totals: MissionTotals,
    pub end_state: FlightState,
    /// Steps on which required thrust went negative and was clamped to zero.
    pub idle_clamp_steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MissionError {
    InvalidProfile(Vec<MissionViolation>),
    Atmosphere {
        segment: usize,
        source: AltitudeOutOfRange,
    },
    Stall {
        segment: usize,
        time: f64,
        lift_coefficient: f64,
        limit: f64,
    },
    FuelExhausted {
        segment: usize,
        source: String,
        time: f64,
    },
    BatteryDepleted {
        segment: usize,
        source: String,
        time: f64,
    },
    Propagation {
        segment: usize,
        source: PropagationError,
    },
    NoActiveSink {
        segment: usize,
        operation: String,
    },
    UnknownOperation {
        segment: usize,
        operation: String,
    },
    /// A thrust-rated takeoff needs the following segment's speed to convert
    /// rated thrust into power.
    TakeoffNeedsFollowingSpeed {
        segment: usize,
    },
    RateOfClimbExceedsSpeed {
        segment: usize,
        rate: f64,
        speed: f64,
    },
    IncompleteSpec {
        field: &'static str,
    },
    UnknownEnergySource {
        id: String,
    },
    EnergySourceKindMismatch {
        id: String,
    },
    NonFiniteState {
        segment: usize,
        time: f64,
    },
}

impl fmt::Display for MissionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MissionError::InvalidProfile(violations) => {
                write!(f, "invalid mission profile:")?;
                for violation in violations {
                    write!(f, "\n  {violation}")?;
                }
                Ok(())
            }
            MissionError::Atmosphere { segment, source } => {
                write!(f, "segment {segment}: {source}")
            }
            MissionError::Stall {
                segment,
                time,
                lift_coefficient,
                limit,
            } => write!(
                f,
                "segment {segment}: stall at t={time:.1} s (CL {lift_coefficient:.3} exceeds {limit:.3})"
            ),
            MissionError::FuelExhausted {
                segment,
                source,
                time,
            } => write!(
                f,
                "segment {segment}: fuel source '{source}' exhausted at t={time:.1} s"
            ),
            MissionError::BatteryDepleted {
                segment,
                source,
                time,
            } => write!(
                f,
                "segment {segment}: battery '{source}' depleted below its usable floor at t={time:.1} s"
            ),
            MissionError::Propagation { segment, source } => {
                write!(f, "segment {segment}: {source}")
            }
            MissionError::NoActiveSink { segment, operation } => write!(
                f,
                "segment {segment}: operation '{operation}' has no active sink"
            ),
            MissionError::UnknownOperation { segment, operation } => {
                write!(f, "segment {segment}: unknown operation '{operation}'")
            }
            MissionError::TakeoffNeedsFollowingSpeed { segment } => write!(
                f,
                "segment {segment}: thrust-rated takeoff needs a following segment with a speed schedule"
            ),
            MissionError::RateOfClimbExceedsSpeed {
                segment,
                rate,
                speed,
            } => write!(
                f,
                "segment {segment}: rate of climb {rate} m/s exceeds airspeed {speed} m/s"
            ),
            MissionError::IncompleteSpec { field } => {
                write!(f, "aircraft spec is missing '{field}'; fill unknowns first")
            }
            MissionError::UnknownEnergySource { id } => write!(
                f,
                "architecture source '{id}' has no matching aircraft energy source"
            ),
            MissionError::EnergySourceKindMismatch { id } => write!(
                f,
                "architecture source '{id}' disagrees with the aircraft energy source kind"
            ),
            MissionError::NonFiniteState { segment, time } => {
                write!(f, "segment {segment}: state became non-finite at t={time:.1} s")
            }
        }
    }
}

impl core::error::Error for MissionError {}

/// Resolve a speed schedule to true airspeed at the given atmosphere.
pub fn resolve_speed(schedule: SpeedSchedule, atmosphere: &AtmosphereState) -> f64 {
    match schedule {
        SpeedSchedule::ConstantTas(v) => v,
        SpeedSchedule::ConstantEas(ve) => {
            ve * libm::sqrt(SEA_LEVEL_DENSITY / atmosphere.density)
        }
        SpeedSchedule::ConstantMach(mach) => mach * atmosphere.speed_of_sound,
    }
}

/// Drag-polar aerodynamics used by the point-mass model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeroModel {
    /// m².
    pub wing_area: f64,
    pub cd0: f64,
    /// k in C_D = cd0 + k·C_L².
    pub induced_drag_factor: f64,
    pub max_lift_coefficient: f64,
}

/// Output of one point-mass force balance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMassDemand {
    pub lift_coefficient: f64,
    /// N.
    pub drag: f64,
    /// N, clamped at zero.
    pub thrust_required: f64,
    /// Propulsor output power demand, W (propulsive efficiency is applied
    /// inside the powertrain sink).
    pub sink_power_demand: f64,
    /// True when the raw thrust requirement was negative.
    pub idle_clamped: bool,
}

/// Lift coefficient exceeded the aircraft's maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StallExceeded {
    pub lift_coefficient: f64,
    pub limit: f64,
}

/// Point-mass force balance: q = ½ρV², C_L = m·g·cosγ/(q·S),
/// D = q·S·(cd0 + k·C_L²), T = D + m·g·sinγ + m·dV/dt, P = T·V.
pub fn point_mass_demand(
    mass: f64,
    true_airspeed: f64,
    density: f64,
    flight_path_angle: f64,
    acceleration: f64,
    aero: &AeroModel,
) -> Result<PointMassDemand, StallExceeded> {
    let q = 0.5 * density * true_airspeed * true_airspeed;
    let weight = mass * STANDARD_GRAVITY;
    let lift_coefficient = weight * libm::cos(flight_path_angle) / (q * aero.wing_area);
    if lift_coefficient > aero.max_lift_coefficient {
        return Err(StallExceeded {
            lift_coefficient,
            limit: aero.max_lift_coefficient,
        });
    }
    let drag_coefficient =
        aero.cd0 + aero.induced_drag_factor * lift_coefficient * lift_coefficient;
    let drag = q * aero.wing_area * drag_coefficient;
    let raw_thrust = drag + weight * libm::sin(flight_path_angle) + mass * acceleration;
    let idle_clamped = raw_thrust < 0.0;
    let thrust_required = if idle_clamped { 0.0 } else { raw_thrust };
    Ok(PointMassDemand {
        lift_coefficient,
        drag,
        thrust_required,
        sink_power_demand: thrust_required * true_airspeed,
        idle_clamped,
    })
}

struct SourceInfo {
    component_index: usize,
    id: String,
    kind: EnergyKind,
    specific_energy: f64,
    budget: EnergyBudget,
}

/// Fresh state at brake release for `vehicle`.
pub fn initial_state(vehicle: &Vehicle<'_>) -> FlightState {
    let sources = vehicle.arch.source_indices().len();
    FlightState {
        time: 0.0,
        distance: 0.0,
        altitude: 0.0,
        true_airspeed: 0.0,
        mass: vehicle.start_mass,
        energy_drawn: vec![0.0; sources],
        fuel_burned: vec![0.0; sources],
    }
}

/// Integration context for one mission.
struct Integrator<'a> {
    vehicle: &'a Vehicle<'a>,
    aero: AeroModel,
    sources: Vec<SourceInfo>,
    state: FlightState,
    /// `mass = zero_burn_mass - Σ fuel_burned` at every instant, keeping the
    /// mass-closure identity exact regardless of step count.
    zero_burn_mass: f64,
    samples: Vec<HistorySample>,
    peak_input: Vec<f64>,
    peak_output: Vec<f64>,
    idle_clamp_steps: usize,
    dt_max: f64,
}

/// Instantaneous evaluation used both for recording and for stepping.
struct StepEval {
    demand: PointMassDemand,
    speed: f64,
    flight_path_angle: f64,
    /// Per-component output power.
    power: Vec<f64>,
    /// Per-component input power.
    input: Vec<f64>,
}

impl<'a> Integrator<'a> {
    fn new(
        vehicle: &'a Vehicle<'a>,
        state: FlightState,
        dt_max: f64,
    ) -> Result<Integrator<'a>, MissionError> {
        let spec = vehicle.spec;
        let induced_drag_factor = spec
            .induced_drag_factor()
            .ok_or(MissionError::IncompleteSpec {
                field: "oswald_efficiency",
            })?;
        let aero = AeroModel {
            wing_area: vehicle.wing_area,
            cd0: spec.cd0,
            induced_drag_factor,
            max_lift_coefficient: spec.max_lift_coefficient,
        };

        let mut sources = Vec::new();
        for index in vehicle.arch.source_indices() {
            let component = vehicle.arch.component(index);
            let declared = spec
                .energy_source(&component.id)
                .ok_or_else(|| MissionError::UnknownEnergySource {
                    id: component.id.clone(),
                })?;
            let arch_kind = match component.kind {
                crate::powertrain::ComponentKind::Source(kind) => kind,
                _ => unreachable!("source_indices returns sources"),
            };
            if arch_kind != declared.kind {
                return Err(MissionError::EnergySourceKindMismatch {
                    id: component.id.clone(),
                });
            }
            let budget = vehicle
                .budgets
                .get(&component.id)
                .copied()
                .unwrap_or(EnergyBudget::Unlimited);
            sources.push(SourceInfo {
                component_index: index,
                id: component.id.clone(),
                kind: declared.kind,
                specific_energy: declared.specific_energy,
                budget,
            });
        }

        let count = vehicle.arch.components().len();
        let zero_burn_mass = state.mass + state.fuel_burned.iter().sum::<f64>();
        Ok(Integrator {
            vehicle,
            aero,
            state,
            zero_burn_mass,
            sources,
            samples: Vec::new(),
            peak_input: vec![0.0; count],
            peak_output: vec![0.0; count],
            idle_clamp_steps: 0,
            dt_max,
        })
    }

    fn active_sink_ids(
        &self,
        segment_index: usize,
        operation_id: &str,
    ) -> Result<Vec<String>, MissionError> {
        let operation = self.vehicle.arch.operation(operation_id).map_err(|_| {
            MissionError::UnknownOperation {
                segment: segment_index,
                operation: String::from(operation_id),
            }
        })?;
        let actives: Vec<String> = self
            .vehicle
            .arch
            .sink_indices()
            .into_iter()
            .filter(|&sink| operation.is_active(sink))
            .map(|sink| self.vehicle.arch.component(sink).id.clone())
            .collect();
        if actives.is_empty() {
            return Err(MissionError::NoActiveSink {
                segment: segment_index,
                operation: String::from(operation_id),
            });
        }
        Ok(actives)
    }

    /// Evaluate aero and powertrain flow at the current state under `segment`.
    fn evaluate(
        &mut self,
        segment: &Segment,
        segment_index: usize,
        takeoff_power: Option<f64>,
    ) -> Result<StepEval, MissionError> {
        let atmo = atmosphere(self.state.altitude).map_err(|source| MissionError::Atmosphere {
            segment: segment_index,
            source,
        })?;

        let (demand, speed, flight_path_angle) = match segment.kind {
            SegmentKind::Takeoff => {
                let power = takeoff_power.expect("takeoff power precomputed");
                let demand = PointMassDemand {
                    lift_coefficient: 0.0,
                    drag: 0.0,
                    thrust_required: match self.vehicle.installed {
                        InstalledPropulsion::Thrust(thrust) => thrust,
                        InstalledPropulsion::Power(_) => 0.0,
                    },
                    sink_power_demand: power,
                    idle_clamped: false,
                };
                (demand, self.state.true_airspeed, 0.0)
            }
            _ => {
                let schedule = segment.speed.expect("validated profile");
                let speed = resolve_speed(schedule, &atmo);
                let (flight_path_angle, acceleration) = match segment.kind {
                    SegmentKind::Cruise | SegmentKind::Loiter => (0.0, 0.0),
                    SegmentKind::Climb | SegmentKind::Descent => {
                        let magnitude = segment.rate_of_climb.expect("validated profile");
                        let rate = if segment.kind == SegmentKind::Climb {
                            magnitude
                        } else {
                            -magnitude
                        };
                        if magnitude >= speed {
                            return Err(MissionError::RateOfClimbExceedsSpeed {
                                segment: segment_index,
                                rate: magnitude,
                                speed,
                            });
                        }
                        // Speed-schedule acceleration along the climb path,
                        // by forward difference over one nominal step.
                        let probe_dt = self.dt_max.min(1.0);
                        let next_altitude = (self.state.altitude + rate * probe_dt)
                            .clamp(0.0, crate::atmosphere::MAX_ALTITUDE);
                        let acceleration = match atmosphere(next_altitude) {
                            Ok(next_atmo) => {
                                (resolve_speed(schedule, &next_atmo) - speed) / probe_dt
                            }
                            Err(_) => 0.0,
                        };
                        (libm::asin(rate / speed), acceleration)
                    }
                    SegmentKind::Takeoff => unreachable!(),
                };
                let demand = point_mass_demand(
                    self.state.mass,
                    speed,
                    atmo.density,
                    flight_path_angle,
                    acceleration,
                    &self.aero,
                )
                .map_err(|stall| MissionError::Stall {
                    segment: segment_index,
                    time: self.state.time,
                    lift_coefficient: stall.lift_coefficient,
                    limit: stall.limit,
                })?;
                (demand, speed, flight_path_angle)
            }
        };

        let actives = self.active_sink_ids(segment_index, &segment.operation_id)?;
        let share = demand.sink_power_demand / actives.len() as f64;
        let mut demands = BTreeMap::new();
        for id in actives {
            demands.insert(id, share);
        }
        let table = self
            .vehicle
            .arch
            .propagate_power(&segment.operation_id, &demands)
            .map_err(|source| MissionError::Propagation {
                segment: segment_index,
                source,
            })?;

        Ok(StepEval {
            demand,
            speed,
            flight_path_angle,
            power: table.output,
            input: table.input,
        })
    }

    fn record(&mut self, eval: &StepEval) {
        self.samples.push(HistorySample {
            time: self.state.time,
            distance: self.state.distance,
            altitude: self.state.altitude,
            true_airspeed: eval.speed,
            mass: self.state.mass,
            lift_coefficient: eval.demand.lift_coefficient,
            drag: eval.demand.drag,
            thrust: eval.demand.thrust_required,
            flight_path_angle: eval.flight_path_angle,
            component_power: eval.power.clone(),
            cumulative_source_energy: self.state.energy_drawn.clone(),
        });
    }

    /// Apply one Euler step of length `dt` using `eval`'s powers.
    fn deplete(
        &mut self,
        eval: &StepEval,
        dt: f64,
        segment_index: usize,
    ) -> Result<(), MissionError> {
        for (slot, source) in self.sources.iter().enumerate() {
            let draw = eval.power[source.component_index];
            if draw == 0.0 {
                continue;
            }
            let energy = draw * dt;
            self.state.energy_drawn[slot] += energy;
            if source.kind.is_consumable() {
                let burned = energy / source.specific_energy;
                self.state.fuel_burned[slot] += burned;
                if let EnergyBudget::FuelMass(available) = source.budget {
                    if self.state.fuel_burned[slot] > available + 1e-9 {
                        return Err(MissionError::FuelExhausted {
                            segment: segment_index,
                            source: source.id.clone(),
                            time: self.state.time + dt,
                        });
                    }
                }
            } else if let EnergyBudget::BatteryEnergy(available) = source.budget {
                if self.state.energy_drawn[slot] > available + 1e-6 {
                    return Err(MissionError::BatteryDepleted {
                        segment: segment_index,
                        source: source.id.clone(),
                        time: self.state.time + dt,
                    });
                }
            }
        }
        self.state.mass = self.zero_burn_mass - self.state.fuel_burned.iter().sum::<f64>();

        for index in 0..self.peak_input.len() {
            if eval.input[index] > self.peak_input[index] {
                self.peak_input[index] = eval.input[index];
            }
            if eval.power[index] > self.peak_output[index] {
                self.peak_output[index] = eval.power[index];
            }
        }

        if !(self.state.mass > 0.0) || !self.state.mass.is_finite() {
            return Err(MissionError::NonFiniteState {
                segment: segment_index,
                time: self.state.time + dt,
            });
        }
        Ok(())
    }

    /// Takeoff-rated power: direct for power-rated aircraft; rated thrust
    /// times the following segment's initial speed for thrust-rated ones.
    fn takeoff_power(
        &self,
        segment_index: usize,
        following: Option<&Segment>,
    ) -> Result<f64, MissionError> {
        match self.vehicle.installed {
            InstalledPropulsion::Power(power) => Ok(power),
            InstalledPropulsion::Thrust(thrust) => {
                let next = following.ok_or(MissionError::TakeoffNeedsFollowingSpeed {
                    segment: segment_index,
                })?;
                let schedule = next
                    .speed
                    .ok_or(MissionError::TakeoffNeedsFollowingSpeed {
                        segment: segment_index,
                    })?;
                let atmo =
                    atmosphere(next.start_altitude).map_err(|source| MissionError::Atmosphere {
                        segment: segment_index,
                        source,
                    })?;
                Ok(thrust * resolve_speed(schedule, &atmo))
            }
        }
    }

    fn fly_segment(
        &mut self,
        segment: &Segment,
        segment_index: usize,
        following: Option<&Segment>,
    ) -> Result<(), MissionError> {
        self.state.altitude = segment.start_altitude;

        let takeoff_power = if segment.kind == SegmentKind::Takeoff {
            Some(self.takeoff_power(segment_index, following)?)
        } else {
            None
        };

        let mut elapsed = 0.0;
        let mut covered = 0.0;
        loop {
            let remaining = match segment.terminator {
                Terminator::Duration(total) => total - elapsed,
                Terminator::Distance(total) => total - covered,
                Terminator::AltitudeReached => {
                    let rate = segment.rate_of_climb.expect("validated profile");
                    (segment.end_altitude - self.state.altitude).abs() / rate
                }
            };
            if remaining <= TERMINATOR_EPS {
                break;
            }

            let eval = self.evaluate(segment, segment_index, takeoff_power)?;
            if eval.demand.idle_clamped {
                self.idle_clamp_steps += 1;
            }

            let dt = match segment.terminator {
                Terminator::Duration(_) => remaining.min(self.dt_max),
                Terminator::Distance(_) => {
                    let ground_speed = eval.speed * libm::cos(eval.flight_path_angle);
                    (remaining / ground_speed).min(self.dt_max)
                }
                Terminator::AltitudeReached => remaining.min(self.dt_max),
            };

            self.record(&eval);
            self.deplete(&eval, dt, segment_index)?;

            self.state.time += dt;
            self.state.true_airspeed = eval.speed;
            elapsed += dt;
            match segment.kind {
                SegmentKind::Takeoff => {}
                SegmentKind::Cruise | SegmentKind::Loiter => {
                    let step_distance = eval.speed * dt;
                    self.state.distance += step_distance;
                    covered += step_distance;
                }
                SegmentKind::Climb | SegmentKind::Descent => {
                    let magnitude = segment.rate_of_climb.expect("validated profile");
                    let rate = if segment.kind == SegmentKind::Climb {
                        magnitude
                    } else {
                        -magnitude
                    };
                    self.state.altitude += rate * dt;
                    let step_distance = eval.speed * libm::cos(eval.flight_path_angle) * dt;
                    self.state.distance += step_distance;
                    covered += step_distance;
                }
            }
        }

        // Land exactly on the segment's end altitude so boundary continuity
        // stays exact across float drift.
        self.state.altitude = segment.end_altitude;
        Ok(())
    }
}

/// Fly one segment standalone from `start`. Returns the end state and the
/// recorded samples (one per step, no trailing endpoint sample).
pub fn fly_segment(
    vehicle: &Vehicle<'_>,
    start: FlightState,
    segment: &Segment,
    dt_max: f64,
) -> Result<(FlightState, Vec<HistorySample>), MissionError> {
    let mut integrator = Integrator::new(vehicle, start, dt_max)?;
    integrator.fly_segment(segment, 0, None)?;
    Ok((integrator.state, integrator.samples))
}

/// Fly the design mission then the reserve segments, returning the history,
/// per-source totals, and per-component peak powers.
pub fn fly_mission(
    vehicle: &Vehicle<'_>,
    profile: &MissionProfile,
    dt_max: f64,
) -> Result<MissionOutcome, MissionError> {
    let violations = validate_mission(profile);
    if !violations.is_empty() {
        return Err(MissionError::InvalidProfile(violations));
    }

    let mut integrator = Integrator::new(vehicle, initial_state(vehicle), dt_max)?;

    let segments: Vec<&Segment> = profile.all_segments().collect();
    let mut design_distance = 0.0;
    for (index, segment) in segments.iter().enumerate() {
        let following = segments.get(index + 1).copied();
        integrator.fly_segment(segment, index, following)?;
        if index + 1 == profile.segments.len() {
            design_distance = integrator.state.distance;
        }
    }

    // Terminal sample evaluated at the final state under the last segment.
    if let Some(last) = segments.last() {
        let takeoff_power = if last.kind == SegmentKind::Takeoff {
            Some(integrator.takeoff_power(segments.len() - 1, None).unwrap_or(0.0))
        } else {
            None
        };
        let eval = integrator.evaluate(last, segments.len() - 1, takeoff_power)?;
        integrator.record(&eval);
    }

    let history = MissionHistory {
        component_ids: vehicle
            .arch
            .components()
            .iter()
            .map(|component| component.id.clone())
            .collect(),
        source_ids: integrator.sources.iter().map(|s| s.id.clone()).collect(),
        samples: integrator.samples,
    };
    history
        .verify()
        .expect("mission history bookkeeping invariant violated");

    let energy_per_source: Vec<(String, f64)> = integrator
        .sources
        .iter()
        .zip(&integrator.state.energy_drawn)
        .map(|(source, &energy)| (source.id.clone(), energy))
        .collect();
    let fuel_per_source: Vec<(String, f64)> = integrator
        .sources
        .iter()
        .zip(&integrator.state.fuel_burned)
        .filter(|(source, _)| source.kind.is_consumable())
        .map(|(source, &mass)| (source.id.clone(), mass))
        .collect();

    Ok(MissionOutcome {
        totals: MissionTotals {
            energy_per_source,
            fuel_per_source,
            peak_input: integrator.peak_input,
            peak_output: integrator.peak_output,
            design_distance,
            total_distance: integrator.state.distance,
        },
        end_state: integrator.state,
        idle_clamp_steps: integrator.idle_clamp_steps,
        history,
    })
}
