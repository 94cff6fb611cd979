//! Domain types shared by every other module: aircraft specifications,
//! energy sources, and mission profiles, all in SI units.
//!
//! Values are immutable after construction. Parsing and unit conversion live
//! in the companion crate; this module owns the invariants.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// What an energy source stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyKind {
    JetFuel,
    Hydrogen,
    Battery,
}

impl EnergyKind {
    /// Consumable sources lose mass as energy is drawn; batteries keep theirs.
    pub fn is_consumable(self) -> bool {
        !matches!(self, EnergyKind::Battery)
    }

    pub fn label(self) -> &'static str {
        match self {
            EnergyKind::JetFuel => "jet_fuel",
            EnergyKind::Hydrogen => "hydrogen",
            EnergyKind::Battery => "battery",
        }
    }
}

/// Battery-only parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryParams {
    /// Usable fraction of stored energy, in (0, 1].
    pub usable_depth_of_discharge: f64,
    /// Peak deliverable power per unit mass, W/kg.
    pub max_specific_power: f64,
}

/// One onboard energy source.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySourceSpec {
    pub id: String,
    pub kind: EnergyKind,
    /// Energy content per unit mass, J/kg.
    pub specific_energy: f64,
    /// Present iff `kind == Battery`.
    pub battery: Option<BatteryParams>,
}

/// Installed propulsion rating, exactly one form per aircraft.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InstalledRating {
    /// Sea-level static thrust per unit MTOW weight, N/N.
    ThrustToWeight(f64),
    /// Installed power per unit MTOW weight, W/N.
    PowerToWeight(f64),
}

/// User-declared design inputs. Fields left `None` are to-be-regressed and
/// must be filled before sizing.
#[derive(Debug, Clone, PartialEq)]
pub struct AircraftSpec {
    pub name: String,
    /// kg.
    pub payload_mass: f64,
    /// kg. Defaults to zero when the input omits it.
    pub crew_mass: f64,
    /// m.
    pub design_range: f64,
    pub rating: InstalledRating,
    /// MTOW weight per wing reference area, N/m².
    pub wing_loading: f64,
    pub aspect_ratio: f64,
    /// Span efficiency in (0, 1]; regressable.
    pub oswald_efficiency: Option<f64>,
    /// Parasite drag coefficient.
    pub cd0: f64,
    /// Fraction of MTOW covered by airframe plus propulsion; regressed from
    /// the historical database when absent.
    pub empty_weight_fraction: Option<f64>,
    /// Used for the stall-speed sanity check and in-flight stall detection.
    pub max_lift_coefficient: f64,
    /// Must match the name of the architecture the aircraft flies with.
    pub architecture_id: String,
    pub energy_sources: Vec<EnergySourceSpec>,
}

impl AircraftSpec {
    pub fn energy_source(&self, id: &str) -> Option<&EnergySourceSpec> {
        self.energy_sources.iter().find(|source| source.id == id)
    }

    /// Induced-drag factor k = 1/(π·AR·e). Requires `oswald_efficiency`.
    pub fn induced_drag_factor(&self) -> Option<f64> {
        let oswald = self.oswald_efficiency?;
        Some(1.0 / (core::f64::consts::PI * self.aspect_ratio * oswald))
    }

    /// Check every structural invariant that does not need the architecture.
    pub fn validate(&self) -> Result<(), SpecViolation> {
        fn positive(value: f64, field: &'static str) -> Result<(), SpecViolation> {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(SpecViolation::NonPositive { field, value })
            }
        }

        positive(self.design_range, "design_range")?;
        positive(self.wing_loading, "wing_loading")?;
        positive(self.aspect_ratio, "aspect_ratio")?;
        positive(self.cd0, "cd0")?;
        positive(self.max_lift_coefficient, "max_lift_coefficient")?;
        if !(self.payload_mass >= 0.0 && self.payload_mass.is_finite()) {
            return Err(SpecViolation::NonPositive {
                field: "payload_mass",
                value: self.payload_mass,
            });
        }
        if !(self.crew_mass >= 0.0 && self.crew_mass.is_finite()) {
            return Err(SpecViolation::NonPositive {
                field: "crew_mass",
                value: self.crew_mass,
            });
        }
        match self.rating {
            InstalledRating::ThrustToWeight(value) => positive(value, "thrust_to_weight")?,
            InstalledRating::PowerToWeight(value) => positive(value, "power_to_weight")?,
        }
        if let Some(oswald) = self.oswald_efficiency {
            if !(oswald > 0.0 && oswald <= 1.0) {
                return Err(SpecViolation::OutOfUnitInterval {
                    field: "oswald_efficiency",
                    value: oswald,
                });
            }
        }
        if let Some(fraction) = self.empty_weight_fraction {
            if !(fraction > 0.0 && fraction < 1.0) {
                return Err(SpecViolation::OutOfUnitInterval {
                    field: "empty_weight_fraction",
                    value: fraction,
                });
            }
        }
        for source in &self.energy_sources {
            positive(source.specific_energy, "specific_energy")?;
            match (source.kind, &source.battery) {
                (EnergyKind::Battery, Some(params)) => {
                    if !(params.usable_depth_of_discharge > 0.0
                        && params.usable_depth_of_discharge <= 1.0)
                    {
                        return Err(SpecViolation::OutOfUnitInterval {
                            field: "usable_depth_of_discharge",
                            value: params.usable_depth_of_discharge,
                        });
                    }
                    positive(params.max_specific_power, "max_specific_power")?;
                }
                (EnergyKind::Battery, None) => {
                    return Err(SpecViolation::BatteryParamsMissing {
                        source: source.id.clone(),
                    })
                }
                (_, Some(_)) => {
                    return Err(SpecViolation::BatteryParamsOnNonBattery {
                        source: source.id.clone(),
                    })
                }
                (_, None) => {}
            }
        }
        let mut seen: Vec<&str> = Vec::new();
        for source in &self.energy_sources {
            if seen.contains(&source.id.as_str()) {
                return Err(SpecViolation::DuplicateEnergySource {
                    source: source.id.clone(),
                });
            }
            seen.push(&source.id);
        }
        Ok(())
    }

    /// Fields still awaiting a regression fill.
    pub fn missing_fields(&self) -> Vec<&'static str> {
        let mut missing = Vec::new();
        if self.empty_weight_fraction.is_none() {
            missing.push("empty_weight_fraction");
        }
        if self.oswald_efficiency.is_none() {
            missing.push("oswald_efficiency");
        }
        missing
    }

    /// True once every to-be-regressed field has a value.
    pub fn is_complete(&self) -> bool {
        self.missing_fields().is_empty()
    }
}

/// A violated aircraft-spec invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecViolation {
    NonPositive { field: &'static str, value: f64 },
    OutOfUnitInterval { field: &'static str, value: f64 },
    BatteryParamsMissing { source: String },
    BatteryParamsOnNonBattery { source: String },
    DuplicateEnergySource { source: String },
    /// An architecture source component has no matching energy source entry.
    UnknownEnergySource { source: String },
    /// Architecture name does not match the spec's `architecture_id`.
    ArchitectureMismatch { expected: String, actual: String },
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecViolation::NonPositive { field, value } => {
                write!(f, "{field} must be positive and finite, got {value}")
            }
            SpecViolation::OutOfUnitInterval { field, value } => {
                write!(f, "{field} must lie in (0, 1], got {value}")
            }
            SpecViolation::BatteryParamsMissing { source } => write!(
                f,
                "battery source '{source}' needs usable_depth_of_discharge and max_specific_power"
            ),
            SpecViolation::BatteryParamsOnNonBattery { source } => {
                write!(f, "source '{source}' is not a battery but carries battery fields")
            }
            SpecViolation::DuplicateEnergySource { source } => {
                write!(f, "energy source '{source}' declared more than once")
            }
            SpecViolation::UnknownEnergySource { source } => write!(
                f,
                "architecture draws from '{source}' but the aircraft declares no such energy source"
            ),
            SpecViolation::ArchitectureMismatch { expected, actual } => write!(
                f,
                "aircraft references architecture '{expected}' but '{actual}' was supplied"
            ),
        }
    }
}

impl core::error::Error for SpecViolation {}

/// Flight segment category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Takeoff,
    Climb,
    Cruise,
    Descent,
    Loiter,
}

impl SegmentKind {
    pub fn label(self) -> &'static str {
        match self {
            SegmentKind::Takeoff => "takeoff",
            SegmentKind::Climb => "climb",
            SegmentKind::Cruise => "cruise",
            SegmentKind::Descent => "descent",
            SegmentKind::Loiter => "loiter",
        }
    }
}

/// How the commanded speed varies with altitude within a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpeedSchedule {
    /// True airspeed held constant, m/s.
    ConstantTas(f64),
    /// Equivalent airspeed held constant, m/s.
    ConstantEas(f64),
    /// Mach number held constant.
    ConstantMach(f64),
}

/// What ends a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Terminator {
    /// Ground distance covered in this segment, m.
    Distance(f64),
    /// Elapsed time in this segment, s.
    Duration(f64),
    /// Segment ends when `end_altitude` is reached.
    AltitudeReached,
}

/// Duration of the constant-power takeoff pseudo-segment, s.
pub const TAKEOFF_DURATION: f64 = 60.0;

/// One mission segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// m.
    pub start_altitude: f64,
    /// m.
    pub end_altitude: f64,
    /// Absent only for takeoff, which needs no schedule of its own.
    pub speed: Option<SpeedSchedule>,
    pub terminator: Terminator,
    /// Operation split this segment flies under.
    pub operation_id: String,
    /// Magnitude of the climb or descent rate, m/s; sign comes from the kind.
    pub rate_of_climb: Option<f64>,
}

/// Ordered design segments plus reserve segments flown afterwards. Reserve
/// fuel and energy are carried at sizing but reserve distance does not count
/// toward the design range.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionProfile {
    pub name: String,
    pub segments: Vec<Segment>,
    pub reserve_segments: Vec<Segment>,
}

impl MissionProfile {
    /// Design and reserve segments in flight order.
    pub fn all_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().chain(self.reserve_segments.iter())
    }
}

/// One broken mission-profile invariant. Violations are data, not faults.
#[derive(Debug, Clone, PartialEq)]
pub enum MissionViolation {
    EmptyProfile,
    FirstSegmentNotAtSeaLevel {
        altitude: f64,
    },
    /// Altitude jump between segment `boundary - 1` and segment `boundary`
    /// (indices over the design+reserve concatenation).
    AltitudeDiscontinuity {
        boundary: usize,
        previous_end: f64,
        next_start: f64,
    },
    NoCruiseSegment,
    LevelSegmentChangesAltitude {
        segment: usize,
    },
    ClimbDoesNotAscend {
        segment: usize,
    },
    DescentDoesNotDescend {
        segment: usize,
    },
    WrongTerminator {
        segment: usize,
        kind: SegmentKind,
        expected: &'static str,
    },
    MissingRateOfClimb {
        segment: usize,
    },
    NonPositiveRateOfClimb {
        segment: usize,
        value: f64,
    },
    MissingSpeedSchedule {
        segment: usize,
    },
    NonPositiveSpeed {
        segment: usize,
    },
    NonPositiveTerminator {
        segment: usize,
        value: f64,
    },
    NegativeAltitude {
        segment: usize,
        value: f64,
    },
}

impl fmt::Display for MissionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MissionViolation::EmptyProfile => write!(f, "mission has no segments"),
            MissionViolation::FirstSegmentNotAtSeaLevel { altitude } => {
                write!(f, "first segment must start at altitude 0, starts at {altitude} m")
            }
            MissionViolation::AltitudeDiscontinuity {
                boundary,
                previous_end,
                next_start,
            } => write!(
                f,
                "altitude discontinuity at boundary {boundary}: {previous_end} m -> {next_start} m"
            ),
            MissionViolation::NoCruiseSegment => write!(f, "missing cruise segment"),
            MissionViolation::LevelSegmentChangesAltitude { segment } => {
                write!(f, "segment {segment}: cruise/loiter must hold altitude")
            }
            MissionViolation::ClimbDoesNotAscend { segment } => {
                write!(f, "segment {segment}: climb must end above its start altitude")
            }
            MissionViolation::DescentDoesNotDescend { segment } => {
                write!(f, "segment {segment}: descent must end below its start altitude")
            }
            MissionViolation::WrongTerminator {
                segment,
                kind,
                expected,
            } => write!(
                f,
                "segment {segment}: {} segments must terminate on {expected}",
                kind.label()
            ),
            MissionViolation::MissingRateOfClimb { segment } => {
                write!(f, "segment {segment}: climb/descent needs rate_of_climb")
            }
            MissionViolation::NonPositiveRateOfClimb { segment, value } => write!(
                f,
                "segment {segment}: rate_of_climb magnitude must be positive, got {value}"
            ),
            MissionViolation::MissingSpeedSchedule { segment } => {
                write!(f, "segment {segment}: needs a speed schedule")
            }
            MissionViolation::NonPositiveSpeed { segment } => {
                write!(f, "segment {segment}: speed schedule must be positive")
            }
            MissionViolation::NonPositiveTerminator { segment, value } => {
                write!(f, "segment {segment}: terminator value must be positive, got {value}")
            }
            MissionViolation::NegativeAltitude { segment, value } => {
                write!(f, "segment {segment}: negative altitude {value} m")
            }
        }
    }
}

/// Collect every invariant violation in `profile`; an empty list means valid.
pub fn validate_mission(profile: &MissionProfile) -> Vec<MissionViolation> {
    let mut violations = Vec::new();
    let segments: Vec<&Segment> = profile.all_segments().collect();

    if segments.is_empty() {
        violations.push(MissionViolation::EmptyProfile);
        return violations;
    }

    if segments[0].start_altitude != 0.0 {
        violations.push(MissionViolation::FirstSegmentNotAtSeaLevel {
            altitude: segments[0].start_altitude,
        });
    }

    if !profile
        .segments
        .iter()
        .any(|segment| segment.kind == SegmentKind::Cruise)
    {
        violations.push(MissionViolation::NoCruiseSegment);
    }

    for (index, segment) in segments.iter().enumerate() {
        for altitude in [segment.start_altitude, segment.end_altitude] {
            if altitude < 0.0 {
                violations.push(MissionViolation::NegativeAltitude {
                    segment: index,
                    value: altitude,
                });
            }
        }

        match segment.kind {
            SegmentKind::Cruise | SegmentKind::Loiter | SegmentKind::Takeoff => {
                if segment.start_altitude != segment.end_altitude {
                    violations.push(MissionViolation::LevelSegmentChangesAltitude {
                        segment: index,
                    });
                }
            }
            SegmentKind::Climb => {
                if segment.end_altitude <= segment.start_altitude {
                    violations.push(MissionViolation::ClimbDoesNotAscend { segment: index });
                }
            }
            SegmentKind::Descent => {
                if segment.end_altitude >= segment.start_altitude {
                    violations.push(MissionViolation::DescentDoesNotDescend { segment: index });
                }
            }
        }

        match (segment.kind, segment.terminator) {
            (SegmentKind::Climb | SegmentKind::Descent, Terminator::AltitudeReached) => {
                match segment.rate_of_climb {
                    None => violations.push(MissionViolation::MissingRateOfClimb { segment: index }),
                    Some(rate) if rate <= 0.0 => {
                        violations.push(MissionViolation::NonPositiveRateOfClimb {
                            segment: index,
                            value: rate,
                        })
                    }
                    Some(_) => {}
                }
            }
            (SegmentKind::Climb | SegmentKind::Descent, _) => {
                violations.push(MissionViolation::WrongTerminator {
                    segment: index,
                    kind: segment.kind,
                    expected: "altitude_reached",
                });
            }
            (SegmentKind::Cruise, Terminator::Distance(value)) => {
                if value <= 0.0 {
                    violations.push(MissionViolation::NonPositiveTerminator {
                        segment: index,
                        value,
                    });
                }
            }
            (SegmentKind::Cruise, _) => violations.push(MissionViolation::WrongTerminator {
                segment: index,
                kind: segment.kind,
                expected: "distance",
            }),
            (SegmentKind::Loiter | SegmentKind::Takeoff, Terminator::Duration(value)) => {
                if value <= 0.0 {
                    violations.push(MissionViolation::NonPositiveTerminator {
                        segment: index,
                        value,
                    });
                }
            }
            (SegmentKind::Loiter | SegmentKind::Takeoff, _) => {
                violations.push(MissionViolation::WrongTerminator {
                    segment: index,
                    kind: segment.kind,
                    expected: "duration",
                });
            }
        }

        if segment.kind != SegmentKind::Takeoff {
            match segment.speed {
                None => violations.push(MissionViolation::MissingSpeedSchedule { segment: index }),
                Some(
                    SpeedSchedule::ConstantTas(value)
                    | SpeedSchedule::ConstantEas(value)
                    | SpeedSchedule::ConstantMach(value),
                ) if value <= 0.0 => {
                    violations.push(MissionViolation::NonPositiveSpeed { segment: index })
                }
                Some(_) => {}
            }
        }
    }

    for boundary in 1..segments.len() {
        let previous_end = segments[boundary - 1].end_altitude;
        let next_start = segments[boundary].start_altitude;
        if (previous_end - next_start).abs() > 1e-9 {
            violations.push(MissionViolation::AltitudeDiscontinuity {
                boundary,
                previous_end,
                next_start,
            });
        }
    }

    violations
}

/// Render a violation list as one line per violation, for diagnostics.
pub fn describe_violations(violations: &[MissionViolation]) -> String {
    let mut out = String::new();
    for violation in violations {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("{violation}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cruise(start: f64, end: f64) -> Segment {
        Segment {
            kind: SegmentKind::Cruise,
            start_altitude: start,
            end_altitude: end,
            speed: Some(SpeedSchedule::ConstantTas(120.0)),
            terminator: Terminator::Distance(100_000.0),
            operation_id: "cruise".to_owned(),
            rate_of_climb: None,
        }
    }

    fn climb(start: f64, end: f64) -> Segment {
        Segment {
            kind: SegmentKind::Climb,
            start_altitude: start,
            end_altitude: end,
            speed: Some(SpeedSchedule::ConstantEas(80.0)),
            terminator: Terminator::AltitudeReached,
            operation_id: "climb".to_owned(),
            rate_of_climb: Some(6.0),
        }
    }

    fn profile(segments: Vec<Segment>) -> MissionProfile {
        MissionProfile {
            name: "test".to_owned(),
            segments,
            reserve_segments: vec![],
        }
    }

    #[test]
    fn continuous_climb_cruise_is_valid() {
        let violations = validate_mission(&profile(vec![
            climb(0.0, 10_668.0),
            cruise(10_668.0, 10_668.0),
        ]));
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn altitude_discontinuity_reports_boundary_index() {
        let violations = validate_mission(&profile(vec![
            climb(0.0, 10_000.0),
            cruise(11_000.0, 11_000.0),
        ]));
        assert!(violations.iter().any(|violation| matches!(
            violation,
            MissionViolation::AltitudeDiscontinuity { boundary: 1, .. }
        )));
    }

    #[test]
    fn missing_cruise_is_reported() {
        let violations = validate_mission(&profile(vec![climb(0.0, 5_000.0)]));
        assert!(violations.contains(&MissionViolation::NoCruiseSegment));
    }

    #[test]
    fn first_segment_must_start_at_sea_level() {
        let violations = validate_mission(&profile(vec![cruise(1_000.0, 1_000.0)]));
        assert!(violations
            .iter()
            .any(|violation| matches!(violation, MissionViolation::FirstSegmentNotAtSeaLevel { .. })));
    }

    #[test]
    fn climb_needs_rate_of_climb() {
        let mut segment = climb(0.0, 5_000.0);
        segment.rate_of_climb = None;
        let violations = validate_mission(&profile(vec![segment, cruise(5_000.0, 5_000.0)]));
        assert!(violations
            .iter()
            .any(|violation| matches!(violation, MissionViolation::MissingRateOfClimb { segment: 0 })));
    }

    #[test]
    fn reserve_segments_participate_in_continuity() {
        let mut mission = profile(vec![climb(0.0, 5_000.0), cruise(5_000.0, 5_000.0)]);
        mission.reserve_segments = vec![Segment {
            kind: SegmentKind::Loiter,
            start_altitude: 450.0,
            end_altitude: 450.0,
            speed: Some(SpeedSchedule::ConstantEas(66.0)),
            terminator: Terminator::Duration(2_700.0),
            operation_id: "loiter".to_owned(),
            rate_of_climb: None,
        }];
        let violations = validate_mission(&mission);
        assert!(violations.iter().any(|violation| matches!(
            violation,
            MissionViolation::AltitudeDiscontinuity { boundary: 2, .. }
        )));
    }

    #[test]
    fn spec_validation_catches_bad_oswald() {
        let spec = AircraftSpec {
            name: "t".to_owned(),
            payload_mass: 1000.0,
            crew_mass: 0.0,
            design_range: 1.0e6,
            rating: InstalledRating::PowerToWeight(20.0),
            wing_loading: 3000.0,
            aspect_ratio: 10.0,
            oswald_efficiency: Some(1.2),
            cd0: 0.02,
            empty_weight_fraction: Some(0.55),
            max_lift_coefficient: 2.0,
            architecture_id: "a".to_owned(),
            energy_sources: vec![],
        };
        assert!(matches!(
            spec.validate(),
            Err(SpecViolation::OutOfUnitInterval {
                field: "oswald_efficiency",
                ..
            })
        ));
    }

    #[test]
    fn battery_source_requires_battery_params() {
        let spec = AircraftSpec {
            name: "t".to_owned(),
            payload_mass: 1000.0,
            crew_mass: 0.0,
            design_range: 1.0e6,
            rating: InstalledRating::PowerToWeight(20.0),
            wing_loading: 3000.0,
            aspect_ratio: 10.0,
            oswald_efficiency: Some(0.8),
            cd0: 0.02,
            empty_weight_fraction: Some(0.55),
            max_lift_coefficient: 2.0,
            architecture_id: "a".to_owned(),
            energy_sources: vec![EnergySourceSpec {
                id: "pack".to_owned(),
                kind: EnergyKind::Battery,
                specific_energy: 9.0e5,
                battery: None,
            }],
        };
        assert!(matches!(
            spec.validate(),
            Err(SpecViolation::BatteryParamsMissing { .. })
        ));
    }
}
