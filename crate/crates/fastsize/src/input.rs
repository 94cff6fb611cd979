//! TOML input documents: aircraft, mission, architecture, and geometry
//! template, each versioned with a required `schema_version = 1` key.
//!
//! Unknown keys are hard errors. All quantities are normalized to SI at
//! parse time; serializing always emits the normalized form, so
//! parse -> serialize -> parse is a fixed point.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use fastsize_core::geometry::{GeometryTemplate, PlacementRule};
use fastsize_core::model::{
    AircraftSpec, BatteryParams, EnergyKind, EnergySourceSpec, InstalledRating, MissionProfile,
    Segment, SegmentKind, SpeedSchedule, Terminator, TAKEOFF_DURATION,
};
use fastsize_core::powertrain::{
    build_architecture, Component, ComponentKind, PropArchitecture, SinkKind, TransmitterKind,
};

use crate::quantity::{
    DurationQty, LengthQty, MassQty, SpecificEnergyQty, SpecificPowerQty, SpeedQty,
    WingLoadingQty,
};

/// The one schema version this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    Version { path: String, found: u32 },
    #[error("exactly one of thrust_to_weight and power_to_weight must be set")]
    ExactlyOneRating,
    #[error("unknown energy source kind '{kind}' (expected jet_fuel, hydrogen, or battery)")]
    UnknownSourceKind { kind: String },
    #[error("unknown component kind '{kind}'")]
    UnknownComponentKind { kind: String },
    #[error("unknown segment kind '{kind}'")]
    UnknownSegmentKind { kind: String },
    #[error("segment {index}: {message}")]
    Segment { index: usize, message: String },
    #[error("{0}")]
    Constraint(String),
    #[error("unknown placement rule '{rule}' (expected wing_podded or aft_fuselage)")]
    UnknownPlacementRule { rule: String },
}

fn read_to_string(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_toml<T: serde::de::DeserializeOwned>(text: &str, path: &str) -> Result<T, InputError> {
    toml::from_str(text).map_err(|error| InputError::Parse {
        path: path.to_string(),
        message: error.to_string(),
    })
}

fn check_version(found: u32, path: &str) -> Result<(), InputError> {
    if found != SCHEMA_VERSION {
        return Err(InputError::Version {
            path: path.to_string(),
            found,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Aircraft document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AircraftFile {
    pub schema_version: u32,
    pub aircraft: AircraftSection,
    #[serde(default)]
    pub energy_sources: Vec<EnergySourceSection>,
    /// Explicit loaded masses; used by off-design flight, ignored by sizing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masses: Option<MassesSection>,
    /// Echo written into sized output documents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizing: Option<SizingEcho>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AircraftSection {
    pub name: String,
    /// Must match the `name` of the architecture file supplied alongside.
    pub architecture: String,
    pub payload_mass: MassQty,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crew_mass: Option<MassQty>,
    pub design_range: LengthQty,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thrust_to_weight: Option<f64>,
    /// W per N of MTOW weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_to_weight: Option<f64>,
    pub wing_loading: WingLoadingQty,
    pub aspect_ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oswald_efficiency: Option<f64>,
    pub cd0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empty_weight_fraction: Option<f64>,
    pub max_lift_coefficient: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergySourceSection {
    pub id: String,
    /// jet_fuel, hydrogen, or battery.
    pub kind: String,
    pub specific_energy: SpecificEnergyQty,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub usable_depth_of_discharge: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_specific_power: Option<SpecificPowerQty>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassesSection {
    pub takeoff_mass: MassQty,
    /// m²; derived from wing loading at the takeoff mass when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wing_area: Option<f64>,
    /// Loaded consumable mass per source id, kg.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fuel: BTreeMap<String, MassQty>,
    /// Installed battery mass per source id, kg.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub battery: BTreeMap<String, MassQty>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizingEcho {
    pub mtow_kg: f64,
    pub payload_and_crew_kg: f64,
    pub airframe_mass_kg: f64,
    pub wing_area_m2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub installed_thrust_n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub installed_power_w: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub propulsion_masses_kg: BTreeMap<String, f64>,
    /// Sink component ids, for geometry generation.
    pub sinks: Vec<String>,
    pub iterations: u32,
    pub final_residual: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub iteration_log: Vec<IterationEcho>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IterationEcho {
    pub iteration: u32,
    pub mtow_kg: f64,
    pub residual: f64,
}

pub fn load_aircraft_file(path: &Path) -> Result<AircraftFile, InputError> {
    let text = read_to_string(path)?;
    let file: AircraftFile = parse_toml(&text, &path.display().to_string())?;
    check_version(file.schema_version, &path.display().to_string())?;
    Ok(file)
}

/// Convert the parsed document into the validated domain spec.
pub fn into_spec(file: &AircraftFile) -> Result<AircraftSpec, InputError> {
    let section = &file.aircraft;
    let rating = match (section.thrust_to_weight, section.power_to_weight) {
        (Some(thrust), None) => InstalledRating::ThrustToWeight(thrust),
        (None, Some(power)) => InstalledRating::PowerToWeight(power),
        _ => return Err(InputError::ExactlyOneRating),
    };

    let mut energy_sources = Vec::new();
    for source in &file.energy_sources {
        let kind = match source.kind.as_str() {
            "jet_fuel" => EnergyKind::JetFuel,
            "hydrogen" => EnergyKind::Hydrogen,
            "battery" => EnergyKind::Battery,
            other => {
                return Err(InputError::UnknownSourceKind {
                    kind: other.to_string(),
                })
            }
        };
        let battery = match (kind, source.usable_depth_of_discharge, source.max_specific_power) {
            (EnergyKind::Battery, Some(dod), Some(power)) => Some(BatteryParams {
                usable_depth_of_discharge: dod,
                max_specific_power: power.si(),
            }),
            (EnergyKind::Battery, _, _) => {
                return Err(InputError::Constraint(format!(
                    "battery source '{}' needs usable_depth_of_discharge and max_specific_power",
                    source.id
                )))
            }
            (_, None, None) => None,
            (_, _, _) => {
                return Err(InputError::Constraint(format!(
                    "source '{}' is not a battery but carries battery fields",
                    source.id
                )))
            }
        };
        energy_sources.push(EnergySourceSpec {
            id: source.id.clone(),
            kind,
            specific_energy: source.specific_energy.si(),
            battery,
        });
    }

    let spec = AircraftSpec {
        name: section.name.clone(),
        payload_mass: section.payload_mass.si(),
        crew_mass: section.crew_mass.map(MassQty::si).unwrap_or(0.0),
        design_range: section.design_range.si(),
        rating,
        wing_loading: section.wing_loading.si(),
        aspect_ratio: section.aspect_ratio,
        oswald_efficiency: section.oswald_efficiency,
        cd0: section.cd0,
        empty_weight_fraction: section.empty_weight_fraction,
        max_lift_coefficient: section.max_lift_coefficient,
        architecture_id: section.architecture.clone(),
        energy_sources,
    };
    spec.validate()
        .map_err(|violation| InputError::Constraint(violation.to_string()))?;
    Ok(spec)
}

/// Normalized document for a spec (used when echoing sized aircraft).
pub fn from_spec(spec: &AircraftSpec) -> AircraftFile {
    let (thrust_to_weight, power_to_weight) = match spec.rating {
        InstalledRating::ThrustToWeight(value) => (Some(value), None),
        InstalledRating::PowerToWeight(value) => (None, Some(value)),
    };
    AircraftFile {
        schema_version: SCHEMA_VERSION,
        aircraft: AircraftSection {
            name: spec.name.clone(),
            architecture: spec.architecture_id.clone(),
            payload_mass: MassQty(spec.payload_mass),
            crew_mass: Some(MassQty(spec.crew_mass)),
            design_range: LengthQty(spec.design_range),
            thrust_to_weight,
            power_to_weight,
            wing_loading: WingLoadingQty(spec.wing_loading),
            aspect_ratio: spec.aspect_ratio,
            oswald_efficiency: spec.oswald_efficiency,
            cd0: spec.cd0,
            empty_weight_fraction: spec.empty_weight_fraction,
            max_lift_coefficient: spec.max_lift_coefficient,
        },
        energy_sources: spec
            .energy_sources
            .iter()
            .map(|source| EnergySourceSection {
                id: source.id.clone(),
                kind: source.kind.label().to_string(),
                specific_energy: SpecificEnergyQty(source.specific_energy),
                usable_depth_of_discharge: source
                    .battery
                    .map(|params| params.usable_depth_of_discharge),
                max_specific_power: source
                    .battery
                    .map(|params| SpecificPowerQty(params.max_specific_power)),
            })
            .collect(),
        masses: None,
        sizing: None,
    }
}

// ---------------------------------------------------------------------------
// Mission document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub segments: Vec<SegmentSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reserve_segments: Vec<SegmentSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSection {
    /// takeoff, climb, cruise, descent, or loiter.
    pub kind: String,
    /// Shorthand setting both start and end for level segments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub altitude: Option<LengthQty>,
    /// Defaults to the previous segment's end altitude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_altitude: Option<LengthQty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_altitude: Option<LengthQty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed: Option<SpeedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<LengthQty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<DurationQty>,
    /// Magnitude; the segment kind provides the direction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_of_climb: Option<SpeedQty>,
    pub operation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeedSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tas: Option<SpeedQty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eas: Option<SpeedQty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mach: Option<f64>,
}

pub fn load_mission_file(path: &Path) -> Result<MissionFile, InputError> {
    let text = read_to_string(path)?;
    let file: MissionFile = parse_toml(&text, &path.display().to_string())?;
    check_version(file.schema_version, &path.display().to_string())?;
    Ok(file)
}

fn segment_kind(kind: &str) -> Result<SegmentKind, InputError> {
    Ok(match kind {
        "takeoff" => SegmentKind::Takeoff,
        "climb" => SegmentKind::Climb,
        "cruise" => SegmentKind::Cruise,
        "descent" => SegmentKind::Descent,
        "loiter" => SegmentKind::Loiter,
        other => {
            return Err(InputError::UnknownSegmentKind {
                kind: other.to_string(),
            })
        }
    })
}

fn speed_schedule(index: usize, section: &SpeedSection) -> Result<SpeedSchedule, InputError> {
    match (section.tas, section.eas, section.mach) {
        (Some(tas), None, None) => Ok(SpeedSchedule::ConstantTas(tas.si())),
        (None, Some(eas), None) => Ok(SpeedSchedule::ConstantEas(eas.si())),
        (None, None, Some(mach)) => Ok(SpeedSchedule::ConstantMach(mach)),
        _ => Err(InputError::Segment {
            index,
            message: "speed must set exactly one of tas, eas, mach".to_string(),
        }),
    }
}

fn convert_segments(
    sections: &[SegmentSection],
    index_offset: usize,
    current_altitude: &mut f64,
) -> Result<Vec<Segment>, InputError> {
    let mut segments = Vec::with_capacity(sections.len());
    for (offset, section) in sections.iter().enumerate() {
        let index = index_offset + offset;
        let kind = segment_kind(&section.kind)?;

        let start_altitude = section
            .start_altitude
            .or(section.altitude)
            .map(LengthQty::si)
            .unwrap_or(*current_altitude);
        let end_altitude = match (kind, section.end_altitude.or(section.altitude)) {
            (SegmentKind::Climb | SegmentKind::Descent, Some(end)) => end.si(),
            (SegmentKind::Climb | SegmentKind::Descent, None) => {
                return Err(InputError::Segment {
                    index,
                    message: "climb/descent needs end_altitude".to_string(),
                })
            }
            (_, Some(end)) => end.si(),
            (_, None) => start_altitude,
        };

        let terminator = match kind {
            SegmentKind::Takeoff => {
                if section.distance.is_some() {
                    return Err(InputError::Segment {
                        index,
                        message: "takeoff takes no distance terminator".to_string(),
                    });
                }
                Terminator::Duration(
                    section
                        .duration
                        .map(DurationQty::si)
                        .unwrap_or(TAKEOFF_DURATION),
                )
            }
            SegmentKind::Climb | SegmentKind::Descent => {
                if section.distance.is_some() || section.duration.is_some() {
                    return Err(InputError::Segment {
                        index,
                        message: "climb/descent terminate on altitude, not distance/duration"
                            .to_string(),
                    });
                }
                Terminator::AltitudeReached
            }
            SegmentKind::Cruise => Terminator::Distance(
                section
                    .distance
                    .ok_or_else(|| InputError::Segment {
                        index,
                        message: "cruise needs a distance".to_string(),
                    })?
                    .si(),
            ),
            SegmentKind::Loiter => Terminator::Duration(
                section
                    .duration
                    .ok_or_else(|| InputError::Segment {
                        index,
                        message: "loiter needs a duration".to_string(),
                    })?
                    .si(),
            ),
        };

        let speed = match &section.speed {
            Some(section) => Some(speed_schedule(index, section)?),
            None => None,
        };

        segments.push(Segment {
            kind,
            start_altitude,
            end_altitude,
            speed,
            terminator,
            operation_id: section.operation.clone(),
            rate_of_climb: section.rate_of_climb.map(SpeedQty::si),
        });
        *current_altitude = end_altitude;
    }
    Ok(segments)
}

/// Convert the parsed document into a mission profile. Structural problems
/// (missing terminators) error here; semantic violations are left to
/// `validate_mission` so they come back with segment indices.
pub fn into_profile(file: &MissionFile) -> Result<MissionProfile, InputError> {
    let mut altitude = 0.0;
    let segments = convert_segments(&file.segments, 0, &mut altitude)?;
    let reserve_segments =
        convert_segments(&file.reserve_segments, file.segments.len(), &mut altitude)?;
    Ok(MissionProfile {
        name: file.name.clone().unwrap_or_else(|| "mission".to_string()),
        segments,
        reserve_segments,
    })
}

/// Normalized document for a profile.
pub fn from_profile(profile: &MissionProfile) -> MissionFile {
    fn section(segment: &Segment) -> SegmentSection {
        let (distance, duration) = match segment.terminator {
            Terminator::Distance(value) => (Some(LengthQty(value)), None),
            Terminator::Duration(value) => (None, Some(DurationQty(value))),
            Terminator::AltitudeReached => (None, None),
        };
        SegmentSection {
            kind: segment.kind.label().to_string(),
            altitude: None,
            start_altitude: Some(LengthQty(segment.start_altitude)),
            end_altitude: Some(LengthQty(segment.end_altitude)),
            speed: segment.speed.map(|schedule| match schedule {
                SpeedSchedule::ConstantTas(value) => SpeedSection {
                    tas: Some(SpeedQty(value)),
                    eas: None,
                    mach: None,
                },
                SpeedSchedule::ConstantEas(value) => SpeedSection {
                    tas: None,
                    eas: Some(SpeedQty(value)),
                    mach: None,
                },
                SpeedSchedule::ConstantMach(value) => SpeedSection {
                    tas: None,
                    eas: None,
                    mach: Some(value),
                },
            }),
            distance,
            duration,
            rate_of_climb: segment.rate_of_climb.map(SpeedQty),
            operation: segment.operation_id.clone(),
        }
    }
    MissionFile {
        schema_version: SCHEMA_VERSION,
        name: Some(profile.name.clone()),
        segments: profile.segments.iter().map(section).collect(),
        reserve_segments: profile.reserve_segments.iter().map(section).collect(),
    }
}

// ---------------------------------------------------------------------------
// Architecture document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchitectureFile {
    pub schema_version: u32,
    pub name: String,
    pub components: Vec<ComponentSection>,
    pub edges: Vec<(String, String)>,
    /// operation id -> downstream component -> upstream component -> fraction.
    pub operations: BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSection {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub efficiency: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specific_power: Option<SpecificPowerQty>,
}

pub fn load_architecture_file(path: &Path) -> Result<ArchitectureFile, InputError> {
    let text = read_to_string(path)?;
    let file: ArchitectureFile = parse_toml(&text, &path.display().to_string())?;
    check_version(file.schema_version, &path.display().to_string())?;
    Ok(file)
}

fn component_kind(kind: &str) -> Result<ComponentKind, InputError> {
    Ok(match kind {
        "jet_fuel" => ComponentKind::Source(EnergyKind::JetFuel),
        "hydrogen" => ComponentKind::Source(EnergyKind::Hydrogen),
        "battery" => ComponentKind::Source(EnergyKind::Battery),
        "gas_turbine" => ComponentKind::Transmitter(TransmitterKind::GasTurbine),
        "electric_motor" => ComponentKind::Transmitter(TransmitterKind::ElectricMotor),
        "generator" => ComponentKind::Transmitter(TransmitterKind::Generator),
        "gearbox" => ComponentKind::Transmitter(TransmitterKind::Gearbox),
        "electrical_bus" => ComponentKind::Transmitter(TransmitterKind::ElectricalBus),
        "fuel_cell" => ComponentKind::Transmitter(TransmitterKind::FuelCell),
        "propeller" => ComponentKind::Sink(SinkKind::Propeller),
        "fan" => ComponentKind::Sink(SinkKind::Fan),
        other => {
            return Err(InputError::UnknownComponentKind {
                kind: other.to_string(),
            })
        }
    })
}

/// Build and validate the architecture graph from the parsed document.
pub fn into_architecture(file: &ArchitectureFile) -> Result<PropArchitecture, InputError> {
    let mut components = Vec::with_capacity(file.components.len());
    for section in &file.components {
        components.push(Component {
            id: section.id.clone(),
            kind: component_kind(&section.kind)?,
            efficiency: section.efficiency,
            specific_power: section.specific_power.map(SpecificPowerQty::si),
        });
    }
    build_architecture(&file.name, components, &file.edges, &file.operations)
        .map_err(|error| InputError::Constraint(error.to_string()))
}

// ---------------------------------------------------------------------------
// Geometry template document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateFile {
    pub schema_version: u32,
    pub template: TemplateSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateSection {
    pub fuselage_fineness: f64,
    pub wing_taper: f64,
    pub wing_sweep_deg: f64,
    pub horizontal_tail_volume: f64,
    pub vertical_tail_volume: f64,
    pub placement: PlacementSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementSection {
    /// wing_podded or aft_fuselage.
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stations: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centerline: Option<bool>,
}

pub fn load_template_file(path: &Path) -> Result<TemplateFile, InputError> {
    let text = read_to_string(path)?;
    let file: TemplateFile = parse_toml(&text, &path.display().to_string())?;
    check_version(file.schema_version, &path.display().to_string())?;
    Ok(file)
}

pub fn parse_template_str(text: &str, label: &str) -> Result<TemplateFile, InputError> {
    let file: TemplateFile = parse_toml(text, label)?;
    check_version(file.schema_version, label)?;
    Ok(file)
}

pub fn into_template(file: &TemplateFile) -> Result<GeometryTemplate, InputError> {
    let section = &file.template;
    let placement = match section.placement.rule.as_str() {
        "wing_podded" => PlacementRule::WingPodded {
            stations: section.placement.stations.clone().unwrap_or_default(),
            centerline: section.placement.centerline.unwrap_or(false),
        },
        "aft_fuselage" => PlacementRule::AftFuselage,
        other => {
            return Err(InputError::UnknownPlacementRule {
                rule: other.to_string(),
            })
        }
    };
    Ok(GeometryTemplate {
        fuselage_fineness: section.fuselage_fineness,
        wing_taper: section.wing_taper,
        wing_sweep_deg: section.wing_sweep_deg,
        horizontal_tail_volume: section.horizontal_tail_volume,
        vertical_tail_volume: section.vertical_tail_volume,
        placement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const AIRCRAFT_DOC: &str = r#"
schema_version = 1

[aircraft]
name = "demo"
architecture = "chain"
payload_mass = "5000 kg"
design_range = "1000 km"
power_to_weight = 20.0
wing_loading = "5000 N/m2"
aspect_ratio = 11.0
oswald_efficiency = 0.8
cd0 = 0.025
max_lift_coefficient = 2.2

[[energy_sources]]
id = "kerosene"
kind = "jet_fuel"
specific_energy = "43 MJ/kg"
"#;

    #[test]
    fn aircraft_document_round_trips_through_normalized_form() {
        let file: AircraftFile = toml::from_str(AIRCRAFT_DOC).unwrap();
        let spec = into_spec(&file).unwrap();
        assert_eq!(spec.design_range, 1.0e6);
        assert_eq!(spec.wing_loading, 5000.0);
        assert_eq!(spec.crew_mass, 0.0);
        assert_eq!(spec.energy_sources[0].specific_energy, 4.3e7);

        let normalized = toml::to_string(&from_spec(&spec)).unwrap();
        let reparsed: AircraftFile = toml::from_str(&normalized).unwrap();
        let spec_again = into_spec(&reparsed).unwrap();
        assert_eq!(spec, spec_again);
    }

    #[test]
    fn both_ratings_set_is_rejected() {
        let doc = AIRCRAFT_DOC.replace(
            "power_to_weight = 20.0",
            "power_to_weight = 20.0\nthrust_to_weight = 0.3",
        );
        let file: AircraftFile = toml::from_str(&doc).unwrap();
        let error = into_spec(&file).unwrap_err();
        assert!(error.to_string().contains("exactly one of"), "{error}");
    }

    #[test]
    fn unknown_keys_are_hard_errors() {
        let doc = AIRCRAFT_DOC.replace("cd0 = 0.025", "cd0 = 0.025\nwing_span = 30.0");
        let result: Result<AircraftFile, _> = toml::from_str(&doc);
        let message = result.unwrap_err().to_string();
        assert!(message.contains("wing_span"), "{message}");
    }

    #[test]
    fn mission_altitudes_chain_across_segments() {
        let doc = r#"
schema_version = 1

[[segments]]
kind = "takeoff"
operation = "takeoff"

[[segments]]
kind = "climb"
end_altitude = "5000 m"
speed = { eas = "90 m/s" }
rate_of_climb = "7 m/s"
operation = "climb"

[[segments]]
kind = "cruise"
speed = { tas = "140 m/s" }
distance = "600 km"
operation = "cruise"
"#;
        let file: MissionFile = toml::from_str(doc).unwrap();
        let profile = into_profile(&file).unwrap();
        assert_eq!(profile.segments[1].start_altitude, 0.0);
        assert_eq!(profile.segments[1].end_altitude, 5000.0);
        assert_eq!(profile.segments[2].start_altitude, 5000.0);
        assert_eq!(profile.segments[2].end_altitude, 5000.0);
        assert!(fastsize_core::model::validate_mission(&profile).is_empty());

        let normalized = toml::to_string(&from_profile(&profile)).unwrap();
        let reparsed: MissionFile = toml::from_str(&normalized).unwrap();
        assert_eq!(into_profile(&reparsed).unwrap(), profile);
    }

    #[test]
    fn architecture_document_builds_a_graph() {
        let doc = r#"
schema_version = 1
name = "chain"

[[components]]
id = "kerosene"
kind = "jet_fuel"

[[components]]
id = "turbine"
kind = "gas_turbine"
efficiency = 0.35
specific_power = "3 kW/kg"

[[components]]
id = "prop"
kind = "propeller"
efficiency = 0.85
specific_power = "8 kW/kg"

edges = [["kerosene", "turbine"], ["turbine", "prop"]]

[operations.all]
turbine = { kerosene = 1.0 }
prop = { turbine = 1.0 }
"#;
        let file: ArchitectureFile = toml::from_str(doc).unwrap();
        let arch = into_architecture(&file).unwrap();
        assert_eq!(arch.components().len(), 3);
        let turbine = arch.component_index("turbine").unwrap();
        assert_eq!(arch.component(turbine).specific_power, Some(3000.0));
    }

    #[test]
    fn schema_version_is_required_to_match() {
        let doc = AIRCRAFT_DOC.replace("schema_version = 1", "schema_version = 2");
        let file: AircraftFile = toml::from_str(&doc).unwrap();
        assert!(check_version(file.schema_version, "test").is_err());
    }
}
