//! Parametric wireframe of the sized aircraft: fuselage, wing, tails, and
//! one propulsor marker per sink component.
//!
//! Frame: x aft from the nose, y to starboard, z up. Everything is symmetric
//! about the x-z plane except the vertical tail, which lies in it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Fuselage length from MTOW class: L = 0.556 · mtow^0.383, calibrated to
/// transport silhouettes from light singles up to widebodies.
const FUSELAGE_LENGTH_COEFF: f64 = 0.556;
const FUSELAGE_LENGTH_EXP: f64 = 0.383;
/// Nose and tail cone fractions of fuselage length.
const NOSE_FRACTION: f64 = 0.15;
const TAIL_FRACTION: f64 = 0.25;
/// Tail moment arm as a fraction of fuselage length.
const TAIL_ARM_FRACTION: f64 = 0.45;
/// Fixed tail planform shapes.
const HTAIL_ASPECT: f64 = 4.5;
const HTAIL_TAPER: f64 = 0.5;
const VTAIL_ASPECT: f64 = 1.6;
const VTAIL_TAPER: f64 = 0.55;
/// Ring/circle tessellation.
const CIRCLE_POINTS: usize = 24;

/// How propulsors attach to the airframe.
#[derive(Debug, Clone, PartialEq)]
pub enum PlacementRule {
    /// Podded under the wing at the given spanwise stations (fractions of
    /// semispan, one per pod pair, outboard of the fuselage). An odd sink
    /// count needs `centerline` for the unpaired unit.
    WingPodded {
        stations: Vec<f64>,
        centerline: bool,
    },
    /// Paired on the aft fuselage sides; an odd unit rides the spine.
    AftFuselage,
}

/// Shape parameters independent of the sized weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryTemplate {
    /// Fuselage length over diameter, > 1.
    pub fuselage_fineness: f64,
    /// Tip chord over root chord, in (0, 1].
    pub wing_taper: f64,
    /// Leading-edge sweep, degrees.
    pub wing_sweep_deg: f64,
    /// Horizontal tail volume coefficient.
    pub horizontal_tail_volume: f64,
    /// Vertical tail volume coefficient.
    pub vertical_tail_volume: f64,
    pub placement: PlacementRule,
}

impl Default for GeometryTemplate {
    fn default() -> GeometryTemplate {
        GeometryTemplate {
            fuselage_fineness: 8.0,
            wing_taper: 0.5,
            wing_sweep_deg: 5.0,
            horizontal_tail_volume: 0.9,
            vertical_tail_volume: 0.08,
            placement: PlacementRule::WingPodded {
                stations: vec![0.35],
                centerline: false,
            },
        }
    }
}

/// Sized quantities the wireframe needs.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryInputs {
    /// kg.
    pub mtow: f64,
    /// m².
    pub wing_area: f64,
    pub aspect_ratio: f64,
    /// Sink component ids, one propulsor marker each.
    pub sink_ids: Vec<String>,
}

/// A named group of 3-D polylines, meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub name: String,
    pub polylines: Vec<Vec<[f64; 3]>>,
}

/// The assembled wireframe.
#[derive(Debug, Clone, PartialEq)]
pub struct Wireframe {
    pub parts: Vec<Part>,
    /// m.
    pub wing_span: f64,
    /// m.
    pub fuselage_length: f64,
}

impl Wireframe {
    pub fn points(&self) -> impl Iterator<Item = &[f64; 3]> {
        self.parts
            .iter()
            .flat_map(|part| part.polylines.iter())
            .flatten()
    }

    /// Axis-aligned bounds as (min, max) corners.
    pub fn bounds(&self) -> ([f64; 3], [f64; 3]) {
        let mut low = [f64::INFINITY; 3];
        let mut high = [f64::NEG_INFINITY; 3];
        for point in self.points() {
            for axis in 0..3 {
                low[axis] = low[axis].min(point[axis]);
                high[axis] = high[axis].max(point[axis]);
            }
        }
        (low, high)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    NonPositive { field: &'static str, value: f64 },
    TaperOutOfRange { value: f64 },
    FinenessTooSmall { value: f64 },
    OddPodCountNeedsCenterline { sinks: usize },
    StationCountMismatch { expected: usize, actual: usize },
    StationOutOfRange { value: f64 },
    NoSinks,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::NonPositive { field, value } => {
                write!(f, "{field} must be positive, got {value}")
            }
            GeometryError::TaperOutOfRange { value } => {
                write!(f, "wing taper must lie in (0, 1], got {value}")
            }
            GeometryError::FinenessTooSmall { value } => {
                write!(f, "fuselage fineness must exceed 1, got {value}")
            }
            GeometryError::OddPodCountNeedsCenterline { sinks } => write!(
                f,
                "{sinks} podded propulsors cannot be placed symmetrically without a centerline slot"
            ),
            GeometryError::StationCountMismatch { expected, actual } => write!(
                f,
                "wing placement needs {expected} spanwise stations, got {actual}"
            ),
            GeometryError::StationOutOfRange { value } => {
                write!(f, "spanwise station must lie in (0, 1], got {value}")
            }
            GeometryError::NoSinks => write!(f, "architecture has no propulsor to place"),
        }
    }
}

impl core::error::Error for GeometryError {}

fn circle(center: [f64; 3], radius: f64, axis: usize) -> Vec<[f64; 3]> {
    let mut points = Vec::with_capacity(CIRCLE_POINTS + 1);
    for step in 0..=CIRCLE_POINTS {
        let angle = core::f64::consts::TAU * step as f64 / CIRCLE_POINTS as f64;
        let (sin, cos) = (libm::sin(angle), libm::cos(angle));
        let mut point = center;
        match axis {
            // circle in the y-z plane (fuselage ring)
            0 => {
                point[1] += radius * cos;
                point[2] += radius * sin;
            }
            // circle in the x-z plane
            1 => {
                point[0] += radius * cos;
                point[2] += radius * sin;
            }
            // circle in the x-y plane
            _ => {
                point[0] += radius * cos;
                point[1] += radius * sin;
            }
        }
        points.push(point);
    }
    points
}

fn validate(inputs: &GeometryInputs, template: &GeometryTemplate) -> Result<(), GeometryError> {
    fn positive(value: f64, field: &'static str) -> Result<(), GeometryError> {
        if value > 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(GeometryError::NonPositive { field, value })
        }
    }
    positive(inputs.mtow, "mtow")?;
    positive(inputs.wing_area, "wing_area")?;
    positive(inputs.aspect_ratio, "aspect_ratio")?;
    positive(template.horizontal_tail_volume, "horizontal_tail_volume")?;
    positive(template.vertical_tail_volume, "vertical_tail_volume")?;
    if !(template.wing_taper > 0.0 && template.wing_taper <= 1.0) {
        return Err(GeometryError::TaperOutOfRange {
            value: template.wing_taper,
        });
    }
    if !(template.fuselage_fineness > 1.0) {
        return Err(GeometryError::FinenessTooSmall {
            value: template.fuselage_fineness,
        });
    }
    if inputs.sink_ids.is_empty() {
        return Err(GeometryError::NoSinks);
    }
    Ok(())
}

/// Generate the wireframe for a converged aircraft.
pub fn generate_geometry(
    inputs: &GeometryInputs,
    template: &GeometryTemplate,
) -> Result<Wireframe, GeometryError> {
    validate(inputs, template)?;

    let span = libm::sqrt(inputs.aspect_ratio * inputs.wing_area);
    let taper = template.wing_taper;
    let root_chord = 2.0 * inputs.wing_area / (span * (1.0 + taper));
    let tip_chord = taper * root_chord;
    let mean_chord =
        (2.0 / 3.0) * root_chord * (1.0 + taper + taper * taper) / (1.0 + taper);
    let sweep_tan = libm::tan(template.wing_sweep_deg * core::f64::consts::PI / 180.0);

    let length = FUSELAGE_LENGTH_COEFF * libm::pow(inputs.mtow, FUSELAGE_LENGTH_EXP);
    let diameter = length / template.fuselage_fineness;
    let radius = 0.5 * diameter;

    let mut parts = Vec::new();

    // Fuselage: nose cone, straight barrel, tail cone, four longitudinal
    // profile lines plus three rings.
    let nose_end = NOSE_FRACTION * length;
    let tail_start = (1.0 - TAIL_FRACTION) * length;
    let mut fuselage = Vec::new();
    for (dy, dz) in [(0.0, 1.0), (0.0, -1.0), (1.0, 0.0), (-1.0, 0.0)] {
        fuselage.push(vec![
            [0.0, 0.0, 0.0],
            [nose_end, dy * radius, dz * radius],
            [tail_start, dy * radius, dz * radius],
            [length, 0.0, 0.0],
        ]);
    }
    for station in [nose_end, 0.5 * (nose_end + tail_start), tail_start] {
        fuselage.push(circle([station, 0.0, 0.0], radius, 0));
    }
    parts.push(Part {
        name: "fuselage".to_string(),
        polylines: fuselage,
    });

    // Wing planform at a low-wing height, apex placed so the root
    // quarter-chord sits at 42% of the fuselage.
    let wing_z = -0.3 * radius;
    let wing_apex = 0.42 * length - 0.25 * root_chord;
    let half_span = 0.5 * span;
    let tip_le = wing_apex + half_span * sweep_tan;
    let mut wing = Vec::new();
    for side in [1.0, -1.0] {
        wing.push(vec![
            [wing_apex, 0.0, wing_z],
            [tip_le, side * half_span, wing_z],
            [tip_le + tip_chord, side * half_span, wing_z],
            [wing_apex + root_chord, 0.0, wing_z],
            [wing_apex, 0.0, wing_z],
        ]);
    }
    parts.push(Part {
        name: "wing".to_string(),
        polylines: wing,
    });

    // Tails by the volume-coefficient method with a fixed arm fraction.
    let tail_arm = TAIL_ARM_FRACTION * length;
    let htail_area = template.horizontal_tail_volume * inputs.wing_area * mean_chord / tail_arm;
    let htail_span = libm::sqrt(HTAIL_ASPECT * htail_area);
    let htail_root = 2.0 * htail_area / (htail_span * (1.0 + HTAIL_TAPER));
    let htail_tip = HTAIL_TAPER * htail_root;
    let htail_apex = length - 1.15 * htail_root;
    let htail_sweep = libm::tan(15.0 * core::f64::consts::PI / 180.0);
    let mut htail = Vec::new();
    for side in [1.0, -1.0] {
        let half = 0.5 * htail_span;
        htail.push(vec![
            [htail_apex, 0.0, 0.0],
            [htail_apex + half * htail_sweep, side * half, 0.0],
            [htail_apex + half * htail_sweep + htail_tip, side * half, 0.0],
            [htail_apex + htail_root, 0.0, 0.0],
            [htail_apex, 0.0, 0.0],
        ]);
    }
    parts.push(Part {
        name: "horizontal_tail".to_string(),
        polylines: htail,
    });

    let vtail_area = template.vertical_tail_volume * inputs.wing_area * span / tail_arm;
    let vtail_height = libm::sqrt(VTAIL_ASPECT * vtail_area);
    let vtail_root = 2.0 * vtail_area / (vtail_height * (1.0 + VTAIL_TAPER));
    let vtail_tip = VTAIL_TAPER * vtail_root;
    let vtail_apex = length - 1.25 * vtail_root;
    let vtail_sweep = libm::tan(30.0 * core::f64::consts::PI / 180.0);
    parts.push(Part {
        name: "vertical_tail".to_string(),
        polylines: vec![vec![
            [vtail_apex, 0.0, radius],
            [vtail_apex + vtail_height * vtail_sweep, 0.0, radius + vtail_height],
            [
                vtail_apex + vtail_height * vtail_sweep + vtail_tip,
                0.0,
                radius + vtail_height,
            ],
            [vtail_apex + vtail_root, 0.0, radius],
            [vtail_apex, 0.0, radius],
        ]],
    });

    // Propulsor markers, one per sink.
    let pod_radius = 0.025 * span;
    let positions = propulsor_positions(
        inputs.sink_ids.len(),
        &template.placement,
        span,
        wing_apex,
        sweep_tan,
        wing_z,
        length,
        radius,
        pod_radius,
    )?;
    for (id, center) in inputs.sink_ids.iter().zip(positions) {
        let mut marker = vec![
            circle(center, pod_radius, 1),
            circle(center, pod_radius, 2),
        ];
        // Short axis line hinting at the thrust direction.
        marker.push(vec![
            [center[0] - 1.6 * pod_radius, center[1], center[2]],
            [center[0] + 1.6 * pod_radius, center[1], center[2]],
        ]);
        parts.push(Part {
            name: format!("propulsor_{id}"),
            polylines: marker,
        });
    }

    Ok(Wireframe {
        parts,
        wing_span: span,
        fuselage_length: length,
    })
}

#[allow(clippy::too_many_arguments)]
fn propulsor_positions(
    count: usize,
    placement: &PlacementRule,
    span: f64,
    wing_apex: f64,
    sweep_tan: f64,
    wing_z: f64,
    length: f64,
    fuselage_radius: f64,
    pod_radius: f64,
) -> Result<Vec<[f64; 3]>, GeometryError> {
    let mut positions = Vec::with_capacity(count);
    match placement {
        PlacementRule::WingPodded {
            stations,
            centerline,
        } => {
            let paired = count / 2;
            let odd = count % 2 == 1;
            if odd && !centerline {
                return Err(GeometryError::OddPodCountNeedsCenterline { sinks: count });
            }
            if stations.len() != paired {
                return Err(GeometryError::StationCountMismatch {
                    expected: paired,
                    actual: stations.len(),
                });
            }
            for &station in stations {
                if !(station > 0.0 && station <= 1.0) {
                    return Err(GeometryError::StationOutOfRange { value: station });
                }
                let y = station * 0.5 * span;
                let x = wing_apex + y * sweep_tan - 1.2 * pod_radius;
                positions.push([x, y, wing_z]);
                positions.push([x, -y, wing_z]);
            }
            if odd {
                positions.push([wing_apex - 1.2 * pod_radius, 0.0, wing_z]);
            }
        }
        PlacementRule::AftFuselage => {
            let x = 0.85 * length;
            let paired = count / 2;
            for index in 0..paired {
                let y = fuselage_radius + pod_radius * (1.5 + 2.5 * index as f64);
                positions.push([x, y, 0.2 * fuselage_radius]);
                positions.push([x, -y, 0.2 * fuselage_radius]);
            }
            if count % 2 == 1 {
                positions.push([x, 0.0, fuselage_radius + pod_radius]);
            }
        }
    }
    // Pair-first generation above yields per-pair +y then -y; callers zip
    // against sink ids, so the count must match exactly.
    debug_assert_eq!(positions.len(), count);
    Ok(positions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(sinks: usize) -> GeometryInputs {
        GeometryInputs {
            mtow: 20_000.0,
            wing_area: 100.0,
            aspect_ratio: 9.0,
            sink_ids: (0..sinks).map(|index| format!("prop_{index}")).collect(),
        }
    }

    #[test]
    fn span_follows_area_and_aspect_ratio() {
        let frame = generate_geometry(&inputs(2), &GeometryTemplate::default()).unwrap();
        assert!((frame.wing_span - 30.0).abs() < 1e-12);
        let ratio = frame.wing_span * frame.wing_span / 100.0;
        assert!((ratio - 9.0).abs() < 1e-9);
    }

    #[test]
    fn untapered_unswept_wing_is_rectangular() {
        let template = GeometryTemplate {
            wing_taper: 1.0,
            wing_sweep_deg: 0.0,
            ..GeometryTemplate::default()
        };
        let frame = generate_geometry(&inputs(2), &template).unwrap();
        let wing = frame
            .parts
            .iter()
            .find(|part| part.name == "wing")
            .unwrap();
        let loop_right = &wing.polylines[0];
        let root_chord = loop_right[3][0] - loop_right[0][0];
        let tip_chord = loop_right[2][0] - loop_right[1][0];
        let expected = 100.0 / frame.wing_span;
        assert!((root_chord - expected).abs() < 1e-9);
        assert!((tip_chord - expected).abs() < 1e-9);
    }

    #[test]
    fn four_podded_props_sit_symmetric_about_centerline() {
        let template = GeometryTemplate {
            placement: PlacementRule::WingPodded {
                stations: vec![0.3, 0.6],
                centerline: false,
            },
            ..GeometryTemplate::default()
        };
        let frame = generate_geometry(&inputs(4), &template).unwrap();
        let mut y_sum = 0.0;
        let mut found = 0;
        for part in &frame.parts {
            if part.name.starts_with("propulsor_") {
                // marker center y = mean of axis-line endpoints
                let line = part.polylines.last().unwrap();
                y_sum += 0.5 * (line[0][1] + line[1][1]);
                found += 1;
            }
        }
        assert_eq!(found, 4);
        assert!(y_sum.abs() < 1e-12, "y sum {y_sum}");
    }

    #[test]
    fn odd_pod_count_without_centerline_is_an_error() {
        let template = GeometryTemplate {
            placement: PlacementRule::WingPodded {
                stations: vec![0.35],
                centerline: false,
            },
            ..GeometryTemplate::default()
        };
        assert!(matches!(
            generate_geometry(&inputs(3), &template),
            Err(GeometryError::OddPodCountNeedsCenterline { sinks: 3 })
        ));
    }

    #[test]
    fn all_parts_except_vertical_tail_mirror_in_y() {
        let frame = generate_geometry(&inputs(2), &GeometryTemplate::default()).unwrap();
        for part in &frame.parts {
            if part.name == "vertical_tail" {
                for point in part.polylines.iter().flatten() {
                    assert_eq!(point[1], 0.0);
                }
                continue;
            }
            // Every point's mirror appears somewhere in the same part group.
            let points: Vec<[f64; 3]> = frame
                .parts
                .iter()
                .filter(|other| {
                    other.name == part.name
                        || (part.name.starts_with("propulsor_")
                            && other.name.starts_with("propulsor_"))
                })
                .flat_map(|other| other.polylines.iter().flatten().copied())
                .collect();
            for point in part.polylines.iter().flatten() {
                let mirrored = [point[0], -point[1], point[2]];
                assert!(
                    points.iter().any(|candidate| {
                        (candidate[0] - mirrored[0]).abs() < 1e-9
                            && (candidate[1] - mirrored[1]).abs() < 1e-9
                            && (candidate[2] - mirrored[2]).abs() < 1e-9
                    }),
                    "part {} point {:?} lacks a mirror",
                    part.name,
                    point
                );
            }
        }
    }

    #[test]
    fn coordinates_are_finite() {
        let frame = generate_geometry(&inputs(4), &GeometryTemplate {
            placement: PlacementRule::AftFuselage,
            ..GeometryTemplate::default()
        })
        .unwrap();
        for point in frame.points() {
            assert!(point.iter().all(|value| value.is_finite()));
        }
    }

    #[test]
    fn station_count_must_match_pairs() {
        let template = GeometryTemplate {
            placement: PlacementRule::WingPodded {
                stations: vec![0.3],
                centerline: false,
            },
            ..GeometryTemplate::default()
        };
        assert!(matches!(
            generate_geometry(&inputs(4), &template),
            Err(GeometryError::StationCountMismatch {
                expected: 2,
                actual: 1
            })
        ));
    }
}
