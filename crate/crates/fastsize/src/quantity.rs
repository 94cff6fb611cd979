//! Unit-suffixed quantities in input files.
//!
//! Every physical field accepts either a bare number, meaning the SI base
//! unit for that field, or a string of the form `"<number> <unit>"` with the
//! unit drawn from a fixed per-dimension list, converted at parse time.
//! Serialization always emits the normalized SI number.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// One accepted suffix and its factor to the SI base unit.
type UnitTable = &'static [(&'static str, f64)];

pub const MASS_UNITS: UnitTable = &[("kg", 1.0), ("lbm", 0.453_592_37)];
pub const LENGTH_UNITS: UnitTable = &[
    ("m", 1.0),
    ("km", 1_000.0),
    ("nmi", 1_852.0),
    ("ft", 0.3048),
];
pub const SPEED_UNITS: UnitTable = &[
    ("m/s", 1.0),
    ("kt", 1_852.0 / 3_600.0),
    ("ft/min", 0.3048 / 60.0),
];
pub const WING_LOADING_UNITS: UnitTable = &[
    ("N/m2", 1.0),
    ("N/m\u{b2}", 1.0),
    ("lbf/ft2", 47.880_259_889_635),
    ("lbf/ft\u{b2}", 47.880_259_889_635),
];
pub const SPECIFIC_ENERGY_UNITS: UnitTable = &[
    ("J/kg", 1.0),
    ("kJ/kg", 1.0e3),
    ("MJ/kg", 1.0e6),
    ("Wh/kg", 3_600.0),
    ("kWh/kg", 3.6e6),
];
pub const SPECIFIC_POWER_UNITS: UnitTable = &[("W/kg", 1.0), ("kW/kg", 1.0e3)];
pub const DURATION_UNITS: UnitTable = &[("s", 1.0), ("min", 60.0), ("h", 3_600.0)];
pub const AREA_UNITS: UnitTable = &[("m2", 1.0), ("m\u{b2}", 1.0), ("ft2", 0.092_903_04)];
pub const ENERGY_UNITS: UnitTable = &[
    ("J", 1.0),
    ("MJ", 1.0e6),
    ("kWh", 3.6e6),
];

fn parse_with_units(text: &str, dimension: &str, table: UnitTable) -> Result<f64, String> {
    let trimmed = text.trim();
    if let Ok(value) = trimmed.parse::<f64>() {
        return Ok(value);
    }
    let Some(split) = trimmed.find(char::is_whitespace) else {
        return Err(format!(
            "expected '<number> <unit>' for {dimension}, got '{text}'"
        ));
    };
    let (number_part, unit_part) = trimmed.split_at(split);
    let value: f64 = number_part
        .trim()
        .parse()
        .map_err(|_| format!("bad number '{}' in {dimension} quantity", number_part.trim()))?;
    let unit = unit_part.trim();
    for (suffix, factor) in table {
        if *suffix == unit {
            return Ok(value * factor);
        }
    }
    let supported: Vec<&str> = table.iter().map(|(suffix, _)| *suffix).collect();
    Err(format!(
        "unsupported {dimension} unit '{unit}' (expected one of: {})",
        supported.join(", ")
    ))
}

macro_rules! quantity {
    ($name:ident, $dimension:literal, $table:expr) => {
        /// SI-normalized value; see the module docs for accepted suffixes.
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name(pub f64);

        impl $name {
            pub fn si(self) -> f64 {
                self.0
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_f64(self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                struct QtyVisitor;
                impl<'de> Visitor<'de> for QtyVisitor {
                    type Value = $name;

                    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        write!(f, "a number (SI) or '<number> <unit>' string for {}", $dimension)
                    }

                    fn visit_f64<E: de::Error>(self, value: f64) -> Result<$name, E> {
                        Ok($name(value))
                    }

                    fn visit_i64<E: de::Error>(self, value: i64) -> Result<$name, E> {
                        Ok($name(value as f64))
                    }

                    fn visit_u64<E: de::Error>(self, value: u64) -> Result<$name, E> {
                        Ok($name(value as f64))
                    }

                    fn visit_str<E: de::Error>(self, value: &str) -> Result<$name, E> {
                        parse_with_units(value, $dimension, $table)
                            .map($name)
                            .map_err(de::Error::custom)
                    }
                }
                deserializer.deserialize_any(QtyVisitor)
            }
        }
    };
}

quantity!(MassQty, "mass", MASS_UNITS);
quantity!(LengthQty, "length", LENGTH_UNITS);
quantity!(SpeedQty, "speed", SPEED_UNITS);
quantity!(WingLoadingQty, "wing loading", WING_LOADING_UNITS);
quantity!(SpecificEnergyQty, "specific energy", SPECIFIC_ENERGY_UNITS);
quantity!(SpecificPowerQty, "specific power", SPECIFIC_POWER_UNITS);
quantity!(DurationQty, "duration", DURATION_UNITS);
quantity!(AreaQty, "area", AREA_UNITS);
quantity!(EnergyQty, "energy", ENERGY_UNITS);
