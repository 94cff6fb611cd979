//! International Standard Atmosphere, sea level to 20 km.
//!
//! Two layers: the troposphere with a 6.5 K/km lapse rate up to 11 km, and
//! the isothermal lower stratosphere from 11 km to the 20 km model ceiling.

use core::fmt;

/// Sea-level standard temperature, K.
pub const SEA_LEVEL_TEMPERATURE: f64 = 288.15;
/// Sea-level standard pressure, Pa.
pub const SEA_LEVEL_PRESSURE: f64 = 101_325.0;
/// Sea-level standard density, kg/m³.
pub const SEA_LEVEL_DENSITY: f64 = SEA_LEVEL_PRESSURE / (GAS_CONSTANT_AIR * SEA_LEVEL_TEMPERATURE);

/// Specific gas constant of dry air, J/(kg·K).
const GAS_CONSTANT_AIR: f64 = 287.05287;
/// Tropospheric temperature lapse rate, K/m.
const LAPSE_RATE: f64 = 0.0065;
/// Ratio of specific heats for air.
const HEAT_CAPACITY_RATIO: f64 = 1.4;
/// Tropopause altitude, m.
const TROPOPAUSE_ALTITUDE: f64 = 11_000.0;
/// Model ceiling, m.
pub const MAX_ALTITUDE: f64 = 20_000.0;

/// Static atmospheric state at one altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereState {
    /// Geopotential altitude, m.
    pub altitude: f64,
    /// Static temperature, K.
    pub temperature: f64,
    /// Static pressure, Pa.
    pub pressure: f64,
    /// Density, kg/m³.
    pub density: f64,
    /// Speed of sound, m/s.
    pub speed_of_sound: f64,
}

/// Altitude outside the modeled 0–20 km band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltitudeOutOfRange {
    pub altitude: f64,
}

impl fmt::Display for AltitudeOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "altitude {} m is outside the modeled range 0..{} m",
            self.altitude, MAX_ALTITUDE
        )
    }
}

impl core::error::Error for AltitudeOutOfRange {}

/// Evaluate the standard atmosphere at `altitude` meters.
pub fn atmosphere(altitude: f64) -> Result<AtmosphereState, AltitudeOutOfRange> {
    if !(0.0..=MAX_ALTITUDE).contains(&altitude) || altitude.is_nan() {
        return Err(AltitudeOutOfRange { altitude });
    }

    let g = crate::STANDARD_GRAVITY;
    let (temperature, pressure) = if altitude <= TROPOPAUSE_ALTITUDE {
        let t = SEA_LEVEL_TEMPERATURE - LAPSE_RATE * altitude;
        let p = SEA_LEVEL_PRESSURE
            * libm::pow(t / SEA_LEVEL_TEMPERATURE, g / (LAPSE_RATE * GAS_CONSTANT_AIR));
        (t, p)
    } else {
        let t = SEA_LEVEL_TEMPERATURE - LAPSE_RATE * TROPOPAUSE_ALTITUDE;
        let p_tropopause = SEA_LEVEL_PRESSURE
            * libm::pow(t / SEA_LEVEL_TEMPERATURE, g / (LAPSE_RATE * GAS_CONSTANT_AIR));
        let p = p_tropopause
            * libm::exp(-g * (altitude - TROPOPAUSE_ALTITUDE) / (GAS_CONSTANT_AIR * t));
        (t, p)
    };

    let density = pressure / (GAS_CONSTANT_AIR * temperature);
    let speed_of_sound = libm::sqrt(HEAT_CAPACITY_RATIO * GAS_CONSTANT_AIR * temperature);

    Ok(AtmosphereState {
        altitude,
        temperature,
        pressure,
        density,
        speed_of_sound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sea_level_density_matches_published_constant() {
        let state = atmosphere(0.0).unwrap();
        assert!((state.density - 1.2250).abs() < 1e-4);
        assert!((state.temperature - 288.15).abs() < 1e-12);
        assert!((state.pressure - 101_325.0).abs() < 1e-9);
    }

    #[test]
    fn tropopause_temperature_matches_published_value() {
        let state = atmosphere(11_000.0).unwrap();
        assert!((state.temperature - 216.65).abs() < 0.01);
    }

    #[test]
    fn mid_troposphere_pressure_matches_barometric_formula() {
        // Oracle: 101325 * (255.65/288.15)^5.255876 evaluated independently.
        let state = atmosphere(5_000.0).unwrap();
        let expected = 54_019.9;
        assert!((state.pressure - expected).abs() / expected < 0.005);
    }

    #[test]
    fn density_decreases_with_altitude() {
        let mut previous = atmosphere(0.0).unwrap().density;
        for step in 1..=200 {
            let density = atmosphere(step as f64 * 100.0).unwrap().density;
            assert!(density < previous, "density must fall with altitude");
            previous = density;
        }
    }

    #[test]
    fn rejects_out_of_range_altitudes() {
        assert!(atmosphere(-1.0).is_err());
        assert!(atmosphere(20_000.1).is_err());
        assert!(atmosphere(f64::NAN).is_err());
    }

    #[test]
    fn speed_of_sound_at_sea_level() {
        let state = atmosphere(0.0).unwrap();
        assert!((state.speed_of_sound - 340.29).abs() < 0.01);
    }
}
