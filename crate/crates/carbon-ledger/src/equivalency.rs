//! Human-scale equivalents: kilograms of CO2 as "cars driven for one year"
//! and "homes powered for one year".

use crate::emissions::Co2Estimate;
use crate::error::Error;
use crate::scalar::Real;

/// Tonnes of CO2 per average car driven for one year. Fitted: mean of the
/// three ratios implied by the reference equivalency rows
/// (326.6/70.6, 181.7/39.8, 65.1/14.1).
pub const DEFAULT_TONNES_PER_CAR_YEAR: f64 = (326.6 / 70.6 + 181.7 / 39.8 + 65.1 / 14.1) / 3.0;

/// Tonnes of CO2 per average home powered for one year. Fitted the same way
/// (326.6/55.3, 181.7/30.8, 65.1/11).
pub const DEFAULT_TONNES_PER_HOME_YEAR: f64 = (326.6 / 55.3 + 181.7 / 30.8 + 65.1 / 11.0) / 3.0;

const KG_PER_TONNE: f64 = 1000.0;

/// Conversion constants for the two equivalents. These are configuration,
/// not physics: pin current EPA values when you have them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalencyFactors<T> {
    pub tonnes_per_car_year: T,
    pub tonnes_per_home_year: T,
}

impl<T: Real> EquivalencyFactors<T> {
    pub fn new(tonnes_per_car_year: T, tonnes_per_home_year: T) -> Result<Self, Error> {
        for (name, value) in [
            ("tonnes_per_car_year", tonnes_per_car_year),
            ("tonnes_per_home_year", tonnes_per_home_year),
        ] {
            if !value.is_finite() || value <= T::zero() {
                return Err(Error::InvalidFactors {
                    reason: format!("{name} must be finite and > 0, got {value}"),
                });
            }
        }
        Ok(Self {
            tonnes_per_car_year,
            tonnes_per_home_year,
        })
    }
}

impl<T: Real> Default for EquivalencyFactors<T> {
    fn default() -> Self {
        Self {
            tonnes_per_car_year: T::from_f64_lossy(DEFAULT_TONNES_PER_CAR_YEAR),
            tonnes_per_home_year: T::from_f64_lossy(DEFAULT_TONNES_PER_HOME_YEAR),
        }
    }
}

/// Cars driven for one year that emit the same CO2 mass.
pub fn co2_to_cars<T: Real>(co2: Co2Estimate<T>, factors: &EquivalencyFactors<T>) -> T {
    co2.kg / T::from_f64_lossy(KG_PER_TONNE) / factors.tonnes_per_car_year
}

/// Homes powered for one year that account for the same CO2 mass.
pub fn co2_to_homes<T: Real>(co2: Co2Estimate<T>, factors: &EquivalencyFactors<T>) -> T {
    co2.kg / T::from_f64_lossy(KG_PER_TONNE) / factors.tonnes_per_home_year
}
