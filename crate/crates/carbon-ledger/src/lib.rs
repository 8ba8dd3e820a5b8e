//! Two-phase CO2 accounting for model training.
//!
//! The footprint of a published model architecture splits into the one-time
//! **search phase** (finding the architecture: NAS compute or iterative hand
//! tuning) and the recurring **evaluation phase** (the community retraining
//! the architecture over its lifetime). This crate implements both
//! estimates, lifetime/amortization accounting on top of them, human-scale
//! equivalents (cars driven, homes powered), a model-registry ingestion
//! layer, and deterministic figure-ready report rendering.
//!
//! Estimates are pure functions of a hardware database and explicit
//! conversion factors, so every number is reproducible and substitutable:
//!
//! ```
//! use carbon_ledger::emissions::{energy_to_co2, search_energy};
//! use carbon_ledger::{EmissionFactors, HardwareDb};
//!
//! let db = HardwareDb::builtin();
//! let factors = EmissionFactors::default(); // PUE 1.59, 0.707 kg CO2/kWh
//! let resolved = db.resolve_with_defaults(None, None)?; // V100 + i7-10750H
//! let energy = search_energy(
//!     100.0,
//!     resolved.gpu.power_draw_watts,
//!     resolved.cpu.power_draw_watts,
//!     &factors,
//! )?;
//! let co2 = energy_to_co2(energy, &factors);
//! assert!((energy.wh - 46_905.0).abs() < 1e-6);
//! assert!((co2.kg - 33.161835).abs() < 1e-6);
//! # Ok::<(), carbon_ledger::Error>(())
//! ```
//!
//! The math is generic over the float width via [`scalar::Real`]; the crate
//! root exports `f64` aliases, which is what the registry, report, and CLI
//! layers use.

pub mod emissions;
pub mod equivalency;
pub mod error;
pub mod hardware;
pub mod registry;
pub mod report;
pub mod scalar;

pub use error::{Error, RowIssue, ValidationReport};
pub use scalar::Real;

/// Watt-hours, in `f64`.
pub type EnergyEstimate = emissions::EnergyEstimate<f64>;
/// Kilograms of CO2, in `f64`.
pub type Co2Estimate = emissions::Co2Estimate<f64>;
/// PUE and grid emission factor, in `f64`.
pub type EmissionFactors = emissions::EmissionFactors<f64>;
/// Epochs x minutes-per-epoch, in `f64`.
pub type TrainingSchedule = emissions::TrainingSchedule<f64>;
/// Cars/homes conversion constants, in `f64`.
pub type EquivalencyFactors = equivalency::EquivalencyFactors<f64>;
/// A GPU or CPU spec, in `f64`.
pub type HardwareSpec = hardware::HardwareSpec<f64>;
/// The hardware database, in `f64`.
pub type HardwareDb = hardware::HardwareDb<f64>;
/// A resolved GPU/CPU pair, in `f64`.
pub type ResolvedHardware<'a> = hardware::ResolvedHardware<'a, f64>;
