//! The core energy and CO2 formulas.
//!
//! Search phase: datacenter energy is PUE x GPU-hours x (GPU + CPU watts),
//! in watt-hours. Evaluation phase: a FLOPs-weighted energy proxy,
//! workload-FLOPs x (GPU + CPU watt-to-FLOPS ratio) x GPU-hours. Both convert
//! to kilograms of CO2 through the grid emission factor. Lifetime accounting
//! (per-training cost times adoption) and breakeven analysis sit on top.
//!
//! Every function here is pure; nothing reads clocks, files, or globals.

use crate::error::Error;
use crate::hardware::HardwareSpec;
use crate::scalar::Real;

/// Default Power Usage Effectiveness (datacenter overhead factor).
pub const DEFAULT_PUE: f64 = 1.59;
/// Default grid emission factor: US national weighted average, kg CO2/kWh
/// (equivalently 0.707e-3 metric tonnes per kWh).
pub const DEFAULT_EF_KG_PER_KWH: f64 = 0.707;
/// Default number of trainings attributed to each citation of a model.
pub const DEFAULT_TRAININGS_PER_CITATION: u64 = 50;

const WH_PER_KWH: f64 = 1000.0;

/// Datacenter overhead and grid carbon intensity governing the
/// energy-to-CO2 conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionFactors<T> {
    /// Power Usage Effectiveness: total facility power over IT power, >= 1.
    pub pue: T,
    /// Grid emission factor in kg CO2 per kWh, >= 0.
    pub ef_kg_per_kwh: T,
    /// Also scale evaluation-phase energy by `pue`. The evaluation formula
    /// carries no PUE term; this opt-in puts both phases on the same footing
    /// for users who want that. Off by default.
    pub apply_pue_to_eval: bool,
}

impl<T: Real> EmissionFactors<T> {
    pub fn new(pue: T, ef_kg_per_kwh: T) -> Result<Self, Error> {
        if !pue.is_finite() || pue < T::one() {
            return Err(Error::InvalidFactors {
                reason: format!("pue must be a finite value >= 1, got {pue}"),
            });
        }
        if !ef_kg_per_kwh.is_finite() || ef_kg_per_kwh < T::zero() {
            return Err(Error::InvalidFactors {
                reason: format!("ef_kg_per_kwh must be finite and >= 0, got {ef_kg_per_kwh}"),
            });
        }
        Ok(Self {
            pue,
            ef_kg_per_kwh,
            apply_pue_to_eval: false,
        })
    }

    pub fn with_apply_pue_to_eval(mut self, apply: bool) -> Self {
        self.apply_pue_to_eval = apply;
        self
    }
}

impl<T: Real> Default for EmissionFactors<T> {
    fn default() -> Self {
        Self {
            pue: T::from_f64_lossy(DEFAULT_PUE),
            ef_kg_per_kwh: T::from_f64_lossy(DEFAULT_EF_KG_PER_KWH),
            apply_pue_to_eval: false,
        }
    }
}

/// Energy in watt-hours.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EnergyEstimate<T> {
    pub wh: T,
}

impl<T: Real> EnergyEstimate<T> {
    pub fn from_wh(wh: T) -> Self {
        Self { wh }
    }

    pub fn zero() -> Self {
        Self { wh: T::zero() }
    }

    pub fn kwh(&self) -> T {
        self.wh / T::from_f64_lossy(WH_PER_KWH)
    }
}

/// CO2 mass in kilograms.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Co2Estimate<T> {
    pub kg: T,
}

impl<T: Real> Co2Estimate<T> {
    pub fn from_kg(kg: T) -> Self {
        Self { kg }
    }

    pub fn zero() -> Self {
        Self { kg: T::zero() }
    }

    pub fn tonnes(&self) -> T {
        self.kg / T::from_f64_lossy(1000.0)
    }
}

/// A training run: epochs times minutes per epoch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingSchedule<T> {
    epochs: u32,
    minutes_per_epoch: T,
}

impl<T: Real> TrainingSchedule<T> {
    pub fn new(epochs: u32, minutes_per_epoch: T) -> Result<Self, Error> {
        if epochs == 0 {
            return Err(Error::InvalidSchedule {
                reason: "epochs must be > 0".into(),
            });
        }
        if !minutes_per_epoch.is_finite() || minutes_per_epoch <= T::zero() {
            return Err(Error::InvalidSchedule {
                reason: format!("minutes_per_epoch must be > 0, got {minutes_per_epoch}"),
            });
        }
        Ok(Self {
            epochs,
            minutes_per_epoch,
        })
    }

    pub fn epochs(&self) -> u32 {
        self.epochs
    }

    pub fn minutes_per_epoch(&self) -> T {
        self.minutes_per_epoch
    }

    /// Total GPU hours: epochs x minutes per epoch / 60. Strictly positive.
    pub fn gpu_hours(&self) -> T {
        T::from_u32(self.epochs).expect("u32 fits") * self.minutes_per_epoch
            / T::from_f64_lossy(60.0)
    }
}

/// Search-phase energy: `pue x gpu_hours x (gpu_watts + cpu_watts)`, in Wh.
///
/// `gpu_watts`/`cpu_watts` are the rated draws of the devices the search ran
/// on. DRAM is deliberately not modeled.
pub fn search_energy<T: Real>(
    gpu_hours: T,
    gpu_watts: T,
    cpu_watts: T,
    factors: &EmissionFactors<T>,
) -> Result<EnergyEstimate<T>, Error> {
    if !gpu_hours.is_finite() || gpu_hours < T::zero() {
        return Err(Error::NegativeDuration {
            hours: gpu_hours.as_f64(),
        });
    }
    if !gpu_watts.is_finite() || gpu_watts <= T::zero() {
        return Err(Error::NonPositivePower {
            watts: gpu_watts.as_f64(),
        });
    }
    if !cpu_watts.is_finite() || cpu_watts <= T::zero() {
        return Err(Error::NonPositivePower {
            watts: cpu_watts.as_f64(),
        });
    }
    Ok(EnergyEstimate::from_wh(
        factors.pue * gpu_hours * (gpu_watts + cpu_watts),
    ))
}

/// Converts energy to CO2: `kg = kWh x ef_kg_per_kwh`.
///
/// At the default factor this is numerically identical to multiplying
/// watt-hours by 0.707e-3.
pub fn energy_to_co2<T: Real>(
    energy: EnergyEstimate<T>,
    factors: &EmissionFactors<T>,
) -> Co2Estimate<T> {
    Co2Estimate::from_kg(energy.kwh() * factors.ef_kg_per_kwh)
}

/// Evaluation-phase energy: `flops x (omega_gpu + omega_cpu) x gpu_hours`.
///
/// `flops` is the model's forward-pass FLOPs count; the omegas are device
/// watt-to-FLOPS ratios ([`HardwareSpec::watt_per_flops`]). Computed exactly
/// as written, with no PUE term. Note the result is a FLOPs-weighted energy
/// proxy rather than metered energy; treat relative comparisons as the
/// primary signal.
pub fn eval_energy<T: Real>(
    flops: T,
    omega_gpu: T,
    omega_cpu: T,
    gpu_hours: T,
) -> Result<EnergyEstimate<T>, Error> {
    if !flops.is_finite() || flops <= T::zero() {
        return Err(Error::NonPositiveFlops {
            flops: flops.as_f64(),
        });
    }
    if !gpu_hours.is_finite() || gpu_hours < T::zero() {
        return Err(Error::NegativeDuration {
            hours: gpu_hours.as_f64(),
        });
    }
    if !omega_gpu.is_finite() || omega_gpu < T::zero() {
        return Err(Error::NegativeRatio {
            ratio: omega_gpu.as_f64(),
        });
    }
    if !omega_cpu.is_finite() || omega_cpu < T::zero() {
        return Err(Error::NegativeRatio {
            ratio: omega_cpu.as_f64(),
        });
    }
    Ok(EnergyEstimate::from_wh(
        flops * (omega_gpu + omega_cpu) * gpu_hours,
    ))
}

/// CO2 for one training of a model: the evaluation-phase energy for one
/// schedule, converted to kilograms.
///
/// With `factors.apply_pue_to_eval` off (the default) this equals
/// `energy_to_co2(eval_energy(flops, gpu ratio, cpu ratio, schedule hours))`
/// exactly.
pub fn per_training_co2<T: Real>(
    flops: T,
    gpu: &HardwareSpec<T>,
    cpu: &HardwareSpec<T>,
    schedule: &TrainingSchedule<T>,
    factors: &EmissionFactors<T>,
) -> Result<Co2Estimate<T>, Error> {
    let mut energy = eval_energy(
        flops,
        gpu.watt_per_flops(),
        cpu.watt_per_flops(),
        schedule.gpu_hours(),
    )?;
    if factors.apply_pue_to_eval {
        energy = EnergyEstimate::from_wh(factors.pue * energy.wh);
    }
    Ok(energy_to_co2(energy, factors))
}

/// Cumulative CO2 after a model is trained `n_trainings` times.
pub fn lifetime_co2<T: Real>(per_training: Co2Estimate<T>, n_trainings: u64) -> Co2Estimate<T> {
    Co2Estimate::from_kg(per_training.kg * T::from_count(n_trainings))
}

/// Number of community trainings implied by a citation count
/// (`citations x trainings_per_citation`; saturates at `u64::MAX`).
pub fn trainings_from_citations(citations: u64, trainings_per_citation: u64) -> u64 {
    citations.saturating_mul(trainings_per_citation)
}

/// One-time search cost plus cumulative evaluation cost after `n_trainings`.
pub fn amortized_total<T: Real>(
    search: Co2Estimate<T>,
    per_training: Co2Estimate<T>,
    n_trainings: u64,
) -> Co2Estimate<T> {
    Co2Estimate::from_kg(search.kg + per_training.kg * T::from_count(n_trainings))
}

/// Outcome of a breakeven comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Breakeven {
    /// Smallest training count at which model A's amortized total is at
    /// most model B's.
    At(u64),
    /// Model A never catches up.
    Never,
}

/// Smallest `n >= 0` with `amortized_total(a, n) <= amortized_total(b, n)`,
/// or [`Breakeven::Never`] when A starts behind and never closes the gap
/// (`search_a > search_b` and `per_a >= per_b`).
pub fn breakeven_trainings<T: Real>(
    search_a: Co2Estimate<T>,
    per_a: Co2Estimate<T>,
    search_b: Co2Estimate<T>,
    per_b: Co2Estimate<T>,
) -> Breakeven {
    let holds =
        |n: u64| amortized_total(search_a, per_a, n).kg <= amortized_total(search_b, per_b, n).kg;
    if holds(0) {
        return Breakeven::At(0);
    }
    // From here on search_a > search_b: A only catches up if it is strictly
    // cheaper per training.
    if per_a.kg >= per_b.kg {
        return Breakeven::Never;
    }
    let gap = search_a.kg - search_b.kg;
    let closing = per_b.kg - per_a.kg;
    let mut n = (gap / closing).ceil().to_u64().unwrap_or(u64::MAX);
    // The analytic candidate can be off by an ulp either way; pin it to the
    // defining inequality.
    while n > 0 && holds(n - 1) {
        n -= 1;
    }
    let mut guard = 0;
    while !holds(n) {
        if n == u64::MAX || guard > 64 {
            return Breakeven::Never;
        }
        n += 1;
        guard += 1;
    }
    Breakeven::At(n)
}
