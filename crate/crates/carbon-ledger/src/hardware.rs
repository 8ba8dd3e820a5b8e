//! Hardware power/throughput database with the built-in fallback devices.
//!
//! Every estimate in this crate is a pure function of the database contents,
//! so substituting your own measured numbers (via an override file) changes
//! the results without touching any code.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, RowIssue, ValidationReport};
use crate::scalar::Real;

/// Id of the GPU assumed when a record does not name one.
pub const DEFAULT_GPU_ID: &str = "nvidia-v100";
/// Id of the CPU assumed when a record does not name one.
pub const DEFAULT_CPU_ID: &str = "intel-i7-10750h";

/// GFLOP/s (file unit) to FLOP/s (internal unit).
const GFLOPS_TO_FLOPS: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HardwareKind {
    Gpu,
    Cpu,
}

impl HardwareKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HardwareKind::Gpu => "gpu",
            HardwareKind::Cpu => "cpu",
        }
    }
}

/// One GPU or CPU: rated power draw and peak single-precision throughput.
///
/// `peak_gflops` keeps the file unit (GFLOP/s); [`HardwareSpec::peak_flops`]
/// converts to FLOP/s where the math needs it.
#[derive(Debug, Clone, PartialEq)]
pub struct HardwareSpec<T> {
    pub id: String,
    pub kind: HardwareKind,
    /// Rated (TDP) power draw in watts.
    pub power_draw_watts: T,
    /// Peak single-precision throughput in GFLOP/s.
    pub peak_gflops: T,
    /// Where the numbers came from, including confidence caveats.
    pub source_note: String,
}

impl<T: Real> HardwareSpec<T> {
    pub fn new(
        id: impl Into<String>,
        kind: HardwareKind,
        power_draw_watts: T,
        peak_gflops: T,
        source_note: impl Into<String>,
    ) -> Result<Self, Error> {
        let spec = Self {
            id: id.into(),
            kind,
            power_draw_watts,
            peak_gflops,
            source_note: source_note.into(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.id.trim().is_empty() {
            return Err(Error::InvalidFactors {
                reason: "hardware id must be non-empty".into(),
            });
        }
        if !self.power_draw_watts.is_finite() || self.power_draw_watts <= T::zero() {
            return Err(Error::NonPositivePower {
                watts: self.power_draw_watts.as_f64(),
            });
        }
        if !self.peak_gflops.is_finite() || self.peak_gflops <= T::zero() {
            return Err(Error::InvalidFactors {
                reason: format!(
                    "peak throughput must be positive, got {} GFLOP/s for `{}`",
                    self.peak_gflops, self.id
                ),
            });
        }
        Ok(())
    }

    /// Peak throughput in FLOP/s.
    pub fn peak_flops(&self) -> T {
        self.peak_gflops * T::from_f64_lossy(GFLOPS_TO_FLOPS)
    }

    /// Watt-to-FLOPS ratio of the device: rated watts per unit of peak
    /// throughput (W per FLOP/s). Strictly positive for any valid spec.
    pub fn watt_per_flops(&self) -> T {
        self.power_draw_watts / self.peak_flops()
    }
}

/// Hardware file entry: UTF-8 JSON array of these objects.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct FileEntry {
    id: String,
    kind: HardwareKind,
    power_draw_watts: f64,
    peak_gflops: f64,
    #[serde(default)]
    source_note: String,
}

impl<T: Real> From<&HardwareSpec<T>> for FileEntry {
    fn from(spec: &HardwareSpec<T>) -> Self {
        FileEntry {
            id: spec.id.clone(),
            kind: spec.kind,
            power_draw_watts: spec.power_draw_watts.as_f64(),
            peak_gflops: spec.peak_gflops.as_f64(),
            source_note: spec.source_note.clone(),
        }
    }
}

/// The hardware a pair of optional ids resolved to, with a note of which
/// defaults were applied.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedHardware<'a, T> {
    pub gpu: &'a HardwareSpec<T>,
    pub cpu: &'a HardwareSpec<T>,
    /// True when no GPU id was supplied and the default was used.
    pub gpu_defaulted: bool,
    /// True when no CPU id was supplied and the default was used.
    pub cpu_defaulted: bool,
}

/// Immutable store of hardware specs keyed by case-insensitive id.
///
/// Mutation returns a new database; readers can share one freely.
#[derive(Debug, Clone)]
pub struct HardwareDb<T> {
    // Keyed by lowercased id; BTreeMap keeps listing and serialization
    // order deterministic.
    entries: BTreeMap<String, HardwareSpec<T>>,
    default_gpu_id: String,
    default_cpu_id: String,
}

impl<T: Real> Default for HardwareDb<T> {
    fn default() -> Self {
        Self::builtin()
    }
}

impl<T: Real> HardwareDb<T> {
    /// The built-in database. Values are vendor datasheet numbers, not
    /// measurements; each entry's `source_note` records the consulted figure.
    pub fn builtin() -> Self {
        let f = T::from_f64_lossy;
        let specs = [
            HardwareSpec::new(
                DEFAULT_GPU_ID,
                HardwareKind::Gpu,
                f(250.0),
                f(14_000.0),
                "NVIDIA V100 PCIe 16 GB: 250 W TDP; FP32 peak ~14.1 TFLOPS \
                 (TechPowerUp GPU database), rounded to 14.0 here.",
            ),
            HardwareSpec::new(
                DEFAULT_CPU_ID,
                HardwareKind::Cpu,
                f(45.0),
                f(500.0),
                "Intel Core i7-10750H: 45 W TDP (Intel ARK); f32 peak ~0.5 TFLOPS \
                 estimated from 6 cores with AVX2 FMA at base clock. Low confidence: \
                 vendors publish no official peak-FLOPS figure for this part.",
            ),
            HardwareSpec::new(
                "nvidia-gtx-1080-ti",
                HardwareKind::Gpu,
                f(250.0),
                f(11_340.0),
                "NVIDIA GTX 1080 Ti: 250 W TDP; FP32 peak 11.34 TFLOPS (TechPowerUp).",
            ),
            HardwareSpec::new(
                "nvidia-rtx-2080-ti",
                HardwareKind::Gpu,
                f(250.0),
                f(13_450.0),
                "NVIDIA RTX 2080 Ti: 250 W TDP; FP32 peak 13.45 TFLOPS (TechPowerUp).",
            ),
            HardwareSpec::new(
                "nvidia-titan-xp",
                HardwareKind::Gpu,
                f(250.0),
                f(12_150.0),
                "NVIDIA Titan Xp: 250 W TDP; FP32 peak 12.15 TFLOPS (TechPowerUp).",
            ),
            HardwareSpec::new(
                "nvidia-a100",
                HardwareKind::Gpu,
                f(400.0),
                f(19_500.0),
                "NVIDIA A100 SXM4 40 GB: 400 W TDP; FP32 peak 19.5 TFLOPS (datasheet).",
            ),
        ];
        let mut entries = BTreeMap::new();
        for spec in specs {
            let spec = spec.expect("built-in specs are valid");
            entries.insert(spec.id.to_lowercase(), spec);
        }
        Self {
            entries,
            default_gpu_id: DEFAULT_GPU_ID.into(),
            default_cpu_id: DEFAULT_CPU_ID.into(),
        }
    }

    /// Case-insensitive lookup by id.
    pub fn lookup(&self, id: &str) -> Result<&HardwareSpec<T>, Error> {
        self.entries
            .get(&id.to_lowercase())
            .ok_or_else(|| Error::UnknownHardware { id: id.to_owned() })
    }

    pub fn default_gpu(&self) -> &HardwareSpec<T> {
        self.lookup(&self.default_gpu_id)
            .expect("default GPU always resolves")
    }

    pub fn default_cpu(&self) -> &HardwareSpec<T> {
        self.lookup(&self.default_cpu_id)
            .expect("default CPU always resolves")
    }

    /// Resolves a GPU/CPU id pair, substituting the defaults for absent ids.
    ///
    /// The result records which of the two fell back to a default.
    pub fn resolve_with_defaults(
        &self,
        gpu_id: Option<&str>,
        cpu_id: Option<&str>,
    ) -> Result<ResolvedHardware<'_, T>, Error> {
        let (gpu, gpu_defaulted) = match gpu_id {
            Some(id) => (self.lookup(id)?, false),
            None => (self.default_gpu(), true),
        };
        let (cpu, cpu_defaulted) = match cpu_id {
            Some(id) => (self.lookup(id)?, false),
            None => (self.default_cpu(), true),
        };
        Ok(ResolvedHardware {
            gpu,
            cpu,
            gpu_defaulted,
            cpu_defaulted,
        })
    }

    /// Entries in deterministic (id-sorted) order.
    pub fn entries(&self) -> impl Iterator<Item = &HardwareSpec<T>> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Returns a database where entries from the file replace or extend the
    /// current ones (last write wins). The built-in defaults always remain
    /// resolvable because overrides never remove entries.
    pub fn with_overrides_from_path(&self, path: &Path) -> Result<Self, Error> {
        let content = std::fs::read_to_string(path).map_err(|source| Error::io(path, source))?;
        self.with_overrides_from_str(&content, &path.display().to_string())
    }

    /// Same as [`Self::with_overrides_from_path`] for already-read content.
    /// `source_name` labels diagnostics.
    pub fn with_overrides_from_str(&self, json: &str, source_name: &str) -> Result<Self, Error> {
        let raw: Vec<FileEntry> =
            serde_json::from_str(json).map_err(|err| Error::parse(source_name, err.to_string()))?;

        let mut issues = Vec::new();
        let mut next = self.clone();
        for (index, entry) in raw.into_iter().enumerate() {
            let row = index + 1;
            let issues_before = issues.len();
            if entry.id.trim().is_empty() {
                issues.push(RowIssue::new(Some(row), Some("id"), "must be non-empty"));
            }
            if !entry.power_draw_watts.is_finite() || entry.power_draw_watts <= 0.0 {
                issues.push(RowIssue::new(
                    Some(row),
                    Some("power_draw_watts"),
                    format!("must be > 0 (got {})", entry.power_draw_watts),
                ));
            }
            if !entry.peak_gflops.is_finite() || entry.peak_gflops <= 0.0 {
                issues.push(RowIssue::new(
                    Some(row),
                    Some("peak_gflops"),
                    format!("must be > 0 (got {})", entry.peak_gflops),
                ));
            }
            if issues.len() == issues_before {
                let spec = HardwareSpec {
                    id: entry.id,
                    kind: entry.kind,
                    power_draw_watts: T::from_f64_lossy(entry.power_draw_watts),
                    peak_gflops: T::from_f64_lossy(entry.peak_gflops),
                    source_note: entry.source_note,
                };
                next.entries.insert(spec.id.to_lowercase(), spec);
            }
        }
        if issues.is_empty() {
            Ok(next)
        } else {
            Err(Error::Validation(ValidationReport {
                source: source_name.to_owned(),
                issues,
            }))
        }
    }

    /// Serializes the database in the hardware file format. Deterministic:
    /// entries in id order, stable field order, LF endings.
    pub fn to_json_string(&self) -> String {
        let entries: Vec<FileEntry> = self.entries.values().map(FileEntry::from).collect();
        let mut out = serde_json::to_string_pretty(&entries).expect("entries serialize");
        out.push('\n');
        out
    }
}
