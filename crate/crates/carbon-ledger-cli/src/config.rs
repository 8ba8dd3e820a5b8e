//! Configuration: one TOML file plus flag overrides (flags win).
//!
//! The file is looked up from `--config`, then the `CARBON_LEDGER_CONFIG`
//! environment variable; absent both, built-in defaults apply. All keys are
//! optional:
//!
//! ```toml
//! pue = 1.59
//! ef_kg_per_kwh = 0.707
//! tonnes_per_car_year = 4.6028
//! tonnes_per_home_year = 5.9078
//! trainings_per_citation = 50
//! apply_pue_to_eval = false
//! hardware_overrides = "my-hardware.json"
//! ```

use std::path::PathBuf;

use carbon_ledger::emissions::{
    DEFAULT_EF_KG_PER_KWH, DEFAULT_PUE, DEFAULT_TRAININGS_PER_CITATION,
};
use carbon_ledger::equivalency::{DEFAULT_TONNES_PER_CAR_YEAR, DEFAULT_TONNES_PER_HOME_YEAR};
use carbon_ledger::{EmissionFactors, EquivalencyFactors, HardwareDb};
use serde::Deserialize;

use crate::{CliError, GlobalArgs};

pub const CONFIG_ENV_VAR: &str = "CARBON_LEDGER_CONFIG";

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    pue: f64,
    ef_kg_per_kwh: f64,
    tonnes_per_car_year: f64,
    tonnes_per_home_year: f64,
    trainings_per_citation: u64,
    apply_pue_to_eval: bool,
    hardware_overrides: Option<PathBuf>,
}

impl Default for ConfigFile {
    fn default() -> Self {
        Self {
            pue: DEFAULT_PUE,
            ef_kg_per_kwh: DEFAULT_EF_KG_PER_KWH,
            tonnes_per_car_year: DEFAULT_TONNES_PER_CAR_YEAR,
            tonnes_per_home_year: DEFAULT_TONNES_PER_HOME_YEAR,
            trainings_per_citation: DEFAULT_TRAININGS_PER_CITATION,
            apply_pue_to_eval: false,
            hardware_overrides: None,
        }
    }
}

/// Everything a command needs, fully resolved and validated.
#[derive(Debug, Clone)]
pub struct Settings {
    pub factors: EmissionFactors,
    pub eq_factors: EquivalencyFactors,
    pub trainings_per_citation: u64,
    pub db: HardwareDb,
}

pub fn load(globals: &GlobalArgs) -> Result<Settings, CliError> {
    let path = globals
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from));

    let mut file = match &path {
        Some(path) => {
            let content = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            toml::from_str::<ConfigFile>(&content).map_err(|err| CliError::Config {
                path: path.clone(),
                message: err.to_string(),
            })?
        }
        None => ConfigFile::default(),
    };

    // Flags win over the file.
    if let Some(pue) = globals.pue {
        file.pue = pue;
    }
    if let Some(ef) = globals.ef_kg_per_kwh {
        file.ef_kg_per_kwh = ef;
    }
    if let Some(car) = globals.tonnes_per_car_year {
        file.tonnes_per_car_year = car;
    }
    if let Some(home) = globals.tonnes_per_home_year {
        file.tonnes_per_home_year = home;
    }
    if let Some(tpc) = globals.trainings_per_citation {
        file.trainings_per_citation = tpc;
    }
    if let Some(apply) = globals.apply_pue_to_eval {
        file.apply_pue_to_eval = apply;
    }
    if let Some(hardware) = &globals.hardware {
        file.hardware_overrides = Some(hardware.clone());
    }

    let factors = EmissionFactors::new(file.pue, file.ef_kg_per_kwh)?
        .with_apply_pue_to_eval(file.apply_pue_to_eval);
    let eq_factors = EquivalencyFactors::new(file.tonnes_per_car_year, file.tonnes_per_home_year)?;

    let db = HardwareDb::builtin();
    let db = match &file.hardware_overrides {
        Some(path) => db.with_overrides_from_path(path)?,
        None => db,
    };

    Ok(Settings {
        factors,
        eq_factors,
        trainings_per_citation: file.trainings_per_citation,
        db,
    })
}
