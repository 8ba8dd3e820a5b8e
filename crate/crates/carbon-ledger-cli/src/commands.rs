//! Command implementations. All human-facing output states its units
//! inline; report data goes to `--output` (or stdout) and diagnostics to
//! stderr.

use std::path::Path;

use carbon_ledger::emissions::{energy_to_co2, eval_energy, search_energy, EnergyEstimate};
use carbon_ledger::equivalency::{co2_to_cars, co2_to_homes};
use carbon_ledger::registry::{ingest, Registry, RegistryFormat};
use carbon_ledger::report::{
    format_sig4, lifetime_table, lifetime_table_fixed_n, registry_series, render_scatter,
    render_series, render_table, search_scatter,
};
use carbon_ledger::{Co2Estimate, TrainingSchedule};

use crate::config::Settings;
use crate::{CliError, GlobalArgs, RegistryFormatArg, ReportKind};

fn resolve_format(
    path: &Path,
    explicit: Option<RegistryFormatArg>,
) -> Result<RegistryFormat, CliError> {
    if let Some(format) = explicit {
        return Ok(format.into());
    }
    RegistryFormat::from_path(path).ok_or_else(|| {
        CliError::Usage(format!(
            "cannot infer registry format of `{}`; pass --registry-format csv|json",
            path.display()
        ))
    })
}

fn load_registry(path: &Path, explicit: Option<RegistryFormatArg>) -> Result<Registry, CliError> {
    let format = resolve_format(path, explicit)?;
    let registry = ingest(path, format)?;
    for warning in &registry.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(registry)
}

fn emit(globals: &GlobalArgs, content: &str) -> Result<(), CliError> {
    match &globals.output {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn default_tag(defaulted: bool) -> &'static str {
    if defaulted {
        " [default]"
    } else {
        ""
    }
}

pub fn estimate_search(
    settings: &Settings,
    gpu_hours: f64,
    gpu: Option<&str>,
    cpu: Option<&str>,
) -> Result<(), CliError> {
    let resolved = settings.db.resolve_with_defaults(gpu, cpu)?;
    let energy = search_energy(
        gpu_hours,
        resolved.gpu.power_draw_watts,
        resolved.cpu.power_draw_watts,
        &settings.factors,
    )?;
    let co2 = energy_to_co2(energy, &settings.factors);
    println!(
        "gpu: {} ({} W){}",
        resolved.gpu.id,
        resolved.gpu.power_draw_watts,
        default_tag(resolved.gpu_defaulted)
    );
    println!(
        "cpu: {} ({} W){}",
        resolved.cpu.id,
        resolved.cpu.power_draw_watts,
        default_tag(resolved.cpu_defaulted)
    );
    println!("search energy: {:.3} Wh", energy.wh);
    println!("co2 emissions: {:.6} kg", co2.kg);
    Ok(())
}

pub fn estimate_eval(
    settings: &Settings,
    gflops: f64,
    gpu_hours: Option<f64>,
    schedule: Option<(u32, f64)>,
    gpu: Option<&str>,
    cpu: Option<&str>,
) -> Result<(), CliError> {
    let resolved = settings.db.resolve_with_defaults(gpu, cpu)?;
    let hours = match (gpu_hours, schedule) {
        (Some(hours), _) => hours,
        (None, Some((epochs, minutes))) => TrainingSchedule::new(epochs, minutes)?.gpu_hours(),
        (None, None) => {
            return Err(CliError::Usage(
                "pass --gpu-hours or --epochs/--min-per-epoch".into(),
            ))
        }
    };
    let mut energy = eval_energy(
        gflops * 1e9,
        resolved.gpu.watt_per_flops(),
        resolved.cpu.watt_per_flops(),
        hours,
    )?;
    if settings.factors.apply_pue_to_eval {
        energy = EnergyEstimate::from_wh(settings.factors.pue * energy.wh);
    }
    let co2 = energy_to_co2(energy, &settings.factors);
    println!(
        "gpu: {} (watt-to-FLOPS {:e}){}",
        resolved.gpu.id,
        resolved.gpu.watt_per_flops(),
        default_tag(resolved.gpu_defaulted)
    );
    println!(
        "cpu: {} (watt-to-FLOPS {:e}){}",
        resolved.cpu.id,
        resolved.cpu.watt_per_flops(),
        default_tag(resolved.cpu_defaulted)
    );
    println!("training duration: {hours:.4} GPU hours");
    println!("evaluation energy: {:.6} Wh", energy.wh);
    println!("co2 emissions: {:.9} kg", co2.kg);
    Ok(())
}

pub fn lifetime(
    settings: &Settings,
    globals: &GlobalArgs,
    registry_path: &Path,
    n: Option<u64>,
    registry_format: Option<RegistryFormatArg>,
) -> Result<(), CliError> {
    let registry = load_registry(registry_path, registry_format)?;
    let rows = match n {
        Some(n) => lifetime_table_fixed_n(
            &registry,
            &settings.db,
            &settings.factors,
            &settings.eq_factors,
            n,
        )?,
        // --from-citations (the clap group guarantees one of the two).
        None => lifetime_table(
            &registry,
            &settings.db,
            &settings.factors,
            &settings.eq_factors,
            settings.trainings_per_citation,
        )?,
    };
    let content = render_table(&rows, &registry.provenance, globals.format.into());
    emit(globals, &content)
}

pub fn equivalents(settings: &Settings, co2_kg: f64) -> Result<(), CliError> {
    if !co2_kg.is_finite() || co2_kg < 0.0 {
        return Err(CliError::Usage(format!(
            "CO2 mass must be a non-negative number of kilograms, got {co2_kg}"
        )));
    }
    let co2 = Co2Estimate::from_kg(co2_kg);
    println!("co2: {co2_kg} kg ({} t)", format_sig4(co2.tonnes()));
    println!(
        "cars driven for one year: {}",
        format_sig4(co2_to_cars(co2, &settings.eq_factors))
    );
    println!(
        "homes powered for one year: {}",
        format_sig4(co2_to_homes(co2, &settings.eq_factors))
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn report(
    settings: &Settings,
    globals: &GlobalArgs,
    registry_path: &Path,
    kind: ReportKind,
    n: Option<u64>,
    n_max: u64,
    step: u64,
    registry_format: Option<RegistryFormatArg>,
) -> Result<(), CliError> {
    let registry = load_registry(registry_path, registry_format)?;
    let format = globals.format.into();
    let content = match kind {
        ReportKind::Scatter => {
            let scatter = search_scatter(&registry, &settings.db, &settings.factors)?;
            for notice in &scatter.notices {
                eprintln!("notice: {notice}");
            }
            render_scatter(&scatter.rows, &registry.provenance, format)
        }
        ReportKind::Table => {
            let rows = match n {
                Some(n) => lifetime_table_fixed_n(
                    &registry,
                    &settings.db,
                    &settings.factors,
                    &settings.eq_factors,
                    n,
                )?,
                None => lifetime_table(
                    &registry,
                    &settings.db,
                    &settings.factors,
                    &settings.eq_factors,
                    settings.trainings_per_citation,
                )?,
            };
            render_table(&rows, &registry.provenance, format)
        }
        ReportKind::Series => {
            let series = registry_series(&registry, &settings.db, &settings.factors, n_max, step)?;
            render_series(&series, &registry.provenance, format)?
        }
    };
    emit(globals, &content)
}

pub fn ingest_summary(
    path: &Path,
    registry_format: Option<RegistryFormatArg>,
) -> Result<(), CliError> {
    let registry = load_registry(path, registry_format)?;
    println!("{} records, 0 errors", registry.len());
    Ok(())
}

pub fn hardware_list(settings: &Settings) -> Result<(), CliError> {
    let default_gpu = settings.db.default_gpu().id.clone();
    let default_cpu = settings.db.default_cpu().id.clone();
    println!(
        "{id:<22} {kind:<5} {power:>9} {peak:>12}  source",
        id = "id",
        kind = "kind",
        power = "power_w",
        peak = "peak_gflops",
    );
    for spec in settings.db.entries() {
        let mut note = spec.source_note.clone();
        if spec.id == default_gpu {
            note = format!("[default gpu] {note}");
        } else if spec.id == default_cpu {
            note = format!("[default cpu] {note}");
        }
        println!(
            "{:<22} {:<5} {:>9} {:>12}  {}",
            spec.id,
            spec.kind.as_str(),
            spec.power_draw_watts,
            spec.peak_gflops,
            note
        );
    }
    Ok(())
}
