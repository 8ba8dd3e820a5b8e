//! Report data in figure-ready form: search-cost scatter rows, lifetime
//! tables with human-scale equivalents, and lifetime-vs-trainings series.
//!
//! Rendering is deterministic: rows are assembled in model-name order
//! regardless of registry order, columns are fixed, CO2 values use four
//! significant digits in the human formats (full precision in JSON), and
//! lines end with LF. Identical inputs produce byte-identical output.
//!
//! JSON documents follow `{"kind": "table"|"series", "generated_from":
//! {"source", "format"}, "rows"|"points": [...]}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::emissions::{
    amortized_total, energy_to_co2, lifetime_co2, per_training_co2, search_energy,
    trainings_from_citations,
};
use crate::equivalency::{co2_to_cars, co2_to_homes};
use crate::error::Error;
use crate::registry::{effective_schedule, ModelRecord, Provenance, Registry};
use crate::{Co2Estimate, EmissionFactors, EquivalencyFactors, HardwareDb};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Csv,
    Json,
    Markdown,
}

/// One model's entry in the search-cost scatter (accuracy vs complexity vs
/// one-time search CO2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterRow {
    pub name: String,
    pub top1: Option<f64>,
    pub gflops: f64,
    pub search_co2_kg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterReport {
    pub rows: Vec<ScatterRow>,
    /// One notice per skipped record (no search cost on file).
    pub notices: Vec<String>,
}

/// One model's lifetime accounting row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub top1: Option<f64>,
    pub gflops: f64,
    pub search_co2_kg: Option<f64>,
    pub per_training_co2_kg: f64,
    pub n_trainings: Option<u64>,
    pub lifetime_co2_kg: Option<f64>,
    pub cars: Option<f64>,
    pub homes: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub n_trainings: u64,
    pub co2_kg: f64,
}

/// Cumulative CO2 as a function of training count. `x` strictly increasing,
/// `y` non-decreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<SeriesPoint>,
}

fn records_by_name(registry: &Registry) -> Vec<&ModelRecord> {
    let mut records: Vec<&ModelRecord> = registry.records.iter().collect();
    records.sort_by(|a, b| a.name.cmp(&b.name));
    records
}

fn search_co2_for(
    record: &ModelRecord,
    db: &HardwareDb,
    factors: &EmissionFactors,
) -> Result<Option<Co2Estimate>, Error> {
    let Some(hours) = record.search_gpu_hours else {
        return Ok(None);
    };
    let resolved = db.resolve_with_defaults(record.gpu_id.as_deref(), record.cpu_id.as_deref())?;
    let energy = search_energy(
        hours,
        resolved.gpu.power_draw_watts,
        resolved.cpu.power_draw_watts,
        factors,
    )?;
    Ok(Some(energy_to_co2(energy, factors)))
}

fn per_training_for(
    record: &ModelRecord,
    db: &HardwareDb,
    factors: &EmissionFactors,
) -> Result<Co2Estimate, Error> {
    let resolved = db.resolve_with_defaults(record.gpu_id.as_deref(), record.cpu_id.as_deref())?;
    let schedule = effective_schedule(record);
    per_training_co2(
        record.flops(),
        resolved.gpu,
        resolved.cpu,
        &schedule,
        factors,
    )
}

/// Search-cost scatter: one row per record that has a search cost on file;
/// the rest are skipped with a notice. An unknown hardware id is an error,
/// not a skip.
pub fn search_scatter(
    registry: &Registry,
    db: &HardwareDb,
    factors: &EmissionFactors,
) -> Result<ScatterReport, Error> {
    let mut rows = Vec::new();
    let mut notices = Vec::new();
    for record in records_by_name(registry) {
        match search_co2_for(record, db, factors)? {
            Some(co2) => rows.push(ScatterRow {
                name: record.name.clone(),
                top1: record.top1,
                gflops: record.gflops,
                search_co2_kg: co2.kg,
            }),
            None => notices.push(format!(
                "skipped `{}`: no search_gpu_hours on file",
                record.name
            )),
        }
    }
    Ok(ScatterReport { rows, notices })
}

fn training_grid(n_max: u64, step: u64) -> Result<Vec<u64>, Error> {
    if step == 0 || n_max < step {
        return Err(Error::InvalidRange {
            reason: format!("need n_max >= step > 0, got n_max={n_max}, step={step}"),
        });
    }
    let mut grid: Vec<u64> = (0..=n_max).step_by(step as usize).collect();
    if *grid.last().expect("grid is non-empty") != n_max {
        grid.push(n_max);
    }
    Ok(grid)
}

fn series_for(
    record: &ModelRecord,
    db: &HardwareDb,
    factors: &EmissionFactors,
    n_max: u64,
    step: u64,
    include_search: bool,
    label: String,
) -> Result<Series, Error> {
    let per = per_training_for(record, db, factors)?;
    let search = if include_search {
        search_co2_for(record, db, factors)?.unwrap_or_else(Co2Estimate::zero)
    } else {
        Co2Estimate::zero()
    };
    let points = training_grid(n_max, step)?
        .into_iter()
        .map(|n| SeriesPoint {
            n_trainings: n,
            co2_kg: amortized_total(search, per, n).kg,
        })
        .collect();
    Ok(Series { label, points })
}

/// Lifetime series for one record: cumulative evaluation CO2 at
/// `n = 0, step, 2*step, ..., n_max`, plus the constant search cost when
/// the record has one on file.
pub fn lifetime_series(
    record: &ModelRecord,
    db: &HardwareDb,
    factors: &EmissionFactors,
    n_max: u64,
    step: u64,
) -> Result<Series, Error> {
    series_for(record, db, factors, n_max, step, true, record.name.clone())
}

/// Evaluation-only lifetime series (always through the origin). Emitted
/// alongside [`lifetime_series`] so both readings of "lifetime cost" are
/// visible in one report.
pub fn evaluation_series(
    record: &ModelRecord,
    db: &HardwareDb,
    factors: &EmissionFactors,
    n_max: u64,
    step: u64,
) -> Result<Series, Error> {
    series_for(record, db, factors, n_max, step, false, record.name.clone())
}

/// Both series (eval-only and search-inclusive total) for every record,
/// in name order.
pub fn registry_series(
    registry: &Registry,
    db: &HardwareDb,
    factors: &EmissionFactors,
    n_max: u64,
    step: u64,
) -> Result<Vec<Series>, Error> {
    let mut out = Vec::new();
    for record in records_by_name(registry) {
        out.push(series_for(
            record,
            db,
            factors,
            n_max,
            step,
            false,
            format!("{} eval", record.name),
        )?);
        out.push(series_for(
            record,
            db,
            factors,
            n_max,
            step,
            true,
            format!("{} total", record.name),
        )?);
    }
    Ok(out)
}

fn table_core<F>(
    registry: &Registry,
    db: &HardwareDb,
    factors: &EmissionFactors,
    eq_factors: &EquivalencyFactors,
    n_for: F,
) -> Result<Vec<ReportRow>, Error>
where
    F: Fn(&ModelRecord) -> Option<u64>,
{
    let mut rows = Vec::new();
    for record in records_by_name(registry) {
        let per = per_training_for(record, db, factors)?;
        let search = search_co2_for(record, db, factors)?;
        let n = n_for(record);
        let lifetime = n.map(|n| lifetime_co2(per, n));
        rows.push(ReportRow {
            name: record.name.clone(),
            top1: record.top1,
            gflops: record.gflops,
            search_co2_kg: search.map(|c| c.kg),
            per_training_co2_kg: per.kg,
            n_trainings: n,
            lifetime_co2_kg: lifetime.map(|c| c.kg),
            cars: lifetime.map(|c| co2_to_cars(c, eq_factors)),
            homes: lifetime.map(|c| co2_to_homes(c, eq_factors)),
        });
    }
    Ok(rows)
}

/// Lifetime table with the training count derived from citations
/// (`n = citations x trainings_per_citation`). Records without a citation
/// count keep their per-training cost but have no lifetime columns.
pub fn lifetime_table(
    registry: &Registry,
    db: &HardwareDb,
    factors: &EmissionFactors,
    eq_factors: &EquivalencyFactors,
    trainings_per_citation: u64,
) -> Result<Vec<ReportRow>, Error> {
    table_core(registry, db, factors, eq_factors, |record| {
        record
            .citations
            .map(|citations| trainings_from_citations(citations, trainings_per_citation))
    })
}

/// Lifetime table with one fixed training count for every record.
pub fn lifetime_table_fixed_n(
    registry: &Registry,
    db: &HardwareDb,
    factors: &EmissionFactors,
    eq_factors: &EquivalencyFactors,
    n_trainings: u64,
) -> Result<Vec<ReportRow>, Error> {
    table_core(registry, db, factors, eq_factors, |_| Some(n_trainings))
}

/// Four-significant-digit formatting for human-facing CO2 columns
/// ("326.6"-style).
pub fn format_sig4(value: f64) -> String {
    if value == 0.0 {
        return "0.000".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if magnitude >= 4 {
        let scale = 10f64.powi(magnitude - 3);
        format!("{:.0}", (value / scale).round() * scale)
    } else {
        let decimals = (3 - magnitude).max(0) as usize;
        format!("{value:.decimals$}")
    }
}

fn fmt_opt_sig4(value: Option<f64>) -> String {
    value.map(format_sig4).unwrap_or_default()
}

fn fmt_opt<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

const TABLE_COLUMNS: [&str; 9] = [
    "name",
    "top1",
    "gflops",
    "search_co2_kg",
    "per_training_co2_kg",
    "n_trainings",
    "lifetime_co2_kg",
    "cars",
    "homes",
];

const SCATTER_COLUMNS: [&str; 4] = ["name", "top1", "gflops", "search_co2_kg"];

fn table_cells(row: &ReportRow) -> Vec<String> {
    vec![
        row.name.clone(),
        fmt_opt(&row.top1),
        row.gflops.to_string(),
        fmt_opt_sig4(row.search_co2_kg),
        format_sig4(row.per_training_co2_kg),
        fmt_opt(&row.n_trainings),
        fmt_opt_sig4(row.lifetime_co2_kg),
        fmt_opt_sig4(row.cars),
        fmt_opt_sig4(row.homes),
    ]
}

fn scatter_cells(row: &ScatterRow) -> Vec<String> {
    vec![
        row.name.clone(),
        fmt_opt(&row.top1),
        row.gflops.to_string(),
        format_sig4(row.search_co2_kg),
    ]
}

fn render_csv(columns: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(columns).expect("header writes");
    for cells in rows {
        writer.write_record(&cells).expect("row writes");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("valid utf-8")
}

fn render_markdown(columns: &[&str], rows: Vec<Vec<String>>) -> String {
    let escape = |cell: &str| cell.replace('|', "\\|");
    let mut out = String::new();
    out.push_str("| ");
    out.push_str(&columns.join(" | "));
    out.push_str(" |\n| ");
    out.push_str(&vec!["---"; columns.len()].join(" | "));
    out.push_str(" |\n");
    for cells in rows {
        out.push_str("| ");
        out.push_str(
            &cells
                .iter()
                .map(|c| escape(c))
                .collect::<Vec<_>>()
                .join(" | "),
        );
        out.push_str(" |\n");
    }
    out
}

#[derive(Serialize)]
struct Document<'a, R: Serialize> {
    kind: &'static str,
    generated_from: &'a Provenance,
    rows: &'a [R],
}

fn render_json<R: Serialize>(kind: &'static str, provenance: &Provenance, rows: &[R]) -> String {
    let doc = Document {
        kind,
        generated_from: provenance,
        rows,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}

/// Renders lifetime-table rows. Deterministic for identical inputs.
pub fn render_table(rows: &[ReportRow], provenance: &Provenance, format: RenderFormat) -> String {
    match format {
        RenderFormat::Csv => render_csv(&TABLE_COLUMNS, rows.iter().map(table_cells).collect()),
        RenderFormat::Markdown => {
            render_markdown(&TABLE_COLUMNS, rows.iter().map(table_cells).collect())
        }
        RenderFormat::Json => render_json("table", provenance, rows),
    }
}

/// Renders scatter rows. Deterministic for identical inputs.
pub fn render_scatter(
    rows: &[ScatterRow],
    provenance: &Provenance,
    format: RenderFormat,
) -> String {
    match format {
        RenderFormat::Csv => render_csv(&SCATTER_COLUMNS, rows.iter().map(scatter_cells).collect()),
        RenderFormat::Markdown => {
            render_markdown(&SCATTER_COLUMNS, rows.iter().map(scatter_cells).collect())
        }
        RenderFormat::Json => render_json("table", provenance, rows),
    }
}

#[derive(Serialize)]
struct SeriesJsonPoint {
    n_trainings: u64,
    co2_kg: BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct SeriesDocument<'a> {
    kind: &'static str,
    generated_from: &'a Provenance,
    points: Vec<SeriesJsonPoint>,
}

/// Renders one or more series sharing the same training-count grid as a
/// wide table (one column per label).
pub fn render_series(
    series: &[Series],
    provenance: &Provenance,
    format: RenderFormat,
) -> Result<String, Error> {
    let grid: Vec<u64> = series
        .first()
        .map(|s| s.points.iter().map(|p| p.n_trainings).collect())
        .unwrap_or_default();
    for s in series {
        let this: Vec<u64> = s.points.iter().map(|p| p.n_trainings).collect();
        if this != grid {
            return Err(Error::InvalidRange {
                reason: format!("series `{}` does not share the common grid", s.label),
            });
        }
    }

    match format {
        RenderFormat::Json => {
            let points = grid
                .iter()
                .enumerate()
                .map(|(i, &n)| SeriesJsonPoint {
                    n_trainings: n,
                    co2_kg: series
                        .iter()
                        .map(|s| (s.label.clone(), s.points[i].co2_kg))
                        .collect(),
                })
                .collect();
            let doc = SeriesDocument {
                kind: "series",
                generated_from: provenance,
                points,
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
            out.push('\n');
            Ok(out)
        }
        RenderFormat::Csv | RenderFormat::Markdown => {
            let mut columns: Vec<&str> = vec!["n_trainings"];
            columns.extend(series.iter().map(|s| s.label.as_str()));
            let rows: Vec<Vec<String>> = grid
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    let mut cells = vec![n.to_string()];
                    cells.extend(series.iter().map(|s| format_sig4(s.points[i].co2_kg)));
                    cells
                })
                .collect();
            Ok(match format {
                RenderFormat::Csv => render_csv(&columns, rows),
                _ => render_markdown(&columns, rows),
            })
        }
    }
}
