//! File outputs of a full run.
//!
//! Every number is written with 17 significant digits and nothing depends
//! on wall-clock time or hash order, so identical inputs give identical
//! bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::analysis::{analyze, Analysis, AnalysisOptions, SummaryRow, TableView};
use crate::error::{Error, Result};
use crate::io::{load_inputs, InputSpec, LoadReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
}

impl Default for Formats {
    fn default() -> Self {
        Self {
            csv: true,
            json: true,
        }
    }
}

impl Formats {
    pub fn parse(list: &str) -> Result<Self> {
        let mut f = Self {
            csv: false,
            json: false,
        };
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token.to_ascii_lowercase().as_str() {
                "csv" => f.csv = true,
                "json" => f.json = true,
                _ => return Err(Error::Config(format!("unknown output format '{token}'"))),
            }
        }
        if !(f.csv || f.json) {
            return Err(Error::Config("empty format list".into()));
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: InputSpec,
    pub options: AnalysisOptions,
    pub out_dir: PathBuf,
    pub formats: Formats,
}

#[derive(Debug)]
pub struct RunOutput {
    pub analysis: Analysis,
    pub files: Vec<PathBuf>,
}

/// Shortest text that reads back as the same `f64`, padded to 17
/// significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn json_num(v: Option<f64>) -> Value {
    match v {
        Some(x) if x.is_finite() => {
            Value::Number(fmt_f64(x).parse().expect("formatted float is valid JSON"))
        }
        _ => Value::Null,
    }
}

fn write_file(dir: &Path, name: &str, body: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    files.push(path);
    Ok(())
}

pub fn fluctuations_csv(a: &Analysis) -> String {
    let mut s = String::from("algorithm,scale,q,value,valid,reason\n");
    for TableView { name, table, .. } in a.tables() {
        for (si, info) in table.scale_info().iter().enumerate() {
            for (qi, &q) in table.q().iter().enumerate() {
                let c = table.cell(si, qi);
                let _ = writeln!(
                    s,
                    "{name},{},{},{},{},{}",
                    info.scale,
                    fmt_f64(q),
                    fmt_f64(c.value),
                    c.is_valid(),
                    c.invalid.map(|r| r.as_str()).unwrap_or("")
                );
            }
        }
    }
    s
}

pub fn spectra_csv(a: &Analysis) -> String {
    let mut s = String::from("algorithm,q,h,tau,alpha,f\n");
    for TableView {
        name,
        fit,
        spectrum,
        ..
    } in a.tables()
    {
        for qf in &fit.per_q {
            let point = spectrum.and_then(|sp| sp.points.iter().find(|p| p.q == qf.q));
            let _ = writeln!(
                s,
                "{name},{},{},{},{},{}",
                fmt_f64(qf.q),
                fmt_opt(qf.slope),
                fmt_opt(qf.tau()),
                fmt_opt(point.map(|p| p.alpha)),
                fmt_opt(point.map(|p| p.f)),
            );
        }
    }
    s
}

pub fn summary_json(rows: &[SummaryRow]) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("algorithm".into(), Value::String(r.algorithm.clone()));
            m.insert("pairs_pct".into(), json_num(r.pairs_pct));
            m.insert("H".into(), json_num(r.h));
            m.insert("alpha0".into(), json_num(r.alpha0));
            m.insert("W".into(), json_num(r.w));
            m.insert("r".into(), json_num(r.r));
            m.insert("low_coverage".into(), Value::Bool(r.low_coverage));
            Value::Object(m)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({ "rows": rows })).expect("serializable");
    s.push('\n');
    s
}

/// Fixed-width table for reading; three decimals like a printed table.
pub fn summary_text(rows: &[SummaryRow]) -> String {
    let cell = |v: Option<f64>, digits: usize| {
        v.map(|x| format!("{x:.digits$}"))
            .unwrap_or_else(|| "-".into())
    };
    let mut s = format!(
        "{:<14} {:>9} {:>7} {:>7} {:>7} {:>7}\n",
        "algorithm", "pairs_pct", "H", "alpha0", "W", "r"
    );
    for r in rows {
        let _ = write!(
            s,
            "{:<14} {:>9} {:>7} {:>7} {:>7} {:>7}",
            r.algorithm,
            cell(r.pairs_pct, 1),
            cell(r.h, 3),
            cell(r.alpha0, 3),
            cell(r.w, 3),
            cell(r.r, 3)
        );
        if r.low_coverage {
            s.push_str("  low coverage: interpret with care");
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct AlgorithmDiagnostics {
    algorithm: String,
    pairs_captured: Option<u64>,
    pairs_total: Option<u64>,
    low_coverage: bool,
    invalid_cells: Map<String, Value>,
    regression_exclusions: usize,
    undefined_h: usize,
    spectrum_error: Option<String>,
}

pub fn manifest_json(config: &RunConfig, report: &LoadReport, a: &Analysis) -> String {
    let diags: Vec<AlgorithmDiagnostics> = a
        .tables()
        .into_iter()
        .map(|t| {
            let cov = a
                .xcorr
                .as_ref()
                .and_then(|x| x.results.iter().find(|r| r.id.name() == t.name));
            AlgorithmDiagnostics {
                algorithm: t.name.to_string(),
                pairs_captured: cov.map(|r| r.coverage.captured),
                pairs_total: cov.map(|r| r.coverage.total),
                low_coverage: cov.is_some_and(|r| r.low_coverage()),
                invalid_cells: t
                    .table
                    .invalid_counts()
                    .into_iter()
                    .map(|(r, n)| (r.as_str().to_string(), Value::from(n)))
                    .collect(),
                regression_exclusions: t.fit.total_excluded(),
                undefined_h: t.fit.per_q.iter().filter(|f| f.slope.is_none()).count(),
                spectrum_error: t.spectrum_error.map(str::to_string),
            }
        })
        .collect();
    let opts = &config.options;
    let selection = opts.selection.as_ref().map(|s| {
        let mut v: Vec<String> = s.cross.iter().map(|c| c.name().to_string()).collect();
        if s.mfdfa {
            v.insert(0, "MFDFA".into());
        }
        v
    });
    let manifest = json!({
        "config": {
            "input": config.inputs.input.display().to_string(),
            "input2": config.inputs.input2.as_ref().map(|p| p.display().to_string()),
            "columns": config.inputs.columns,
            "date_column": config.inputs.date_column,
            "returns": if config.inputs.log_returns { "log" } else { "none" },
            "scale_min": opts.scale_min,
            "scale_max": opts.scale_max,
            "scale_count": opts.scale_count,
            "q_min": json_num(Some(opts.q_min)),
            "q_max": json_num(Some(opts.q_max)),
            "q_step": json_num(Some(opts.q_step)),
            "order": opts.poly_order,
            "algorithms": selection,
            "formats": {"csv": config.formats.csv, "json": config.formats.json},
        },
        "load": report,
        "series": {"labels": a.labels, "length": a.len},
        "scales": a.scales.scales(),
        "q": a.qs.values().iter().map(|&q| json_num(Some(q))).collect::<Vec<_>>(),
        "diagnostics": diags,
    });
    let mut s = serde_json::to_string_pretty(&manifest).expect("serializable");
    s.push('\n');
    s
}

/// Loads the inputs, analyses them and writes every output file.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let (series, report) = load_inputs(&config.inputs)?;
    let analysis = analyze(&series[0], series.get(1), &config.options)?;
    fs::create_dir_all(&config.out_dir).map_err(|source| Error::Io {
        path: config.out_dir.clone(),
        source,
    })?;
    let dir = &config.out_dir;
    let rows = analysis.summary();
    let mut files = Vec::new();
    if config.formats.csv {
        write_file(
            dir,
            "fluctuations.csv",
            &fluctuations_csv(&analysis),
            &mut files,
        )?;
        write_file(dir, "spectra.csv", &spectra_csv(&analysis), &mut files)?;
    }
    if config.formats.json {
        write_file(dir, "summary.json", &summary_json(&rows), &mut files)?;
    }
    write_file(dir, "summary.txt", &summary_text(&rows), &mut files)?;
    write_file(
        dir,
        "manifest.json",
        &manifest_json(config, &report, &analysis),
        &mut files,
    )?;
    Ok(RunOutput { analysis, files })
}
