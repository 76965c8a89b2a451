//! One-call analysis of a series or a pair, shared by the CLI and the C ABI.

use serde::Serialize;

use crate::detrend::DetrendConfig;
use crate::error::{Error, Result};
use crate::fluct::FluctuationTable;
use crate::grid::{make_scale_grid, QGrid, ScaleGrid, DEFAULT_SCALE_COUNT, MIN_SCALE};
use crate::mfdfa::{mfdfa, MfdfaResult};
use crate::scaling::ScalingFit;
use crate::series::TimeSeries;
use crate::spectrum::{SingularitySpectrum, SpectrumParams};
use crate::xcorr::{run_all, AlgorithmId, XcorrResult};

/// Which analyses to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub mfdfa: bool,
    pub cross: Vec<AlgorithmId>,
}

impl Selection {
    pub fn all() -> Self {
        Self {
            mfdfa: true,
            cross: AlgorithmId::ALL.to_vec(),
        }
    }

    /// Parses a comma list such as `MFDFA,PS,MS` or `all`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut sel = Self {
            mfdfa: false,
            cross: Vec::new(),
        };
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if token.eq_ignore_ascii_case("all") {
                sel = Self::all();
            } else if token.eq_ignore_ascii_case("mfdfa") {
                sel.mfdfa = true;
            } else {
                let id: AlgorithmId = token.parse()?;
                if !sel.cross.contains(&id) {
                    sel.cross.push(id);
                }
            }
        }
        if !sel.mfdfa && sel.cross.is_empty() {
            return Err(Error::Config("empty algorithm list".into()));
        }
        sel.cross.sort();
        Ok(sel)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub scale_min: usize,
    /// Defaults to a quarter of the series length.
    pub scale_max: Option<usize>,
    pub scale_count: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub q_step: f64,
    pub poly_order: usize,
    /// `None` runs everything the number of inputs allows.
    pub selection: Option<Selection>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            scale_min: MIN_SCALE,
            scale_max: None,
            scale_count: DEFAULT_SCALE_COUNT,
            q_min: -10.0,
            q_max: 10.0,
            q_step: 0.25,
            poly_order: 1,
            selection: None,
        }
    }
}

impl AnalysisOptions {
    pub fn scale_grid(&self, len: usize) -> Result<ScaleGrid> {
        let max = self.scale_max.unwrap_or(len / 4);
        make_scale_grid(len, self.scale_min, max, self.scale_count)
    }

    pub fn q_grid(&self) -> Result<QGrid> {
        QGrid::range(self.q_min, self.q_max, self.q_step)
    }

    pub fn detrend(&self) -> DetrendConfig {
        DetrendConfig {
            poly_order: self.poly_order,
        }
    }
}

/// One line of the summary table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub pairs_pct: Option<f64>,
    #[serde(rename = "H")]
    pub h: Option<f64>,
    pub alpha0: Option<f64>,
    #[serde(rename = "W")]
    pub w: Option<f64>,
    pub r: Option<f64>,
    pub low_coverage: bool,
}

impl SummaryRow {
    fn new(
        algorithm: String,
        pairs_pct: Option<f64>,
        params: Option<SpectrumParams>,
        low_coverage: bool,
    ) -> Self {
        Self {
            algorithm,
            pairs_pct,
            h: params.and_then(|p| p.hurst),
            alpha0: params.map(|p| p.alpha0),
            w: params.map(|p| p.width),
            r: params.and_then(|p| p.skew),
            low_coverage,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub scales: ScaleGrid,
    pub qs: QGrid,
    pub config: DetrendConfig,
    pub labels: Vec<String>,
    pub len: usize,
    /// One entry per input series when MFDFA was selected.
    pub mfdfa: Vec<MfdfaResult>,
    pub xcorr: Option<XcorrResult>,
}

/// A named fluctuation table with its fit and spectrum.
#[derive(Debug, Clone, Copy)]
pub struct TableView<'a> {
    pub name: &'a str,
    pub table: &'a FluctuationTable,
    pub fit: &'a ScalingFit,
    pub spectrum: Option<&'a SingularitySpectrum>,
    pub spectrum_error: Option<&'a str>,
}

fn mean_of(values: &[Option<f64>]) -> Option<f64> {
    let defined: Option<Vec<f64>> = values.iter().copied().collect();
    defined
        .filter(|v| !v.is_empty())
        .map(|v| v.iter().sum::<f64>() / v.len() as f64)
}

impl Analysis {
    /// Per-input MFDFA tables (named `MFDFA:<label>`) followed by the cross
    /// algorithms.
    pub fn tables(&self) -> Vec<TableView<'_>> {
        let mfdfa = self.mfdfa.iter().map(|r| TableView {
            name: r.fluctuations.label(),
            table: &r.fluctuations,
            fit: &r.fit,
            spectrum: r.spectrum.as_ref().ok(),
            spectrum_error: r.spectrum.as_ref().err().map(String::as_str),
        });
        let cross = self
            .xcorr
            .iter()
            .flat_map(|x| &x.results)
            .map(|r| TableView {
                name: r.id.name(),
                table: &r.table,
                fit: &r.fit,
                spectrum: r.spectrum.as_ref().ok(),
                spectrum_error: r.spectrum.as_ref().err().map(String::as_str),
            });
        mfdfa.chain(cross).collect()
    }

    /// Rows in the order: MFDFA (averaged over the inputs), then the cross
    /// algorithms in canonical order.
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut rows = Vec::new();
        if !self.mfdfa.is_empty() {
            let params: Vec<Option<SpectrumParams>> =
                self.mfdfa.iter().map(MfdfaResult::params).collect();
            let pick = |f: fn(&SpectrumParams) -> Option<f64>| -> Option<f64> {
                mean_of(
                    &params
                        .iter()
                        .map(|p| p.as_ref().and_then(f))
                        .collect::<Vec<_>>(),
                )
            };
            let name = if self.mfdfa.len() > 1 {
                "MFDFA average"
            } else {
                "MFDFA"
            };
            rows.push(SummaryRow {
                algorithm: name.to_string(),
                pairs_pct: None,
                h: pick(|p| p.hurst),
                alpha0: pick(|p| Some(p.alpha0)),
                w: pick(|p| Some(p.width)),
                r: pick(|p| p.skew),
                low_coverage: false,
            });
        }
        if let Some(x) = &self.xcorr {
            rows.extend(x.results.iter().map(|r| {
                SummaryRow::new(
                    r.id.name().to_string(),
                    Some(r.coverage.percent()),
                    r.params,
                    r.low_coverage(),
                )
            }));
        }
        rows
    }
}

/// Runs MFDFA on each input and the selected cross algorithms on the pair.
pub fn analyze(
    x: &TimeSeries,
    y: Option<&TimeSeries>,
    options: &AnalysisOptions,
) -> Result<Analysis> {
    let selection = match (&options.selection, y) {
        (Some(s), _) => s.clone(),
        (None, Some(_)) => Selection::all(),
        (None, None) => Selection {
            mfdfa: true,
            cross: Vec::new(),
        },
    };
    if !selection.cross.is_empty() && y.is_none() {
        return Err(Error::Config(format!(
            "{} needs a second series",
            selection.cross[0]
        )));
    }
    if let Some(y) = y {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
    }
    let scales = options.scale_grid(x.len())?;
    let qs = options.q_grid()?;
    let config = options.detrend();

    let inputs: Vec<&TimeSeries> = std::iter::once(x).chain(y).collect();
    let mfdfa = if selection.mfdfa {
        inputs
            .iter()
            .map(|s| mfdfa(s, &scales, &qs, config))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let xcorr = match y {
        Some(y) if !selection.cross.is_empty() => {
            Some(run_all(x, y, &scales, &qs, config, &selection.cross)?)
        }
        _ => None,
    };
    Ok(Analysis {
        scales,
        qs,
        config,
        labels: inputs.iter().map(|s| s.label().to_string()).collect(),
        len: x.len(),
        mfdfa,
        xcorr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noise(len: usize, seed: u64) -> TimeSeries {
        let mut s = seed;
        let v = (0..len)
            .map(|_| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        TimeSeries::new(format!("n{seed}"), v).unwrap()
    }

    #[test]
    fn selection_parsing() {
        let s = Selection::parse("ms, MFDFA,ps,PS").unwrap();
        assert!(s.mfdfa);
        assert_eq!(s.cross, vec![AlgorithmId::Ps, AlgorithmId::Ms]);
        assert_eq!(Selection::parse("all").unwrap(), Selection::all());
        assert!(Selection::parse("").is_err());
        assert!(Selection::parse("foo").is_err());
    }

    #[test]
    fn single_input_gives_one_row() {
        let a = analyze(&noise(256, 1), None, &AnalysisOptions::default()).unwrap();
        let rows = a.summary();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].algorithm, "MFDFA");
        assert!(rows[0].pairs_pct.is_none());
    }

    #[test]
    fn cross_without_second_input_rejected() {
        let opts = AnalysisOptions {
            selection: Some(Selection::parse("PS").unwrap()),
            ..Default::default()
        };
        assert!(matches!(
            analyze(&noise(256, 1), None, &opts),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn length_mismatch_rejected() {
        let r = analyze(
            &noise(256, 1),
            Some(&noise(200, 2)),
            &AnalysisOptions::default(),
        );
        assert!(matches!(r, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn pair_rows_in_table_order() {
        let a = analyze(
            &noise(512, 1),
            Some(&noise(512, 2)),
            &AnalysisOptions::default(),
        )
        .unwrap();
        let names: Vec<String> = a.summary().into_iter().map(|r| r.algorithm).collect();
        assert_eq!(
            names,
            [
                "MFDFA average",
                "MFDXA",
                "ABS",
                "MFCCA",
                "PS",
                "MS",
                "PB",
                "MB",
                "PP",
                "PM",
                "MP",
                "MM"
            ]
        );
    }

    #[test]
    fn average_row_is_mean_of_inputs() {
        let (x, y) = (noise(512, 3), noise(512, 4));
        let a = analyze(&x, Some(&y), &AnalysisOptions::default()).unwrap();
        let hx = a.mfdfa[0].params().unwrap().hurst.unwrap();
        let hy = a.mfdfa[1].params().unwrap().hurst.unwrap();
        assert_eq!(a.summary()[0].h, Some((hx + hy) / 2.0));
    }
}
