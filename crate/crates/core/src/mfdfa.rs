//! Single-series multifractal detrended fluctuation analysis.

use crate::detrend::{segment_bounds, DetrendConfig, TrendBasis};
use crate::error::{Error, Result};
use crate::fluct::FluctuationTable;
use crate::grid::{QGrid, ScaleGrid};
use crate::scaling::{fit_scaling, ScalingFit};
use crate::series::{Profile, TimeSeries};
use crate::spectrum::{legendre_transform, spectrum_params, SingularitySpectrum, SpectrumParams};

#[derive(Debug, Clone)]
pub struct MfdfaResult {
    pub fluctuations: FluctuationTable,
    pub fit: ScalingFit,
    /// `Err` carries why no spectrum could be formed.
    pub spectrum: std::result::Result<SingularitySpectrum, String>,
}

impl MfdfaResult {
    pub fn params(&self) -> Option<SpectrumParams> {
        let spectrum = self.spectrum.as_ref().ok()?;
        spectrum_params(spectrum, self.fit.h_at(2.0)).ok()
    }
}

/// Mean squared residual of segment `segment` (0-based) at `scale`.
pub fn detrended_variance(
    profile: &Profile,
    scale: usize,
    segment: usize,
    config: DetrendConfig,
) -> Result<f64> {
    let bounds = segment_bounds(profile.len(), scale)?;
    let range = bounds.get(segment).cloned().ok_or(Error::Segmentation {
        len: profile.len(),
        scale,
        reason: "segment index out of range",
    })?;
    let basis = TrendBasis::new(scale, config.poly_order)?;
    Ok(mean_square(&basis.residuals(&profile.values()[range])))
}

pub(crate) fn mean_square(residuals: &[f64]) -> f64 {
    residuals.iter().map(|e| e * e).sum::<f64>() / residuals.len() as f64
}

/// Per-segment detrended variances at every scale of the grid.
pub fn segment_variances(
    profile: &Profile,
    scales: &ScaleGrid,
    config: DetrendConfig,
) -> Result<Vec<(usize, usize, Vec<f64>)>> {
    scales
        .scales()
        .iter()
        .map(|&scale| {
            let bounds = segment_bounds(profile.len(), scale)?;
            let basis = TrendBasis::new(scale, config.poly_order)?;
            let mut buf = Vec::with_capacity(scale);
            let vars = bounds
                .iter()
                .map(|r| {
                    basis.residuals_into(&profile.values()[r.clone()], &mut buf);
                    mean_square(&buf)
                })
                .collect();
            Ok((scale, bounds.len(), vars))
        })
        .collect()
}

/// Fluctuation table, scaling fit and spectrum of one series.
///
/// Zero-variance segments are dropped from the `q <= 0` averages; their
/// count per scale is kept in the table's scale info.
pub fn mfdfa(
    series: &TimeSeries,
    scales: &ScaleGrid,
    qs: &QGrid,
    config: DetrendConfig,
) -> Result<MfdfaResult> {
    ScaleGrid::from_scales(series.len(), scales.scales().to_vec())?;
    let profile = series.profile();
    let rows = segment_variances(&profile, scales, config)?;
    let fluctuations = FluctuationTable::from_segment_values(
        format!("MFDFA:{}", series.label()),
        qs.values(),
        &rows,
    );
    Ok(analyse_table(fluctuations))
}

pub(crate) fn analyse_table(fluctuations: FluctuationTable) -> MfdfaResult {
    let fit = fit_scaling(&fluctuations);
    let spectrum = legendre_transform(&fit).map_err(|e| e.to_string());
    MfdfaResult {
        fluctuations,
        fit,
        spectrum,
    }
}
