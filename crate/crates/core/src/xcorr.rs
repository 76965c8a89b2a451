//! Cross-correlation fluctuation functions for a pair of series.
//!
//! All eleven algorithms read the same per-segment [`SignedCovStats`]:
//!
//! * `MFDXA` averages the signed detrended covariances directly and
//!   invalidates cells where a negative covariance meets a fractional power.
//! * `ABS` averages the mean absolute residual product.
//! * `MFCCA` averages `sgn(cov)|cov|^(q/2)` and restores the sign after the
//!   root; a non-positive result is reported but kept out of the regression.
//! * `PS`/`MS` split segments by the sign of their covariance.
//! * `PB`/`MB` split the residual products inside each segment by sign.
//! * `PP`/`PM`/`MP`/`MM` split them by the signs of the two residuals.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::detrend::{segment_bounds, DetrendConfig, Quadrant, SignedCovStats, TrendBasis};
use crate::error::{Error, Result};
use crate::fluct::{q_average, Cell, FluctuationTable, InvalidReason, ScaleInfo};
use crate::grid::{QGrid, ScaleGrid};
use crate::scaling::{fit_scaling, ScalingFit};
use crate::series::{Profile, TimeSeries};
use crate::spectrum::{legendre_transform, spectrum_params, SingularitySpectrum, SpectrumParams};

/// Coverage below this percentage flags a result as unreliable.
pub const LOW_COVERAGE_PCT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AlgorithmId {
    #[serde(rename = "MFDXA")]
    Mfdxa,
    #[serde(rename = "ABS")]
    Abs,
    #[serde(rename = "MFCCA")]
    Mfcca,
    #[serde(rename = "PS")]
    Ps,
    #[serde(rename = "MS")]
    Ms,
    #[serde(rename = "PB")]
    Pb,
    #[serde(rename = "MB")]
    Mb,
    #[serde(rename = "PP")]
    Pp,
    #[serde(rename = "PM")]
    Pm,
    #[serde(rename = "MP")]
    Mp,
    #[serde(rename = "MM")]
    Mm,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 11] = [
        AlgorithmId::Mfdxa,
        AlgorithmId::Abs,
        AlgorithmId::Mfcca,
        AlgorithmId::Ps,
        AlgorithmId::Ms,
        AlgorithmId::Pb,
        AlgorithmId::Mb,
        AlgorithmId::Pp,
        AlgorithmId::Pm,
        AlgorithmId::Mp,
        AlgorithmId::Mm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Mfdxa => "MFDXA",
            AlgorithmId::Abs => "ABS",
            AlgorithmId::Mfcca => "MFCCA",
            AlgorithmId::Ps => "PS",
            AlgorithmId::Ms => "MS",
            AlgorithmId::Pb => "PB",
            AlgorithmId::Mb => "MB",
            AlgorithmId::Pp => "PP",
            AlgorithmId::Pm => "PM",
            AlgorithmId::Mp => "MP",
            AlgorithmId::Mm => "MM",
        }
    }

    /// The algorithm whose criterion is the sign mirror of this one.
    pub fn mirror(self) -> Self {
        match self {
            AlgorithmId::Ps => AlgorithmId::Ms,
            AlgorithmId::Ms => AlgorithmId::Ps,
            AlgorithmId::Pb => AlgorithmId::Mb,
            AlgorithmId::Mb => AlgorithmId::Pb,
            AlgorithmId::Pp => AlgorithmId::Pm,
            AlgorithmId::Pm => AlgorithmId::Pp,
            AlgorithmId::Mp => AlgorithmId::Mm,
            AlgorithmId::Mm => AlgorithmId::Mp,
            other => other,
        }
    }

    fn quadrant(self) -> Option<Quadrant> {
        match self {
            AlgorithmId::Pp => Some(Quadrant::PlusPlus),
            AlgorithmId::Pm => Some(Quadrant::PlusMinus),
            AlgorithmId::Mp => Some(Quadrant::MinusPlus),
            AlgorithmId::Mm => Some(Quadrant::MinusMinus),
            _ => None,
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        let key = match key.as_str() {
            "MCCA" => "MFCCA",
            "DXA" => "MFDXA",
            k => k,
        };
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| Error::Config(format!("unknown algorithm '{s}'")))
    }
}

/// Point pairs captured by an algorithm's criterion, summed over every
/// scale and segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCoverage {
    pub captured: u64,
    pub total: u64,
}

impl PairCoverage {
    pub fn percent(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.captured as f64 / self.total as f64
        }
    }
}

/// Segment statistics for every segment at one scale.
#[derive(Debug, Clone)]
pub struct ScaleStats {
    pub scale: usize,
    pub segments: Vec<SignedCovStats>,
}

/// Detrended covariance of segment `segment` (0-based) at `scale`.
pub fn detrended_covariance(
    x: &Profile,
    y: &Profile,
    scale: usize,
    segment: usize,
    config: DetrendConfig,
) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let bounds = segment_bounds(x.len(), scale)?;
    let range = bounds.get(segment).cloned().ok_or(Error::Segmentation {
        len: x.len(),
        scale,
        reason: "segment index out of range",
    })?;
    let basis = TrendBasis::new(scale, config.poly_order)?;
    let ex = basis.residuals(&x.values()[range.clone()]);
    let ey = basis.residuals(&y.values()[range]);
    Ok(SignedCovStats::from_residuals(&ex, &ey).cov)
}

/// Signed residual-product statistics of every segment at every scale.
pub fn pair_stats(
    x: &Profile,
    y: &Profile,
    scales: &ScaleGrid,
    config: DetrendConfig,
) -> Result<Vec<ScaleStats>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let (mut ex, mut ey) = (Vec::new(), Vec::new());
    scales
        .scales()
        .iter()
        .map(|&scale| {
            let bounds = segment_bounds(x.len(), scale)?;
            let basis = TrendBasis::new(scale, config.poly_order)?;
            let segments = bounds
                .into_iter()
                .map(|r| {
                    basis.residuals_into(&x.values()[r.clone()], &mut ex);
                    basis.residuals_into(&y.values()[r], &mut ey);
                    SignedCovStats::from_residuals(&ex, &ey)
                })
                .collect();
            Ok(ScaleStats { scale, segments })
        })
        .collect()
}

enum Moment {
    Zero,
    /// Sign and `ln |mean|`.
    Signed(f64, f64),
}

/// Mean of `s(v) |v|^(q/2)` where `s` is `sgn(v)` when `signed`, else 1.
/// Zero values are skipped for `q < 0`. Computed with a log-space shift.
fn signed_moment(values: &[f64], q: f64, signed: bool) -> Option<Moment> {
    let half = 0.5 * q;
    let terms: Vec<(f64, f64)> = values
        .iter()
        .filter(|v| q > 0.0 || **v != 0.0)
        .map(|&v| {
            let sign = if signed && v < 0.0 { -1.0 } else { 1.0 };
            (sign, half * v.abs().ln())
        })
        .collect();
    if terms.is_empty() {
        return None;
    }
    let peak = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return Some(Moment::Zero);
    }
    let sum: f64 = terms.iter().map(|(s, l)| s * (l - peak).exp()).sum();
    if sum == 0.0 {
        return Some(Moment::Zero);
    }
    let mean = sum / terms.len() as f64;
    Some(Moment::Signed(mean.signum(), mean.abs().ln() + peak))
}

fn has_negative(values: &[f64]) -> bool {
    values.iter().any(|v| *v < 0.0)
}

/// `{mean cov^(q/2)}^(1/q)` over the segment covariances.
///
/// With any negative covariance the power is only taken when `q/2` is a
/// positive integer; otherwise the cell is invalid ("negative base"). A
/// non-positive mean under an odd `q/2` has no real root and is invalid too.
pub fn fq_mfdxa(covs: &[f64], q: f64) -> Cell {
    if covs.is_empty() {
        return Cell::invalid(InvalidReason::EmptyGroup);
    }
    if !has_negative(covs) {
        return q_average(covs, q);
    }
    let half = 0.5 * q;
    if !(q > 0.0 && half.fract() == 0.0) {
        return Cell::invalid(InvalidReason::NegativeBase);
    }
    let odd = (half as u64) % 2 == 1;
    match signed_moment(covs, q, odd) {
        None => Cell::invalid(InvalidReason::EmptyGroup),
        Some(Moment::Zero) => Cell::invalid(InvalidReason::ZeroSignedSum),
        Some(Moment::Signed(s, _)) if s < 0.0 => Cell::invalid(InvalidReason::NegativeSignedSum),
        Some(Moment::Signed(_, log_mean)) => Cell::valid((log_mean / q).exp()),
    }
}

/// q-order average of the per-segment mean absolute residual products.
pub fn fq_abs(abs_means: &[f64], q: f64) -> Cell {
    q_average(abs_means, q)
}

/// `sgn(S) |S|^(1/q)` with `S = mean sgn(cov)|cov|^(q/2)`.
///
/// A negative result keeps its value but is marked invalid, so the
/// regression skips it.
pub fn fq_mfcca(covs: &[f64], q: f64) -> Cell {
    if covs.is_empty() {
        return Cell::invalid(InvalidReason::EmptyGroup);
    }
    if !has_negative(covs) {
        return q_average(covs, q);
    }
    if q == 0.0 {
        return Cell::invalid(InvalidReason::NegativeBase);
    }
    match signed_moment(covs, q, true) {
        None => Cell::invalid(InvalidReason::EmptyGroup),
        Some(Moment::Zero) => Cell {
            value: 0.0,
            invalid: Some(InvalidReason::ZeroSignedSum),
        },
        Some(Moment::Signed(sign, log_mean)) => {
            let value = sign * (log_mean / q).exp();
            if value > 0.0 {
                Cell::valid(value)
            } else {
                Cell {
                    value,
                    invalid: Some(InvalidReason::NegativeSignedSum),
                }
            }
        }
    }
}

/// Result of a two-way split of the segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCells {
    pub plus: Cell,
    pub minus: Cell,
    pub plus_segments: usize,
    pub minus_segments: usize,
}

fn split_covs(covs: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let plus = covs.iter().copied().filter(|c| *c >= 0.0).collect();
    let minus = covs.iter().filter(|c| **c < 0.0).map(|c| -c).collect();
    (plus, minus)
}

/// Segments with non-negative covariance (PS) and, sign-flipped, the
/// negative ones (MS), each averaged on its own.
pub fn fq_ps_ms(covs: &[f64], q: f64) -> SplitCells {
    let (plus, minus) = split_covs(covs);
    SplitCells {
        plus: q_average(&plus, q),
        minus: q_average(&minus, q),
        plus_segments: plus.len(),
        minus_segments: minus.len(),
    }
}

/// Per-segment mean positive product (PB) and sign-flipped mean negative
/// product (MB). Segments without products of a sign are left out of that
/// side.
pub fn fq_pb_mb(stats: &[SignedCovStats], q: f64) -> SplitCells {
    let plus: Vec<f64> = stats.iter().filter_map(SignedCovStats::plus_mean).collect();
    let minus: Vec<f64> = stats
        .iter()
        .filter_map(SignedCovStats::minus_mean)
        .collect();
    SplitCells {
        plus: q_average(&plus, q),
        minus: q_average(&minus, q),
        plus_segments: plus.len(),
        minus_segments: minus.len(),
    }
}

/// PP, PM, MP, MM cells in that order.
pub fn fq_quadrants(stats: &[SignedCovStats], q: f64) -> [Cell; 4] {
    Quadrant::ALL.map(|quad| {
        let values: Vec<f64> = stats.iter().filter_map(|s| s.quadrant_mean(quad)).collect();
        q_average(&values, q)
    })
}

/// What an algorithm averages at one scale, and the pairs it captures.
struct GroupRow {
    values: Vec<f64>,
    captured: u64,
}

fn group_row(id: AlgorithmId, stats: &[SignedCovStats]) -> GroupRow {
    let all_pairs: u64 = stats.iter().map(|s| s.n as u64).sum();
    match id {
        AlgorithmId::Mfdxa | AlgorithmId::Mfcca => GroupRow {
            values: stats.iter().map(|s| s.cov).collect(),
            captured: all_pairs,
        },
        AlgorithmId::Abs => GroupRow {
            values: stats.iter().map(|s| s.abs_mean).collect(),
            captured: all_pairs,
        },
        AlgorithmId::Ps => GroupRow {
            values: stats
                .iter()
                .filter(|s| s.cov >= 0.0)
                .map(|s| s.cov)
                .collect(),
            captured: stats
                .iter()
                .filter(|s| s.cov >= 0.0)
                .map(|s| s.n as u64)
                .sum(),
        },
        AlgorithmId::Ms => GroupRow {
            values: stats
                .iter()
                .filter(|s| s.cov < 0.0)
                .map(|s| -s.cov)
                .collect(),
            captured: stats
                .iter()
                .filter(|s| s.cov < 0.0)
                .map(|s| s.n as u64)
                .sum(),
        },
        AlgorithmId::Pb => GroupRow {
            values: stats.iter().filter_map(SignedCovStats::plus_mean).collect(),
            captured: stats.iter().map(|s| s.n_plus as u64).sum(),
        },
        AlgorithmId::Mb => GroupRow {
            values: stats
                .iter()
                .filter_map(SignedCovStats::minus_mean)
                .collect(),
            captured: stats.iter().map(|s| s.n_minus as u64).sum(),
        },
        AlgorithmId::Pp | AlgorithmId::Pm | AlgorithmId::Mp | AlgorithmId::Mm => {
            let quad = id.quadrant().expect("quadrant algorithm");
            GroupRow {
                values: stats.iter().filter_map(|s| s.quadrant_mean(quad)).collect(),
                captured: stats
                    .iter()
                    .map(|s| s.quad_count[quad as usize] as u64)
                    .sum(),
            }
        }
    }
}

fn cell_for(id: AlgorithmId, values: &[f64], q: f64) -> Cell {
    match id {
        AlgorithmId::Mfdxa => fq_mfdxa(values, q),
        AlgorithmId::Mfcca => fq_mfcca(values, q),
        _ => q_average(values, q),
    }
}

/// Output of one algorithm.
#[derive(Debug, Clone)]
pub struct AlgorithmResult {
    pub id: AlgorithmId,
    pub table: FluctuationTable,
    pub fit: ScalingFit,
    pub spectrum: std::result::Result<SingularitySpectrum, String>,
    pub params: Option<SpectrumParams>,
    pub coverage: PairCoverage,
}

impl AlgorithmResult {
    pub fn low_coverage(&self) -> bool {
        self.coverage.percent() < LOW_COVERAGE_PCT
    }
}

#[derive(Debug, Clone)]
pub struct XcorrResult {
    pub results: Vec<AlgorithmResult>,
}

impl XcorrResult {
    pub fn get(&self, id: AlgorithmId) -> Option<&AlgorithmResult> {
        self.results.iter().find(|r| r.id == id)
    }
}

/// Evaluates one algorithm over precomputed segment statistics.
pub fn evaluate(id: AlgorithmId, stats: &[ScaleStats], qs: &QGrid) -> AlgorithmResult {
    let mut infos = Vec::with_capacity(stats.len());
    let mut cells = Vec::with_capacity(stats.len() * qs.len());
    let mut coverage = PairCoverage {
        captured: 0,
        total: 0,
    };
    for scale in stats {
        let row = group_row(id, &scale.segments);
        coverage.captured += row.captured;
        coverage.total += scale.segments.iter().map(|s| s.n as u64).sum::<u64>();
        infos.push(ScaleInfo {
            scale: scale.scale,
            segments: scale.segments.len(),
            used_segments: row.values.len(),
            zero_segments: row.values.iter().filter(|v| **v == 0.0).count(),
        });
        cells.extend(qs.values().iter().map(|&q| cell_for(id, &row.values, q)));
    }
    let table = FluctuationTable::new(id.name(), infos, qs.values().to_vec(), cells);
    let fit = fit_scaling(&table);
    let spectrum = if fit.any_defined() {
        legendre_transform(&fit).map_err(|e| e.to_string())
    } else {
        Err("no q has enough valid scales".to_string())
    };
    let params = spectrum
        .as_ref()
        .ok()
        .and_then(|s| spectrum_params(s, fit.h_at(2.0)).ok());
    AlgorithmResult {
        id,
        table,
        fit,
        spectrum,
        params,
        coverage,
    }
}

/// Runs the requested algorithms (in canonical order, duplicates ignored)
/// on a pair of equal-length series.
pub fn run_all(
    x: &TimeSeries,
    y: &TimeSeries,
    scales: &ScaleGrid,
    qs: &QGrid,
    config: DetrendConfig,
    algorithms: &[AlgorithmId],
) -> Result<XcorrResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    ScaleGrid::from_scales(x.len(), scales.scales().to_vec())?;
    let stats = pair_stats(&x.profile(), &y.profile(), scales, config)?;
    let results = AlgorithmId::ALL
        .into_iter()
        .filter(|id| algorithms.contains(id))
        .map(|id| evaluate(id, &stats, qs))
        .collect();
    Ok(XcorrResult { results })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(pairs: &[(&[f64], &[f64])]) -> Vec<SignedCovStats> {
        pairs
            .iter()
            .map(|(x, y)| SignedCovStats::from_residuals(x, y))
            .collect()
    }

    #[test]
    fn mfdxa_arithmetic() {
        assert!((fq_mfdxa(&[4.0, 4.0], 2.0).value - 2.0).abs() < 1e-15);
        assert_eq!(
            fq_mfdxa(&[4.0, -1.0], 3.0).invalid,
            Some(InvalidReason::NegativeBase)
        );
        assert_eq!(
            fq_mfdxa(&[4.0, -1.0], -2.0).invalid,
            Some(InvalidReason::NegativeBase)
        );
        assert_eq!(
            fq_mfdxa(&[4.0, -1.0], 0.0).invalid,
            Some(InvalidReason::NegativeBase)
        );
        assert!(fq_mfdxa(&[], 2.0).invalid == Some(InvalidReason::EmptyGroup));
    }

    #[test]
    fn mfdxa_integer_powers_of_negative_covariance() {
        // q = 2: mean(4, -1) = 1.5
        let c = fq_mfdxa(&[4.0, -1.0], 2.0);
        assert!((c.value - 1.5f64.sqrt()).abs() < 1e-15 && c.is_valid());
        // q = 4: mean(16, 1) = 8.5
        let c = fq_mfdxa(&[4.0, -1.0], 4.0);
        assert!((c.value - 8.5f64.powf(0.25)).abs() < 1e-15 && c.is_valid());
        // q = 2 with a negative mean
        assert_eq!(
            fq_mfdxa(&[1.0, -4.0], 2.0).invalid,
            Some(InvalidReason::NegativeSignedSum)
        );
        assert_eq!(
            fq_mfdxa(&[1.0, -1.0], 2.0).invalid,
            Some(InvalidReason::ZeroSignedSum)
        );
    }

    #[test]
    fn mfcca_signed_root() {
        let c = fq_mfcca(&[-4.0, -4.0], 2.0);
        assert!((c.value + 2.0).abs() < 1e-15);
        assert_eq!(c.invalid, Some(InvalidReason::NegativeSignedSum));
        let c = fq_mfcca(&[9.0, -1.0], 1.0);
        // S = (3 - 1) / 2 = 1
        assert!((c.value - 1.0).abs() < 1e-15 && c.is_valid());
        assert_eq!(
            fq_mfcca(&[1.0, -1.0], 2.0).invalid,
            Some(InvalidReason::ZeroSignedSum)
        );
    }

    #[test]
    fn positive_covariances_agree_bitwise() {
        let covs = [0.3, 1.2, 0.07, 2.5, 0.0];
        for k in -40..=40 {
            let q = k as f64 * 0.25;
            let a = fq_mfdxa(&covs, q);
            let b = fq_mfcca(&covs, q);
            let c = fq_ps_ms(&covs, q).plus;
            assert_eq!(a.value.to_bits(), b.value.to_bits());
            assert_eq!(a.value.to_bits(), c.value.to_bits());
        }
    }

    #[test]
    fn abs_ignores_sign() {
        let a = fq_abs(&[1.0, 4.0], 2.0);
        assert!((a.value - 2.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ps_ms_single_segment_groups() {
        let s = fq_ps_ms(&[2.0, -2.0], 2.0);
        assert!((s.plus.value - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.minus.value - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!((s.plus_segments, s.minus_segments), (1, 1));
        let s = fq_ps_ms(&[2.0, 3.0], 2.0);
        assert_eq!(s.minus.invalid, Some(InvalidReason::EmptyGroup));
    }

    #[test]
    fn pb_mb_groups() {
        let st = stats(&[
            (&[1.0, 1.0, 2.0, 1.0], &[1.0, 1.0, 2.0, -1.0]),
            (&[1.0, 2.0], &[1.0, 2.0]),
        ]);
        let s = fq_pb_mb(&st, 2.0);
        // PB segment values 2 and 2.5; MB only from the first segment
        assert!((s.plus.value - 2.25f64.sqrt()).abs() < 1e-15);
        assert!((s.minus.value - 1.0).abs() < 1e-15);
        assert_eq!((s.plus_segments, s.minus_segments), (2, 1));
    }

    #[test]
    fn quadrant_cells() {
        let st = stats(&[(&[1.0, 2.0, -1.0, -3.0], &[2.0, -1.0, 4.0, -1.0])]);
        let [pp, pm, mp, mm] = fq_quadrants(&st, 2.0);
        assert!((pp.value - 2f64.sqrt()).abs() < 1e-15);
        assert!((pm.value - 2f64.sqrt()).abs() < 1e-15);
        assert!((mp.value - 2.0).abs() < 1e-15);
        assert!((mm.value - 3f64.sqrt()).abs() < 1e-15);
        let st = stats(&[(&[1.0, 2.0], &[1.0, 2.0])]);
        let cells = fq_quadrants(&st, 2.0);
        assert_eq!(cells[1].invalid, Some(InvalidReason::EmptyGroup));
        assert_eq!(cells[3].invalid, Some(InvalidReason::EmptyGroup));
    }

    #[test]
    fn parse_names() {
        assert_eq!("mf-dxa".parse::<AlgorithmId>().unwrap(), AlgorithmId::Mfdxa);
        assert_eq!("MCCA".parse::<AlgorithmId>().unwrap(), AlgorithmId::Mfcca);
        assert_eq!("pm".parse::<AlgorithmId>().unwrap(), AlgorithmId::Pm);
        assert!("XX".parse::<AlgorithmId>().is_err());
        for id in AlgorithmId::ALL {
            assert_eq!(id.name().parse::<AlgorithmId>().unwrap(), id);
            assert_eq!(id.mirror().mirror(), id);
        }
    }

    #[test]
    fn covariance_of_series_with_itself_and_negation() {
        let x: Vec<f64> = (0..64).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
        let s = TimeSeries::new("x", x).unwrap();
        let p = s.profile();
        let n = s.negated().profile();
        let cfg = DetrendConfig::default();
        for seg in 0..4 {
            let var = crate::mfdfa::detrended_variance(&p, 16, seg, cfg).unwrap();
            assert_eq!(detrended_covariance(&p, &p, 16, seg, cfg).unwrap(), var);
            assert_eq!(detrended_covariance(&p, &n, 16, seg, cfg).unwrap(), -var);
        }
    }
}
