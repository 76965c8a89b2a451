//! Fluctuation-function tables and the q-order averaging shared by every
//! algorithm.

use std::fmt;

use serde::Serialize;

/// Why a cell cannot enter the log-log regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvalidReason {
    /// A negative segment value raised to a non-integer power.
    NegativeBase,
    /// No segment belongs to the group at this scale.
    EmptyGroup,
    /// Signed average is exactly zero.
    ZeroSignedSum,
    /// Signed average is negative; the signed root is still reported.
    NegativeSignedSum,
    /// Every contributing segment value is zero.
    ZeroFluctuation,
}

impl InvalidReason {
    pub fn as_str(self) -> &'static str {
        match self {
            InvalidReason::NegativeBase => "negative_base",
            InvalidReason::EmptyGroup => "empty_group",
            InvalidReason::ZeroSignedSum => "zero_signed_sum",
            InvalidReason::NegativeSignedSum => "negative_signed_sum",
            InvalidReason::ZeroFluctuation => "zero_fluctuation",
        }
    }
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One `F_q(n)` value. `value` is NaN when no number could be formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub value: f64,
    pub invalid: Option<InvalidReason>,
}

impl Cell {
    pub fn valid(value: f64) -> Self {
        Self {
            value,
            invalid: None,
        }
    }

    pub fn invalid(reason: InvalidReason) -> Self {
        Self {
            value: f64::NAN,
            invalid: Some(reason),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.invalid.is_none()
    }
}

/// Per-scale bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScaleInfo {
    pub scale: usize,
    /// `floor(N / n)`.
    pub segments: usize,
    /// Segments contributing to the average for this table.
    pub used_segments: usize,
    /// Contributing segments whose value is exactly zero; they are left
    /// out of the `q <= 0` averages.
    pub zero_segments: usize,
}

/// `F_q(n)` over a scale x q grid, row-major by scale.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationTable {
    label: String,
    scales: Vec<ScaleInfo>,
    q: Vec<f64>,
    cells: Vec<Cell>,
}

impl FluctuationTable {
    pub fn new(
        label: impl Into<String>,
        scales: Vec<ScaleInfo>,
        q: Vec<f64>,
        cells: Vec<Cell>,
    ) -> Self {
        assert_eq!(cells.len(), scales.len() * q.len(), "table shape");
        Self {
            label: label.into(),
            scales,
            q,
            cells,
        }
    }

    /// Builds a table from per-scale segment values using [`q_average`].
    pub fn from_segment_values(
        label: impl Into<String>,
        q: &[f64],
        rows: &[(usize, usize, Vec<f64>)],
    ) -> Self {
        let mut scales = Vec::with_capacity(rows.len());
        let mut cells = Vec::with_capacity(rows.len() * q.len());
        for (scale, segments, values) in rows {
            scales.push(ScaleInfo {
                scale: *scale,
                segments: *segments,
                used_segments: values.len(),
                zero_segments: values.iter().filter(|v| **v == 0.0).count(),
            });
            cells.extend(q.iter().map(|&q| q_average(values, q)));
        }
        Self::new(label, scales, q.to_vec(), cells)
    }

    /// Table whose cells are `f(scale, q)`.
    pub fn from_fn(
        label: impl Into<String>,
        scales: &[usize],
        q: &[f64],
        mut f: impl FnMut(usize, f64) -> Cell,
    ) -> Self {
        let infos = scales
            .iter()
            .map(|&scale| ScaleInfo {
                scale,
                segments: 0,
                used_segments: 0,
                zero_segments: 0,
            })
            .collect();
        let cells = scales
            .iter()
            .flat_map(|&n| q.iter().map(move |&q| (n, q)))
            .map(|(n, q)| f(n, q))
            .collect();
        Self::new(label, infos, q.to_vec(), cells)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn scale_info(&self) -> &[ScaleInfo] {
        &self.scales
    }

    pub fn scales(&self) -> impl Iterator<Item = usize> + '_ {
        self.scales.iter().map(|s| s.scale)
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn cell(&self, scale_idx: usize, q_idx: usize) -> Cell {
        self.cells[scale_idx * self.q.len() + q_idx]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Column of cells for one q, ordered by scale.
    pub fn column(&self, q_idx: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.scales.len()).map(move |s| self.cell(s, q_idx))
    }

    /// Count of invalid cells per reason, in reason order.
    pub fn invalid_counts(&self) -> Vec<(InvalidReason, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for reason in self.cells.iter().filter_map(|c| c.invalid) {
            *counts.entry(reason).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// True when every scale's values are identical bit for bit, ignoring
    /// labels; NaN compares equal to NaN.
    pub fn same_values(&self, other: &Self) -> bool {
        self.q == other.q
            && self.scales.len() == other.scales.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a.invalid == b.invalid && a.value.to_bits() == b.value.to_bits())
    }
}

/// q-order average of non-negative segment values `v` (squared
/// fluctuations): `{mean v^(q/2)}^(1/q)`, or `exp(mean(ln v) / 2)` at `q = 0`.
///
/// Zero values are dropped from the `q <= 0` averages, where they would be
/// infinite. Evaluated in log space so large |q| cannot overflow.
pub fn q_average(values: &[f64], q: f64) -> Cell {
    debug_assert!(values.iter().all(|v| *v >= 0.0));
    if values.is_empty() {
        return Cell::invalid(InvalidReason::EmptyGroup);
    }
    let logs: Vec<f64> = if q > 0.0 {
        values.iter().map(|v| v.ln()).collect()
    } else {
        values
            .iter()
            .filter(|v| **v > 0.0)
            .map(|v| v.ln())
            .collect()
    };
    if logs.is_empty() || logs.iter().all(|l| *l == f64::NEG_INFINITY) {
        return Cell::invalid(InvalidReason::ZeroFluctuation);
    }
    if q == 0.0 {
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        return Cell::valid((0.5 * mean).exp());
    }
    let half = 0.5 * q;
    let peak = logs
        .iter()
        .map(|l| half * l)
        .fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (half * l - peak).exp()).sum();
    let log_mean = peak + (sum / logs.len() as f64).ln();
    Cell::valid((log_mean / q).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_two_is_rms() {
        let c = q_average(&[4.0, 4.0], 2.0);
        assert!((c.value - 2.0).abs() < 1e-15);
        let c = q_average(&[1.0, 9.0], 2.0);
        assert!((c.value - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn q_zero_is_geometric() {
        let c = q_average(&[1.0, 16.0], 0.0);
        assert!((c.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zeros_dropped_for_non_positive_q() {
        let c = q_average(&[0.0, 4.0], -2.0);
        assert!((c.value - 2.0).abs() < 1e-15);
        let c = q_average(&[0.0, 4.0], 2.0);
        assert!((c.value - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            q_average(&[0.0, 0.0], -1.0).invalid,
            Some(InvalidReason::ZeroFluctuation)
        );
        assert_eq!(
            q_average(&[0.0, 0.0], 1.0).invalid,
            Some(InvalidReason::ZeroFluctuation)
        );
        assert_eq!(q_average(&[], 1.0).invalid, Some(InvalidReason::EmptyGroup));
    }

    #[test]
    fn extreme_orders_do_not_overflow() {
        let v = [1e-200, 1e-100, 1.0];
        for q in [-10.0, 10.0] {
            let c = q_average(&v, q);
            assert!(c.is_valid() && c.value.is_finite() && c.value > 0.0);
        }
        // dominated by the smallest value at large negative q
        let c = q_average(&v, -10.0);
        let direct = 1e-100 * 3f64.powf(0.1);
        assert!((c.value / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn monotone_in_q() {
        let v = [0.3, 1.7, 2.2, 0.01, 5.0];
        let mut prev = 0.0;
        for k in -40..=40 {
            let c = q_average(&v, k as f64 * 0.25);
            assert!(c.value >= prev * (1.0 - 1e-14));
            prev = c.value;
        }
    }
}
