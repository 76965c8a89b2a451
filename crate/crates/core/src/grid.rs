//! Segment-length and moment-order grids.

use crate::error::{Error, Result};

/// Smallest admissible segment length.
pub const MIN_SCALE: usize = 4;
/// Default number of log-spaced scales.
pub const DEFAULT_SCALE_COUNT: usize = 30;

/// Strictly increasing integer segment lengths, each within `[4, N/4]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleGrid {
    scales: Vec<usize>,
}

impl ScaleGrid {
    /// Wraps an explicit list of scales, validated against series length `len`.
    pub fn from_scales(len: usize, scales: Vec<usize>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::ScaleGrid("no scales".into()));
        }
        if scales.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ScaleGrid(
                "scales must be strictly increasing".into(),
            ));
        }
        let (lo, hi) = (scales[0], *scales.last().unwrap());
        if lo < MIN_SCALE {
            return Err(Error::ScaleGrid(format!(
                "scale {lo} below the minimum of {MIN_SCALE}"
            )));
        }
        check_max(len, hi)?;
        Ok(Self { scales })
    }

    /// Default grid `[4, N/4]` with [`DEFAULT_SCALE_COUNT`] points.
    pub fn default_for(len: usize) -> Result<Self> {
        make_scale_grid(len, MIN_SCALE, len / 4, DEFAULT_SCALE_COUNT)
    }

    pub fn scales(&self) -> &[usize] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    pub fn min_scale(&self) -> usize {
        self.scales[0]
    }

    pub fn max_scale(&self) -> usize {
        *self.scales.last().unwrap()
    }
}

fn check_max(len: usize, max_scale: usize) -> Result<()> {
    if max_scale.saturating_mul(4) > len {
        return Err(Error::ScaleGrid(format!(
            "max scale {max_scale} exceeds N/4 for N = {len}"
        )));
    }
    Ok(())
}

/// Log-uniform integer grid from `min_scale` to `max_scale` inclusive.
///
/// Points are `round(min * (max/min)^(k/(points-1)))`; duplicates left by
/// rounding are removed, so the result may hold fewer than `points` scales.
pub fn make_scale_grid(
    len: usize,
    min_scale: usize,
    max_scale: usize,
    points: usize,
) -> Result<ScaleGrid> {
    if min_scale < MIN_SCALE {
        return Err(Error::ScaleGrid(format!(
            "min scale {min_scale} below {MIN_SCALE}"
        )));
    }
    if min_scale >= max_scale {
        return Err(Error::ScaleGrid(format!(
            "min scale {min_scale} must be below max scale {max_scale}"
        )));
    }
    check_max(len, max_scale)?;
    if points < 2 {
        return Err(Error::ScaleGrid("need at least 2 points".into()));
    }
    let ratio = max_scale as f64 / min_scale as f64;
    let last = (points - 1) as f64;
    let mut scales: Vec<usize> = (0..points)
        .map(|k| match k {
            0 => min_scale,
            k if k == points - 1 => max_scale,
            k => (min_scale as f64 * ratio.powf(k as f64 / last)).round() as usize,
        })
        .collect();
    scales.dedup();
    Ok(ScaleGrid { scales })
}

/// Strictly increasing, finite moment orders.
#[derive(Debug, Clone, PartialEq)]
pub struct QGrid {
    q: Vec<f64>,
}

impl QGrid {
    pub fn new(q: Vec<f64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::QGrid("no q values".into()));
        }
        if let Some(v) = q.iter().find(|v| !v.is_finite()) {
            return Err(Error::QGrid(format!("non-finite q value {v}")));
        }
        if q.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::QGrid("q values must be strictly increasing".into()));
        }
        Ok(Self { q })
    }

    /// `min, min + step, ...` up to `max` (included when it lies on the lattice).
    ///
    /// Values within `step * 1e-9` of a lattice point are snapped to it, and
    /// in particular to exactly zero.
    pub fn range(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::QGrid("bounds and step must be finite".into()));
        }
        if step <= 0.0 || min > max {
            return Err(Error::QGrid(format!(
                "bad range [{min}, {max}] with step {step}"
            )));
        }
        let span = (max - min) / step;
        let count = (span + 1e-9).floor() as usize + 1;
        let q = (0..count)
            .map(|k| {
                let v = min + k as f64 * step;
                if v.abs() < step * 1e-9 {
                    0.0
                } else {
                    v
                }
            })
            .collect();
        Self::new(q)
    }

    pub fn values(&self) -> &[f64] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Index of the order equal to `target` (within 1e-9), if present.
    pub fn position(&self, target: f64) -> Option<usize> {
        self.q.iter().position(|q| (q - target).abs() < 1e-9)
    }
}

impl Default for QGrid {
    /// `-10, -9.75, ..., 10`.
    fn default() -> Self {
        Self::range(-10.0, 10.0, 0.25).expect("static grid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_only() {
        let g = make_scale_grid(65536, 4, 16384, 2).unwrap();
        assert_eq!(g.scales(), &[4, 16384]);
    }

    #[test]
    fn thirteen_points_are_powers_of_two() {
        // oracle: round(4 * 4096^(k/12)) = 4 * 2^k
        let oracle: Vec<usize> = (0..13).map(|k| 4usize << k).collect();
        let g = make_scale_grid(65536, 4, 16384, 13).unwrap();
        assert_eq!(g.scales(), oracle.as_slice());
        for w in g.scales().windows(2) {
            let r = w[1] as f64 / w[0] as f64;
            assert!((r - 4096f64.powf(1.0 / 12.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn quarter_length_boundary() {
        assert!(make_scale_grid(100, 4, 26, 5).is_err());
        assert!(make_scale_grid(100, 4, 25, 5).is_ok());
    }

    #[test]
    fn rounding_duplicates_removed() {
        let g = make_scale_grid(64, 4, 8, 30).unwrap();
        assert_eq!(g.scales(), &[4, 5, 6, 7, 8]);
    }

    #[test]
    fn bad_bounds() {
        assert!(make_scale_grid(1000, 3, 100, 10).is_err());
        assert!(make_scale_grid(1000, 50, 50, 10).is_err());
        assert!(make_scale_grid(1000, 4, 100, 1).is_err());
        assert!(ScaleGrid::from_scales(1000, vec![8, 8, 16]).is_err());
        assert!(ScaleGrid::from_scales(1000, vec![8, 251]).is_err());
    }

    #[test]
    fn default_grids() {
        let q = QGrid::default();
        assert_eq!(q.len(), 81);
        assert_eq!(q.values()[40], 0.0);
        assert_eq!(q.position(2.0), Some(48));
        assert_eq!(*q.values().last().unwrap(), 10.0);

        let s = ScaleGrid::default_for(65536).unwrap();
        assert_eq!(s.min_scale(), 4);
        assert_eq!(s.max_scale(), 16384);
        assert_eq!(s.len(), 30);
    }

    #[test]
    fn q_range_snaps_zero() {
        let q = QGrid::range(-1.0, 1.0, 0.1).unwrap();
        assert_eq!(q.len(), 21);
        assert!(q.values().contains(&0.0));
        assert!(QGrid::new(vec![1.0, 1.0]).is_err());
        assert!(QGrid::new(vec![f64::NAN]).is_err());
    }
}
