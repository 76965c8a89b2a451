//! Log-log regression of `F_q(n)` against `n`.

use crate::fluct::FluctuationTable;

/// Fewest usable scales for a slope to be reported.
pub const MIN_FIT_SCALES: usize = 5;

/// Regression result for a single q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QFit {
    pub q: f64,
    /// Generalized Hurst exponent `h(q)`; `None` with fewer than
    /// [`MIN_FIT_SCALES`] usable scales.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r_squared: Option<f64>,
    pub scales_used: usize,
    /// Scales dropped because the cell was invalid or not strictly positive.
    pub excluded: usize,
}

impl QFit {
    /// Mass exponent `tau(q) = q h(q) - 1`.
    pub fn tau(&self) -> Option<f64> {
        self.slope.map(|h| self.q * h - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub per_q: Vec<QFit>,
}

impl ScalingFit {
    pub fn q(&self) -> impl Iterator<Item = f64> + '_ {
        self.per_q.iter().map(|f| f.q)
    }

    pub fn h(&self) -> impl Iterator<Item = Option<f64>> + '_ {
        self.per_q.iter().map(|f| f.slope)
    }

    pub fn tau(&self) -> impl Iterator<Item = Option<f64>> + '_ {
        self.per_q.iter().map(QFit::tau)
    }

    /// `h` at the q closest to `target` within 1e-9.
    pub fn h_at(&self, target: f64) -> Option<f64> {
        self.per_q
            .iter()
            .find(|f| (f.q - target).abs() < 1e-9)
            .and_then(|f| f.slope)
    }

    pub fn any_defined(&self) -> bool {
        self.per_q.iter().any(|f| f.slope.is_some())
    }

    /// Builds a fit directly from `(q, h)` pairs, e.g. to average two curves.
    pub fn from_slopes(points: impl IntoIterator<Item = (f64, Option<f64>)>) -> Self {
        let per_q = points
            .into_iter()
            .map(|(q, slope)| QFit {
                q,
                slope,
                intercept: None,
                r_squared: None,
                scales_used: 0,
                excluded: 0,
            })
            .collect();
        Self { per_q }
    }

    pub fn total_excluded(&self) -> usize {
        self.per_q.iter().map(|f| f.excluded).sum()
    }
}

/// Ordinary least squares of `ln F_q(n)` on `ln n`, per q, over valid and
/// strictly positive cells only.
pub fn fit_scaling(table: &FluctuationTable) -> ScalingFit {
    let log_n: Vec<f64> = table.scales().map(|n| (n as f64).ln()).collect();
    let per_q = table
        .q()
        .iter()
        .enumerate()
        .map(|(qi, &q)| {
            let (xs, ys): (Vec<f64>, Vec<f64>) = table
                .column(qi)
                .zip(&log_n)
                .filter(|(c, _)| c.is_valid() && c.value > 0.0 && c.value.is_finite())
                .map(|(c, &x)| (x, c.value.ln()))
                .unzip();
            let excluded = log_n.len() - xs.len();
            let line = (xs.len() >= MIN_FIT_SCALES)
                .then(|| ols(&xs, &ys))
                .flatten();
            QFit {
                q,
                slope: line.map(|l| l.slope),
                intercept: line.map(|l| l.intercept),
                r_squared: line.map(|l| l.r_squared),
                scales_used: xs.len(),
                excluded,
            }
        })
        .collect();
    ScalingFit { per_q }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Centered least-squares line through `(xs, ys)`. `None` when the
/// abscissas have no spread.
pub fn ols(xs: &[f64], ys: &[f64]) -> Option<Line> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Some(Line {
        slope,
        intercept,
        r_squared,
    })
}
