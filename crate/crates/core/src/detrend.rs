//! Segmentation, per-segment polynomial detrending, and signed
//! decomposition of residual products.

use std::ops::Range;

use crate::error::{Error, Result};

/// Order of the local trend polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetrendConfig {
    pub poly_order: usize,
}

impl Default for DetrendConfig {
    fn default() -> Self {
        Self { poly_order: 1 }
    }
}

/// Forward, non-overlapping segments of length `scale` covering the first
/// `floor(len / scale) * scale` samples. The remainder is discarded.
///
/// Requires at least four segments (`4 * scale <= len`).
pub fn segment_bounds(len: usize, scale: usize) -> Result<Vec<Range<usize>>> {
    if scale == 0 {
        return Err(Error::Segmentation {
            len,
            scale,
            reason: "zero scale",
        });
    }
    if scale.saturating_mul(4) > len {
        return Err(Error::Segmentation {
            len,
            scale,
            reason: "scale exceeds N/4",
        });
    }
    Ok((0..len / scale)
        .map(|v| v * scale..(v + 1) * scale)
        .collect())
}

/// Discrete orthogonal polynomials on the abscissas `1..=len`, built by
/// the Stieltjes three-term recurrence on centred abscissas. Shared by
/// every segment of one scale.
#[derive(Debug, Clone)]
pub struct TrendBasis {
    len: usize,
    /// `basis[k][i]` is `P_k` at abscissa `i + 1`.
    basis: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl TrendBasis {
    pub fn new(len: usize, order: usize) -> Result<Self> {
        if len <= order + 1 {
            return Err(Error::SegmentTooShort { order, len });
        }
        let centre = (len as f64 + 1.0) / 2.0;
        let t: Vec<f64> = (1..=len).map(|i| i as f64 - centre).collect();
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
        let mut norms = Vec::with_capacity(order + 1);
        basis.push(vec![1.0; len]);
        norms.push(len as f64);
        for k in 0..order {
            let pk = &basis[k];
            let a = t.iter().zip(pk).map(|(t, p)| t * p * p).sum::<f64>() / norms[k];
            let next: Vec<f64> = if k == 0 {
                t.iter().zip(pk).map(|(t, p)| (t - a) * p).collect()
            } else {
                let b = norms[k] / norms[k - 1];
                let pkm = &basis[k - 1];
                t.iter()
                    .zip(pk)
                    .zip(pkm)
                    .map(|((t, p), pm)| (t - a) * p - b * pm)
                    .collect()
            };
            let norm: f64 = next.iter().map(|v| v * v).sum();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::RankDeficient { order, len });
            }
            basis.push(next);
            norms.push(norm);
        }
        Ok(Self { len, basis, norms })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn order(&self) -> usize {
        self.basis.len() - 1
    }

    /// Least-squares polynomial evaluated at each abscissa.
    pub fn fit(&self, segment: &[f64]) -> Vec<f64> {
        assert_eq!(segment.len(), self.len, "segment length");
        let mut fitted = vec![0.0; self.len];
        for (p, norm) in self.basis.iter().zip(&self.norms) {
            let c = segment.iter().zip(p).map(|(y, p)| y * p).sum::<f64>() / norm;
            for (f, p) in fitted.iter_mut().zip(p) {
                *f += c * p;
            }
        }
        fitted
    }

    /// `segment - fit(segment)` written into `out`.
    pub fn residuals_into(&self, segment: &[f64], out: &mut Vec<f64>) {
        let fitted = self.fit(segment);
        out.clear();
        out.extend(segment.iter().zip(&fitted).map(|(y, f)| y - f));
    }

    pub fn residuals(&self, segment: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len);
        self.residuals_into(segment, &mut out);
        out
    }
}

/// Least-squares polynomial trend of order `config.poly_order` over
/// abscissas `1..=n`, evaluated at those abscissas.
pub fn fit_trend(segment: &[f64], config: DetrendConfig) -> Result<Vec<f64>> {
    Ok(TrendBasis::new(segment.len(), config.poly_order)?.fit(segment))
}

/// Residuals of one segment of one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentResiduals {
    pub scale: usize,
    pub segment: usize,
    pub residuals: Vec<f64>,
}

impl SegmentResiduals {
    pub fn new(scale: usize, segment: usize, residuals: Vec<f64>) -> Self {
        Self {
            scale,
            segment,
            residuals,
        }
    }
}

/// Residual-product quadrant, by the signs of the two residuals.
/// A residual of `+0.0` or greater counts as plus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    PlusPlus = 0,
    PlusMinus = 1,
    MinusPlus = 2,
    MinusMinus = 3,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant::PlusPlus,
        Quadrant::PlusMinus,
        Quadrant::MinusPlus,
        Quadrant::MinusMinus,
    ];

    pub fn of(ex: f64, ey: f64) -> Self {
        match (ex >= 0.0, ey >= 0.0) {
            (true, true) => Quadrant::PlusPlus,
            (true, false) => Quadrant::PlusMinus,
            (false, true) => Quadrant::MinusPlus,
            (false, false) => Quadrant::MinusMinus,
        }
    }
}

/// Signed statistics of the residual products of one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedCovStats {
    pub n: usize,
    /// Detrended covariance `(1/n) sum ex ey`.
    pub cov: f64,
    /// `(1/n) sum |ex ey|`.
    pub abs_mean: f64,
    /// Products `>= 0`; zero products land here.
    pub n_plus: usize,
    pub n_minus: usize,
    pub sum_plus: f64,
    pub sum_minus: f64,
    /// Indexed by [`Quadrant`].
    pub quad_count: [usize; 4],
    pub quad_sum: [f64; 4],
}

impl SignedCovStats {
    pub fn from_residuals(ex: &[f64], ey: &[f64]) -> Self {
        debug_assert_eq!(ex.len(), ey.len());
        let mut s = SignedCovStats {
            n: ex.len(),
            cov: 0.0,
            abs_mean: 0.0,
            n_plus: 0,
            n_minus: 0,
            sum_plus: 0.0,
            sum_minus: 0.0,
            quad_count: [0; 4],
            quad_sum: [0.0; 4],
        };
        let (mut total, mut total_abs) = (0.0, 0.0);
        for (&x, &y) in ex.iter().zip(ey) {
            let prod = x * y;
            total += prod;
            total_abs += prod.abs();
            if prod >= 0.0 {
                s.n_plus += 1;
                s.sum_plus += prod;
            } else {
                s.n_minus += 1;
                s.sum_minus += prod;
            }
            let q = Quadrant::of(x, y) as usize;
            s.quad_count[q] += 1;
            s.quad_sum[q] += prod;
        }
        let n = s.n as f64;
        s.cov = total / n;
        s.abs_mean = total_abs / n;
        s
    }

    /// Mean positive product `F^2(n+)`, if any product is non-negative.
    pub fn plus_mean(&self) -> Option<f64> {
        (self.n_plus > 0).then(|| self.sum_plus / self.n_plus as f64)
    }

    /// Sign-flipped mean negative product `F^2(n-)`.
    pub fn minus_mean(&self) -> Option<f64> {
        (self.n_minus > 0).then(|| -self.sum_minus / self.n_minus as f64)
    }

    /// Mean product magnitude within one quadrant; cross quadrants are
    /// sign-flipped so the value is non-negative.
    pub fn quadrant_mean(&self, q: Quadrant) -> Option<f64> {
        let i = q as usize;
        let count = self.quad_count[i];
        (count > 0).then(|| {
            let mean = self.quad_sum[i] / count as f64;
            match q {
                Quadrant::PlusPlus | Quadrant::MinusMinus => mean,
                Quadrant::PlusMinus | Quadrant::MinusPlus => -mean,
            }
        })
    }
}

/// Covariance statistics for a matched pair of segment residuals.
pub fn signed_cov_stats(x: &SegmentResiduals, y: &SegmentResiduals) -> Result<SignedCovStats> {
    if x.residuals.len() != y.residuals.len() || x.scale != y.scale || x.segment != y.segment {
        return Err(Error::LengthMismatch {
            left: x.residuals.len(),
            right: y.residuals.len(),
        });
    }
    if x.residuals.is_empty() {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    Ok(SignedCovStats::from_residuals(&x.residuals, &y.residuals))
}

/// Residuals of every segment of `profile` at `scale`, concatenated in
/// segment order.
pub fn profile_residuals(profile: &[f64], scale: usize, config: DetrendConfig) -> Result<Vec<f64>> {
    let bounds = segment_bounds(profile.len(), scale)?;
    let basis = TrendBasis::new(scale, config.poly_order)?;
    let mut out = Vec::with_capacity(bounds.len() * scale);
    let mut buf = Vec::with_capacity(scale);
    for r in bounds {
        basis.residuals_into(&profile[r], &mut buf);
        out.extend_from_slice(&buf);
    }
    Ok(out)
}
