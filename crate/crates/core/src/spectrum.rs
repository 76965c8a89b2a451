//! Singularity spectrum via a discrete Legendre transform of `tau(q)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scaling::ScalingFit;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumPoint {
    pub q: f64,
    pub tau: f64,
    pub alpha: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularitySpectrum {
    pub points: Vec<SpectrumPoint>,
}

/// Shape of `f(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumParams {
    /// `h(2)`, when the fit has it.
    pub hurst: Option<f64>,
    /// Position of the maximum of `f`.
    pub alpha0: f64,
    /// `alpha_max - alpha_min`.
    pub width: f64,
    /// `(alpha_max + alpha_min - 2 alpha0) / width`; undefined for zero width.
    pub skew: Option<f64>,
}

/// `alpha = d tau / dq` by finite differences, `f = q alpha - tau`.
///
/// Differences are taken inside runs of consecutive q with a defined
/// `tau`: central in the interior, one-sided at the run ends. Isolated
/// points are dropped. At least one run of three points is required.
pub fn legendre_transform(fit: &ScalingFit) -> Result<SingularitySpectrum> {
    let pairs: Vec<(f64, Option<f64>)> = fit.q().zip(fit.tau()).collect();
    legendre_from_tau(&pairs)
}

/// Same as [`legendre_transform`] from raw `(q, tau)` samples.
pub fn legendre_from_tau(samples: &[(f64, Option<f64>)]) -> Result<SingularitySpectrum> {
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current = Vec::new();
    for &(q, tau) in samples {
        match tau.filter(|t| t.is_finite()) {
            Some(t) => current.push((q, t)),
            None if !current.is_empty() => runs.push(std::mem::take(&mut current)),
            None => {}
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    let longest = runs.iter().map(Vec::len).max().unwrap_or(0);
    if longest < 3 {
        return Err(Error::TooFewQPoints { found: longest });
    }

    let mut points = Vec::new();
    for run in runs.iter().filter(|r| r.len() >= 2) {
        let last = run.len() - 1;
        for i in 0..=last {
            let (lo, hi) = match i {
                0 => (0, 1),
                i if i == last => (last - 1, last),
                i => (i - 1, i + 1),
            };
            let alpha = (run[hi].1 - run[lo].1) / (run[hi].0 - run[lo].0);
            let (q, tau) = run[i];
            points.push(SpectrumPoint {
                q,
                tau,
                alpha,
                f: q * alpha - tau,
            });
        }
    }
    Ok(SingularitySpectrum { points })
}

impl SingularitySpectrum {
    pub fn alpha_range(&self) -> Option<(f64, f64)> {
        let mut it = self.points.iter().map(|p| p.alpha);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), a| (lo.min(a), hi.max(a))))
    }
}

/// Apex position, width and skew of the spectrum. `hurst` is carried
/// through unchanged.
///
/// Ties in the maximum of `f` go to the smallest alpha.
pub fn spectrum_params(
    spectrum: &SingularitySpectrum,
    hurst: Option<f64>,
) -> Result<SpectrumParams> {
    if spectrum.points.len() < 3 {
        return Err(Error::TooFewQPoints {
            found: spectrum.points.len(),
        });
    }
    let apex = spectrum
        .points
        .iter()
        .fold(None::<&SpectrumPoint>, |best, p| match best {
            Some(b) if p.f < b.f || (p.f == b.f && p.alpha >= b.alpha) => Some(b),
            _ => Some(p),
        })
        .expect("non-empty");
    let (lo, hi) = spectrum.alpha_range().expect("non-empty");
    let width = hi - lo;
    let skew = (width > 0.0).then(|| (hi + lo - 2.0 * apex.alpha) / width);
    Ok(SpectrumParams {
        hurst,
        alpha0: apex.alpha,
        width,
        skew,
    })
}
