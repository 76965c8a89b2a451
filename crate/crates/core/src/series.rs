//! Input series and their integrated profiles.

use crate::error::{Error, Result};

/// Shortest series accepted for analysis.
pub const MIN_SERIES_LEN: usize = 16;

/// A labelled sequence of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    label: String,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        if values.len() < MIN_SERIES_LEN {
            return Err(Error::TooShort {
                len: values.len(),
                min: MIN_SERIES_LEN,
            });
        }
        Ok(Self {
            label: label.into(),
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sign-flipped copy, labelled `-<label>`.
    pub fn negated(&self) -> Self {
        Self {
            label: format!("-{}", self.label),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn profile(&self) -> Profile {
        // values were validated on construction
        integrate(&self.values)
    }
}

/// Cumulative sum of the mean-subtracted samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    values: Vec<f64>,
}

impl Profile {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// Builds the profile `X(k) = sum_{i<=k} (x(i) - mean)`.
///
/// Accepts any non-empty slice; the length floor of [`TimeSeries`] is not
/// applied here.
pub fn build_profile(samples: &[f64]) -> Result<Profile> {
    check_finite(samples)?;
    if samples.is_empty() {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    Ok(integrate(samples))
}

fn integrate(samples: &[f64]) -> Profile {
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let mut acc = 0.0;
    let values = samples
        .iter()
        .map(|x| {
            acc += x - mean;
            acc
        })
        .collect();
    Profile { values }
}

pub(crate) fn check_finite(samples: &[f64]) -> Result<()> {
    match samples.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_of_short_ramp() {
        let p = build_profile(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.values(), &[-1.0, -1.0, 0.0]);
    }

    #[test]
    fn constant_series_has_flat_profile() {
        let p = build_profile(&[2.5; 4]).unwrap();
        assert_eq!(p.values(), &[0.0; 4]);
    }

    #[test]
    fn non_finite_sample_is_named() {
        let err = build_profile(&[1.0, f64::NAN, 3.0]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 1 }));
        let err = TimeSeries::new(
            "x",
            vec![0.0; 20].into_iter().chain([f64::INFINITY]).collect(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 20 }));
    }

    #[test]
    fn short_series_rejected() {
        assert!(matches!(
            TimeSeries::new("x", vec![1.0; 15]),
            Err(Error::TooShort { len: 15, min: 16 })
        ));
        assert!(TimeSeries::new("x", vec![1.0; 16]).is_ok());
    }

    #[test]
    fn profile_ends_near_zero() {
        let x: Vec<f64> = (0..1000)
            .map(|i| ((i * 7919) % 113) as f64 * 0.37)
            .collect();
        let p = build_profile(&x).unwrap();
        let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(p.values().last().unwrap().abs() <= 1e-9 * x.len() as f64 * max);
    }

    #[test]
    fn negation_is_exact() {
        let s = TimeSeries::new("a", (0..32).map(|i| (i as f64).sin()).collect()).unwrap();
        assert_eq!(s.negated().profile(), s.profile().negated());
    }
}
