//! Deterministic binomial multiplicative cascade and its closed-form
//! multifractal limits.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Largest supported number of stages.
pub const MAX_STAGES: u32 = 40;

/// Placement of the `p` and `1 - p` factors along the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CascadeOrder {
    /// `x_i = p^b(i-1) (1-p)^(n-b(i-1))`, `b` the count of one bits: the
    /// first value is `(1-p)^n`.
    #[default]
    BitCount,
    /// Every left half carries `p`: the first value is `p^n`. This is the
    /// bit-count order reversed.
    LeftP,
}

impl std::str::FromStr for CascadeOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bit-count" | "bitcount" => Ok(CascadeOrder::BitCount),
            "left-p" | "leftp" => Ok(CascadeOrder::LeftP),
            _ => Err(Error::Config(format!(
                "unknown cascade order '{s}' (expected bit-count or left-p)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeSpec {
    pub stages: u32,
    pub p: f64,
    pub order: CascadeOrder,
}

impl CascadeSpec {
    pub fn new(stages: u32, p: f64) -> Self {
        Self {
            stages,
            p,
            order: CascadeOrder::default(),
        }
    }

    pub fn with_order(mut self, order: CascadeOrder) -> Self {
        self.order = order;
        self
    }

    pub fn len(&self) -> usize {
        1usize << self.stages
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Probability(p))
    }
}

/// The `2^stages` cascade values as raw samples.
pub fn cascade_values(spec: &CascadeSpec) -> Result<Vec<f64>> {
    check_p(spec.p)?;
    if spec.stages == 0 || spec.stages > MAX_STAGES || spec.stages >= usize::BITS {
        return Err(Error::CascadeTooLarge(spec.stages));
    }
    let n = spec.stages as i32;
    let (a, b) = match spec.order {
        CascadeOrder::BitCount => (spec.p, 1.0 - spec.p),
        CascadeOrder::LeftP => (1.0 - spec.p, spec.p),
    };
    // one value per possible bit count
    let table: Vec<f64> = (0..=n).map(|k| a.powi(k) * b.powi(n - k)).collect();
    Ok((0..spec.len())
        .map(|i| table[i.count_ones() as usize])
        .collect())
}

/// Cascade as a labelled series, e.g. `binomial(p=0.3,n=16)`.
pub fn generate(spec: &CascadeSpec) -> Result<TimeSeries> {
    let values = cascade_values(spec)?;
    let label = format!("binomial(p={},n={})", spec.p, spec.stages);
    if values.len() < crate::series::MIN_SERIES_LEN {
        return Err(Error::TooShort {
            len: values.len(),
            min: crate::series::MIN_SERIES_LEN,
        });
    }
    TimeSeries::new(label, values)
}

/// Closed-form limits at one q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPoint {
    pub q: f64,
    /// Generalized Hurst exponent; the `q -> 0` limit at `q = 0`.
    pub h: f64,
    pub tau: f64,
    /// Singularity strength, taken positive.
    pub alpha: f64,
    pub f: f64,
}

/// Infinite-stage multifractal quantities of the binomial measure.
///
/// With `S(q) = p^q + (1-p)^q`: `tau = -log2 S`, `h = (1 - log2 S) / q`,
/// `alpha = d tau / dq` and `f = q alpha - tau`.
pub fn analytic(q: f64, p: f64) -> Result<AnalyticPoint> {
    check_p(p)?;
    if !q.is_finite() {
        return Err(Error::QGrid(format!("non-finite q {q}")));
    }
    let r = 1.0 - p;
    let (lp, lr) = (p.log2(), r.log2());
    // weights scaled by the larger term so extreme q cannot overflow
    let (a, b) = (q * lp, q * lr);
    let m = a.max(b);
    let (wa, wb) = ((a - m).exp2(), (b - m).exp2());
    let direct = p.powf(q) + r.powf(q);
    let log2_s = if direct.is_normal() && direct.is_finite() {
        direct.log2()
    } else {
        m + (wa + wb).log2()
    };
    let tau = -log2_s;
    let alpha = -(wa * lp + wb * lr) / (wa + wb);
    let h = if q == 0.0 {
        -(lp + lr) / 2.0
    } else {
        (1.0 - log2_s) / q
    };
    Ok(AnalyticPoint {
        q,
        h,
        tau,
        alpha,
        f: q * alpha - tau,
    })
}
