//! Multifractal detrended fluctuation analysis of single series and eleven
//! cross-correlation variants for pairs, including sign-separated
//! fluctuation functions and pair-coverage accounting.

pub mod analysis;
pub mod binomial;
pub mod detrend;
pub mod error;
pub mod fluct;
pub mod grid;
pub mod io;
pub mod mfdfa;
pub mod run;
pub mod scaling;
pub mod series;
pub mod spectrum;
pub mod xcorr;

pub use analysis::{analyze, Analysis, AnalysisOptions, Selection, SummaryRow};
pub use error::{Error, Result};
pub use grid::{QGrid, ScaleGrid};
pub use mfdfa::{mfdfa, MfdfaResult};
pub use series::{Profile, TimeSeries};
pub use xcorr::{run_all, AlgorithmId, XcorrResult};
