//! C ABI over the `mfdcca` library.
//!
//! Results live behind an opaque `MfdccaAnalysis` handle released with
//! [`mfdcca_analysis_free`]. Every fallible call returns an
//! [`MfdccaStatus`]; the message of the last failure on the calling thread
//! is available from [`mfdcca_last_error`]. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mfdcca::binomial::{analytic, cascade_values, CascadeOrder, CascadeSpec, MAX_STAGES};
use mfdcca::{analyze, Analysis, AnalysisOptions, Error, Selection, SummaryRow, TimeSeries};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfdccaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    LengthMismatch = 3,
    Config = 4,
    OutOfRange = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfdccaCascadeOrder {
    /// First value `(1-p)^n`.
    BitCount = 0,
    /// First value `p^n`.
    LeftP = 1,
}

/// Analysis settings. Start from [`mfdcca_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MfdccaOptions {
    pub scale_min: usize,
    /// 0 selects a quarter of the series length.
    pub scale_max: usize,
    pub scale_count: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub q_step: f64,
    pub poly_order: usize,
    /// Comma list of algorithm names, or NULL for everything the inputs allow.
    pub algorithms: *const c_char,
}

/// One summary line. Undefined numbers are NaN. `algorithm` points into
/// the owning handle.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MfdccaSummaryRow {
    pub algorithm: *const c_char,
    pub pairs_pct: f64,
    pub hurst: f64,
    pub alpha0: f64,
    pub width: f64,
    pub skew: f64,
    pub low_coverage: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MfdccaAnalyticPoint {
    pub q: f64,
    pub h: f64,
    pub tau: f64,
    pub alpha: f64,
    pub f: f64,
}

/// Opaque result handle.
pub struct MfdccaAnalysis {
    analysis: Analysis,
    rows: Vec<SummaryRow>,
    row_names: Vec<CString>,
    table_names: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (MfdccaStatus, String);

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MfdccaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MfdccaStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MfdccaStatus::Panic
        }
    }
}

fn from_core(e: Error) -> Failure {
    let status = match e {
        Error::LengthMismatch { .. } => MfdccaStatus::LengthMismatch,
        Error::Config(_) | Error::ScaleGrid(_) | Error::QGrid(_) => MfdccaStatus::Config,
        _ => MfdccaStatus::InvalidInput,
    };
    (status, e.to_string())
}

fn null(what: &str) -> Failure {
    (MfdccaStatus::NullPointer, format!("{what} is NULL"))
}

fn deref<'a>(h: *const MfdccaAnalysis) -> Result<&'a MfdccaAnalysis, Failure> {
    // SAFETY: callers of the public functions promise `h` is NULL or a live
    // handle from `mfdcca_analyze`.
    unsafe { h.as_ref() }.ok_or_else(|| null("handle"))
}

fn copy_out<T: Copy>(src: &[T], out: *mut T, capacity: usize) -> Result<(), Failure> {
    if src.len() > capacity {
        return Err((
            MfdccaStatus::BufferTooSmall,
            format!("need {} elements, buffer holds {capacity}", src.len()),
        ));
    }
    if src.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(null("output buffer"));
    }
    // SAFETY: `out` is non-null and the caller promises room for
    // `capacity >= src.len()` elements.
    unsafe { ptr::copy_nonoverlapping(src.as_ptr(), out, src.len()) };
    Ok(())
}

fn nan(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mfdcca_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn mfdcca_status_str(status: MfdccaStatus) -> *const c_char {
    let s: &'static str = match status {
        MfdccaStatus::Ok => "ok\0",
        MfdccaStatus::NullPointer => "null pointer\0",
        MfdccaStatus::InvalidInput => "invalid input\0",
        MfdccaStatus::LengthMismatch => "length mismatch\0",
        MfdccaStatus::Config => "invalid configuration\0",
        MfdccaStatus::OutOfRange => "index out of range\0",
        MfdccaStatus::BufferTooSmall => "buffer too small\0",
        MfdccaStatus::Panic => "internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mfdcca_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn mfdcca_options_default() -> MfdccaOptions {
    let d = AnalysisOptions::default();
    MfdccaOptions {
        scale_min: d.scale_min,
        scale_max: 0,
        scale_count: d.scale_count,
        q_min: d.q_min,
        q_max: d.q_max,
        q_step: d.q_step,
        poly_order: d.poly_order,
        algorithms: ptr::null(),
    }
}

fn to_options(o: &MfdccaOptions) -> Result<AnalysisOptions, Failure> {
    let selection = if o.algorithms.is_null() {
        None
    } else {
        // SAFETY: non-null `algorithms` must be a NUL-terminated string.
        let list = unsafe { CStr::from_ptr(o.algorithms) }
            .to_str()
            .map_err(|_| {
                (
                    MfdccaStatus::Config,
                    "algorithm list is not UTF-8".to_string(),
                )
            })?;
        Some(Selection::parse(list).map_err(from_core)?)
    };
    Ok(AnalysisOptions {
        scale_min: o.scale_min,
        scale_max: (o.scale_max != 0).then_some(o.scale_max),
        scale_count: o.scale_count,
        q_min: o.q_min,
        q_max: o.q_max,
        q_step: o.q_step,
        poly_order: o.poly_order,
        selection,
    })
}

fn series(label: &str, data: *const f64, len: usize) -> Result<TimeSeries, Failure> {
    if data.is_null() {
        return Err(null(label));
    }
    // SAFETY: non-null `data` must point to `len` readable doubles.
    let values = unsafe { std::slice::from_raw_parts(data, len) }.to_vec();
    TimeSeries::new(label, values).map_err(from_core)
}

/// Analyses `x` alone, or the pair `(x, y)` when `y` is not NULL.
///
/// # Safety
/// `x` (and `y` when given) must point to `len` doubles. `options` is NULL
/// or a valid options struct. `out` must be writable; on success it
/// receives a handle to release with [`mfdcca_analysis_free`].
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analyze(
    x: *const f64,
    y: *const f64,
    len: usize,
    options: *const MfdccaOptions,
    out: *mut *mut MfdccaAnalysis,
) -> MfdccaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: documented contract on `out`.
        unsafe { *out = ptr::null_mut() };
        let opts = match unsafe { options.as_ref() } {
            Some(o) => to_options(o)?,
            None => AnalysisOptions::default(),
        };
        let xs = series("x", x, len)?;
        let ys = if y.is_null() {
            None
        } else {
            Some(series("y", y, len)?)
        };
        let analysis = analyze(&xs, ys.as_ref(), &opts).map_err(from_core)?;
        let rows = analysis.summary();
        let cstr = |s: &str| CString::new(s).unwrap_or_default();
        let boxed = Box::new(MfdccaAnalysis {
            row_names: rows.iter().map(|r| cstr(&r.algorithm)).collect(),
            table_names: analysis.tables().iter().map(|t| cstr(t.name)).collect(),
            rows,
            analysis,
        });
        // SAFETY: documented contract on `out`.
        unsafe { *out = Box::into_raw(boxed) };
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `handle` must be NULL or come from [`mfdcca_analyze`] and not be freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_free(handle: *mut MfdccaAnalysis) {
    if !handle.is_null() {
        // SAFETY: the caller hands back ownership of a live handle.
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Number of summary rows; 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_row_count(handle: *const MfdccaAnalysis) -> usize {
    deref(handle).map_or(0, |h| h.rows.len())
}

/// Copies summary row `index` into `out`.
///
/// # Safety
/// `handle` must be NULL or a live handle; `out` must be writable. The
/// name pointer stays valid while the handle lives.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_row(
    handle: *const MfdccaAnalysis,
    index: usize,
    out: *mut MfdccaSummaryRow,
) -> MfdccaStatus {
    guard(|| {
        let h = deref(handle)?;
        let r = h.rows.get(index).ok_or((
            MfdccaStatus::OutOfRange,
            format!("row {index} of {}", h.rows.len()),
        ))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let row = MfdccaSummaryRow {
            algorithm: h.row_names[index].as_ptr(),
            pairs_pct: nan(r.pairs_pct),
            hurst: nan(r.h),
            alpha0: nan(r.alpha0),
            width: nan(r.w),
            skew: nan(r.r),
            low_coverage: r.low_coverage,
        };
        // SAFETY: `out` is non-null and writable by contract.
        unsafe { out.write(row) };
        Ok(())
    })
}

/// Number of fluctuation tables: one MFDFA table per input, then one per
/// cross algorithm.
///
/// # Safety
/// `handle` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_table_count(handle: *const MfdccaAnalysis) -> usize {
    deref(handle).map_or(0, |h| h.table_names.len())
}

/// Name of table `index`, or NULL when out of range.
///
/// # Safety
/// `handle` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_table_name(
    handle: *const MfdccaAnalysis,
    index: usize,
) -> *const c_char {
    deref(handle)
        .ok()
        .and_then(|h| h.table_names.get(index))
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `handle` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_scale_count(handle: *const MfdccaAnalysis) -> usize {
    deref(handle).map_or(0, |h| h.analysis.scales.len())
}

/// # Safety
/// `handle` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_q_count(handle: *const MfdccaAnalysis) -> usize {
    deref(handle).map_or(0, |h| h.analysis.qs.len())
}

/// Copies the segment lengths of the scale grid.
///
/// # Safety
/// `out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_copy_scales(
    handle: *const MfdccaAnalysis,
    out: *mut usize,
    capacity: usize,
) -> MfdccaStatus {
    guard(|| copy_out(deref(handle)?.analysis.scales.scales(), out, capacity))
}

/// Copies the q grid.
///
/// # Safety
/// `out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_copy_q(
    handle: *const MfdccaAnalysis,
    out: *mut f64,
    capacity: usize,
) -> MfdccaStatus {
    guard(|| copy_out(deref(handle)?.analysis.qs.values(), out, capacity))
}

fn with_table<T>(
    handle: *const MfdccaAnalysis,
    table: usize,
    f: impl FnOnce(&mfdcca::analysis::TableView<'_>) -> T,
) -> Result<T, Failure> {
    let h = deref(handle)?;
    let tables = h.analysis.tables();
    let t = tables.get(table).ok_or((
        MfdccaStatus::OutOfRange,
        format!("table {table} of {}", tables.len()),
    ))?;
    Ok(f(t))
}

/// Copies `F_q(n)` of one table, scale-major (`scale_count * q_count`
/// values). Cells without a number are NaN; see
/// [`mfdcca_analysis_copy_validity`] for which cells enter the fit.
///
/// # Safety
/// `out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_copy_fluctuations(
    handle: *const MfdccaAnalysis,
    table: usize,
    out: *mut f64,
    capacity: usize,
) -> MfdccaStatus {
    guard(|| {
        let values = with_table(handle, table, |t| {
            t.table.cells().iter().map(|c| c.value).collect::<Vec<_>>()
        })?;
        copy_out(&values, out, capacity)
    })
}

/// Copies 1 for cells that enter the regression, 0 otherwise, in the same
/// layout as [`mfdcca_analysis_copy_fluctuations`].
///
/// # Safety
/// `out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_copy_validity(
    handle: *const MfdccaAnalysis,
    table: usize,
    out: *mut u8,
    capacity: usize,
) -> MfdccaStatus {
    guard(|| {
        let flags = with_table(handle, table, |t| {
            t.table
                .cells()
                .iter()
                .map(|c| u8::from(c.is_valid()))
                .collect::<Vec<_>>()
        })?;
        copy_out(&flags, out, capacity)
    })
}

/// Copies `h(q)` of one table (`q_count` values, NaN where undefined).
///
/// # Safety
/// `out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_analysis_copy_hurst(
    handle: *const MfdccaAnalysis,
    table: usize,
    out: *mut f64,
    capacity: usize,
) -> MfdccaStatus {
    guard(|| {
        let h = with_table(handle, table, |t| t.fit.h().map(nan).collect::<Vec<_>>())?;
        copy_out(&h, out, capacity)
    })
}

/// Length of a cascade with `stages` stages, or 0 when unsupported.
#[no_mangle]
pub extern "C" fn mfdcca_binomial_len(stages: u32) -> usize {
    if (1..=MAX_STAGES).contains(&stages) {
        1usize << stages
    } else {
        0
    }
}

/// Writes the `2^stages` cascade values.
///
/// # Safety
/// `out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_binomial_generate(
    stages: u32,
    p: f64,
    order: MfdccaCascadeOrder,
    out: *mut f64,
    capacity: usize,
) -> MfdccaStatus {
    guard(|| {
        let order = match order {
            MfdccaCascadeOrder::BitCount => CascadeOrder::BitCount,
            MfdccaCascadeOrder::LeftP => CascadeOrder::LeftP,
        };
        let spec = CascadeSpec::new(stages, p).with_order(order);
        if mfdcca_binomial_len(stages) > capacity {
            return Err((
                MfdccaStatus::BufferTooSmall,
                format!(
                    "need {} elements, buffer holds {capacity}",
                    mfdcca_binomial_len(stages)
                ),
            ));
        }
        let values = cascade_values(&spec).map_err(from_core)?;
        copy_out(&values, out, capacity)
    })
}

/// Closed-form `h`, `tau`, `alpha`, `f` of the infinite cascade.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mfdcca_binomial_analytic(
    q: f64,
    p: f64,
    out: *mut MfdccaAnalyticPoint,
) -> MfdccaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let a = analytic(q, p).map_err(from_core)?;
        let point = MfdccaAnalyticPoint {
            q: a.q,
            h: a.h,
            tau: a.tau,
            alpha: a.alpha,
            f: a.f,
        };
        // SAFETY: `out` is non-null and writable by contract.
        unsafe { out.write(point) };
        Ok(())
    })
}
