//! C ABI over `rankin-core`.
//!
//! Every fallible function returns a [`RankinStatus`]; on failure a message is
//! available from [`rankin_last_error`] on the same thread. Objects cross the
//! boundary as opaque handles that the caller releases with the matching
//! `_free` function. Strings returned to the caller are owned by the caller and
//! released with [`rankin_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rankin_core::algebra::{rf_expand, series_eq, TruncatedSeries};
use rankin_core::padic::{hilbert_symbol, PAdicContext, WeilFactor};
use rankin_core::report::VerificationReport;
use rankin_core::suites::{run_suite, Suite, SuiteConfig};
use rankin_core::whittaker::{integral_series, l_ratio, UnramifiedDatum};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    PadicError = 3,
    Panic = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankinSuite {
    Algebra = 0,
    Identity = 1,
    Gauss = 2,
    Hilbert = 3,
    Weil = 4,
    Matrix = 5,
    All = 6,
}

impl From<RankinSuite> for Suite {
    fn from(s: RankinSuite) -> Self {
        match s {
            RankinSuite::Algebra => Suite::Algebra,
            RankinSuite::Identity => Suite::Identity,
            RankinSuite::Gauss => Suite::Gauss,
            RankinSuite::Hilbert => Suite::Hilbert,
            RankinSuite::Weil => Suite::Weil,
            RankinSuite::Matrix => Suite::Matrix,
            RankinSuite::All => Suite::All,
        }
    }
}

/// Which exact power series a [`RankinSeries`] handle holds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankinSeriesKind {
    /// The zeta integral as a sum over Whittaker values.
    Integral = 0,
    /// Expansion of the L-factor ratio.
    LRatio = 1,
}

/// Verification parameters. `primes` points to `prime_count` entries.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RankinConfig {
    pub order: u32,
    pub primes: *const u64,
    pub prime_count: usize,
    pub mmax: u32,
    pub tolerance: f64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RankinComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankinRational {
    pub num: i64,
    pub den: i64,
}

/// Opaque verification report.
pub struct RankinReport(VerificationReport);

/// Opaque calibrated Weil index for one prime.
pub struct RankinWeilFactor(WeilFactor);

/// Opaque truncated power series in `X` over `Q[A^±1, a1^±1, a2^±1]`.
pub struct RankinSeries(TruncatedSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RankinStatus, msg: impl Into<String>) -> RankinStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into [`RankinStatus::Panic`].
fn guard(f: impl FnOnce() -> RankinStatus) -> RankinStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(RankinStatus::Panic, "internal panic"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn rational(r: RankinRational) -> Result<BigRational, RankinStatus> {
    if r.den == 0 {
        return Err(fail(RankinStatus::InvalidArgument, "zero denominator"));
    }
    Ok(BigRational::new(BigInt::from(r.num), BigInt::from(r.den)))
}

/// Message for the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rankin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rankin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Default parameters. `primes` points to static storage.
#[no_mangle]
pub extern "C" fn rankin_config_default() -> RankinConfig {
    static PRIMES: [u64; 4] = [3, 5, 7, 11];
    let d = SuiteConfig::default();
    RankinConfig {
        order: d.order as u32,
        primes: PRIMES.as_ptr(),
        prime_count: PRIMES.len(),
        mmax: d.mmax,
        tolerance: d.tolerance,
        seed: d.seed,
    }
}

/// Runs a verification suite and stores a new report in `*out`.
///
/// # Safety
/// `config` must point to a valid [`RankinConfig`] whose `primes` points to
/// `prime_count` readable values. `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_verify(
    suite: RankinSuite,
    config: *const RankinConfig,
    out: *mut *mut RankinReport,
) -> RankinStatus {
    if config.is_null() || out.is_null() {
        return fail(RankinStatus::NullPointer, "null argument");
    }
    let c = *config;
    if c.primes.is_null() && c.prime_count > 0 {
        return fail(RankinStatus::NullPointer, "null prime list");
    }
    let primes = if c.prime_count == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(c.primes, c.prime_count).to_vec()
    };
    guard(|| {
        let cfg = SuiteConfig {
            order: c.order as usize,
            primes,
            mmax: c.mmax,
            tolerance: c.tolerance,
            seed: c.seed,
        };
        match run_suite(suite.into(), &cfg) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(RankinReport(r)));
                RankinStatus::Ok
            }
            Err(e) => fail(RankinStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be NULL or a handle from [`rankin_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rankin_report_free(report: *mut RankinReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of checks in the report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rankin_report_len(report: *const RankinReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.results.len())
}

/// Number of failed checks.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rankin_report_failed(report: *const RankinReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.failures().count())
}

/// The report as a JSON array. Free with [`rankin_string_free`].
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rankin_report_json(report: *const RankinReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c_string(r.0.to_json()))
}

/// The report as aligned text lines. Free with [`rankin_string_free`].
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rankin_report_text(report: *const RankinReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c_string(r.0.to_text()))
}

/// Calibrates the Weil index for an odd prime `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_weil_factor_new(
    p: u64,
    tolerance: f64,
    out: *mut *mut RankinWeilFactor,
) -> RankinStatus {
    if out.is_null() {
        return fail(RankinStatus::NullPointer, "null output");
    }
    guard(|| {
        let wf = PAdicContext::with_prime(p).and_then(|ctx| WeilFactor::calibrate(ctx, tolerance));
        match wf {
            Ok(wf) => {
                *out = Box::into_raw(Box::new(RankinWeilFactor(wf)));
                RankinStatus::Ok
            }
            Err(e) => fail(RankinStatus::PadicError, e.to_string()),
        }
    })
}

/// # Safety
/// `wf` must be NULL or a handle from [`rankin_weil_factor_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rankin_weil_factor_free(wf: *mut RankinWeilFactor) {
    if !wf.is_null() {
        drop(Box::from_raw(wf));
    }
}

/// `gamma_psi(p^valuation * unit)`. `unit` must be prime to `p`.
///
/// # Safety
/// `wf` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_weil_factor_gamma(
    wf: *const RankinWeilFactor,
    valuation: i32,
    unit: u64,
    out: *mut RankinComplex,
) -> RankinStatus {
    let (Some(wf), false) = (wf.as_ref(), out.is_null()) else {
        return fail(RankinStatus::NullPointer, "null argument");
    };
    guard(|| {
        let g =
            wf.0.context()
                .element(valuation, unit)
                .and_then(|a| wf.0.gamma(&a));
        match g {
            Ok(g) => {
                *out = RankinComplex { re: g.re, im: g.im };
                RankinStatus::Ok
            }
            Err(e) => fail(RankinStatus::PadicError, e.to_string()),
        }
    })
}

/// Unit integral of `gamma_psi^-1(u) psi(p^-m u)`, normalized by the measure
/// of the units.
///
/// # Safety
/// `wf` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_weil_factor_unit_integral(
    wf: *const RankinWeilFactor,
    m: u32,
    out: *mut RankinComplex,
) -> RankinStatus {
    let (Some(wf), false) = (wf.as_ref(), out.is_null()) else {
        return fail(RankinStatus::NullPointer, "null argument");
    };
    guard(|| match wf.0.unit_integral(m) {
        Ok(j) => {
            *out = RankinComplex { re: j.re, im: j.im };
            RankinStatus::Ok
        }
        Err(e) => fail(RankinStatus::PadicError, e.to_string()),
    })
}

/// Hilbert symbol `(p^va ua, p^vb ub)_p`, written as `1` or `-1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_hilbert_symbol(
    p: u64,
    va: i32,
    ua: u64,
    vb: i32,
    ub: u64,
    out: *mut i8,
) -> RankinStatus {
    if out.is_null() {
        return fail(RankinStatus::NullPointer, "null output");
    }
    guard(|| {
        let h = PAdicContext::with_prime(p).and_then(|ctx| {
            let a = ctx.element(va, ua)?;
            let b = ctx.element(vb, ub)?;
            hilbert_symbol(&a, &b)
        });
        match h {
            Ok(h) => {
                *out = h;
                RankinStatus::Ok
            }
            Err(e) => fail(RankinStatus::PadicError, e.to_string()),
        }
    })
}

/// Builds the requested series through `X^order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_series_new(
    kind: RankinSeriesKind,
    order: u32,
    out: *mut *mut RankinSeries,
) -> RankinStatus {
    if out.is_null() {
        return fail(RankinStatus::NullPointer, "null output");
    }
    guard(|| {
        let s = match kind {
            RankinSeriesKind::Integral => integral_series(order as usize),
            RankinSeriesKind::LRatio => rf_expand(&l_ratio(), order as usize),
        };
        *out = Box::into_raw(Box::new(RankinSeries(s)));
        RankinStatus::Ok
    })
}

/// # Safety
/// `s` must be NULL or a handle from [`rankin_series_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rankin_series_free(s: *mut RankinSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation order of the series.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rankin_series_order(s: *const RankinSeries) -> u32 {
    s.as_ref().map_or(0, |s| s.0.order() as u32)
}

/// Coefficient of `X^k` as text. Free with [`rankin_string_free`].
/// Returns NULL if `k` exceeds the order.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rankin_series_coefficient(s: *const RankinSeries, k: u32) -> *mut c_char {
    match s.as_ref() {
        Some(s) if (k as usize) <= s.0.order() => into_c_string(s.0.coeff(k as usize).to_string()),
        _ => ptr::null_mut(),
    }
}

/// Coefficient of `X^k` at `(A, a1, a2) = values[0..3]`, as an exact
/// fraction `n/d` in lowest terms. Free with [`rankin_string_free`].
///
/// # Safety
/// `s` must be a live handle, `values` must point to three readable entries
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_series_specialize(
    s: *const RankinSeries,
    k: u32,
    values: *const RankinRational,
    out: *mut *mut c_char,
) -> RankinStatus {
    let (Some(s), false, false) = (s.as_ref(), values.is_null(), out.is_null()) else {
        return fail(RankinStatus::NullPointer, "null argument");
    };
    if k as usize > s.0.order() {
        return fail(
            RankinStatus::InvalidArgument,
            format!("degree {k} exceeds order {}", s.0.order()),
        );
    }
    let v = std::slice::from_raw_parts(values, 3);
    let (a, a1, a2) = match (rational(v[0]), rational(v[1]), rational(v[2])) {
        (Ok(a), Ok(a1), Ok(a2)) => (a, a1, a2),
        _ => return RankinStatus::InvalidArgument,
    };
    guard(|| match UnramifiedDatum::new(a, a1, a2) {
        Ok(d) => {
            *out = into_c_string(d.specialize(s.0.coeff(k as usize)).to_string());
            RankinStatus::Ok
        }
        Err(e) => fail(RankinStatus::InvalidArgument, e.to_string()),
    })
}

/// Compares two series up to the smaller order. Writes `-1` to `*mismatch`
/// when they agree, otherwise the first differing degree.
///
/// # Safety
/// `a` and `b` must be live handles and `mismatch` writable.
#[no_mangle]
pub unsafe extern "C" fn rankin_series_compare(
    a: *const RankinSeries,
    b: *const RankinSeries,
    mismatch: *mut i64,
) -> RankinStatus {
    let (Some(a), Some(b), false) = (a.as_ref(), b.as_ref(), mismatch.is_null()) else {
        return fail(RankinStatus::NullPointer, "null argument");
    };
    guard(|| {
        let order = a.0.order().min(b.0.order());
        let cmp = series_eq(&a.0.truncate(order), &b.0.truncate(order));
        *mismatch = match cmp {
            Ok(c) => c.mismatch.map_or(-1, |m| m.degree as i64),
            Err(e) => return fail(RankinStatus::InvalidArgument, e.to_string()),
        };
        RankinStatus::Ok
    })
}
