//! C ABI over `rimtori`.
//!
//! Every fallible call returns an [`RtStatus`]; on failure the message is
//! kept per thread and read back with [`rt_last_error`]. Strings handed out
//! by the library are owned by the caller and released with
//! [`rt_string_free`]. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rimtori::cli::{self, CliError, ProblemSpec, RunOptions, SeriesRequest, Status, Suite};
use rimtori::gw_series::PowerSeries;
use rimtori::lattice::{IntMatrix, QuotientModule};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    ComputeError = 5,
    /// A value does not fit the requested integer type or buffer.
    Overflow = 6,
    Panic = 7,
}

/// A truncated power series with exact rational coefficients.
pub struct RtSeries {
    inner: PowerSeries,
}

/// A finitely generated abelian group `Z^n / (relations)`.
pub struct RtQuotient {
    inner: QuotientModule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg.into()));
}

fn fail(status: RtStatus, msg: impl Into<String>) -> RtStatus {
    set_error(msg);
    status
}

fn cli_status(e: &CliError) -> RtStatus {
    match e {
        CliError::Parse(_) | CliError::Schema { .. } | CliError::KindMismatch { .. } => RtStatus::ParseError,
        _ => RtStatus::ComputeError,
    }
}

fn guard(f: impl FnOnce() -> RtStatus) -> RtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(RtStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RtStatus> {
    if p.is_null() {
        return Err(fail(RtStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RtStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    // interior NULs cannot occur in our own output, but do not trust it
    CString::new(s.replace('\0', " ")).expect("no NUL").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL.
/// Free the result with `rt_string_free`.
#[no_mangle]
pub extern "C" fn rt_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(m) => into_c_string(m.clone()),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a problem document (JSON) and writes the report as JSON to
/// `*out_report`. `out_exit` (may be NULL) receives 0 for a value or
/// passing report and 1 for a failing one.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_run_spec(json: *const c_char, out_report: *mut *mut c_char, out_exit: *mut i32) -> RtStatus {
    guard(|| {
        if out_report.is_null() {
            return fail(RtStatus::NullPointer, "out_report is null");
        }
        *out_report = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let report = match cli::parse_spec(text).and_then(|spec| cli::run(&spec, &RunOptions::default())) {
            Ok(r) => r,
            Err(e) => return fail(cli_status(&e), e.to_string()),
        };
        if !out_exit.is_null() {
            *out_exit = report.status.exit_code();
        }
        *out_report = into_c_string(report.to_json());
        RtStatus::Ok
    })
}

/// Runs one verification suite by name (`snf`, `deck`, `equivariance`,
/// `convolution`, `bryan-leung`, `trr`, `sympsum`). `trials == 0` keeps the
/// suite default. `*out_passed` tells whether every check held.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `out_passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_verify(
    suite: *const c_char,
    order: usize,
    trials: usize,
    seed: u64,
    out_passed: *mut bool,
) -> RtStatus {
    guard(|| {
        if out_passed.is_null() {
            return fail(RtStatus::NullPointer, "out_passed is null");
        }
        let name = match read_str(suite) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Some(suite) = Suite::ALL.into_iter().find(|s| s.name() == name) else {
            return fail(RtStatus::InvalidArgument, format!("unknown suite `{name}`"));
        };
        let spec = ProblemSpec::Verify {
            suite,
            order: Some(order),
            trials: (trials > 0).then_some(trials),
            seed: Some(seed),
        };
        match cli::run(&spec, &RunOptions::default()) {
            Ok(r) => {
                *out_passed = r.status == Status::Pass;
                RtStatus::Ok
            }
            Err(e) => fail(cli_status(&e), e.to_string()),
        }
    })
}

/// Builds one of the series `G`, `eta12`, `F` (uses `genus`) or `H` to
/// order `order`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_series_new(name: *const c_char, genus: u32, order: usize, out: *mut *mut RtSeries) -> RtStatus {
    guard(|| {
        if out.is_null() {
            return fail(RtStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let req = match name {
            "G" => SeriesRequest::G,
            "eta12" => SeriesRequest::Eta12,
            "F" => SeriesRequest::F(genus),
            "H" => SeriesRequest::H,
            other => return fail(RtStatus::InvalidArgument, format!("unknown series `{other}`")),
        };
        let inner = cli::series_of(req, order);
        *out = Box::into_raw(Box::new(RtSeries { inner }));
        RtStatus::Ok
    })
}

/// Number of stored coefficients (order + 1); 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rt_series_len(s: *const RtSeries) -> usize {
    s.as_ref().map_or(0, |s| s.inner.coeffs().len())
}

unsafe fn series_coeff<'a>(s: *const RtSeries, k: usize) -> Result<&'a BigRational, RtStatus> {
    let Some(s) = s.as_ref() else {
        return Err(fail(RtStatus::NullPointer, "series handle is null"));
    };
    s.inner
        .coeffs()
        .get(k)
        .ok_or_else(|| fail(RtStatus::InvalidArgument, format!("no coefficient at q^{k}")))
}

/// Coefficient of `q^k` as a string `p` or `p/q` in lowest terms.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_series_coeff_string(s: *const RtSeries, k: usize, out: *mut *mut c_char) -> RtStatus {
    guard(|| {
        if out.is_null() {
            return fail(RtStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        match series_coeff(s, k) {
            Ok(c) => {
                *out = into_c_string(c.to_string());
                RtStatus::Ok
            }
            Err(st) => st,
        }
    })
}

/// Coefficient of `q^k` as numerator and positive denominator.
/// Returns `RT_STATUS_OVERFLOW` when either does not fit in 64 bits.
///
/// # Safety
/// `s` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_series_coeff_i64(s: *const RtSeries, k: usize, num: *mut i64, den: *mut i64) -> RtStatus {
    guard(|| {
        if num.is_null() || den.is_null() {
            return fail(RtStatus::NullPointer, "num or den is null");
        }
        let c = match series_coeff(s, k) {
            Ok(c) => c,
            Err(st) => return st,
        };
        match (c.numer().to_i64(), c.denom().to_i64()) {
            (Some(n), Some(d)) => {
                *num = n;
                *den = d;
                RtStatus::Ok
            }
            _ => fail(RtStatus::Overflow, format!("coefficient {c} does not fit in 64 bits")),
        }
    })
}

/// # Safety
/// `s` must be NULL or a handle from `rt_series_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rt_series_free(s: *mut RtSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// `Z^rank` modulo the columns of `relations`, given row-major as
/// `rank × cols` entries.
///
/// # Safety
/// `relations` must point to `rank * cols` values (may be NULL when either
/// is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_quotient_new(
    rank: usize,
    relations: *const i64,
    cols: usize,
    out: *mut *mut RtQuotient,
) -> RtStatus {
    guard(|| {
        if out.is_null() {
            return fail(RtStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(len) = rank.checked_mul(cols) else {
            return fail(RtStatus::Overflow, "rank * cols overflows");
        };
        let data: Vec<BigInt> = if len == 0 {
            vec![]
        } else if relations.is_null() {
            return fail(RtStatus::NullPointer, "relations is null");
        } else {
            std::slice::from_raw_parts(relations, len).iter().map(|&x| BigInt::from(x)).collect()
        };
        let built = IntMatrix::new(rank, cols, data).and_then(|m| QuotientModule::new(rank, m));
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RtQuotient { inner }));
                RtStatus::Ok
            }
            Err(e) => fail(RtStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Free rank of the group; 0 for NULL.
///
/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rt_quotient_free_rank(q: *const RtQuotient) -> usize {
    q.as_ref().map_or(0, |q| q.inner.structure().free_rank)
}

/// Invariant factors `d_1 | d_2 | …` (all > 1). `*out_len` receives the
/// count; when `cap` is too small nothing is written and the call returns
/// `RT_STATUS_OVERFLOW`, so `cap = 0` queries the size.
///
/// # Safety
/// `q` must be a live handle; `out` must hold `cap` values; `out_len` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_quotient_torsion(
    q: *const RtQuotient,
    out: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> RtStatus {
    guard(|| {
        let Some(q) = q.as_ref() else {
            return fail(RtStatus::NullPointer, "quotient handle is null");
        };
        if out_len.is_null() {
            return fail(RtStatus::NullPointer, "out_len is null");
        }
        let torsion = &q.inner.structure().torsion;
        *out_len = torsion.len();
        if cap < torsion.len() {
            return fail(RtStatus::Overflow, format!("buffer holds {cap}, need {}", torsion.len()));
        }
        let Some(vals) = torsion.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>() else {
            return fail(RtStatus::Overflow, "invariant factor does not fit in 64 bits");
        };
        if !vals.is_empty() {
            if out.is_null() {
                return fail(RtStatus::NullPointer, "out is null");
            }
            std::slice::from_raw_parts_mut(out, vals.len()).copy_from_slice(&vals);
        }
        RtStatus::Ok
    })
}

/// Canonical representative of the class of `v` (length = rank).
///
/// # Safety
/// `q` must be a live handle; `v` and `out` must hold `rank` values and may
/// alias.
#[no_mangle]
pub unsafe extern "C" fn rt_quotient_normal_form(q: *const RtQuotient, v: *const i64, out: *mut i64) -> RtStatus {
    guard(|| {
        let Some(q) = q.as_ref() else {
            return fail(RtStatus::NullPointer, "quotient handle is null");
        };
        let n = q.inner.ambient_rank();
        if n == 0 {
            return RtStatus::Ok;
        }
        if v.is_null() || out.is_null() {
            return fail(RtStatus::NullPointer, "v or out is null");
        }
        let input: Vec<BigInt> = std::slice::from_raw_parts(v, n).iter().map(|&x| BigInt::from(x)).collect();
        let nf = match q.inner.normal_form(&input) {
            Ok(nf) => nf,
            Err(e) => return fail(RtStatus::ComputeError, e.to_string()),
        };
        let Some(vals) = nf.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>() else {
            return fail(RtStatus::Overflow, "normal form does not fit in 64 bits");
        };
        std::slice::from_raw_parts_mut(out, n).copy_from_slice(&vals);
        RtStatus::Ok
    })
}

/// # Safety
/// `q` must be NULL or a handle from `rt_quotient_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rt_quotient_free(q: *mut RtQuotient) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}
