//! C interface to the `x^13 + y^13 = z^p` toolkit.
//!
//! The surface mirrors the command-line pipeline: unit sieves, the modular
//! elimination step, curve point verification, and the exhaustive small
//! search. Long-lived results live behind opaque handles (`GfeSieve`,
//! `GfeElimination`) with scalar accessors plus a JSON getter producing the
//! same reports the CLI prints; stateless queries return JSON directly.
//!
//! Conventions:
//!
//! - Every fallible entry point returns a [`GfeStatus`]. On failure a
//!   thread-local message is recorded and can be read with
//!   [`gfe_last_error`]; it stays valid until the next failing call on the
//!   same thread.
//! - Strings handed out are NUL-terminated, allocated here, and must be
//!   released with [`gfe_string_free`]; handles with their `_free`
//!   function. Freeing null is a no-op.
//! - Panics never cross the boundary; they are trapped and reported as
//!   [`GfeStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use gfe1313::curves::{is_on_curve, make_curve, point_to_solution_test, CurveKind, CurvePoint};
use gfe1313::frey::{
    eliminate_extraneous, EliminationStatus, FreyData, FreyError, AUXILIARY_PAIRS,
};
use gfe1313::oracle::{search, SearchConfig};
use gfe1313::report::{
    curve_kind_label, ModularSieveReport, PointCheckReport, PointVerdictReport, SearchReport,
    SieveReport,
};
use gfe1313::ring::CubicNum;
use gfe1313::sieve::{run_sieve, validate_sieve_prime, SieveCase};

/// Return status of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfeStatus {
    /// The call succeeded and all out-parameters were written.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument failed validation: unsupported prime, unknown case
    /// code, malformed element or JSON text.
    InvalidArgument = 2,
    /// The computation itself failed; `gfe_last_error` has the reason.
    Compute = 3,
    /// A panic was trapped at the boundary. State is still consistent but
    /// the result was discarded.
    Internal = 4,
}

/// `sieve_case` code for the branch with `a + b` coprime to 13.
pub const GFE_CASE_ONE: u32 = 1;
/// `sieve_case` code for the branch with `13 | a + b`.
pub const GFE_CASE_TWO: u32 = 2;

/// `gfe_elimination_status` result: every matching pair was ruled out.
pub const GFE_ELIMINATION_ELIMINATED: i32 = 0;
/// `gfe_elimination_status` result: curve data or targets were missing.
pub const GFE_ELIMINATION_SKIPPED: i32 = 1;
/// `gfe_elimination_status` result: some pair satisfied a congruence.
pub const GFE_ELIMINATION_UNRESOLVED: i32 = 2;

/// Opaque result of one unit-sieve run.
pub struct GfeSieve {
    outcome: gfe1313::sieve::SieveOutcome,
}

/// Opaque result of one modular elimination run.
pub struct GfeElimination {
    report: gfe1313::frey::EliminationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = RefCell::new(None);
}

fn fail(status: GfeStatus, message: String) -> GfeStatus {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
    status
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Argument errors get `InvalidArgument`; genuine mid-computation failures
/// get `Compute`.
fn frey_status(err: &FreyError) -> GfeStatus {
    match err {
        FreyError::NotPrime(_)
        | FreyError::BadAuxiliary { .. }
        | FreyError::Data(_)
        | FreyError::Sieve(gfe1313::sieve::SieveError::UnsupportedPrime(_)) => {
            GfeStatus::InvalidArgument
        }
        _ => GfeStatus::Compute,
    }
}

fn guarded<F: FnOnce() -> GfeStatus>(body: F) -> GfeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(
            GfeStatus::Internal,
            "internal panic trapped at the C boundary".into(),
        ),
    }
}

/// # Safety
/// `out` must be valid for writing one pointer.
unsafe fn emit_string(text: String, out: *mut *mut c_char) -> GfeStatus {
    match CString::new(text) {
        Ok(c) => {
            clear_error();
            *out = c.into_raw();
            GfeStatus::Ok
        }
        Err(_) => fail(GfeStatus::Internal, "report contained a NUL byte".into()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, GfeStatus> {
    serde_json::to_string_pretty(value).map_err(|e| {
        fail(
            GfeStatus::Internal,
            format!("report serialization failed: {e}"),
        )
    })
}

/// Version of the library, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gfe_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failure on this thread, or null if the last call
/// succeeded. The pointer is owned by the library; do not free it. It is
/// invalidated by the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gfe_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned through a `char **`
/// out-parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gfe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the unit sieve for exponent `p` (an odd prime other than 13 with
/// `p % 13 != 1`) and the given case code (`GFE_CASE_ONE` or
/// `GFE_CASE_TWO`). On success `*out` owns the result; release it with
/// [`gfe_sieve_free`].
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn gfe_sieve_run(
    p: u64,
    sieve_case: u32,
    out: *mut *mut GfeSieve,
) -> GfeStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GfeStatus::NullPointer, "out handle pointer is null".into());
        }
        let case = match sieve_case {
            GFE_CASE_ONE => SieveCase::CaseI,
            GFE_CASE_TWO => SieveCase::CaseII,
            other => {
                return fail(
                    GfeStatus::InvalidArgument,
                    format!("unknown sieve case code {other}"),
                )
            }
        };
        match run_sieve(p, case) {
            Ok(outcome) => {
                clear_error();
                *out = Box::into_raw(Box::new(GfeSieve { outcome }));
                GfeStatus::Ok
            }
            Err(e @ gfe1313::sieve::SieveError::UnsupportedPrime(_)) => {
                fail(GfeStatus::InvalidArgument, e.to_string())
            }
            Err(e) => fail(GfeStatus::Compute, e.to_string()),
        }
    })
}

/// Exponent `p` of the run behind `handle`; 0 if `handle` is null.
///
/// # Safety
/// `handle` must be null or a live sieve handle.
#[no_mangle]
pub unsafe extern "C" fn gfe_sieve_exponent(handle: *const GfeSieve) -> u64 {
    handle.as_ref().map_or(0, |h| h.outcome.p)
}

/// Number of candidate pairs the run classed; 0 if `handle` is null.
///
/// # Safety
/// `handle` must be null or a live sieve handle.
#[no_mangle]
pub unsafe extern "C" fn gfe_sieve_candidate_count(handle: *const GfeSieve) -> u64 {
    handle
        .as_ref()
        .map_or(0, |h| h.outcome.candidate_count as u64)
}

/// Number of surviving unit classes; 0 if `handle` is null.
///
/// # Safety
/// `handle` must be null or a live sieve handle.
#[no_mangle]
pub unsafe extern "C" fn gfe_sieve_survivor_count(handle: *const GfeSieve) -> u64 {
    handle
        .as_ref()
        .map_or(0, |h| h.outcome.survivors.len() as u64)
}

/// Writes the run's full report as a JSON string to `*out`; free it with
/// [`gfe_string_free`].
///
/// # Safety
/// `handle` must be a live sieve handle; `out` must be valid for writing
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn gfe_sieve_report_json(
    handle: *const GfeSieve,
    out: *mut *mut c_char,
) -> GfeStatus {
    guarded(|| {
        let Some(h) = handle.as_ref() else {
            return fail(GfeStatus::NullPointer, "sieve handle is null".into());
        };
        if out.is_null() {
            return fail(GfeStatus::NullPointer, "out string pointer is null".into());
        }
        match to_json(&SieveReport::from(&h.outcome)) {
            Ok(text) => emit_string(text, out),
            Err(status) => status,
        }
    })
}

/// Releases a sieve handle. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a live sieve handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gfe_sieve_free(handle: *mut GfeSieve) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Default auxiliary prime `q` paired with sieve exponent `p`, or 0 when
/// the table has no entry.
#[no_mangle]
pub extern "C" fn gfe_auxiliary_prime_for(p: u64) -> u64 {
    AUXILIARY_PAIRS
        .iter()
        .find(|&&(tp, _)| tp == p)
        .map_or(0, |&(_, q)| q)
}

/// Runs the modular elimination step for `(p, q)`. Pass `q = 0` to use the
/// built-in auxiliary-prime table. `frey_data_json` may be null (the step
/// is then reported as skipped) or a JSON document with the same schema as
/// the CLI's data file. On success `*out` owns the result; release it with
/// [`gfe_elimination_free`].
///
/// # Safety
/// `frey_data_json` must be null or a NUL-terminated string; `out` must be
/// valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn gfe_modular_sieve_run(
    p: u64,
    q: u64,
    frey_data_json: *const c_char,
    out: *mut *mut GfeElimination,
) -> GfeStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GfeStatus::NullPointer, "out handle pointer is null".into());
        }
        if let Err(e) = validate_sieve_prime(p) {
            return fail(GfeStatus::InvalidArgument, e.to_string());
        }
        let q = if q == 0 {
            match gfe_auxiliary_prime_for(p) {
                0 => {
                    return fail(
                        GfeStatus::InvalidArgument,
                        format!("no default auxiliary prime for p = {p}; pass q explicitly"),
                    )
                }
                table_q => table_q,
            }
        } else {
            q
        };
        let data = if frey_data_json.is_null() {
            None
        } else {
            let text = match CStr::from_ptr(frey_data_json).to_str() {
                Ok(t) => t,
                Err(_) => {
                    return fail(
                        GfeStatus::InvalidArgument,
                        "curve data is not valid UTF-8".into(),
                    )
                }
            };
            match FreyData::from_json(text) {
                Ok(d) => Some(d),
                Err(e) => return fail(GfeStatus::InvalidArgument, e.to_string()),
            }
        };
        match eliminate_extraneous(p, q, data.as_ref()) {
            Ok(report) => {
                clear_error();
                *out = Box::into_raw(Box::new(GfeElimination { report }));
                GfeStatus::Ok
            }
            Err(e) => fail(frey_status(&e), e.to_string()),
        }
    })
}

/// Outcome code of the elimination behind `handle`:
/// `GFE_ELIMINATION_ELIMINATED`, `GFE_ELIMINATION_SKIPPED` or
/// `GFE_ELIMINATION_UNRESOLVED`; -1 if `handle` is null.
///
/// # Safety
/// `handle` must be null or a live elimination handle.
#[no_mangle]
pub unsafe extern "C" fn gfe_elimination_status(handle: *const GfeElimination) -> i32 {
    match handle.as_ref() {
        None => -1,
        Some(h) => match h.report.status {
            EliminationStatus::Eliminated => GFE_ELIMINATION_ELIMINATED,
            EliminationStatus::Skipped { .. } => GFE_ELIMINATION_SKIPPED,
            EliminationStatus::Unresolved { .. } => GFE_ELIMINATION_UNRESOLVED,
        },
    }
}

/// Number of residue pairs matching the extraneous class mod `q`; 0 if
/// `handle` is null.
///
/// # Safety
/// `handle` must be null or a live elimination handle.
#[no_mangle]
pub unsafe extern "C" fn gfe_elimination_pair_count(handle: *const GfeElimination) -> u64 {
    handle
        .as_ref()
        .map_or(0, |h| h.report.pair_list.pairs.len() as u64)
}

/// Writes the elimination report as a JSON string to `*out`; free it with
/// [`gfe_string_free`].
///
/// # Safety
/// `handle` must be a live elimination handle; `out` must be valid for
/// writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn gfe_elimination_report_json(
    handle: *const GfeElimination,
    out: *mut *mut c_char,
) -> GfeStatus {
    guarded(|| {
        let Some(h) = handle.as_ref() else {
            return fail(GfeStatus::NullPointer, "elimination handle is null".into());
        };
        if out.is_null() {
            return fail(GfeStatus::NullPointer, "out string pointer is null".into());
        }
        match to_json(&ModularSieveReport::from(&h.report)) {
            Ok(text) => emit_string(text, out),
            Err(status) => status,
        }
    })
}

/// Releases an elimination handle. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a live elimination handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gfe_elimination_free(handle: *mut GfeElimination) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Checks a point against the integral curve model for exponent `p` and,
/// when it lies on the curve, runs the point-to-solution test. `point` is
/// `"INF"` or `"X;Y"` with each coordinate a comma-joined rational triple.
/// `on_curve` may be null; `out` receives the JSON report.
///
/// # Safety
/// `point` must be a NUL-terminated string; `on_curve` must be null or
/// valid for writing one `bool`; `out` must be valid for writing one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn gfe_verify_point(
    p: u64,
    point: *const c_char,
    on_curve: *mut bool,
    out: *mut *mut c_char,
) -> GfeStatus {
    guarded(|| {
        if point.is_null() {
            return fail(GfeStatus::NullPointer, "point string is null".into());
        }
        if out.is_null() {
            return fail(GfeStatus::NullPointer, "out string pointer is null".into());
        }
        if let Err(e) = validate_sieve_prime(p) {
            return fail(GfeStatus::InvalidArgument, e.to_string());
        }
        let text = match CStr::from_ptr(point).to_str() {
            Ok(t) => t,
            Err(_) => {
                return fail(
                    GfeStatus::InvalidArgument,
                    "point is not valid UTF-8".into(),
                )
            }
        };
        let pt = match CurvePoint::from_str(text) {
            Ok(pt) => pt,
            Err(e) => return fail(GfeStatus::InvalidArgument, format!("point: {e}")),
        };
        let model = match make_curve(p, &CubicNum::one(), CurveKind::CInt) {
            Ok(m) => m,
            Err(e) => return fail(GfeStatus::Compute, e.to_string()),
        };
        let lies_on = is_on_curve(&pt, &model);
        let verdict = if lies_on {
            match point_to_solution_test(&pt, &model) {
                Ok(v) => Some(v),
                Err(e) => return fail(GfeStatus::Compute, e.to_string()),
            }
        } else {
            None
        };
        let report = PointCheckReport {
            p,
            kind: curve_kind_label(CurveKind::CInt).to_string(),
            point: PointVerdictReport::new(&pt, lies_on, verdict.as_ref()),
        };
        if !on_curve.is_null() {
            *on_curve = lies_on;
        }
        match to_json(&report) {
            Ok(text) => emit_string(text, out),
            Err(status) => status,
        }
    })
}

/// Exhaustive search for `a^13 + b^13 = c^n` with `|a|, |b| <= bound`,
/// coprime `(a, b)`, over the given exponents (`n >= 2`). Pass
/// `exponent_count = 0` for the default range 2 through 30. `out` receives
/// the JSON report.
///
/// # Safety
/// `exponents` must be null only when `exponent_count` is 0, otherwise
/// valid for reading `exponent_count` values; `out` must be valid for
/// writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn gfe_search_json(
    bound: u64,
    exponents: *const u32,
    exponent_count: usize,
    out: *mut *mut c_char,
) -> GfeStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GfeStatus::NullPointer, "out string pointer is null".into());
        }
        if bound == 0 {
            return fail(
                GfeStatus::InvalidArgument,
                "search bound must be at least 1".into(),
            );
        }
        let cfg = if exponent_count == 0 {
            SearchConfig::all_n_up_to(bound, 30)
        } else {
            if exponents.is_null() {
                return fail(GfeStatus::NullPointer, "exponent array is null".into());
            }
            let ns = std::slice::from_raw_parts(exponents, exponent_count);
            if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
                return fail(
                    GfeStatus::InvalidArgument,
                    format!("exponent {bad} is below 2"),
                );
            }
            let mut sorted = ns.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            SearchConfig::new(bound, sorted)
        };
        let solutions = search(&cfg);
        match to_json(&SearchReport::new(&cfg, &solutions)) {
            Ok(text) => emit_string(text, out),
            Err(status) => status,
        }
    })
}
