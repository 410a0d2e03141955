//! C interface to igmax.
//!
//! Objects are opaque handles created by `igmax_*` constructors and released
//! by the matching `*_free`. Fallible calls return an [`IgmaxStatus`]; on
//! failure `igmax_last_error_message` describes the error on the calling
//! thread. Strings handed out by the library are released with
//! `igmax_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use igmax::cli::docs::parse_cayley;
use igmax::cli::{self, Format, Outcome};
use igmax::presentation::{CayleyTable, GroupPresentation, TietzeLimits};
use igmax::verify::{ReportOptions, Verdict};
use igmax::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgmaxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    ValidationError = 5,
    FormatError = 6,
    UnsupportedInput = 7,
    PreconditionViolation = 8,
    CapacityExceeded = 9,
    ConstructionInvariant = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgmaxVerdict {
    Pass = 0,
    PassWithAbelianization = 1,
    Fail = 2,
    Inconclusive = 3,
    None = 4,
}

/// Resource limits; start from `igmax_options_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IgmaxOptions {
    pub closure_cap: usize,
    pub coset_cap: usize,
    pub tietze_passes: usize,
}

/// A validated group multiplication table.
pub struct IgmaxCayley(CayleyTable);

/// A parsed group presentation.
pub struct IgmaxPresentation(GroupPresentation);

/// The result of a pipeline run.
pub struct IgmaxReport(Outcome);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> IgmaxStatus {
    match e.root() {
        Error::InvalidArgument(_) => IgmaxStatus::InvalidArgument,
        Error::Parse { .. } => IgmaxStatus::ParseError,
        Error::Validation(_) => IgmaxStatus::ValidationError,
        Error::Format(_) | Error::Json(_) => IgmaxStatus::FormatError,
        Error::UnsupportedInput(_) => IgmaxStatus::UnsupportedInput,
        Error::PreconditionViolation(_) => IgmaxStatus::PreconditionViolation,
        Error::CapacityExceeded { .. } | Error::SmithOverflow => IgmaxStatus::CapacityExceeded,
        Error::ConstructionInvariant(_) => IgmaxStatus::ConstructionInvariant,
        _ => IgmaxStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (IgmaxStatus, String)>) -> IgmaxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IgmaxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IgmaxStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (IgmaxStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (IgmaxStatus, String) {
    (IgmaxStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (IgmaxStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (IgmaxStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn options(o: *const IgmaxOptions) -> Result<ReportOptions, (IgmaxStatus, String)> {
    let o = if o.is_null() {
        igmax_options_default()
    } else {
        *o
    };
    if o.closure_cap == 0 || o.coset_cap == 0 || o.tietze_passes == 0 {
        return Err((IgmaxStatus::InvalidArgument, "caps must be positive".into()));
    }
    Ok(ReportOptions {
        closure_cap: o.closure_cap,
        coset_cap: o.coset_cap,
        tietze: TietzeLimits {
            max_passes: o.tietze_passes,
            ..TietzeLimits::default()
        },
        extra_generators: Vec::new(),
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn igmax_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn igmax_options_default() -> IgmaxOptions {
    let d = ReportOptions::default();
    IgmaxOptions {
        closure_cap: d.closure_cap,
        coset_cap: d.coset_cap,
        tietze_passes: d.tietze.max_passes,
    }
}

/// Parses `{"elements": [...], "table": [[...]]}` with 1-based indices or
/// element names, identity first.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igmax_cayley_from_json(
    json: *const c_char,
    out: *mut *mut IgmaxCayley,
) -> IgmaxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = parse_cayley(text(json, "json")?).map_err(lib_err)?;
        put(out, IgmaxCayley(t));
        Ok(())
    })
}

/// # Safety
/// `t` must come from `igmax_cayley_from_json` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn igmax_cayley_order(t: *const IgmaxCayley) -> usize {
    t.as_ref().map_or(0, |t| t.0.order())
}

/// # Safety
/// `t` must come from `igmax_cayley_from_json` or be null.
#[no_mangle]
pub unsafe extern "C" fn igmax_cayley_free(t: *mut IgmaxCayley) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Parses a presentation in the line or bracket layout.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igmax_presentation_parse(
    src: *const c_char,
    out: *mut *mut IgmaxPresentation,
) -> IgmaxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = GroupPresentation::parse(text(src, "src")?).map_err(lib_err)?;
        put(out, IgmaxPresentation(p));
        Ok(())
    })
}

/// # Safety
/// `p` must come from `igmax_presentation_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn igmax_presentation_free(p: *mut IgmaxPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Construction from a presentation. `opts` may be null for defaults.
///
/// # Safety
/// Pointers must be valid; `p` from `igmax_presentation_parse`.
#[no_mangle]
pub unsafe extern "C" fn igmax_run_construct1(
    p: *const IgmaxPresentation,
    opts: *const IgmaxOptions,
    out: *mut *mut IgmaxReport,
) -> IgmaxStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("presentation"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let o = cli::construct1(&p.0, &options(opts)?).map_err(lib_err)?;
        put(out, IgmaxReport(o));
        Ok(())
    })
}

/// Construction from a Cayley table. `opts` may be null for defaults.
///
/// # Safety
/// Pointers must be valid; `t` from `igmax_cayley_from_json`.
#[no_mangle]
pub unsafe extern "C" fn igmax_run_construct2(
    t: *const IgmaxCayley,
    opts: *const IgmaxOptions,
    out: *mut *mut IgmaxReport,
) -> IgmaxStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("table"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let o = cli::construct2(&t.0, &options(opts)?).map_err(lib_err)?;
        put(out, IgmaxReport(o));
        Ok(())
    })
}

/// The pure rectangular band with `rows` rows and `cols` columns.
///
/// # Safety
/// `out` must be a valid pointer; `opts` valid or null.
#[no_mangle]
pub unsafe extern "C" fn igmax_run_rectband(
    rows: usize,
    cols: usize,
    opts: *const IgmaxOptions,
    out: *mut *mut IgmaxReport,
) -> IgmaxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let o = cli::rectband(rows, cols, &options(opts)?).map_err(lib_err)?;
        put(out, IgmaxReport(o));
        Ok(())
    })
}

/// # Safety
/// `r` must come from an `igmax_run_*` call and not be freed.
#[no_mangle]
pub unsafe extern "C" fn igmax_report_verdict(r: *const IgmaxReport) -> IgmaxVerdict {
    match r.as_ref().and_then(|r| r.0.verdict) {
        Some(Verdict::Pass) => IgmaxVerdict::Pass,
        Some(Verdict::PassWithAbelianization) => IgmaxVerdict::PassWithAbelianization,
        Some(Verdict::Fail) => IgmaxVerdict::Fail,
        Some(Verdict::Inconclusive) => IgmaxVerdict::Inconclusive,
        None => IgmaxVerdict::None,
    }
}

/// The structured report, as produced by `igmax --format structured`.
/// Release with `igmax_string_free`.
///
/// # Safety
/// `r` must come from an `igmax_run_*` call; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn igmax_report_to_json(
    r: *const IgmaxReport,
    out: *mut *mut c_char,
) -> IgmaxStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CString::new(r.0.render(Format::Structured))
            .map_err(|e| (IgmaxStatus::Internal, e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `r` must come from an `igmax_run_*` call or be null.
#[no_mangle]
pub unsafe extern "C" fn igmax_report_free(r: *mut IgmaxReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn igmax_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
