//! C ABI over `fqcodes`.
//!
//! Objects are opaque handles released with their `*_free` function. Every
//! fallible call returns an [`FqStatus`]; on failure the message is kept per
//! thread and can be fetched with [`fq_last_error`]. Strings handed out by
//! the library must be released with [`fq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fqcodes::codes::{dual, GeneratorMatrixCode};
use fqcodes::distance::{min_distance_exact, min_distance_upper, WeightProfile};
use fqcodes::doc::{CodeDefinition, MatrixDocument};
use fqcodes::gray::image_of;
use fqcodes::lcd::{hull, is_lcd, lcd_pipeline};
use fqcodes::tables::{verify_all, TableId, VerificationReport, VerifyOptions};
use fqcodes::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FqStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed document, polynomial or element.
    Parse = 3,
    /// Unsupported or invalid field.
    InvalidField = 4,
    /// Structural conditions on the generators fail.
    Conditions = 5,
    /// Exact enumeration would exceed the budget.
    BudgetExceeded = 6,
    ShapeMismatch = 7,
    Internal = 8,
}

/// A linear code over F_q, given by its reduced generator matrix, with its
/// split into `α` F_q coordinates and `β` F_{q²} coordinates.
pub struct FqCode(GeneratorMatrixCode);

/// A table verification report.
pub struct FqReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> FqStatus {
    match e {
        Error::Parse(_) | Error::CoefficientDomain { .. } | Error::Document(_) | Error::UnknownTable(_) => {
            FqStatus::Parse
        }
        Error::InvalidTower(_) | Error::TowerMismatch { .. } | Error::ElementOutOfRange { .. } => FqStatus::InvalidField,
        Error::Conditions(_) | Error::NotCanonical(_) => FqStatus::Conditions,
        Error::BudgetExceeded { .. } => FqStatus::BudgetExceeded,
        Error::ShapeMismatch(_) => FqStatus::ShapeMismatch,
        _ => FqStatus::Internal,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), (FqStatus, String)>) -> FqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FqStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FqStatus::Internal
        }
    }
}

fn lib<T>(r: fqcodes::Result<T>) -> Result<T, (FqStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (FqStatus, String) {
    (FqStatus::NullArgument, format!("`{name}` is null"))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, (FqStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FqStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn code<'a>(p: *const FqCode) -> Result<&'a GeneratorMatrixCode, (FqStatus, String)> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| null("code"))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Result<(), (FqStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

/// Message of the last failed call on this thread, or null. Release with
/// [`fq_string_free`].
#[no_mangle]
pub extern "C" fn fq_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn fq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the module closure of a cyclic-code definition document
/// (`{"q", "alpha", "beta", "s", "l", "g", "h", "k"}`). With `relaxed` set
/// only the divisibility conditions are enforced.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_from_definition(json: *const c_char, relaxed: bool, out: *mut *mut FqCode) -> FqStatus {
    guard(|| {
        let def = lib(CodeDefinition::from_json(text(json, "json")?))?;
        let built = if relaxed {
            lib(def.build_relaxed())?.0
        } else {
            lib(def.build())?
        };
        put(out, Box::into_raw(Box::new(FqCode(built.closure().clone()))), "out")
    })
}

/// Code spanned by the rows of a matrix document
/// (`{"q", "alpha", "beta", "rows"}`); no cyclicity is assumed.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_from_matrix(json: *const c_char, out: *mut *mut FqCode) -> FqStatus {
    guard(|| {
        let doc = lib(MatrixDocument::from_json(text(json, "json")?))?;
        let tower = lib(doc.tower())?;
        let words = lib(doc.words(&tower))?;
        let c = lib(GeneratorMatrixCode::from_words(&tower, doc.alpha, doc.beta, &words))?;
        put(out, Box::into_raw(Box::new(FqCode(c))), "out")
    })
}

/// # Safety
/// `code` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fq_code_free(code: *mut FqCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Field size `q`, block lengths and F_q-dimension.
///
/// # Safety
/// `code` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_params(
    code: *const FqCode,
    q: *mut usize,
    alpha: *mut usize,
    beta: *mut usize,
    dimension: *mut usize,
) -> FqStatus {
    guard(|| {
        let c = self::code(code)?;
        put(q, c.tower().q(), "q")?;
        put(alpha, c.alpha(), "alpha")?;
        put(beta, c.beta(), "beta")?;
        put(dimension, c.rank(), "dimension")
    })
}

/// Whether the code is invariant under the simultaneous cyclic shift.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_is_cyclic(code: *const FqCode, out: *mut bool) -> FqStatus {
    guard(|| put(out, self::code(code)?.is_cyclic(), "out"))
}

/// Dual under the F_{q²}-valued inner product.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_dual(code: *const FqCode, out: *mut *mut FqCode) -> FqStatus {
    guard(|| {
        let d = dual(self::code(code)?);
        put(out, Box::into_raw(Box::new(FqCode(d))), "out")
    })
}

/// Gray image, an F_q-linear code of length `α + 2β` (returned with
/// `β = 0`).
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_gray_image(code: *const FqCode, out: *mut *mut FqCode) -> FqStatus {
    guard(|| {
        let image = image_of(self::code(code)?).base().clone();
        put(out, Box::into_raw(Box::new(FqCode(image))), "out")
    })
}

/// Exact minimum distance in the mixed weight (one per nonzero coordinate
/// of either alphabet). Writes 0 for the zero code. Fails with
/// `BudgetExceeded` when the code has more than `budget` codewords.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_min_distance(code: *const FqCode, budget: u64, out: *mut usize) -> FqStatus {
    guard(|| {
        let c = self::code(code)?;
        let r = lib(min_distance_exact(c, &WeightProfile::mixed(c.alpha(), c.beta()), budget as u128))?;
        put(out, r.value.unwrap_or(0), "out")
    })
}

/// Upper bound on the minimum distance from `samples` seeded
/// information-set samples; the weight of a codeword actually found.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_distance_upper_bound(
    code: *const FqCode,
    samples: usize,
    seed: u64,
    out: *mut usize,
) -> FqStatus {
    guard(|| {
        let c = self::code(code)?;
        let r = lib(min_distance_upper(c, &WeightProfile::mixed(c.alpha(), c.beta()), samples, seed))?;
        put(out, r.value.unwrap_or(0), "out")
    })
}

/// Dimension of the Euclidean hull of the expanded code over F_q.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_hull_dimension(code: *const FqCode, out: *mut usize) -> FqStatus {
    guard(|| put(out, hull(self::code(code)?).rank(), "out"))
}

/// Whether the expanded code over F_q is LCD.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_code_is_lcd(code: *const FqCode, out: *mut bool) -> FqStatus {
    guard(|| put(out, is_lcd(self::code(code)?), "out"))
}

/// The LCD certificate of a matrix document, as a JSON object. Release the
/// string with [`fq_string_free`].
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_lcd_certificate_json(json: *const c_char, out: *mut *mut c_char) -> FqStatus {
    guard(|| {
        let doc = lib(MatrixDocument::from_json(text(json, "json")?))?;
        let tower = lib(doc.tower())?;
        let words = lib(doc.words(&tower))?;
        let cert = lib(lcd_pipeline(&tower, &words))?;
        let s = serde_json::to_string(&cert).map_err(|e| (FqStatus::Internal, e.to_string()))?;
        put(out, owned_string(s), "out")
    })
}

/// Verifies the stored tables: `ids` is `"1"`, `"2"`, `"3"` or `"all"`.
/// `long_budget` raises the enumeration budget to 3^18 codewords.
///
/// # Safety
/// `ids` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_tables_verify(
    ids: *const c_char,
    budget: u64,
    seed: u64,
    long_budget: bool,
    out: *mut *mut FqReport,
) -> FqStatus {
    guard(|| {
        let ids = lib(TableId::parse_list(text(ids, "ids")?))?;
        let opts = VerifyOptions {
            budget: budget as u128,
            seed,
            long: long_budget,
            ..VerifyOptions::default()
        };
        put(out, Box::into_raw(Box::new(FqReport(verify_all(&ids, &opts)))), "out")
    })
}

/// Whether every exactly-checkable claim in the report holds.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_report_ok(report: *const FqReport, out: *mut bool) -> FqStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        put(out, r.0.ok(), "out")
    })
}

/// The report as JSON (`csv` false) or CSV (`csv` true). Release the string
/// with [`fq_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fq_report_render(report: *const FqReport, csv: bool, out: *mut *mut c_char) -> FqStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        put(out, owned_string(if csv { r.0.to_csv() } else { r.0.to_json() }), "out")
    })
}

/// # Safety
/// `report` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fq_report_free(report: *mut FqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
