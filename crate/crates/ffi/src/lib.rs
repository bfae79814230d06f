//! C ABI over `cdlab`.
//!
//! Elements are opaque `CdElement` handles released with
//! `cd_element_free`. Strings returned through `char **` out-parameters are
//! NUL-terminated UTF-8 JSON and must be released with `cd_string_free`.
//! Every function returns a `CdStatus`; on failure `cd_last_error` gives a
//! message for the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cdlab::annih::AnnReport;
use cdlab::bracket::BracketPair;
use cdlab::dlocus::is_dlocus;
use cdlab::verify;
use cdlab::{CdError, Element};

/// Opaque element of some `A_n`.
pub struct CdElement(Element);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Json = 4,
    LevelMismatch = 5,
    LevelTooLarge = 6,
    InvalidLevel = 7,
    Precondition = 8,
    DivisionByZero = 9,
    /// A construction identity or a verification check failed.
    CheckFailed = 10,
    UnknownCheck = 11,
    Panic = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(CdStatus, String);

impl From<CdError> for Fail {
    fn from(e: CdError) -> Self {
        let s = match e {
            CdError::DivisionByZero => CdStatus::DivisionByZero,
            CdError::Parse { .. } => CdStatus::Parse,
            CdError::LevelMismatch { .. } => CdStatus::LevelMismatch,
            CdError::LevelTooLarge { .. } => CdStatus::LevelTooLarge,
            CdError::InvalidLevel { .. } => CdStatus::InvalidLevel,
            CdError::Precondition(_) => CdStatus::Precondition,
            CdError::Identity(_) => CdStatus::CheckFailed,
            CdError::Json(_) => CdStatus::Json,
        };
        Fail(s, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<CdStatus, Fail>) -> CdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            CdStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(CdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn elem<'a>(p: *const CdElement) -> Result<&'a Element, Fail> {
    p.as_ref().map(|e| &e.0).ok_or_else(null)
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(CdStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put_element(out: *mut *mut CdElement, e: Element) -> Result<CdStatus, Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(CdElement(e)));
    Ok(CdStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<CdStatus, Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).expect("json has no NUL").into_raw();
    Ok(CdStatus::Ok)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

/// Message for the last failed call on this thread; valid until the next
/// failing call. Never NULL.
#[no_mangle]
pub extern "C" fn cd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse the inline syntax (`"e1 + 1/2 e3 - s2 e7"`, `"(e1, e2)"`).
/// `level < 0` infers the smallest algebra holding every index.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_element_parse(text: *const c_char, level: i32, out: *mut *mut CdElement) -> CdStatus {
    guard(|| {
        let level = u32::try_from(level).ok();
        let e = cdlab::algebra::parse_element(cstr(text)?, level)?;
        put_element(out, e)
    })
}

/// Parse `{"n": .., "coeffs": [..]}`.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_element_from_json(json: *const c_char, out: *mut *mut CdElement) -> CdStatus {
    guard(|| {
        let e: Element = serde_json::from_str(cstr(json)?).map_err(|e| Fail(CdStatus::Json, e.to_string()))?;
        put_element(out, e)
    })
}

/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_element_to_json(e: *const CdElement, out: *mut *mut c_char) -> CdStatus {
    guard(|| put_string(out, to_json(elem(e)?)))
}

/// Basis vector `e_k` of `A_level`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_element_basis(level: u32, k: usize, out: *mut *mut CdElement) -> CdStatus {
    guard(|| {
        cdlab::algebra::table::check_level(level)?;
        if k >> level != 0 {
            return Err(Fail(CdStatus::Precondition, format!("index {k} out of range for A_{level}")));
        }
        put_element(out, Element::basis(level, k))
    })
}

/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_element_level(e: *const CdElement, out: *mut u32) -> CdStatus {
    guard(|| {
        let n = elem(e)?.level();
        *out.as_mut().ok_or_else(null)? = n;
        Ok(CdStatus::Ok)
    })
}

/// # Safety
/// `e` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cd_element_free(e: *mut CdElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `out = a b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_mul(a: *const CdElement, b: *const CdElement, out: *mut *mut CdElement) -> CdStatus {
    guard(|| put_element(out, elem(a)?.try_mul(elem(b)?)?))
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_conj(a: *const CdElement, out: *mut *mut CdElement) -> CdStatus {
    guard(|| put_element(out, elem(a)?.conj()))
}

/// `1` in `*out` when the two are equal.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_element_eq(a: *const CdElement, b: *const CdElement, out: *mut i32) -> CdStatus {
    guard(|| {
        let eq = elem(a)? == elem(b)?;
        *out.as_mut().ok_or_else(null)? = i32::from(eq);
        Ok(CdStatus::Ok)
    })
}

/// Dimension of the left annihilator.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_ann_dim(a: *const CdElement, out: *mut usize) -> CdStatus {
    guard(|| {
        let d = cdlab::annih::ann(elem(a)?).dim();
        *out.as_mut().ok_or_else(null)? = d;
        Ok(CdStatus::Ok)
    })
}

/// Annihilator report with a canonical basis.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_ann_json(a: *const CdElement, out: *mut *mut c_char) -> CdStatus {
    guard(|| put_string(out, to_json(&AnnReport::new(elem(a)?))))
}

/// The bracket `{a, b}` in the next algebra; `a, b` must lie in `C^⊥`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_bracket(a: *const CdElement, b: *const CdElement, out: *mut *mut CdElement) -> CdStatus {
    guard(|| {
        let p = BracketPair::new(elem(a)?.clone(), elem(b)?.clone())?;
        put_element(out, p.to_element())
    })
}

/// D-locus conditions and annihilator dimensions of `{a, b}`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_dlocus_json(a: *const CdElement, b: *const CdElement, out: *mut *mut c_char) -> CdStatus {
    guard(|| {
        let p = BracketPair::new(elem(a)?.clone(), elem(b)?.clone())?;
        put_string(out, to_json(&is_dlocus(&p)))
    })
}

/// Run one registered check, or all of them when `id` is `"all"`. The JSON
/// is written even when a check fails, in which case the status is
/// `CheckFailed`.
///
/// # Safety
/// `id` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cd_verify_json(
    id: *const c_char,
    level: u32,
    trials: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> CdStatus {
    guard(|| {
        let id = cstr(id)?;
        cdlab::algebra::table::check_level(level)?;
        let results = if id == "all" {
            verify::run_all(level, trials, seed)
        } else {
            let check = verify::find(id).ok_or_else(|| Fail(CdStatus::UnknownCheck, format!("unknown check {id:?}")))?;
            vec![verify::run_check(check, level, trials, seed)]
        };
        let failed = results.iter().filter(|r| !r.passed()).count();
        put_string(out, to_json(&results))?;
        if failed > 0 {
            set_error(&format!("{failed} check(s) failed"));
            Ok(CdStatus::CheckFailed)
        } else {
            Ok(CdStatus::Ok)
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn cd_status_name(s: CdStatus) -> *const c_char {
    let name: &'static CStr = match s {
        CdStatus::Ok => c"ok",
        CdStatus::NullPointer => c"null pointer",
        CdStatus::InvalidUtf8 => c"invalid utf-8",
        CdStatus::Parse => c"parse error",
        CdStatus::Json => c"malformed json",
        CdStatus::LevelMismatch => c"level mismatch",
        CdStatus::LevelTooLarge => c"level too large",
        CdStatus::InvalidLevel => c"invalid level",
        CdStatus::Precondition => c"precondition violated",
        CdStatus::DivisionByZero => c"division by zero",
        CdStatus::CheckFailed => c"check failed",
        CdStatus::UnknownCheck => c"unknown check",
        CdStatus::Panic => c"panic",
    };
    name.as_ptr()
}
