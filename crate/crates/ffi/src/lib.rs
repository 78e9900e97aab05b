//! C ABI over the mirabolic library.
//!
//! Module elements cross the boundary as opaque `MirabolicElement` handles
//! owned by the caller and released with `mirabolic_element_free`. Every
//! function returns a `MirabolicStatus`; on failure a message is available
//! from `mirabolic_last_error` on the same thread. Strings returned by the
//! library are released with `mirabolic_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mirabolic::verify::{run_criterion, verify_oracle_agreement, Criterion};
use mirabolic::{dimension_count, enumerate_decorated, Context, Engine, Error, GeneratorToken, ModuleElement, Side};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MirabolicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    ContextMismatch = 5,
    NotDivisible = 6,
    ScaleExceeded = 7,
    UnsupportedField = 8,
    CheckFailed = 9,
    Internal = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MirabolicSide {
    Left = 0,
    Right = 1,
}

/// A finite combination of basis elements of `MV_{n|m}`.
pub struct MirabolicElement(ModuleElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MirabolicStatus {
    match e {
        Error::NotDivisible { .. } | Error::DivisionByZero => MirabolicStatus::NotDivisible,
        Error::MalformedDelta(_) | Error::InvalidArgument(_) | Error::DimensionMismatch(_) => MirabolicStatus::InvalidArgument,
        Error::ContextMismatch(_) => MirabolicStatus::ContextMismatch,
        Error::ScaleExceeded(_) => MirabolicStatus::ScaleExceeded,
        Error::UnsupportedField(_) => MirabolicStatus::UnsupportedField,
        Error::Parse(_) => MirabolicStatus::Parse,
        Error::NoConsistentConvention | Error::SampleDegenerate(_) => MirabolicStatus::CheckFailed,
        Error::Internal(_) => MirabolicStatus::Internal,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Utf8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MirabolicStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MirabolicStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            MirabolicStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not UTF-8");
            MirabolicStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("panic inside the library");
            MirabolicStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn element<'a>(x: *const MirabolicElement) -> Result<&'a ModuleElement, Failure> {
    x.as_ref().map(|e| &e.0).ok_or(Failure::Null("element"))
}

fn boxed(x: ModuleElement) -> *mut MirabolicElement {
    Box::into_raw(Box::new(MirabolicElement(x)))
}

/// Message for the most recent failure on this thread. Valid until the next
/// library call on the same thread; never null.
#[no_mangle]
pub extern "C" fn mirabolic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Dimension of `MV_{n|m}` at total `d`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_dimension_count(n: usize, m: usize, d: u32, out: *mut u64) -> MirabolicStatus {
    guard(|| {
        let dim = dimension_count(n, m, d);
        let v = u64::try_from(dim).map_err(|_| Error::ScaleExceeded("dimension does not fit in 64 bits".into()))?;
        write_out(out, v, "out")
    })
}

/// Basis element `index` of `MV_{n|m}` in canonical order.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_basis(
    n: usize,
    m: usize,
    d: u32,
    index: usize,
    out: *mut *mut MirabolicElement,
) -> MirabolicStatus {
    guard(|| {
        let ctx = Context::new(n, m, d);
        let basis = enumerate_decorated(n, m, d);
        let b = basis
            .get(index)
            .ok_or_else(|| Error::InvalidArgument(format!("basis index {index} out of range 0..{}", basis.len())))?;
        write_out(out, boxed(ModuleElement::basis(ctx, b.clone())?), "out")
    })
}

/// Parses the text form, e.g. `(v^-2)*[[1]]{} + [[1]]{(1,1)}`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_parse(
    n: usize,
    m: usize,
    d: u32,
    text: *const c_char,
    out: *mut *mut MirabolicElement,
) -> MirabolicStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        let x = ModuleElement::parse_text(Context::new(n, m, d), s)?;
        write_out(out, boxed(x), "out")
    })
}

/// Acts by one token (`E1`, `F2`, `H+1`, `H-3`, `L`) on the given side,
/// returning a new element.
///
/// # Safety
/// `x` must be a live handle, `token` a NUL-terminated string, and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_act(
    x: *const MirabolicElement,
    side: MirabolicSide,
    token: *const c_char,
    out: *mut *mut MirabolicElement,
) -> MirabolicStatus {
    guard(|| {
        let x = element(x)?;
        let t: GeneratorToken = read_str(token, "token")?.parse()?;
        let side = match side {
            MirabolicSide::Left => Side::Left,
            MirabolicSide::Right => Side::Right,
        };
        let y = Engine::default().act(side, &t, x)?;
        write_out(out, boxed(y), "out")
    })
}

/// Number of nonzero terms.
///
/// # Safety
/// `x` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_term_count(x: *const MirabolicElement, out: *mut usize) -> MirabolicStatus {
    guard(|| write_out(out, element(x)?.len(), "out"))
}

/// Whether two elements are equal (same context and coefficients).
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_equal(
    a: *const MirabolicElement,
    b: *const MirabolicElement,
    out: *mut bool,
) -> MirabolicStatus {
    guard(|| write_out(out, element(a)? == element(b)?, "out"))
}

/// Text form; release with `mirabolic_string_free`.
///
/// # Safety
/// `x` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_to_text(x: *const MirabolicElement, out: *mut *mut c_char) -> MirabolicStatus {
    guard(|| {
        let s = CString::new(element(x)?.to_string()).map_err(|_| Error::Internal("NUL in text form".into()))?;
        write_out(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `x` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_element_free(x: *mut MirabolicElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Mismatching coefficients between the symbolic actions and the
/// finite-field oracle at `(n, m, d, q)`, both sides. Parity failures count
/// as mismatches.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_oracle_mismatches(
    n: usize,
    m: usize,
    d: u32,
    q: u64,
    max_work: u64,
    out: *mut u64,
) -> MirabolicStatus {
    guard(|| {
        let (l, r) = verify_oracle_agreement(&Engine::default(), Context::new(n, m, d), q, max_work)?;
        let bad = l.mismatches + l.parity_failures + r.mismatches + r.parity_failures;
        write_out(out, bad as u64, "out")
    })
}

/// Runs one named check of the desk profile (`dimension-formula`,
/// `orbit-bijection`, `presentation-relations`, `transpose-duality`,
/// `oracle-agreement`, `bimodule-commutation`, `double-centralizer`,
/// `negative-control`) and reports whether it passed. A check that runs and
/// fails still returns `MIRABOLIC_STATUS_OK`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mirabolic_run_check(name: *const c_char, max_work: u64, passed: *mut bool) -> MirabolicStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let c = Criterion::ALL
            .into_iter()
            .find(|c| c.id() == name)
            .ok_or_else(|| Failure::Lib(Error::InvalidArgument(format!("unknown check {name:?}"))))?;
        let r = run_criterion(c, &Engine::default(), max_work)?;
        write_out(passed, r.passed, "passed")
    })
}
