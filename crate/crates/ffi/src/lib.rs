//! C interface to the `nearsemi` workbench.
//!
//! Algebras are opaque `NsAlgebra` handles owned by the caller and released
//! with `ns_algebra_free`. Every fallible function returns an `NsStatus`;
//! on failure `ns_last_error_message` describes the most recent error on the
//! calling thread. Strings returned through out-parameters are released with
//! `ns_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nearsemi::center::{is_central, Method};
use nearsemi::{
    check_axioms, congruence, format, ideal, search, Class, Error, FiniteAlgebra, Limits,
};

pub const NS_CLASS_INRS: u32 = 0;
pub const NS_CLASS_LUK_NRS: u32 = 1;
pub const NS_CLASS_LUK_RS: u32 = 2;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotAdmitted = 4,
    InvalidElement = 5,
    TooLarge = 6,
    BufferTooSmall = 7,
    InvalidArgument = 8,
    Internal = 9,
}

/// An owned near semiring.
pub struct NsAlgebra {
    algebra: FiniteAlgebra,
    class: Class,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NsStatus {
    match e {
        Error::Parse { .. } | Error::Empty | Error::Dimension { .. } | Error::OutOfRange { .. } => {
            NsStatus::Parse
        }
        Error::NotAdmitted { .. } | Error::NotCentral { .. } => NsStatus::NotAdmitted,
        Error::InvalidElement { .. } | Error::UnknownElement(_) => NsStatus::InvalidElement,
        Error::TooLarge { .. } | Error::Capped { .. } => NsStatus::TooLarge,
        _ => NsStatus::InvalidArgument,
    }
}

struct Fail(NsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> NsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            NsStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NsStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(NsStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn algebra<'a>(p: *const NsAlgebra, what: &str) -> Result<&'a NsAlgebra, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(NsStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

fn class_of(c: u32) -> Result<Class, Fail> {
    match c {
        NS_CLASS_INRS => Ok(Class::Inrs),
        NS_CLASS_LUK_NRS => Ok(Class::LukNrs),
        NS_CLASS_LUK_RS => Ok(Class::LukRs),
        other => Err(Fail(
            NsStatus::InvalidArgument,
            format!("unknown class {other}"),
        )),
    }
}

fn element(alg: &FiniteAlgebra, e: usize) -> Result<usize, Fail> {
    alg.check_element(e)?;
    Ok(e)
}

/// Parses an algebra document. On success `*out_alg` receives a new handle.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out_alg` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_algebra_parse(
    source: *const c_char,
    out_alg: *mut *mut NsAlgebra,
) -> NsStatus {
    guard(|| {
        let slot = out(out_alg, "out_alg")?;
        *slot = ptr::null_mut();
        let (class, algebra) = format::parse_algebra(text(source, "source")?)?;
        *slot = Box::into_raw(Box::new(NsAlgebra { algebra, class }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_algebra_free(alg: *mut NsAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_algebra_size(alg: *const NsAlgebra, out_size: *mut usize) -> NsStatus {
    guard(|| {
        *out(out_size, "out_size")? = algebra(alg, "alg")?.algebra.size();
        Ok(())
    })
}

/// Whether every required axiom of `class` holds.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_algebra_check(
    alg: *const NsAlgebra,
    class: u32,
    out_passed: *mut bool,
) -> NsStatus {
    guard(|| {
        let a = &algebra(alg, "alg")?.algebra;
        *out(out_passed, "out_passed")? = check_axioms(a, class_of(class)?).admitted();
        Ok(())
    })
}

/// The direct product `a × b` as a new handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_algebra_product(
    a: *const NsAlgebra,
    b: *const NsAlgebra,
    out_alg: *mut *mut NsAlgebra,
) -> NsStatus {
    guard(|| {
        let slot = out(out_alg, "out_alg")?;
        *slot = ptr::null_mut();
        let (a, b) = (algebra(a, "a")?, algebra(b, "b")?);
        let algebra = nearsemi::product(&a.algebra, &b.algebra, &Limits::default())?;
        let class = a.class.min(b.class);
        *slot = Box::into_raw(Box::new(NsAlgebra { algebra, class }));
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_congruence_count(
    alg: *const NsAlgebra,
    out_count: *mut usize,
) -> NsStatus {
    guard(|| {
        let a = &algebra(alg, "alg")?.algebra;
        *out(out_count, "out_count")? = congruence::all_congruences(a, &Limits::default())?.len();
        Ok(())
    })
}

/// Number of ideals; the algebra must be a Łukasiewicz near semiring.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_ideal_count(alg: *const NsAlgebra, out_count: *mut usize) -> NsStatus {
    guard(|| {
        let a = &algebra(alg, "alg")?.algebra;
        *out(out_count, "out_count")? = ideal::all_ideals(a, &Limits::default())?.len();
        Ok(())
    })
}

/// Writes the central elements in increasing order to `buffer`.
///
/// `*out_len` always receives the number of central elements; when it
/// exceeds `capacity` nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `buffer` must hold `capacity` elements (it may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn ns_center(
    alg: *const NsAlgebra,
    buffer: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> NsStatus {
    guard(|| {
        let a = &algebra(alg, "alg")?.algebra;
        let len = out(out_len, "out_len")?;
        let central = nearsemi::center::center(a, &Limits::default())?.central;
        *len = central.len();
        if central.len() > capacity {
            return Err(Fail(
                NsStatus::BufferTooSmall,
                format!("{} central elements, capacity {capacity}", central.len()),
            ));
        }
        if !central.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            std::slice::from_raw_parts_mut(buffer, central.len()).copy_from_slice(&central);
        }
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_is_central(
    alg: *const NsAlgebra,
    element_index: usize,
    out_central: *mut bool,
) -> NsStatus {
    guard(|| {
        let a = &algebra(alg, "alg")?.algebra;
        let e = element(a, element_index)?;
        *out(out_central, "out_central")? = is_central(a, e, Method::Both).central;
        Ok(())
    })
}

/// Runs a command line (`argv[0]` is the program name) and returns the
/// report text and exit status of the `nearsemi` tool.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_report(
    argc: usize,
    argv: *const *const c_char,
    out_text: *mut *mut c_char,
    out_exit: *mut i32,
) -> NsStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = ptr::null_mut();
        let exit = out(out_exit, "out_exit")?;
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let args: Vec<String> = (0..argc)
            .map(|i| text(*argv.add(i), "argv[i]").map(String::from))
            .collect::<Result<_, _>>()?;
        let (report, code) = nearsemi::cli::run(args);
        let c = CString::new(report.replace('\0', " ")).unwrap_or_default();
        *slot = c.into_raw();
        *exit = code;
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The most recent error on this thread, or an empty string. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ns_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Number of models of `class` with `size` elements up to isomorphism.
///
/// # Safety
/// `out_count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ns_enumerate_count(
    size: usize,
    class: u32,
    out_count: *mut usize,
) -> NsStatus {
    guard(|| {
        let slot = out(out_count, "out_count")?;
        *slot = search::count(size, class_of(class)?)?;
        Ok(())
    })
}
