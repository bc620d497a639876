//! C ABI for `padic-trunk`.
//!
//! Objects are opaque handles created by `pt_*` constructors and released by
//! the matching `pt_*_free`. Every fallible call returns a [`PtStatus`]; on
//! failure `pt_last_error_message` describes the error on the calling thread.
//! Big integers cross the boundary as NUL-terminated decimal strings.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use num_bigint::{BigInt, BigUint};

use padic_trunk::analysis::{classify_quadratic, BaseLength, QuadraticKind};
use padic_trunk::config::Limits;
use padic_trunk::solver::{self, SolutionSet};
use padic_trunk::trunk::{build_trunk_with, BranchStatus};
use padic_trunk::{Error, Polynomial, Trunk};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ZeroPolynomial = 4,
    NotPrime = 5,
    PrimeTooLarge = 6,
    InsufficientDepth = 7,
    EnumerationTooLarge = 8,
    InvalidArgument = 9,
    NotQuadratic = 10,
    IndexOutOfRange = 11,
    Internal = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtBranchStatus {
    Expanded = 0,
    Leaf = 1,
    HenselCertified = 2,
    CycleCertified = 3,
    Undetermined = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtQuadraticKind {
    K0 = 0,
    K1 = 1,
    K2 = 2,
    KInf = 3,
}

/// Plain data of one trunk vertex. The residue `r` is fetched separately
/// with `pt_trunk_node_residue`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PtNodeInfo {
    pub k: u32,
    /// Thickness, 0 for the root.
    pub t: u32,
    pub phi: u32,
    pub residual_degree: u32,
    pub status: PtBranchStatus,
    /// Cycle period, 0 unless the status is cycle-certified.
    pub period: u32,
    /// Index of the parent vertex, -1 for the root.
    pub parent: i64,
}

pub struct PtPolynomial(Polynomial);

pub struct PtTrunk(Trunk);

pub struct PtSolutionList(Vec<CString>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NUL removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PtStatus {
    match e {
        Error::Parse(_) => PtStatus::ParseError,
        Error::ZeroPolynomial => PtStatus::ZeroPolynomial,
        Error::NotPrime(_) => PtStatus::NotPrime,
        Error::PrimeTooLarge { .. } => PtStatus::PrimeTooLarge,
        Error::InsufficientDepth { .. } => PtStatus::InsufficientDepth,
        Error::EnumerationTooLarge { .. } => PtStatus::EnumerationTooLarge,
        Error::NotQuadratic(_) | Error::EvenPrime | Error::LeadingCoefficientDivisible => {
            PtStatus::NotQuadratic
        }
        Error::ClassificationMismatch { .. } | Error::Factorization(_) => PtStatus::Internal,
        _ => PtStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping errors and panics to a status and the last-error slot.
fn guard(f: impl FnOnce() -> Result<(), (PtStatus, String)>) -> PtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PtStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PtStatus::Internal
        }
    }
}

fn lib<T>(r: padic_trunk::Result<T>) -> Result<T, (PtStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PtStatus, String) {
    (PtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PtStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PtStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (PtStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (PtStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: String) -> CString {
    CString::new(s).expect("decimal strings have no NUL")
}

fn limits() -> Result<Limits, (PtStatus, String)> {
    Limits::from_env().map_err(|m| (PtStatus::InvalidArgument, m))
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn pt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression such as `(X^2+3)*(X^2+3X+9)`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_polynomial_parse(
    text: *const c_char,
    out: *mut *mut PtPolynomial,
) -> PtStatus {
    guard(|| {
        let text = c_str(text, "text")?;
        let p = lib(padic_trunk::parse(text).map_err(Error::from))?;
        write_out(out, Box::into_raw(Box::new(PtPolynomial(p))))
    })
}

/// Builds a polynomial from `len` ascending coefficients.
///
/// # Safety
/// `coeffs` must point to `len` readable values (or be null with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn pt_polynomial_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut PtPolynomial,
) -> PtStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else if coeffs.is_null() {
            return Err(null("coeffs"));
        } else {
            std::slice::from_raw_parts(coeffs, len)
        };
        let p = Polynomial::from_coeffs(slice);
        write_out(out, Box::into_raw(Box::new(PtPolynomial(p))))
    })
}

/// Canonical text of the polynomial; free with `pt_string_free`.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pt_polynomial_to_string(poly: *const PtPolynomial) -> *mut c_char {
    match poly.as_ref() {
        Some(p) => to_c(padic_trunk::print(&p.0)).into_raw(),
        None => ptr::null_mut(),
    }
}

/// Degree, or -1 for the zero polynomial or a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pt_polynomial_degree(poly: *const PtPolynomial) -> i64 {
    poly.as_ref()
        .and_then(|p| p.0.degree())
        .map_or(-1, |d| d as i64)
}

/// # Safety
/// `poly` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pt_polynomial_free(poly: *mut PtPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Builds the trunk of `poly` at the prime `p` down to `max_level`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_trunk_build(
    poly: *const PtPolynomial,
    p: u64,
    max_level: u32,
    out: *mut *mut PtTrunk,
) -> PtStatus {
    guard(|| {
        let poly = as_ref(poly, "poly")?;
        let t = lib(build_trunk_with(&poly.0, p, max_level, &limits()?))?;
        write_out(out, Box::into_raw(Box::new(PtTrunk(t))))
    })
}

/// Number of vertices including the root; 0 for a null handle.
///
/// # Safety
/// `trunk` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pt_trunk_node_count(trunk: *const PtTrunk) -> usize {
    trunk.as_ref().map_or(0, |t| t.0.nodes().len())
}

/// Vertex `index` (0 is the root, then breadth-first order).
///
/// # Safety
/// `trunk` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_trunk_node(
    trunk: *const PtTrunk,
    index: usize,
    out: *mut PtNodeInfo,
) -> PtStatus {
    guard(|| {
        let t = &as_ref(trunk, "trunk")?.0;
        let n = t.nodes().get(index).ok_or_else(|| {
            (
                PtStatus::IndexOutOfRange,
                format!("vertex {index} out of range"),
            )
        })?;
        let (status, period) = match n.status {
            BranchStatus::Expanded => (PtBranchStatus::Expanded, 0),
            BranchStatus::Leaf => (PtBranchStatus::Leaf, 0),
            BranchStatus::HenselCertified => (PtBranchStatus::HenselCertified, 0),
            BranchStatus::CycleCertified { period } => (PtBranchStatus::CycleCertified, period),
            BranchStatus::Undetermined => (PtBranchStatus::Undetermined, 0),
        };
        let info = PtNodeInfo {
            k: n.k,
            t: n.t.unwrap_or(0),
            phi: n.phi,
            residual_degree: n.residual_degree,
            status,
            period,
            parent: n.parent.map_or(-1, |p| p as i64),
        };
        write_out(out, info)
    })
}

/// Residue `r` of vertex `index` as a decimal string; free with
/// `pt_string_free`. Null on a bad handle or index.
///
/// # Safety
/// `trunk` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pt_trunk_node_residue(trunk: *const PtTrunk, index: usize) -> *mut c_char {
    trunk
        .as_ref()
        .and_then(|t| t.0.nodes().get(index))
        .map_or(ptr::null_mut(), |n| to_c(n.r.to_string()).into_raw())
}

/// # Safety
/// `trunk` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pt_trunk_free(trunk: *mut PtTrunk) {
    if !trunk.is_null() {
        drop(Box::from_raw(trunk));
    }
}

/// `N_e` as a decimal string in `*out`; free with `pt_string_free`.
///
/// # Safety
/// `trunk` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_count_solutions(
    trunk: *const PtTrunk,
    e: u32,
    out: *mut *mut c_char,
) -> PtStatus {
    guard(|| {
        let t = &as_ref(trunk, "trunk")?.0;
        let n = lib(solver::count_solutions(t, e))?;
        write_out(out, to_c(n.to_string()).into_raw())
    })
}

/// Whether the decimal integer `x` solves `P(x) = 0 mod p^e`.
///
/// # Safety
/// `trunk` must be a live handle, `x` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pt_is_solution(
    trunk: *const PtTrunk,
    x: *const c_char,
    e: u32,
    out: *mut bool,
) -> PtStatus {
    guard(|| {
        let t = &as_ref(trunk, "trunk")?.0;
        let x: BigInt = c_str(x, "x")?
            .trim()
            .parse()
            .map_err(|_| (PtStatus::InvalidArgument, "x is not an integer".to_string()))?;
        write_out(out, lib(solver::is_solution(t, &x, e))?)
    })
}

fn list(xs: &[BigInt]) -> *mut PtSolutionList {
    let items = xs.iter().map(|x| to_c(x.to_string())).collect();
    Box::into_raw(Box::new(PtSolutionList(items)))
}

/// Sorted solutions modulo `p^e`.
///
/// # Safety
/// `trunk` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_enumerate_solutions(
    trunk: *const PtTrunk,
    e: u32,
    out: *mut *mut PtSolutionList,
) -> PtStatus {
    guard(|| {
        let t = &as_ref(trunk, "trunk")?.0;
        let set: SolutionSet = lib(solver::ball_decomposition(t, e))?;
        let xs = lib(set.enumerate(limits()?.enumeration_budget))?;
        write_out(out, list(&xs))
    })
}

/// Sorted solutions modulo the decimal integer `n >= 2`.
///
/// # Safety
/// `poly` must be a live handle, `n` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pt_crt_solve(
    poly: *const PtPolynomial,
    n: *const c_char,
    out: *mut *mut PtSolutionList,
) -> PtStatus {
    guard(|| {
        let poly = as_ref(poly, "poly")?;
        let n: BigUint = c_str(n, "n")?.trim().parse().map_err(|_| {
            (
                PtStatus::InvalidArgument,
                "n is not a positive integer".to_string(),
            )
        })?;
        let sol = lib(solver::crt_solve_with(&poly.0, &n, &limits()?))?;
        write_out(out, list(&sol.solutions))
    })
}

/// # Safety
/// `list` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pt_solution_list_len(list: *const PtSolutionList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// Element `index` as a decimal string owned by the list; null when out of
/// range.
///
/// # Safety
/// `list` must be a live handle or null. The result lives as long as the list.
#[no_mangle]
pub unsafe extern "C" fn pt_solution_list_get(
    list: *const PtSolutionList,
    index: usize,
) -> *const c_char {
    list.as_ref()
        .and_then(|l| l.0.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// # Safety
/// `list` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pt_solution_list_free(list: *mut PtSolutionList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Trunk shape of a quadratic over an odd prime. `*base_length` is -1 for
/// an infinite base.
///
/// # Safety
/// `poly` must be a live handle; `kind` and `base_length` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pt_classify_quadratic(
    poly: *const PtPolynomial,
    p: u64,
    kind: *mut PtQuadraticKind,
    base_length: *mut i64,
) -> PtStatus {
    guard(|| {
        let poly = as_ref(poly, "poly")?;
        if kind.is_null() || base_length.is_null() {
            return Err(null("output pointer"));
        }
        let max_prime = limits()?.max_prime;
        if p > max_prime {
            return lib(Err(Error::PrimeTooLarge {
                p: p.to_string(),
                limit: max_prime,
            }));
        }
        let class = lib(classify_quadratic(&poly.0, p))?;
        let k = match class.kind {
            QuadraticKind::K0 => PtQuadraticKind::K0,
            QuadraticKind::K1 => PtQuadraticKind::K1,
            QuadraticKind::K2 => PtQuadraticKind::K2,
            QuadraticKind::Kinf => PtQuadraticKind::KInf,
        };
        let l = match class.base_length {
            BaseLength::Finite(l) => l as i64,
            BaseLength::Infinite => -1,
        };
        write_out(kind, k)?;
        write_out(base_length, l)
    })
}
