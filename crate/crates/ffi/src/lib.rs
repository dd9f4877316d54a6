//! C ABI for regcore.
//!
//! Objects cross the boundary as opaque handles (`RegcoreIdeal`,
//! `RegcoreModule`) created and destroyed through this API. Every fallible
//! call returns a `RegcoreStatus`; on failure a message is available from
//! `regcore_last_error_message` on the same thread. Strings returned through
//! out-parameters are owned by the caller and released with
//! `regcore_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use regcore::arith::{parse_poly, Field};
use regcore::io::{ideal_to_json, module_to_json, parse_ideal_json, parse_module_json, parse_presentation_json};
use regcore::modcore::{buchsbaum_rim, core_module, fitting, ModuleRep};
use regcore::reduction::{
    adjoint_ideal, as_monomial_ideal, integral_closure_ideal, multiplicity_by_differences, multiplicity_by_reduction,
    ClosureMode, GenericSampler,
};
use regcore::trunc::{set_truncation_ceiling, TruncatedIdeal};
use regcore::verify::{render_report, run_suite, Family, Format};
use regcore::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegcoreStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed text: JSON, polynomials, field names, non-UTF-8 strings.
    Parse = 2,
    /// Well-formed but invalid input (unknown family, mismatched fields, ...).
    InvalidInput = 3,
    /// The ideal or module is not of finite colength.
    NotMPrimary = 4,
    /// No certificate was found below the truncation ceiling.
    TruncationCeiling = 5,
    /// Generic sampling failed for every seed tried.
    RetryExhausted = 6,
    /// Any other mathematical obstruction or failed cross-check.
    Math = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

/// An m-primary ideal of k[x,y] localized at (x,y).
pub struct RegcoreIdeal {
    inner: TruncatedIdeal,
}

/// A finite-colength submodule of a free module of finite rank.
pub struct RegcoreModule {
    inner: ModuleRep,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RegcoreStatus {
    match e {
        Error::Parse(_) => RegcoreStatus::Parse,
        Error::Input(_) | Error::FieldMismatch(..) => RegcoreStatus::InvalidInput,
        Error::NotMPrimary | Error::ZeroIdeal(_) => RegcoreStatus::NotMPrimary,
        Error::TruncationCeiling { .. } => RegcoreStatus::TruncationCeiling,
        Error::RetryExhausted { .. } => RegcoreStatus::RetryExhausted,
        _ => RegcoreStatus::Math,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Outcome) -> RegcoreStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RegcoreStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            RegcoreStatus::NullArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal error: {msg}"));
            RegcoreStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Core(Error::Parse(format!("{what} is not valid UTF-8"))))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Outcome {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| Error::Input("output contains a nul byte".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn boxed_ideal(inner: TruncatedIdeal) -> *mut RegcoreIdeal {
    Box::into_raw(Box::new(RegcoreIdeal { inner }))
}

fn boxed_module(inner: ModuleRep) -> *mut RegcoreModule {
    Box::into_raw(Box::new(RegcoreModule { inner }))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn regcore_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn regcore_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Sets the largest truncation order tried when certifying finite colength
/// (process-wide). Values below 2 are rejected.
#[no_mangle]
pub extern "C" fn regcore_set_truncation_ceiling(order: u32) -> RegcoreStatus {
    guard(|| {
        if order < 2 {
            return Err(Error::Input("truncation ceiling must be at least 2".into()).into());
        }
        set_truncation_ceiling(order);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn regcore_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an ideal from `count` polynomial strings over `field` ("Q" or
/// "F<p>").
///
/// # Safety
/// `field` and each of `gens[0..count]` must be valid C strings; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_new(
    field: *const c_char,
    gens: *const *const c_char,
    count: usize,
    out: *mut *mut RegcoreIdeal,
) -> RegcoreStatus {
    guard(|| {
        let field: Field = str_arg(field, "field")?.parse()?;
        if gens.is_null() && count > 0 {
            return Err(Failure::Null("gens"));
        }
        let mut polys = Vec::with_capacity(count);
        for k in 0..count {
            polys.push(parse_poly(str_arg(*gens.add(k), "generator")?, field)?);
        }
        let ideal = TruncatedIdeal::new(field, polys)?;
        write_out(out, boxed_ideal(ideal), "out")
    })
}

/// Parses the JSON ideal format (`{"field", "gens", ...}`).
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_from_json(json: *const c_char, out: *mut *mut RegcoreIdeal) -> RegcoreStatus {
    guard(|| {
        let ideal = parse_ideal_json(str_arg(json, "json")?)?;
        write_out(out, boxed_ideal(ideal), "out")
    })
}

/// Serializes an ideal to the JSON format read by `regcore_ideal_from_json`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_to_json(ideal: *const RegcoreIdeal, out: *mut *mut c_char) -> RegcoreStatus {
    guard(|| write_string(out, ideal_to_json(&ref_arg(ideal, "ideal")?.inner)))
}

/// Destroys an ideal handle. Null is ignored.
///
/// # Safety
/// `ideal` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_free(ideal: *mut RegcoreIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// `ℓ(R/I)`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_colength(ideal: *const RegcoreIdeal, out: *mut u64) -> RegcoreStatus {
    guard(|| write_out(out, ref_arg(ideal, "ideal")?.inner.colength(), "out"))
}

/// Whether `a` and `b` are the same ideal.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_equals(
    a: *const RegcoreIdeal,
    b: *const RegcoreIdeal,
    out: *mut bool,
) -> RegcoreStatus {
    guard(|| {
        let (a, b) = (&ref_arg(a, "a")?.inner, &ref_arg(b, "b")?.inner);
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(a.field(), b.field()).into());
        }
        write_out(out, a.equals(b), "out")
    })
}

/// Integral closure. Exact for monomial ideals; otherwise the candidate
/// search result, which may be a lower bound (`exact` is set accordingly).
///
/// # Safety
/// `ideal` must be a live handle; `out` and `exact` must be writable
/// (`exact` may be null).
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_closure(
    ideal: *const RegcoreIdeal,
    seed: u64,
    out: *mut *mut RegcoreIdeal,
    exact: *mut bool,
) -> RegcoreStatus {
    guard(|| {
        let i = &ref_arg(ideal, "ideal")?.inner;
        let mode = if as_monomial_ideal(i).is_some() { ClosureMode::Monomial } else { ClosureMode::Candidate };
        let r = integral_closure_ideal(i, mode, &GenericSampler::new(seed))?;
        if !exact.is_null() {
            exact.write(r.exact);
        }
        write_out(out, boxed_ideal(r.ideal), "out")
    })
}

/// `adj(I) = (J : Ī)` for a seeded minimal reduction `J`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_adjoint(
    ideal: *const RegcoreIdeal,
    seed: u64,
    out: *mut *mut RegcoreIdeal,
) -> RegcoreStatus {
    guard(|| {
        let adj = adjoint_ideal(&ref_arg(ideal, "ideal")?.inner, &GenericSampler::new(seed))?;
        write_out(out, boxed_ideal(adj), "out")
    })
}

/// Hilbert–Samuel multiplicity; both methods are run and must agree.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_ideal_multiplicity(ideal: *const RegcoreIdeal, seed: u64, out: *mut u64) -> RegcoreStatus {
    guard(|| {
        let i = &ref_arg(ideal, "ideal")?.inner;
        let by_reduction = multiplicity_by_reduction(i, &GenericSampler::new(seed))?;
        let by_differences = multiplicity_by_differences(i)?;
        if by_reduction != by_differences {
            return Err(Error::MethodDisagreement { reduction: by_reduction, difference: by_differences }.into());
        }
        write_out(out, by_reduction, "out")
    })
}

/// The ideal of `k x k` minors of a presentation matrix given as JSON
/// (`{"field", "presentation": rows}`).
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_fitting_from_json(json: *const c_char, k: i64, out: *mut *mut RegcoreIdeal) -> RegcoreStatus {
    guard(|| {
        let a = parse_presentation_json(str_arg(json, "json")?)?;
        write_out(out, boxed_ideal(fitting(&a, k)?), "out")
    })
}

/// Parses the JSON module format (`{"field", "rank", "generators", ...}`).
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_from_json(json: *const c_char, out: *mut *mut RegcoreModule) -> RegcoreStatus {
    guard(|| {
        let m = parse_module_json(str_arg(json, "json")?)?;
        write_out(out, boxed_module(m), "out")
    })
}

/// A rank-one module from an ideal.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_from_ideal(ideal: *const RegcoreIdeal, out: *mut *mut RegcoreModule) -> RegcoreStatus {
    guard(|| write_out(out, boxed_module(ModuleRep::from_ideal(&ref_arg(ideal, "ideal")?.inner)), "out"))
}

/// # Safety
/// `module` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_to_json(module: *const RegcoreModule, out: *mut *mut c_char) -> RegcoreStatus {
    guard(|| write_string(out, module_to_json(&ref_arg(module, "module")?.inner)))
}

/// Destroys a module handle. Null is ignored.
///
/// # Safety
/// `module` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_free(module: *mut RegcoreModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// Rank and `ℓ(F/M)`; either out-pointer may be null.
///
/// # Safety
/// `module` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_info(module: *const RegcoreModule, rank: *mut usize, colength: *mut u64) -> RegcoreStatus {
    guard(|| {
        let m = &ref_arg(module, "module")?.inner;
        if !rank.is_null() {
            rank.write(m.rank());
        }
        if !colength.is_null() {
            colength.write(m.colength());
        }
        Ok(())
    })
}

/// `core(M) = adj(I(M)) M`.
///
/// # Safety
/// `module` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_core(module: *const RegcoreModule, seed: u64, out: *mut *mut RegcoreModule) -> RegcoreStatus {
    guard(|| {
        let core = core_module(&ref_arg(module, "module")?.inner, &GenericSampler::new(seed))?;
        write_out(out, boxed_module(core), "out")
    })
}

/// Buchsbaum–Rim multiplicity `e(F/M)`.
///
/// # Safety
/// `module` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_module_buchsbaum_rim(module: *const RegcoreModule, out: *mut u64) -> RegcoreStatus {
    guard(|| write_out(out, buchsbaum_rim(&ref_arg(module, "module")?.inner)?, "out"))
}

/// Runs a verification campaign and returns its JSON report. `all_passed`
/// (may be null) tells whether every check passed.
///
/// # Safety
/// `family` and `field` must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regcore_verify(
    family: *const c_char,
    count: usize,
    seed: u64,
    field: *const c_char,
    out: *mut *mut c_char,
    all_passed: *mut bool,
) -> RegcoreStatus {
    guard(|| {
        let family: Family = str_arg(family, "family")?.parse()?;
        let field: Field = str_arg(field, "field")?.parse()?;
        let report = run_suite(family, count, seed, field);
        if !all_passed.is_null() {
            all_passed.write(report.summary.all_passed());
        }
        write_string(out, render_report(&report, Format::Json))
    })
}
