//! C ABI over `zernike-core`.
//!
//! Every function returns a [`ZkStatus`]; results go through out-pointers.
//! On failure `zk_last_error()` describes the error of the calling thread.
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Strings returned by the library are released
//! with [`zk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zernike_core::cli::parse_value_list;
use zernike_core::dynamics::{curved_oscillator_hamiltonian, CurvedOscillatorSpec};
use zernike_core::integrals::{build_angular_momentum, build_hamiltonian, integral_for};
use zernike_core::param::Symbol;
use zernike_core::spectra::{real_parameter_form, real_parameters, solve_spectrum, FamilyType};
use zernike_core::verify::{verify_classical, verify_quantum};
use zernike_core::{Error, GaussianRational, ParamAssignment, PhasePolynomial, SystemSpec};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    Unsupported = 5,
    /// Computation finished but an identity did not hold.
    IdentityFailure = 6,
    Numerical = 7,
    BufferTooSmall = 8,
    Internal = 9,
    Panic = 10,
}

/// A Hamiltonian `H_N`, with symbolic or numeric parameters.
pub struct ZkSystem(SystemSpec);

/// A polynomial in `(q1, q2, p1, p2)` with coefficients in the parameters.
pub struct ZkPolynomial(PhasePolynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior nul")));
}

struct Failure(ZkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => ZkStatus::Parse,
            Error::UnsupportedOrder(_) => ZkStatus::Unsupported,
            Error::IdentityFailure { .. } | Error::BracketClosure(_) | Error::LadderClosure(_) => ZkStatus::IdentityFailure,
            Error::NonConvergence { .. } | Error::NonFinite { .. } | Error::Domain(_) => ZkStatus::Numerical,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::NoSolution(_) | Error::NoSpectrum => ZkStatus::Internal,
            _ => ZkStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: ZkStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ZkStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            ZkStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(ZkStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(ZkStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(ZkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ZkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn exact(x: f64, what: &str) -> Result<GaussianRational, Failure> {
    GaussianRational::from_f64(x).ok_or_else(|| fail(ZkStatus::InvalidArgument, format!("{what} is not finite")))
}

fn give<T>(slot: &mut *mut T, value: T) {
    *slot = Box::into_raw(Box::new(value));
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn zk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn zk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `H_N` with symbolic parameters `g1..gN`.
///
/// # Safety
/// `out_system` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_system_new_symbolic(order: usize, out_system: *mut *mut ZkSystem) -> ZkStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        give(slot, ZkSystem(SystemSpec::symbolic(order)?));
        Ok(())
    })
}

/// `H_N` with numeric parameters given as a comma-separated list of exact
/// values such as `"1/2, -3*i, 2+i"`; `N` is the list length.
///
/// # Safety
/// `gamma` must be a nul-terminated string and `out_system` valid.
#[no_mangle]
pub unsafe extern "C" fn zk_system_new_numeric(gamma: *const c_char, out_system: *mut *mut ZkSystem) -> ZkStatus {
    guard(|| {
        let values = parse_value_list(text(gamma, "gamma")?)?;
        let slot = out(out_system, "out_system")?;
        give(slot, ZkSystem(SystemSpec::numeric(values)?));
        Ok(())
    })
}

/// # Safety
/// `system` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn zk_system_free(system: *mut ZkSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// The order `N` of `system`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_system_order(system: *const ZkSystem, out_order: *mut usize) -> ZkStatus {
    guard(|| {
        *out(out_order, "out_order")? = deref(system, "system")?.0.order();
        Ok(())
    })
}

/// `H_N` as a polynomial, with `g1..gN` left symbolic.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_hamiltonian(system: *const ZkSystem, out_poly: *mut *mut ZkPolynomial) -> ZkStatus {
    guard(|| {
        let h = build_hamiltonian(&deref(system, "system")?.0.to_symbolic());
        give(out(out_poly, "out_poly")?, ZkPolynomial(h));
        Ok(())
    })
}

/// `C = q1 p2 − q2 p1`.
///
/// # Safety
/// `out_poly` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_angular_momentum(out_poly: *mut *mut ZkPolynomial) -> ZkStatus {
    guard(|| {
        give(out(out_poly, "out_poly")?, ZkPolynomial(build_angular_momentum()));
        Ok(())
    })
}

/// The integral `I_N` of `system`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_integral(system: *const ZkSystem, out_poly: *mut *mut ZkPolynomial) -> ZkStatus {
    guard(|| {
        let i = integral_for(&deref(system, "system")?.0.to_symbolic())?;
        give(out(out_poly, "out_poly")?, ZkPolynomial(i));
        Ok(())
    })
}

/// Parses the text form, e.g. `"p2^2 + g1*q2*p2"`.
///
/// # Safety
/// `src` must be a nul-terminated string and `out_poly` valid.
#[no_mangle]
pub unsafe extern "C" fn zk_polynomial_parse(src: *const c_char, out_poly: *mut *mut ZkPolynomial) -> ZkStatus {
    guard(|| {
        let p: PhasePolynomial = text(src, "src")?.parse()?;
        give(out(out_poly, "out_poly")?, ZkPolynomial(p));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn zk_polynomial_free(poly: *mut ZkPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// `{a, b}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_poisson_bracket(
    a: *const ZkPolynomial,
    b: *const ZkPolynomial,
    out_poly: *mut *mut ZkPolynomial,
) -> ZkStatus {
    guard(|| {
        let r = deref(a, "a")?.0.poisson_bracket(&deref(b, "b")?.0);
        give(out(out_poly, "out_poly")?, ZkPolynomial(r));
        Ok(())
    })
}

/// Whether `poly` is identically zero.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_polynomial_is_zero(poly: *const ZkPolynomial, out_is_zero: *mut bool) -> ZkStatus {
    guard(|| {
        *out(out_is_zero, "out_is_zero")? = deref(poly, "poly")?.0.is_zero();
        Ok(())
    })
}

/// Canonical text of `poly`; free it with [`zk_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_polynomial_to_string(poly: *const ZkPolynomial, out_text: *mut *mut c_char) -> ZkStatus {
    guard(|| {
        let s = CString::new(deref(poly, "poly")?.0.to_string()).map_err(|e| fail(ZkStatus::Internal, e.to_string()))?;
        *out(out_text, "out_text")? = s.into_raw();
        Ok(())
    })
}

/// Evaluates `poly` at `point = (q1, q2, p1, p2)` with the parameter values
/// of the numeric `system`. Doubles are converted exactly; the result is
/// rounded to `(re, im)`.
///
/// # Safety
/// `point` must hold four doubles; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_polynomial_evaluate(
    poly: *const ZkPolynomial,
    system: *const ZkSystem,
    point: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZkStatus {
    guard(|| {
        let poly = deref(poly, "poly")?;
        let spec = &deref(system, "system")?.0;
        let point = deref(point as *const [f64; 4], "point")?;
        let params = spec.assignment().ok_or(Error::NumericRequired)?;
        let pt = [
            exact(point[0], "q1")?,
            exact(point[1], "q2")?,
            exact(point[2], "p1")?,
            exact(point[3], "p2")?,
        ];
        let (re, im) = poly.0.evaluate(&pt, &params)?.to_f64_parts();
        *out(out_re, "out_re")? = re;
        *out(out_im, "out_im")? = im;
        Ok(())
    })
}

/// Runs the classical identity suite. `out_passed` is set even when some
/// identity fails; the status is then [`ZkStatus::IdentityFailure`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_verify_classical(system: *const ZkSystem, seed: u64, out_passed: *mut bool) -> ZkStatus {
    guard(|| {
        let suite = verify_classical(&deref(system, "system")?.0, seed)?;
        report(suite.checks.iter().map(|c| (c.passed(), c.name.as_str())), out(out_passed, "out_passed")?)
    })
}

/// Runs the quantum identity suite (`N ≤ 4`).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_verify_quantum(system: *const ZkSystem, out_passed: *mut bool) -> ZkStatus {
    guard(|| {
        let suite = verify_quantum(&deref(system, "system")?.0)?;
        report(suite.checks.iter().map(|c| (c.passed(), c.name.as_str())), out(out_passed, "out_passed")?)
    })
}

fn report<'a>(checks: impl Iterator<Item = (bool, &'a str)>, passed: &mut bool) -> Result<(), Failure> {
    let failed: Vec<&str> = checks.filter(|(ok, _)| !ok).map(|(_, n)| n).collect();
    *passed = failed.is_empty();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(fail(ZkStatus::IdentityFailure, format!("failed: {}", failed.join("; "))))
    }
}

/// Energy levels `E(0..=n_max)` of both spectrum families of order `order`
/// at real parameters `params = (beta, alpha, mu, nu)`. Entries past `order`
/// must be zero. `out_type_i` and `out_type_ii` each need `len ≥ n_max + 1`.
///
/// # Safety
/// `params` must hold four doubles and the output buffers `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zk_spectrum_levels(
    order: usize,
    params: *const f64,
    n_max: u32,
    out_type_i: *mut f64,
    out_type_ii: *mut f64,
    len: usize,
) -> ZkStatus {
    guard(|| {
        let params = deref(params as *const [f64; 4], "params")?;
        if out_type_i.is_null() || out_type_ii.is_null() {
            return Err(fail(ZkStatus::NullPointer, "output buffer is null"));
        }
        let count = n_max as usize + 1;
        if len < count {
            return Err(fail(ZkStatus::BufferTooSmall, format!("need {count} entries, got {len}")));
        }
        if let Some(k) = params.iter().skip(order).position(|&x| x != 0.0) {
            return Err(fail(ZkStatus::InvalidArgument, format!("parameter {} is nonzero but N = {order}", order + k + 1)));
        }
        let names = ["beta", "alpha", "mu", "nu"];
        let [b, a, m, n] = [0, 1, 2, 3].map(|k| exact(params[k], names[k]));
        let assignment = real_parameters(b?, a?, m?, n?);
        let families = solve_spectrum(&SystemSpec::symbolic(order)?)?;
        for (label, buf) in [(FamilyType::I, out_type_i), (FamilyType::II, out_type_ii)] {
            let f = families
                .iter()
                .find(|f| f.label == label)
                .ok_or_else(|| fail(ZkStatus::Internal, format!("no type {label} family")))?;
            let energy = real_parameter_form(&f.energy);
            let dst = std::slice::from_raw_parts_mut(buf, count);
            for (level, slot) in dst.iter_mut().enumerate() {
                let mut at: ParamAssignment = assignment.clone();
                at.insert(Symbol::Level, GaussianRational::from_integer(level as i64));
                *slot = energy.evaluate(&at)?.to_f64_parts().0;
            }
        }
        Ok(())
    })
}

/// The curved oscillator energy at `(rho, p_rho)` with angular momentum
/// `p_phi`.
///
/// # Safety
/// `out_energy` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_curved_oscillator_hamiltonian(
    kappa: f64,
    omega: f64,
    p_phi: f64,
    rho: f64,
    p_rho: f64,
    out_energy: *mut f64,
) -> ZkStatus {
    guard(|| {
        let spec = CurvedOscillatorSpec { kappa, omega, p_phi };
        *out(out_energy, "out_energy")? = curved_oscillator_hamiltonian(&spec, rho, p_rho)?;
        Ok(())
    })
}
