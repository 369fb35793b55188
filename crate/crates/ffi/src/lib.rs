//! C interface to `renorm-core`.
//!
//! Every function returns a [`RenormStatus`]. Strings handed out are owned by the
//! caller and must be released with [`renorm_string_free`]. On failure the message
//! is available from [`renorm_last_error`] on the same thread.

use renorm::error::Error;
use renorm::feynman::{resolve_graph, sum_to_json, GraphForest, HopfContext};
use renorm::multiindex::{coproduct_mi_closed, n_star_e, n_star_m, tensor_to_json};
use renorm::rational::{parse_exact, parse_rational};
use renorm::valuation::{counterterms, PiEvaluator, ValuationConfig};
use renorm::verify::{verify, Perturbation, VerifyOptions};
use renorm::wick::{bell_complete, bell_partial, render_bell};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenormStatus {
    Ok = 0,
    Mismatch = 1,
    BadInput = 2,
    SizeLimit = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Divergence-restricted graph Hopf algebra at a fixed dimension.
pub struct RenormContext {
    ctx: HopfContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> RenormStatus {
    set_error(&e.to_string());
    match e {
        Error::SizeLimit(_) => RenormStatus::SizeLimit,
        _ => RenormStatus::BadInput,
    }
}

fn guard(f: impl FnOnce() -> Result<RenormStatus, Error>) -> RenormStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic");
            RenormStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::Parse("null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Error::Parse("string is not UTF-8".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<RenormStatus, Error> {
    let c = CString::new(s).map_err(|_| Error::Parse("output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(RenormStatus::Ok)
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn renorm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn renorm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Complete Bell polynomial `B_n` (`k < 0`) or partial `B_{n,k}` as text or LaTeX.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renorm_bell(n: u32, k: i32, latex: bool, out: *mut *mut c_char) -> RenormStatus {
    if out.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        if n > 30 {
            return Err(Error::SizeLimit(format!("bell supports n <= 30, got {n}")));
        }
        let p = if k < 0 {
            bell_complete(n)
        } else if k as u32 <= n {
            bell_partial(n, k as u32)
        } else {
            return Err(Error::Domain(format!("need k <= n, got k = {k}")));
        };
        write_string(out, render_bell(&p, latex))
    })
}

/// Reduced multi-index coproduct of `z_4^n` at dimension `d` (for example "18/5"), as JSON.
///
/// # Safety
/// `d` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renorm_coproduct_json(n: u32, d: *const c_char, out: *mut *mut c_char) -> RenormStatus {
    if out.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        if n > 10 {
            return Err(Error::SizeLimit(format!("coproduct supports n <= 10, got {n}")));
        }
        let d = parse_exact(read_str(d)?)?;
        write_string(out, tensor_to_json(&coproduct_mi_closed(n, &d)?).to_string())
    })
}

/// Runs the three-way agreement check; returns `Ok` on agreement and `Mismatch` otherwise.
/// The JSON report is written to `out` when it is not NULL.
///
/// # Safety
/// `d` must be a NUL-terminated string; `out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn renorm_verify(d: *const c_char, nmax: u32, seed: u64, out: *mut *mut c_char) -> RenormStatus {
    guard(|| {
        let d = parse_exact(read_str(d)?)?;
        let r = verify(&VerifyOptions { d, nmax, seed, perturb: Perturbation::None })?;
        if !out.is_null() {
            write_string(out, r.to_json().to_string())?;
        }
        Ok(if r.passed { RenormStatus::Ok } else { RenormStatus::Mismatch })
    })
}

/// Creates a Hopf algebra context at dimension `d`.
///
/// # Safety
/// `d` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renorm_context_new(d: *const c_char, out: *mut *mut RenormContext) -> RenormStatus {
    if out.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        let d = parse_exact(read_str(d)?)?;
        n_star_m(&d)?;
        *out = Box::into_raw(Box::new(RenormContext { ctx: HopfContext::new(d) }));
        Ok(RenormStatus::Ok)
    })
}

/// Releases a context. NULL is ignored.
///
/// # Safety
/// `ctx` must come from [`renorm_context_new`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn renorm_context_free(ctx: *mut RenormContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Thresholds `n*_e` and `n*_m` of the context dimension.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn renorm_context_thresholds(
    ctx: *const RenormContext,
    n_star_energy: *mut u32,
    n_star_mass: *mut u32,
) -> RenormStatus {
    if ctx.is_null() || n_star_energy.is_null() || n_star_mass.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        let d = (*ctx).ctx.d();
        *n_star_energy = n_star_e(d)?;
        *n_star_mass = n_star_m(d)?;
        Ok(RenormStatus::Ok)
    })
}

/// Antipode of a graph given by registry name or inline JSON, as a JSON diagram sum.
///
/// # Safety
/// `ctx` must be a live context, `graph` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renorm_context_antipode_json(
    ctx: *const RenormContext,
    graph: *const c_char,
    out: *mut *mut c_char,
) -> RenormStatus {
    if ctx.is_null() || out.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        let g = resolve_graph(read_str(graph)?)?;
        if !g.is_connected() {
            return Err(Error::Domain("antipode needs a connected graph".into()));
        }
        let a = (*ctx).ctx.antipode_forest(&GraphForest::single(g));
        write_string(out, sum_to_json(&a).to_string())
    })
}

/// Regularised valuation of one graph with default numeric parameters at cutoff `n`.
///
/// # Safety
/// `graph` and `d` must be NUL-terminated strings and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renorm_valuate(
    graph: *const c_char,
    d: *const c_char,
    n: u32,
    value: *mut f64,
) -> RenormStatus {
    if value.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        let g = resolve_graph(read_str(graph)?)?;
        let cfg = ValuationConfig::new(parse_rational(read_str(d)?)?, n)?;
        *value = PiEvaluator::new(cfg)?.value(&g)?;
        Ok(RenormStatus::Ok)
    })
}

/// Counterterm report as JSON, with log-partition orders up to `logz_order`.
///
/// # Safety
/// `d` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renorm_counterterms_json(
    d: *const c_char,
    alpha: f64,
    n: u32,
    logz_order: u32,
    out: *mut *mut c_char,
) -> RenormStatus {
    if out.is_null() {
        return RenormStatus::NullPointer;
    }
    guard(|| {
        let cfg = ValuationConfig::new(parse_rational(read_str(d)?)?, n)?;
        write_string(out, counterterms(&cfg, alpha, logz_order)?.to_json().to_string())
    })
}
