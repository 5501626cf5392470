//! C ABI over `plurikit`.
//!
//! Every fallible call returns a [`PkStatus`] and writes its result through an
//! out-pointer. Handles are opaque and owned by the caller once returned;
//! release them with the matching `*_free`. Strings handed out are
//! NUL-terminated UTF-8 and must be released with [`pk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use plurikit::bases::{descending_basis, monomial_basis, DescendingMethod, Partition};
use plurikit::field::{parse_rational, KappaMode, KappaRational};
use plurikit::poly::{Bidegree, Poly};
use plurikit::pullback::{phi_inverse, phi_kappa};
use plurikit::weyl::{OpKind, OperatorSpec, Weyl};
use plurikit::Error;

/// Result codes. `PK_OK` is zero; the rest match the library error codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PkStatus {
    PkOk = 0,
    PkPoleAtKappa = 1,
    PkPoleAtS = 2,
    PkSingularGram = 3,
    PkSingularSystem = 4,
    PkAmbientMismatch = 5,
    PkZeroPochhammer = 6,
    PkNonHomogeneous = 7,
    PkNonTVariable = 8,
    PkInvalidInput = 9,
    PkParseError = 10,
    PkNullPointer = 11,
    PkInvalidUtf8 = 12,
    PkPanic = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PkOpKind {
    PkOpD = 0,
    PkOpE = 1,
    PkOpEprime = 2,
    PkOpF = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PkBasisKind {
    PkBasisMonomial = 0,
    PkBasisDescending = 1,
}

/// Polynomial handle.
pub struct PkPoly(Poly);

/// Operator context: `n` and κ (symbolic or specialized).
pub struct PkContext(Weyl);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PkStatus {
    match e {
        Error::PoleAtKappa(_) => PkStatus::PkPoleAtKappa,
        Error::PoleAtS(_) => PkStatus::PkPoleAtS,
        Error::SingularGram(_) => PkStatus::PkSingularGram,
        Error::SingularSystem(_) => PkStatus::PkSingularSystem,
        Error::AmbientMismatch(_) => PkStatus::PkAmbientMismatch,
        Error::ZeroPochhammer(_) => PkStatus::PkZeroPochhammer,
        Error::NonHomogeneous(_) => PkStatus::PkNonHomogeneous,
        Error::NonTVariable(_) => PkStatus::PkNonTVariable,
        Error::InvalidInput(_) => PkStatus::PkInvalidInput,
        Error::Parse(_) => PkStatus::PkParseError,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Utf8,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, turning errors and panics into a status plus the thread's last error message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            PkStatus::PkOk
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(&e.to_json().to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            PkStatus::PkNullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_last_error("string argument is not valid UTF-8");
            PkStatus::PkInvalidUtf8
        }
        Err(_) => {
            set_last_error("internal panic");
            PkStatus::PkPanic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = CString::new(s).map_err(|_| Fail::Utf8)?.into_raw();
    Ok(())
}

unsafe fn kappa_mode(kappa: *const c_char) -> Result<KappaMode, Fail> {
    if kappa.is_null() {
        return Ok(KappaMode::Symbolic);
    }
    Ok(KappaMode::Specialized(parse_rational(str_arg(kappa, "kappa")?)?))
}

/// Message for the last failing call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Stable name of a status code, e.g. `"PoleAtKappa"`.
#[no_mangle]
pub extern "C" fn pk_status_name(status: PkStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PkStatus::PkOk => c"Ok",
        PkStatus::PkPoleAtKappa => c"PoleAtKappa",
        PkStatus::PkPoleAtS => c"PoleAtS",
        PkStatus::PkSingularGram => c"SingularGram",
        PkStatus::PkSingularSystem => c"SingularSystem",
        PkStatus::PkAmbientMismatch => c"AmbientMismatch",
        PkStatus::PkZeroPochhammer => c"ZeroPochhammer",
        PkStatus::PkNonHomogeneous => c"NonHomogeneous",
        PkStatus::PkNonTVariable => c"NonTVariable",
        PkStatus::PkInvalidInput => c"InvalidInput",
        PkStatus::PkParseError => c"ParseError",
        PkStatus::PkNullPointer => c"NullPointer",
        PkStatus::PkInvalidUtf8 => c"InvalidUtf8",
        PkStatus::PkPanic => c"Panic",
    };
    s.as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the polynomial JSON schema.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_poly_from_json(json: *const c_char, out: *mut *mut PkPoly) -> PkStatus {
    guard(|| {
        let p = Poly::from_json_str(str_arg(json, "json")?)?;
        write_out(out, PkPoly(p), "out")
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_poly_to_json(p: *const PkPoly, out: *mut *mut c_char) -> PkStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        write_string(out, p.0.to_json().to_string())
    })
}

/// Human-readable rendering, κ written as `k`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_poly_to_string(p: *const PkPoly, out: *mut *mut c_char) -> PkStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        write_string(out, p.0.to_string())
    })
}

/// Nonzero iff both handles hold the same polynomial (canonical comparison).
///
/// # Safety
/// Both arguments must be live handles.
#[no_mangle]
pub unsafe extern "C" fn pk_poly_equal(a: *const PkPoly, b: *const PkPoly) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => i32::from(a.0 == b.0),
        _ => 0,
    }
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pk_poly_free(p: *mut PkPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Context for `n × n` matrices. `kappa` is a rational such as `"5/2"`, or
/// null for symbolic κ.
///
/// # Safety
/// `kappa` must be null or a valid string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_context_new(n: usize, kappa: *const c_char, out: *mut *mut PkContext) -> PkStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()).into());
        }
        let mode = kappa_mode(kappa)?;
        write_out(out, PkContext(Weyl::new(n, &mode)), "out")
    })
}

/// # Safety
/// `ctx` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pk_context_free(ctx: *mut PkContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

fn ctx_input(ctx: &PkContext, p: &PkPoly) -> Result<Poly, Error> {
    let n = ctx.0.n();
    if p.0.ambient().n != n {
        return Err(Error::AmbientMismatch(format!("polynomial has n = {}, context n = {n}", p.0.ambient().n)));
    }
    match ctx.0.mode().specialized() {
        Some(q) => p.0.specialize(q),
        None => Ok(p.0.clone()),
    }
}

/// Applies `D_ij`, `E_ij`, `E'_ij` or `F_ij` (its adjoint when `adjoint` is nonzero).
///
/// # Safety
/// `ctx` and `p` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_apply_op(
    ctx: *const PkContext,
    kind: PkOpKind,
    i: usize,
    j: usize,
    adjoint: i32,
    p: *const PkPoly,
    out: *mut *mut PkPoly,
) -> PkStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        let p = ctx_input(ctx, ref_arg(p, "p")?)?;
        p.require_t()?;
        let kind = match kind {
            PkOpKind::PkOpD => OpKind::D,
            PkOpKind::PkOpE => OpKind::E,
            PkOpKind::PkOpEprime => OpKind::Eprime,
            PkOpKind::PkOpF => OpKind::F,
        };
        let op = OperatorSpec::new(kind, i, j, ctx.0.n())?;
        let r = if adjoint != 0 { ctx.0.apply_adjoint(op, &p) } else { ctx.0.apply(op, &p) };
        write_out(out, PkPoly(r), "out")
    })
}

/// `(p, q)_κ` as coefficient JSON.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_inner_product(
    ctx: *const PkContext,
    p: *const PkPoly,
    q: *const PkPoly,
    out: *mut *mut c_char,
) -> PkStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        let p = ctx_input(ctx, ref_arg(p, "p")?)?;
        let q = ctx_input(ctx, ref_arg(q, "q")?)?;
        let v = ctx.0.inner_product(&p, &q)?;
        write_string(out, v.to_json().to_string())
    })
}

/// `φ_κ(p)`, or `φ_κ⁻¹(p)` when `inverse` is nonzero (seed A).
///
/// # Safety
/// `ctx` and `p` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_phi(ctx: *const PkContext, p: *const PkPoly, inverse: i32, out: *mut *mut PkPoly) -> PkStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        let p = ctx_input(ctx, ref_arg(p, "p")?)?;
        let k: KappaRational = ctx.0.kappa().clone();
        let r = if inverse != 0 { phi_inverse(&k, &p, plurikit::genfun::Seed::A)? } else { phi_kappa(&k, &p)? };
        write_out(out, PkPoly(r), "out")
    })
}

/// Basis of the bidegree `(row_sums, col_sums)` for the trivial partition, as
/// `[{"nu": [...], "poly": {...}}, ...]`. Both arrays have `ctx`'s `n` entries.
///
/// # Safety
/// `ctx` must be live; `row_sums` and `col_sums` must point to `n` readable
/// `u32`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_basis_json(
    ctx: *const PkContext,
    kind: PkBasisKind,
    row_sums: *const u32,
    col_sums: *const u32,
    out: *mut *mut c_char,
) -> PkStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        if row_sums.is_null() || col_sums.is_null() {
            return Err(Fail::Null("row_sums/col_sums"));
        }
        let n = ctx.0.n();
        let a = std::slice::from_raw_parts(row_sums, n).to_vec();
        let b = std::slice::from_raw_parts(col_sums, n).to_vec();
        if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
            return Err(Error::InvalidInput("row and column sums have different totals".into()).into());
        }
        let bd = Bidegree::new(a, b);
        let pt = Partition::trivial(n);
        let basis = match kind {
            PkBasisKind::PkBasisMonomial => monomial_basis(&ctx.0, &bd, &pt)?,
            PkBasisKind::PkBasisDescending => descending_basis(&ctx.0, &bd, &pt, DescendingMethod::LinearSolve)?,
        };
        let items: Vec<serde_json::Value> = basis
            .iter()
            .map(|(nu, p)| serde_json::json!({ "nu": nu.flat(), "poly": p.to_json() }))
            .collect();
        write_string(out, serde_json::Value::Array(items).to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn status_names_are_static() {
        let name = unsafe { CStr::from_ptr(pk_status_name(PkStatus::PkPoleAtKappa)) };
        assert_eq!(name.to_str().unwrap(), "PoleAtKappa");
    }

    #[test]
    fn null_out_pointer_is_reported() {
        let json = CString::new(r#"{"ambient":{"n":1},"terms":[]}"#).unwrap();
        let st = unsafe { pk_poly_from_json(json.as_ptr(), ptr::null_mut()) };
        assert_eq!(st, PkStatus::PkNullPointer);
    }
}
