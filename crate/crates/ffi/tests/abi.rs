use std::ffi::{CStr, CString};
use std::ptr;

use plurikit_ffi::*;

const T12: &str = r#"{"ambient":{"n":2},"terms":[{"coeff":"1","exps":{"t_1_2":1}}]}"#;
const T21: &str = r#"{"ambient":{"n":2},"terms":[{"coeff":"1","exps":{"t_2_1":1}}]}"#;

fn poly(json: &str) -> *mut PkPoly {
    let c = CString::new(json).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pk_poly_from_json(c.as_ptr(), &mut p) }, PkStatus::PkOk);
    p
}

fn render(p: *const PkPoly) -> String {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(pk_poly_to_string(p, &mut s), PkStatus::PkOk);
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        pk_string_free(s);
        out
    }
}

#[test]
fn phi_of_t12() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(pk_context_new(2, ptr::null(), &mut ctx), PkStatus::PkOk);
        let p = poly(T12);
        let mut img = ptr::null_mut();
        assert_eq!(pk_phi(ctx, p, 0, &mut img), PkStatus::PkOk);
        assert_eq!(render(img), "(-k)*t21");
        let mut back = ptr::null_mut();
        assert_eq!(pk_phi(ctx, img, 1, &mut back), PkStatus::PkOk);
        assert_eq!(pk_poly_equal(back, p), 1);
        for h in [p, img, back] {
            pk_poly_free(h);
        }
        pk_context_free(ctx);
    }
}

#[test]
fn apply_and_adjoint_agree_under_inner_product() {
    unsafe {
        let kappa = CString::new("7/3").unwrap();
        let mut ctx = ptr::null_mut();
        assert_eq!(pk_context_new(2, kappa.as_ptr(), &mut ctx), PkStatus::PkOk);
        let (p, q) = (poly(T12), poly(T21));
        let mut fp = ptr::null_mut();
        let mut fq = ptr::null_mut();
        assert_eq!(pk_apply_op(ctx, PkOpKind::PkOpE, 1, 2, 0, p, &mut fp), PkStatus::PkOk);
        assert_eq!(pk_apply_op(ctx, PkOpKind::PkOpE, 1, 2, 1, q, &mut fq), PkStatus::PkOk);
        let ip = |a, b| {
            let mut s = ptr::null_mut();
            assert_eq!(pk_inner_product(ctx, a, b, &mut s), PkStatus::PkOk);
            let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
            pk_string_free(s);
            out
        };
        assert_eq!(ip(fp, q), ip(p, fq));
        for h in [p, q, fp, fq] {
            pk_poly_free(h);
        }
        pk_context_free(ctx);
    }
}

#[test]
fn pole_is_reported_with_message() {
    unsafe {
        let kappa = CString::new("2").unwrap();
        let mut ctx = ptr::null_mut();
        assert_eq!(pk_context_new(3, kappa.as_ptr(), &mut ctx), PkStatus::PkOk);
        let (a, b) = ([1u32, 1, 0], [0u32, 1, 1]);
        let mut s = ptr::null_mut();
        let st = pk_basis_json(ctx, PkBasisKind::PkBasisDescending, a.as_ptr(), b.as_ptr(), &mut s);
        assert_eq!(st, PkStatus::PkPoleAtKappa);
        assert!(s.is_null());
        let msg = CStr::from_ptr(pk_last_error_message()).to_str().unwrap();
        assert!(msg.contains("PoleAtKappa"), "{msg}");
        assert_eq!(CStr::from_ptr(pk_status_name(st)).to_str().unwrap(), "PoleAtKappa");
        pk_context_free(ctx);
    }
}

#[test]
fn basis_json_lists_every_index() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(pk_context_new(2, ptr::null(), &mut ctx), PkStatus::PkOk);
        let (a, b) = ([1u32, 1], [1u32, 1]);
        let mut s = ptr::null_mut();
        assert_eq!(pk_basis_json(ctx, PkBasisKind::PkBasisMonomial, a.as_ptr(), b.as_ptr(), &mut s), PkStatus::PkOk);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        pk_string_free(s);
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["nu"], serde_json::json!([0, 1, 1, 0]));
        pk_context_free(ctx);
    }
}

#[test]
fn bad_inputs() {
    unsafe {
        let mut p = ptr::null_mut();
        let junk = CString::new("{").unwrap();
        assert_eq!(pk_poly_from_json(junk.as_ptr(), &mut p), PkStatus::PkParseError);
        assert_eq!(pk_poly_from_json(ptr::null(), &mut p), PkStatus::PkNullPointer);
        let mut ctx = ptr::null_mut();
        assert_eq!(pk_context_new(0, ptr::null(), &mut ctx), PkStatus::PkInvalidInput);
        assert_eq!(pk_context_new(3, ptr::null(), &mut ctx), PkStatus::PkOk);
        let q = poly(T12);
        let mut out = ptr::null_mut();
        assert_eq!(pk_apply_op(ctx, PkOpKind::PkOpD, 1, 2, 0, q, &mut out), PkStatus::PkAmbientMismatch);
        pk_poly_free(q);
        pk_context_free(ctx);
        pk_poly_free(ptr::null_mut());
        pk_string_free(ptr::null_mut());
    }
}
