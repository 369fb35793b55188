use renorm_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    renorm_string_free(p);
    s
}

#[test]
fn bell_round_trip() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(renorm_bell(5, 3, false, &mut out), RenormStatus::Ok);
        assert_eq!(take(out), "15*X*Y2^2 + 10*X^2*Y3");
    }
}

#[test]
fn bad_k_sets_last_error() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(renorm_bell(2, 3, false, &mut out), RenormStatus::BadInput);
        assert!(out.is_null());
        let msg = CStr::from_ptr(renorm_last_error()).to_str().unwrap();
        assert!(msg.contains("k <= n"));
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        assert_eq!(renorm_bell(2, -1, false, ptr::null_mut()), RenormStatus::NullPointer);
        renorm_string_free(ptr::null_mut());
        renorm_context_free(ptr::null_mut());
    }
}

#[test]
fn coproduct_json_has_two_terms_at_n4() {
    let d = CString::new("3").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(renorm_coproduct_json(4, d.as_ptr(), &mut out), RenormStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        let coeffs: Vec<&str> = v.as_array().unwrap().iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
        assert_eq!(coeffs.len(), 2);
        assert!(coeffs.contains(&"768") && coeffs.contains(&"96"));
    }
}

#[test]
fn decimal_dimension_is_rejected_for_exact_commands() {
    let d = CString::new("3.0").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(renorm_coproduct_json(4, d.as_ptr(), &mut out), RenormStatus::BadInput);
    }
}

#[test]
fn context_lifecycle() {
    let d = CString::new("18/5").unwrap();
    let g = CString::new("sunset").unwrap();
    let mut ctx = ptr::null_mut();
    unsafe {
        assert_eq!(renorm_context_new(d.as_ptr(), &mut ctx), RenormStatus::Ok);
        let (mut ne, mut nm) = (0u32, 0u32);
        assert_eq!(renorm_context_thresholds(ctx, &mut ne, &mut nm), RenormStatus::Ok);
        assert_eq!((ne, nm), (9, 5));
        let mut out = ptr::null_mut();
        assert_eq!(renorm_context_antipode_json(ctx, g.as_ptr(), &mut out), RenormStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["coefficient"], "-1");
        renorm_context_free(ctx);
    }
}

#[test]
fn dimension_four_is_out_of_domain() {
    let d = CString::new("4").unwrap();
    let mut ctx = ptr::null_mut();
    unsafe {
        assert_eq!(renorm_context_new(d.as_ptr(), &mut ctx), RenormStatus::BadInput);
        assert!(ctx.is_null());
    }
}

#[test]
fn verify_and_valuate() {
    let d = CString::new("3").unwrap();
    let g = CString::new("doubleedge").unwrap();
    unsafe {
        assert_eq!(renorm_verify(d.as_ptr(), 4, 11, ptr::null_mut()), RenormStatus::Ok);
        let mut v = 0.0;
        assert_eq!(renorm_valuate(g.as_ptr(), d.as_ptr(), 0, &mut v), RenormStatus::Ok);
        assert!((v - 1.0).abs() < 1e-15);
        let mut out = ptr::null_mut();
        let status = renorm_counterterms_json(d.as_ptr(), 0.1, 1, 0, &mut out);
        assert_eq!(status, RenormStatus::Ok);
        let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(r["thresholds"]["n_star_m"], 2);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/renorm.h")).unwrap();
    for name in ["renorm_bell", "renorm_string_free", "renorm_last_error", "RenormContext", "RENORM_STATUS_OK"] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
