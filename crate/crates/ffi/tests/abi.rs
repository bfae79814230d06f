use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cdlab_ffi::*;

fn parse(text: &str, level: i32) -> *mut CdElement {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cd_element_parse(c.as_ptr(), level, &mut out) }, CdStatus::Ok);
    out
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cd_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cd_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn stiefel_annihilator_has_dimension_four() {
    let z = parse("(e1, e2)", 4);
    let mut d = 0usize;
    assert_eq!(unsafe { cd_ann_dim(z, &mut d) }, CdStatus::Ok);
    assert_eq!(d, 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cd_ann_json(z, &mut s) }, CdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["dim_ann"], 4);
    unsafe { cd_element_free(z) };
}

#[test]
fn quaternion_product_and_conjugate() {
    let (i, j, k) = (parse("e1", 2), parse("e2", 2), parse("e3", 2));
    let mut ij = ptr::null_mut();
    assert_eq!(unsafe { cd_mul(i, j, &mut ij) }, CdStatus::Ok);
    let mut eq = 0;
    assert_eq!(unsafe { cd_element_eq(ij, k, &mut eq) }, CdStatus::Ok);
    assert_eq!(eq, 1);
    let mut kc = ptr::null_mut();
    assert_eq!(unsafe { cd_conj(k, &mut kc) }, CdStatus::Ok);
    let minus_k = parse("-e3", 2);
    assert_eq!(unsafe { cd_element_eq(kc, minus_k, &mut eq) }, CdStatus::Ok);
    assert_eq!(eq, 1);
    for e in [i, j, k, ij, kc, minus_k] {
        unsafe { cd_element_free(e) };
    }
}

#[test]
fn json_round_trip_and_basis() {
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { cd_element_basis(3, 5, &mut e) }, CdStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cd_element_to_json(e, &mut s) }, CdStatus::Ok);
    let text = CString::new(take(s)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { cd_element_from_json(text.as_ptr(), &mut back) }, CdStatus::Ok);
    let (mut eq, mut level) = (0, 0u32);
    unsafe {
        cd_element_eq(e, back, &mut eq);
        cd_element_level(back, &mut level);
    }
    assert_eq!((eq, level), (1, 3));
    assert_eq!(unsafe { cd_element_basis(3, 8, &mut e) }, CdStatus::Precondition);
    unsafe {
        cd_element_free(e);
        cd_element_free(back);
    }
}

#[test]
fn bracket_and_dlocus() {
    let (a, b) = (parse("e1", 3), parse("e2", 3));
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { cd_bracket(a, b, &mut z) }, CdStatus::Ok);
    let mut level = 0;
    unsafe { cd_element_level(z, &mut level) };
    assert_eq!(level, 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cd_dlocus_json(a, b, &mut s) }, CdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["in_dlocus"], true);
    assert_eq!(v["dim_ann_bracket"], 4);

    // 1 is not in C^perp
    let one = parse("1", 3);
    assert_eq!(unsafe { cd_bracket(one, b, &mut z) }, CdStatus::Precondition);
    for e in [a, b, z, one] {
        unsafe { cd_element_free(e) };
    }
}

#[test]
fn errors_are_codes_not_panics() {
    let mut out = ptr::null_mut();
    let bad = CString::new("e1 e2").unwrap();
    assert_eq!(unsafe { cd_element_parse(bad.as_ptr(), -1, &mut out) }, CdStatus::Parse);
    assert!(last_error().contains("position 3"));
    assert_eq!(unsafe { cd_element_parse(ptr::null(), -1, &mut out) }, CdStatus::NullPointer);
    let big = CString::new("e1").unwrap();
    assert_eq!(unsafe { cd_element_parse(big.as_ptr(), 30, &mut out) }, CdStatus::LevelTooLarge);
    let (a, b) = (parse("e1", 2), parse("e1", 3));
    assert_eq!(unsafe { cd_mul(a, b, &mut out) }, CdStatus::LevelMismatch);
    let junk = CString::new("{\"n\": 2}").unwrap();
    assert_eq!(unsafe { cd_element_from_json(junk.as_ptr(), &mut out) }, CdStatus::Json);
    let name = unsafe { CStr::from_ptr(cd_status_name(CdStatus::Parse)) };
    assert_eq!(name.to_str().unwrap(), "parse error");
    unsafe {
        cd_element_free(a);
        cd_element_free(b);
        cd_element_free(ptr::null_mut());
        cd_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_single_check() {
    let id = CString::new("lem-Zm").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cd_verify_json(id.as_ptr(), 5, 20, 0, &mut s) }, CdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v[0]["check_id"], "lem-Zm");
    assert_eq!(v[0]["status"], "pass");
    let unknown = CString::new("no-such-check").unwrap();
    assert_eq!(
        unsafe { cd_verify_json(unknown.as_ptr(), 4, 1, 0, &mut s) },
        CdStatus::UnknownCheck
    );
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cdlab.h")).unwrap();
    for f in [
        "cd_element_parse",
        "cd_element_free",
        "cd_mul",
        "cd_ann_dim",
        "cd_verify_json",
        "cd_string_free",
        "typedef struct CdElement CdElement",
        "CD_STATUS_OK = 0",
    ] {
        assert!(h.contains(f), "{f} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let src = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("uses_header.c");
    std::fs::write(
        &src,
        "#include \"cdlab.h\"\nint main(void) { CdElement *e = 0; return cd_element_basis(2, 1, &e) == CD_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
}
