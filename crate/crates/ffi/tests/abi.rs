use std::ffi::{CStr, CString};
use std::ptr;

use prodgap_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { pg_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pg_last_error()) }.to_str().unwrap().to_owned()
}

fn set_of(values: &[u64]) -> *mut PgSet {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pg_set_from_u64(values.as_ptr(), values.len(), &mut out) }, PgStatus::Ok);
    out
}

fn elements(set: *const PgSet) -> Vec<u64> {
    let mut len = 0usize;
    assert_eq!(unsafe { pg_set_len(set, &mut len) }, PgStatus::Ok);
    (0..len)
        .map(|i| {
            let mut v = 0u64;
            assert_eq!(unsafe { pg_set_get_u64(set, i, &mut v) }, PgStatus::Ok);
            v
        })
        .collect()
}

#[test]
fn set_round_trip() {
    let s = set_of(&[5, 1, 3, 3]);
    assert_eq!(elements(s), [1, 3, 5]);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { pg_set_to_string(s, &mut text) }, PgStatus::Ok);
    assert_eq!(take_string(text), "1\n3\n5\n");

    let mut v = 0u64;
    assert_eq!(unsafe { pg_set_get_u64(s, 3, &mut v) }, PgStatus::IndexOutOfRange);
    assert!(last_error().contains("out of range"));
    unsafe { pg_set_free(s) };

    let src = CString::new("# c\n7\n2\n").unwrap();
    let mut parsed = ptr::null_mut();
    assert_eq!(unsafe { pg_set_parse(src.as_ptr(), &mut parsed) }, PgStatus::Ok);
    assert_eq!(elements(parsed), [2, 7]);
    unsafe { pg_set_free(parsed) };

    let bad = CString::new("12x\n").unwrap();
    assert_eq!(unsafe { pg_set_parse(bad.as_ptr(), &mut parsed) }, PgStatus::Parse);
    assert!(!last_error().is_empty());

    let empty = set_of(&[]);
    assert_eq!(elements(empty), Vec::<u64>::new());
    unsafe { pg_set_free(empty) };
}

#[test]
fn values_beyond_64_bits_report_overflow() {
    let src = CString::new("18446744073709551616\n").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pg_set_parse(src.as_ptr(), &mut s) }, PgStatus::Ok);
    let mut v = 0u64;
    assert_eq!(unsafe { pg_set_get_u64(s, 0, &mut v) }, PgStatus::Overflow);
    unsafe { pg_set_free(s) };
}

#[test]
fn null_pointers_are_rejected() {
    let mut len = 0usize;
    assert_eq!(unsafe { pg_set_len(ptr::null(), &mut len) }, PgStatus::NullPointer);
    let s = set_of(&[1]);
    assert_eq!(unsafe { pg_set_len(s, ptr::null_mut()) }, PgStatus::NullPointer);
    assert_eq!(unsafe { pg_set_from_u64(ptr::null(), 3, &mut ptr::null_mut()) }, PgStatus::NullPointer);
    assert_eq!(unsafe { pg_set_parse(ptr::null(), &mut ptr::null_mut()) }, PgStatus::NullPointer);
    unsafe {
        pg_set_free(s);
        pg_set_free(ptr::null_mut());
        pg_string_free(ptr::null_mut());
    }
}

#[test]
fn sidon_functions() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pg_sidon_erdos_turan(5, &mut s) }, PgStatus::Ok);
    assert_eq!(elements(s), [0, 11, 24, 34, 41]);
    let mut ok = false;
    let mut cx = ptr::null_mut();
    assert_eq!(unsafe { pg_verify_sidon(s, &mut ok, &mut cx) }, PgStatus::Ok);
    assert!(ok);
    assert!(cx.is_null());
    let mut gap = ptr::null_mut();
    assert_eq!(unsafe { pg_min_pairwise_gap(s, &mut gap) }, PgStatus::Ok);
    assert_eq!(take_string(gap), "7");
    unsafe { pg_set_free(s) };

    assert_eq!(unsafe { pg_sidon_erdos_turan(9, &mut s) }, PgStatus::InvalidArgument);
    assert!(last_error().contains("odd prime"));

    let bad = set_of(&[0, 1, 2, 3]);
    assert_eq!(unsafe { pg_verify_sidon(bad, &mut ok, &mut cx) }, PgStatus::Ok);
    assert!(!ok);
    assert_eq!(take_string(cx), "[0, 3, 1, 2]");
    unsafe { pg_set_free(bad) };
}

#[test]
fn products_and_quotients() {
    let s = set_of(&[1, 2, 3]);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pg_product_set(s, &mut p) }, PgStatus::Ok);
    assert_eq!(elements(p), [1, 2, 3, 4, 6, 9]);
    unsafe { pg_set_free(p) };
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { pg_min_t_gap(s, 2, &mut g) }, PgStatus::Ok);
    assert_eq!(take_string(g), "2");

    let mut q = 0usize;
    assert_eq!(unsafe { pg_quotient_set_size(s, &mut q) }, PgStatus::Ok);
    // 1/3, 1/2, 2/3
    assert_eq!(q, 3);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { pg_theorem5_check_json(s, 3, &mut json) }, PgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["quotient_size"], 3);
    assert_eq!(v["pass"], true);
    assert_eq!(unsafe { pg_theorem5_check_json(s, 2, &mut json) }, PgStatus::InvalidArgument);
    unsafe { pg_set_free(s) };
}

#[test]
fn construct_and_certify_json() {
    let alpha = CString::new("1/20").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { pg_construct_json(alpha.as_ptr(), 0, 2, &mut json) }, PgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["spec"]["kind"], "SidonBlocks");
    assert_eq!(v["separation"]["holds"], true);
    assert_eq!(unsafe { pg_construct_json(alpha.as_ptr(), 0, 9, &mut json) }, PgStatus::TooLarge);

    let s = set_of(&(1..=8).collect::<Vec<_>>());
    let half = CString::new("1/2").unwrap();
    assert_eq!(unsafe { pg_certify_json(s, half.as_ptr(), 1, &mut json) }, PgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert!(v.as_array().unwrap().is_empty(), "[1, 8] holds no window of length 16");
    unsafe { pg_set_free(s) };

    let s = set_of(&(1..=16).collect::<Vec<_>>());
    assert_eq!(unsafe { pg_certify_json(s, half.as_ptr(), 1, &mut json) }, PgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v[0]["type"], "gap");
    assert_eq!(v[0]["product_gap"], 4);
    let junk = CString::new("0.5").unwrap();
    assert_eq!(unsafe { pg_certify_json(s, junk.as_ptr(), 1, &mut json) }, PgStatus::Parse);
    unsafe { pg_set_free(s) };
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(pg_version()) }.to_str().unwrap();
    assert_eq!(v, prodgap::VERSION);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/prodgap.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 17);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct PgSet PgSet;"));
    assert!(header.contains("PG_STATUS_NULL_POINTER = 7"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/prodgap.h");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match std::process::Command::new(&cc).args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header]).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(e) => eprintln!("skipping: no C compiler ({cc}): {e}"),
    }
}
