use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use mirabolic_ffi::*;

fn text(x: *const MirabolicElement) -> String {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(mirabolic_element_to_text(x, &mut s), MirabolicStatus::Ok);
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        mirabolic_string_free(s);
        out
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mirabolic_last_error()).to_str().unwrap().to_owned() }
}

#[test]
fn dimension_count_matches_known_values() {
    let mut out = 0u64;
    unsafe {
        assert_eq!(mirabolic_dimension_count(2, 2, 2, &mut out), MirabolicStatus::Ok);
        assert_eq!(out, 27);
        assert_eq!(mirabolic_dimension_count(3, 3, 3, &mut out), MirabolicStatus::Ok);
        assert_eq!(out, 652);
        assert_eq!(mirabolic_dimension_count(1, 1, 1, ptr::null_mut()), MirabolicStatus::NullPointer);
    }
}

#[test]
fn left_l_on_undecorated_one_by_one() {
    let mut x = ptr::null_mut();
    let mut y = ptr::null_mut();
    let token = CString::new("L").unwrap();
    unsafe {
        assert_eq!(mirabolic_element_basis(1, 1, 1, 0, &mut x), MirabolicStatus::Ok);
        assert_eq!(text(x), "[[1]]{}");
        assert_eq!(mirabolic_element_act(x, MirabolicSide::Left, token.as_ptr(), &mut y), MirabolicStatus::Ok);
        assert_eq!(text(y), "(v^-2)*[[1]]{} + (v^-1)*[[1]]{(1,1)}");
        let mut n = 0usize;
        assert_eq!(mirabolic_element_term_count(y, &mut n), MirabolicStatus::Ok);
        assert_eq!(n, 2);
        mirabolic_element_free(x);
        mirabolic_element_free(y);
    }
}

#[test]
fn parse_round_trip_and_equality() {
    let src = CString::new("(v^-2)*[[1]]{} + (v^-1)*[[1]]{(1,1)}").unwrap();
    let token = CString::new("L").unwrap();
    let mut parsed = ptr::null_mut();
    let mut basis = ptr::null_mut();
    let mut acted = ptr::null_mut();
    let mut eq = false;
    unsafe {
        assert_eq!(mirabolic_element_parse(1, 1, 1, src.as_ptr(), &mut parsed), MirabolicStatus::Ok);
        assert_eq!(mirabolic_element_basis(1, 1, 1, 0, &mut basis), MirabolicStatus::Ok);
        assert_eq!(mirabolic_element_act(basis, MirabolicSide::Left, token.as_ptr(), &mut acted), MirabolicStatus::Ok);
        assert_eq!(mirabolic_element_equal(parsed, acted, &mut eq), MirabolicStatus::Ok);
        assert!(eq);
        for p in [parsed, basis, acted] {
            mirabolic_element_free(p);
        }
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut x = ptr::null_mut();
    let bad_token = CString::new("E3").unwrap();
    let garbage = CString::new("[[1]]{(2,2)}").unwrap();
    unsafe {
        assert_eq!(mirabolic_element_basis(1, 1, 1, 5, &mut x), MirabolicStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        assert_eq!(mirabolic_element_parse(1, 1, 1, garbage.as_ptr(), &mut x), MirabolicStatus::InvalidArgument);
        assert_eq!(mirabolic_element_parse(1, 1, 1, ptr::null(), &mut x), MirabolicStatus::NullPointer);
        assert_eq!(mirabolic_element_basis(2, 2, 1, 0, &mut x), MirabolicStatus::Ok);
        let mut y = ptr::null_mut();
        assert_eq!(mirabolic_element_act(x, MirabolicSide::Right, bad_token.as_ptr(), &mut y), MirabolicStatus::InvalidArgument);
        assert!(y.is_null());
        mirabolic_element_free(x);
        let mut mism = 0;
        assert_eq!(mirabolic_oracle_mismatches(3, 3, 3, 5, 1000, &mut mism), MirabolicStatus::ScaleExceeded);
        assert_eq!(mirabolic_oracle_mismatches(2, 2, 2, 4, 1000, &mut mism), MirabolicStatus::UnsupportedField);
    }
}

#[test]
fn oracle_and_checks_through_the_abi() {
    let mut mism = 1;
    let mut passed = false;
    let name = CString::new("negative-control").unwrap();
    let unknown = CString::new("no-such-check").unwrap();
    unsafe {
        assert_eq!(mirabolic_oracle_mismatches(2, 2, 2, 2, u64::MAX, &mut mism), MirabolicStatus::Ok);
        assert_eq!(mism, 0);
        assert_eq!(mirabolic_run_check(name.as_ptr(), u64::MAX, &mut passed), MirabolicStatus::Ok);
        assert!(passed);
        assert_eq!(mirabolic_run_check(unknown.as_ptr(), u64::MAX, &mut passed), MirabolicStatus::InvalidArgument);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/mirabolic.h")).unwrap();
    for f in [
        "mirabolic_last_error",
        "mirabolic_dimension_count",
        "mirabolic_element_basis",
        "mirabolic_element_parse",
        "mirabolic_element_act",
        "mirabolic_element_term_count",
        "mirabolic_element_equal",
        "mirabolic_element_to_text",
        "mirabolic_element_free",
        "mirabolic_string_free",
        "mirabolic_oracle_mismatches",
        "mirabolic_run_check",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct MirabolicElement MirabolicElement;"));
}

/// Compiles the C smoke program against the header and the static library.
/// `cargo test` only builds the rlib, so the archive is built here first.
/// Skipped when no C compiler is around.
#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no cc");
        return;
    }
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let built = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "--profile", "test", "-p", "mirabolic-ffi", "--lib"])
        .current_dir(&manifest)
        .status()
        .unwrap();
    assert!(built.success(), "building the static library failed");
    let lib = target.join("libmirabolic_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = std::env::temp_dir().join(format!("mirabolic_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "cc failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("(v^-2)*[[1]]{} + (v^-1)*[[1]]{(1,1)}"));
}
