use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use brieskorn_ffi::*;
use serde_json::Value;

fn handle(exps: &[u64]) -> *mut BrieskornExponents {
    let mut h = ptr::null_mut();
    let status = unsafe { brieskorn_exponents_new(exps.as_ptr(), exps.len(), &mut h) };
    assert_eq!(status, BrieskornStatus::BrieskornOk);
    assert!(!h.is_null());
    h
}

fn take(s: *mut libc::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { brieskorn_string_free(s) };
    text
}

fn last_error() -> String {
    let p = brieskorn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn milnor_number_of_the_poincare_sphere() {
    let h = handle(&[2, 3, 5]);
    assert_eq!(unsafe { brieskorn_exponents_len(h) }, 3);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { brieskorn_milnor_number(h, &mut out) },
        BrieskornStatus::BrieskornOk
    );
    assert_eq!(take(out), "8");
    assert!(brieskorn_last_error().is_null());
    unsafe { brieskorn_exponents_free(h) };
}

#[test]
fn json_queries_match_the_command_line() {
    let h = handle(&[5, 3, 2]);
    let cmd = CString::new("homology").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { brieskorn_query_json(h, cmd.as_ptr(), &mut out) },
        BrieskornStatus::BrieskornOk
    );
    let text = take(out);
    let cli = brieskorn::cli::run(["brieskorn", "homology", "5", "3", "2", "--json"]);
    assert_eq!(text, cli.stdout);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["groups"]["1"]["text"], "0");
    let version = unsafe { CStr::from_ptr(brieskorn_schema_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v["schema_version"], version);
    assert_eq!(version, brieskorn::cli::json::SCHEMA_VERSION);
    unsafe { brieskorn_exponents_free(h) };
}

#[test]
fn failures_set_status_and_message() {
    let mut h = ptr::null_mut();
    let bad = [0u64, 2];
    assert_eq!(
        unsafe { brieskorn_exponents_new(bad.as_ptr(), bad.len(), &mut h) },
        BrieskornStatus::BrieskornInvalidArgument
    );
    assert!(h.is_null());
    assert!(last_error().contains("position 0"));

    let h = handle(&[4, 4, 4, 4]);
    let mut out = ptr::null_mut();
    let unknown = CString::new("frobnicate").unwrap();
    assert_eq!(
        unsafe { brieskorn_query_json(h, unknown.as_ptr(), &mut out) },
        BrieskornStatus::BrieskornInvalidArgument
    );
    let ss = CString::new("ss").unwrap();
    assert_eq!(
        unsafe { brieskorn_query_json(h, ss.as_ptr(), &mut out) },
        BrieskornStatus::BrieskornDomainError
    );
    assert!(last_error().contains("unbounded"), "{}", last_error());
    assert!(out.is_null());
    assert_eq!(
        unsafe { brieskorn_milnor_number(ptr::null(), &mut out) },
        BrieskornStatus::BrieskornNullArgument
    );
    unsafe { brieskorn_exponents_free(h) };
    unsafe { brieskorn_exponents_free(ptr::null_mut()) };
    unsafe { brieskorn_string_free(ptr::null_mut()) };
}

#[test]
fn run_takes_a_whole_command_line() {
    let args: Vec<CString> = ["mec", "3", "2", "2", "2"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const libc::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { brieskorn_run(ptrs.len(), ptrs.as_ptr(), &mut out) },
        BrieskornStatus::BrieskornOk
    );
    let cli = brieskorn::cli::run(["brieskorn", "mec", "3", "2", "2", "2"]);
    assert_eq!(take(out), cli.stdout);

    let usage = [CString::new("--bogus").unwrap()];
    let ptrs: Vec<*const libc::c_char> = usage.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(
        unsafe { brieskorn_run(1, ptrs.as_ptr(), &mut out) },
        BrieskornStatus::BrieskornInvalidArgument
    );
}

/// Compiles and runs a C program against the generated header and the
/// static library.
#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("brieskorn.h").exists());
    let lib_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    if !lib_dir.join("libbrieskorn_ffi.a").exists() {
        eprintln!("skipping: no static library in {}", lib_dir.display());
        return;
    }
    let Ok(cc) = which_cc() else {
        eprintln!("skipping: no C compiler");
        return;
    };
    let dir = std::env::temp_dir().join(format!("brieskorn-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "brieskorn.h"

int main(void) {
    uint64_t exps[] = {2, 3, 5};
    BrieskornExponents *h = NULL;
    if (brieskorn_exponents_new(exps, 3, &h) != BRIESKORN_OK) return 1;
    char *mu = NULL;
    if (brieskorn_milnor_number(h, &mu) != BRIESKORN_OK) return 2;
    int ok = strcmp(mu, "8") == 0;
    brieskorn_string_free(mu);
    char *json = NULL;
    if (brieskorn_query_json(h, "homology", &json) != BRIESKORN_OK) return 3;
    ok = ok && strstr(json, "\"schema_version\": \"1\"") != NULL;
    brieskorn_string_free(json);
    brieskorn_exponents_free(h);
    uint64_t bad[] = {1};
    if (brieskorn_exponents_new(bad, 1, &h) == BRIESKORN_OK) return 4;
    printf("%s\n", brieskorn_last_error());
    return ok ? 0 : 5;
}
"#,
    )
    .unwrap();
    let exe = dir.join("probe");
    let build = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(lib_dir.join("libbrieskorn_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        build.status.success(),
        "{}",
        String::from_utf8_lossy(&build.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stdout)
    );
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .ok_or(())
}
