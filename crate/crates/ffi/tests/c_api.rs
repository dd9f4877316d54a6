use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use regcore_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = regcore_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    regcore_string_free(p);
    s
}

unsafe fn ideal(field: &str, gens: &[&str]) -> *mut RegcoreIdeal {
    let owned: Vec<CString> = gens.iter().map(|g| c(g)).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|g| g.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let status = regcore_ideal_new(c(field).as_ptr(), ptrs.as_ptr(), ptrs.len(), &mut out);
    assert_eq!(status, RegcoreStatus::Ok, "{}", last_error());
    out
}

#[test]
fn worked_example_through_the_abi() {
    unsafe {
        let i = ideal("Q", &["x^3", "x*y", "y^2"]);
        let mut n = 0u64;
        assert_eq!(regcore_ideal_colength(i, &mut n), RegcoreStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(regcore_ideal_multiplicity(i, 42, &mut n), RegcoreStatus::Ok);
        assert_eq!(n, 5);

        let mut adj = ptr::null_mut();
        assert_eq!(regcore_ideal_adjoint(i, 42, &mut adj), RegcoreStatus::Ok);
        let m = ideal("Q", &["x", "y"]);
        let mut same = false;
        assert_eq!(regcore_ideal_equals(adj, m, &mut same), RegcoreStatus::Ok);
        assert!(same);

        let mut closed = ptr::null_mut();
        let mut exact = false;
        assert_eq!(regcore_ideal_closure(i, 42, &mut closed, &mut exact), RegcoreStatus::Ok);
        assert!(exact);
        assert_eq!(regcore_ideal_equals(closed, i, &mut same), RegcoreStatus::Ok);
        assert!(same);

        let mut module = ptr::null_mut();
        assert_eq!(regcore_module_from_ideal(i, &mut module), RegcoreStatus::Ok);
        let mut core = ptr::null_mut();
        assert_eq!(regcore_module_core(module, 42, &mut core), RegcoreStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(regcore_module_to_json(core, &mut json), RegcoreStatus::Ok);
        let text = take_string(json);
        for g in ["x^4", "x^2*y", "x*y^2", "y^3"] {
            assert!(text.contains(&format!("\"{g}\"")), "{text}");
        }
        let mut br = 0u64;
        assert_eq!(regcore_module_buchsbaum_rim(module, &mut br), RegcoreStatus::Ok);
        assert_eq!(br, 5);

        for h in [i, adj, m, closed] {
            regcore_ideal_free(h);
        }
        regcore_module_free(module);
        regcore_module_free(core);
    }
}

#[test]
fn json_round_trip_and_fitting() {
    unsafe {
        let mut i = ptr::null_mut();
        let src = c(r#"{"field": "F65537", "gens": ["x^2", "x*y", "y^2"]}"#);
        assert_eq!(regcore_ideal_from_json(src.as_ptr(), &mut i), RegcoreStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(regcore_ideal_to_json(i, &mut json), RegcoreStatus::Ok);
        let text = take_string(json);
        assert!(text.contains("\"colength\": 3"), "{text}");
        let mut back = ptr::null_mut();
        assert_eq!(regcore_ideal_from_json(c(&text).as_ptr(), &mut back), RegcoreStatus::Ok);

        let pres = c(r#"{"field": "F65537", "presentation": [["y", "0"], ["-x", "y"], ["0", "-x"]]}"#);
        let mut fit = ptr::null_mut();
        assert_eq!(regcore_fitting_from_json(pres.as_ptr(), 2, &mut fit), RegcoreStatus::Ok);
        let mut same = false;
        assert_eq!(regcore_ideal_equals(fit, i, &mut same), RegcoreStatus::Ok);
        assert!(same);

        let m = c(r#"{"field": "F65537", "rank": 2, "generators": [["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]]}"#);
        let mut module = ptr::null_mut();
        assert_eq!(regcore_module_from_json(m.as_ptr(), &mut module), RegcoreStatus::Ok);
        let (mut rank, mut colength) = (0usize, 0u64);
        assert_eq!(regcore_module_info(module, &mut rank, &mut colength), RegcoreStatus::Ok);
        assert_eq!((rank, colength), (2, 2));
        let mut br = 0u64;
        assert_eq!(regcore_module_buchsbaum_rim(module, &mut br), RegcoreStatus::Ok);
        assert_eq!(br, 3);

        regcore_ideal_free(i);
        regcore_ideal_free(back);
        regcore_ideal_free(fit);
        regcore_module_free(module);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(regcore_ideal_from_json(c("{oops").as_ptr(), &mut out), RegcoreStatus::Parse);
        assert!(last_error().starts_with("parse error"));
        assert!(out.is_null());

        let gens = [c("x^2")];
        let ptrs = [gens[0].as_ptr()];
        assert_eq!(regcore_ideal_new(c("Q").as_ptr(), ptrs.as_ptr(), 1, &mut out), RegcoreStatus::NotMPrimary);
        assert_eq!(last_error(), "ideal is not m-primary");

        assert_eq!(regcore_ideal_new(c("F4").as_ptr(), ptrs.as_ptr(), 1, &mut out), RegcoreStatus::InvalidInput);
        assert_eq!(regcore_ideal_new(ptr::null(), ptrs.as_ptr(), 1, &mut out), RegcoreStatus::NullArgument);
        assert!(last_error().contains("field"));
        assert_eq!(regcore_ideal_colength(ptr::null(), ptr::null_mut()), RegcoreStatus::NullArgument);

        let a = ideal("Q", &["x", "y"]);
        let b = ideal("F65537", &["x", "y"]);
        let mut same = false;
        assert_eq!(regcore_ideal_equals(a, b, &mut same), RegcoreStatus::InvalidInput);
        assert!(last_error().starts_with("field mismatch"));

        let mut json = ptr::null_mut();
        assert_eq!(
            regcore_verify(c("nonsense").as_ptr(), 0, 42, c("Q").as_ptr(), &mut json, ptr::null_mut()),
            RegcoreStatus::InvalidInput
        );
        assert_eq!(regcore_set_truncation_ceiling(1), RegcoreStatus::InvalidInput);

        regcore_ideal_free(a);
        regcore_ideal_free(b);
        regcore_ideal_free(ptr::null_mut());
        regcore_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_counterexamples() {
    unsafe {
        let mut json = ptr::null_mut();
        let mut passed = false;
        let status = regcore_verify(c("counterexamples").as_ptr(), 0, 42, c("Q").as_ptr(), &mut json, &mut passed);
        assert_eq!(status, RegcoreStatus::Ok);
        assert!(passed);
        let text = take_string(json);
        assert!(text.contains("\"remark-core-m2\""));
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(regcore_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/regcore.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct RegcoreIdeal RegcoreIdeal;",
        "typedef struct RegcoreModule RegcoreModule;",
        "REGCORE_STATUS_OK = 0",
        "REGCORE_STATUS_NOT_M_PRIMARY",
        "regcore_ideal_new(",
        "regcore_module_core(",
        "regcore_verify(",
        "regcore_last_error_message(void)",
        "regcore_string_free(",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

/// The static library for this test binary's profile, built on demand:
/// `cargo test` only builds the rlib.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libregcore_ffi.a");
    if !lib.exists() {
        let mut cargo = Command::new(env!("CARGO"));
        cargo.args(["build", "--quiet", "-p", "regcore-ffi", "--lib"]);
        if dir.file_name()? == "release" {
            cargo.arg("--release");
        }
        cargo.status().ok()?;
    }
    lib.exists().then_some(lib)
}

#[test]
fn c_program_compiles_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let include = header().parent().unwrap().to_path_buf();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/smoke.c");
    let dir = tempfile::tempdir().unwrap();

    let syntax = Command::new(&cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"]).arg(&include).arg(&src).output().unwrap();
    assert!(syntax.status.success(), "{}", String::from_utf8_lossy(&syntax.stderr));

    let lib = static_lib().expect("static library");
    let exe = dir.path().join("smoke");
    let build = Command::new(&cc)
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout.contains("colength 4"), "{stdout}");
    assert!(stdout.contains("e 5"), "{stdout}");
    assert!(stdout.contains("error 4: ideal is not m-primary"), "{stdout}");
}
