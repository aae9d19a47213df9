use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use cartierlab_ffi::*;

const NODE: &str = r#"
[ring.A]
field = "QQ"
vars = ["x", "y"]
relations = ["y^2 - x^3 - x^2"]

[ring.B]
field = "QQ"
vars = ["t"]

[map]
images = ["t^2 - 1", "t^3 - t"]

[hints]
finite = true
birational = true
module_generators = ["1", "t"]
fractions = [["1", "1"], ["y", "x"]]
"#;

fn last_error() -> String {
    let p = cl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn node() -> *mut ClExtension {
    let text = CString::new(NODE).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cl_extension_new(text.as_ptr(), 0, &mut h) }, ClStatus::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn node_rank_and_stalks() {
    let h = node();
    let (mut rank, mut certified) = (0u64, false);
    assert_eq!(unsafe { cl_extension_li_rank(h, &mut rank, &mut certified) }, ClStatus::Ok);
    assert_eq!((rank, certified), (1, true));
    let (mut c, mut s) = (0u64, 0u64);
    let p = CString::new("x, y").unwrap();
    assert_eq!(unsafe { cl_extension_stalk(h, p.as_ptr(), &mut c, &mut s) }, ClStatus::Ok);
    assert_eq!((c, s), (2, 1));
    let g = CString::new("").unwrap();
    assert_eq!(unsafe { cl_extension_stalk(h, g.as_ptr(), &mut c, &mut s) }, ClStatus::Ok);
    assert_eq!((c, s), (1, 0));
    let bad = CString::new("x").unwrap();
    assert_eq!(unsafe { cl_extension_stalk(h, bad.as_ptr(), &mut c, &mut s) }, ClStatus::Input);
    assert!(last_error().contains("prime"));
    unsafe { cl_extension_free(h) };
}

#[test]
fn errors_are_reported() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cl_extension_new(ptr::null(), 0, &mut h) }, ClStatus::NullArgument);
    let bad = CString::new("[ring.A]\nfield = 3\n").unwrap();
    assert_eq!(unsafe { cl_extension_new(bad.as_ptr(), 0, &mut h) }, ClStatus::Input);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    let broken = CString::new(NODE.replace("t^3 - t", "t^3")).unwrap();
    assert_eq!(unsafe { cl_extension_new(broken.as_ptr(), 0, &mut h) }, ClStatus::Input);
    let text = CString::new(NODE).unwrap();
    assert_eq!(unsafe { cl_extension_new(text.as_ptr(), 1, &mut h) }, ClStatus::ResourceLimit);
    unsafe { cl_extension_free(ptr::null_mut()) };
    unsafe { cl_string_free(ptr::null_mut()) };
}

#[test]
fn unknown_rank_is_a_status() {
    let text = CString::new(
        "[ring.A]\nfield = \"QQ\"\nvars = [\"x\"]\n[ring.B]\nfield = \"QQ\"\nvars = [\"x\", \"b\", \"e\"]\n\
         relations = [\"e^2 - e - b*x\"]\n[map]\nimages = [\"x\"]\n",
    )
    .unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cl_extension_new(text.as_ptr(), 0, &mut h) }, ClStatus::Ok);
    let (mut rank, mut certified) = (7u64, true);
    assert_eq!(unsafe { cl_extension_li_rank(h, &mut rank, &mut certified) }, ClStatus::Unknown);
    assert_eq!(rank, 7);
    unsafe { cl_extension_free(h) };
}

#[test]
fn laurent_units() {
    let base = CString::new("[base]\nfield = \"QQ\"\nvars = [\"e\"]\nrelations = [\"e^2 - e\"]\n").unwrap();
    let var = CString::new("t").unwrap();
    let x = CString::new("e*t^2 + (1 - e)*t^-1").unwrap();
    let (mut unit, mut exps, mut n) = (false, [0i64; 4], 0usize);
    let s = unsafe { cl_laurent_unit(base.as_ptr(), var.as_ptr(), x.as_ptr(), &mut unit, exps.as_mut_ptr(), 4, &mut n) };
    assert_eq!(s, ClStatus::Ok);
    assert!(unit);
    assert_eq!(&exps[..n], &[-1, 2]);
    let y = CString::new("1 + t").unwrap();
    let s = unsafe { cl_laurent_unit(base.as_ptr(), var.as_ptr(), y.as_ptr(), &mut unit, ptr::null_mut(), 0, ptr::null_mut()) };
    assert_eq!(s, ClStatus::Ok);
    assert!(!unit);
}

#[test]
fn run_returns_json() {
    let args: Vec<CString> = ["terms", "--n", "4"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let code = unsafe { cl_run(ptrs.len(), ptrs.as_ptr(), &mut report) };
    assert_eq!(code, 0);
    let json = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { cl_string_free(report) };
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["results"][0]["terms"]["n_terms"][1][1], "24");

    let bad: Vec<CString> = ["li", "/nonexistent.toml"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<_> = bad.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { cl_run(ptrs.len(), ptrs.as_ptr(), &mut report) }, 2);
    unsafe { cl_string_free(report) };
}

#[test]
fn version_matches() {
    let v = unsafe { CStr::from_ptr(cl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cartierlab.h")).unwrap();
    for name in [
        "cl_version",
        "cl_last_error",
        "cl_string_free",
        "cl_extension_new",
        "cl_extension_free",
        "cl_extension_li_rank",
        "cl_extension_stalk",
        "cl_laurent_unit",
        "cl_run",
        "typedef struct ClExtension ClExtension",
        "CL_STATUS_RESOURCE_LIMIT = 3",
    ] {
        assert!(header.contains(name), "{} missing from header", name);
    }
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libcartierlab_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("cartierlab_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
