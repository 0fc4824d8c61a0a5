use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use tokbench_ffi::*;

fn data(rel: &str) -> CString {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel);
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let p = tokbench_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(tokbench_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn morphology_round_trip() {
    unsafe {
        let mut res = ptr::null_mut();
        assert_eq!(tokbench_morphology_load(data("morphology/tr_mini.json").as_ptr(), &mut res), TokbenchStatus::Ok);
        let word = CString::new("evlerimizden").unwrap();
        let (mut valid, mut pure) = (false, true);
        assert_eq!(tokbench_morphology_analyze(res, word.as_ptr(), &mut valid, &mut pure), TokbenchStatus::Ok);
        assert!(valid && !pure);

        let mut seg = ptr::null_mut();
        assert_eq!(tokbench_morphology_segment(res, word.as_ptr(), &mut seg), TokbenchStatus::Ok);
        assert_eq!(CStr::from_ptr(seg).to_str().unwrap(), "ev+ler+imiz+den");
        tokbench_string_free(seg);

        let bound = CString::new("imiz").unwrap();
        assert_eq!(tokbench_morphology_segment(res, bound.as_ptr(), &mut seg), TokbenchStatus::Ok);
        assert!(seg.is_null());

        let upper = CString::new("Çocuklar").unwrap();
        assert_eq!(tokbench_morphology_analyze(res, upper.as_ptr(), &mut valid, &mut pure), TokbenchStatus::Ok);
        assert!(valid && !pure);
        tokbench_morphology_free(res);
    }
}

#[test]
fn load_errors_report_status_and_message() {
    unsafe {
        let mut res = ptr::null_mut();
        let missing = CString::new("/nonexistent/lexicon.json").unwrap();
        assert_eq!(tokbench_morphology_load(missing.as_ptr(), &mut res), TokbenchStatus::Io);
        assert!(res.is_null());
        assert!(last_error().contains("nonexistent"));

        assert_eq!(tokbench_morphology_load(ptr::null(), &mut res), TokbenchStatus::NullPointer);
        let mut model = ptr::null_mut();
        assert_eq!(tokbench_bpe_load(data("corpus/mini.jsonl").as_ptr(), &mut model), TokbenchStatus::Parse);
    }
}

#[test]
fn invalid_utf8_is_rejected() {
    unsafe {
        let mut res = ptr::null_mut();
        assert_eq!(tokbench_morphology_bundled(&mut res), TokbenchStatus::Ok);
        let bad = [0xffu8, 0xfe, 0];
        let (mut v, mut p) = (false, false);
        assert_eq!(
            tokbench_morphology_analyze(res, bad.as_ptr().cast(), &mut v, &mut p),
            TokbenchStatus::InvalidUtf8
        );
        tokbench_morphology_free(res);
    }
}

#[test]
fn bpe_encode_matches_reference() {
    let reference: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures/reference_values.json")).unwrap(),
    )
    .unwrap();
    unsafe {
        let mut model = ptr::null_mut();
        assert_eq!(tokbench_bpe_load(data("tokenizers/worked_example.json").as_ptr(), &mut model), TokbenchStatus::Ok);
        assert_eq!(tokbench_bpe_vocab_size(model), reference["worked_example"]["vocab_size"].as_u64().unwrap() as usize);
        let text = CString::new("Çocuklar bahçede oynayacak ve bahçede gülecek").unwrap();
        let (mut ids, mut len) = (ptr::null_mut(), 0usize);
        assert_eq!(tokbench_bpe_encode(model, text.as_ptr(), &mut ids, &mut len), TokbenchStatus::Ok);
        assert_eq!(len, reference["worked_example"]["tokens"].as_array().unwrap().len());
        tokbench_ids_free(ids, len);

        let empty = CString::new("").unwrap();
        assert_eq!(tokbench_bpe_encode(model, empty.as_ptr(), &mut ids, &mut len), TokbenchStatus::Ok);
        assert!(ids.is_null() && len == 0);
        tokbench_bpe_free(model);
    }
}

#[test]
fn percentages_and_pearson() {
    unsafe {
        let mut out = 0.0;
        assert_eq!(tokbench_tr_percentage(5, 7, &mut out), TokbenchStatus::Ok);
        assert!((out - 500.0 / 7.0).abs() < 1e-12);
        assert_eq!(tokbench_pure_percentage(3, 7, &mut out), TokbenchStatus::Ok);
        assert!((out - 300.0 / 7.0).abs() < 1e-12);
        assert_eq!(tokbench_pure_percentage(0, 0, &mut out), TokbenchStatus::Undefined);

        let xs = [1.0, 2.0, 3.0];
        assert_eq!(tokbench_pearson(xs.as_ptr(), [1.0, 5.0, 3.0].as_ptr(), 3, &mut out), TokbenchStatus::Ok);
        assert!((out - 0.5).abs() < 1e-12);
        assert_eq!(tokbench_pearson(xs.as_ptr(), [2.0, 2.0, 2.0].as_ptr(), 3, &mut out), TokbenchStatus::Undefined);
        assert_eq!(tokbench_pearson(xs.as_ptr(), xs.as_ptr(), 2, &mut out), TokbenchStatus::InvalidInput);
        assert_eq!(tokbench_pearson(ptr::null(), xs.as_ptr(), 3, &mut out), TokbenchStatus::NullPointer);
    }
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/c_abi-* -> target/<profile>/libtokbench_ffi.a
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libtokbench_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_example_compiles_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("analyze");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg(root.join("examples/analyze.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).args(["evlerimizden", "ve", "xyzzy"]).output().unwrap();
    assert!(run.status.success());
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("evlerimizden\tev+ler+imiz+den\tvalid=1\tpure=0"), "{stdout}");
    assert!(stdout.contains("ve\tve\tvalid=1\tpure=1"), "{stdout}");
    assert!(stdout.contains("xyzzy\tNO-PARSE\tvalid=0\tpure=0"), "{stdout}");
    assert!(stdout.contains("tr(5/7)=71.4"), "{stdout}");
    assert!(stdout.contains("tr(0/0): undefined metric"), "{stdout}");
}
