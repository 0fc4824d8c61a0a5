//! C ABI over `tokbench`.
//!
//! Every fallible call returns a [`TokbenchStatus`]; on failure the message
//! is available from [`tokbench_last_error_message`] on the same thread.
//! Handles are opaque and must be released with their `_free` function.
//! Strings and id arrays returned by the library are owned by the caller and
//! released with [`tokbench_string_free`] and [`tokbench_ids_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tokbench::bpe::{encode_ids, load_bpe, TokenizerModel};
use tokbench::metrics::{pure_percentage, tr_percentage};
use tokbench::morphology::{bundled_resource, load_resource, MorphologyResource};
use tokbench::report::pearson;
use tokbench::surface::turkish_fold;
use tokbench::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokbenchStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidInput = 5,
    Undefined = 6,
    Encode = 7,
    Panic = 8,
}

/// A loaded morphology resource.
pub struct TokbenchMorphology(MorphologyResource);

/// A loaded BPE tokenizer.
pub struct TokbenchBpe(TokenizerModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TokbenchStatus {
    match e {
        Error::Io { .. } => TokbenchStatus::Io,
        Error::InvalidUtf8 { .. } => TokbenchStatus::InvalidUtf8,
        Error::MalformedLine { .. }
        | Error::Parse { .. }
        | Error::InvalidModel(_)
        | Error::InvalidResource(_)
        | Error::Manifest(_) => TokbenchStatus::Parse,
        Error::UnknownSymbol { .. } => TokbenchStatus::Encode,
        Error::UndefinedMetric(_) | Error::UndefinedCorrelation(_) => TokbenchStatus::Undefined,
        Error::Record { source, .. } | Error::Tokenizer { source, .. } => status_of(source),
        _ => TokbenchStatus::InvalidInput,
    }
}

fn fail(status: TokbenchStatus, msg: impl Into<String>) -> TokbenchStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, recording errors and turning panics into a status.
fn guard(f: impl FnOnce() -> Result<(), TokbenchStatus>) -> TokbenchStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TokbenchStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(TokbenchStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: Error) -> TokbenchStatus {
    fail(status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, TokbenchStatus> {
    if p.is_null() {
        return Err(fail(TokbenchStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TokbenchStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, TokbenchStatus> {
    // SAFETY: non-null checked; the caller promises a writable location.
    unsafe { p.as_mut() }.ok_or_else(|| fail(TokbenchStatus::NullPointer, format!("{what} is NULL")))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tokbench_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn tokbench_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tokbench_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a morphology resource from a JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tokbench_morphology_load(
    path: *const c_char,
    out: *mut *mut TokbenchMorphology,
) -> TokbenchStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let path = str_arg(path, "path")?;
        let res = load_resource(path).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TokbenchMorphology(res)));
        Ok(())
    })
}

/// The lexicon shipped with the library.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tokbench_morphology_bundled(out: *mut *mut TokbenchMorphology) -> TokbenchStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(TokbenchMorphology(bundled_resource())));
        Ok(())
    })
}

/// # Safety
/// `res` must come from a morphology constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tokbench_morphology_free(res: *mut TokbenchMorphology) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Validity and purity of one token (Turkish case folding is applied).
///
/// # Safety
/// `res` must be a live handle, `token` a NUL-terminated string, and
/// `out_valid`/`out_pure` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn tokbench_morphology_analyze(
    res: *const TokbenchMorphology,
    token: *const c_char,
    out_valid: *mut bool,
    out_pure: *mut bool,
) -> TokbenchStatus {
    guard(|| {
        let res = res.as_ref().ok_or_else(|| fail(TokbenchStatus::NullPointer, "res is NULL"))?;
        let token = turkish_fold(str_arg(token, "token")?);
        let out_valid = out_arg(out_valid, "out_valid")?;
        let out_pure = out_arg(out_pure, "out_pure")?;
        let parse = res.0.parse(&token);
        *out_valid = parse.is_some();
        *out_pure = parse.is_some_and(|p| p.is_pure);
        Ok(())
    })
}

/// Best segmentation of a token ("ev+ler+imiz+den"), or NULL in `*out` when
/// the token has no parse. Free the string with [`tokbench_string_free`].
///
/// # Safety
/// As for [`tokbench_morphology_analyze`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tokbench_morphology_segment(
    res: *const TokbenchMorphology,
    token: *const c_char,
    out: *mut *mut c_char,
) -> TokbenchStatus {
    guard(|| {
        let res = res.as_ref().ok_or_else(|| fail(TokbenchStatus::NullPointer, "res is NULL"))?;
        let token = turkish_fold(str_arg(token, "token")?);
        let out = out_arg(out, "out")?;
        *out = match res.0.parse(&token) {
            Some(p) => CString::new(p.segmentation()).expect("no NUL in a parse").into_raw(),
            None => ptr::null_mut(),
        };
        Ok(())
    })
}

/// Loads a BPE tokenizer from a tokenizer JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tokbench_bpe_load(path: *const c_char, out: *mut *mut TokbenchBpe) -> TokbenchStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let path = str_arg(path, "path")?;
        let model = load_bpe(path).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TokbenchBpe(model)));
        Ok(())
    })
}

/// # Safety
/// `model` must come from [`tokbench_bpe_load`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tokbench_bpe_free(model: *mut TokbenchBpe) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Vocabulary size, or 0 for a NULL handle.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tokbench_bpe_vocab_size(model: *const TokbenchBpe) -> usize {
    model.as_ref().map_or(0, |m| m.0.vocab_size())
}

/// Encodes `text` into token ids. Release `*out_ids` with
/// [`tokbench_ids_free`] and the same length. Empty input yields NULL and 0.
///
/// # Safety
/// `model` must be a live handle, `text` a NUL-terminated string, and
/// `out_ids`/`out_len` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn tokbench_bpe_encode(
    model: *const TokbenchBpe,
    text: *const c_char,
    out_ids: *mut *mut u32,
    out_len: *mut usize,
) -> TokbenchStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| fail(TokbenchStatus::NullPointer, "model is NULL"))?;
        let text = str_arg(text, "text")?;
        let out_ids = out_arg(out_ids, "out_ids")?;
        let out_len = out_arg(out_len, "out_len")?;
        let ids = encode_ids(text, &model.0).map_err(lib_err)?;
        *out_len = ids.len();
        *out_ids = if ids.is_empty() {
            ptr::null_mut()
        } else {
            Box::into_raw(ids.into_boxed_slice()).cast()
        };
        Ok(())
    })
}

/// # Safety
/// `ids`/`len` must be exactly what [`tokbench_bpe_encode`] returned.
#[no_mangle]
pub unsafe extern "C" fn tokbench_ids_free(ids: *mut u32, len: usize) {
    if !ids.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(ids, len)));
    }
}

/// 100 * valid / unique. `Undefined` when `unique` is 0.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tokbench_tr_percentage(valid: u64, unique: u64, out: *mut f64) -> TokbenchStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = tr_percentage(valid, unique).map_err(lib_err)?;
        Ok(())
    })
}

/// 100 * pure / unique. `Undefined` when `unique` is 0.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tokbench_pure_percentage(pure: u64, unique: u64, out: *mut f64) -> TokbenchStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = pure_percentage(pure, unique).map_err(lib_err)?;
        Ok(())
    })
}

/// Sample Pearson correlation of two series of length `len` (at least 3).
/// `Undefined` when either series is constant.
///
/// # Safety
/// `xs` and `ys` must each point to `len` readable doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tokbench_pearson(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    out: *mut f64,
) -> TokbenchStatus {
    guard(|| {
        if xs.is_null() || ys.is_null() {
            return Err(fail(TokbenchStatus::NullPointer, "series pointer is NULL"));
        }
        let out = out_arg(out, "out")?;
        let xs = std::slice::from_raw_parts(xs, len);
        let ys = std::slice::from_raw_parts(ys, len);
        *out = pearson(xs, ys).map_err(lib_err)?;
        Ok(())
    })
}
