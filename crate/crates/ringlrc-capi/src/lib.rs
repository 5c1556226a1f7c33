//! C interface over the ringlrc library.
//!
//! Codes travel as JSON documents (the same format the CLI reads and
//! writes) and are held behind opaque handles. Symbols cross the boundary
//! as flat `uint64_t` buffers with `lrc_code_symbol_width()` coefficients
//! per symbol, little-endian in the ring's power basis and already reduced
//! mod `p^s`. Every fallible call returns an `LrcStatus`; pointer outputs
//! are written only on `LRC_STATUS_OK`.

use ringlrc::analysis::analyze;
use ringlrc::codes::{encode, recover_all, CodeSpec};
use ringlrc::json::spec_from_str;
use ringlrc::ring::Elem;
use ringlrc::Error;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of a C interface call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The input was not valid UTF-8 or not a well-formed document.
    Parse = 2,
    /// Parameters or data failed the library's validation.
    Domain = 3,
    /// An erasure pattern exceeded a block's repair tolerance.
    UnrecoverablePattern = 4,
    /// A caller-supplied buffer has the wrong length.
    BufferSize = 5,
    /// An exhaustive search would exceed the given cap.
    TooLarge = 6,
    /// The library panicked; treat the handle as poisoned.
    Panic = 7,
}

fn status_of(err: &Error) -> LrcStatus {
    match err {
        Error::TooManyErasuresInBlock { .. } => LrcStatus::UnrecoverablePattern,
        Error::InstanceTooLarge { .. } => LrcStatus::TooLarge,
        Error::Parse(_) => LrcStatus::Parse,
        _ => LrcStatus::Domain,
    }
}

/// Opaque handle to a validated code specification.
pub struct LrcCode {
    spec: CodeSpec,
}

fn guarded(body: impl FnOnce() -> LrcStatus) -> LrcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => LrcStatus::Panic,
    }
}

fn read_symbols(code: &LrcCode, data: &[u64]) -> Result<Vec<Elem>, LrcStatus> {
    let ring = code.spec.ring();
    let m = ring.m();
    let ps = ring.ps();
    data.chunks(m)
        .map(|chunk| {
            if chunk.iter().any(|&c| c >= ps) {
                return Err(LrcStatus::Domain);
            }
            let coeffs: Vec<i64> = chunk.iter().map(|&c| c as i64).collect();
            ring.elem(&coeffs).map_err(|_| LrcStatus::Domain)
        })
        .collect()
}

fn write_symbol(out: &mut [u64], e: &Elem) {
    out.copy_from_slice(e.coeffs());
}

/// Parse a JSON code specification into a new handle. The document is
/// fully re-validated; `*out` is set only on success and must be released
/// with `lrc_code_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lrc_code_from_json(
    text: *const c_char,
    out: *mut *mut LrcCode,
) -> LrcStatus {
    if text.is_null() || out.is_null() {
        return LrcStatus::NullPointer;
    }
    guarded(|| {
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return LrcStatus::Parse;
        };
        match spec_from_str(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(LrcCode { spec }));
                LrcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a handle returned by `lrc_code_from_json`. A null pointer is a
/// no-op.
///
/// # Safety
/// `code` must be a pointer from `lrc_code_from_json`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lrc_code_free(code: *mut LrcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code length in symbols; 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lrc_code_n(code: *const LrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.n())
}

/// Message length in symbols; 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lrc_code_k(code: *const LrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.k())
}

/// Number of `uint64_t` coefficients per symbol; 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lrc_code_symbol_width(code: *const LrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.ring().m())
}

/// Encode a message of `lrc_code_k()` symbols into `lrc_code_n()` symbols.
/// Buffer lengths are in `uint64_t` units: `message_len` must equal
/// `K * width` and `word_len` must equal `n * width`.
///
/// # Safety
/// `code` must be a live handle; the buffers must match the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn lrc_encode(
    code: *const LrcCode,
    message: *const u64,
    message_len: usize,
    word_out: *mut u64,
    word_len: usize,
) -> LrcStatus {
    let Some(code) = code.as_ref() else {
        return LrcStatus::NullPointer;
    };
    if message.is_null() || word_out.is_null() {
        return LrcStatus::NullPointer;
    }
    let m = code.spec.ring().m();
    if message_len != code.spec.k() * m || word_len != code.spec.n() * m {
        return LrcStatus::BufferSize;
    }
    guarded(|| {
        let message = std::slice::from_raw_parts(message, message_len);
        let out = std::slice::from_raw_parts_mut(word_out, word_len);
        let symbols = match read_symbols(code, message) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match encode(&code.spec, &symbols) {
            Ok(word) => {
                for (j, e) in word.iter().enumerate() {
                    write_symbol(&mut out[j * m..(j + 1) * m], e);
                }
                LrcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Repair every erased symbol of a received word in place. `word` holds
/// `n * width` coefficients; entries flagged in `erased` (one byte per
/// symbol, nonzero = erased) are ignored on input and overwritten with the
/// repaired values on success.
///
/// # Safety
/// `code` must be a live handle; `word` must hold `word_len` coefficients
/// and `erased` one flag per symbol (`erased_len == n`).
#[no_mangle]
pub unsafe extern "C" fn lrc_recover(
    code: *const LrcCode,
    word: *mut u64,
    word_len: usize,
    erased: *const u8,
    erased_len: usize,
) -> LrcStatus {
    let Some(code) = code.as_ref() else {
        return LrcStatus::NullPointer;
    };
    if word.is_null() || erased.is_null() {
        return LrcStatus::NullPointer;
    }
    let n = code.spec.n();
    let m = code.spec.ring().m();
    if word_len != n * m || erased_len != n {
        return LrcStatus::BufferSize;
    }
    guarded(|| {
        let buf = std::slice::from_raw_parts_mut(word, word_len);
        let flags = std::slice::from_raw_parts(erased, erased_len);
        let mut received: Vec<Option<Elem>> = Vec::with_capacity(n);
        for j in 0..n {
            if flags[j] != 0 {
                received.push(None);
            } else {
                match read_symbols(code, &buf[j * m..(j + 1) * m]) {
                    Ok(mut symbols) => received.push(symbols.pop()),
                    Err(status) => return status,
                }
            }
        }
        match recover_all(&code.spec, &received) {
            Ok(repairs) => {
                for r in &repairs {
                    write_symbol(&mut buf[r.position * m..(r.position + 1) * m], &r.value);
                }
                LrcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Run the exhaustive analysis and return its JSON report as a freshly
/// allocated string. Release the string with `lrc_string_free`.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lrc_analyze_json(
    code: *const LrcCode,
    cap: u64,
    out: *mut *mut c_char,
) -> LrcStatus {
    let Some(code) = code.as_ref() else {
        return LrcStatus::NullPointer;
    };
    if out.is_null() {
        return LrcStatus::NullPointer;
    }
    guarded(|| match analyze(&code.spec, cap as u128) {
        Ok(report) => {
            let text = serde_json::to_string(&report).expect("report serializes");
            let c = CString::new(text).expect("JSON has no NUL bytes");
            *out = c.into_raw();
            LrcStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Release a string returned by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lrc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name for a status code; never null.
#[no_mangle]
pub extern "C" fn lrc_status_name(status: LrcStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        LrcStatus::Ok => b"ok\0",
        LrcStatus::NullPointer => b"null_pointer\0",
        LrcStatus::Parse => b"parse\0",
        LrcStatus::Domain => b"domain\0",
        LrcStatus::UnrecoverablePattern => b"unrecoverable_pattern\0",
        LrcStatus::BufferSize => b"buffer_size\0",
        LrcStatus::TooLarge => b"too_large\0",
        LrcStatus::Panic => b"panic\0",
    };
    name.as_ptr() as *const c_char
}
