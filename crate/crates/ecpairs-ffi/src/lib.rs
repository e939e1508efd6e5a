//! C ABI over the toolkit: opaque handles, integer status codes, UTF-8 text
//! in and out. Every constructor has a paired free function, freeing null is
//! a no-op, and any other null argument fails with NullArgument. Returned
//! strings are heap copies released with ecp_string_free. The most recent
//! failure text is kept per thread behind ecp_last_error_message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use ecpairs::code::{CodeClassTag, DistanceStrategy, LinearCode};
use ecpairs::ecp::{ecp_verify, DecodeStatus, EcpDecoder};
use ecpairs::error::Error;
use ecpairs::gf::Felt;
use ecpairs::harness::{emit_tables, run_example, ExampleId};
use ecpairs::textio;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CheckFailed = 4,
    PreconditionFailed = 5,
    TooLarge = 6,
    OtherError = 7,
}

/// Classification of a code by its distance and its dual's distance.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcpCodeClass {
    Mds = 0,
    Nmds = 1,
    Amds = 2,
    Other = 3,
}

/// What a decode attempt produced; the call itself can still succeed when
/// the word is uncorrectable.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcpDecodeOutcome {
    Decoded = 0,
    NoLocator = 1,
    ErasureUnsolvable = 2,
    WeightExceeded = 3,
}

/// A linear code handle.
pub struct EcpCode {
    inner: LinearCode,
}

/// A decoder bound to one verified pair.
pub struct EcpPairDecoder {
    inner: EcpDecoder,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: EcpStatus, msg: &str) -> EcpStatus {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn fail_with(e: &Error) -> EcpStatus {
    let status = match e {
        Error::Parse(_) | Error::Io(_) | Error::BadSpec(_) => EcpStatus::ParseError,
        Error::CheckFailed(_) => EcpStatus::CheckFailed,
        Error::PreconditionFailed(_) | Error::BadDistance { .. } => EcpStatus::PreconditionFailed,
        Error::TooLarge(_) | Error::FieldTooLarge { .. } => EcpStatus::TooLarge,
        _ => EcpStatus::OtherError,
    };
    fail(status, &e.to_string())
}

fn clear_error() -> EcpStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    EcpStatus::Ok
}

unsafe fn str_in<'a>(ptr: *const c_char) -> Result<&'a str, EcpStatus> {
    if ptr.is_null() {
        return Err(fail(EcpStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(EcpStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn str_out(text: String, out: *mut *mut c_char) -> EcpStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            clear_error()
        }
        Err(_) => fail(EcpStatus::OtherError, "output text contains a NUL byte"),
    }
}

/// Text of the most recent failure on this thread, or null after a success.
/// The pointer stays valid until the next call into this library from the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn ecp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library's string
/// outputs, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ecp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a code from text: either a "p m n k" generator file or a
/// "grs"/"tgrs" construction stanza. On success stores a new handle in
/// `out`; release it with ecp_code_free.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be a valid
/// pointer to pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_read(
    text: *const c_char,
    out: *mut *mut EcpCode,
) -> EcpStatus {
    if out.is_null() {
        return fail(EcpStatus::NullArgument, "null output argument");
    }
    let text = match str_in(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match textio::read_code(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(EcpCode { inner }));
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Releases a code handle. Null is a no-op.
///
/// # Safety
/// `code` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_free(code: *mut EcpCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Writes the code in the generator file format; release the string with
/// ecp_string_free.
///
/// # Safety
/// `code` must be null or a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_write(
    code: *const EcpCode,
    out: *mut *mut c_char,
) -> EcpStatus {
    if code.is_null() || out.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    str_out(textio::write_code(&(*code).inner), out)
}

/// Code length n, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_length(code: *const EcpCode) -> usize {
    if code.is_null() {
        return 0;
    }
    (*code).inner.n()
}

/// Code dimension k, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_dimension(code: *const EcpCode) -> usize {
    if code.is_null() {
        return 0;
    }
    (*code).inner.k()
}

/// Exact minimum distance.
///
/// # Safety
/// `code` must be null or a live handle; `out_d` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_min_distance(
    code: *const EcpCode,
    out_d: *mut usize,
) -> EcpStatus {
    if code.is_null() || out_d.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    match (*code).inner.min_distance(DistanceStrategy::Auto) {
        Ok(d) => {
            *out_d = d;
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Classifies the code and reports its distance and its dual's distance.
///
/// # Safety
/// `code` must be null or a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_classify(
    code: *const EcpCode,
    out_class: *mut EcpCodeClass,
    out_d: *mut usize,
    out_dual_d: *mut usize,
) -> EcpStatus {
    if code.is_null() || out_class.is_null() || out_d.is_null() || out_dual_d.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    match (*code).inner.classify() {
        Ok(cl) => {
            *out_class = match cl.tag {
                CodeClassTag::Mds => EcpCodeClass::Mds,
                CodeClassTag::Nmds => EcpCodeClass::Nmds,
                CodeClassTag::AmdsOnly => EcpCodeClass::Amds,
                CodeClassTag::Other => EcpCodeClass::Other,
            };
            *out_d = cl.d;
            *out_dual_d = cl.d_dual;
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Stores the dual code as a new handle in `out`.
///
/// # Safety
/// `code` must be null or a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_code_dual(
    code: *const EcpCode,
    out: *mut *mut EcpCode,
) -> EcpStatus {
    if code.is_null() || out.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    match (*code).inner.dual() {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(EcpCode { inner }));
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Checks the four pair conditions for (a, b) against c at error budget
/// `ell`, storing the combined verdict in `out_is_pair`.
///
/// # Safety
/// The handles must be null or live; `out_is_pair` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_pair_verify(
    a: *const EcpCode,
    b: *const EcpCode,
    c: *const EcpCode,
    ell: usize,
    out_is_pair: *mut bool,
) -> EcpStatus {
    if a.is_null() || b.is_null() || c.is_null() || out_is_pair.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    match ecp_verify(&(*a).inner, &(*b).inner, &(*c).inner, ell) {
        Ok(report) => {
            *out_is_pair = report.is_ecp();
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Writes the full verification report as text; release the string with
/// ecp_string_free.
///
/// # Safety
/// The handles must be null or live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_pair_report(
    a: *const EcpCode,
    b: *const EcpCode,
    c: *const EcpCode,
    ell: usize,
    out: *mut *mut c_char,
) -> EcpStatus {
    if a.is_null() || b.is_null() || c.is_null() || out.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    match ecp_verify(&(*a).inner, &(*b).inner, &(*c).inner, ell) {
        Ok(report) => str_out(textio::ecp_report_text(&report), out),
        Err(e) => fail_with(&e),
    }
}

/// Builds a decoder from a verified pair; fails with PreconditionFailed when
/// the pair conditions do not hold at `ell`. Release with ecp_decoder_free.
///
/// # Safety
/// The handles must be null or live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_decoder_new(
    a: *const EcpCode,
    b: *const EcpCode,
    c: *const EcpCode,
    ell: usize,
    out: *mut *mut EcpPairDecoder,
) -> EcpStatus {
    if a.is_null() || b.is_null() || c.is_null() || out.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    match EcpDecoder::new(&(*a).inner, &(*b).inner, &(*c).inner, ell) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(EcpPairDecoder { inner }));
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Releases a decoder handle. Null is a no-op.
///
/// # Safety
/// `decoder` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ecp_decoder_free(decoder: *mut EcpPairDecoder) {
    if !decoder.is_null() {
        drop(Box::from_raw(decoder));
    }
}

/// Decodes a received word of `word_len` canonical integers. On outcome
/// Decoded the corrected codeword is written to `out_codeword`, which must
/// hold the code length; other outcomes leave the buffer untouched and the
/// call still returns Ok.
///
/// # Safety
/// `decoder` must be null or a live handle; `word` must point to `word_len`
/// readable values; `out_codeword` must point to writable space for the code
/// length; `out_outcome` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_decoder_correct(
    decoder: *const EcpPairDecoder,
    word: *const u64,
    word_len: usize,
    out_codeword: *mut u64,
    out_outcome: *mut EcpDecodeOutcome,
) -> EcpStatus {
    if decoder.is_null() || word.is_null() || out_codeword.is_null() || out_outcome.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    let raw = std::slice::from_raw_parts(word, word_len);
    let y: Vec<Felt> = raw.iter().map(|&v| Felt(v)).collect();
    match (*decoder).inner.decode(&y) {
        Ok(result) => {
            *out_outcome = match result.status {
                DecodeStatus::Decoded => EcpDecodeOutcome::Decoded,
                DecodeStatus::FailNoLocator => EcpDecodeOutcome::NoLocator,
                DecodeStatus::FailErasureUnsolvable => EcpDecodeOutcome::ErasureUnsolvable,
                DecodeStatus::FailWeightExceeded => EcpDecodeOutcome::WeightExceeded,
            };
            if let Some(cw) = result.codeword {
                let out = std::slice::from_raw_parts_mut(out_codeword, cw.len());
                for (slot, v) in out.iter_mut().zip(cw) {
                    *slot = v.0;
                }
            }
            clear_error()
        }
        Err(e) => fail_with(&e),
    }
}

/// Writes the case tables and per-statement conclusions as text; release the
/// string with ecp_string_free.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_tables(out: *mut *mut c_char) -> EcpStatus {
    if out.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    str_out(emit_tables(), out)
}

/// Rebuilds the three worked 10-coordinate examples and checks everything
/// their source prints. On success the text holds one PASS line per example;
/// a mismatch fails with CheckFailed and the detail in the error message.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ecp_examples(out: *mut *mut c_char) -> EcpStatus {
    if out.is_null() {
        return fail(EcpStatus::NullArgument, "null argument");
    }
    let mut lines = String::new();
    for id in ExampleId::ALL {
        match run_example(id) {
            Ok(report) => {
                let case = report.case.expect("a reproduced example carries its case");
                lines.push_str(&format!("PASS {id}: case {case}, A={}\n", report.params_a));
            }
            Err(e) => return fail_with(&e),
        }
    }
    str_out(lines, out)
}
