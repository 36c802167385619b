//! C interface to the `brieskorn` library.
//!
//! Exponent lists live behind an opaque handle. Queries return JSON text in
//! the same schema as the command-line `--json` output; strings handed out by
//! this library must be released with [`brieskorn_string_free`]. On failure a
//! status other than `BRIESKORN_OK` is returned and
//! [`brieskorn_last_error`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use brieskorn::exponents::{milnor_number, ExponentList};
use libc::{c_char, size_t};

/// Result of every call that can fail.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrieskornStatus {
    BrieskornOk = 0,
    /// A required pointer argument was NULL.
    BrieskornNullArgument = 1,
    /// Bad exponents, an unknown command, or text that is not UTF-8.
    BrieskornInvalidArgument = 2,
    /// The input is valid but the invariant is undefined or out of range.
    BrieskornDomainError = 3,
    /// An internal consistency check failed.
    BrieskornInternalError = 4,
    /// The library panicked; the handle is still usable.
    BrieskornPanic = 5,
}

use BrieskornStatus::*;

/// Opaque exponent list.
pub struct BrieskornExponents {
    inner: ExponentList,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: BrieskornStatus, msg: impl Into<String>) -> BrieskornStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> BrieskornStatus) -> BrieskornStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let why = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(BrieskornPanic, why)
        }
    }
}

fn hand_out(text: String, out: *mut *mut c_char) -> BrieskornStatus {
    match CString::new(text) {
        Ok(c) => {
            // SAFETY: callers check `out` for NULL before reaching here.
            unsafe { *out = c.into_raw() };
            BrieskornOk
        }
        Err(_) => fail(BrieskornInternalError, "output contained a NUL byte"),
    }
}

/// Builds a handle from `len` exponents.
///
/// # Safety
/// `exps` must point to `len` readable `uint64_t` values and `out` must be a
/// valid place to store the handle.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_exponents_new(
    exps: *const u64,
    len: size_t,
    out: *mut *mut BrieskornExponents,
) -> BrieskornStatus {
    guarded(|| {
        if out.is_null() || (exps.is_null() && len > 0) {
            return fail(BrieskornNullArgument, "exps and out must not be NULL");
        }
        let values = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(exps, len).to_vec()
        };
        match ExponentList::new(values) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BrieskornExponents { inner }));
                BrieskornOk
            }
            Err(e) => fail(BrieskornInvalidArgument, e.to_string()),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `handle` must come from [`brieskorn_exponents_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_exponents_free(handle: *mut BrieskornExponents) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of exponents in the list, or 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_exponents_len(handle: *const BrieskornExponents) -> size_t {
    handle.as_ref().map_or(0, |h| h.inner.len())
}

/// Milnor number as a decimal string.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid place to store a string.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_milnor_number(
    handle: *const BrieskornExponents,
    out: *mut *mut c_char,
) -> BrieskornStatus {
    guarded(|| {
        let Some(h) = handle.as_ref() else {
            return fail(BrieskornNullArgument, "handle is NULL");
        };
        if out.is_null() {
            return fail(BrieskornNullArgument, "out is NULL");
        }
        hand_out(milnor_number(&h.inner).to_string(), out)
    })
}

/// Runs one of the per-list commands (`homology`, `equivariant`,
/// `alexander`, `sphere`, `classical`, `recognize`, `mec`, `ss`) and stores
/// its JSON document in `out`.
///
/// # Safety
/// `handle` must be a live handle, `command` a NUL-terminated string and
/// `out` a valid place to store a string.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_query_json(
    handle: *const BrieskornExponents,
    command: *const c_char,
    out: *mut *mut c_char,
) -> BrieskornStatus {
    guarded(|| {
        let Some(h) = handle.as_ref() else {
            return fail(BrieskornNullArgument, "handle is NULL");
        };
        if command.is_null() || out.is_null() {
            return fail(BrieskornNullArgument, "command and out must not be NULL");
        }
        let Ok(command) = CStr::from_ptr(command).to_str() else {
            return fail(BrieskornInvalidArgument, "command is not UTF-8");
        };
        const COMMANDS: [&str; 8] = [
            "homology",
            "equivariant",
            "alexander",
            "sphere",
            "classical",
            "recognize",
            "mec",
            "ss",
        ];
        if !COMMANDS.contains(&command) {
            return fail(
                BrieskornInvalidArgument,
                format!("unknown command {command:?}"),
            );
        }
        let mut argv = vec!["brieskorn".to_string(), command.to_string()];
        argv.extend(h.inner.exponents().iter().map(u64::to_string));
        argv.push("--json".into());
        finish(brieskorn::cli::run(argv), out)
    })
}

/// Runs the command line given as `argc` strings (without the program
/// name), returning its standard output in `out`. A trailing `--json` is
/// not added.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings and `out` must be a
/// valid place to store a string.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_run(
    argc: size_t,
    argv: *const *const c_char,
    out: *mut *mut c_char,
) -> BrieskornStatus {
    guarded(|| {
        if out.is_null() || (argv.is_null() && argc > 0) {
            return fail(BrieskornNullArgument, "argv and out must not be NULL");
        }
        let raw = if argc == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(argv, argc)
        };
        let mut args = vec!["brieskorn".to_string()];
        for &p in raw {
            if p.is_null() {
                return fail(BrieskornNullArgument, "argv contains NULL");
            }
            match CStr::from_ptr(p).to_str() {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return fail(BrieskornInvalidArgument, "argument is not UTF-8"),
            }
        }
        finish(brieskorn::cli::run(args), out)
    })
}

fn finish(o: brieskorn::cli::Outcome, out: *mut *mut c_char) -> BrieskornStatus {
    match o.code {
        0 => hand_out(o.stdout, out),
        1 => {
            let msg = o.stderr.trim().to_string();
            let status = if msg.starts_with("error: validation") || msg.contains("Usage") {
                BrieskornInvalidArgument
            } else {
                BrieskornDomainError
            };
            fail(status, msg)
        }
        _ => fail(
            BrieskornInternalError,
            format!("{}{}", o.stdout, o.stderr).trim().to_string(),
        ),
    }
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn brieskorn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn brieskorn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Schema version of the JSON documents.
#[no_mangle]
pub extern "C" fn brieskorn_schema_version() -> *const c_char {
    c"1".as_ptr()
}
