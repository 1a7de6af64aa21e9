//! C ABI over the `torf` library.
//!
//! Models are opaque handles created by `torf_model_from_str` or
//! `torf_model_from_fixture` and released with `torf_model_free`. Every
//! fallible call returns a `TorfStatus`; on failure the message is available
//! from `torf_last_error` on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with `torf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use torf::cli::{self, EXIT_INVALID, EXIT_OK, EXIT_POSTCONDITION};
use torf::derham::{BettiMode, DeRham};
use torf::{fixtures, model::Model, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    PostconditionError = 5,
    UnknownFixture = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A parsed and validated model together with its source text.
pub struct TorfModel {
    text: String,
    model: Model,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TorfStatus {
    match e {
        Error::UnknownFixture(_) => TorfStatus::UnknownFixture,
        _ => match cli::exit_code(e) {
            EXIT_INVALID => TorfStatus::ValidationError,
            EXIT_POSTCONDITION => TorfStatus::PostconditionError,
            _ => TorfStatus::ParseError,
        },
    }
}

fn fail(e: &Error) -> TorfStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Runs `f`, turning panics into `TorfStatus::Panic`.
fn guarded(f: impl FnOnce() -> TorfStatus) -> TorfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            TorfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TorfStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(TorfStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        TorfStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn model_from_text(text: String, out: *mut *mut TorfModel) -> TorfStatus {
    match Model::parse(&text) {
        Ok(model) => {
            let handle = Box::new(TorfModel { text, model });
            unsafe { *out = Box::into_raw(handle) };
            TorfStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// The message of the last failure on this thread (empty if none). The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn torf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates a model file.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn torf_model_from_str(text: *const c_char, out: *mut *mut TorfModel) -> TorfStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return TorfStatus::NullArgument;
        }
        match read_str(text) {
            Ok(t) => model_from_text(t.to_string(), out),
            Err(s) => s,
        }
    })
}

/// Builds the model of a built-in fixture.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn torf_model_from_fixture(name: *const c_char, out: *mut *mut TorfModel) -> TorfStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return TorfStatus::NullArgument;
        }
        let name = match read_str(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match fixtures::fixture(name) {
            Ok(text) => model_from_text(text, out),
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `model` must come from this library and not have been freed; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn torf_model_free(model: *mut TorfModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Ambient lattice rank of the model, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torf_model_ambient_rank(model: *const TorfModel) -> usize {
    model.as_ref().map_or(0, |m| m.model.complex.ambient_rank())
}

/// Number of cones in the model's fan, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torf_model_cone_count(model: *const TorfModel) -> usize {
    model.as_ref().map_or(0, |m| m.model.complex.cones().len())
}

/// Runs a command-line command on the model and returns its report.
/// `args` holds the command and its flags separated by spaces, for example
/// `"classify --char 2 --format machine"`. The report is written to `out`
/// whenever the command ran, even if it failed, and set to null otherwise;
/// the status reflects the command's exit code.
///
/// # Safety
/// `model` must be a live handle, `args` a nul-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn torf_report(model: *const TorfModel, args: *const c_char, out: *mut *mut c_char) -> TorfStatus {
    guarded(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else {
            set_error("null argument");
            return TorfStatus::NullArgument;
        };
        *out = ptr::null_mut();
        let args = match read_str(args) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let mut words = args.split_whitespace();
        let Some(cmd) = words.next() else {
            set_error("empty command");
            return TorfStatus::ParseError;
        };
        if cmd == "fixtures" {
            set_error("fixtures takes no model; use torf_fixture_text");
            return TorfStatus::ParseError;
        }
        let argv: Vec<String> = ["torf", cmd, "-"]
            .into_iter()
            .chain(words)
            .map(str::to_string)
            .collect();
        let outcome = cli::run(&argv, &mut m.text.as_bytes());
        let text = if outcome.stdout.is_empty() { outcome.stderr.clone() } else { outcome.stdout };
        *out = into_c_string(text);
        match outcome.code {
            EXIT_OK => TorfStatus::Ok,
            code => {
                set_error(outcome.stderr.trim_end());
                match code {
                    EXIT_INVALID => TorfStatus::ValidationError,
                    EXIT_POSTCONDITION => TorfStatus::PostconditionError,
                    _ => TorfStatus::ParseError,
                }
            }
        }
    })
}

/// Betti numbers `h^0, …, h^n` of the model (or of the named pair when
/// `pair` is non-null). `box_radius < 0` selects the degree-zero formula,
/// otherwise the sum over `[-box_radius, box_radius]^n`. Writes at most
/// `capacity` values to `dims` and the full count to `len`; fails with
/// `BufferTooSmall` if they do not fit.
///
/// # Safety
/// `model` must be a live handle, `pair` null or a nul-terminated string,
/// `dims` valid for `capacity` writes and `len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn torf_betti(
    model: *const TorfModel,
    pair: *const c_char,
    box_radius: i64,
    dims: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> TorfStatus {
    guarded(|| {
        let Some(m) = model.as_ref() else {
            set_error("null model");
            return TorfStatus::NullArgument;
        };
        if len.is_null() || (dims.is_null() && capacity > 0) {
            set_error("null output pointer");
            return TorfStatus::NullArgument;
        }
        let subfan = if pair.is_null() {
            None
        } else {
            let name = match read_str(pair) {
                Ok(n) => n,
                Err(s) => return s,
            };
            match m.model.pair_named(name) {
                Ok(f) => Some(f),
                Err(e) => return fail(&e),
            }
        };
        let mode = if box_radius < 0 {
            BettiMode::Theoretical
        } else {
            BettiMode::Box(box_radius as u64)
        };
        let table = DeRham::new(m.model.complex.clone(), m.model.options.box_bound)
            .and_then(|d| d.betti(subfan, mode));
        match table {
            Ok(t) => {
                *len = t.dims.len();
                if t.dims.len() > capacity {
                    set_error("dims buffer too small");
                    return TorfStatus::BufferTooSmall;
                }
                ptr::copy_nonoverlapping(t.dims.as_ptr(), dims, t.dims.len());
                TorfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// The model file of a built-in fixture.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn torf_fixture_text(name: *const c_char, out: *mut *mut c_char) -> TorfStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return TorfStatus::NullArgument;
        }
        let name = match read_str(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match fixtures::fixture(name) {
            Ok(text) => {
                *out = into_c_string(text);
                TorfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn torf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
