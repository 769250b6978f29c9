//! C ABI for the orbimorse engine.
//!
//! Instances live behind an opaque [`OrbimorseInstance`] handle. Every
//! fallible call returns an [`OrbimorseStatus`]; on failure the message is
//! available from [`orbimorse_last_error`] on the same thread. Strings
//! handed out by the library are released with [`orbimorse_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use orbimorse::pipeline;
use orbimorse::{betti, Convention, Error, Instance, InstanceFile, Report};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbimorseStatus {
    Ok = 0,
    /// The input breaks a law it must satisfy.
    ValidationFailure = 2,
    /// Two computations that must agree did not.
    Mismatch = 3,
    /// Unreadable file, malformed JSON or a dangling label.
    InputError = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    InvalidArgument = 7,
    /// The output buffer is too short; the needed length is still written.
    BufferTooSmall = 8,
    Panic = 9,
}

/// Instance kinds as returned by [`orbimorse_instance_kind`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbimorseKind {
    GlobalQuotient = 0,
    Intrinsic = 1,
    Simplicial = 2,
    Comparison = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbimorseConvention {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbimorseFormat {
    Text = 0,
    Csv = 1,
}

/// A parsed instance file.
pub struct OrbimorseInstance {
    file: InstanceFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> OrbimorseStatus {
    match e.exit_code() {
        4 => OrbimorseStatus::InputError,
        3 => OrbimorseStatus::Mismatch,
        _ => OrbimorseStatus::ValidationFailure,
    }
}

struct Failure(OrbimorseStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OrbimorseStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrbimorseStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OrbimorseStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(OrbimorseStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OrbimorseStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn instance_arg<'a>(p: *const OrbimorseInstance) -> Result<&'a OrbimorseInstance, Failure> {
    p.as_ref().ok_or_else(|| Failure(OrbimorseStatus::NullArgument, "instance is null".into()))
}

fn null_out(what: &str) -> Failure {
    Failure(OrbimorseStatus::NullArgument, format!("{what} is null"))
}

unsafe fn store_instance(out: *mut *mut OrbimorseInstance, file: InstanceFile) {
    *out = Box::into_raw(Box::new(OrbimorseInstance { file }));
}

/// Parses an instance from a JSON string.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_instance_from_json(
    json: *const c_char,
    out: *mut *mut OrbimorseInstance,
) -> OrbimorseStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        let file = InstanceFile::parse(str_arg(json, "json")?)?;
        store_instance(out, file);
        Ok(())
    })
}

/// Loads an instance from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_instance_load(
    path: *const c_char,
    out: *mut *mut OrbimorseInstance,
) -> OrbimorseStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        let file = InstanceFile::load(Path::new(str_arg(path, "path")?))?;
        store_instance(out, file);
        Ok(())
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `instance` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_instance_free(instance: *mut OrbimorseInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Writes the instance kind to `out`.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_instance_kind(
    instance: *const OrbimorseInstance,
    out: *mut OrbimorseKind,
) -> OrbimorseStatus {
    guard(|| {
        let inst = instance_arg(instance)?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = match inst.file.kind {
            orbimorse::Kind::GlobalQuotient => OrbimorseKind::GlobalQuotient,
            orbimorse::Kind::Intrinsic => OrbimorseKind::Intrinsic,
            orbimorse::Kind::Simplicial => OrbimorseKind::Simplicial,
            orbimorse::Kind::Comparison => OrbimorseKind::Comparison,
        };
        Ok(())
    })
}

fn convention(code: i32) -> Result<Convention, Failure> {
    match code {
        c if c == OrbimorseConvention::Plus as i32 => Ok(Convention::Plus),
        c if c == OrbimorseConvention::Minus as i32 => Ok(Convention::Minus),
        other => Err(Failure(OrbimorseStatus::InvalidArgument, format!("unknown convention {other}"))),
    }
}

fn compute_betti(file: &InstanceFile, conv: Convention) -> Result<Vec<usize>, Failure> {
    let checked = |s: &orbimorse::EquivariantMorseSystem| -> Result<Vec<usize>, Failure> {
        let report = s.validate();
        if !report.is_valid() {
            let first = report.violations.first().map(|v| format!("{}: {v}", v.law())).unwrap_or_default();
            return Err(Failure(OrbimorseStatus::ValidationFailure, first));
        }
        Ok(betti(&s.derive_intrinsic()?.complex(conv))?)
    };
    match file.build()? {
        Instance::GlobalQuotient(s) | Instance::Comparison(s, _) => checked(&s),
        Instance::Intrinsic(s) => {
            let d2 = s.verify_d_squared();
            if !d2.holds() {
                return Err(Failure(OrbimorseStatus::ValidationFailure, "boundary does not square to zero".into()));
            }
            Ok(betti(&s.complex(conv))?)
        }
        Instance::Simplicial(k) => Ok(k.quotient()?.homology()?),
    }
}

/// Betti numbers of the instance: the orbifold Morse homology for Morse
/// data, the quotient homology for triangulations.
///
/// `convention_code` is an [`OrbimorseConvention`] value; it only matters
/// for Morse data.
///
/// Writes at most `capacity` entries to `buffer` and the full length to
/// `len`; a short buffer gives `BufferTooSmall` with `len` still set.
///
/// # Safety
/// `instance` must be a live handle, `buffer` valid for `capacity` writes
/// (or null with capacity 0) and `len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_betti(
    instance: *const OrbimorseInstance,
    convention_code: i32,
    buffer: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> OrbimorseStatus {
    guard(|| {
        let inst = instance_arg(instance)?;
        if len.is_null() {
            return Err(null_out("len"));
        }
        let b = compute_betti(&inst.file, convention(convention_code)?)?;
        *len = b.len();
        if b.len() > capacity {
            return Err(Failure(
                OrbimorseStatus::BufferTooSmall,
                format!("need {} entries, have {capacity}", b.len()),
            ));
        }
        if !b.is_empty() {
            if buffer.is_null() {
                return Err(null_out("buffer"));
            }
            ptr::copy_nonoverlapping(b.as_ptr(), buffer, b.len());
        }
        Ok(())
    })
}

fn run_command(file: &InstanceFile, command: &str) -> Result<Report, Failure> {
    Ok(match command {
        "validate" => pipeline::cmd_validate(file)?,
        "homology" => pipeline::cmd_homology(file, Convention::Plus)?,
        "derive" => pipeline::cmd_derive(file)?.0,
        "compare" => pipeline::cmd_compare(file)?,
        other => return Err(Failure(OrbimorseStatus::InvalidArgument, format!("unknown command `{other}`"))),
    })
}

/// Runs `validate`, `homology`, `derive` or `compare` and returns the
/// report status. `format` is an [`OrbimorseFormat`] value. When `out` is not null the rendered report is stored
/// there and must be released with [`orbimorse_string_free`].
///
/// # Safety
/// `instance` must be a live handle, `command` a NUL-terminated string and
/// `out` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_report(
    instance: *const OrbimorseInstance,
    command: *const c_char,
    format: i32,
    out: *mut *mut c_char,
) -> OrbimorseStatus {
    let mut status = OrbimorseStatus::Ok;
    let call = guard(|| {
        let inst = instance_arg(instance)?;
        let report = run_command(&inst.file, str_arg(command, "command")?)?;
        status = match report.status.exit_code() {
            0 => OrbimorseStatus::Ok,
            3 => OrbimorseStatus::Mismatch,
            _ => OrbimorseStatus::ValidationFailure,
        };
        if !out.is_null() {
            let text = match format {
                f if f == OrbimorseFormat::Text as i32 => report.render_text(),
                f if f == OrbimorseFormat::Csv as i32 => report.render_csv(),
                other => {
                    return Err(Failure(OrbimorseStatus::InvalidArgument, format!("unknown format {other}")));
                }
            };
            *out = CString::new(text).expect("reports hold no nul bytes").into_raw();
        }
        Ok(())
    });
    if call == OrbimorseStatus::Ok {
        status
    } else {
        call
    }
}

/// Serializes the instance back to JSON.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_instance_to_json(
    instance: *const OrbimorseInstance,
    out: *mut *mut c_char,
) -> OrbimorseStatus {
    guard(|| {
        let inst = instance_arg(instance)?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = CString::new(inst.file.to_json()).expect("json holds no nul bytes").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn orbimorse_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn orbimorse_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
