//! C interface to the malgrange engine.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`MgStatus`]; on failure [`mg_last_error`] describes what went wrong on the
//! calling thread. Strings returned by the library are freed with
//! [`mg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use malgrange_core::commands::{self, RunOptions};
use malgrange_core::control::{autonomy_report, ControlSystem};
use malgrange_core::module::{bass_torsion, FPModule};
use malgrange_core::session::{Binding, CommandKind, Session};
use malgrange_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    /// The call ran but a verification it performed failed.
    VerificationFailed = 1,
    ParseError = 2,
    InvalidArgument = 3,
    Internal = 4,
}

/// A parsed session file.
pub struct MgSession(Session);

/// A finitely presented module.
pub struct MgModule(FPModule);

/// A linear system of equations over the operator ring.
pub struct MgSystem(ControlSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: MgStatus, msg: impl Into<String>) -> MgStatus {
    set_error(msg);
    status
}

fn engine_error(e: Error) -> MgStatus {
    let status = match e {
        Error::Parse { .. } | Error::InvalidNumber(_) | Error::InvalidRing(_) => MgStatus::ParseError,
        Error::Usage(_) | Error::DimensionMismatch(_) | Error::RankMismatch { .. } | Error::RingMismatch(..) => {
            MgStatus::InvalidArgument
        }
        _ => MgStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> MgStatus) -> MgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(MgStatus::Internal, format!("internal error: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, MgStatus> {
    if s.is_null() {
        return Err(fail(MgStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(MgStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> MgStatus {
    if out.is_null() {
        return fail(MgStatus::InvalidArgument, "output pointer is null");
    }
    *out = value;
    MgStatus::Ok
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! eng {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return engine_error(e),
        }
    };
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, MgStatus> {
    p.as_ref().ok_or_else(|| fail(MgStatus::InvalidArgument, format!("{what} is null")))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn mg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses session text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mg_session_parse(text: *const c_char, out: *mut *mut MgSession) -> MgStatus {
    guard(|| {
        let text = tri!(read_str(text, "text"));
        let s = eng!(Session::parse(text));
        write_out(out, Box::into_raw(Box::new(MgSession(s))))
    })
}

/// # Safety
/// `s` must be null or a handle from [`mg_session_parse`].
#[no_mangle]
pub unsafe extern "C" fn mg_session_free(s: *mut MgSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs a command (`analyze`, `torsion`, `defect`, `hom`, `verify`, `gb`)
/// against a session and stores its report in `out`. With no names the
/// session's own statements decide the targets. A null session is allowed
/// for `verify`, which then runs the built-in suite. The report is written
/// even when the status is `VerificationFailed`.
///
/// # Safety
/// `names` must point to `nnames` NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mg_session_run(
    session: *const MgSession,
    command: *const c_char,
    names: *const *const c_char,
    nnames: usize,
    json: bool,
    out: *mut *mut c_char,
) -> MgStatus {
    guard(|| {
        let command = tri!(read_str(command, "command"));
        let kind: CommandKind = match command.parse() {
            Ok(k) => k,
            Err(_) => return fail(MgStatus::InvalidArgument, format!("unknown command `{command}`")),
        };
        if nnames > 0 && names.is_null() {
            return fail(MgStatus::InvalidArgument, "names is null");
        }
        let mut list = Vec::with_capacity(nnames);
        for i in 0..nnames {
            list.push(tri!(read_str(*names.add(i), "name")).to_string());
        }
        let opts = RunOptions {
            json,
            ..RunOptions::default()
        };
        let session = session.as_ref().map(|s| &s.0);
        let output = eng!(commands::run(session, kind, &list, &opts));
        let status = write_out(out, to_c_string(output.text));
        if status == MgStatus::Ok && !output.success {
            return fail(MgStatus::VerificationFailed, "verification failed");
        }
        status
    })
}

/// Looks up a name bound in the session. Systems yield their module.
///
/// # Safety
/// `session` must be a live handle; `name` a NUL-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mg_session_module(
    session: *const MgSession,
    name: *const c_char,
    out: *mut *mut MgModule,
) -> MgStatus {
    guard(|| {
        let s = tri!(handle(session, "session"));
        let name = tri!(read_str(name, "name"));
        let Some(b) = s.0.get(name) else {
            return fail(MgStatus::InvalidArgument, format!("unknown name `{name}`"));
        };
        let m = eng!(b.module());
        write_out(out, Box::into_raw(Box::new(MgModule(m))))
    })
}

/// Looks up a system bound in the session.
///
/// # Safety
/// As for [`mg_session_module`].
#[no_mangle]
pub unsafe extern "C" fn mg_session_system(
    session: *const MgSession,
    name: *const c_char,
    out: *mut *mut MgSystem,
) -> MgStatus {
    guard(|| {
        let s = tri!(handle(session, "session"));
        let name = tri!(read_str(name, "name"));
        match s.0.get(name) {
            Some(Binding::System(sys)) => write_out(out, Box::into_raw(Box::new(MgSystem(sys.clone())))),
            Some(Binding::Module(_)) => fail(MgStatus::InvalidArgument, format!("`{name}` is a module")),
            None => fail(MgStatus::InvalidArgument, format!("unknown name `{name}`")),
        }
    })
}

/// # Safety
/// `m` must be null or a module handle from this library.
#[no_mangle]
pub unsafe extern "C" fn mg_module_free(m: *mut MgModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of generators in the presentation.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_module_ngens(m: *const MgModule, out: *mut usize) -> MgStatus {
    guard(|| {
        let m = tri!(handle(m, "module"));
        write_out(out, m.0.ngens())
    })
}

/// Dimension over Q. `finite` is set to false when it is infinite, and `out`
/// is then left untouched.
///
/// # Safety
/// `m` must be a live handle; `out` and `finite` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_module_qdim(m: *const MgModule, out: *mut u64, finite: *mut bool) -> MgStatus {
    guard(|| {
        let m = tri!(handle(m, "module"));
        match m.0.qdim() {
            Some(d) => {
                let s = write_out(out, d);
                if s != MgStatus::Ok {
                    return s;
                }
                write_out(finite, true)
            }
            None => write_out(finite, false),
        }
    })
}

/// Torsion submodule.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_module_torsion(m: *const MgModule, out: *mut *mut MgModule) -> MgStatus {
    guard(|| {
        let m = tri!(handle(m, "module"));
        let (t, _) = eng!(bass_torsion(&m.0));
        write_out(out, Box::into_raw(Box::new(MgModule(t))))
    })
}

/// Whether the module presents zero.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_module_is_zero(m: *const MgModule, out: *mut bool) -> MgStatus {
    guard(|| {
        let m = tri!(handle(m, "module"));
        write_out(out, m.0.is_zero())
    })
}

/// Text form of the presentation.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_module_to_string(m: *const MgModule, out: *mut *mut c_char) -> MgStatus {
    guard(|| {
        let m = tri!(handle(m, "module"));
        write_out(out, to_c_string(m.0.to_string()))
    })
}

/// # Safety
/// `s` must be null or a system handle from this library.
#[no_mangle]
pub unsafe extern "C" fn mg_system_free(s: *mut MgSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Whether the system has no autonomous quantities.
///
/// # Safety
/// `s` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_system_is_controllable(s: *const MgSystem, out: *mut bool) -> MgStatus {
    guard(|| {
        let s = tri!(handle(s, "system"));
        let rep = eng!(autonomy_report(&s.0));
        write_out(out, rep.controllable)
    })
}

/// Autonomy report as text. Returns `VerificationFailed` if the internal
/// defect check disagrees; the report is still written.
///
/// # Safety
/// `s` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mg_system_report(s: *const MgSystem, out: *mut *mut c_char) -> MgStatus {
    guard(|| {
        let s = tri!(handle(s, "system"));
        let rep = eng!(autonomy_report(&s.0));
        let status = write_out(out, to_c_string(rep.to_string()));
        if status == MgStatus::Ok && !rep.theorem_check {
            return fail(MgStatus::VerificationFailed, "defect check failed");
        }
        status
    })
}
