//! C interface to `satlab`: opaque graph and system handles, status codes and
//! a per-thread last-error message.
//!
//! Strings returned through `char **` are owned by the caller and released
//! with `satlab_string_free`. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use satlab::constructions::{self, ConstructionError};
use satlab::io;
use satlab::saturation::{is_saturated, is_tsat_witness, is_twin_free_saturated};
use satlab::search::{self, EnumerationBudget, Kind, Params};
use satlab::systems::{self, check_maximal, check_system, SystemInstance};
use satlab::Graph;
use serde::Deserialize;

/// Result of every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    Nonexistent = 4,
    Infeasible = 5,
    Panic = 6,
}

/// Opaque graph handle.
pub struct SatlabGraph(Graph);

/// Opaque system handle.
pub struct SatlabSystem(SystemInstance);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(SatlabStatus, String);

impl From<ConstructionError> for Fail {
    fn from(e: ConstructionError) -> Self {
        let status = match e {
            ConstructionError::Nonexistent { .. } => SatlabStatus::Nonexistent,
            ConstructionError::Infeasible(_) => SatlabStatus::Infeasible,
            _ => SatlabStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<systems::SystemError> for Fail {
    fn from(e: systems::SystemError) -> Self {
        Fail(SatlabStatus::InvalidArgument, e.to_string())
    }
}

impl From<search::SearchError> for Fail {
    fn from(e: search::SearchError) -> Self {
        Fail(SatlabStatus::InvalidArgument, e.to_string())
    }
}

impl From<io::ParseError> for Fail {
    fn from(e: io::ParseError) -> Self {
        Fail(SatlabStatus::ParseError, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SatlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SatlabStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SatlabStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(SatlabStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SatlabStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn graph<'a>(g: *const SatlabGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(null)
}

unsafe fn system<'a>(s: *const SatlabSystem) -> Result<&'a SystemInstance, Fail> {
    s.as_ref().map(|s| &s.0).ok_or_else(null)
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failing call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn satlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn satlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses graph6 or sparse6 text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_graph_parse(text: *const c_char, out: *mut *mut SatlabGraph) -> SatlabStatus {
    guard(|| {
        let g = io::graph6::decode_any(str_arg(text)?.as_bytes())?;
        write(out, Box::into_raw(Box::new(SatlabGraph(g))))
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn satlab_graph_free(g: *mut SatlabGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `n`, `edges` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_graph_size(g: *const SatlabGraph, n: *mut usize, edges: *mut usize) -> SatlabStatus {
    guard(|| {
        let g = graph(g)?;
        write(n, g.n())?;
        write(edges, g.edge_count())
    })
}

/// Encodes as graph6; the string is released with `satlab_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_graph_to_graph6(g: *const SatlabGraph, out: *mut *mut c_char) -> SatlabStatus {
    guard(|| {
        let s = io::graph6::encode(graph(g)?);
        write(out, c_string(s))
    })
}

/// `K_r`-saturation, optionally with twin-freeness (`twin_free`) or the
/// degree-`t` twin condition (`t > 0`).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_graph_check(
    g: *const SatlabGraph,
    r: usize,
    twin_free: bool,
    t: usize,
    out: *mut bool,
) -> SatlabStatus {
    guard(|| {
        let g = graph(g)?;
        if r < 3 {
            return Err(Fail(SatlabStatus::InvalidArgument, format!("r={r} must be at least 3")));
        }
        let ok = if t > 0 {
            is_tsat_witness(g, r, t) && (!twin_free || g.is_twin_free())
        } else if twin_free {
            is_twin_free_saturated(g, r)
        } else {
            is_saturated(g, r)
        };
        write(out, ok)
    })
}

/// A twin-free `K_r`-saturated graph on `n` vertices; `SATLAB_STATUS_NONEXISTENT` in the exception cases.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_twin_free_saturated(n: usize, r: usize, out: *mut *mut SatlabGraph) -> SatlabStatus {
    guard(|| {
        let g = constructions::twin_free_saturated(n, r)?;
        write(out, Box::into_raw(Box::new(SatlabGraph(g))))
    })
}

/// Parses a system JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_system_parse(json: *const c_char, out: *mut *mut SatlabSystem) -> SatlabStatus {
    guard(|| {
        let s = io::system_from_json(str_arg(json)?)?;
        write(out, Box::into_raw(Box::new(SatlabSystem(s))))
    })
}

/// The base family for `(t, l)`, or its lift when `lifted` is set.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_system_family(t: usize, l: usize, lifted: bool, out: *mut *mut SatlabSystem) -> SatlabStatus {
    guard(|| {
        let s = if lifted { constructions::lifted_family(t, l)? } else { constructions::system_family(t, l)? };
        write(out, Box::into_raw(Box::new(SatlabSystem(s))))
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn satlab_system_free(s: *mut SatlabSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_system_to_json(s: *const SatlabSystem, out: *mut *mut c_char) -> SatlabStatus {
    guard(|| write(out, c_string(io::system_to_json(system(s)?))))
}

/// Validity and maximality; `maximal` is false whenever the system is invalid.
///
/// # Safety
/// `s` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_system_check(s: *const SatlabSystem, valid: *mut bool, maximal: *mut bool) -> SatlabStatus {
    guard(|| {
        let s = system(s)?;
        let ok = check_system(s)?.is_valid();
        write(valid, ok)?;
        write(maximal, ok && check_maximal(s)?.0)
    })
}

/// The graph `G(H, F)`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_system_assemble(s: *const SatlabSystem, out: *mut *mut SatlabGraph) -> SatlabStatus {
    guard(|| {
        let s = system(s)?;
        let g = systems::assemble(&s.host, &s.family);
        write(out, Box::into_raw(Box::new(SatlabGraph(g))))
    })
}

#[derive(Deserialize)]
struct SearchRequest {
    #[serde(flatten)]
    params: Params,
    #[serde(default)]
    budget: Option<EnumerationBudget>,
}

/// Runs the oracle `kind` with parameters given as a JSON object such as
/// `{"n": 6, "r": 3}` (optional `"budget"`), writing the record as JSON.
///
/// # Safety
/// `kind` and `params_json` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satlab_search_json(
    kind: *const c_char,
    params_json: *const c_char,
    out: *mut *mut c_char,
) -> SatlabStatus {
    guard(|| {
        let kind: Kind = str_arg(kind)?.parse()?;
        let req: SearchRequest = serde_json::from_str(str_arg(params_json)?)
            .map_err(|e| Fail(SatlabStatus::ParseError, format!("params: {e}")))?;
        let budget = req.budget.unwrap_or_default();
        let rec = search::run(kind, &req.params, &budget)?;
        write(out, c_string(rec.to_json_line()))
    })
}
