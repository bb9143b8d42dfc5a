//! C ABI over nilquiver: opaque handles, status codes and a per-thread last error.
//!
//! Every function returns an `NqStatus`; on failure `nq_last_error` describes the
//! cause. Handles are released with their `_free` function and strings with
//! `nq_string_free`. A prime `p = 0` selects the rationals.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use nilquiver::cli::{parse_field, CliError, ModuleFile, QuiverFile};
use nilquiver::qh::{is_delta_filtered, standard_module, LayeredIndex};
use nilquiver::repmod::ext_dim;
use nilquiver::richardson::{richardson_search, RichardsonVerdict};
use nilquiver::{DimFiltration, Field, Module, NsqAlgebra, Quiver};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Panic = 5,
}

/// A quiver.
pub struct NqQuiver {
    inner: Quiver,
}

/// The algebra N_s(Q) of a quiver.
pub struct NqAlgebra {
    inner: NsqAlgebra,
}

/// A finite-dimensional module over a bound quiver algebra.
pub struct NqModule {
    inner: Module,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (NqStatus, String);

fn invalid(e: impl ToString) -> Failure {
    (NqStatus::InvalidInput, e.to_string())
}

fn from_cli(e: CliError) -> Failure {
    match e {
        CliError::Parse(m) => (NqStatus::Parse, m),
        other => (NqStatus::InvalidInput, other.to_string()),
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            NqStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NqStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((NqStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (NqStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or((NqStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((NqStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn field_of(p: u64) -> Result<Field, Failure> {
    if p == 0 {
        Ok(Field::Rational)
    } else {
        parse_field(&p.to_string()).map_err(from_cli)
    }
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(invalid)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn nq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"vertices": [...], "arrows": [{"name", "from", "to"}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_from_json(json: *const c_char, out: *mut *mut NqQuiver) -> NqStatus {
    guard(|| {
        let f: QuiverFile = serde_json::from_str(text(json)?).map_err(|e| (NqStatus::Parse, e.to_string()))?;
        let q = f.to_quiver().map_err(|e| (NqStatus::Parse, e.to_string()))?;
        write(out, boxed(NqQuiver { inner: q }))
    })
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_n_vertices(q: *const NqQuiver, out: *mut usize) -> NqStatus {
    guard(|| write(out, handle(q)?.inner.n_vertices()))
}

/// # Safety
/// `q` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_free(q: *mut NqQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Builds N_s(Q) for `s >= 1`.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_nsq_new(q: *const NqQuiver, s: usize, out: *mut *mut NqAlgebra) -> NqStatus {
    guard(|| {
        let q = handle(q)?;
        if s == 0 {
            return Err(invalid("s must be at least 1"));
        }
        write(out, boxed(NqAlgebra { inner: NsqAlgebra::new(&q.inner, s) }))
    })
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_algebra_dim(a: *const NqAlgebra, out: *mut usize) -> NqStatus {
    guard(|| write(out, handle(a)?.inner.dim()))
}

/// # Safety
/// `a` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nq_algebra_free(a: *mut NqAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses a module file with an inline quiver; `p` applies when the file names no field.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_module_from_json(json: *const c_char, p: u64, out: *mut *mut NqModule) -> NqStatus {
    guard(|| {
        let f: ModuleFile = serde_json::from_str(text(json)?).map_err(|e| (NqStatus::Parse, e.to_string()))?;
        let (_, m) = f.load(Path::new("."), field_of(p)?).map_err(from_cli)?;
        write(out, boxed(NqModule { inner: m }))
    })
}

/// The standard module Δ(i_t) for a vertex index `vertex` and layer `1 <= layer <= s`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_module_standard(a: *const NqAlgebra, vertex: usize, layer: usize, p: u64, out: *mut *mut NqModule) -> NqStatus {
    guard(|| {
        let n = &handle(a)?.inner;
        if vertex >= n.base().n_vertices() || layer == 0 || layer > n.s() {
            return Err(invalid(format!("no vertex {vertex} in layer {layer}")));
        }
        let m = standard_module(n, field_of(p)?, LayeredIndex::new(vertex, layer));
        write(out, boxed(NqModule { inner: m }))
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_module_total_dim(m: *const NqModule, out: *mut usize) -> NqStatus {
    guard(|| write(out, handle(m)?.inner.total_dim()))
}

/// dim Ext^k(m, n) over a common algebra and field.
///
/// # Safety
/// `m`, `n` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_module_ext_dim(m: *const NqModule, n: *const NqModule, k: usize, out: *mut usize) -> NqStatus {
    guard(|| {
        let e = ext_dim(&handle(m)?.inner, &handle(n)?.inner, k).map_err(invalid)?;
        write(out, e)
    })
}

/// Whether all vertical arrows act injectively.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_module_is_delta_filtered(m: *const NqModule, out: *mut bool) -> NqStatus {
    guard(|| write(out, is_delta_filtered(&handle(m)?.inner)))
}

/// Serializes to the module file format; free the result with `nq_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nq_module_to_json(m: *const NqModule, out: *mut *mut c_char) -> NqStatus {
    guard(|| {
        let f = ModuleFile::from_module(&handle(m)?.inner);
        let s = serde_json::to_string(&f).map_err(invalid)?;
        write(out, c_string(s)?)
    })
}

/// # Safety
/// `m` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nq_module_free(m: *mut NqModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Samples `samples` flagged representations of `dd` (layers split by ';', entries by ',').
/// On a rigid sample sets `found` and stores the N_s(Q)-module in `witness`; otherwise
/// `witness` is set to NULL.
///
/// # Safety
/// `a` must be a live handle, `dd` a NUL-terminated string, outputs writable.
#[no_mangle]
pub unsafe extern "C" fn nq_richardson_search(
    a: *const NqAlgebra,
    dd: *const c_char,
    p: u64,
    samples: u64,
    seed: u64,
    found: *mut bool,
    witness: *mut *mut NqModule,
) -> NqStatus {
    guard(|| {
        let n = &handle(a)?.inner;
        let dd = DimFiltration::parse_layers(text(dd)?).map_err(|e| (NqStatus::Parse, e.to_string()))?;
        let verdict = richardson_search(n, &dd, field_of(p)?, samples, seed).map_err(invalid)?;
        if found.is_null() || witness.is_null() {
            return Err((NqStatus::NullPointer, "null output pointer".into()));
        }
        match verdict {
            RichardsonVerdict::RigidFound { witness: w, .. } => {
                write(found, true)?;
                write(witness, boxed(NqModule { inner: w.module }))
            }
            RichardsonVerdict::NoRigidAmongSamples { .. } => {
                write(found, false)?;
                write(witness, ptr::null_mut())
            }
        }
    })
}
