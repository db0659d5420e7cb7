//! C interface to depchoice.
//!
//! Handles are opaque and owned by the caller; release each with its
//! `_free` function. Strings returned through `out` parameters are
//! allocated here and released with `dc_string_free`. Every fallible call
//! returns a `DcStatus`; on failure `dc_last_error` describes the error
//! raised most recently on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use depchoice::cli::{ingest_str, ProblemFile, Repository};
use depchoice::completion::{bl_of_rdp, merkle_digest, BlLattice};
use depchoice::dsc::DEFAULT_EXPANSION_CAP;
use depchoice::rdp::{build_rdp, RdpLattice};
use depchoice::solver::solve_with;
use depchoice::versioning::{induced_pvp, lift_nucleus_bl};
use depchoice::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    CapExceeded = 5,
    Unsatisfiable = 6,
    OutOfRange = 7,
    Other = 8,
    Panic = 9,
}

/// An ingested repository: completed structure, versions and conflicts.
pub struct DcRepo {
    inner: Repository,
}

/// Lattice of reachable states of a repository.
pub struct DcRdp {
    inner: RdpLattice,
}

/// Trace completion of an rdp, with Merkle digests.
pub struct DcBl {
    inner: BlLattice,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> DcStatus {
    match e {
        Error::Parse(_) | Error::Format(_) | Error::Io(_) => DcStatus::Parse,
        Error::UnknownEvent(_)
        | Error::NoAlternatives(_)
        | Error::DuplicateId(_)
        | Error::ValidationFailed(_)
        | Error::InvalidVersionMap(_)
        | Error::InvalidObjective(_)
        | Error::UnknownAtom(_)
        | Error::ModalWithoutNucleus => DcStatus::Validation,
        Error::CapExceeded { .. } | Error::Exploded { .. } => DcStatus::CapExceeded,
        Error::Unsatisfiable => DcStatus::Unsatisfiable,
        _ => DcStatus::Other,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), DcStatus>) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            DcStatus::Panic
        }
    }
}

fn fail(e: Error) -> DcStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null() -> DcStatus {
    set_error("null pointer argument");
    DcStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DcStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        DcStatus::InvalidUtf8
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, DcStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), DcStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), DcStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("string contains NUL");
        DcStatus::Other
    })?;
    write_out(out, c.into_raw())
}

/// Copy of the last error message on this thread, or NULL if there is none.
/// Free with `dc_string_free`.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses, completes and validates a repository given as TOML text.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_repo_parse(toml: *const c_char, out: *mut *mut DcRepo) -> DcStatus {
    guard(|| {
        let text = read_str(toml)?;
        let repo = ingest_str(text, DEFAULT_EXPANSION_CAP).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(DcRepo { inner: repo })))
    })
}

/// # Safety
/// `repo` must be NULL or a handle from `dc_repo_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_repo_free(repo: *mut DcRepo) {
    if !repo.is_null() {
        drop(Box::from_raw(repo));
    }
}

/// Number of events left after completion.
///
/// # Safety
/// `repo` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_repo_event_count(repo: *const DcRepo, out: *mut usize) -> DcStatus {
    guard(|| write_out(out, deref(repo)?.inner.dsc.len()))
}

/// # Safety
/// `repo` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_rdp_build(repo: *const DcRepo, max_states: usize, out: *mut *mut DcRdp) -> DcStatus {
    guard(|| {
        let r = build_rdp(&deref(repo)?.inner.dsc, max_states).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(DcRdp { inner: r })))
    })
}

/// # Safety
/// `rdp` must be NULL or a handle from `dc_rdp_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_rdp_free(rdp: *mut DcRdp) {
    if !rdp.is_null() {
        drop(Box::from_raw(rdp));
    }
}

/// # Safety
/// `rdp` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_rdp_len(rdp: *const DcRdp, out: *mut usize) -> DcStatus {
    guard(|| write_out(out, deref(rdp)?.inner.len()))
}

/// Label of element `index`, such as `{a,b}`. Free with `dc_string_free`.
///
/// # Safety
/// `rdp` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_rdp_element(rdp: *const DcRdp, index: usize, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let l = deref(rdp)?.inner.lattice();
        if index >= l.len() {
            set_error(format!("element {index} out of range"));
            return Err(DcStatus::OutOfRange);
        }
        write_string(out, l.id(index).to_string())
    })
}

/// Builds the trace completion of `rdp` with digests attached.
///
/// # Safety
/// `rdp` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_bl_build(rdp: *const DcRdp, out: *mut *mut DcBl) -> DcStatus {
    guard(|| {
        let b = merkle_digest(&bl_of_rdp(&deref(rdp)?.inner)).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(DcBl { inner: b })))
    })
}

/// # Safety
/// `bl` must be NULL or a handle from `dc_bl_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_bl_free(bl: *mut DcBl) {
    if !bl.is_null() {
        drop(Box::from_raw(bl));
    }
}

/// # Safety
/// `bl` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_bl_len(bl: *const DcBl, out: *mut usize) -> DcStatus {
    guard(|| write_out(out, deref(bl)?.inner.len()))
}

/// # Safety
/// `bl` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_bl_trace_count(bl: *const DcBl, out: *mut usize) -> DcStatus {
    guard(|| write_out(out, deref(bl)?.inner.irreducibles().len()))
}

/// Name of trace `index` (`a[b]`) and its digest as 64 hex digits.
/// Free both strings with `dc_string_free`.
///
/// # Safety
/// `bl` must be a live handle; `name` and `digest` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_bl_trace(
    bl: *const DcBl,
    index: usize,
    name: *mut *mut c_char,
    digest: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let labels = deref(bl)?.inner.labels().ok_or_else(|| fail(Error::MissingLabels))?;
        let Some(l) = labels.get(index) else {
            set_error(format!("trace {index} out of range"));
            return Err(DcStatus::OutOfRange);
        };
        if name.is_null() || digest.is_null() {
            return Err(null());
        }
        write_string(name, l.name().to_string())?;
        write_string(digest, l.digest_hex().unwrap_or_default())
    })
}

/// Fixed elements of the version nucleus on the completion, as a JSON array
/// of element labels. Free with `dc_string_free`.
///
/// # Safety
/// All handles must be live and built from the same repository; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_version_fixpoints(
    repo: *const DcRepo,
    rdp: *const DcRdp,
    bl: *const DcBl,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let (repo, rdp, bl) = (deref(repo)?, deref(rdp)?, deref(bl)?);
        let p = induced_pvp(&rdp.inner, &repo.inner.versions).map_err(fail)?;
        let n = lift_nucleus_bl(&bl.inner, &p).map_err(fail)?;
        let ids: Vec<&str> = n.fixed_points().into_iter().map(|i| bl.inner.lattice().id(i)).collect();
        write_string(out, serde_json::to_string(&ids).expect("strings serialize"))
    })
}

/// Solves a problem given as TOML text; writes the solution as JSON.
/// Free with `dc_string_free`.
///
/// # Safety
/// All handles must be live and built from the same repository; `problem`
/// must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_solve(
    repo: *const DcRepo,
    rdp: *const DcRdp,
    bl: *const DcBl,
    problem: *const c_char,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let (repo, rdp, bl) = (deref(repo)?, deref(rdp)?, deref(bl)?);
        let pf = ProblemFile::parse(read_str(problem)?).map_err(fail)?;
        let p = pf.to_problem(&repo.inner).map_err(fail)?;
        let modality = if p.formula.has_modality() {
            let pvp = induced_pvp(&rdp.inner, &repo.inner.versions).map_err(fail)?;
            Some(lift_nucleus_bl(&bl.inner, &pvp).map_err(fail)?)
        } else {
            None
        };
        let s = solve_with(&rdp.inner, &bl.inner, &p, modality.as_ref()).map_err(fail)?;
        write_string(out, serde_json::to_string(&s).expect("solutions serialize"))
    })
}
