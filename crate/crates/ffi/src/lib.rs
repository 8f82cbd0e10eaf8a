//! C interface to `hop-core`.
//!
//! Records live behind an opaque `HopRecords` handle. Every fallible call
//! returns a `HopStatus`; on anything but `HOP_STATUS_OK` a description is
//! available from `hop_last_error` on the same thread until the next call.
//! Strings handed out by the library are released with `hop_string_free`,
//! handles with `hop_records_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hop_core::chain::certify;
use hop_core::format::{parse_starter_file, serialize_factorization, serialize_seating, serialize_starters};
use hop_core::search::{kinds_for, search_starter, SearchBudget, SearchOutcome};
use hop_core::{fixtures, CycleType, StarterKind, StarterRecord};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    VerificationFailed = 4,
    NotFound = 5,
    InvalidArgument = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

/// Starter kind for `hop_search`; `AUTO` tries the kinds the catalog suggests.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopKind {
    Auto = 0,
    One = 1,
    Two = 2,
    Three = 3,
}

/// Opaque list of parsed starter records.
pub struct HopRecords {
    records: Vec<StarterRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

struct Fail(HopStatus, String);

type Outcome<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> Outcome<()>) -> HopStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HopStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HopStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(HopStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(HopStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(records: *const HopRecords) -> Outcome<&'a HopRecords> {
    records.as_ref().ok_or_else(|| null("records"))
}

unsafe fn record<'a>(records: *const HopRecords, index: usize) -> Outcome<&'a StarterRecord> {
    let h: &'a HopRecords = handle(records)?;
    h.records.get(index).ok_or_else(|| {
        Fail(
            HopStatus::IndexOutOfRange,
            format!("index {index} with {} records", h.records.len()),
        )
    })
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

fn boxed(records: Vec<StarterRecord>) -> *mut HopRecords {
    Box::into_raw(Box::new(HopRecords { records }))
}

/// Description of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on this
/// thread.
#[no_mangle]
pub extern "C" fn hop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses starter records from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_records_parse(text: *const c_char, out: *mut *mut HopRecords) -> HopStatus {
    guard(|| {
        let records =
            parse_starter_file(read_str(text, "text")?).map_err(|e| Fail(HopStatus::ParseError, e.to_string()))?;
        put(out, boxed(records))
    })
}

/// Records of a shipped fixture file such as `"appendix_b"`.
///
/// # Safety
/// `name` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_records_fixture(name: *const c_char, out: *mut *mut HopRecords) -> HopStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let records = fixtures::records(name)
            .ok_or_else(|| Fail(HopStatus::InvalidArgument, format!("no fixture named {name:?}")))?;
        put(out, boxed(records))
    })
}

/// # Safety
/// `records` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hop_records_len(records: *const HopRecords) -> usize {
    records.as_ref().map_or(0, |h| h.records.len())
}

/// # Safety
/// `records` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hop_records_free(records: *mut HopRecords) {
    if !records.is_null() {
        drop(Box::from_raw(records));
    }
}

/// Identifier of a record, for example `n10[4,2,2,2]/one`.
///
/// # Safety
/// `records` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_record_id(records: *const HopRecords, index: usize, out: *mut *mut c_char) -> HopStatus {
    guard(|| put(out, c_string(record(records, index)?.id())))
}

/// Runs the full chain on one record: starter conditions, expansion,
/// factorization check and, if `with_lift`, the seating lift.
/// `HOP_STATUS_VERIFICATION_FAILED` carries the report in `hop_last_error`.
///
/// # Safety
/// `records` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hop_record_verify(records: *const HopRecords, index: usize, with_lift: bool) -> HopStatus {
    guard(|| {
        let cert = certify(record(records, index)?, with_lift);
        if cert.is_ok() {
            Ok(())
        } else {
            Err(Fail(HopStatus::VerificationFailed, cert.report.render_text(&cert.id)))
        }
    })
}

/// The verified factorization of a record in the text format.
///
/// # Safety
/// `records` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_record_expand(
    records: *const HopRecords,
    index: usize,
    out: *mut *mut c_char,
) -> HopStatus {
    guard(|| {
        let cert = certify(record(records, index)?, false);
        match cert.factorization {
            Some(d) if cert.report.is_ok() => put(out, c_string(serialize_factorization(&d))),
            _ => Err(Fail(HopStatus::VerificationFailed, cert.report.render_text(&cert.id))),
        }
    })
}

/// The verified seating schedule of a record in the text format.
///
/// # Safety
/// `records` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_record_lift(records: *const HopRecords, index: usize, out: *mut *mut c_char) -> HopStatus {
    guard(|| {
        let cert = certify(record(records, index)?, true);
        match cert.seating {
            Some(s) if cert.report.is_ok() => put(out, c_string(serialize_seating(&s))),
            _ => Err(Fail(HopStatus::VerificationFailed, cert.report.render_text(&cert.id))),
        }
    })
}

/// All records of a handle in the text format.
///
/// # Safety
/// `records` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_records_serialize(records: *const HopRecords, out: *mut *mut c_char) -> HopStatus {
    guard(|| put(out, c_string(serialize_starters(&handle(records)?.records))))
}

/// Searches for a starter of type `cycle_type` (for example `"4,3,3"`).
/// A negative `seed` disables shuffling. On success `out` receives a handle
/// holding the one verified record; `HOP_STATUS_NOT_FOUND` means the search
/// was exhausted or ran out of budget.
///
/// # Safety
/// `cycle_type` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hop_search(
    n: usize,
    cycle_type: *const c_char,
    kind: HopKind,
    max_nodes: u64,
    max_seconds: f64,
    seed: i64,
    out: *mut *mut HopRecords,
) -> HopStatus {
    guard(|| {
        let t: CycleType = read_str(cycle_type, "cycle_type")?
            .parse()
            .map_err(|e: hop_core::HopError| Fail(HopStatus::InvalidArgument, e.to_string()))?;
        let kinds = match kind {
            HopKind::Auto => kinds_for(&t),
            HopKind::One => vec![StarterKind::One],
            HopKind::Two => vec![StarterKind::Two],
            HopKind::Three => vec![StarterKind::Three],
        };
        let budget = SearchBudget {
            max_nodes,
            max_seconds,
            seed: u64::try_from(seed).ok(),
        };
        let mut last = String::new();
        for k in kinds {
            let outcome =
                search_starter(n, &t, k, &budget).map_err(|e| Fail(HopStatus::InvalidArgument, e.to_string()))?;
            if let SearchOutcome::Found(r, _) = outcome {
                return put(out, boxed(vec![r]));
            }
            last = format!("{t} {k}: {outcome}");
        }
        if !out.is_null() {
            out.write(ptr::null_mut());
        }
        Err(Fail(HopStatus::NotFound, last))
    })
}
