//! C ABI over `qdisynth`.
//!
//! Objects cross the boundary as opaque pointers created by a `qdi_*` constructor
//! and released with the matching `*_free`. Every call returns a [`QdiStatus`];
//! on failure a description is available from [`qdi_last_error_message`] on the
//! same thread. Strings handed out by the library must be released with
//! [`qdi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdisynth::analysis::{classify_indication, orphan_summary, report, IoClass, SubsetMode, DEFAULT_ANALYSIS_CAP};
use qdisynth::logic::{BooleanFunction, Codeword};
use qdisynth::netlist::{build_fixture, Circuit, Fixture, Netlist};
use qdisynth::sim::Phase;
use qdisynth::synth::{synth, Method, SynthOptions};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed truth table, netlist JSON or name.
    Parse = 3,
    /// Structurally invalid netlist.
    Validation = 4,
    Synthesis = 5,
    /// Simulation or analysis failure, including the input-count cap.
    Analysis = 6,
    InvalidArgument = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdiMethod {
    Dims = 0,
    Fdims = 1,
    Safe = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdiPhase {
    Set = 0,
    Reset = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdiIoClass {
    Strong = 0,
    Weak = 1,
    Early = 2,
}

/// Opaque single-output Boolean function.
pub struct QdiFunction(BooleanFunction);

/// Opaque validated netlist.
pub struct QdiNetlist {
    netlist: Netlist,
    circuit: Circuit,
}

impl QdiNetlist {
    fn new(netlist: Netlist) -> Result<Self, Failure> {
        let circuit = netlist.validate().map_err(|e| fail(QdiStatus::Validation, e))?;
        Ok(QdiNetlist { netlist, circuit })
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (QdiStatus, String);

fn fail(status: QdiStatus, e: impl ToString) -> Failure {
    (status, e.to_string())
}

fn set_last_error(msg: String) {
    // interior NULs would truncate the C string anyway
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QdiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdiStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {msg}"));
            QdiStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(fail(QdiStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    non_null(p, what)?;
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|e| fail(QdiStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T) {
    unsafe { out.write(value) }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn phase(p: QdiPhase) -> Phase {
    match p {
        QdiPhase::Set => Phase::Set,
        QdiPhase::Reset => Phase::Reset,
    }
}

/// Message describing the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qdi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses the `n=<k>` truth-table text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_function_from_text(text: *const c_char, out: *mut *mut QdiFunction) -> QdiStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = unsafe { read_str(text, "text") }?;
        let f = BooleanFunction::parse_text(text).map_err(|e| fail(QdiStatus::Parse, e))?;
        unsafe { write_out(out, Box::into_raw(Box::new(QdiFunction(f)))) };
        Ok(())
    })
}

/// Builds a function from `2^n` bytes, one per assignment; nonzero means 1.
///
/// # Safety
/// `bits` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qdi_function_from_bits(
    n: usize,
    bits: *const u8,
    len: usize,
    out: *mut *mut QdiFunction,
) -> QdiStatus {
    guard(|| {
        non_null(out, "out")?;
        non_null(bits, "bits")?;
        let bits = unsafe { std::slice::from_raw_parts(bits, len) };
        let f = BooleanFunction::from_truth_table(n, bits.iter().map(|&b| b != 0).collect())
            .map_err(|e| fail(QdiStatus::InvalidArgument, e))?;
        unsafe { write_out(out, Box::into_raw(Box::new(QdiFunction(f)))) };
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a pointer returned by a `qdi_function_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn qdi_function_free(f: *mut QdiFunction) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Synthesizes a dual-rail netlist. `or_fanin` of 0 builds one wide OR per rail.
///
/// # Safety
/// `f` must be a live function handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_synthesize(
    f: *const QdiFunction,
    method: QdiMethod,
    or_fanin: usize,
    out: *mut *mut QdiNetlist,
) -> QdiStatus {
    guard(|| {
        non_null(f, "function")?;
        non_null(out, "out")?;
        if or_fanin == 1 {
            return Err(fail(QdiStatus::InvalidArgument, "OR fan-in must be 0 or at least 2"));
        }
        let method = match method {
            QdiMethod::Dims => Method::Dims,
            QdiMethod::Fdims => Method::Fdims,
            QdiMethod::Safe => Method::Safe,
        };
        let opts = SynthOptions { or_fanin: (or_fanin > 0).then_some(or_fanin), ..Default::default() };
        let f = unsafe { &(*f).0 };
        let nl = synth(f, method, &opts).map_err(|e| fail(QdiStatus::Synthesis, e))?;
        unsafe { write_out(out, Box::into_raw(Box::new(QdiNetlist::new(nl)?))) };
        Ok(())
    })
}

/// Builds a named reference netlist: `fig3`, `fig4`, `fig5` or `early-and2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_fixture(
    name: *const c_char,
    or_fanin: usize,
    out: *mut *mut QdiNetlist,
) -> QdiStatus {
    guard(|| {
        non_null(out, "out")?;
        let name = unsafe { read_str(name, "name") }?;
        if or_fanin == 1 {
            return Err(fail(QdiStatus::InvalidArgument, "OR fan-in must be 0 or at least 2"));
        }
        let fixture: Fixture = name.parse().map_err(|e| fail(QdiStatus::Parse, e))?;
        let nl = build_fixture(fixture, (or_fanin > 0).then_some(or_fanin));
        unsafe { write_out(out, Box::into_raw(Box::new(QdiNetlist::new(nl)?))) };
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_from_json(json: *const c_char, out: *mut *mut QdiNetlist) -> QdiStatus {
    guard(|| {
        non_null(out, "out")?;
        let json = unsafe { read_str(json, "json") }?;
        let nl = Netlist::from_json(json).map_err(|e| fail(QdiStatus::Parse, e))?;
        unsafe { write_out(out, Box::into_raw(Box::new(QdiNetlist::new(nl)?))) };
        Ok(())
    })
}

/// Serializes the netlist; release the string with [`qdi_string_free`].
///
/// # Safety
/// `nl` must be a live netlist handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_to_json(nl: *const QdiNetlist, out: *mut *mut c_char) -> QdiStatus {
    guard(|| {
        non_null(nl, "netlist")?;
        non_null(out, "out")?;
        let text = unsafe { &(*nl).netlist }.to_json();
        unsafe { write_out(out, into_c_string(text)) };
        Ok(())
    })
}

/// # Safety
/// `nl` must be NULL or a pointer returned by a netlist constructor.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_free(nl: *mut QdiNetlist) {
    if !nl.is_null() {
        drop(unsafe { Box::from_raw(nl) });
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn qdi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Number of primary inputs of the netlist, or 0 for NULL.
///
/// # Safety
/// `nl` must be NULL or a live netlist handle.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_inputs(nl: *const QdiNetlist) -> usize {
    if nl.is_null() {
        0
    } else {
        unsafe { &(*nl).circuit }.n()
    }
}

/// Evaluates the first output pair under a valid codeword. Bit `i-1` of
/// `assignment` is the value of input `i`.
///
/// # Safety
/// `nl` must be a live netlist handle; `rail1` and `rail0` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_eval(
    nl: *const QdiNetlist,
    assignment: u32,
    rail1: *mut bool,
    rail0: *mut bool,
) -> QdiStatus {
    guard(|| {
        non_null(nl, "netlist")?;
        non_null(rail1, "rail1")?;
        non_null(rail0, "rail0")?;
        let c = unsafe { &(*nl).circuit };
        if c.n() < 32 && assignment >> c.n() != 0 {
            return Err(fail(
                QdiStatus::InvalidArgument,
                format!("assignment {assignment} out of range for {} inputs", c.n()),
            ));
        }
        let outs = c.eval(&Codeword::new(c.n(), assignment).rails()).map_err(|e| fail(QdiStatus::Analysis, e))?;
        let &(r1, r0) = outs.first().ok_or_else(|| fail(QdiStatus::Analysis, "netlist has no outputs"))?;
        unsafe {
            write_out(rail1, r1);
            write_out(rail0, r0);
        }
        Ok(())
    })
}

/// Counts the codewords whose transaction leaves an orphan in `phase`.
///
/// # Safety
/// `nl` must be a live netlist handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_orphan_rows(nl: *const QdiNetlist, phase: QdiPhase, out: *mut usize) -> QdiStatus {
    guard(|| {
        non_null(nl, "netlist")?;
        non_null(out, "out")?;
        let table = orphan_summary(unsafe { &(*nl).circuit }, DEFAULT_ANALYSIS_CAP)
            .map_err(|e| fail(QdiStatus::Analysis, e))?;
        unsafe { write_out(out, table.orphan_rows(self::phase(phase))) };
        Ok(())
    })
}

/// Full per-codeword orphan table for both phases as JSON.
///
/// # Safety
/// `nl` must be a live netlist handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_orphans_json(nl: *const QdiNetlist, out: *mut *mut c_char) -> QdiStatus {
    guard(|| {
        non_null(nl, "netlist")?;
        non_null(out, "out")?;
        let table = orphan_summary(unsafe { &(*nl).circuit }, DEFAULT_ANALYSIS_CAP)
            .map_err(|e| fail(QdiStatus::Analysis, e))?;
        let json = report::orphan_table_json(&table, &[Phase::Set, Phase::Reset]).to_string();
        unsafe { write_out(out, into_c_string(json)) };
        Ok(())
    })
}

/// Input/output indication class. `exhaustive` checks every proper input subset
/// instead of only the maximal ones.
///
/// # Safety
/// `nl` must be a live netlist handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdi_netlist_classify(
    nl: *const QdiNetlist,
    exhaustive: bool,
    out: *mut QdiIoClass,
) -> QdiStatus {
    guard(|| {
        non_null(nl, "netlist")?;
        non_null(out, "out")?;
        let mode = if exhaustive { SubsetMode::Exhaustive } else { SubsetMode::Maximal };
        let class = classify_indication(unsafe { &(*nl).circuit }, mode).map_err(|e| fail(QdiStatus::Analysis, e))?;
        let class = match class.io_class {
            IoClass::Strong => QdiIoClass::Strong,
            IoClass::Weak => QdiIoClass::Weak,
            IoClass::Early => QdiIoClass::Early,
        };
        unsafe { write_out(out, class) };
        Ok(())
    })
}
