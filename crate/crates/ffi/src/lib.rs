//! C interface: opaque handles, integer status codes and a per-thread last
//! error message. Strings returned by the library are freed with
//! `cl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cartierlab::cartier::{generic_stalk, li_auto, stalk_rank, CartierError, LIResult, Rank};
use cartierlab::cli::input::{self, InputFile};
use cartierlab::cli::{self, CliError, Cli};
use cartierlab::extensions::ExtensionPresentation;
use cartierlab::laurent::{bass_decompose, is_laurent_unit, LaurentElement};
use cartierlab::polycore::{Ideal, DEFAULT_PAIR_BUDGET};
use clap::Parser;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed description, polynomial or prime.
    Input = 2,
    /// The Groebner pair budget was exhausted.
    ResourceLimit = 3,
    /// The analysis itself failed.
    Analysis = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// The rank is not determined by the available data.
    Unknown = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// An `A ⊂ B` extension built from a description file.
pub struct ClExtension {
    ext: ExtensionPresentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: ClStatus, msg: impl Into<String>) -> ClStatus {
    set_error(msg);
    status
}

fn from_cli(e: CliError) -> ClStatus {
    let status = match e {
        CliError::Input(_) => ClStatus::Input,
        CliError::ResourceLimit(_) => ClStatus::ResourceLimit,
        CliError::Analysis(_) => ClStatus::Analysis,
    };
    fail(status, e.to_string())
}

fn from_cartier(e: CartierError) -> ClStatus {
    let status = if e.is_resource_limit() {
        ClStatus::ResourceLimit
    } else if matches!(e, CartierError::NotPrime(_)) {
        ClStatus::Input
    } else {
        ClStatus::Analysis
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting panics into `ClStatus::Panic`.
fn guard(f: impl FnOnce() -> ClStatus) -> ClStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(ClStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ClStatus> {
    if p.is_null() {
        return Err(fail(ClStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ClStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn budget_or_default(b: usize) -> usize {
    if b == 0 {
        DEFAULT_PAIR_BUDGET
    } else {
        b
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes were replaced")
        .into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an extension from TOML description text. `pair_budget` 0 selects
/// the default budget.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_extension_new(
    toml: *const c_char,
    pair_budget: usize,
    out: *mut *mut ClExtension,
) -> ClStatus {
    guard(|| {
        if out.is_null() {
            return fail(ClStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(toml) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let file = match input::parse_input(text) {
            Ok(InputFile::Extension(f)) => f,
            Ok(_) => return fail(ClStatus::Input, "expected an extension description"),
            Err(e) => return from_cli(e),
        };
        match input::build_extension(&file, budget_or_default(pair_budget), false) {
            Ok(ext) => {
                *out = Box::into_raw(Box::new(ClExtension { ext }));
                ClStatus::Ok
            }
            Err(e) => from_cli(e),
        }
    })
}

/// Releases an extension handle. Null is ignored.
///
/// # Safety
/// `h` must come from `cl_extension_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cl_extension_free(h: *mut ClExtension) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

fn write_rank(r: &LIResult, rank: *mut u64) -> ClStatus {
    match &r.rank {
        Rank::Known(k) => {
            unsafe { *rank = *k };
            ClStatus::Ok
        }
        Rank::Unknown(why) => fail(ClStatus::Unknown, why.clone()),
    }
}

/// Rank of LI(A, B) through the automatic route choice. Returns
/// `ClStatus::Unknown` when no route determines it.
///
/// # Safety
/// `h` must be a live handle; `rank` and `certified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_extension_li_rank(
    h: *const ClExtension,
    rank: *mut u64,
    certified: *mut bool,
) -> ClStatus {
    guard(|| {
        if h.is_null() || rank.is_null() || certified.is_null() {
            return fail(ClStatus::NullArgument, "null argument");
        }
        match li_auto(&(*h).ext, &[]) {
            Ok(r) => {
                *certified = r.certified;
                write_rank(&r, rank)
            }
            Err(e) => from_cartier(e),
        }
    })
}

/// Fiber component count and stalk rank at a maximal ideal given as
/// comma-separated generators; an empty string selects the generic point.
/// `stalk` receives `UINT64_MAX` when the stalk rank is not determined.
///
/// # Safety
/// `h` must be a live handle; `prime` a NUL-terminated string; the outputs
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cl_extension_stalk(
    h: *const ClExtension,
    prime: *const c_char,
    components: *mut u64,
    stalk: *mut u64,
) -> ClStatus {
    guard(|| {
        if h.is_null() || components.is_null() || stalk.is_null() {
            return fail(ClStatus::NullArgument, "null argument");
        }
        let text = match read_str(prime) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let ext = &(*h).ext;
        let gens: Vec<String> = text
            .split(',')
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect();
        let report = if gens.is_empty() {
            generic_stalk(ext)
        } else {
            match Ideal::parse(ext.a_ring(), &gens) {
                Ok(p) => stalk_rank(ext, &p),
                Err(e) => return fail(ClStatus::Input, e.to_string()),
            }
        };
        match report {
            Ok(s) => match s.fiber_components.known() {
                Some(c) => {
                    *components = c as u64;
                    *stalk = s.stalk_rank.unwrap_or(u64::MAX);
                    ClStatus::Ok
                }
                None => fail(ClStatus::Unknown, s.fiber_components.to_string()),
            },
            Err(e) => from_cartier(e),
        }
    })
}

/// Tests whether a Laurent polynomial in `var` over the base described by
/// `base_toml` is a unit. When it is and `exponents` is non-null, writes up
/// to `cap` exponents (one per primitive idempotent) and their count.
///
/// # Safety
/// String arguments must be NUL-terminated; `is_unit` writable;
/// `exponents` null or valid for `cap` writes; `count` null or writable.
#[no_mangle]
pub unsafe extern "C" fn cl_laurent_unit(
    base_toml: *const c_char,
    var: *const c_char,
    element: *const c_char,
    is_unit: *mut bool,
    exponents: *mut i64,
    cap: usize,
    count: *mut usize,
) -> ClStatus {
    guard(|| {
        if is_unit.is_null() {
            return fail(ClStatus::NullArgument, "null argument");
        }
        let (base_text, var, element) = match (read_str(base_toml), read_str(var), read_str(element)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        let file = match input::parse_input(base_text) {
            Ok(InputFile::Base(f)) => f,
            Ok(_) => return fail(ClStatus::Input, "expected a [base] description"),
            Err(e) => return from_cli(e),
        };
        let base = match input::build_base(&file, DEFAULT_PAIR_BUDGET) {
            Ok(b) => b,
            Err(e) => return from_cli(e),
        };
        let x = match LaurentElement::parse(&base, var, element) {
            Ok(x) => x,
            Err(e) => return fail(ClStatus::Input, e.to_string()),
        };
        let unit = match is_laurent_unit(&x) {
            Ok(u) => u,
            Err(e) => return fail(ClStatus::Analysis, e.to_string()),
        };
        *is_unit = unit;
        if !count.is_null() {
            *count = 0;
        }
        if unit && !exponents.is_null() {
            let d = match bass_decompose(&x) {
                Ok(d) => d,
                Err(e) => return fail(ClStatus::Analysis, e.to_string()),
            };
            for (i, n) in d.exponents.iter().take(cap).enumerate() {
                *exponents.add(i) = *n;
            }
            if !count.is_null() {
                *count = d.exponents.len();
            }
        }
        ClStatus::Ok
    })
}

/// Runs a command line (without the program name) and returns the JSON
/// report in `report`, to be freed with `cl_string_free`. The return value
/// is the command's exit code, or -1 when the arguments cannot be read.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_run(argc: usize, argv: *const *const c_char, report: *mut *mut c_char) -> i32 {
    clear_error();
    if report.is_null() || (argc > 0 && argv.is_null()) {
        set_error("null argument");
        return -1;
    }
    *report = ptr::null_mut();
    let mut args = vec!["cartierlab".to_string()];
    for i in 0..argc {
        match read_str(*argv.add(i)) {
            Ok(s) => args.push(s.to_string()),
            Err(_) => return -1,
        }
    }
    let outcome = catch_unwind(|| {
        let parsed = Cli::try_parse_from(&args).map_err(|e| e.to_string())?;
        let env = std::env::var(cli::BUDGET_ENV).ok();
        Ok::<_, String>(cli::run(&parsed, env.as_deref()))
    });
    match outcome {
        Ok(Ok((r, code))) => {
            *report = into_c_string(r.to_json());
            code
        }
        Ok(Err(msg)) => {
            set_error(msg);
            2
        }
        Err(_) => {
            set_error("internal panic");
            -1
        }
    }
}
