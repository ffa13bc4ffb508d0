//! C ABI over the `kleinian` crate.
//!
//! Characters and battery results live behind opaque handles that the caller
//! frees with the matching `*_free` function. Every fallible call returns a
//! [`KlStatus`]; the message for the most recent failure on the calling
//! thread is available from [`kl_last_error`]. Strings returned by the
//! library are freed with [`kl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kleinian::inequalities::{battery, Assumptions, BatteryReport, FOrder};
use kleinian::oracle::realize;
use kleinian::recursions::{subgroup_character, SubgroupFamily};
use kleinian::sympoly::identities::{verify_printed_identities, Status};
use kleinian::{Complex, Error, Matrix2, PrincipalCharacter};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    NotApplicable = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlComplex {
    pub re: f64,
    pub im: f64,
}

/// Row-major `[[a, b], [c, d]]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlMatrix {
    pub a: KlComplex,
    pub b: KlComplex,
    pub c: KlComplex,
    pub d: KlComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlFamily {
    PowerOfF = 0,
    ConjugatePower = 1,
    ProductPower = 2,
    CommutatorPower = 3,
}

/// Opaque principal character `(γ, β(f), β(g))`.
pub struct KlCharacter(PrincipalCharacter);

/// Opaque result of [`kl_battery_run`].
pub struct KlBattery(BatteryReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: KlStatus, msg: impl Into<String>) -> KlStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> KlStatus {
    let status = match e {
        Error::DegenerateCharacter => KlStatus::Degenerate,
        Error::InapplicableFamily(_) | Error::EllipticCollapse { .. } | Error::NotOrderTwo(_) => {
            KlStatus::NotApplicable
        }
        _ => KlStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `body`, turning a panic into `Internal`.
fn guard(body: impl FnOnce() -> KlStatus) -> KlStatus {
    catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| fail(KlStatus::Internal, "internal panic"))
}

fn to_complex(z: KlComplex) -> Option<Complex> {
    (z.re.is_finite() && z.im.is_finite()).then(|| Complex::new(z.re, z.im))
}

fn from_complex(z: Complex) -> KlComplex {
    KlComplex { re: z.re, im: z.im }
}

fn from_matrix(m: &Matrix2) -> KlMatrix {
    KlMatrix { a: from_complex(m.a), b: from_complex(m.b), c: from_complex(m.c), d: from_complex(m.d) }
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a character handle. Components must be finite.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_character_new(
    gamma: KlComplex,
    beta_f: KlComplex,
    beta_g: KlComplex,
    out: *mut *mut KlCharacter,
) -> KlStatus {
    guard(|| {
        if out.is_null() {
            return fail(KlStatus::NullPointer, "out is null");
        }
        match (to_complex(gamma), to_complex(beta_f), to_complex(beta_g)) {
            (Some(g), Some(b), Some(bt)) => {
                let handle = Box::new(KlCharacter(PrincipalCharacter::new(g, b, bt)));
                *out = Box::into_raw(handle);
                KlStatus::Ok
            }
            _ => fail(KlStatus::InvalidArgument, "non-finite component"),
        }
    })
}

/// Reads back the three components.
///
/// # Safety
/// `ch` must be a live handle or null; each out pointer must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn kl_character_components(
    ch: *const KlCharacter,
    gamma: *mut KlComplex,
    beta_f: *mut KlComplex,
    beta_g: *mut KlComplex,
) -> KlStatus {
    if ch.is_null() || gamma.is_null() || beta_f.is_null() || beta_g.is_null() {
        return fail(KlStatus::NullPointer, "null argument");
    }
    let c = &(*ch).0;
    *gamma = from_complex(c.gamma);
    *beta_f = from_complex(c.beta_f);
    *beta_g = from_complex(c.beta_g);
    KlStatus::Ok
}

/// # Safety
/// `ch` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kl_character_free(ch: *mut KlCharacter) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// Runs the inequality battery to `depth`. `f_order` is the known order of
/// `f`: positive for finite, `0` for infinite, negative for unknown.
///
/// # Safety
/// `ch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kl_battery_run(
    ch: *const KlCharacter,
    depth: usize,
    f_order: i32,
    g_order2: bool,
    out: *mut *mut KlBattery,
) -> KlStatus {
    guard(|| {
        if ch.is_null() || out.is_null() {
            return fail(KlStatus::NullPointer, "null argument");
        }
        let f_order = match f_order {
            k if k < 0 => None,
            0 => Some(FOrder::Infinite),
            k => Some(FOrder::Finite(k as u32)),
        };
        let a = Assumptions { f_order, g_order2 };
        *out = Box::into_raw(Box::new(KlBattery(battery(&(*ch).0, &a, depth))));
        KlStatus::Ok
    })
}

/// Verdict code: `0` passes, `2` unconditional violation, `3` conditional
/// violation, `4` degenerate; `-1` for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_battery_verdict(b: *const KlBattery) -> i32 {
    if b.is_null() {
        return -1;
    }
    (*b).0.verdict.code() as i32
}

/// Number of individual inequality reports.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_battery_report_count(b: *const KlBattery) -> usize {
    if b.is_null() {
        return 0;
    }
    (*b).0.reports.len()
}

/// The full report as JSON. Free the string with [`kl_string_free`].
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kl_battery_json(b: *const KlBattery, out: *mut *mut c_char) -> KlStatus {
    guard(|| {
        if b.is_null() || out.is_null() {
            return fail(KlStatus::NullPointer, "null argument");
        }
        match CString::new((*b).0.to_json()) {
            Ok(text) => *out = text.into_raw(),
            Err(_) => return fail(KlStatus::Internal, "serialization failed"),
        }
        KlStatus::Ok
    })
}

/// # Safety
/// `b` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kl_battery_free(b: *mut KlBattery) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Explicit matrices with the handle's character, plus the largest deviation
/// of their recomputed character.
///
/// # Safety
/// `ch` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn kl_realize(
    ch: *const KlCharacter,
    f: *mut KlMatrix,
    g: *mut KlMatrix,
    residual: *mut f64,
) -> KlStatus {
    guard(|| {
        if ch.is_null() || f.is_null() || g.is_null() || residual.is_null() {
            return fail(KlStatus::NullPointer, "null argument");
        }
        match realize(&(*ch).0) {
            Ok(r) => {
                *f = from_matrix(&r.f);
                *g = from_matrix(&r.g);
                *residual = r.residual;
                KlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Character of the `n`th subgroup of `family`, as a new handle.
///
/// # Safety
/// `ch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kl_subgroup_character(
    ch: *const KlCharacter,
    family: KlFamily,
    n: usize,
    out: *mut *mut KlCharacter,
) -> KlStatus {
    guard(|| {
        if ch.is_null() || out.is_null() {
            return fail(KlStatus::NullPointer, "null argument");
        }
        let family = match family {
            KlFamily::PowerOfF => SubgroupFamily::PowerOfF,
            KlFamily::ConjugatePower => SubgroupFamily::ConjugatePower,
            KlFamily::ProductPower => SubgroupFamily::ProductPower,
            KlFamily::CommutatorPower => SubgroupFamily::CommutatorPower,
        };
        match subgroup_character(&(*ch).0, family, n) {
            Ok(sub) => {
                *out = Box::into_raw(Box::new(KlCharacter(sub)));
                KlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Number of printed trace identities that fail exact comparison (0 when
/// everything matches).
#[no_mangle]
pub extern "C" fn kl_verify_identities() -> usize {
    catch_unwind(|| {
        verify_printed_identities().iter().filter(|c| c.status == Status::Fail).count()
    })
    .unwrap_or(usize::MAX)
}
