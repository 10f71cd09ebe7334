//! C ABI over the `radmom` library.
//!
//! Operators and hydrogen states are exposed as opaque handles that the
//! caller releases with the matching `_free` function. Every fallible call
//! returns a [`RadmomStatus`]; on failure a description can be fetched with
//! [`radmom_last_error`]. Panics never cross the boundary.
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the access described on
//! each function. Handles must come from this library and be freed once.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_complex::Complex64;
use radmom::angular::{build_quadrature, BasisIndex, BasisTruncation};
use radmom::hydrogen::{self, HydrogenState};
use radmom::operators::{self, Axis, OperatorMatrix};
use radmom::transforms;
use radmom::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadmomStatus {
    Ok = 0,
    InvalidArgument = 1,
    Accuracy = 2,
    Domain = 3,
    Unsupported = 4,
    Io = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadmomAxis {
    X = 0,
    Y = 1,
    Z = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadmomOperatorKind {
    /// Orbital angular momentum L_i.
    AngularMomentum = 0,
    /// Direction cosine x_i / r.
    DirectionCosine = 1,
    /// Geometric momentum r Π_i.
    GeometricMomentum = 2,
}

/// Matrix of one operator on a truncated spherical-harmonic basis.
pub struct RadmomOperator {
    inner: OperatorMatrix,
}

/// A hydrogen bound state with its units.
pub struct RadmomHydrogen {
    inner: HydrogenState,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> RadmomStatus {
    match e {
        Error::InvalidArgument(_) => RadmomStatus::InvalidArgument,
        Error::Accuracy { .. } => RadmomStatus::Accuracy,
        Error::Domain(_) => RadmomStatus::Domain,
        Error::Unsupported(_) => RadmomStatus::Unsupported,
        Error::Io(_) => RadmomStatus::Io,
    }
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard<F>(f: F) -> RadmomStatus
where
    F: FnOnce() -> Result<(), RadmomError>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            RadmomStatus::Ok
        }
        Ok(Err(RadmomError::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(RadmomError::Null(what))) => {
            set_error(format!("null pointer passed for {what}"));
            RadmomStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic".into());
            RadmomStatus::Panic
        }
    }
}

enum RadmomError {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for RadmomError {
    fn from(e: Error) -> Self {
        RadmomError::Lib(e)
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, RadmomError> {
    p.as_mut().ok_or(RadmomError::Null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, RadmomError> {
    p.as_ref().ok_or(RadmomError::Null(what))
}

fn axis(a: RadmomAxis) -> Axis {
    match a {
        RadmomAxis::X => Axis::X,
        RadmomAxis::Y => Axis::Y,
        RadmomAxis::Z => Axis::Z,
    }
}

/// Copies the message of the last failed call on this thread into `buf`
/// (NUL-terminated, truncated to `len` bytes) and returns the full length
/// of the message, excluding the terminator.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn radmom_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds one operator on the basis l ≤ `l_max`, with the smallest exact
/// angular quadrature. ħ = 1.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_build(
    kind: RadmomOperatorKind,
    axis_id: RadmomAxis,
    l_max: u32,
    out: *mut *mut RadmomOperator,
) -> RadmomStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let basis = BasisTruncation::new(l_max);
        let a = axis(axis_id);
        let inner = match kind {
            RadmomOperatorKind::AngularMomentum => operators::build_angular_momentum(a, basis),
            RadmomOperatorKind::DirectionCosine | RadmomOperatorKind::GeometricMomentum => {
                let n = l_max as usize;
                let q = build_quadrature((n + 1).max(2), 2 * n + 2)?;
                if kind == RadmomOperatorKind::DirectionCosine {
                    operators::build_direction_cosine(a, basis, &q)?
                } else {
                    operators::build_geometric_momentum(a, basis, &q)?
                }
            }
        };
        *out = Box::into_raw(Box::new(RadmomOperator { inner }));
        Ok(())
    })
}

/// Releases an operator. Null is ignored.
///
/// # Safety
/// `op` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_free(op: *mut RadmomOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Matrix dimension (l_max + 1)², or 0 for a null handle.
///
/// # Safety
/// `op` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_dim(op: *const RadmomOperator) -> usize {
    op.as_ref().map_or(0, |o| o.inner.dim())
}

/// Number of top l-shells whose rows and columns carry truncation error.
///
/// # Safety
/// `op` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_contaminated_shells(op: *const RadmomOperator) -> u32 {
    op.as_ref().map_or(0, |o| o.inner.contaminated_shells)
}

/// ⟨l' m'| A |l m⟩.
///
/// # Safety
/// `op` must be a live handle; `re` and `im` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_element(
    op: *const RadmomOperator,
    l_bra: u32,
    m_bra: i32,
    l_ket: u32,
    m_ket: i32,
    re: *mut f64,
    im: *mut f64,
) -> RadmomStatus {
    guard(|| {
        let op = in_ref(op, "op")?;
        let (re, im) = (out_ref(re, "re")?, out_ref(im, "im")?);
        let bra = BasisIndex::new(l_bra, m_bra)?;
        let ket = BasisIndex::new(l_ket, m_ket)?;
        if !op.inner.basis.contains(bra) || !op.inner.basis.contains(ket) {
            return Err(Error::InvalidArgument(format!(
                "index outside the basis l <= {}",
                op.inner.basis.l_max
            ))
            .into());
        }
        let z: Complex64 = op.inner.element(bra, ket);
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// [A, B] as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles; `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_commutator(
    a: *const RadmomOperator,
    b: *const RadmomOperator,
    out: *mut *mut RadmomOperator,
) -> RadmomStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let (a, b) = (in_ref(a, "a")?, in_ref(b, "b")?);
        let inner = operators::commutator(&a.inner, &b.inner)?;
        *out = Box::into_raw(Box::new(RadmomOperator { inner }));
        Ok(())
    })
}

/// Frobenius norm of the uncontaminated block.
///
/// # Safety
/// `op` must be a live handle; `norm` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn radmom_operator_clean_norm(op: *const RadmomOperator, norm: *mut f64) -> RadmomStatus {
    guard(|| {
        let op = in_ref(op, "op")?;
        *out_ref(norm, "norm")? = op.inner.clean_norm();
        Ok(())
    })
}

/// Hydrogen state |n l m⟩ with Bohr radius `a0` and ħ = `hbar`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn radmom_hydrogen_new(
    n: u32,
    l: u32,
    m: i32,
    a0: f64,
    hbar: f64,
    out: *mut *mut RadmomHydrogen,
) -> RadmomStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let inner = HydrogenState::new(n, l, m)?.with_units(a0, hbar)?;
        *out = Box::into_raw(Box::new(RadmomHydrogen { inner }));
        Ok(())
    })
}

/// Releases a hydrogen state. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn radmom_hydrogen_free(h: *mut RadmomHydrogen) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// ψ(r, θ, φ).
///
/// # Safety
/// `h` must be a live handle; `re`, `im` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn radmom_hydrogen_psi(
    h: *const RadmomHydrogen,
    r: f64,
    theta: f64,
    phi: f64,
    re: *mut f64,
    im: *mut f64,
) -> RadmomStatus {
    guard(|| {
        let h = in_ref(h, "h")?;
        let (re, im) = (out_ref(re, "re")?, out_ref(im, "im")?);
        let z = hydrogen::psi_value(&h.inner, r, theta, phi)?;
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// ⟨1/r⟩.
///
/// # Safety
/// `h` must be a live handle; `value` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn radmom_hydrogen_inverse_r(h: *const RadmomHydrogen, value: *mut f64) -> RadmomStatus {
    guard(|| {
        let h = in_ref(h, "h")?;
        *out_ref(value, "value")? = hydrogen::expectation_inverse_r(&h.inner)?;
        Ok(())
    })
}

/// Momentum amplitude c(p) of an s-state (real).
///
/// # Safety
/// `h` must be a live handle; `value` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn radmom_hydrogen_momentum_amplitude(
    h: *const RadmomHydrogen,
    p: f64,
    value: *mut f64,
) -> RadmomStatus {
    guard(|| {
        let h = in_ref(h, "h")?;
        *out_ref(value, "value")? = hydrogen::momentum_amplitude(&h.inner, p)?.re;
        Ok(())
    })
}

/// Marginal density of p_z at `count` strictly increasing points.
///
/// # Safety
/// `h` must be a live handle; `pz` readable and `values` writable for
/// `count` doubles.
#[no_mangle]
pub unsafe extern "C" fn radmom_hydrogen_marginal_pz(
    h: *const RadmomHydrogen,
    pz: *const f64,
    count: usize,
    values: *mut f64,
) -> RadmomStatus {
    guard(|| {
        let h = in_ref(h, "h")?;
        if count == 0 {
            return Ok(());
        }
        in_ref(pz, "pz")?;
        out_ref(values, "values")?;
        let grid = slice::from_raw_parts(pz, count);
        let curve = hydrogen::marginal_pz(&h.inner, grid)?;
        slice::from_raw_parts_mut(values, count).copy_from_slice(&curve.values);
        Ok(())
    })
}

/// Unit-normalized Q_l0(γ).
///
/// # Safety
/// `re`, `im` must be valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn radmom_q_coeff(l: u32, gamma: f64, re: *mut f64, im: *mut f64) -> RadmomStatus {
    guard(|| {
        let (re, im) = (out_ref(re, "re")?, out_ref(im, "im")?);
        let z = transforms::q_coeff(l, gamma)?;
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// ½√π sech(πγ/2).
#[no_mangle]
pub extern "C" fn radmom_q00_analytic(gamma: f64) -> f64 {
    transforms::q00_analytic(gamma)
}

/// γ times the difference of the p_z and Π_z ground-state densities.
#[no_mangle]
pub extern "C" fn radmom_combined_z(gamma: f64) -> f64 {
    gamma * transforms::density_difference(gamma.abs())
}
