//! C ABI over the growth-factor library.
//!
//! Matrices are opaque `HgMatrix` handles created by `hg_matrix_*` or
//! `hg_extremal` and released with `hg_matrix_free`. Every fallible call
//! returns an `HgStatus`; on failure `hg_last_error_message` describes the
//! error for the calling thread until its next call into this library.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use higham_growth::classes::classify;
use higham_growth::elimination::growth_factor;
use higham_growth::generators::{diag_lower_example, extremal_pair};
use higham_growth::harness::{certify_matrix, emit_matrix, parse_matrix};
use higham_growth::tolerances::Tolerances;
use higham_growth::{ComplexDenseMatrix, Error, C64};

/// Opaque matrix handle.
pub struct HgMatrix(ComplexDenseMatrix);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    InvalidUtf8 = 3,
    DimensionMismatch = 10,
    NonFinite = 11,
    NonHermitianInput = 12,
    NotPositiveDefinite = 13,
    SingularLeadingBlock = 14,
    ZeroPivot = 15,
    DomainError = 16,
    KappaExceeded = 17,
    NotInClass = 18,
    AngleOutOfRange = 19,
    ParseError = 20,
    ConfigError = 21,
    IoError = 22,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HgComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HgGrowth {
    pub m0: f64,
    pub rho: f64,
    pub rho_with_initial: f64,
    /// 1-based stage attaining `rho`.
    pub argmax_stage: usize,
    /// Number of stages, `n - 1`.
    pub stages: usize,
}

/// Fields that do not apply (condition numbers of indefinite parts) are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HgClassification {
    pub is_higham: bool,
    pub is_ad: bool,
    pub lambda_min_b: f64,
    pub lambda_min_c: f64,
    pub kappa_b: f64,
    pub kappa_c: f64,
    pub omega: f64,
    pub symmetry_defect: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HgCertifySummary {
    pub is_member: bool,
    pub certificates: usize,
    pub binding_violations: usize,
    /// Smallest slack over binding certificates; +inf when there are none.
    pub worst_slack: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> HgStatus {
    match err {
        Error::DimensionMismatch(_) => HgStatus::DimensionMismatch,
        Error::NonFinite { .. } => HgStatus::NonFinite,
        Error::NonHermitianInput { .. } => HgStatus::NonHermitianInput,
        Error::NotPositiveDefinite { .. } => HgStatus::NotPositiveDefinite,
        Error::SingularLeadingBlock { .. } => HgStatus::SingularLeadingBlock,
        Error::ZeroPivot { .. } => HgStatus::ZeroPivot,
        Error::DomainError(_) => HgStatus::DomainError,
        Error::KappaExceeded { .. } => HgStatus::KappaExceeded,
        Error::NotInClass(_) => HgStatus::NotInClass,
        Error::AngleOutOfRange { .. } => HgStatus::AngleOutOfRange,
        Error::Parse { .. } => HgStatus::ParseError,
        Error::Config(_) => HgStatus::ConfigError,
        Error::Io(_) => HgStatus::IoError,
    }
}

enum Failure {
    Status(HgStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null() -> Failure {
    Failure::Status(HgStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, translating errors and panics into a status and the thread's
/// last-error message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgStatus::Ok,
        Ok(Err(Failure::Status(status, message))) => {
            set_error(message);
            status
        }
        Ok(Err(Failure::Lib(err))) => {
            set_error(err.to_string());
            status_of(&err)
        }
        Err(_) => {
            set_error("internal panic".into());
            HgStatus::Panic
        }
    }
}

unsafe fn matrix<'a>(m: *const HgMatrix) -> Result<&'a ComplexDenseMatrix, Failure> {
    m.as_ref().map(|m| &m.0).ok_or_else(null)
}

unsafe fn store(out: *mut *mut HgMatrix, m: ComplexDenseMatrix) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(HgMatrix(m)));
    Ok(())
}

/// Creates a `rows x cols` matrix from `rows * cols` row-major entries.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const HgComplex,
    out: *mut *mut HgMatrix,
) -> HgStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null());
        }
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure::Status(HgStatus::DimensionMismatch, "size overflow".into()))?;
        let data = std::slice::from_raw_parts(entries, len);
        let m = ComplexDenseMatrix::new(
            rows,
            cols,
            data.iter().map(|z| C64::new(z.re, z.im)).collect(),
        )?;
        store(out, m)
    })
}

/// Parses a NUL-terminated string in the matrix file format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_parse(text: *const c_char, out: *mut *mut HgMatrix) -> HgStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure::Status(HgStatus::InvalidUtf8, e.to_string()))?;
        store(out, parse_matrix(s)?)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_free(m: *mut HgMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Rows of `m`, or 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_rows(m: *const HgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// Columns of `m`, or 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_cols(m: *const HgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry `(i, j)`, 0-based.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_get(
    m: *const HgMatrix,
    i: usize,
    j: usize,
    out: *mut HgComplex,
) -> HgStatus {
    guard(|| {
        let a = matrix(m)?;
        if out.is_null() {
            return Err(null());
        }
        if i >= a.rows() || j >= a.cols() {
            return Err(Failure::Status(
                HgStatus::DimensionMismatch,
                format!("index ({i}, {j}) outside {}x{}", a.rows(), a.cols()),
            ));
        }
        let z = a[(i, j)];
        *out = HgComplex { re: z.re, im: z.im };
        Ok(())
    })
}

/// Serializes `m` in the matrix file format; release with `hg_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_matrix_to_string(
    m: *const HgMatrix,
    out: *mut *mut c_char,
) -> HgStatus {
    guard(|| {
        let text = emit_matrix(matrix(m)?);
        if out.is_null() {
            return Err(null());
        }
        *out = CString::new(text)
            .map_err(|e| Failure::Status(HgStatus::InvalidUtf8, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Releases a string from `hg_matrix_to_string`; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The 2x2 extremal matrix: off-diagonal `t(1-i)` when `plus`, else `t(1+i)`,
/// with `t = (omega-1)/(omega+1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_extremal(omega: f64, plus: bool, out: *mut *mut HgMatrix) -> HgStatus {
    guard(|| {
        let (minus, plus_m) = extremal_pair(omega)?;
        store(
            out,
            if plus {
                plus_m.into_matrix()
            } else {
                minus.into_matrix()
            },
        )
    })
}

/// `(1+i) diag(omega, 1, ..., 1)` of size `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_diag_lower(omega: f64, n: usize, out: *mut *mut HgMatrix) -> HgStatus {
    guard(|| store(out, diag_lower_example(omega, n)?.into_matrix()))
}

/// Growth report of pivotless elimination on `m`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_growth(m: *const HgMatrix, out: *mut HgGrowth) -> HgStatus {
    guard(|| {
        let report = growth_factor(matrix(m)?)?;
        if out.is_null() {
            return Err(null());
        }
        *out = HgGrowth {
            m0: report.m0,
            rho: report.rho,
            rho_with_initial: report.rho_with_initial,
            argmax_stage: report.argmax_stage,
            stages: report.rho_stage.len(),
        };
        Ok(())
    })
}

/// Writes the stage-wise growth ratios into `buf`. `written` receives the
/// number of stages; `BufferTooSmall` is returned (with `written` set) when
/// `len` is shorter.
///
/// # Safety
/// `m` must be a live handle, `buf` must hold `len` writable values (or be
/// null with `len == 0`), and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_growth_stages(
    m: *const HgMatrix,
    buf: *mut f64,
    len: usize,
    written: *mut usize,
) -> HgStatus {
    guard(|| {
        let report = growth_factor(matrix(m)?)?;
        if written.is_null() {
            return Err(null());
        }
        let stages = report.rho_stage;
        *written = stages.len();
        if len < stages.len() {
            return Err(Failure::Status(
                HgStatus::BufferTooSmall,
                format!("buffer of {len} for {} stages", stages.len()),
            ));
        }
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(stages.as_ptr(), buf, stages.len());
        Ok(())
    })
}

/// Class membership of `m`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_classify(m: *const HgMatrix, out: *mut HgClassification) -> HgStatus {
    guard(|| {
        let r = classify(matrix(m)?)?;
        if out.is_null() {
            return Err(null());
        }
        *out = HgClassification {
            is_higham: r.is_higham,
            is_ad: r.is_ad,
            lambda_min_b: r.lambda_min_b,
            lambda_min_c: r.lambda_min_c,
            kappa_b: r.kappa_b.unwrap_or(f64::NAN),
            kappa_c: r.kappa_c.unwrap_or(f64::NAN),
            omega: r.omega.unwrap_or(f64::NAN),
            symmetry_defect: r.symmetry_defect,
        };
        Ok(())
    })
}

/// Evaluates every applicable certificate on `m`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_certify(m: *const HgMatrix, out: *mut HgCertifySummary) -> HgStatus {
    guard(|| {
        let c = certify_matrix(matrix(m)?, &Tolerances::default())?;
        if out.is_null() {
            return Err(null());
        }
        *out = HgCertifySummary {
            is_member: c.is_member(),
            certificates: c.certificates.len(),
            binding_violations: c.binding_violations,
            worst_slack: c
                .certificates
                .iter()
                .filter(|c| c.binding)
                .map(|c| c.worst_slack())
                .fold(f64::INFINITY, f64::min),
        };
        Ok(())
    })
}

/// Message of the calling thread's last failed call, or null. The pointer is
/// valid until the thread's next call into this library.
#[no_mangle]
pub extern "C" fn hg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
