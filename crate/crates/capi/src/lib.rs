//! C ABI for the gerbey Fourier-Mukai calculator.
//!
//! Every function is re-entrant and thread-safe: handles are immutable once
//! created and all state lives behind the opaque [`FmcKernel`] pointer. The
//! conventions are:
//!
//! - functions return an [`FmcStatus`]; results travel through out-pointers
//!   that are written only on [`FmcStatus::Ok`];
//! - any null required pointer yields [`FmcStatus::NullPointer`];
//! - malformed scalar inputs yield [`FmcStatus::InvalidArgument`];
//! - mathematically refused operations yield [`FmcStatus::MathDomain`];
//! - kernels returned through `*mut *mut FmcKernel` are owned by the caller
//!   and must be released with [`fmc_kernel_free`].
//!
//! The matching header is generated into `include/fmcalc.h` at build time.

use std::os::raw::c_char;

use fmcalc::chow::{fiber_restrict, DivisorClass, Generator, IntersectionTable, ProductSpace};
use fmcalc::grr::{euler_char, gerbey_rr_h0};
use fmcalc::kernel::{
    convolve, determinant_data, kernel_pushforward, line_bundle_kernel, pic_target_curve,
    twisted_shadow, universal_pic_kernel,
};
use fmcalc::torsor::{derived_equivalent, AutModel, TorsorGroup};
use fmcalc::{BrauerClass, CurveId, FmKernel, GerbeyCurve};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmcStatus {
    /// The call succeeded and all out-pointers are filled.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A scalar argument was outside its domain (zero group order,
    /// unknown automorphism model, bad factor index, ...).
    InvalidArgument = 2,
    /// The operation itself refused (nonpositive moduli degree, genus
    /// other than one, higher-rank dual, mismatched curves, ...).
    MathDomain = 3,
}

/// Automorphism model used by [`fmc_derived_equivalent`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmcAut {
    /// Multiplication by +1 and -1.
    PlusMinusOne = 0,
    /// Multiplication by +1 only.
    Trivial = 1,
}

/// Opaque handle to an integral kernel. Not repr(C) on purpose: the layout
/// is private and callers only ever hold pointers.
pub struct FmcKernel(FmKernel);

/// Returns a static, NUL-terminated description of a status code. Never
/// null; the string must not be freed.
#[no_mangle]
pub extern "C" fn fmc_status_message(status: FmcStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        FmcStatus::Ok => b"ok\0",
        FmcStatus::NullPointer => b"a required pointer argument was null\0",
        FmcStatus::InvalidArgument => b"an argument was outside its domain\0",
        FmcStatus::MathDomain => b"the operation is mathematically refused\0",
    };
    message.as_ptr() as *const c_char
}

/// Writes `value` through `out` when `out` is non-null, returning `Ok`.
fn write_out<T>(out: *mut T, value: T) -> FmcStatus {
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    unsafe { out.write(value) };
    FmcStatus::Ok
}

fn base_curve() -> GerbeyCurve {
    GerbeyCurve::genus_one(CurveId::new("C"), BrauerClass::trivial())
}

fn pair_space() -> ProductSpace {
    ProductSpace::pair(CurveId::new("C"), CurveId::new("C'"))
}

/// The divisor class of the degree-`d` universal bundle on the pair:
/// the graph plus `d - 1` fibers of the second factor.
fn universal_pair_class(d: i64) -> DivisorClass {
    DivisorClass::new(
        pair_space(),
        [(Generator::graph(0, 1), 1), (Generator::point(1), d - 1)],
    )
    .expect("the universal class is well-formed on the pair")
}

unsafe fn kernel_ref<'a>(k: *const FmcKernel) -> Option<&'a FmKernel> {
    k.as_ref().map(|k| &k.0)
}

fn boxed(kernel: FmKernel) -> *mut FmcKernel {
    Box::into_raw(Box::new(FmcKernel(kernel)))
}

/// Order of the class `value` in the cyclic group of order `order`.
///
/// # Safety
/// `out` must be valid for writing one `u64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_element_order(order: u64, value: u64, out: *mut u64) -> FmcStatus {
    let group = match TorsorGroup::new(order) {
        Ok(group) => group,
        Err(_) => return FmcStatus::InvalidArgument,
    };
    write_out(out, group.class(value).element_order())
}

/// Class of the degree-`d` Picard construction applied to `value`.
///
/// # Safety
/// `out` must be valid for writing one `u64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_pic_class(order: u64, value: u64, d: i64, out: *mut u64) -> FmcStatus {
    let group = match TorsorGroup::new(order) {
        Ok(group) => group,
        Err(_) => return FmcStatus::InvalidArgument,
    };
    write_out(out, group.class(value).pic_class(d).value())
}

/// Decides derived equivalence of two classes in the cyclic group of order
/// `order` under the chosen automorphism model. On equivalence, the witness
/// decomposition is written through `out_multiplier` and `out_a` when those
/// pointers are non-null.
///
/// # Safety
/// `out_equivalent` must be valid for writing one `bool`; `out_multiplier`
/// and `out_a` must each be null or valid for writing one `u64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_derived_equivalent(
    order: u64,
    source: u64,
    target: u64,
    aut: FmcAut,
    out_equivalent: *mut bool,
    out_multiplier: *mut u64,
    out_a: *mut u64,
) -> FmcStatus {
    if out_equivalent.is_null() {
        return FmcStatus::NullPointer;
    }
    let group = match TorsorGroup::new(order) {
        Ok(group) => group,
        Err(_) => return FmcStatus::InvalidArgument,
    };
    let model = match aut {
        FmcAut::PlusMinusOne => AutModel::plus_minus_one(group.clone()),
        FmcAut::Trivial => AutModel::trivial(group.clone()),
    };
    let decision = match derived_equivalent(&group.class(source), &group.class(target), &model) {
        Ok(decision) => decision,
        Err(_) => return FmcStatus::MathDomain,
    };
    out_equivalent.write(decision.equivalent);
    if let Some(witness) = decision.witness {
        if !out_multiplier.is_null() {
            out_multiplier.write(witness.multiplier);
        }
        if !out_a.is_null() {
            out_a.write(witness.a);
        }
    }
    FmcStatus::Ok
}

/// Section count of a degree-`degree` line bundle on a gerbey curve of the
/// given genus (`brauer_trivial` controls the degree-zero case).
///
/// # Safety
/// `out` must be valid for writing one `u64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_rr_h0(
    genus: u64,
    degree: i64,
    brauer_trivial: bool,
    out: *mut u64,
) -> FmcStatus {
    match gerbey_rr_h0(genus, degree, brauer_trivial) {
        Ok(h0) => write_out(out, h0),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Euler characteristic `degree - genus + 1` of a line bundle. Total.
#[no_mangle]
pub extern "C" fn fmc_euler_char(genus: u64, degree: i64) -> i64 {
    euler_char(genus, degree)
}

/// Degree of the squared universal class on the pair (evaluates to
/// `2d - 2`, computed symbolically).
///
/// # Safety
/// `out` must be valid for writing one `i64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_pair_c1_squared(d: i64, out: *mut i64) -> FmcStatus {
    let square = match universal_pair_class(d).power(2, &IntersectionTable::STANDARD) {
        Ok(square) => square,
        Err(_) => return FmcStatus::MathDomain,
    };
    let degree = square.degree();
    if !degree.is_integer() {
        return FmcStatus::MathDomain;
    }
    write_out(out, degree.to_integer())
}

/// Degree of the cubed total class of a degree-(d, f) kernel pair on the
/// triple product (evaluates to `6(df - 1)`, computed symbolically).
///
/// # Safety
/// `out` must be valid for writing one `i64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_triple_c1_cubed(d: i64, f: i64, out: *mut i64) -> FmcStatus {
    let space = ProductSpace::triple(CurveId::new("C"), CurveId::new("C'"), CurveId::new("C''"));
    let total = match DivisorClass::new(
        space,
        [
            (Generator::graph(0, 1), 1),
            (Generator::point(1), d - 1),
            (Generator::graph(1, 2), 1),
            (Generator::point(2), f - 1),
        ],
    ) {
        Ok(total) => total,
        Err(_) => return FmcStatus::MathDomain,
    };
    let cube = match total.power(3, &IntersectionTable::STANDARD) {
        Ok(cube) => cube,
        Err(_) => return FmcStatus::MathDomain,
    };
    let degree = cube.degree();
    if !degree.is_integer() {
        return FmcStatus::MathDomain;
    }
    write_out(out, degree.to_integer())
}

/// Degree of the restriction of the universal class to the fiber over a
/// point of the chosen factor (0 or 1) of the pair.
///
/// # Safety
/// `out` must be valid for writing one `i64`.
#[no_mangle]
pub unsafe extern "C" fn fmc_fiber_degree(d: i64, factor: u8, out: *mut i64) -> FmcStatus {
    if factor > 1 {
        return FmcStatus::InvalidArgument;
    }
    match fiber_restrict(&universal_pair_class(d), factor) {
        Ok(degree) => write_out(out, degree),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Determinant of a rank/degree/weight moduli description: rank collapses
/// to one, the degree survives, and the weight is scaled by the rank.
///
/// # Safety
/// `out_rank`, `out_degree`, and `out_weight` must each be valid for one
/// write of the matching type.
#[no_mangle]
pub unsafe extern "C" fn fmc_determinant_data(
    rank: u64,
    degree: i64,
    weight: i64,
    out_rank: *mut u64,
    out_degree: *mut i64,
    out_weight: *mut i64,
) -> FmcStatus {
    if out_rank.is_null() || out_degree.is_null() || out_weight.is_null() {
        return FmcStatus::NullPointer;
    }
    let (r, e, w) = determinant_data(rank, degree, weight);
    out_rank.write(r);
    out_degree.write(e);
    out_weight.write(w);
    FmcStatus::Ok
}

/// Creates the weight-1 universal kernel of moduli degree `d` (nonzero)
/// from the base curve to its degree-`d` Picard stack.
///
/// # Safety
/// `out` must be valid for writing one pointer. The returned handle must be
/// released with [`fmc_kernel_free`].
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_universal(d: i64, out: *mut *mut FmcKernel) -> FmcStatus {
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    match universal_pic_kernel(&base_curve(), d) {
        Ok(kernel) => write_out(out, boxed(kernel)),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Creates the universal kernel of moduli degree `d` whose source is the
/// target of `after` — the kernel that composes on the right of `after`.
///
/// # Safety
/// `after` must be a live handle; `out` as in [`fmc_kernel_universal`].
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_universal_from(
    after: *const FmcKernel,
    d: i64,
    out: *mut *mut FmcKernel,
) -> FmcStatus {
    let Some(after) = kernel_ref(after) else {
        return FmcStatus::NullPointer;
    };
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    match universal_pic_kernel(after.target(), d) {
        Ok(kernel) => write_out(out, boxed(kernel)),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Creates a rank-one line-bundle kernel of arbitrary moduli degree and
/// weight (degree zero builds the degenerate family).
///
/// # Safety
/// `out` as in [`fmc_kernel_universal`].
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_line_bundle(
    d: i64,
    weight: i64,
    out: *mut *mut FmcKernel,
) -> FmcStatus {
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    let source = base_curve();
    let target = pic_target_curve(&source, d);
    match line_bundle_kernel(&source, &target, d, weight) {
        Ok(kernel) => write_out(out, boxed(kernel)),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Releases a kernel handle. Null is a no-op.
///
/// # Safety
/// `k` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_free(k: *mut FmcKernel) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Fiberwise rank of the kernel.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `u64` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_rank(k: *const FmcKernel, out: *mut u64) -> FmcStatus {
    match kernel_ref(k) {
        Some(kernel) => write_out(out, kernel.rank()),
        None => FmcStatus::NullPointer,
    }
}

/// Moduli degree of the kernel.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `i64` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_degree(k: *const FmcKernel, out: *mut i64) -> FmcStatus {
    match kernel_ref(k) {
        Some(kernel) => write_out(out, kernel.moduli_degree()),
        None => FmcStatus::NullPointer,
    }
}

/// Gerbe weight of the kernel.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `i64` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_weight(k: *const FmcKernel, out: *mut i64) -> FmcStatus {
    match kernel_ref(k) {
        Some(kernel) => write_out(out, kernel.weight()),
        None => FmcStatus::NullPointer,
    }
}

/// Homological shift of the kernel.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `i64` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_shift(k: *const FmcKernel, out: *mut i64) -> FmcStatus {
    match kernel_ref(k) {
        Some(kernel) => write_out(out, kernel.shift()),
        None => FmcStatus::NullPointer,
    }
}

/// Whether the kernel satisfies the fiberwise Hom-vanishing criterion.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `bool` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_strongly_simple(
    k: *const FmcKernel,
    out: *mut bool,
) -> FmcStatus {
    match kernel_ref(k) {
        Some(kernel) => write_out(out, kernel.strongly_simple()),
        None => FmcStatus::NullPointer,
    }
}

/// Whether the kernel presents a derived equivalence.
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `bool` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_is_equivalence(
    k: *const FmcKernel,
    out: *mut bool,
) -> FmcStatus {
    match kernel_ref(k) {
        Some(kernel) => write_out(out, kernel.is_equivalence()),
        None => FmcStatus::NullPointer,
    }
}

/// Whether the kernel descends to a valid equivalence of plain twisted
/// sheaves (weight one and an equivalence).
///
/// # Safety
/// `k` must be a live handle; `out` must be valid for one `bool` write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_shadow_valid(k: *const FmcKernel, out: *mut bool) -> FmcStatus {
    let Some(kernel) = kernel_ref(k) else {
        return FmcStatus::NullPointer;
    };
    match twisted_shadow(kernel) {
        Ok(shadow) => write_out(out, shadow.valid),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Rank and degree of the pushforward of the kernel to its target.
///
/// # Safety
/// `k` must be a live handle; `out_rank` and `out_degree` must be valid for
/// one write each.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_pushforward(
    k: *const FmcKernel,
    out_rank: *mut u64,
    out_degree: *mut i64,
) -> FmcStatus {
    let Some(kernel) = kernel_ref(k) else {
        return FmcStatus::NullPointer;
    };
    if out_rank.is_null() || out_degree.is_null() {
        return FmcStatus::NullPointer;
    }
    match kernel_pushforward(kernel) {
        Ok((rank, degree)) => {
            out_rank.write(rank);
            out_degree.write(degree);
            FmcStatus::Ok
        }
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Dual kernel (rank one only): negated degree and weight.
///
/// # Safety
/// `k` must be a live handle; `out` as in [`fmc_kernel_universal`].
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_dual(
    k: *const FmcKernel,
    out: *mut *mut FmcKernel,
) -> FmcStatus {
    let Some(kernel) = kernel_ref(k) else {
        return FmcStatus::NullPointer;
    };
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    match kernel.dual() {
        Ok(dual) => write_out(out, boxed(dual)),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Adjoint kernel: the dual shifted by the curve dimension. Left and right
/// adjoints coincide here.
///
/// # Safety
/// `k` must be a live handle; `out` as in [`fmc_kernel_universal`].
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_adjoint(
    k: *const FmcKernel,
    out: *mut *mut FmcKernel,
) -> FmcStatus {
    let Some(kernel) = kernel_ref(k) else {
        return FmcStatus::NullPointer;
    };
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    match kernel.left_adjoint() {
        Ok(adjoint) => write_out(out, boxed(adjoint)),
        Err(_) => FmcStatus::MathDomain,
    }
}

/// Convolution of two kernels (the target of `first` must be the source of
/// `second`). On success `out` receives the composite kernel; `out_chi`,
/// when non-null, receives the Euler-characteristic cross-check.
///
/// # Safety
/// `first` and `second` must be live handles; `out` as in
/// [`fmc_kernel_universal`]; `out_chi` must be null or valid for one `i64`
/// write.
#[no_mangle]
pub unsafe extern "C" fn fmc_kernel_convolve(
    first: *const FmcKernel,
    second: *const FmcKernel,
    out: *mut *mut FmcKernel,
    out_chi: *mut i64,
) -> FmcStatus {
    let (Some(first), Some(second)) = (kernel_ref(first), kernel_ref(second)) else {
        return FmcStatus::NullPointer;
    };
    if out.is_null() {
        return FmcStatus::NullPointer;
    }
    match convolve(first, second) {
        Ok(conv) => {
            if !out_chi.is_null() {
                out_chi.write(conv.chi_crosscheck);
            }
            write_out(out, boxed(conv.kernel))
        }
        Err(_) => FmcStatus::MathDomain,
    }
}
