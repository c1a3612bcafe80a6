//! Integral-transform kernels between gerbey genus-1 curves.
//!
//! A kernel is a sheaf-like datum on a product `source x target`: a first
//! Chern class, a fiberwise (moduli) degree, a gerbe weight, a homological
//! shift, and a rank. The module provides the universal line-bundle kernel
//! onto a Picard curve, duals and adjoints, convolution over a shared middle
//! curve (with its symbolic cube cross-checks), section profiles between
//! fiber kernels, and the descent shadow that a weight-1 equivalence leaves
//! on ordinary twisted sheaves.

use crate::chow::{ChowError, DivisorClass, Generator, IntersectionTable, ProductSpace};
use crate::grr::{pushforward_invariants_with, CurveId, GerbeyCurve, GrrError};
use crate::weights::{
    section_lift, section_restrict, tensor_weights, twist_of_weight, BrauerClass, WeightError,
    WeightedObject,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("a universal kernel needs a nonzero moduli degree")]
    ZeroModuliDegree,
    #[error("convolution needs positive moduli degrees, got {degree}; dualize the kernel first")]
    NonPositiveModuliDegree { degree: i64 },
    #[error("cannot convolve: the middle curves differ ({left} vs {right})")]
    MismatchedCurves { left: String, right: String },
    #[error("dualization is only implemented for rank-1 kernels, got rank {rank}")]
    HigherRankDual { rank: u64 },
    #[error(transparent)]
    Grr(#[from] GrrError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A Fourier-Mukai-style kernel on `source x target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmKernel {
    source: GerbeyCurve,
    target: GerbeyCurve,
    c1: DivisorClass,
    moduli_degree: i64,
    weight: i64,
    shift: i64,
    rank: u64,
}

impl FmKernel {
    pub fn source(&self) -> &GerbeyCurve {
        &self.source
    }

    pub fn target(&self) -> &GerbeyCurve {
        &self.target
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    /// Degree of the restriction to a fiber over the target: the degree of
    /// the line bundles the transform parametrizes (for rank 1), or the
    /// determinant degree of a composite.
    pub fn moduli_degree(&self) -> i64 {
        self.moduli_degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn shifted(&self, by: i64) -> FmKernel {
        let mut k = self.clone();
        k.shift += by;
        k
    }

    /// Section dimensions of the transform between the fiber kernels at two
    /// points of the moduli target, by homological degree. Identical points
    /// give one section and one cosection; distinct points give nothing,
    /// except in the degenerate moduli-degree-0 family where every pair
    /// behaves like the identical one.
    pub fn hom_profile(&self, same_point: bool) -> HomProfile {
        if same_point || self.moduli_degree == 0 {
            HomProfile::line_pair()
        } else {
            HomProfile::vanishing()
        }
    }

    /// Simple fibers and no sections between distinct fibers.
    pub fn strongly_simple(&self) -> bool {
        self.hom_profile(true) == HomProfile::line_pair() && self.hom_profile(false).is_vanishing()
    }

    /// A strongly simple kernel induces an equivalence exactly when the
    /// target has trivial canonical bundle.
    pub fn is_equivalence(&self) -> bool {
        self.strongly_simple() && self.target.canonical_trivial()
    }

    /// The dual kernel on the same product: negates the Chern class, the
    /// moduli degree, and the weight. Only defined in rank 1.
    pub fn dual(&self) -> Result<FmKernel, KernelError> {
        if self.rank != 1 {
            return Err(KernelError::HigherRankDual { rank: self.rank });
        }
        Ok(FmKernel {
            source: self.source.clone(),
            target: self.target.clone(),
            c1: self.c1.negated(),
            moduli_degree: -self.moduli_degree,
            weight: -self.weight,
            shift: self.shift,
            rank: self.rank,
        })
    }

    /// Left adjoint of the transform: the dual shifted by the dimension of
    /// the curve.
    pub fn left_adjoint(&self) -> Result<FmKernel, KernelError> {
        Ok(self.dual()?.shifted(1))
    }

    /// Right adjoint; on gerbey genus-1 curves the Serre twist is trivial,
    /// so it coincides with the left adjoint.
    pub fn right_adjoint(&self) -> Result<FmKernel, KernelError> {
        self.left_adjoint()
    }

    /// The moduli datum the kernel presents: base curve, rank, degree, and
    /// gerbe weight.
    pub fn moduli_tag(&self) -> ModuliTag {
        ModuliTag {
            base: self.source.id().clone(),
            rank: self.rank,
            degree: self.moduli_degree,
            weight: self.weight,
        }
    }
}

/// Section dimensions by homological degree (only degrees 0 and 1 occur on
/// curves).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomProfile {
    dims: BTreeMap<u32, u64>,
}

impl HomProfile {
    fn vanishing() -> HomProfile {
        HomProfile {
            dims: BTreeMap::new(),
        }
    }

    fn line_pair() -> HomProfile {
        HomProfile {
            dims: BTreeMap::from([(0, 1), (1, 1)]),
        }
    }

    pub fn dimension(&self, degree: u32) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_vanishing(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<u32, u64> {
        &self.dims
    }
}

impl std::fmt::Display for HomProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.dims.iter().map(|(d, n)| format!("h{d}={n}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Rank, degree, and weight of a moduli description over a base curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliTag {
    base: CurveId,
    rank: u64,
    degree: i64,
    weight: i64,
}

impl ModuliTag {
    pub fn new(base: CurveId, rank: u64, degree: i64, weight: i64) -> ModuliTag {
        ModuliTag {
            base,
            rank,
            degree,
            weight,
        }
    }

    pub fn base(&self) -> &CurveId {
        &self.base
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// The determinant line of the tagged family: rank drops to 1, the
    /// degree is kept, and the weight is multiplied by the rank.
    pub fn determinant(&self) -> ModuliTag {
        let (rank, degree, weight) = determinant_data(self.rank, self.degree, self.weight);
        ModuliTag {
            base: self.base.clone(),
            rank,
            degree,
            weight,
        }
    }
}

impl std::fmt::Display for ModuliTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.rank == 1 {
            write!(f, "Pic^{}_{}({})", self.degree, self.weight, self.base)
        } else {
            write!(
                f,
                "Mod^{{{},{}}}_{}({})",
                self.rank, self.degree, self.weight, self.base
            )
        }
    }
}

/// Determinant of a rank/degree/weight triple: `(1, degree, rank * weight)`.
pub fn determinant_data(rank: u64, degree: i64, weight: i64) -> (u64, i64, i64) {
    (1, degree, rank as i64 * weight)
}

/// The degree-`d` Picard curve of a gerbey genus-1 curve, as a fresh
/// genus-1 curve named after its moduli tag and inheriting the Brauer class
/// of the source.
pub fn pic_target_curve(source: &GerbeyCurve, d: i64) -> GerbeyCurve {
    let tag = ModuliTag::new(source.id().clone(), 1, d, 1);
    GerbeyCurve::genus_one(CurveId::new(tag.to_string()), source.brauer().clone())
}

/// The universal line-bundle kernel from a gerbey genus-1 curve to its
/// degree-`d` Picard curve: Chern class `graph + (d-1) * fiber`, weight 1.
pub fn universal_pic_kernel(source: &GerbeyCurve, d: i64) -> Result<FmKernel, KernelError> {
    if source.genus() != 1 {
        return Err(KernelError::Grr(GrrError::UnsupportedGenus {
            genus: source.genus(),
        }));
    }
    if d == 0 {
        return Err(KernelError::ZeroModuliDegree);
    }
    line_bundle_kernel(source, &pic_target_curve(source, d), d, 1)
}

/// A rank-1 kernel of line-bundle shape on a chosen pair of curves:
/// `graph + (moduli_degree - 1) * fiber`, with an arbitrary weight. Unlike
/// the universal kernel this allows moduli degree 0, the degenerate family.
pub fn line_bundle_kernel(
    source: &GerbeyCurve,
    target: &GerbeyCurve,
    moduli_degree: i64,
    weight: i64,
) -> Result<FmKernel, KernelError> {
    let space = ProductSpace::pair(source.id().clone(), target.id().clone());
    let c1 = DivisorClass::new(
        space,
        [
            (Generator::graph(0, 1), 1),
            (Generator::point(1), moduli_degree - 1),
        ],
    )?;
    Ok(FmKernel {
        source: source.clone(),
        target: target.clone(),
        c1,
        moduli_degree,
        weight,
        shift: 0,
        rank: 1,
    })
}

/// Rank and degree of the bundle the kernel pushes down to its target,
/// computed through the character-times-Todd route.
pub fn kernel_pushforward(k: &FmKernel) -> Result<(u64, i64), KernelError> {
    kernel_pushforward_with(k, &IntersectionTable::STANDARD)
}

pub fn kernel_pushforward_with(
    k: &FmKernel,
    table: &IntersectionTable,
) -> Result<(u64, i64), KernelError> {
    Ok(pushforward_invariants_with(
        &k.source, &k.target, &k.c1, table,
    )?)
}

/// Result of convolving two kernels over a shared middle curve, together
/// with the symbolic intersection numbers backing its invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convolution {
    pub kernel: FmKernel,
    /// Degree of the cube of the total Chern class on the triple product;
    /// the composite degree is this divided by 6.
    pub c1_cubed_degree: i64,
    /// Euler-characteristic cross-check: half the pairing of the squared
    /// total class against a point of the outer target. For kernels of
    /// moduli degrees (d, f) this evaluates to d, whereas the composite
    /// rank is d*f: the two bookkeepings genuinely differ.
    pub chi_crosscheck: i64,
}

pub fn convolve(k1: &FmKernel, k2: &FmKernel) -> Result<Convolution, KernelError> {
    convolve_with(k1, k2, &IntersectionTable::STANDARD)
}

pub fn convolve_with(
    k1: &FmKernel,
    k2: &FmKernel,
    table: &IntersectionTable,
) -> Result<Convolution, KernelError> {
    if k1.target.id() != k2.source.id() {
        return Err(KernelError::MismatchedCurves {
            left: k1.target.id().to_string(),
            right: k2.source.id().to_string(),
        });
    }
    for k in [k1, k2] {
        if k.moduli_degree <= 0 {
            return Err(KernelError::NonPositiveModuliDegree {
                degree: k.moduli_degree,
            });
        }
    }
    let triple = ProductSpace::triple(
        k1.source.id().clone(),
        k1.target.id().clone(),
        k2.target.id().clone(),
    );
    let total = k1
        .c1
        .pulled_back(&triple, &[0, 1])?
        .add(&k2.c1.pulled_back(&triple, &[1, 2])?)?;

    let cube = total.power(3, table)?;
    let cube_degree = cube.degree();
    if !cube_degree.is_integer() {
        return Err(KernelError::Chow(ChowError::NonIntegralDegree {
            value: cube_degree.to_string(),
        }));
    }
    let composite_degree = cube_degree / 6;
    if !composite_degree.is_integer() {
        return Err(KernelError::Chow(ChowError::NonIntegralDegree {
            value: format!("{cube_degree}/6"),
        }));
    }
    let composite_degree = composite_degree.to_integer();

    let square = total.power(2, table)?;
    let outer_point = DivisorClass::new(triple.clone(), [(Generator::point(2), 1)])?;
    let chi = square.mul_with(&outer_point.to_chow(), table)?.degree() / 2;
    if !chi.is_integer() {
        return Err(KernelError::Chow(ChowError::NonIntegralDegree {
            value: chi.to_string(),
        }));
    }

    let rank = (k1.moduli_degree * k2.moduli_degree) as u64;
    let outer = ProductSpace::pair(k1.source.id().clone(), k2.target.id().clone());
    let c1 = DivisorClass::new(
        outer,
        [
            (Generator::graph(0, 1), 1),
            (Generator::point(1), composite_degree - 1),
        ],
    )?;
    let kernel = FmKernel {
        source: k1.source.clone(),
        target: k2.target.clone(),
        c1,
        moduli_degree: composite_degree,
        weight: tensor_weights(k1.weight, k2.weight),
        shift: k1.shift + k2.shift,
        rank,
    };
    Ok(Convolution {
        kernel,
        c1_cubed_degree: cube_degree.to_integer(),
        chi_crosscheck: chi.to_integer(),
    })
}

/// Moduli tag of the inverse transform attached to the degree-`d` Picard
/// kernel: push the universal bundle down to the Picard curve and dualize.
pub fn inverse_moduli(source: &GerbeyCurve, d: i64) -> Result<ModuliTag, KernelError> {
    inverse_moduli_with(source, d, &IntersectionTable::STANDARD)
}

pub fn inverse_moduli_with(
    source: &GerbeyCurve,
    d: i64,
    table: &IntersectionTable,
) -> Result<ModuliTag, KernelError> {
    if d <= 0 {
        return Err(KernelError::NonPositiveModuliDegree { degree: d });
    }
    let kernel = universal_pic_kernel(source, d)?;
    let (rank, degree) = kernel_pushforward_with(&kernel, table)?;
    Ok(ModuliTag::new(kernel.target.id().clone(), rank, -degree, 1))
}

/// The descent data a kernel induces on plain twisted sheaves: the gerbe
/// twists it imposes on either side, and whether it actually presents an
/// equivalence (weight 1 and strongly simple onto a canonically trivial
/// target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedShadow {
    pub valid: bool,
    pub source_curve: CurveId,
    pub source_brauer: BrauerClass,
    pub source_twist: u64,
    pub target_curve: CurveId,
    pub target_brauer: BrauerClass,
    pub target_twist: u64,
    /// Whether the kernel's section data restricts and lifts consistently
    /// through its own weight.
    pub sections_consistent: bool,
}

pub fn twisted_shadow(k: &FmKernel) -> Result<TwistedShadow, KernelError> {
    let alpha = k.source.brauer();
    let beta = k.target.brauer();
    let sections = WeightedObject::new(k.rank, k.moduli_degree, k.weight, k.source.id().clone())?;
    let restricted = section_restrict(&sections, alpha);
    let lifted = section_lift(&restricted, k.weight, alpha, k.source.id().clone())?;
    Ok(TwistedShadow {
        valid: k.weight == 1 && k.is_equivalence(),
        source_curve: k.source.id().clone(),
        source_brauer: alpha.clone(),
        source_twist: twist_of_weight(k.weight, alpha),
        target_curve: k.target.id().clone(),
        target_brauer: beta.clone(),
        target_twist: twist_of_weight(k.weight, beta),
        sections_consistent: lifted == sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(name: &str) -> GerbeyCurve {
        GerbeyCurve::genus_one(CurveId::new(name), BrauerClass::new(6, 2).unwrap())
    }

    #[test]
    fn universal_kernel_shape() {
        let c = curve("C");
        let k = universal_pic_kernel(&c, 2).unwrap();
        assert_eq!(k.moduli_degree(), 2);
        assert_eq!(k.rank(), 1);
        assert_eq!(k.weight(), 1);
        assert_eq!(k.shift(), 0);
        assert_eq!(k.target().id().as_str(), "Pic^2_1(C)");
        assert_eq!(k.target().brauer(), c.brauer());
        assert_eq!(k.c1().coefficient(Generator::graph(0, 1)), 1);
        assert_eq!(k.c1().coefficient(Generator::point(1)), 1);
        assert_eq!(k.moduli_tag().to_string(), "Pic^2_1(C)");
    }

    #[test]
    fn universal_kernel_rejects_degree_zero_and_higher_genus() {
        let c = curve("C");
        assert_eq!(
            universal_pic_kernel(&c, 0),
            Err(KernelError::ZeroModuliDegree)
        );
        let surfaceish = GerbeyCurve::new(CurveId::new("H"), 2, BrauerClass::trivial());
        assert!(matches!(
            universal_pic_kernel(&surfaceish, 3),
            Err(KernelError::Grr(GrrError::UnsupportedGenus { genus: 2 }))
        ));
    }

    #[test]
    fn pushforward_of_universal_kernels() {
        let c = curve("C");
        for (d, want) in [(4, (4, 3)), (1, (1, 0)), (6, (6, 5))] {
            let k = universal_pic_kernel(&c, d).unwrap();
            assert_eq!(kernel_pushforward(&k).unwrap(), want);
        }
    }

    #[test]
    fn duals_negate_and_involute() {
        let c = curve("C");
        let k = universal_pic_kernel(&c, 4).unwrap();
        let dual = k.dual().unwrap();
        assert_eq!(dual.moduli_degree(), -4);
        assert_eq!(dual.weight(), -1);
        assert_eq!(dual.shift(), 0);
        assert_eq!(dual.c1().coefficient(Generator::graph(0, 1)), -1);
        assert_eq!(dual.c1().coefficient(Generator::point(1)), -3);
        assert_eq!(dual.dual().unwrap(), k);
    }

    #[test]
    fn adjoints_are_shifted_duals_and_coincide() {
        let c = curve("C");
        let k = universal_pic_kernel(&c, 3).unwrap();
        let left = k.left_adjoint().unwrap();
        let right = k.right_adjoint().unwrap();
        assert_eq!(left, right);
        assert_eq!(left.shift(), 1);
        assert_eq!(left.shifted(-1), k.dual().unwrap());
    }

    #[test]
    fn convolution_frozen_values() {
        let c = curve("C");
        let k1 = universal_pic_kernel(&c, 2).unwrap();
        let k2 = universal_pic_kernel(k1.target(), 3).unwrap();
        let conv = convolve(&k1, &k2).unwrap();
        assert_eq!(conv.c1_cubed_degree, 30);
        assert_eq!(conv.kernel.rank(), 6);
        assert_eq!(conv.kernel.moduli_degree(), 5);
        assert_eq!(conv.kernel.weight(), 2);
        assert_eq!(conv.kernel.shift(), 0);
        assert_eq!(conv.chi_crosscheck, 2);
        assert_eq!(conv.kernel.source().id(), c.id());
        assert_eq!(conv.kernel.target().id(), k2.target().id());
    }

    #[test]
    fn convolution_with_a_degree_one_kernel() {
        let c = curve("C");
        for d in 1..=12 {
            let k1 = universal_pic_kernel(&c, d).unwrap();
            let k2 = universal_pic_kernel(k1.target(), 1).unwrap();
            let conv = convolve(&k1, &k2).unwrap();
            assert_eq!(conv.kernel.rank(), d as u64);
            assert_eq!(conv.kernel.moduli_degree(), d - 1);
            assert_eq!(conv.c1_cubed_degree, 6 * (d - 1));
        }
    }

    #[test]
    fn convolution_guards() {
        let c = curve("C");
        let other = curve("X");
        let k1 = universal_pic_kernel(&c, 2).unwrap();
        let k3 = universal_pic_kernel(&other, 3).unwrap();
        assert!(matches!(
            convolve(&k1, &k3),
            Err(KernelError::MismatchedCurves { .. })
        ));
        let k2 = universal_pic_kernel(k1.target(), 3).unwrap();
        let dualized = k2.dual().unwrap();
        assert_eq!(
            convolve(&k1, &dualized),
            Err(KernelError::NonPositiveModuliDegree { degree: -3 })
        );
    }

    #[test]
    fn hom_profiles_and_simplicity() {
        let c = curve("C");
        for d in -6..=6i64 {
            if d == 0 {
                continue;
            }
            let k = universal_pic_kernel(&c, d).unwrap();
            assert_eq!(k.hom_profile(true).dimension(0), 1);
            assert_eq!(k.hom_profile(true).dimension(1), 1);
            assert!(k.hom_profile(false).is_vanishing());
            assert!(k.strongly_simple());
            assert!(k.is_equivalence());
        }
        // the degenerate degree-0 family: every pair of fibers interacts
        let degenerate = line_bundle_kernel(&c, &curve("J"), 0, 1).unwrap();
        assert_eq!(degenerate.hom_profile(false).dimension(0), 1);
        assert_eq!(degenerate.hom_profile(false).dimension(1), 1);
        assert!(!degenerate.strongly_simple());
        assert!(!degenerate.is_equivalence());
    }

    #[test]
    fn profiles_live_in_degrees_zero_and_one() {
        let c = curve("C");
        for d in -6..=6i64 {
            let k = line_bundle_kernel(&c, &curve("J"), d, 1).unwrap();
            for same in [true, false] {
                let profile = k.hom_profile(same);
                for (&degree, &dim) in profile.as_map() {
                    assert!(degree <= 1);
                    assert!(dim == 1);
                }
            }
        }
    }

    #[test]
    fn equivalence_needs_a_canonically_trivial_target() {
        let c = curve("C");
        let bad_target = GerbeyCurve::new(CurveId::new("H"), 2, BrauerClass::trivial());
        let k = line_bundle_kernel(&c, &bad_target, 3, 1).unwrap();
        assert!(k.strongly_simple());
        assert!(!k.is_equivalence());
    }

    #[test]
    fn dual_of_a_composite_is_refused() {
        let c = curve("C");
        let k1 = universal_pic_kernel(&c, 2).unwrap();
        let k2 = universal_pic_kernel(k1.target(), 3).unwrap();
        let conv = convolve(&k1, &k2).unwrap();
        assert_eq!(
            conv.kernel.dual(),
            Err(KernelError::HigherRankDual { rank: 6 })
        );
    }

    #[test]
    fn inverse_moduli_tags() {
        let c = curve("C");
        let tag = inverse_moduli(&c, 4).unwrap();
        assert_eq!(tag.rank(), 4);
        assert_eq!(tag.degree(), -3);
        assert_eq!(tag.weight(), 1);
        assert_eq!(tag.base().as_str(), "Pic^4_1(C)");
        assert_eq!(
            inverse_moduli(&c, 0),
            Err(KernelError::NonPositiveModuliDegree { degree: 0 })
        );
        assert_eq!(
            inverse_moduli(&c, -2),
            Err(KernelError::NonPositiveModuliDegree { degree: -2 })
        );
    }

    #[test]
    fn determinant_collapses_rank_into_weight() {
        assert_eq!(determinant_data(3, 0, 2), (1, 0, 6));
        for d in 1..=12i64 {
            assert_eq!(determinant_data(d as u64, 1 - d, 1), (1, 1 - d, d),);
        }
        let tag = ModuliTag::new(CurveId::new("C"), 3, 0, 2);
        let det = tag.determinant();
        assert_eq!(det.base().as_str(), "C");
        assert_eq!((det.rank(), det.degree(), det.weight()), (1, 0, 6));
    }

    #[test]
    fn shadows_accept_exactly_weight_one_equivalences() {
        let c = curve("C");
        let k = universal_pic_kernel(&c, 3).unwrap();
        let shadow = twisted_shadow(&k).unwrap();
        assert!(shadow.valid);
        assert!(shadow.sections_consistent);
        // weight 1 against the order-6 class of value 2 twists by 2
        assert_eq!(shadow.source_twist, 2);
        assert_eq!(shadow.target_twist, 2);
        assert_eq!(shadow.source_curve, *c.id());

        let heavy = line_bundle_kernel(&c, k.target(), 3, 2).unwrap();
        let shadow = twisted_shadow(&heavy).unwrap();
        assert!(!shadow.valid);
        assert!(shadow.sections_consistent);
        assert_eq!(shadow.source_twist, 4);

        let degenerate = line_bundle_kernel(&c, k.target(), 0, 1).unwrap();
        assert!(!twisted_shadow(&degenerate).unwrap().valid);
    }
}
