//! Riemann-Roch bookkeeping for gerbey genus-1 curves.
//!
//! The numerical backbone: on a genus-1 curve the Todd class is trivial, so
//! pushing a line bundle forward along a projection amounts to integrating
//! its exponential Chern character. Section counts follow the usual
//! trichotomy in the degree, with the Brauer class deciding the borderline
//! degree-0 case.

use crate::chow::{
    fiber_restrict_with, ChowElement, ChowError, DivisorClass, IntersectionTable, ProductSpace,
};
use crate::weights::BrauerClass;
use crate::Rational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrrError {
    #[error("only genus-1 curves are supported, got genus {genus}")]
    UnsupportedGenus { genus: u64 },
    #[error("pushforward needs a positive moduli degree, got {degree}; dualize the kernel first")]
    NonPositiveModuliDegree { degree: i64 },
    #[error("the divisor lives on {space}, expected the product of {expected}")]
    WrongSpace { space: String, expected: String },
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// Name of a curve; equality of ids is equality of curves throughout.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveId(String);

impl CurveId {
    pub fn new(name: impl Into<String>) -> CurveId {
        CurveId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CurveId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A curve together with the gerbe data living over it: its Brauer class
/// and whether the canonical bundle is trivial (always true in genus 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GerbeyCurve {
    id: CurveId,
    genus: u64,
    brauer: BrauerClass,
    canonical_trivial: bool,
}

impl GerbeyCurve {
    pub fn new(id: CurveId, genus: u64, brauer: BrauerClass) -> GerbeyCurve {
        GerbeyCurve {
            id,
            genus,
            brauer,
            canonical_trivial: genus == 1,
        }
    }

    pub fn genus_one(id: CurveId, brauer: BrauerClass) -> GerbeyCurve {
        GerbeyCurve::new(id, 1, brauer)
    }

    pub fn id(&self) -> &CurveId {
        &self.id
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn brauer(&self) -> &BrauerClass {
        &self.brauer
    }

    pub fn canonical_trivial(&self) -> bool {
        self.canonical_trivial
    }
}

impl std::fmt::Display for GerbeyCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (genus {}, Brauer {})",
            self.id, self.genus, self.brauer
        )
    }
}

/// Todd class of a product of gerbey curves. Trivial canonical bundles make
/// it the unit class; any factor of genus other than 1 is refused.
pub fn todd_class(curves: &[&GerbeyCurve]) -> Result<ChowElement, GrrError> {
    for c in curves {
        if c.genus != 1 {
            return Err(GrrError::UnsupportedGenus { genus: c.genus });
        }
    }
    let space = ProductSpace::new(curves.iter().map(|c| c.id.clone()).collect())?;
    Ok(ChowElement::unit(space))
}

/// Exponential Chern character of a line bundle with first Chern class
/// `c1`: the sum of `c1^k / k!` up to the ambient dimension.
pub fn line_bundle_character(
    c1: &DivisorClass,
    table: &IntersectionTable,
) -> Result<ChowElement, GrrError> {
    let mut total = ChowElement::zero(c1.space().clone());
    let mut factorial: i64 = 1;
    for k in 0..=c1.space().dimension() {
        if k > 0 {
            factorial *= k as i64;
        }
        let piece = c1.power(k, table)?.scaled(Rational::new(1, factorial));
        total = total.add(&piece)?;
    }
    Ok(total)
}

/// Sections of a degree-`degree` sheaf on a gerbey genus-1 curve. A
/// positive degree contributes its full expected count, a negative degree
/// has no sections, and degree 0 has exactly one section precisely when the
/// Brauer obstruction vanishes.
pub fn gerbey_rr_h0(genus: u64, degree: i64, brauer_trivial: bool) -> Result<u64, GrrError> {
    if genus != 1 {
        return Err(GrrError::UnsupportedGenus { genus });
    }
    Ok(match degree {
        d if d > 0 => d as u64,
        0 if brauer_trivial => 1,
        _ => 0,
    })
}

/// Euler characteristic `degree - genus + 1` of a degree-`degree` line
/// bundle on a smooth curve of the given genus.
pub fn euler_char(genus: u64, degree: i64) -> i64 {
    degree - genus as i64 + 1
}

/// Rank and degree of the pushforward of a line bundle on `source x target`
/// to the second factor.
///
/// The rank is the section count of the restriction to a fiber over the
/// target (the moduli degree, which must be positive); the degree is the
/// codimension-2 part of character times Todd, integrated over the pair.
pub fn pushforward_invariants(
    source: &GerbeyCurve,
    target: &GerbeyCurve,
    c1: &DivisorClass,
) -> Result<(u64, i64), GrrError> {
    pushforward_invariants_with(source, target, c1, &IntersectionTable::STANDARD)
}

pub fn pushforward_invariants_with(
    source: &GerbeyCurve,
    target: &GerbeyCurve,
    c1: &DivisorClass,
    table: &IntersectionTable,
) -> Result<(u64, i64), GrrError> {
    let expected = ProductSpace::pair(source.id.clone(), target.id.clone());
    if c1.space() != &expected {
        return Err(GrrError::WrongSpace {
            space: c1.space().to_string(),
            expected: expected.to_string(),
        });
    }
    let moduli_degree = fiber_restrict_with(c1, 0, table)?;
    if moduli_degree <= 0 {
        return Err(GrrError::NonPositiveModuliDegree {
            degree: moduli_degree,
        });
    }
    let rank = gerbey_rr_h0(source.genus, moduli_degree, true)?;
    let todd = todd_class(&[source, target])?;
    let pushed = line_bundle_character(c1, table)?.mul_with(&todd, table)?;
    let degree = pushed.degree();
    if !degree.is_integer() {
        return Err(GrrError::Chow(ChowError::NonIntegralDegree {
            value: degree.to_string(),
        }));
    }
    Ok((rank, degree.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::Generator;

    fn curve(name: &str) -> GerbeyCurve {
        GerbeyCurve::genus_one(CurveId::new(name), BrauerClass::trivial())
    }

    fn pair_space() -> ProductSpace {
        ProductSpace::pair(CurveId::new("C"), CurveId::new("J"))
    }

    fn universal_divisor(d: i64) -> DivisorClass {
        DivisorClass::new(
            pair_space(),
            [(Generator::graph(0, 1), 1), (Generator::point(1), d - 1)],
        )
        .unwrap()
    }

    #[test]
    fn section_counts() {
        assert_eq!(gerbey_rr_h0(1, 5, false).unwrap(), 5);
        assert_eq!(gerbey_rr_h0(1, 5, true).unwrap(), 5);
        assert_eq!(gerbey_rr_h0(1, 0, true).unwrap(), 1);
        assert_eq!(gerbey_rr_h0(1, 0, false).unwrap(), 0);
        assert_eq!(gerbey_rr_h0(1, -3, true).unwrap(), 0);
        assert_eq!(
            gerbey_rr_h0(2, 1, true),
            Err(GrrError::UnsupportedGenus { genus: 2 })
        );
    }

    #[test]
    fn euler_characteristics() {
        for d in -10..=10 {
            assert_eq!(euler_char(1, d), d);
            assert_eq!(euler_char(0, d), d + 1);
            assert_eq!(euler_char(3, d), d - 2);
        }
    }

    #[test]
    fn section_counts_recover_the_euler_characteristic() {
        // h0(e) - h0(-e) equals the Euler characteristic for every degree
        for e in -20..=20i64 {
            let trivial = e == 0;
            let plus = gerbey_rr_h0(1, e, trivial).unwrap() as i64;
            let minus = gerbey_rr_h0(1, -e, trivial).unwrap() as i64;
            assert_eq!(plus - minus, euler_char(1, e), "e={e}");
        }
    }

    #[test]
    fn todd_class_is_the_unit_in_genus_one() {
        let c = curve("C");
        let j = curve("J");
        let td = todd_class(&[&c, &j]).unwrap();
        assert_eq!(
            td,
            ChowElement::unit(ProductSpace::pair(CurveId::new("C"), CurveId::new("J"),))
        );
        let bad = GerbeyCurve::new(CurveId::new("H"), 2, BrauerClass::trivial());
        assert_eq!(
            todd_class(&[&c, &bad]),
            Err(GrrError::UnsupportedGenus { genus: 2 })
        );
        assert!(!bad.canonical_trivial());
        assert!(c.canonical_trivial());
    }

    #[test]
    fn character_truncates_at_the_ambient_dimension() {
        let c1 = universal_divisor(3);
        let ch = line_bundle_character(&c1, &IntersectionTable::STANDARD).unwrap();
        // unit part
        assert_eq!(ch.component(0), ChowElement::unit(pair_space()));
        // linear part is c1 itself
        assert_eq!(ch.component(1), c1.to_chow());
        // quadratic part is half the square: (2d-2)/2 = d-1 points
        assert_eq!(ch.component(2).degree(), Rational::from_integer(2));
        // nothing beyond the dimension of the pair
        assert!(ch.component(3).is_zero());
    }

    #[test]
    fn pushforward_of_the_universal_bundle() {
        let c = curve("C");
        let j = curve("J");
        for (d, want) in [(4, (4, 3)), (1, (1, 0)), (6, (6, 5))] {
            assert_eq!(
                pushforward_invariants(&c, &j, &universal_divisor(d)).unwrap(),
                want
            );
        }
        for d in 1..=12 {
            let (rank, degree) = pushforward_invariants(&c, &j, &universal_divisor(d)).unwrap();
            assert_eq!((rank, degree), (d as u64, d - 1));
        }
    }

    #[test]
    fn pushforward_requires_positive_moduli_degree() {
        let c = curve("C");
        let j = curve("J");
        assert_eq!(
            pushforward_invariants(&c, &j, &universal_divisor(0)),
            Err(GrrError::NonPositiveModuliDegree { degree: 0 })
        );
        assert_eq!(
            pushforward_invariants(&c, &j, &universal_divisor(-2)),
            Err(GrrError::NonPositiveModuliDegree { degree: -2 })
        );
    }

    #[test]
    fn pushforward_checks_the_space() {
        let c = curve("C");
        let j = curve("J");
        let wrong = DivisorClass::new(
            ProductSpace::pair(CurveId::new("X"), CurveId::new("J")),
            [(Generator::graph(0, 1), 1)],
        )
        .unwrap();
        assert!(matches!(
            pushforward_invariants(&c, &j, &wrong),
            Err(GrrError::WrongSpace { .. })
        ));
    }

    #[test]
    fn non_integral_pushforward_degree_is_an_error() {
        // a table with graph self-intersection 1 makes c1^2 odd for c1 = G01
        let table = IntersectionTable {
            graph_self: 1,
            ..IntersectionTable::STANDARD
        };
        let c = curve("C");
        let j = curve("J");
        let c1 = DivisorClass::new(pair_space(), [(Generator::graph(0, 1), 1)]).unwrap();
        assert!(matches!(
            pushforward_invariants_with(&c, &j, &c1, &table),
            Err(GrrError::Chow(ChowError::NonIntegralDegree { .. }))
        ));
    }

    #[test]
    fn triple_character_has_the_expected_top_part() {
        // kernel classes with d = 2, f = 3 on the triple: top part 5 points
        let space =
            ProductSpace::triple(CurveId::new("C"), CurveId::new("C'"), CurveId::new("C''"));
        let c1 = DivisorClass::new(
            space.clone(),
            [
                (Generator::graph(0, 1), 1),
                (Generator::point(1), 1),
                (Generator::graph(1, 2), 1),
                (Generator::point(2), 2),
            ],
        )
        .unwrap();
        let ch = line_bundle_character(&c1, &IntersectionTable::STANDARD).unwrap();
        let top = ch.component(3);
        assert_eq!(top.degree(), Rational::from_integer(5));
    }
}
