//! Inertia weights and Brauer twists.
//!
//! Sheaves on a Gm-gerbe split by the weight of the inertia action. A weight
//! `t` piece corresponds, after choosing a trivialisation, to a `t*alpha`
//! twisted sheaf on the coarse space, where `alpha` is the Brauer class of
//! the gerbe. The operations here are the numeric shadows of that
//! dictionary: weights add under tensor, subtract under Hom, and the
//! restriction/lift pair converts between weighted and twisted bookkeeping.
//!
//! A mixed-weight object is a finite list of pure-weight records; every
//! operation below acts componentwise, so only the pure case is modelled.

use crate::grr::CurveId;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("a Brauer class must have finite positive order")]
    InfiniteOrder,
    #[error("a rank-0 object must have degree 0, got degree {degree}")]
    RankZeroDegree { degree: i64 },
    #[error(
        "twist {found} does not match weight {weight} against this Brauer class (expected {expected})"
    )]
    TwistMismatch {
        expected: u64,
        found: u64,
        weight: i64,
    },
}

/// A Brauer class of finite order: the residue `value` mod `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrauerClass {
    order: u64,
    value: u64,
}

impl BrauerClass {
    pub fn new(order: u64, value: u64) -> Result<Self, WeightError> {
        if order == 0 {
            return Err(WeightError::InfiniteOrder);
        }
        Ok(BrauerClass {
            order,
            value: value % order,
        })
    }

    /// The trivial class, of order 1.
    pub fn trivial() -> Self {
        BrauerClass { order: 1, value: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }
}

impl std::fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.value, self.order)
    }
}

/// Weight of a tensor product of pure-weight pieces: weights add.
pub fn tensor_weights(t: i64, t_prime: i64) -> i64 {
    t + t_prime
}

/// Weight of `Hom` from a weight-`t` piece into a weight-`t_prime` piece.
pub fn hom_weight(t: i64, t_prime: i64) -> i64 {
    t_prime - t
}

/// The Brauer twist carried by a weight-`t` object: `t * alpha`, as a residue
/// mod the order of `alpha`. Periodic in `t` with period `alpha.order()`.
pub fn twist_of_weight(t: i64, alpha: &BrauerClass) -> u64 {
    let m = alpha.order as i128;
    ((t as i128).rem_euclid(m) * alpha.value as i128).rem_euclid(m) as u64
}

/// A pure-weight sheaf record on a gerbey curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedObject {
    pub rank: u64,
    pub degree: i64,
    pub weight: i64,
    pub base: CurveId,
}

impl WeightedObject {
    pub fn new(rank: u64, degree: i64, weight: i64, base: CurveId) -> Result<Self, WeightError> {
        if rank == 0 && degree != 0 {
            return Err(WeightError::RankZeroDegree { degree });
        }
        Ok(WeightedObject {
            rank,
            degree,
            weight,
            base,
        })
    }
}

/// A twisted-sheaf record on the coarse space: same rank and degree, with the
/// twist recorded as a residue mod the order of the ambient Brauer class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistedObject {
    pub rank: u64,
    pub degree: i64,
    pub twist: u64,
}

/// Restricts a weighted object along a section of the gerbe: the result is a
/// `twist_of_weight(weight, alpha)`-twisted sheaf with the same rank and
/// degree.
pub fn section_restrict(obj: &WeightedObject, alpha: &BrauerClass) -> TwistedObject {
    TwistedObject {
        rank: obj.rank,
        degree: obj.degree,
        twist: twist_of_weight(obj.weight, alpha),
    }
}

/// Lifts a twisted sheaf back to the weight-`t` part of the gerbe over
/// `base`. Inverse to [`section_restrict`]; fails when the twist does not
/// match `t * alpha`.
pub fn section_lift(
    obj: &TwistedObject,
    t: i64,
    alpha: &BrauerClass,
    base: CurveId,
) -> Result<WeightedObject, WeightError> {
    let expected = twist_of_weight(t, alpha);
    if obj.twist != expected {
        return Err(WeightError::TwistMismatch {
            expected,
            found: obj.twist,
            weight: t,
        });
    }
    WeightedObject::new(obj.rank, obj.degree, t, base)
}
