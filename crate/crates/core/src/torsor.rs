//! Cyclic-group model for genus-1 torsors.
//!
//! A torsor under an elliptic curve is classified by an element of a Galois
//! cohomology group; this module models the part of that group generated by a
//! single class, i.e. a cyclic group `Z/n`. Torsor classes are residues mod
//! `n`, the Picard construction `Pic^d` multiplies a class by `d`, and two
//! classes are "derived equivalent" when one is a unit multiple of the other
//! after letting a chosen automorphism group act. The search for a witness is
//! exhaustive and exact.

use num_integer::Integer;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorsorError {
    #[error("torsor classes live in different groups (orders {left} and {right})")]
    GroupMismatch { left: u64, right: u64 },
    #[error("a torsor group must have positive order")]
    ZeroOrder,
    #[error("invalid automorphism multiplier set: {reason}")]
    InvalidAutModel { reason: String },
}

/// The cyclic group `Z/n` that torsor classes live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsorGroup {
    order: u64,
}

impl TorsorGroup {
    pub fn new(order: u64) -> Result<Self, TorsorError> {
        if order == 0 {
            return Err(TorsorError::ZeroOrder);
        }
        Ok(TorsorGroup { order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The class of `value` mod `n`.
    pub fn class(&self, value: u64) -> TorsorClass {
        TorsorClass {
            value: value % self.order,
            group: *self,
        }
    }
}

/// A residue in a [`TorsorGroup`], modelling the class of one torsor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsorClass {
    value: u64,
    group: TorsorGroup,
}

impl TorsorClass {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn group(&self) -> TorsorGroup {
        self.group
    }

    /// Order of the class as a group element: `n / gcd(n, value)`.
    pub fn element_order(&self) -> u64 {
        let n = self.group.order;
        n / n.gcd(&self.value)
    }

    /// Class of the degree-`d` Picard torsor `Pic^d`: multiplication by `d`.
    ///
    /// `d` may be negative or zero; the result is reduced mod `n`.
    pub fn pic_class(&self, d: i64) -> TorsorClass {
        let n = self.group.order as i128;
        let value = (self.value as i128 * d as i128).rem_euclid(n) as u64;
        TorsorClass {
            value,
            group: self.group,
        }
    }
}

/// Automorphism action on torsor classes, given by a set of unit multipliers
/// mod `n`.
///
/// The set must contain `1`, be closed under inversion mod `n`, and consist
/// of residues coprime to `n`. For the generic genus-1 curve the group is
/// `{±1}`; larger sets model extra automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutModel {
    group: TorsorGroup,
    multipliers: BTreeSet<u64>,
}

impl AutModel {
    pub fn new<I>(group: TorsorGroup, multipliers: I) -> Result<Self, TorsorError>
    where
        I: IntoIterator<Item = u64>,
    {
        let n = group.order;
        let set: BTreeSet<u64> = multipliers.into_iter().map(|m| m % n).collect();
        if set.is_empty() {
            return Err(TorsorError::InvalidAutModel {
                reason: "the multiplier set is empty".into(),
            });
        }
        for &m in &set {
            if m.gcd(&n) != 1 {
                return Err(TorsorError::InvalidAutModel {
                    reason: format!("multiplier {m} is not coprime to the order {n}"),
                });
            }
        }
        if !set.contains(&(1 % n)) {
            return Err(TorsorError::InvalidAutModel {
                reason: "the multiplier set must contain 1".into(),
            });
        }
        for &m in &set {
            // m is coprime to n, so the extended gcd yields its inverse mod n
            let egcd = (m as i128).extended_gcd(&(n as i128));
            let inverse = egcd.x.rem_euclid(n as i128) as u64;
            if !set.contains(&inverse) {
                return Err(TorsorError::InvalidAutModel {
                    reason: format!("the set is not closed under inversion mod {n} at {m}"),
                });
            }
        }
        Ok(AutModel {
            group,
            multipliers: set,
        })
    }

    /// The `{±1}` action present for every curve.
    pub fn plus_minus_one(group: TorsorGroup) -> Self {
        let n = group.order;
        AutModel::new(group, [1 % n, (n - 1) % n])
            .expect("{1, n-1} is always a valid multiplier set")
    }

    /// The trivial action `{1}`.
    pub fn trivial(group: TorsorGroup) -> Self {
        let n = group.order;
        AutModel::new(group, [1 % n]).expect("{1} is always a valid multiplier set")
    }

    pub fn group(&self) -> TorsorGroup {
        self.group
    }

    pub fn multipliers(&self) -> impl Iterator<Item = u64> + '_ {
        self.multipliers.iter().copied()
    }
}

/// Witness data for a positive equivalence decision: `multiplier * a * target
/// == source (mod n)` with `a` coprime to the order of the target class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub multiplier: u64,
    pub a: u64,
}

/// Outcome of [`derived_equivalent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceDecision {
    pub equivalent: bool,
    pub witness: Option<EquivalenceWitness>,
}

/// Decides whether the torsors classified by `source` and `target` have
/// equivalent derived categories.
///
/// The criterion: the classes are equivalent exactly when `source` equals
/// `s * a * target` mod `n` for some automorphism multiplier `s` and some
/// integer `a` coprime to the order of `target`. The search is exhaustive
/// over `a` in `1..=element_order(target)` and deterministic (smallest
/// multiplier first, then smallest `a`), so reported witnesses are stable.
pub fn derived_equivalent(
    source: &TorsorClass,
    target: &TorsorClass,
    aut: &AutModel,
) -> Result<EquivalenceDecision, TorsorError> {
    if source.group != target.group {
        return Err(TorsorError::GroupMismatch {
            left: source.group.order,
            right: target.group.order,
        });
    }
    if aut.group != source.group {
        return Err(TorsorError::GroupMismatch {
            left: aut.group.order,
            right: source.group.order,
        });
    }
    let n = source.group.order as u128;
    let target_order = target.element_order();
    for s in aut.multipliers() {
        for a in 1..=target_order {
            if a.gcd(&target_order) != 1 {
                continue;
            }
            let reached = (s as u128 * a as u128 % n) * (target.value as u128) % n;
            if reached == source.value as u128 {
                return Ok(EquivalenceDecision {
                    equivalent: true,
                    witness: Some(EquivalenceWitness { multiplier: s, a }),
                });
            }
        }
    }
    Ok(EquivalenceDecision {
        equivalent: false,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: u64) -> TorsorGroup {
        TorsorGroup::new(n).unwrap()
    }

    #[test]
    fn element_orders() {
        assert_eq!(group(6).class(2).element_order(), 3);
        assert_eq!(group(6).class(0).element_order(), 1);
        assert_eq!(group(5).class(1).element_order(), 5);
        // oracle: order of k mod n is the least t > 0 with t*k = 0 mod n
        for n in 1..=24u64 {
            for k in 0..n {
                let oracle = (1..=n)
                    .find(|t| (t * k) % n == 0)
                    .expect("n itself always annihilates");
                assert_eq!(group(n).class(k).element_order(), oracle, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pic_class_multiplies() {
        let c = group(6).class(1);
        assert_eq!(c.pic_class(2).value(), 2);
        assert_eq!(c.pic_class(0).value(), 0);
        assert_eq!(c.pic_class(7).value(), 1);
        assert_eq!(c.pic_class(-1).value(), 5);
        assert_eq!(group(6).class(4).pic_class(-2).value(), 4);
    }

    #[test]
    fn aut_model_validation() {
        let g = group(6);
        assert!(AutModel::new(g, [1, 5]).is_ok());
        // 2 is not a unit mod 6
        assert!(matches!(
            AutModel::new(g, [1, 2]),
            Err(TorsorError::InvalidAutModel { .. })
        ));
        // missing 1
        assert!(matches!(
            AutModel::new(g, [5]),
            Err(TorsorError::InvalidAutModel { .. })
        ));
        // 1 and 5 are self-inverse mod 6; {1,5} closed. 5*5 = 25 = 1 mod 6.
        let pm = AutModel::plus_minus_one(g);
        assert_eq!(pm.multipliers().collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(
            AutModel::trivial(g).multipliers().collect::<Vec<_>>(),
            vec![1]
        );
        // order 1: everything collapses to {0}
        let unit = AutModel::plus_minus_one(group(1));
        assert_eq!(unit.multipliers().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn order_six_counterexample() {
        // n = 6, source class 1, target class 2 = Pic^2 of the source,
        // automorphisms {±1}: every reachable class is a unit multiple of 2
        // mod 6, i.e. in {2, 4}, so class 1 is not equivalent to class 2.
        let g = group(6);
        let source = g.class(1);
        let target = source.pic_class(2);
        let decision = derived_equivalent(&source, &target, &AutModel::plus_minus_one(g)).unwrap();
        assert!(!decision.equivalent);
        assert_eq!(decision.witness, None);
    }

    #[test]
    fn reflexive_with_identity_witness() {
        for n in 2..=12 {
            let g = group(n);
            for v in 0..n {
                let c = g.class(v);
                let d = derived_equivalent(&c, &c, &AutModel::plus_minus_one(g)).unwrap();
                assert!(d.equivalent);
                assert_eq!(
                    d.witness,
                    Some(EquivalenceWitness {
                        multiplier: 1,
                        a: 1
                    })
                );
            }
        }
    }

    #[test]
    fn order_five_witness() {
        // n = 5, classes 1 and 2: 3 * 2 = 6 = 1 mod 5, so the witness found
        // by the ascending search is (multiplier 1, a 3).
        let g = group(5);
        let source = g.class(1);
        let target = g.class(2);
        let aut = AutModel::new(g, [1, 4]).unwrap();
        let d = derived_equivalent(&source, &target, &aut).unwrap();
        assert!(d.equivalent);
        assert_eq!(
            d.witness,
            Some(EquivalenceWitness {
                multiplier: 1,
                a: 3
            })
        );
        // oracle: independent enumeration of unit multiples of the target
        let reachable: Vec<u64> = (1..=5).map(|a| (a * 2) % 5).collect();
        assert!(reachable.contains(&1));
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = group(5).class(1);
        let b = group(6).class(1);
        let aut = AutModel::plus_minus_one(group(5));
        assert_eq!(
            derived_equivalent(&a, &b, &aut),
            Err(TorsorError::GroupMismatch { left: 5, right: 6 })
        );
        let aut6 = AutModel::plus_minus_one(group(6));
        let c = group(5).class(2);
        assert!(matches!(
            derived_equivalent(&a, &c, &aut6),
            Err(TorsorError::GroupMismatch { .. })
        ));
    }

    #[test]
    fn equivalence_preserves_element_order() {
        for n in 1..=24u64 {
            let g = group(n);
            let aut = AutModel::plus_minus_one(g);
            for x in 0..n {
                for y in 0..n {
                    let d = derived_equivalent(&g.class(x), &g.class(y), &aut).unwrap();
                    if d.equivalent {
                        assert_eq!(
                            g.class(x).element_order(),
                            g.class(y).element_order(),
                            "n={n} x={x} y={y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn order_one_group_is_degenerate() {
        let g = group(1);
        let d = derived_equivalent(&g.class(0), &g.class(0), &AutModel::trivial(g)).unwrap();
        assert!(d.equivalent);
    }

    #[test]
    fn aut_invariance_of_the_verdict() {
        // Replacing the source by s * source for an automorphism multiplier s
        // never changes the verdict.
        for n in 1..=16u64 {
            let g = group(n);
            let aut = AutModel::plus_minus_one(g);
            let multipliers: Vec<u64> = aut.multipliers().collect();
            for x in 0..n {
                for y in 0..n {
                    let base = derived_equivalent(&g.class(x), &g.class(y), &aut)
                        .unwrap()
                        .equivalent;
                    for &s in &multipliers {
                        let moved = g.class((s as u128 * x as u128 % n as u128) as u64);
                        let got = derived_equivalent(&moved, &g.class(y), &aut)
                            .unwrap()
                            .equivalent;
                        assert_eq!(base, got, "n={n} x={x} y={y} s={s}");
                    }
                }
            }
        }
    }
}
