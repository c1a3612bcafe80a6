//! Exact symbolic calculator for integral-transform kernels on Gm-gerbes
//! over genus-1 curves.
//!
//! Everything here is bookkeeping with integers and exact rationals; there is
//! no floating point anywhere. The crate is organised bottom-up:
//!
//! - [`torsor`] — cyclic-group model for torsors under an elliptic curve and
//!   the coprime-multiple equivalence criterion.
//! - [`weights`] — inertia weights on a gerbe, Brauer twists, and the
//!   restriction/lift dictionary between weighted and twisted objects.
//! - [`chow`] — a small rewrite-based intersection calculus on products of up
//!   to three gerbey curves, with exact rational coefficients.
//! - [`grr`] — Riemann–Roch numerology for gerbey genus-1 curves (trivial
//!   Todd class) and pushforward invariants of kernel classes.
//! - [`kernel`] — the integral-transform kernel algebra: universal Picard
//!   kernels, duals and adjoints, convolution, moduli tags, twisted shadows.
//! - [`report`], [`scenario`], [`cli`] — the command-line surface: structured
//!   reports, a line-oriented scenario format for golden runs, and the
//!   subcommand dispatcher used by the `fmcalc` binary.

pub mod chow;
pub mod cli;
pub mod grr;
pub mod kernel;
pub mod report;
pub mod scenario;
pub mod torsor;
pub mod weights;

pub use chow::{ChowElement, DivisorClass, Generator, IntersectionTable, Monomial, ProductSpace};
pub use grr::{CurveId, GerbeyCurve};
pub use kernel::{FmKernel, HomProfile, ModuliTag, TwistedShadow};
pub use torsor::{AutModel, EquivalenceDecision, TorsorClass, TorsorGroup};
pub use weights::{BrauerClass, TwistedObject, WeightedObject};

/// Exact rational scalar used throughout the intersection calculus.
pub type Rational = num_rational::Rational64;
