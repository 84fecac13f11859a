//! Exact index-iteration calculus for closed geodesics on Finsler spheres.
//!
//! Iterate indices come from Bott's formula applied to an [`IndexProfile`];
//! loop-space Betti numbers come from a closed-form Poincaré series; the two
//! meet in the Morse inequalities. The [`verifier`] module searches every
//! single-geodesic candidate of a small dimension for a contradiction.
//!
//! All arithmetic is exact. Profiles are generic over the integer type
//! behind their rational phases; [`Profile`] uses `i64` and [`BigProfile`]
//! uses arbitrary precision.

pub mod bott;
pub mod document;
pub mod error;
pub mod homology;
pub mod morse;
pub mod profile;
pub mod scalar;
pub mod series;
pub mod verifier;

pub use bott::{ArcHit, GapDecomposition, Gamma, IterateIndexReport};
pub use document::{parse_profile, profile_to_json, ProfileDocument};
pub use error::{Error, Result};
pub use homology::{average_euler_number, betti_number, poincare_coefficients, BettiTable};
pub use morse::{aggregate_w, critical_group_dim, iterate_cutoff, morse_q_recursion, MorseReport};
pub use profile::{validate_profile, IndexProfile, SplittingPair, Violation};
pub use scalar::{format_ratio, parse_ratio, Int};
pub use verifier::{
    check_prop33, enumerate_signatures, extremal_profile, phase_instantiate,
    single_geodesic_pipeline, verify_theorem, ContradictionReport, Signature, Step, Summary,
    Verdict,
};

pub use num_bigint::BigInt;

pub type Rational = num_rational::Ratio<i64>;
pub type BigRational = num_rational::Ratio<BigInt>;
pub type Profile = IndexProfile<i64>;
pub type BigProfile = IndexProfile<BigInt>;
