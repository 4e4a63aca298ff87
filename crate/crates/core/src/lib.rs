//! Exact combinatorics of antichain codes in the hypercube.
//!
//! The crate models set families over a ground set of at most 63 elements as
//! sorted bit-mask vectors and builds everything else on top: shadow
//! operators and local-LYM checks, extremal constructions (middle layers,
//! Hamming and greedy codes, averaged translations), a certified
//! branch-and-bound search for maximum antichain codes, exact
//! Littlewood-Offord concentration, and an empirical lab for the
//! shadow-expansion inequality that drives the extremal bound. All densities
//! and bounds are exact rationals; nothing is ever rounded.

pub mod binom;
pub mod checks;
pub mod constructions;
pub mod error;
pub mod family;
pub mod lemma;
pub mod littlewood;
pub mod ratio;
pub mod search;
pub mod shadow;
pub mod subset;

pub use checks::{is_antichain, is_code, min_distance, AntichainReport, DistanceReport};
pub use error::{Error, HypothesisViolation, Result};
pub use family::SetFamily;
pub use ratio::Rat;
pub use shadow::{shadow, upper_shadow};
pub use subset::{hamming_distance, Subset};
