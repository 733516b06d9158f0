//! Monoids that decompose as finitely many cosets over an abelian base.
//!
//! Everything here starts from a confluent rewriting system together with a
//! claimed decomposition: an affine monoid `B` realised by words of the
//! presentation, and a finite transversal `w0 = 1, w1, ...` such that every
//! element factors as `b * wi`. [`extract_crossed_system`] checks the claim
//! against normal forms up to a stated length and, when it holds, returns the
//! whole multiplication compressed into finite data: an integer action matrix
//! per transversal word and a product table for the pairs `wi * wj`.
//!
//! On top of that system the submodules answer the questions that decide
//! whether the semigroup algebra is a prime Noetherian maximal order:
//! [`group_extension_of`] rebuilds the group of fractions as a
//! lattice-by-finite extension, [`prime_action_orbits`] tracks how conjugation
//! permutes the minimal primes of the base and intersects each orbit into a
//! trace ideal, [`separation_certificates`] and [`minimal_primes_of_S`]
//! certify the lifted minimal primes, [`maximality_check`] probes boundedly
//! for elements that could enlarge the monoid without enlarging the base, and
//! [`theorem33_report`] folds all criteria into one verdict. Monomial-matrix
//! evidence for cancellativity lives in [`rep`].
//!
//! All routines either certify, refute with a witness, or say `Unknown` with
//! the exhausted bound; none guess.

mod extension;
mod maximality;
mod primes;
pub mod rep;
mod reports;
mod system;

pub use extension::{group_extension_of, GroupExtension};
pub use maximality::{absorbing_escape, maximality_check, MaximalityReport};
pub use primes::{
    invariance_condition, minimal_primes_of_S, prime_action_orbits, separation_certificates,
    separation_certificates_with, LiftedPrime, MinimalPrimeReport, OrbitDecomposition,
    SeparationReport, TraceIdeal, DEFAULT_POWER_BOUND,
};
pub use rep::{
    parse_monomial_rep, verify_monomial_rep, word_image, MonomialMatrix, RepFailure,
    RepParseError, RepScan,
};
pub use reports::{
    dimension_report, theorem33_report, theorem33_report_with, DimensionReport, Theorem33Bounds,
    Theorem33Report,
};
pub use system::{extract_crossed_system, CrossedElement, CrossedSystem};

use thiserror::Error;

/// Structural failures while building or interrogating a coset decomposition.
/// Offending words are rendered in the presentation's generator names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedError {
    #[error("base words `{left}` and `{right}` do not commute: products normalise to `{word}` vs `{other}`")]
    Commutativity {
        left: String,
        right: String,
        word: String,
        other: String,
    },
    #[error("conjugating base generator `{base_generator}` by `{generator}` does not land back on the base generator set (product `{word}`)")]
    Normality {
        generator: String,
        base_generator: String,
        word: String,
    },
    #[error("normal form `{word}` does not factor as base times transversal within the checked length")]
    Coverage { word: String },
    #[error("the base/transversal data does not realise the monoid at `{word}`: {detail}")]
    Realization { word: String, detail: String },
    #[error("missing certificate: {needed}")]
    Certificate { needed: String },
    #[error("internal consistency violation: {0}")]
    Invariant(String),
    #[error("{0}")]
    Shape(String),
}
