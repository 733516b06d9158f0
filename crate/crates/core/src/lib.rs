//! Exact-arithmetic workbench for finitely presented monoids given by
//! monomial relations.
//!
//! The crate is organised around one pipeline: a presentation is completed
//! into a confluent rewriting system ([`presentations`]), its abelian base is
//! modelled as an affine monoid over arbitrary-precision integers
//! ([`lattice`], [`affine`]), the finite data of the surrounding group is
//! captured as a quotient-plus-cocycle extension ([`groups`]), and the crossed
//! structure tying the two together is extracted and interrogated
//! ([`crossed`]). Every check either produces a certificate, a refuting
//! witness, or an explicit `Unknown` carrying the bound that was exhausted;
//! no routine guesses.

pub mod affine;
pub mod bundle;
pub mod crossed;
pub mod groups;
pub mod lattice;
pub mod par;
pub mod presentations;
pub mod report;

pub use report::Status;
