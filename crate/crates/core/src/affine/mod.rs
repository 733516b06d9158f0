//! Finitely generated submonoids of `Z^r`: membership with certificates,
//! unit groups, face primes, the spectrum, and the normality test behind
//! the maximal-order criterion.
//!
//! The geometry is split into three layers. [`cone`] holds the exact double
//! description machinery (facets from generators and back). [`hilbert`]
//! computes Hilbert bases of pointed cones. [`monoid`] ties both to the
//! lattice arithmetic and exposes the monoid-level queries.

pub mod cone;
pub mod hilbert;
pub mod monoid;
mod parse;

pub use cone::{intersect_halfspaces, ConeData, ConeRays};
pub use hilbert::{hilbert_basis, HilbertBudget};
pub use monoid::{
    free_intersection_basis, AffineError, AffineMonoid, FacePrime, Membership,
    MembershipCertificate, Normality, SpectrumNode, SpectrumPoset, UnitGroup,
    DEFAULT_MEMBER_NODES,
};
pub use parse::parse_affine_monoid;
