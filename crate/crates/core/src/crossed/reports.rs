//! Assembled verdicts: dimension bookkeeping and the combined maximal-order
//! report over all six sub-criteria.

use super::{
    group_extension_of, invariance_condition, maximality_check, prime_action_orbits,
    CrossedSystem,
};
use crate::affine::Normality;
use crate::groups::{GroupElement, GroupVerdict};
use crate::report::Status;

/// Dimension of the monoid and, when available, the classical Krull
/// dimension of its semigroup algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dim_s: usize,
    pub clkdim: Option<usize>,
    pub note: String,
}

/// The monoid and its base share their dimension; with a trivial unit group
/// the algebra's classical Krull dimension equals it as well, otherwise the
/// plinth-length correction is left uncomputed.
pub fn dimension_report(cs: &CrossedSystem) -> DimensionReport {
    let dim_s = cs.base.dim();
    if cs.base.unit_rank() == 0 {
        DimensionReport {
            dim_s,
            clkdim: Some(dim_s),
            note: "unit group trivial, plinth length zero".into(),
        }
    } else {
        DimensionReport {
            dim_s,
            clkdim: None,
            note: "clKdim = dim_S + pl(U(S)) [pl not computed]".into(),
        }
    }
}

/// Search bounds for the bounded stages of the combined report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem33Bounds {
    /// Product length in the maximality sweep.
    pub radius: usize,
    /// Coordinate box for maximality witnesses.
    pub box_bound: i64,
    /// Exponent bound in the separation power certificate.
    pub exponent: usize,
}

impl Default for Theorem33Bounds {
    fn default() -> Self {
        Theorem33Bounds {
            radius: 4,
            box_bound: 2,
            exponent: 8,
        }
    }
}

/// Combined verdict: the algebra is a prime Noetherian maximal order exactly
/// when every listed condition holds drives the overall status.
#[derive(Debug)]
pub struct Theorem33Report {
    /// The base is integrally closed in its group of fractions.
    pub base_normal: Status,
    /// Ascending chain condition on one-sided ideals: automatic for a
    /// finitely generated base under a finite transversal.
    pub acc: Status,
    /// The torsion-over-torsion-free obstruction to primeness vanishes.
    pub delta_plus: Status,
    /// No rank-one inverted axis in the group of fractions.
    pub dihedral_free: Status,
    /// Conjugation carries each orbit trace into itself.
    pub invariance: Status,
    /// Bounded maximality sweep.
    pub s_maximal: Status,
    pub overall: Status,
    pub dimension: DimensionReport,
    pub orbit_count: Option<usize>,
    pub base_prime_count: Option<usize>,
    pub bounds: Theorem33Bounds,
}

fn render_group_witness(names: &[String], w: &GroupElement) -> String {
    format!("({}) in coset {}", w.vector, names[w.coset])
}

fn verdict_status(names: &[String], v: &GroupVerdict) -> Status {
    if v.holds {
        return Status::Verified;
    }
    let mut parts = Vec::new();
    if let Some(w) = &v.witness {
        parts.push(render_group_witness(names, w));
    }
    if let Some(a) = &v.axis {
        parts.push(format!("inverted axis {}", a));
    }
    if parts.is_empty() {
        parts.push("property fails".into());
    }
    Status::refuted(parts.join("; "))
}

/// Runs the full pipeline with the default bounds.
pub fn theorem33_report(cs: &CrossedSystem) -> Theorem33Report {
    theorem33_report_with(cs, Theorem33Bounds::default())
}

/// Runs the full pipeline: base normality, chain conditions, the two group
/// criteria on the extension, trace invariance, and the bounded maximality
/// sweep. Sub-stage errors surface as `Unknown` statuses, never panics.
pub fn theorem33_report_with(cs: &CrossedSystem, bounds: Theorem33Bounds) -> Theorem33Report {
    let base_normal = match cs.base.is_maximal_order() {
        Normality::Normal => Status::Verified,
        Normality::NotNormal { witness } => {
            Status::refuted(format!("base is not closed at {}", witness))
        }
        Normality::Unknown { reason } => Status::unknown(reason),
    };
    let acc = Status::Verified;

    let (delta_plus, dihedral_free) = match group_extension_of(cs) {
        Ok(ext) => {
            let names = &ext.data.quotient.names;
            (
                verdict_status(names, &ext.data.delta_plus_trivial()),
                verdict_status(names, &ext.data.dihedral_free()),
            )
        }
        Err(e) => (
            Status::unknown(e.to_string()),
            Status::unknown(e.to_string()),
        ),
    };

    let invariance = match invariance_condition(cs) {
        Ok(s) => s,
        Err(e) => Status::unknown(e.to_string()),
    };

    let s_maximal = match maximality_check(cs, bounds.radius, bounds.box_bound) {
        Ok(r) => r.status,
        Err(e) => Status::unknown(e.to_string()),
    };

    let (orbit_count, base_prime_count) = match prime_action_orbits(cs) {
        Ok(o) => (Some(o.orbits.len()), Some(o.primes.len())),
        Err(_) => (None, None),
    };

    let overall = Status::combine_all([
        &base_normal,
        &acc,
        &delta_plus,
        &dihedral_free,
        &invariance,
        &s_maximal,
    ]);

    Theorem33Report {
        base_normal,
        acc,
        delta_plus,
        dihedral_free,
        invariance,
        s_maximal,
        overall,
        dimension: dimension_report(cs),
        orbit_count,
        base_prime_count,
        bounds,
    }
}
