//! Bounded search for elements of the group of fractions that could be
//! adjoined to the monoid without disturbing its base.
//!
//! The monoid is maximal precisely when no proper overmonoid meets the
//! lattice of the base in the base itself. The check sweeps a box of
//! candidate elements `x * w` outside the monoid; a candidate is harmless
//! ("absorbing") once some product with monoid elements lands in the lattice
//! but outside the base, because adjoining it then visibly enlarges the base
//! part. The sweep is bounded in both the box and the product length, so a
//! clean result is only ever "verified up to these bounds".

use std::collections::HashSet;

use super::{group_extension_of, CrossedElement, CrossedError, CrossedSystem, GroupExtension};
use crate::affine::Normality;
use crate::lattice::IntVector;
use crate::par;
use crate::report::Status;
use num_bigint::BigInt;
use num_traits::Zero;

/// Outcome of the bounded sweep.
#[derive(Debug)]
pub struct MaximalityReport {
    pub radius: usize,
    pub box_bound: i64,
    /// Candidates examined, after skipping those already inside the monoid.
    pub witnesses_tested: usize,
    pub skipped_in_monoid: usize,
    pub absorbed: usize,
    /// Witnesses whose search exhausted the radius without an escape.
    pub failures: Vec<String>,
    pub status: Status,
    pub note: String,
}

/// Sign test against the facets: exact base membership for a lattice point
/// over a normal base.
fn in_base(cs: &CrossedSystem, ambient: &IntVector) -> bool {
    cs.base
        .facets()
        .iter()
        .all(|h| h.dot(ambient) >= BigInt::zero())
}

fn in_monoid(cs: &CrossedSystem, ext: &GroupExtension, e: &CrossedElement) -> bool {
    let class = ext.classes[e.component];
    (0..cs.components()).any(|j| {
        ext.classes[j] == class && {
            let v = e.coords.add(&ext.deltas[e.component]).sub(&ext.deltas[j]);
            in_base(cs, &cs.base.from_group_coordinates(&v))
        }
    })
}

/// Searches products of the witness with monoid elements, at most `radius`
/// generator letters in total, for one landing in the group lattice of the
/// base but outside the base. Returns that product and its lattice value.
pub fn absorbing_escape(
    cs: &CrossedSystem,
    ext: &GroupExtension,
    witness: &CrossedElement,
    radius: usize,
) -> Option<(CrossedElement, IntVector)> {
    let mut seen: HashSet<CrossedElement> = HashSet::new();
    let mut frontier = vec![witness.clone()];
    seen.insert(witness.clone());
    for depth in 0..=radius {
        let mut next = Vec::new();
        for e in &frontier {
            if let Some(val) = ext.lattice_value(e) {
                if !in_base(cs, &cs.base.from_group_coordinates(&val)) {
                    return Some((e.clone(), val));
                }
            }
            if depth == radius {
                continue;
            }
            for l in 0..cs.rewrite.generator_count() {
                let g = cs.letter_element(l as u32);
                for product in [cs.compose(g, e), cs.compose(e, g)] {
                    if seen.insert(product.clone()) {
                        next.push(product);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    None
}

/// Sweeps every transversal class against every lattice vector in the box
/// `[-box_bound, box_bound]^rank` and reports whether all candidates outside
/// the monoid absorb within the radius. Never definitive: a clean sweep
/// verifies maximality only up to the stated bounds.
pub fn maximality_check(
    cs: &CrossedSystem,
    radius: usize,
    box_bound: i64,
) -> Result<MaximalityReport, CrossedError> {
    match cs.base.is_maximal_order() {
        Normality::Normal => {}
        Normality::NotNormal { .. } => {
            return Err(CrossedError::Certificate {
                needed: "a normal base; the sweep relies on exact facet membership".into(),
            })
        }
        Normality::Unknown { reason } => return Err(CrossedError::Certificate { needed: reason }),
    }
    let ext = group_extension_of(cs)?;
    let rank = cs.base.group_rank();

    let mut coords = vec![IntVector(Vec::new())];
    for _ in 0..rank {
        let mut grown = Vec::with_capacity(coords.len() * (2 * box_bound as usize + 1));
        for v in &coords {
            for c in -box_bound..=box_bound {
                let mut w = v.0.clone();
                w.push(BigInt::from(c));
                grown.push(IntVector(w));
            }
        }
        coords = grown;
    }

    let mut witnesses = Vec::new();
    for rep in &ext.class_reps {
        for x in &coords {
            witnesses.push(CrossedElement {
                coords: x.clone(),
                component: *rep,
            });
        }
    }

    enum Sweep {
        Skipped,
        Absorbed,
        Exhausted(String),
    }
    let results = par::map_vec(witnesses, |w| {
        if in_monoid(cs, &ext, &w) {
            return Sweep::Skipped;
        }
        match absorbing_escape(cs, &ext, &w, radius) {
            Some(_) => Sweep::Absorbed,
            None => Sweep::Exhausted(cs.describe_element(&w)),
        }
    });

    let mut skipped = 0;
    let mut absorbed = 0;
    let mut failures = Vec::new();
    for r in results {
        match r {
            Sweep::Skipped => skipped += 1,
            Sweep::Absorbed => absorbed += 1,
            Sweep::Exhausted(d) => failures.push(d),
        }
    }
    let tested = absorbed + failures.len();

    let (status, note) = if failures.is_empty() {
        (
            Status::Verified,
            format!(
                "all {} candidates outside the monoid absorbed; verified up to radius {} and box {}, larger candidates untested",
                tested, radius, box_bound
            ),
        )
    } else {
        (
            Status::unknown(format!(
                "possible counterexample: {} (and {} more) found no escape within radius {}",
                failures[0],
                failures.len() - 1,
                radius
            )),
            format!(
                "{} of {} candidates found no escape within the bounds",
                failures.len(),
                tested
            ),
        )
    };

    Ok(MaximalityReport {
        radius,
        box_bound,
        witnesses_tested: tested,
        skipped_in_monoid: skipped,
        absorbed,
        failures,
        status,
        note,
    })
}
