//! From the coset decomposition to a lattice-by-finite group extension.
//!
//! Extraction already identified which transversal components lie in a
//! common coset of the group of fractions of the base, and verified that the
//! product data descends to those classes. This module packages the result:
//! it reads the finite quotient, its action on the lattice, and the cocycle
//! recording the failure of the representatives to multiply directly off the
//! product table, then runs the assembled data through the full extension
//! validator before returning it.

use super::{CrossedElement, CrossedError, CrossedSystem};
use crate::affine::Membership;
use crate::groups::{ExtensionData, FiniteQuotientTable};
use crate::lattice::{IntMatrix, IntVector};

/// The group of fractions of a crossed system: extension data over the
/// lattice `gr(base)`, plus the dictionary between transversal components and
/// quotient elements.
#[derive(Debug)]
pub struct GroupExtension {
    pub data: ExtensionData,
    /// Quotient element index of each transversal component.
    pub classes: Vec<usize>,
    /// Transversal component representing each quotient element.
    pub class_reps: Vec<usize>,
    /// `wi = deltas[i] + w_rep` in group-basis coordinates, `rep` the
    /// representative of `wi`'s class.
    pub deltas: Vec<IntVector>,
}

impl GroupExtension {
    /// Quotient element of the identity coset.
    pub fn identity_class(&self) -> usize {
        self.classes[0]
    }

    /// Whether the element lies in the monoid itself rather than just its
    /// group of fractions. `None` when a base membership query gives out.
    pub fn element_in_monoid(&self, cs: &CrossedSystem, e: &CrossedElement) -> Option<bool> {
        let cls = self.classes[e.component];
        let mut unknown = false;
        for j in 0..cs.components() {
            if self.classes[j] != cls {
                continue;
            }
            let v = e.coords.add(&self.deltas[e.component]).sub(&self.deltas[j]);
            match cs.base.member(&cs.base.from_group_coordinates(&v)) {
                Membership::Member(_) => return Some(true),
                Membership::NotMember => {}
                Membership::Unknown { .. } => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(false)
        }
    }

    /// Group-basis coordinates of the element when it lies inside the lattice
    /// subgroup; `None` when its coset is not the identity.
    pub fn lattice_value(&self, e: &CrossedElement) -> Option<IntVector> {
        if self.classes[e.component] == self.identity_class() {
            Some(e.coords.add(&self.deltas[e.component]))
        } else {
            None
        }
    }
}

/// Reads the group of fractions off a crossed system: quotient table, action,
/// and cocycle, all indexed by the coset classes the extraction established.
/// The assembled data passes the full extension validator or an error says
/// which group axiom broke.
pub fn group_extension_of(cs: &CrossedSystem) -> Result<GroupExtension, CrossedError> {
    let classes = cs.component_classes.clone();
    let class_reps = cs.class_reps.clone();
    let deltas = cs.component_deltas.clone();

    let names: Vec<String> = class_reps
        .iter()
        .map(|&r| cs.transversal[r].format(&cs.rewrite.generators))
        .collect();
    let table: Vec<Vec<usize>> = class_reps
        .iter()
        .map(|&ri| {
            class_reps
                .iter()
                .map(|&rj| classes[cs.product_table[ri][rj].1])
                .collect()
        })
        .collect();
    let quotient = FiniteQuotientTable {
        names,
        table,
        identity: 0,
    };

    let action: Vec<IntMatrix> = class_reps.iter().map(|&r| cs.action[r].clone()).collect();
    let cocycle: Vec<Vec<IntVector>> = class_reps
        .iter()
        .map(|&ri| {
            class_reps
                .iter()
                .map(|&rj| {
                    let k = cs.product_table[ri][rj].1;
                    cs.table_coords[ri][rj].add(&deltas[k])
                })
                .collect()
        })
        .collect();

    let data = ExtensionData {
        name: format!("{}.group", cs.name),
        rank: cs.group_rank(),
        quotient,
        action,
        cocycle,
    };
    data.validate()
        .map_err(|v| CrossedError::Invariant(v.to_string()))?;

    debug_assert_eq!(classes[0], 0);
    Ok(GroupExtension {
        data,
        classes,
        class_reps,
        deltas,
    })
}
