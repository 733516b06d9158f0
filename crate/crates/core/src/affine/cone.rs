//! Exact double-description engine for rational polyhedral cones.
//!
//! A cone is carried as a lineality basis plus extreme rays, all primitive
//! integer vectors. Halfspaces are inserted one at a time; every update is a
//! pair of integer cross-multiplications, so no rounding ever happens. The
//! same primitive converts between the two representations in either
//! direction, since the dual of `{x : a_i.x >= 0}` is generated by the a_i.

use crate::lattice::IntVector;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Lineality basis plus extreme rays; together they span the cone as
/// `lin(lineality) + cone(rays)`. Both lists are primitive and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRays {
    pub lineality: Vec<IntVector>,
    pub rays: Vec<IntVector>,
}

impl ConeRays {
    /// Dimension of the cone's linear span.
    pub fn span_rank(&self) -> usize {
        if self.lineality.is_empty() && self.rays.is_empty() {
            return 0;
        }
        let all: Vec<IntVector> = self
            .lineality
            .iter()
            .chain(self.rays.iter())
            .cloned()
            .collect();
        crate::lattice::rank(&crate::lattice::IntMatrix::from_columns(&all))
    }
}

struct DoubleDescription {
    lineality: Vec<IntVector>,
    rays: Vec<IntVector>,
    processed: Vec<IntVector>,
}

impl DoubleDescription {
    fn full_space(ambient: usize) -> Self {
        DoubleDescription {
            lineality: (0..ambient).map(|i| IntVector::unit(ambient, i)).collect(),
            rays: Vec::new(),
            processed: Vec::new(),
        }
    }

    fn insert(&mut self, a: &IntVector) {
        if a.is_zero() {
            return;
        }
        // a direction of lineality crossing the halfspace becomes a ray
        if let Some(pos) = self.lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut pivot = self.lineality.remove(pos);
            if a.dot(&pivot).is_negative() {
                pivot = pivot.neg();
            }
            let ap = a.dot(&pivot);
            for l in &mut self.lineality {
                let al = a.dot(l);
                if !al.is_zero() {
                    *l = l.scale(&ap).sub(&pivot.scale(&al)).primitive();
                }
            }
            for r in &mut self.rays {
                let ar = a.dot(r);
                if !ar.is_zero() {
                    *r = r.scale(&ap).sub(&pivot.scale(&ar)).primitive();
                }
            }
            self.rays.push(pivot);
            self.processed.push(a.clone());
            return;
        }

        let values: Vec<BigInt> = self.rays.iter().map(|r| a.dot(r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            self.processed.push(a.clone());
            return;
        }
        let zero_sets: Vec<Vec<bool>> = self
            .rays
            .iter()
            .map(|r| {
                self.processed
                    .iter()
                    .map(|h| h.dot(r).is_zero())
                    .collect()
            })
            .collect();
        let plus: Vec<usize> = (0..self.rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let minus: Vec<usize> = (0..self.rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();

        let mut next: Vec<IntVector> = (0..self.rays.len())
            .filter(|i| !values[*i].is_negative())
            .map(|i| self.rays[i].clone())
            .collect();
        for &p in &plus {
            for &m in &minus {
                if !self.adjacent(&zero_sets, p, m) {
                    continue;
                }
                let combo = self.rays[m]
                    .scale(&values[p])
                    .sub(&self.rays[p].scale(&values[m]))
                    .primitive();
                if !combo.is_zero() && !next.contains(&combo) {
                    next.push(combo);
                }
            }
        }
        self.rays = next;
        self.processed.push(a.clone());
    }

    /// Combinatorial adjacency: two rays are adjacent unless some third
    /// ray's zero set contains the common zero set of both.
    fn adjacent(&self, zero_sets: &[Vec<bool>], p: usize, m: usize) -> bool {
        for r in 0..self.rays.len() {
            if r == p || r == m {
                continue;
            }
            let covers = zero_sets[p]
                .iter()
                .zip(&zero_sets[m])
                .zip(&zero_sets[r])
                .all(|((zp, zm), zr)| !(*zp && *zm) || *zr);
            if covers {
                return false;
            }
        }
        true
    }
}

/// Rays and lineality of `{x : a.x >= 0 for every listed a}`.
pub fn intersect_halfspaces(ambient: usize, normals: &[IntVector]) -> ConeRays {
    let mut dd = DoubleDescription::full_space(ambient);
    for a in normals {
        dd.insert(a);
    }
    let mut lineality = dd.lineality;
    let mut rays = dd.rays;
    for v in lineality.iter_mut() {
        *v = v.primitive();
    }
    lineality.sort();
    rays.sort();
    ConeRays { lineality, rays }
}

/// Both descriptions of the cone generated by `generators`.
///
/// `facets` are the supporting halfspace normals (rays of the dual cone)
/// and `orth` is a basis of the orthogonal complement of the span, so
/// membership is `orth.x = 0` and `facets.x >= 0`. `rays`/`lineality` are
/// the irredundant generators recovered by dualizing twice.
#[derive(Clone, Debug)]
pub struct ConeData {
    pub ambient: usize,
    pub facets: Vec<IntVector>,
    pub orth: Vec<IntVector>,
    pub rays: Vec<IntVector>,
    pub lineality: Vec<IntVector>,
}

impl ConeData {
    pub fn from_generators(ambient: usize, generators: &[IntVector]) -> Self {
        let dual = intersect_halfspaces(ambient, generators);
        let mut h = dual.rays.clone();
        for w in &dual.lineality {
            h.push(w.clone());
            h.push(w.neg());
        }
        let primal = intersect_halfspaces(ambient, &h);
        ConeData {
            ambient,
            facets: dual.rays,
            orth: dual.lineality,
            rays: primal.rays,
            lineality: primal.lineality,
        }
    }

    /// Exact membership of a vector in the cone.
    pub fn contains(&self, v: &IntVector) -> bool {
        self.orth.iter().all(|w| w.dot(v).is_zero())
            && self.facets.iter().all(|f| !f.dot(v).is_negative())
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Sum of the facet normals: a functional that is zero on the lineality
    /// and strictly positive on every cone element outside it.
    pub fn positive_functional(&self) -> IntVector {
        let mut f = IntVector::zeros(self.ambient);
        for h in &self.facets {
            f = f.add(h);
        }
        f
    }
}
