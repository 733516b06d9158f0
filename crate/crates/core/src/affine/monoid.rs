//! Finitely generated submonoids of `Z^r` and their ideal structure.
//!
//! A monoid is handed over as a list of integer generator vectors. All
//! queries run in exact arithmetic and return certified answers: membership
//! produces an explicit nonnegative combination or an exhaustive refusal,
//! primes come with their defining face, and the maximal-order test either
//! confirms normality or exhibits a lattice point of the cone that the
//! monoid misses.

use super::cone::{intersect_halfspaces, ConeData};
use super::hilbert::{hilbert_basis, invert_unimodular, HilbertBudget};
use crate::lattice::{
    hermite_form, kernel_basis, smith_form, IntMatrix, IntVector, IntegerSolver,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use std::sync::OnceLock;
use thiserror::Error;

/// Default node budget for the membership search.
pub const DEFAULT_MEMBER_NODES: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum AffineError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// Submonoid of `Z^r` generated by finitely many integer vectors.
#[derive(Debug)]
pub struct AffineMonoid {
    pub name: String,
    pub ambient_rank: usize,
    pub generator_names: Vec<String>,
    pub generators: Vec<IntVector>,
    analysis: OnceLock<Analysis>,
}

impl Clone for AffineMonoid {
    fn clone(&self) -> Self {
        AffineMonoid {
            name: self.name.clone(),
            ambient_rank: self.ambient_rank,
            generator_names: self.generator_names.clone(),
            generators: self.generators.clone(),
            analysis: OnceLock::new(),
        }
    }
}

/// Cached geometry shared by every query.
#[derive(Debug)]
struct Analysis {
    cone: ConeData,
    /// Generator indices lying in the lineality space; exactly the invertible ones.
    unit_indices: Vec<usize>,
    /// Lattice basis of the unit group (Hermite form of the unit generators).
    unit_basis: Vec<IntVector>,
    /// Solver over the unit generator columns, absent when there are none.
    unit_solver: Option<IntegerSolver>,
    /// Row `j`: nonnegative coefficients over the unit generators expressing
    /// the inverse of unit generator `j`.
    unit_inverse_certs: Vec<Vec<BigInt>>,
    /// Lattice basis of the group of fractions (Hermite form of all generators).
    group_basis: Vec<IntVector>,
    group_solver: Option<IntegerSolver>,
    /// Solver over the basis columns; coordinates there are unique.
    group_basis_solver: Option<IntegerSolver>,
    /// Sum of the facet normals: zero on units, >= 1 on every other generator.
    phi: IntVector,
    /// Non-unit generator indices in search order (largest grade first).
    order: Vec<usize>,
    /// Level `t` describes what suffix `order[t..]` plus the units can reach.
    suffix: Vec<SuffixLevel>,
}

#[derive(Debug)]
struct SuffixLevel {
    cone: ConeData,
    solver: Option<IntegerSolver>,
}

impl SuffixLevel {
    /// Can the residual still be written over this suffix? Checks the cone
    /// over the rationals and the lattice over the integers.
    fn reachable(&self, v: &IntVector) -> bool {
        self.cone.contains(v)
            && match &self.solver {
                Some(s) => s.solve(v).is_some(),
                None => v.is_zero(),
            }
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(MembershipCertificate),
    NotMember,
    Unknown { reason: String },
}

/// Nonnegative coefficients over the generator list summing to the query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub coefficients: Vec<BigInt>,
}

/// The invertible elements: which generators are units and a lattice basis
/// of the group they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    pub indices: Vec<usize>,
    pub basis: Vec<IntVector>,
}

/// A prime ideal cut out by a face: the complement of the face submonoid.
/// Both sides are recorded as sorted generator index lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacePrime {
    pub face: Vec<usize>,
    pub prime: Vec<usize>,
}

/// One prime in the spectrum with its chain statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumNode {
    pub face: Vec<usize>,
    pub prime: Vec<usize>,
    pub height: usize,
    pub coheight: usize,
    pub minimal: bool,
}

/// All primes coming from proper faces, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPoset {
    pub group_rank: usize,
    pub unit_rank: usize,
    pub dim: usize,
    pub nodes: Vec<SpectrumNode>,
    /// Pairs `(i, j)` with `nodes[i].prime` strictly contained in `nodes[j].prime`.
    pub order: Vec<(usize, usize)>,
}

/// Verdict of the maximal-order test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    /// A point of the group of fractions inside the cone that the monoid misses.
    NotNormal { witness: IntVector },
    Unknown { reason: String },
}

impl AffineMonoid {
    pub fn new(
        name: impl Into<String>,
        ambient_rank: usize,
        named_generators: Vec<(String, IntVector)>,
    ) -> Result<Self, AffineError> {
        let name = name.into();
        if ambient_rank == 0 {
            return Err(AffineError::Invalid("ambient rank must be positive".into()));
        }
        if named_generators.is_empty() {
            return Err(AffineError::Invalid(
                "at least one generator is required".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for (label, vector) in &named_generators {
            if label.is_empty() {
                return Err(AffineError::Invalid("empty generator name".into()));
            }
            if !seen.insert(label.clone()) {
                return Err(AffineError::Invalid(format!(
                    "duplicate generator name `{label}`"
                )));
            }
            if vector.len() != ambient_rank {
                return Err(AffineError::Invalid(format!(
                    "generator `{}` has {} entries, expected {}",
                    label,
                    vector.len(),
                    ambient_rank
                )));
            }
        }
        let (generator_names, generators) = named_generators.into_iter().unzip();
        Ok(AffineMonoid {
            name,
            ambient_rank,
            generator_names,
            generators,
            analysis: OnceLock::new(),
        })
    }

    /// Convenience constructor with automatic `g1..gn` labels.
    pub fn from_rows(
        name: impl Into<String>,
        ambient_rank: usize,
        rows: &[&[i64]],
    ) -> Result<Self, AffineError> {
        let named = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("g{}", i + 1), IntVector::from_i64(r)))
            .collect();
        Self::new(name, ambient_rank, named)
    }

    fn analysis(&self) -> &Analysis {
        self.analysis.get_or_init(|| self.compute_analysis())
    }

    fn compute_analysis(&self) -> Analysis {
        let cone = ConeData::from_generators(self.ambient_rank, &self.generators);
        let unit_indices: Vec<usize> = (0..self.generators.len())
            .filter(|&i| cone.facets.iter().all(|h| h.dot(&self.generators[i]).is_zero()))
            .collect();
        let unit_gens: Vec<IntVector> = unit_indices
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect();
        let unit_basis = lattice_basis(&unit_gens);
        let unit_solver = if unit_gens.is_empty() {
            None
        } else {
            Some(IntegerSolver::new(&IntMatrix::from_columns(&unit_gens)))
        };
        let unit_inverse_certs = unit_inverse_certificates(&unit_gens);
        let group_basis = lattice_basis(&self.generators);
        let group_solver = Some(IntegerSolver::new(&IntMatrix::from_columns(
            &self.generators,
        )));
        let group_basis_solver = if group_basis.is_empty() {
            None
        } else {
            Some(IntegerSolver::new(&IntMatrix::from_columns(&group_basis)))
        };

        let mut phi = IntVector::zeros(self.ambient_rank);
        for h in &cone.facets {
            phi = phi.add(h);
        }

        let mut order: Vec<usize> = (0..self.generators.len())
            .filter(|i| !unit_indices.contains(i))
            .collect();
        order.sort_by(|&a, &b| {
            phi.dot(&self.generators[b])
                .cmp(&phi.dot(&self.generators[a]))
                .then(a.cmp(&b))
        });

        let mut suffix = Vec::with_capacity(order.len() + 1);
        for t in 0..=order.len() {
            let mut span_gens: Vec<IntVector> = Vec::new();
            for &i in &order[t..] {
                span_gens.push(self.generators[i].clone());
            }
            for u in &unit_gens {
                span_gens.push(u.clone());
                span_gens.push(u.neg());
            }
            let cone_t = ConeData::from_generators(self.ambient_rank, &span_gens);
            let mut lattice_cols: Vec<IntVector> = Vec::new();
            for &i in &order[t..] {
                lattice_cols.push(self.generators[i].clone());
            }
            lattice_cols.extend(unit_gens.iter().cloned());
            let solver = if lattice_cols.is_empty() {
                None
            } else {
                Some(IntegerSolver::new(&IntMatrix::from_columns(&lattice_cols)))
            };
            suffix.push(SuffixLevel {
                cone: cone_t,
                solver,
            });
        }

        Analysis {
            cone,
            unit_indices,
            unit_basis,
            unit_solver,
            unit_inverse_certs,
            group_basis,
            group_solver,
            group_basis_solver,
            phi,
            order,
            suffix,
        }
    }

    /// Facet normals of the cone spanned by the generators.
    pub fn facets(&self) -> &[IntVector] {
        &self.analysis().cone.facets
    }

    /// Rank of the group of fractions.
    pub fn group_rank(&self) -> usize {
        self.analysis().group_basis.len()
    }

    /// Rank of the unit group.
    pub fn unit_rank(&self) -> usize {
        self.analysis().unit_basis.len()
    }

    /// Krull dimension: group rank minus unit rank.
    pub fn dim(&self) -> usize {
        self.group_rank() - self.unit_rank()
    }

    pub fn unit_group(&self) -> UnitGroup {
        let a = self.analysis();
        UnitGroup {
            indices: a.unit_indices.clone(),
            basis: a.unit_basis.clone(),
        }
    }

    /// Lattice basis of the group of fractions inside the ambient lattice.
    pub fn group_basis(&self) -> &[IntVector] {
        &self.analysis().group_basis
    }

    /// Coordinates of `v` in the group-of-fractions basis, or None when `v`
    /// lies outside that sublattice.
    pub fn group_coordinates(&self, v: &IntVector) -> Option<IntVector> {
        assert_eq!(v.len(), self.ambient_rank, "query vector has wrong length");
        let a = self.analysis();
        match &a.group_basis_solver {
            // basis columns are independent, so the solution is unique
            Some(s) => s.solve(v).map(|sol| sol.particular),
            None => v.is_zero().then(|| IntVector(Vec::new())),
        }
    }

    /// The ambient vector with the given group-of-fractions coordinates.
    pub fn from_group_coordinates(&self, coords: &IntVector) -> IntVector {
        let a = self.analysis();
        assert_eq!(coords.len(), a.group_basis.len());
        let mut out = IntVector::zeros(self.ambient_rank);
        for (c, b) in coords.0.iter().zip(&a.group_basis) {
            out = out.add(&b.scale(c));
        }
        out
    }

    pub fn member(&self, v: &IntVector) -> Membership {
        self.member_with_budget(v, DEFAULT_MEMBER_NODES)
    }

    /// Decide whether `v` is a nonnegative generator combination. `Member`
    /// carries coefficients that are re-checked before returning;
    /// `NotMember` means the branch-and-bound tree was exhausted; the budget
    /// only ever degrades the answer to `Unknown`.
    pub fn member_with_budget(&self, v: &IntVector, max_nodes: u64) -> Membership {
        assert_eq!(v.len(), self.ambient_rank, "query vector has wrong length");
        let a = self.analysis();
        if !a.cone.contains(v) {
            return Membership::NotMember;
        }
        if let Some(gs) = &a.group_solver {
            if gs.solve(v).is_none() {
                return Membership::NotMember;
            }
        }
        let mut nodes = max_nodes;
        let mut lambdas: Vec<BigInt> = vec![BigInt::zero(); a.order.len()];
        match self.search(a, 0, v, &mut nodes, &mut lambdas) {
            Err(()) => Membership::Unknown {
                reason: format!("membership search budget exhausted ({max_nodes} nodes)"),
            },
            Ok(None) => Membership::NotMember,
            Ok(Some(unit_coeffs)) => {
                let mut coefficients = vec![BigInt::zero(); self.generators.len()];
                for (t, &i) in a.order.iter().enumerate() {
                    coefficients[i] = lambdas[t].clone();
                }
                for (j, s) in unit_coeffs.iter().enumerate() {
                    if s.is_negative() {
                        let times = -s;
                        for (k, c) in a.unit_inverse_certs[j].iter().enumerate() {
                            coefficients[a.unit_indices[k]] += &times * c;
                        }
                    } else {
                        coefficients[a.unit_indices[j]] += s;
                    }
                }
                let mut check = IntVector::zeros(self.ambient_rank);
                for (i, c) in coefficients.iter().enumerate() {
                    assert!(!c.is_negative());
                    check = check.add(&self.generators[i].scale(c));
                }
                assert_eq!(check, *v, "membership certificate failed its audit");
                Membership::Member(MembershipCertificate { coefficients })
            }
        }
    }

    /// Depth-first search over the non-unit coefficients in `order`,
    /// bounding each by the facet grading and pruning any residual the
    /// remaining suffix cannot reach. `Err(())` signals budget exhaustion.
    fn search(
        &self,
        a: &Analysis,
        t: usize,
        residual: &IntVector,
        nodes: &mut u64,
        lambdas: &mut Vec<BigInt>,
    ) -> Result<Option<Vec<BigInt>>, ()> {
        if *nodes == 0 {
            return Err(());
        }
        *nodes -= 1;
        if !a.suffix[t].reachable(residual) {
            return Ok(None);
        }
        if t == a.order.len() {
            let coeffs = match &a.unit_solver {
                Some(s) => match s.solve(residual) {
                    Some(sol) => sol.particular.0,
                    None => return Ok(None),
                },
                None => {
                    if residual.is_zero() {
                        Vec::new()
                    } else {
                        return Ok(None);
                    }
                }
            };
            return Ok(Some(coeffs));
        }
        let g = &self.generators[a.order[t]];
        let denom = a.phi.dot(g);
        debug_assert!(denom.is_positive());
        let mut lam = a.phi.dot(residual).div_floor(&denom);
        while !lam.is_negative() {
            let child = residual.sub(&g.scale(&lam));
            lambdas[t] = lam.clone();
            if let Some(hit) = self.search(a, t + 1, &child, nodes, lambdas)? {
                return Ok(Some(hit));
            }
            lam -= 1;
        }
        Ok(None)
    }

    /// Minimal primes: complements of the facet submonoids.
    pub fn minimal_primes(&self) -> Vec<FacePrime> {
        let a = self.analysis();
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for h in &a.cone.facets {
            faces.insert(self.face_of(h));
        }
        faces
            .into_iter()
            .map(|face| {
                let prime = complement(self.generators.len(), &face);
                FacePrime { face, prime }
            })
            .collect()
    }

    fn face_of(&self, h: &IntVector) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| h.dot(&self.generators[i]).is_zero())
            .collect()
    }

    /// Every prime coming from a proper face, with heights and coheights
    /// read off the inclusion order.
    pub fn spectrum(&self) -> SpectrumPoset {
        let a = self.analysis();
        let n = self.generators.len();
        let facet_faces: Vec<BTreeSet<usize>> = {
            let mut set = BTreeSet::new();
            for h in &a.cone.facets {
                set.insert(self.face_of(h));
            }
            set.into_iter().map(|f| f.into_iter().collect()).collect()
        };
        // proper faces are exactly the nonempty intersections of facet sets
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = facet_faces.clone();
        while let Some(f) = frontier.pop() {
            let key: Vec<usize> = f.iter().copied().collect();
            if !faces.insert(key) {
                continue;
            }
            for g in &facet_faces {
                let meet: BTreeSet<usize> = f.intersection(g).copied().collect();
                frontier.push(meet);
            }
        }

        let faces: Vec<Vec<usize>> = faces.into_iter().collect();
        let m = faces.len();
        let mut order = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i != j && is_strict_subset(&faces[j], &faces[i]) {
                    // smaller face means bigger prime
                    order.push((i, j));
                }
            }
        }
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(i, j) in &order {
            below[j].push(i);
            above[i].push(j);
        }
        let heights = longest_paths(m, &below);
        let coheights = longest_paths(m, &above);

        let dim = self.dim();
        let facet_face_keys: BTreeSet<Vec<usize>> = facet_faces
            .iter()
            .map(|f| f.iter().copied().collect())
            .collect();
        let nodes: Vec<SpectrumNode> = (0..m)
            .map(|i| {
                let height = heights[i] + 1;
                let coheight = coheights[i];
                assert_eq!(
                    height + coheight,
                    dim,
                    "face lattice must be graded by dimension"
                );
                SpectrumNode {
                    face: faces[i].clone(),
                    prime: complement(n, &faces[i]),
                    height,
                    coheight,
                    minimal: facet_face_keys.contains(&faces[i]),
                }
            })
            .collect();
        SpectrumPoset {
            group_rank: self.group_rank(),
            unit_rank: self.unit_rank(),
            dim,
            nodes,
            order,
        }
    }

    pub fn is_maximal_order(&self) -> Normality {
        self.is_maximal_order_with(HilbertBudget::default(), DEFAULT_MEMBER_NODES)
    }

    /// Is the monoid all of `group ∩ cone`? Works in coordinates on the
    /// group of fractions, splits off the unit part, and tests the Hilbert
    /// basis of the quotient cone elementwise.
    pub fn is_maximal_order_with(
        &self,
        hilbert_budget: HilbertBudget,
        member_nodes: u64,
    ) -> Normality {
        let a = self.analysis();
        let d = a.group_basis.len();
        if d == 0 {
            return Normality::Normal;
        }
        let gmat = IntMatrix::from_columns(&a.group_basis);
        let gsolver = IntegerSolver::new(&gmat);
        let coords: Vec<IntVector> = self
            .generators
            .iter()
            .map(|g| {
                gsolver
                    .solve(g)
                    .expect("generators lie in their own group of fractions")
                    .particular
            })
            .collect();

        let unit_coords: Vec<IntVector> = a.unit_indices.iter().map(|&i| coords[i].clone()).collect();
        let u_rank = a.unit_basis.len();

        // the unit group must be saturated in the group of fractions
        if u_rank > 0 {
            let sat_basis = saturated_span_basis(d, &unit_coords);
            assert_eq!(sat_basis.len(), u_rank);
            let unit_solver = IntegerSolver::new(&IntMatrix::from_columns(&unit_coords));
            for b in &sat_basis {
                if unit_solver.solve(b).is_none() {
                    return Normality::NotNormal {
                        witness: gmat.mul_vec(b),
                    };
                }
            }
            // quotient coordinates: last d - u rows of the Smith row transform
            let sat_mat = IntMatrix::from_columns(&sat_basis);
            let (dd, urow, _v) = smith_form(&sat_mat);
            for i in 0..u_rank {
                assert_eq!(dd[(i, i)], BigInt::from(1), "saturated basis has unit moduli");
            }
            let project = |x: &IntVector| -> IntVector {
                let y = urow.mul_vec(x);
                IntVector(y.0[u_rank..].to_vec())
            };
            let images: Vec<IntVector> = a
                .order
                .iter()
                .map(|&i| project(&coords[i]))
                .collect();
            let hb = match hilbert_basis(d - u_rank, &images, hilbert_budget) {
                Ok(hb) => hb,
                Err(reason) => return Normality::Unknown { reason },
            };
            let urow_inv = invert_unimodular(&urow);
            for hbar in hb {
                let mut lifted = vec![BigInt::zero(); u_rank];
                lifted.extend(hbar.0.iter().cloned());
                let x = urow_inv.mul_vec(&IntVector(lifted));
                let w = gmat.mul_vec(&x);
                match self.member_with_budget(&w, member_nodes) {
                    Membership::Member(_) => {}
                    Membership::NotMember => return Normality::NotNormal { witness: w },
                    Membership::Unknown { reason } => return Normality::Unknown { reason },
                }
            }
        } else {
            let coord_list: Vec<IntVector> = a.order.iter().map(|&i| coords[i].clone()).collect();
            let hb = match hilbert_basis(d, &coord_list, hilbert_budget) {
                Ok(hb) => hb,
                Err(reason) => return Normality::Unknown { reason },
            };
            for h in hb {
                let w = gmat.mul_vec(&h);
                match self.member_with_budget(&w, member_nodes) {
                    Membership::Member(_) => {}
                    Membership::NotMember => return Normality::NotNormal { witness: w },
                    Membership::Unknown { reason } => return Normality::Unknown { reason },
                }
            }
        }
        Normality::Normal
    }
}

/// Hilbert basis of `L ∩ N^f` for the sublattice `L` of `Z^f` spanned by
/// `basis`: the elements of the free monoid of rank `f` lying in `L`,
/// reduced to a pointed-cone computation in lattice coordinates.
pub fn free_intersection_basis(
    free_rank: usize,
    basis: &[IntVector],
    budget: HilbertBudget,
) -> Result<Vec<IntVector>, String> {
    for b in basis {
        assert_eq!(b.len(), free_rank, "basis vector has wrong length");
    }
    let cols = lattice_basis(basis);
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let k = cols.len();
    let bmat = IntMatrix::from_columns(&cols);
    // y-coordinates: x = B y, so x >= 0 becomes one halfspace per row of B
    let halfspaces: Vec<IntVector> = (0..free_rank).map(|i| bmat.row(i)).collect();
    let rays = intersect_halfspaces(k, &halfspaces);
    assert!(
        rays.lineality.is_empty(),
        "independent columns give a pointed coordinate cone"
    );
    let hb = hilbert_basis(k, &rays.rays, budget)?;
    let mut out: Vec<IntVector> = hb.iter().map(|y| bmat.mul_vec(y)).collect();
    out.sort();
    Ok(out)
}

/// Hermite basis of the lattice generated by the vectors (not saturated).
fn lattice_basis(vectors: &[IntVector]) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (h, _v) = hermite_form(&IntMatrix::from_columns(vectors));
    (0..h.cols)
        .map(|j| h.column(j))
        .filter(|c| !c.is_zero())
        .collect()
}

/// Basis of the saturation of the span: `span_Q(vectors) ∩ Z^d`.
fn saturated_span_basis(d: usize, vectors: &[IntVector]) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let perp = kernel_basis(&IntMatrix::from_columns(vectors).transpose());
    if perp.is_empty() {
        return (0..d).map(|i| IntVector::unit(d, i)).collect();
    }
    kernel_basis(&IntMatrix::from_columns(&perp).transpose())
}

/// For each unit generator, nonnegative coefficients over the unit
/// generators expressing its inverse. Uses a strictly positive kernel
/// vector of the unit generator matrix: the sum of the extreme rays of
/// `kernel ∩ orthant` has full support because every unit's inverse is
/// already a nonnegative rational combination of the others.
fn unit_inverse_certificates(unit_gens: &[IntVector]) -> Vec<Vec<BigInt>> {
    let j = unit_gens.len();
    if j == 0 {
        return Vec::new();
    }
    let umat = IntMatrix::from_columns(unit_gens);
    let mut halfspaces: Vec<IntVector> = Vec::new();
    for i in 0..umat.rows {
        let r = umat.row(i);
        halfspaces.push(r.neg());
        halfspaces.push(r);
    }
    for k in 0..j {
        halfspaces.push(IntVector::unit(j, k));
    }
    let rays = intersect_halfspaces(j, &halfspaces);
    assert!(rays.lineality.is_empty());
    let mut zstar = IntVector::zeros(j);
    for r in &rays.rays {
        zstar = zstar.add(r);
    }
    assert!(
        zstar.0.iter().all(|c| c.is_positive()),
        "unit generators always carry a strictly positive relation"
    );
    debug_assert!(umat.mul_vec(&zstar).is_zero());
    (0..j)
        .map(|k| {
            let mut cert = zstar.0.clone();
            cert[k] -= 1;
            assert!(!cert[k].is_negative());
            cert
        })
        .collect()
}

fn complement(n: usize, subset: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !subset.contains(i)).collect()
}

fn is_strict_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.contains(x))
}

/// Longest path lengths (edge counts) ending at each node of a DAG given by
/// predecessor lists.
fn longest_paths(m: usize, preds: &[Vec<usize>]) -> Vec<usize> {
    let mut memo: Vec<Option<usize>> = vec![None; m];
    fn go(i: usize, preds: &[Vec<usize>], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(v) = memo[i] {
            return v;
        }
        let v = preds[i]
            .iter()
            .map(|&p| go(p, preds, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[i] = Some(v);
        v
    }
    (0..m).map(|i| go(i, preds, &mut memo)).collect()
}
