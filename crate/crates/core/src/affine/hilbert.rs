//! Hilbert bases of pointed rational cones.
//!
//! The monoid of lattice points of a pointed cone is computed Gordan-style:
//! triangulate the cone by pulling at its first extreme ray, enumerate the
//! lattice points of each simplex's half-open fundamental parallelepiped
//! through the Smith form (mixed-radix residues), then strip reducible
//! candidates using the facet grading. Everything is arbitrary-precision
//! integer arithmetic.

use super::cone::{intersect_halfspaces, ConeData};
use crate::lattice::{
    kernel_basis, rank, smith_form, IntegerSolver, IntMatrix, IntVector,
};
use crate::par;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashSet;

/// Caps on the subdivision work; exceeding one aborts with a reason string
/// instead of returning a wrong answer.
#[derive(Clone, Copy, Debug)]
pub struct HilbertBudget {
    /// Total lattice points enumerated across all parallelepipeds.
    pub max_points: u64,
    /// Simplices produced by the triangulation.
    pub max_simplices: usize,
}

impl Default for HilbertBudget {
    fn default() -> Self {
        HilbertBudget {
            max_points: 4_000_000,
            max_simplices: 100_000,
        }
    }
}

/// Minimal generating set of `cone(generators) ∩ Z^ambient`.
///
/// The cone must be pointed. The result is sorted; it is the unique minimal
/// generating set (every element is irreducible).
pub fn hilbert_basis(
    ambient: usize,
    generators: &[IntVector],
    budget: HilbertBudget,
) -> Result<Vec<IntVector>, String> {
    let cone = ConeData::from_generators(ambient, generators);
    assert!(
        cone.is_pointed(),
        "hilbert basis needs a pointed cone; quotient the lineality first"
    );
    if cone.rays.is_empty() {
        return Ok(Vec::new());
    }

    // restrict to the saturated lattice of the span so the cone becomes
    // full-dimensional in the working coordinates
    let span_rank = rank(&IntMatrix::from_columns(&cone.rays));
    let (coords, back): (Vec<IntVector>, Option<IntMatrix>) = if span_rank == ambient {
        (cone.rays.clone(), None)
    } else {
        let perp = kernel_basis(&IntMatrix::from_columns(&cone.rays).transpose());
        let perp_rows: Vec<IntVector> = perp;
        let basis = kernel_basis(&IntMatrix::from_columns(&perp_rows).transpose());
        assert_eq!(basis.len(), span_rank);
        let bmat = IntMatrix::from_columns(&basis);
        let solver = IntegerSolver::new(&bmat);
        let coords = cone
            .rays
            .iter()
            .map(|r| {
                solver
                    .solve(r)
                    .expect("extreme ray lies in the saturated span lattice")
                    .particular
            })
            .collect();
        (coords, Some(bmat))
    };
    let d = span_rank;

    let mut basis = hilbert_basis_full_dim(d, &coords, budget)?;
    if let Some(bmat) = back {
        basis = basis.iter().map(|h| bmat.mul_vec(h)).collect();
    }
    basis.sort();
    Ok(basis)
}

/// Hilbert basis of a full-dimensional pointed cone given by its extreme
/// rays in `Z^d`.
fn hilbert_basis_full_dim(
    d: usize,
    rays: &[IntVector],
    budget: HilbertBudget,
) -> Result<Vec<IntVector>, String> {
    if d == 0 || rays.is_empty() {
        return Ok(Vec::new());
    }
    let facet_cone = intersect_halfspaces(d, rays);
    assert!(facet_cone.lineality.is_empty(), "cone must span Z^d");
    let facets = facet_cone.rays;

    let mut simplices: Vec<Vec<IntVector>> = Vec::new();
    triangulate(d, rays, &mut simplices, budget.max_simplices)?;

    // lattice points of each simplex's half-open parallelepiped
    let point_sets = par::map_vec(simplices, |simplex| parallelepiped_points(&simplex));
    let mut total: u64 = 0;
    let mut candidates: HashSet<IntVector> = HashSet::new();
    for r in rays {
        candidates.insert(r.clone());
    }
    for set in point_sets {
        let set = set?;
        total += set.len() as u64;
        if total > budget.max_points {
            return Err(format!(
                "parallelepiped point budget exceeded ({} > {})",
                total, budget.max_points
            ));
        }
        candidates.extend(set);
    }
    candidates.remove(&IntVector::zeros(d));

    // grade by the sum of facet normals: positive on the cone minus origin
    let phi: IntVector = {
        let mut f = IntVector::zeros(d);
        for h in &facets {
            f = f.add(h);
        }
        f
    };
    let mut graded: Vec<(BigInt, IntVector)> = candidates
        .into_iter()
        .map(|c| (phi.dot(&c), c))
        .collect();
    graded.sort();

    // a candidate is reducible iff subtracting some kept element leaves a
    // nonzero cone point; kept irreducibles of smaller grade suffice
    let mut kept: Vec<(BigInt, IntVector)> = Vec::new();
    for (g, c) in graded {
        let reducible = kept.iter().take_while(|(kg, _)| kg < &g).any(|(_, h)| {
            let diff = c.sub(h);
            facets.iter().all(|f| !f.dot(&diff).is_negative())
        });
        if !reducible {
            kept.push((g, c));
        }
    }
    Ok(kept.into_iter().map(|(_, c)| c).collect())
}

/// Pulling triangulation: lift the first ray over every facet that misses
/// it, recursing on the facets. Produces simplices whose ray sets are
/// linearly independent and whose union tiles the cone.
fn triangulate(
    d: usize,
    rays: &[IntVector],
    out: &mut Vec<Vec<IntVector>>,
    max_simplices: usize,
) -> Result<(), String> {
    let span = rank(&IntMatrix::from_columns(rays));
    if rays.len() == span {
        if out.len() >= max_simplices {
            return Err(format!("triangulation budget exceeded ({max_simplices})"));
        }
        out.push(rays.to_vec());
        return Ok(());
    }
    let pivot = &rays[0];
    let dual = intersect_halfspaces(d, rays);
    for h in &dual.rays {
        if h.dot(pivot).is_zero() {
            continue;
        }
        let facet_rays: Vec<IntVector> = rays
            .iter()
            .filter(|r| h.dot(r).is_zero())
            .cloned()
            .collect();
        if facet_rays.is_empty() {
            continue;
        }
        let mut sub = Vec::new();
        triangulate(d, &facet_rays, &mut sub, max_simplices.saturating_sub(out.len()))?;
        for mut simplex in sub {
            simplex.push(pivot.clone());
            if out.len() >= max_simplices {
                return Err(format!("triangulation budget exceeded ({max_simplices})"));
            }
            out.push(simplex);
        }
    }
    Ok(())
}

/// Lattice points of `{W t : 0 <= t_i < 1}` for the square nonsingular
/// matrix `W` with the simplex rays as columns. Runs over the residues of
/// `Z^d / W Z^d` via the Smith form and reduces each representative into
/// the half-open box with an exact rational floor.
fn parallelepiped_points(simplex: &[IntVector]) -> Result<Vec<IntVector>, String> {
    let d = simplex.len();
    let w = IntMatrix::from_columns(simplex);
    let (dd, u, v) = smith_form(&w);
    let mut det = BigInt::one();
    for i in 0..d {
        det *= &dd[(i, i)];
    }
    assert!(det.is_positive(), "simplex rays must be independent");
    let count = det
        .to_u64()
        .ok_or_else(|| "parallelepiped determinant exceeds u64".to_string())?;
    if count == 1 {
        return Ok(Vec::new());
    }

    // integer inverse of the unimodular row transform
    let u_inv = invert_unimodular(&u);
    let moduli: Vec<BigInt> = (0..d).map(|i| dd[(i, i)].clone()).collect();

    // residue s -> representative z = U^-1 s; then z' = z - W floor(W^-1 z).
    // With U W V = D the rational inverse is W^-1 = V D^-1 U.
    let mut out = Vec::with_capacity(count as usize - 1);
    let mut s = vec![BigInt::zero(); d];
    loop {
        // advance mixed-radix counter
        let mut i = 0;
        loop {
            if i == d {
                return Ok(out);
            }
            s[i] += 1;
            if s[i] < moduli[i] {
                break;
            }
            s[i] = BigInt::zero();
            i += 1;
        }
        let z = u_inv.mul_vec(&IntVector(s.clone()));
        let q = u.mul_vec(&z);
        // numerators of W^-1 z over the common denominator det
        let mut floors = IntVector::zeros(d);
        for i in 0..d {
            let mut num = BigInt::zero();
            for j in 0..d {
                num += &v[(i, j)] * &q.0[j] * (&det / &moduli[j]);
            }
            floors.0[i] = num.div_floor(&det);
        }
        let reduced = z.sub(&w.mul_vec(&floors));
        if !reduced.is_zero() {
            out.push(reduced);
        }
    }
}

/// Integer inverse of a unimodular matrix, column by column.
pub(crate) fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    let n = m.rows;
    let solver = IntegerSolver::new(m);
    let cols: Vec<IntVector> = (0..n)
        .map(|i| {
            solver
                .solve(&IntVector::unit(n, i))
                .expect("unimodular matrix is invertible over the integers")
                .particular
        })
        .collect();
    IntMatrix::from_columns(&cols)
}
