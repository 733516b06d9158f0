//! Complete solution sets of integer linear systems, kernels, eigen-lattices
//! and finitely generated quotients of `Z^r`.

use super::{forms::smith_form, IntMatrix, IntVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// All integer solutions of `A x = b`: `particular + Z-span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: IntVector,
    pub basis: Vec<IntVector>,
}

impl AffineSolutionSet {
    /// True if `x` lies in the set; used by tests to cross-check.
    pub fn contains(&self, a: &IntMatrix, x: &IntVector, b: &IntVector) -> bool {
        a.mul_vec(x) == *b
    }
}

/// Reusable solver for many right-hand sides against a fixed matrix.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    rows: usize,
    cols: usize,
    diag: Vec<BigInt>,
    u: IntMatrix,
    v: IntMatrix,
    kernel: Vec<IntVector>,
}

impl IntegerSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let (d, u, v) = smith_form(a);
        let n = a.rows.min(a.cols);
        let diag: Vec<BigInt> = (0..n).map(|i| d[(i, i)].clone()).collect();
        let mut kernel = Vec::new();
        for j in 0..a.cols {
            let trivial = j >= n || diag[j].is_zero();
            if trivial {
                kernel.push(v.column(j));
            }
        }
        IntegerSolver {
            rows: a.rows,
            cols: a.cols,
            diag,
            u,
            v,
            kernel,
        }
    }

    /// Basis of the integer kernel. Saturated: any lattice vector with a
    /// rational expression in the kernel already has an integer one.
    pub fn kernel(&self) -> &[IntVector] {
        &self.kernel
    }

    pub fn solve(&self, b: &IntVector) -> Option<AffineSolutionSet> {
        assert_eq!(b.len(), self.rows);
        let ub = self.u.mul_vec(b);
        let mut y = IntVector::zeros(self.cols);
        for i in 0..self.rows {
            let di = if i < self.diag.len() {
                self.diag[i].clone()
            } else {
                BigInt::zero()
            };
            if di.is_zero() {
                if !ub.0[i].is_zero() {
                    return None;
                }
            } else if i < self.cols {
                let (q, r) = ub.0[i].div_rem(&di);
                if !r.is_zero() {
                    return None;
                }
                y.0[i] = q;
            } else if !ub.0[i].is_zero() {
                return None;
            }
        }
        Some(AffineSolutionSet {
            particular: self.v.mul_vec(&y),
            basis: self.kernel.clone(),
        })
    }

    /// Rank of the matrix (count of nonzero invariant factors).
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// One-shot convenience around [`IntegerSolver`].
pub fn solve_integer(a: &IntMatrix, b: &IntVector) -> Option<AffineSolutionSet> {
    IntegerSolver::new(a).solve(b)
}

/// Basis of `{x : A x = 0}` over the integers.
pub fn kernel_basis(a: &IntMatrix) -> Vec<IntVector> {
    IntegerSolver::new(a).kernel().to_vec()
}

/// Basis of the sublattice fixed by `m` up to sign: kernel of `m - sign*I`
/// for `sign` in `{+1, -1}`.
pub fn eigen_lattice(m: &IntMatrix, sign: i64) -> Vec<IntVector> {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    assert_eq!(m.rows, m.cols);
    let mut shifted = m.clone();
    let s = BigInt::from(sign);
    for i in 0..m.rows {
        let t = &shifted[(i, i)] - &s;
        shifted[(i, i)] = t;
    }
    kernel_basis(&shifted)
}

/// Rank of the image lattice of `m`.
pub fn image_rank(m: &IntMatrix) -> usize {
    super::forms::rank(m)
}

/// The quotient of `Z^r` by the sublattice spanned by given vectors,
/// presented as torsion coordinates (residues mod the invariant factors)
/// plus free coordinates. The quotient keeps torsion: it is not the
/// quotient by the saturation.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    pub ambient_rank: usize,
    u: IntMatrix,
    /// Moduli per transformed coordinate: `> 0` torsion (1 = dead), `0` free.
    moduli: Vec<BigInt>,
    free_count: usize,
}

/// Image of a lattice vector in a [`QuotientLattice`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientElement {
    /// Residues for the coordinates with modulus > 1, reduced into `[0, d)`.
    pub torsion: Vec<BigInt>,
    /// Unconstrained coordinates.
    pub free: IntVector,
}

impl QuotientLattice {
    pub fn new(ambient_rank: usize, span: &[IntVector]) -> Self {
        let m = if span.is_empty() {
            IntMatrix::zeros(ambient_rank, 0)
        } else {
            IntMatrix::from_columns(span)
        };
        let (d, u, _v) = smith_form(&m);
        let n = m.rows.min(m.cols);
        let mut moduli = Vec::with_capacity(ambient_rank);
        for i in 0..ambient_rank {
            if i < n {
                moduli.push(d[(i, i)].clone());
            } else {
                moduli.push(BigInt::zero());
            }
        }
        let free_count = moduli.iter().filter(|m| m.is_zero()).count();
        QuotientLattice {
            ambient_rank,
            u,
            moduli,
            free_count,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_count
    }

    pub fn has_torsion(&self) -> bool {
        self.moduli.iter().any(|m| m > &BigInt::one())
    }

    /// Orders of the torsion coordinates (moduli > 1), in invariant order.
    pub fn torsion_moduli(&self) -> Vec<BigInt> {
        self.moduli
            .iter()
            .filter(|m| **m > BigInt::one())
            .cloned()
            .collect()
    }

    pub fn map(&self, x: &IntVector) -> QuotientElement {
        assert_eq!(x.len(), self.ambient_rank);
        let y = self.u.mul_vec(x);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (i, m) in self.moduli.iter().enumerate() {
            if m.is_zero() {
                free.push(y.0[i].clone());
            } else if *m > BigInt::one() {
                torsion.push(y.0[i].mod_floor(m));
            }
        }
        QuotientElement {
            torsion,
            free: IntVector(free),
        }
    }
}
