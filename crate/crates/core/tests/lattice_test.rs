mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use workbench_core::lattice::*;

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows_i64(rows)
}

fn vec_i64(v: &[i64]) -> IntVector {
    IntVector::from_i64(v)
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m[(i, j)].clone().try_into().unwrap()).collect())
        .collect()
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = BigInt::from(rng.gen_range(-bound..=bound));
        }
    }
    m
}

fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).map(|d| d.abs().is_one()).unwrap_or(false)
}

#[test]
fn determinant_matches_cofactor_expansion() {
    assert_eq!(determinant(&mat(&[&[1, 2], &[3, 4]])).unwrap(), BigInt::from(-2));
    assert_eq!(determinant(&mat(&[&[2, 4], &[1, 2]])).unwrap(), BigInt::zero());
    assert!(determinant(&mat(&[&[1, 2, 3]])).is_err());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, n, 9);
        let expect = common::det_cofactor(&to_rows(&m));
        assert_eq!(determinant(&m).unwrap(), BigInt::from(expect));
    }
}

#[test]
fn rank_matches_minor_oracle() {
    assert_eq!(rank(&mat(&[&[1, 0], &[0, 1]])), 2);
    assert_eq!(rank(&mat(&[&[2, 4], &[1, 2]])), 1);
    assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let r = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, r, c, 4);
        assert_eq!(rank(&m), common::rank_by_minors(&to_rows(&m)), "{m:?}");
    }
}

#[test]
fn hermite_form_shape_and_transform() {
    // pinned: column lattice of [[4,2],[2,2]] is 2 Z^2
    let (h, v) = hermite_form(&mat(&[&[4, 2], &[2, 2]]));
    assert_eq!(h, mat(&[&[2, 0], &[0, 2]]));
    assert!(is_unimodular(&v));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let r = rng.gen_range(1..=5);
        let c = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, r, c, 9);
        let (h, v) = hermite_form(&m);
        assert!(is_unimodular(&v));
        assert_eq!(m.mul(&v), h, "h = m v must hold");

        // echelon shape: pivots positive, strictly descending, trailing zero
        // columns, entries left of each pivot reduced into [0, pivot)
        let rk = rank(&m);
        let mut last_pivot_row: Option<usize> = None;
        for j in 0..h.cols {
            let pivot_row = (0..h.rows).find(|&i| !h[(i, j)].is_zero());
            if j < rk {
                let pr = pivot_row.expect("pivot column is nonzero");
                if let Some(last) = last_pivot_row {
                    assert!(pr > last, "pivots must step downward");
                }
                last_pivot_row = Some(pr);
                let p = h[(pr, j)].clone();
                assert!(p.is_positive());
                for jj in 0..j {
                    assert!(!h[(pr, jj)].is_negative() && h[(pr, jj)] < p);
                }
            } else {
                assert!(pivot_row.is_none(), "columns beyond the rank are zero");
            }
        }
    }
}

#[test]
fn smith_form_invariants_and_pinned_values() {
    // pinned: diag(2,3) has invariant factors 1, 6
    let (d, u, v) = smith_form(&mat(&[&[2, 0], &[0, 3]]));
    assert_eq!(d, mat(&[&[1, 0], &[0, 6]]));
    assert!(is_unimodular(&u));
    assert!(is_unimodular(&v));

    let (d, _, _) = smith_form(&mat(&[&[2, 4], &[6, 8]]));
    assert_eq!(d, mat(&[&[2, 0], &[0, 4]]));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let r = rng.gen_range(1..=5);
        let c = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, r, c, 9);
        let (d, u, v) = smith_form(&m);
        assert!(is_unimodular(&u));
        assert!(is_unimodular(&v));
        assert_eq!(u.mul(&m).mul(&v), d);
        for i in 0..d.rows {
            for j in 0..d.cols {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..r.min(c)).map(|i| d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros come last");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
        assert_eq!(diag.iter().filter(|x| !x.is_zero()).count(), rank(&m));
    }
}

#[test]
fn canonical_forms_bundles_consistent_transforms() {
    let m = mat(&[&[3, 1, 4], &[1, 5, 9]]);
    let f = canonical_forms(&m);
    assert_eq!(m.mul(&f.hermite_transform), f.hermite);
    assert_eq!(f.row_transform.mul(&m).mul(&f.col_transform), f.smith);
}

#[test]
fn solver_pinned_cases() {
    // 2x = 1 has no integer solution
    assert!(solve_integer(&mat(&[&[2]]), &vec_i64(&[1])).is_none());
    // zero map: everything solves 0 = 0 and the kernel is everything
    let s = solve_integer(&IntMatrix::zeros(2, 3), &vec_i64(&[0, 0])).unwrap();
    assert!(s.particular.is_zero());
    assert_eq!(s.basis.len(), 3);
    let span = IntMatrix::from_columns(&s.basis);
    assert_eq!(rank(&span), 3);
    // inconsistent zero row
    assert!(solve_integer(&IntMatrix::zeros(2, 3), &vec_i64(&[0, 1])).is_none());
}

#[test]
fn solver_agrees_with_box_scan() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(15);
    for round in 0..250 {
        let r = rng.gen_range(1..=3);
        let c = rng.gen_range(1..=3);
        let a = random_matrix(&mut rng, r, c, 4);
        // half the rounds get a guaranteed-solvable rhs
        let b = if round % 2 == 0 {
            let x0 = IntVector(
                (0..c).map(|_| BigInt::from(rng.gen_range(-3..=3i64))).collect(),
            );
            a.mul_vec(&x0)
        } else {
            IntVector((0..r).map(|_| BigInt::from(rng.gen_range(-4..=4i64))).collect())
        };
        let scan = common::box_scan_solutions(
            &to_rows(&a),
            &b.to_i64_lossy(),
            -6,
            6,
        );
        match solve_integer(&a, &b) {
            None => assert!(scan.is_empty(), "solver missed solutions {scan:?} for {a:?} {b:?}"),
            Some(sol) => {
                assert_eq!(a.mul_vec(&sol.particular), b);
                for k in &sol.basis {
                    assert!(a.mul_vec(k).is_zero());
                }
                // every box solution must lie in particular + span(basis):
                // enumerate small coefficient combinations and compare
                if !scan.is_empty() {
                    let mut reachable: std::collections::HashSet<Vec<i64>> =
                        std::collections::HashSet::new();
                    let coeff = 25i64;
                    let k = sol.basis.len();
                    let mut cs = vec![-coeff; k];
                    'outer: loop {
                        let mut x = sol.particular.clone();
                        for (ci, kv) in cs.iter().zip(&sol.basis) {
                            x = x.add(&kv.scale(&BigInt::from(*ci)));
                        }
                        reachable.insert(x.to_i64_lossy());
                        let mut i = 0;
                        loop {
                            if i == k {
                                break 'outer;
                            }
                            if cs[i] < coeff {
                                cs[i] += 1;
                                break;
                            }
                            cs[i] = -coeff;
                            i += 1;
                        }
                    }
                    if k <= 2 {
                        for s in &scan {
                            assert!(reachable.contains(s), "{s:?} unreachable for {a:?} {b:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_is_saturated_and_complete() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(16);
    for _ in 0..150 {
        let r = rng.gen_range(1..=3);
        let c = rng.gen_range(1..=3);
        let a = random_matrix(&mut rng, r, c, 4);
        let zero = IntVector::zeros(r);
        let scan = common::box_scan_solutions(&to_rows(&a), &zero.to_i64_lossy(), -4, 4);
        let solver = IntegerSolver::new(&a);
        let k = solver.kernel().len();
        assert_eq!(k, c - solver.rank());
        // every small kernel vector is an integer combination of the basis
        if k <= 2 {
            let mut reachable: std::collections::HashSet<Vec<i64>> =
                std::collections::HashSet::new();
            let coeff = 20i64;
            let mut cs = vec![-coeff; k];
            'outer: loop {
                let mut x = IntVector::zeros(c);
                for (ci, kv) in cs.iter().zip(solver.kernel()) {
                    x = x.add(&kv.scale(&BigInt::from(*ci)));
                }
                reachable.insert(x.to_i64_lossy());
                let mut i = 0;
                loop {
                    if i == k {
                        break 'outer;
                    }
                    if cs[i] < coeff {
                        cs[i] += 1;
                        break;
                    }
                    cs[i] = -coeff;
                    i += 1;
                }
            }
            for s in &scan {
                assert!(reachable.contains(s), "kernel missed {s:?} for {a:?}");
            }
        }
    }
}

#[test]
fn eigen_lattices_of_a_swap() {
    let up_to_sign = |v: &IntVector, w: &[i64]| {
        let p = v.primitive();
        p == vec_i64(w) || p == vec_i64(w).neg()
    };
    let swap = mat(&[&[0, 1], &[1, 0]]);
    let plus = eigen_lattice(&swap, 1);
    assert_eq!(plus.len(), 1);
    assert!(up_to_sign(&plus[0], &[1, 1]));
    let minus = eigen_lattice(&swap, -1);
    assert_eq!(minus.len(), 1);
    assert!(up_to_sign(&minus[0], &[1, -1]));
    assert_eq!(image_rank(&swap), 2);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, n, 3);
        for sign in [1i64, -1] {
            for v in eigen_lattice(&m, sign) {
                assert_eq!(m.mul_vec(&v), v.scale(&BigInt::from(sign)));
                assert!(!v.is_zero());
            }
        }
    }
}

#[test]
fn quotient_lattice_keeps_torsion() {
    // Z^2 / <2e1, 2e2>: two torsion coordinates of order 2
    let q = QuotientLattice::new(2, &[vec_i64(&[2, 0]), vec_i64(&[0, 2])]);
    assert_eq!(q.free_rank(), 0);
    assert_eq!(q.torsion_moduli(), vec![BigInt::from(2), BigInt::from(2)]);
    assert_ne!(q.map(&vec_i64(&[1, 1])), q.map(&vec_i64(&[0, 0])));
    assert_eq!(q.map(&vec_i64(&[2, 0])), q.map(&vec_i64(&[0, 0])));

    // Z^2 / <(1,1)>: free of rank 1, no torsion
    let q = QuotientLattice::new(2, &[vec_i64(&[1, 1])]);
    assert_eq!(q.free_rank(), 1);
    assert!(!q.has_torsion());
    assert_eq!(q.map(&vec_i64(&[1, 1])), q.map(&vec_i64(&[0, 0])));
    assert_ne!(q.map(&vec_i64(&[1, 0])), q.map(&vec_i64(&[0, 1])));

    // Z^2 / <(2,2)>: the point of not saturating: (1,1) is 2-torsion, not 0
    let q = QuotientLattice::new(2, &[vec_i64(&[2, 2])]);
    assert_eq!(q.free_rank(), 1);
    assert_eq!(q.torsion_moduli(), vec![BigInt::from(2)]);
    assert_ne!(q.map(&vec_i64(&[1, 1])), q.map(&vec_i64(&[0, 0])));
    assert_eq!(q.map(&vec_i64(&[2, 2])), q.map(&vec_i64(&[0, 0])));

    // empty span: identity quotient
    let q = QuotientLattice::new(3, &[]);
    assert_eq!(q.free_rank(), 3);
    assert_ne!(q.map(&vec_i64(&[0, 0, 1])), q.map(&vec_i64(&[0, 0, 0])));
}

#[test]
fn quotient_map_equality_is_span_membership() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(18);
    for _ in 0..120 {
        let rank = rng.gen_range(1..=3);
        let nspan = rng.gen_range(0..=2);
        let span: Vec<IntVector> = (0..nspan)
            .map(|_| {
                IntVector((0..rank).map(|_| BigInt::from(rng.gen_range(-3..=3i64))).collect())
            })
            .collect();
        let q = QuotientLattice::new(rank, &span);
        for _ in 0..12 {
            let x = IntVector((0..rank).map(|_| BigInt::from(rng.gen_range(-5..=5i64))).collect());
            let y = IntVector((0..rank).map(|_| BigInt::from(rng.gen_range(-5..=5i64))).collect());
            let same = q.map(&x) == q.map(&y);
            // membership of x - y in the span, checked by exhaustive small
            // coefficients plus the solver as a backstop
            let diff = x.sub(&y);
            let in_span = if span.is_empty() {
                diff.is_zero()
            } else {
                solve_integer(&IntMatrix::from_columns(&span), &diff).is_some()
            };
            assert_eq!(same, in_span, "span {span:?}, diff {diff:?}");
        }
    }
}
