//! Hermite and Smith normal forms with unimodular transforms, plus
//! fraction-free rank and determinant.

use super::{IntMatrix, LatticeError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Both canonical forms of a matrix together with the transforms that
/// witness them: `hermite = m * hermite_transform` and
/// `row_transform * m * col_transform = smith`.
#[derive(Clone, Debug)]
pub struct CanonicalForms {
    pub hermite: IntMatrix,
    pub hermite_transform: IntMatrix,
    pub smith: IntMatrix,
    pub row_transform: IntMatrix,
    pub col_transform: IntMatrix,
}

pub fn canonical_forms(m: &IntMatrix) -> CanonicalForms {
    let (hermite, hermite_transform) = hermite_form(m);
    let (smith, row_transform, col_transform) = smith_form(m);
    CanonicalForms {
        hermite,
        hermite_transform,
        smith,
        row_transform,
        col_transform,
    }
}

/// Column-style Hermite form: returns `(h, v)` with `h = m * v`, `v`
/// unimodular. `h` is lower-echelon by columns: each pivot (topmost nonzero
/// entry of a column) is positive, pivots move strictly downward left to
/// right, entries left of a pivot in its row are reduced into `[0, pivot)`,
/// and columns beyond the rank are zero.
pub fn hermite_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut v = IntMatrix::identity(m.cols);
    let mut pivot_col = 0;

    for row in 0..h.rows {
        if pivot_col >= h.cols {
            break;
        }
        // gcd-reduce the entries of this row across columns pivot_col..
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..h.cols {
                if !h[(row, j)].is_zero() {
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if h[(row, j)].abs() < h[(row, b)].abs() {
                                best = Some(j);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(pivot_col, b);
            v.swap_cols(pivot_col, b);
            let mut done = true;
            for j in pivot_col + 1..h.cols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = rounded_div(&h[(row, j)], &h[(row, pivot_col)]);
                if !q.is_zero() {
                    let nq = -q;
                    h.add_col_multiple(j, pivot_col, &nq);
                    v.add_col_multiple(j, pivot_col, &nq);
                }
                if !h[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, pivot_col)].is_zero() {
            continue;
        }
        if h[(row, pivot_col)].is_negative() {
            h.negate_col(pivot_col);
            v.negate_col(pivot_col);
        }
        // reduce the entries left of the pivot into [0, pivot)
        let p = h[(row, pivot_col)].clone();
        for j in 0..pivot_col {
            let q = h[(row, j)].div_floor(&p);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(j, pivot_col, &nq);
                v.add_col_multiple(j, pivot_col, &nq);
            }
        }
        pivot_col += 1;
    }
    (h, v)
}

/// Smith form: returns `(d, u, v)` with `u * m * v = d`, both transforms
/// unimodular, `d` diagonal with nonnegative entries and `d[i] | d[i+1]`.
pub fn smith_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block into (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => d[(i, j)].abs() < d[(bi, bj)].abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = rounded_div(&d[(i, t)], &d[(t, t)]);
                let nq = -q;
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = rounded_div(&d[(t, j)], &d[(t, t)]);
                let nq = -q;
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let mut offender: Option<usize> = None;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Fraction-free Gaussian rank.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for col in 0..a.cols {
        let mut pivot = None;
        for i in r..a.rows {
            if !a[(i, col)].is_zero() {
                pivot = Some(i);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        a.swap_rows(r, p);
        for i in r + 1..a.rows {
            if a[(i, col)].is_zero() {
                continue;
            }
            let g = a[(r, col)].gcd(&a[(i, col)]);
            let fr = &a[(i, col)] / &g;
            let fi = &a[(r, col)] / &g;
            for j in 0..a.cols {
                let t = &a[(i, j)] * &fi - &a[(r, j)] * &fr;
                a[(i, j)] = t;
            }
        }
        r += 1;
        if r == a.rows {
            break;
        }
    }
    r
}

/// Bareiss determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LatticeError> {
    if m.rows != m.cols {
        return Err(LatticeError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let mut swap = None;
            for i in k + 1..n {
                if !a[(i, k)].is_zero() {
                    swap = Some(i);
                    break;
                }
            }
            match swap {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = t;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * a[(n - 1, n - 1)].clone())
}

/// Nearest-integer division, ties toward zero; keeps coefficient growth down
/// during the gcd sweeps.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * BigInt::from(2);
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
