//! Brute-force reference computations used to cross-check the library.
//! Everything here is deliberately naive and independent of the code under
//! test.

#![allow(dead_code)]

use std::collections::HashMap;

/// Congruence classes of all words up to `max_len`, computed by saturating
/// single-step relation rewrites (applied in both directions). Exact only
/// for length-preserving relations, where a class never leaves its length
/// stratum; callers must ensure that.
pub struct ThueClasses {
    /// class id per word, words encoded as Vec<u32>
    pub class_of: HashMap<Vec<u32>, usize>,
    /// members of each class, sorted by (length, lex)
    pub classes: Vec<Vec<Vec<u32>>>,
}

pub fn thue_classes(
    generators: usize,
    relations: &[(Vec<u32>, Vec<u32>)],
    max_len: usize,
) -> ThueClasses {
    for (l, r) in relations {
        assert_eq!(l.len(), r.len(), "oracle needs length-preserving relations");
    }
    let mut words: Vec<Vec<u32>> = vec![vec![]];
    let mut all: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for g in 0..generators as u32 {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        words = next;
    }
    let index: HashMap<Vec<u32>, usize> =
        all.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

    // union-find over word indices
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (wi, w) in all.iter().enumerate() {
        for (l, r) in relations {
            for (from, to) in [(l, r), (r, l)] {
                if from.len() > w.len() {
                    continue;
                }
                for i in 0..=w.len() - from.len() {
                    if w[i..i + from.len()] == from[..] {
                        let mut v = w.clone();
                        v.splice(i..i + from.len(), to.iter().cloned());
                        let vi = index[&v];
                        let (a, b) = (find(&mut parent, wi), find(&mut parent, vi));
                        if a != b {
                            parent[a] = b;
                        }
                    }
                }
            }
        }
    }

    let mut roots: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut class_of = HashMap::new();
    for (wi, w) in all.iter().enumerate() {
        let root = find(&mut parent, wi);
        let cid = *roots.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[cid].push(w.clone());
        class_of.insert(w.clone(), cid);
    }
    for c in &mut classes {
        c.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    }
    ThueClasses { class_of, classes }
}

impl ThueClasses {
    /// Deglex-least member of the class containing `w`.
    pub fn least(&self, w: &[u32]) -> Vec<u32> {
        self.classes[self.class_of[w]][0].clone()
    }

    /// Number of distinct classes whose least member has the given length.
    pub fn class_count_by_length(&self, len: usize) -> usize {
        self.classes.iter().filter(|c| c[0].len() == len).count()
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut det: i128 = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &e)| e)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][j] as i128 * det_cofactor(&minor);
    }
    det
}

/// Rank as the largest k with a nonzero k-by-k minor.
pub fn rank_by_minors(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let max = rows.min(cols);
    for k in (1..=max).rev() {
        for ri in subsets(rows, k) {
            for ci in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = ri
                    .iter()
                    .map(|&i| ci.iter().map(|&j| m[i][j]).collect())
                    .collect();
                if det_cofactor(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All x in the box [lo, hi]^cols with A x = b, in i64 arithmetic.
pub fn box_scan_solutions(a: &[Vec<i64>], b: &[i64], lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut x = vec![lo; cols];
    loop {
        let ok = a
            .iter()
            .zip(b)
            .all(|(row, &bi)| row.iter().zip(&x).map(|(r, v)| r * v).sum::<i64>() == bi);
        if ok {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == cols {
                return out;
            }
            if x[i] < hi {
                x[i] += 1;
                break;
            }
            x[i] = lo;
            i += 1;
        }
        if cols == 0 {
            return out;
        }
    }
}

/// All integer vectors in the box [-radius, radius]^dim.
pub fn box_vectors(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-radius; dim];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            if cur[i] < radius {
                cur[i] += 1;
                break;
            }
            cur[i] = -radius;
            i += 1;
        }
    }
}

/// All values reachable as nonnegative generator combinations using at most
/// `cap` generators counted with multiplicity (BFS by coefficient sum).
pub fn nonneg_combo_values(
    gens: &[Vec<i64>],
    cap: u32,
) -> std::collections::HashSet<Vec<i64>> {
    let d = gens.first().map_or(0, |g| g.len());
    let mut out = std::collections::HashSet::new();
    out.insert(vec![0i64; d]);
    let mut frontier: Vec<Vec<i64>> = vec![vec![0; d]];
    for _ in 0..cap {
        let mut next = Vec::new();
        for v in &frontier {
            for g in gens {
                let s: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
                if out.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Bounded check that the submonoid generated by `subset` is divisor-closed:
/// no sum of two reachable values lands in the subset's monoid while a
/// summand stays outside. The subset window is widened so that membership of
/// the summands is decided correctly for the monoids used in tests.
pub fn divisor_closed_bounded(gens: &[Vec<i64>], subset: &[usize], cap: u32) -> bool {
    let sub: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
    let sub_vals = nonneg_combo_values(&sub, 4 * cap);
    let all_vals = nonneg_combo_values(gens, cap);
    for u in &all_vals {
        for v in &all_vals {
            let s: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
            if sub_vals.contains(&s) && (!sub_vals.contains(u) || !sub_vals.contains(v)) {
                return false;
            }
        }
    }
    true
}
