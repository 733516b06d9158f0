//! Extraction of the finite multiplication data behind a coset decomposition.
//!
//! The input is a confluent rewriting system, an affine monoid `B` whose
//! generators are named by words of the presentation, and a transversal list
//! `w0 = 1, w1, ...`. Extraction enumerates all products `b * wk` up to a
//! working length, maps each one to its normal form, and reads off every
//! factorisation of every normal form. From that table it computes, and
//! independently cross-checks, the conjugation action of each transversal
//! word on `B` and the products `wi * wj = b * wk`. The returned
//! [`CrossedSystem`] multiplies elements without touching words again.

use super::CrossedError;
use crate::affine::hilbert::invert_unimodular;
use crate::affine::{AffineMonoid, Membership};
use crate::lattice::{determinant, IntMatrix, IntVector, IntegerSolver};
use crate::presentations::{enumerate_elements, RewriteSystem, Word};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::HashMap;

/// An element `b * w_component` of the monoid or its group of fractions:
/// the base part in group-basis coordinates plus a transversal index. Two
/// such pairs name one element when their components share a coset class;
/// [`CrossedSystem::canonical`] fixes a single representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    pub coords: IntVector,
    pub component: usize,
}

/// A monoid presented as finitely many cosets `B * wi` over an abelian base,
/// with the whole multiplication compressed into an action matrix per
/// transversal word and a finite product table.
#[derive(Debug)]
pub struct CrossedSystem {
    pub name: String,
    pub rewrite: RewriteSystem,
    pub base: AffineMonoid,
    /// Word of the presentation realising each base generator.
    pub base_words: Vec<Word>,
    pub transversal: Vec<Word>,
    /// Factorisation coverage was verified for every normal form up to here.
    pub coverage_len: usize,
    /// Conjugation by `wi` on the group of fractions of the base, in
    /// group-basis coordinates.
    pub action: Vec<IntMatrix>,
    /// Ambient image of each base generator under conjugation by `wi`.
    pub action_on_generators: Vec<Vec<IntVector>>,
    /// Conjugation by `wi` as a permutation of base generator indices.
    pub generator_permutation: Vec<Vec<usize>>,
    /// `product_table[i][j] = (b, k)` meaning `wi * wj = b * wk`, `b` ambient.
    pub product_table: Vec<Vec<(IntVector, usize)>>,
    /// The table's base parts in group-basis coordinates.
    pub(super) table_coords: Vec<Vec<IntVector>>,
    /// Coset class of each transversal component: two components fall in one
    /// class exactly when their words differ by an element of the group of
    /// fractions of the base.
    pub component_classes: Vec<usize>,
    /// Smallest transversal component in each class.
    pub class_reps: Vec<usize>,
    /// `wi = component_deltas[i] + w_rep` in group-basis coordinates, `rep`
    /// the smallest component in `wi`'s class.
    pub component_deltas: Vec<IntVector>,
    /// Presentation generators as crossed elements.
    letter_elements: Vec<CrossedElement>,
    /// Normal form -> every factorisation `(ambient base vector, transversal)`,
    /// sorted so the canonical one (pure transversal first, then smallest
    /// index) comes first.
    factors: HashMap<Vec<u32>, Vec<(IntVector, usize)>>,
    /// Products were enumerated up to this length when building `factors`.
    factor_len: usize,
}

impl CrossedSystem {
    pub fn components(&self) -> usize {
        self.transversal.len()
    }

    pub fn group_rank(&self) -> usize {
        self.base.group_rank()
    }

    pub fn identity(&self) -> CrossedElement {
        CrossedElement {
            coords: IntVector::zeros(self.group_rank()),
            component: 0,
        }
    }

    /// The presentation generator `letter` as an element.
    pub fn letter_element(&self, letter: u32) -> &CrossedElement {
        &self.letter_elements[letter as usize]
    }

    /// `a * b` evaluated through the action matrices and the product table.
    /// The result is in canonical form.
    pub fn compose(&self, a: &CrossedElement, b: &CrossedElement) -> CrossedElement {
        let acted = self.action[a.component].mul_vec(&b.coords);
        let correction = &self.table_coords[a.component][b.component];
        let k = self.product_table[a.component][b.component].1;
        self.canonical(&CrossedElement {
            coords: a.coords.add(&acted).add(correction),
            component: k,
        })
    }

    /// The canonical representative of an element: over the components in its
    /// coset class, the pair with zero base part if one exists, otherwise the
    /// smallest component and base part.
    pub fn canonical(&self, e: &CrossedElement) -> CrossedElement {
        let cls = self.component_classes[e.component];
        let shifted = e.coords.add(&self.component_deltas[e.component]);
        let mut best: Option<CrossedElement> = None;
        for j in 0..self.components() {
            if self.component_classes[j] != cls {
                continue;
            }
            let v = shifted.sub(&self.component_deltas[j]);
            let replace = match &best {
                None => true,
                Some(b) => {
                    (!v.is_zero(), j, &v) < (!b.coords.is_zero(), b.component, &b.coords)
                }
            };
            if replace {
                best = Some(CrossedElement {
                    coords: v,
                    component: j,
                });
            }
        }
        best.expect("every component belongs to a coset class")
    }

    /// Folds a word of the presentation into an element, one letter at a time.
    pub fn element_of_word(&self, w: &Word) -> CrossedElement {
        let mut e = self.identity();
        for &l in &w.0 {
            e = self.compose(&e, &self.letter_elements[l as usize]);
        }
        e
    }

    /// The base element with the given group-basis coordinates, as an element.
    pub fn base_element(&self, coords: IntVector) -> CrossedElement {
        assert_eq!(coords.len(), self.group_rank());
        CrossedElement {
            coords,
            component: 0,
        }
    }

    /// All factorisations `(ambient base vector, transversal index)` recorded
    /// for the given normal form, canonical one first.
    pub fn factorizations(&self, nf: &Word) -> Option<&[(IntVector, usize)]> {
        self.factors.get(&nf.0).map(|v| v.as_slice())
    }

    /// Length bound under which the factorisation table is exhaustive.
    pub fn factor_len(&self) -> usize {
        self.factor_len
    }

    /// All normal forms recorded in the factorisation table (unordered).
    pub fn factor_words(&self) -> Vec<Word> {
        self.factors.keys().map(|k| Word(k.clone())).collect()
    }

    /// Printable form `(c1,...,ck)*w` of an element.
    pub fn describe_element(&self, e: &CrossedElement) -> String {
        let coords: Vec<String> = e.coords.0.iter().map(|c| c.to_string()).collect();
        format!(
            "({})*{}",
            coords.join(","),
            self.transversal[e.component].format(&self.rewrite.generators)
        )
    }
}

/// All exponent vectors `e` with `sum e[i] * weights[i] <= budget`.
fn exponent_combos(weights: &[usize], budget: usize) -> Vec<Vec<usize>> {
    fn rec(weights: &[usize], budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == weights.len() {
            out.push(prefix.clone());
            return;
        }
        let w = weights[prefix.len()];
        let mut used = 0usize;
        let mut e = 0usize;
        loop {
            prefix.push(e);
            rec(weights, budget - used, prefix, out);
            prefix.pop();
            e += 1;
            used += w;
            if used > budget {
                break;
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, budget, &mut Vec::new(), &mut out);
    out
}

/// Union-find over transversal components carrying, for each component, the
/// lattice shift to its current root.
struct CosetMerge {
    parent: Vec<usize>,
    /// `w_i = shift[i] + w_parent[i]` in group-basis coordinates.
    shift: Vec<IntVector>,
    rank: usize,
}

impl CosetMerge {
    fn new(t: usize, rank: usize) -> Self {
        CosetMerge {
            parent: (0..t).collect(),
            shift: vec![IntVector::zeros(rank); t],
            rank,
        }
    }

    fn find(&self, mut i: usize) -> (usize, IntVector) {
        let mut acc = IntVector::zeros(self.rank);
        while self.parent[i] != i {
            acc = acc.add(&self.shift[i]);
            i = self.parent[i];
        }
        (i, acc)
    }

    /// Records `w_a = d + w_b`. Returns whether anything changed; errs when
    /// the identification contradicts an earlier one. The smaller index
    /// always stays root, so component 0 roots the identity class.
    fn union(&mut self, a: usize, b: usize, d: &IntVector) -> Result<bool, CrossedError> {
        let (ra, da) = self.find(a);
        let (rb, db) = self.find(b);
        if ra == rb {
            if da != d.add(&db) {
                return Err(CrossedError::Invariant(format!(
                    "inconsistent coset identification between transversal components {} and {}",
                    a, b
                )));
            }
            return Ok(false);
        }
        if ra < rb {
            self.parent[rb] = ra;
            self.shift[rb] = da.sub(d).sub(&db);
        } else {
            self.parent[ra] = rb;
            self.shift[ra] = da.neg().add(d).add(&db);
        }
        Ok(true)
    }
}

/// Builds, verifies, and compresses the coset decomposition.
///
/// Checks performed, in order: base words pairwise commute; every normal form
/// of length at most `check_len` factors as `b * wi`; conjugation by each
/// presentation generator permutes the base generator vectors; transversal
/// words are pairwise distinct modulo the relations and none lies in the
/// base; the product table closes; the letterwise product of every
/// enumerated normal form agrees with its recorded factorisation; the induced
/// multiplication is associative on sampled triples.
pub fn extract_crossed_system(
    name: impl Into<String>,
    rs: &RewriteSystem,
    base: &AffineMonoid,
    base_words: &[Word],
    transversal: &[Word],
    check_len: usize,
) -> Result<CrossedSystem, CrossedError> {
    let name = name.into();
    let letters = rs.generator_count() as u32;
    let gens = base.generators.len();

    if base_words.len() != gens {
        return Err(CrossedError::Shape(format!(
            "{} base generators but {} realising words",
            gens,
            base_words.len()
        )));
    }
    if transversal.is_empty() || !transversal[0].is_empty() {
        return Err(CrossedError::Shape(
            "transversal must start with the empty word".into(),
        ));
    }
    for w in base_words.iter().chain(transversal.iter()) {
        if w.0.iter().any(|&l| l >= letters) {
            return Err(CrossedError::Shape(format!(
                "word {:?} uses a letter outside the presentation",
                w
            )));
        }
    }
    if base_words.iter().any(|w| w.is_empty()) {
        return Err(CrossedError::Shape(
            "base generator words must be nonempty".into(),
        ));
    }
    for (i, g) in base.generators.iter().enumerate() {
        if g.is_zero() {
            return Err(CrossedError::Shape(format!(
                "base generator `{}` is the zero vector",
                base.generator_names[i]
            )));
        }
        if base.generators[..i].contains(g) {
            return Err(CrossedError::Shape(format!(
                "base generator `{}` repeats an earlier vector",
                base.generator_names[i]
            )));
        }
    }

    let max_w = transversal.iter().map(Word::len).max().unwrap_or(0);
    let max_a = base_words.iter().map(Word::len).max().unwrap_or(0);
    let factor_len = [
        check_len,
        2 * max_w,
        max_w + max_a,
        2 * max_a,
        max_a + 1,
        max_w + 1,
    ]
    .into_iter()
    .max()
    .unwrap();
    if !rs.certifies_length(factor_len) {
        return Err(CrossedError::Certificate {
            needed: format!(
                "rewriting system confluent up to length {} (products of the decomposition data reach that length)",
                factor_len
            ),
        });
    }

    let render = |w: &Word| w.format(&rs.generators);

    // the base must be commutative inside the big monoid, not just as vectors
    for g in 0..gens {
        for h in (g + 1)..gens {
            let gh = rs.normal_form(&base_words[g].concat(&base_words[h]));
            let hg = rs.normal_form(&base_words[h].concat(&base_words[g]));
            if gh != hg {
                return Err(CrossedError::Commutativity {
                    left: base.generator_names[g].clone(),
                    right: base.generator_names[h].clone(),
                    word: render(&gh),
                    other: render(&hg),
                });
            }
        }
    }

    // every product b * wk with |b-word| + |wk| <= factor_len, by normal form
    let weights: Vec<usize> = base_words.iter().map(Word::len).collect();
    let mut factors: HashMap<Vec<u32>, Vec<(IntVector, usize)>> = HashMap::new();
    for (k, wk) in transversal.iter().enumerate() {
        if wk.len() > factor_len {
            return Err(CrossedError::Certificate {
                needed: format!("factor length {} covering transversal word {}", factor_len, k),
            });
        }
        for combo in exponent_combos(&weights, factor_len - wk.len()) {
            let mut word = Word::empty();
            let mut vector = IntVector::zeros(base.ambient_rank);
            for (g, &e) in combo.iter().enumerate() {
                for _ in 0..e {
                    word = word.concat(&base_words[g]);
                }
                if e > 0 {
                    vector = vector.add(&base.generators[g].scale(&BigInt::from(e)));
                }
            }
            let nf = rs.normal_form(&word.concat(wk));
            factors.entry(nf.0).or_default().push((vector, k));
        }
    }

    // canonical order: pure transversal entries first, then smallest index
    for list in factors.values_mut() {
        list.sort_by(|a, b| {
            (!a.0.is_zero(), a.1, &a.0)
                .cmp(&(!b.0.is_zero(), b.1, &b.0))
        });
        list.dedup();
    }

    // one base vector per coset of one normal form, and one normal form per
    // base-times-transversal product; anything else breaks the realisation
    let mut product_nf: HashMap<(IntVector, usize), Vec<u32>> = HashMap::new();
    for (nf, list) in &factors {
        let mut per_coset: HashMap<usize, &IntVector> = HashMap::new();
        for (v, k) in list {
            if let Some(prev) = per_coset.insert(*k, v) {
                if prev != v {
                    return Err(CrossedError::Realization {
                        word: render(&Word(nf.clone())),
                        detail: format!(
                            "two distinct base vectors reach it on coset {}",
                            k
                        ),
                    });
                }
            }
            if let Some(other) = product_nf.insert((v.clone(), *k), nf.clone()) {
                if &other != nf {
                    return Err(CrossedError::Realization {
                        word: render(&Word(nf.clone())),
                        detail: format!(
                            "the same base-times-transversal product also normalises to `{}`",
                            render(&Word(other))
                        ),
                    });
                }
            }
        }
    }

    // transversal words: pairwise distinct, none inside the base
    let trans_nf: Vec<Word> = transversal.iter().map(|w| rs.normal_form(w)).collect();
    for (i, ni) in trans_nf.iter().enumerate() {
        for nj in trans_nf[..i].iter() {
            if ni == nj {
                return Err(CrossedError::Realization {
                    word: render(ni),
                    detail: "two transversal words share a normal form".into(),
                });
            }
        }
        if i > 0 {
            if let Some(list) = factors.get(&ni.0) {
                if list.iter().any(|(_, k)| *k == 0) {
                    return Err(CrossedError::Realization {
                        word: render(ni),
                        detail: "transversal word lies in the base".into(),
                    });
                }
            }
        }
    }

    // coverage: every normal form up to check_len must factor
    let enumeration = enumerate_elements(rs, check_len);
    for word in enumeration.all_words() {
        if !factors.contains_key(&word.0) {
            return Err(CrossedError::Coverage {
                word: render(word),
            });
        }
    }

    // canonical factor of each presentation generator
    let mut letter_factor: Vec<(IntVector, usize)> = Vec::with_capacity(letters as usize);
    for l in 0..letters {
        let nf = rs.normal_form(&Word(vec![l]));
        let list = factors.get(&nf.0).ok_or(CrossedError::Coverage {
            word: render(&nf),
        })?;
        letter_factor.push(list[0].clone());
    }

    // conjugation by each letter: x * g = image(g) * x with image a generator
    let mut letter_perm: Vec<Vec<usize>> = Vec::with_capacity(letters as usize);
    for l in 0..letters {
        let (vx, kx) = &letter_factor[l as usize];
        let mut perm = Vec::with_capacity(gens);
        for g in 0..gens {
            let nf = rs.normal_form(&Word(vec![l]).concat(&base_words[g]));
            let fail = || CrossedError::Normality {
                generator: rs.generators[l as usize].clone(),
                base_generator: base.generator_names[g].clone(),
                word: render(&nf),
            };
            let list = factors.get(&nf.0).ok_or_else(fail)?;
            let entry = list.iter().find(|(_, k)| k == kx).ok_or_else(fail)?;
            let image = entry.0.sub(vx);
            let h = base
                .generators
                .iter()
                .position(|gen| *gen == image)
                .ok_or_else(fail)?;
            perm.push(h);
        }
        let mut seen = vec![false; gens];
        for &h in &perm {
            if seen[h] {
                return Err(CrossedError::Invariant(format!(
                    "conjugation by `{}` is not injective on the base generators",
                    rs.generators[l as usize]
                )));
            }
            seen[h] = true;
        }
        letter_perm.push(perm);
    }

    // per-component permutations: the last letter acts first, the first
    // letter outermost
    let mut generator_permutation: Vec<Vec<usize>> = Vec::with_capacity(transversal.len());
    for w in transversal {
        let mut perm: Vec<usize> = (0..gens).collect();
        for &l in w.0.iter().rev() {
            let lp = &letter_perm[l as usize];
            perm = perm.into_iter().map(|g| lp[g]).collect();
        }
        generator_permutation.push(perm);
    }

    let action_on_generators: Vec<Vec<IntVector>> = generator_permutation
        .iter()
        .map(|perm| perm.iter().map(|&h| base.generators[h].clone()).collect())
        .collect();

    // action matrices in group-basis coordinates, solved row by row from the
    // permuted generator columns
    let rank = base.group_rank();
    let gens_gr: Vec<IntVector> = base
        .generators
        .iter()
        .map(|g| {
            base.group_coordinates(g).ok_or_else(|| {
                CrossedError::Invariant("base generator outside its own group lattice".into())
            })
        })
        .collect::<Result<_, _>>()?;
    let cmat = IntMatrix::from_columns(&gens_gr);
    let ct_solver = IntegerSolver::new(&cmat.transpose());
    let mut action: Vec<IntMatrix> = Vec::with_capacity(transversal.len());
    for (i, perm) in generator_permutation.iter().enumerate() {
        let mut rows: Vec<IntVector> = Vec::with_capacity(rank);
        for r in 0..rank {
            let rhs = IntVector(perm.iter().map(|&h| gens_gr[h].0[r].clone()).collect());
            let sol = ct_solver.solve(&rhs).ok_or_else(|| {
                CrossedError::Invariant(format!(
                    "conjugation by transversal word {} does not extend to the group lattice",
                    i
                ))
            })?;
            rows.push(sol.particular);
        }
        let mat = IntMatrix::from_columns(&rows).transpose();
        let det = determinant(&mat)
            .map_err(|e| CrossedError::Invariant(format!("action determinant: {}", e)))?;
        if det.abs() != BigInt::one() {
            return Err(CrossedError::Invariant(format!(
                "conjugation by transversal word {} is not invertible over the integers",
                i
            )));
        }
        action.push(mat);
    }
    debug_assert!(action[0].is_identity());

    // product table wi * wj = b * wk via normal forms
    let mut product_table: Vec<Vec<(IntVector, usize)>> = Vec::with_capacity(transversal.len());
    let mut table_coords: Vec<Vec<IntVector>> = Vec::with_capacity(transversal.len());
    for wi in transversal {
        let mut row = Vec::with_capacity(transversal.len());
        let mut row_coords = Vec::with_capacity(transversal.len());
        for wj in transversal {
            let nf = rs.normal_form(&wi.concat(wj));
            let list = factors.get(&nf.0).ok_or(CrossedError::Coverage {
                word: render(&nf),
            })?;
            let (b, k) = list[0].clone();
            let coords = base.group_coordinates(&b).ok_or_else(|| {
                CrossedError::Invariant("product table entry outside the group lattice".into())
            })?;
            row.push((b, k));
            row_coords.push(coords);
        }
        product_table.push(row);
        table_coords.push(row_coords);
    }

    // transversal components whose words differ by a group element of the
    // base share a coset; seed identifications from double factorisations,
    // then propagate through the product table until nothing changes
    let t = transversal.len();
    let mut merge = CosetMerge::new(t, rank);
    let mut seed_nfs: Vec<&Vec<u32>> = factors.keys().collect();
    seed_nfs.sort();
    for nf in seed_nfs {
        let list = &factors[nf];
        let (v0, k0) = &list[0];
        for (v, k) in &list[1..] {
            // b_{v0} w_{k0} = b_v w_k, so w_{k0} = (v - v0) + w_k
            let d = base.group_coordinates(&v.sub(v0)).ok_or_else(|| {
                CrossedError::Invariant("factorisation vector outside the group lattice".into())
            })?;
            merge.union(*k0, *k, &d)?;
        }
    }
    let inverses: Vec<IntMatrix> = action.iter().map(invert_unimodular).collect();
    loop {
        let mut changed = false;
        for i in 0..t {
            for j in 0..t {
                let (ri, di) = merge.find(i);
                let (rj, dj) = merge.find(j);
                if ri == rj && i != j {
                    // w_i = d + w_j with d = di - dj
                    let d = di.sub(&dj);
                    for m in 0..t {
                        // right multiply: w_i w_m = b_im + w_{k(i,m)}
                        let kim = product_table[i][m].1;
                        let kjm = product_table[j][m].1;
                        let shift = d.add(&table_coords[j][m]).sub(&table_coords[i][m]);
                        changed |= merge.union(kim, kjm, &shift)?;
                        // left multiply: w_m w_i = b_mi + w_{k(m,i)}
                        let kmi = product_table[m][i].1;
                        let kmj = product_table[m][j].1;
                        let shift = action[m]
                            .mul_vec(&d)
                            .add(&table_coords[m][j])
                            .sub(&table_coords[m][i]);
                        changed |= merge.union(kmi, kmj, &shift)?;
                    }
                }
                for m in 0..t {
                    // right cancellation: equal cosets of w_i w_m and w_j w_m
                    let kim = product_table[i][m].1;
                    let kjm = product_table[j][m].1;
                    let (rim, dim) = merge.find(kim);
                    let (rjm, djm) = merge.find(kjm);
                    if rim == rjm && merge.find(i).0 != merge.find(j).0 {
                        let e = dim.sub(&djm);
                        let shift = table_coords[i][m].add(&e).sub(&table_coords[j][m]);
                        changed |= merge.union(i, j, &shift)?;
                    }
                    // left cancellation through the inverse action of w_m
                    let kmi = product_table[m][i].1;
                    let kmj = product_table[m][j].1;
                    let (rmi, dmi) = merge.find(kmi);
                    let (rmj, dmj) = merge.find(kmj);
                    if rmi == rmj && merge.find(i).0 != merge.find(j).0 {
                        let e = dmi.sub(&dmj);
                        let inside = table_coords[m][i].add(&e).sub(&table_coords[m][j]);
                        let shift = inverses[m].mul_vec(&inside);
                        changed |= merge.union(i, j, &shift)?;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut class_reps: Vec<usize> = (0..t).filter(|&i| merge.find(i).0 == i).collect();
    class_reps.sort_unstable();
    let component_classes: Vec<usize> = (0..t)
        .map(|i| {
            let (root, _) = merge.find(i);
            class_reps
                .iter()
                .position(|&r| r == root)
                .expect("every root is listed")
        })
        .collect();
    let component_deltas: Vec<IntVector> = (0..t).map(|i| merge.find(i).1).collect();
    debug_assert_eq!(class_reps[0], 0);

    // conjugation must agree across each class: members differ by a lattice
    // element, which acts trivially on the abelian lattice
    for i in 0..t {
        let rep = class_reps[component_classes[i]];
        if action[i] != action[rep] {
            return Err(CrossedError::Invariant(format!(
                "components {} and {} share a coset but act differently",
                i, rep
            )));
        }
    }

    // the class of a product may not depend on the representatives chosen,
    // and neither may its lattice part once the shifts are folded in
    for i in 0..t {
        for j in 0..t {
            let ri = class_reps[component_classes[i]];
            let rj = class_reps[component_classes[j]];
            let k = product_table[i][j].1;
            let krep = product_table[ri][rj].1;
            if component_classes[k] != component_classes[krep] {
                return Err(CrossedError::Invariant(format!(
                    "coset classes are not closed under multiplication at ({}, {})",
                    i, j
                )));
            }
            let lhs = table_coords[i][j].add(&component_deltas[k]);
            let rhs = component_deltas[i]
                .add(&action[ri].mul_vec(&component_deltas[j]))
                .add(&table_coords[ri][rj])
                .add(&component_deltas[krep]);
            if lhs != rhs {
                return Err(CrossedError::Invariant(format!(
                    "cocycle is not well defined on coset classes at ({}, {})",
                    i, j
                )));
            }
        }
    }

    let letter_elements: Vec<CrossedElement> = letter_factor
        .iter()
        .map(|(v, k)| {
            Ok(CrossedElement {
                coords: base.group_coordinates(v).ok_or_else(|| {
                    CrossedError::Invariant("generator factor outside the group lattice".into())
                })?,
                component: *k,
            })
        })
        .collect::<Result<_, CrossedError>>()?;

    let mut cs = CrossedSystem {
        name,
        rewrite: rs.clone(),
        base: base.clone(),
        base_words: base_words.to_vec(),
        transversal: transversal.to_vec(),
        coverage_len: check_len,
        action,
        action_on_generators,
        generator_permutation,
        product_table,
        table_coords,
        component_classes,
        class_reps,
        component_deltas,
        letter_elements,
        factors,
        factor_len,
    };
    let canonical_letters: Vec<CrossedElement> = cs
        .letter_elements
        .iter()
        .map(|e| cs.canonical(e))
        .collect();
    cs.letter_elements = canonical_letters;
    let cs = cs;

    // letterwise products must reproduce the recorded factorisations
    for word in enumeration.all_words() {
        let e = cs.element_of_word(word);
        let list = cs.factors.get(&word.0).expect("coverage verified above");
        let (v0, k0) = &list[0];
        let coords = cs.base.group_coordinates(v0).ok_or_else(|| {
            CrossedError::Invariant("factorisation vector outside the group lattice".into())
        })?;
        let recorded = cs.canonical(&CrossedElement {
            coords,
            component: *k0,
        });
        if e != recorded {
            return Err(CrossedError::Invariant(format!(
                "letterwise product of `{}` disagrees with its factorisation",
                render(word)
            )));
        }
    }

    // g * wi * wj bracketed both ways must agree with the normal form
    for g in 0..gens {
        for i in 0..cs.components() {
            for j in 0..cs.components() {
                let total = base_words[g].len() + transversal[i].len() + transversal[j].len();
                if total > factor_len {
                    continue;
                }
                let ge = cs.base_element(gens_gr[g].clone());
                let wi = CrossedElement {
                    coords: IntVector::zeros(rank),
                    component: i,
                };
                let wj = CrossedElement {
                    coords: IntVector::zeros(rank),
                    component: j,
                };
                let left = cs.compose(&cs.compose(&ge, &wi), &wj);
                let right = cs.compose(&ge, &cs.compose(&wi, &wj));
                if left != right {
                    return Err(CrossedError::Invariant(format!(
                        "associativity fails on `{}` * w{} * w{}",
                        base.generator_names[g], i, j
                    )));
                }
                let direct = rs.normal_form(
                    &base_words[g]
                        .concat(&transversal[i])
                        .concat(&transversal[j]),
                );
                let predicted = cs.word_of_element(&left).map_err(|needed| {
                    CrossedError::Certificate { needed }
                })?;
                if rs.normal_form(&predicted) != direct {
                    return Err(CrossedError::Invariant(format!(
                        "table evaluation of `{}` * w{} * w{} disagrees with rewriting",
                        base.generator_names[g], i, j
                    )));
                }
            }
        }
    }

    // transversal triples bracketed both ways must agree as elements
    for i in 0..cs.components() {
        for j in 0..cs.components() {
            for m in 0..cs.components() {
                let el = |k: usize| CrossedElement {
                    coords: IntVector::zeros(rank),
                    component: k,
                };
                let left = cs.compose(&cs.compose(&el(i), &el(j)), &el(m));
                let right = cs.compose(&el(i), &cs.compose(&el(j), &el(m)));
                if left != right {
                    return Err(CrossedError::Invariant(format!(
                        "associativity fails on w{} * w{} * w{}",
                        i, j, m
                    )));
                }
            }
        }
    }

    Ok(cs)
}

impl CrossedSystem {
    /// A word of the presentation evaluating to the element, built from a
    /// base membership certificate on whichever coset representative admits
    /// one. Errs with the missing certificate when no representative's base
    /// part is certified inside the base monoid.
    pub fn word_of_element(&self, e: &CrossedElement) -> Result<Word, String> {
        let cls = self.component_classes[e.component];
        let shifted = e.coords.add(&self.component_deltas[e.component]);
        let mut gave_out: Option<String> = None;
        for j in 0..self.components() {
            if self.component_classes[j] != cls {
                continue;
            }
            let v = shifted.sub(&self.component_deltas[j]);
            let ambient = self.base.from_group_coordinates(&v);
            let cert = match self.base.member(&ambient) {
                Membership::Member(c) => c,
                Membership::NotMember => continue,
                Membership::Unknown { reason } => {
                    gave_out = Some(reason);
                    continue;
                }
            };
            let mut word = Word::empty();
            for (g, c) in cert.coefficients.iter().enumerate() {
                let reps = c.to_usize().ok_or("certificate coefficient overflow")?;
                for _ in 0..reps {
                    word = word.concat(&self.base_words[g]);
                }
            }
            return Ok(word.concat(&self.transversal[j]));
        }
        Err(match gave_out {
            Some(reason) => format!("base membership gave out: {}", reason),
            None => format!(
                "base part of {} lies outside the base monoid on every coset representative",
                self.describe_element(e)
            ),
        })
    }
}
