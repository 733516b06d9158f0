//! Virtually free-abelian groups given as finite extensions of `Z^k`.
//!
//! A group is described by extension data: a finite quotient with its full
//! multiplication table, one integer matrix per quotient element acting on
//! the normal lattice, and a normalized 2-cocycle fixing the section
//! products. Elements are pairs (vector, coset) multiplied by
//! `(n, f)(m, g) = (n + sigma_f m + c(f, g), fg)`.
//!
//! On top of the arithmetic sit two decision procedures. The first asks
//! whether the group has any nontrivial periodic element with finitely many
//! conjugates: conjugating `(n, f)` by the lattice shifts the vector through
//! `(I - sigma_f) m`, so a finite conjugate set forces `sigma_f = I`, and
//! then torsion reduces to one linear system per quotient coset. The second
//! asks for infinite dihedral subgroups whose normalizer has finite index:
//! such a subgroup is driven by an order-2 element `t = (n, f)` inverting an
//! axis in the lattice (a nonzero (-1)-eigenvector of `sigma_f`), and the
//! finite-index condition collapses the image of `I - sigma_f` to rank at
//! most 1; both conditions are decidable by lattice computations over the
//! finitely many quotient involutions.

use crate::lattice::{
    determinant, eigen_lattice, image_rank, solve_integer, AffineSolutionSet, IntMatrix,
    IntVector,
};
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

/// A finite group as a complete multiplication table over named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotientTable {
    pub names: Vec<String>,
    /// `table[i][j]` is the index of the product `names[i] * names[j]`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtensionViolation {
    #[error("quotient table: {0}")]
    Quotient(String),
    #[error("action for `{f}` must be a {rank}x{rank} integer matrix")]
    ActionShape { f: String, rank: usize },
    #[error("action for `{f}` is not invertible over the integers")]
    ActionNotUnimodular { f: String },
    #[error("the identity coset must act as the identity matrix")]
    IdentityAction,
    #[error("action is not a homomorphism at ({f}, {g})")]
    ActionHomomorphism { f: String, g: String },
    #[error("cocycle entry ({f}, {g}) must have length {rank}")]
    CocycleShape { f: String, g: String, rank: usize },
    #[error("cocycle must vanish on identity pairs, violated at ({f}, {g})")]
    CocycleNormalization { f: String, g: String },
    #[error("cocycle identity fails at ({f}, {g}, {h})")]
    CocycleIdentity { f: String, g: String, h: String },
}

impl FiniteQuotientTable {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated tables have inverses")
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Full group-axiom check: shapes, identity law, associativity and
    /// two-sided inverses.
    pub fn validate(&self) -> Result<(), ExtensionViolation> {
        let n = self.order();
        let err = |m: String| Err(ExtensionViolation::Quotient(m));
        if n == 0 {
            return err("no elements".into());
        }
        if self.identity >= n {
            return err("identity index out of range".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &self.names {
            if !seen.insert(name) {
                return err(format!("duplicate element name `{name}`"));
            }
        }
        if self.table.len() != n || self.table.iter().any(|row| row.len() != n) {
            return err("table is not square".into());
        }
        for row in &self.table {
            if row.iter().any(|&x| x >= n) {
                return err("table entry out of range".into());
            }
        }
        let e = self.identity;
        for a in 0..n {
            if self.table[e][a] != a || self.table[a][e] != a {
                return err(format!("identity law fails at `{}`", self.names[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return err(format!(
                            "associativity fails at ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul(a, b) == e && self.mul(b, a) == e) {
                return err(format!("`{}` has no two-sided inverse", self.names[a]));
            }
        }
        Ok(())
    }
}

/// Extension of `Z^rank` by a finite quotient: action matrices and a
/// normalized 2-cocycle indexed by quotient pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub name: String,
    pub rank: usize,
    pub quotient: FiniteQuotientTable,
    /// One matrix per quotient element, acting on column vectors.
    pub action: Vec<IntMatrix>,
    /// `cocycle[f][g]` is the lattice correction in `(0, f)(0, g)`.
    pub cocycle: Vec<Vec<IntVector>>,
}

/// A group element: lattice vector plus quotient coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub vector: IntVector,
    pub coset: usize,
}

/// Outcome of one of the group-level decision procedures. `witness` (and
/// for the dihedral test an inverted `axis`) is present exactly when the
/// property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupVerdict {
    pub holds: bool,
    pub witness: Option<GroupElement>,
    pub axis: Option<IntVector>,
}

impl ExtensionData {
    /// Extension with trivial action and zero cocycle: the direct product.
    pub fn direct_product(
        name: impl Into<String>,
        rank: usize,
        quotient: FiniteQuotientTable,
    ) -> Self {
        let n = quotient.order();
        ExtensionData {
            name: name.into(),
            rank,
            quotient,
            action: vec![IntMatrix::identity(rank); n],
            cocycle: vec![vec![IntVector::zeros(rank); n]; n],
        }
    }

    /// All extension invariants, checked exhaustively over the finite
    /// quotient; reports the first violation.
    pub fn validate(&self) -> Result<(), ExtensionViolation> {
        self.quotient.validate()?;
        let n = self.quotient.order();
        let k = self.rank;
        let name = |i: usize| self.quotient.names[i].clone();
        if self.action.len() != n {
            return Err(ExtensionViolation::Quotient(
                "one action matrix per quotient element is required".into(),
            ));
        }
        for (f, m) in self.action.iter().enumerate() {
            if m.rows != k || m.cols != k {
                return Err(ExtensionViolation::ActionShape { f: name(f), rank: k });
            }
            let det = determinant(m).expect("square by the shape check");
            if !det.magnitude().is_one() {
                return Err(ExtensionViolation::ActionNotUnimodular { f: name(f) });
            }
        }
        let e = self.quotient.identity;
        if !self.action[e].is_identity() {
            return Err(ExtensionViolation::IdentityAction);
        }
        for f in 0..n {
            for g in 0..n {
                let fg = self.quotient.mul(f, g);
                if self.action[f].mul(&self.action[g]) != self.action[fg] {
                    return Err(ExtensionViolation::ActionHomomorphism {
                        f: name(f),
                        g: name(g),
                    });
                }
            }
        }
        if self.cocycle.len() != n || self.cocycle.iter().any(|row| row.len() != n) {
            return Err(ExtensionViolation::Quotient(
                "one cocycle vector per quotient pair is required".into(),
            ));
        }
        for f in 0..n {
            for g in 0..n {
                if self.cocycle[f][g].len() != k {
                    return Err(ExtensionViolation::CocycleShape {
                        f: name(f),
                        g: name(g),
                        rank: k,
                    });
                }
                if (f == e || g == e) && !self.cocycle[f][g].is_zero() {
                    return Err(ExtensionViolation::CocycleNormalization {
                        f: name(f),
                        g: name(g),
                    });
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    let fg = self.quotient.mul(f, g);
                    let gh = self.quotient.mul(g, h);
                    let lhs = self.cocycle[f][g].add(&self.cocycle[fg][h]);
                    let rhs = self.action[f]
                        .mul_vec(&self.cocycle[g][h])
                        .add(&self.cocycle[f][gh]);
                    if lhs != rhs {
                        return Err(ExtensionViolation::CocycleIdentity {
                            f: name(f),
                            g: name(g),
                            h: name(h),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity_element(&self) -> GroupElement {
        GroupElement {
            vector: IntVector::zeros(self.rank),
            coset: self.quotient.identity,
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            vector: a
                .vector
                .add(&self.action[a.coset].mul_vec(&b.vector))
                .add(&self.cocycle[a.coset][b.coset]),
            coset: self.quotient.mul(a.coset, b.coset),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let f_inv = self.quotient.inverse(a.coset);
        // (m, f^-1) with m = -sigma_{f^-1}(n) - c(f^-1, f)
        let vector = self.action[f_inv]
            .mul_vec(&a.vector)
            .add(&self.cocycle[f_inv][a.coset])
            .neg();
        GroupElement {
            vector,
            coset: f_inv,
        }
    }

    pub fn power(&self, a: &GroupElement, m: usize) -> GroupElement {
        let mut acc = self.identity_element();
        for _ in 0..m {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// Sum `I + sigma_f + ... + sigma_f^(m-1)` and the cocycle telescope of
    /// `(n, f)^m`, so that `(n, f)^m = (sum * n + telescope, f^m)`.
    fn power_data(&self, f: usize, m: usize) -> (IntMatrix, IntVector) {
        let k = self.rank;
        let mut sum = IntMatrix::zeros(k, k);
        let mut power = IntMatrix::identity(k);
        for _ in 0..m {
            sum = sum.add(&power);
            power = power.mul(&self.action[f]);
        }
        // telescope collects c(f^i, f) for i = 1..m-1; c(e, f) = 0 drops out
        let mut telescope = IntVector::zeros(k);
        let mut fi = f;
        for _ in 1..m {
            telescope = telescope.add(&self.cocycle[fi][f]);
            fi = self.quotient.mul(fi, f);
        }
        (sum, telescope)
    }

    /// All lattice vectors `n` with `(n, f)^m` trivial, as a solution set of
    /// the linear system `(sum of powers of sigma_f) n = -telescope`.
    /// `m` must be a multiple of the order of `f`.
    pub fn torsion_in_coset(&self, f: usize, m: usize) -> Option<AffineSolutionSet> {
        assert!(m > 0);
        let ord = self.quotient.element_order(f);
        assert!(m % ord == 0, "exponent must kill the coset");
        let (sum, telescope) = self.power_data(f, m);
        solve_integer(&sum, &telescope.neg())
    }

    /// Is every periodic element with finitely many conjugates trivial?
    /// Finitely many lattice conjugates of `(n, f)` forces `sigma_f = I`,
    /// so it is enough to solve the torsion system on those cosets.
    pub fn delta_plus_trivial(&self) -> GroupVerdict {
        let e = self.quotient.identity;
        for f in 0..self.quotient.order() {
            if f == e || !self.action[f].is_identity() {
                continue;
            }
            let ord = self.quotient.element_order(f);
            if let Some(sol) = self.torsion_in_coset(f, ord) {
                let witness = GroupElement {
                    vector: sol.particular,
                    coset: f,
                };
                debug_assert_eq!(self.power(&witness, ord), self.identity_element());
                return GroupVerdict {
                    holds: false,
                    witness: Some(witness),
                    axis: None,
                };
            }
        }
        GroupVerdict {
            holds: true,
            witness: None,
            axis: None,
        }
    }

    /// Does the group avoid infinite dihedral subgroups with finite-index
    /// normalizer? Fails exactly when some order-2 element `(n, f)` inverts
    /// a nonzero lattice vector while `I - sigma_f` has rank at most 1.
    pub fn dihedral_free(&self) -> GroupVerdict {
        let e = self.quotient.identity;
        let k = self.rank;
        for f in 0..self.quotient.order() {
            if f == e || self.quotient.mul(f, f) != e {
                continue;
            }
            let minus_one = eigen_lattice(&self.action[f], -1);
            if minus_one.is_empty() {
                continue;
            }
            let diff = IntMatrix::identity(k).sub(&self.action[f]);
            if image_rank(&diff) > 1 {
                continue;
            }
            // an order-2 element in the coset: (I + sigma_f) n = -c(f, f)
            let square = IntMatrix::identity(k).add(&self.action[f]);
            if let Some(sol) = solve_integer(&square, &self.cocycle[f][f].neg()) {
                let witness = GroupElement {
                    vector: sol.particular,
                    coset: f,
                };
                debug_assert_eq!(self.power(&witness, 2), self.identity_element());
                return GroupVerdict {
                    holds: false,
                    witness: Some(witness),
                    axis: Some(minus_one[0].clone()),
                };
            }
        }
        GroupVerdict {
            holds: true,
            witness: None,
            axis: None,
        }
    }

    /// Conjugate the whole presentation by a basis change `u` of the
    /// lattice: actions become `u sigma u^-1`, cocycle vectors `u c`.
    pub fn change_basis(&self, u: &IntMatrix) -> ExtensionData {
        let det = determinant(u).expect("basis change must be square");
        assert!(det.magnitude().is_one(), "basis change must be unimodular");
        let u_inv = crate::affine::hilbert::invert_unimodular(u);
        ExtensionData {
            name: self.name.clone(),
            rank: self.rank,
            quotient: self.quotient.clone(),
            action: self
                .action
                .iter()
                .map(|m| u.mul(m).mul(&u_inv))
                .collect(),
            cocycle: self
                .cocycle
                .iter()
                .map(|row| row.iter().map(|c| u.mul_vec(c)).collect())
                .collect(),
        }
    }
}

/// Parses the extension file format:
///
/// ```text
/// group G rank 2
/// quotient: e f
/// table: e*e=e e*f=f f*e=f f*f=e
/// action f: [[1,0],[-2,-1]]
/// cocycle f f: 1 -1
/// ```
///
/// The first quotient name is the identity. Actions default to the identity
/// matrix only for the identity coset; cocycle entries default to zero.
pub fn parse_extension(input: &str) -> Result<ExtensionData, ExtensionParseError> {
    let mut name: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut quotient_names: Vec<String> = Vec::new();
    let mut products: Vec<(String, String, String)> = Vec::new();
    let mut actions: Vec<(String, IntMatrix, usize)> = Vec::new();
    let mut cocycles: Vec<(String, String, IntVector, usize)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if text.is_empty() {
            continue;
        }
        let err = |message: String| ExtensionParseError { line, message };
        if let Some(rest) = text.strip_prefix("group ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 3 || tokens[1] != "rank" {
                return Err(err("expected `group <name> rank <k>`".into()));
            }
            name = Some(tokens[0].to_string());
            rank = Some(
                tokens[2]
                    .parse()
                    .map_err(|_| err(format!("bad rank `{}`", tokens[2])))?,
            );
        } else if let Some(rest) = text.strip_prefix("quotient:") {
            quotient_names = rest.split_whitespace().map(|s| s.to_string()).collect();
            if quotient_names.is_empty() {
                return Err(err("empty quotient".into()));
            }
        } else if let Some(rest) = text.strip_prefix("table:") {
            for entry in rest.split_whitespace() {
                let (lhs, result) = entry
                    .split_once('=')
                    .ok_or_else(|| err(format!("bad table entry `{entry}`")))?;
                let (a, b) = lhs
                    .split_once('*')
                    .ok_or_else(|| err(format!("bad table entry `{entry}`")))?;
                products.push((a.to_string(), b.to_string(), result.to_string()));
            }
        } else if let Some(rest) = text.strip_prefix("action ") {
            let (f, body) = rest
                .split_once(':')
                .ok_or_else(|| err("expected `action <f>: [[..],..]`".into()))?;
            let matrix = parse_matrix(body.trim()).map_err(|m| err(m))?;
            actions.push((f.trim().to_string(), matrix, line));
        } else if let Some(rest) = text.strip_prefix("cocycle ") {
            let (pair, body) = rest
                .split_once(':')
                .ok_or_else(|| err("expected `cocycle <f> <g>: <integers>`".into()))?;
            let names: Vec<&str> = pair.split_whitespace().collect();
            if names.len() != 2 {
                return Err(err("cocycle needs exactly two coset names".into()));
            }
            let mut entries = Vec::new();
            for t in body.split_whitespace() {
                entries.push(
                    t.parse::<BigInt>()
                        .map_err(|_| err(format!("bad integer `{t}`")))?,
                );
            }
            cocycles.push((
                names[0].to_string(),
                names[1].to_string(),
                IntVector(entries),
                line,
            ));
        } else {
            return Err(err(format!("unrecognized directive `{text}`")));
        }
    }

    let name = name.ok_or(ExtensionParseError {
        line: 0,
        message: "missing `group` header".into(),
    })?;
    let rank = rank.unwrap();
    if quotient_names.is_empty() {
        return Err(ExtensionParseError {
            line: 0,
            message: "missing `quotient:` line".into(),
        });
    }
    let n = quotient_names.len();
    let index = |label: &str, line: usize| -> Result<usize, ExtensionParseError> {
        quotient_names
            .iter()
            .position(|q| q == label)
            .ok_or(ExtensionParseError {
                line,
                message: format!("unknown coset `{label}`"),
            })
    };
    let mut table = vec![vec![usize::MAX; n]; n];
    for (a, b, c) in &products {
        table[index(a, 0)?][index(b, 0)?] = index(c, 0)?;
    }
    for (i, row) in table.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v == usize::MAX {
                return Err(ExtensionParseError {
                    line: 0,
                    message: format!(
                        "missing table entry {}*{}",
                        quotient_names[i], quotient_names[j]
                    ),
                });
            }
        }
    }
    let mut action = vec![IntMatrix::identity(rank); n];
    let mut given = vec![false; n];
    given[0] = true;
    for (f, m, line) in actions {
        let i = index(&f, line)?;
        action[i] = m;
        given[i] = true;
    }
    if let Some(missing) = (0..n).find(|&i| !given[i]) {
        return Err(ExtensionParseError {
            line: 0,
            message: format!("missing action for `{}`", quotient_names[missing]),
        });
    }
    let mut cocycle = vec![vec![IntVector::zeros(rank); n]; n];
    for (f, g, v, line) in cocycles {
        if v.len() != rank {
            return Err(ExtensionParseError {
                line,
                message: format!("cocycle entry has {} values, expected {rank}", v.len()),
            });
        }
        cocycle[index(&f, line)?][index(&g, line)?] = v;
    }
    Ok(ExtensionData {
        name,
        rank,
        quotient: FiniteQuotientTable {
            names: quotient_names,
            table,
            identity: 0,
        },
        action,
        cocycle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ExtensionParseError {
    pub line: usize,
    pub message: String,
}

/// Parses `[[1,0],[-2,-1]]` into a matrix, rows in order.
fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let inner = text
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(|| format!("bad matrix `{text}`"))?;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for row_text in inner.split("],[") {
        let mut row = Vec::new();
        for entry in row_text.split(',') {
            let entry = entry.trim();
            row.push(
                entry
                    .parse::<BigInt>()
                    .map_err(|_| format!("bad integer `{entry}`"))?,
            );
        }
        rows.push(row);
    }
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    let mut m = IntMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = v.clone();
        }
    }
    Ok(m)
}
