//! Monomial matrices over a free abelian group, as cancellativity evidence.
//!
//! A monomial matrix has exactly one nonzero entry per row and column, each a
//! Laurent monomial in `rank` commuting indeterminates, stored as an exponent
//! vector. Assigning one to every presentation generator gives a candidate
//! homomorphism; [`verify_monomial_rep`] checks the defining relations and
//! then scans all normal forms up to a length for image collisions. A clean
//! scan means the monoid embeds into a group up to that length, which is the
//! cancellativity evidence the rest of the pipeline relies on.

use crate::lattice::IntVector;
use crate::presentations::{enumerate_elements, Presentation, RewriteSystem, Word};
use std::collections::HashMap;
use thiserror::Error;

/// Square matrix with one Laurent-monomial entry per row and column: row `i`
/// carries exponent vector `entries[i]` in column `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    pub size: usize,
    pub rank: usize,
    /// Column of the nonzero entry in each row, 0-indexed.
    pub perm: Vec<usize>,
    /// Exponent vector of the nonzero entry in each row.
    pub entries: Vec<IntVector>,
}

impl MonomialMatrix {
    pub fn identity(size: usize, rank: usize) -> Self {
        MonomialMatrix {
            size,
            rank,
            perm: (0..size).collect(),
            entries: vec![IntVector::zeros(rank); size],
        }
    }

    /// One entry per row and column, exponent vectors of the right length.
    pub fn validate(&self) -> Result<(), String> {
        if self.perm.len() != self.size || self.entries.len() != self.size {
            return Err(format!("matrix data does not match size {}", self.size));
        }
        let mut seen = vec![false; self.size];
        for &c in &self.perm {
            if c >= self.size {
                return Err(format!("column index {} out of range", c));
            }
            if seen[c] {
                return Err(format!("column {} carries two entries", c));
            }
            seen[c] = true;
        }
        for e in &self.entries {
            if e.len() != self.rank {
                return Err(format!(
                    "exponent vector of length {} where rank is {}",
                    e.len(),
                    self.rank
                ));
            }
        }
        Ok(())
    }

    /// Matrix product: entries multiply as monomials, so exponents add along
    /// the composed permutation.
    pub fn multiply(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.size, other.size, "sizes must match");
        assert_eq!(self.rank, other.rank, "exponent ranks must match");
        let perm: Vec<usize> = (0..self.size).map(|i| other.perm[self.perm[i]]).collect();
        let entries: Vec<IntVector> = (0..self.size)
            .map(|i| self.entries[i].add(&other.entries[self.perm[i]]))
            .collect();
        MonomialMatrix {
            size: self.size,
            rank: self.rank,
            perm,
            entries,
        }
    }
}

/// Image of a word under a generator assignment, multiplied left to right.
pub fn word_image(matrices: &[MonomialMatrix], word: &Word) -> MonomialMatrix {
    if matrices.is_empty() {
        assert!(word.is_empty(), "letters without matrices");
        return MonomialMatrix::identity(0, 0);
    }
    let mut m = MonomialMatrix::identity(matrices[0].size, matrices[0].rank);
    for &l in &word.0 {
        m = m.multiply(&matrices[l as usize]);
    }
    m
}

/// Why a monomial representation was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepFailure {
    #[error("relation `{relation}` is not respected by the assigned matrices")]
    Relation { relation: String },
    #[error("distinct normal forms `{left}` and `{right}` share an image")]
    Collision { left: String, right: String },
    #[error("{0}")]
    Shape(String),
}

/// Outcome of a clean scan: how much ground the collision search covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepScan {
    pub words_scanned: usize,
    pub scan_len: usize,
}

/// Checks that the assignment respects every defining relation, then scans
/// all normal forms up to `scan_len` for a pair with equal images. Ok means
/// the images separate elements on the scanned range.
pub fn verify_monomial_rep(
    p: &Presentation,
    rs: &RewriteSystem,
    matrices: &[MonomialMatrix],
    scan_len: usize,
) -> Result<RepScan, RepFailure> {
    if matrices.len() != p.generators.len() {
        return Err(RepFailure::Shape(format!(
            "{} generators but {} matrices",
            p.generators.len(),
            matrices.len()
        )));
    }
    if rs.generator_count() != p.generators.len() {
        return Err(RepFailure::Shape(
            "rewriting system and presentation disagree on the generators".into(),
        ));
    }
    for (i, m) in matrices.iter().enumerate() {
        m.validate()
            .map_err(|e| RepFailure::Shape(format!("matrix for `{}`: {}", p.generators[i], e)))?;
        if m.size != matrices[0].size || m.rank != matrices[0].rank {
            return Err(RepFailure::Shape(
                "all matrices must share one size and exponent rank".into(),
            ));
        }
    }
    if !rs.certifies_length(scan_len) {
        return Err(RepFailure::Shape(format!(
            "normal forms are only certified up to length {}, below the requested scan",
            scan_len
        )));
    }

    for (lhs, rhs) in &p.relations {
        if word_image(matrices, lhs) != word_image(matrices, rhs) {
            return Err(RepFailure::Relation {
                relation: format!(
                    "{} = {}",
                    lhs.format(&p.generators),
                    rhs.format(&p.generators)
                ),
            });
        }
    }

    let enumeration = enumerate_elements(rs, scan_len);
    let mut images: HashMap<MonomialMatrix, Word> = HashMap::new();
    let mut scanned = 0usize;
    for word in enumeration.all_words() {
        scanned += 1;
        if let Some(prev) = images.insert(word_image(matrices, word), word.clone()) {
            return Err(RepFailure::Collision {
                left: prev.format(&p.generators),
                right: word.format(&p.generators),
            });
        }
    }
    Ok(RepScan {
        words_scanned: scanned,
        scan_len,
    })
}

/// Parse failure with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct RepParseError {
    pub line: usize,
    pub message: String,
}

/// Parses a generator-to-matrix assignment.
///
/// ```text
/// rep size 4 rank 4
/// gen x1: (2 1 4 3) [1 0 0 0] [0 0 0 0] [-1 1 1 0] [0 0 0 0]
/// ```
///
/// The permutation lists, 1-indexed, the column of each row's entry; the
/// bracketed groups are the rows' exponent vectors. `#` starts a comment.
pub fn parse_monomial_rep(input: &str) -> Result<Vec<(String, MonomialMatrix)>, RepParseError> {
    let mut size: Option<usize> = None;
    let mut rank: Option<usize> = None;
    let mut out: Vec<(String, MonomialMatrix)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let err = |message: String| RepParseError { line, message };
        if let Some(rest) = text.strip_prefix("rep ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 4 || tokens[0] != "size" || tokens[2] != "rank" {
                return Err(err("expected `rep size <n> rank <k>`".into()));
            }
            size = Some(
                tokens[1]
                    .parse()
                    .map_err(|_| err(format!("bad size `{}`", tokens[1])))?,
            );
            rank = Some(
                tokens[3]
                    .parse()
                    .map_err(|_| err(format!("bad rank `{}`", tokens[3])))?,
            );
            continue;
        }
        if let Some(rest) = text.strip_prefix("gen ") {
            let n = size.ok_or_else(|| err("`gen` before the `rep` header".into()))?;
            let k = rank.expect("rank set with size");
            let (name, body) = rest
                .split_once(':')
                .ok_or_else(|| err("expected `gen <name>: (...) [...] ...`".into()))?;
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(err("empty generator name".into()));
            }
            let body = body.trim();
            let close = body
                .find(')')
                .filter(|_| body.starts_with('('))
                .ok_or_else(|| err("expected a parenthesised permutation".into()))?;
            let perm: Vec<usize> = body[1..close]
                .split_whitespace()
                .map(|t| {
                    let v: usize = t
                        .parse()
                        .map_err(|_| err(format!("bad permutation entry `{}`", t)))?;
                    if v == 0 || v > n {
                        return Err(err(format!("permutation entry {} out of 1..={}", v, n)));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<_, _>>()?;
            if perm.len() != n {
                return Err(err(format!(
                    "permutation lists {} columns, size is {}",
                    perm.len(),
                    n
                )));
            }
            let mut rows: Vec<IntVector> = Vec::with_capacity(n);
            let mut rest = body[close + 1..].trim();
            while !rest.is_empty() {
                if !rest.starts_with('[') {
                    return Err(err(format!("expected `[` at `{}`", rest)));
                }
                let end = rest
                    .find(']')
                    .ok_or_else(|| err("unterminated exponent vector".into()))?;
                let entries: Vec<i64> = rest[1..end]
                    .split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| err(format!("bad exponent `{}`", t)))
                    })
                    .collect::<Result<_, _>>()?;
                if entries.len() != k {
                    return Err(err(format!(
                        "exponent vector of length {}, rank is {}",
                        entries.len(),
                        k
                    )));
                }
                rows.push(IntVector::from_i64(&entries));
                rest = rest[end + 1..].trim();
            }
            if rows.len() != n {
                return Err(err(format!("{} exponent vectors, size is {}", rows.len(), n)));
            }
            let m = MonomialMatrix {
                size: n,
                rank: k,
                perm,
                entries: rows,
            };
            m.validate().map_err(|e| err(e))?;
            out.push((name, m));
            continue;
        }
        return Err(err(format!("unrecognised directive `{}`", text)));
    }

    if size.is_none() {
        return Err(RepParseError {
            line: input.lines().count().max(1),
            message: "missing `rep size <n> rank <k>` header".into(),
        });
    }
    Ok(out)
}
