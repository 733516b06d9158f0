//! Text format for affine monoids.
//!
//! ```text
//! # comment
//! affine B rank 8
//! gen b1: 1 1 1 1 0 0 0 0
//! gen b2: 1 1 1 -1 0 0 0 0
//! ```

use super::monoid::{AffineError, AffineMonoid};
use crate::lattice::IntVector;
use num_bigint::BigInt;

pub fn parse_affine_monoid(input: &str) -> Result<AffineMonoid, AffineError> {
    let mut header: Option<(String, usize)> = None;
    let mut gens: Vec<(String, IntVector)> = Vec::new();

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
        let err = |message: String| AffineError::Parse { line, message };
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens[0] {
            "affine" => {
                if header.is_some() {
                    return Err(err("duplicate `affine` header".into()));
                }
                if tokens.len() != 4 || tokens[2] != "rank" {
                    return Err(err("expected `affine <name> rank <r>`".into()));
                }
                let rank: usize = tokens[3]
                    .parse()
                    .map_err(|_| err(format!("bad rank `{}`", tokens[3])))?;
                header = Some((tokens[1].to_string(), rank));
            }
            "gen" => {
                let (_, rank) = header
                    .as_ref()
                    .ok_or_else(|| err("`gen` before the `affine` header".into()))?;
                if tokens.len() < 2 || !tokens[1].ends_with(':') {
                    return Err(err("expected `gen <name>: <integers>`".into()));
                }
                let label = tokens[1].trim_end_matches(':').to_string();
                if label.is_empty() {
                    return Err(err("empty generator name".into()));
                }
                let mut entries = Vec::with_capacity(*rank);
                for t in &tokens[2..] {
                    let n: BigInt = t
                        .parse()
                        .map_err(|_| err(format!("bad integer `{t}`")))?;
                    entries.push(n);
                }
                if entries.len() != *rank {
                    return Err(err(format!(
                        "generator `{}` has {} entries, expected {}",
                        label,
                        entries.len(),
                        rank
                    )));
                }
                gens.push((label, IntVector(entries)));
            }
            other => {
                return Err(err(format!("unrecognized directive `{other}`")));
            }
        }
    }

    let (name, rank) = header.ok_or(AffineError::Parse {
        line: 0,
        message: "missing `affine` header".into(),
    })?;
    AffineMonoid::new(name, rank, gens)
}
