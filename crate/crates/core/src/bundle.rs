//! Directory bundles: a presentation plus the data needed to run the whole
//! pipeline on it, stored as small text files.
//!
//! A bundle directory contains:
//!
//! ```text
//! presentation.txt    monoid presentation (required)
//! base.txt            affine base monoid, plus one `word` line per generator
//! transversal.txt     one word per line, `1` for the empty word
//! monomial_rep.txt    optional monomial matrices, one per generator
//! expected.json       optional pinned facts for replay comparison
//! ```
//!
//! `base.txt` extends the affine format with `word <gen>: <letters>` lines
//! naming a word of the presentation that represents the generator.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::affine::{parse_affine_monoid, AffineError, AffineMonoid};
use crate::crossed::{
    extract_crossed_system, parse_monomial_rep, CrossedError, CrossedSystem, MonomialMatrix,
    RepParseError,
};
use crate::presentations::{
    complete, parse_presentation, CompletionBounds, CompletionError, ParseError, Presentation,
    RewriteSystem, Word,
};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("bundle directory `{0}` not found")]
    NotFound(PathBuf),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Presentation {
        path: PathBuf,
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Base {
        path: PathBuf,
        source: AffineError,
    },
    #[error("{path}: {source}")]
    Rep {
        path: PathBuf,
        source: RepParseError,
    },
    #[error("{path} line {line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Expected { path: PathBuf, message: String },
}

/// Everything a bundle directory declares, parsed but not yet computed on.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub dir: PathBuf,
    pub presentation: Presentation,
    pub base: AffineMonoid,
    /// `base_words[i]` is a word representing base generator `i`.
    pub base_words: Vec<Word>,
    pub transversal: Vec<Word>,
    /// Monomial matrices in presentation-generator order, when declared.
    pub rep: Option<Vec<MonomialMatrix>>,
    pub expected: Option<serde_json::Value>,
}

fn read(path: &Path) -> Result<String, BundleError> {
    fs::read_to_string(path).map_err(|source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn strip_comment(raw: &str) -> &str {
    match raw.find('#') {
        Some(p) => &raw[..p],
        None => raw,
    }
}

/// Parses a word over the presentation's generators; `1` is the empty word.
fn parse_word(
    p: &Presentation,
    text: &str,
    path: &Path,
    line: usize,
) -> Result<Word, BundleError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens == ["1"] {
        return Ok(Word::empty());
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for t in &tokens {
        match p.generator_index(t) {
            Some(g) => letters.push(g as u32),
            None => {
                return Err(BundleError::Format {
                    path: path.to_path_buf(),
                    line,
                    message: format!("unknown generator `{t}`"),
                })
            }
        }
    }
    Ok(Word(letters))
}

/// Loads a bundle from `dir`, validating shapes but running no completion.
pub fn load_bundle(dir: impl AsRef<Path>) -> Result<Bundle, BundleError> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(BundleError::NotFound(dir.to_path_buf()));
    }

    let pres_path = dir.join("presentation.txt");
    let presentation = parse_presentation(&read(&pres_path)?).map_err(|source| {
        BundleError::Presentation {
            path: pres_path.clone(),
            source,
        }
    })?;

    // base.txt: split the `word` lines out, hand the rest to the affine parser
    let base_path = dir.join("base.txt");
    let base_text = read(&base_path)?;
    let mut affine_lines = String::new();
    let mut words: HashMap<String, (Word, usize)> = HashMap::new();
    for (idx, raw) in base_text.lines().enumerate() {
        let line = idx + 1;
        let text = strip_comment(raw).trim();
        if let Some(rest) = text.strip_prefix("word ") {
            let (label, word_text) = rest.split_once(':').ok_or_else(|| BundleError::Format {
                path: base_path.clone(),
                line,
                message: "expected `word <gen>: <letters>`".into(),
            })?;
            let label = label.trim().to_string();
            let word = parse_word(&presentation, word_text, &base_path, line)?;
            if words.insert(label.clone(), (word, line)).is_some() {
                return Err(BundleError::Format {
                    path: base_path.clone(),
                    line,
                    message: format!("duplicate word for `{label}`"),
                });
            }
        } else {
            affine_lines.push_str(raw);
            affine_lines.push('\n');
        }
    }
    let base = parse_affine_monoid(&affine_lines).map_err(|source| BundleError::Base {
        path: base_path.clone(),
        source,
    })?;
    let mut base_words = Vec::with_capacity(base.generators.len());
    for g in &base.generator_names {
        match words.remove(g) {
            Some((word, _)) => base_words.push(word),
            None => {
                return Err(BundleError::Format {
                    path: base_path.clone(),
                    line: 0,
                    message: format!("no word declared for base generator `{g}`"),
                })
            }
        }
    }
    if let Some((label, (_, line))) = words.into_iter().next() {
        return Err(BundleError::Format {
            path: base_path,
            line,
            message: format!("word for `{label}` matches no base generator"),
        });
    }

    let trans_path = dir.join("transversal.txt");
    let mut transversal = Vec::new();
    for (idx, raw) in read(&trans_path)?.lines().enumerate() {
        let text = strip_comment(raw).trim();
        if text.is_empty() {
            continue;
        }
        transversal.push(parse_word(&presentation, text, &trans_path, idx + 1)?);
    }

    let rep_path = dir.join("monomial_rep.txt");
    let rep = if rep_path.is_file() {
        let named = parse_monomial_rep(&read(&rep_path)?).map_err(|source| BundleError::Rep {
            path: rep_path.clone(),
            source,
        })?;
        if named.len() != presentation.generators.len() {
            return Err(BundleError::Format {
                path: rep_path,
                line: 0,
                message: format!(
                    "{} matrices for {} generators",
                    named.len(),
                    presentation.generators.len()
                ),
            });
        }
        let mut by_name: HashMap<String, MonomialMatrix> = named.into_iter().collect();
        let mut mats = Vec::with_capacity(presentation.generators.len());
        for g in &presentation.generators {
            match by_name.remove(g) {
                Some(m) => mats.push(m),
                None => {
                    return Err(BundleError::Format {
                        path: rep_path,
                        line: 0,
                        message: format!("no matrix for generator `{g}`"),
                    })
                }
            }
        }
        Some(mats)
    } else {
        None
    };

    let expected_path = dir.join("expected.json");
    let expected = if expected_path.is_file() {
        let value = serde_json::from_str(&read(&expected_path)?).map_err(|e| {
            BundleError::Expected {
                path: expected_path,
                message: e.to_string(),
            }
        })?;
        Some(value)
    } else {
        None
    };

    let name = presentation.name.clone();
    Ok(Bundle {
        name,
        dir: dir.to_path_buf(),
        presentation,
        base,
        base_words,
        transversal,
        rep,
        expected,
    })
}

/// Finds a bundle directory: a path that exists wins, otherwise the name is
/// tried against `$WORKBENCH_BUNDLE_DIR`, `./bundles`, the directory
/// `../../bundles` relative to the running executable, and `./examples`.
pub fn resolve_bundle_dir(spec: &str) -> Result<PathBuf, BundleError> {
    let direct = PathBuf::from(spec);
    if direct.is_dir() {
        return Ok(direct);
    }
    let mut roots: Vec<PathBuf> = Vec::new();
    if let Ok(env_root) = std::env::var("WORKBENCH_BUNDLE_DIR") {
        roots.push(PathBuf::from(env_root));
    }
    roots.push(PathBuf::from("bundles"));
    if let Ok(exe) = std::env::current_exe() {
        if let Some(dir) = exe.parent() {
            roots.push(dir.join("../../bundles"));
        }
    }
    roots.push(PathBuf::from("examples"));
    let leaf = direct
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    for root in roots {
        let candidate = root.join(&leaf);
        if candidate.is_dir() {
            return Ok(candidate);
        }
    }
    Err(BundleError::NotFound(direct))
}

impl Bundle {
    /// Completes the bundle's presentation under the given bounds.
    pub fn complete(&self, bounds: CompletionBounds) -> Result<RewriteSystem, CompletionError> {
        complete(&self.presentation, bounds)
    }

    /// Extracts the crossed structure against an already completed system.
    pub fn crossed_system(
        &self,
        rs: &RewriteSystem,
        check_len: usize,
    ) -> Result<CrossedSystem, CrossedError> {
        extract_crossed_system(
            &self.name,
            rs,
            &self.base,
            &self.base_words,
            &self.transversal,
            check_len,
        )
    }
}
