//! Finitely presented monoids given by monomial relations: parsing,
//! Knuth-Bendix completion under the degree-lexicographic order, normal
//! forms and element enumeration.
//!
//! Generators are ordered by declaration; words compare by length first and
//! then lexicographically by generator index. That order is total and
//! compatible with concatenation, so every oriented rule strictly decreases
//! it and rewriting always terminates. Completion itself may not: it is run
//! under explicit bounds and reports the offending critical pair when a
//! bound is hit.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

/// A word in the free monoid over the presentation's generators, stored as
/// generator indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Degree-lexicographic comparison: length, then generator indices.
    pub fn deglex(&self, other: &Word) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&g| names[g as usize].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.deglex(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deglex(other)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// A monoid presentation: named generators plus word equations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as u32)
    }

    /// True when every relation preserves word length. Congruence classes of
    /// such presentations never leave their length stratum, which is what
    /// makes truncated completion certificates sound.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.len() == r.len())
    }

    /// True when every relation has both sides of length exactly two and no
    /// length-two word occurs on more than one relation side overall.
    pub fn is_quadratic_monomial(&self) -> bool {
        let mut seen: HashMap<&[u32], usize> = HashMap::new();
        for (l, r) in &self.relations {
            if l.len() != 2 || r.len() != 2 {
                return false;
            }
            *seen.entry(&l.0).or_insert(0) += 1;
            *seen.entry(&r.0).or_insert(0) += 1;
        }
        seen.values().all(|&c| c <= 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}, column {column}: undeclared symbol `{name}`")]
    UndeclaredSymbol {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: relation side is empty")]
    EmptyRelationSide { line: usize },
}

/// Parses the plain-text presentation format:
///
/// ```text
/// monoid example
/// generators: x1 x2
/// relations:
///   x1 x2 = x2 x1
///   x1^2 = x2^2        # `^` repeats a generator
/// ```
///
/// `#` starts a comment. A relation line may chain equalities
/// (`a = b = c` means `a = b` and `b = c`).
pub fn parse_presentation(input: &str) -> Result<Presentation, ParseError> {
    enum Section {
        Preamble,
        Generators,
        Relations,
    }
    let mut name = String::new();
    let mut generators: Vec<String> = Vec::new();
    let mut relations: Vec<(Word, Word)> = Vec::new();
    let mut section = Section::Preamble;

    for (lineno, raw) in input.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("monoid") {
            if rest.starts_with(char::is_whitespace) || rest.is_empty() {
                name = rest.trim().to_string();
                continue;
            }
        }
        if let Some(rest) = trimmed.strip_prefix("generators:") {
            section = Section::Generators;
            parse_generator_names(rest, lineno, &mut generators)?;
            continue;
        }
        if trimmed == "relations:" {
            section = Section::Relations;
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    column: column_of(raw, trimmed),
                    message: format!("expected `monoid`, `generators:` or `relations:`, found `{trimmed}`"),
                });
            }
            Section::Generators => {
                parse_generator_names(trimmed, lineno, &mut generators)?;
            }
            Section::Relations => {
                let sides: Vec<&str> = trimmed.split('=').collect();
                if sides.len() < 2 {
                    return Err(ParseError::Syntax {
                        line: lineno,
                        column: column_of(raw, trimmed),
                        message: "relation line needs `=`".to_string(),
                    });
                }
                let mut words = Vec::new();
                for side in &sides {
                    words.push(parse_word_tokens(side, raw, lineno, &generators)?);
                }
                for pair in words.windows(2) {
                    relations.push((pair[0].clone(), pair[1].clone()));
                }
            }
        }
    }
    Ok(Presentation {
        name,
        generators,
        relations,
    })
}

fn parse_generator_names(
    text: &str,
    line: usize,
    generators: &mut Vec<String>,
) -> Result<(), ParseError> {
    for tok in text.split_whitespace() {
        if generators.iter().any(|g| g == tok) {
            return Err(ParseError::DuplicateGenerator {
                line,
                name: tok.to_string(),
            });
        }
        generators.push(tok.to_string());
    }
    Ok(())
}

fn column_of(raw: &str, needle: &str) -> usize {
    raw.find(needle).map(|i| i + 1).unwrap_or(1)
}

/// Parses one relation side. Tokens are generator names with optional
/// `name^k` repetition. Empty sides are rejected: monomial relations have
/// nonempty words on both sides.
fn parse_word_tokens(
    text: &str,
    raw: &str,
    line: usize,
    generators: &[String],
) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (base, count) = match tok.split_once('^') {
            Some((b, exp)) => {
                let count: usize = exp.parse().map_err(|_| ParseError::Syntax {
                    line,
                    column: column_of(raw, tok),
                    message: format!("bad exponent in `{tok}`"),
                })?;
                if count == 0 {
                    return Err(ParseError::Syntax {
                        line,
                        column: column_of(raw, tok),
                        message: format!("exponent must be positive in `{tok}`"),
                    });
                }
                (b, count)
            }
            None => (tok, 1),
        };
        let idx = generators
            .iter()
            .position(|g| g == base)
            .ok_or_else(|| ParseError::UndeclaredSymbol {
                line,
                column: column_of(raw, base),
                name: base.to_string(),
            })? as u32;
        for _ in 0..count {
            letters.push(idx);
        }
    }
    if letters.is_empty() {
        return Err(ParseError::EmptyRelationSide { line });
    }
    Ok(Word(letters))
}

/// An oriented rewrite rule; `rhs` is deglex-smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// What the completed system certifies.
///
/// `Full` means the critical-pair queue emptied: normal forms are canonical
/// for all words. `UpToLength(n)` arises for length-preserving
/// presentations whose canonical system is infinite: all critical pairs on
/// words of length at most `n` resolve, and since congruence classes stay
/// inside their length stratum, normal forms are canonical for every word
/// of length at most `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confluence {
    Full,
    UpToLength(usize),
}

/// A rewriting system over a fixed generator list, interreduced, with the
/// confluence certificate produced by completion.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub generators: Vec<String>,
    pub rules: Vec<Rule>,
    pub confluence: Confluence,
    max_lhs_len: usize,
}

impl RewriteSystem {
    fn new(generators: Vec<String>, mut rules: Vec<Rule>, confluence: Confluence) -> Self {
        rules.sort_by(|a, b| a.lhs.deglex(&b.lhs).then_with(|| a.rhs.deglex(&b.rhs)));
        let max_lhs_len = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        RewriteSystem {
            generators,
            rules,
            confluence,
            max_lhs_len,
        }
    }

    /// True when normal forms of words of length `len` are certified
    /// canonical.
    pub fn certifies_length(&self, len: usize) -> bool {
        match self.confluence {
            Confluence::Full => true,
            Confluence::UpToLength(n) => len <= n,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Rewrites to an irreducible word. Applies the leftmost match, trying
    /// rules in canonical order; within the certified length range the
    /// strategy does not matter and the result is canonical.
    pub fn normal_form(&self, w: &Word) -> Word {
        let mut word = w.0.clone();
        if self.max_lhs_len == 0 {
            return Word(word);
        }
        let mut i = 0;
        'outer: while i < word.len() {
            for rule in &self.rules {
                let l = rule.lhs.len();
                if l == 0 || i + l > word.len() {
                    continue;
                }
                if word[i..i + l] == rule.lhs.0[..] {
                    word.splice(i..i + l, rule.rhs.0.iter().cloned());
                    i = i.saturating_sub(self.max_lhs_len - 1);
                    continue 'outer;
                }
            }
            i += 1;
        }
        Word(word)
    }

    /// True when no rule left-hand side occurs in `w`.
    pub fn is_normal(&self, w: &Word) -> bool {
        for rule in &self.rules {
            let l = rule.lhs.len();
            if l > w.len() {
                continue;
            }
            for i in 0..=w.len() - l {
                if w.0[i..i + l] == rule.lhs.0[..] {
                    return false;
                }
            }
        }
        true
    }

    /// Checks whether appending the final letter of `w` created a redex,
    /// assuming the prefix without it was already irreducible.
    fn tail_is_normal(&self, w: &[u32]) -> bool {
        for rule in &self.rules {
            let l = rule.lhs.len();
            if l == 0 || l > w.len() {
                continue;
            }
            if w[w.len() - l..] == rule.lhs.0[..] {
                return false;
            }
        }
        true
    }
}

/// Normal forms of every element up to a length bound, grouped by length.
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// `words[n]` lists the irreducible words of length `n` in deglex order.
    pub words: Vec<Vec<Word>>,
}

impl Enumeration {
    pub fn counts(&self) -> Vec<usize> {
        self.words.iter().map(|w| w.len()).collect()
    }

    pub fn total(&self) -> usize {
        self.words.iter().map(|w| w.len()).sum()
    }

    pub fn all_words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter().flatten()
    }
}

/// Enumerates all irreducible words of length at most `max_len` by prefix
/// search; irreducible words are prefix-closed, so the tree is exact.
pub fn enumerate_elements(rs: &RewriteSystem, max_len: usize) -> Enumeration {
    let gens = rs.generator_count() as u32;
    let mut words: Vec<Vec<Word>> = vec![Vec::new(); max_len + 1];
    words[0].push(Word::empty());
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for n in 1..=max_len {
        let mut next = Vec::new();
        for prefix in &frontier {
            for g in 0..gens {
                let mut w = prefix.clone();
                w.push(g);
                if rs.tail_is_normal(&w) {
                    words[n].push(Word(w.clone()));
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Enumeration { words }
}

/// Bounds for completion. `max_rules` caps the rule count, `max_rule_len`
/// caps the length of any rule left-hand side.
#[derive(Clone, Copy, Debug)]
pub struct CompletionBounds {
    pub max_rules: usize,
    pub max_rule_len: usize,
}

impl Default for CompletionBounds {
    fn default() -> Self {
        CompletionBounds {
            max_rules: 2000,
            max_rule_len: 12,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CompletionError {
    #[error("completion exceeded bounds ({limit}); unresolved pair: {left:?} = {right:?}")]
    Incomplete {
        limit: String,
        left: Word,
        right: Word,
        partial: Vec<Rule>,
    },
}

/// Pending equation, ordered so the heap yields the deglex-smallest pair
/// first; that keeps completion deterministic and finds short rules early.
#[derive(Clone, PartialEq, Eq)]
struct Pending {
    big: Word,
    small: Word,
}

impl Pending {
    fn new(a: Word, b: Word) -> Self {
        if a.deglex(&b) == Ordering::Less {
            Pending { big: b, small: a }
        } else {
            Pending { big: a, small: b }
        }
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap and we want the smallest first
        other
            .big
            .deglex(&self.big)
            .then_with(|| other.small.deglex(&self.small))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Knuth-Bendix completion under deglex.
///
/// An empty critical-pair queue certifies full confluence. Some
/// presentations have no finite confluent system under deglex; when such a
/// presentation is length-preserving, hitting a bound still yields a usable
/// result: equations are processed in deglex order, so the moment the
/// smallest outstanding equation lives at length `L`, every stratum below
/// `L` is finished for good (later rules are too long to touch shorter
/// words), and the system is returned with certificate `UpToLength(L-1)`.
/// Otherwise the bound produces `Incomplete` with the partial rules and the
/// offending equation.
pub fn complete(
    p: &Presentation,
    bounds: CompletionBounds,
) -> Result<RewriteSystem, CompletionError> {
    let homogeneous = p.is_homogeneous();
    let min_useful = p
        .relations
        .iter()
        .map(|(l, _)| l.len())
        .max()
        .unwrap_or(0);
    let mut rules: Vec<Rule> = Vec::new();
    let mut queue: BinaryHeap<Pending> = BinaryHeap::new();
    for (l, r) in &p.relations {
        queue.push(Pending::new(l.clone(), r.clone()));
    }
    let max_steps = bounds.max_rules.saturating_mul(64).max(100_000);
    let mut steps = 0usize;

    while let Some(eq) = queue.pop() {
        steps += 1;
        let sys = RewriteSystem::new(p.generators.clone(), rules.clone(), Confluence::Full);
        let a = sys.normal_form(&eq.big);
        let b = sys.normal_form(&eq.small);
        if a == b {
            continue;
        }
        let (lhs, rhs) = match a.deglex(&b) {
            Ordering::Greater => (a, b),
            Ordering::Less => (b, a),
            Ordering::Equal => unreachable!(),
        };
        let over_len = lhs.len() > bounds.max_rule_len;
        let over_count = rules.len() + 1 > bounds.max_rules;
        let over_steps = steps > max_steps;
        if over_len || over_count || over_steps {
            // all remaining equations live at eq.big's length or beyond
            let settled = eq.big.len().saturating_sub(1);
            if homogeneous && settled >= min_useful {
                return Ok(finish(p, rules, Confluence::UpToLength(settled)));
            }
            let limit = if over_len {
                format!("rule length {} > {}", lhs.len(), bounds.max_rule_len)
            } else if over_count {
                format!("rule count > {}", bounds.max_rules)
            } else {
                format!("step budget {max_steps} exhausted")
            };
            return Err(CompletionError::Incomplete {
                limit,
                left: lhs,
                right: rhs,
                partial: rules,
            });
        }
        let new_rule = Rule {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        };

        // drop rules whose lhs the new rule now reduces; requeue them as
        // equations so nothing is lost
        let mut kept = Vec::with_capacity(rules.len() + 1);
        for rule in rules.drain(..) {
            if contains_factor(&rule.lhs, &new_rule.lhs) {
                queue.push(Pending::new(rule.lhs, rule.rhs));
            } else {
                kept.push(rule);
            }
        }
        rules = kept;

        for rule in &rules {
            for pair in overlap_equations(&new_rule, rule) {
                queue.push(pair);
            }
            for pair in overlap_equations(rule, &new_rule) {
                queue.push(pair);
            }
        }
        for pair in overlap_equations(&new_rule, &new_rule) {
            queue.push(pair);
        }
        rules.push(new_rule);
    }
    Ok(finish(p, rules, Confluence::Full))
}

/// Normalizes right-hand sides against the final rule set. A left-hand side
/// can never divide its own (deglex-smaller) right-hand side, so this
/// terminates and keeps the congruence intact.
fn finish(p: &Presentation, rules: Vec<Rule>, confluence: Confluence) -> RewriteSystem {
    let sys = RewriteSystem::new(p.generators.clone(), rules.clone(), confluence);
    let rules: Vec<Rule> = rules
        .into_iter()
        .map(|r| Rule {
            rhs: sys.normal_form(&r.rhs),
            lhs: r.lhs,
        })
        .collect();
    RewriteSystem::new(p.generators.clone(), rules, confluence)
}

fn contains_factor(w: &Word, f: &Word) -> bool {
    if f.len() > w.len() {
        return false;
    }
    (0..=w.len() - f.len()).any(|i| w.0[i..i + f.len()] == f.0[..])
}

/// Critical pairs from proper suffix/prefix overlaps of two left-hand sides:
/// for each split `r1.lhs = s.t`, `r2.lhs = t.u` with `t` nonempty and both
/// `s`, `u` not both empty, the word `s.t.u` reduces two ways.
fn overlap_equations(r1: &Rule, r2: &Rule) -> Vec<Pending> {
    let l1 = &r1.lhs.0;
    let l2 = &r2.lhs.0;
    let mut out = Vec::new();
    let max_t = l1.len().min(l2.len());
    for t in 1..=max_t {
        if t == l1.len() && t == l2.len() {
            continue; // identical words, no proper overlap
        }
        if l1[l1.len() - t..] != l2[..t] {
            continue;
        }
        // overlap word: l1 . l2[t..]
        let mut via_r1 = r1.rhs.0.clone();
        via_r1.extend_from_slice(&l2[t..]);
        let mut via_r2 = l1[..l1.len() - t].to_vec();
        via_r2.extend_from_slice(&r2.rhs.0);
        out.push(Pending::new(Word(via_r1), Word(via_r2)));
    }
    out
}
