mod common;

use workbench_core::presentations::*;

fn w(letters: &[u32]) -> Word {
    Word(letters.to_vec())
}

const MAIN_EXAMPLE: &str = "\
monoid main-example
generators: x1 x2 x3 x4

relations:
  x1 x4 = x2 x3   # defining relations, all length-preserving
  x1 x3 = x2 x4
  x3 x1 = x4 x2
  x3 x2 = x4 x1
  x1 x2 = x3 x4
  x2 x1 = x4 x3
";

#[test]
fn parses_generators_relations_comments() {
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    assert_eq!(p.name, "main-example");
    assert_eq!(p.generators, vec!["x1", "x2", "x3", "x4"]);
    assert_eq!(p.relations.len(), 6);
    assert_eq!(p.relations[0], (w(&[0, 3]), w(&[1, 2])));
    assert_eq!(p.relations[5], (w(&[1, 0]), w(&[3, 2])));
    assert!(p.is_quadratic_monomial());
}

#[test]
fn parses_power_sugar_and_chained_equalities() {
    let p = parse_presentation(
        "monoid t\ngenerators: x y z\nrelations:\n  x^2 = y^2 = z^2\n  z x = y z\n",
    )
    .unwrap();
    assert_eq!(p.relations.len(), 3);
    assert_eq!(p.relations[0], (w(&[0, 0]), w(&[1, 1])));
    assert_eq!(p.relations[1], (w(&[1, 1]), w(&[2, 2])));
    assert_eq!(p.relations[2], (w(&[2, 0]), w(&[1, 2])));
    let p2 = parse_presentation("generators: a\nrelations:\n  a^3 = a\n").unwrap();
    assert_eq!(p2.relations[0], (w(&[0, 0, 0]), w(&[0])));
}

#[test]
fn parse_errors_carry_positions() {
    match parse_presentation("generators: x\nrelations:\n  x y = x x\n") {
        Err(ParseError::UndeclaredSymbol { line, name, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(name, "y");
        }
        other => panic!("expected undeclared symbol, got {other:?}"),
    }
    match parse_presentation("generators: x y x\n") {
        Err(ParseError::DuplicateGenerator { line, name }) => {
            assert_eq!(line, 1);
            assert_eq!(name, "x");
        }
        other => panic!("expected duplicate generator, got {other:?}"),
    }
    match parse_presentation("generators: x\nrelations:\n  x x =\n") {
        Err(ParseError::EmptyRelationSide { line }) => assert_eq!(line, 3),
        other => panic!("expected empty side, got {other:?}"),
    }
    assert!(matches!(
        parse_presentation("generators: x\nrelations:\n  x^0 = x\n"),
        Err(ParseError::Syntax { line: 3, .. })
    ));
    assert!(matches!(
        parse_presentation("generators: x\nrelations:\n  x^a = x\n"),
        Err(ParseError::Syntax { .. })
    ));
    assert!(matches!(
        parse_presentation("hello world\n"),
        Err(ParseError::Syntax { line: 1, .. })
    ));
    assert!(matches!(
        parse_presentation("generators: x\nrelations:\n  x x\n"),
        Err(ParseError::Syntax { .. })
    ));
}

#[test]
fn deglex_orders_by_length_then_position() {
    assert!(w(&[1, 1]).deglex(&w(&[0, 0, 0])).is_lt());
    assert!(w(&[0, 2]).deglex(&w(&[1, 0])).is_lt());
    assert!(w(&[2, 0]).deglex(&w(&[2, 0])).is_eq());
    let mut v = vec![w(&[1]), w(&[0, 0]), w(&[0]), w(&[0, 1])];
    v.sort();
    assert_eq!(v, vec![w(&[0]), w(&[1]), w(&[0, 0]), w(&[0, 1])]);
}

#[test]
fn quadratic_monomial_rejects_repeats_and_long_sides() {
    let p = parse_presentation("generators: x y z\nrelations:\n  x x = y y\n  x x = z z\n")
        .unwrap();
    assert!(!p.is_quadratic_monomial(), "side `x x` occurs twice");
    let q = parse_presentation("generators: x y\nrelations:\n  x y x = y y y\n").unwrap();
    assert!(!q.is_quadratic_monomial());
}

#[test]
fn free_monoid_has_no_rules() {
    let p = parse_presentation("monoid free\ngenerators: a b c\nrelations:\n").unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);
    assert!(rs.rules.is_empty());
    let e = enumerate_elements(&rs, 3);
    assert_eq!(e.counts(), vec![1, 3, 9, 27]);
}

#[test]
fn commutative_monoid_counts_and_oracle() {
    let p = parse_presentation(
        "generators: a b c\nrelations:\n  b a = a b\n  c a = a c\n  c b = b c\n",
    )
    .unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);
    assert_eq!(rs.rules.len(), 3);
    let e = enumerate_elements(&rs, 5);
    // monomials in 3 commuting variables
    assert_eq!(e.counts(), vec![1, 3, 6, 10, 15, 21]);

    let oracle = common::thue_classes(3, &p.relations.iter().map(|(l, r)| (l.0.clone(), r.0.clone())).collect::<Vec<_>>(), 5);
    check_against_classes(&rs, &oracle, 3, 5);
}

#[test]
fn non_homogeneous_completion() {
    let p = parse_presentation("generators: x\nrelations:\n  x^2 = x\n").unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    assert_eq!(rs.rules.len(), 1);
    let e = enumerate_elements(&rs, 4);
    assert_eq!(e.counts(), vec![1, 1, 0, 0, 0]);
    assert_eq!(rs.normal_form(&w(&[0, 0, 0])), w(&[0]));
}

/// Every word up to `max_len` must normalize to the deglex-least member of
/// its congruence class, and the per-length counts of irreducible words must
/// match the number of classes whose least member has that length.
fn check_against_classes(
    rs: &RewriteSystem,
    oracle: &common::ThueClasses,
    generators: usize,
    max_len: usize,
) {
    let mut stack: Vec<Vec<u32>> = vec![vec![]];
    while let Some(word) = stack.pop() {
        let nf = rs.normal_form(&Word(word.clone()));
        assert_eq!(
            nf.0,
            oracle.least(&word),
            "normal form mismatch for {word:?}"
        );
        if word.len() < max_len {
            for g in 0..generators as u32 {
                let mut v = word.clone();
                v.push(g);
                stack.push(v);
            }
        }
    }
    let e = enumerate_elements(rs, max_len);
    for n in 0..=max_len {
        assert_eq!(
            e.counts()[n],
            oracle.class_count_by_length(n),
            "count mismatch at length {n}"
        );
    }
}

#[test]
fn main_example_completes_with_expected_rules() {
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    // the canonical deglex system here is infinite (periodic rule families
    // over growing runs of the first generator), so completion certifies a
    // truncation instead of full confluence
    assert_eq!(rs.confluence, Confluence::UpToLength(12));

    let quadratic: Vec<(Vec<u32>, Vec<u32>)> = rs
        .rules
        .iter()
        .filter(|r| r.lhs.len() == 2)
        .map(|r| (r.lhs.0.clone(), r.rhs.0.clone()))
        .collect();
    let expected: Vec<(Vec<u32>, Vec<u32>)> = vec![
        (vec![1, 2], vec![0, 3]),
        (vec![1, 3], vec![0, 2]),
        (vec![2, 3], vec![0, 1]),
        (vec![3, 0], vec![2, 1]),
        (vec![3, 1], vec![2, 0]),
        (vec![3, 2], vec![1, 0]),
    ];
    assert_eq!(quadratic, expected);

    let cubic: Vec<(Vec<u32>, Vec<u32>)> = rs
        .rules
        .iter()
        .filter(|r| r.lhs.len() == 3)
        .map(|r| (r.lhs.0.clone(), r.rhs.0.clone()))
        .collect();
    let expected_cubic: Vec<(Vec<u32>, Vec<u32>)> = vec![
        (vec![1, 0, 1], vec![0, 3, 3]),
        (vec![1, 1, 0], vec![0, 2, 2]),
        (vec![2, 1, 0], vec![0, 0, 3]),
        (vec![2, 1, 1], vec![1, 0, 3]),
        (vec![2, 2, 0], vec![0, 1, 1]),
        (vec![2, 2, 1], vec![0, 1, 0]),
    ];
    assert_eq!(cubic, expected_cubic);

    // the rule families repeat with period two in the length
    let mut histogram = vec![0usize; 13];
    for r in &rs.rules {
        histogram[r.lhs.len()] += 1;
    }
    assert_eq!(histogram, vec![0, 0, 6, 6, 6, 10, 6, 10, 6, 10, 6, 10, 6]);

    let e = enumerate_elements(&rs, 3);
    assert_eq!(e.counts(), vec![1, 4, 10, 20]);

    let len3: Vec<Vec<u32>> = e.words[3].iter().map(|w| w.0.clone()).collect();
    let mut expected3: Vec<Vec<u32>> = [
        // displayed representatives
        [1, 1, 2], [1, 1, 3], [1, 1, 4], [1, 3, 3], [2, 1, 3], [2, 1, 4],
        [1, 2, 2], [3, 1, 2], [1, 2, 1], [2, 1, 1], [3, 1, 1], [1, 4, 4],
        [1, 3, 1], [1, 3, 2], [3, 1, 3], [3, 1, 4],
        // one-element classes
        [1, 1, 1], [2, 2, 2], [3, 3, 3], [4, 4, 4],
    ]
    .iter()
    .map(|d| d.iter().map(|x| x - 1).collect())
    .collect();
    expected3.sort_by(|a, b| a.cmp(b));
    assert_eq!(len3, expected3);
}

#[test]
fn main_example_matches_congruence_closure() {
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    let rels: Vec<(Vec<u32>, Vec<u32>)> = p
        .relations
        .iter()
        .map(|(l, r)| (l.0.clone(), r.0.clone()))
        .collect();
    let oracle = common::thue_classes(4, &rels, 6);
    check_against_classes(&rs, &oracle, 4, 6);

    // the pure powers sit in one-element classes
    for g in 0..4u32 {
        let cube = vec![g, g, g];
        assert_eq!(oracle.classes[oracle.class_of[&cube]].len(), 1);
    }
}

#[test]
fn two_generator_square_relation() {
    let p = parse_presentation("generators: x y\nrelations:\n  x^2 = y^2\n").unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);
    let got: Vec<(Vec<u32>, Vec<u32>)> = rs
        .rules
        .iter()
        .map(|r| (r.lhs.0.clone(), r.rhs.0.clone()))
        .collect();
    assert_eq!(
        got,
        vec![
            (vec![1, 1], vec![0, 0]),
            (vec![1, 0, 0], vec![0, 0, 1]),
        ]
    );
    let rels = vec![(vec![0, 0], vec![1, 1])];
    let oracle = common::thue_classes(2, &rels, 7);
    check_against_classes(&rs, &oracle, 2, 7);
}

#[test]
fn three_generator_square_relations() {
    let p = parse_presentation(
        "generators: x y z\nrelations:\n  x^2 = y^2 = z^2\n  z x = y z\n  z y = x z\n",
    )
    .unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);
    let e = enumerate_elements(&rs, 4);
    assert_eq!(e.counts(), vec![1, 3, 5, 7, 9]);
    let rels: Vec<(Vec<u32>, Vec<u32>)> = p
        .relations
        .iter()
        .map(|(l, r)| (l.0.clone(), r.0.clone()))
        .collect();
    let oracle = common::thue_classes(3, &rels, 6);
    check_against_classes(&rs, &oracle, 3, 6);
}

#[test]
fn bounds_produce_incomplete_with_partial_rules() {
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    // mid-stratum interruption: nothing below the relation length settles
    match complete(
        &p,
        CompletionBounds {
            max_rules: 3,
            max_rule_len: 12,
        },
    ) {
        Err(CompletionError::Incomplete { partial, limit, .. }) => {
            assert_eq!(partial.len(), 3);
            assert!(limit.contains("count"));
        }
        other => panic!("expected incomplete, got {other:?}"),
    }
    // non-homogeneous presentations get no truncation certificate
    let q = parse_presentation("generators: a\nrelations:\n  a^3 = a\n").unwrap();
    match complete(
        &q,
        CompletionBounds {
            max_rules: 500,
            max_rule_len: 2,
        },
    ) {
        Err(CompletionError::Incomplete { left, limit, .. }) => {
            assert_eq!(left, w(&[0, 0, 0]));
            assert!(limit.contains("length"));
        }
        other => panic!("expected incomplete, got {other:?}"),
    }
}

#[test]
fn truncation_certificate_covers_exactly_the_settled_strata() {
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    let rs = complete(
        &p,
        CompletionBounds {
            max_rules: 500,
            max_rule_len: 2,
        },
    )
    .unwrap();
    assert_eq!(rs.confluence, Confluence::UpToLength(2));
    assert!(rs.certifies_length(2));
    assert!(!rs.certifies_length(3));
    assert_eq!(rs.rules.len(), 6);
    let rels: Vec<(Vec<u32>, Vec<u32>)> = p
        .relations
        .iter()
        .map(|(l, r)| (l.0.clone(), r.0.clone()))
        .collect();
    let oracle = common::thue_classes(4, &rels, 2);
    check_against_classes(&rs, &oracle, 4, 2);
}

#[test]
fn enumeration_is_prefix_closed_and_consistent() {
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    let e = enumerate_elements(&rs, 4);
    let all: std::collections::HashSet<Vec<u32>> =
        e.all_words().map(|w| w.0.clone()).collect();
    for word in e.all_words() {
        assert!(rs.is_normal(word));
        if !word.0.is_empty() {
            let prefix = word.0[..word.0.len() - 1].to_vec();
            assert!(all.contains(&prefix), "prefix of {word:?} missing");
        }
    }
    // exhaustive complement check at length 3: the other words reduce
    for a in 0..4u32 {
        for b in 0..4u32 {
            for c in 0..4u32 {
                let word = vec![a, b, c];
                assert_eq!(all.contains(&word), rs.is_normal(&Word(word.clone())));
            }
        }
    }
}

#[test]
fn normalization_is_idempotent_on_random_words() {
    use rand::{Rng, SeedableRng};
    let p = parse_presentation(MAIN_EXAMPLE).unwrap();
    let rs = complete(&p, CompletionBounds::default()).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let len = rng.gen_range(0..12);
        let word = Word((0..len).map(|_| rng.gen_range(0..4)).collect());
        let nf = rs.normal_form(&word);
        assert_eq!(rs.normal_form(&nf), nf);
        assert!(rs.is_normal(&nf));
        assert!(nf.deglex(&word).is_le());
    }
}
