mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::groups::{
    parse_extension, ExtensionData, ExtensionViolation, FiniteQuotientTable, GroupElement,
};
use workbench_core::lattice::{solve_integer, IntMatrix, IntVector};

fn iv(v: &[i64]) -> IntVector {
    IntVector(v.iter().map(|&x| BigInt::from(x)).collect())
}

fn cyclic_table(n: usize) -> FiniteQuotientTable {
    FiniteQuotientTable {
        names: (0..n)
            .map(|i| if i == 0 { "e".into() } else { format!("f{i}") })
            .collect(),
        table: (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
        identity: 0,
    }
}

fn klein_four_table() -> FiniteQuotientTable {
    FiniteQuotientTable {
        names: vec!["e".into(), "f1".into(), "f2".into(), "f3".into()],
        table: vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ],
        identity: 0,
    }
}

fn extension(
    name: &str,
    rank: usize,
    quotient: FiniteQuotientTable,
    action: &[(usize, &[&[i64]])],
    cocycle: &[(usize, usize, &[i64])],
) -> ExtensionData {
    let mut e = ExtensionData::direct_product(name, rank, quotient);
    for &(f, rows) in action {
        e.action[f] = IntMatrix::from_rows_i64(rows);
    }
    for &(f, g, v) in cocycle {
        e.cocycle[f][g] = iv(v);
    }
    e
}

/// Z^2 extended by Z_2 with the sheared involution and an eigenvector
/// cocycle; no element of the nontrivial coset squares to the identity.
fn sheared_involution() -> ExtensionData {
    extension(
        "sheared",
        2,
        cyclic_table(2),
        &[(1, &[&[1, 0], &[-2, -1]])],
        &[(1, 1, &[1, -1])],
    )
}

/// The infinite dihedral group as Z extended by Z_2.
fn infinite_dihedral() -> ExtensionData {
    extension("dihedral", 1, cyclic_table(2), &[(1, &[&[-1]])], &[])
}

/// Z^2 extended by Z_2 swapping the coordinates, with cocycle (1,1).
fn coordinate_swap() -> ExtensionData {
    extension(
        "swap",
        2,
        cyclic_table(2),
        &[(1, &[&[0, 1], &[1, 0]])],
        &[(1, 1, &[1, 1])],
    )
}

fn ge(v: &[i64], coset: usize) -> GroupElement {
    GroupElement {
        vector: iv(v),
        coset,
    }
}

#[test]
fn quotient_tables_are_checked_for_the_group_axioms() {
    assert!(cyclic_table(1).validate().is_ok());
    assert!(cyclic_table(5).validate().is_ok());
    assert!(klein_four_table().validate().is_ok());

    let broken_identity = FiniteQuotientTable {
        names: vec!["e".into(), "f".into()],
        table: vec![vec![0, 0], vec![1, 1]],
        identity: 0,
    };
    match broken_identity.validate() {
        Err(ExtensionViolation::Quotient(m)) => assert!(m.contains("identity law")),
        other => panic!("expected identity-law failure, got {other:?}"),
    }

    // left-zero band on top of a valid identity row/column
    let non_associative = FiniteQuotientTable {
        names: vec!["e".into(), "a".into(), "b".into()],
        table: vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 1]],
        identity: 0,
    };
    match non_associative.validate() {
        Err(ExtensionViolation::Quotient(m)) => {
            assert!(m.contains("associativity") || m.contains("inverse"), "{m}")
        }
        other => panic!("expected a broken table, got {other:?}"),
    }

    let absorbing = FiniteQuotientTable {
        names: vec!["e".into(), "z".into()],
        table: vec![vec![0, 1], vec![1, 1]],
        identity: 0,
    };
    match absorbing.validate() {
        Err(ExtensionViolation::Quotient(m)) => assert!(m.contains("inverse"), "{m}"),
        other => panic!("expected missing inverse, got {other:?}"),
    }

    let duplicate = FiniteQuotientTable {
        names: vec!["e".into(), "e".into()],
        table: vec![vec![0, 1], vec![1, 0]],
        identity: 0,
    };
    assert!(matches!(
        duplicate.validate(),
        Err(ExtensionViolation::Quotient(_))
    ));
}

#[test]
fn validation_pinpoints_the_first_broken_invariant() {
    assert!(ExtensionData::direct_product("dp", 2, klein_four_table())
        .validate()
        .is_ok());
    assert!(sheared_involution().validate().is_ok());
    assert!(infinite_dihedral().validate().is_ok());
    assert!(coordinate_swap().validate().is_ok());

    let doubled = extension("bad", 1, cyclic_table(2), &[(1, &[&[2]])], &[]);
    assert_eq!(
        doubled.validate(),
        Err(ExtensionViolation::ActionNotUnimodular { f: "f1".into() })
    );

    let mut bad_identity = ExtensionData::direct_product("bad", 2, cyclic_table(2));
    bad_identity.action[0] = IntMatrix::from_rows_i64(&[&[1, 1], &[0, 1]]);
    assert_eq!(bad_identity.validate(), Err(ExtensionViolation::IdentityAction));

    // an involution assigned to f1 alone cannot be a homomorphism on Klein four
    let not_hom = extension(
        "bad",
        2,
        klein_four_table(),
        &[(1, &[&[0, 1], &[1, 0]])],
        &[],
    );
    assert_eq!(
        not_hom.validate(),
        Err(ExtensionViolation::ActionHomomorphism {
            f: "f1".into(),
            g: "f2".into(),
        })
    );

    let unnormalized = extension("bad", 1, cyclic_table(2), &[], &[(0, 1, &[1])]);
    assert_eq!(
        unnormalized.validate(),
        Err(ExtensionViolation::CocycleNormalization {
            f: "e".into(),
            g: "f1".into(),
        })
    );

    let broken_cocycle = extension("bad", 1, klein_four_table(), &[], &[(1, 1, &[1])]);
    assert_eq!(
        broken_cocycle.validate(),
        Err(ExtensionViolation::CocycleIdentity {
            f: "f1".into(),
            g: "f1".into(),
            h: "f2".into(),
        })
    );

    let mut ragged = ExtensionData::direct_product("bad", 2, cyclic_table(2));
    ragged.cocycle[1][1] = iv(&[1]);
    assert_eq!(
        ragged.validate(),
        Err(ExtensionViolation::CocycleShape {
            f: "f1".into(),
            g: "f1".into(),
            rank: 2,
        })
    );
}

#[test]
fn group_arithmetic_is_associative_and_inverses_cancel() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases = [
        sheared_involution(),
        infinite_dihedral(),
        coordinate_swap(),
        extension(
            "k4",
            2,
            klein_four_table(),
            &[
                (1, &[&[0, 1], &[1, 0]]),
                (2, &[&[-1, 0], &[0, -1]]),
                (3, &[&[0, -1], &[-1, 0]]),
            ],
            &[],
        ),
    ];
    for e in &cases {
        e.validate().unwrap();
        let id = e.identity_element();
        let random = |rng: &mut ChaCha8Rng| GroupElement {
            vector: IntVector(
                (0..e.rank)
                    .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                    .collect(),
            ),
            coset: rng.gen_range(0..e.quotient.order()),
        };
        for _ in 0..200 {
            let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
            assert_eq!(
                e.multiply(&e.multiply(&a, &b), &c),
                e.multiply(&a, &e.multiply(&b, &c))
            );
            let a_inv = e.inverse(&a);
            assert_eq!(e.multiply(&a, &a_inv), id);
            assert_eq!(e.multiply(&a_inv, &a), id);
            assert_eq!(e.multiply(&a, &id), a);
            assert_eq!(e.multiply(&id, &a), a);
        }
    }
}

#[test]
fn torsion_systems_match_brute_force_powers() {
    let cases = [
        sheared_involution(),
        coordinate_swap(),
        infinite_dihedral(),
        ExtensionData::direct_product("zxz2", 1, cyclic_table(2)),
        extension("shift", 1, cyclic_table(2), &[], &[(1, 1, &[1])]),
    ];
    for e in &cases {
        for f in 1..e.quotient.order() {
            let m = e.quotient.element_order(f);
            let sols = e.torsion_in_coset(f, m);
            for n in common::box_vectors(e.rank, 4) {
                let t = GroupElement {
                    vector: iv(&n),
                    coset: f,
                };
                let is_torsion = e.power(&t, m) == e.identity_element();
                let in_set = match &sols {
                    None => false,
                    Some(s) => {
                        let shifted = t.vector.sub(&s.particular);
                        if s.basis.is_empty() {
                            shifted.is_zero()
                        } else {
                            solve_integer(&IntMatrix::from_columns(&s.basis), &shifted)
                                .is_some()
                        }
                    }
                };
                assert_eq!(is_torsion, in_set, "{} coset {f} vector {n:?}", e.name);
            }
        }
    }
}

#[test]
fn periodic_conjugation_finite_elements_pinned() {
    // free abelian: nothing to find
    let free = ExtensionData::direct_product("z3", 3, cyclic_table(1));
    assert!(free.delta_plus_trivial().holds);

    // direct factor Z_2 gives the central involution (0, f1)
    let zxz2 = ExtensionData::direct_product("zxz2", 1, cyclic_table(2));
    let verdict = zxz2.delta_plus_trivial();
    assert!(!verdict.holds);
    let witness = verdict.witness.unwrap();
    assert_eq!(witness, ge(&[0], 1));

    // trivial action with even cocycle: (-1, f1) squares to the identity
    let even = extension("even", 1, cyclic_table(2), &[], &[(1, 1, &[2])]);
    let verdict = even.delta_plus_trivial();
    assert!(!verdict.holds);
    let witness = verdict.witness.unwrap();
    assert_eq!(witness, ge(&[-1], 1));
    assert_eq!(even.power(&witness, 2), even.identity_element());

    // trivial action with odd cocycle is just Z: 2n = -1 has no solution
    let shift = extension("shift", 1, cyclic_table(2), &[], &[(1, 1, &[1])]);
    assert!(shift.delta_plus_trivial().holds);

    // a genuinely moving action is never scanned
    assert!(sheared_involution().delta_plus_trivial().holds);
    assert!(infinite_dihedral().delta_plus_trivial().holds);
    assert!(coordinate_swap().delta_plus_trivial().holds);
}

#[test]
fn dihedral_subgroup_detection_pinned() {
    let dihedral = infinite_dihedral();
    let verdict = dihedral.dihedral_free();
    assert!(!verdict.holds);
    assert_eq!(verdict.witness.as_ref().unwrap(), &ge(&[0], 1));
    assert_eq!(verdict.axis.as_ref().unwrap(), &iv(&[1]));

    // the reflection witness must invert the axis
    let t = verdict.witness.unwrap();
    let a = GroupElement {
        vector: verdict.axis.unwrap(),
        coset: 0,
    };
    let conj = dihedral.multiply(&dihedral.multiply(&t, &a), &dihedral.inverse(&t));
    assert_eq!(conj.vector, a.vector.neg());
    assert_eq!(conj.coset, 0);

    let swap = coordinate_swap();
    let verdict = swap.dihedral_free();
    assert!(!verdict.holds);
    let t = verdict.witness.unwrap();
    assert_eq!(swap.power(&t, 2), swap.identity_element());
    let axis = verdict.axis.unwrap();
    assert!(!axis.is_zero());
    let a = GroupElement {
        vector: axis,
        coset: 0,
    };
    let conj = swap.multiply(&swap.multiply(&t, &a), &swap.inverse(&t));
    assert_eq!(conj.vector, a.vector.neg());

    // central involution does not invert anything
    assert!(ExtensionData::direct_product("zxz2", 1, cyclic_table(2))
        .dihedral_free()
        .holds);
    // no order-2 element exists in the sheared coset: 2 n1 = -1
    assert!(sheared_involution().dihedral_free().holds);
    // point symmetry of the plane inverts rank 2, not an axis
    let point = extension("pt", 2, cyclic_table(2), &[(1, &[&[-1, 0], &[0, -1]])], &[]);
    assert!(point.dihedral_free().holds);
    // free abelian
    assert!(ExtensionData::direct_product("z2", 2, cyclic_table(1))
        .dihedral_free()
        .holds);
}

#[test]
fn criteria_survive_unimodular_basis_changes() {
    let changes = [
        IntMatrix::from_rows_i64(&[&[1, 1], &[0, 1]]),
        IntMatrix::from_rows_i64(&[&[0, 1], &[-1, 0]]),
        IntMatrix::from_rows_i64(&[&[2, 1], &[1, 1]]),
        IntMatrix::from_rows_i64(&[&[1, 0], &[5, 1]]),
    ];
    let cases = [
        sheared_involution(),
        coordinate_swap(),
        extension("axis", 2, cyclic_table(2), &[(1, &[&[-1, 0], &[0, 1]])], &[]),
        ExtensionData::direct_product("dp", 2, klein_four_table()),
    ];
    for e in &cases {
        let delta = e.delta_plus_trivial().holds;
        let dihedral = e.dihedral_free().holds;
        for u in &changes {
            let moved = e.change_basis(u);
            moved.validate().unwrap();
            assert_eq!(moved.delta_plus_trivial().holds, delta, "{} under {u:?}", e.name);
            assert_eq!(moved.dihedral_free().holds, dihedral, "{} under {u:?}", e.name);
            if !dihedral {
                let verdict = moved.dihedral_free();
                let t = verdict.witness.unwrap();
                assert_eq!(moved.power(&t, 2), moved.identity_element());
                let a = GroupElement {
                    vector: verdict.axis.unwrap(),
                    coset: 0,
                };
                let conj = moved.multiply(&moved.multiply(&t, &a), &moved.inverse(&t));
                assert_eq!(conj.vector, a.vector.neg());
            }
        }
    }
}

#[test]
fn parses_the_extension_file_format() {
    let text = "\
# Z^2 extended by an involution
group sheared rank 2
quotient: e f
table: e*e=e e*f=f f*e=f f*f=e
action f: [[1,0],[-2,-1]]
cocycle f f: 1 -1
";
    let parsed = parse_extension(text).unwrap();
    assert_eq!(parsed.name, "sheared");
    assert_eq!(parsed.rank, 2);
    assert_eq!(parsed.quotient.names, vec!["e", "f"]);
    assert_eq!(parsed.quotient.identity, 0);
    assert_eq!(
        parsed.action[1],
        IntMatrix::from_rows_i64(&[&[1, 0], &[-2, -1]])
    );
    assert_eq!(parsed.action[0], IntMatrix::identity(2));
    assert_eq!(parsed.cocycle[1][1], iv(&[1, -1]));
    assert_eq!(parsed.cocycle[0][1], iv(&[0, 0]));
    parsed.validate().unwrap();
    // semantics match the hand-built extension up to the bookkeeping name
    let mut reference = sheared_involution();
    reference.name = "sheared".into();
    reference.quotient.names = vec!["e".into(), "f".into()];
    assert_eq!(parsed, reference);

    let missing_entry = "group g rank 1\nquotient: e f\ntable: e*e=e e*f=f f*e=f\naction f: [[1]]\n";
    let err = parse_extension(missing_entry).unwrap_err();
    assert!(err.message.contains("missing table entry f*f"), "{err}");

    let unknown_coset =
        "group g rank 1\nquotient: e f\ntable: e*e=e e*f=f f*e=f f*f=e\naction g: [[1]]\n";
    let err = parse_extension(unknown_coset).unwrap_err();
    assert!(err.message.contains("unknown coset `g`"), "{err}");

    let bad_matrix =
        "group g rank 1\nquotient: e f\ntable: e*e=e e*f=f f*e=f f*f=e\naction f: [1]\n";
    assert!(parse_extension(bad_matrix).is_err());

    let bad_cocycle_len =
        "group g rank 2\nquotient: e f\ntable: e*e=e e*f=f f*e=f f*f=e\naction f: [[1,0],[0,1]]\ncocycle f f: 1\n";
    let err = parse_extension(bad_cocycle_len).unwrap_err();
    assert!(err.message.contains("expected 2"), "{err}");

    let no_action =
        "group g rank 1\nquotient: e f\ntable: e*e=e e*f=f f*e=f f*f=e\n";
    let err = parse_extension(no_action).unwrap_err();
    assert!(err.message.contains("missing action for `f`"), "{err}");

    let stray = "group g rank 1\nquotient: e\ntable: e*e=e\nwhatever\n";
    let err = parse_extension(stray).unwrap_err();
    assert_eq!(err.line, 4);

    let headerless = "quotient: e\ntable: e*e=e\n";
    assert!(parse_extension(headerless).is_err());
}
