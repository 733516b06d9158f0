use std::path::PathBuf;

use workbench_core::affine::Normality;
use workbench_core::bundle::{load_bundle, resolve_bundle_dir, BundleError};
use workbench_core::crossed::{group_extension_of, theorem33_report};
use workbench_core::lattice::IntVector;
use workbench_core::presentations::{enumerate_elements, CompletionBounds, Confluence};

fn bundle_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../bundles/{name}"))
}

fn iv(entries: &[i64]) -> IntVector {
    IntVector::from_i64(entries)
}

#[test]
fn all_bundled_directories_load() {
    for name in [
        "example4-main",
        "example2-abelian",
        "itype-2gen",
        "itype-3gen",
        "nonprime-quotient",
    ] {
        let b = load_bundle(bundle_dir(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(b.name, name);
        assert_eq!(b.base_words.len(), b.base.generators.len());
        assert!(!b.transversal.is_empty());
        assert!(b.transversal[0].is_empty(), "{name}: first row must be 1");
    }
}

#[test]
fn missing_directory_is_reported_not_guessed() {
    match resolve_bundle_dir("no-such-bundle-anywhere") {
        Err(BundleError::NotFound(_)) => {}
        other => panic!("expected NotFound, got {other:?}"),
    }
    // a direct path wins without consulting the search roots
    let direct = bundle_dir("itype-2gen");
    assert_eq!(
        resolve_bundle_dir(direct.to_str().unwrap()).unwrap(),
        direct
    );
}

#[test]
fn two_generator_bundle_has_linear_growth_and_order_two_quotient() {
    let b = load_bundle(bundle_dir("itype-2gen")).unwrap();
    let rs = b.complete(CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);

    let counts = enumerate_elements(&rs, 6).counts().to_vec();
    assert_eq!(counts, vec![1, 2, 3, 4, 5, 6, 7]);

    let cs = b.crossed_system(&rs, 6).unwrap();
    assert_eq!(cs.components(), 3);
    assert_eq!(cs.component_classes, vec![0, 1, 1]);

    let ext = group_extension_of(&cs).unwrap();
    assert_eq!(ext.data.quotient.order(), 2);
    assert_eq!(ext.data.quotient.names, vec!["1", "x"]);
    assert!(ext.data.delta_plus_trivial().holds);
    assert!(ext.data.dihedral_free().holds);

    let report = theorem33_report(&cs);
    assert!(report.overall.is_verified(), "{:?}", report);
    assert_eq!(report.orbit_count, Some(1));
    assert_eq!(report.base_prime_count, Some(2));
}

#[test]
fn three_generator_bundle_is_verified_end_to_end() {
    let b = load_bundle(bundle_dir("itype-3gen")).unwrap();
    let rs = b.complete(CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);

    let counts = enumerate_elements(&rs, 6).counts().to_vec();
    assert_eq!(counts, vec![1, 3, 5, 7, 9, 11, 13]);

    let cs = b.crossed_system(&rs, 6).unwrap();
    assert_eq!(cs.components(), 4);
    assert_eq!(cs.component_classes, vec![0, 1, 1, 1]);

    let ext = group_extension_of(&cs).unwrap();
    assert_eq!(ext.data.quotient.order(), 2);
    assert_eq!(ext.data.quotient.names, vec!["1", "x"]);
    assert!(ext.data.delta_plus_trivial().holds);
    assert!(ext.data.dihedral_free().holds);

    let report = theorem33_report(&cs);
    assert!(report.overall.is_verified(), "{:?}", report);
    assert_eq!(report.orbit_count, Some(1));
    assert_eq!(report.base_prime_count, Some(2));
}

#[test]
fn abelian_bundle_reduces_to_its_base() {
    let b = load_bundle(bundle_dir("example2-abelian")).unwrap();
    let rs = b.complete(CompletionBounds::default()).unwrap();
    assert_eq!(rs.confluence, Confluence::Full);

    // 21 degree-two monomials collapse by two identifications, 56 by twelve
    let counts = enumerate_elements(&rs, 3).counts().to_vec();
    assert_eq!(counts, vec![1, 6, 19, 44]);

    let cs = b.crossed_system(&rs, 4).unwrap();
    assert_eq!(cs.components(), 1);
    assert!(matches!(cs.base.is_maximal_order(), Normality::Normal));
    assert_eq!(cs.base.dim(), 4);
}

#[test]
fn torsion_bundle_refutes_the_torsion_free_check() {
    let b = load_bundle(bundle_dir("nonprime-quotient")).unwrap();
    let rs = b.complete(CompletionBounds::default()).unwrap();
    let cs = b.crossed_system(&rs, 6).unwrap();
    let ext = group_extension_of(&cs).unwrap();
    assert_eq!(ext.data.quotient.order(), 4);

    let verdict = ext.data.delta_plus_trivial();
    assert!(!verdict.holds);
    let witness = verdict.witness.unwrap();
    assert_eq!(witness.coset, 3);
    assert_eq!(witness.vector, iv(&[-1]));

    assert!(ext.data.dihedral_free().holds);
    let report = theorem33_report(&cs);
    assert!(report.delta_plus.is_refuted());
    assert!(report.overall.is_refuted());
}

#[test]
fn main_bundle_carries_rep_and_expected_data() {
    let b = load_bundle(bundle_dir("example4-main")).unwrap();
    let rep = b.rep.as_ref().expect("monomial matrices are bundled");
    assert_eq!(rep.len(), 4);
    let rs = b.complete(CompletionBounds::default()).unwrap();
    let cs = b.crossed_system(&rs, 6).unwrap();
    assert_eq!(cs.components(), 9);
    assert_eq!(cs.component_classes, vec![0, 1, 2, 2, 1, 3, 3, 3, 3]);
}
