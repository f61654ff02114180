//! Workflow properties: level consistency of derived-series reports, the
//! preimage index law, and scan monotonicity.

mod support;

use fpg_core::coset::{enumerate, EnumerationParams};
use fpg_core::perm::{closure, word_to_perm};
use fpg_core::{
    derived_series, preimage_presentation, quotient_scan, simplify, Limits, Presentation,
    ScanOutcome, SimplifyParams, SubgroupSpec,
};
use num_bigint::BigInt;

#[test]
fn level_consistency() {
    // the order of each level's abelianization equals the index of the
    // table computed for that level
    for src in [
        "< a | a^5 >",
        "< a, b | a^6, b^6, a*b^2 = b*a^2 >",
        "< a, b | a^4, b^2, (a*b)^2 >",
    ] {
        let p = Presentation::parse(src).unwrap();
        let report = derived_series(&p, &Limits::default());
        for lvl in &report.levels {
            if let Some(index) = lvl.next_index {
                assert_eq!(lvl.invariants.order(), Some(BigInt::from(index)), "{src}");
            }
        }
    }
}

#[test]
fn preimage_index_law() {
    // index of the preimage = index of the subgroup in the quotient,
    // checked against the quotient's own permutation representation
    let p = Presentation::parse("< a, b | a^2, b^3 >").unwrap(); // C2 * C3
    let extras = vec![p.parse_word("(a*b)^2").unwrap()]; // quotient S3... order 6
    let sub_words = vec![p.parse_word("b").unwrap()];
    let limits = Limits::default();
    let r = preimage_presentation(&p, &extras, &sub_words, &limits).unwrap();

    let quotient = p.with_extra_relators(&extras).unwrap();
    let qt = enumerate(
        &quotient,
        &SubgroupSpec::trivial(),
        &EnumerationParams::default(),
    )
    .unwrap()
    .complete()
    .unwrap();
    let perms = qt.permutation_rep().unwrap();
    let sub_perm = word_to_perm(&sub_words[0], &perms);
    let sub_order = closure(&[sub_perm], 1000).unwrap().len();
    assert_eq!(r.index, qt.index() / sub_order);
}

#[test]
fn preimage_of_whole_finite_group_presents_trivial_subgroup() {
    // no extras, trivial subgroup: the preimage is the trivial subgroup of
    // a finite group, index = order, and its presentation simplifies to
    // nothing
    let p = Presentation::parse("< a, b | a^2, b^3, (a*b)^2 >").unwrap();
    let r = preimage_presentation(&p, &[], &[], &Limits::default()).unwrap();
    assert_eq!(r.index, 6);
    let (q, _) = simplify(&r.subgroup.presentation, &SimplifyParams::default());
    assert_eq!(q.generator_count(), 0);
    assert!(q.relators().is_empty());
}

#[test]
fn scan_monotonicity_spot_check() {
    // adding a relator never increases the order when both enumerations
    // complete
    let p = Presentation::parse("< a, b | a^2, b^3 >").unwrap();
    let limits = Limits::with_max_cosets(20_000);
    let ab = p.parse_word("a*b").unwrap();
    let base = quotient_scan(&p, std::slice::from_ref(&ab), 4..=4, &limits);
    let ScanOutcome::FiniteQuotient(base_order) = base.entries[0].outcome else {
        panic!("(ab)^4 quotient of C2*C3 is finite");
    };
    let with_more = p.with_extra_relators(&[ab.pow(4)]).unwrap();
    let comm = p.parse_word("[a,b]").unwrap();
    let refined = quotient_scan(&with_more, &[comm], 2..=3, &limits);
    for entry in &refined.entries {
        match entry.outcome {
            ScanOutcome::Trivial => {}
            ScanOutcome::FiniteQuotient(n) => assert!(n <= base_order),
            ScanOutcome::Overflow => panic!("small quotients must complete"),
        }
    }
}

#[test]
fn default_scan_candidates_cover_products_and_commutators() {
    let p = Presentation::parse("< a, b | a^2, b^3 >").unwrap();
    let report = quotient_scan(&p, &[], 2..=2, &Limits::with_max_cosets(20_000));
    // d=2: one product and one commutator candidate
    assert_eq!(report.entries.len(), 2);
}
