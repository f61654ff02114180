//! Property tests for words and the presentation grammar.

use fpg_core::{Letter, Presentation, Word};
use proptest::prelude::*;

fn arb_word(d: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..d, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=4).prop_flat_map(|d| {
        prop::collection::vec(arb_word(d, 10), 0..=5).prop_map(move |rels| {
            let names: Vec<String> = (0..d).map(|i| format!("g{i}")).collect();
            Presentation::new(names, rels).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn free_reduce_idempotent_and_nonincreasing(w in arb_word(4, 24)) {
        let r = w.free_reduce();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(r.is_reduced());
    }

    #[test]
    fn word_times_inverse_reduces_to_identity(w in arb_word(4, 24)) {
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        prop_assert!(w.inverse().concat(&w).free_reduce().is_empty());
    }

    #[test]
    fn exponent_vector_invariant_under_reduction(w in arb_word(4, 24)) {
        prop_assert_eq!(w.exponent_vector(4), w.free_reduce().exponent_vector(4));
    }

    #[test]
    fn commutators_abelianize_to_zero(u in arb_word(3, 12), v in arb_word(3, 12)) {
        let c = Word::commutator(&u, &v);
        prop_assert!(c.exponent_vector(3).iter().all(|&e| e == 0));
    }

    #[test]
    fn cyclic_reduce_conjugacy(w in arb_word(3, 16)) {
        let c = w.free_reduce().cyclic_reduce();
        prop_assert!(c.is_cyclically_reduced());
        // cyclic reduction strips a conjugating prefix: w = u c u^-1
        let r = w.free_reduce();
        let strip = (r.len() - c.len()) / 2;
        let u = Word::from_letters(r.letters()[..strip].to_vec());
        let back = u.concat(&c).concat(&u.inverse()).free_reduce();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn parse_format_round_trip(p in arb_presentation()) {
        let text = p.format();
        let q = Presentation::parse(&text).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn format_word_round_trip(w in arb_word(3, 16)) {
        let p = Presentation::free(vec!["g0", "g1", "g2"]).unwrap();
        let w = w.free_reduce();
        let text = p.format_word(&w);
        let back = p.parse_word(&text).unwrap();
        prop_assert_eq!(back, w);
    }
}
