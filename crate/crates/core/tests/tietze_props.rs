//! Simplification properties: abelianization invariance, enumeration
//! invariance on finite cases, protection, determinism.

mod support;

use fpg_core::coset::{enumerate, EnumerationParams};
use fpg_core::{abelian_invariants, simplify, Presentation, SimplifyParams, SubgroupSpec};
use support::{random_presentation, XorShift};

#[test]
fn abelianization_invariance_randomized() {
    let mut rng = XorShift::new(0x7E71);
    for _ in 0..60 {
        let p = random_presentation(&mut rng);
        let (q, tr) = simplify(&p, &SimplifyParams::default());
        assert_eq!(
            abelian_invariants(&p),
            abelian_invariants(&q),
            "input {p}, output {q}"
        );
        assert_eq!(tr.replay(&p), q);
    }
}

#[test]
fn enumeration_invariance_on_finite_cases() {
    // groups of order <= 200: simplification cannot change the order
    let cases = [
        "< a | a^12 >",
        "< a, b | a^2, b^3, (a*b)^2 >",
        "< a, b | a^4, b^2, (a*b)^2 >",
        "< a, b | a^2, b^3, (a*b)^4 >",
        "< a, b | a^5, b^4, b^-1*a*b*a^-2 >",
        "< a, b | a^6, b^6, a*b^2 = b*a^2, [a,b] >",
        "< a, b, c | a^2, b^2, c^2, (a*b)^3, (b*c)^3, (a*c)^2 >",
        "< a, b | a^8, b^2, b*a*b*a^3 >",
    ];
    let params = EnumerationParams::with_max_cosets(40_000);
    for src in cases {
        let p = Presentation::parse(src).unwrap();
        let before = enumerate(&p, &SubgroupSpec::trivial(), &params)
            .unwrap()
            .index()
            .expect("finite case");
        assert!(before <= 200, "{src} has order {before}");
        let (q, _) = simplify(&p, &SimplifyParams::default());
        let after = if q.generator_count() == 0 {
            1
        } else {
            enumerate(&q, &SubgroupSpec::trivial(), &params)
                .unwrap()
                .index()
                .expect("finite")
        };
        assert_eq!(before, after, "{src}");
    }
}

#[test]
fn protection_and_determinism() {
    let mut rng = XorShift::new(0xD00F);
    for _ in 0..30 {
        let p = random_presentation(&mut rng);
        let d = p.generator_count();
        let protected = rng.below(d as u64) as usize;
        let params = SimplifyParams::protecting([protected]);
        let (q1, t1) = simplify(&p, &params);
        let (q2, t2) = simplify(&p, &params);
        assert_eq!(q1, q2);
        assert_eq!(t1.eliminations(), t2.eliminations());
        let name = p.generators()[protected].name.clone();
        assert!(
            q1.generator_named(&name).is_some(),
            "protected generator kept"
        );
    }
}

#[test]
fn resolve_supported_on_survivors() {
    let mut rng = XorShift::new(0xA11CE);
    for _ in 0..30 {
        let p = random_presentation(&mut rng);
        let (_, tr) = simplify(&p, &SimplifyParams::default());
        for (g, _) in tr.eliminations() {
            let w = tr.resolve(*g).unwrap();
            for l in w.letters() {
                assert!(tr.survivors().contains(&l.gen));
            }
        }
    }
}
