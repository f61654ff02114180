//! Smith form properties: the divisor chain, the minor-gcd oracle,
//! CRT consistency of modular invariants, and unimodular-move invariance.

mod support;

use fpg_core::abelian::{
    invariants_from_matrix, invariants_mod, smith_normal_form, RelationMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use support::{minor_gcd, random_matrix, XorShift};

#[test]
fn divisor_chain_property() {
    let mut rng = XorShift::new(0xCAFE);
    for _ in 0..200 {
        let m = random_matrix(&mut rng, 6, 9);
        let s = smith_normal_form(&m);
        for w in s.chain.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "chain not dividing: {:?}",
                s.chain
            );
        }
        assert!(s.chain.iter().all(|d| d.is_positive()));
    }
}

#[test]
fn minor_gcd_oracle() {
    let mut rng = XorShift::new(0x5117);
    for _ in 0..120 {
        let m = random_matrix(&mut rng, 5, 9);
        let s = smith_normal_form(&m);
        let mut product = BigInt::one();
        for (k, d) in s.chain.iter().enumerate() {
            product *= d;
            let want = minor_gcd(&m, k + 1);
            assert_eq!(product, want, "k={} chain={:?}", k + 1, s.chain);
        }
        // beyond the rank every minor vanishes
        if s.rank < m.rows().min(m.cols()) {
            assert!(minor_gcd(&m, s.rank + 1).is_zero());
        }
    }
}

#[test]
fn invariants_invariant_under_unimodular_moves() {
    let mut rng = XorShift::new(0xF1FE);
    for _ in 0..60 {
        let m = random_matrix(&mut rng, 5, 6);
        let baseline = invariants_from_matrix(&m);
        let mut work = m.clone();
        for _ in 0..12 {
            let rows = work.rows();
            let cols = work.cols();
            match rng.below(4) {
                0 => {
                    // swap two rows
                    if rows >= 2 {
                        let a = rng.below(rows as u64) as usize;
                        let b = rng.below(rows as u64) as usize;
                        for c in 0..cols {
                            let (x, y) = (work.get(a, c).clone(), work.get(b, c).clone());
                            work.set(a, c, y);
                            work.set(b, c, x);
                        }
                    }
                }
                1 => {
                    // negate a row
                    let a = rng.below(rows as u64) as usize;
                    for c in 0..cols {
                        let v = -work.get(a, c).clone();
                        work.set(a, c, v);
                    }
                }
                2 => {
                    // add one row to another
                    if rows >= 2 {
                        let a = rng.below(rows as u64) as usize;
                        let mut b = rng.below(rows as u64) as usize;
                        if a == b {
                            b = (b + 1) % rows;
                        }
                        for c in 0..cols {
                            let v = work.get(a, c) + work.get(b, c);
                            work.set(a, c, v);
                        }
                    }
                }
                _ => {
                    // swap two columns
                    if cols >= 2 {
                        let a = rng.below(cols as u64) as usize;
                        let b = rng.below(cols as u64) as usize;
                        for r in 0..rows {
                            let (x, y) = (work.get(r, a).clone(), work.get(r, b).clone());
                            work.set(r, a, y);
                            work.set(r, b, x);
                        }
                    }
                }
            }
        }
        assert_eq!(invariants_from_matrix(&work), baseline);
    }
}

#[test]
fn crt_consistency_with_exact_snf() {
    // matrices with known structure: diagonal blocks scrambled by
    // unimodular moves; a prime power exceeding the p-part reproduces the
    // exact p-parts
    let mut rng = XorShift::new(0x31337);
    let diags: [&[i64]; 4] = [&[2, 4, 0], &[6, 10], &[3, 9, 27], &[1, 2, 12, 0]];
    for diag in diags {
        let n = diag.len();
        let mut entries = vec![0i64; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        let mut m = RelationMatrix::from_i64(n, n, &entries).unwrap();
        // scramble with row/col additions
        for _ in 0..10 {
            let a = rng.below(n as u64) as usize;
            let mut b = rng.below(n as u64) as usize;
            if a == b {
                b = (b + 1) % n;
            }
            if rng.below(2) == 0 {
                for c in 0..n {
                    let v = m.get(a, c) + m.get(b, c);
                    m.set(a, c, v);
                }
            } else {
                for r in 0..n {
                    let v = m.get(r, a) + m.get(r, b);
                    m.set(r, a, v);
                }
            }
        }
        let inv = invariants_from_matrix(&m);
        for p in [2u32, 3, 5] {
            // pick p^k strictly larger than the p-part of every torsion
            // coefficient
            let mut k = 1u32;
            loop {
                let pk = BigInt::from(p).pow(k);
                if inv.torsion.iter().all(|d| {
                    let mut pp = BigInt::one();
                    let mut rest = d.clone();
                    while (&rest % p).is_zero() {
                        rest /= p;
                        pp *= p;
                    }
                    pp < pk
                }) {
                    break;
                }
                k += 1;
            }
            let pk = BigInt::from(p).pow(k);
            let mi = invariants_mod(&m, &pk).unwrap();
            // expected p-parts of the torsion chain, ascending, nontrivial
            let mut want: Vec<BigInt> = inv
                .torsion
                .iter()
                .map(|d| {
                    let mut pp = BigInt::one();
                    let mut rest = d.clone();
                    while (&rest % p).is_zero() {
                        rest /= p;
                        pp *= p;
                    }
                    pp
                })
                .filter(|pp| !pp.is_one())
                .collect();
            want.sort();
            assert_eq!(mi.cyclic_orders, want, "diag {diag:?} mod {p}^{k}");
            assert_eq!(mi.unconstrained, inv.free_rank, "diag {diag:?} mod {p}^{k}");
        }
    }
}

#[test]
fn modular_invariants_of_relation_free_matrix() {
    // no relations at all: every column is unconstrained mod anything
    let m = RelationMatrix::new(0, 3, Vec::new()).unwrap();
    let mi = invariants_mod(&m, &BigInt::from(25)).unwrap();
    assert!(mi.cyclic_orders.is_empty());
    assert_eq!(mi.unconstrained, 3);
    assert_eq!(format!("{mi}"), "C∞^3 mod 5^2");
}
