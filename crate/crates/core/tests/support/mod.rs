//! Shared oracle machinery: small groups of known order with faithful
//! permutation representations, brute-force subgroup abelianization, and a
//! deterministic pseudo-random generator for sampling.
//!
//! Each test binary uses a different subset of this module.
#![allow(dead_code)]

use fpg_core::perm::{closure, word_to_perm, Perm};
use fpg_core::{Presentation, Word};

/// A presentation together with an independently known faithful permutation
/// representation (generators in presentation order) and the group order.
pub struct KnownGroup {
    pub name: &'static str,
    pub presentation: &'static str,
    pub order: usize,
    pub perms: Vec<Perm>,
    /// Subgroup generator word lists to exercise.
    pub subgroups: &'static [&'static str],
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(degree, cycles).expect("valid cycle data")
}

/// Quaternion group by right multiplication on
/// `{1, -1, i, -i, j, -j, k, -k}`.
fn quaternion_perms() -> Vec<Perm> {
    let a = Perm::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5]).unwrap();
    let b = Perm::from_images(vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap();
    vec![a, b]
}

pub fn known_groups() -> Vec<KnownGroup> {
    vec![
        KnownGroup {
            name: "C6",
            presentation: "< a | a^6 >",
            order: 6,
            perms: vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])],
            subgroups: &["", "a^2", "a^3"],
        },
        KnownGroup {
            name: "C12",
            presentation: "< a | a^12 >",
            order: 12,
            perms: vec![cyc(12, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]])],
            subgroups: &["a^8", "a^6"],
        },
        KnownGroup {
            name: "S3",
            presentation: "< a, b | a^2, b^3, (a*b)^2 >",
            order: 6,
            perms: vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])],
            subgroups: &["", "a", "b"],
        },
        KnownGroup {
            name: "D4",
            presentation: "< a, b | a^4, b^2, (a*b)^2 >",
            order: 8,
            perms: vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])],
            subgroups: &["a", "a^2, b", "b"],
        },
        KnownGroup {
            name: "Q8",
            presentation: "< a, b | a^4, a^2*b^-2, b^-1*a*b*a >",
            order: 8,
            perms: quaternion_perms(),
            subgroups: &["a", "a^2", "b"],
        },
        KnownGroup {
            name: "D5",
            presentation: "< a, b | a^5, b^2, (a*b)^2 >",
            order: 10,
            perms: vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 4], &[2, 3]])],
            subgroups: &["a", "b"],
        },
        KnownGroup {
            name: "A4",
            presentation: "< a, b | a^2, b^3, (a*b)^3 >",
            order: 12,
            perms: vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 1, 2]])],
            subgroups: &["b", "a, b^-1*a*b", "a*b"],
        },
        KnownGroup {
            name: "D6",
            presentation: "< a, b | a^6, b^2, (a*b)^2 >",
            order: 12,
            perms: vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[1, 5], &[2, 4]])],
            subgroups: &["a^2", "a^3, b", "a"],
        },
        KnownGroup {
            name: "C2xC2",
            presentation: "< a, b | a^2, b^2, [a,b] >",
            order: 4,
            perms: vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[2, 3]])],
            subgroups: &["a", "a*b"],
        },
        KnownGroup {
            name: "C3xC3",
            presentation: "< a, b | a^3, b^3, [a,b] >",
            order: 9,
            perms: vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])],
            subgroups: &["a", "a*b"],
        },
        KnownGroup {
            name: "C4xC4",
            presentation: "< a, b | a^4, b^4, [a,b] >",
            order: 16,
            perms: vec![cyc(8, &[&[0, 1, 2, 3]]), cyc(8, &[&[4, 5, 6, 7]])],
            subgroups: &["a^2, b", "a*b", "a"],
        },
        KnownGroup {
            name: "S4",
            presentation: "< a, b | a^2, b^3, (a*b)^4 >",
            order: 24,
            perms: vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[1, 2, 3]])],
            subgroups: &["b", "a*b", "a, b*a*b^-1*a*b^-1"],
        },
        KnownGroup {
            name: "A4xC2",
            presentation: "< a, b, c | a^2, b^3, (a*b)^3, c^2, [a,c], [b,c] >",
            order: 24,
            perms: vec![
                cyc(6, &[&[0, 1], &[2, 3]]),
                cyc(6, &[&[0, 1, 2]]),
                cyc(6, &[&[4, 5]]),
            ],
            subgroups: &["a, b", "c", "b, c"],
        },
        KnownGroup {
            name: "S4xC2",
            presentation: "< a, b, c | a^2, b^3, (a*b)^4, c^2, [a,c], [b,c] >",
            order: 48,
            perms: vec![
                cyc(6, &[&[0, 1]]),
                cyc(6, &[&[1, 2, 3]]),
                cyc(6, &[&[4, 5]]),
            ],
            subgroups: &["b, c", "a, b"],
        },
    ]
}

impl KnownGroup {
    pub fn parse(&self) -> Presentation {
        Presentation::parse(self.presentation).unwrap()
    }

    /// Sanity of the oracle data itself: relators hold and the closure has
    /// the claimed order.
    pub fn self_check(&self) {
        let p = self.parse();
        assert_eq!(
            p.generator_count(),
            self.perms.len(),
            "{}: rep arity",
            self.name
        );
        for r in p.relators() {
            assert!(
                word_to_perm(r, &self.perms).is_identity(),
                "{}: relator {} fails in the representation",
                self.name,
                p.format_word(r)
            );
        }
        let order = closure(&self.perms, 4 * self.order).unwrap().len();
        assert_eq!(order, self.order, "{}: closure order", self.name);
    }
}

/// Subgroup generated by the images of the given words.
pub fn subgroup_elements(g: &KnownGroup, words: &[Word]) -> Vec<Perm> {
    let gens: Vec<Perm> = words.iter().map(|w| word_to_perm(w, &g.perms)).collect();
    if gens.is_empty() {
        let degree = g.perms[0].degree();
        return vec![Perm::identity(degree)];
    }
    closure(&gens, 4 * g.order).unwrap()
}

/// Commutator subgroup of the group generated by `elements` (which must be
/// closed): the closure of all commutators of element pairs.
pub fn commutator_subgroup(elements: &[Perm]) -> Vec<Perm> {
    let mut comms = Vec::new();
    for h in elements {
        for k in elements {
            let c = h.inverse().compose(&k.inverse()).compose(h).compose(k);
            comms.push(c);
        }
    }
    comms.sort();
    comms.dedup();
    closure(&comms, 4 * elements.len()).unwrap()
}

/// Invariant-factor chain (entries > 1, each dividing the next) of the
/// abelian quotient `H / H'`, computed by brute force: quotient cosets,
/// then repeated peeling of a maximal-order cyclic summand. Completely
/// independent of the Smith normal form code.
pub fn abelian_quotient_chain(h: &[Perm], hp: &[Perm]) -> Vec<u64> {
    // cosets of hp in h, represented by the sorted element list
    let mut coset_of: std::collections::BTreeMap<Perm, usize> = Default::default();
    let mut reps: Vec<Perm> = Vec::new();
    for x in h {
        if coset_of.contains_key(x) {
            continue;
        }
        let id = reps.len();
        for n in hp {
            coset_of.insert(x.compose(n), id);
        }
        reps.push(x.clone());
    }
    let n = reps.len();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| coset_of[&reps[i].compose(&reps[j])])
                .collect()
        })
        .collect();
    let identity = coset_of[&Perm::identity(h[0].degree())];
    peel_chain(&(0..n).collect::<Vec<_>>(), &mul, identity)
}

fn peel_chain(elements: &[usize], mul: &[Vec<usize>], identity: usize) -> Vec<u64> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let order_of = |x: usize| -> u64 {
        let mut p = x;
        let mut o = 1;
        while p != identity {
            p = mul[p][x];
            o += 1;
        }
        o
    };
    let max_order = elements.iter().map(|&x| order_of(x)).max().unwrap();
    let x = *elements
        .iter()
        .find(|&&e| order_of(e) == max_order)
        .unwrap();
    // cyclic subgroup <x>
    let mut cyc = vec![identity];
    let mut p = x;
    while p != identity {
        cyc.push(p);
        p = mul[p][x];
    }
    // quotient by <x>: new element ids are coset representatives
    let mut coset_of = vec![usize::MAX; mul.len()];
    let mut reps: Vec<usize> = Vec::new();
    for &e in elements {
        if coset_of[e] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &c in &cyc {
            coset_of[mul[e][c]] = id;
        }
        reps.push(e);
    }
    let qn = reps.len();
    let qmul: Vec<Vec<usize>> = (0..qn)
        .map(|i| (0..qn).map(|j| coset_of[mul[reps[i]][reps[j]]]).collect())
        .collect();
    let qid = coset_of[identity];
    let mut chain = peel_chain(&(0..qn).collect::<Vec<_>>(), &qmul, qid);
    chain.push(max_order);
    chain
}

/// Small deterministic generator for randomized suites.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.below((hi - lo + 1) as u64) as i64)
    }
}

/// Random freely reduced word over `d` generators.
pub fn random_word(rng: &mut XorShift, d: usize, max_len: usize) -> Word {
    use fpg_core::Letter;
    let len = rng.below(max_len as u64 + 1) as usize;
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let gen = rng.below(d as u64) as usize;
        let inverse = rng.below(2) == 1;
        letters.push(Letter::new(gen, inverse));
    }
    Word::from_letters(letters).free_reduce()
}

/// Random matrix with entries in `[-max_abs, max_abs]`.
pub fn random_matrix(rng: &mut XorShift, max_dim: usize, max_abs: i64) -> fpg_core::RelationMatrix {
    let rows = 1 + rng.below(max_dim as u64) as usize;
    let cols = 1 + rng.below(max_dim as u64) as usize;
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| rng.range_i64(-max_abs, max_abs))
        .collect();
    fpg_core::RelationMatrix::from_i64(rows, cols, &entries).unwrap()
}

/// Random presentation on up to 4 generators.
pub fn random_presentation(rng: &mut XorShift) -> Presentation {
    let d = 1 + rng.below(4) as usize;
    let names: Vec<String> = (0..d).map(|i| format!("g{i}")).collect();
    let n = rng.below(5) as usize;
    let relators = (0..n).map(|_| random_word(rng, d, 8)).collect();
    Presentation::new(names, relators).unwrap()
}

/// Brute-force gcd of all `k x k` minors by cofactor expansion; the oracle
/// side of the Smith chain check.
pub fn minor_gcd(m: &fpg_core::RelationMatrix, k: usize) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{ToPrimitive, Zero};
    fn det(m: &fpg_core::RelationMatrix, rows: &[usize], cols: &[usize]) -> i128 {
        if rows.len() == 1 {
            return m.get(rows[0], cols[0]).to_i128().unwrap();
        }
        let mut acc: i128 = 0;
        for (i, &r) in rows.iter().enumerate() {
            let a = m.get(r, cols[0]).to_i128().unwrap();
            if a == 0 {
                continue;
            }
            let sub_rows: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &r)| r)
                .collect();
            let minor = det(m, &sub_rows, &cols[1..]);
            if i % 2 == 0 {
                acc += a * minor;
            } else {
                acc -= a * minor;
            }
        }
        acc
    }
    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(cur.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let d = det(m, &rows, &cols);
            if d != 0 {
                g = g.gcd(&BigInt::from(d));
            }
        }
    }
    g
}
