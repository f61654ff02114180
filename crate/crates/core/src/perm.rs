//! Permutations and brute-force group closure, used for faithful
//! representations of small groups and as an independent check on
//! enumeration results.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::word::Word;

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm { images })
    }

    /// Builds a permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = *cycle.get(w)?;
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return None;
                }
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`: `(self * other)(x) = other(self(x))`.
    /// Matches the left-to-right reading of words acting on cosets.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = alloc::vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = p.compose(self);
            n += 1;
        }
        n
    }
}

/// Image of a word under `gen -> gen_perms[gen]`, letters applied left to
/// right.
pub fn word_to_perm(w: &Word, gen_perms: &[Perm]) -> Perm {
    let degree = gen_perms.first().map_or(0, Perm::degree);
    let mut out = Perm::identity(degree);
    for l in w.letters() {
        let p = &gen_perms[l.gen];
        if l.inverse {
            out = out.compose(&p.inverse());
        } else {
            out = out.compose(p);
        }
    }
    out
}

/// All elements generated by `gens`, by breadth-first closure. Returns
/// `None` if the group exceeds `cap` elements.
pub fn closure(gens: &[Perm], cap: usize) -> Option<Vec<Perm>> {
    let degree = gens.first().map_or(0, Perm::degree);
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(Perm::identity(degree));
    let mut frontier: Vec<Perm> = alloc::vec![Perm::identity(degree)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            for q in [p.compose(g), p.compose(&g.inverse())] {
                if !seen.contains(&q) {
                    if seen.len() >= cap {
                        return None;
                    }
                    seen.insert(q.clone());
                    frontier.push(q);
                }
            }
        }
    }
    Some(seen.into_iter().collect())
}
