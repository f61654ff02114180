//! Subgroup presentations from coset tables: Schreier transversals,
//! Schreier generators, and Reidemeister rewriting.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coset::{CosetTable, TableError};
use crate::pres::Presentation;
use crate::word::{GenIndex, Letter, Word};

/// One representative word per coset, with the Schreier tree that produced
/// them. Representatives are breadth-first shortest and prefix-closed;
/// coset 1 is represented by the empty word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transversal {
    reps: Vec<Word>,
    /// `(c-1)*d + g` marks the positive edge `(c, g)` as a tree edge.
    tree: Vec<bool>,
    /// Schreier generator number of each non-tree positive edge.
    sgen_of_edge: Vec<Option<usize>>,
    sgen_count: usize,
    gen_count: usize,
}

impl Transversal {
    pub fn representative(&self, coset: usize) -> &Word {
        &self.reps[coset - 1]
    }

    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn is_tree_edge(&self, coset: usize, gen: GenIndex) -> bool {
        self.tree[(coset - 1) * self.gen_count + gen]
    }

    /// Number of Schreier generators: `index * (d - 1) + 1`.
    pub fn schreier_count(&self) -> usize {
        self.sgen_count
    }

    fn sgen_index(&self, coset: usize, gen: GenIndex) -> Option<usize> {
        self.sgen_of_edge[(coset - 1) * self.gen_count + gen]
    }
}

/// Builds the breadth-first Schreier transversal of a complete,
/// standardized table.
pub fn transversal(t: &CosetTable) -> Result<Transversal, TableError> {
    if !t.is_complete() {
        return Err(TableError::Incomplete);
    }
    if !t.is_standardized() {
        return Err(TableError::NotStandardized);
    }
    let n = t.index();
    let d = t.generator_count();
    let mut reps: Vec<Option<Word>> = alloc::vec![None; n];
    let mut tree = alloc::vec![false; n * d];
    reps[0] = Some(Word::empty());
    // In a standardized table, scanning rows ascending and columns in order
    // discovers cosets exactly in numbering order, so a single sweep builds
    // the BFS tree.
    for c in 1..=n {
        for col in 0..2 * d {
            let img = t.entry(c, col).unwrap();
            if reps[img - 1].is_none() {
                let letter = Letter::from_code(col);
                reps[img - 1] = Some(
                    reps[c - 1]
                        .clone()
                        .unwrap()
                        .concat(&Word::from_letters(alloc::vec![letter])),
                );
                if letter.inverse {
                    // the positive orientation of this tree edge is (img, g)
                    tree[(img - 1) * d + letter.gen] = true;
                } else {
                    tree[(c - 1) * d + letter.gen] = true;
                }
            }
        }
    }
    let mut sgen_of_edge = alloc::vec![None; n * d];
    let mut count = 0;
    for c in 1..=n {
        for g in 0..d {
            if !tree[(c - 1) * d + g] {
                sgen_of_edge[(c - 1) * d + g] = Some(count);
                count += 1;
            }
        }
    }
    Ok(Transversal {
        reps: reps.into_iter().map(Option::unwrap).collect(),
        tree,
        sgen_of_edge,
        sgen_count: count,
        gen_count: d,
    })
}

/// A subgroup generator `rep(c) g rep(c.g)^-1` attached to a non-tree edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchreierGenerator {
    pub coset: usize,
    pub gen: GenIndex,
    /// Definition as a freely reduced word in the parent generators.
    pub definition: Word,
}

/// The Schreier generators of a table, numbered in discovery order
/// (cosets ascending, generators ascending). Exactly `index*(d-1)+1` of
/// them; tree edges carry freely trivial definitions and are excluded.
pub fn schreier_generators(t: &CosetTable, tr: &Transversal) -> Vec<SchreierGenerator> {
    let d = t.generator_count();
    let mut out = Vec::with_capacity(tr.schreier_count());
    for c in 1..=t.index() {
        for g in 0..d {
            if tr.sgen_index(c, g).is_some() {
                let img = t.entry(c, 2 * g).unwrap();
                let definition = tr
                    .representative(c)
                    .concat(&Word::generator(g))
                    .concat(&tr.representative(img).inverse())
                    .free_reduce();
                debug_assert!(!definition.is_empty());
                out.push(SchreierGenerator {
                    coset: c,
                    gen: g,
                    definition,
                });
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RewriteError {
    /// The word does not stabilize coset 1, so it lies outside the subgroup.
    NotInSubgroup,
    Table(TableError),
}

impl core::fmt::Display for RewriteError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RewriteError::NotInSubgroup => write!(f, "word does not stabilize coset 1"),
            RewriteError::Table(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RewriteError {}

impl From<TableError> for RewriteError {
    fn from(e: TableError) -> Self {
        RewriteError::Table(e)
    }
}

/// Rewrites `w`, traced from `start`, as a word in the Schreier generators.
/// Every non-tree edge crossed emits one letter.
fn rewrite_from(t: &CosetTable, tr: &Transversal, start: usize, w: &Word) -> Word {
    let mut c = start;
    let mut out: Vec<Letter> = Vec::new();
    for &l in w.letters() {
        if l.inverse {
            let prev = t.apply(c, l).unwrap();
            // the edge crossed backwards is the positive edge (prev, g)
            if let Some(s) = tr.sgen_index(prev, l.gen) {
                out.push(Letter::negative(s));
            }
            c = prev;
        } else {
            if let Some(s) = tr.sgen_index(c, l.gen) {
                out.push(Letter::positive(s));
            }
            c = t.apply(c, l).unwrap();
        }
    }
    debug_assert_eq!(c, start, "rewrite requires a closed trace");
    Word::from_letters(out).free_reduce()
}

/// Rewrites a subgroup element (a word with `trace(1, w) = 1`) in the
/// Schreier generators. Mapping the result back through the generator
/// definitions yields a word freely equal to `w` up to the transversal
/// bookkeeping.
pub fn rewrite(t: &CosetTable, tr: &Transversal, w: &Word) -> Result<Word, RewriteError> {
    if t.trace(1, w) != Some(1) {
        return Err(RewriteError::NotInSubgroup);
    }
    Ok(rewrite_from(t, tr, 1, w))
}

/// Batch form of [`rewrite`].
pub fn express_elements(
    p: &Presentation,
    t: &CosetTable,
    words: &[Word],
) -> Result<Vec<Word>, RewriteError> {
    debug_assert_eq!(p.generator_count(), t.generator_count());
    let tr = transversal(t)?;
    words.iter().map(|w| rewrite(t, &tr, w)).collect()
}

/// Counts observed while building a subgroup presentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RewritingStats {
    /// `index * (d - 1) + 1`.
    pub schreier_generators: usize,
    /// `index * n`, before dropping trivial or repeated relators.
    pub pre_reduction_relators: usize,
    pub dropped_trivial: usize,
    pub dropped_duplicate: usize,
}

/// A presentation of a finite-index subgroup together with the embedding
/// sending each Schreier generator to its definition in the parent group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// `embedding[k]` is the parent-group word defining generator `s<k+1>`.
    pub embedding: Vec<Word>,
    pub stats: RewritingStats,
}

impl SubgroupPresentation {
    /// Maps a word over the subgroup presentation's generators to a word in
    /// the parent group's generators.
    pub fn embed(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for &l in w.letters() {
            let def = &self.embedding[l.gen];
            out = if l.inverse {
                out.concat(&def.inverse())
            } else {
                out.concat(def)
            };
        }
        out.free_reduce()
    }
}

/// Reidemeister-Schreier: a presentation for the subgroup whose cosets `t`
/// enumerates, on the Schreier generators `s1, s2, ...`. Relators are the
/// rewrites of `rep(c) R rep(c)^-1` for every coset `c` and relator `R`;
/// freely trivial rewrites and exact duplicates are dropped (counts kept in
/// the stats), and no other simplification happens here.
pub fn subgroup_presentation(
    p: &Presentation,
    t: &CosetTable,
) -> Result<SubgroupPresentation, TableError> {
    if p.generator_count() != t.generator_count() {
        return Err(TableError::BadDimensions);
    }
    if !t.is_complete() {
        return Err(TableError::Incomplete);
    }
    let tr = transversal(t)?;
    // The table must actually belong to a subgroup of the group `p`
    // presents: every relator closes at every coset.
    for r in p.relators() {
        for c in 1..=t.index() {
            if t.trace(c, r) != Some(c) {
                return Err(TableError::EntryOutOfRange);
            }
        }
    }
    let sgens = schreier_generators(t, &tr);
    let names: Vec<String> = (1..=sgens.len()).map(|k| format!("s{k}")).collect();
    let mut relators: Vec<Word> = Vec::new();
    let mut seen: alloc::collections::BTreeSet<Word> = Default::default();
    let mut dropped_trivial = 0;
    let mut dropped_duplicate = 0;
    for c in 1..=t.index() {
        for r in p.relators() {
            // rep(c) R rep(c)^-1 rewrites to the emissions of R traced from
            // c: the transversal segments cross only tree edges.
            let w = rewrite_from(t, &tr, c, r).cyclic_reduce();
            if w.is_empty() {
                dropped_trivial += 1;
            } else if seen.insert(w.clone()) {
                relators.push(w);
            } else {
                dropped_duplicate += 1;
            }
        }
    }
    let stats = RewritingStats {
        schreier_generators: sgens.len(),
        pre_reduction_relators: t.index() * p.relators().len(),
        dropped_trivial,
        dropped_duplicate,
    };
    let presentation = Presentation::new(names, relators)
        .expect("rewritten relators reference declared Schreier generators");
    Ok(SubgroupPresentation {
        presentation,
        embedding: sgens.into_iter().map(|s| s.definition).collect(),
        stats,
    })
}
