//! Presentation simplification by Tietze transformations: generator
//! elimination, substring rewriting, and structural recognizers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::pres::Presentation;
use crate::word::{GenIndex, Letter, Word};

#[derive(Clone, Debug)]
pub struct SimplifyParams {
    /// Total presentation length may not exceed this multiple of the input
    /// length at any intermediate step; beyond it only length-nonincreasing
    /// eliminations are allowed.
    pub max_length_factor: f64,
    /// Generators that must survive to the output.
    pub protected: BTreeSet<GenIndex>,
    pub max_passes: usize,
    /// Upper bound on the length of a definition word substituted during
    /// elimination; `None` leaves it to the growth valve.
    pub elimination_length_bound: Option<usize>,
}

impl Default for SimplifyParams {
    fn default() -> Self {
        SimplifyParams {
            max_length_factor: 5.0,
            protected: BTreeSet::new(),
            max_passes: 20,
            elimination_length_bound: None,
        }
    }
}

impl SimplifyParams {
    pub fn protecting<I: IntoIterator<Item = GenIndex>>(gens: I) -> Self {
        SimplifyParams {
            protected: gens.into_iter().collect(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TietzeError {
    GeneratorOutOfRange,
    RelatorOutOfRange,
    /// The chosen relator does not contain exactly one occurrence of the
    /// generator.
    NotSingleOccurrence,
}

impl core::fmt::Display for TietzeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TietzeError::GeneratorOutOfRange => write!(f, "generator index out of range"),
            TietzeError::RelatorOutOfRange => write!(f, "relator index out of range"),
            TietzeError::NotSingleOccurrence => {
                write!(f, "relator must contain the generator exactly once")
            }
        }
    }
}

impl core::error::Error for TietzeError {}

#[derive(Clone, Debug)]
enum Move {
    Eliminate { gen: GenIndex, definition: Word },
    SubstringPass,
    Cleanup,
    FinalNormalize,
}

/// Record of a simplify run: the eliminated generators with their
/// definitions at elimination time, plus enough detail to replay the run.
#[derive(Clone, Debug)]
pub struct SimplifyTrace {
    gen_names: Vec<String>,
    moves: Vec<Move>,
    eliminated: Vec<(GenIndex, Word)>,
    survivors: Vec<GenIndex>,
}

impl SimplifyTrace {
    /// `(generator, definition)` pairs in elimination order. Indices and
    /// definition words refer to the input presentation's generators.
    pub fn eliminations(&self) -> &[(GenIndex, Word)] {
        &self.eliminated
    }

    /// Input-presentation indices of the generators that survived.
    pub fn survivors(&self) -> &[GenIndex] {
        &self.survivors
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Fully back-substituted definition of an eliminated generator, as a
    /// word supported on the surviving generators (input indices).
    pub fn resolve(&self, gen: GenIndex) -> Option<Word> {
        if !self.eliminated.iter().any(|(g, _)| *g == gen) {
            return None;
        }
        let mut resolved: BTreeMap<GenIndex, Word> = BTreeMap::new();
        for (g, def) in self.eliminated.iter().rev() {
            let mut out = Word::empty();
            for &l in def.letters() {
                match resolved.get(&l.gen) {
                    Some(w) => {
                        out = if l.inverse {
                            out.concat(&w.inverse())
                        } else {
                            out.concat(w)
                        }
                    }
                    None => out = out.concat(&Word::from_letters(alloc::vec![l])),
                }
            }
            resolved.insert(*g, out.free_reduce());
        }
        resolved.remove(&gen)
    }

    /// Re-applies the recorded moves to the input presentation. The result
    /// equals the simplify output.
    pub fn replay(&self, input: &Presentation) -> Presentation {
        let mut w = Work::new(input);
        for m in &self.moves {
            match m {
                Move::Eliminate { gen, definition } => w.eliminate(*gen, definition),
                Move::SubstringPass => {
                    w.substring_fixpoint(true);
                }
                Move::Cleanup => w.cleanup(),
                Move::FinalNormalize => w.final_normalize(),
            }
        }
        w.into_presentation(input)
    }
}

/// Working state over the input generator alphabet; eliminated generators
/// are tombstoned and the survivors renumbered only at the end.
struct Work {
    gen_count: usize,
    alive: Vec<bool>,
    relators: Vec<Word>,
}

impl Work {
    fn new(p: &Presentation) -> Self {
        Work {
            gen_count: p.generator_count(),
            alive: alloc::vec![true; p.generator_count()],
            relators: p.relators().to_vec(),
        }
    }

    fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Free+cyclic reduce, drop empties, drop duplicates up to rotation and
    /// inversion (first occurrence kept).
    fn cleanup(&mut self) {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut out = Vec::with_capacity(self.relators.len());
        for r in self.relators.drain(..) {
            let r = r.free_reduce().cyclic_reduce();
            if r.is_empty() {
                continue;
            }
            if seen.insert(r.canonical_cyclic()) {
                out.push(r);
            }
        }
        self.relators = out;
    }

    fn substitute(w: &Word, gen: GenIndex, def: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in w.letters() {
            if l.gen == gen {
                if l.inverse {
                    out.extend_from_slice(def.inverse().letters());
                } else {
                    out.extend_from_slice(def.letters());
                }
            } else {
                out.push(l);
            }
        }
        Word::from_letters(out)
    }

    /// Substitutes `definition` for `gen` in every relator and tombstones
    /// the generator. The defining relator reduces to the empty word on its
    /// own and is removed by the following cleanup.
    fn eliminate(&mut self, gen: GenIndex, definition: &Word) {
        for r in &mut self.relators {
            *r = Self::substitute(r, gen, definition)
                .free_reduce()
                .cyclic_reduce();
        }
        self.alive[gen] = false;
    }

    /// One sweep of substring rewriting. A relator `u w` lets `u` be
    /// replaced by `w^-1` wherever `u` occurs cyclically in another relator.
    /// Replacements with `|u| > |w|` shorten outright; with `allow_equal`,
    /// even splits are also applied when the rewritten relator becomes
    /// lexicographically smaller in canonical cyclic form, which lets
    /// commutation-style relators reorder letters until cancellations
    /// appear. Both kinds strictly decrease the well-founded measure
    /// (total length, canonical relator multiset), so iterating sweeps
    /// terminates.
    ///
    /// The probe table is built once per sweep. A rule is only valid while
    /// its source relator is unchanged: once a relator is rewritten, its
    /// probes are dead for the rest of the sweep (otherwise two relators
    /// could rewrite each other from stale forms and silently drop a
    /// relation). The next sweep rebuilds the table.
    fn substring_sweep(&mut self, allow_equal: bool) -> bool {
        struct Probe {
            source: usize,
            pattern: Word,
            replacement: Word,
        }
        const HASH_BASE: u64 = 0x9E37_79B9_7F4A_7C15;
        let hash_of = |letters: &[Letter]| -> u64 {
            letters.iter().fold(0u64, |h, l| {
                h.wrapping_mul(HASH_BASE).wrapping_add(l.code() as u64 + 1)
            })
        };
        fn rest_len(nj: usize, m: usize) -> usize {
            nj - m
        }
        // first probe per key wins: sources ascending, word before inverse,
        // rotations ascending
        let mut probes: BTreeMap<(usize, u64), Probe> = BTreeMap::new();
        let mut lengths: BTreeSet<usize> = BTreeSet::new();
        for (i, r) in self.relators.iter().enumerate() {
            let n = r.len();
            if n == 0 {
                continue;
            }
            let mut ms = alloc::vec![n / 2 + 1];
            if allow_equal && n >= 2 && n % 2 == 0 {
                ms.push(n / 2);
            }
            for base in [r.clone(), r.inverse()] {
                for rot in 0..n {
                    let rotated = base.rotate(rot);
                    for &m in &ms {
                        lengths.insert(m);
                        let pattern = Word::from_letters(rotated.letters()[..m].to_vec());
                        let replacement =
                            Word::from_letters(rotated.letters()[m..].to_vec()).inverse();
                        probes
                            .entry((m, hash_of(pattern.letters())))
                            .or_insert(Probe {
                                source: i,
                                pattern,
                                replacement,
                            });
                    }
                }
            }
        }
        if probes.is_empty() {
            return false;
        }
        let lengths: Vec<usize> = lengths.into_iter().rev().collect();
        let mut changed = false;
        let mut dirty = alloc::vec![false; self.relators.len()];
        for j in 0..self.relators.len() {
            'rescan: loop {
                let rj = &self.relators[j];
                let nj = rj.len();
                if nj == 0 {
                    break;
                }
                let doubled: Vec<Letter> =
                    rj.letters().iter().chain(rj.letters()).copied().collect();
                for &m in &lengths {
                    if m > nj {
                        continue;
                    }
                    for rot in 0..nj {
                        let window = &doubled[rot..rot + m];
                        let Some(probe) = probes.get(&(m, hash_of(window))) else {
                            continue;
                        };
                        if probe.source == j
                            || dirty[probe.source]
                            || probe.pattern.letters() != window
                        {
                            continue;
                        }
                        let strictly_shorter = probe.replacement.len() + rest_len(nj, m) < nj;
                        let rest = Word::from_letters(doubled[rot + m..rot + nj].to_vec());
                        let new_r = probe
                            .replacement
                            .concat(&rest)
                            .free_reduce()
                            .cyclic_reduce();
                        let improves = strictly_shorter
                            || new_r.len() < nj
                            || new_r.canonical_cyclic() < rj.canonical_cyclic();
                        if improves {
                            self.relators[j] = new_r;
                            dirty[j] = true;
                            changed = true;
                            continue 'rescan;
                        }
                    }
                }
                break;
            }
        }
        changed
    }

    /// Runs substring rewriting to a fixpoint; total length never increases.
    fn substring_fixpoint(&mut self, allow_equal: bool) -> bool {
        let mut changed = false;
        while self.substring_sweep(allow_equal) {
            changed = true;
        }
        changed
    }

    /// Best admissible elimination: the generator and defining relator whose
    /// substitution yields the smallest estimated total length, ties broken
    /// by generator then relator index.
    fn best_elimination(
        &self,
        protected: &BTreeSet<GenIndex>,
        budget: usize,
        length_bound: Option<usize>,
    ) -> Option<(GenIndex, usize, Word)> {
        let total = self.total_length();
        let mut occ_total = alloc::vec![0usize; self.gen_count];
        for r in &self.relators {
            for l in r.letters() {
                occ_total[l.gen] += 1;
            }
        }
        let mut best: Option<(usize, GenIndex, usize)> = None;
        let mut counts = alloc::vec![0usize; self.gen_count];
        for (ri, r) in self.relators.iter().enumerate() {
            let mut touched: Vec<GenIndex> = Vec::new();
            for l in r.letters() {
                if counts[l.gen] == 0 {
                    touched.push(l.gen);
                }
                counts[l.gen] += 1;
            }
            for &g in &touched {
                if counts[g] == 1 && !protected.contains(&g) {
                    let def_len = r.len() - 1;
                    if length_bound.is_some_and(|b| def_len > b) {
                        continue;
                    }
                    let others = occ_total[g] - 1;
                    let est = total + others * def_len - r.len() - others;
                    if est <= total || est <= budget {
                        let cand = (est, g, ri);
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
            for &g in &touched {
                counts[g] = 0;
            }
        }
        let (_, g, ri) = best?;
        let r = &self.relators[ri];
        let pos = r.letters().iter().position(|l| l.gen == g).unwrap();
        let rotated = r.rotate(pos);
        let tail = Word::from_letters(rotated.letters()[1..].to_vec());
        let definition = if rotated[0].inverse {
            tail
        } else {
            tail.inverse()
        }
        .free_reduce();
        Some((g, ri, definition))
    }

    /// Canonicalizes relator orientation/rotation, sorts by length then
    /// content, and deduplicates.
    fn final_normalize(&mut self) {
        for r in &mut self.relators {
            *r = r.canonical_cyclic();
        }
        self.relators
            .sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.relators.dedup();
    }

    /// Renumbers survivors and builds the output presentation.
    fn into_presentation(self, input: &Presentation) -> Presentation {
        let mut remap = alloc::vec![usize::MAX; self.gen_count];
        let mut names = Vec::new();
        for g in 0..self.gen_count {
            if self.alive[g] {
                remap[g] = names.len();
                names.push(String::from(input.generator_name(g)));
            }
        }
        let relators: Vec<Word> = self
            .relators
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|l| {
                        debug_assert_ne!(remap[l.gen], usize::MAX, "dead generator in relator");
                        Letter::new(remap[l.gen], l.inverse)
                    })
                    .collect()
            })
            .collect();
        Presentation::new(names, relators).expect("simplified relators stay valid")
    }
}

/// Simplifies by alternating elimination sweeps and substring passes until a
/// full cycle changes nothing or `max_passes` is reached. The output
/// presents an isomorphic group; protected generators survive; abelian
/// invariants are preserved.
pub fn simplify(p: &Presentation, params: &SimplifyParams) -> (Presentation, SimplifyTrace) {
    let budget_f = params.max_length_factor.max(1.0) * p.total_length() as f64;
    let budget = if budget_f >= usize::MAX as f64 {
        usize::MAX
    } else {
        budget_f as usize
    };
    let mut w = Work::new(p);
    let mut trace = SimplifyTrace {
        gen_names: p.generators().iter().map(|g| g.name.clone()).collect(),
        moves: Vec::new(),
        eliminated: Vec::new(),
        survivors: Vec::new(),
    };
    let push = |w: &mut Work, trace: &mut SimplifyTrace, m: Move| {
        match &m {
            Move::Eliminate { gen, definition } => {
                w.eliminate(*gen, definition);
                trace.eliminated.push((*gen, definition.clone()));
            }
            Move::SubstringPass => {
                w.substring_fixpoint(true);
            }
            Move::Cleanup => w.cleanup(),
            Move::FinalNormalize => w.final_normalize(),
        }
        trace.moves.push(m);
    };
    push(&mut w, &mut trace, Move::Cleanup);
    for _ in 0..params.max_passes {
        let mut changed = false;
        while let Some((g, _ri, def)) =
            w.best_elimination(&params.protected, budget, params.elimination_length_bound)
        {
            push(
                &mut w,
                &mut trace,
                Move::Eliminate {
                    gen: g,
                    definition: def,
                },
            );
            push(&mut w, &mut trace, Move::Cleanup);
            changed = true;
        }
        // equal-length reordering counts as progress too: it can expose
        // new eliminations without shrinking the presentation
        let before = w.relators.clone();
        push(&mut w, &mut trace, Move::SubstringPass);
        if w.relators != before {
            push(&mut w, &mut trace, Move::Cleanup);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    push(&mut w, &mut trace, Move::FinalNormalize);
    trace.survivors = (0..w.gen_count).filter(|&g| w.alive[g]).collect();
    let out = w.into_presentation(p);
    (out, trace)
}

/// Single Tietze elimination: removes `gen` using relator `relator`, which
/// must contain exactly one occurrence of it; every other occurrence is
/// replaced by the complement word.
pub fn eliminate(
    p: &Presentation,
    gen: GenIndex,
    relator: usize,
) -> Result<Presentation, TietzeError> {
    if gen >= p.generator_count() {
        return Err(TietzeError::GeneratorOutOfRange);
    }
    let Some(r) = p.relators().get(relator) else {
        return Err(TietzeError::RelatorOutOfRange);
    };
    let occurrences = r.letters().iter().filter(|l| l.gen == gen).count();
    if occurrences != 1 {
        return Err(TietzeError::NotSingleOccurrence);
    }
    let mut w = Work::new(p);
    let pos = r.letters().iter().position(|l| l.gen == gen).unwrap();
    let rotated = r.rotate(pos);
    let tail = Word::from_letters(rotated.letters()[1..].to_vec());
    let definition = if rotated[0].inverse {
        tail
    } else {
        tail.inverse()
    }
    .free_reduce();
    w.relators.remove(relator);
    w.eliminate(gen, &definition);
    w.relators.retain(|r| !r.is_empty());
    Ok(w.into_presentation(p))
}

/// One deterministic substring-rewriting pass run to a fixpoint. Output
/// length is never larger than the input length.
pub fn substring_pass(p: &Presentation) -> Presentation {
    let mut w = Work::new(p);
    w.substring_fixpoint(false);
    w.relators.retain(|r| !r.is_empty());
    w.into_presentation(p)
}

/// Recognizes the standard free abelian presentation: `k` generators whose
/// relator set is exactly the commutators of all unordered generator pairs,
/// up to rotation and inversion. Returns the rank, or `None` when the shape
/// does not match (never a wrong positive).
pub fn recognize_free_abelian(p: &Presentation) -> Option<usize> {
    let k = p.generator_count();
    if p.relators().len() != k * (k - 1) / 2 {
        return None;
    }
    let mut pairs: BTreeSet<(GenIndex, GenIndex)> = BTreeSet::new();
    for r in p.relators() {
        if r.len() != 4 {
            return None;
        }
        let l = r.letters();
        if l[2] != l[0].inverse() || l[3] != l[1].inverse() || l[0].gen == l[1].gen {
            return None;
        }
        let pair = (l[0].gen.min(l[1].gen), l[0].gen.max(l[1].gen));
        if !pairs.insert(pair) {
            return None;
        }
    }
    Some(k)
}
