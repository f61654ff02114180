//! Todd-Coxeter coset enumeration with coincidence handling, plus coset
//! table standardization, word tracing and permutation representations.
//!
//! Cosets are numbered from 1; coset 1 is the subgroup. Each coset has 2d
//! columns in the order `g1, g1^-1, g2, g2^-1, ...`; a stored 0 means the
//! entry is undefined.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::perm::Perm;
use crate::pres::{Presentation, SubgroupSpec};
use crate::word::{Letter, Word};

const UNDEF: u32 = 0;

/// The action of generators and their inverses on cosets.
#[derive(Clone, Debug)]
pub struct CosetTable {
    gen_count: usize,
    cosets: usize,
    data: Vec<u32>,
    stats: EnumStats,
}

/// Tables are equal when they define the same action; enumeration stats do
/// not participate.
impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.gen_count == other.gen_count && self.cosets == other.cosets && self.data == other.data
    }
}

impl Eq for CosetTable {}

/// Bookkeeping from an enumeration run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct EnumStats {
    /// Cosets ever defined, including ones later merged away.
    pub total_defined: usize,
    /// Largest number of simultaneously active cosets.
    pub max_active: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Relator-driven scanning with gap filling; the default.
    Hlt,
    /// Definition-driven scanning with a deduction queue.
    Felsch,
}

/// New cosets are always defined at the first undefined entry in row-major
/// scan order, so a run is fully determined by the inputs and these
/// parameters; there is no switch for that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumerationParams {
    pub strategy: Strategy,
    /// Bound on simultaneously active cosets; exceeding it aborts the run.
    pub max_cosets: usize,
}

impl Default for EnumerationParams {
    fn default() -> Self {
        EnumerationParams {
            strategy: Strategy::Hlt,
            max_cosets: 1_000_000,
        }
    }
}

impl EnumerationParams {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        EnumerationParams {
            max_cosets,
            ..Default::default()
        }
    }
}

/// Outcome of an enumeration: a complete table, or the stats at the point
/// the active-coset bound was hit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnumResult {
    Complete(CosetTable),
    Overflow(EnumStats),
}

impl EnumResult {
    pub fn complete(self) -> Option<CosetTable> {
        match self {
            EnumResult::Complete(t) => Some(t),
            EnumResult::Overflow(_) => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            EnumResult::Complete(t) => Some(t.index()),
            EnumResult::Overflow(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableError {
    Incomplete,
    NotStandardized,
    BadDimensions,
    EntryOutOfRange,
}

impl core::fmt::Display for TableError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TableError::Incomplete => write!(f, "coset table is incomplete"),
            TableError::NotStandardized => write!(f, "coset table is not standardized"),
            TableError::BadDimensions => write!(f, "coset table data has wrong dimensions"),
            TableError::EntryOutOfRange => write!(f, "coset table entry out of range"),
        }
    }
}

impl core::error::Error for TableError {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumError {
    /// A subgroup generator word references a generator not in the
    /// presentation.
    InvalidSubgroupWord,
    /// `max_cosets` must be at least 1.
    BadParams,
}

impl core::fmt::Display for EnumError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EnumError::InvalidSubgroupWord => {
                write!(f, "subgroup word references an undeclared generator")
            }
            EnumError::BadParams => write!(f, "max_cosets must be positive"),
        }
    }
}

impl core::error::Error for EnumError {}

impl CosetTable {
    /// Builds a table from raw parts; entries must lie in `0..=cosets`.
    /// The table may be incomplete (0 entries).
    pub fn from_raw(gen_count: usize, cosets: usize, data: Vec<u32>) -> Result<Self, TableError> {
        if data.len() != cosets * 2 * gen_count {
            return Err(TableError::BadDimensions);
        }
        if data.iter().any(|&e| e as usize > cosets) {
            return Err(TableError::EntryOutOfRange);
        }
        Ok(CosetTable {
            gen_count,
            cosets,
            data,
            stats: EnumStats::default(),
        })
    }

    pub fn index(&self) -> usize {
        self.cosets
    }

    pub fn generator_count(&self) -> usize {
        self.gen_count
    }

    pub fn stats(&self) -> EnumStats {
        self.stats
    }

    pub fn columns(&self) -> usize {
        2 * self.gen_count
    }

    #[inline]
    fn raw(&self, coset: usize, col: usize) -> u32 {
        self.data[(coset - 1) * self.columns() + col]
    }

    /// Image of `coset` under column `col`, or `None` when undefined.
    pub fn entry(&self, coset: usize, col: usize) -> Option<usize> {
        match self.raw(coset, col) {
            UNDEF => None,
            c => Some(c as usize),
        }
    }

    /// Image of `coset` under a letter.
    pub fn apply(&self, coset: usize, letter: Letter) -> Option<usize> {
        self.entry(coset, letter.code())
    }

    pub fn is_complete(&self) -> bool {
        self.data.iter().all(|&e| e != UNDEF)
    }

    /// Applies the letters of `w` left to right; undefined propagates.
    pub fn trace(&self, start: usize, w: &Word) -> Option<usize> {
        let mut c = start;
        for &l in w.letters() {
            c = self.apply(c, l)?;
        }
        Some(c)
    }

    /// Renumbers cosets in breadth-first discovery order, scanning rows
    /// ascending and columns in order `g1, g1^-1, g2, g2^-1, ...`.
    /// Idempotent.
    pub fn standardize(&self) -> Result<CosetTable, TableError> {
        if !self.is_complete() {
            return Err(TableError::Incomplete);
        }
        let n = self.cosets;
        let cols = self.columns();
        let mut old_of_new: Vec<usize> = Vec::with_capacity(n + 1);
        let mut new_of_old: Vec<usize> = alloc::vec![0; n + 1];
        old_of_new.push(0); // slot for 1-based indexing
        old_of_new.push(1);
        new_of_old[1] = 1;
        let mut next = 1;
        let mut cursor = 1;
        while cursor <= next && next < n {
            let old = old_of_new[cursor];
            for col in 0..cols {
                let img = self.raw(old, col) as usize;
                if new_of_old[img] == 0 {
                    next += 1;
                    new_of_old[img] = next;
                    old_of_new.push(img);
                    if next == n {
                        break;
                    }
                }
            }
            cursor += 1;
        }
        if next != n {
            // Unreachable cosets cannot occur in tables produced by
            // enumeration, but raw tables might be disconnected.
            return Err(TableError::EntryOutOfRange);
        }
        let mut data = alloc::vec![UNDEF; n * cols];
        for new_c in 1..=n {
            let old_c = old_of_new[new_c];
            for col in 0..cols {
                data[(new_c - 1) * cols + col] = new_of_old[self.raw(old_c, col) as usize] as u32;
            }
        }
        Ok(CosetTable {
            gen_count: self.gen_count,
            cosets: n,
            data,
            stats: self.stats,
        })
    }

    pub fn is_standardized(&self) -> bool {
        self.standardize()
            .map(|t| t.data == self.data)
            .unwrap_or(false)
    }

    /// One permutation of `{1..index}` per generator; the permutation for
    /// `g` sends each coset to its image under `g`.
    pub fn permutation_rep(&self) -> Result<Vec<Perm>, TableError> {
        if !self.is_complete() {
            return Err(TableError::Incomplete);
        }
        let mut perms = Vec::with_capacity(self.gen_count);
        for g in 0..self.gen_count {
            let images: Vec<usize> = (1..=self.cosets)
                .map(|c| self.raw(c, 2 * g) as usize - 1)
                .collect();
            perms.push(Perm::from_images(images).ok_or(TableError::EntryOutOfRange)?);
        }
        Ok(perms)
    }

    /// Full validity check: completeness, mutually inverse columns, every
    /// relator closing at every coset, and coset 1 fixed by every subgroup
    /// generator word.
    pub fn validate(&self, p: &Presentation, sub: &SubgroupSpec) -> Result<(), TableError> {
        if self.gen_count != p.generator_count() {
            return Err(TableError::BadDimensions);
        }
        if !self.is_complete() {
            return Err(TableError::Incomplete);
        }
        for c in 1..=self.cosets {
            for g in 0..self.gen_count {
                let img = self.raw(c, 2 * g) as usize;
                if self.raw(img, 2 * g + 1) as usize != c {
                    return Err(TableError::EntryOutOfRange);
                }
            }
        }
        for r in p.relators() {
            for c in 1..=self.cosets {
                if self.trace(c, r) != Some(c) {
                    return Err(TableError::EntryOutOfRange);
                }
            }
        }
        for w in sub.words() {
            if self.trace(1, w) != Some(1) {
                return Err(TableError::EntryOutOfRange);
            }
        }
        Ok(())
    }

    /// Row-major raw entries, 0 meaning undefined.
    pub fn raw_data(&self) -> &[u32] {
        &self.data
    }
}

/// Enumerates the cosets of the subgroup generated by `sub` in the group
/// presented by `p`. On completion the table is compacted and standardized;
/// the result is deterministic for fixed inputs and params.
pub fn enumerate(
    p: &Presentation,
    sub: &SubgroupSpec,
    params: &EnumerationParams,
) -> Result<EnumResult, EnumError> {
    if params.max_cosets == 0 || params.max_cosets > u32::MAX as usize / 2 {
        return Err(EnumError::BadParams);
    }
    if sub.max_gen().is_some_and(|g| g >= p.generator_count()) {
        return Err(EnumError::InvalidSubgroupWord);
    }
    let mut e = Enumerator::new(p, sub, params);
    match e.run() {
        Ok(()) => Ok(EnumResult::Complete(e.finish())),
        Err(Stop::Overflow) => Ok(EnumResult::Overflow(e.stats())),
    }
}

enum Stop {
    Overflow,
}

struct Enumerator {
    cols: usize,
    max_active: usize,
    felsch: bool,
    /// Relators as column codes, cyclically reduced.
    relators: Vec<Vec<u8>>,
    /// Subgroup generator words as column codes.
    subgens: Vec<Vec<u8>>,
    /// For Felsch: cyclic conjugates of relators and inverses, grouped by
    /// first column.
    by_first: Vec<Vec<Vec<u8>>>,
    /// Flat table, row for coset c at (c-1)*cols. 0 = undefined.
    table: Vec<u32>,
    /// Union-find over coset ids; parent[c] == c iff live.
    parent: Vec<u32>,
    total: usize,
    live: usize,
    max_live: usize,
    coinc: VecDeque<u32>,
    deductions: VecDeque<(u32, u8)>,
    /// Earliest (coset, col) whose entry was erased during coincidence
    /// processing; the Felsch fill cursor rewinds here.
    rewind: Option<(u32, u8)>,
}

fn word_cols(w: &Word) -> Vec<u8> {
    w.letters().iter().map(|l| l.code() as u8).collect()
}

impl Enumerator {
    fn new(p: &Presentation, sub: &SubgroupSpec, params: &EnumerationParams) -> Self {
        let cols = 2 * p.generator_count();
        let felsch = params.strategy == Strategy::Felsch;
        let relators: Vec<Vec<u8>> = p.relators().iter().map(word_cols).collect();
        let subgens: Vec<Vec<u8>> = sub.words().iter().map(word_cols).collect();
        let mut by_first: Vec<Vec<Vec<u8>>> = alloc::vec![Vec::new(); cols];
        if felsch {
            let mut seen: alloc::collections::BTreeSet<Vec<u8>> = Default::default();
            for r in &relators {
                let inv: Vec<u8> = r.iter().rev().map(|&c| c ^ 1).collect();
                for base in [r, &inv] {
                    for i in 0..base.len() {
                        let mut rot = base[i..].to_vec();
                        rot.extend_from_slice(&base[..i]);
                        if seen.insert(rot.clone()) {
                            by_first[rot[0] as usize].push(rot);
                        }
                    }
                }
            }
        }
        let mut e = Enumerator {
            cols,
            max_active: params.max_cosets,
            felsch,
            relators,
            subgens,
            by_first,
            table: Vec::new(),
            parent: alloc::vec![0],
            total: 0,
            live: 0,
            max_live: 0,
            coinc: VecDeque::new(),
            deductions: VecDeque::new(),
            rewind: None,
        };
        e.new_coset();
        e
    }

    fn stats(&self) -> EnumStats {
        EnumStats {
            total_defined: self.total,
            max_active: self.max_live,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: u8) -> u32 {
        self.table[(c as usize - 1) * self.cols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u8, v: u32) {
        self.table[(c as usize - 1) * self.cols + col as usize] = v;
    }

    fn new_coset(&mut self) -> u32 {
        self.table.extend(core::iter::repeat_n(UNDEF, self.cols));
        self.total += 1;
        self.live += 1;
        self.max_live = self.max_live.max(self.live);
        let id = self.total as u32;
        self.parent.push(id);
        id
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != c {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    /// Records the edge c --col--> d together with its inverse, queueing
    /// deductions when running Felsch.
    fn connect(&mut self, c: u32, col: u8, d: u32) {
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        if self.felsch {
            self.deductions.push_back((c, col));
            self.deductions.push_back((d, col ^ 1));
        }
    }

    fn define(&mut self, c: u32, col: u8) -> Result<u32, Stop> {
        if self.live >= self.max_active {
            return Err(Stop::Overflow);
        }
        let d = self.new_coset();
        self.connect(c, col, d);
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.coinc.push_back(hi);
    }

    /// Merges two cosets and transfers the dead rows' edges, processing
    /// follow-on coincidences until quiescent.
    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(dead) = self.coinc.pop_front() {
            for col in 0..self.cols as u8 {
                let delta = self.get(dead, col);
                if delta == UNDEF {
                    continue;
                }
                // Erase the back-reference before re-attaching at the
                // representative level.
                self.set(delta, col ^ 1, UNDEF);
                if self.is_live(delta) {
                    let pos = (delta, col ^ 1);
                    if self.rewind.is_none_or(|r| pos < r) {
                        self.rewind = Some(pos);
                    }
                }
                let mu = self.rep(dead);
                let nu = self.rep(delta);
                let mu_img = self.get(mu, col);
                if mu_img != UNDEF {
                    self.merge(nu, mu_img);
                } else {
                    let nu_img = self.get(nu, col ^ 1);
                    if nu_img != UNDEF {
                        self.merge(mu, nu_img);
                    } else {
                        self.connect(mu, col, nu);
                    }
                }
            }
        }
    }

    /// Scans relation `c . w = c`, filling gaps by defining new cosets.
    fn scan_and_fill(&mut self, c: u32, w: &[u8]) -> Result<(), Stop> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            // forward as far as defined
            while i <= j {
                let next = self.get(f, w[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            // backward as far as defined
            loop {
                let next = self.get(b, w[j] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                if j == i {
                    // backward consumed everything down to i: the cycle is
                    // closed and forces f = b.
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                j -= 1;
            }
            if i == j {
                self.connect(f, w[i], b);
                return Ok(());
            }
            // gap longer than one: define and keep scanning forward
            self.define(f, w[i])?;
        }
    }

    /// Deduction-driven scan: checks `c . w = c` without defining cosets.
    fn scan(&mut self, c: u32, w: &[u8]) {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        // forward
        while i <= j {
            let next = self.get(f, w[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        // backward
        loop {
            let next = self.get(b, w[j] ^ 1);
            if next == UNDEF {
                break;
            }
            b = next;
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            j -= 1;
        }
        if i == j {
            self.connect(f, w[i], b);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, col)) = self.deductions.pop_front() {
            if !self.is_live(c) || self.get(c, col) == UNDEF {
                continue;
            }
            let words = core::mem::take(&mut self.by_first[col as usize]);
            for w in &words {
                self.scan(c, w);
                if !self.is_live(c) || self.get(c, col) == UNDEF {
                    break;
                }
            }
            self.by_first[col as usize] = words;
        }
    }

    fn run(&mut self) -> Result<(), Stop> {
        let subgens = core::mem::take(&mut self.subgens);
        for w in &subgens {
            let start = self.rep(1);
            debug_assert_eq!(start, 1);
            self.scan_and_fill(1, w)?;
        }
        self.subgens = subgens;
        if self.felsch {
            self.run_felsch()
        } else {
            self.run_hlt()
        }
    }

    fn run_hlt(&mut self) -> Result<(), Stop> {
        let relators = core::mem::take(&mut self.relators);
        let mut c: u32 = 1;
        while (c as usize) <= self.total {
            if self.is_live(c) {
                for w in &relators {
                    self.scan_and_fill(c, w)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for col in 0..self.cols as u8 {
                        if !self.is_live(c) {
                            break;
                        }
                        if self.get(c, col) == UNDEF {
                            self.define(c, col)?;
                        }
                    }
                }
            }
            c += 1;
        }
        self.relators = relators;
        Ok(())
    }

    fn run_felsch(&mut self) -> Result<(), Stop> {
        self.process_deductions();
        let mut cursor: (u32, u8) = (1, 0);
        loop {
            if let Some(r) = self.rewind.take() {
                cursor = cursor.min(r);
            }
            // advance to first undefined entry among live rows
            let (mut c, mut col) = cursor;
            let mut found = None;
            while (c as usize) <= self.total {
                if self.is_live(c) {
                    while (col as usize) < self.cols {
                        if self.get(c, col) == UNDEF {
                            found = Some((c, col));
                            break;
                        }
                        col += 1;
                    }
                    if found.is_some() {
                        break;
                    }
                }
                c += 1;
                col = 0;
            }
            let Some((c, col)) = found else {
                return Ok(());
            };
            cursor = (c, col);
            self.define(c, col)?;
            self.process_deductions();
        }
    }

    /// Compacts live cosets and standardizes the numbering.
    fn finish(&mut self) -> CosetTable {
        let n = self.live;
        let mut new_id: Vec<u32> = alloc::vec![0; self.total + 1];
        let mut next = 0u32;
        for c in 1..=self.total as u32 {
            if self.is_live(c) {
                next += 1;
                new_id[c as usize] = next;
            }
        }
        debug_assert_eq!(next as usize, n);
        let mut data = alloc::vec![UNDEF; n * self.cols];
        let mut row = 0usize;
        for c in 1..=self.total as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.cols {
                let e = self.get(c, col as u8);
                debug_assert_ne!(e, UNDEF, "complete table expected");
                let r = self.rep(e);
                data[row * self.cols + col] = new_id[r as usize];
            }
            row += 1;
        }
        let table = CosetTable {
            gen_count: self.cols / 2,
            cosets: n,
            data,
            stats: self.stats(),
        };
        let mut std = table
            .standardize()
            .expect("enumeration yields a complete table");
        std.stats = self.stats();
        std
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::closure;

    fn enum_trivial(src: &str) -> EnumResult {
        let p = Presentation::parse(src).unwrap();
        enumerate(&p, &SubgroupSpec::trivial(), &EnumerationParams::default()).unwrap()
    }

    #[test]
    fn cyclic_group_order() {
        let t = enum_trivial("< a | a^5 >").complete().unwrap();
        assert_eq!(t.index(), 5);
        let p = Presentation::parse("< a | a^5 >").unwrap();
        t.validate(&p, &SubgroupSpec::trivial()).unwrap();
    }

    #[test]
    fn subgroup_index() {
        let p = Presentation::parse("< a | a^6 >").unwrap();
        let sub = SubgroupSpec::new(alloc::vec![p.parse_word("a^2").unwrap()]);
        let t = enumerate(&p, &sub, &EnumerationParams::default())
            .unwrap()
            .complete()
            .unwrap();
        assert_eq!(t.index(), 2);
        t.validate(&p, &sub).unwrap();
    }

    #[test]
    fn s3_permutation_rep_generates_order_6() {
        let t = enum_trivial("< a, b | a^2, b^3, (a*b)^2 >")
            .complete()
            .unwrap();
        assert_eq!(t.index(), 6);
        let perms = t.permutation_rep().unwrap();
        assert_eq!(closure(&perms, 100).unwrap().len(), 6);
    }

    #[test]
    fn index_one_table() {
        let p = Presentation::parse("< a, b | a^2, b^3, (a*b)^2 >").unwrap();
        let sub = SubgroupSpec::new(alloc::vec![
            p.parse_word("a").unwrap(),
            p.parse_word("b").unwrap(),
        ]);
        let t = enumerate(&p, &sub, &EnumerationParams::default())
            .unwrap()
            .complete()
            .unwrap();
        assert_eq!(t.index(), 1);
        assert!(t.permutation_rep().unwrap().iter().all(Perm::is_identity));
        assert_eq!(t.standardize().unwrap(), t);
    }

    #[test]
    fn trace_empty_word_is_identity() {
        let t = enum_trivial("< a | a^4 >").complete().unwrap();
        for c in 1..=4 {
            assert_eq!(t.trace(c, &Word::empty()), Some(c));
        }
    }

    #[test]
    fn relators_close_everywhere() {
        let p = Presentation::parse("< a, b | a^4, b^2, (a*b)^2 >").unwrap();
        let t = enumerate(&p, &SubgroupSpec::trivial(), &EnumerationParams::default())
            .unwrap()
            .complete()
            .unwrap();
        assert_eq!(t.index(), 8);
        for r in p.relators() {
            for c in 1..=t.index() {
                assert_eq!(t.trace(c, r), Some(c));
            }
        }
    }

    #[test]
    fn overflow_is_a_result() {
        let p = Presentation::parse("< a, b | >").unwrap();
        let r = enumerate(
            &p,
            &SubgroupSpec::trivial(),
            &EnumerationParams::with_max_cosets(50),
        )
        .unwrap();
        assert!(matches!(r, EnumResult::Overflow(s) if s.max_active == 50));
    }

    #[test]
    fn strategies_agree_after_standardization() {
        let cases = [
            "< a | a^12 >",
            "< a, b | a^2, b^3, (a*b)^2 >",
            "< a, b | a^4, b^4, [a,b] >",
            "< a, b | a^2, b^3, (a*b)^5 >",
            "< a, b | a^6, b^6, a*b^2 = b*a^2, [a,b] >",
        ];
        for src in cases {
            let p = Presentation::parse(src).unwrap();
            let mut subs = alloc::vec![
                SubgroupSpec::trivial(),
                SubgroupSpec::new(alloc::vec![p.parse_word("a^2").unwrap()]),
            ];
            if p.generator_count() > 1 {
                subs.push(SubgroupSpec::new(alloc::vec![p.parse_word("a*b").unwrap()]));
            }
            for sub in subs {
                let hlt = enumerate(
                    &p,
                    &sub,
                    &EnumerationParams {
                        strategy: Strategy::Hlt,
                        max_cosets: 10_000,
                    },
                )
                .unwrap()
                .complete()
                .unwrap();
                let felsch = enumerate(
                    &p,
                    &sub,
                    &EnumerationParams {
                        strategy: Strategy::Felsch,
                        max_cosets: 10_000,
                    },
                )
                .unwrap()
                .complete()
                .unwrap();
                assert_eq!(hlt.index(), felsch.index(), "index mismatch on {src}");
                assert_eq!(hlt.raw_data(), felsch.raw_data(), "table mismatch on {src}");
                hlt.validate(&p, &sub).unwrap();
                felsch.validate(&p, &sub).unwrap();
            }
        }
    }

    #[test]
    fn enlarging_subgroup_never_increases_index() {
        let p = Presentation::parse("< a, b | a^4, b^4, [a,b] >").unwrap();
        let small = SubgroupSpec::new(alloc::vec![p.parse_word("a^2").unwrap()]);
        let large = SubgroupSpec::new(alloc::vec![
            p.parse_word("a^2").unwrap(),
            p.parse_word("b^2").unwrap(),
        ]);
        let i_small = enumerate(&p, &small, &EnumerationParams::default())
            .unwrap()
            .index()
            .unwrap();
        let i_large = enumerate(&p, &large, &EnumerationParams::default())
            .unwrap()
            .index()
            .unwrap();
        assert!(i_large <= i_small);
    }

    #[test]
    fn standardize_is_idempotent() {
        let t = enum_trivial("< a, b | a^3, b^3, [a,b] >")
            .complete()
            .unwrap();
        let s1 = t.standardize().unwrap();
        let s2 = s1.standardize().unwrap();
        assert_eq!(s1, s2);
        assert!(t.is_standardized());
    }

    #[test]
    fn total_collapse() {
        // adding (ab)^2 = 1 to a presentation that then collapses
        let t = enum_trivial("< a, b | a^3, b^5, (a*b*a^-1*b^-1*a*b^2)^2, (a*b)^2 >")
            .complete()
            .unwrap();
        assert_eq!(t.index(), 1);
    }
}
