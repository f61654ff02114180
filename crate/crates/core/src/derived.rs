//! Workflow driver: derived-series iteration, quotient discovery by relator
//! addition, and preimage (kernel) presentation extraction.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::abelian::{abelian_invariants, AbelianInvariants};
use crate::coset::{enumerate, CosetTable, EnumResult, EnumStats, EnumerationParams};
use crate::pres::{Presentation, SubgroupSpec};
use crate::schreier::{subgroup_presentation, SubgroupPresentation};
use crate::tietze::{recognize_free_abelian, simplify, SimplifyParams};
use crate::word::Word;

/// Resource limits shared by the workflow operations.
#[derive(Clone, Debug)]
pub struct Limits {
    pub params: EnumerationParams,
    pub max_levels: usize,
    pub simplify: SimplifyParams,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            params: EnumerationParams::default(),
            max_levels: 16,
            simplify: SimplifyParams::default(),
        }
    }
}

impl Limits {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        Limits {
            params: EnumerationParams::with_max_cosets(max_cosets),
            ..Default::default()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DerivedError {
    /// The abelianization is infinite, so its coset table cannot exist.
    InfiniteAbelianization,
    /// Enumeration hit the active-coset bound.
    Overflow(EnumStats),
}

impl core::fmt::Display for DerivedError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DerivedError::InfiniteAbelianization => {
                write!(f, "abelian quotient is infinite; no finite coset table")
            }
            DerivedError::Overflow(s) => {
                write!(
                    f,
                    "enumeration overflowed at {} active cosets",
                    s.max_active
                )
            }
        }
    }
}

impl core::error::Error for DerivedError {}

/// All pairwise commutators `[g_i, g_j]`, `i < j`.
pub fn commutator_relators(p: &Presentation) -> Vec<Word> {
    let d = p.generator_count();
    let mut out = Vec::with_capacity(d * (d - 1) / 2);
    for i in 0..d {
        for j in i + 1..d {
            out.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    out
}

/// A coset table for the group on the cosets of its derived subgroup, with
/// index equal to the order of the abelianization.
///
/// The table is obtained by enumerating the abelianized presentation
/// (all pairwise commutators added) over the trivial subgroup: since the
/// derived subgroup is normal, that regular action is exactly the action on
/// its cosets, and every relator of `p` still closes everywhere, so the
/// table is a valid coset table for `p` itself.
pub fn derived_subgroup_table(
    p: &Presentation,
    limits: &Limits,
) -> Result<CosetTable, DerivedError> {
    let inv = abelian_invariants(p);
    if inv.free_rank > 0 {
        return Err(DerivedError::InfiniteAbelianization);
    }
    let abelianized = p
        .with_extra_relators(&commutator_relators(p))
        .expect("commutators reference declared generators");
    match enumerate(&abelianized, &SubgroupSpec::trivial(), &limits.params)
        .expect("trivial subgroup words are always valid")
    {
        EnumResult::Complete(t) => {
            debug_assert_eq!(Some(BigInt::from(t.index())), inv.order());
            Ok(t)
        }
        EnumResult::Overflow(stats) => Err(DerivedError::Overflow(stats)),
    }
}

/// Why a derived-series run stopped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Termination {
    /// The last level is syntactically the free abelian group of this rank;
    /// the group is soluble.
    FreeAbelian(usize),
    /// The last level presents the trivial group; the group is soluble.
    TrivialGroup,
    /// The last level has infinite abelianization that was not recognized
    /// as free abelian; the series cannot be followed further.
    InfiniteAbelianization,
    /// The last level equals its own derived subgroup.
    PerfectGroup,
    /// An enumeration overflowed or the level bound was reached.
    LimitsExceeded,
}

/// One step of the derived series.
#[derive(Clone, Debug)]
pub struct DerivedLevel {
    /// Presentation of the `i`-th derived subgroup (simplified, except at
    /// level 0 where it is the input).
    pub presentation: Presentation,
    /// Abelian quotient of this level: the derived factor.
    pub invariants: AbelianInvariants,
    /// Index of the next derived subgroup, when its table was computed.
    pub next_index: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct DerivedSeriesReport {
    pub levels: Vec<DerivedLevel>,
    pub termination: Termination,
}

impl DerivedSeriesReport {
    /// Derived length, claimed only on soluble terminations.
    pub fn derived_length(&self) -> Option<usize> {
        match self.termination {
            Termination::FreeAbelian(_) => Some(self.levels.len()),
            // the trivial level itself contributes no factor
            Termination::TrivialGroup => Some(self.levels.len() - 1),
            _ => None,
        }
    }

    /// The abelian invariants of each level that contributes a factor.
    pub fn factors(&self) -> Vec<&AbelianInvariants> {
        let n = match self.termination {
            Termination::TrivialGroup => self.levels.len() - 1,
            _ => self.levels.len(),
        };
        self.levels[..n].iter().map(|l| &l.invariants).collect()
    }
}

/// Follows the derived series: abelianize, enumerate the derived-subgroup
/// table, rewrite, simplify, repeat. Stops on a recognized free abelian
/// level, a trivial level, infinite or trivial abelianization, or limits.
pub fn derived_series(p: &Presentation, limits: &Limits) -> DerivedSeriesReport {
    let mut levels: Vec<DerivedLevel> = Vec::new();
    let mut current = p.clone();
    loop {
        let invariants = abelian_invariants(&current);
        levels.push(DerivedLevel {
            presentation: current.clone(),
            invariants: invariants.clone(),
            next_index: None,
        });
        if current.generator_count() == 0 {
            return DerivedSeriesReport {
                levels,
                termination: Termination::TrivialGroup,
            };
        }
        if let Some(rank) = recognize_free_abelian(&current) {
            return DerivedSeriesReport {
                levels,
                termination: Termination::FreeAbelian(rank),
            };
        }
        if invariants.free_rank > 0 {
            return DerivedSeriesReport {
                levels,
                termination: Termination::InfiniteAbelianization,
            };
        }
        if invariants.is_trivial() {
            // trivial abelianization: either the trivial group or a perfect
            // one; a simplify run settles the syntactic cases
            let (q, _) = simplify(&current, &limits.simplify);
            if q.generator_count() == 0 {
                return DerivedSeriesReport {
                    levels,
                    termination: Termination::TrivialGroup,
                };
            }
            return DerivedSeriesReport {
                levels,
                termination: Termination::PerfectGroup,
            };
        }
        if levels.len() > limits.max_levels {
            return DerivedSeriesReport {
                levels,
                termination: Termination::LimitsExceeded,
            };
        }
        let table = match derived_subgroup_table(&current, limits) {
            Ok(t) => t,
            Err(_) => {
                return DerivedSeriesReport {
                    levels,
                    termination: Termination::LimitsExceeded,
                }
            }
        };
        levels.last_mut().unwrap().next_index = Some(table.index());
        let sub = subgroup_presentation(&current, &table)
            .expect("derived subgroup table is complete and valid");
        let (next, _) = simplify(&sub.presentation, &limits.simplify);
        current = next;
    }
}

/// Outcome of enumerating one augmented presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ScanOutcome {
    /// The quotient collapsed to the trivial group.
    Trivial,
    FiniteQuotient(usize),
    Overflow,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScanEntry {
    /// The relators added for this attempt.
    pub added: Vec<Word>,
    pub outcome: ScanOutcome,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
}

/// Default scan candidates: products `g_i g_j` and commutators `[g_i, g_j]`
/// over all pairs `i < j`.
pub fn default_scan_candidates(p: &Presentation) -> Vec<Word> {
    let d = p.generator_count();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            out.push(Word::generator(i).concat(&Word::generator(j)));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            out.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    out
}

/// For every candidate word `w` and exponent `e`, enumerates `p` with the
/// extra relator `w^e` over the trivial subgroup. Overflow is an outcome,
/// not an error; entries come out in candidate-major, exponent-minor order.
pub fn quotient_scan(
    p: &Presentation,
    candidates: &[Word],
    exponents: core::ops::RangeInclusive<u32>,
    limits: &Limits,
) -> ScanReport {
    let candidates: Vec<Word> = if candidates.is_empty() {
        default_scan_candidates(p)
    } else {
        candidates.to_vec()
    };
    let mut entries = Vec::new();
    for w in &candidates {
        for e in exponents.clone() {
            let relator = w.pow(e as i64);
            let added = alloc::vec![relator.clone()];
            let q = match p.with_extra_relators(&added) {
                Ok(q) => q,
                Err(_) => continue,
            };
            let outcome =
                match enumerate(&q, &SubgroupSpec::trivial(), &limits.params).expect("valid") {
                    EnumResult::Complete(t) if t.index() == 1 => ScanOutcome::Trivial,
                    EnumResult::Complete(t) => ScanOutcome::FiniteQuotient(t.index()),
                    EnumResult::Overflow(_) => ScanOutcome::Overflow,
                };
            entries.push(ScanEntry { added, outcome });
        }
    }
    ScanReport { entries }
}

/// A preimage subgroup presentation: the coset table of the quotient
/// `p + extra_relators` over the given subgroup words, rewritten against
/// the original presentation `p`.
#[derive(Clone, Debug)]
pub struct PreimageResult {
    /// Index of the preimage subgroup (equals the index in the quotient).
    pub index: usize,
    pub table: CosetTable,
    pub subgroup: SubgroupPresentation,
}

/// Presents the preimage in `p`'s group of the subgroup generated by
/// `subgroup_words` in the quotient by `extra_relators`; with no subgroup
/// words this is the kernel of the quotient map.
pub fn preimage_presentation(
    p: &Presentation,
    extra_relators: &[Word],
    subgroup_words: &[Word],
    limits: &Limits,
) -> Result<PreimageResult, DerivedError> {
    let quotient = p
        .with_extra_relators(extra_relators)
        .expect("extra relators must reference declared generators");
    let sub = SubgroupSpec::new(subgroup_words.to_vec());
    match enumerate(&quotient, &sub, &limits.params).expect("validated subgroup words") {
        EnumResult::Complete(table) => {
            // every relator of p closes on this table, so it is a coset
            // table for p itself; rewriting against p presents the preimage
            let subgroup = subgroup_presentation(p, &table)
                .expect("quotient table is a valid table for the original presentation");
            Ok(PreimageResult {
                index: table.index(),
                table,
                subgroup,
            })
        }
        EnumResult::Overflow(stats) => Err(DerivedError::Overflow(stats)),
    }
}

/// Order of a finite quotient: enumerate over the trivial subgroup.
pub fn group_order(p: &Presentation, limits: &Limits) -> Option<usize> {
    enumerate(p, &SubgroupSpec::trivial(), &limits.params)
        .expect("trivial subgroup")
        .index()
}
