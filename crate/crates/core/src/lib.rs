//! Core algorithms for investigating finitely presented groups.
//!
//! The crate provides the machinery to go from a presentation `< X | R >` to
//! structural information about the group it defines: coset enumeration over
//! a subgroup, subgroup presentations via Schreier transversals and
//! Reidemeister rewriting, presentation simplification by Tietze
//! transformations, abelian quotient recognition through Smith normal form,
//! and a derived-series driver that combines all of the above.
//!
//! Everything in here is deterministic and allocation-only (`no_std` +
//! `alloc`). Values are immutable once constructed and operations are pure
//! functions, so everything can be shared and run from concurrent tasks
//! without coordination; file formats and the command line live in the
//! companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod coset;
pub mod derived;
pub mod perm;
pub mod pres;
pub mod schreier;
pub mod text;
pub mod tietze;
pub mod word;

pub use abelian::{
    abelian_invariants, invariants_mod, relation_matrix, smith_normal_form, AbelianInvariants,
    ModularInvariants, RelationMatrix, SmithForm,
};
pub use coset::{enumerate, CosetTable, EnumResult, EnumStats, EnumerationParams, Strategy};
pub use derived::{
    derived_series, derived_subgroup_table, preimage_presentation, quotient_scan,
    DerivedSeriesReport, Limits, ScanOutcome, ScanReport, Termination,
};
pub use perm::Perm;
pub use pres::{GeneratorSymbol, Presentation, SubgroupSpec};
pub use schreier::{
    express_elements, rewrite, schreier_generators, subgroup_presentation, transversal,
    SchreierGenerator, SubgroupPresentation, Transversal,
};
pub use text::{parse_presentation, parse_word, parse_word_list, ParseError};
pub use tietze::{
    eliminate, recognize_free_abelian, simplify, substring_pass, SimplifyParams, SimplifyTrace,
};
pub use word::{GenIndex, Letter, Word};
