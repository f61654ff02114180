//! Presentations `< X | R >` and subgroup generating sets.

use alloc::string::String;
use alloc::vec::Vec;

use crate::word::{GenIndex, Word};

/// A named generator together with its position in the presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSymbol {
    pub name: String,
    pub index: GenIndex,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PresentationError {
    EmptyName,
    BadName,
    DuplicateName,
    UndeclaredGenerator,
}

impl core::fmt::Display for PresentationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PresentationError::EmptyName => write!(f, "generator name is empty"),
            PresentationError::BadName => {
                write!(f, "generator name must start with a letter")
            }
            PresentationError::DuplicateName => write!(f, "duplicate generator name"),
            PresentationError::UndeclaredGenerator => {
                write!(f, "relator references an undeclared generator")
            }
        }
    }
}

impl core::error::Error for PresentationError {}

pub fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite presentation: generators plus relator words.
///
/// Relators are stored freely and cyclically reduced; relators reducing to
/// the empty word are dropped (the identity relation says nothing).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(PresentationError::EmptyName);
            }
            if !valid_generator_name(n) {
                return Err(PresentationError::BadName);
            }
            if names[..i].contains(n) {
                return Err(PresentationError::DuplicateName);
            }
        }
        let d = names.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_gen().is_some_and(|g| g >= d) {
                return Err(PresentationError::UndeclaredGenerator);
            }
            let r = r.free_reduce().cyclic_reduce();
            if !r.is_empty() {
                reduced.push(r);
            }
        }
        Ok(Presentation {
            generators: names
                .into_iter()
                .enumerate()
                .map(|(index, name)| GeneratorSymbol { name, index })
                .collect(),
            relators: reduced,
        })
    }

    /// Free group on the given generator names.
    pub fn free<S: Into<String>>(names: Vec<S>) -> Result<Self, PresentationError> {
        Presentation::new(names, Vec::new())
    }

    /// Parses the standard grammar; see [`crate::text`].
    pub fn parse(input: &str) -> Result<Self, crate::text::ParseError> {
        crate::text::parse_presentation(input)
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, input: &str) -> Result<Word, crate::text::ParseError> {
        crate::text::parse_word(input, self)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_name(&self, g: GenIndex) -> &str {
        &self.generators[g].name
    }

    pub fn generator_named(&self, name: &str) -> Option<GenIndex> {
        self.generators.iter().position(|s| s.name == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Same generators with additional relators appended.
    pub fn with_extra_relators(&self, extra: &[Word]) -> Result<Self, PresentationError> {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut relators = self.relators.clone();
        relators.extend_from_slice(extra);
        Presentation::new(names, relators)
    }

    pub fn format(&self) -> String {
        crate::text::format_presentation(self)
    }

    pub fn format_word(&self, w: &Word) -> String {
        crate::text::format_word(w, self)
    }
}

impl core::fmt::Display for Presentation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.format())
    }
}

/// Words generating a subgroup of a parent presentation's group.
/// An empty list denotes the trivial subgroup.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SubgroupSpec {
    words: Vec<Word>,
}

impl SubgroupSpec {
    /// Freely reduces all words; words reducing to the identity are dropped.
    pub fn new(words: Vec<Word>) -> Self {
        SubgroupSpec {
            words: words
                .into_iter()
                .map(|w| w.free_reduce())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    pub fn trivial() -> Self {
        SubgroupSpec::default()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_trivial(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_gen(&self) -> Option<GenIndex> {
        self.words.iter().filter_map(Word::max_gen).max()
    }
}

impl From<Vec<Word>> for SubgroupSpec {
    fn from(words: Vec<Word>) -> Self {
        SubgroupSpec::new(words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    #[test]
    fn relators_are_normalized() {
        // a b b^-1 a^-1 b  ->  b  (free then cyclic reduction)
        let r = Word::from_letters(alloc::vec![
            Letter::positive(0),
            Letter::positive(1),
            Letter::negative(1),
            Letter::negative(0),
            Letter::positive(1),
        ]);
        let p = Presentation::new(alloc::vec!["a", "b"], alloc::vec![r]).unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0], Word::generator(1));
    }

    #[test]
    fn vacuous_relators_dropped() {
        let r = Word::from_letters(alloc::vec![Letter::positive(0), Letter::negative(0)]);
        let p = Presentation::new(alloc::vec!["a"], alloc::vec![r]).unwrap();
        assert!(p.relators().is_empty());
    }

    #[test]
    fn name_validation() {
        assert!(Presentation::free(alloc::vec![""]).is_err());
        assert!(Presentation::free(alloc::vec!["1a"]).is_err());
        assert!(Presentation::free(alloc::vec!["a", "a"]).is_err());
        assert!(Presentation::free(alloc::vec!["a", "a1", "x_3"]).is_ok());
    }

    #[test]
    fn undeclared_generator_rejected() {
        let r = Word::generator(1);
        assert_eq!(
            Presentation::new(alloc::vec!["a"], alloc::vec![r]),
            Err(PresentationError::UndeclaredGenerator)
        );
    }

    #[test]
    fn subgroup_spec_reduces() {
        let w = Word::from_letters(alloc::vec![Letter::positive(0), Letter::negative(0)]);
        let s = SubgroupSpec::new(alloc::vec![w, Word::generator(0)]);
        assert_eq!(s.words().len(), 1);
    }
}
