//! Parser and formatter for the presentation grammar.
//!
//! ```text
//! presentation := "<" genlist "|" rellist? ">"
//! genlist      := ident ("," ident)*
//! rellist      := relation ("," relation)*
//! relation     := word ("=" word)*
//! word         := "1" | term ("*" term)*
//! term         := atom ("^" int)?
//! atom         := ident | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! Whitespace is insignificant. Identifiers are case-sensitive, start with a
//! letter and continue with letters, digits or `_`; inverses are written
//! `^-1` (uppercase is not an inverse). `[u,v]` is the commutator
//! `u^-1 v^-1 u v`, `1` is the empty word, and a chained relation
//! `u = v = w` contributes the relators `u v^-1` and `v w^-1`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::pres::{Presentation, PresentationError};
use crate::word::{GenIndex, Word};

/// Syntax or binding error, with the byte offset where it occurred.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "syntax error at byte {}: {}",
            self.position, self.message
        )
    }
}

impl core::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => err(
                self.pos,
                format!("expected '{}', found '{}'", c as char, got as char),
            ),
            None => err(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            ),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return err(self.pos, "expected identifier"),
        }
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string();
        Ok((start, text))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let mut val: i64 = 0;
        let mut any = false;
        while let Some(c) = self.src.get(self.pos).copied() {
            if !c.is_ascii_digit() {
                break;
            }
            any = true;
            val = val
                .checked_mul(10)
                .and_then(|v| v.checked_add(i64::from(c - b'0')))
                .ok_or(ParseError {
                    position: start,
                    message: "exponent too large".into(),
                })?;
            self.pos += 1;
        }
        if !any {
            return err(self.pos, "expected integer");
        }
        Ok(if neg { -val } else { val })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

struct WordParser<'a, 'b> {
    sc: &'b mut Scanner<'a>,
    gens: &'b [String],
}

impl WordParser<'_, '_> {
    fn lookup(&self, pos: usize, name: &str) -> Result<GenIndex, ParseError> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| ParseError {
                position: pos,
                message: format!("undeclared generator '{name}'"),
            })
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.sc.peek() == Some(b'1') {
            self.sc.pos += 1;
            return Ok(Word::empty());
        }
        let mut w = self.term()?;
        while self.sc.eat(b'*') {
            if self.sc.peek() == Some(b'1') {
                self.sc.pos += 1;
                continue;
            }
            let t = self.term()?;
            w = w.concat(&t);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let atom = self.atom()?;
        if self.sc.eat(b'^') {
            let e = self.sc.integer()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.sc.peek() {
            Some(b'(') => {
                self.sc.pos += 1;
                let w = self.word()?;
                self.sc.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.sc.pos += 1;
                let u = self.word()?;
                self.sc.expect(b',')?;
                let v = self.word()?;
                self.sc.expect(b']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (pos, name) = self.sc.ident()?;
                let g = self.lookup(pos, &name)?;
                Ok(Word::generator(g))
            }
            Some(c) => err(self.sc.pos, format!("expected word, found '{}'", c as char)),
            None => err(self.sc.pos, "expected word, found end of input"),
        }
    }
}

fn bind_presentation_error(e: PresentationError, position: usize) -> ParseError {
    ParseError {
        position,
        message: e.to_string(),
    }
}

/// Parses a full presentation. Relators come out freely and cyclically
/// reduced; relations `u = v = w` expand into difference relators.
pub fn parse_presentation(input: &str) -> Result<Presentation, ParseError> {
    let mut sc = Scanner::new(input);
    sc.expect(b'<')?;
    let mut names: Vec<String> = Vec::new();
    if sc.peek() != Some(b'|') {
        loop {
            let (pos, name) = sc.ident()?;
            if names.contains(&name) {
                return err(pos, format!("duplicate generator '{name}'"));
            }
            names.push(name);
            if !sc.eat(b',') {
                break;
            }
        }
    }
    sc.expect(b'|')?;
    let mut relators: Vec<Word> = Vec::new();
    if sc.peek() != Some(b'>') {
        loop {
            let mut wp = WordParser {
                sc: &mut sc,
                gens: &names,
            };
            let mut sides = alloc::vec![wp.word()?];
            while wp.sc.eat(b'=') {
                let next = wp.word()?;
                sides.push(next);
            }
            if sides.len() == 1 {
                relators.push(sides.pop().unwrap());
            } else {
                for pair in sides.windows(2) {
                    relators.push(pair[0].concat(&pair[1].inverse()));
                }
            }
            if !sc.eat(b',') {
                break;
            }
        }
    }
    let close = sc.pos;
    sc.expect(b'>')?;
    if !sc.at_end() {
        return err(sc.pos, "trailing input after '>'");
    }
    Presentation::new(names, relators).map_err(|e| bind_presentation_error(e, close))
}

/// Parses one word over the generators of `p`. The result is freely reduced.
pub fn parse_word(input: &str, p: &Presentation) -> Result<Word, ParseError> {
    let words = parse_word_list(input, p)?;
    match words.len() {
        1 => Ok(words.into_iter().next().unwrap()),
        n => err(0, format!("expected a single word, found {n}")),
    }
}

/// Parses a comma-separated list of words (commas inside `[u,v]` bind to the
/// commutator). Every word is freely reduced; empty list input is allowed.
pub fn parse_word_list(input: &str, p: &Presentation) -> Result<Vec<Word>, ParseError> {
    let gens: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
    let mut sc = Scanner::new(input);
    let mut out = Vec::new();
    if sc.at_end() {
        return Ok(out);
    }
    loop {
        let mut wp = WordParser {
            sc: &mut sc,
            gens: &gens,
        };
        out.push(wp.word()?.free_reduce());
        if !sc.eat(b',') {
            break;
        }
    }
    if !sc.at_end() {
        return err(sc.pos, "trailing input after word list");
    }
    Ok(out)
}

/// Formats a word using `*` and run-length exponents; the empty word is `1`.
pub fn format_word(w: &Word, p: &Presentation) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1usize;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let name = p.generator_name(l.gen);
        let exp = if l.inverse { -(run as i64) } else { run as i64 };
        if exp == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{exp}"));
        }
        i += run;
    }
    parts.join("*")
}

/// Formats a presentation so that parsing it back yields an equal value.
pub fn format_presentation(p: &Presentation) -> String {
    let gens: Vec<&str> = p.generators().iter().map(|g| g.name.as_str()).collect();
    let rels: Vec<String> = p.relators().iter().map(|r| format_word(r, p)).collect();
    if rels.is_empty() {
        format!("< {} | >", gens.join(", "))
    } else {
        format!("< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    #[test]
    fn parses_g2_presentation() {
        let p = parse_presentation("< a, b | a^6, b^6, a*b^2 = b*a^2 >").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 3);
        // third relator is a b^2 a^-2 b^-1
        let expect = p.parse_word("a*b^2*a^-2*b^-1").unwrap();
        assert_eq!(p.relators()[2], expect);
    }

    #[test]
    fn parses_free_group() {
        let p = parse_presentation("< a | >").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parses_commutator_sugar() {
        let p = parse_presentation("< a, b | [a,b] >").unwrap();
        let expect = Word::from_letters(alloc::vec![
            Letter::negative(0),
            Letter::negative(1),
            Letter::positive(0),
            Letter::positive(1),
        ]);
        assert_eq!(p.relators()[0], expect);
    }

    #[test]
    fn zero_exponent_yields_empty_factor() {
        let p = parse_presentation("< a, b | a^0*b^3 >").unwrap();
        assert_eq!(p.relators()[0], Word::generator(1).pow(3));
    }

    #[test]
    fn chained_relations_expand() {
        let p = parse_presentation("< a, b | a^2 = b^2 = 1 >").unwrap();
        assert_eq!(p.relators().len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_presentation("< a | b >").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.message.contains("undeclared"));
        assert!(parse_presentation("< a | a^2").is_err());
        assert!(parse_presentation("a | a^2 >").is_err());
    }

    #[test]
    fn round_trip() {
        for src in [
            "< a, b | a^6, b^6, a*b^2 = b*a^2 >",
            "< a, b | >",
            "< x | x^3 >",
            "< a, b, c | [a,b], (a*b)^4, c^-2 >",
        ] {
            let p = parse_presentation(src).unwrap();
            let q = parse_presentation(&format_presentation(&p)).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn formats_runs_as_exponents() {
        let p = parse_presentation("< a | a*a*a >").unwrap();
        assert_eq!(format_presentation(&p), "< a | a^3 >");
    }

    #[test]
    fn word_list_respects_brackets() {
        let p = Presentation::free(alloc::vec!["a", "b"]).unwrap();
        let ws = parse_word_list("[a,b], a*b, [b,a]", &p).unwrap();
        assert_eq!(ws.len(), 3);
        assert_eq!(
            ws[0],
            Word::commutator(&Word::generator(0), &Word::generator(1))
        );
    }
}
