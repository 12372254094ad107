use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One letter of a free-power word: the generator `g` or its conjugate `ḡ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    G,
    GBar,
}

impl Letter {
    pub fn bar(self) -> Self {
        match self {
            Letter::G => Letter::GBar,
            Letter::GBar => Letter::G,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::G => 'g',
            Letter::GBar => 'G',
        }
    }
}

/// Word over `{g, ḡ}`; the empty word is the unit. Ordered length first,
/// then lexicographically with `g < ḡ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn power(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse the word and swap `g ↔ ḡ`.
    pub fn conjugate(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.bar()).collect())
    }

    /// `Some((letter, n))` when the word is `letter^n` with `n ≥ 1`.
    pub fn as_power(&self) -> Option<(Letter, usize)> {
        let first = *self.0.first()?;
        self.0
            .iter()
            .all(|&l| l == first)
            .then_some((first, self.0.len()))
    }

    /// Accepts `g`, `G`/`ḡ` for the conjugate letter; `1`, `e` or the empty
    /// string for the unit.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "e" {
            return Some(Word::unit());
        }
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                'g' => letters.push(Letter::G),
                'G' | 'ḡ' => letters.push(Letter::GBar),
                // combining macron after a plain g
                '\u{0304}' => match letters.last_mut() {
                    Some(l @ Letter::G) => *l = Letter::GBar,
                    _ => return None,
                },
                _ => return None,
            }
        }
        Some(Word(letters))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid word `{s}`")))
    }
}

/// Identifier of an irreducible representation.
///
/// The derived order is the canonical order used by every report: spins by
/// integer, words length-then-lex, table keys lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrrepLabel {
    /// `u_r`, the `(r+1)`-dimensional irrep of an SU(2)-type system.
    Spin(u32),
    Word(Word),
    Key(String),
}

impl IrrepLabel {
    pub fn spin(r: u32) -> Self {
        IrrepLabel::Spin(r)
    }

    pub fn word(s: &str) -> Self {
        IrrepLabel::Word(Word::parse(s).unwrap_or_else(|| panic!("invalid word `{s}`")))
    }

    pub fn key(s: impl Into<String>) -> Self {
        IrrepLabel::Key(s.into())
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Spin(r) => write!(f, "u{r}"),
            IrrepLabel::Word(w) => write!(f, "{w}"),
            IrrepLabel::Key(k) => write!(f, "{k}"),
        }
    }
}
