//! Freely reduced words over the free group `F = <x, y>`.
//!
//! Text syntax: `x`, `y` for the generators and `X`, `Y` for their inverses,
//! concatenated. `XYxy` is the commutator `[x, y]`. The empty word is written
//! `1` (an empty string parses to it as well).

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

/// One of the two free generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Index 0.
    X,
    /// Index 1.
    Y,
}

impl Generator {
    /// Both generators in alphabet order `x < y`.
    pub const ALL: [Generator; 2] = [Generator::X, Generator::Y];

    /// Position in the alphabet: `x ↦ 0`, `y ↦ 1`.
    pub fn index(self) -> usize {
        match self {
            Generator::X => 0,
            Generator::Y => 1,
        }
    }

    /// Inverse of [`Generator::index`].
    pub fn from_index(index: usize) -> Option<Self> {
        match index {
            0 => Some(Generator::X),
            1 => Some(Generator::Y),
            _ => None,
        }
    }

    /// The other generator.
    pub fn other(self) -> Self {
        match self {
            Generator::X => Generator::Y,
            Generator::Y => Generator::X,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::X => "x",
            Generator::Y => "y",
        })
    }
}

/// A signed generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    /// Underlying generator.
    pub generator: Generator,
    /// `true` for `g⁻¹`.
    pub inverse: bool,
}

impl Letter {
    /// `x`
    pub const X: Letter = Letter::new(Generator::X, false);
    /// `y`
    pub const Y: Letter = Letter::new(Generator::Y, false);
    /// `x⁻¹`
    pub const X_INV: Letter = Letter::new(Generator::X, true);
    /// `y⁻¹`
    pub const Y_INV: Letter = Letter::new(Generator::Y, true);

    /// Builds a letter.
    pub const fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// The inverse letter.
    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    fn to_char(self) -> char {
        match (self.generator, self.inverse) {
            (Generator::X, false) => 'x',
            (Generator::Y, false) => 'y',
            (Generator::X, true) => 'X',
            (Generator::Y, true) => 'Y',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'x' => Letter::X,
            'y' => Letter::Y,
            'X' => Letter::X_INV,
            'Y' => Letter::Y_INV,
            _ => return None,
        })
    }
}

impl From<Generator> for Letter {
    fn from(g: Generator) -> Self {
        Letter::new(g, false)
    }
}

/// A freely reduced word: no letter is ever adjacent to its own inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The identity.
    pub fn empty() -> Self {
        Word::default()
    }

    /// A one-letter word.
    pub fn letter(l: impl Into<Letter>) -> Self {
        Word {
            letters: alloc::vec![l.into()],
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Letters of the reduced word.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Length of the reduced word.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// `true` for the identity.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends one letter, cancelling against the last letter if needed.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    /// Free reduction of the concatenation `self · other`.
    pub fn multiply(&self, other: &Word) -> Word {
        // Only the junction can cancel; both sides are already reduced.
        let mut k = 0;
        while k < self.len()
            && k < other.len()
            && self.letters[self.len() - 1 - k] == other.letters[k].inv()
        {
            k += 1;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * k);
        letters.extend_from_slice(&self.letters[..self.len() - k]);
        letters.extend_from_slice(&other.letters[k..]);
        Word { letters }
    }

    /// `u⁻¹`: reversed with every sign flipped.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `u^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse()
            .multiply(&other.inverse())
            .multiply(self)
            .multiply(other)
    }

    /// `v⁻¹ u v`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().multiply(self).multiply(by)
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word::letter(g)
    }
}

impl<'a> Mul<&'a Word> for &'a Word {
    type Output = Word;

    fn mul(self, rhs: &'a Word) -> Word {
        self.multiply(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            fmt::Write::write_char(f, l.to_char())?;
        }
        Ok(())
    }
}

/// A character outside `{x, y, X, Y}` in word text.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid letter {found:?} at position {position} (expected x, y, X or Y)")]
pub struct ParseWordError {
    /// Character offset.
    pub position: usize,
    /// Offending character.
    pub found: char,
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        let mut w = Word::empty();
        for (position, c) in s.chars().enumerate() {
            let l = Letter::from_char(c).ok_or(ParseWordError { position, found: c })?;
            w.push(l);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(w("x").multiply(&w("X")), Word::empty());
        assert_eq!(w("xy").multiply(&w("Yx")), w("xx"));
        assert_eq!(w("xy").multiply(&w("xy")).to_string(), "xyxy");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(w("xy").inverse().to_string(), "YX");
        assert_eq!(w("Xyx").inverse().to_string(), "XYx");
    }

    #[test]
    fn parse_reduces_and_rejects() {
        assert_eq!(w("xyYX"), Word::empty());
        assert_eq!(w("1"), Word::empty());
        assert_eq!(
            "xz".parse::<Word>(),
            Err(ParseWordError {
                position: 1,
                found: 'z'
            })
        );
    }

    #[test]
    fn commutator_text() {
        assert_eq!(w("x").commutator(&w("y")).to_string(), "XYxy");
        assert_eq!(w("x").commutator(&w("x")), Word::empty());
        assert_eq!(w("x").pow(-3).to_string(), "XXX");
        assert_eq!(w("y").conjugate(&w("x")).to_string(), "Xyx");
    }
}
