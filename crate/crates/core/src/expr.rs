//! Commutator expressions over words, their evaluation, and the text syntax
//! `[x^3,y,x,y]`.
//!
//! Conventions: `[a, b] = a⁻¹ b⁻¹ a b` and commutators nest to the left,
//! `[a, b, c] = [[a, b], c]`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::word::{Generator, Word};

/// A finite expression tree evaluating to an element of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorExpr {
    /// `base^exponent`.
    Leaf {
        /// The word being raised.
        base: Word,
        /// Any integer, e.g. `r` in `x^r`.
        exponent: i64,
    },
    /// `[left, right]`.
    Bracket(Box<CommutatorExpr>, Box<CommutatorExpr>),
    /// `inner^exponent`.
    Power(Box<CommutatorExpr>, i64),
    /// Left-to-right product; the empty product is the identity.
    Product(Vec<CommutatorExpr>),
}

impl CommutatorExpr {
    /// A bare generator.
    pub fn generator(g: Generator) -> Self {
        CommutatorExpr::Leaf {
            base: Word::from(g),
            exponent: 1,
        }
    }

    /// `g^exponent` as a leaf, e.g. the relator heads `x^r`, `y^s`.
    pub fn generator_power(g: Generator, exponent: i64) -> Self {
        CommutatorExpr::Leaf {
            base: Word::from(g),
            exponent,
        }
    }

    /// A word as a leaf with exponent one.
    pub fn word(base: Word) -> Self {
        CommutatorExpr::Leaf { base, exponent: 1 }
    }

    /// `[self, other]`.
    pub fn bracket(self, other: CommutatorExpr) -> Self {
        CommutatorExpr::Bracket(Box::new(self), Box::new(other))
    }

    /// `self^exponent`.
    pub fn pow(self, exponent: i64) -> Self {
        CommutatorExpr::Power(Box::new(self), exponent)
    }

    /// Left-normed `[e₁, e₂, …, e_m]`; a single item is returned unchanged.
    ///
    /// Panics on an empty iterator.
    pub fn left_normed<I: IntoIterator<Item = CommutatorExpr>>(items: I) -> Self {
        let mut it = items.into_iter();
        let first = it.next().expect("left-normed commutator needs an entry");
        it.fold(first, CommutatorExpr::bracket)
    }

    /// Structural evaluation to a reduced word.
    pub fn eval(&self) -> Word {
        match self {
            CommutatorExpr::Leaf { base, exponent } => base.pow(*exponent),
            CommutatorExpr::Bracket(a, b) => a.eval().commutator(&b.eval()),
            CommutatorExpr::Power(inner, e) => inner.eval().pow(*e),
            CommutatorExpr::Product(factors) => factors
                .iter()
                .fold(Word::empty(), |acc, f| acc.multiply(&f.eval())),
        }
    }

    /// Entries of the left-normed chain: `[a, b, c]` gives `[a, b, c]`, any
    /// non-bracket gives itself.
    pub fn left_chain(&self) -> Vec<&CommutatorExpr> {
        let mut chain = Vec::new();
        let mut cur = self;
        while let CommutatorExpr::Bracket(a, b) = cur {
            chain.push(&**b);
            cur = a;
        }
        chain.push(cur);
        chain.reverse();
        chain
    }
}

impl fmt::Display for CommutatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorExpr::Leaf { base, exponent: 1 } => write!(f, "{base}"),
            CommutatorExpr::Leaf { base, exponent } if base.len() <= 1 => {
                write!(f, "{base}^{exponent}")
            }
            CommutatorExpr::Leaf { base, exponent } => write!(f, "({base})^{exponent}"),
            CommutatorExpr::Bracket(..) => {
                f.write_str("[")?;
                for (i, e) in self.left_chain().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("]")
            }
            CommutatorExpr::Power(inner, e) => match **inner {
                CommutatorExpr::Bracket(..) => write!(f, "{inner}^{e}"),
                _ => write!(f, "({inner})^{e}"),
            },
            CommutatorExpr::Product(factors) if factors.is_empty() => f.write_str("1"),
            CommutatorExpr::Product(factors) => {
                for (i, e) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match e {
                        CommutatorExpr::Product(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Syntax error in commutator-expression text.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at position {position}")]
pub struct ParseExprError {
    /// Byte offset of the failure.
    pub position: usize,
    /// What was expected.
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: &str) -> Result<T, ParseExprError> {
        Err(ParseExprError {
            position: self.pos,
            message: message.into(),
        })
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

    fn expect(&mut self, b: u8) -> Result<(), ParseExprError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&alloc::format!("expected '{}'", b as char))
        }
    }

    fn product(&mut self) -> Result<CommutatorExpr, ParseExprError> {
        let mut factors = alloc::vec![self.term()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            CommutatorExpr::Product(factors)
        })
    }

    fn term(&mut self) -> Result<CommutatorExpr, ParseExprError> {
        let atom = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        let e = self.integer()?;
        Ok(match atom {
            CommutatorExpr::Leaf { base, exponent: 1 } => CommutatorExpr::Leaf { base, exponent: e },
            other => other.pow(e),
        })
    }

    fn integer(&mut self) -> Result<i64, ParseExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.error("expected an integer exponent"), Ok)
    }

    fn atom(&mut self) -> Result<CommutatorExpr, ParseExprError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = alloc::vec![self.product()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.product()?);
                }
                if items.len() < 2 {
                    return self.error("a commutator needs at least two entries");
                }
                self.expect(b']')?;
                Ok(CommutatorExpr::left_normed(items))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(CommutatorExpr::word(Word::empty()))
            }
            Some(b'x' | b'y' | b'X' | b'Y') => {
                let start = self.pos;
                while matches!(self.src.get(self.pos), Some(b'x' | b'y' | b'X' | b'Y')) {
                    self.pos += 1;
                }
                let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(CommutatorExpr::word(text.parse().unwrap()))
            }
            _ => self.error("expected a word, '[' or '('"),
        }
    }
}

impl FromStr for CommutatorExpr {
    type Err = ParseExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.product()?;
        if p.peek().is_some() {
            return p.error("unexpected trailing input");
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x() -> CommutatorExpr {
        CommutatorExpr::generator(Generator::X)
    }
    fn y() -> CommutatorExpr {
        CommutatorExpr::generator(Generator::Y)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(x().bracket(x()).eval(), Word::empty());
        assert_eq!(x().bracket(y()).eval().to_string(), "XYxy");
        assert_eq!(x().pow(3).eval().to_string(), "xxx");
        assert_eq!(CommutatorExpr::Product(Vec::new()).eval(), Word::empty());
    }

    #[test]
    fn bracket_is_four_pieces() {
        let a: CommutatorExpr = "[x^2,y]".parse().unwrap();
        let b: CommutatorExpr = "yx".parse().unwrap();
        let (wa, wb) = (a.eval(), b.eval());
        let expected = wa
            .inverse()
            .multiply(&wb.inverse())
            .multiply(&wa)
            .multiply(&wb);
        assert_eq!(a.bracket(b).eval(), expected);
    }

    #[test]
    fn parse_left_normed() {
        let e: CommutatorExpr = "[x^3,y,x,y]".parse().unwrap();
        let manual = CommutatorExpr::left_normed([
            CommutatorExpr::generator_power(Generator::X, 3),
            y(),
            x(),
            y(),
        ]);
        assert_eq!(e, manual);
        assert_eq!(e.to_string(), "[x^3,y,x,y]");
    }

    #[test]
    fn parse_nested_powers_products() {
        for text in ["[x,y,[x,y]]^2*x^-1", "(xy)^3", "[x,[x,y]]", "(x^2)^3", "1"] {
            let e: CommutatorExpr = text.parse().unwrap();
            assert_eq!(e.to_string(), text);
            let again: CommutatorExpr = e.to_string().parse().unwrap();
            assert_eq!(again, e);
        }
    }

    #[test]
    fn parse_errors() {
        assert!("[x]".parse::<CommutatorExpr>().is_err());
        assert!("[x,y".parse::<CommutatorExpr>().is_err());
        assert!("x^".parse::<CommutatorExpr>().is_err());
        assert!("z".parse::<CommutatorExpr>().is_err());
        assert!("x y".parse::<CommutatorExpr>().is_err());
    }
}
