//! Basic commutators realized as Lyndon words with their standard bracketing.
//!
//! Words are sequences of letter indices over an ordered alphabet
//! `0 < 1 < … < k−1`. On two letters index 0 is `x` and index 1 is `y`.
//! Bases are ordered by weight, then lexicographically.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::expr::CommutatorExpr;
use crate::word::Generator;
use crate::Int;

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn letter_name(l: u8) -> String {
    match NAMES.get(l as usize) {
        Some(n) => String::from(*n),
        None => alloc::format!("g{l}"),
    }
}

/// Number of Lyndon words of length `weight` over `letters` letters, which is
/// the rank of the degree-`weight` part of the free Lie ring (Witt's formula).
///
/// Panics if `letters^weight` overflows `u128`.
pub fn witt_rank(weight: usize, letters: usize) -> u64 {
    assert!(weight >= 1 && letters >= 1, "weight and letters must be positive");
    let k = letters as u128;
    let mut total: i128 = 0;
    for d in (1..=weight).filter(|d| weight.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = k
            .checked_pow((weight / d) as u32)
            .expect("witt rank overflows u128") as i128;
        total += mu as i128 * term;
    }
    (total / weight as i128) as u64
}

fn mobius(mut n: usize) -> i8 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `true` if `w` is nonempty and strictly smaller than each proper suffix.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of exactly `weight` letters, lexicographically.
pub fn lyndon_words(weight: usize, letters: usize) -> Vec<Vec<u8>> {
    assert!(letters <= u8::MAX as usize);
    let mut out = Vec::new();
    if weight == 0 || letters == 0 {
        return out;
    }
    // Duval's successor: yields every Lyndon word of length ≤ weight in order.
    let top = (letters - 1) as u8;
    let mut w: Vec<u8> = alloc::vec![0];
    loop {
        if w.len() == weight {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < weight {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

/// A bracketing tree over letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bracketing {
    /// A single letter.
    Letter(u8),
    /// `[left, right]`.
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    /// Number of leaves.
    pub fn weight(&self) -> usize {
        match self {
            Bracketing::Letter(_) => 1,
            Bracketing::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    /// The expression tree on two letters; `None` if a letter beyond `y` occurs.
    pub fn to_expr(&self) -> Option<CommutatorExpr> {
        Some(match self {
            Bracketing::Letter(l) => CommutatorExpr::generator(Generator::from_index(*l as usize)?),
            Bracketing::Bracket(a, b) => a.to_expr()?.bracket(b.to_expr()?),
        })
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracketing::Letter(l) => f.write_str(&letter_name(*l)),
            Bracketing::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// A Lyndon word together with its standard bracketing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LyndonCommutator {
    word: Vec<u8>,
    bracketing: Bracketing,
}

impl LyndonCommutator {
    /// Builds the basic commutator of a Lyndon word; `None` if `word` is not Lyndon.
    pub fn new(word: &[u8]) -> Option<Self> {
        if !is_lyndon(word) {
            return None;
        }
        Some(LyndonCommutator {
            word: word.to_vec(),
            bracketing: standard_bracketing(word),
        })
    }

    /// The underlying Lyndon word.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Word length.
    pub fn weight(&self) -> usize {
        self.word.len()
    }

    /// The standard bracketing.
    pub fn bracketing(&self) -> &Bracketing {
        &self.bracketing
    }

    /// The word spelled with letter names, e.g. `xxy`.
    pub fn word_text(&self) -> String {
        self.word.iter().map(|&l| letter_name(l)).collect()
    }
}

impl fmt::Display for LyndonCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bracketing)
    }
}

/// `w = uv` with `v` the longest proper Lyndon suffix, bracketed recursively.
fn standard_bracketing(w: &[u8]) -> Bracketing {
    if w.len() == 1 {
        return Bracketing::Letter(w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a Lyndon word of length ≥ 2 has a proper Lyndon suffix");
    Bracketing::Bracket(
        Box::new(standard_bracketing(&w[..split])),
        Box::new(standard_bracketing(&w[split..])),
    )
}

/// Basic commutators of one weight in lexicographic order of their words.
pub fn enumerate_basis(weight: usize, letters: usize) -> Vec<LyndonCommutator> {
    lyndon_words(weight, letters)
        .into_iter()
        .map(|w| LyndonCommutator {
            bracketing: standard_bracketing(&w),
            word: w,
        })
        .collect()
}

/// A homogeneous noncommutative polynomial of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    weight: usize,
    letters: usize,
    coefficients: BTreeMap<Vec<u8>, Int>,
}

/// `lie_coordinates` found a nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not a Lie element")]
pub struct NotLieElement;

impl LieElement {
    /// The zero element of degree `weight` over `letters` letters.
    pub fn zero(weight: usize, letters: usize) -> Self {
        LieElement {
            weight,
            letters,
            coefficients: BTreeMap::new(),
        }
    }

    /// Degree.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Alphabet size.
    pub fn letters(&self) -> usize {
        self.letters
    }

    /// Adds `c` to the coefficient of `monomial` (which must have length `weight`).
    pub fn add_term(&mut self, monomial: &[u8], c: &Int) {
        assert_eq!(monomial.len(), self.weight, "monomial degree mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(monomial.to_vec()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(monomial);
        }
    }

    /// Adds `k · other`.
    pub fn add_scaled(&mut self, other: &LieElement, k: &Int) {
        for (m, c) in &other.coefficients {
            self.add_term(m, &(c * k));
        }
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, monomial: &[u8]) -> Int {
        self.coefficients.get(monomial).cloned().unwrap_or_default()
    }

    /// Nonzero terms in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Int)> {
        self.coefficients.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// `true` if all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

fn expand(b: &Bracketing, letters: usize) -> LieElement {
    match b {
        Bracketing::Letter(l) => {
            let mut e = LieElement::zero(1, letters);
            e.add_term(&[*l], &Int::from(1));
            e
        }
        Bracketing::Bracket(u, v) => {
            let (eu, ev) = (expand(u, letters), expand(v, letters));
            let mut out = LieElement::zero(eu.weight + ev.weight, letters);
            let mut m = Vec::with_capacity(out.weight);
            for (mu, cu) in eu.terms() {
                for (mv, cv) in ev.terms() {
                    let c = cu * cv;
                    m.clear();
                    m.extend_from_slice(mu);
                    m.extend_from_slice(mv);
                    out.add_term(&m, &c);
                    m.clear();
                    m.extend_from_slice(mv);
                    m.extend_from_slice(mu);
                    out.add_term(&m, &-c);
                }
            }
            out
        }
    }
}

/// Associative expansion of the bracketing, `[u, v] ↦ uv − vu`.
///
/// The alphabet size recorded on the result is the smallest one containing
/// every letter, and at least two.
pub fn lie_bracket_expansion(b: &LyndonCommutator) -> LieElement {
    let letters = (b.word.iter().copied().max().unwrap_or(0) as usize + 1).max(2);
    expand(&b.bracketing, letters)
}

/// Coordinates of a Lie element in the Lyndon basis of its degree.
///
/// Eliminates in increasing lexicographic order: every expansion has
/// coefficient one on its own Lyndon word and otherwise only larger monomials.
pub fn lie_coordinates(e: &LieElement) -> Result<Vec<(LyndonCommutator, Int)>, NotLieElement> {
    let mut residual = e.clone();
    let mut out = Vec::new();
    for b in enumerate_basis(e.weight, e.letters) {
        let alpha = residual.coefficient(&b.word);
        if alpha.is_zero() {
            continue;
        }
        residual.add_scaled(&expand(&b.bracketing, e.letters), &-&alpha);
        out.push((b, alpha));
    }
    if residual.is_zero() {
        Ok(out)
    } else {
        Err(NotLieElement)
    }
}
