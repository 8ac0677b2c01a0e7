//! Truncated noncommutative power series in `X`, `Y` with integer
//! coefficients, and the Magnus embedding `x ↦ 1 + X`, `y ↦ 1 + Y`.
//!
//! By Magnus' theorem a word lies in `γ_k(F)` exactly when its expansion is
//! `1 + (terms of degree ≥ k)`, so the series here decide every
//! "congruent modulo `γ_k(F)`" question in the crate.
//!
//! Storage is dense: a series truncated at degree `cap` keeps one slot per
//! monomial of length `≤ cap`, laid out by length and then lexicographically
//! (`X < Y`). Slot order therefore coincides with the printing order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::expr::CommutatorExpr;
use crate::word::{Generator, Word};
use crate::{Int, MAX_CAP};

/// Errors raised by series arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MagnusError {
    /// Inversion or a negative power of a series whose constant term is not one.
    #[error("not a unit with constant term one")]
    NotUnit,
    /// The requested degree cap is outside `1..=MAX_CAP`.
    #[error("degree cap {cap} outside the supported range 1..={max}", max = MAX_CAP)]
    Cap {
        /// Requested cap.
        cap: usize,
    },
}

pub(crate) fn check_cap(cap: usize) -> Result<(), MagnusError> {
    if (1..=MAX_CAP).contains(&cap) {
        Ok(())
    } else {
        Err(MagnusError::Cap { cap })
    }
}

#[inline]
fn offset(degree: usize) -> usize {
    (1 << degree) - 1
}

/// A string over `{X, Y}` of length at most [`MAX_CAP`].
///
/// Ordered by length, then lexicographically with `X < Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    len: u8,
    // First letter in the most significant position; X = 0, Y = 1.
    bits: u16,
}

impl Monomial {
    /// The empty monomial `1`.
    pub const ONE: Monomial = Monomial { len: 0, bits: 0 };

    /// Monomial from its letters, or `None` if longer than [`MAX_CAP`].
    pub fn new(letters: &[Generator]) -> Option<Self> {
        if letters.len() > MAX_CAP {
            return None;
        }
        let bits = letters
            .iter()
            .fold(0u16, |acc, g| (acc << 1) | g.index() as u16);
        Some(Monomial {
            len: letters.len() as u8,
            bits,
        })
    }

    /// Parses `XY`-style text; `1` or the empty string is [`Monomial::ONE`].
    pub fn parse(text: &str) -> Option<Self> {
        if text == "1" {
            return Some(Monomial::ONE);
        }
        let letters: Option<Vec<Generator>> = text
            .chars()
            .map(|c| match c {
                'X' => Some(Generator::X),
                'Y' => Some(Generator::Y),
                _ => None,
            })
            .collect();
        Monomial::new(&letters?)
    }

    pub(crate) fn from_parts(len: usize, bits: usize) -> Self {
        debug_assert!(len <= MAX_CAP && bits < (1 << len));
        Monomial {
            len: len as u8,
            bits: bits as u16,
        }
    }

    /// Number of letters (the degree).
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// `true` for [`Monomial::ONE`].
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Position among monomials of the same length (binary encoding).
    pub fn bits(&self) -> usize {
        self.bits as usize
    }

    /// Letters left to right.
    pub fn letters(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.len()).map(move |i| {
            let bit = (self.bits >> (self.len() - 1 - i)) & 1;
            Generator::from_index(bit as usize).unwrap()
        })
    }

    fn index(&self) -> usize {
        offset(self.len()) + self.bits()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for g in self.letters() {
            f.write_str(match g {
                Generator::X => "X",
                Generator::Y => "Y",
            })?;
        }
        Ok(())
    }
}

/// A noncommutative integer power series in `X`, `Y` with every monomial of
/// degree above `cap` discarded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    cap: usize,
    coeffs: Vec<Int>,
}

impl TruncatedSeries {
    /// The zero series.
    pub fn zero(cap: usize) -> Self {
        assert!(cap <= MAX_CAP, "degree cap {cap} exceeds {MAX_CAP}");
        TruncatedSeries {
            cap,
            coeffs: vec![Int::zero(); offset(cap + 1)],
        }
    }

    /// The constant series `1`.
    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = Int::one();
        s
    }

    /// `1 + X` or `1 + Y`.
    pub fn generator(g: Generator, cap: usize) -> Self {
        let mut s = Self::one(cap);
        if cap >= 1 {
            s.coeffs[1 + g.index()] = Int::one();
        }
        s
    }

    /// Sums the given terms, dropping monomials beyond `cap`.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Int)>>(cap: usize, terms: I) -> Self {
        let mut s = Self::zero(cap);
        for (m, c) in terms {
            if m.len() <= cap {
                s.coeffs[m.index()] += c;
            }
        }
        s
    }

    /// Maximum retained degree.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Coefficient of `m` (zero beyond the cap).
    pub fn coefficient(&self, m: &Monomial) -> Int {
        if m.len() <= self.cap {
            self.coeffs[m.index()].clone()
        } else {
            Int::zero()
        }
    }

    /// Constant term.
    pub fn constant(&self) -> &Int {
        &self.coeffs[0]
    }

    /// Coefficients of the monomials of one degree, indexed by
    /// [`Monomial::bits`]. Empty beyond the cap.
    pub fn component(&self, degree: usize) -> &[Int] {
        if degree > self.cap {
            return &[];
        }
        &self.coeffs[offset(degree)..offset(degree + 1)]
    }

    /// Nonzero terms in length-then-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Int)> + '_ {
        (0..=self.cap).flat_map(move |d| {
            self.component(d)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(bits, c)| (Monomial::from_parts(d, bits), c))
        })
    }

    /// `true` if every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `true` for the series `1`.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Smallest degree `d ≥ 1` carrying a nonzero coefficient, if any.
    pub fn order(&self) -> Option<usize> {
        (1..=self.cap).find(|&d| self.component(d).iter().any(|c| !c.is_zero()))
    }

    /// Drops all terms above `cap` (which must not exceed the current cap).
    pub fn truncate(&self, cap: usize) -> Self {
        assert!(cap <= self.cap);
        TruncatedSeries {
            cap,
            coeffs: self.coeffs[..offset(cap + 1)].to_vec(),
        }
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &Int) -> Self {
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Truncated product. Both operands must share the same cap.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.cap, other.cap, "series cap mismatch");
        product_upto(self, other, self.cap)
    }

    /// Multiplicative inverse of a series with constant term one.
    pub fn inverse(&self) -> Result<Self, MagnusError> {
        if !self.constant().is_one() {
            return Err(MagnusError::NotUnit);
        }
        Ok(inverse_upto(self, self.cap))
    }

    /// `self^e` for any integer `e`, via the binomial series in `self − 1`.
    pub fn pow(&self, e: &Int) -> Result<Self, MagnusError> {
        if !self.constant().is_one() {
            if e.is_negative() {
                return Err(MagnusError::NotUnit);
            }
            let mut acc = Self::one(self.cap);
            let mut k = Int::zero();
            while &k < e {
                acc = acc.multiply(self);
                k += 1;
            }
            return Ok(acc);
        }
        let mut aug = self.clone();
        aug.coeffs[0] = Int::zero();
        let Some(ord) = aug.order() else {
            return Ok(Self::one(self.cap));
        };
        let mut acc = Self::one(self.cap);
        let mut power = Self::one(self.cap);
        let mut binom = Int::one();
        for k in 1..=self.cap / ord {
            // C(e, k) = C(e, k-1) · (e - k + 1) / k, exact at every step.
            binom *= e - Int::from(k - 1);
            binom = binom.div_floor(&Int::from(k));
            power = product_upto(&power, &aug, self.cap);
            if !binom.is_zero() {
                acc.add_scaled(&power, &binom);
            }
        }
        Ok(acc)
    }

    /// Group commutator `[a, b] = a⁻¹ b⁻¹ a b` of two unit series.
    pub fn commutator(&self, other: &Self) -> Result<Self, MagnusError> {
        assert_eq!(self.cap, other.cap, "series cap mismatch");
        if !self.constant().is_one() || !other.constant().is_one() {
            return Err(MagnusError::NotUnit);
        }
        Ok(commutator_units(self, other))
    }

    fn add_scaled(&mut self, other: &Self, k: &Int) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * k;
            }
        }
    }
}

/// Product keeping only degrees `≤ upto`; slots above stay zero.
pub(crate) fn product_upto(a: &TruncatedSeries, b: &TruncatedSeries, upto: usize) -> TruncatedSeries {
    let cap = a.cap;
    let mut out = TruncatedSeries::zero(cap);
    let upto = upto.min(cap);
    let a_live: Vec<bool> = (0..=cap).map(|d| a.component(d).iter().any(|c| !c.is_zero())).collect();
    let b_live: Vec<bool> = (0..=cap).map(|d| b.component(d).iter().any(|c| !c.is_zero())).collect();
    for da in (0..=upto).filter(|&d| a_live[d]) {
        for db in (0..=upto - da).filter(|&d| b_live[d]) {
            let target = offset(da + db);
            let bc = b.component(db);
            for (ia, ca) in a.component(da).iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let base = target + (ia << db);
                for (ib, cb) in bc.iter().enumerate() {
                    if !cb.is_zero() {
                        out.coeffs[base + ib] += ca * cb;
                    }
                }
            }
        }
    }
    out
}

/// Inverse of a series with constant term one, correct through degree `upto`.
fn inverse_upto(a: &TruncatedSeries, upto: usize) -> TruncatedSeries {
    let cap = a.cap;
    let upto = upto.min(cap);
    let mut out = TruncatedSeries::one(cap);
    // out_d = -Σ_{i=1..d} a_i · out_{d-i}
    for d in 1..=upto {
        for i in 1..=d {
            let j = d - i;
            let ai = a.component(i);
            if ai.iter().all(Zero::is_zero) {
                continue;
            }
            let (lower, upper) = out.coeffs.split_at_mut(offset(d));
            let oj = &lower[offset(j)..offset(j + 1)];
            let target = &mut upper[..1 << d];
            for (ia, ca) in ai.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let base = ia << j;
                for (ib, cb) in oj.iter().enumerate() {
                    if !cb.is_zero() {
                        target[base + ib] -= ca * cb;
                    }
                }
            }
        }
    }
    out
}

/// `[A, B] = 1 + A⁻¹B⁻¹(ab − ba)` where `A = 1 + a`, `B = 1 + b`.
///
/// Since `ab − ba` starts in degree `ord(a) + ord(b)`, the inverses are only
/// needed through the remaining `cap − ord(a) − ord(b)` degrees.
pub(crate) fn commutator_units(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let cap = a.cap;
    let (Some(pa), Some(pb)) = (a.order(), b.order()) else {
        return TruncatedSeries::one(cap);
    };
    if pa + pb > cap {
        return TruncatedSeries::one(cap);
    }
    let mut aa = a.clone();
    aa.coeffs[0] = Int::zero();
    let mut bb = b.clone();
    bb.coeffs[0] = Int::zero();
    let ab = product_upto(&aa, &bb, cap);
    let ba = product_upto(&bb, &aa, cap);
    let diff = &ab - &ba;
    let rest = cap - pa - pb;
    let prefix = product_upto(&inverse_upto(a, rest), &inverse_upto(b, rest), rest);
    let mut out = product_upto(&prefix, &diff, cap);
    out.coeffs[0] += 1;
    out
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        assert_eq!(self.cap, rhs.cap, "series cap mismatch");
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        assert_eq!(self.cap, rhs.cap, "series cap mismatch");
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (m.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[cap {}]({self})", self.cap)
    }
}

/// Where a word sits in the lower central series, as seen through a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LcsClass {
    /// The word lies in `γ_d(F) \ γ_{d+1}(F)`.
    Exact(usize),
    /// The word lies in `γ_{cap+1}(F)`.
    BeyondCap,
}

impl LcsClass {
    /// `true` if the word lies in `γ_k(F)`; `k` must not exceed `cap + 1`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            LcsClass::Exact(d) => d >= k,
            LcsClass::BeyondCap => true,
        }
    }
}

impl fmt::Display for LcsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsClass::Exact(d) => write!(f, "{d}"),
            LcsClass::BeyondCap => f.write_str("beyond cap"),
        }
    }
}

/// Magnus image of a word, truncated at `cap`.
pub fn magnus_expand(w: &Word, cap: usize) -> Result<TruncatedSeries, MagnusError> {
    check_cap(cap)?;
    let mut gens = [
        [TruncatedSeries::generator(Generator::X, cap), TruncatedSeries::one(cap)],
        [TruncatedSeries::generator(Generator::Y, cap), TruncatedSeries::one(cap)],
    ];
    for g in gens.iter_mut() {
        g[1] = g[0].inverse()?;
    }
    Ok(w.letters().iter().fold(TruncatedSeries::one(cap), |acc, l| {
        acc.multiply(&gens[l.generator.index()][l.inverse as usize])
    }))
}

/// Magnus image of an expression, computed homomorphically without
/// evaluating it to a word first.
pub fn expand_expr(e: &CommutatorExpr, cap: usize) -> Result<TruncatedSeries, MagnusError> {
    check_cap(cap)?;
    Ok(match e {
        CommutatorExpr::Leaf { base, exponent } => {
            magnus_expand(base, cap)?.pow(&Int::from(*exponent))?
        }
        CommutatorExpr::Bracket(a, b) => commutator_units(&expand_expr(a, cap)?, &expand_expr(b, cap)?),
        CommutatorExpr::Power(inner, k) => expand_expr(inner, cap)?.pow(&Int::from(*k))?,
        CommutatorExpr::Product(factors) => {
            let mut acc = TruncatedSeries::one(cap);
            for f in factors {
                acc = acc.multiply(&expand_expr(f, cap)?);
            }
            acc
        }
    })
}

/// Lower-central-series class of `w` as decided through degree `cap`.
pub fn lcs_class(w: &Word, cap: usize) -> Result<LcsClass, MagnusError> {
    Ok(series_class(&magnus_expand(w, cap)?))
}

/// Class of a unit series: the order of `s − 1`.
pub fn series_class(s: &TruncatedSeries) -> LcsClass {
    s.order().map_or(LcsClass::BeyondCap, LcsClass::Exact)
}
