//! Exponent coordinates of elements of `γ_low(F)` modulo `γ_{high+1}(F)` over
//! the ordered basic-commutator basis of weights `low..=high`.
//!
//! Coordinates are found by peeling: the lowest nonzero degree of the Magnus
//! expansion is a Lie element, its Lyndon coordinates are the exponents of
//! that weight, and dividing those basic-commutator powers out pushes the
//! residual one weight deeper. When `2·low > high` the quotient is central
//! and the peeling collapses to linear algebra on `M(g) − 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::expr::CommutatorExpr;
use crate::lyndon::{enumerate_basis, lie_bracket_expansion, Bracketing, LyndonCommutator, NotLieElement};
use crate::magnus::{self, commutator_units, series_class, LcsClass, MagnusError, TruncatedSeries};
use crate::word::{Generator, Word};
use crate::Int;

/// Errors from coordinate extraction.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NilformError {
    /// The element is not in `γ_low(F)`.
    #[error("element not in γ_{low} (lower central class {class})")]
    NotInLowerTerm {
        /// Requested lower weight.
        low: usize,
        /// Class actually found.
        class: LcsClass,
    },
    /// `low..=high` is empty, starts at zero, or exceeds the basis cap.
    #[error("weight range {low}..={high} not supported with cap {cap}")]
    Range {
        /// Lower weight.
        low: usize,
        /// Upper weight.
        high: usize,
        /// Available cap.
        cap: usize,
    },
    /// A peeled component was not a Lie element; indicates a bug upstream.
    #[error("internal error: {0}")]
    Internal(#[from] NotLieElement),
    /// Series arithmetic failed.
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

/// Basic commutators of one weight, with the data needed to solve for
/// Lyndon coordinates in a dense degree component.
#[derive(Clone, Debug)]
pub struct BasisLevel {
    commutators: Vec<LyndonCommutator>,
    // Position of each Lyndon word inside the degree component.
    word_bits: Vec<usize>,
    // Sparse associative expansion of each bracketing.
    expansions: Vec<Vec<(usize, Int)>>,
    series: Vec<TruncatedSeries>,
}

impl BasisLevel {
    /// Basic commutators of this weight, lexicographic.
    pub fn commutators(&self) -> &[LyndonCommutator] {
        &self.commutators
    }

    /// Magnus expansion of each basic commutator.
    pub fn series(&self) -> &[TruncatedSeries] {
        &self.series
    }

    /// Lyndon coordinates of a Lie element given as a dense degree component.
    fn solve(&self, component: &[Int]) -> Result<Vec<Int>, NotLieElement> {
        let mut residual = component.to_vec();
        let mut out = vec![Int::zero(); self.commutators.len()];
        for (i, &bits) in self.word_bits.iter().enumerate() {
            let alpha = residual[bits].clone();
            if alpha.is_zero() {
                continue;
            }
            for (m, c) in &self.expansions[i] {
                residual[*m] -= &alpha * c;
            }
            out[i] = alpha;
        }
        if residual.iter().all(Zero::is_zero) {
            Ok(out)
        } else {
            Err(NotLieElement)
        }
    }
}

/// The ordered basic-commutator basis of weights `1..=cap` on `x`, `y`, with
/// every basis element's Magnus expansion truncated at `cap`.
#[derive(Clone, Debug)]
pub struct NilpotentBasis {
    cap: usize,
    levels: Vec<BasisLevel>,
}

fn bits_of(word: &[u8]) -> usize {
    word.iter().fold(0, |acc, &l| (acc << 1) | l as usize)
}

impl NilpotentBasis {
    /// Builds the basis through weight `cap`.
    pub fn new(cap: usize) -> Result<Self, MagnusError> {
        magnus::check_cap(cap)?;
        let mut known: BTreeMap<Vec<u8>, TruncatedSeries> = BTreeMap::new();
        let mut levels = Vec::with_capacity(cap);
        for weight in 1..=cap {
            let commutators = enumerate_basis(weight, 2);
            let mut level = BasisLevel {
                word_bits: commutators.iter().map(|b| bits_of(b.word())).collect(),
                expansions: Vec::with_capacity(commutators.len()),
                series: Vec::with_capacity(commutators.len()),
                commutators: Vec::new(),
            };
            for b in &commutators {
                let lie = lie_bracket_expansion(b);
                level
                    .expansions
                    .push(lie.terms().map(|(m, c)| (bits_of(m), c.clone())).collect());
                let s = match b.bracketing() {
                    Bracketing::Letter(l) => {
                        let g = Generator::from_index(*l as usize).unwrap();
                        TruncatedSeries::generator(g, cap)
                    }
                    Bracketing::Bracket(u, v) => {
                        let su = &known[&leaf_word(u)];
                        let sv = &known[&leaf_word(v)];
                        commutator_units(su, sv)
                    }
                };
                known.insert(b.word().to_vec(), s.clone());
                level.series.push(s);
            }
            level.commutators = commutators;
            levels.push(level);
        }
        Ok(NilpotentBasis { cap, levels })
    }

    /// Largest weight covered.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Data for one weight (`1..=cap`).
    pub fn level(&self, weight: usize) -> &BasisLevel {
        &self.levels[weight - 1]
    }

    /// Number of basis elements of weights `low..=high`.
    pub fn dimension(&self, low: usize, high: usize) -> usize {
        (low..=high).map(|w| self.level(w).commutators.len()).sum()
    }

    /// The basis elements of weights `low..=high` in coordinate order.
    pub fn labels(&self, low: usize, high: usize) -> Vec<&LyndonCommutator> {
        (low..=high)
            .flat_map(|w| self.level(w).commutators.iter())
            .collect()
    }

    fn check_range(&self, low: usize, high: usize) -> Result<(), NilformError> {
        if low == 0 || low > high || high > self.cap {
            return Err(NilformError::Range {
                low,
                high,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Coordinates of a unit series (the Magnus image of some element).
    pub fn series_coordinates(
        &self,
        s: &TruncatedSeries,
        low: usize,
        high: usize,
    ) -> Result<CoordinateVector, NilformError> {
        self.check_range(low, high)?;
        assert_eq!(s.cap(), self.cap, "series cap must match the basis cap");
        if !s.constant().is_one() {
            return Err(MagnusError::NotUnit.into());
        }
        let class = series_class(s);
        if !class.at_least(low) {
            return Err(NilformError::NotInLowerTerm { low, class });
        }
        let mut entries = Vec::with_capacity(self.dimension(low, high));
        if 2 * low > high {
            // Central range: M(g) − 1 = Σ eᵢ (M(bᵢ) − 1) through degree `high`.
            let mut residual = s.clone();
            for w in low..=high {
                let level = self.level(w);
                let exps = level.solve(residual.component(w))?;
                for (e, sb) in exps.iter().zip(&level.series) {
                    if !e.is_zero() {
                        let delta = (sb - &TruncatedSeries::one(self.cap)).scale(e);
                        residual = &residual - &delta;
                    }
                }
                entries.extend(exps);
            }
        } else {
            let mut residual = s.clone();
            for w in low..=high {
                let level = self.level(w);
                let exps = level.solve(residual.component(w))?;
                for (e, sb) in exps.iter().zip(&level.series) {
                    if !e.is_zero() {
                        residual = sb.pow(&-e)?.multiply(&residual);
                    }
                }
                if residual.component(w).iter().any(|c| !c.is_zero()) {
                    return Err(NotLieElement.into());
                }
                entries.extend(exps);
            }
        }
        Ok(CoordinateVector { low, high, entries })
    }

    /// Magnus image of `Π bᵢ^{eᵢ}` in basis order.
    pub fn series_of(&self, v: &CoordinateVector) -> Result<TruncatedSeries, NilformError> {
        self.check_range(v.low, v.high)?;
        let mut acc = TruncatedSeries::one(self.cap);
        let mut k = 0;
        for w in v.low..=v.high {
            for sb in &self.level(w).series {
                let e = &v.entries[k];
                if !e.is_zero() {
                    acc = acc.multiply(&sb.pow(e)?);
                }
                k += 1;
            }
        }
        Ok(acc)
    }
}

fn leaf_word(b: &Bracketing) -> Vec<u8> {
    match b {
        Bracketing::Letter(l) => vec![*l],
        Bracketing::Bracket(u, v) => {
            let mut w = leaf_word(u);
            w.extend(leaf_word(v));
            w
        }
    }
}

/// Integer exponents over the concatenated bases of weights `low..=high`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateVector {
    low: usize,
    high: usize,
    entries: Vec<Int>,
}

impl CoordinateVector {
    /// Checked constructor: `entries` must have one slot per basis element.
    pub fn new(low: usize, high: usize, entries: Vec<Int>) -> Option<Self> {
        if low == 0 || low > high {
            return None;
        }
        let dim: u64 = (low..=high).map(|w| crate::lyndon::witt_rank(w, 2)).sum();
        (entries.len() as u64 == dim).then_some(CoordinateVector { low, high, entries })
    }

    /// The zero vector.
    pub fn zero(low: usize, high: usize) -> Option<Self> {
        let dim: u64 = (low..=high).map(|w| crate::lyndon::witt_rank(w, 2)).sum();
        Self::new(low, high, vec![Int::zero(); dim as usize])
    }

    /// Lowest weight.
    pub fn low(&self) -> usize {
        self.low
    }

    /// Highest weight.
    pub fn high(&self) -> usize {
        self.high
    }

    /// All exponents.
    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    /// Consumes the vector, returning its exponents.
    pub fn into_entries(self) -> Vec<Int> {
        self.entries
    }

    /// Exponents of the basic commutators of one weight.
    pub fn segment(&self, weight: usize) -> &[Int] {
        assert!((self.low..=self.high).contains(&weight));
        let start: u64 = (self.low..weight).map(|w| crate::lyndon::witt_rank(w, 2)).sum();
        let len = crate::lyndon::witt_rank(weight, 2);
        &self.entries[start as usize..(start + len) as usize]
    }

    /// `true` if every exponent vanishes.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Coordinates of `g ∈ γ_low(F)` modulo `γ_{high+1}(F)`.
pub fn coordinates(g: &Word, low: usize, high: usize) -> Result<CoordinateVector, NilformError> {
    if low == 0 || low > high {
        return Err(NilformError::Range { low, high, cap: high });
    }
    let basis = NilpotentBasis::new(high)?;
    let s = magnus::magnus_expand(g, high)?;
    basis.series_coordinates(&s, low, high)
}

/// The word `Π bᵢ^{eᵢ}` in basis order.
///
/// Panics if an exponent does not fit in `i64`.
pub fn from_coordinates(v: &CoordinateVector) -> Word {
    let mut out = Word::empty();
    let mut k = 0;
    for w in v.low..=v.high {
        for b in enumerate_basis(w, 2) {
            let e = &v.entries[k];
            k += 1;
            if e.is_zero() {
                continue;
            }
            let e: i64 = e.try_into().expect("exponent too large to spell as a word");
            let expr: CommutatorExpr = b.bracketing().to_expr().unwrap();
            out = out.multiply(&expr.eval().pow(e));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn expr(s: &str) -> CommutatorExpr {
        s.parse().unwrap()
    }

    #[test]
    fn coordinate_examples() {
        let g = expr("[x,y]^3").eval();
        assert_eq!(coordinates(&g, 2, 2).unwrap().entries(), ints(&[3]));
        let g = expr("[x^2,y]").eval();
        assert_eq!(coordinates(&g, 2, 2).unwrap().entries(), ints(&[2]));
        // [x²,y] = [x,y]^x [x,y] ≡ [x,y]² [[x,y],x] and [[x,y],x] = [x,[x,y]]⁻¹.
        let v = coordinates(&g, 2, 3).unwrap();
        assert_eq!(v.entries(), ints(&[2, -1, 0]));
        assert_eq!(v.segment(3), ints(&[-1, 0]));
    }

    #[test]
    fn from_coordinates_examples() {
        assert_eq!(from_coordinates(&CoordinateVector::zero(2, 3).unwrap()), Word::empty());
        let v = CoordinateVector::new(2, 2, ints(&[1])).unwrap();
        assert_eq!(from_coordinates(&v), "XYxy".parse().unwrap());
        let v = CoordinateVector::new(2, 3, ints(&[0, 2, 0])).unwrap();
        assert_eq!(from_coordinates(&v), expr("[x,[x,y]]^2").eval());
    }

    #[test]
    fn precondition_and_range_errors() {
        let x: Word = "x".parse().unwrap();
        assert_eq!(
            coordinates(&x, 2, 3),
            Err(NilformError::NotInLowerTerm {
                low: 2,
                class: LcsClass::Exact(1)
            })
        );
        assert!(matches!(coordinates(&x, 3, 2), Err(NilformError::Range { .. })));
        assert!(CoordinateVector::new(2, 3, ints(&[1, 2])).is_none());
    }

    #[test]
    fn general_peeling_outside_central_range() {
        // Weights 1..=4 are not central; x²y⁻¹[x,y]⁵ must still round-trip.
        let v = CoordinateVector::new(1, 4, ints(&[2, -1, 5, 0, 1, 0, -2, 3])).unwrap();
        let w = from_coordinates(&v);
        assert_eq!(coordinates(&w, 1, 4).unwrap(), v);
    }

    #[test]
    fn linear_and_multiplicative_agree() {
        let basis = NilpotentBasis::new(7).unwrap();
        let g = expr("[x^3,y,x,[x,y]]*[y^2,x,x,y]^-1").eval();
        let s = magnus::magnus_expand(&g, 7).unwrap();
        // 2·4 > 7 takes the linear route; the 3..=7 range takes the general one.
        let central = basis.series_coordinates(&s, 4, 7).unwrap();
        let general = basis.series_coordinates(&s, 3, 7).unwrap();
        assert!(general.segment(3).iter().all(Zero::is_zero));
        assert_eq!(&general.entries()[2..], central.entries());
    }
}
