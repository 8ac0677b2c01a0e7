//! Finitely generated abelian groups in invariant-factor form.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::intlin::divisibility_chain;
use crate::Int;

/// `Z^free_rank ⊕ Z_{d₁} ⊕ … ⊕ Z_{d_m}` with `d₁ | d₂ | … | d_m`, each `dᵢ ≥ 2`.
///
/// The trivial group has no factors and free rank zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianStructure {
    invariant_factors: Vec<Int>,
    free_rank: usize,
}

/// Factors passed to [`AbelianStructure::new`] do not form a valid chain.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invariant factors must be at least 2 and each must divide the next")]
pub struct InvalidFactors;

impl AbelianStructure {
    /// The trivial group.
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Validated constructor.
    pub fn new(invariant_factors: Vec<Int>, free_rank: usize) -> Result<Self, InvalidFactors> {
        let ok = invariant_factors.iter().all(|d| *d >= Int::from(2))
            && invariant_factors
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero());
        if !ok {
            return Err(InvalidFactors);
        }
        Ok(AbelianStructure {
            invariant_factors,
            free_rank,
        })
    }

    pub(crate) fn from_chain(invariant_factors: Vec<Int>, free_rank: usize) -> Self {
        debug_assert!(Self::new(invariant_factors.clone(), free_rank).is_ok());
        AbelianStructure {
            invariant_factors,
            free_rank,
        }
    }

    /// `Z_d^count`; trivial when `d = 1` or `count = 0`.
    pub fn elementary(d: &Int, count: usize) -> Self {
        if d.is_one() || count == 0 {
            return Self::trivial();
        }
        if d.is_zero() {
            return Self::from_chain(Vec::new(), count);
        }
        Self::from_chain(alloc::vec![d.abs(); count], 0)
    }

    /// `⊕ Z_{nᵢ}` for arbitrary orders, brought to invariant-factor form.
    /// An order of zero contributes a copy of `Z`; orders `±1` vanish.
    pub fn from_orders(orders: &[Int]) -> Self {
        let mut free_rank = 0;
        let mut torsion: Vec<Int> = Vec::new();
        for n in orders {
            if n.is_zero() {
                free_rank += 1;
            } else if !n.abs().is_one() {
                torsion.push(n.abs());
            }
        }
        divisibility_chain(&mut torsion);
        torsion.retain(|d| !d.is_one());
        Self::from_chain(torsion, free_rank)
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<Int> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        let mut out = Self::from_orders(&orders);
        out.free_rank = self.free_rank + other.free_rank;
        out
    }

    /// `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    /// Rank of the free part.
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// `true` for the trivial group.
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Group order, or `None` when the free rank is positive.
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

/// `trivial`, or summands such as `Z^2 + Z_2 + Z_6^3`.
impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts: Vec<alloc::string::String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(alloc::format!("Z^{k}")),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|e| *e == d).count();
            parts.push(if run == 1 {
                alloc::format!("Z_{d}")
            } else {
                alloc::format!("Z_{d}^{run}")
            });
            i += run;
        }
        f.write_str(&parts.join(" + "))
    }
}
