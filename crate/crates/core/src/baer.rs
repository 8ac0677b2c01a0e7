//! Baer-invariants `N_c M(G)` of `G(r, s, n) = <x, y | x^r, y^s, γ_{n+1}(F)>`.
//!
//! With `S` the normal closure of `{x^r, y^s}` and `ρ_{c+1}(S) = [S, F, …, F]`
//! (`c` copies of `F`), the invariant is the quotient
//!
//! ```text
//! γ_{c+1}(F) / γ_{c+n+1}(F) ρ_{c+1}(S)
//! ```
//!
//! For `c ≥ n` the group `γ_{c+1}/γ_{c+n+1}` is free abelian on the basic
//! commutators of weights `c+1..=c+n`, so the invariant is the cokernel of an
//! integer matrix whose rows are coordinates of generators of `ρ_{c+1}(S)`.
//!
//! The module also carries the closed-form predictions for these groups and
//! congruence checkers for the power-expansion identities behind them.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::AbelianStructure;
use crate::expr::CommutatorExpr;
use crate::intlin::RowLattice;
use crate::lyndon::{witt_rank, LyndonCommutator};
use crate::magnus::{commutator_units, expand_expr, series_class, LcsClass, MagnusError, TruncatedSeries};
use crate::nilform::{NilformError, NilpotentBasis};
use crate::word::Generator;
use crate::{Int, MAX_CAP};

/// Errors from the Baer-invariant computations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BaerError {
    /// A parameter is outside its domain (e.g. a zero order).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The quotient formula is only set up for `c ≥ n`.
    #[error("unsupported: the quotient formula requires c >= n (got c = {c}, n = {n})")]
    ClassBelowProduct {
        /// Variety class.
        c: usize,
        /// Nilpotent-product class.
        n: usize,
    },
    /// A check is only stated for a parameter range that excludes the input.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The computation needs a larger nilpotency class than allowed.
    #[error("resource cap exceeded: needs class {needed}, cap is {cap}")]
    Resource {
        /// Class the computation needs.
        needed: usize,
        /// Configured cap.
        cap: usize,
    },
    /// Coordinate extraction failed.
    #[error(transparent)]
    Nilform(#[from] NilformError),
    /// Series arithmetic failed.
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

fn need(needed: usize, cap: usize) -> Result<(), BaerError> {
    if needed > cap || needed > MAX_CAP {
        return Err(BaerError::Resource {
            needed,
            cap: cap.min(MAX_CAP),
        });
    }
    Ok(())
}

/// Parameters `(r, s, n, c)`: orders of the cyclic factors, class of the
/// nilpotent product, and class of the variety `N_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemSpec {
    /// Order of `x`.
    pub r: u64,
    /// Order of `y`.
    pub s: u64,
    /// Nilpotent-product class.
    pub n: usize,
    /// Variety class.
    pub c: usize,
}

impl ProblemSpec {
    /// Validates that every parameter is positive.
    pub fn new(r: u64, s: u64, n: usize, c: usize) -> Result<Self, BaerError> {
        if r == 0 || s == 0 || n == 0 || c == 0 {
            return Err(BaerError::InvalidArgument(alloc::format!(
                "r, s, n and c must be positive (got r = {r}, s = {s}, n = {n}, c = {c})"
            )));
        }
        Ok(ProblemSpec { r, s, n, c })
    }

    /// `d = gcd(r, s)`.
    pub fn d(&self) -> u64 {
        self.r.gcd(&self.s)
    }

    fn heads(&self) -> [CommutatorExpr; 2] {
        [
            CommutatorExpr::generator_power(Generator::X, self.r as i64),
            CommutatorExpr::generator_power(Generator::Y, self.s as i64),
        ]
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, s={}, n={}, c={})", self.r, self.s, self.n, self.c)
    }
}

/// Which tails the generators `[u, b₁, …, b_m]` of `ρ_{c+1}(S)` may carry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GeneratorScheme {
    /// Every `bᵢ` is a basic commutator of any weight.
    #[default]
    BasicCommutators,
    /// Every `bᵢ` is `x` or `y`.
    ///
    /// `ρ_{c+1}(S)` is the normal closure of `[u, a₁, …, a_c]` with `aᵢ`
    /// letters, and modulo `γ_{c+n+1}` conjugation acts on the abelian
    /// quotient through further commutation with letters, so this smaller set
    /// already spans the same lattice.
    Letters,
}

fn tails_at(basis: &NilpotentBasis, scheme: GeneratorScheme, w: usize) -> usize {
    match scheme {
        GeneratorScheme::BasicCommutators => basis.level(w).commutators().len(),
        GeneratorScheme::Letters if w == 1 => 2,
        GeneratorScheme::Letters => 0,
    }
}

/// Left-normed generators `[u, b₁, …, b_m]` with `u ∈ {x^r, y^s}`, `m ≥ c`,
/// basic-commutator tails, and `1 + Σ weight(bᵢ) ≤ c + n`.
///
/// Order: head `x^r` first, then depth-first over tails with the basis
/// ordered by weight and then lexicographically.
pub fn rho_generators(spec: &ProblemSpec, cap: usize) -> Result<Vec<CommutatorExpr>, BaerError> {
    need(spec.c + spec.n, cap)?;
    let bound = spec.c + spec.n;
    let basis: Vec<Vec<CommutatorExpr>> = (1..bound)
        .map(|w| {
            crate::lyndon::enumerate_basis(w, 2)
                .iter()
                .map(|b| b.bracketing().to_expr().unwrap())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for head in spec.heads() {
        let mut stack: Vec<CommutatorExpr> = alloc::vec![head];
        enumerate_tails(&basis, bound - 1, spec.c, &mut stack, &mut out);
    }
    Ok(out)
}

fn enumerate_tails(
    basis: &[Vec<CommutatorExpr>],
    budget: usize,
    min_len: usize,
    stack: &mut Vec<CommutatorExpr>,
    out: &mut Vec<CommutatorExpr>,
) {
    if stack.len() > min_len {
        out.push(CommutatorExpr::left_normed(stack.iter().cloned()));
    }
    if stack.len() - 1 + budget < min_len {
        return;
    }
    for w in 1..=budget {
        for b in &basis[w - 1] {
            stack.push(b.clone());
            enumerate_tails(basis, budget - w, min_len, stack, out);
            stack.pop();
        }
    }
}

/// Structure of a sublattice of `Z^ambient_rank`: its Smith diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupStructure {
    /// Nonzero Smith diagonal `d₁ | d₂ | …` (ones included).
    pub diagonal: Vec<Int>,
    /// Rank of the ambient free abelian group.
    pub ambient_rank: usize,
}

impl SubgroupStructure {
    /// Rank of the sublattice.
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// `true` if the sublattice is exactly `d · Z^ambient_rank`.
    pub fn is_scalar(&self, d: &Int) -> bool {
        self.rank() == self.ambient_rank && self.diagonal.iter().all(|e| e == d)
    }

    /// The ambient group modulo the sublattice.
    pub fn cokernel(&self) -> AbelianStructure {
        let torsion: Vec<Int> = self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        let mut out = AbelianStructure::from_orders(&torsion);
        out = out.direct_sum(&AbelianStructure::from_orders(&alloc::vec![
            Int::zero();
            self.ambient_rank - self.rank()
        ]));
        out
    }
}

/// The lattice spanned by coordinates of `ρ_{c+1}(S)` inside
/// `γ_{c+1}/γ_{bound+1}`, together with the basis used for coordinates.
struct RhoLattice {
    lattice: RowLattice,
    distinct_rows: usize,
}

fn rho_lattice(
    spec: &ProblemSpec,
    bound: usize,
    scheme: GeneratorScheme,
    extra: &[CommutatorExpr],
) -> Result<RhoLattice, BaerError> {
    let low = spec.c + 1;
    let basis = NilpotentBasis::new(bound)?;
    let mut lattice = RowLattice::new(basis.dimension(low, bound));
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    // Returns `false` once the lattice is everything and further rows are moot.
    let mut add = |s: &TruncatedSeries| -> Result<bool, BaerError> {
        let row = basis.series_coordinates(s, low, bound)?.into_entries();
        if row.iter().any(|e| !e.is_zero()) && !seen.contains(&row) {
            lattice.insert(&row);
            seen.insert(row);
        }
        Ok(!lattice.is_full())
    };
    let mut open = true;
    for head in spec.heads() {
        if open {
            let s = expand_expr(&head, bound)?;
            open = walk(&basis, scheme, bound - 1, spec.c, 0, &s, &mut add)?;
        }
    }
    for e in extra {
        if open {
            open = add(&expand_expr(e, bound)?)?;
        }
    }
    Ok(RhoLattice {
        distinct_rows: seen.len(),
        lattice,
    })
}

fn walk(
    basis: &NilpotentBasis,
    scheme: GeneratorScheme,
    budget: usize,
    min_len: usize,
    depth: usize,
    prefix: &TruncatedSeries,
    visit: &mut impl FnMut(&TruncatedSeries) -> Result<bool, BaerError>,
) -> Result<bool, BaerError> {
    if depth >= min_len && !visit(prefix)? {
        return Ok(false);
    }
    // Trivial prefixes stay trivial; short prefixes that cannot reach `min_len` add nothing.
    if prefix.is_one() || depth + budget < min_len {
        return Ok(true);
    }
    for w in 1..=budget {
        for i in 0..tails_at(basis, scheme, w) {
            let next = commutator_units(prefix, &basis.level(w).series()[i]);
            if !walk(basis, scheme, budget - w, min_len, depth + 1, &next, visit)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `γ_{c+j}(F) ρ_{c+1}(S) / γ_{c+j}(F)` as a sublattice of the free abelian
/// group `γ_{c+1}/γ_{c+j}` of rank `Σ_{i=1..j−1} r(c+i)`.
///
/// Needs `j ≥ 2`, `c + j − 1 ≤ cap`, and `j ≤ c + 2` so that the ambient
/// quotient is abelian.
pub fn rho_subgroup_structure(spec: &ProblemSpec, j: usize, cap: usize) -> Result<SubgroupStructure, BaerError> {
    if j < 2 {
        return Err(BaerError::InvalidArgument(alloc::format!("j must be at least 2 (got {j})")));
    }
    if j > spec.c + 2 {
        return Err(BaerError::Precondition(alloc::format!(
            "γ_{}/γ_{} is not abelian; need j <= c + 2",
            spec.c + 1,
            spec.c + j
        )));
    }
    let bound = spec.c + j - 1;
    need(bound, cap)?;
    let rho = rho_lattice(spec, bound, GeneratorScheme::default(), &[])?;
    let snf = rho.lattice.smith();
    Ok(SubgroupStructure {
        diagonal: snf.diagonal,
        ambient_rank: rho.lattice.cols(),
    })
}

/// `N_c M(G(r, s, n))`, computed as the cokernel of the generator matrix.
pub fn baer_invariant(spec: &ProblemSpec, cap: usize) -> Result<AbelianStructure, BaerError> {
    baer_invariant_with(spec, cap, GeneratorScheme::default(), &[])
}

/// Diagnostics of one Baer-invariant computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaerComputation {
    /// The invariant.
    pub structure: AbelianStructure,
    /// Number of columns: `Σ_{i=1..n} r(c+i)`.
    pub ambient_rank: usize,
    /// Distinct nonzero coordinate rows fed to the Smith form.
    pub distinct_rows: usize,
}

/// [`baer_invariant`] with an explicit generator scheme and extra elements
/// of `ρ_{c+1}(S)` thrown into the generating set.
///
/// Extra elements must lie in `γ_{c+1}(F)`; membership in `ρ_{c+1}(S)` is
/// the caller's responsibility.
pub fn baer_invariant_with(
    spec: &ProblemSpec,
    cap: usize,
    scheme: GeneratorScheme,
    extra: &[CommutatorExpr],
) -> Result<AbelianStructure, BaerError> {
    Ok(baer_computation(spec, cap, scheme, extra)?.structure)
}

/// Full computation record behind [`baer_invariant_with`].
pub fn baer_computation(
    spec: &ProblemSpec,
    cap: usize,
    scheme: GeneratorScheme,
    extra: &[CommutatorExpr],
) -> Result<BaerComputation, BaerError> {
    if spec.c < spec.n {
        return Err(BaerError::ClassBelowProduct { c: spec.c, n: spec.n });
    }
    let bound = spec.c + spec.n;
    need(bound, cap)?;
    let rho = rho_lattice(spec, bound, scheme, extra)?;
    Ok(BaerComputation {
        structure: rho.lattice.cokernel(),
        ambient_rank: rho.lattice.cols(),
        distinct_rows: rho.distinct_rows,
    })
}

/// Which closed form produced a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedForm {
    /// `gcd(r, s) = 1`: the invariant is trivial for every `n`, `c`.
    CoprimeOrders,
    /// `n = 1` (direct product `Z_r × Z_s`): `Z_d^{r(c+1)}`.
    DirectProduct,
    /// `n = 2`, `r`, `s` odd, `c ≥ 2`: `Z_d^{r(c+1)+r(c+2)}`.
    OddOrdersClassTwo,
    /// `n ∈ {3, 4}`, `r`, `s` prime to 6, `c ≥ n`: `Z_d^{Σ r(c+i)}`.
    PrimeToSix,
}

impl ClosedForm {
    /// Short human-readable name, used in reports.
    pub fn label(self) -> &'static str {
        match self {
            ClosedForm::CoprimeOrders => "coprime orders",
            ClosedForm::DirectProduct => "direct product",
            ClosedForm::OddOrdersClassTwo => "odd orders, n = 2",
            ClosedForm::PrimeToSix => "orders prime to 6, n = 3 or 4",
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A closed-form value and the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    /// Predicted invariant.
    pub structure: AbelianStructure,
    /// Rule applied.
    pub rule: ClosedForm,
}

fn rank_sum(c: usize, terms: usize) -> usize {
    (1..=terms).map(|i| witt_rank(c + i, 2) as usize).sum()
}

/// Closed-form value of `N_c M(G(r, s, n))` where one is known, else `None`.
pub fn predict_closed_form(spec: &ProblemSpec) -> Option<Prediction> {
    let d = Int::from(spec.d());
    let (r, s, n, c) = (spec.r, spec.s, spec.n, spec.c);
    let prime_to_six = |v: u64| v.gcd(&6) == 1;
    let (structure, rule) = if d.is_one() {
        (AbelianStructure::trivial(), ClosedForm::CoprimeOrders)
    } else if n == 1 {
        (AbelianStructure::elementary(&d, rank_sum(c, 1)), ClosedForm::DirectProduct)
    } else if n == 2 && c >= 2 && r % 2 == 1 && s % 2 == 1 {
        (AbelianStructure::elementary(&d, rank_sum(c, 2)), ClosedForm::OddOrdersClassTwo)
    } else if (n == 3 || n == 4) && c >= n && prime_to_six(r) && prime_to_six(s) {
        (AbelianStructure::elementary(&d, rank_sum(c, n)), ClosedForm::PrimeToSix)
    } else {
        return None;
    };
    Some(Prediction { structure, rule })
}

/// Predicted `γ_{c+j}ρ_{c+1}(S)/γ_{c+j}`: `d·Z^N` with
/// `N = Σ_{i=1..j−1} r(c+i)`, under the hypotheses attached to each `j`
/// (`j = 2` always; `j = 3` for odd orders; `j ∈ {4, 5}` for orders prime to 6).
pub fn predict_rho_subgroup(spec: &ProblemSpec, j: usize) -> Option<SubgroupStructure> {
    let odd = spec.r % 2 == 1 && spec.s % 2 == 1;
    let prime_to_six = spec.r.gcd(&6) == 1 && spec.s.gcd(&6) == 1;
    let applies = match j {
        2 => true,
        3 => odd,
        4 | 5 => prime_to_six,
        _ => false,
    };
    if !applies {
        return None;
    }
    let n = rank_sum(spec.c, j - 1);
    Some(SubgroupStructure {
        diagonal: alloc::vec![Int::from(spec.d()); n],
        ambient_rank: n,
    })
}

/// `N_c M(⊕ Z_{nᵢ})` for a finite abelian group:
/// `Z_{n₂}^{(b₂)} ⊕ Z_{n₃}^{(b₃−b₂)} ⊕ …` where `n₁, n₂, …` are the invariant
/// factors in decreasing divisibility order and `bᵢ = witt_rank(c+1, i)`.
///
/// Orders need not form a chain; they are canonicalized first.
pub fn abelian_multiplicator(orders: &[Int], c: usize) -> Result<AbelianStructure, BaerError> {
    if c == 0 {
        return Err(BaerError::InvalidArgument("c must be positive".into()));
    }
    if orders.iter().any(|o| o.is_zero()) {
        return Err(BaerError::InvalidArgument("orders must be nonzero (finite groups only)".into()));
    }
    let canonical = AbelianStructure::from_orders(orders);
    let mut chain: Vec<Int> = canonical.invariant_factors().to_vec();
    chain.reverse();
    let mut summands: Vec<Int> = Vec::new();
    let mut prev = 0u64;
    for (i, ni) in chain.iter().enumerate().skip(1) {
        let bi = witt_rank(c + 1, i + 1);
        summands.extend(core::iter::repeat_n(ni.clone(), (bi - prev) as usize));
        prev = bi;
    }
    Ok(AbelianStructure::from_orders(&summands))
}

/// A claimed congruence `lhs ≡ Π termᵢ^{eᵢ}` modulo `γ_{modulus_weight}(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceClaim {
    /// Left side.
    pub lhs: CommutatorExpr,
    /// Right side factors and their exponents, multiplied left to right.
    pub terms: Vec<(CommutatorExpr, i64)>,
    /// The congruence is modulo `γ_{modulus_weight}(F)`.
    pub modulus_weight: usize,
    /// `c`, `r` and the free letters `aᵢ` the claim was built from.
    pub parameters: (usize, i64, Vec<Generator>),
}

/// Verdict of a [`CongruenceClaim`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    /// `true` iff `lhs · rhs⁻¹ ∈ γ_{modulus_weight}(F)`.
    pub holds: bool,
    /// Class of `lhs · rhs⁻¹`, decided through degree `modulus_weight − 1`.
    pub residual_class: LcsClass,
    /// The claim that was checked.
    pub claim: CongruenceClaim,
    /// Nonzero coordinates of `lhs · rhs⁻¹` from its class up to
    /// `modulus_weight − 1`; empty when the claim holds.
    pub discrepancy: Vec<(LyndonCommutator, Int)>,
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn letter(g: Generator) -> CommutatorExpr {
    CommutatorExpr::generator(g)
}

fn ln(items: Vec<CommutatorExpr>) -> CommutatorExpr {
    CommutatorExpr::left_normed(items)
}

impl CongruenceClaim {
    /// Right side as one expression.
    pub fn rhs(&self) -> CommutatorExpr {
        CommutatorExpr::Product(self.terms.iter().map(|(t, e)| t.clone().pow(*e)).collect())
    }

    /// The same claim with the exponent of term `index` shifted by `delta`.
    pub fn perturbed(&self, index: usize, delta: i64) -> Self {
        let mut out = self.clone();
        out.terms[index].1 += delta;
        out
    }

    /// Decides the claim with the Magnus expansion through degree
    /// `modulus_weight − 1`.
    pub fn check(&self) -> Result<CongruenceReport, BaerError> {
        let cap = self.modulus_weight - 1;
        let lhs = expand_expr(&self.lhs, cap)?;
        let rhs = expand_expr(&self.rhs(), cap)?;
        let residual = lhs.multiply(&rhs.inverse()?);
        let residual_class = series_class(&residual);
        let mut discrepancy = Vec::new();
        if let LcsClass::Exact(k) = residual_class {
            let basis = NilpotentBasis::new(cap)?;
            let coords = basis.series_coordinates(&residual, k, cap)?;
            for (b, e) in basis.labels(k, cap).into_iter().zip(coords.entries()) {
                if !e.is_zero() {
                    discrepancy.push((b.clone(), e.clone()));
                }
            }
        }
        Ok(CongruenceReport {
            holds: residual_class == LcsClass::BeyondCap,
            residual_class,
            claim: self.clone(),
            discrepancy,
        })
    }
}

/// The nine-term expansion of `[x^r, y, a₁, …, a_{c−1}]` modulo `γ_{c+5}(F)`
/// (stated for `c ≥ 3`, `r ≥ 4`), with terms exactly in the printed order:
///
/// ```text
/// [x,y,a₁..]^r  [x,y,x,a₁..]^C(r,2)  [x,y,a₁,[x,y],a₂..]^C(r,2)
/// [x,y,a₁,a₂,[x,y,a₁],a₃..]^C(r,2)  [x,y,x,a₁,[x,y],a₂..]^C(r+1,3)
/// [x,y,x,a₁,[x,y,x],a₂..]^(C(r,3)+C(r+1,3))  [x,y,x,x,a₁..]^C(r,3)
/// [x,y,x,[x,y],a₁..]^C(r,3)  [x,y,x,x,x,a₁..]^C(r,4)
/// ```
pub fn nine_term_claim(c: usize, r: i64, tail: &[Generator], cap: usize) -> Result<CongruenceClaim, BaerError> {
    if c < 3 {
        return Err(BaerError::Precondition(alloc::format!("c >= 3 required (got c = {c})")));
    }
    if r < 4 {
        return Err(BaerError::Precondition(alloc::format!("r >= 4 required (got r = {r})")));
    }
    if tail.len() != c - 1 {
        return Err(BaerError::InvalidArgument(alloc::format!(
            "expected {} tail letters, got {}",
            c - 1,
            tail.len()
        )));
    }
    need(c + 4, cap)?;
    let (x, y) = (letter(Generator::X), letter(Generator::Y));
    let a: Vec<CommutatorExpr> = tail.iter().map(|&g| letter(g)).collect();
    let xy = ln(alloc::vec![x.clone(), y.clone()]);
    let xyx = ln(alloc::vec![x.clone(), y.clone(), x.clone()]);
    let xya1 = ln(alloc::vec![x.clone(), y.clone(), a[0].clone()]);
    // [x, y, p₁, …, p_k, a_from, …, a_{c−1}]
    let build = |prefix: &[CommutatorExpr], from: usize| {
        let mut items = alloc::vec![x.clone(), y.clone()];
        items.extend(prefix.iter().cloned());
        items.extend(a[from..].iter().cloned());
        ln(items)
    };
    let (c2, c3, c3p, c4) = (binomial(r, 2), binomial(r, 3), binomial(r + 1, 3), binomial(r, 4));
    let terms = alloc::vec![
        (build(&[], 0), r),
        (build(core::slice::from_ref(&x), 0), c2),
        (build(&[a[0].clone(), xy.clone()], 1), c2),
        (build(&[a[0].clone(), a[1].clone(), xya1], 2), c2),
        (build(&[x.clone(), a[0].clone(), xy.clone()], 1), c3p),
        (build(&[x.clone(), a[0].clone(), xyx], 1), c3 + c3p),
        (build(&[x.clone(), x.clone()], 0), c3),
        (build(&[x.clone(), xy], 0), c3),
        (build(&[x.clone(), x.clone(), x.clone()], 0), c4),
    ];
    let mut lhs_items = alloc::vec![CommutatorExpr::generator_power(Generator::X, r), y];
    lhs_items.extend(a);
    Ok(CongruenceClaim {
        lhs: ln(lhs_items),
        terms,
        modulus_weight: c + 5,
        parameters: (c, r, tail.to_vec()),
    })
}

/// `[x^r, a₁, …, a_c] ≡ [x, a₁, …, a_c]^r` modulo `γ_{c+2}(F)`, or with the
/// extra factor `[x, a₁, x, a₂, …, a_c]^C(r,2)` modulo `γ_{c+3}(F)`.
pub fn power_claim(c: usize, r: i64, tail: &[Generator], modulus_weight: usize, cap: usize) -> Result<CongruenceClaim, BaerError> {
    if c == 0 {
        return Err(BaerError::InvalidArgument("c must be positive".into()));
    }
    if tail.len() != c {
        return Err(BaerError::InvalidArgument(alloc::format!(
            "expected {c} tail letters, got {}",
            tail.len()
        )));
    }
    if modulus_weight != c + 2 && modulus_weight != c + 3 {
        return Err(BaerError::InvalidArgument(alloc::format!(
            "modulus weight must be c + 2 or c + 3 (got {modulus_weight})"
        )));
    }
    need(modulus_weight - 1, cap)?;
    let x = letter(Generator::X);
    let a: Vec<CommutatorExpr> = tail.iter().map(|&g| letter(g)).collect();
    let mut lhs_items = alloc::vec![CommutatorExpr::generator_power(Generator::X, r)];
    lhs_items.extend(a.iter().cloned());
    let mut first = alloc::vec![x.clone()];
    first.extend(a.iter().cloned());
    let mut terms = alloc::vec![(ln(first), r)];
    if modulus_weight == c + 3 {
        let mut second = alloc::vec![x.clone(), a[0].clone(), x];
        second.extend(a[1..].iter().cloned());
        terms.push((ln(second), binomial(r, 2)));
    }
    Ok(CongruenceClaim {
        lhs: ln(lhs_items),
        terms,
        modulus_weight,
        parameters: (c, r, tail.to_vec()),
    })
}
