//! Machine-readable result payloads and the JSON envelope around them.
//!
//! Every integer is written as a decimal string so consumers never overflow.
//! Keys come out sorted because payloads are serialized through
//! [`serde_json::Value`], whose maps are ordered.

use std::collections::BTreeMap;
use std::fmt;

use baer_core::baer::{BaerComputation, CongruenceReport, Prediction, SubgroupStructure};
use baer_core::lyndon::LyndonCommutator;
use baer_core::{AbelianStructure, Generator, Int};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// `{command, parameters, result, engine_version, cap}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    /// Subcommand name, e.g. `compute` or `verify theorems`.
    pub command: String,
    /// Echo of the inputs.
    pub parameters: BTreeMap<String, String>,
    /// Command-specific payload.
    pub result: T,
    /// Version of the engine that produced the result.
    pub engine_version: String,
    /// Resource cap in force.
    pub cap: String,
}

impl<T: Serialize> Envelope<T> {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("payloads serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
        out.push('\n');
        out
    }
}

impl<T: DeserializeOwned> Envelope<T> {
    /// Inverse of [`Envelope::render`].
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// A string field did not hold what its payload promises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayloadError(pub String);

impl fmt::Display for PayloadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed payload: {}", self.0)
    }
}

impl std::error::Error for PayloadError {}

fn parse_int(s: &str) -> Result<Int, PayloadError> {
    s.parse().map_err(|_| PayloadError(format!("not an integer: {s:?}")))
}

fn ints(v: &[Int]) -> Vec<String> {
    v.iter().map(Int::to_string).collect()
}

/// An abelian group: rendered text plus its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianPayload {
    /// e.g. `Z_3^5`.
    pub structure: String,
    /// `d₁ | d₂ | …`.
    pub invariant_factors: Vec<String>,
    /// Rank of the free part.
    pub free_rank: String,
}

impl From<&AbelianStructure> for AbelianPayload {
    fn from(a: &AbelianStructure) -> Self {
        AbelianPayload {
            structure: a.to_string(),
            invariant_factors: ints(a.invariant_factors()),
            free_rank: a.free_rank().to_string(),
        }
    }
}

impl TryFrom<&AbelianPayload> for AbelianStructure {
    type Error = PayloadError;

    fn try_from(p: &AbelianPayload) -> Result<Self, PayloadError> {
        let factors = p.invariant_factors.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>, _>>()?;
        let free_rank = p
            .free_rank
            .parse()
            .map_err(|_| PayloadError(format!("bad free rank {:?}", p.free_rank)))?;
        let a = AbelianStructure::new(factors, free_rank).map_err(|e| PayloadError(e.to_string()))?;
        if a.to_string() != p.structure {
            return Err(PayloadError(format!("{:?} does not match its factors", p.structure)));
        }
        Ok(a)
    }
}

/// Result of `compute`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputePayload {
    /// The invariant.
    #[serde(flatten)]
    pub group: AbelianPayload,
    /// Basic commutators of weights `c+1..=c+n`.
    pub ambient_rank: String,
    /// Distinct coordinate rows reduced.
    pub distinct_rows: String,
}

impl From<&BaerComputation> for ComputePayload {
    fn from(b: &BaerComputation) -> Self {
        ComputePayload {
            group: (&b.structure).into(),
            ambient_rank: b.ambient_rank.to_string(),
            distinct_rows: b.distinct_rows.to_string(),
        }
    }
}

/// Result of `predict`; both fields are absent when no closed form applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictPayload {
    /// Predicted invariant.
    pub prediction: Option<AbelianPayload>,
    /// Closed form that produced it.
    pub rule: Option<String>,
}

impl From<Option<&Prediction>> for PredictPayload {
    fn from(p: Option<&Prediction>) -> Self {
        PredictPayload {
            prediction: p.map(|p| (&p.structure).into()),
            rule: p.map(|p| p.rule.label().to_string()),
        }
    }
}

/// One nonzero coordinate of a residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermPayload {
    /// Bracketed basic commutator, e.g. `[x,[x,y]]`.
    pub commutator: String,
    /// Its Lyndon word.
    pub word: String,
    /// Exponent.
    pub exponent: String,
}

impl From<&(LyndonCommutator, Int)> for TermPayload {
    fn from((b, e): &(LyndonCommutator, Int)) -> Self {
        TermPayload {
            commutator: b.to_string(),
            word: b.word_text(),
            exponent: e.to_string(),
        }
    }
}

/// Letters `a₁ a₂ …` as text, e.g. `yx`.
pub fn tail_text(tail: &[Generator]) -> String {
    tail.iter().map(Generator::to_string).collect()
}

/// One checked congruence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruencePayload {
    /// Class `c`.
    pub c: String,
    /// Exponent `r`.
    pub r: String,
    /// The letters `aᵢ`.
    pub a: String,
    /// The congruence is modulo `γ_modulus_weight`.
    pub modulus_weight: String,
    /// Verdict.
    pub holds: bool,
    /// Lower central class of `lhs · rhs⁻¹`, or `beyond cap`.
    pub residual_class: String,
    /// Left side.
    pub lhs: String,
    /// Right side.
    pub rhs: String,
    /// Nonzero coordinates of `lhs · rhs⁻¹` at and above its class.
    pub residual: Vec<TermPayload>,
}

impl From<&CongruenceReport> for CongruencePayload {
    fn from(r: &CongruenceReport) -> Self {
        let (c, exp, tail) = &r.claim.parameters;
        CongruencePayload {
            c: c.to_string(),
            r: exp.to_string(),
            a: tail_text(tail),
            modulus_weight: r.claim.modulus_weight.to_string(),
            holds: r.holds,
            residual_class: r.residual_class.to_string(),
            lhs: r.claim.lhs.to_string(),
            rhs: r.claim.rhs().to_string(),
            residual: r.discrepancy.iter().map(TermPayload::from).collect(),
        }
    }
}

/// Result of `verify lemma21` and `verify prop22`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSweepPayload {
    /// One entry per letter tuple and modulus.
    pub reports: Vec<CongruencePayload>,
    /// How many hold.
    pub holding: String,
    /// `true` iff every report holds.
    pub all_hold: bool,
}

/// Verdict of one grid cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    /// Computed and predicted invariants agree.
    #[serde(rename = "PASS")]
    Pass,
    /// They differ.
    #[serde(rename = "FAIL")]
    Fail,
    /// `c + n` exceeds the cap; nothing was computed.
    #[serde(rename = "skipped (cap)")]
    Skipped,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Pass => "PASS",
            CellStatus::Fail => "FAIL",
            CellStatus::Skipped => "skipped (cap)",
        })
    }
}

/// One `(r, s, n, c)` cell of `verify theorems`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCellPayload {
    /// Order of `x`.
    pub r: String,
    /// Order of `y`.
    pub s: String,
    /// Nilpotent-product class.
    pub n: String,
    /// Variety class.
    pub c: String,
    /// Closed form that applies.
    pub rule: String,
    /// Its prediction.
    pub predicted: String,
    /// Engine value, absent when skipped.
    pub computed: Option<String>,
    /// Verdict.
    pub status: CellStatus,
}

/// Result of `verify theorems`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPayload {
    /// Cells in parameter order.
    pub cells: Vec<GridCellPayload>,
    /// Cells that agree.
    pub passed: String,
    /// Cells that disagree.
    pub failed: String,
    /// Cells beyond the cap.
    pub skipped: String,
}

/// One basic commutator in `basis` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRow {
    /// 1-based position in the ordered basis.
    pub index: String,
    /// Lyndon word.
    pub word: String,
    /// Standard bracketing.
    pub bracketing: String,
    /// Weight.
    pub weight: String,
}

/// Result of `basis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisPayload {
    /// The basis in order.
    pub rows: Vec<BasisRow>,
}

/// Result of `witt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittPayload {
    /// Number of basic commutators.
    pub rank: String,
}

/// Result of `prop22`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupPayload {
    /// Smith diagonal of the sublattice, ones included.
    pub diagonal: Vec<String>,
    /// Rank of the sublattice.
    pub rank: String,
    /// Rank of `γ_{c+1}/γ_{c+j}`.
    pub ambient_rank: String,
    /// The quotient of the ambient group by the sublattice.
    pub quotient: AbelianPayload,
    /// Predicted diagonal, when a prediction applies.
    pub predicted: Option<Vec<String>>,
    /// Whether the prediction matches, when one applies.
    pub matches_prediction: Option<bool>,
}

impl SubgroupPayload {
    /// Payload for a computed sublattice and an optional prediction.
    pub fn new(s: &SubgroupStructure, predicted: Option<&SubgroupStructure>) -> Self {
        SubgroupPayload {
            diagonal: ints(&s.diagonal),
            rank: s.rank().to_string(),
            ambient_rank: s.ambient_rank.to_string(),
            quotient: (&s.cokernel()).into(),
            predicted: predicted.map(|p| ints(&p.diagonal)),
            matches_prediction: predicted.map(|p| p == s),
        }
    }
}
