//! Grid sweep comparing computed invariants against closed-form predictions.

use baer_core::baer::{baer_invariant, predict_closed_form, Prediction};
use baer_core::{AbelianStructure, BaerError, ProblemSpec};
use rayon::prelude::*;

use crate::payload::CellStatus;

/// Ranges swept by [`theorem_grid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridBounds {
    /// Smallest order tried for `r` and `s`.
    pub min_rs: u64,
    /// Largest order tried for `r` and `s`.
    pub max_rs: u64,
    /// Largest nilpotent-product class `n`.
    pub max_n: usize,
    /// Largest variety class `c`; each `n` runs over `c = n..=max_c`.
    pub max_c: usize,
}

/// One grid cell whose parameters satisfy some closed form's hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCell {
    /// Parameters.
    pub spec: ProblemSpec,
    /// The closed form and its value.
    pub prediction: Prediction,
    /// Engine value, `None` when `c + n` exceeds the cap.
    pub computed: Option<AbelianStructure>,
}

impl GridCell {
    /// PASS, FAIL, or skipped.
    pub fn status(&self) -> CellStatus {
        match &self.computed {
            None => CellStatus::Skipped,
            Some(a) if *a == self.prediction.structure => CellStatus::Pass,
            Some(_) => CellStatus::Fail,
        }
    }
}

/// Cells in `(r, s, n, c)` lexicographic order that some closed form covers.
pub fn grid_specs(bounds: &GridBounds) -> Vec<(ProblemSpec, Prediction)> {
    let mut out = Vec::new();
    for r in bounds.min_rs..=bounds.max_rs {
        for s in bounds.min_rs..=bounds.max_rs {
            for n in 1..=bounds.max_n {
                for c in n..=bounds.max_c {
                    let Ok(spec) = ProblemSpec::new(r, s, n, c) else { continue };
                    if let Some(p) = predict_closed_form(&spec) {
                        out.push((spec, p));
                    }
                }
            }
        }
    }
    out
}

/// Computes every covered cell within the cap, in parallel, keeping
/// parameter order in the result.
pub fn theorem_grid(bounds: &GridBounds, cap: usize) -> Result<Vec<GridCell>, BaerError> {
    grid_specs(bounds)
        .into_par_iter()
        .map(|(spec, prediction)| {
            let computed = if spec.c + spec.n <= cap {
                Some(baer_invariant(&spec, cap)?)
            } else {
                None
            };
            Ok(GridCell {
                spec,
                prediction,
                computed,
            })
        })
        .collect()
}
