//! Continuous ℤ-valued functions on an ordinal space, in cutpoint form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolspace::{ClopenSet, OrdinalSpace};
use crate::ordinal::Ordinal;

/// `f ≡ values[0]` on `[0, cuts[0]]` and `f ≡ values[i]` on `(cuts[i-1], cuts[i]]`.
///
/// The last cut is the top of the space and adjacent values differ, so the
/// representation is unique.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepFunction {
    cuts: Vec<Ordinal>,
    values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("cuts must be strictly increasing and end at the top of the space")]
    BadCuts,
    #[error("step function takes a negative value")]
    NegativeInput,
}

impl StepFunction {
    pub fn constant(space: &OrdinalSpace, v: i64) -> StepFunction {
        let top = space.top().cloned().unwrap_or_default();
        StepFunction { cuts: vec![top], values: vec![v] }
    }

    /// Builds a function from `(cut, value)` pieces, merging equal neighbours.
    pub fn from_pieces(space: &OrdinalSpace, pieces: Vec<(Ordinal, i64)>) -> Result<StepFunction, StepError> {
        let top = space.top().ok_or(StepError::BadCuts)?;
        let increasing = pieces.windows(2).all(|w| w[0].0 < w[1].0);
        if pieces.is_empty() || !increasing || pieces.last().map(|p| &p.0) != Some(top) {
            return Err(StepError::BadCuts);
        }
        Ok(Self::canonical(pieces))
    }

    fn canonical(pieces: Vec<(Ordinal, i64)>) -> StepFunction {
        let mut cuts: Vec<Ordinal> = Vec::with_capacity(pieces.len());
        let mut values: Vec<i64> = Vec::with_capacity(pieces.len());
        for (c, v) in pieces {
            if values.last() == Some(&v) {
                *cuts.last_mut().expect("parallel vectors") = c;
            } else {
                cuts.push(c);
                values.push(v);
            }
        }
        StepFunction { cuts, values }
    }

    /// `v` on `k` and zero elsewhere.
    pub fn indicator(k: &ClopenSet, v: i64) -> StepFunction {
        let space = k.space();
        let top = space.top().cloned().unwrap_or_default();
        let mut pieces = Vec::new();
        for (lo, hi) in k.intervals() {
            if let Some(l) = lo {
                pieces.push((l.clone(), 0));
            }
            pieces.push((hi.clone(), v));
        }
        if pieces.last().map(|p| &p.0) != Some(&top) {
            pieces.push((top, 0));
        }
        Self::canonical(pieces)
    }

    pub fn top(&self) -> &Ordinal {
        self.cuts.last().expect("non-empty")
    }

    pub fn space(&self) -> OrdinalSpace {
        OrdinalSpace::interval(self.top().clone())
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Ordinal, i64)> {
        self.cuts.iter().zip(self.values.iter().copied())
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at `x`, which must lie in the space.
    pub fn eval(&self, x: &Ordinal) -> i64 {
        let i = self.cuts.partition_point(|c| c < x);
        self.values[i.min(self.values.len() - 1)]
    }

    pub fn zip_with(&self, other: &StepFunction, op: impl Fn(i64, i64) -> i64) -> StepFunction {
        let mut cuts: Vec<Ordinal> = self.cuts.iter().chain(&other.cuts).cloned().collect();
        cuts.sort();
        cuts.dedup();
        let pieces = cuts
            .into_iter()
            .map(|c| {
                let v = op(self.eval(&c), other.eval(&c));
                (c, v)
            })
            .collect();
        Self::canonical(pieces)
    }

    pub fn map(&self, op: impl Fn(i64) -> i64) -> StepFunction {
        Self::canonical(self.pieces().map(|(c, v)| (c.clone(), op(v))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.values == [0]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= 0)
    }

    pub fn leq(&self, other: &StepFunction) -> bool {
        self.zip_with(other, |a, b| i64::from(a <= b)).values == [1]
    }

    /// `{x : f(x) ≠ 0}`.
    pub fn supp(&self) -> ClopenSet {
        let space = self.space();
        let mut ivs = Vec::new();
        let mut lo: Option<Ordinal> = None;
        for (c, v) in self.pieces() {
            if v != 0 {
                ivs.push((lo.clone(), c.clone()));
            }
            lo = Some(c.clone());
        }
        ClopenSet::from_intervals(&space, ivs).expect("cuts lie in the space")
    }

    /// `f′`: values clamped to `{0, 1}`.
    pub fn prime(&self) -> Result<StepFunction, StepError> {
        if !self.is_nonnegative() {
            return Err(StepError::NegativeInput);
        }
        Ok(self.map(|v| v.min(1)))
    }

    /// Restriction to the derived space, transported along its relabelling.
    /// This is the quotient map `C(X, ℤ) → C(X′, ℤ)`; `None` when `X′` is empty.
    pub fn restrict_to_derivative(&self) -> Option<StepFunction> {
        let derived = self.space().derivative();
        derived.top()?;
        let label = |y: Ordinal| match y.as_finite() {
            Some(n) => Ordinal::finite(n - 1),
            None => y,
        };
        let mut pieces: Vec<(Ordinal, i64)> = Vec::new();
        let mut seen = Ordinal::zero();
        for (c, v) in self.pieces() {
            let y = c.div_omega();
            // The piece ending at c holds a limit point iff c/ω grew.
            if y > seen {
                pieces.push((label(y.clone()), v));
                seen = y;
            }
        }
        Some(Self::canonical(pieces))
    }

    /// True when `f` vanishes at every point of maximal CB rank.
    pub fn vanishes_on_top_rank(&self) -> bool {
        self.space().top_rank_points().iter().all(|x| self.eval(x) == 0)
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("step(")?;
        for (i, (c, v)) in self.pieces().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}:{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
