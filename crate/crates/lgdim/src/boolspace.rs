//! Ordinal interval spaces `[0, top]` with the order topology.
//!
//! These are the compact Boolean spaces used to build step-function groups.
//! Derivatives are returned relabelled: the non-isolated points of `[0, top]`
//! are `{ω·y : 1 ≤ y ≤ δ}` with `δ = top / ω`, and that set is homeomorphic to
//! `[0, δ]` when `δ` is infinite and to `[0, δ-1]` when it is finite.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("the space is empty")]
    EmptySpace,
    #[error("{point} lies outside [0, {top}]")]
    OutOfSpace { point: Ordinal, top: Ordinal },
    #[error("clopen sets live in different spaces")]
    SpaceMismatch,
}

/// The space `[0, top]`, or the empty space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrdinalSpace {
    top: Option<Ordinal>,
}

impl OrdinalSpace {
    pub fn interval(top: Ordinal) -> Self {
        OrdinalSpace { top: Some(top) }
    }

    pub fn empty() -> Self {
        OrdinalSpace { top: None }
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_none()
    }

    pub fn top(&self) -> Option<&Ordinal> {
        self.top.as_ref()
    }

    fn top_or_err(&self) -> Result<&Ordinal, SpaceError> {
        self.top.as_ref().ok_or(SpaceError::EmptySpace)
    }

    /// Cantor–Bendixson rank: the leading exponent of `top`.
    pub fn cb_rank(&self) -> Result<Ordinal, SpaceError> {
        Ok(self.top_or_err()?.leading_exponent())
    }

    /// The derived space of non-isolated points, relabelled.
    pub fn derivative(&self) -> OrdinalSpace {
        self.derivative_iter(&Ordinal::one())
    }

    /// The α-th derivative, relabelled the same way.
    pub fn derivative_iter(&self, alpha: &Ordinal) -> OrdinalSpace {
        let Some(top) = &self.top else {
            return OrdinalSpace::empty();
        };
        if alpha.is_zero() {
            return self.clone();
        }
        let delta = top.div_omega_pow(alpha);
        if delta.is_zero() {
            OrdinalSpace::empty()
        } else if let Some(n) = delta.as_finite() {
            OrdinalSpace::interval(Ordinal::finite(n - 1))
        } else {
            OrdinalSpace::interval(delta)
        }
    }

    /// Number of points when the space is finite.
    pub fn finite_size(&self) -> Option<u64> {
        match &self.top {
            None => Some(0),
            Some(t) => t.as_finite().map(|n| n + 1),
        }
    }

    /// Successive derivatives starting with the space itself. Stops after the
    /// empty space, or after `limit` entries when the rank is infinite.
    pub fn derivative_chain(&self, limit: usize) -> Vec<OrdinalSpace> {
        let mut out = vec![self.clone()];
        let mut cur = self.clone();
        while !cur.is_empty() && out.len() < limit {
            cur = cur.derivative();
            out.push(cur.clone());
        }
        out
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.top.as_ref().is_some_and(|t| x <= t)
    }

    /// CB rank of a point: 0 for zero and successors, otherwise the smallest
    /// exponent of its normal form.
    pub fn point_rank(&self, x: &Ordinal) -> Result<Ordinal, SpaceError> {
        let top = self.top_or_err()?;
        if x > top {
            return Err(SpaceError::OutOfSpace { point: x.clone(), top: top.clone() });
        }
        Ok(if x.is_zero() { Ordinal::zero() } else { x.trailing_exponent() })
    }

    /// Image of a non-isolated point under the relabelling of [`derivative`](Self::derivative).
    pub fn derivative_image(&self, x: &Ordinal) -> Option<Ordinal> {
        if !self.contains(x) || x.is_zero() || x.is_successor() {
            return None;
        }
        let y = x.div_omega();
        // [1, δ] is relabelled as [0, δ-1] or [0, δ]: finite labels shift down, infinite ones stay.
        Some(match y.as_finite() {
            Some(n) => Ordinal::finite(n - 1),
            None => y,
        })
    }

    /// The points of maximal CB rank.
    pub fn top_rank_points(&self) -> Vec<Ordinal> {
        let Some(top) = &self.top else {
            return Vec::new();
        };
        let beta = top.leading_exponent();
        if beta.is_zero() {
            let n = top.as_finite().expect("rank zero means finite");
            return (0..=n).map(Ordinal::finite).collect();
        }
        let unit = Ordinal::omega_pow(beta);
        (1..=top.leading_coefficient()).map(|j| unit.mul_nat(j)).collect()
    }

    pub fn full(&self) -> ClopenSet {
        match &self.top {
            None => ClopenSet { top: None, intervals: Vec::new() },
            Some(t) => ClopenSet { top: Some(t.clone()), intervals: vec![(None, t.clone())] },
        }
    }

    pub fn none(&self) -> ClopenSet {
        ClopenSet { top: self.top.clone(), intervals: Vec::new() }
    }
}

impl fmt::Display for OrdinalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.top {
            None => f.write_str("empty"),
            Some(t) => write!(f, "[0,{t}]"),
        }
    }
}

impl fmt::Debug for OrdinalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Left end of an interval: `None` is the bottom, so `(None, h]` is `[0, h]`.
pub type Lower = Option<Ordinal>;

/// A clopen subset of an ordinal space as a canonical union of intervals
/// `(lo, hi]`: sorted, disjoint and never adjacent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClopenSet {
    top: Option<Ordinal>,
    intervals: Vec<(Lower, Ordinal)>,
}

impl ClopenSet {
    /// Builds a clopen set of `space` from arbitrary intervals `(lo, hi]`.
    pub fn from_intervals(space: &OrdinalSpace, intervals: Vec<(Lower, Ordinal)>) -> Result<Self, SpaceError> {
        for (_, hi) in &intervals {
            if !space.contains(hi) {
                return Err(SpaceError::OutOfSpace {
                    point: hi.clone(),
                    top: space.top().cloned().unwrap_or_default(),
                });
            }
        }
        Ok(ClopenSet { top: space.top.clone(), intervals: normalize(intervals) })
    }

    /// The finite set of points, each as the interval `(x-1, x]` or `[0, 0]`.
    pub fn from_isolated_points(space: &OrdinalSpace, points: &[Ordinal]) -> Result<Self, SpaceError> {
        let ivs = points
            .iter()
            .map(|x| match x.pred() {
                Some(p) => Ok((Some(p), x.clone())),
                None if x.is_zero() => Ok((None, x.clone())),
                None => Err(SpaceError::OutOfSpace { point: x.clone(), top: Ordinal::zero() }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_intervals(space, ivs)
    }

    pub fn space(&self) -> OrdinalSpace {
        OrdinalSpace { top: self.top.clone() }
    }

    pub fn intervals(&self) -> &[(Lower, Ordinal)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo.as_ref().is_none_or(|l| l < x) && x <= hi)
    }

    fn check(&self, other: &ClopenSet) -> Result<(), SpaceError> {
        if self.top == other.top {
            Ok(())
        } else {
            Err(SpaceError::SpaceMismatch)
        }
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet, SpaceError> {
        self.check(other)?;
        let mut ivs = self.intervals.clone();
        ivs.extend(other.intervals.iter().cloned());
        Ok(ClopenSet { top: self.top.clone(), intervals: normalize(ivs) })
    }

    pub fn intersection(&self, other: &ClopenSet) -> Result<ClopenSet, SpaceError> {
        self.check(other)?;
        let mut ivs = Vec::new();
        for (l1, h1) in &self.intervals {
            for (l2, h2) in &other.intervals {
                let lo = l1.clone().max(l2.clone());
                let hi = h1.min(h2).clone();
                ivs.push((lo, hi));
            }
        }
        Ok(ClopenSet { top: self.top.clone(), intervals: normalize(ivs) })
    }

    pub fn complement(&self) -> ClopenSet {
        let Some(top) = &self.top else {
            return self.clone();
        };
        let mut ivs = Vec::new();
        let mut cur: Lower = None;
        for (lo, hi) in &self.intervals {
            if let Some(l) = lo {
                ivs.push((cur.clone(), l.clone()));
            }
            cur = Some(hi.clone());
        }
        ivs.push((cur, top.clone()));
        ClopenSet { top: self.top.clone(), intervals: normalize(ivs) }
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet, SpaceError> {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &ClopenSet) -> Result<bool, SpaceError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// True when every point of the set is isolated in the ambient space.
    pub fn only_isolated_points(&self) -> bool {
        self.intervals.iter().all(|(lo, hi)| match lo {
            None => hi.is_finite(),
            Some(l) => {
                // (l, hi] holds a limit point exactly when hi reaches the next limit above l.
                let next_limit = l.div_omega().succ();
                hi < &Ordinal::omega().mul(&next_limit)
            }
        })
    }
}

fn is_empty_interval(lo: &Lower, hi: &Ordinal) -> bool {
    lo.as_ref().is_some_and(|l| l >= hi)
}

fn normalize(mut ivs: Vec<(Lower, Ordinal)>) -> Vec<(Lower, Ordinal)> {
    ivs.retain(|(lo, hi)| !is_empty_interval(lo, hi));
    ivs.sort();
    let mut out: Vec<(Lower, Ordinal)> = Vec::with_capacity(ivs.len());
    for (lo, hi) in ivs {
        if let Some(last) = out.last_mut() {
            // Overlapping or adjacent: (a, b] and (c, d] with c ≤ b.
            if lo.as_ref().is_none_or(|l| *l <= last.1) {
                if hi > last.1 {
                    last.1 = hi;
                }
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            match lo {
                None => write!(f, "[0,{hi}]")?,
                Some(l) => write!(f, "({l},{hi}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::ord;

    fn sp(s: &str) -> OrdinalSpace {
        OrdinalSpace::interval(ord(s))
    }

    #[test]
    fn cb_rank_examples() {
        assert_eq!(sp("12").cb_rank().unwrap(), ord("0"));
        assert_eq!(sp("w^2").cb_rank().unwrap(), ord("2"));
        assert_eq!(sp("w^2*3+w").cb_rank().unwrap(), ord("2"));
        assert_eq!(OrdinalSpace::empty().cb_rank(), Err(SpaceError::EmptySpace));
    }

    #[test]
    fn derivative_examples() {
        assert!(sp("5").derivative().is_empty());
        assert_eq!(sp("w*2").derivative(), sp("1"));
        assert_eq!(sp("w^2").derivative(), sp("w"));
        assert_eq!(sp("w^w").derivative(), sp("w^w"));
        assert_eq!(sp("w^w").derivative_iter(&ord("w")), sp("0"));
        assert!(OrdinalSpace::empty().derivative().is_empty());
    }

    #[test]
    fn point_rank_examples() {
        assert_eq!(sp("w^2").point_rank(&ord("0")).unwrap(), ord("0"));
        assert_eq!(sp("w^3").point_rank(&ord("w^2*4")).unwrap(), ord("2"));
        assert_eq!(sp("w").point_rank(&ord("w")).unwrap(), ord("1"));
        assert!(matches!(sp("w").point_rank(&ord("w+1")), Err(SpaceError::OutOfSpace { .. })));
    }

    #[test]
    fn finite_rank_chain_counts() {
        for top in ["0", "5", "w", "w*2", "w^2", "w^2*3+w", "w^3+w^2+7"] {
            let x = sp(top);
            let r = x.cb_rank().unwrap().as_finite().unwrap() as usize;
            let chain = x.derivative_chain(100);
            assert_eq!(chain.len(), r + 2, "{top}");
            assert!(chain[r].finite_size().unwrap() >= 1);
            assert!(chain[r + 1].is_empty());
        }
    }

    #[test]
    fn derivative_image_tracks_point_rank() {
        let x = sp("w^2*2+w*3+4");
        let mut points = Vec::new();
        for a in 0..3 {
            for b in 0..4 {
                for c in 0..5 {
                    let p = ord("w^2").mul_nat(a).add(&ord("w").mul_nat(b)).add(&Ordinal::finite(c));
                    if x.contains(&p) {
                        points.push(p);
                    }
                }
            }
        }
        for p in points {
            let r = x.point_rank(&p).unwrap().as_finite().unwrap();
            let (mut space, mut cur) = (x.clone(), p.clone());
            for _ in 0..r {
                cur = space.derivative_image(&cur).expect("survives");
                space = space.derivative();
                assert!(space.contains(&cur));
            }
            assert_eq!(space.derivative_image(&cur), None, "{p}");
        }
    }

    #[test]
    fn clopen_examples() {
        let x = sp("w*2");
        let empty = x.none();
        assert_eq!(empty.complement(), x.full());
        let a = ClopenSet::from_intervals(&sp("w"), vec![(Some(ord("3")), ord("w"))]).unwrap();
        let b = ClopenSet::from_intervals(&sp("w"), vec![(None, ord("5"))]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.intervals(), &[(Some(ord("3")), ord("5"))]);
        let c = ClopenSet::from_intervals(&x, vec![(Some(ord("w")), ord("w*2"))]).unwrap();
        assert!(c.contains(&ord("w*2")));
        assert!(!c.contains(&ord("w")));
        assert_eq!(a.union(&c), Err(SpaceError::SpaceMismatch));
    }

    #[test]
    fn adjacent_intervals_merge() {
        let x = sp("10");
        let a = ClopenSet::from_intervals(&x, vec![(None, ord("2")), (Some(ord("2")), ord("4"))]).unwrap();
        assert_eq!(a.intervals(), &[(None, ord("4"))]);
    }

    #[test]
    fn isolated_point_sets() {
        let x = sp("w*2");
        let pts = ClopenSet::from_isolated_points(&x, &[ord("3"), ord("w+2")]).unwrap();
        assert!(pts.only_isolated_points());
        let tail = ClopenSet::from_intervals(&x, vec![(Some(ord("5")), ord("w"))]).unwrap();
        assert!(!tail.only_isolated_points());
        assert!(!x.full().only_isolated_points());
    }

    /// All subsets of a finite space, each as a clopen set and as a bitmask.
    fn all_subsets(top: u64) -> Vec<(u32, ClopenSet)> {
        let x = OrdinalSpace::interval(Ordinal::finite(top));
        (0u32..1 << (top + 1))
            .map(|mask| {
                let pts: Vec<Ordinal> = (0..=top).filter(|i| mask >> i & 1 == 1).map(Ordinal::finite).collect();
                (mask, ClopenSet::from_isolated_points(&x, &pts).unwrap())
            })
            .collect()
    }

    #[test]
    fn boolean_algebra_laws_exhaustive_small() {
        let top = 4;
        let sets = all_subsets(top);
        let mask_of = |k: &ClopenSet| (0..=top).filter(|i| k.contains(&Ordinal::finite(*i))).fold(0u32, |m, i| m | 1 << i);
        for (ma, a) in &sets {
            assert_eq!(mask_of(a), *ma);
            assert_eq!(mask_of(&a.complement()), !ma & 0b11111);
            assert_eq!(a.complement().complement(), *a);
            for (mb, b) in &sets {
                let u = a.union(b).unwrap();
                let i = a.intersection(b).unwrap();
                assert_eq!(mask_of(&u), ma | mb);
                assert_eq!(mask_of(&i), ma & mb);
                // canonical form: equal sets are equal values
                assert_eq!(u, sets[(ma | mb) as usize].1);
                assert_eq!(a.complement().intersection(&b.complement()).unwrap(), u.complement());
            }
        }
    }
}
