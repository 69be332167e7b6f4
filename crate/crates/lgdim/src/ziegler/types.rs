//! pp-types over Γ = ℤ as functions `F : Γ⁺_∞ → ideals of Γ⁺_∞`.
//!
//! `F_p(b) = {a : a|x + xb=0 ∈ p}`. A function arises from a pp-type exactly
//! when it satisfies
//! (2) `F(∞)` is everything,
//! (3) `a ∈ F(b)` implies `a ∈ F(b + b')`,
//! (4) `a ∈ F(b + b')` and `a ∧ b' = 0` imply `a ∈ F(b)`,
//! (5) `F(a ∧ b) = F(a) ∩ F(b)`.

use serde::{Deserialize, Serialize};

use super::pp::{leq_pp, meet, top, PpFormula};
use crate::filters::IdealFilter;
use crate::lgroup::{IntLattice, ZCone};

/// Largest grid accepted by [`pp_type_table`].
pub const MAX_GRID: u64 = 4096;

/// A lattice ideal of `ℕ ∪ {∞}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeIdeal {
    /// `{0, …, m}`.
    Down(u64),
    /// `ℕ`.
    Finite,
    /// `ℕ ∪ {∞}`.
    All,
}

impl TypeIdeal {
    /// `a = None` is `∞`.
    pub fn contains(&self, a: Option<u64>) -> bool {
        match (self, a) {
            (TypeIdeal::All, _) => true,
            (TypeIdeal::Finite, a) => a.is_some(),
            (TypeIdeal::Down(m), Some(a)) => a <= *m,
            (TypeIdeal::Down(_), None) => false,
        }
    }

    pub fn intersect(&self, other: &TypeIdeal) -> TypeIdeal {
        match (self, other) {
            (TypeIdeal::All, x) | (x, TypeIdeal::All) => *x,
            (TypeIdeal::Finite, x) | (x, TypeIdeal::Finite) => *x,
            (TypeIdeal::Down(a), TypeIdeal::Down(b)) => TypeIdeal::Down(*a.min(b)),
        }
    }
}

/// `F` on the grid `b ∈ {0, …, grid} ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpTypeTable {
    pub grid: u64,
    /// `F(b)` for `b = 0..=grid`.
    pub finite: Vec<TypeIdeal>,
    pub at_infinity: TypeIdeal,
}

impl PpTypeTable {
    pub fn get(&self, b: Option<u64>) -> Option<TypeIdeal> {
        match b {
            None => Some(self.at_infinity),
            Some(b) => self.finite.get(b as usize).copied(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeTableError {
    #[error("grid {0} exceeds the supported fragment")]
    UnboundedFragment(u64),
}

/// A failed condition with the witnesses `(a, b, b')`; `None` is `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: u8,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub b2: Option<u64>,
}

fn cone(x: Option<u64>) -> ZCone {
    x.map_or(ZCone::Inf, |v| ZCone::int(v as i64))
}

/// The table of the pp-type generated by `gens` (their meet).
pub fn pp_type_table(gens: &[PpFormula<ZCone>], grid: u64) -> Result<PpTypeTable, TypeTableError> {
    if grid > MAX_GRID {
        return Err(TypeTableError::UnboundedFragment(grid));
    }
    let z = IntLattice::product(1);
    let phi = gens.iter().fold(top(&z), |acc, g| meet(&z, &acc, g));
    // Membership of finite a is decided once a exceeds every parameter.
    let params: u64 = phi.summands().iter().flat_map(|(c, d)| [c, d]).filter_map(|x| x.coord(0)).map(|x| x as u64).sum();
    let in_type = |a: Option<u64>, b: Option<u64>| leq_pp(&z, &phi, &PpFormula::new(vec![(cone(a), ZCone::Inf), (ZCone::int(0), cone(b))]));
    let ideal = |b: Option<u64>| {
        if in_type(None, b) {
            return TypeIdeal::All;
        }
        let cap = 2 * (params + b.unwrap_or(0)) + 2;
        if in_type(Some(cap), b) {
            return TypeIdeal::Finite;
        }
        let m = (0..cap).take_while(|a| in_type(Some(*a), b)).last().unwrap_or(0);
        TypeIdeal::Down(m)
    };
    Ok(PpTypeTable { grid, finite: (0..=grid).map(|b| ideal(Some(b))).collect(), at_infinity: ideal(None) })
}

/// The table of the irreducible type `p(I, J)`: `F(b)` is everything when
/// `b ∈ I` and `{a : a ∉ J}` otherwise.
pub fn table_from_pair(i: &IdealFilter, j: &IdealFilter, grid: u64) -> PpTypeTable {
    let z = IntLattice::product(1);
    let outside_j = match j {
        IdealFilter::Zero => TypeIdeal::Finite,
        IdealFilter::Principal(g) => TypeIdeal::Down(g.coord(0).expect("finite") as u64 - 1),
        IdealFilter::LimitCut { .. } => unreachable!("no limit cuts in Z"),
    };
    let at = |b: Option<u64>| if i.contains(&z, &cone(b)) { TypeIdeal::All } else { outside_j };
    PpTypeTable { grid, finite: (0..=grid).map(|b| at(Some(b))).collect(), at_infinity: at(None) }
}

/// Checks conditions (2) to (5) on the grid. Sums leaving the grid are skipped.
pub fn check_type_table(t: &PpTypeTable) -> Result<(), Violation> {
    let pts: Vec<Option<u64>> = (0..=t.grid).map(Some).chain([None]).collect();
    let add = |x: Option<u64>, y: Option<u64>| x.zip(y).map(|(x, y)| x + y);
    let violation = |condition, a, b, b2| Violation { condition, a, b, b2 };
    if t.at_infinity != TypeIdeal::All {
        return Err(violation(2, None, None, None));
    }
    for &b in &pts {
        let fb = t.get(b).expect("grid point");
        for &b2 in &pts {
            let Some(fbb) = t.get(add(b, b2)) else { continue };
            for &a in &pts {
                if fb.contains(a) && !fbb.contains(a) {
                    return Err(violation(3, a, b, b2));
                }
                let meet_zero = a == Some(0) || b2 == Some(0);
                if fbb.contains(a) && meet_zero && !fb.contains(a) {
                    return Err(violation(4, a, b, b2));
                }
            }
        }
        for &a in &pts {
            let m = match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) | (None, x) => x,
            };
            let fa = t.get(a).expect("grid point");
            if t.get(m).expect("grid point") != fa.intersect(&fb) {
                return Err(violation(5, a, b, None));
            }
        }
    }
    Ok(())
}

pub fn validate_type_table(t: &PpTypeTable) -> bool {
    check_type_table(t).is_ok()
}

/// The shifted form of (3), `a ∈ F(b)` implies `a + b' ∈ F(b + b')`.
/// Tables of actual types can fail it, so the validator does not use it.
pub fn shifted_condition_holds(t: &PpTypeTable) -> bool {
    let pts: Vec<Option<u64>> = (0..=t.grid).map(Some).chain([None]).collect();
    let add = |x: Option<u64>, y: Option<u64>| x.zip(y).map(|(x, y)| x + y);
    pts.iter().all(|&b| {
        pts.iter().all(|&b2| {
            let Some(fbb) = t.get(add(b, b2)) else { return true };
            let fb = t.get(b).expect("grid point");
            pts.iter().all(|&a| !fb.contains(a) || fbb.contains(add(a, b2)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_of_one() {
        // 1 ∈ R: xb=0 only for b = ∞, and a|1 only for a unit.
        let t = table_from_pair(&IdealFilter::Zero, &IdealFilter::principal(&[1]), 6);
        assert_eq!(t.finite[3], TypeIdeal::Down(0));
        assert_eq!(t.at_infinity, TypeIdeal::All);
        assert!(validate_type_table(&t));
        // 0 ∈ F(0) but 1 ∉ F(1): 1 is not divisible by p.
        assert!(!shifted_condition_holds(&t));
        let gens = [PpFormula::single(ZCone::int(0), ZCone::Inf)];
        assert_eq!(pp_type_table(&gens, 6).unwrap().at_infinity, TypeIdeal::All);
    }

    #[test]
    fn generated_table_matches_pair_table() {
        // p(↑2, ↑3) is generated by x p^2 = 0 and p^2 | x.
        let gens = [PpFormula::single(ZCone::int(0), ZCone::int(2)), PpFormula::single(ZCone::int(2), ZCone::Inf)];
        let t = pp_type_table(&gens, 8).unwrap();
        assert_eq!(t, table_from_pair(&IdealFilter::principal(&[2]), &IdealFilter::principal(&[3]), 8));
    }

    #[test]
    fn corrupted_table_fails() {
        let mut t = table_from_pair(&IdealFilter::principal(&[2]), &IdealFilter::principal(&[3]), 6);
        t.finite[3] = TypeIdeal::Down(0);
        assert!(!validate_type_table(&t));
        let mut t = table_from_pair(&IdealFilter::principal(&[2]), &IdealFilter::principal(&[3]), 6);
        t.at_infinity = TypeIdeal::Finite;
        assert_eq!(check_type_table(&t).unwrap_err().condition, 2);
        assert!(pp_type_table(&[], MAX_GRID + 1).is_err());
    }
}
