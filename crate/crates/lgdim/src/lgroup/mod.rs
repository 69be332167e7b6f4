//! Concrete lattice-ordered abelian groups and their extended positive cones.
//!
//! Ideals of a Bézout domain correspond to elements of Γ⁺_∞: ideal sum is
//! meet, intersection is join, product is addition, and reverse inclusion is
//! the order. The extra top element ∞ stands for the zero ideal.

mod int;
mod step;

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::boolspace::OrdinalSpace;
use crate::ordinal::{Ordinal, ParseOrdinalError};

pub use int::{IntLattice, ZCone, MAX_RANK};
pub use step::{StepError, StepFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LGroupError {
    #[error("element does not belong to {0}")]
    GroupMismatch(String),
    #[error("element must be strictly positive and finite")]
    NotPositive,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(transparent)]
    Step(#[from] StepError),
}

impl From<ParseOrdinalError> for LGroupError {
    fn from(e: ParseOrdinalError) -> Self {
        LGroupError::Syntax { offset: e.offset, message: e.message }
    }
}

/// The closed catalogue of ℓ-group classes.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LGroup {
    /// ℤⁿ with the product order.
    ProductZ(usize),
    /// ℤⁿ with the lexicographic order.
    LexZ(usize),
    /// ℚ with its usual order.
    RationalChain,
    /// `C(X, ℤ)`, or `C⁻(X, ℤ)` when `minus` holds.
    Step { space: OrdinalSpace, minus: bool },
    /// The zero group.
    Trivial,
}

/// An element of Γ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    Int(Vec<i64>),
    Rat(Rational64),
    Step(StepFunction),
    Unit,
}

/// An element of Γ⁺_∞.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConeElement {
    Fin(GroupElement),
    Infinity,
}

/// Lattice-ordered monoid operations on Γ⁺_∞.
pub trait ConeOps {
    type E: Clone + Eq + Ord + fmt::Debug;

    fn zero(&self) -> Self::E;
    fn inf(&self) -> Self::E;
    fn is_inf(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn meet(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn join(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn leq(&self, a: &Self::E, b: &Self::E) -> bool;
    /// `(a - b) ∨ 0` for finite arguments.
    fn sub_clamped(&self, a: &Self::E, b: &Self::E) -> Self::E;

    /// The ideal quotient `(A : B)` in value-group form.
    fn quotient(&self, a: &Self::E, b: &Self::E) -> Self::E {
        match (self.is_inf(a), self.is_inf(b)) {
            (_, true) => self.zero(),
            (true, false) => self.inf(),
            (false, false) => self.sub_clamped(a, b),
        }
    }
}

impl LGroup {
    /// `C(X, ℤ)` or `C⁻(X, ℤ)`. A minus group over a finite space is zero.
    pub fn step(space: OrdinalSpace, minus: bool) -> Result<LGroup, LGroupError> {
        let rank = space.cb_rank().map_err(|_| LGroupError::InvalidGroup("step group over the empty space".into()))?;
        if minus && rank.is_zero() {
            return Ok(LGroup::Trivial);
        }
        Ok(LGroup::Step { space, minus })
    }

    pub fn validate(&self) -> Result<(), LGroupError> {
        match self {
            LGroup::ProductZ(0) | LGroup::LexZ(0) => Err(LGroupError::InvalidGroup("rank must be at least 1".into())),
            LGroup::Step { space, .. } if space.is_empty() => {
                Err(LGroupError::InvalidGroup("step group over the empty space".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, LGroup::Trivial)
    }

    /// Totally ordered classes: ℤ, lexicographic stacks, ℚ, the zero group,
    /// and `C(X, ℤ)` over a one-point space.
    pub fn is_totally_ordered(&self) -> bool {
        match self {
            LGroup::ProductZ(n) => *n == 1,
            LGroup::LexZ(_) | LGroup::RationalChain | LGroup::Trivial => true,
            LGroup::Step { space, minus } => !minus && space.finite_size() == Some(1),
        }
    }

    /// The fast fixed-width form, when Γ is ℤⁿ with n ≤ 4.
    pub fn int_lattice(&self) -> Option<IntLattice> {
        match self {
            LGroup::ProductZ(n) if *n <= MAX_RANK => Some(IntLattice::product(*n)),
            LGroup::LexZ(n) if *n <= MAX_RANK => Some(IntLattice::lex(*n)),
            _ => None,
        }
    }

    pub fn zero_element(&self) -> GroupElement {
        match self {
            LGroup::ProductZ(n) | LGroup::LexZ(n) => GroupElement::Int(vec![0; *n]),
            LGroup::RationalChain => GroupElement::Rat(Rational64::from_integer(0)),
            LGroup::Step { space, .. } => GroupElement::Step(StepFunction::constant(space, 0)),
            LGroup::Trivial => GroupElement::Unit,
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (LGroup::ProductZ(n) | LGroup::LexZ(n), GroupElement::Int(v)) => v.len() == *n,
            (LGroup::RationalChain, GroupElement::Rat(_)) => true,
            (LGroup::Step { space, minus }, GroupElement::Step(f)) => {
                space.top() == Some(f.top()) && (!minus || f.vanishes_on_top_rank())
            }
            (LGroup::Trivial, GroupElement::Unit) => true,
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<(), LGroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(LGroupError::GroupMismatch(self.to_string()))
        }
    }

    fn check_cone(&self, a: &ConeElement) -> Result<(), LGroupError> {
        match a {
            ConeElement::Infinity => Ok(()),
            ConeElement::Fin(g) => {
                self.check(g)?;
                if self.geq_zero(g) {
                    Ok(())
                } else {
                    Err(LGroupError::GroupMismatch(format!("{g} is not in the positive cone")))
                }
            }
        }
    }

    fn zip(&self, a: &GroupElement, b: &GroupElement, op: Op) -> Result<GroupElement, LGroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (GroupElement::Int(x), GroupElement::Int(y)) => match op {
                Op::Add => GroupElement::Int(x.iter().zip(y).map(|(p, q)| p + q).collect()),
                Op::Meet | Op::Join if matches!(self, LGroup::LexZ(_)) => {
                    let pick_x = (x >= y) == (op == Op::Join);
                    GroupElement::Int(if pick_x { x.clone() } else { y.clone() })
                }
                Op::Meet => GroupElement::Int(x.iter().zip(y).map(|(p, q)| *p.min(q)).collect()),
                Op::Join => GroupElement::Int(x.iter().zip(y).map(|(p, q)| *p.max(q)).collect()),
            },
            (GroupElement::Rat(x), GroupElement::Rat(y)) => GroupElement::Rat(match op {
                Op::Add => x + y,
                Op::Meet => *x.min(y),
                Op::Join => *x.max(y),
            }),
            (GroupElement::Step(f), GroupElement::Step(g)) => GroupElement::Step(match op {
                Op::Add => f.zip_with(g, |p, q| p + q),
                Op::Meet => f.zip_with(g, i64::min),
                Op::Join => f.zip_with(g, i64::max),
            }),
            _ => GroupElement::Unit,
        })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, LGroupError> {
        self.zip(a, b, Op::Add)
    }

    pub fn meet(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, LGroupError> {
        self.zip(a, b, Op::Meet)
    }

    pub fn join(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, LGroupError> {
        self.zip(a, b, Op::Join)
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, LGroupError> {
        self.check(a)?;
        Ok(match a {
            GroupElement::Int(x) => GroupElement::Int(x.iter().map(|p| -p).collect()),
            GroupElement::Rat(x) => GroupElement::Rat(-x),
            GroupElement::Step(f) => GroupElement::Step(f.map(|v| -v)),
            GroupElement::Unit => GroupElement::Unit,
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, LGroupError> {
        self.add(a, &self.neg(b)?)
    }

    pub fn leq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool, LGroupError> {
        Ok(self.meet(a, b)? == *a)
    }

    fn geq_zero(&self, a: &GroupElement) -> bool {
        self.meet(a, &self.zero_element()).is_ok_and(|m| m == self.zero_element())
    }

    pub fn cone_add(&self, a: &ConeElement, b: &ConeElement) -> Result<ConeElement, LGroupError> {
        self.check_cone(a)?;
        self.check_cone(b)?;
        Ok(match (a, b) {
            (ConeElement::Fin(x), ConeElement::Fin(y)) => ConeElement::Fin(self.add(x, y)?),
            _ => ConeElement::Infinity,
        })
    }

    pub fn cone_join(&self, a: &ConeElement, b: &ConeElement) -> Result<ConeElement, LGroupError> {
        self.check_cone(a)?;
        self.check_cone(b)?;
        Ok(match (a, b) {
            (ConeElement::Fin(x), ConeElement::Fin(y)) => ConeElement::Fin(self.join(x, y)?),
            _ => ConeElement::Infinity,
        })
    }

    pub fn cone_meet(&self, a: &ConeElement, b: &ConeElement) -> Result<ConeElement, LGroupError> {
        self.check_cone(a)?;
        self.check_cone(b)?;
        Ok(match (a, b) {
            (ConeElement::Fin(x), ConeElement::Fin(y)) => ConeElement::Fin(self.meet(x, y)?),
            (ConeElement::Infinity, y) => y.clone(),
            (x, ConeElement::Infinity) => x.clone(),
        })
    }

    pub fn cone_leq(&self, a: &ConeElement, b: &ConeElement) -> Result<bool, LGroupError> {
        Ok(self.cone_meet(a, b)? == *a)
    }

    /// Ideal quotient `(A : B)`: `(a - b) ∨ 0`, with `q(∞, b) = ∞` for finite
    /// `b` and `q(a, ∞) = 0`.
    pub fn quotient_op(&self, a: &ConeElement, b: &ConeElement) -> Result<ConeElement, LGroupError> {
        self.check_cone(a)?;
        self.check_cone(b)?;
        Ok(ConeOps::quotient(self, a, b))
    }

    fn strictly_positive<'a>(&self, a: &'a ConeElement) -> Result<&'a GroupElement, LGroupError> {
        self.check_cone(a)?;
        match a {
            ConeElement::Fin(g) if *g != self.zero_element() => Ok(g),
            _ => Err(LGroupError::NotPositive),
        }
    }

    /// `[0, a]` has exactly two elements.
    pub fn is_atom(&self, a: &ConeElement) -> Result<bool, LGroupError> {
        let g = self.strictly_positive(a)?;
        Ok(match (self, g) {
            (LGroup::ProductZ(_), GroupElement::Int(v)) => {
                v.iter().filter(|x| **x != 0).count() == 1 && v.iter().sum::<i64>() == 1
            }
            (LGroup::LexZ(n), GroupElement::Int(v)) => v[..n - 1].iter().all(|x| *x == 0) && v[n - 1] == 1,
            (LGroup::Step { .. }, GroupElement::Step(f)) => single_isolated_support(f) && f.values().iter().all(|v| *v <= 1),
            _ => false,
        })
    }

    /// `[0, a]` is totally ordered.
    pub fn is_chain_element(&self, a: &ConeElement) -> Result<bool, LGroupError> {
        let g = self.strictly_positive(a)?;
        Ok(match (self, g) {
            (LGroup::ProductZ(_), GroupElement::Int(v)) => v.iter().filter(|x| **x != 0).count() == 1,
            (LGroup::Step { .. }, GroupElement::Step(f)) => single_isolated_support(f),
            _ => true,
        })
    }

    /// Parses an element literal of this group: `3`, `(1,-2)`, `3/2`, or
    /// `step(c1:v1,...,top:vk)`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, LGroupError> {
        let t = s.trim();
        let syntax = |message: &str| LGroupError::Syntax { offset: 0, message: message.to_string() };
        let g = match self {
            LGroup::ProductZ(_) | LGroup::LexZ(_) => {
                let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
                let v = inner
                    .split(',')
                    .map(|p| p.trim().parse::<i64>().map_err(|_| syntax("expected an integer vector")))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupElement::Int(v)
            }
            LGroup::RationalChain => GroupElement::Rat(t.parse::<Rational64>().map_err(|_| syntax("expected a rational"))?),
            LGroup::Step { space, .. } => {
                let inner = t
                    .strip_prefix("step(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| syntax("expected step(cut:value,...)"))?;
                let mut pieces = Vec::new();
                for part in inner.split(',') {
                    let (c, v) = part.split_once(':').ok_or_else(|| syntax("expected cut:value"))?;
                    let v = v.trim().parse::<i64>().map_err(|_| syntax("expected an integer value"))?;
                    pieces.push((c.parse::<Ordinal>()?, v));
                }
                GroupElement::Step(StepFunction::from_pieces(space, pieces)?)
            }
            LGroup::Trivial => GroupElement::Unit,
        };
        self.check(&g)?;
        Ok(g)
    }

    /// Parses a cone literal: an element literal or `inf`.
    pub fn parse_cone(&self, s: &str) -> Result<ConeElement, LGroupError> {
        if matches!(s.trim(), "inf" | "∞") {
            return Ok(ConeElement::Infinity);
        }
        let c = ConeElement::Fin(self.parse_element(s)?);
        self.check_cone(&c)?;
        Ok(c)
    }

    /// Catalogue of the multiplication prime filters of Γ⁺.
    pub fn mult_prime_filters_report(&self) -> MultPrimeReport {
        let name = self.to_string();
        match self {
            LGroup::ProductZ(n) => MultPrimeReport {
                group: name,
                filters: (1..=*n).map(|i| format!("up(e{i})")).collect(),
                count: Some(*n as u64),
                all_maximal: true,
                krull_dim_one: true,
            },
            LGroup::LexZ(n) => MultPrimeReport {
                group: name,
                filters: (1..=*n).map(|i| format!("{{x : (x1..x{i}) > 0}}")).collect(),
                count: Some(*n as u64),
                all_maximal: *n == 1,
                krull_dim_one: *n == 1,
            },
            LGroup::RationalChain => MultPrimeReport {
                group: name,
                filters: vec!["{x : x > 0}".into()],
                count: Some(1),
                all_maximal: true,
                krull_dim_one: true,
            },
            LGroup::Step { space, minus } => {
                let top = space.top().expect("validated").clone();
                let beta = top.leading_exponent();
                let (filters, count) = if *minus {
                    (vec![format!("F_x = {{f : f(x) > 0}} for x in [0,{top}] with rank(x) < {beta}")], None)
                } else {
                    let count = space.finite_size();
                    (vec![format!("F_x = {{f : f(x) > 0}} for x in [0,{top}]")], count)
                };
                MultPrimeReport { group: name, filters, count, all_maximal: true, krull_dim_one: true }
            }
            LGroup::Trivial => MultPrimeReport {
                group: name,
                filters: Vec::new(),
                count: Some(0),
                all_maximal: true,
                krull_dim_one: false,
            },
        }
    }
}

/// Multiplication prime filters of Γ⁺ and whether they are all maximal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultPrimeReport {
    pub group: String,
    /// Each filter, or a description of the indexed family.
    pub filters: Vec<String>,
    /// Number of filters, `None` when infinite.
    pub count: Option<u64>,
    pub all_maximal: bool,
    /// Γ non-trivial and every multiplication prime filter maximal.
    pub krull_dim_one: bool,
}

fn single_isolated_support(f: &StepFunction) -> bool {
    let s = f.supp();
    matches!(s.intervals(), [(lo, hi)] if match lo {
        None => hi.is_zero(),
        Some(l) => hi.is_successor() && hi.pred().as_ref() == Some(l),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    Add,
    Meet,
    Join,
}

impl ConeOps for LGroup {
    type E = ConeElement;

    fn zero(&self) -> ConeElement {
        ConeElement::Fin(self.zero_element())
    }

    fn inf(&self) -> ConeElement {
        ConeElement::Infinity
    }

    fn is_inf(&self, a: &ConeElement) -> bool {
        matches!(a, ConeElement::Infinity)
    }

    fn add(&self, a: &ConeElement, b: &ConeElement) -> ConeElement {
        self.cone_add(a, b).expect("cone elements belong to the group")
    }

    fn meet(&self, a: &ConeElement, b: &ConeElement) -> ConeElement {
        self.cone_meet(a, b).expect("cone elements belong to the group")
    }

    fn join(&self, a: &ConeElement, b: &ConeElement) -> ConeElement {
        self.cone_join(a, b).expect("cone elements belong to the group")
    }

    fn leq(&self, a: &ConeElement, b: &ConeElement) -> bool {
        self.cone_leq(a, b).expect("cone elements belong to the group")
    }

    fn sub_clamped(&self, a: &ConeElement, b: &ConeElement) -> ConeElement {
        match (a, b) {
            (ConeElement::Fin(x), ConeElement::Fin(y)) => {
                let d = LGroup::sub(self, x, y).expect("cone elements belong to the group");
                ConeElement::Fin(LGroup::join(self, &d, &self.zero_element()).expect("same group"))
            }
            _ => unreachable!("sub_clamped takes finite arguments"),
        }
    }
}

impl fmt::Display for LGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LGroup::ProductZ(1) => f.write_str("Z"),
            LGroup::ProductZ(n) => write!(f, "Z^{n}"),
            LGroup::LexZ(n) => write!(f, "lex({})", vec!["Z"; *n].join(",")),
            LGroup::RationalChain => f.write_str("Q"),
            LGroup::Step { space, minus } => {
                let top = space.top().cloned().unwrap_or_default();
                if *minus {
                    write!(f, "Cminus({top})")
                } else {
                    write!(f, "C({top})")
                }
            }
            LGroup::Trivial => f.write_str("0"),
        }
    }
}

impl fmt::Debug for LGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LGroup {
    type Err = LGroupError;

    /// `Z | Z^n | lex(Z,...) | Q | C(ord) | Cminus(ord) | 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        let err = |offset: usize, message: &str| LGroupError::Syntax { offset: lead + offset, message: message.to_string() };
        let ordinal_arg = |prefix: &str| -> Result<Option<Ordinal>, LGroupError> {
            let Some(rest) = t.strip_prefix(prefix) else {
                return Ok(None);
            };
            let inner = rest.strip_suffix(')').ok_or_else(|| err(t.len(), "expected ')'"))?;
            inner.parse::<Ordinal>().map(Some).map_err(|e| err(prefix.len() + e.offset, &e.message))
        };
        if t == "Z" {
            return Ok(LGroup::ProductZ(1));
        }
        if t == "Q" {
            return Ok(LGroup::RationalChain);
        }
        if t == "0" || t == "trivial" {
            return Ok(LGroup::Trivial);
        }
        if let Some(n) = t.strip_prefix("Z^") {
            let n: usize = n.trim().parse().map_err(|_| err(2, "expected a positive integer"))?;
            if n == 0 {
                return Err(err(2, "rank must be at least 1"));
            }
            return Ok(LGroup::ProductZ(n));
        }
        if let Some(rest) = t.strip_prefix("lex(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| err(t.len(), "expected ')'"))?;
            let mut n = 0;
            let mut offset = 4;
            for part in inner.split(',') {
                if part.trim() != "Z" {
                    return Err(err(offset, "lex entries must be Z"));
                }
                offset += part.len() + 1;
                n += 1;
            }
            return Ok(LGroup::LexZ(n));
        }
        if let Some(top) = ordinal_arg("Cminus(")? {
            return LGroup::step(OrdinalSpace::interval(top), true);
        }
        if let Some(top) = ordinal_arg("C(")? {
            return LGroup::step(OrdinalSpace::interval(top), false);
        }
        Err(err(0, "expected Z, Z^n, lex(Z,...), Q, C(ord) or Cminus(ord)"))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Int(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElement::Int(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Rat(r) => write!(f, "{r}"),
            GroupElement::Step(s) => write!(f, "{s}"),
            GroupElement::Unit => f.write_str("0"),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ConeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeElement::Fin(g) => write!(f, "{g}"),
            ConeElement::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ConeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl IntLattice {
    pub fn to_cone(&self, a: &ConeElement) -> Option<ZCone> {
        match a {
            ConeElement::Infinity => Some(ZCone::Inf),
            ConeElement::Fin(GroupElement::Int(v)) if v.len() == self.rank() => Some(ZCone::fin(v)),
            _ => None,
        }
    }

    pub fn from_cone(&self, a: &ZCone) -> ConeElement {
        match a {
            ZCone::Inf => ConeElement::Infinity,
            ZCone::Fin(v) => ConeElement::Fin(GroupElement::Int(v[..self.rank()].to_vec())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolspace::ClopenSet;
    use crate::ordinal::ord;

    fn int(v: &[i64]) -> GroupElement {
        GroupElement::Int(v.to_vec())
    }

    fn fin(v: &[i64]) -> ConeElement {
        ConeElement::Fin(int(v))
    }

    #[test]
    fn element_ops_examples() {
        let p2 = LGroup::ProductZ(2);
        assert_eq!(p2.meet(&int(&[2, 5]), &int(&[4, 1])).unwrap(), int(&[2, 1]));
        let l2 = LGroup::LexZ(2);
        assert_eq!(l2.join(&int(&[0, 7]), &int(&[1, -3])).unwrap(), int(&[1, -3]));
        assert_eq!(p2.cone_add(&ConeElement::Infinity, &fin(&[1, 1])).unwrap(), ConeElement::Infinity);
        assert!(matches!(p2.add(&int(&[1]), &int(&[1, 2])), Err(LGroupError::GroupMismatch(_))));
    }

    #[test]
    fn quotient_examples() {
        let z = LGroup::ProductZ(1);
        assert_eq!(z.quotient_op(&fin(&[3]), &fin(&[1])).unwrap(), fin(&[2]));
        assert_eq!(z.quotient_op(&fin(&[1]), &fin(&[4])).unwrap(), fin(&[0]));
        let l2 = LGroup::LexZ(2);
        assert_eq!(l2.quotient_op(&fin(&[1, 0]), &fin(&[0, 5])).unwrap(), fin(&[1, -5]));
        assert_eq!(z.quotient_op(&ConeElement::Infinity, &ConeElement::Infinity).unwrap(), fin(&[0]));
    }

    #[test]
    fn atoms_and_chain_elements() {
        let l2 = LGroup::LexZ(2);
        assert!(l2.is_atom(&fin(&[0, 1])).unwrap());
        assert!(!l2.is_atom(&fin(&[1, 0])).unwrap());
        assert!(l2.is_chain_element(&fin(&[1, 0])).unwrap());
        let p2 = LGroup::ProductZ(2);
        assert!(!p2.is_chain_element(&fin(&[1, 1])).unwrap());
        assert!(p2.is_chain_element(&fin(&[3, 0])).unwrap());
        assert!(!p2.is_atom(&fin(&[3, 0])).unwrap());
        assert_eq!(p2.is_atom(&fin(&[0, 0])), Err(LGroupError::NotPositive));
        assert_eq!(p2.is_atom(&ConeElement::Infinity), Err(LGroupError::NotPositive));
        assert!(!LGroup::RationalChain.is_atom(&ConeElement::Fin(GroupElement::Rat(Rational64::new(1, 2)))).unwrap());
    }

    #[test]
    fn step_atom_is_isolated_point_indicator() {
        let g: LGroup = "C(w)".parse().unwrap();
        let f = g.parse_element("step(3:0,4:1,w:0)").unwrap();
        assert!(g.is_atom(&ConeElement::Fin(f.clone())).unwrap());
        let x = OrdinalSpace::interval(ord("w"));
        let tail = StepFunction::indicator(&ClopenSet::from_intervals(&x, vec![(Some(ord("4")), ord("w"))]).unwrap(), 1);
        assert!(!g.is_chain_element(&ConeElement::Fin(GroupElement::Step(tail))).unwrap());
        let two = g.parse_element("step(3:0,4:2,w:0)").unwrap();
        assert!(!g.is_atom(&ConeElement::Fin(two.clone())).unwrap());
        assert!(g.is_chain_element(&ConeElement::Fin(two)).unwrap());
    }

    #[test]
    fn minus_groups_vanish_on_top_rank_points() {
        let g: LGroup = "Cminus(w*2)".parse().unwrap();
        assert!(g.parse_element("step(w:1,w*2:0)").is_err());
        assert!(g.parse_element("step(5:1,w*2:0)").is_ok());
        assert_eq!("Cminus(7)".parse::<LGroup>().unwrap(), LGroup::Trivial);
    }

    #[test]
    fn parse_and_render_specs() {
        for s in ["Z", "Z^3", "lex(Z,Z)", "Q", "C(w^2)", "Cminus(w^w)", "0"] {
            let g: LGroup = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert_eq!("lex(Z,Z)".parse::<LGroup>().unwrap(), LGroup::LexZ(2));
        let e = "lex(Z,Q)".parse::<LGroup>().unwrap_err();
        assert!(matches!(e, LGroupError::Syntax { offset: 6, .. }), "{e:?}");
        let e = "C(w^x)".parse::<LGroup>().unwrap_err();
        assert!(matches!(e, LGroupError::Syntax { offset: 4, .. }), "{e:?}");
        assert!("Z^0".parse::<LGroup>().is_err());
        assert!("R".parse::<LGroup>().is_err());
    }

    #[test]
    fn mult_prime_catalogue() {
        let r = LGroup::ProductZ(2).mult_prime_filters_report();
        assert_eq!(r.count, Some(2));
        assert!(r.krull_dim_one);
        let r = LGroup::LexZ(2).mult_prime_filters_report();
        assert_eq!(r.count, Some(2));
        assert!(!r.krull_dim_one);
        let r = "C(w)".parse::<LGroup>().unwrap().mult_prime_filters_report();
        assert!(r.all_maximal && r.count.is_none());
        assert!(!LGroup::Trivial.mult_prime_filters_report().krull_dim_one);
    }
}
