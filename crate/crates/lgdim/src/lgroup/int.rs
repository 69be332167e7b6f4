//! Copyable cone elements for ℤⁿ (product or lexicographic order), n ≤ 4.
//!
//! The pp-formula and filter code runs millions of comparisons in its
//! exhaustive checks, so it works on this fixed-width form rather than on
//! heap vectors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ConeOps;

pub const MAX_RANK: usize = 4;

/// An element of Γ⁺_∞ for Γ = ℤⁿ. Unused coordinates are zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZCone {
    Fin([i64; MAX_RANK]),
    Inf,
}

impl ZCone {
    pub fn fin(v: &[i64]) -> ZCone {
        assert!(v.len() <= MAX_RANK);
        let mut a = [0; MAX_RANK];
        a[..v.len()].copy_from_slice(v);
        ZCone::Fin(a)
    }

    pub fn int(x: i64) -> ZCone {
        ZCone::fin(&[x])
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ZCone::Inf)
    }

    pub fn coords(&self) -> Option<&[i64; MAX_RANK]> {
        match self {
            ZCone::Fin(a) => Some(a),
            ZCone::Inf => None,
        }
    }

    /// Coordinate `i`, with ∞ mapped to `None`.
    pub fn coord(&self, i: usize) -> Option<i64> {
        self.coords().map(|a| a[i])
    }
}

impl fmt::Debug for ZCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZCone::Inf => f.write_str("inf"),
            ZCone::Fin(a) => write!(f, "{a:?}"),
        }
    }
}

/// ℤⁿ with the product order (`lex = false`) or the lexicographic order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntLattice {
    n: usize,
    lex: bool,
}

impl IntLattice {
    pub fn product(n: usize) -> IntLattice {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} unsupported");
        IntLattice { n, lex: false }
    }

    pub fn lex(n: usize) -> IntLattice {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} unsupported");
        IntLattice { n, lex: true }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_lex(&self) -> bool {
        self.lex
    }

    pub fn is_totally_ordered(&self) -> bool {
        self.lex || self.n == 1
    }

    pub fn unit(&self, i: usize) -> ZCone {
        let mut a = [0; MAX_RANK];
        a[i] = 1;
        ZCone::Fin(a)
    }

    pub fn cmp_fin(&self, a: &[i64; MAX_RANK], b: &[i64; MAX_RANK]) -> Option<Ordering> {
        if self.lex {
            return Some(a[..self.n].cmp(&b[..self.n]));
        }
        let (mut le, mut ge) = (true, true);
        for i in 0..self.n {
            le &= a[i] <= b[i];
            ge &= a[i] >= b[i];
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            _ => None,
        }
    }

    pub fn is_positive(&self, a: &ZCone) -> bool {
        match a {
            ZCone::Inf => true,
            ZCone::Fin(v) => self.cmp_fin(v, &[0; MAX_RANK]).is_some_and(|o| o != Ordering::Less),
        }
    }

    pub fn sub_fin(&self, a: &[i64; MAX_RANK], b: &[i64; MAX_RANK]) -> [i64; MAX_RANK] {
        let mut r = [0; MAX_RANK];
        for i in 0..self.n {
            r[i] = a[i] - b[i];
        }
        r
    }

    fn lattice_fin(&self, a: &[i64; MAX_RANK], b: &[i64; MAX_RANK], want_max: bool) -> [i64; MAX_RANK] {
        if self.lex {
            let a_big = a[..self.n] >= b[..self.n];
            return if a_big == want_max { *a } else { *b };
        }
        let mut r = [0; MAX_RANK];
        for i in 0..self.n {
            r[i] = if want_max { a[i].max(b[i]) } else { a[i].min(b[i]) };
        }
        r
    }
}

impl ConeOps for IntLattice {
    type E = ZCone;

    fn zero(&self) -> ZCone {
        ZCone::Fin([0; MAX_RANK])
    }

    fn inf(&self) -> ZCone {
        ZCone::Inf
    }

    fn is_inf(&self, a: &ZCone) -> bool {
        a.is_inf()
    }

    fn add(&self, a: &ZCone, b: &ZCone) -> ZCone {
        match (a, b) {
            (ZCone::Fin(x), ZCone::Fin(y)) => {
                let mut r = [0; MAX_RANK];
                for i in 0..self.n {
                    r[i] = x[i] + y[i];
                }
                ZCone::Fin(r)
            }
            _ => ZCone::Inf,
        }
    }

    fn meet(&self, a: &ZCone, b: &ZCone) -> ZCone {
        match (a, b) {
            (ZCone::Fin(x), ZCone::Fin(y)) => ZCone::Fin(self.lattice_fin(x, y, false)),
            (ZCone::Inf, y) => *y,
            (x, ZCone::Inf) => *x,
        }
    }

    fn join(&self, a: &ZCone, b: &ZCone) -> ZCone {
        match (a, b) {
            (ZCone::Fin(x), ZCone::Fin(y)) => ZCone::Fin(self.lattice_fin(x, y, true)),
            _ => ZCone::Inf,
        }
    }

    fn leq(&self, a: &ZCone, b: &ZCone) -> bool {
        match (a, b) {
            (_, ZCone::Inf) => true,
            (ZCone::Inf, _) => false,
            (ZCone::Fin(x), ZCone::Fin(y)) => matches!(self.cmp_fin(x, y), Some(Ordering::Less | Ordering::Equal)),
        }
    }

    fn sub_clamped(&self, a: &ZCone, b: &ZCone) -> ZCone {
        match (a, b) {
            (ZCone::Fin(x), ZCone::Fin(y)) => {
                let d = self.sub_fin(x, y);
                ZCone::Fin(self.lattice_fin(&d, &[0; MAX_RANK], true))
            }
            _ => unreachable!("sub_clamped takes finite arguments"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_lex_lattice_ops() {
        let p = IntLattice::product(2);
        assert_eq!(p.meet(&ZCone::fin(&[2, 5]), &ZCone::fin(&[4, 1])), ZCone::fin(&[2, 1]));
        let l = IntLattice::lex(2);
        assert_eq!(l.join(&ZCone::fin(&[0, 7]), &ZCone::fin(&[1, -3])), ZCone::fin(&[1, -3]));
        assert_eq!(l.add(&ZCone::Inf, &ZCone::fin(&[1, 1])), ZCone::Inf);
    }

    #[test]
    fn quotient_conventions() {
        let z = IntLattice::product(1);
        assert_eq!(z.quotient(&ZCone::int(3), &ZCone::int(1)), ZCone::int(2));
        assert_eq!(z.quotient(&ZCone::int(1), &ZCone::int(4)), ZCone::int(0));
        assert_eq!(z.quotient(&ZCone::Inf, &ZCone::int(4)), ZCone::Inf);
        assert_eq!(z.quotient(&ZCone::int(4), &ZCone::Inf), ZCone::int(0));
        assert_eq!(z.quotient(&ZCone::Inf, &ZCone::Inf), ZCone::int(0));
        let l = IntLattice::lex(2);
        assert_eq!(l.quotient(&ZCone::fin(&[1, 0]), &ZCone::fin(&[0, 5])), ZCone::fin(&[1, -5]));
    }
}
