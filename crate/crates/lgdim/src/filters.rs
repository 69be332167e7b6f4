//! Filters of Γ⁺_∞ for Γ = ℤⁿ, standing for ideals of a Bézout domain.
//!
//! An ideal `I` corresponds to the filter `{a : aR ⊆ I} ∪ {∞}`. Prime filters
//! correspond to weakly prime ideals.
//!
//! The representation is a closed catalogue. Under the product order every
//! proper filter is `↑v` or `{∞}`, because meets stabilise coordinatewise.
//! Under the lexicographic order a proper filter is determined by the cut it
//! makes in ℤⁿ. For ℤ² the only cuts are "at or above g" and "first
//! coordinate above p", so `Principal`, `LimitCut` and `Zero` are exhaustive
//! there.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lgroup::{ConeOps, IntLattice, ZCone, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FilterError {
    #[error("invalid filter: {0}")]
    Invalid(String),
    #[error("the result is the whole cone, not a proper filter")]
    ImproperResult,
    #[error("shift by infinity")]
    InfiniteShift,
    #[error("filter is not prime")]
    NotPrime,
    #[error("shift element lies in the filter being divided")]
    IllegalShift,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A proper filter of Γ⁺_∞.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealFilter {
    /// `↑g` for finite `g > 0`.
    Principal(ZCone),
    /// `{x : (x₁..x_level) > prefix} ∪ {∞}` in the lexicographic order.
    LimitCut { level: usize, prefix: [i64; MAX_RANK] },
    /// `{∞}`, the zero ideal.
    Zero,
}

/// JSON form of a filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum FilterView {
    Principal { gen: Vec<i64> },
    Limitcut { level: usize, prefix: Vec<i64> },
    Zero,
}

fn coords(a: &ZCone) -> [i64; MAX_RANK] {
    *a.coords().expect("finite")
}

impl IdealFilter {
    pub fn principal(v: &[i64]) -> IdealFilter {
        IdealFilter::Principal(ZCone::fin(v))
    }

    pub fn limit_cut(prefix: &[i64]) -> IdealFilter {
        let mut p = [0; MAX_RANK];
        p[..prefix.len()].copy_from_slice(prefix);
        IdealFilter::LimitCut { level: prefix.len(), prefix: p }
    }

    pub fn validate(&self, lat: &IntLattice) -> Result<(), FilterError> {
        let n = lat.rank();
        match self {
            IdealFilter::Principal(ZCone::Inf) => Err(FilterError::Invalid("generator must be finite".into())),
            IdealFilter::Principal(g) => {
                if g.coords().is_some_and(|v| v[n..].iter().any(|x| *x != 0)) {
                    return Err(FilterError::Invalid("generator has too many coordinates".into()));
                }
                if !lat.is_positive(g) || *g == lat.zero() {
                    return Err(FilterError::Invalid("generator must be strictly positive".into()));
                }
                Ok(())
            }
            IdealFilter::LimitCut { level, prefix } => {
                if !lat.is_lex() || *level == 0 || *level >= n {
                    return Err(FilterError::Invalid("limit cuts need a lexicographic order and 0 < level < rank".into()));
                }
                if prefix[*level..].iter().any(|x| *x != 0) || prefix[..*level] < [0; MAX_RANK][..*level] {
                    return Err(FilterError::Invalid("prefix must be non-negative".into()));
                }
                Ok(())
            }
            IdealFilter::Zero => Ok(()),
        }
    }

    pub fn contains(&self, lat: &IntLattice, x: &ZCone) -> bool {
        match (self, x) {
            (_, ZCone::Inf) => true,
            (IdealFilter::Zero, _) => false,
            (IdealFilter::Principal(g), _) => lat.leq(g, x),
            (IdealFilter::LimitCut { level, prefix }, ZCone::Fin(v)) => v[..*level] > prefix[..*level],
        }
    }

    pub fn view(&self, lat: &IntLattice) -> FilterView {
        let n = lat.rank();
        match self {
            IdealFilter::Principal(g) => FilterView::Principal { gen: coords(g)[..n].to_vec() },
            IdealFilter::LimitCut { level, prefix } => FilterView::Limitcut { level: *level, prefix: prefix[..*level].to_vec() },
            IdealFilter::Zero => FilterView::Zero,
        }
    }

    /// `up(g)`, `cut(p)` or `zero`.
    pub fn render(&self, lat: &IntLattice) -> String {
        let tuple = |v: &[i64]| {
            if v.len() == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            }
        };
        match self {
            IdealFilter::Principal(g) => format!("up({})", tuple(&coords(g)[..lat.rank()])),
            IdealFilter::LimitCut { level, prefix } => format!("cut({})", tuple(&prefix[..*level])),
            IdealFilter::Zero => "zero".into(),
        }
    }

    /// Lexicographic threshold: `x ∈ F` iff `x ≥ key` for finite `x`.
    /// `i64::MIN` stands for −∞.
    fn lex_key(&self) -> Option<[i64; MAX_RANK]> {
        match self {
            IdealFilter::Principal(g) => Some(coords(g)),
            IdealFilter::LimitCut { level, prefix } => {
                let mut k = [i64::MIN; MAX_RANK];
                k[..*level].copy_from_slice(&prefix[..*level]);
                k[level - 1] += 1;
                Some(k)
            }
            IdealFilter::Zero => None,
        }
    }
}

/// `F ⊆ G`.
pub fn subset(lat: &IntLattice, f: &IdealFilter, g: &IdealFilter) -> bool {
    match (f, g) {
        (IdealFilter::Zero, _) => true,
        (_, IdealFilter::Zero) => false,
        (IdealFilter::Principal(a), IdealFilter::Principal(b)) if !lat.is_lex() => lat.leq(b, a),
        _ => {
            let n = lat.rank();
            let (kf, kg) = (f.lex_key().expect("non-zero"), g.lex_key().expect("non-zero"));
            kf[..n] >= kg[..n]
        }
    }
}

/// All representable filters with parameters in `[-bound, bound]`.
pub fn enumerate(lat: &IntLattice, bound: i64) -> Vec<IdealFilter> {
    let n = lat.rank();
    let lo = if lat.is_lex() { -bound } else { 0 };
    let mut out = Vec::new();
    for v in boxed(n, lo, bound) {
        let f = IdealFilter::principal(&v);
        if f.validate(lat).is_ok() {
            out.push(f);
        }
    }
    if lat.is_lex() {
        for level in 1..n {
            for p in boxed(level, -bound, bound) {
                let f = IdealFilter::limit_cut(&p);
                if f.validate(lat).is_ok() {
                    out.push(f);
                }
            }
        }
    }
    out.push(IdealFilter::Zero);
    out
}

/// All prime filters among [`enumerate`].
pub fn enumerate_prime(lat: &IntLattice, bound: i64) -> Vec<IdealFilter> {
    enumerate(lat, bound).into_iter().filter(|f| is_prime(lat, f)).collect()
}

/// Integer vectors of length `n` with entries in `[lo, hi]`.
pub fn boxed(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `a ∨ b ∈ F` implies `a ∈ F` or `b ∈ F`.
pub fn is_prime(lat: &IntLattice, f: &IdealFilter) -> bool {
    match f {
        IdealFilter::Principal(g) if !lat.is_lex() => coords(g).iter().filter(|x| **x != 0).count() == 1,
        _ => true,
    }
}

/// `a + b ∈ F` implies `a ∈ F` or `b ∈ F`.
pub fn is_mult_prime(lat: &IntLattice, f: &IdealFilter) -> bool {
    let n = lat.rank();
    match f {
        IdealFilter::Zero => true,
        IdealFilter::Principal(g) if lat.is_lex() => *g == lat.unit(n - 1),
        IdealFilter::Principal(g) => (0..n).any(|i| *g == lat.unit(i)),
        IdealFilter::LimitCut { prefix, .. } => prefix.iter().all(|x| *x == 0),
    }
}

/// `(F : k) = {a : a + k ∈ F}`.
pub fn colon(lat: &IntLattice, f: &IdealFilter, k: &ZCone) -> Result<IdealFilter, FilterError> {
    let kv = k.coords().ok_or(FilterError::InfiniteShift)?;
    match f {
        IdealFilter::Zero => Ok(IdealFilter::Zero),
        IdealFilter::Principal(g) => {
            let h = lat.sub_clamped(g, k);
            if h == lat.zero() {
                Err(FilterError::ImproperResult)
            } else {
                Ok(IdealFilter::Principal(h))
            }
        }
        IdealFilter::LimitCut { level, prefix } => {
            let mut p = [0; MAX_RANK];
            for i in 0..*level {
                p[i] = prefix[i] - kv[i];
            }
            if p[..*level] < [0; MAX_RANK][..*level] {
                return Err(FilterError::ImproperResult);
            }
            Ok(IdealFilter::LimitCut { level: *level, prefix: p })
        }
    }
}

/// `F_k = {a : (a − k) ∨ 0 ∈ F}`.
pub fn inverse_colon(lat: &IntLattice, f: &IdealFilter, k: &ZCone) -> Result<IdealFilter, FilterError> {
    let kv = k.coords().ok_or(FilterError::InfiniteShift)?;
    match f {
        IdealFilter::Zero => Ok(IdealFilter::Zero),
        IdealFilter::Principal(g) if lat.is_lex() => Ok(IdealFilter::Principal(lat.add(g, k))),
        IdealFilter::Principal(g) => {
            let gv = coords(g);
            let mut h = [0; MAX_RANK];
            for i in 0..lat.rank() {
                if gv[i] > 0 {
                    h[i] = gv[i] + kv[i];
                }
            }
            Ok(IdealFilter::Principal(ZCone::Fin(h)))
        }
        IdealFilter::LimitCut { level, prefix } => {
            let mut p = *prefix;
            for i in 0..*level {
                p[i] += kv[i];
            }
            Ok(IdealFilter::LimitCut { level: *level, prefix: p })
        }
    }
}

/// `F^# = {a : a + k ∈ F for some k ∉ F}`, for prime `F`.
pub fn hash(lat: &IntLattice, f: &IdealFilter) -> Result<IdealFilter, FilterError> {
    let n = lat.rank();
    match f {
        IdealFilter::Zero => Ok(IdealFilter::Zero),
        IdealFilter::Principal(_) if lat.is_lex() => Ok(IdealFilter::Principal(lat.unit(n - 1))),
        IdealFilter::Principal(g) => {
            if !is_prime(lat, f) {
                return Err(FilterError::NotPrime);
            }
            let i = coords(g).iter().position(|x| *x != 0).expect("non-zero generator");
            Ok(IdealFilter::Principal(lat.unit(i)))
        }
        IdealFilter::LimitCut { level, .. } => Ok(IdealFilter::LimitCut { level: *level, prefix: [0; MAX_RANK] }),
    }
}

/// The sharps of `I` and `J` are comparable.
pub fn admissible(lat: &IntLattice, i: &IdealFilter, j: &IdealFilter) -> Result<bool, FilterError> {
    let (hi, hj) = (hash(lat, i)?, hash(lat, j)?);
    Ok(subset(lat, &hi, &hj) || subset(lat, &hj, &hi))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub i: IdealFilter,
    pub j: IdealFilter,
}

impl AdmissiblePair {
    pub fn new(lat: &IntLattice, i: IdealFilter, j: IdealFilter) -> Result<AdmissiblePair, FilterError> {
        i.validate(lat)?;
        j.validate(lat)?;
        if !is_prime(lat, &i) || !is_prime(lat, &j) {
            return Err(FilterError::NotPrime);
        }
        if !admissible(lat, &i, &j)? {
            return Err(FilterError::Invalid("sharps are incomparable".into()));
        }
        Ok(AdmissiblePair { i, j })
    }

    pub fn render(&self, lat: &IntLattice) -> String {
        format!("({}, {})", self.i.render(lat), self.j.render(lat))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftDirection {
    /// `(I, J) ↦ ((I : k), J_k)`, needs `k ∉ I`.
    Left,
    /// `(I, J) ↦ (I_k, (J : k))`, needs `k ∉ J`.
    Right,
}

pub fn shift_pair(lat: &IntLattice, p: &AdmissiblePair, k: &ZCone, dir: ShiftDirection) -> Result<AdmissiblePair, FilterError> {
    if k.is_inf() {
        return Err(FilterError::InfiniteShift);
    }
    let (divided, other) = match dir {
        ShiftDirection::Left => (&p.i, &p.j),
        ShiftDirection::Right => (&p.j, &p.i),
    };
    if divided.contains(lat, k) {
        return Err(FilterError::IllegalShift);
    }
    let a = colon(lat, divided, k)?;
    let b = inverse_colon(lat, other, k)?;
    Ok(match dir {
        ShiftDirection::Left => AdmissiblePair { i: a, j: b },
        ShiftDirection::Right => AdmissiblePair { i: b, j: a },
    })
}

/// Canonical representative of the `~`-class of an admissible pair.
///
/// Product order, on the coordinate the pair lives on:
/// `(↑n, ↑m) ~ (↑1, ↑(n+m−1))`, `(↑n, 0) ~ (↑1, 0)`, `(0, ↑m) ~ (0, ↑1)`.
/// Lexicographic ℤ², with `ε = (0,1)`:
/// `(↑g, ↑h) ~ (↑ε, ↑(g+h−ε))`, `(↑g, cut q) ~ (↑ε, cut(g₁+q))`,
/// `(cut p, ↑h) ~ (cut(p+h₁), ↑ε)`, `(cut p, cut q) ~ (cut 0, cut(p+q))`,
/// and each pair with a zero side collapses to the least filter of its kind.
pub fn canonical_pair(lat: &IntLattice, p: &AdmissiblePair) -> Result<AdmissiblePair, FilterError> {
    use IdealFilter::{LimitCut as Cut, Principal as Up};
    if lat.is_lex() && lat.rank() > 2 {
        return Err(FilterError::Unsupported("canonical pairs for lexicographic rank above 2".into()));
    }
    let n = lat.rank();
    let least = |f: &IdealFilter| hash(lat, f).expect("prime");
    Ok(match (p.i, p.j) {
        (Up(g), Up(h)) => {
            let e = hash(lat, &p.i)?;
            let IdealFilter::Principal(ev) = e else { unreachable!() };
            let s = lat.add(&g, &h);
            let rest = ZCone::Fin(lat.sub_fin(&coords(&s), &coords(&ev)));
            AdmissiblePair { i: e, j: Up(rest) }
        }
        (Up(g), Cut { prefix, .. }) => AdmissiblePair { i: Up(lat.unit(n - 1)), j: IdealFilter::limit_cut(&[coords(&g)[0] + prefix[0]]) },
        (Cut { prefix, .. }, Up(h)) => AdmissiblePair { i: IdealFilter::limit_cut(&[prefix[0] + coords(&h)[0]]), j: Up(lat.unit(n - 1)) },
        (Cut { prefix: p1, .. }, Cut { prefix: p2, .. }) => AdmissiblePair { i: IdealFilter::limit_cut(&[0]), j: IdealFilter::limit_cut(&[p1[0] + p2[0]]) },
        (a, b) => AdmissiblePair { i: least(&a), j: least(&b) },
    })
}

pub fn pairs_equivalent(lat: &IntLattice, p: &AdmissiblePair, q: &AdmissiblePair) -> Result<bool, FilterError> {
    Ok(canonical_pair(lat, p)? == canonical_pair(lat, q)?)
}

/// Pairs reachable from `p` by single shifts with `k` in `shifts`, staying
/// inside `universe`. Every shift can be undone by a shift in the other
/// direction, so this is a brute-force check on [`canonical_pair`].
pub fn shift_closure(lat: &IntLattice, p: &AdmissiblePair, shifts: &[ZCone], universe: &BTreeSet<AdmissiblePair>) -> BTreeSet<AdmissiblePair> {
    let mut seen = BTreeSet::from([*p]);
    let mut queue = VecDeque::from([*p]);
    while let Some(cur) = queue.pop_front() {
        for k in shifts {
            for dir in [ShiftDirection::Left, ShiftDirection::Right] {
                if let Ok(next) = shift_pair(lat, &cur, k, dir) {
                    if universe.contains(&next) && seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

/// Compares two finite elements in the lattice order, `None` if incomparable.
pub fn cmp_cone(lat: &IntLattice, a: &ZCone, b: &ZCone) -> Option<Ordering> {
    match (a, b) {
        (ZCone::Inf, ZCone::Inf) => Some(Ordering::Equal),
        (ZCone::Inf, _) => Some(Ordering::Greater),
        (_, ZCone::Inf) => Some(Ordering::Less),
        (ZCone::Fin(x), ZCone::Fin(y)) => lat.cmp_fin(x, y),
    }
}

impl fmt::Display for FilterView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterView::Principal { gen } => write!(f, "up({gen:?})"),
            FilterView::Limitcut { level, prefix } => write!(f, "cut{level}({prefix:?})"),
            FilterView::Zero => f.write_str("zero"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> IntLattice {
        IntLattice::product(1)
    }

    fn up(v: &[i64]) -> IdealFilter {
        IdealFilter::principal(v)
    }

    #[test]
    fn primality_examples() {
        let p2 = IntLattice::product(2);
        assert!(is_prime(&p2, &up(&[2, 0])));
        assert!(!is_mult_prime(&p2, &up(&[2, 0])));
        assert!(is_mult_prime(&p2, &IdealFilter::Zero));
        assert!(!is_prime(&p2, &up(&[1, 1])));
    }

    #[test]
    fn colon_examples() {
        let l = z();
        assert_eq!(colon(&l, &up(&[3]), &ZCone::int(1)), Ok(up(&[2])));
        assert_eq!(colon(&l, &up(&[1]), &ZCone::int(4)), Err(FilterError::ImproperResult));
        assert_eq!(colon(&l, &up(&[1]), &ZCone::Inf), Err(FilterError::InfiniteShift));
        let lex = IntLattice::lex(2);
        let cut = IdealFilter::limit_cut(&[0]);
        assert_eq!(colon(&lex, &cut, &ZCone::fin(&[0, 5])), Ok(cut));
        assert_eq!(inverse_colon(&l, &up(&[3]), &ZCone::int(2)), Ok(up(&[5])));
    }

    #[test]
    fn hash_examples() {
        let l = z();
        for n in 1..6 {
            assert_eq!(hash(&l, &up(&[n])), Ok(up(&[1])));
        }
        assert_eq!(hash(&l, &IdealFilter::Zero), Ok(IdealFilter::Zero));
        let lex = IntLattice::lex(2);
        let cut = IdealFilter::limit_cut(&[0]);
        assert_eq!(hash(&lex, &cut), Ok(cut));
        assert_eq!(hash(&lex, &IdealFilter::limit_cut(&[3])), Ok(cut));
        assert_eq!(hash(&lex, &up(&[2, -7])), Ok(up(&[0, 1])));
    }

    #[test]
    fn lex_inclusions() {
        let lex = IntLattice::lex(2);
        let cut0 = IdealFilter::limit_cut(&[0]);
        assert!(subset(&lex, &cut0, &up(&[0, 1])));
        assert!(!subset(&lex, &up(&[0, 1]), &cut0));
        assert!(subset(&lex, &up(&[1, -3]), &cut0));
        assert!(!subset(&lex, &cut0, &up(&[1, -3])));
        assert!(subset(&lex, &up(&[1, 0]), &up(&[1, -3])));
        assert!(subset(&lex, &IdealFilter::Zero, &cut0));
    }

    #[test]
    fn equivalence_examples() {
        let l = z();
        let pair = |a: IdealFilter, b: IdealFilter| AdmissiblePair::new(&l, a, b).unwrap();
        assert!(pairs_equivalent(&l, &pair(up(&[2]), up(&[3])), &pair(up(&[1]), up(&[4]))).unwrap());
        assert!(!pairs_equivalent(&l, &pair(up(&[2]), up(&[3])), &pair(up(&[1]), up(&[3]))).unwrap());
        for b in 1..5 {
            assert!(pairs_equivalent(&l, &pair(IdealFilter::Zero, up(&[b])), &pair(IdealFilter::Zero, up(&[1]))).unwrap());
        }
        let shifted = shift_pair(&l, &pair(up(&[2]), up(&[3])), &ZCone::int(1), ShiftDirection::Left).unwrap();
        assert_eq!(shifted, pair(up(&[1]), up(&[4])));
        assert_eq!(shift_pair(&l, &pair(up(&[2]), up(&[3])), &ZCone::int(2), ShiftDirection::Left), Err(FilterError::IllegalShift));
    }

    #[test]
    fn product_pairs_on_different_axes_are_not_admissible() {
        let p2 = IntLattice::product(2);
        assert!(AdmissiblePair::new(&p2, up(&[1, 0]), up(&[0, 2])).is_err());
        assert!(AdmissiblePair::new(&p2, up(&[1, 0]), IdealFilter::Zero).is_ok());
    }

    #[test]
    fn views_serialize() {
        let lex = IntLattice::lex(2);
        let v = IdealFilter::limit_cut(&[2]).view(&lex);
        assert_eq!(v, FilterView::Limitcut { level: 1, prefix: vec![2] });
        assert_eq!(up(&[0, 1]).render(&lex), "up((0,1))");
    }
}
