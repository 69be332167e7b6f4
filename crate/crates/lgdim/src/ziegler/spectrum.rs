//! Points of the Ziegler spectrum as `~`-classes of admissible pairs, basic
//! open sets, and Cantor–Bendixson stratification.
//!
//! Points come in families indexed by the kinds of the two filters. Within a
//! family the `~`-class is fixed by one integer invariant (the "sum" of the
//! pair), or the family is a single point. This lets membership of a whole
//! family in a basic open be computed as an interval of invariants, which is
//! what makes isolation decidable although families are infinite.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::filters::{self, AdmissiblePair, IdealFilter, ShiftDirection};
use crate::lgroup::{ConeOps, IntLattice, LGroup, ZCone};
use crate::ordinal::Ordinal;

use super::ZgError;

/// Family invariant: a scalar `[s, 0]` or a lexicographic pair.
pub type Key = [i128; 2];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Up,
    Cut,
    Zero,
}

impl FilterKind {
    pub fn of(f: &IdealFilter) -> FilterKind {
        match f {
            IdealFilter::Principal(_) => FilterKind::Up,
            IdealFilter::LimitCut { .. } => FilterKind::Cut,
            IdealFilter::Zero => FilterKind::Zero,
        }
    }
}

/// A family of points: the kinds of `I` and `J`, and for product orders
/// the coordinate the non-zero filters live on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Family {
    pub axis: Option<usize>,
    pub left: FilterKind,
    pub right: FilterKind,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = |k: FilterKind| match k {
            FilterKind::Up => "up",
            FilterKind::Cut => "cut",
            FilterKind::Zero => "zero",
        };
        write!(f, "({},{})", k(self.left), k(self.right))?;
        if let Some(i) = self.axis {
            write!(f, "@{}", i + 1)?;
        }
        Ok(())
    }
}

/// The point `N(I, J)`, stored by the canonical pair of its class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZgPoint {
    pub family: Family,
    pub invariant: Option<Key>,
    pub pair: AdmissiblePair,
    /// `I^#`, the associated prime.
    pub ass_hash: IdealFilter,
    /// `J^#`, the divisibility prime.
    pub div_hash: IdealFilter,
}

/// `(C|x ∧ xD=0) / (xA=0 + B|x)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicOpen {
    pub c: ZCone,
    pub d: ZCone,
    pub a: ZCone,
    pub b: ZCone,
}

/// The members of one family inside a basic open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Members {
    Empty,
    /// The family is a single point, and it is inside.
    Unit,
    /// Invariants in `[lo, hi]`; no upper bound when `hi` is `None`.
    Range { lo: Key, hi: Option<Key> },
}

impl Members {
    fn range(lo: Key, hi: Option<Key>) -> Members {
        match hi {
            Some(h) if h < lo => Members::Empty,
            _ => Members::Range { lo, hi },
        }
    }

    fn when(cond: bool, m: impl FnOnce() -> Members) -> Members {
        if cond {
            m()
        } else {
            Members::Empty
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Members::Empty)
    }

    pub fn contains(&self, inv: Option<Key>) -> bool {
        match (self, inv) {
            (Members::Unit, None) => true,
            (Members::Range { lo, hi }, Some(k)) => *lo <= k && hi.is_none_or(|h| k <= h),
            _ => false,
        }
    }

    /// The only member is the point with this invariant.
    pub fn is_exactly(&self, inv: Option<Key>) -> bool {
        match (self, inv) {
            (Members::Unit, None) => true,
            (Members::Range { lo, hi: Some(h) }, Some(k)) => *lo == k && *h == k,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub index: usize,
    pub families: Vec<Family>,
    pub points: Vec<ZgPoint>,
}

#[derive(Clone, Debug)]
pub struct Stratification {
    pub layers: Vec<Layer>,
    pub cb_rank: Ordinal,
}

impl Stratification {
    pub fn layer_of(&self, fam: &Family) -> Option<usize> {
        self.layers.iter().find(|l| l.families.contains(fam)).map(|l| l.index)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Mode {
    /// ℤⁿ with the product order, including ℤ.
    Scalar,
    /// Lexicographic ℤ².
    Lex2,
}

/// The Ziegler spectrum of a Bézout domain with value group ℤⁿ (product
/// order, n ≤ 4) or lexicographic ℤ².
#[derive(Copy, Clone, Debug)]
pub struct Spectrum {
    lat: IntLattice,
    mode: Mode,
}

impl Spectrum {
    pub fn new(g: &LGroup) -> Result<Spectrum, ZgError> {
        let unsupported = || ZgError::UnsupportedGamma(g.to_string());
        let lat = g.int_lattice().ok_or_else(unsupported)?;
        let mode = match (lat.is_lex(), lat.rank()) {
            (false, _) | (true, 1) => Mode::Scalar,
            (true, 2) => Mode::Lex2,
            _ => return Err(unsupported()),
        };
        Ok(Spectrum { lat, mode })
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lat
    }

    pub fn families(&self) -> Vec<Family> {
        use FilterKind::{Cut, Up, Zero};
        let mut out = Vec::new();
        match self.mode {
            Mode::Scalar => {
                for i in 0..self.lat.rank() {
                    for (l, r) in [(Up, Up), (Up, Zero), (Zero, Up)] {
                        out.push(Family { axis: Some(i), left: l, right: r });
                    }
                }
                out.push(Family { axis: None, left: Zero, right: Zero });
            }
            Mode::Lex2 => {
                for l in [Up, Cut, Zero] {
                    for r in [Up, Cut, Zero] {
                        out.push(Family { axis: None, left: l, right: r });
                    }
                }
            }
        }
        out
    }

    /// The point named by an admissible pair.
    pub fn point_of(&self, pair: &AdmissiblePair) -> Result<ZgPoint, ZgError> {
        let lat = &self.lat;
        let canon = filters::canonical_pair(lat, pair)?;
        let ass_hash = filters::hash(lat, &canon.i)?;
        let div_hash = filters::hash(lat, &canon.j)?;
        let axis = match self.mode {
            Mode::Scalar => [canon.i, canon.j].iter().find_map(|f| match f {
                IdealFilter::Principal(g) => g.coords().and_then(|v| v.iter().position(|x| *x != 0)),
                _ => None,
            }),
            Mode::Lex2 => None,
        };
        let first = |f: &IdealFilter| match f {
            IdealFilter::Principal(g) => g.coords().expect("finite")[..2].to_vec(),
            IdealFilter::LimitCut { prefix, .. } => vec![prefix[0], 0],
            IdealFilter::Zero => unreachable!(),
        };
        let invariant = match (FilterKind::of(&canon.i), FilterKind::of(&canon.j)) {
            (FilterKind::Zero, _) | (_, FilterKind::Zero) => None,
            (FilterKind::Up, FilterKind::Up) => {
                let s = lat.add(&canon.i_gen(), &canon.j_gen());
                let v = s.coords().expect("finite");
                Some(match self.mode {
                    Mode::Scalar => [v[axis.expect("axis")] as i128, 0],
                    Mode::Lex2 => [v[0] as i128, v[1] as i128],
                })
            }
            _ => Some([(first(&canon.i)[0] + first(&canon.j)[0]) as i128, 0]),
        };
        Ok(ZgPoint {
            family: Family { axis, left: FilterKind::of(&canon.i), right: FilterKind::of(&canon.j) },
            invariant,
            pair: canon,
            ass_hash,
            div_hash,
        })
    }

    /// All points named by prime filters with parameters up to `bound`.
    pub fn points(&self, bound: i64) -> Result<Vec<ZgPoint>, ZgError> {
        let lat = &self.lat;
        let primes = filters::enumerate_prime(lat, bound);
        let mut seen = BTreeMap::new();
        for i in &primes {
            for j in &primes {
                if filters::admissible(lat, i, j)? {
                    let p = self.point_of(&AdmissiblePair { i: *i, j: *j })?;
                    seen.entry(p.pair).or_insert(p);
                }
            }
        }
        let mut pts: Vec<ZgPoint> = seen.into_values().collect();
        pts.sort();
        Ok(pts)
    }

    /// Members of `fam` in `o`.
    ///
    /// A pair `(I', J')` lies in `o` iff `c ∉ J'`, `b ∈ J'`, `d ∈ I'` and
    /// `a ∉ I'`. Writing each member of the family through the free
    /// parameter of its class turns this into interval conditions.
    pub fn members_in(&self, fam: &Family, o: &BasicOpen) -> Members {
        use FilterKind::{Cut, Up, Zero};
        let (Some(a), Some(c)) = (o.a.coords(), o.c.coords()) else {
            return Members::Empty;
        };
        let (a, c) = (*a, *c);
        let (b_inf, d_inf) = (o.b.is_inf(), o.d.is_inf());
        match self.mode {
            Mode::Scalar => {
                let i = fam.axis.unwrap_or(0);
                let at = |x: &ZCone| x.coord(i).map(i128::from);
                let below = |x: i128, y: &ZCone| at(y).is_none_or(|y| x < y);
                let (ai, ci) = (a[i] as i128, c[i] as i128);
                match (fam.left, fam.right) {
                    (Up, Up) => Members::when(below(ai, &o.d) && below(ci, &o.b), || {
                        let hi = at(&o.b).zip(at(&o.d)).map(|(b, d)| [b + d, 0]);
                        Members::range([ai + ci + 2, 0], hi)
                    }),
                    (Up, Zero) => Members::when(below(ai, &o.d) && b_inf, || Members::Unit),
                    (Zero, Up) => Members::when(d_inf && below(ci, &o.b), || Members::Unit),
                    (Zero, Zero) => Members::when(d_inf && b_inf, || Members::Unit),
                    _ => Members::Empty,
                }
            }
            Mode::Lex2 => {
                let key = |x: &ZCone| x.coords().map(|v| [v[0] as i128, v[1] as i128]);
                let (ak, ck) = ([a[0] as i128, a[1] as i128], [c[0] as i128, c[1] as i128]);
                let below = |x: Key, y: &ZCone| key(y).is_none_or(|y| x < y);
                let below1 = |x: Key, y: &ZCone| key(y).is_none_or(|y| x[0] < y[0]);
                let first_sum = |shift: i128| key(&o.b).zip(key(&o.d)).map(|(b, d)| [b[0] + d[0] - shift, 0]);
                let first_lo = [ak[0] + ck[0], 0];
                match (fam.left, fam.right) {
                    (Up, Up) => Members::when(below(ak, &o.d) && below(ck, &o.b), || {
                        let hi = key(&o.b).zip(key(&o.d)).map(|(b, d)| [b[0] + d[0], b[1] + d[1]]);
                        Members::range([ak[0] + ck[0], ak[1] + ck[1] + 2], hi)
                    }),
                    (Up, Cut) => Members::when(below(ak, &o.d) && below1(ck, &o.b), || Members::range(first_lo, first_sum(1))),
                    (Cut, Up) => Members::when(below(ck, &o.b) && below1(ak, &o.d), || Members::range(first_lo, first_sum(1))),
                    (Cut, Cut) => Members::when(below1(ak, &o.d) && below1(ck, &o.b), || Members::range(first_lo, first_sum(2))),
                    (Up, Zero) => Members::when(below(ak, &o.d) && b_inf, || Members::Unit),
                    (Cut, Zero) => Members::when(below1(ak, &o.d) && b_inf, || Members::Unit),
                    (Zero, Up) => Members::when(d_inf && below(ck, &o.b), || Members::Unit),
                    (Zero, Cut) => Members::when(d_inf && below1(ck, &o.b), || Members::Unit),
                    (Zero, Zero) => Members::when(d_inf && b_inf, || Members::Unit),
                }
            }
        }
    }

    pub fn member(&self, n: &ZgPoint, o: &BasicOpen) -> bool {
        self.members_in(&n.family, o).contains(n.invariant)
    }

    /// Membership by explicit search: the canonical pair and every pair one
    /// shift away with `k` in `shifts`, tested against the four conditions.
    pub fn member_by_search(&self, n: &ZgPoint, o: &BasicOpen, shifts: &[ZCone]) -> bool {
        let lat = &self.lat;
        let test = |p: &AdmissiblePair| {
            !p.j.contains(lat, &o.c) && p.j.contains(lat, &o.b) && p.i.contains(lat, &o.d) && !p.i.contains(lat, &o.a)
        };
        if test(&n.pair) {
            return true;
        }
        shifts.iter().any(|k| {
            [ShiftDirection::Left, ShiftDirection::Right]
                .iter()
                .any(|dir| filters::shift_pair(lat, &n.pair, k, *dir).is_ok_and(|p| test(&p)))
        })
    }

    /// Generators used to build isolating opens.
    fn generators(&self) -> Vec<ZCone> {
        let mut g: Vec<ZCone> = (0..self.lat.rank()).map(|i| self.lat.unit(i)).collect();
        g.push(ZCone::Inf);
        g
    }

    /// Pairs `(a, c)` with `c ∈ F^#` a generator, `a ∉ F` and `a + c ∈ F`.
    fn side_choices(&self, f: &IdealFilter) -> Vec<(ZCone, ZCone)> {
        let lat = &self.lat;
        let sharp = filters::hash(lat, f).expect("prime");
        let gens = self.generators();
        let mut cands = vec![lat.zero()];
        match f {
            IdealFilter::Principal(g) => {
                for c in gens.iter().filter(|c| !c.is_inf()) {
                    let a = ZCone::Fin(lat.sub_fin(g.coords().expect("finite"), c.coords().expect("finite")));
                    if lat.is_positive(&a) {
                        cands.push(a);
                    }
                }
            }
            IdealFilter::LimitCut { prefix, .. } => cands.push(ZCone::fin(&[prefix[0], 0])),
            IdealFilter::Zero => {}
        }
        let mut out = Vec::new();
        for c in gens.iter().filter(|c| sharp.contains(lat, c)) {
            for a in &cands {
                if !f.contains(lat, a) && f.contains(lat, &lat.add(a, c)) && !out.contains(&(*a, *c)) {
                    out.push((*a, *c));
                }
            }
        }
        out
    }

    /// Opens `(b|x ∧ x(a+c)=0) / (xa=0 + (b+d)|x)` around `n`.
    pub fn candidate_opens(&self, n: &ZgPoint) -> Vec<BasicOpen> {
        let lat = &self.lat;
        let mut out = Vec::new();
        for (a, c) in self.side_choices(&n.pair.i) {
            for (b, d) in self.side_choices(&n.pair.j) {
                out.push(BasicOpen { c: b, d: lat.add(&a, &c), a, b: lat.add(&b, &d) });
            }
        }
        out
    }

    /// An open containing `n` and no other point of the families `alive`.
    pub fn isolating_open(&self, n: &ZgPoint, alive: &[Family]) -> Option<BasicOpen> {
        self.candidate_opens(n).into_iter().find(|o| {
            alive.iter().all(|fam| {
                let m = self.members_in(fam, o);
                if *fam == n.family {
                    m.is_exactly(n.invariant)
                } else {
                    m.is_empty()
                }
            })
        })
    }

    /// Cantor–Bendixson layers, removing at each stage the points isolated
    /// among those that remain. Families are decided from their points with
    /// parameters up to `bound`, and every point of a family must agree.
    pub fn stratify(&self, bound: i64) -> Result<Stratification, ZgError> {
        let points = self.points(bound)?;
        let mut by_family: BTreeMap<Family, Vec<ZgPoint>> = BTreeMap::new();
        for p in points {
            by_family.entry(p.family).or_default().push(p);
        }
        let mut alive: Vec<Family> = self.families().into_iter().filter(|f| by_family.contains_key(f)).collect();
        let mut layers = Vec::new();
        while !alive.is_empty() {
            let mut removed = Vec::new();
            for fam in &alive {
                let pts = &by_family[fam];
                let isolated = pts.iter().filter(|p| self.isolating_open(p, &alive).is_some()).count();
                if isolated == pts.len() {
                    removed.push(*fam);
                } else if isolated > 0 {
                    return Err(ZgError::Stratification(format!("family {fam} is only partly isolated at layer {}", layers.len())));
                }
            }
            if removed.is_empty() {
                return Err(ZgError::Stratification(format!("no isolated points at layer {}", layers.len())));
            }
            alive.retain(|f| !removed.contains(f));
            let points = removed.iter().flat_map(|f| by_family[f].iter().cloned()).collect();
            layers.push(Layer { index: layers.len(), families: removed, points });
        }
        let cb_rank = Ordinal::finite(layers.len().saturating_sub(1) as u64);
        Ok(Stratification { layers, cb_rank })
    }
}

impl AdmissiblePair {
    fn i_gen(&self) -> ZCone {
        match self.i {
            IdealFilter::Principal(g) => g,
            _ => unreachable!(),
        }
    }

    fn j_gen(&self) -> ZCone {
        match self.j {
            IdealFilter::Principal(g) => g,
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> Spectrum {
        Spectrum::new(&s.parse().unwrap()).unwrap()
    }

    fn open(c: Option<i64>, d: Option<i64>, a: Option<i64>, b: Option<i64>) -> BasicOpen {
        let e = |x: Option<i64>| x.map_or(ZCone::Inf, ZCone::int);
        BasicOpen { c: e(c), d: e(d), a: e(a), b: e(b) }
    }

    #[test]
    fn z_points_with_bound_three() {
        let pts = spec("Z").points(3).unwrap();
        let sums: Vec<i128> = pts.iter().filter_map(|p| p.invariant.map(|k| k[0])).collect();
        assert_eq!(sums, vec![2, 3, 4, 5, 6]);
        assert_eq!(pts.iter().filter(|p| p.invariant.is_none()).count(), 3);
    }

    #[test]
    fn z_membership_examples() {
        let s = spec("Z");
        let pts = s.points(3).unwrap();
        // b = 0 means B = R, which no proper J' contains.
        for p in &pts {
            assert!(!s.member(p, &open(Some(0), None, Some(0), Some(0))));
        }
        // c = 0, d = ∞, a = 0, b = ∞ asks nothing of a proper pair.
        for p in &pts {
            assert!(s.member(p, &open(Some(0), None, Some(0), None)));
        }
        // a = ∞ can never be outside I'.
        for p in &pts {
            assert!(!s.member(p, &open(Some(0), None, None, None)));
        }
        let one = pts.iter().find(|p| p.invariant == Some([2, 0])).unwrap();
        assert!(!s.member(one, &open(Some(0), Some(1), Some(1), Some(1))));
    }

    #[test]
    fn z_layers() {
        let st = spec("Z").stratify(6).unwrap();
        assert_eq!(st.cb_rank, Ordinal::finite(2));
        let names: Vec<Vec<String>> = st.layers.iter().map(|l| l.families.iter().map(|f| f.to_string()).collect()).collect();
        assert_eq!(names, vec![vec!["(up,up)@1"], vec!["(up,zero)@1", "(zero,up)@1"], vec!["(zero,zero)"]]);
    }

    #[test]
    fn lex_layers() {
        let st = spec("lex(Z,Z)").stratify(4).unwrap();
        assert_eq!(st.cb_rank, Ordinal::finite(4));
        let layer = |l: FilterKind, r: FilterKind| st.layer_of(&Family { axis: None, left: l, right: r }).unwrap();
        use FilterKind::{Cut, Up, Zero};
        assert_eq!(layer(Up, Up), 0);
        assert_eq!(layer(Up, Cut), 1);
        assert_eq!(layer(Cut, Cut), 2);
        assert_eq!(layer(Up, Zero), 2);
        assert_eq!(layer(Cut, Zero), 3);
        assert_eq!(layer(Zero, Zero), 4);
    }

    #[test]
    fn product_layers() {
        assert_eq!(spec("Z^3").stratify(3).unwrap().cb_rank, Ordinal::finite(2));
    }

    #[test]
    fn unsupported_groups() {
        assert!(Spectrum::new(&"lex(Z,Z,Z)".parse().unwrap()).is_err());
        assert!(Spectrum::new(&"Q".parse().unwrap()).is_err());
        assert!(Spectrum::new(&"C(w)".parse().unwrap()).is_err());
    }
}
