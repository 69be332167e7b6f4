//! pp-1-formulas over a Prüfer domain, written in value-group terms.
//!
//! Every pp-1-formula is equivalent to a finite sum of formulas
//! `C|x ∧ xD=0`. A summand is stored as the pair `(c, d)` of cone elements
//! for `C` and `D`; `∞` is the zero ideal. So `(∞, 0)` is `x=0` and `(0, ∞)`
//! is `x=x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lgroup::{ConeElement, ConeOps, IntLattice, LGroup, LGroupError, ZCone, MAX_RANK};

/// A finite sum of summands `C|x ∧ xD=0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PpFormula<E> {
    summands: Vec<(E, E)>,
}

impl<E: Clone + Ord> PpFormula<E> {
    /// The sum of `summands`, as given. An empty sum is `x=0`.
    pub fn new(summands: Vec<(E, E)>) -> Self {
        PpFormula { summands }
    }

    pub fn single(c: E, d: E) -> Self {
        PpFormula { summands: vec![(c, d)] }
    }

    pub fn summands(&self) -> &[(E, E)] {
        &self.summands
    }

    /// `φ + ψ`.
    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        PpFormula { summands: s }
    }

    pub fn map<F: Clone + Ord>(&self, f: impl Fn(&E) -> F) -> PpFormula<F> {
        PpFormula { summands: self.summands.iter().map(|(c, d)| (f(c), f(d))).collect() }
    }
}

/// `x=0`.
pub fn bottom<G: ConeOps>(g: &G) -> PpFormula<G::E> {
    PpFormula::single(g.inf(), g.zero())
}

/// `x=x`.
pub fn top<G: ConeOps>(g: &G) -> PpFormula<G::E> {
    PpFormula::single(g.zero(), g.inf())
}

/// `C|x ∧ xD=0` is `x=0` exactly when `C = 0` or `D = R`.
pub fn is_bottom_summand<G: ConeOps>(g: &G, s: &(G::E, G::E)) -> bool {
    g.is_inf(&s.0) || s.1 == g.zero()
}

/// `(c, d) ≤ Σᵢ (aᵢ, bᵢ)` iff `c ≥ [⋀ᵢ (q(c+d, bᵢ) ∨ aᵢ)] ∧ (c+d)`.
pub fn leq_summand<G: ConeOps>(g: &G, s: &(G::E, G::E), psi: &PpFormula<G::E>) -> bool {
    let (c, d) = s;
    let cd = g.add(c, d);
    let mut acc = g.inf();
    for (a, b) in &psi.summands {
        acc = g.meet(&acc, &g.join(&g.quotient(&cd, b), a));
    }
    g.leq(&g.meet(&acc, &cd), c)
}

/// `φ ≤ ψ`: every summand of `φ` lies below `ψ`.
pub fn leq_pp<G: ConeOps>(g: &G, phi: &PpFormula<G::E>, psi: &PpFormula<G::E>) -> bool {
    phi.summands.iter().all(|s| leq_summand(g, s, psi))
}

pub fn equivalent<G: ConeOps>(g: &G, phi: &PpFormula<G::E>, psi: &PpFormula<G::E>) -> bool {
    leq_pp(g, phi, psi) && leq_pp(g, psi, phi)
}

/// `φ ∧ ψ`, distributing the meet over both sums.
pub fn meet<G: ConeOps>(g: &G, phi: &PpFormula<G::E>, psi: &PpFormula<G::E>) -> PpFormula<G::E> {
    let mut out = Vec::with_capacity(phi.summands.len() * psi.summands.len());
    for (c, d) in &phi.summands {
        for (c2, d2) in &psi.summands {
            out.push((g.join(c, c2), g.meet(d, d2)));
        }
    }
    canonical(g, &PpFormula::new(out))
}

/// Drops `x=0` summands and duplicates, then every summand below the sum of
/// the others. The result is irredundant and sorted.
pub fn canonical<G: ConeOps>(g: &G, phi: &PpFormula<G::E>) -> PpFormula<G::E> {
    let mut s: Vec<(G::E, G::E)> = phi.summands.iter().filter(|x| !is_bottom_summand(g, x)).cloned().collect();
    s.sort();
    s.dedup();
    let mut i = 0;
    while i < s.len() {
        let rest = PpFormula::new(s.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect());
        if leq_summand(g, &s[i], &rest) {
            s.remove(i);
            i = 0;
        } else {
            i += 1;
        }
    }
    if s.is_empty() {
        bottom(g)
    } else {
        PpFormula::new(s)
    }
}

/// Prest dual. `D(C|x ∧ xD=0) = xC=0 + D|x`, so
/// `D(Σᵢ (cᵢ, dᵢ)) = ⋀ᵢ ((0, cᵢ) + (dᵢ, ∞)) = Σ_U (⋁_{i∉U} dᵢ, ⋀_{i∈U} cᵢ)`.
pub fn prest_dual<G: ConeOps>(g: &G, phi: &PpFormula<G::E>) -> PpFormula<G::E> {
    let s = &phi.summands;
    assert!(s.len() < 20, "too many summands to dualise");
    let mut out = Vec::with_capacity(1 << s.len());
    for mask in 0u32..(1 << s.len()) {
        let mut c = g.zero();
        let mut d = g.inf();
        for (i, (ci, di)) in s.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d = g.meet(&d, ci);
            } else {
                c = g.join(&c, di);
            }
        }
        out.push((c, d));
    }
    canonical(g, &PpFormula::new(out))
}

/// `xA=0 + B|x` as a sum.
pub fn mixed_rhs<G: ConeOps>(g: &G, a: &G::E, b: &G::E) -> PpFormula<G::E> {
    PpFormula::new(vec![(g.zero(), a.clone()), (b.clone(), g.inf())])
}

/// `C|x ∧ xD=0 ≤ xA=0 + B|x` iff `q(b, c) ∧ q(d, a) = 0`.
pub fn leq_mixed<G: ConeOps>(g: &G, c: &G::E, d: &G::E, a: &G::E, b: &G::E) -> bool {
    g.meet(&g.quotient(b, c), &g.quotient(d, a)) == g.zero()
}

/// The same test in the form `AC ⊆ AB + CD`, i.e. `a + c ≥ (a+b) ∧ (c+d)`.
pub fn leq_mixed_ideal_form<G: ConeOps>(g: &G, c: &G::E, d: &G::E, a: &G::E, b: &G::E) -> bool {
    g.leq(&g.meet(&g.add(a, b), &g.add(c, d)), &g.add(a, c))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("groups are not isomorphic under the given map")]
    NotIsomorphic,
}

/// Transports a formula along the isomorphism of ℤⁿ that sends coordinate
/// `i` to coordinate `perm[i]`. Only the identity is an automorphism of a
/// lexicographic order.
pub fn translate_pp(
    phi: &PpFormula<ZCone>,
    src: &IntLattice,
    dst: &IntLattice,
    perm: &[usize],
) -> Result<PpFormula<ZCone>, TranslateError> {
    let n = src.rank();
    let mut seen = [false; MAX_RANK];
    let is_perm = perm.len() == n && perm.iter().all(|p| *p < n && !std::mem::replace(&mut seen[*p], true));
    let identity = perm.iter().enumerate().all(|(i, p)| i == *p);
    if src != dst || !is_perm || (src.is_lex() && !identity) {
        return Err(TranslateError::NotIsomorphic);
    }
    Ok(phi.map(|e| match e {
        ZCone::Inf => ZCone::Inf,
        ZCone::Fin(v) => {
            let mut w = [0; MAX_RANK];
            for i in 0..n {
                w[perm[i]] = v[i];
            }
            ZCone::Fin(w)
        }
    }))
}

/// Parses `sum((c;d),(c;d),...)` with element literals of `g` or `inf`.
pub fn parse_pp(g: &LGroup, s: &str) -> Result<PpFormula<ConeElement>, LGroupError> {
    let syntax = |offset: usize, message: &str| LGroupError::Syntax { offset, message: message.to_string() };
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let body = t
        .strip_prefix("sum(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| syntax(lead, "expected sum((c;d),...)"))?;
    let base = lead + 4;
    let mut summands = Vec::new();
    for (start, part) in split_top(body, ',') {
        let p = part.trim();
        let off = base + start + (part.len() - part.trim_start().len());
        let inner = p
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| syntax(off, "expected (c;d)"))?;
        let halves = split_top(inner, ';');
        let [(_, c), (_, d)] = halves.as_slice() else {
            return Err(syntax(off, "expected exactly one ';' in a summand"));
        };
        let c = g.parse_cone(c).map_err(|e| shift_offset(e, off + 1))?;
        let d = g.parse_cone(d).map_err(|e| shift_offset(e, off + 1))?;
        summands.push((c, d));
    }
    if summands.is_empty() {
        return Err(syntax(base, "empty sum"));
    }
    Ok(PpFormula::new(summands))
}

fn shift_offset(e: LGroupError, by: usize) -> LGroupError {
    match e {
        LGroupError::Syntax { offset, message } => LGroupError::Syntax { offset: offset + by, message },
        other => other,
    }
}

/// Splits at `sep` outside parentheses, returning byte offsets with the parts.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if !s.trim().is_empty() {
        parts.push((start, &s[start..]));
    }
    parts
}

impl<E: fmt::Display> fmt::Display for PpFormula<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sum(")?;
        for (i, (c, d)) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({c};{d})")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> IntLattice {
        IntLattice::product(1)
    }

    fn f(s: &[(Option<i64>, Option<i64>)]) -> PpFormula<ZCone> {
        let e = |x: Option<i64>| x.map_or(ZCone::Inf, ZCone::int);
        PpFormula::new(s.iter().map(|(c, d)| (e(*c), e(*d))).collect())
    }

    #[test]
    fn order_examples() {
        let g = z();
        let any = f(&[(Some(3), Some(1)), (Some(0), Some(2))]);
        assert!(leq_pp(&g, &bottom(&g), &any));
        assert!(leq_pp(&g, &f(&[(Some(2), None)]), &f(&[(Some(1), None)])));
        assert!(!leq_pp(&g, &f(&[(Some(1), None)]), &f(&[(Some(2), None)])));
        assert!(leq_pp(&g, &any, &top(&g)));
    }

    #[test]
    fn mixed_examples() {
        let g = z();
        let i = ZCone::int;
        assert!(!leq_mixed(&g, &i(1), &i(3), &i(2), &i(2)));
        for c in 0..4 {
            assert!(leq_mixed(&g, &i(c), &i(2), &i(1), &i(0)));
        }
        for (b, c, d) in [(2, 1, 3), (1, 1, 0), (0, 3, 2), (3, 1, 0)] {
            let expect = g.quotient(&i(b), &i(c)) == i(0) || d == 0;
            assert_eq!(leq_mixed(&g, &i(c), &i(d), &i(0), &i(b)), expect);
        }
    }

    #[test]
    fn dual_examples() {
        let g = z();
        assert_eq!(prest_dual(&g, &bottom(&g)), top(&g));
        assert_eq!(prest_dual(&g, &top(&g)), bottom(&g));
        assert_eq!(prest_dual(&g, &f(&[(Some(2), None)])), f(&[(Some(0), Some(2))]));
    }

    #[test]
    fn canonical_prunes() {
        let g = z();
        let phi = f(&[(Some(2), None), (Some(1), None), (None, Some(3)), (Some(1), None)]);
        assert_eq!(canonical(&g, &phi), f(&[(Some(1), None)]));
    }

    #[test]
    fn parse_and_render() {
        let g: LGroup = "Z^2".parse().unwrap();
        let phi = parse_pp(&g, "sum(((1,0);inf),((0,0);(2,3)))").unwrap();
        assert_eq!(phi.summands().len(), 2);
        assert_eq!(phi.to_string(), "sum(((1,0);inf),((0,0);(2,3)))");
        let e = parse_pp(&g, "sum((x;1))").unwrap_err();
        assert!(matches!(e, LGroupError::Syntax { .. }));
        assert!(parse_pp(&g, "sum(((1,0)))").is_err());
    }

    #[test]
    fn translate_swaps_coordinates() {
        let p = IntLattice::product(2);
        let phi = PpFormula::single(ZCone::fin(&[1, 0]), ZCone::fin(&[0, 3]));
        let t = translate_pp(&phi, &p, &p, &[1, 0]).unwrap();
        assert_eq!(t, PpFormula::single(ZCone::fin(&[0, 1]), ZCone::fin(&[3, 0])));
        assert_eq!(translate_pp(&phi, &p, &p, &[0, 1]).unwrap(), phi);
        let l = IntLattice::lex(2);
        assert!(translate_pp(&phi, &l, &l, &[1, 0]).is_err());
        assert!(translate_pp(&phi, &p, &l, &[0, 1]).is_err());
    }
}
