//! Ordinals below epsilon-zero in recursive Cantor normal form.
//!
//! An [`Ordinal`] is a list of `(exponent, coefficient)` terms with strictly
//! decreasing exponents and positive coefficients. The empty list is zero.
//! Because the form is canonical, structural equality is ordinal equality.
//!
//! Textual syntax:
//!
//! ```text
//! ORD  := TERM ('+' TERM)*
//! TERM := 'w' ('^' EXP)? ('*' INT)? | INT
//! EXP  := INT | 'w' ('^' EXP)? | '(' ORD ')'
//! ```
//!
//! so `w^2*3+w*5+7` is ω²·3+ω·5+7 and `w^(w+1)` is ω^(ω+1). `ω` is accepted
//! as a synonym for `w`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

/// A literal that failed to parse, with the byte offset of the problem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseOrdinalError {
    pub offset: usize,
    pub message: String,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    /// ω itself.
    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Ordinal::zero(), n)] }
        }
    }

    /// ω^e.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// ω^e·c, or zero when `c` is zero.
    pub fn term(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(e, c)] }
        }
    }

    /// Builds an ordinal from terms, validating the normal-form invariants.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Option<Self> {
        let ok = terms.iter().all(|(_, c)| *c > 0)
            && terms.windows(2).all(|w| w[0].0 > w[1].0);
        ok.then_some(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Leading exponent, zero for zero.
    pub fn leading_exponent(&self) -> Ordinal {
        self.terms.first().map(|(e, _)| e.clone()).unwrap_or_default()
    }

    /// Leading coefficient, zero for zero.
    pub fn leading_coefficient(&self) -> u64 {
        self.terms.first().map(|(_, c)| *c).unwrap_or(0)
    }

    /// Smallest exponent in the normal form, zero for zero.
    pub fn trailing_exponent(&self) -> Ordinal {
        self.terms.last().map(|(e, _)| e.clone()).unwrap_or_default()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if !e.is_zero())
    }

    pub fn succ(&self) -> Self {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum `self + rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Self {
        let Some((lead, c)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut merged = *c;
        for (e, k) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *k)),
                Ordering::Equal => merged += k,
                Ordering::Less => break,
            }
        }
        terms.push((lead.clone(), merged));
        terms.extend(rhs.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// Ordinal product `self · rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Self {
        let Some((lead, lead_c)) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut out = Ordinal::zero();
        for (e, n) in &rhs.terms {
            let piece = if e.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = lead_c * n;
                Ordinal { terms }
            } else {
                Ordinal::term(lead.add(e), *n)
            };
            out = out.add(&piece);
        }
        out
    }

    /// Multiplication by a natural number on the right.
    pub fn mul_nat(&self, n: u64) -> Self {
        self.mul(&Ordinal::finite(n))
    }

    /// Left subtraction: the unique `d` with `rhs + d = self`.
    ///
    /// # Panics
    /// Panics when `rhs > self`.
    pub fn sub(&self, rhs: &Ordinal) -> Self {
        assert!(rhs <= self, "ordinal subtraction out of domain: {rhs} > {self}");
        for (i, t) in self.terms.iter().enumerate() {
            let Some(u) = rhs.terms.get(i) else {
                return Ordinal { terms: self.terms[i..].to_vec() };
            };
            if t == u {
                continue;
            }
            if t.0 > u.0 {
                return Ordinal { terms: self.terms[i..].to_vec() };
            }
            let mut terms = vec![(t.0.clone(), t.1 - u.1)];
            terms.extend(self.terms[i + 1..].iter().cloned());
            return Ordinal { terms };
        }
        Ordinal::zero()
    }

    /// Splits `self` as `λ + n` with `λ` zero or a limit and `n` finite.
    pub fn limit_part(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => {
                (Ordinal { terms: self.terms[..self.terms.len() - 1].to_vec() }, *c)
            }
            _ => (self.clone(), 0),
        }
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Self> {
        self.is_successor().then(|| {
            let mut terms = self.terms.clone();
            let last = terms.last_mut().expect("successor is non-zero");
            last.1 -= 1;
            if last.1 == 0 {
                terms.pop();
            }
            Ordinal { terms }
        })
    }

    /// The unique δ with ω·δ ≤ self < ω·(δ+1).
    pub fn div_omega(&self) -> Self {
        self.div_omega_pow(&Ordinal::one())
    }

    /// The unique δ with ω^p·δ ≤ self < ω^p·(δ+1).
    pub fn div_omega_pow(&self, p: &Ordinal) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e >= p)
            .map(|(e, c)| (e.sub(p), *c))
            .collect();
        Ordinal { terms }
    }

    /// Hessenberg natural sum: commutative, merges terms by exponent.
    pub fn natural_add(&self, rhs: &Ordinal) -> Self {
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push((self.terms[i].0.clone(), self.terms[i].1 + rhs.terms[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        Ordinal { terms }
    }

    fn fmt_exponent(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.as_slice() {
            [(e, 1)] if !e.is_zero() => {
                f.write_str("w")?;
                if *e != Ordinal::one() {
                    f.write_str("^")?;
                    e.fmt_exponent(f)?;
                }
                Ok(())
            }
            _ if self.is_finite() => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if *e != Ordinal::one() {
                f.write_str("^")?;
                e.fmt_exponent(f)?;
            }
            if *c != 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = ParseOrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let v = p.ordinal()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseOrdinalError {
        ParseOrdinalError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_omega(&mut self) -> bool {
        self.eat('w') || self.eat('ω')
    }

    fn int(&mut self) -> Result<u64, ParseOrdinalError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected an integer"));
        }
        let v = rest[..len].parse().map_err(|_| self.error("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn ordinal(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        let mut acc = self.term()?;
        while self.eat('+') {
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(self.int()?)),
            Some('w' | 'ω') => {
                self.eat_omega();
                let e = if self.eat('^') { self.exponent()? } else { Ordinal::one() };
                let c = if self.eat('*') {
                    let at = self.pos;
                    let c = self.int()?;
                    if c == 0 {
                        return Err(ParseOrdinalError { offset: at, message: "coefficient must be positive".into() });
                    }
                    c
                } else {
                    1
                };
                Ok(Ordinal::term(e, c))
            }
            _ => Err(self.error("expected 'w' or an integer")),
        }
    }

    fn exponent(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(self.int()?)),
            Some('(') => {
                self.eat('(');
                let v = self.ordinal()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some('w' | 'ω') => {
                self.eat_omega();
                let e = if self.eat('^') { self.exponent()? } else { Ordinal::one() };
                Ok(Ordinal::omega_pow(e))
            }
            _ => Err(self.error("expected an exponent")),
        }
    }
}

/// Shorthand used in tests and examples: parses a literal or panics.
pub fn ord(s: &str) -> Ordinal {
    s.parse().unwrap_or_else(|e| panic!("bad ordinal literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Order-type oracle for ordinals below ω³: a well-order is a list of
    /// blocks of type 1, ω or ω², and concatenation is addition.
    #[derive(Clone, Debug)]
    struct Blocks(Vec<u8>);

    impl Blocks {
        fn of(o: &Ordinal) -> Blocks {
            let mut v = Vec::new();
            for (e, c) in o.terms() {
                let k = e.as_finite().expect("below w^3") as u8;
                assert!(k < 3);
                v.extend(std::iter::repeat_n(k, *c as usize));
            }
            Blocks(v)
        }

        /// Counts of surviving blocks of each kind after absorption.
        fn order_type(&self) -> [u64; 3] {
            let mut out = [0u64; 3];
            let mut max_after = 0u8;
            let mut seen_after = false;
            for &k in self.0.iter().rev() {
                if !seen_after || k >= max_after {
                    out[k as usize] += 1;
                }
                if !seen_after || k > max_after {
                    max_after = k;
                }
                seen_after = true;
            }
            out
        }

        fn concat(&self, o: &Blocks) -> Blocks {
            let mut v = self.0.clone();
            v.extend(&o.0);
            Blocks(v)
        }

        fn to_ordinal(&self) -> Ordinal {
            let t = self.order_type();
            let mut o = Ordinal::zero();
            for k in (0..3).rev() {
                o = o.add(&Ordinal::term(Ordinal::finite(k as u64), t[k]));
            }
            o
        }
    }

    fn small_ordinals() -> Vec<Ordinal> {
        let mut v = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    v.push(ord("w^2").mul_nat(a).add(&Ordinal::omega().mul_nat(b)).add(&Ordinal::finite(c)));
                }
            }
        }
        v
    }

    #[test]
    fn compare_examples() {
        assert!(ord("w") > ord("3"));
        assert_eq!(ord("w*2+1").cmp(&ord("w*2+1")), Ordering::Equal);
        assert!(ord("w^2+w") > ord("w^2+1"));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Ordinal::one().add(&Ordinal::omega()), Ordinal::omega());
        assert_eq!(ord("w+1").mul_nat(2), ord("w*2+1"));
        assert!(ord("w*3").is_limit());
        assert!(!ord("w*3+1").is_limit());
        assert!(!Ordinal::zero().is_limit());
    }

    #[test]
    fn div_omega_examples() {
        assert_eq!(ord("7").div_omega(), Ordinal::zero());
        assert_eq!(ord("w^2*3+w*5+7").div_omega(), ord("w*3+5"));
        assert_eq!(ord("w^w").div_omega(), ord("w^w"));
        let a = ord("w^2*3+w*5+7");
        let d = a.div_omega();
        assert!(Ordinal::omega().mul(&d) <= a);
        assert!(Ordinal::omega().mul(&d.succ()) > a);
    }

    #[test]
    fn addition_matches_block_oracle() {
        for a in small_ordinals() {
            for b in small_ordinals() {
                let oracle = Blocks::of(&a).concat(&Blocks::of(&b)).to_ordinal();
                assert_eq!(a.add(&b), oracle, "{a} + {b}");
            }
        }
    }

    #[test]
    fn comparison_matches_block_oracle() {
        for a in small_ordinals() {
            for b in small_ordinals() {
                let (ta, tb) = (Blocks::of(&a).order_type(), Blocks::of(&b).order_type());
                let oracle = [ta[2], ta[1], ta[0]].cmp(&[tb[2], tb[1], tb[0]]);
                assert_eq!(a.cmp(&b), oracle, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn multiplication_by_naturals_matches_repeated_concatenation() {
        for a in small_ordinals() {
            for n in 0..4u64 {
                let mut blocks = Blocks(Vec::new());
                for _ in 0..n {
                    blocks = blocks.concat(&Blocks::of(&a));
                }
                let oracle = blocks.to_ordinal();
                if oracle.leading_exponent() < Ordinal::finite(3) {
                    assert_eq!(a.mul_nat(n), oracle, "{a} * {n}");
                }
            }
        }
    }

    #[test]
    fn omega_multiplication() {
        assert_eq!(ord("w+5").mul(&Ordinal::omega()), ord("w^2"));
        assert_eq!(ord("3").mul(&Ordinal::omega()), ord("w"));
        assert_eq!(Ordinal::omega().mul(&ord("w^w")), ord("w^w"));
        assert_eq!(ord("w*2").mul(&ord("w+1")), ord("w^2+w*2"));
    }

    #[test]
    fn subtraction() {
        assert_eq!(ord("w^2+w").sub(&ord("w")), ord("w^2+w"));
        assert_eq!(ord("w*3+2").sub(&ord("w*2+7")), ord("w+2"));
        assert_eq!(ord("5").sub(&ord("5")), Ordinal::zero());
        assert_eq!(ord("w^w").sub(&ord("1")), ord("w^w"));
    }

    #[test]
    #[should_panic]
    fn subtraction_out_of_domain_panics() {
        let _ = ord("3").sub(&ord("w"));
    }

    #[test]
    fn natural_sum() {
        assert_eq!(ord("1").natural_add(&ord("w")), ord("w+1"));
        assert_eq!(ord("w^2+3").natural_add(&ord("w*2+1")), ord("w^2+w*2+4"));
    }

    #[test]
    fn render_and_parse() {
        for s in ["0", "7", "w", "w*2+1", "w^2*3+w*5+7", "w^w", "w^(w+1)*2+3", "w^w^w", "w^(w*2)"] {
            assert_eq!(ord(s).to_string(), s);
        }
        assert_eq!(ord("1+w"), ord("w"));
        assert_eq!(ord(" w ^ 2 "), ord("w^2"));
        assert_eq!(ord("ω^2"), ord("w^2"));
    }

    #[test]
    fn parse_errors_report_offsets() {
        let e = "w^2+x".parse::<Ordinal>().unwrap_err();
        assert_eq!(e.offset, 4);
        let e = "w*0".parse::<Ordinal>().unwrap_err();
        assert_eq!(e.offset, 2);
        assert!("".parse::<Ordinal>().is_err());
        assert!("w^(2".parse::<Ordinal>().is_err());
        assert!("3 3".parse::<Ordinal>().is_err());
    }

    #[test]
    fn limit_part_splits() {
        assert_eq!(ord("w^2+w+3").limit_part(), (ord("w^2+w"), 3));
        assert_eq!(ord("w").limit_part(), (ord("w"), 0));
        assert_eq!(ord("4").limit_part(), (ord("0"), 4));
    }

    #[test]
    fn pred_and_succ() {
        assert_eq!(ord("w+1").pred(), Some(ord("w")));
        assert_eq!(ord("w").pred(), None);
        assert_eq!(ord("w").succ(), ord("w+1"));
    }
}
