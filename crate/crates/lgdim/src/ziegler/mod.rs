//! Ziegler spectra of Bézout domains through their value groups: pp-1
//! formulas, type tables, ranks of primes, Cantor–Bendixson ranks, and the
//! combined classification report.

pub mod pp;
pub mod spectrum;
pub mod types;

use serde::{Deserialize, Serialize};

use crate::dimension::{self, CollapseClass, DimValue, Method, Terminal};
use crate::filters::{self, FilterError, IdealFilter};
use crate::lgroup::LGroup;
use crate::ordinal::Ordinal;

use spectrum::{Spectrum, ZgPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZgError {
    #[error("unsupported value group {0}")]
    UnsupportedGamma(String),
    #[error("the m-dimension of {0} is undefined")]
    UndefinedDimension(String),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error("stratification failed: {0}")]
    Stratification(String),
}

fn defined_mdim(g: &LGroup) -> Result<Ordinal, ZgError> {
    dimension::closed_form(g, CollapseClass::Two)
        .ordinal()
        .cloned()
        .ok_or_else(|| ZgError::UndefinedDimension(g.to_string()))
}

fn group_rank(g: &LGroup) -> usize {
    match g {
        LGroup::ProductZ(n) | LGroup::LexZ(n) => *n,
        _ => 0,
    }
}

/// Rank of a prime filter of ℤⁿ: the largest α for which the filter misses
/// the kernel of Γ → Γ / C_{TWO,α}. The zero filter has rank mdim Γ.
pub fn rank_prime(g: &LGroup, f: &IdealFilter) -> Result<Ordinal, ZgError> {
    let lat = g.int_lattice().ok_or_else(|| ZgError::UnsupportedGamma(g.to_string()))?;
    if !filters::is_prime(&lat, f) {
        return Err(FilterError::NotPrime.into());
    }
    let n = lat.rank();
    let mdim = defined_mdim(g)?.as_finite().expect("finite for ℤⁿ");
    // The kernel at each stage is the span of the last `width` coordinates.
    let meets = |width: usize| match f {
        IdealFilter::Zero => false,
        _ if width == 0 => false,
        _ if !lat.is_lex() => width == n,
        IdealFilter::Principal(x) => x.coords().expect("finite")[..n - width].iter().all(|v| *v == 0),
        IdealFilter::LimitCut { level, .. } => *level > n - width,
    };
    for alpha in 1..=mdim {
        let stage = dimension::stage_at(g, CollapseClass::Two, &Ordinal::finite(alpha));
        if meets(n - group_rank(&stage)) {
            return Ok(Ordinal::finite(alpha - 1));
        }
    }
    Ok(Ordinal::finite(mdim))
}

/// `(rk Ass N, rk Div N)`: the ranks of `I^#` and `J^#`.
pub fn ass_div_rank(g: &LGroup, n: &ZgPoint) -> Result<(Ordinal, Ordinal), ZgError> {
    Ok((rank_prime(g, &n.ass_hash)?, rank_prime(g, &n.div_hash)?))
}

/// One point of Spec* with its rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecPoint {
    pub filter: String,
    pub rank: Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecStarReport {
    pub gamma: String,
    /// Representatives: one per rank that occurs.
    pub points: Vec<SpecPoint>,
    pub cb_rank: Ordinal,
}

/// CB rank of Spec*: the multiplication prime filters together with the
/// zero filter, ranked through the TWO chain.
pub fn spec_star_cb(g: &LGroup) -> Result<SpecStarReport, ZgError> {
    let mdim = defined_mdim(g)?;
    let mut points = Vec::new();
    match g {
        LGroup::ProductZ(_) | LGroup::LexZ(_) => {
            let lat = g.int_lattice().ok_or_else(|| ZgError::UnsupportedGamma(g.to_string()))?;
            let n = lat.rank();
            for level in 1..=n {
                let f = if lat.is_lex() && level < n {
                    IdealFilter::limit_cut(&vec![0; level])
                } else if lat.is_lex() {
                    IdealFilter::Principal(lat.unit(n - 1))
                } else {
                    IdealFilter::Principal(lat.unit(level - 1))
                };
                points.push(SpecPoint { filter: f.render(&lat), rank: rank_prime(g, &f)? });
            }
        }
        LGroup::Step { space, minus } => {
            let top = space.top().expect("validated").clone();
            let beta = space.cb_rank().expect("validated");
            let reach = if *minus { beta.pred() } else { Some(beta) };
            if let Some(r) = reach {
                let x = if r.is_zero() { Ordinal::zero() } else { Ordinal::omega_pow(r.clone()) };
                debug_assert!(x <= top);
                points.push(SpecPoint { filter: format!("F_{x}"), rank: r });
            }
        }
        LGroup::Trivial => {}
        LGroup::RationalChain => unreachable!("mdim undefined"),
    }
    points.push(SpecPoint { filter: "zero".into(), rank: mdim });
    let cb_rank = points.iter().map(|p| p.rank.clone()).max().expect("non-empty");
    Ok(SpecStarReport { gamma: g.to_string(), points, cb_rank })
}

/// Bounds and closed form for CB(Zg_R) from α = mdim Γ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZgCbClosedForm {
    pub lower: Ordinal,
    pub upper: Ordinal,
    pub exact: Option<Ordinal>,
}

pub fn zg_cb_closed_form(g: &LGroup) -> Result<ZgCbClosedForm, ZgError> {
    let alpha = defined_mdim(g)?;
    let upper = alpha.mul_nat(2);
    let exact = if g.is_trivial() {
        Some(Ordinal::zero())
    } else if g.is_totally_ordered() {
        Some(upper.clone())
    } else if g.mult_prime_filters_report().krull_dim_one {
        Some(if alpha.is_limit() { alpha.clone() } else { alpha.succ() })
    } else {
        None
    };
    Ok(ZgCbClosedForm { lower: alpha, upper, exact })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZgLayer {
    pub index: usize,
    pub families: Vec<String>,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZgCbReport {
    pub gamma: String,
    pub closed_form: ZgCbClosedForm,
    /// From direct stratification, when the spectrum is enumerable.
    pub stratified: Option<Ordinal>,
    pub bound: i64,
    pub layers: Vec<ZgLayer>,
    pub agree: bool,
}

/// CB rank of Zg_R from the closed form, optionally checked by stratifying
/// the points with parameters up to `bound`.
pub fn cb_rank_zg(g: &LGroup, bound: i64, stratify: bool) -> Result<ZgCbReport, ZgError> {
    let closed = zg_cb_closed_form(g)?;
    let (stratified, layers) = if stratify {
        let st = Spectrum::new(g)?.stratify(bound)?;
        let layers = st
            .layers
            .iter()
            .map(|l| ZgLayer { index: l.index, families: l.families.iter().map(|f| f.to_string()).collect(), points: l.points.len() })
            .collect();
        (Some(st.cb_rank), layers)
    } else {
        (None, Vec::new())
    };
    let agree = stratified.as_ref().is_none_or(|s| closed.exact.as_ref() == Some(s));
    Ok(ZgCbReport { gamma: g.to_string(), closed_form: closed, stratified, bound, layers, agree })
}

/// Everything the library knows about one Γ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub gamma: String,
    pub mdim_gamma: DimValue,
    pub mdim_method: Method,
    pub breadth_gamma: DimValue,
    pub breadth_method: Method,
    /// Breadth of the lattice of pp-1-formulas.
    pub breadth_pp1: DimValue,
    pub pp1_has_mdim: bool,
    pub superdecomposable_exists: bool,
    pub superdec_witness_route: Option<String>,
    pub zg_cb_bounds: Option<[Ordinal; 2]>,
    pub zg_cb_exact: Option<Ordinal>,
    pub zg_cb_method: Option<String>,
    pub krull_dim_one: bool,
    /// The last stage of the TWO chain.
    pub s_infty_stage: String,
}

/// Bound used by [`classify`] when it cross-checks by stratification.
pub const CLASSIFY_BOUND: i64 = 4;

pub fn classify(g: &LGroup) -> ClassifyReport {
    let m = dimension::mdim_cone(g);
    let b = dimension::breadth_cone(g);
    let defined = m.value.is_defined();
    let superdec = !defined;
    let route = superdec.then(|| if b.value.is_defined() { "dense-chain" } else { "bezpp1" }.to_string());
    let (bounds, exact, method) = match zg_cb_closed_form(g) {
        Ok(c) => {
            let checked = Spectrum::new(g)
                .ok()
                .and_then(|s| s.stratify(CLASSIFY_BOUND).ok())
                .is_some_and(|st| Some(&st.cb_rank) == c.exact.as_ref());
            let method = if checked { "closed-form+stratification" } else { "closed-form" };
            (Some([c.lower, c.upper]), c.exact, Some(method.to_string()))
        }
        Err(_) => (None, None, None),
    };
    let last = m.chain.steps.last().expect("stage zero").group.clone();
    let s_infty_stage = match m.chain.terminal {
        Terminal::Trivial => LGroup::Trivial.to_string(),
        _ => last.to_string(),
    };
    ClassifyReport {
        gamma: g.to_string(),
        mdim_gamma: m.value.clone(),
        mdim_method: m.method,
        breadth_gamma: b.value,
        breadth_method: b.method,
        breadth_pp1: m.value,
        pp1_has_mdim: defined,
        superdecomposable_exists: superdec,
        superdec_witness_route: route,
        zg_cb_bounds: bounds,
        zg_cb_exact: exact,
        zg_cb_method: method,
        krull_dim_one: g.mult_prime_filters_report().krull_dim_one,
        s_infty_stage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::ord;

    fn g(s: &str) -> LGroup {
        s.parse().unwrap()
    }

    #[test]
    fn prime_ranks_lex() {
        let lex = g("lex(Z,Z)");
        assert_eq!(rank_prime(&lex, &IdealFilter::principal(&[0, 1])).unwrap(), ord("0"));
        assert_eq!(rank_prime(&lex, &IdealFilter::limit_cut(&[0])).unwrap(), ord("1"));
        assert_eq!(rank_prime(&lex, &IdealFilter::Zero).unwrap(), ord("2"));
        assert!(rank_prime(&g("Z^2"), &IdealFilter::principal(&[1, 1])).is_err());
    }

    #[test]
    fn prime_ranks_product() {
        let z3 = g("Z^3");
        assert_eq!(rank_prime(&z3, &IdealFilter::principal(&[0, 1, 0])).unwrap(), ord("0"));
        assert_eq!(rank_prime(&z3, &IdealFilter::Zero).unwrap(), ord("1"));
    }

    #[test]
    fn spec_star_matches_mdim() {
        for s in ["Z", "lex(Z,Z)", "Z^2", "Cminus(w)", "C(w^2)", "0"] {
            let gg = g(s);
            let mdim = dimension::mdim_cone(&gg).value;
            assert_eq!(Some(&spec_star_cb(&gg).unwrap().cb_rank), mdim.ordinal(), "{s}");
        }
        assert!(matches!(spec_star_cb(&g("Q")), Err(ZgError::UndefinedDimension(_))));
    }

    #[test]
    fn closed_forms() {
        let e = |s: &str| zg_cb_closed_form(&g(s)).unwrap().exact.unwrap();
        assert_eq!(e("Z"), ord("2"));
        assert_eq!(e("lex(Z,Z)"), ord("4"));
        assert_eq!(e("Z^3"), ord("2"));
        assert_eq!(e("C(w)"), ord("3"));
        assert_eq!(e("Cminus(w^w)"), ord("w"));
        assert_eq!(e("0"), ord("0"));
    }

    #[test]
    fn classify_rationals() {
        let r = classify(&g("Q"));
        assert_eq!(r.mdim_gamma, DimValue::Undefined);
        assert_eq!(r.breadth_gamma, DimValue::Defined(ord("0")));
        assert!(r.superdecomposable_exists);
        assert_eq!(r.superdec_witness_route.as_deref(), Some("dense-chain"));
        assert_eq!(r.s_infty_stage, "Q");
        assert!(r.zg_cb_bounds.is_none());
    }

    #[test]
    fn classify_lex() {
        let r = classify(&g("lex(Z,Z)"));
        assert_eq!(r.zg_cb_exact, Some(ord("4")));
        assert_eq!(r.zg_cb_method.as_deref(), Some("closed-form+stratification"));
        assert_eq!(r.s_infty_stage, "0");
        assert!(!r.superdecomposable_exists);
    }
}
