//! The acceptance checks, runnable from tests and from `lgdim check`.
//!
//! Each check is a pure function returning a one-line detail on success or a
//! description of the first disagreement on failure.

use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boolspace::OrdinalSpace;
use crate::dimension::{self, CollapseClass, DimValue, Method, Terminal};
use crate::filters::{self, IdealFilter};
use crate::lgroup::{IntLattice, LGroup, ZCone};
use crate::ordinal::Ordinal;
use crate::ziegler::pp::{self, PpFormula};
use crate::ziegler::spectrum::Spectrum;
use crate::ziegler::types::{self, PpTypeTable, TypeIdeal};
use crate::ziegler::{self, ZgError};

/// Tops of the step-group zoo.
pub const STEP_TOPS: [&str; 6] = ["5", "w", "w*2", "w^2", "w^2*3+w", "w^w"];

/// Value groups exercised by the classification checks.
pub fn zoo() -> Vec<LGroup> {
    let mut out: Vec<LGroup> = ["0", "Z", "Z^2", "Z^3", "lex(Z,Z)", "lex(Z,Z,Z)", "Q"].iter().map(|s| s.parse().expect("zoo literal")).collect();
    for top in STEP_TOPS {
        for minus in [false, true] {
            out.push(LGroup::step(OrdinalSpace::interval(top.parse().expect("zoo literal")), minus).expect("non-empty space"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub tags: Vec<String>,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub run: fn() -> Result<String, String>,
}

impl Check {
    /// A tag selects a check by name, by tag, or by criterion number.
    pub fn matches(&self, tag: &str) -> bool {
        tag == "all" || tag == self.name || self.tags.contains(&tag) || tag == self.criterion.to_string()
    }
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { criterion: 1, name: "mdim-step", tags: &["mdim", "mdimCXZ"], run: check_mdim_step },
        Check { criterion: 2, name: "mdim-step-minus", tags: &["mdim", "mdimCminus"], run: check_mdim_step_minus },
        Check { criterion: 3, name: "leq-oracle", tags: &["pp", "leq"], run: check_leq_oracle },
        Check { criterion: 4, name: "mixed-and-duality", tags: &["pp", "mixed", "duality"], run: check_mixed_and_duality },
        Check { criterion: 5, name: "inverse-quotient", tags: &["filters"], run: check_inverse_quotient },
        Check { criterion: 6, name: "zg-cb-z", tags: &["zg", "zg-cb", "zg-z"], run: || check_zg_cb("Z", 2) },
        Check { criterion: 6, name: "zg-cb-lex", tags: &["zg", "zg-cb", "zg-lex"], run: || check_zg_cb("lex(Z,Z)", 4) },
        Check { criterion: 6, name: "zg-cb-z3", tags: &["zg", "zg-cb", "zg-z3"], run: || check_zg_cb("Z^3", 2) },
        Check { criterion: 7, name: "classify", tags: &["classify", "superdec"], run: check_classify },
        Check { criterion: 8, name: "spec-star", tags: &["spec-star"], run: check_spec_star },
        Check { criterion: 9, name: "chains", tags: &["chain", "mdim", "breadth"], run: check_chains },
        Check { criterion: 10, name: "isolation", tags: &["zg", "isolation"], run: check_isolation },
        Check { criterion: 11, name: "type-tables", tags: &["types"], run: check_type_tables },
    ]
}

pub fn run_check(c: &Check) -> CheckResult {
    let start = Instant::now();
    let outcome = (c.run)();
    let elapsed_ms = start.elapsed().as_millis();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { criterion: c.criterion, name: c.name.into(), tags: c.tags.iter().map(|t| t.to_string()).collect(), passed, detail, elapsed_ms }
}

/// Runs the selected checks, each on its own thread.
pub fn run_suite(tag: Option<&str>) -> Vec<CheckResult> {
    let selected: Vec<Check> = checks().into_iter().filter(|c| tag.is_none_or(|t| c.matches(t))).collect();
    thread::scope(|s| {
        let handles: Vec<_> = selected.iter().map(|c| s.spawn(move || run_check(c))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn step_zoo(minus: bool) -> Vec<(Ordinal, LGroup)> {
    STEP_TOPS
        .iter()
        .map(|t| {
            let top: Ordinal = t.parse().expect("zoo literal");
            let g = LGroup::step(OrdinalSpace::interval(top.clone()), minus).expect("non-empty space");
            (top, g)
        })
        .collect()
}

fn check_mdim_step() -> Result<String, String> {
    let mut literal = 0;
    for (top, g) in step_zoo(false) {
        let beta = OrdinalSpace::interval(top.clone()).cb_rank().map_err(|e| e.to_string())?;
        let want = beta.succ();
        let r = dimension::mdim_cone(&g);
        ensure(r.value == DimValue::Defined(want.clone()), || format!("C([0,{top}]): got {}, want {want}", r.value))?;
        if want.as_finite().is_some_and(|v| v <= 4) {
            ensure(r.method == Method::Both, || format!("C([0,{top}]) was not iterated literally"))?;
            for st in &r.chain.steps {
                let closed = dimension::stage_at(&g, CollapseClass::Two, &st.alpha);
                ensure(st.group == closed, || format!("C([0,{top}]) stage {}: literal {} vs closed {closed}", st.alpha, st.group))?;
            }
            ensure(r.chain.steps.len() as u64 == want.as_finite().unwrap() + 1, || format!("C([0,{top}]): chain length"))?;
            literal += 1;
        }
    }
    Ok(format!("{} tops, {literal} checked stage by stage", STEP_TOPS.len()))
}

fn check_mdim_step_minus() -> Result<String, String> {
    for (top, g) in step_zoo(true) {
        let beta = OrdinalSpace::interval(top.clone()).cb_rank().map_err(|e| e.to_string())?;
        let r = dimension::mdim_cone(&g);
        ensure(r.value == DimValue::Defined(beta.clone()), || format!("Cminus([0,{top}]): got {}, want {beta}", r.value))?;
    }
    let top: Ordinal = "w^w".parse().expect("literal");
    let g = LGroup::step(OrdinalSpace::interval(top), true).expect("non-empty space");
    let v = dimension::mdim_cone(&g).value;
    ensure(v == DimValue::Defined(Ordinal::omega()), || format!("Cminus(w^w) has mdim {v}, want w"))?;
    Ok("mdim Cminus(w^w) = w".into())
}

/// `None` is `∞`.
type Param = Option<u64>;

const GRID: [Param; 6] = [Some(0), Some(1), Some(2), Some(3), Some(4), None];

/// Index of `φ(M)` in a cyclic module `ℤ/pⁿ` (`n = Some`) or in `R` (`None`),
/// as the exponent `k` with `φ(M) = pᵏM`; `None` is the zero subgroup.
fn summand_index(c: Param, d: Param, n: Option<u64>) -> Param {
    match n {
        Some(n) => {
            let div = c.map_or(n, |c| c.min(n));
            let ann = d.map_or(0, |d| n.saturating_sub(d));
            Some(div.max(ann))
        }
        None => {
            let ann = if d.is_some() { None } else { Some(0) };
            // max with None as the largest value
            match (c, ann) {
                (Some(x), Some(y)) => Some(x.max(y)),
                _ => None,
            }
        }
    }
}

fn sum_index(summands: &[(Param, Param)], n: Option<u64>) -> Param {
    summands.iter().map(|(c, d)| summand_index(*c, *d, n)).min_by(cmp_param).expect("non-empty")
}

fn cmp_param(x: &Param, y: &Param) -> std::cmp::Ordering {
    match (x, y) {
        (Some(a), Some(b)) => a.cmp(b),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    }
}

/// `φ ≤ ψ` over a discrete valuation ring, by evaluation on `R` and `ℤ/pⁿ`.
fn module_leq(phi: &[(Param, Param)], psi: &[(Param, Param)]) -> bool {
    (1..=24).map(Some).chain([None]).all(|n| cmp_param(&sum_index(phi, n), &sum_index(psi, n)) != std::cmp::Ordering::Less)
}

/// The module oracle over ℤ for one summand against two, indexed by grid position.
fn z_table() -> Vec<bool> {
    let s: Vec<(Param, Param)> = GRID.iter().flat_map(|c| GRID.iter().map(move |d| (*c, *d))).collect();
    let mut t = Vec::with_capacity(s.len().pow(3));
    for l in &s {
        for r1 in &s {
            for r2 in &s {
                t.push(module_leq(&[*l], &[*r1, *r2]));
            }
        }
    }
    t
}

fn grid_pos(x: Param) -> usize {
    x.map_or(5, |v| v as usize)
}

/// Grid elements of Γ⁺_∞ for ℤ² with their projections.
fn z2_grid() -> Vec<(ZCone, [Param; 2])> {
    let mut out: Vec<(ZCone, [Param; 2])> = (0..=4).flat_map(|x| (0..=4).map(move |y| (ZCone::fin(&[x, y]), [Some(x as u64), Some(y as u64)]))).collect();
    out.push((ZCone::Inf, [None, None]));
    out
}

fn check_leq_oracle() -> Result<String, String> {
    let lat = IntLattice::product(2);
    let table = z_table();
    let grid = z2_grid();
    let summands: Vec<(usize, usize)> = (0..grid.len()).flat_map(|c| (0..grid.len()).map(move |d| (c, d))).collect();
    let rhs: Vec<(usize, usize)> = (0..summands.len()).flat_map(|i| (i..summands.len()).map(move |j| (i, j))).collect();
    let formula = |ids: &[usize]| PpFormula::new(ids.iter().map(|&i| (grid[summands[i].0].0, grid[summands[i].1].0)).collect());
    let rhs_formulas: Vec<PpFormula<ZCone>> = rhs.iter().map(|(i, j)| formula(&[*i, *j])).collect();
    let pos = |i: usize, axis: usize| {
        let (c, d) = summands[i];
        grid_pos(grid[c].1[axis]) * 6 + grid_pos(grid[d].1[axis])
    };
    let oracle = |lhs: &[usize], r: (usize, usize)| {
        lhs.iter().all(|&l| (0..2).all(|ax| table[(pos(l, ax) * 36 + pos(r.0, ax)) * 36 + pos(r.1, ax)]))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut lhs: Vec<Vec<usize>> = (0..summands.len()).map(|i| vec![i]).collect();
    lhs.extend((0..64).map(|_| vec![rng.gen_range(0..summands.len()), rng.gen_range(0..summands.len())]));
    let workers = thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = lhs.len().div_ceil(workers);
    let results: Vec<Result<u64, String>> = thread::scope(|s| {
        let handles: Vec<_> = lhs
            .chunks(chunk)
            .map(|part| {
                let (rhs, rhs_formulas, formula, oracle) = (&rhs, &rhs_formulas, &formula, &oracle);
                s.spawn(move || {
                    let mut n = 0u64;
                    for l in part {
                        let phi = formula(l);
                        for (r, psi) in rhs.iter().zip(rhs_formulas) {
                            let got = pp::leq_pp(&lat, &phi, psi);
                            if got != oracle(l, *r) {
                                return Err(format!("{phi:?} <= {psi:?}: leq_pp says {got}"));
                            }
                            n += 1;
                        }
                    }
                    Ok(n)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut total = 0;
    for r in results {
        total += r?;
    }
    ensure(total >= 100_000, || format!("only {total} comparisons"))?;
    Ok(format!("{total} comparisons agree"))
}

fn check_mixed_and_duality() -> Result<String, String> {
    let z = IntLattice::product(1);
    let zgrid: Vec<ZCone> = GRID.iter().map(|p| p.map_or(ZCone::Inf, |v| ZCone::int(v as i64))).collect();
    let z2 = IntLattice::product(2);
    let z2grid: Vec<ZCone> = z2_grid().into_iter().map(|(e, _)| e).collect();
    let mut count = 0;
    for (lat, grid) in [(z, &zgrid), (z2, &z2grid)] {
        for c in grid {
            for d in grid {
                let lhs = PpFormula::single(*c, *d);
                for a in grid {
                    for b in grid {
                        let x = pp::leq_mixed(&lat, c, d, a, b);
                        let y = pp::leq_mixed_ideal_form(&lat, c, d, a, b);
                        let w = pp::leq_pp(&lat, &lhs, &pp::mixed_rhs(&lat, a, b));
                        ensure(x == y && y == w, || format!("(c,d,a,b)=({c:?},{d:?},{a:?},{b:?}): {x} {y} {w}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let random_form = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=3);
        let s = (0..k).map(|_| (z2grid[rng.gen_range(0..z2grid.len())], z2grid[rng.gen_range(0..z2grid.len())])).collect();
        pp::canonical(&z2, &PpFormula::new(s))
    };
    let forms: Vec<PpFormula<ZCone>> = (0..1000).map(|_| random_form(&mut rng)).collect();
    let mut related = 0;
    for (i, phi) in forms.iter().enumerate() {
        let dd = pp::prest_dual(&z2, &pp::prest_dual(&z2, phi));
        ensure(pp::equivalent(&z2, &dd, phi), || format!("D(D({phi:?})) = {dd:?}"))?;
        let psi = &forms[(i * 7 + 1) % forms.len()];
        let sum = pp::canonical(&z2, &phi.sum(psi));
        for other in [psi, &sum] {
            let le = pp::leq_pp(&z2, phi, other);
            let dual_le = pp::leq_pp(&z2, &pp::prest_dual(&z2, other), &pp::prest_dual(&z2, phi));
            ensure(le == dual_le, || format!("{phi:?} <= {other:?} is {le}, dual order says {dual_le}"))?;
            related += usize::from(le);
        }
    }
    Ok(format!("{count} mixed comparisons; 1000 forms, {related} comparable pairs"))
}

/// Both identities need `J` prime. Non-prime filters are run too and their
/// failures only counted.
fn check_inverse_quotient() -> Result<String, String> {
    let (mut count, mut outside) = (0, 0);
    for lat in [IntLattice::product(1), IntLattice::lex(2), IntLattice::product(3)] {
        let fs = filters::enumerate(&lat, 5);
        let ks: Vec<ZCone> = filters::boxed(lat.rank(), -5, 5).iter().map(|v| ZCone::fin(v)).filter(|k| lat.is_positive(k)).collect();
        for f in &fs {
            let prime = filters::is_prime(&lat, f);
            for k in &ks {
                let up = filters::inverse_colon(&lat, f, k).map_err(|e| format!("{}_{k:?}: {e}", f.render(&lat)))?;
                let first = filters::colon(&lat, &up, k).map_err(|e| e.to_string())? == *f;
                let second = f.contains(&lat, k) || {
                    let down = filters::colon(&lat, f, k).map_err(|e| e.to_string())?;
                    filters::inverse_colon(&lat, &down, k).map_err(|e| e.to_string())? == *f
                };
                if prime {
                    ensure(first && second, || format!("{} with K = {k:?}: round trips {first} {second}", f.render(&lat)))?;
                    count += 1;
                } else if !(first && second) {
                    outside += 1;
                }
            }
        }
    }
    Ok(format!("{count} prime filter and shift pairs; {outside} failures among non-prime filters"))
}

/// Bound for the direct stratification checks.
pub const ZG_BOUND: i64 = 6;

fn check_zg_cb(gamma: &str, want: u64) -> Result<String, String> {
    let g: LGroup = gamma.parse().map_err(|e| format!("{e}"))?;
    let r = ziegler::cb_rank_zg(&g, ZG_BOUND, true).map_err(|e| e.to_string())?;
    let want = Ordinal::finite(want);
    let exact = r.closed_form.exact.clone().ok_or("no closed form")?;
    ensure(exact == want, || format!("closed form {exact}, want {want}"))?;
    ensure(r.stratified.as_ref() == Some(&want), || format!("stratification gives {:?}", r.stratified))?;
    ensure(r.closed_form.lower <= exact && exact <= r.closed_form.upper, || "bounds violated".into())?;
    Ok(format!("{gamma}: CB rank {want} in [{}, {}], {} layers", r.closed_form.lower, r.closed_form.upper, r.layers.len()))
}

fn check_classify() -> Result<String, String> {
    let q = ziegler::classify(&LGroup::RationalChain);
    ensure(q.mdim_gamma == DimValue::Undefined, || "mdim Q is defined".into())?;
    ensure(q.breadth_gamma == DimValue::Defined(Ordinal::zero()), || format!("breadth Q = {}", q.breadth_gamma))?;
    ensure(q.superdecomposable_exists, || "Q: no superdecomposable reported".into())?;
    let mut n = 0;
    for g in zoo() {
        let r = ziegler::classify(&g);
        if r.mdim_gamma.is_defined() {
            ensure(!r.superdecomposable_exists, || format!("{g}: superdecomposable reported"))?;
            ensure(r.breadth_pp1 == r.mdim_gamma, || format!("{g}: breadth_pp1 {} vs mdim {}", r.breadth_pp1, r.mdim_gamma))?;
            n += 1;
        }
    }
    Ok(format!("Q and {n} groups with defined mdim"))
}

fn check_spec_star() -> Result<String, String> {
    for s in ["Z", "lex(Z,Z)", "Z^2", "Cminus(w)"] {
        let g: LGroup = s.parse().map_err(|e| format!("{e}"))?;
        let cb = ziegler::spec_star_cb(&g).map_err(|e| e.to_string())?.cb_rank;
        let m = dimension::mdim_cone(&g).value;
        ensure(m.ordinal() == Some(&cb), || format!("{s}: Spec* CB {cb} vs mdim {m}"))?;
    }
    Ok("4 groups".into())
}

fn check_chains() -> Result<String, String> {
    let mut n = 0;
    for g in zoo() {
        let m = dimension::mdim_cone(&g);
        let Some(mv) = m.value.ordinal().and_then(Ordinal::as_finite) else { continue };
        let two = &m.chain;
        ensure(two.terminal == Terminal::Trivial && !two.elided, || format!("{g}: TWO chain terminal {:?}", two.terminal))?;
        ensure(two.steps.len() as u64 == mv + 1, || format!("{g}: TWO chain has {} stages, mdim {mv}", two.steps.len()))?;
        let b = dimension::breadth_cone(&g);
        let bv = b.value.ordinal().cloned().ok_or_else(|| format!("{g}: breadth undefined"))?;
        let chain = &b.chain;
        ensure(chain.terminal == Terminal::TotallyOrdered, || format!("{g}: CHAIN terminal {:?}", chain.terminal))?;
        ensure(chain.terminal_alpha == bv && chain.steps.last().map(|s| &s.alpha) == Some(&bv), || format!("{g}: CHAIN terminal at {}, breadth {bv}", chain.terminal_alpha))?;
        n += 1;
    }
    Ok(format!("{n} groups"))
}

fn check_isolation() -> Result<String, String> {
    let mut count = 0;
    for (gamma, bound) in [("Z", ZG_BOUND), ("Z^2", 4)] {
        let g: LGroup = gamma.parse().map_err(|e| format!("{e}"))?;
        let sp = Spectrum::new(&g).map_err(|e| e.to_string())?;
        let st = sp.stratify(bound).map_err(|e| e.to_string())?;
        for layer in &st.layers {
            for p in &layer.points {
                let (ra, rd) = ziegler::ass_div_rank(&g, p).map_err(|e: ZgError| e.to_string())?;
                let both_zero = ra.is_zero() && rd.is_zero();
                let name = p.pair.render(sp.lattice());
                ensure((layer.index == 0) == both_zero, || format!("{gamma} {name}: layer {} with ranks ({ra}, {rd})", layer.index))?;
                let found = ra.natural_add(&rd);
                ensure(Ordinal::finite(layer.index as u64) <= found, || format!("{gamma} {name}: layer {} above {found}", layer.index))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} points"))
}

fn random_param(rng: &mut ChaCha8Rng) -> ZCone {
    if rng.gen_bool(0.2) {
        ZCone::Inf
    } else {
        ZCone::int(rng.gen_range(0..=6))
    }
}

/// Type tables: every pair type with parameters up to 6, and types generated
/// by random formulas.
fn sampled_tables(grid: u64) -> Result<Vec<PpTypeTable>, String> {
    let z = IntLattice::product(1);
    let primes = filters::enumerate_prime(&z, 6);
    let mut out = Vec::new();
    for i in &primes {
        for j in &primes {
            if filters::admissible(&z, i, j).map_err(|e| e.to_string())? {
                out.push(types::table_from_pair(i, j, grid));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let gens: Vec<PpFormula<ZCone>> = (0..rng.gen_range(1..=3))
            .map(|_| PpFormula::new((0..rng.gen_range(1..=2)).map(|_| (random_param(&mut rng), random_param(&mut rng))).collect()))
            .collect();
        out.push(types::pp_type_table(&gens, grid).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn check_type_tables() -> Result<String, String> {
    let tables = sampled_tables(16)?;
    for t in &tables {
        types::check_type_table(t).map_err(|v| format!("table {t:?} fails {v:?}"))?;
    }
    let pair = types::table_from_pair(&IdealFilter::principal(&[2]), &IdealFilter::principal(&[3]), 16);
    let mut broken = pair.clone();
    // F(0) = F(0) ∩ F(1) fails once F(1) is smaller than F(0).
    broken.finite[1] = TypeIdeal::Down(0);
    ensure(!types::validate_type_table(&broken), || "corrupted table passes".into())?;
    let mut broken = pair;
    broken.at_infinity = TypeIdeal::Finite;
    ensure(!types::validate_type_table(&broken), || "table with F(inf) != all passes".into())?;
    Ok(format!("{} tables valid, 2 corrupted tables rejected", tables.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_oracle_basics() {
        // 2|x <= 1|x and not conversely
        assert!(module_leq(&[(Some(2), None)], &[(Some(1), None)]));
        assert!(!module_leq(&[(Some(1), None)], &[(Some(2), None)]));
        // x=0 is below everything
        assert!(module_leq(&[(None, Some(0))], &[(Some(4), Some(0))]));
        // xp=0 <= x=x but not <= p|x (fails in Z/p)
        assert!(!module_leq(&[(Some(0), Some(1))], &[(Some(1), None)]));
    }

    #[test]
    fn tags_select_checks() {
        let all = checks();
        assert_eq!(all.iter().filter(|c| c.matches("mdimCXZ")).count(), 1);
        assert_eq!(all.iter().filter(|c| c.matches("zg-lex")).count(), 1);
        assert_eq!(all.iter().filter(|c| c.matches("6")).count(), 3);
        assert!(all.iter().all(|c| !c.matches("no-such-tag")));
        assert!(run_suite(Some("no-such-tag")).is_empty());
    }

    #[test]
    fn quick_checks_pass() {
        for r in run_suite(Some("mdim")) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
