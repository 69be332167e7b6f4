//! Collapse engine for m-dimension and breadth of Γ⁺_∞.
//!
//! Collapsing the intervals of a class 𝕃 in Γ⁺_∞ corresponds to passing to
//! the quotient Γ / C_𝕃, where C_𝕃 is the convex ℓ-subgroup generated by the
//! elements `a` with `[0, a]` in 𝕃. Iterating gives the chain Γ / C_{𝕃,α}; the
//! dimension is the first α at which the quotient is terminal.
//!
//! Finite stretches of the chain are computed literally, one quotient at a
//! time, up to [`iteration_budget`]. Each class also has a closed form, which
//! answers beyond the budget and is cross-checked against iteration below it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolspace::OrdinalSpace;
use crate::lgroup::LGroup;
use crate::ordinal::Ordinal;

/// Environment variable overriding the literal iteration budget.
pub const BUDGET_ENV: &str = "LGDIM_ITER_BUDGET";
pub const DEFAULT_BUDGET: usize = 64;

/// Literal iteration budget: `LGDIM_ITER_BUDGET` if set and valid, else 64.
pub fn iteration_budget() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Which intervals are collapsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CollapseClass {
    /// Lattices with at most two elements: m-dimension.
    Two,
    /// Total orders: breadth.
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Terminal {
    Trivial,
    TotallyOrdered,
    /// Nothing collapses but the stage is not terminal: the dimension is undefined.
    Stalled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub alpha: Ordinal,
    pub group: LGroup,
}

/// The stages Γ / C_{𝕃,α}.
///
/// When the chain is longer than the literal budget, `steps` holds the
/// literal prefix followed by closed-form stages from the last limit on, and
/// `elided` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseChain {
    pub steps: Vec<Stage>,
    pub terminal: Terminal,
    pub terminal_alpha: Ordinal,
    pub elided: bool,
}

/// An ordinal dimension, or undefined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DimValue {
    Defined(Ordinal),
    Undefined,
}

impl DimValue {
    pub fn ordinal(&self) -> Option<&Ordinal> {
        match self {
            DimValue::Defined(o) => Some(o),
            DimValue::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, DimValue::Defined(_))
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Defined(o) => write!(f, "{o}"),
            DimValue::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for DimValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DimValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "undefined" {
            Ok(DimValue::Undefined)
        } else {
            s.parse().map(DimValue::Defined).map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    LiteralIteration,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionResult {
    pub value: DimValue,
    pub method: Method,
    pub chain: CollapseChain,
}

fn is_terminal(g: &LGroup, class: CollapseClass) -> Option<Terminal> {
    match class {
        CollapseClass::Two => g.is_trivial().then_some(Terminal::Trivial),
        CollapseClass::Chain => g.is_totally_ordered().then_some(Terminal::TotallyOrdered),
    }
}

/// C_𝕃 is zero although the stage is not terminal. Within the catalogue this
/// happens only for ℚ under TWO: it has no atoms.
fn stalls(g: &LGroup, class: CollapseClass) -> bool {
    class == CollapseClass::Two && matches!(g, LGroup::RationalChain)
}

fn step_group(space: OrdinalSpace, minus: bool) -> LGroup {
    if space.is_empty() {
        LGroup::Trivial
    } else {
        LGroup::step(space, minus).expect("non-empty space")
    }
}

/// One quotient Γ / C_𝕃.
pub fn collapse_step(g: &LGroup, class: CollapseClass) -> LGroup {
    if is_terminal(g, class).is_some() {
        return g.clone();
    }
    match g {
        LGroup::ProductZ(_) | LGroup::Trivial => LGroup::Trivial,
        LGroup::LexZ(n) if *n > 1 => LGroup::LexZ(n - 1),
        LGroup::LexZ(_) => LGroup::Trivial,
        LGroup::RationalChain => LGroup::RationalChain,
        LGroup::Step { space, minus } => step_group(space.derivative(), *minus),
    }
}

/// Stage α of the chain, in closed form.
pub fn stage_at(g: &LGroup, class: CollapseClass, alpha: &Ordinal) -> LGroup {
    match g {
        LGroup::Step { space, minus } => {
            // The chain is constant from the terminal stage on.
            let alpha = match closed_form(g, class) {
                DimValue::Defined(b) if *alpha > b => b,
                _ => alpha.clone(),
            };
            step_group(space.derivative_iter(&alpha), *minus)
        }
        _ => {
            let mut cur = g.clone();
            let n = alpha.as_finite().unwrap_or(u64::MAX);
            for _ in 0..n {
                let next = collapse_step(&cur, class);
                if next == cur {
                    break;
                }
                cur = next;
            }
            cur
        }
    }
}

/// Closed-form dimension of each class.
pub fn closed_form(g: &LGroup, class: CollapseClass) -> DimValue {
    match class {
        CollapseClass::Two => closed_mdim(g),
        CollapseClass::Chain => closed_breadth(g),
    }
}

fn closed_mdim(g: &LGroup) -> DimValue {
    let d = |n: u64| DimValue::Defined(Ordinal::finite(n));
    match g {
        LGroup::Trivial => d(0),
        LGroup::ProductZ(_) => d(1),
        LGroup::LexZ(n) => d(*n as u64),
        LGroup::RationalChain => DimValue::Undefined,
        LGroup::Step { space, minus } => {
            let beta = space.cb_rank().expect("validated");
            DimValue::Defined(if *minus { beta } else { beta.succ() })
        }
    }
}

fn closed_breadth(g: &LGroup) -> DimValue {
    if g.is_totally_ordered() {
        return DimValue::Defined(Ordinal::zero());
    }
    match g {
        LGroup::ProductZ(_) => DimValue::Defined(Ordinal::one()),
        LGroup::Step { space, minus } => {
            let beta = space.cb_rank().expect("validated");
            if *minus {
                return DimValue::Defined(beta);
            }
            let last = space.derivative_iter(&beta);
            let points = last.finite_size().expect("final derivative is finite");
            DimValue::Defined(if points >= 2 { beta.succ() } else { beta })
        }
        _ => unreachable!("remaining classes are totally ordered"),
    }
}

/// Iterates literally for at most `budget` quotients.
fn iterate(g: &LGroup, class: CollapseClass, budget: usize) -> (Vec<Stage>, Option<Terminal>) {
    let mut steps = vec![Stage { alpha: Ordinal::zero(), group: g.clone() }];
    let mut cur = g.clone();
    for i in 0..=budget {
        if let Some(t) = is_terminal(&cur, class) {
            return (steps, Some(t));
        }
        if stalls(&cur, class) {
            return (steps, Some(Terminal::Stalled));
        }
        if i == budget {
            break;
        }
        cur = collapse_step(&cur, class);
        steps.push(Stage { alpha: Ordinal::finite(i as u64 + 1), group: cur.clone() });
    }
    (steps, None)
}

fn dimension(g: &LGroup, class: CollapseClass, budget: usize) -> DimensionResult {
    let closed = closed_form(g, class);
    let (mut steps, terminal) = iterate(g, class, budget);
    if let Some(t) = terminal {
        let alpha = steps.last().expect("stage zero").alpha.clone();
        let literal = match t {
            Terminal::Stalled => DimValue::Undefined,
            _ => DimValue::Defined(alpha.clone()),
        };
        assert_eq!(literal, closed, "closed form disagrees with iteration for {g} ({class:?})");
        return DimensionResult {
            value: closed,
            method: Method::Both,
            chain: CollapseChain { steps, terminal: t, terminal_alpha: alpha, elided: false },
        };
    }
    let value = closed.ordinal().expect("only step groups outrun the budget").clone();
    let (limit, n) = value.limit_part();
    for j in 0..=n {
        let alpha = limit.add(&Ordinal::finite(j));
        if alpha.as_finite().is_some_and(|a| a as usize <= budget) {
            continue;
        }
        steps.push(Stage { group: stage_at(g, class, &alpha), alpha });
    }
    let terminal = is_terminal(&steps.last().expect("non-empty").group, class).expect("closed form reaches a terminal stage");
    DimensionResult {
        value: DimValue::Defined(value.clone()),
        method: Method::ClosedForm,
        chain: CollapseChain { steps, terminal, terminal_alpha: value, elided: true },
    }
}

/// m-dimension of Γ⁺_∞.
pub fn mdim_cone(g: &LGroup) -> DimensionResult {
    dimension(g, CollapseClass::Two, iteration_budget())
}

/// Breadth of Γ⁺_∞.
pub fn breadth_cone(g: &LGroup) -> DimensionResult {
    dimension(g, CollapseClass::Chain, iteration_budget())
}

/// Like [`mdim_cone`] and [`breadth_cone`] with an explicit budget.
pub fn dimension_with_budget(g: &LGroup, class: CollapseClass, budget: usize) -> DimensionResult {
    dimension(g, class, budget)
}

/// The chain Γ / C_{𝕃,α}, mirroring the localisations at S_α (TWO) and T_α (CHAIN).
pub fn s_chain(g: &LGroup, class: CollapseClass) -> CollapseChain {
    dimension(g, class, iteration_budget()).chain
}

/// Whether `f` lies in the kernel of the first TWO collapse of a step group:
/// its support consists of isolated points.
pub fn in_first_collapse_kernel(f: &crate::lgroup::StepFunction) -> bool {
    f.supp().only_isolated_points()
}
