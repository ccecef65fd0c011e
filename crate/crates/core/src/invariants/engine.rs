//! Forward-chaining bound engine. Every rule is a guarded rewrite step with
//! a citation; the engine fires rules to a fixpoint, keeps the tightest
//! bounds and records each tightening in a trace.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::descriptor::{FieldDescriptor, Guard, TowerStep};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    U,
    #[serde(rename = "u_s")]
    Us,
    PerIndExponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub citation: String,
    pub values: String,
}

/// Bounds on one quantity; `None` means unknown (unbounded on that side).
/// For the period-index exponent, the value e states ind | per^e, and 0 is
/// reserved for per = ind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub quantity: Quantity,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub exact: bool,
    pub trace: Vec<TraceStep>,
}

impl BoundResult {
    pub fn value(&self) -> Option<u64> {
        self.exact.then_some(self.upper).flatten()
    }
}

/// One line per trace step: rule name, citation, values.
pub fn explain(result: &BoundResult) -> String {
    result
        .trace
        .iter()
        .map(|s| format!("{}: {} => {}\n", s.rule, s.citation, s.values))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Bounds {
    lo: Option<u64>,
    hi: Option<u64>,
}

impl Bounds {
    fn exact(&self) -> Option<u64> {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    U(usize),
    Us(usize),
    BrauerDim(usize),
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Update {
    Lo(Slot, u64),
    Hi(Slot, u64),
    Stable(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    U,
    PerInd,
}

struct Ctx<'a> {
    desc: &'a FieldDescriptor,
    levels: &'a [TowerStep],
    m_local: Option<usize>,
    roots_of_unity: bool,
}

impl Ctx<'_> {
    fn base(&self) -> &TowerStep {
        self.desc.base()
    }

    fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn terminal(&self) -> Option<&TowerStep> {
        self.desc.terminal()
    }

    fn sep_closed_base(&self) -> bool {
        matches!(self.base(), TowerStep::AlgClosed | TowerStep::SepClosedAwayFromP)
    }
}

#[derive(Clone, Debug)]
struct Facts {
    u: Vec<Bounds>,
    us: Vec<Bounds>,
    bd: Vec<Option<u64>>,
    stable: Vec<bool>,
    top: Bounds,
}

impl Facts {
    fn new(levels: usize) -> Self {
        Facts {
            u: vec![Bounds::default(); levels],
            us: vec![Bounds::default(); levels],
            bd: vec![None; levels],
            stable: vec![false; levels],
            top: Bounds::default(),
        }
    }

    fn bounds_mut(&mut self, slot: Slot) -> &mut Bounds {
        match slot {
            Slot::U(i) => &mut self.u[i],
            Slot::Us(i) => &mut self.us[i],
            Slot::Top => &mut self.top,
            Slot::BrauerDim(_) => unreachable!("Brauer dimension has an upper bound only"),
        }
    }

    /// Applies `up` if it tightens something; returns a description then.
    fn apply(&mut self, up: Update, family: Family) -> Result<Option<String>> {
        let name = |slot: Slot| match (slot, family) {
            (Slot::U(i), _) => format!("u(k{i})"),
            (Slot::Us(i), _) => format!("u_s(k{i})"),
            (Slot::BrauerDim(i), _) => format!("brdim(k{i})"),
            (Slot::Top, Family::U) => "u(F)".to_string(),
            (Slot::Top, Family::PerInd) => "exponent(F)".to_string(),
        };
        let changed = match up {
            Update::Stable(i) => {
                if self.stable[i] {
                    return Ok(None);
                }
                self.stable[i] = true;
                return Ok(Some(format!("u(k{i}) stable under finite extensions")));
            }
            Update::Hi(Slot::BrauerDim(i), v) => {
                if self.bd[i].is_some_and(|old| old <= v) {
                    return Ok(None);
                }
                self.bd[i] = Some(v);
                return Ok(Some(format!("{} <= {v}", name(Slot::BrauerDim(i)))));
            }
            Update::Lo(slot, v) => {
                let b = self.bounds_mut(slot);
                if b.lo.is_some_and(|old| old >= v) {
                    None
                } else {
                    b.lo = Some(v);
                    Some(format!("{} >= {v}", name(slot)))
                }
            }
            Update::Hi(slot, v) => {
                let b = self.bounds_mut(slot);
                if b.hi.is_some_and(|old| old <= v) {
                    None
                } else {
                    b.hi = Some(v);
                    Some(format!("{} <= {v}", name(slot)))
                }
            }
        };
        if let Update::Lo(slot, _) | Update::Hi(slot, _) = up {
            let b = *self.bounds_mut(slot);
            if let (Some(lo), Some(hi)) = (b.lo, b.hi) {
                if lo > hi {
                    return Err(Error::HypothesisViolated(format!(
                        "derived bounds for {} are inconsistent ({lo} > {hi})",
                        name(slot)
                    )));
                }
            }
        }
        Ok(changed)
    }
}

/// A guarded rewrite step. `fire` returns the updates the rule licenses
/// from the current facts; the engine keeps only those that tighten.
pub struct Rule {
    pub name: &'static str,
    pub citation: &'static str,
    family: Family,
    /// Quadratic-form rules need char k ≠ 2; seeds do not.
    needs_char_not_two: bool,
    fire: fn(&Ctx, &Facts) -> Vec<Update>,
}

fn pow2(e: usize) -> u64 {
    1u64 << e
}

fn seed_alg_closed(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.base() {
        TowerStep::AlgClosed => exact_u_seed(1),
        _ => vec![],
    }
}

fn seed_finite(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.base() {
        TowerStep::Finite => exact_u_seed(2),
        _ => vec![],
    }
}

fn exact_u_seed(v: u64) -> Vec<Update> {
    vec![
        Update::Lo(Slot::U(0), v),
        Update::Hi(Slot::U(0), v),
        Update::Lo(Slot::Us(0), v),
        Update::Hi(Slot::Us(0), v),
        Update::Stable(0),
    ]
}

fn seed_explicit(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.base() {
        TowerStep::ExplicitU { u, u_s } => vec![
            Update::Lo(Slot::U(0), *u),
            Update::Hi(Slot::U(0), *u),
            Update::Lo(Slot::Us(0), *u_s),
            Update::Hi(Slot::Us(0), *u_s),
        ],
        _ => vec![],
    }
}

fn r1_us_step(c: &Ctx, f: &Facts) -> Vec<Update> {
    let mut out = vec![];
    for i in 1..c.levels.len() {
        if c.levels[i] != TowerStep::CompleteDV {
            continue;
        }
        let prev = f.us[i - 1];
        out.extend(prev.lo.map(|v| Update::Lo(Slot::Us(i), 2 * v)));
        out.extend(prev.hi.map(|v| Update::Hi(Slot::Us(i), 2 * v)));
    }
    out
}

fn r2_upper(c: &Ctx, f: &Facts) -> Vec<Update> {
    match (c.terminal(), f.us[c.top()].hi) {
        (Some(_), Some(us)) => vec![Update::Hi(Slot::Top, 4 * us)],
        _ => vec![],
    }
}

fn r3_lower(c: &Ctx, f: &Facts) -> Vec<Update> {
    let k = c.top();
    match (c.terminal(), f.u[k].lo) {
        (Some(_), Some(u)) if f.stable[k] => vec![Update::Lo(Slot::Top, 4 * u)],
        _ => vec![],
    }
}

fn r4_cd_seed(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.base() {
        TowerStep::Cd { d } => {
            let b = pow2(*d as usize);
            vec![Update::Hi(Slot::Us(0), b), Update::Hi(Slot::U(0), b)]
        }
        _ => vec![],
    }
}

fn r5_exact(c: &Ctx, f: &Facts) -> Vec<Update> {
    let k = c.top();
    if c.terminal() != Some(&TowerStep::TwoDimLocal) || !f.stable[k] {
        return vec![];
    }
    match (f.u[k].exact(), f.us[k].exact()) {
        (Some(u), Some(us)) if u == us => vec![Update::Lo(Slot::Top, 4 * u), Update::Hi(Slot::Top, 4 * u)],
        _ => vec![],
    }
}

fn r6_m_local(c: &Ctx, f: &Facts) -> Vec<Update> {
    let Some(m) = c.m_local else { return vec![] };
    let mut out = vec![];
    for i in 1..=m {
        let s = pow2(i);
        out.extend(f.u[0].lo.map(|v| Update::Lo(Slot::U(i), s * v)));
        out.extend(f.us[0].hi.map(|v| Update::Hi(Slot::U(i), s * v)));
        out.extend(f.us[0].lo.map(|v| Update::Lo(Slot::Us(i), s * v)));
        out.extend(f.us[0].hi.map(|v| Update::Hi(Slot::Us(i), s * v)));
        if f.stable[0] {
            out.push(Update::Stable(i));
        }
    }
    out
}

fn r7_cd_patch(c: &Ctx, _: &Facts) -> Vec<Update> {
    match (c.base(), c.terminal()) {
        (TowerStep::Cd { d }, Some(_)) if c.levels.len() == 1 => vec![Update::Hi(Slot::Top, pow2(*d as usize + 2))],
        _ => vec![],
    }
}

fn b1_patch(c: &Ctx, f: &Facts) -> Vec<Update> {
    match (c.terminal(), f.bd[c.top()]) {
        (Some(_), Some(d)) => {
            let e = if c.roots_of_unity { d + 1 } else { d + 2 };
            vec![Update::Hi(Slot::Top, e)]
        }
        _ => vec![],
    }
}

fn b2_seed(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.base() {
        TowerStep::BrauerDim { d, .. } => vec![Update::Hi(Slot::BrauerDim(0), u64::from(*d))],
        TowerStep::AlgClosed | TowerStep::SepClosedAwayFromP => vec![Update::Hi(Slot::BrauerDim(0), 0)],
        _ => vec![],
    }
}

fn seed_finite_brauer(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.base() {
        TowerStep::Finite => vec![Update::Hi(Slot::BrauerDim(0), 1)],
        _ => vec![],
    }
}

fn b3_m_local_sep_closed(c: &Ctx, _: &Facts) -> Vec<Update> {
    match (c.terminal(), c.m_local) {
        (Some(TowerStep::TwoDimLocal), Some(m)) if m >= 1 && c.sep_closed_base() => {
            vec![Update::Hi(Slot::Top, m as u64 + 1)]
        }
        _ => vec![],
    }
}

fn b4_m_local_finite(c: &Ctx, _: &Facts) -> Vec<Update> {
    let ok = *c.base() == TowerStep::Finite && c.roots_of_unity && c.desc.characteristic.positive();
    match (c.terminal(), c.m_local) {
        (Some(TowerStep::TwoDimLocal), Some(m)) if m >= 1 && ok => vec![Update::Hi(Slot::Top, m as u64 + 2)],
        _ => vec![],
    }
}

fn b5_rational_laurent(c: &Ctx, _: &Facts) -> Vec<Update> {
    let shape = c.levels.len() == 3
        && c.levels[1] == TowerStep::RationalFunctionField
        && c.levels[2] == TowerStep::CompleteDV
        && c.terminal() == Some(&TowerStep::TwoDimLocal);
    if !shape {
        return vec![];
    }
    if c.sep_closed_base() {
        vec![Update::Hi(Slot::Top, 3)]
    } else if *c.base() == TowerStep::Finite && c.roots_of_unity {
        vec![Update::Hi(Slot::Top, 4)]
    } else {
        vec![]
    }
}

fn b6_per_equals_ind(c: &Ctx, _: &Facts) -> Vec<Update> {
    match c.terminal() {
        Some(_) if c.levels.len() == 1 && c.sep_closed_base() => vec![Update::Lo(Slot::Top, 0), Update::Hi(Slot::Top, 0)],
        _ => vec![],
    }
}

fn b7_dv_step(c: &Ctx, f: &Facts) -> Vec<Update> {
    (1..c.levels.len())
        .filter(|&i| c.levels[i] == TowerStep::CompleteDV)
        .filter_map(|i| f.bd[i - 1].map(|d| Update::Hi(Slot::BrauerDim(i), d + 1)))
        .collect()
}

static REGISTRY: &[Rule] = &[
    Rule {
        name: "S-alg-closed",
        citation: "external seed: u = u_s = 1 for an algebraically closed field and all its finite extensions",
        family: Family::U,
        needs_char_not_two: false,
        fire: seed_alg_closed,
    },
    Rule {
        name: "S-finite",
        citation: "external seed: u = u_s = 2 for a finite field of odd characteristic and all its finite extensions",
        family: Family::U,
        needs_char_not_two: false,
        fire: seed_finite,
    },
    Rule {
        name: "S-explicit",
        citation: "supplied values of u(k) and u_s(k)",
        family: Family::U,
        needs_char_not_two: false,
        fire: seed_explicit,
    },
    Rule {
        name: "R1",
        citation: "u_s doubles across a complete discretely valued step: u_s(K) = 2 u_s(k)",
        family: Family::U,
        needs_char_not_two: true,
        fire: r1_us_step,
    },
    Rule {
        name: "R2",
        citation: "upper bound on a patch field: u(F_xi) <= 4 u_s(k)",
        family: Family::U,
        needs_char_not_two: true,
        fire: r2_upper,
    },
    Rule {
        name: "R3",
        citation: "lower bound from a residue field on the normalization: u(F_xi) >= 4 u(kappa)",
        family: Family::U,
        needs_char_not_two: true,
        fire: r3_lower,
    },
    Rule {
        name: "R4",
        citation: "a C_d field k has u_s(k) <= 2^d",
        family: Family::U,
        needs_char_not_two: true,
        fire: r4_cd_seed,
    },
    Rule {
        name: "R5",
        citation: "if u(k) = u_s(k) and u is constant on finite extensions of k then u(E) = 4 u(k)",
        family: Family::U,
        needs_char_not_two: true,
        fire: r5_exact,
    },
    Rule {
        name: "R6",
        citation: "m-local tower: 2^m u(k_0) <= u(k) <= u_s(k) = 2^m u_s(k_0)",
        family: Family::U,
        needs_char_not_two: true,
        fire: r6_m_local,
    },
    Rule {
        name: "R7",
        citation: "C_d residue field: u(F_xi) <= 2^(d+2)",
        family: Family::U,
        needs_char_not_two: true,
        fire: r7_cd_patch,
    },
    Rule {
        name: "B2",
        citation: "Brauer dimension seed: 0 for a field separably closed (away from p), d as supplied",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b2_seed,
    },
    Rule {
        name: "S-finite-brauer",
        citation: "external seed: a finite field has Brauer dimension 1",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: seed_finite_brauer,
    },
    Rule {
        name: "B7",
        citation: "a complete discretely valued field over a residue field of Brauer dimension d away from p has Brauer dimension at most d+1 away from p",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b7_dv_step,
    },
    Rule {
        name: "B1",
        citation: "patch over a residue field of Brauer dimension d away from p: ind | per^(d+2), and ind | per^(d+1) given a primitive per-th root of unity",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b1_patch,
    },
    Rule {
        name: "B3",
        citation: "m-local residue field over a field separably closed away from p: ind | per^(m+1)",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b3_m_local_sep_closed,
    },
    Rule {
        name: "B4",
        citation: "m-local residue field of characteristic p > 0 over a finite field with a primitive per-th root of unity: ind | per^(m+2)",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b4_m_local_finite,
    },
    Rule {
        name: "B5",
        citation: "residue field k_0(u)((z)): ind | per^3 for k_0 separably closed, ind | per^4 for k_0 finite with roots of unity",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b5_rational_laurent,
    },
    Rule {
        name: "B6",
        citation: "residue field separably closed away from p: per = ind",
        family: Family::PerInd,
        needs_char_not_two: false,
        fire: b6_per_equals_ind,
    },
];

/// Names of all registered rules, in firing order.
pub fn rule_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|r| r.name).collect()
}

/// The rule engine; rules can be switched off by name.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    disabled: BTreeSet<String>,
}

const MAX_PASSES: usize = 64;

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn without(mut self, rule: &str) -> Self {
        self.disabled.insert(rule.to_string());
        self
    }

    pub fn compute_u_bounds(&self, desc: &FieldDescriptor) -> Result<BoundResult> {
        let (facts, trace) = self.chain(desc, Family::U, false)?;
        let b = match desc.terminal() {
            Some(_) => facts.top,
            None => facts.u[desc.residue_levels().len() - 1],
        };
        Ok(result(Quantity::U, b, trace))
    }

    /// u_s of the residue field k below any terminal step.
    pub fn compute_us_bounds(&self, desc: &FieldDescriptor) -> Result<BoundResult> {
        let (facts, trace) = self.chain(desc, Family::U, false)?;
        Ok(result(Quantity::Us, facts.us[desc.residue_levels().len() - 1], trace))
    }

    pub fn compute_per_ind(&self, desc: &FieldDescriptor, roots_of_unity: bool) -> Result<BoundResult> {
        if !desc.period_prime_to_p && desc.characteristic.positive() {
            return Err(Error::HypothesisViolated(
                "the period must be prime to the residue characteristic".into(),
            ));
        }
        let (facts, trace) = self.chain(desc, Family::PerInd, roots_of_unity)?;
        Ok(result(Quantity::PerIndExponent, facts.top, trace))
    }

    fn chain(&self, desc: &FieldDescriptor, family: Family, roots_of_unity: bool) -> Result<(Facts, Vec<TraceStep>)> {
        desc.check()?;
        let seeded = match family {
            Family::U => matches!(
                desc.base(),
                TowerStep::AlgClosed | TowerStep::Finite | TowerStep::Cd { .. } | TowerStep::ExplicitU { .. }
            ),
            Family::PerInd => matches!(
                desc.base(),
                TowerStep::AlgClosed | TowerStep::Finite | TowerStep::SepClosedAwayFromP | TowerStep::BrauerDim { .. }
            ),
        };
        if !seeded {
            return Err(Error::UnknownBase(desc.to_string()));
        }
        let char_guard = match family {
            Family::U => desc.characteristic.not_two(),
            Family::PerInd => Guard::Pass,
        };
        if char_guard == Guard::Fail {
            return Err(Error::CharTwo);
        }
        let levels = desc.residue_levels();
        let ctx = Ctx {
            desc,
            levels,
            m_local: desc.m_local_depth(),
            roots_of_unity,
        };
        let mut facts = Facts::new(levels.len());
        let mut trace = Vec::new();
        let mut blocked = BTreeSet::new();
        for _ in 0..MAX_PASSES {
            let mut changed = false;
            for rule in REGISTRY.iter().filter(|r| r.family == family) {
                if self.disabled.contains(rule.name) {
                    continue;
                }
                let updates = (rule.fire)(&ctx, &facts);
                if rule.needs_char_not_two && char_guard == Guard::Unknown {
                    let mut probe = facts.clone();
                    let would_change = updates.iter().any(|u| matches!(probe.apply(*u, family), Ok(Some(_))));
                    if would_change && blocked.insert(rule.name) {
                        trace.push(step(rule, format!("blocked: characteristic {} may be 2", desc.characteristic)));
                    }
                    continue;
                }
                let mut notes = Vec::new();
                for u in updates {
                    notes.extend(facts.apply(u, family)?);
                }
                if !notes.is_empty() {
                    changed = true;
                    trace.push(step(rule, notes.join(", ")));
                }
            }
            if !changed {
                break;
            }
        }
        Ok((facts, trace))
    }
}

fn step(rule: &Rule, values: String) -> TraceStep {
    TraceStep {
        rule: rule.name.to_string(),
        citation: rule.citation.to_string(),
        values,
    }
}

fn result(quantity: Quantity, b: Bounds, trace: Vec<TraceStep>) -> BoundResult {
    BoundResult {
        quantity,
        lower: b.lo,
        upper: b.hi,
        exact: b.exact().is_some(),
        trace,
    }
}

pub fn compute_u_bounds(desc: &FieldDescriptor) -> Result<BoundResult> {
    Engine::new().compute_u_bounds(desc)
}

pub fn compute_per_ind(desc: &FieldDescriptor, roots_of_unity: bool) -> Result<BoundResult> {
    Engine::new().compute_per_ind(desc, roots_of_unity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::Characteristic;

    fn two_dim(base: TowerStep, m: usize) -> FieldDescriptor {
        FieldDescriptor::m_local(base, m, Some(TowerStep::TwoDimLocal), Characteristic::Zero).unwrap()
    }

    #[test]
    fn patch_over_alg_closed_is_four() {
        let r = compute_u_bounds(&two_dim(TowerStep::AlgClosed, 0)).unwrap();
        assert_eq!((r.value(), r.trace.len()), (Some(4), 3));
        let names: Vec<&str> = r.trace.iter().map(|s| s.rule.as_str()).collect();
        assert_eq!(names, ["S-alg-closed", "R2", "R3"]);
        assert_eq!(explain(&r).lines().count(), 3);
    }

    #[test]
    fn m_local_closed_forms() {
        let fin = |m| FieldDescriptor::m_local(TowerStep::Finite, m, Some(TowerStep::TwoDimLocal), Characteristic::Prime(3)).unwrap();
        for m in 0..=6 {
            assert_eq!(compute_u_bounds(&two_dim(TowerStep::AlgClosed, m)).unwrap().value(), Some(1 << (m + 2)));
            assert_eq!(compute_u_bounds(&fin(m)).unwrap().value(), Some(1 << (m + 3)));
        }
    }

    #[test]
    fn cd_upper_bound_only() {
        for d in 1..=5 {
            let r = compute_u_bounds(&two_dim(TowerStep::Cd { d }, 0)).unwrap();
            assert_eq!((r.lower, r.upper, r.exact), (None, Some(1 << (d + 2)), false));
        }
    }

    #[test]
    fn explicit_base_alone_gives_seed_line() {
        let d = FieldDescriptor::new(vec![TowerStep::ExplicitU { u: 4, u_s: 4 }], Characteristic::Zero).unwrap();
        let r = compute_u_bounds(&d).unwrap();
        assert_eq!((r.value(), r.trace.len()), (Some(4), 1));
    }

    #[test]
    fn characteristic_guards() {
        let d = FieldDescriptor::m_local(TowerStep::AlgClosed, 0, Some(TowerStep::TwoDimLocal), Characteristic::Prime(2)).unwrap();
        assert_eq!(compute_u_bounds(&d), Err(Error::CharTwo));
        let d = FieldDescriptor::m_local(TowerStep::AlgClosed, 0, Some(TowerStep::TwoDimLocal), Characteristic::Symbolic).unwrap();
        let r = compute_u_bounds(&d).unwrap();
        assert_eq!(r.upper, None);
        assert!(r.trace.iter().any(|s| s.values.starts_with("blocked")));
        let d = FieldDescriptor::new(vec![TowerStep::SepClosedAwayFromP], Characteristic::Zero).unwrap();
        assert!(matches!(compute_u_bounds(&d), Err(Error::UnknownBase(_))));
    }

    #[test]
    fn period_index_examples() {
        let sep = |m| two_dim(TowerStep::SepClosedAwayFromP, m);
        assert_eq!(compute_per_ind(&sep(0), false).unwrap().value(), Some(0));
        for m in 1..=4 {
            assert_eq!(compute_per_ind(&sep(m), false).unwrap().upper, Some(m as u64 + 1));
            let fin = FieldDescriptor::m_local(TowerStep::Finite, m, Some(TowerStep::TwoDimLocal), Characteristic::Prime(5)).unwrap();
            assert_eq!(compute_per_ind(&fin, true).unwrap().upper, Some(m as u64 + 2));
        }
        let rl = |base| {
            FieldDescriptor::new(
                vec![base, TowerStep::RationalFunctionField, TowerStep::CompleteDV, TowerStep::TwoDimLocal],
                Characteristic::Prime(5),
            )
            .unwrap()
        };
        assert_eq!(compute_per_ind(&rl(TowerStep::SepClosedAwayFromP), false).unwrap().upper, Some(3));
        assert_eq!(compute_per_ind(&rl(TowerStep::Finite), true).unwrap().upper, Some(4));
        for d in 0..=5 {
            let b = two_dim(TowerStep::BrauerDim { d, away_from_p: true }, 0);
            assert_eq!(compute_per_ind(&b, true).unwrap().upper, Some(u64::from(d) + 1));
            assert_eq!(compute_per_ind(&b, false).unwrap().upper, Some(u64::from(d) + 2));
        }
        let mut flagged = sep(0);
        flagged.characteristic = Characteristic::Prime(3);
        flagged.period_prime_to_p = false;
        assert!(matches!(compute_per_ind(&flagged, false), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn disabling_rules_never_tightens() {
        let descs = [two_dim(TowerStep::AlgClosed, 2), two_dim(TowerStep::Cd { d: 2 }, 0)];
        for d in &descs {
            let full = compute_u_bounds(d).unwrap();
            for name in rule_names() {
                let part = Engine::new().without(name).compute_u_bounds(d).unwrap();
                assert!(part.upper.unwrap_or(u64::MAX) >= full.upper.unwrap_or(u64::MAX), "{name}");
                assert!(part.lower.unwrap_or(0) <= full.lower.unwrap_or(0), "{name}");
            }
        }
    }
}
