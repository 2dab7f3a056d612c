//! Bounded breadth-first closure of a partition set under the category
//! operations, with optional inference rules for enforced orthogonality.
//!
//! Non-membership is never decided: a partition missing from a bounded run
//! may still be reachable through larger intermediates.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::constructions;
use crate::named;
use crate::partition::{Partition, Point};
use crate::trace::{apply, ConstructionTrace, Operation, TraceStep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureConfig {
    /// Members satisfy `k + l <= max_total_points`.
    pub max_total_points: usize,
    pub max_elements: usize,
    /// Close under involution and seed `⊓, ⊔` as well.
    pub banica_speicher: bool,
    pub semantic_rules: bool,
    /// Also add results of nesting and partial doubling whose traces pass
    /// through partitions larger than the bound.
    pub lemma_shortcuts: bool,
}

impl ClosureConfig {
    pub fn generalized(max_total_points: usize) -> Self {
        ClosureConfig {
            max_total_points,
            max_elements: 200_000,
            banica_speicher: false,
            semantic_rules: false,
            lemma_shortcuts: true,
        }
    }

    pub fn banica_speicher(max_total_points: usize) -> Self {
        ClosureConfig { banica_speicher: true, ..Self::generalized(max_total_points) }
    }

    pub fn semantic(max_total_points: usize) -> Self {
        ClosureConfig { semantic_rules: true, ..Self::generalized(max_total_points) }
    }

    pub fn operations(&self) -> Vec<Operation> {
        let mut ops = vec![Operation::Tensor, Operation::Compose, Operation::Reflect];
        if self.banica_speicher {
            ops.push(Operation::Involute);
        }
        ops
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeedOrigin {
    Generator,
    Identity,
    /// `⊓` or `⊔` required of a Banica-Speicher category.
    PairAxiom,
}

/// Inference rules for partitions whose relations force orthogonality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `π_m` or `σ_m` present gives `⊓, ⊔`.
    SquareFamily,
    /// `τ_2 = ⊓⊔` present gives `⊓, ⊔`.
    PairOverCopair,
    /// A singleton block gives `↑⊗↑, ↓⊗↓`, and `↑, ↓` if some one-row member has odd length.
    Singleton,
    /// A projection whose corners form a four-block, all other blocks pairs, gives `⊓, ⊔`.
    CornerProjection,
    /// With `⊓, ⊔` present the set is closed under involution.
    Involution,
}

impl Rule {
    pub fn lemma(self) -> &'static str {
        match self {
            Rule::SquareFamily => "pi_m and sigma_m enforce orthogonality",
            Rule::PairOverCopair => "the pair-over-copair partition enforces orthogonality",
            Rule::Singleton => "a singleton block yields the doubled singletons (single ones for odd length)",
            Rule::CornerProjection => "a projection with a corner block of size four and pair blocks elsewhere enforces orthogonality",
            Rule::Involution => "relations are closed under involution once pair and copair hold",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    Seed { origin: SeedOrigin },
    Step { op: Operation, operands: Vec<Partition>, removed_loops: usize },
    Construction { name: String, seeds: Vec<Partition>, trace: ConstructionTrace },
    Rule { rule: Rule, lemma: String, triggers: Vec<Partition>, hypothesis_held: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberEntry {
    pub partition: Partition,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFiring {
    pub rule: Rule,
    pub triggers: Vec<Partition>,
    pub hypothesis_held: bool,
    pub added: Vec<Partition>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureResult {
    pub generators: Vec<Partition>,
    pub config: ClosureConfig,
    pub members: Vec<MemberEntry>,
    pub saturated: bool,
    pub bound_hit: bool,
    /// Whether some member lies in `P(0,l)` and some in `P(k,0)` with
    /// `k, l >= 1`; rules 1-4 only fire when this holds.
    pub one_row_hypothesis: bool,
    pub rule_log: Vec<RuleFiring>,
    #[serde(skip)]
    index: HashMap<Partition, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Replayable from the leaves returned by [`ClosureResult::leaves`].
    Member(ConstructionTrace),
    NotFoundWithinBounds,
}

struct Engine {
    cfg: ClosureConfig,
    members: Vec<MemberEntry>,
    index: HashMap<Partition, usize>,
    bound_hit: bool,
    capped: bool,
    involution: bool,
}

impl Engine {
    fn fits(&self, upper: usize, lower: usize) -> bool {
        upper + lower <= self.cfg.max_total_points
    }

    /// Inserts `p` if it is new and within bounds; returns whether it was added.
    fn offer(&mut self, p: Partition, derivation: impl FnOnce() -> Derivation) -> bool {
        if !self.fits(p.upper(), p.lower()) {
            self.bound_hit = true;
            return false;
        }
        if self.index.contains_key(&p) {
            return false;
        }
        if self.members.len() >= self.cfg.max_elements {
            self.bound_hit = true;
            self.capped = true;
            return false;
        }
        self.index.insert(p.clone(), self.members.len());
        self.members.push(MemberEntry { partition: p, derivation: derivation() });
        true
    }

    fn step(&mut self, op: Operation, operands: Vec<Partition>) -> bool {
        let (result, loops) = match apply(op, &operands) {
            Ok(r) => r,
            Err(_) => return false,
        };
        self.offer(result, || Derivation::Step { op, operands, removed_loops: loops })
    }

    fn combine(&mut self, x: &Partition, y: &Partition) {
        if self.fits(x.upper() + y.upper(), x.lower() + y.lower()) {
            self.step(Operation::Tensor, vec![x.clone(), y.clone()]);
            self.step(Operation::Tensor, vec![y.clone(), x.clone()]);
        } else {
            self.bound_hit = true;
        }
        for (bottom, top) in [(x, y), (y, x)] {
            if top.lower() == bottom.upper() {
                if self.fits(top.upper(), bottom.lower()) {
                    self.step(Operation::Compose, vec![bottom.clone(), top.clone()]);
                } else {
                    self.bound_hit = true;
                }
            }
        }
    }

    /// Processes members from `cursor` on until no new element appears.
    fn saturate(&mut self, cursor: &mut usize) {
        while *cursor < self.members.len() && !self.capped {
            let i = *cursor;
            let x = self.members[i].partition.clone();
            self.step(Operation::Reflect, vec![x.clone()]);
            if self.involution {
                self.step(Operation::Involute, vec![x.clone()]);
            }
            for j in 0..=i {
                let y = self.members[j].partition.clone();
                self.combine(&x, &y);
            }
            *cursor += 1;
        }
    }

    fn has(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }

    fn is_rule_output(&self, p: &Partition) -> bool {
        matches!(self.members[self.index[p]].derivation, Derivation::Rule { .. })
    }

    fn one_row_hypothesis(&self) -> bool {
        let lower = self.members.iter().any(|m| m.partition.upper() == 0 && m.partition.lower() >= 1);
        let upper = self.members.iter().any(|m| m.partition.lower() == 0 && m.partition.upper() >= 1);
        lower && upper
    }

    fn fire(&mut self, rule: Rule, triggers: Vec<Partition>, outputs: Vec<Partition>, log: &mut Vec<RuleFiring>) -> bool {
        let mut added = Vec::new();
        for out in outputs {
            let derivation = || Derivation::Rule {
                rule,
                lemma: rule.lemma().to_string(),
                triggers: triggers.clone(),
                hypothesis_held: true,
            };
            if self.offer(out.clone(), derivation) {
                added.push(out);
            }
        }
        if added.is_empty() {
            return false;
        }
        log.push(RuleFiring { rule, triggers, hypothesis_held: true, added });
        true
    }

    /// Adds partial doublings of lower-only members whose involution is a
    /// member. Their traces may pass through partitions beyond the bound.
    fn doubling_shortcuts(&mut self) -> bool {
        let mut changed = false;
        let candidates: Vec<Partition> = self
            .members
            .iter()
            .map(|m| m.partition.clone())
            .filter(|p| p.is_lower_only() && p.lower() >= 1 && !p.is_all_singletons())
            .collect();
        for p in candidates {
            let star = p.involute();
            if !self.has(&star) {
                continue;
            }
            for s in 1..=p.lower() {
                if !self.fits(s, s) {
                    self.bound_hit = true;
                    break;
                }
                if let Ok(c) = constructions::partial_doubling(&p, s) {
                    let seeds = vec![p.clone(), star.clone()];
                    changed |= self.offer(c.result.clone(), || Derivation::Construction {
                        name: format!("partial_doubling(s={s})"),
                        seeds,
                        trace: c.trace,
                    });
                }
            }
        }
        changed
    }

    /// Nests lower-only members into each other at every gap, and upper-only
    /// members likewise upside down.
    fn nesting_shortcuts(&mut self) -> bool {
        let mut changed = false;
        let one_row: Vec<Partition> = self
            .members
            .iter()
            .map(|m| m.partition.clone())
            .filter(|p| p.total_points() > 0 && (p.is_lower_only() || p.is_upper_only()))
            .collect();
        for p in &one_row {
            for q in &one_row {
                if p.is_lower_only() != q.is_lower_only() || !self.fits(0, p.total_points() + q.total_points()) {
                    continue;
                }
                // Gaps 0 and l give tensor products, which the search finds anyway.
                for gap in 1..p.total_points() {
                    let c = if p.is_lower_only() {
                        constructions::nest(p, q, gap)
                    } else {
                        constructions::nest(&p.involute(), &q.involute(), gap).map(|c| c.mirrored())
                    };
                    let Ok(c) = c else { continue };
                    let seeds = vec![p.clone(), q.clone()];
                    changed |= self.offer(c.result.clone(), || Derivation::Construction {
                        name: format!("nest(gap={gap})"),
                        seeds,
                        trace: c.trace,
                    });
                }
            }
        }
        changed
    }

    fn semantic_round(&mut self, log: &mut Vec<RuleFiring>, hypothesis_log: &mut bool) -> bool {
        let mut changed = false;
        let pair_copair = vec![named::pair(), named::copair()];
        let hypothesis = self.one_row_hypothesis();
        *hypothesis_log |= hypothesis;
        if hypothesis {
            let snapshot: Vec<Partition> = self
                .members
                .iter()
                .map(|m| m.partition.clone())
                .filter(|p| !self.is_rule_output(p))
                .collect();
            for p in &snapshot {
                if is_square_family(p) {
                    changed |= self.fire(Rule::SquareFamily, vec![p.clone()], pair_copair.clone(), log);
                }
                if *p == named::tau(2) {
                    changed |= self.fire(Rule::PairOverCopair, vec![p.clone()], pair_copair.clone(), log);
                }
                if is_corner_projection(p) {
                    changed |= self.fire(Rule::CornerProjection, vec![p.clone()], pair_copair.clone(), log);
                }
                if p.census().has_singleton {
                    let mut outputs = vec![named::up1().tensor(&named::up1()), named::down1().tensor(&named::down1())];
                    let mut triggers = vec![p.clone()];
                    if let Some(odd) = snapshot.iter().find(|m| {
                        (m.is_lower_only() && m.lower() % 2 == 1) || (m.is_upper_only() && m.upper() % 2 == 1)
                    }) {
                        outputs.extend([named::up1(), named::down1()]);
                        triggers.push(odd.clone());
                    }
                    changed |= self.fire(Rule::Singleton, triggers, outputs, log);
                }
            }
        }
        if !self.involution && self.has(&named::pair()) && self.has(&named::copair()) {
            self.involution = true;
            log.push(RuleFiring {
                rule: Rule::Involution,
                triggers: pair_copair.clone(),
                hypothesis_held: true,
                added: Vec::new(),
            });
            let all: Vec<Partition> = self.members.iter().map(|m| m.partition.clone()).collect();
            for p in all {
                changed |= self.step(Operation::Involute, vec![p]);
            }
        }
        changed
    }
}

/// `π_m` or `σ_m` for some `m >= 2`.
pub fn is_square_family(p: &Partition) -> bool {
    let m = p.upper();
    m >= 2 && p.lower() == m && (*p == named::pi(m) || *p == named::sigma(m))
}

/// `q = q* = qq` in `P(s,s)`, `s >= 2`, with `{U1,Us,L1,Ls}` a block and every
/// other block of size two.
pub fn is_corner_projection(q: &Partition) -> bool {
    let s = q.upper();
    if s < 2 || q.lower() != s || !constructions::is_projection(q) {
        return false;
    }
    let corner = [Point::upper(1), Point::upper(s), Point::lower(1), Point::lower(s)];
    let v = q.block_of(corner[0]);
    if !corner.iter().all(|&c| q.block_of(c) == v) {
        return false;
    }
    q.blocks().iter().all(|b| {
        let is_corner = q.block_of(b[0]) == v;
        if is_corner {
            b.len() == 4
        } else {
            b.len() == 2
        }
    })
}

/// Rechecks the structural hypotheses of a rule on its triggers.
pub fn rule_applies(rule: Rule, triggers: &[Partition]) -> bool {
    match (rule, triggers) {
        (Rule::SquareFamily, [p]) => is_square_family(p),
        (Rule::PairOverCopair, [p]) => *p == named::tau(2),
        (Rule::CornerProjection, [p]) => is_corner_projection(p),
        (Rule::Singleton, [p, rest @ ..]) => {
            p.census().has_singleton
                && rest.iter().all(|m| {
                    (m.is_lower_only() && m.lower() % 2 == 1) || (m.is_upper_only() && m.upper() % 2 == 1)
                })
        }
        (Rule::Involution, ts) => ts.contains(&named::pair()) && ts.contains(&named::copair()),
        _ => false,
    }
}

/// Bounded closure of `generators` (plus the identity) under the operations
/// enabled by `cfg`.
pub fn closure(generators: &[Partition], cfg: &ClosureConfig) -> ClosureResult {
    let mut engine = Engine {
        cfg: cfg.clone(),
        members: Vec::new(),
        index: HashMap::new(),
        bound_hit: false,
        capped: false,
        involution: cfg.banica_speicher,
    };
    engine.offer(Partition::identity(), || Derivation::Seed { origin: SeedOrigin::Identity });
    // `id^{⊗0}`.
    engine.offer(Partition::empty(), || Derivation::Seed { origin: SeedOrigin::Identity });
    if cfg.banica_speicher {
        for p in [named::pair(), named::copair()] {
            engine.offer(p, || Derivation::Seed { origin: SeedOrigin::PairAxiom });
        }
    }
    for g in generators {
        engine.offer(g.clone(), || Derivation::Seed { origin: SeedOrigin::Generator });
    }
    let mut cursor = 0;
    let mut log = Vec::new();
    let mut hypothesis = false;
    loop {
        engine.saturate(&mut cursor);
        if engine.capped {
            break;
        }
        let mut changed = false;
        if cfg.lemma_shortcuts {
            changed |= engine.nesting_shortcuts();
            changed |= engine.doubling_shortcuts();
        }
        if cfg.semantic_rules {
            changed |= engine.semantic_round(&mut log, &mut hypothesis);
        }
        if !changed {
            break;
        }
    }
    if !cfg.semantic_rules {
        hypothesis = engine.one_row_hypothesis();
    }
    let saturated = !engine.capped;
    let mut result = ClosureResult {
        generators: generators.to_vec(),
        config: cfg.clone(),
        members: engine.members,
        saturated,
        bound_hit: engine.bound_hit,
        one_row_hypothesis: hypothesis,
        rule_log: log,
        index: HashMap::new(),
    };
    result.rebuild_index();
    result
}

/// Closure with the inference rules switched on.
pub fn semantic_closure(generators: &[Partition], max_total_points: usize) -> ClosureResult {
    closure(generators, &ClosureConfig::semantic(max_total_points))
}

impl ClosureResult {
    fn rebuild_index(&mut self) {
        self.index = self.members.iter().enumerate().map(|(i, m)| (m.partition.clone(), i)).collect();
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let mut r: ClosureResult = serde_json::from_str(text)?;
        r.rebuild_index();
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("closure reports serialize")
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }

    pub fn derivation(&self, p: &Partition) -> Option<&Derivation> {
        self.index.get(p).map(|&i| &self.members[i].derivation)
    }

    pub fn partitions(&self) -> impl Iterator<Item = &Partition> {
        self.members.iter().map(|m| &m.partition)
    }

    /// Seeds and rule outputs: the members a trace may start from.
    pub fn leaves(&self) -> Vec<Partition> {
        self.members
            .iter()
            .filter(|m| matches!(m.derivation, Derivation::Seed { .. } | Derivation::Rule { .. }))
            .map(|m| m.partition.clone())
            .collect()
    }

    /// Full operation word for `p`, starting from [`Self::leaves`].
    pub fn trace_of(&self, p: &Partition) -> Option<ConstructionTrace> {
        if !self.contains(p) {
            return None;
        }
        let mut steps = Vec::new();
        let mut done = HashSet::new();
        self.expand(p, &mut steps, &mut done);
        Some(ConstructionTrace { steps })
    }

    fn expand(&self, p: &Partition, steps: &mut Vec<TraceStep>, done: &mut HashSet<Partition>) {
        // Iterative post-order; derivation chains can be long.
        let mut stack: Vec<(Partition, bool)> = vec![(p.clone(), false)];
        while let Some((q, children_done)) = stack.pop() {
            if done.contains(&q) {
                continue;
            }
            let derivation = &self.members[self.index[&q]].derivation;
            let children: &[Partition] = match derivation {
                Derivation::Step { operands, .. } => operands,
                Derivation::Construction { seeds, .. } => seeds,
                _ => &[],
            };
            if !children_done && !children.is_empty() {
                stack.push((q, true));
                for c in children.iter().rev() {
                    if !done.contains(c) {
                        stack.push((c.clone(), false));
                    }
                }
                continue;
            }
            match derivation {
                Derivation::Step { op, operands, removed_loops } => steps.push(TraceStep {
                    op: *op,
                    operands: operands.clone(),
                    result: q.clone(),
                    removed_loops: *removed_loops,
                }),
                Derivation::Construction { trace, .. } => steps.extend(trace.steps.iter().cloned()),
                _ => {}
            }
            done.insert(q);
        }
    }

    pub fn membership(&self, p: &Partition) -> Membership {
        match self.trace_of(p) {
            Some(t) => Membership::Member(t),
            None => Membership::NotFoundWithinBounds,
        }
    }

    /// Replays every member from the leaves and rechecks every rule firing.
    /// Returns the first failure.
    pub fn audit(&self) -> Result<(), String> {
        let mut ops = self.config.operations();
        if !ops.contains(&Operation::Involute) {
            ops.push(Operation::Involute);
        }
        let involution_allowed = self.config.banica_speicher || self.rule_log.iter().any(|f| f.rule == Rule::Involution);
        let leaves = self.leaves();
        for m in &self.members {
            match &m.derivation {
                Derivation::Rule { rule, triggers, .. } => {
                    if !rule_applies(*rule, triggers) {
                        return Err(format!("rule {rule:?} does not apply to its triggers for {}", m.partition));
                    }
                    if triggers.iter().any(|t| !self.contains(t)) {
                        return Err(format!("rule trigger for {} is not a member", m.partition));
                    }
                }
                Derivation::Step { op: Operation::Involute, .. } if !involution_allowed => {
                    return Err(format!("{} uses involution, which is not enabled", m.partition));
                }
                _ => {}
            }
            let trace = self.trace_of(&m.partition).expect("member");
            let c = crate::trace::Construction { result: m.partition.clone(), trace };
            c.verify_with(&leaves, &ops).map_err(|e| format!("{}: {e}", m.partition))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::*;

    #[test]
    fn empty_generators_give_identity_powers() {
        let r = closure(&[], &ClosureConfig::generalized(6));
        let expected: HashSet<Partition> = (0..=3).map(Partition::identity_power).collect();
        assert_eq!(Partition::identity_power(0), Partition::empty());
        let got: HashSet<Partition> = r.partitions().cloned().collect();
        assert_eq!(got, expected);
        assert!(r.saturated);
    }

    #[test]
    fn pair_copair_give_nested_pairs() {
        let r = closure(&[pair(), copair()], &ClosureConfig::generalized(4));
        let nested = crate::constructions::nest(&pair(), &pair(), 1).unwrap().result;
        assert!(r.contains(&nested));
        assert!(r.audit().is_ok());
        match r.membership(&nested) {
            Membership::Member(t) => {
                let c = crate::trace::Construction { result: nested, trace: t };
                assert!(c.verify(&r.leaves()).is_ok());
            }
            Membership::NotFoundWithinBounds => panic!("nested pair missing"),
        }
    }

    #[test]
    fn element_cap_is_reported() {
        let cfg = ClosureConfig { max_elements: 5, ..ClosureConfig::generalized(6) };
        let r = closure(&[pair(), copair()], &cfg);
        assert_eq!(r.len(), 5);
        assert!(r.bound_hit && !r.saturated);
    }

    #[test]
    fn json_round_trip_keeps_membership() {
        let r = closure(&[pair()], &ClosureConfig::generalized(4));
        let back = ClosureResult::from_json(&r.to_json()).unwrap();
        assert_eq!(back.len(), r.len());
        assert!(back.contains(&pair().tensor(&pair())));
    }

    #[test]
    fn rule_predicates() {
        assert!(is_square_family(&fourblock()));
        assert!(is_square_family(&sigma(4)));
        assert!(is_corner_projection(&sigma(5)));
        assert!(!is_corner_projection(&tau(3)));
        assert!(!is_corner_projection(&pi(5)));
    }
}
