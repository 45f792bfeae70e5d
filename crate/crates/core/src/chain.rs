//! Bounded chain search: loop witnesses certifying that a relative DP
//! problem is not finite, and their independent verification.
//!
//! A witness is a chain fragment `s_1σ_1 → t_1σ_1 →* s_2σ_2 → ... → t_nσ_n`
//! whose end reduces to `s_1σ_1θ`. Rewriting is closed under substitution,
//! so the fragment can be repeated forever with `σ_iθ^k`; one strict pair
//! or strict rule step in the body yields infinitely many of them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::problem::RelativeDpp;
use crate::processors::{search_reduction_pair, Monotonicity};
use crate::rewrite::{bounded_sn, rewrite_at, successors, Mode, SnResult};
use crate::subst::{match_term, Substitution};
use crate::term::{Position, Symbol, Term};
use crate::trs::{Rule, Trs};

/// Search limits: loop length, term depth, and the number of terms a
/// single reduction search (or termination check) may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_steps: usize,
    pub max_term_depth: usize,
    pub rewrite_budget: usize,
}

impl Bounds {
    pub fn new(max_steps: usize, max_term_depth: usize, rewrite_budget: usize) -> Self {
        Bounds {
            max_steps,
            max_term_depth,
            rewrite_budget,
        }
    }

    pub fn doubled(self) -> Self {
        Bounds::new(self.max_steps * 2, self.max_term_depth * 2, self.rewrite_budget * 2)
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::new(4, 6, 200)
    }
}

/// One rewrite step of a connection `t_iσ_i →* s_{i+1}σ_{i+1}`. `rule`
/// indexes `R ∪ Rw` (strict rules first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionStep {
    pub rule: usize,
    pub position: Position,
    pub strict: bool,
}

/// An instantiated pair; `pair` indexes `P ∪ Pw` (strict pairs first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub pair: usize,
    pub strict: bool,
    pub sigma: Substitution,
    /// Reduction to the next step's left-hand side; empty for the last step,
    /// whose reduction is the witness's closing reduction.
    pub connection: Vec<ConnectionStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Minimality {
    Verified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub steps: Vec<ChainStep>,
    pub closing_reduction: Vec<ConnectionStep>,
    pub theta: Substitution,
    pub minimality: Minimality,
    /// Node budget used when minimality was established.
    pub sn_budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Pairs come from `P ∪ Pw` with the claimed strictness.
    Pairs,
    /// Connections replay as rewriting with `R ∪ Rw`.
    Connections,
    /// The loop body contains a strict element.
    Strictness,
    /// Every `t_iσ_i` terminates.
    Minimality,
}

impl Condition {
    fn number(self) -> u8 {
        match self {
            Condition::Pairs => 1,
            Condition::Connections => 2,
            Condition::Strictness => 3,
            Condition::Minimality => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition ({}): {}", self.condition.number(), self.detail)
    }
}

impl std::error::Error for Violation {}

fn violation(condition: Condition, detail: impl Into<String>) -> Violation {
    Violation {
        condition,
        detail: detail.into(),
    }
}

impl ChainWitness {
    /// The loop body repeated `k` times; its closing instantiation is `θ^k`.
    pub fn pumped(&self, k: usize) -> ChainWitness {
        assert!(k >= 1);
        let mut steps = Vec::new();
        let mut power = Substitution::new();
        for round in 0..k {
            for (i, step) in self.steps.iter().enumerate() {
                let last = i + 1 == self.steps.len();
                let connection = if last && round + 1 < k {
                    self.closing_reduction.clone()
                } else {
                    step.connection.clone()
                };
                steps.push(ChainStep {
                    pair: step.pair,
                    strict: step.strict,
                    sigma: step.sigma.then(&power),
                    connection,
                });
            }
            power = power.then(&self.theta);
        }
        ChainWitness {
            steps,
            closing_reduction: self.closing_reduction.clone(),
            theta: power,
            minimality: self.minimality,
            sn_budget: self.sn_budget,
        }
    }

    /// Number of strict pair applications and strict rule steps in the body.
    pub fn strict_occurrences(&self) -> usize {
        let pairs = self.steps.iter().filter(|s| s.strict).count();
        let rules = self
            .steps
            .iter()
            .flat_map(|s| &s.connection)
            .chain(&self.closing_reduction)
            .filter(|c| c.strict)
            .count();
        pairs + rules
    }

    pub fn pair_sequence(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.pair).collect()
    }
}

/// Replays a witness against `d`. The diagnostic names the first violated
/// chain condition.
pub fn verify_witness(d: &RelativeDpp, w: &ChainWitness) -> Result<(), Violation> {
    let pairs = d.all_pairs();
    let rules = d.all_rules();
    if w.steps.is_empty() {
        return Err(violation(Condition::Pairs, "witness has no steps"));
    }
    for (i, step) in w.steps.iter().enumerate() {
        match pairs.get(step.pair) {
            None => {
                return Err(violation(
                    Condition::Pairs,
                    format!("step {i} uses pair index {} outside P ∪ Pw", step.pair),
                ))
            }
            Some((_, strict)) if *strict != step.strict => {
                return Err(violation(
                    Condition::Pairs,
                    format!("step {i} claims the wrong strictness for pair {}", step.pair),
                ))
            }
            _ => {}
        }
    }

    let lhs_of = |i: usize| w.steps[i].sigma.apply(pairs[w.steps[i].pair].0.lhs());
    let rhs_of = |i: usize| w.steps[i].sigma.apply(pairs[w.steps[i].pair].0.rhs());
    let n = w.steps.len();
    for i in 0..n {
        let (connection, target) = if i + 1 < n {
            (&w.steps[i].connection, lhs_of(i + 1))
        } else {
            (&w.closing_reduction, w.theta.apply(&lhs_of(0)))
        };
        replay_connection(&rules, &rhs_of(i), connection, &target)
            .map_err(|e| violation(Condition::Connections, format!("after step {i}: {e}")))?;
    }

    if w.strict_occurrences() == 0 {
        return Err(violation(
            Condition::Strictness,
            "the loop body uses no strict pair and no strict rule",
        ));
    }

    if w.minimality == Minimality::Verified {
        let rhs: Vec<Term> = (0..n).map(rhs_of).collect();
        if !minimality_holds(&rules, &rhs, &w.theta, w.sn_budget, &mut HashMap::new()) {
            return Err(violation(
                Condition::Minimality,
                "termination of the instantiated right-hand sides is not confirmed",
            ));
        }
    }
    Ok(())
}

fn replay_connection(
    rules: &[(Rule, bool)],
    from: &Term,
    steps: &[ConnectionStep],
    target: &Term,
) -> Result<(), String> {
    let mut cur = from.clone();
    for (k, step) in steps.iter().enumerate() {
        let (rule, strict) = rules
            .get(step.rule)
            .ok_or_else(|| format!("rewrite {k} uses rule index {} outside R ∪ Rw", step.rule))?;
        if *strict != step.strict {
            return Err(format!("rewrite {k} claims the wrong strictness for rule {}", step.rule));
        }
        cur = rewrite_at(&cur, &step.position, rule)
            .ok_or_else(|| format!("rule {rule} does not apply at {} in {cur}", step.position))?;
    }
    if &cur != target {
        return Err(format!("reduction ends in {cur}, expected {target}"));
    }
    Ok(())
}

/// Sufficient condition for all `t_iσ_iθ^k` to terminate: there are no
/// rules; or θ only permutes variables and every `t_iσ_i` terminates; or
/// the rules usable from the loop's symbols are terminating.
fn minimality_holds(
    rules: &[(Rule, bool)],
    rhs: &[Term],
    theta: &Substitution,
    budget: usize,
    proven: &mut HashMap<Vec<Rule>, bool>,
) -> bool {
    if rules.is_empty() {
        return true;
    }
    let plain: Vec<Rule> = rules.iter().map(|(r, _)| r.clone()).collect();
    if theta.is_permutation()
        && rhs
            .iter()
            .all(|t| bounded_sn(t, &plain, budget) == SnResult::Terminating)
    {
        return true;
    }
    let mut seeds: Vec<Symbol> = rhs.iter().flat_map(|t| t.symbols()).collect();
    seeds.extend(theta.iter().flat_map(|(_, t)| t.symbols()));
    let usable = usable_rules(&plain, seeds);
    if let Some(&known) = proven.get(&usable) {
        return known;
    }
    let result = rules_terminate(usable.clone());
    proven.insert(usable, result);
    result
}

/// Rules that can fire on terms built from `seeds`, closed under the
/// symbols their right-hand sides introduce.
fn usable_rules(rules: &[Rule], seeds: Vec<Symbol>) -> Vec<Rule> {
    let mut symbols: HashSet<Symbol> = seeds.into_iter().collect();
    let mut used = vec![false; rules.len()];
    loop {
        let mut changed = false;
        for (i, r) in rules.iter().enumerate() {
            if used[i] || !r.lhs().root().is_some_and(|f| symbols.contains(f)) {
                continue;
            }
            used[i] = true;
            changed = true;
            symbols.extend(r.rhs().symbols());
        }
        if !changed {
            break;
        }
    }
    rules.iter().zip(used).filter(|(_, u)| *u).map(|(r, _)| r.clone()).collect()
}

/// Termination by repeatedly removing rules that a strictly monotone
/// linear interpretation orients strictly.
fn rules_terminate(mut rules: Vec<Rule>) -> bool {
    while !rules.is_empty() {
        let Ok(d) = RelativeDpp::make(Trs::default(), Trs::default(), Trs::new(rules.clone()), Trs::default())
        else {
            return false;
        };
        let Some((_, r)) = search_reduction_pair(&d, 2, Monotonicity::StrictlyMonotone) else {
            return false;
        };
        let left: Vec<Rule> = r.successors[0].rules().iter().cloned().collect();
        if left.len() >= rules.len() {
            return false;
        }
        rules = left;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    NotFinite(Box<ChainWitness>),
    Unknown,
}

/// Searches for a loop witness, preferring one whose minimality is verified.
/// Absence is not a finiteness proof.
pub fn find_witness(d: &RelativeDpp, bounds: Bounds) -> Option<ChainWitness> {
    let outcome = search(d, bounds);
    outcome.verified.or(outcome.unverified)
}

/// `Finite` only for trivially finite problems or when the bounded search
/// provably covered every chain; `NotFinite` only with a witness whose
/// minimality is verified.
pub fn bounded_finiteness(d: &RelativeDpp, bounds: Bounds) -> Finiteness {
    if d.is_trivially_finite() {
        return Finiteness::Finite;
    }
    let outcome = search(d, bounds);
    if let Some(w) = outcome.verified {
        return Finiteness::NotFinite(Box::new(w));
    }
    if outcome.unverified.is_none() && outcome.exhaustive {
        return Finiteness::Finite;
    }
    Finiteness::Unknown
}

struct SearchOutcome {
    verified: Option<ChainWitness>,
    unverified: Option<ChainWitness>,
    /// Every chain was covered: pairs are ground and no bound cut anything.
    exhaustive: bool,
}

#[derive(Clone)]
struct Prefix {
    steps: Vec<ChainStep>,
    current: Term,
    strict_seen: bool,
}

struct Reach {
    terms: Vec<(Term, Vec<ConnectionStep>)>,
    truncated: bool,
    /// Total size of `terms`.
    nodes: usize,
}

/// Terms reachable from `from` in breadth-first order, each with a
/// reduction leading to it. Terms deeper than the bound are not entered.
fn reachable(from: &Term, rules: &[(Rule, bool)], plain: &[Rule], bounds: Bounds) -> Reach {
    let mut seen: HashMap<Term, usize> = HashMap::new();
    let mut terms: Vec<(Term, Vec<ConnectionStep>)> = vec![(from.clone(), Vec::new())];
    seen.insert(from.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    while let Some(i) = queue.pop_front() {
        let (term, path) = terms[i].clone();
        for step in successors(&term, plain, Mode::Anywhere) {
            if step.term.depth() > bounds.max_term_depth {
                truncated = true;
                continue;
            }
            if seen.contains_key(&step.term) {
                continue;
            }
            if terms.len() >= bounds.rewrite_budget {
                truncated = true;
                continue;
            }
            let mut p = path.clone();
            p.push(ConnectionStep {
                rule: step.rule,
                position: step.position,
                strict: rules[step.rule].1,
            });
            seen.insert(step.term.clone(), terms.len());
            queue.push_back(terms.len());
            terms.push((step.term, p));
        }
    }
    let nodes = terms.iter().map(|(t, _)| t.size()).sum();
    Reach { terms, truncated, nodes }
}

/// Term nodes examined or queued per start pair. Connections branch up to
/// the rewrite budget at every step and depth alone does not bound term
/// size, so the prefix queue needs its own limit.
fn work_limit(bounds: Bounds) -> usize {
    bounds.rewrite_budget * bounds.max_steps * 256
}

fn search(d: &RelativeDpp, bounds: Bounds) -> SearchOutcome {
    let pairs = d.all_pairs();
    let rules = d.all_rules();
    let plain: Vec<Rule> = rules.iter().map(|(r, _)| r.clone()).collect();
    let mut outcome = SearchOutcome {
        verified: None,
        unverified: None,
        exhaustive: pairs
            .iter()
            .all(|(p, _)| p.lhs().is_ground() && p.rhs().is_ground()),
    };
    let mut reach_cache: HashMap<Term, Reach> = HashMap::new();
    let mut proven: HashMap<Vec<Rule>, bool> = HashMap::new();

    for (start, (first, first_strict)) in pairs.iter().enumerate() {
        if first.lhs().depth() > bounds.max_term_depth || first.rhs().depth() > bounds.max_term_depth {
            outcome.exhaustive = false;
            continue;
        }
        let origin = first.lhs().clone();
        let mut visited: HashSet<(Term, bool)> = HashSet::new();
        visited.insert((first.rhs().clone(), *first_strict));
        let mut queue = VecDeque::from([Prefix {
            steps: vec![ChainStep {
                pair: start,
                strict: *first_strict,
                sigma: Substitution::new(),
                connection: Vec::new(),
            }],
            current: first.rhs().clone(),
            strict_seen: *first_strict,
        }]);

        let mut work = 0;
        while let Some(prefix) = queue.pop_front() {
            let reach = reach_cache
                .entry(prefix.current.clone())
                .or_insert_with(|| reachable(&prefix.current, &rules, &plain, bounds));
            work += reach.nodes;
            if work > work_limit(bounds) {
                outcome.exhaustive = false;
                break;
            }
            if reach.truncated {
                outcome.exhaustive = false;
            }
            for (v, path) in &reach.terms {
                let path_strict = path.iter().any(|c| c.strict);
                if prefix.strict_seen || path_strict {
                    if let Some(theta) = match_term(&origin, v) {
                        let mut w = ChainWitness {
                            steps: prefix.steps.clone(),
                            closing_reduction: path.clone(),
                            theta,
                            minimality: Minimality::Unknown,
                            sn_budget: bounds.rewrite_budget,
                        };
                        let rhs: Vec<Term> = w
                            .steps
                            .iter()
                            .map(|s| s.sigma.apply(pairs[s.pair].0.rhs()))
                            .collect();
                        if minimality_holds(&rules, &rhs, &w.theta, bounds.rewrite_budget, &mut proven) {
                            w.minimality = Minimality::Verified;
                            outcome.verified = Some(w);
                            return outcome;
                        }
                        if outcome.unverified.is_none() {
                            outcome.unverified = Some(w);
                        }
                    }
                }
                for (qi, (q, q_strict)) in pairs.iter().enumerate() {
                    let Some(sigma) = match_term(q.lhs(), v) else { continue };
                    if prefix.steps.len() >= bounds.max_steps {
                        outcome.exhaustive = false;
                        continue;
                    }
                    let next = sigma.apply(q.rhs());
                    if next.depth() > bounds.max_term_depth {
                        outcome.exhaustive = false;
                        continue;
                    }
                    let flag = prefix.strict_seen || path_strict || *q_strict;
                    if !visited.insert((next.clone(), flag)) {
                        continue;
                    }
                    work += next.size();
                    let mut steps = prefix.steps.clone();
                    steps.last_mut().expect("non-empty prefix").connection = path.clone();
                    steps.push(ChainStep {
                        pair: qi,
                        strict: *q_strict,
                        sigma,
                        connection: Vec::new(),
                    });
                    queue.push_back(Prefix {
                        steps,
                        current: next,
                        strict_seen: flag,
                    });
                }
            }
        }
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trs::Trs;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }
    fn big_f(t: Term) -> Term {
        Term::marked_fun("F", vec![t])
    }
    fn rule(l: Term, r: Term) -> Rule {
        Rule::new(l, r).unwrap()
    }
    fn trs(rs: Vec<Rule>) -> Trs {
        Trs::new(rs)
    }

    fn ab_loop() -> RelativeDpp {
        RelativeDpp::make(
            Trs::empty(),
            trs(vec![rule(big_f(c("a")), big_f(c("b")))]),
            trs(vec![rule(c("b"), c("a"))]),
            Trs::empty(),
        )
        .unwrap()
    }

    #[test]
    fn ab_loop_witness() {
        let w = find_witness(&ab_loop(), Bounds::new(4, 5, 50)).expect("loop");
        assert_eq!(w.steps.len(), 1);
        assert_eq!(w.steps[0].pair, 0);
        assert!(!w.steps[0].strict);
        assert!(w.steps[0].sigma.is_empty());
        assert_eq!(
            w.closing_reduction,
            vec![ConnectionStep {
                rule: 0,
                position: vec![1].into(),
                strict: true
            }]
        );
        assert!(w.theta.is_empty());
        assert_eq!(w.minimality, Minimality::Verified);
        assert_eq!(verify_witness(&ab_loop(), &w), Ok(()));
        assert!(matches!(
            bounded_finiteness(&ab_loop(), Bounds::new(4, 5, 50)),
            Finiteness::NotFinite(_)
        ));
    }

    #[test]
    fn corrupted_rule_index_violates_condition_2() {
        let mut w = find_witness(&ab_loop(), Bounds::new(4, 5, 50)).unwrap();
        w.closing_reduction[0].rule = 7;
        let err = verify_witness(&ab_loop(), &w).unwrap_err();
        assert_eq!(err.condition, Condition::Connections);
        assert!(err.to_string().starts_with("condition (2)"));
    }

    #[test]
    fn weak_rule_loop_violates_condition_3() {
        let w = find_witness(&ab_loop(), Bounds::new(4, 5, 50)).unwrap();
        let weak = RelativeDpp::make(
            Trs::empty(),
            trs(vec![rule(big_f(c("a")), big_f(c("b")))]),
            Trs::empty(),
            trs(vec![rule(c("b"), c("a"))]),
        )
        .unwrap();
        // same loop, with the rule's strictness claim adjusted to match
        let mut w2 = w.clone();
        w2.closing_reduction[0].strict = false;
        let err = verify_witness(&weak, &w2).unwrap_err();
        assert_eq!(err.condition, Condition::Strictness);
        // replaying the original claim fails already on the strictness tag
        assert_eq!(verify_witness(&weak, &w).unwrap_err().condition, Condition::Connections);
        assert!(find_witness(&weak, Bounds::new(4, 5, 50)).is_none());
    }

    #[test]
    fn no_pairs_no_witness() {
        let d = RelativeDpp::make(
            Trs::empty(),
            Trs::empty(),
            trs(vec![rule(c("a"), c("a"))]),
            Trs::empty(),
        )
        .unwrap();
        assert!(find_witness(&d, Bounds::default()).is_none());
        assert_eq!(bounded_finiteness(&d, Bounds::default()), Finiteness::Finite);
        assert_eq!(bounded_finiteness(&RelativeDpp::empty(), Bounds::default()), Finiteness::Finite);
    }

    #[test]
    fn shrinking_pair_has_no_loop() {
        let x = Term::var("x");
        let p = trs(vec![rule(
            big_f(Term::fun("s", vec![x.clone()])),
            big_f(x),
        )]);
        let d = RelativeDpp::make(p, Trs::empty(), Trs::empty(), Trs::empty()).unwrap();
        assert!(find_witness(&d, Bounds::new(6, 6, 50)).is_none());
    }

    #[test]
    fn growing_loop_is_pumpable() {
        // F(x) -> F(s(x)) with no rules: θ = {x ↦ s(x)}
        let x = Term::var("x");
        let p = trs(vec![rule(big_f(x.clone()), big_f(Term::fun("s", vec![x])))]);
        let d = RelativeDpp::make(p, Trs::empty(), Trs::empty(), Trs::empty()).unwrap();
        let w = find_witness(&d, Bounds::new(2, 4, 20)).unwrap();
        assert_eq!(w.minimality, Minimality::Verified);
        for k in 1..=3 {
            let pumped = w.pumped(k);
            assert_eq!(verify_witness(&d, &pumped), Ok(()));
            assert!(pumped.strict_occurrences() >= k);
        }
    }

    fn growing_with_rules(rule_rhs: Term) -> RelativeDpp {
        // F(x) -> F(f(x)) next to f(x) -> rule_rhs and the looping b -> f(b)
        let x = Term::var("x");
        let f = |t: Term| Term::fun("f", vec![t]);
        RelativeDpp::make(
            trs(vec![rule(big_f(x.clone()), big_f(f(x.clone())))]),
            Trs::empty(),
            trs(vec![rule(f(x), rule_rhs)]),
            trs(vec![rule(c("b"), f(c("b")))]),
        )
        .unwrap()
    }

    #[test]
    fn growing_loop_minimal_when_usable_rules_terminate() {
        // b never occurs in the loop, so only f(x) -> g(x) is usable
        let d = growing_with_rules(Term::fun("g", vec![Term::var("x")]));
        let Finiteness::NotFinite(w) = bounded_finiteness(&d, Bounds::default()) else {
            panic!("expected a verified loop");
        };
        assert!(!w.theta.is_permutation());
        assert_eq!(verify_witness(&d, &w), Ok(()));
    }

    #[test]
    fn growing_loop_not_minimal_when_usable_rules_loop() {
        // f(x) -> f(x) makes every instance nonterminating
        let d = growing_with_rules(Term::fun("f", vec![Term::var("x")]));
        let w = find_witness(&d, Bounds::default()).expect("loop");
        assert_eq!(w.minimality, Minimality::Unknown);
        assert_eq!(bounded_finiteness(&d, Bounds::default()), Finiteness::Unknown);
    }

    #[test]
    fn wide_terms_stay_within_the_work_limit() {
        // G(x) -> G(h(h(x,a),f(x))) doubles its argument on every step
        let x = Term::var("x");
        let g = |t: Term| Term::marked_fun("G", vec![t]);
        let h = |a: Term, b: Term| Term::fun("h", vec![a, b]);
        let grow = g(h(h(x.clone(), c("a")), Term::fun("f", vec![x.clone()])));
        let d = RelativeDpp::make(
            Trs::empty(),
            trs(vec![rule(g(x.clone()), grow)]),
            trs(vec![rule(Term::fun("f", vec![x.clone()]), x)]),
            Trs::empty(),
        )
        .unwrap();
        let start = std::time::Instant::now();
        let _ = bounded_finiteness(&d, Bounds::default().doubled());
        assert!(start.elapsed() < std::time::Duration::from_secs(20));
    }

    #[test]
    fn ground_loop_free_search_proves_finiteness() {
        // F(a) -> F(b), b -> c: the chain dies out and every pair is ground
        let d = RelativeDpp::make(
            trs(vec![rule(big_f(c("a")), big_f(c("b")))]),
            Trs::empty(),
            Trs::empty(),
            trs(vec![rule(c("b"), c("c"))]),
        )
        .unwrap();
        assert_eq!(bounded_finiteness(&d, Bounds::default()), Finiteness::Finite);
    }

    #[test]
    fn tampered_minimality_claim_is_caught() {
        // G(a) -> G(a) with a -> a: the loop is real but a does not terminate
        let d = RelativeDpp::make(
            trs(vec![rule(
                Term::marked_fun("G", vec![c("a")]),
                Term::marked_fun("G", vec![c("a")]),
            )]),
            Trs::empty(),
            Trs::empty(),
            trs(vec![rule(c("a"), c("a"))]),
        )
        .unwrap();
        let mut w = find_witness(&d, Bounds::default()).unwrap();
        assert_eq!(w.minimality, Minimality::Unknown);
        assert_eq!(verify_witness(&d, &w), Ok(()));
        w.minimality = Minimality::Verified;
        assert_eq!(verify_witness(&d, &w).unwrap_err().condition, Condition::Minimality);
        assert_eq!(bounded_finiteness(&d, Bounds::default()), Finiteness::Unknown);
    }
}
