//! Strategy-driven proof search and independent replay of proof trees.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::chain::{find_witness, verify_witness, Bounds, ChainWitness, Minimality};
use crate::problem::RelativeDpp;
use crate::processors::{
    apply, dependency_graph, labeled_variants, search_model, search_reduction_pair, semantic_labeling, split,
    trivial, FiniteModel, Justification, Monotonicity, ProcessorError, ProcessorResult,
};
use crate::trs::{Rule, Trs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitHeuristic {
    /// Delete what an exploratory labeled attempt removes completely.
    LabelingWorkflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tactic", rename_all = "snake_case")]
pub enum Tactic {
    Trivial,
    DependencyGraph,
    ReductionPair { bound: u64, mode: Monotonicity },
    SemanticLabeling { carrier_size: usize },
    Split { heuristic: SplitHeuristic },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub tactics: Vec<Tactic>,
    pub max_depth: usize,
    pub time_budget_ms: u64,
    /// Bounds for the loop search at leaves no tactic applies to.
    #[serde(default)]
    pub oracle: Option<Bounds>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid strategy: {0}")]
pub struct StrategyError(String);

impl Strategy {
    pub fn named(name: &str) -> Option<Strategy> {
        match name {
            "default" => Some(Strategy::default()),
            "no-split" => {
                let mut s = Strategy::default();
                s.tactics.retain(|t| !matches!(t, Tactic::Split { .. }));
                Some(s)
            }
            "basic" => Some(Strategy {
                tactics: basic_tactics(),
                ..Strategy::default()
            }),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), StrategyError> {
        if self.tactics.is_empty() {
            return Err(StrategyError("no tactics".into()));
        }
        if self.max_depth == 0 || self.time_budget_ms == 0 {
            return Err(StrategyError("limits must be positive".into()));
        }
        for t in &self.tactics {
            match *t {
                Tactic::ReductionPair { bound: 0, .. } => {
                    return Err(StrategyError("coefficient bound must be at least 1".into()))
                }
                Tactic::SemanticLabeling { carrier_size } if !(2..=3).contains(&carrier_size) => {
                    return Err(StrategyError("carrier size must be 2 or 3".into()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn labeling_carrier(&self) -> usize {
        self.tactics
            .iter()
            .find_map(|t| match t {
                Tactic::SemanticLabeling { carrier_size } => Some(*carrier_size),
                _ => None,
            })
            .unwrap_or(2)
    }

    /// The same limits with only the cheap tactics.
    fn restricted(&self) -> Strategy {
        Strategy {
            tactics: self
                .tactics
                .iter()
                .filter(|t| matches!(t, Tactic::Trivial | Tactic::DependencyGraph | Tactic::ReductionPair { .. }))
                .copied()
                .collect(),
            oracle: None,
            ..self.clone()
        }
    }
}

fn basic_tactics() -> Vec<Tactic> {
    vec![
        Tactic::Trivial,
        Tactic::DependencyGraph,
        Tactic::ReductionPair {
            bound: 2,
            mode: Monotonicity::WeaklyMonotone,
        },
        Tactic::ReductionPair {
            bound: 2,
            mode: Monotonicity::StrictlyMonotone,
        },
    ]
}

impl Default for Strategy {
    fn default() -> Self {
        let mut tactics = basic_tactics();
        tactics.push(Tactic::SemanticLabeling { carrier_size: 2 });
        tactics.push(Tactic::Split {
            heuristic: SplitHeuristic::LabelingWorkflow,
        });
        Strategy {
            tactics,
            max_depth: 32,
            time_budget_ms: 10_000,
            oracle: Some(Bounds::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// A processor application; children match its successors in order.
    Processor {
        justification: Justification,
        children: Vec<ProofNode>,
    },
    NotFinite { witness: ChainWitness },
    Open { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub problem: RelativeDpp,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Finite,
    NotFinite,
    Open,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Finite => 0,
            Status::NotFinite => 1,
            Status::Open => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Finite => "Finite",
            Status::NotFinite => "NotFinite",
            Status::Open => "Open",
        })
    }
}

impl ProofNode {
    fn open(problem: RelativeDpp, reason: impl Into<String>) -> ProofNode {
        ProofNode {
            problem,
            outcome: Outcome::Open { reason: reason.into() },
        }
    }

    fn step(problem: RelativeDpp, justification: Justification, children: Vec<ProofNode>) -> ProofNode {
        ProofNode {
            problem,
            outcome: Outcome::Processor {
                justification,
                children,
            },
        }
    }

    /// Finite iff every child is; not finite if some child is and the
    /// processor carries non-finiteness back.
    pub fn status(&self) -> Status {
        match &self.outcome {
            Outcome::Open { .. } => Status::Open,
            Outcome::NotFinite { .. } => Status::NotFinite,
            Outcome::Processor {
                justification,
                children,
            } => {
                let statuses: Vec<Status> = children.iter().map(ProofNode::status).collect();
                if statuses.iter().all(|s| *s == Status::Finite) {
                    Status::Finite
                } else if children.iter().zip(&statuses).enumerate().any(|(i, (c, s))| {
                    *s == Status::NotFinite && justification.preserves_nontermination(i, &self.problem, &c.problem)
                }) {
                    Status::NotFinite
                } else {
                    Status::Open
                }
            }
        }
    }

    /// Depth-first list of nodes with their paths.
    pub fn nodes(&self) -> Vec<(String, &ProofNode)> {
        let mut out = Vec::new();
        self.collect("root".to_string(), &mut out);
        out
    }

    fn collect<'a>(&'a self, path: String, out: &mut Vec<(String, &'a ProofNode)>) {
        out.push((path.clone(), self));
        if let Outcome::Processor { children, .. } = &self.outcome {
            for (i, c) in children.iter().enumerate() {
                c.collect(format!("{path}.{i}"), out);
            }
        }
    }

    pub fn children(&self) -> &[ProofNode] {
        match &self.outcome {
            Outcome::Processor { children, .. } => children,
            _ => &[],
        }
    }

    pub fn justification(&self) -> Option<&Justification> {
        match &self.outcome {
            Outcome::Processor { justification, .. } => Some(justification),
            _ => None,
        }
    }

    /// Indented human-readable rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(0, &mut s);
        s
    }

    fn render_into(&self, indent: usize, s: &mut String) {
        let pad = "  ".repeat(indent);
        let p = &self.problem;
        s.push_str(&format!(
            "{pad}[{}] problem with {} strict / {} weak pairs, {} strict / {} weak rules\n",
            self.status(),
            p.strict_pairs().len(),
            p.weak_pairs().len(),
            p.strict_rules().len(),
            p.weak_rules().len()
        ));
        match &self.outcome {
            Outcome::Processor {
                justification,
                children,
            } => {
                s.push_str(&format!("{pad}  by {}\n", justification.processor_name()));
                for c in children {
                    c.render_into(indent + 1, s);
                }
            }
            Outcome::NotFinite { witness } => {
                s.push_str(&format!("{pad}  loop through pairs {:?}\n", witness.pair_sequence()));
            }
            Outcome::Open { reason } => s.push_str(&format!("{pad}  open: {reason}\n")),
        }
    }
}

struct Search {
    strategy: Strategy,
    deadline: Instant,
}

#[derive(Clone, Copy)]
struct Branch {
    depth: usize,
    labeled: bool,
    split_allowed: bool,
}

/// Searches for a proof. Budget exhaustion leaves `Open` nodes.
pub fn prove(d: &RelativeDpp, s: &Strategy) -> ProofNode {
    let search = Search {
        strategy: s.clone(),
        deadline: Instant::now() + Duration::from_millis(s.time_budget_ms),
    };
    search.node(
        d,
        Branch {
            depth: 0,
            labeled: false,
            split_allowed: true,
        },
    )
}

/// Splits off what an exploratory labeled attempt removes, proves the
/// first successor by labeling plus cheap processors and continues on the
/// second with the strategy. Classic-shaped problems only.
pub fn split_workflow(d: &RelativeDpp, s: &Strategy) -> ProofNode {
    let search = Search {
        strategy: s.clone(),
        deadline: Instant::now() + Duration::from_millis(s.time_budget_ms),
    };
    let branch = Branch {
        depth: 0,
        labeled: false,
        split_allowed: true,
    };
    search
        .split_workflow(d, branch, true)
        .unwrap_or_else(|| ProofNode::open(d.clone(), "split workflow not applicable"))
}

impl Search {
    fn node(&self, d: &RelativeDpp, b: Branch) -> ProofNode {
        if Instant::now() >= self.deadline {
            return ProofNode::open(d.clone(), "time budget exhausted");
        }
        if b.depth >= self.strategy.max_depth {
            return ProofNode::open(d.clone(), "depth limit reached");
        }
        for tactic in &self.strategy.tactics {
            if let Some(n) = self.try_tactic(d, tactic, b) {
                // a loop of this very problem beats an inconclusive subtree
                if n.status() == Status::Open {
                    if let Some(w) = self.oracle(d) {
                        return w;
                    }
                }
                return n;
            }
            if Instant::now() >= self.deadline {
                return ProofNode::open(d.clone(), "time budget exhausted");
            }
        }
        self.oracle(d)
            .unwrap_or_else(|| ProofNode::open(d.clone(), "no tactic applies"))
    }

    fn oracle(&self, d: &RelativeDpp) -> Option<ProofNode> {
        // only loops of minimal chains refute finiteness
        let witness = find_witness(d, self.strategy.oracle?).filter(|w| w.minimality == Minimality::Verified)?;
        Some(ProofNode {
            problem: d.clone(),
            outcome: Outcome::NotFinite { witness },
        })
    }

    fn expand(&self, d: &RelativeDpp, r: ProcessorResult, b: Branch) -> ProofNode {
        let next = Branch {
            depth: b.depth + 1,
            ..b
        };
        let children = r.successors.iter().map(|s| self.node(s, next)).collect();
        ProofNode::step(d.clone(), r.justification, children)
    }

    fn try_tactic(&self, d: &RelativeDpp, tactic: &Tactic, b: Branch) -> Option<ProofNode> {
        match *tactic {
            Tactic::Trivial => trivial(d).ok().map(|r| self.expand(d, r, b)),
            Tactic::DependencyGraph => dependency_graph(d).ok().map(|r| self.expand(d, r, b)),
            Tactic::ReductionPair { bound, mode } => {
                search_reduction_pair(d, bound, mode).map(|(_, r)| self.expand(d, r, b))
            }
            Tactic::SemanticLabeling { carrier_size } => {
                if b.labeled {
                    return None;
                }
                let m = search_model(d, carrier_size)?;
                let r = semantic_labeling(d, &m).ok()?;
                let n = self.expand(d, r, Branch { labeled: true, ..b });
                // keep the labeling only if something was done afterwards
                let progressed = n
                    .children()
                    .iter()
                    .all(|c| matches!(c.outcome, Outcome::Processor { .. }));
                progressed.then_some(n)
            }
            Tactic::Split { .. } => {
                if !b.split_allowed {
                    return None;
                }
                self.split_workflow(d, b, false)
            }
        }
    }

    /// With `force`, an empty delete set still produces the degenerate split.
    fn split_workflow(&self, d: &RelativeDpp, b: Branch, force: bool) -> Option<ProofNode> {
        if !d.weak_pairs().is_empty() || !d.strict_rules().is_empty() {
            return None;
        }
        let model = search_model(d, self.strategy.labeling_carrier())?;
        let (delete_pairs, delete_rules) = self.delete_sets(d, &model, b)?;
        if !force && delete_pairs.is_empty() && delete_rules.is_empty() {
            return None;
        }
        let r = split(d, &delete_pairs, &delete_rules).ok()?;
        let next = Branch {
            depth: b.depth + 1,
            ..b
        };
        let first = &r.successors[0];
        let first_node = if first.is_trivially_finite() {
            self.node(first, next)
        } else {
            let lr = semantic_labeling(first, &model).ok()?;
            let labeled = &lr.successors[0];
            let restricted = self.restricted();
            let inner = restricted.node(
                labeled,
                Branch {
                    depth: next.depth + 1,
                    labeled: true,
                    split_allowed: false,
                },
            );
            ProofNode::step(first.clone(), lr.justification, vec![inner])
        };
        let progress = !delete_pairs.is_empty() || !delete_rules.is_empty();
        let second_node = self.node(
            &r.successors[1],
            Branch {
                split_allowed: progress,
                ..next
            },
        );
        Some(ProofNode::step(d.clone(), r.justification, vec![first_node, second_node]))
    }

    fn restricted(&self) -> Search {
        Search {
            strategy: self.strategy.restricted(),
            deadline: self.deadline,
        }
    }

    /// Elements of `d` none of whose labeled variants survive the
    /// exploratory attempt on the labeled problem.
    fn delete_sets(&self, d: &RelativeDpp, model: &FiniteModel, b: Branch) -> Option<(Trs, Trs)> {
        let labeled = semantic_labeling(d, model).ok()?.successors.remove(0);
        let explore = self.restricted().node(
            &labeled,
            Branch {
                depth: b.depth + 1,
                labeled: true,
                split_allowed: false,
            },
        );
        let mut survivors: Vec<Rule> = Vec::new();
        for (_, n) in explore.nodes() {
            if n.children().is_empty() && n.status() != Status::Finite {
                survivors.extend(n.problem.elements().map(|(_, r)| r.clone()));
            }
        }
        let gone = |r: &Rule| -> Option<bool> {
            Some(labeled_variants(model, r).ok()?.iter().all(|v| !survivors.contains(v)))
        };
        let mut pairs = Vec::new();
        for r in d.strict_pairs() {
            if gone(r)? {
                pairs.push(r.clone());
            }
        }
        let mut rules = Vec::new();
        for r in d.weak_rules() {
            if gone(r)? {
                rules.push(r.clone());
            }
        }
        Some((Trs::new(pairs), Trs::new(rules)))
    }
}

/// Why a proof tree failed to replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.path, self.message)
    }
}

impl std::error::Error for ReplayError {}

/// Re-executes every justification and checks every witness.
pub fn replay(root: &ProofNode) -> Result<(), ReplayError> {
    replay_at(root, "root")
}

fn replay_at(n: &ProofNode, path: &str) -> Result<(), ReplayError> {
    let fail = |message: String| ReplayError {
        path: path.to_string(),
        message,
    };
    match &n.outcome {
        Outcome::Open { .. } => Ok(()),
        Outcome::NotFinite { witness } => {
            if witness.minimality != Minimality::Verified {
                return Err(fail("witness rejected: minimality is not verified".into()));
            }
            verify_witness(&n.problem, witness).map_err(|v| fail(format!("witness rejected: {v}")))
        }
        Outcome::Processor {
            justification,
            children,
        } => {
            let name = justification.processor_name();
            let r = apply(&n.problem, justification).map_err(|e| match (justification, e) {
                (Justification::Split { .. }, e) => fail(format!("split bookkeeping: {e}")),
                (_, ProcessorError::NotApplicable(m)) => fail(format!("{name}: {m}")),
                (_, e) => fail(format!("{name}: {e}")),
            })?;
            if r.justification != *justification {
                return Err(fail(format!("{name}: recorded parameters differ from recomputed ones")));
            }
            let got: Vec<&RelativeDpp> = children.iter().map(|c| &c.problem).collect();
            let want: Vec<&RelativeDpp> = r.successors.iter().collect();
            if got != want {
                let what = if matches!(justification, Justification::Split { .. }) {
                    "split bookkeeping".to_string()
                } else {
                    format!("{name} successors")
                };
                let detail = if got.len() != want.len() {
                    format!("expected {} children, found {}", want.len(), got.len())
                } else {
                    let i = got.iter().zip(&want).position(|(a, b)| a != b).unwrap_or(0);
                    format!("child {i} is not the computed successor")
                };
                return Err(fail(format!("{what}: {detail}")));
            }
            for (i, c) in children.iter().enumerate() {
                replay_at(c, &format!("{path}.{i}"))?;
            }
            Ok(())
        }
    }
}
