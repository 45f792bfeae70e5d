use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{Justification, ProcessorError, ProcessorResult};
use crate::problem::RelativeDpp;
use crate::subst::{rename_apart, unify};
use crate::term::{Symbol, Term};
use crate::trs::{defined_symbols, Rule, Trs};

/// Replaces variables and subterms rooted by a defined symbol with fresh
/// variables. The root itself is kept when it is not defined.
pub fn cap(t: &Term, defined: &BTreeSet<Symbol>) -> Term {
    let mut counter = 0;
    cap_with(t, defined, &mut counter)
}

fn cap_with(t: &Term, defined: &BTreeSet<Symbol>, counter: &mut usize) -> Term {
    match t {
        Term::App(f, args) if !defined.contains(f) => Term::App(
            f.clone(),
            args.iter().map(|a| cap_with(a, defined, counter)).collect(),
        ),
        _ => {
            *counter += 1;
            Term::Var(format!("_cap{}", *counter - 1))
        }
    }
}

/// Estimated dependency graph over `P ∪ Pw` (strict pairs first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimatedGraph {
    pub nodes: Vec<(Rule, bool)>,
    pub edges: Vec<(usize, usize)>,
}

impl EstimatedGraph {
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Strongly connected components that contain at least one edge, each
    /// sorted, ordered by their smallest node.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let ids: Vec<_> = self.nodes.iter().map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(ids[a], ids[b], ());
        }
        let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .filter(|c| c.len() > 1 || self.has_edge(c[0], c[0]))
            .collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dependency_graph {\n");
        for (i, (r, strict)) in self.nodes.iter().enumerate() {
            let label = r.to_string().replace('"', "\\\"");
            let style = if *strict { "solid" } else { "dashed" };
            s.push_str(&format!("  n{i} [label=\"{label}\", style={style}];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn estimated_graph(d: &RelativeDpp) -> Result<EstimatedGraph, ProcessorError> {
    if !d.has_marked_pairs() {
        return Err(ProcessorError::MarkPlacement(
            "the dependency graph needs pairs with marked roots".into(),
        ));
    }
    let defined = defined_symbols(&d.rules());
    let nodes = d.all_pairs();
    let mut edges = Vec::new();
    for (i, (p, _)) in nodes.iter().enumerate() {
        let capped = cap(p.rhs(), &defined);
        let forbidden = capped.var_set();
        for (j, (q, _)) in nodes.iter().enumerate() {
            let (lhs, _) = rename_apart(q.lhs(), &forbidden);
            if unify(&capped, &lhs).is_some() {
                edges.push((i, j));
            }
        }
    }
    Ok(EstimatedGraph { nodes, edges })
}

/// One successor `(P ∩ C, Pw ∩ C, R, Rw)` per strongly connected component
/// `C`, leaving out those that are trivially finite.
pub fn dependency_graph(d: &RelativeDpp) -> Result<ProcessorResult, ProcessorError> {
    let graph = estimated_graph(d)?;
    let mut successors = Vec::new();
    let mut kept = Vec::new();
    let mut omitted = Vec::new();
    for scc in graph.sccs() {
        let members: Vec<&Rule> = scc.iter().map(|&i| &graph.nodes[i].0).collect();
        let pick = |t: &Trs| Trs::new(t.iter().filter(|r| members.contains(r)).cloned());
        let succ = RelativeDpp::make(
            pick(d.strict_pairs()),
            pick(d.weak_pairs()),
            d.strict_rules().clone(),
            d.weak_rules().clone(),
        )?;
        if succ.is_trivially_finite() {
            omitted.push(scc);
        } else {
            successors.push(succ);
            kept.push(scc);
        }
    }
    if successors.len() == 1 && successors[0] == *d {
        return Err(ProcessorError::NotApplicable(
            "the graph is a single strongly connected component".into(),
        ));
    }
    Ok(ProcessorResult {
        successors,
        justification: Justification::DependencyGraph { sccs: kept, omitted },
    })
}
