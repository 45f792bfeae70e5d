//! One-step rewriting and bounded termination analysis of single terms.

use std::collections::{HashMap, VecDeque};

use petgraph::graph::DiGraph;

use crate::subst::match_term;
use crate::term::{Position, Term};
use crate::trs::Rule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Steps at the root only.
    Top,
    Anywhere,
}

/// A one-step rewrite: result, redex position and index of the rule used.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub term: Term,
    pub position: Position,
    pub rule: usize,
}

/// All one-step rewrites of `t`, ordered by position (pre-order) and then
/// by rule index.
pub fn successors(t: &Term, rules: &[Rule], mode: Mode) -> Vec<Step> {
    let positions = match mode {
        Mode::Top => vec![Position::root()],
        Mode::Anywhere => t.positions(),
    };
    let mut out = Vec::new();
    for p in positions {
        let sub = t.subterm_at(&p).expect("own position");
        if sub.is_var() {
            continue;
        }
        for (i, rule) in rules.iter().enumerate() {
            if let Some(sigma) = match_term(rule.lhs(), sub) {
                let reduct = sigma.apply(rule.rhs());
                let term = t.replace_at(&p, reduct).expect("own position");
                out.push(Step {
                    term,
                    position: p.clone(),
                    rule: i,
                });
            }
        }
    }
    out
}

/// Applies rule `rule` at `position`, if it matches there.
pub fn rewrite_at(t: &Term, position: &Position, rule: &Rule) -> Option<Term> {
    let sub = t.subterm_at(position).ok()?;
    let sigma = match_term(rule.lhs(), sub)?;
    t.replace_at(position, sigma.apply(rule.rhs())).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnResult {
    Terminating,
    NonterminatingLoop,
    Unknown,
}

/// Breadth-first exploration of the reduction graph of `t`, modulo
/// variable renaming, visiting at most `node_budget` distinct terms.
///
/// A term that reaches a term containing an instance of itself (a matching
/// loop) or a cycle in the closed graph yields `NonterminatingLoop`.
pub fn bounded_sn(t: &Term, rules: &[Rule], node_budget: usize) -> SnResult {
    let mut nodes: Vec<Term> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut graph: DiGraph<(), ()> = DiGraph::new();
    let mut queue = VecDeque::new();

    let start = t.canonical();
    index.insert(start.clone(), 0);
    nodes.push(start);
    parent.push(None);
    graph.add_node(());
    queue.push_back(0);

    while let Some(cur) = queue.pop_front() {
        let term = nodes[cur].clone();
        for step in successors(&term, rules, Mode::Anywhere) {
            if contains_instance_of_ancestor(&step.term, cur, &nodes, &parent) {
                return SnResult::NonterminatingLoop;
            }
            let canon = step.term.canonical();
            let target = match index.get(&canon) {
                Some(&i) => i,
                None => {
                    if nodes.len() >= node_budget {
                        return SnResult::Unknown;
                    }
                    let i = nodes.len();
                    index.insert(canon.clone(), i);
                    nodes.push(canon);
                    parent.push(Some(cur));
                    graph.add_node(());
                    queue.push_back(i);
                    i
                }
            };
            graph.add_edge((cur as u32).into(), (target as u32).into(), ());
        }
    }
    if petgraph::algo::is_cyclic_directed(&graph) {
        SnResult::NonterminatingLoop
    } else {
        SnResult::Terminating
    }
}

fn contains_instance_of_ancestor(
    reduct: &Term,
    from: usize,
    nodes: &[Term],
    parent: &[Option<usize>],
) -> bool {
    let subterms = reduct.subterms();
    let mut cur = Some(from);
    while let Some(i) = cur {
        let ancestor = &nodes[i];
        if subterms
            .iter()
            .any(|(_, s)| !s.is_var() && match_term(ancestor, s).is_some())
        {
            return true;
        }
        cur = parent[i];
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }
    fn rule(l: Term, r: Term) -> Rule {
        Rule::new(l, r).unwrap()
    }
    fn un(f: &str, t: Term) -> Term {
        Term::fun(f, vec![t])
    }

    #[test]
    fn successor_examples() {
        let rules = [rule(c("a"), c("b"))];
        let t = un("f", c("a"));
        assert_eq!(
            successors(&t, &rules, Mode::Anywhere),
            vec![Step {
                term: un("f", c("b")),
                position: vec![1].into(),
                rule: 0
            }]
        );
        assert!(successors(&t, &rules, Mode::Top).is_empty());

        let rules = [rule(c("b"), c("a"))];
        let t = Term::marked_fun("F", vec![c("b")]);
        let steps = successors(&t, &rules, Mode::Anywhere);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].term, Term::marked_fun("F", vec![c("a")]));
        assert_eq!(steps[0].position, Position::from(vec![1]));
    }

    #[test]
    fn bounded_sn_examples() {
        let t = Term::marked_fun("F", vec![c("b")]);
        assert_eq!(bounded_sn(&t, &[rule(c("b"), c("a"))], 100), SnResult::Terminating);
        assert_eq!(bounded_sn(&c("a"), &[rule(c("a"), c("a"))], 10), SnResult::NonterminatingLoop);
        let x = Term::var("x");
        let rules = [rule(un("f", un("s", x.clone())), un("f", x))];
        let t = un("f", un("s", un("s", c("z"))));
        assert_eq!(bounded_sn(&t, &rules, 100), SnResult::Terminating);
    }

    #[test]
    fn growing_loop_is_detected() {
        // f(x) -> g(f(x)) never repeats a term but embeds its start
        let x = Term::var("x");
        let rules = [rule(un("f", x.clone()), un("g", un("f", x)))];
        assert_eq!(bounded_sn(&un("f", c("a")), &rules, 50), SnResult::NonterminatingLoop);
    }

    #[test]
    fn two_cycle_is_detected() {
        let rules = [rule(c("a"), c("b")), rule(c("b"), c("a"))];
        assert_eq!(bounded_sn(&c("a"), &rules, 10), SnResult::NonterminatingLoop);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        // f(z) -> f(s(z)) -> ... grows without embedding an earlier ground term
        let x = Term::var("x");
        let rules = [rule(un("f", x.clone()), un("f", un("s", x.clone())))];
        assert_eq!(bounded_sn(&un("f", c("z")), &rules, 5), SnResult::Unknown);
        let y = Term::var("y");
        let dbl = [
            rule(
                Term::fun("d", vec![un("s", x.clone()), y.clone()]),
                Term::fun("d", vec![x.clone(), un("s", un("s", y.clone()))]),
            ),
        ];
        let mut t = c("z");
        for _ in 0..20 {
            t = un("s", t);
        }
        let t = Term::fun("d", vec![t, c("z")]);
        assert_eq!(bounded_sn(&t, &dbl, 5), SnResult::Unknown);
        assert_eq!(bounded_sn(&t, &dbl, 100), SnResult::Terminating);
    }

    #[test]
    fn rewrite_at_checks_the_redex() {
        let rules = [rule(c("a"), c("b"))];
        let t = un("f", c("a"));
        assert_eq!(rewrite_at(&t, &vec![1].into(), &rules[0]), Some(un("f", c("b"))));
        assert_eq!(rewrite_at(&t, &Position::root(), &rules[0]), None);
        assert_eq!(rewrite_at(&t, &vec![2].into(), &rules[0]), None);
    }
}
