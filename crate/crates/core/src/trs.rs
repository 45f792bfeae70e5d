//! Rules, rule sets and dependency pairs.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::term::{Signature, Symbol, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("left-hand side of {0} is a variable")]
    VariableLhs(String),
    #[error("right-hand side of {rule} introduces variable {var}")]
    FreshVariable { rule: String, var: String },
    #[error("cannot mark variable {0}")]
    MarkVariable(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A rewrite rule or dependency pair `lhs -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    lhs: Term,
    rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Result<Rule, RuleError> {
        if lhs.is_var() {
            return Err(RuleError::VariableLhs(format!("{lhs} -> {rhs}")));
        }
        let lvars = lhs.var_set();
        if let Some(v) = rhs.variables().into_iter().find(|v| !lvars.contains(v)) {
            return Err(RuleError::FreshVariable {
                rule: format!("{lhs} -> {rhs}"),
                var: v,
            });
        }
        Ok(Rule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn variables(&self) -> Vec<String> {
        self.lhs.variables()
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Term) -> Result<Rule, RuleError> {
        Rule::new(f(&self.lhs), f(&self.rhs))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// An ordered set of rules. Duplicates are dropped, keeping the first
/// occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Trs {
    rules: Vec<Rule>,
}

impl Trs {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Trs {
        let mut out: Vec<Rule> = Vec::new();
        for r in rules {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        Trs { rules: out }
    }

    pub fn empty() -> Trs {
        Trs::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn contains(&self, r: &Rule) -> bool {
        self.rules.contains(r)
    }

    pub fn index_of(&self, r: &Rule) -> Option<usize> {
        self.rules.iter().position(|s| s == r)
    }

    pub fn union(&self, other: &Trs) -> Trs {
        Trs::new(self.rules.iter().chain(other.rules.iter()).cloned())
    }

    pub fn intersection(&self, other: &Trs) -> Trs {
        Trs::new(self.rules.iter().filter(|r| other.contains(r)).cloned())
    }

    pub fn difference(&self, other: &Trs) -> Trs {
        Trs::new(self.rules.iter().filter(|r| !other.contains(r)).cloned())
    }

    pub fn is_subset(&self, other: &Trs) -> bool {
        self.rules.iter().all(|r| other.contains(r))
    }

    pub fn is_disjoint(&self, other: &Trs) -> bool {
        !self.rules.iter().any(|r| other.contains(r))
    }

    /// Same rules irrespective of order.
    pub fn same_set(&self, other: &Trs) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }

    pub fn signature(&self) -> Result<Signature, TermError> {
        let mut sig = Signature::new();
        for r in &self.rules {
            sig.add_term(&r.lhs)?;
            sig.add_term(&r.rhs)?;
        }
        Ok(sig)
    }
}

impl FromIterator<Rule> for Trs {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Trs::new(iter)
    }
}

impl<'a> IntoIterator for &'a Trs {
    type Item = &'a Rule;
    type IntoIter = std::slice::Iter<'a, Rule>;
    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl fmt::Display for Trs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

/// Root symbols of left-hand sides.
pub fn defined_symbols(r: &Trs) -> BTreeSet<Symbol> {
    r.iter().filter_map(|rule| rule.lhs.root().cloned()).collect()
}

pub fn mark_root(t: &Term) -> Result<Term, RuleError> {
    match t {
        Term::Var(x) => Err(RuleError::MarkVariable(x.clone())),
        Term::App(f, args) => Ok(Term::App(f.with_mark(true), args.clone())),
    }
}

/// Which right-hand side subterms give rise to dependency pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DpVariant {
    /// Skip subterms that are proper subterms of the left-hand side.
    #[default]
    Improved,
    /// Every defined-rooted subterm of the right-hand side.
    Textbook,
}

pub fn dependency_pairs(r: &Trs) -> Trs {
    dependency_pairs_with(r, DpVariant::Improved)
}

pub fn dependency_pairs_with(r: &Trs, variant: DpVariant) -> Trs {
    let defined = defined_symbols(r);
    let mut pairs = Vec::new();
    for rule in r {
        let lhs = mark_root(&rule.lhs).expect("rule lhs is not a variable");
        rule.rhs.visit(&mut |u| {
            let Some(root) = u.root() else { return };
            if !defined.contains(root) {
                return;
            }
            if variant == DpVariant::Improved && u.is_proper_subterm_of(&rule.lhs) {
                return;
            }
            let rhs = mark_root(u).expect("defined-rooted subterm");
            pairs.push(Rule::new(lhs.clone(), rhs).expect("subterm of a well-formed rhs"));
        });
    }
    Trs::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }
    fn s(t: Term) -> Term {
        Term::fun("s", vec![t])
    }
    fn minus(a: Term, b: Term) -> Term {
        Term::fun("minus", vec![a, b])
    }
    fn rule(l: Term, r: Term) -> Rule {
        Rule::new(l, r).unwrap()
    }

    pub(crate) fn minus_trs() -> Trs {
        Trs::new([
            rule(minus(x(), Term::constant("0")), x()),
            rule(minus(s(x()), s(y())), minus(x(), y())),
        ])
    }

    #[test]
    fn rule_invariants() {
        assert!(matches!(Rule::new(x(), Term::constant("a")), Err(RuleError::VariableLhs(_))));
        assert!(matches!(
            Rule::new(Term::constant("a"), x()),
            Err(RuleError::FreshVariable { .. })
        ));
    }

    #[test]
    fn duplicates_removed_keeping_first() {
        let r1 = rule(Term::constant("a"), Term::constant("b"));
        let r2 = rule(Term::constant("b"), Term::constant("a"));
        let t = Trs::new([r1.clone(), r2.clone(), r1.clone()]);
        assert_eq!(t.rules(), &[r1, r2]);
    }

    #[test]
    fn defined_symbols_examples() {
        let d = defined_symbols(&minus_trs());
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![Symbol::new("minus", 2)]);
        assert!(defined_symbols(&Trs::empty()).is_empty());
        let ab = Trs::new([
            rule(Term::constant("a"), Term::constant("b")),
            rule(Term::constant("b"), Term::constant("a")),
        ]);
        assert_eq!(defined_symbols(&ab).len(), 2);
    }

    #[test]
    fn mark_root_examples() {
        assert_eq!(
            mark_root(&Term::fun("f", vec![x()])).unwrap(),
            Term::marked_fun("f", vec![x()])
        );
        assert_eq!(mark_root(&Term::constant("a")).unwrap(), Term::marked_fun("a", vec![]));
        let t = minus(s(x()), s(y()));
        let m = mark_root(&t).unwrap();
        assert_eq!(m.args(), t.args());
        assert!(m.root().unwrap().marked);
        assert!(mark_root(&x()).is_err());
    }

    #[test]
    fn dependency_pair_examples() {
        let f = |t| Term::fun("f", vec![t]);
        let r = Trs::new([rule(f(s(x())), f(x()))]);
        let dps = dependency_pairs(&r);
        assert_eq!(
            dps.rules(),
            &[rule(Term::marked_fun("f", vec![s(x())]), Term::marked_fun("f", vec![x()]))]
        );

        let dps = dependency_pairs(&minus_trs());
        assert_eq!(
            dps.rules(),
            &[rule(
                Term::marked_fun("minus", vec![s(x()), s(y())]),
                Term::marked_fun("minus", vec![x(), y()])
            )]
        );

        let ab = Trs::new([rule(Term::constant("a"), Term::constant("b"))]);
        assert!(dependency_pairs(&ab).is_empty());
    }

    #[test]
    fn improved_variant_skips_lhs_subterms() {
        // f(g(x)) -> g(x): g(x) is a proper subterm of the lhs
        let g = |t| Term::fun("g", vec![t]);
        let r = Trs::new([
            rule(Term::fun("f", vec![g(x())]), g(x())),
            rule(g(Term::constant("a")), Term::constant("a")),
        ]);
        assert!(dependency_pairs(&r).is_empty());
        assert_eq!(dependency_pairs_with(&r, DpVariant::Textbook).len(), 1);
    }

    #[test]
    fn set_operations_keep_order() {
        let rs: Vec<Rule> = ["a", "b", "c"]
            .iter()
            .map(|n| rule(Term::constant(*n), Term::constant("z")))
            .collect();
        let all = Trs::new(rs.clone());
        let mid = Trs::new([rs[1].clone()]);
        assert_eq!(all.difference(&mid).rules(), &[rs[0].clone(), rs[2].clone()]);
        assert_eq!(all.intersection(&mid), mid);
        assert!(mid.is_subset(&all));
        assert!(!all.is_disjoint(&mid));
    }
}
