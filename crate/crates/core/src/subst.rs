//! Substitutions, matching, syntactic unification and renaming apart.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::term::Term;

/// A finite map from variable names to terms. Trivial bindings `x ↦ x`
/// are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: impl Into<String>, t: Term) -> Self {
        let mut s = Self::new();
        s.insert(x, t);
        s
    }

    pub fn insert(&mut self, x: impl Into<String>, t: Term) {
        let x = x.into();
        if matches!(&t, Term::Var(y) if *y == x) {
            self.map.remove(&x);
        } else {
            self.map.insert(x, t);
        }
    }

    pub fn get(&self, x: &str) -> Option<&Term> {
        self.map.get(x)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.map.iter()
    }

    /// Simultaneous replacement; unbound variables stay as they are.
    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(x) => self.map.get(x).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// `self.then(other)` applies `self` first, then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (x, t) in &self.map {
            out.insert(x.clone(), other.apply(t));
        }
        for (x, t) in &other.map {
            if !self.map.contains_key(x) {
                out.insert(x.clone(), t.clone());
            }
        }
        out
    }

    pub fn restrict(&self, vars: &BTreeSet<String>) -> Substitution {
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(x, _)| vars.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        }
    }

    /// True when the substitution only permutes variables among its domain.
    pub fn is_permutation(&self) -> bool {
        let mut images = BTreeSet::new();
        for t in self.map.values() {
            match t {
                Term::Var(y) => {
                    if !images.insert(y.clone()) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        images.iter().all(|y| self.map.contains_key(y))
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (x, t) in iter {
            s.insert(x, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {t}")?;
        }
        f.write_str("}")
    }
}

/// One-way matching: finds σ with σ(pattern) = subject.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut bindings: BTreeMap<String, Term> = BTreeMap::new();
    if match_into(pattern, subject, &mut bindings) {
        Some(bindings.into_iter().collect())
    } else {
        None
    }
}

fn match_into(pattern: &Term, subject: &Term, b: &mut BTreeMap<String, Term>) -> bool {
    match (pattern, subject) {
        (Term::Var(x), _) => match b.get(x) {
            Some(bound) => bound == subject,
            None => {
                b.insert(x.clone(), subject.clone());
                true
            }
        },
        (Term::App(f, ps), Term::App(g, ss)) => {
            f == g
                && ps.len() == ss.len()
                && ps.iter().zip(ss).all(|(p, s)| match_into(p, s, b))
        }
        (Term::App(..), Term::Var(_)) => false,
    }
}

/// Most general unifier with occurs check. The result is idempotent.
pub fn unify(s: &Term, t: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    let mut stack = vec![(s.clone(), t.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = sigma.apply(&a);
        let b = sigma.apply(&b);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), u) | (u, Term::Var(x)) => {
                if u.var_set().contains(&x) {
                    return None;
                }
                let bind = Substitution::singleton(x.clone(), u.clone());
                sigma = sigma.then(&bind);
            }
            (Term::App(f, fs), Term::App(g, gs)) => {
                if f != g || fs.len() != gs.len() {
                    return None;
                }
                stack.extend(fs.into_iter().zip(gs));
            }
        }
    }
    Some(sigma)
}

/// Renames the variables of `t` that occur in `forbidden`. Fresh names are
/// the base name followed by the smallest numeric suffix that clashes with
/// neither `forbidden` nor any variable of `t`.
pub fn rename_apart(t: &Term, forbidden: &BTreeSet<String>) -> (Term, Substitution) {
    let vars = t.variables();
    let mut taken: BTreeSet<String> = forbidden.iter().cloned().chain(vars.iter().cloned()).collect();
    let mut renaming = Substitution::new();
    for x in vars {
        if forbidden.contains(&x) {
            let fresh = fresh_name(&x, &taken);
            taken.insert(fresh.clone());
            renaming.insert(x, Term::Var(fresh));
        }
    }
    (renaming.apply(t), renaming)
}

pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded suffixes")
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
    fn z() -> Term {
        Term::var("z")
    }
    fn a() -> Term {
        Term::constant("a")
    }
    fn b() -> Term {
        Term::constant("b")
    }
    fn f(args: Vec<Term>) -> Term {
        Term::fun("f", args)
    }
    fn g(t: Term) -> Term {
        Term::fun("g", vec![t])
    }

    #[test]
    fn apply_examples() {
        let s = Substitution::singleton("x", a());
        assert_eq!(s.apply(&f(vec![x(), x()])), f(vec![a(), a()]));
        let t = f(vec![x(), g(y())]);
        assert_eq!(Substitution::new().apply(&t), t);
        let s: Substitution = [("x".to_string(), g(y())), ("y".to_string(), a())]
            .into_iter()
            .collect();
        // simultaneous: the y introduced for x is not rewritten
        assert_eq!(s.apply(&f(vec![x(), y()])), f(vec![g(y()), a()]));
    }

    #[test]
    fn trivial_bindings_are_dropped() {
        let mut s = Substitution::new();
        s.insert("x", x());
        assert!(s.is_empty());
    }

    #[test]
    fn match_examples() {
        assert_eq!(
            match_term(&Term::fun("f", vec![x()]), &Term::fun("f", vec![a()])),
            Some(Substitution::singleton("x", a()))
        );
        assert_eq!(match_term(&f(vec![x(), x()]), &f(vec![a(), b()])), None);
        let pat = f(vec![x(), y()]);
        let subj = f(vec![g(a()), b()]);
        let s = match_term(&pat, &subj).unwrap();
        assert_eq!(s.get("x"), Some(&g(a())));
        assert_eq!(s.get("y"), Some(&b()));
        assert_eq!(s.apply(&pat), subj);
        // a variable subject does not match a function pattern
        assert_eq!(match_term(&g(x()), &y()), None);
    }

    #[test]
    fn unify_examples() {
        let s = unify(&x(), &g(y())).unwrap();
        assert_eq!(s, Substitution::singleton("x", g(y())));
        assert_eq!(unify(&x(), &g(x())), None);
        let l = f(vec![x(), g(y())]);
        let r = f(vec![g(z()), x()]);
        let s = unify(&l, &r).unwrap();
        assert_eq!(s.apply(&l), s.apply(&r));
        // x ↦ g(z) and x ↦ g(y) force y = z; either orientation is an mgu
        let common = s.apply(&l);
        assert!(common == f(vec![g(z()), g(z())]) || common == f(vec![g(y()), g(y())]));
        // idempotent
        assert_eq!(s.apply(&s.apply(&l)), s.apply(&l));
        assert_eq!(unify(&g(a()), &g(b())), None);
    }

    #[test]
    fn rename_apart_examples() {
        let forbidden: BTreeSet<String> = ["x".to_string()].into();
        let (t, s) = rename_apart(&Term::fun("f", vec![x()]), &forbidden);
        assert_eq!(t, Term::fun("f", vec![Term::var("x0")]));
        assert_eq!(s, Substitution::singleton("x", Term::var("x0")));

        let (t, s) = rename_apart(&a(), &forbidden);
        assert_eq!(t, a());
        assert!(s.is_empty());

        let forbidden: BTreeSet<String> = ["x", "y", "x0"].iter().map(|v| v.to_string()).collect();
        let (t, _) = rename_apart(&f(vec![x(), y()]), &forbidden);
        assert!(t.var_set().is_disjoint(&forbidden));
        assert_eq!(t, f(vec![Term::var("x1"), Term::var("y0")]));

        // a fresh name must not capture another variable of the term
        let (t, _) = rename_apart(&f(vec![x(), Term::var("x0")]), &["x".to_string()].into());
        assert_eq!(t.var_set().len(), 2);
    }

    #[test]
    fn permutation_check() {
        let s: Substitution = [("x".to_string(), y()), ("y".to_string(), x())].into_iter().collect();
        assert!(s.is_permutation());
        assert!(Substitution::new().is_permutation());
        assert!(!Substitution::singleton("x", y()).is_permutation());
        assert!(!Substitution::singleton("x", a()).is_permutation());
    }
}
