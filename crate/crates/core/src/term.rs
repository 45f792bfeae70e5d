//! First-order terms, positions and signatures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("position {position} is not valid in {term}")]
    InvalidPosition { position: Position, term: String },
    #[error("symbol {symbol} has arity {expected} but was given {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol name must not be empty")]
    EmptyName,
}

/// A function symbol. Marked (tuple) symbols share the base name of the
/// symbol they were derived from and render with a `#` suffix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
    pub marked: bool,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
            marked: false,
        }
    }

    pub fn marked(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
            marked: true,
        }
    }

    pub fn with_mark(&self, marked: bool) -> Self {
        Symbol {
            marked,
            ..self.clone()
        }
    }

    /// Parses a rendered name such as `F#` back into base name and mark.
    pub fn from_rendered(rendered: &str, arity: usize) -> Self {
        match rendered.strip_suffix('#') {
            Some(base) if !base.is_empty() => Symbol::marked(base, arity),
            _ => Symbol::new(rendered, arity),
        }
    }

    /// Name plus `#` for marked symbols; the form used in files.
    pub fn rendered(&self) -> String {
        if self.marked {
            format!("{}#", self.name)
        } else {
            self.name.clone()
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.marked {
            write!(f, "{}#", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// 1-based child indices from the root; the empty position is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, index: usize) -> Self {
        let mut v = self.0.clone();
        v.push(index);
        Position(v)
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// An immutable first-order term. The only equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// Application whose symbol arity is taken from the argument count.
    pub fn fun(name: impl Into<String>, args: Vec<Term>) -> Term {
        let arity = args.len();
        Term::App(Symbol::new(name, arity), args)
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::fun(name, Vec::new())
    }

    pub fn marked_fun(name: impl Into<String>, args: Vec<Term>) -> Term {
        let arity = args.len();
        Term::App(Symbol::marked(name, arity), args)
    }

    /// Checked constructor: the argument count must equal the arity.
    pub fn app(symbol: Symbol, args: Vec<Term>) -> Result<Term, TermError> {
        if symbol.name.is_empty() {
            return Err(TermError::EmptyName);
        }
        if symbol.arity != args.len() {
            return Err(TermError::ArityMismatch {
                symbol: symbol.rendered(),
                expected: symbol.arity,
                found: args.len(),
            });
        }
        Ok(Term::App(symbol, args))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn root(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Distinct variables in left-to-right first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_vars(&mut seen, &mut out);
        out
    }

    fn collect_vars(&self, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
        match self {
            Term::Var(x) => {
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                }
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(seen, out);
                }
            }
        }
    }

    pub fn var_set(&self) -> BTreeSet<String> {
        self.variables().into_iter().collect()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let Term::App(f, _) = t {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        for a in self.args() {
            a.visit(f);
        }
    }

    /// All positions in pre-order (root first, children left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        self.collect_positions(&mut Vec::new(), &mut out);
        out
    }

    fn collect_positions(&self, prefix: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(prefix.clone()));
        for (i, a) in self.args().iter().enumerate() {
            prefix.push(i + 1);
            a.collect_positions(prefix, out);
            prefix.pop();
        }
    }

    /// Subterms with their positions, pre-order.
    pub fn subterms(&self) -> Vec<(Position, &Term)> {
        self.positions()
            .into_iter()
            .map(|p| {
                let t = self.subterm_at(&p).expect("own position");
                (p, t)
            })
            .collect()
    }

    pub fn subterm_at(&self, p: &Position) -> Result<&Term, TermError> {
        let mut cur = self;
        for &i in &p.0 {
            match cur {
                Term::App(_, args) if i >= 1 && i <= args.len() => cur = &args[i - 1],
                _ => {
                    return Err(TermError::InvalidPosition {
                        position: p.clone(),
                        term: self.to_string(),
                    })
                }
            }
        }
        Ok(cur)
    }

    pub fn replace_at(&self, p: &Position, s: Term) -> Result<Term, TermError> {
        fn go(t: &Term, path: &[usize], s: Term) -> Option<Term> {
            match path.split_first() {
                None => Some(s),
                Some((&i, rest)) => match t {
                    Term::App(f, args) if i >= 1 && i <= args.len() => {
                        let mut args = args.clone();
                        args[i - 1] = go(&args[i - 1], rest, s)?;
                        Some(Term::App(f.clone(), args))
                    }
                    _ => None,
                },
            }
        }
        go(self, &p.0, s).ok_or_else(|| TermError::InvalidPosition {
            position: p.clone(),
            term: self.to_string(),
        })
    }

    pub fn is_proper_subterm_of(&self, other: &Term) -> bool {
        other.args().iter().any(|a| a == self || self.is_proper_subterm_of(a))
    }

    /// Renames variables to `_0`, `_1`, ... by first occurrence, so that
    /// variants compare equal.
    pub fn canonical(&self) -> Term {
        let map: BTreeMap<String, String> = self
            .variables()
            .into_iter()
            .enumerate()
            .map(|(i, x)| (x, format!("_{i}")))
            .collect();
        self.map_vars(&|x| Term::Var(map[x].clone()))
    }

    pub fn map_vars(&self, f: &impl Fn(&str) -> Term) -> Term {
        match self {
            Term::Var(x) => f(x),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn map_symbols(&self, f: &impl Fn(&Symbol) -> Symbol) -> Term {
        match self {
            Term::Var(x) => Term::Var(x.clone()),
            Term::App(g, args) => Term::App(f(g), args.iter().map(|a| a.map_symbols(f)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::App(g, args) => {
                write!(f, "{g}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Symbols in first-occurrence order, keyed by rendered name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a symbol; fails when the same rendered name was seen with a
    /// different arity.
    pub fn add(&mut self, s: &Symbol) -> Result<(), TermError> {
        if s.name.is_empty() {
            return Err(TermError::EmptyName);
        }
        match self
            .symbols
            .iter()
            .find(|t| t.name == s.name && t.marked == s.marked)
        {
            Some(t) if t.arity != s.arity => Err(TermError::ArityMismatch {
                symbol: s.rendered(),
                expected: t.arity,
                found: s.arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.symbols.push(s.clone());
                Ok(())
            }
        }
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), TermError> {
        let mut result = Ok(());
        t.visit(&mut |u| {
            if let (Ok(()), Term::App(f, _)) = (&result, u) {
                result = self.add(f);
            }
        });
        result
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.symbols.contains(s)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
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
    fn g(t: Term) -> Term {
        Term::fun("g", vec![t])
    }
    fn f2(a: Term, b: Term) -> Term {
        Term::fun("f", vec![a, b])
    }

    #[test]
    fn subterm_at_examples() {
        let t = f2(g(x()), y());
        assert_eq!(t.subterm_at(&vec![1].into()).unwrap(), &g(x()));
        assert_eq!(t.subterm_at(&Position::root()).unwrap(), &t);
        assert_eq!(t.subterm_at(&vec![1, 1].into()).unwrap(), &x());
        assert!(t.subterm_at(&vec![3].into()).is_err());
        assert!(t.subterm_at(&vec![2, 1].into()).is_err());
        assert!(t.subterm_at(&vec![0].into()).is_err());
    }

    #[test]
    fn replace_at_examples() {
        let fa = Term::fun("f", vec![Term::constant("a")]);
        assert_eq!(
            fa.replace_at(&vec![1].into(), Term::constant("b")).unwrap(),
            Term::fun("f", vec![Term::constant("b")])
        );
        assert_eq!(fa.replace_at(&Position::root(), x()).unwrap(), x());
        let t = f2(g(x()), y());
        assert_eq!(
            t.replace_at(&vec![1, 1].into(), Term::constant("a")).unwrap(),
            f2(g(Term::constant("a")), y())
        );
        assert!(t.replace_at(&vec![2, 2].into(), x()).is_err());
    }

    #[test]
    fn positions_are_preorder() {
        let t = f2(g(x()), y());
        let ps: Vec<String> = t.positions().iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["[]", "[1]", "[1,1]", "[2]"]);
    }

    #[test]
    fn checked_constructor_rejects_wrong_arity() {
        assert!(Term::app(Symbol::new("f", 2), vec![x()]).is_err());
        assert!(Term::app(Symbol::new("", 0), vec![]).is_err());
        assert!(Term::app(Symbol::new("f", 1), vec![x()]).is_ok());
    }

    #[test]
    fn depth_and_display() {
        let t = Term::marked_fun("F", vec![g(g(x())), Term::constant("a")]);
        assert_eq!(t.depth(), 3);
        assert_eq!(t.to_string(), "F#(g(g(x)),a)");
        assert_eq!(x().depth(), 0);
    }

    #[test]
    fn canonical_identifies_variants() {
        let a = f2(x(), g(y()));
        let b = f2(Term::var("u"), g(Term::var("v")));
        assert_eq!(a.canonical(), b.canonical());
        assert_ne!(a.canonical(), f2(x(), g(x())).canonical());
    }

    #[test]
    fn signature_rejects_arity_clash() {
        let mut sig = Signature::new();
        sig.add_term(&f2(x(), y())).unwrap();
        assert!(sig.add_term(&Term::fun("f", vec![x()])).is_err());
        // marked variant is a distinct symbol
        sig.add_term(&Term::marked_fun("f", vec![x()])).unwrap();
        assert_eq!(sig.len(), 2);
    }

    #[test]
    fn rendered_round_trip() {
        let s = Symbol::marked("minus", 2);
        assert_eq!(Symbol::from_rendered(&s.rendered(), 2), s);
        assert_eq!(Symbol::from_rendered("#", 0), Symbol::new("#", 0));
    }
}
