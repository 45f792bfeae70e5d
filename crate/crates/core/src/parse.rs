//! Text formats: TPDB-style `.trs` files and `.rdp` files holding the four
//! components of a relative problem.
//!
//! ```text
//! (VAR x y)
//! (RULES
//!   minus(x, 0) -> x
//!   f(x) ->= g(x)
//! )
//! ```
//!
//! `.rdp` files use the sections `STRICT-PAIRS`, `WEAK-PAIRS`,
//! `STRICT-RULES` and `WEAK-RULES` instead of `RULES`; a trailing `#`
//! marks a symbol.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::problem::{Component, RelativeDpp};
use crate::term::{Symbol, Term};
use crate::trs::{Rule, Trs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Loc {
    line: usize,
    col: usize,
}

impl Loc {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    WeakArrow,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("'('"),
            Tok::Close => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::WeakArrow => f.write_str("'->='"),
            Tok::Ident(s) => write!(f, "'{s}'"),
        }
    }
}

fn tokenize(text: &str) -> Vec<(Tok, Loc)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    let starts_arrow = |i: usize| chars.get(i) == Some(&'-') && chars.get(i + 1) == Some(&'>');
    while i < chars.len() {
        let loc = Loc { line, col };
        let c = chars[i];
        let width;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        } else if c.is_whitespace() {
            width = 1;
        } else if c == '(' || c == ')' || c == ',' {
            out.push((
                match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    _ => Tok::Comma,
                },
                loc,
            ));
            width = 1;
        } else if starts_arrow(i) {
            if chars.get(i + 2) == Some(&'=') {
                out.push((Tok::WeakArrow, loc));
                width = 3;
            } else {
                out.push((Tok::Arrow, loc));
                width = 2;
            }
        } else {
            let start = i;
            let mut j = i;
            while j < chars.len()
                && !chars[j].is_whitespace()
                && !matches!(chars[j], '(' | ')' | ',')
                && !starts_arrow(j)
            {
                j += 1;
            }
            out.push((Tok::Ident(chars[start..j].iter().collect()), loc));
            width = j - start;
        }
        i += width;
        col += width;
    }
    out
}

struct Parser {
    toks: Vec<(Tok, Loc)>,
    pos: usize,
    end: Loc,
    vars: BTreeSet<String>,
    arities: BTreeMap<String, usize>,
}

/// A parsed rule with its arrow and location.
struct Parsed {
    rule: Rule,
    weak: bool,
    loc: Loc,
}

impl Parser {
    fn new(text: &str) -> Parser {
        let lines: Vec<&str> = text.split('\n').collect();
        let end = Loc {
            line: lines.len(),
            col: lines.last().map_or(0, |l| l.chars().count()) + 1,
        };
        Parser {
            toks: tokenize(text),
            pos: 0,
            end,
            vars: BTreeSet::new(),
            arities: BTreeMap::new(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn loc(&self) -> Loc {
        self.toks.get(self.pos).map_or(self.end, |(_, l)| *l)
    }

    fn next(&mut self) -> Result<(Tok, Loc), ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.end.error("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<Loc, ParseError> {
        let (t, loc) = self.next()?;
        if t == want {
            Ok(loc)
        } else {
            Err(loc.error(format!("expected {want}, found {t}")))
        }
    }

    /// `(NAME` of the next section, or `None` at end of input.
    fn section(&mut self) -> Result<Option<(String, Loc)>, ParseError> {
        if self.peek().is_none() {
            return Ok(None);
        }
        self.expect(Tok::Open)?;
        match self.next()? {
            (Tok::Ident(name), loc) => Ok(Some((name, loc))),
            (t, loc) => Err(loc.error(format!("expected a section name, found {t}"))),
        }
    }

    fn skip_balanced(&mut self) -> Result<(), ParseError> {
        let mut depth = 1;
        while depth > 0 {
            match self.next()?.0 {
                Tok::Open => depth += 1,
                Tok::Close => depth -= 1,
                _ => {}
            }
        }
        Ok(())
    }

    fn var_section(&mut self) -> Result<(), ParseError> {
        loop {
            match self.next()? {
                (Tok::Close, _) => return Ok(()),
                (Tok::Ident(x), loc) => {
                    if x.ends_with('#') {
                        return Err(loc.error(format!("variable {x} cannot be marked")));
                    }
                    if self.arities.contains_key(&x) {
                        return Err(loc.error(format!("{x} is already used as a function symbol")));
                    }
                    self.vars.insert(x);
                }
                (t, loc) => Err(loc.error(format!("expected a variable, found {t}")))?,
            }
        }
    }

    fn rules_section(&mut self, allow_weak: bool) -> Result<Vec<Parsed>, ParseError> {
        let mut out = Vec::new();
        while self.peek() != Some(&Tok::Close) {
            let loc = self.loc();
            let lhs = self.term()?;
            let weak = match self.next()? {
                (Tok::Arrow, _) => false,
                (Tok::WeakArrow, l) if !allow_weak => {
                    return Err(l.error("'->=' is not allowed here; use the weak sections"))
                }
                (Tok::WeakArrow, _) => true,
                (t, l) => return Err(l.error(format!("expected '->' or '->=', found {t}"))),
            };
            let rhs = self.term()?;
            let rule = Rule::new(lhs, rhs).map_err(|e| loc.error(e.to_string()))?;
            out.push(Parsed { rule, weak, loc });
        }
        self.expect(Tok::Close)?;
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, loc) = match self.next()? {
            (Tok::Ident(n), l) => (n, l),
            (t, l) => return Err(l.error(format!("expected a term, found {t}"))),
        };
        let mut args = Vec::new();
        let applied = self.peek() == Some(&Tok::Open);
        if applied {
            self.pos += 1;
            if self.peek() == Some(&Tok::Close) {
                self.pos += 1;
            } else {
                loop {
                    args.push(self.term()?);
                    match self.next()? {
                        (Tok::Comma, _) => continue,
                        (Tok::Close, _) => break,
                        (t, l) => return Err(l.error(format!("expected ',' or ')', found {t}"))),
                    }
                }
            }
        }
        if self.vars.contains(&name) {
            if applied {
                return Err(loc.error(format!("variable {name} applied to arguments")));
            }
            return Ok(Term::Var(name));
        }
        match self.arities.get(&name) {
            Some(&n) if n != args.len() => {
                return Err(loc.error(format!(
                    "{name} used with {} arguments, earlier with {n}",
                    args.len()
                )))
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.clone(), args.len());
            }
        }
        Ok(Term::App(Symbol::from_rendered(&name, args.len()), args))
    }
}

/// Contents of a `.trs` file: `->` rules and `->=` rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrsDocument {
    pub strict: Trs,
    pub weak: Trs,
}

pub fn parse_trs(text: &str) -> Result<TrsDocument, ParseError> {
    let mut p = Parser::new(text);
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    while let Some((name, loc)) = p.section()? {
        match name.as_str() {
            "VAR" => p.var_section()?,
            "RULES" => {
                for r in p.rules_section(true)? {
                    if r.weak {
                        weak.push(r.rule);
                    } else {
                        strict.push(r.rule);
                    }
                }
            }
            "COMMENT" => p.skip_balanced()?,
            _ => return Err(loc.error(format!("unknown section {name}"))),
        }
    }
    Ok(TrsDocument {
        strict: Trs::new(strict),
        weak: Trs::new(weak),
    })
}

fn component_of(name: &str) -> Option<Component> {
    match name {
        "STRICT-PAIRS" => Some(Component::StrictPairs),
        "WEAK-PAIRS" => Some(Component::WeakPairs),
        "STRICT-RULES" => Some(Component::StrictRules),
        "WEAK-RULES" => Some(Component::WeakRules),
        _ => None,
    }
}

pub fn parse_rdp(text: &str) -> Result<RelativeDpp, ParseError> {
    let mut p = Parser::new(text);
    let mut parts: BTreeMap<Component, Vec<Rule>> = BTreeMap::new();
    let mut seen: BTreeMap<Rule, Component> = BTreeMap::new();
    while let Some((name, loc)) = p.section()? {
        if name == "VAR" {
            p.var_section()?;
        } else if name == "COMMENT" {
            p.skip_balanced()?;
        } else if let Some(c) = component_of(&name) {
            for r in p.rules_section(false)? {
                if let Some(&other) = seen.get(&r.rule) {
                    if other != c {
                        return Err(r.loc.error(format!("{} occurs in both {other} and {c}", r.rule)));
                    }
                }
                seen.insert(r.rule.clone(), c);
                parts.entry(c).or_default().push(r.rule);
            }
        } else {
            return Err(loc.error(format!("unknown section {name}")));
        }
    }
    let mut take = |c| Trs::new(parts.remove(&c).unwrap_or_default());
    RelativeDpp::make(
        take(Component::StrictPairs),
        take(Component::WeakPairs),
        take(Component::StrictRules),
        take(Component::WeakRules),
    )
    .map_err(|e| Loc { line: 1, col: 1 }.error(e.to_string()))
}

fn var_line<'a>(rules: impl Iterator<Item = &'a Rule>) -> String {
    let mut vars: Vec<String> = Vec::new();
    for r in rules {
        for x in r.variables() {
            if !vars.contains(&x) {
                vars.push(x);
            }
        }
    }
    if vars.is_empty() {
        "(VAR)\n".to_string()
    } else {
        format!("(VAR {})\n", vars.join(" "))
    }
}

pub fn print_trs(doc: &TrsDocument) -> String {
    let mut s = var_line(doc.strict.iter().chain(doc.weak.iter()));
    s.push_str("(RULES\n");
    for r in &doc.strict {
        s.push_str(&format!("  {} -> {}\n", r.lhs(), r.rhs()));
    }
    for r in &doc.weak {
        s.push_str(&format!("  {} ->= {}\n", r.lhs(), r.rhs()));
    }
    s.push_str(")\n");
    s
}

pub fn print_rdp(d: &RelativeDpp) -> String {
    let mut s = var_line(d.elements().map(|(_, r)| r));
    for c in Component::ALL {
        let name = match c {
            Component::StrictPairs => "STRICT-PAIRS",
            Component::WeakPairs => "WEAK-PAIRS",
            Component::StrictRules => "STRICT-RULES",
            Component::WeakRules => "WEAK-RULES",
        };
        s.push_str(&format!("({name}\n"));
        for r in d.component(c) {
            s.push_str(&format!("  {r}\n"));
        }
        s.push_str(")\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trs::mark_root;
    use proptest::prelude::*;

    #[test]
    fn single_strict_rule() {
        let doc = parse_trs("(VAR x)(RULES f(s(x)) -> f(x))").unwrap();
        assert_eq!(doc.strict.len(), 1);
        assert!(doc.weak.is_empty());
        assert_eq!(doc.strict.rules()[0].to_string(), "f(s(x)) -> f(x)");
    }

    #[test]
    fn weak_arrow() {
        let doc = parse_trs("(VAR )(RULES a -> b  b ->= a)").unwrap();
        assert_eq!(doc.strict.rules()[0].to_string(), "a -> b");
        assert_eq!(doc.weak.rules()[0].to_string(), "b -> a");
    }

    #[test]
    fn arrows_need_no_spaces() {
        let doc = parse_trs("(RULES a->b b->=c)").unwrap();
        assert_eq!(doc.strict.len(), 1);
        assert_eq!(doc.weak.len(), 1);
    }

    #[test]
    fn variable_lhs_is_rejected() {
        let e = parse_trs("(VAR x)(RULES x -> a)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 15));
        assert!(e.message.contains("variable"), "{e}");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_trs("(VAR x)\n(RULES\n  f(x) -> f(x, x)\n)").unwrap_err();
        assert_eq!((e.line, e.col), (3, 11));
        let e = parse_trs("(RULES f(a -> b)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 12));
        let e = parse_trs("(RULES a -> b").unwrap_err();
        assert!(e.message.contains("end of input"));
    }

    #[test]
    fn undeclared_identifiers_are_constants() {
        let doc = parse_trs("(RULES f(x) -> x)").unwrap();
        assert!(doc.strict.rules()[0].rhs().is_ground());
        let doc = parse_trs("(RULES f(y, c()) -> c)").unwrap();
        assert!(doc.strict.rules()[0].lhs().is_ground());
    }

    #[test]
    fn comments_are_skipped() {
        let doc = parse_trs("(COMMENT nested (parens) -> ok)(VAR x)(RULES f(x) -> x)").unwrap();
        assert_eq!(doc.strict.len(), 1);
    }

    #[test]
    fn ab_loop_document() {
        let d = parse_rdp("(VAR )(WEAK-PAIRS F#(a) -> F#(b))(STRICT-RULES b -> a)").unwrap();
        assert!(d.strict_pairs().is_empty());
        assert_eq!(d.weak_pairs().rules()[0].to_string(), "F#(a) -> F#(b)");
        assert!(d.weak_pairs().rules()[0].lhs().root().unwrap().marked);
        assert_eq!(d.strict_rules().rules()[0].to_string(), "b -> a");
        assert!(d.weak_rules().is_empty());
    }

    #[test]
    fn empty_document() {
        assert_eq!(parse_rdp("").unwrap(), RelativeDpp::empty());
        assert_eq!(parse_rdp("  \n ").unwrap(), RelativeDpp::empty());
    }

    #[test]
    fn overlap_is_an_error() {
        let e = parse_rdp("(VAR x)(STRICT-PAIRS F#(x) -> F#(x))\n(WEAK-PAIRS F#(x) -> F#(x))").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("occurs in both"), "{e}");
    }

    #[test]
    fn weak_arrow_outside_trs_files() {
        assert!(parse_rdp("(STRICT-RULES a ->= b)").is_err());
    }

    fn arb_term(vars: Vec<&'static str>) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            prop::sample::select(vars).prop_map(Term::var),
            prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::fun("f", vec![t])),
                (inner.clone(), inner).prop_map(|(s, t)| Term::fun("g", vec![s, t])),
            ]
        })
    }

    fn arb_rule() -> impl Strategy<Value = Option<Rule>> {
        (arb_term(vec!["x", "y"]), arb_term(vec!["x", "y"])).prop_map(|(l, r)| Rule::new(l, r).ok())
    }

    proptest! {
        #[test]
        fn trs_print_parse_round_trip(
            strict in prop::collection::vec(arb_rule(), 0..4),
            weak in prop::collection::vec(arb_rule(), 0..4),
        ) {
            let doc = TrsDocument {
                strict: Trs::new(strict.into_iter().flatten()),
                weak: Trs::new(weak.into_iter().flatten()),
            };
            let back = parse_trs(&print_trs(&doc)).unwrap();
            prop_assert_eq!(back, doc);
        }

        #[test]
        fn rdp_print_parse_round_trip(rules in prop::collection::vec(arb_rule(), 0..6)) {
            let rules: Vec<Rule> = rules.into_iter().flatten().collect();
            let pairs: Vec<Rule> = rules
                .iter()
                .filter_map(|r| {
                    let (l, rhs) = (mark_root(r.lhs()).ok()?, mark_root(r.rhs()).ok()?);
                    Rule::new(l, rhs).ok()
                })
                .collect();
            let half = |v: &[Rule], odd: bool| {
                Trs::new(v.iter().enumerate().filter(|(i, _)| (i % 2 == 1) == odd).map(|(_, r)| r.clone()))
            };
            let p = half(&pairs, false);
            let pw = half(&pairs, true).difference(&p);
            let r = half(&rules, false);
            let rw = half(&rules, true).difference(&r);
            if let Ok(d) = RelativeDpp::make(p, pw, r, rw) {
                let back = parse_rdp(&print_rdp(&d)).unwrap();
                prop_assert_eq!(back, d);
            }
        }
    }
}
