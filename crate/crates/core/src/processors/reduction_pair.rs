use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Justification, ProcessorError, ProcessorResult};
use crate::problem::{Component, RelativeDpp};
use crate::term::{Symbol, Term};
use crate::trs::{Rule, Trs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    /// Coefficients may be zero; only pairs can be removed.
    WeaklyMonotone,
    /// Every coefficient is at least one; pairs and rules can be removed.
    StrictlyMonotone,
}

/// `[f](x_1..x_n) = constant + Σ coefficients[i] * x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolInterpretation {
    pub symbol: String,
    pub constant: u64,
    pub coefficients: Vec<u64>,
}

/// A linear polynomial interpretation over the naturals. Symbols without
/// an entry are interpreted as the sum of their arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInterpretation {
    pub mode: Monotonicity,
    pub symbols: Vec<SymbolInterpretation>,
}

/// A linear polynomial with natural coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearPoly {
    pub constant: u128,
    pub coefficients: BTreeMap<String, u128>,
}

impl LinearPoly {
    fn coefficient(&self, x: &str) -> u128 {
        self.coefficients.get(x).copied().unwrap_or(0)
    }

    /// Coefficient-wise `≥`; sound for every assignment of naturals.
    pub fn geq(&self, other: &LinearPoly) -> bool {
        self.constant >= other.constant
            && other
                .coefficients
                .iter()
                .all(|(x, c)| self.coefficient(x) >= *c)
    }

    /// Coefficient-wise `≥` with a strictly larger constant.
    pub fn gt(&self, other: &LinearPoly) -> bool {
        self.geq(other) && self.constant > other.constant
    }
}

impl fmt::Display for LinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .coefficients
            .iter()
            .filter(|(_, c)| **c > 0)
            .map(|(x, c)| if *c == 1 { x.clone() } else { format!("{c}*{x}") })
            .collect();
        if self.constant > 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        f.write_str(&parts.join(" + "))
    }
}

impl LinearInterpretation {
    pub fn new(mode: Monotonicity) -> Self {
        LinearInterpretation {
            mode,
            symbols: Vec::new(),
        }
    }

    pub fn with(mut self, symbol: &str, constant: u64, coefficients: &[u64]) -> Self {
        self.symbols.retain(|s| s.symbol != symbol);
        self.symbols.push(SymbolInterpretation {
            symbol: symbol.to_string(),
            constant,
            coefficients: coefficients.to_vec(),
        });
        self
    }

    fn lookup(&self, f: &Symbol) -> Option<&SymbolInterpretation> {
        let name = f.rendered();
        self.symbols.iter().find(|s| s.symbol == name)
    }

    /// `None` on arithmetic overflow or an entry of the wrong arity.
    pub fn eval(&self, t: &Term) -> Option<LinearPoly> {
        match t {
            Term::Var(x) => Some(LinearPoly {
                constant: 0,
                coefficients: [(x.clone(), 1)].into(),
            }),
            Term::App(f, args) => {
                let entry = self.lookup(f);
                if let Some(e) = entry {
                    if e.coefficients.len() != args.len() {
                        return None;
                    }
                }
                let mut out = LinearPoly {
                    constant: entry.map_or(0, |e| e.constant as u128),
                    coefficients: BTreeMap::new(),
                };
                for (i, a) in args.iter().enumerate() {
                    let k = entry.map_or(1, |e| e.coefficients[i] as u128);
                    if k == 0 {
                        continue;
                    }
                    let p = self.eval(a)?;
                    out.constant = out.constant.checked_add(k.checked_mul(p.constant)?)?;
                    for (x, c) in p.coefficients {
                        let slot = out.coefficients.entry(x).or_insert(0);
                        *slot = slot.checked_add(k.checked_mul(c)?)?;
                    }
                }
                out.coefficients.retain(|_, c| *c > 0);
                Some(out)
            }
        }
    }

    fn check_mode(&self) -> Result<(), String> {
        if self.mode == Monotonicity::StrictlyMonotone {
            if let Some(s) = self.symbols.iter().find(|s| s.coefficients.contains(&0)) {
                return Err(format!("{} has a zero coefficient in strictly monotone mode", s.symbol));
            }
        }
        Ok(())
    }
}

enum Orientation {
    Strict,
    Weak,
    Fails(String),
}

fn orient(interp: &LinearInterpretation, r: &Rule) -> Orientation {
    match (interp.eval(r.lhs()), interp.eval(r.rhs())) {
        (Some(l), Some(rhs)) if l.gt(&rhs) => Orientation::Strict,
        (Some(l), Some(rhs)) if l.geq(&rhs) => Orientation::Weak,
        (Some(l), Some(rhs)) => Orientation::Fails(format!(
            "does not orient {r}: [lhs] = {l} >= [rhs] = {rhs} fails"
        )),
        _ => Orientation::Fails(format!("cannot evaluate {r}")),
    }
}

/// Removes the strictly decreasing pairs (and, for strictly monotone
/// interpretations, rules). Every element must be weakly decreasing.
pub fn reduction_pair(
    d: &RelativeDpp,
    interp: &LinearInterpretation,
) -> Result<ProcessorResult, ProcessorError> {
    interp.check_mode().map_err(ProcessorError::NotApplicable)?;
    let mut kept: BTreeMap<Component, Vec<Rule>> = BTreeMap::new();
    for c in Component::ALL {
        let removable = c.is_pair() || interp.mode == Monotonicity::StrictlyMonotone;
        let mut keep = Vec::new();
        for r in d.component(c) {
            match orient(interp, r) {
                Orientation::Fails(msg) => return Err(ProcessorError::NotApplicable(msg)),
                Orientation::Strict if removable => {}
                _ => keep.push(r.clone()),
            }
        }
        kept.insert(c, keep);
    }
    let mut take = |c| Trs::new(kept.remove(&c).unwrap_or_default());
    let succ = RelativeDpp::make(
        take(Component::StrictPairs),
        take(Component::WeakPairs),
        take(Component::StrictRules),
        take(Component::WeakRules),
    )?;
    Ok(ProcessorResult {
        successors: vec![succ],
        justification: Justification::ReductionPair {
            interpretation: interp.clone(),
        },
    })
}

/// Upper limit on search nodes before giving up.
const SEARCH_NODE_LIMIT: usize = 2_000_000;

/// Enumerates interpretations with constants and coefficients in
/// `[0, bound]` (coefficients in `[1, bound]` when strictly monotone) and
/// returns the first that removes at least one element.
///
/// Order: symbols in first-occurrence order over the problem's components;
/// for each symbol, parameter tuples `(constant, c_1..c_n)` in lexicographic
/// order; earlier symbols vary slowest.
pub fn search_reduction_pair(
    d: &RelativeDpp,
    bound: u64,
    mode: Monotonicity,
) -> Option<(LinearInterpretation, ProcessorResult)> {
    let symbols: Vec<Symbol> = d.signature().ok()?.symbols().to_vec();
    let elements: Vec<(Component, Rule)> = d.elements().map(|(c, r)| (c, r.clone())).collect();
    if elements.is_empty() {
        return None;
    }
    let index_of = |s: &Symbol| symbols.iter().position(|t| t == s).expect("in signature");
    // elements become checkable once their last symbol is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); symbols.len()];
    let mut always: Vec<usize> = Vec::new();
    for (i, (_, r)) in elements.iter().enumerate() {
        let last = r
            .lhs()
            .symbols()
            .iter()
            .chain(r.rhs().symbols().iter())
            .map(index_of)
            .max();
        match last {
            Some(k) => ready[k].push(i),
            None => always.push(i),
        }
    }
    let removable: Vec<bool> = elements
        .iter()
        .map(|(c, _)| c.is_pair() || mode == Monotonicity::StrictlyMonotone)
        .collect();
    let lo = if mode == Monotonicity::StrictlyMonotone { 1 } else { 0 };

    let mut search = Search {
        symbols: &symbols,
        elements: &elements,
        ready: &ready,
        removable: &removable,
        interp: LinearInterpretation::new(mode),
        bound,
        lo,
        nodes: 0,
        strict_found: 0,
        open_removable: removable.iter().filter(|r| **r).count(),
    };
    for &i in &always {
        match orient(&search.interp, &elements[i].1) {
            Orientation::Fails(_) => return None,
            Orientation::Strict if removable[i] => search.strict_found += 1,
            _ => {}
        }
        if removable[i] {
            search.open_removable -= 1;
        }
    }
    if search.go(0) {
        let interp = search.interp;
        let result = reduction_pair(d, &interp).ok()?;
        return Some((interp, result));
    }
    None
}

struct Search<'a> {
    symbols: &'a [Symbol],
    elements: &'a [(Component, Rule)],
    ready: &'a [Vec<usize>],
    removable: &'a [bool],
    interp: LinearInterpretation,
    bound: u64,
    lo: u64,
    nodes: usize,
    strict_found: usize,
    open_removable: usize,
}

impl Search<'_> {
    fn go(&mut self, k: usize) -> bool {
        if k == self.symbols.len() {
            return self.strict_found > 0;
        }
        let sym = &self.symbols[k];
        let mut params = vec![0u64; sym.arity + 1];
        params[1..].fill(self.lo);
        loop {
            self.nodes += 1;
            if self.nodes > SEARCH_NODE_LIMIT {
                return false;
            }
            self.interp.symbols.push(SymbolInterpretation {
                symbol: sym.rendered(),
                constant: params[0],
                coefficients: params[1..].to_vec(),
            });
            if let Some((strict, closed)) = self.check(k) {
                self.strict_found += strict;
                self.open_removable -= closed;
                let possible = self.strict_found > 0 || self.open_removable > 0;
                if possible && self.go(k + 1) {
                    return true;
                }
                self.strict_found -= strict;
                self.open_removable += closed;
            }
            self.interp.symbols.pop();
            if self.nodes > SEARCH_NODE_LIMIT || !self.next_params(&mut params) {
                return false;
            }
        }
    }

    /// Orients the elements completed by symbol `k`: `None` if one fails,
    /// otherwise (newly strict removable, newly closed removable).
    fn check(&self, k: usize) -> Option<(usize, usize)> {
        let mut strict = 0;
        let mut closed = 0;
        for &i in &self.ready[k] {
            match orient(&self.interp, &self.elements[i].1) {
                Orientation::Fails(_) => return None,
                Orientation::Strict if self.removable[i] => strict += 1,
                _ => {}
            }
            if self.removable[i] {
                closed += 1;
            }
        }
        Some((strict, closed))
    }

    fn next_params(&self, params: &mut [u64]) -> bool {
        for i in (0..params.len()).rev() {
            let lo = if i == 0 { 0 } else { self.lo };
            if params[i] < self.bound {
                params[i] += 1;
                return true;
            }
            params[i] = lo;
        }
        false
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
    fn s(t: Term) -> Term {
        Term::fun("s", vec![t])
    }
    fn rule(l: Term, r: Term) -> Rule {
        Rule::new(l, r).unwrap()
    }
    fn minus_pair() -> Rule {
        rule(
            Term::marked_fun("minus", vec![s(x()), s(y())]),
            Term::marked_fun("minus", vec![x(), y()]),
        )
    }
    fn minus_rules() -> Trs {
        Trs::new([
            rule(Term::fun("minus", vec![x(), Term::constant("0")]), x()),
            rule(Term::fun("minus", vec![s(x()), s(y())]), Term::fun("minus", vec![x(), y()])),
        ])
    }

    #[test]
    fn minus_pair_is_removed_by_hand_interpretation() {
        let d = RelativeDpp::make(Trs::new([minus_pair()]), Trs::empty(), Trs::empty(), Trs::empty())
            .unwrap();
        let interp = LinearInterpretation::new(Monotonicity::WeaklyMonotone)
            .with("minus#", 0, &[1, 0])
            .with("s", 1, &[1]);
        assert_eq!(interp.eval(minus_pair().lhs()).unwrap().to_string(), "x + 1");
        assert_eq!(interp.eval(minus_pair().rhs()).unwrap().to_string(), "x");
        let res = reduction_pair(&d, &interp).unwrap();
        assert!(res.successors[0].strict_pairs().is_empty());
    }

    #[test]
    fn weakly_oriented_rule_is_kept() {
        let r = rule(Term::fun("minus", vec![x(), Term::constant("0")]), x());
        let d = RelativeDpp::make(Trs::empty(), Trs::empty(), Trs::empty(), Trs::new([r.clone()])).unwrap();
        let interp = LinearInterpretation::new(Monotonicity::StrictlyMonotone)
            .with("minus", 0, &[1, 1])
            .with("0", 0, &[]);
        let l = interp.eval(r.lhs()).unwrap();
        let rr = interp.eval(r.rhs()).unwrap();
        assert!(l.geq(&rr) && !l.gt(&rr));
        assert_eq!(reduction_pair(&d, &interp).unwrap().successors[0], d);
    }

    #[test]
    fn sum_interpretation_is_the_identity_application() {
        let d = RelativeDpp::make(Trs::new([minus_pair()]), Trs::empty(), Trs::empty(), minus_rules()).unwrap();
        let interp = LinearInterpretation::new(Monotonicity::WeaklyMonotone);
        assert_eq!(reduction_pair(&d, &interp).unwrap().successors[0], d);
    }

    #[test]
    fn failing_orientation_is_not_applicable() {
        let d = RelativeDpp::make(Trs::new([minus_pair()]), Trs::empty(), Trs::empty(), Trs::empty())
            .unwrap();
        let interp = LinearInterpretation::new(Monotonicity::WeaklyMonotone)
            .with("minus#", 0, &[0, 1])
            .with("s", 0, &[0]);
        let err = reduction_pair(&d, &interp).unwrap_err();
        assert!(err.to_string().contains("does not orient"), "{err}");
    }

    #[test]
    fn strict_mode_rejects_zero_coefficients() {
        let interp = LinearInterpretation::new(Monotonicity::StrictlyMonotone).with("s", 0, &[0]);
        assert!(reduction_pair(&RelativeDpp::empty(), &interp).is_err());
    }

    #[test]
    fn strict_mode_removes_rules() {
        let r = rule(Term::fun("f", vec![x()]), x());
        let d = RelativeDpp::make(Trs::empty(), Trs::empty(), Trs::empty(), Trs::new([r])).unwrap();
        let interp = LinearInterpretation::new(Monotonicity::StrictlyMonotone).with("f", 1, &[1]);
        assert!(reduction_pair(&d, &interp).unwrap().successors[0].weak_rules().is_empty());
        // weakly monotone interpretations never remove rules
        let weak = LinearInterpretation::new(Monotonicity::WeaklyMonotone).with("f", 1, &[1]);
        assert_eq!(reduction_pair(&d, &weak).unwrap().successors[0], d);
    }

    #[test]
    fn search_finds_minus_interpretation() {
        let d = RelativeDpp::make(Trs::new([minus_pair()]), Trs::empty(), Trs::empty(), minus_rules()).unwrap();
        let (interp, res) = search_reduction_pair(&d, 2, Monotonicity::WeaklyMonotone).unwrap();
        assert!(res.successors[0].strict_pairs().is_empty());
        assert_eq!(res.successors[0].weak_rules(), &minus_rules());
        // independently re-check every inequality
        for (_, r) in d.elements() {
            let l = interp.eval(r.lhs()).unwrap();
            let rr = interp.eval(r.rhs()).unwrap();
            assert!(l.geq(&rr), "{r}");
        }
    }

    #[test]
    fn search_fails_on_self_loop_and_empty_problem() {
        let p = rule(Term::marked_fun("F", vec![x()]), Term::marked_fun("F", vec![x()]));
        let d = RelativeDpp::make(Trs::new([p]), Trs::empty(), Trs::empty(), Trs::empty()).unwrap();
        assert!(search_reduction_pair(&d, 2, Monotonicity::WeaklyMonotone).is_none());
        assert!(search_reduction_pair(&d, 2, Monotonicity::StrictlyMonotone).is_none());
        assert!(search_reduction_pair(&RelativeDpp::empty(), 2, Monotonicity::WeaklyMonotone).is_none());
    }

    #[test]
    fn search_result_is_first_in_documented_order() {
        // brute force over the same order for a one-symbol problem
        let p = rule(Term::marked_fun("F", vec![s(x())]), Term::marked_fun("F", vec![x()]));
        let d = RelativeDpp::make(Trs::new([p.clone()]), Trs::empty(), Trs::empty(), Trs::empty()).unwrap();
        let (found, _) = search_reduction_pair(&d, 2, Monotonicity::WeaklyMonotone).unwrap();
        let mut first = None;
        'outer: for f in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)] {
            for g in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)] {
                let i = LinearInterpretation::new(Monotonicity::WeaklyMonotone)
                    .with("F#", f.0, &[f.1])
                    .with("s", g.0, &[g.1]);
                let (l, r) = (i.eval(p.lhs()).unwrap(), i.eval(p.rhs()).unwrap());
                if l.gt(&r) {
                    first = Some(i);
                    break 'outer;
                }
            }
        }
        assert_eq!(Some(found), first);
    }
}
