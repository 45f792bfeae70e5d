use serde::{Deserialize, Serialize};

use super::{Justification, ProcessorError, ProcessorResult};
use crate::problem::{Component, RelativeDpp};
use crate::term::{Symbol, Term};
use crate::trs::{Rule, Trs};

/// Interpretation of one symbol over `{0, .., n-1}`. `values` is indexed by
/// the argument tuple read as a base-`n` number, first argument most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTable {
    pub symbol: String,
    pub arity: usize,
    pub values: Vec<usize>,
}

/// A finite algebra over the carrier `{0, .., carrier_size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteModel {
    pub carrier_size: usize,
    pub tables: Vec<SymbolTable>,
}

impl FiniteModel {
    fn table(&self, f: &Symbol) -> Option<&SymbolTable> {
        let name = f.rendered();
        self.tables.iter().find(|t| t.symbol == name && t.arity == f.arity)
    }

    fn validate(&self) -> Result<(), String> {
        if !(1..=10).contains(&self.carrier_size) {
            return Err(format!("carrier size {} outside 1..=10", self.carrier_size));
        }
        for t in &self.tables {
            let expected = self.carrier_size.pow(t.arity as u32);
            if t.values.len() != expected || t.values.iter().any(|v| *v >= self.carrier_size) {
                return Err(format!("table of {} is not a total function", t.symbol));
            }
        }
        Ok(())
    }

    /// Value of `t` where variable `vars[i]` takes `assignment[i]`.
    pub fn eval(&self, t: &Term, vars: &[String], assignment: &[usize]) -> Option<usize> {
        match t {
            Term::Var(x) => vars.iter().position(|v| v == x).map(|i| assignment[i]),
            Term::App(f, args) => {
                let table = self.table(f)?;
                let mut index = 0;
                for a in args {
                    index = index * self.carrier_size + self.eval(a, vars, assignment)?;
                }
                table.values.get(index).copied()
            }
        }
    }

    fn assignments(&self, n_vars: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total = self.carrier_size.pow(n_vars as u32);
        (0..total).map(move |mut k| {
            let mut a = vec![0; n_vars];
            for slot in a.iter_mut().rev() {
                *slot = k % self.carrier_size;
                k /= self.carrier_size;
            }
            a
        })
    }

    /// Both sides of `r` have equal value under every assignment.
    pub fn satisfies(&self, r: &Rule) -> Result<(), String> {
        let vars = r.variables();
        for a in self.assignments(vars.len()) {
            let l = self.eval(r.lhs(), &vars, &a);
            let rv = self.eval(r.rhs(), &vars, &a);
            match (l, rv) {
                (Some(l), Some(rv)) if l == rv => {}
                (Some(l), Some(rv)) => {
                    return Err(format!("{r} evaluates to {l} and {rv} under {vars:?} = {a:?}"))
                }
                _ => return Err(format!("model does not interpret every symbol of {r}")),
            }
        }
        Ok(())
    }
}

/// Labels each non-variable subterm's symbol with the values of its
/// arguments, rendered as `name.v1v2..`; constants keep their name.
pub fn label_term(m: &FiniteModel, t: &Term, vars: &[String], assignment: &[usize]) -> Option<Term> {
    match t {
        Term::Var(_) => Some(t.clone()),
        Term::App(f, args) => {
            let mut label = String::new();
            let mut labeled_args = Vec::with_capacity(args.len());
            for a in args {
                let v = m.eval(a, vars, assignment)?;
                label.push(char::from_digit(v as u32, 10)?);
                labeled_args.push(label_term(m, a, vars, assignment)?);
            }
            let name = if args.is_empty() {
                f.name.clone()
            } else {
                format!("{}.{}", f.name, label)
            };
            Some(Term::App(
                Symbol {
                    name,
                    arity: f.arity,
                    marked: f.marked,
                },
                labeled_args,
            ))
        }
    }
}

/// Labeled variants of `r`, one per assignment, duplicates dropped.
pub fn labeled_variants(m: &FiniteModel, r: &Rule) -> Result<Vec<Rule>, ProcessorError> {
    let vars = r.variables();
    let mut out = Vec::new();
    for a in m.assignments(vars.len()) {
        let l = label_term(m, r.lhs(), &vars, &a);
        let rhs = label_term(m, r.rhs(), &vars, &a);
        let (Some(l), Some(rhs)) = (l, rhs) else {
            return Err(ProcessorError::NotApplicable(format!("cannot label {r}")));
        };
        let v = Rule::new(l, rhs).map_err(|e| ProcessorError::NotApplicable(e.to_string()))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Replaces every element by its labeled variants, one per assignment,
/// in the component of the original. Exact models only, so no decreasing
/// rules are needed.
pub fn semantic_labeling(d: &RelativeDpp, m: &FiniteModel) -> Result<ProcessorResult, ProcessorError> {
    m.validate().map_err(ProcessorError::NotApplicable)?;
    for (_, r) in d.elements() {
        m.satisfies(r).map_err(ProcessorError::NotApplicable)?;
    }
    let mut parts: Vec<Trs> = Vec::new();
    for c in Component::ALL {
        let mut rules = Vec::new();
        for r in d.component(c) {
            rules.extend(labeled_variants(m, r)?);
        }
        parts.push(Trs::new(rules));
    }
    let [p, pw, r, rw]: [Trs; 4] = parts.try_into().expect("four components");
    let succ = RelativeDpp::make(p, pw, r, rw)?;
    Ok(ProcessorResult {
        successors: vec![succ],
        justification: Justification::SemanticLabeling { model: m.clone() },
    })
}

const MODEL_SEARCH_NODE_LIMIT: usize = 1_000_000;

/// First model (symbols in first-occurrence order, each table enumerated
/// lexicographically over `values`, earlier symbols varying slowest) that
/// satisfies every pair and rule.
pub fn search_model(d: &RelativeDpp, carrier_size: usize) -> Option<FiniteModel> {
    if !(2..=3).contains(&carrier_size) {
        return None;
    }
    let symbols: Vec<Symbol> = d.signature().ok()?.symbols().to_vec();
    let elements: Vec<Rule> = d.elements().map(|(_, r)| r.clone()).collect();
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); symbols.len()];
    for (i, r) in elements.iter().enumerate() {
        let last = r
            .lhs()
            .symbols()
            .iter()
            .chain(r.rhs().symbols().iter())
            .filter_map(|s| symbols.iter().position(|t| t == s))
            .max();
        if let Some(k) = last {
            ready[k].push(i);
        }
    }
    let mut model = FiniteModel {
        carrier_size,
        tables: Vec::new(),
    };
    let mut nodes = 0usize;
    if extend(&mut model, &symbols, &elements, &ready, 0, &mut nodes) {
        Some(model)
    } else {
        None
    }
}

fn extend(
    model: &mut FiniteModel,
    symbols: &[Symbol],
    elements: &[Rule],
    ready: &[Vec<usize>],
    k: usize,
    nodes: &mut usize,
) -> bool {
    if k == symbols.len() {
        return true;
    }
    let n = model.carrier_size;
    let size = n.pow(symbols[k].arity as u32);
    let mut values = vec![0usize; size];
    loop {
        *nodes += 1;
        if *nodes > MODEL_SEARCH_NODE_LIMIT {
            return false;
        }
        model.tables.push(SymbolTable {
            symbol: symbols[k].rendered(),
            arity: symbols[k].arity,
            values: values.clone(),
        });
        let ok = ready[k].iter().all(|&i| model.satisfies(&elements[i]).is_ok());
        if ok && extend(model, symbols, elements, ready, k + 1, nodes) {
            return true;
        }
        model.tables.pop();
        if *nodes > MODEL_SEARCH_NODE_LIMIT {
            return false;
        }
        // next table in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if values[i] + 1 < n {
                values[i] += 1;
                break;
            }
            values[i] = 0;
        }
    }
}
