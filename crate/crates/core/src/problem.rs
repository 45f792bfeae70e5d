//! Relative DP problems `(P, Pw, R, Rw)`.

use std::fmt;

use thiserror::Error;

use crate::term::{Signature, Term, TermError};
use crate::trs::{dependency_pairs, Rule, Trs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("{rule} occurs in both {first} and {second}")]
    Overlap {
        rule: String,
        first: Component,
        second: Component,
    },
    #[error("marked symbol {symbol} occurs below the root or in a rule: {rule}")]
    MarkPlacement { symbol: String, rule: String },
    #[error("malformed rule: {0}")]
    Malformed(String),
    #[error(transparent)]
    Signature(#[from] TermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    StrictPairs,
    WeakPairs,
    StrictRules,
    WeakRules,
}

impl Component {
    pub const ALL: [Component; 4] = [
        Component::StrictPairs,
        Component::WeakPairs,
        Component::StrictRules,
        Component::WeakRules,
    ];

    pub fn is_strict(self) -> bool {
        matches!(self, Component::StrictPairs | Component::StrictRules)
    }

    pub fn is_pair(self) -> bool {
        matches!(self, Component::StrictPairs | Component::WeakPairs)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::StrictPairs => "strict pairs",
            Component::WeakPairs => "weak pairs",
            Component::StrictRules => "strict rules",
            Component::WeakRules => "weak rules",
        })
    }
}

/// A classic DP problem `(P, R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicDpp {
    pub pairs: Trs,
    pub rules: Trs,
}

/// A validated relative DP problem. The four components are pairwise
/// disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelativeDpp {
    strict_pairs: Trs,
    weak_pairs: Trs,
    strict_rules: Trs,
    weak_rules: Trs,
}

impl RelativeDpp {
    /// Validates disjointness, a consistent signature and that rules contain
    /// no marked symbols. Pairs may carry marks only at their roots.
    pub fn make(
        strict_pairs: Trs,
        weak_pairs: Trs,
        strict_rules: Trs,
        weak_rules: Trs,
    ) -> Result<RelativeDpp, ProblemError> {
        let d = RelativeDpp {
            strict_pairs,
            weak_pairs,
            strict_rules,
            weak_rules,
        };
        for (i, a) in Component::ALL.iter().enumerate() {
            for b in &Component::ALL[i + 1..] {
                if let Some(r) = d.component(*a).iter().find(|r| d.component(*b).contains(r)) {
                    return Err(ProblemError::Overlap {
                        rule: r.to_string(),
                        first: *a,
                        second: *b,
                    });
                }
            }
        }
        d.signature()?;
        for c in Component::ALL {
            for r in d.component(c) {
                check_marks(r, c.is_pair())?;
            }
        }
        Ok(d)
    }

    pub fn empty() -> RelativeDpp {
        RelativeDpp {
            strict_pairs: Trs::empty(),
            weak_pairs: Trs::empty(),
            strict_rules: Trs::empty(),
            weak_rules: Trs::empty(),
        }
    }

    /// The initial problem `(DP(R), ∅, ∅, R)`.
    pub fn initial(r: &Trs) -> RelativeDpp {
        RelativeDpp {
            strict_pairs: dependency_pairs(r),
            weak_pairs: Trs::empty(),
            strict_rules: Trs::empty(),
            weak_rules: r.clone(),
        }
    }

    pub fn embed(c: &ClassicDpp) -> Result<RelativeDpp, ProblemError> {
        RelativeDpp::make(c.pairs.clone(), Trs::empty(), Trs::empty(), c.rules.clone())
    }

    /// Forgets the weak pairs and strict rules.
    pub fn to_classic(&self) -> ClassicDpp {
        ClassicDpp {
            pairs: self.strict_pairs.clone(),
            rules: self.weak_rules.clone(),
        }
    }

    pub fn strict_pairs(&self) -> &Trs {
        &self.strict_pairs
    }

    pub fn weak_pairs(&self) -> &Trs {
        &self.weak_pairs
    }

    pub fn strict_rules(&self) -> &Trs {
        &self.strict_rules
    }

    pub fn weak_rules(&self) -> &Trs {
        &self.weak_rules
    }

    pub fn component(&self, c: Component) -> &Trs {
        match c {
            Component::StrictPairs => &self.strict_pairs,
            Component::WeakPairs => &self.weak_pairs,
            Component::StrictRules => &self.strict_rules,
            Component::WeakRules => &self.weak_rules,
        }
    }

    /// `P ∪ Pw` in component order, strict pairs first.
    pub fn all_pairs(&self) -> Vec<(Rule, bool)> {
        self.strict_pairs
            .iter()
            .map(|r| (r.clone(), true))
            .chain(self.weak_pairs.iter().map(|r| (r.clone(), false)))
            .collect()
    }

    /// `R ∪ Rw` in component order, strict rules first.
    pub fn all_rules(&self) -> Vec<(Rule, bool)> {
        self.strict_rules
            .iter()
            .map(|r| (r.clone(), true))
            .chain(self.weak_rules.iter().map(|r| (r.clone(), false)))
            .collect()
    }

    pub fn pairs(&self) -> Trs {
        self.strict_pairs.union(&self.weak_pairs)
    }

    pub fn rules(&self) -> Trs {
        self.strict_rules.union(&self.weak_rules)
    }

    /// Every element with the component it belongs to.
    pub fn elements(&self) -> impl Iterator<Item = (Component, &Rule)> {
        Component::ALL
            .into_iter()
            .flat_map(move |c| self.component(c).iter().map(move |r| (c, r)))
    }

    pub fn size(&self) -> usize {
        Component::ALL.iter().map(|c| self.component(*c).len()).sum()
    }

    pub fn signature(&self) -> Result<Signature, TermError> {
        let mut sig = Signature::new();
        for (_, r) in self.elements() {
            sig.add_term(r.lhs())?;
            sig.add_term(r.rhs())?;
        }
        Ok(sig)
    }

    /// No pairs at all, or neither strict pairs nor strict rules.
    pub fn is_trivially_finite(&self) -> bool {
        let no_pairs = self.strict_pairs.is_empty() && self.weak_pairs.is_empty();
        let nothing_strict = self.strict_pairs.is_empty() && self.strict_rules.is_empty();
        no_pairs || nothing_strict
    }

    /// True when every pair has a marked root and marks occur nowhere else.
    pub fn has_marked_pairs(&self) -> bool {
        self.pairs().iter().all(|p| {
            p.lhs().root().is_some_and(|f| f.marked)
                && p.rhs().root().is_some_and(|f| f.marked)
                && check_marks(p, true).is_ok()
        })
    }
}

fn check_marks(r: &Rule, is_pair: bool) -> Result<(), ProblemError> {
    for side in [r.lhs(), r.rhs()] {
        let mut bad = None;
        side.visit(&mut |t: &Term| {
            if let Some(f) = t.root() {
                let at_root = std::ptr::eq(t, side);
                if f.marked && !(is_pair && at_root) && bad.is_none() {
                    bad = Some(f.rendered());
                }
            }
        });
        if let Some(symbol) = bad {
            return Err(ProblemError::MarkPlacement {
                symbol,
                rule: r.to_string(),
            });
        }
    }
    Ok(())
}

impl fmt::Display for RelativeDpp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.strict_pairs, self.weak_pairs, self.strict_rules, self.weak_rules
        )
    }
}
