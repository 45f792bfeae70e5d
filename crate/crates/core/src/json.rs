//! JSON representation of terms, rules, substitutions and problems.
//!
//! Terms are `{"var": name}` or `{"fun": name, "args": [...]}` where marked
//! symbols carry their `#` suffix in `name`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::problem::RelativeDpp;
use crate::subst::Substitution;
use crate::term::{Symbol, Term};
use crate::trs::{Rule, Trs};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TermRepr {
    Var {
        var: String,
    },
    Fun {
        fun: String,
        #[serde(default)]
        args: Vec<TermRepr>,
    },
}

impl From<&Term> for TermRepr {
    fn from(t: &Term) -> Self {
        match t {
            Term::Var(x) => TermRepr::Var { var: x.clone() },
            Term::App(f, args) => TermRepr::Fun {
                fun: f.rendered(),
                args: args.iter().map(TermRepr::from).collect(),
            },
        }
    }
}

impl TermRepr {
    fn into_term(self) -> Term {
        match self {
            TermRepr::Var { var } => Term::Var(var),
            TermRepr::Fun { fun, args } => {
                let args: Vec<Term> = args.into_iter().map(TermRepr::into_term).collect();
                Term::App(Symbol::from_rendered(&fun, args.len()), args)
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TermRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        TermRepr::deserialize(d).map(TermRepr::into_term)
    }
}

#[derive(Serialize, Deserialize)]
struct RuleRepr {
    lhs: Term,
    rhs: Term,
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RuleRepr {
            lhs: self.lhs().clone(),
            rhs: self.rhs().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RuleRepr::deserialize(d)?;
        Rule::new(r.lhs, r.rhs).map_err(D::Error::custom)
    }
}

impl Serialize for Trs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rules().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Trs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<Rule>::deserialize(d).map(Trs::new)
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, &Term> = self.iter().collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Substitution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, Term>::deserialize(d)?;
        Ok(m.into_iter().collect())
    }
}

#[derive(Serialize, Deserialize)]
struct ProblemRepr {
    strict_pairs: Trs,
    weak_pairs: Trs,
    strict_rules: Trs,
    weak_rules: Trs,
}

impl Serialize for RelativeDpp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ProblemRepr {
            strict_pairs: self.strict_pairs().clone(),
            weak_pairs: self.weak_pairs().clone(),
            strict_rules: self.strict_rules().clone(),
            weak_rules: self.weak_rules().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelativeDpp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = ProblemRepr::deserialize(d)?;
        RelativeDpp::make(p.strict_pairs, p.weak_pairs, p.strict_rules, p.weak_rules)
            .map_err(D::Error::custom)
    }
}
