//! The relative dependency pair framework for proving termination of term
//! rewrite systems.
//!
//! A relative DP problem is a quadruple of strict pairs, weak pairs, strict
//! rules and weak rules. The crate provides a bounded chain oracle, sound
//! processors that transform problems, a strategy-driven prover emitting
//! replayable JSON proofs, and parsers for the `.trs` and `.rdp` formats.

pub mod term;
pub mod subst;
pub mod trs;
pub mod rewrite;

pub use subst::{match_term, rename_apart, unify, Substitution};
pub use term::{Position, Signature, Symbol, Term, TermError};
pub use trs::{defined_symbols, dependency_pairs, mark_root, Rule, RuleError, Trs};
pub mod problem;
pub mod json;
pub mod chain;
pub mod processors;
pub mod proof;
pub mod parse;
