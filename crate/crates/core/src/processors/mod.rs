//! Processors: sound transformations of relative DP problems.
//!
//! A processor maps a problem to a list of successors such that finiteness
//! of every successor implies finiteness of the input. Each application
//! records a [`Justification`] carrying enough parameters to re-run it.

mod graph;
mod labeling;
mod reduction_pair;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{ProblemError, RelativeDpp};
use crate::trs::Trs;

pub use graph::{cap, dependency_graph, estimated_graph, EstimatedGraph};
pub use labeling::{label_term, labeled_variants, search_model, semantic_labeling, FiniteModel, SymbolTable};
pub use reduction_pair::{
    reduction_pair, search_reduction_pair, LinearInterpretation, LinearPoly, Monotonicity, SymbolInterpretation,
};
pub use split::{split, split_with, SplitVariant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcessorError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("delete set is not a subset of the problem: {0}")]
    NotASubset(String),
    #[error("pairs must have marked roots that occur nowhere else: {0}")]
    MarkPlacement(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// Processor name plus the parameters needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Justification {
    Trivial,
    Split {
        delete_pairs: Trs,
        delete_rules: Trs,
        #[serde(default)]
        variant: SplitVariant,
    },
    DependencyGraph {
        /// Components kept as successors; indices into `P ∪ Pw`.
        sccs: Vec<Vec<usize>>,
        /// Components dropped because they are trivially finite.
        omitted: Vec<Vec<usize>>,
    },
    ReductionPair {
        interpretation: LinearInterpretation,
    },
    SemanticLabeling {
        model: FiniteModel,
    },
}

impl Justification {
    pub fn processor_name(&self) -> &'static str {
        match self {
            Justification::Trivial => "trivial",
            Justification::Split { .. } => "split",
            Justification::DependencyGraph { .. } => "dependency_graph",
            Justification::ReductionPair { .. } => "reduction_pair",
            Justification::SemanticLabeling { .. } => "semantic_labeling",
        }
    }

    /// Whether a non-finite successor `succ` (child `child` of `parent`)
    /// implies a non-finite input. Every chain of the successor maps to a
    /// chain of the input, but minimality only carries over when no rule
    /// was dropped; the first split successor makes kept elements weak and
    /// says nothing about the input.
    pub fn preserves_nontermination(&self, child: usize, parent: &RelativeDpp, succ: &RelativeDpp) -> bool {
        match self {
            Justification::Trivial => false,
            Justification::SemanticLabeling { .. } | Justification::DependencyGraph { .. } => true,
            Justification::Split { .. } => child == 1 && succ.rules().same_set(&parent.rules()),
            Justification::ReductionPair { .. } => succ.rules().same_set(&parent.rules()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessorResult {
    pub successors: Vec<RelativeDpp>,
    pub justification: Justification,
}

/// Succeeds with no successors iff the problem has no pairs or nothing
/// strict.
pub fn trivial(d: &RelativeDpp) -> Result<ProcessorResult, ProcessorError> {
    if d.is_trivially_finite() {
        Ok(ProcessorResult {
            successors: Vec::new(),
            justification: Justification::Trivial,
        })
    } else {
        Err(ProcessorError::NotApplicable(
            "the problem has pairs and strict elements".into(),
        ))
    }
}

/// Re-runs the processor described by `j` on `d`.
pub fn apply(d: &RelativeDpp, j: &Justification) -> Result<ProcessorResult, ProcessorError> {
    match j {
        Justification::Trivial => trivial(d),
        Justification::Split {
            delete_pairs,
            delete_rules,
            variant,
        } => split_with(d, delete_pairs, delete_rules, *variant),
        Justification::DependencyGraph { .. } => dependency_graph(d),
        Justification::ReductionPair { interpretation } => reduction_pair(d, interpretation),
        Justification::SemanticLabeling { model } => semantic_labeling(d, model),
    }
}
