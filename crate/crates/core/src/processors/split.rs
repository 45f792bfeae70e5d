use serde::{Deserialize, Serialize};

use super::{Justification, ProcessorError, ProcessorResult};
use crate::problem::RelativeDpp;
use crate::trs::Trs;

/// Rule components of the second split successor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitVariant {
    /// `(P¹w, P²w, R¹w, R²w)`.
    #[default]
    Paragraph,
    /// `(P¹w, P²w, R²w, R²w)`, the kept weak rules in the third slot. It
    /// puts every kept weak rule in both rule components and is therefore
    /// rejected as overlapping unless `R²w` is empty.
    Literal,
}

/// Splits off the elements to delete.
///
/// With `P¹ = P`, `P² = Pw`, `R¹ = R`, `R² = Rw` and the subscript `s`
/// marking deleted and `w` kept elements, the first successor is
/// `(P¹s ∪ P²s, P¹w ∪ P²w, R¹s ∪ R²s, R¹w ∪ R²w)` and the second keeps only
/// the remaining elements with their original strictness.
pub fn split(
    d: &RelativeDpp,
    delete_pairs: &Trs,
    delete_rules: &Trs,
) -> Result<ProcessorResult, ProcessorError> {
    split_with(d, delete_pairs, delete_rules, SplitVariant::Paragraph)
}

pub fn split_with(
    d: &RelativeDpp,
    delete_pairs: &Trs,
    delete_rules: &Trs,
    variant: SplitVariant,
) -> Result<ProcessorResult, ProcessorError> {
    if let Some(r) = delete_pairs.iter().find(|r| !d.pairs().contains(r)) {
        return Err(ProcessorError::NotASubset(format!("{r} is not a pair")));
    }
    if let Some(r) = delete_rules.iter().find(|r| !d.rules().contains(r)) {
        return Err(ProcessorError::NotASubset(format!("{r} is not a rule")));
    }

    let p1s = d.strict_pairs().intersection(delete_pairs);
    let p1w = d.strict_pairs().difference(delete_pairs);
    let p2s = d.weak_pairs().intersection(delete_pairs);
    let p2w = d.weak_pairs().difference(delete_pairs);
    let r1s = d.strict_rules().intersection(delete_rules);
    let r1w = d.strict_rules().difference(delete_rules);
    let r2s = d.weak_rules().intersection(delete_rules);
    let r2w = d.weak_rules().difference(delete_rules);

    let first = RelativeDpp::make(p1s.union(&p2s), p1w.union(&p2w), r1s.union(&r2s), r1w.union(&r2w))?;
    let second = match variant {
        SplitVariant::Paragraph => RelativeDpp::make(p1w, p2w, r1w, r2w)?,
        SplitVariant::Literal => RelativeDpp::make(p1w, p2w, r2w.clone(), r2w)?,
    };
    Ok(ProcessorResult {
        successors: vec![first, second],
        justification: Justification::Split {
            delete_pairs: delete_pairs.clone(),
            delete_rules: delete_rules.clone(),
            variant,
        },
    })
}
