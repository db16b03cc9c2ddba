//! Precision / recall / F-score over matched sub-segments.

use serde::{Deserialize, Serialize};

use crate::compare::{match_segments, SubSegmentSet};
use crate::scalar::Scalar;
use crate::Result;

/// Sub-segment match counts and the derived ratios.
///
/// `precision = tp / (tp + fp)`, `recall = tp / (tp + fn)` and
/// `f_score = 2pr / (p + r)`, each defined as 0 when its denominator is 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchMetrics {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_score: f64,
}

impl MatchMetrics {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f_score = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        MatchMetrics {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f_score,
        }
    }
}

/// Counts matched pairs as true positives, unmatched predicted segments as
/// false positives and unmatched truth segments as false negatives.
pub fn segment_metrics<S: Scalar>(
    predicted: &SubSegmentSet<S>,
    truth: &SubSegmentSet<S>,
) -> Result<MatchMetrics> {
    let pairs = match_segments(predicted, truth)?;
    let tp = pairs.len();
    Ok(MatchMetrics::from_counts(
        tp,
        predicted.len() - tp,
        truth.len() - tp,
    ))
}
