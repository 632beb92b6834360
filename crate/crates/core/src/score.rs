//! End-to-end scoring of a candidate page against a reference page.

use alloc::vec::Vec;

use crate::association::{associate_with, AssociationConfig, MatchMethod};
use crate::error::Error;
use crate::groups::build_groups_with_tolerance;
use crate::layout::layout_scores;
use crate::reward::{combine_reward, RewardWeights};
use crate::snapshot::PageSnapshot;
use crate::style::{style_scores, StyleAttribute};

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreOptions {
    pub weights: RewardWeights,
    pub association: AssociationConfig,
    /// Slack (px) when testing whether an element crosses an alignment axis.
    pub alignment_tolerance: f64,
    pub style_attributes: Vec<StyleAttribute>,
    /// Include per-pair diagnostics in the report.
    pub verbose: bool,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        Self {
            weights: RewardWeights::default(),
            association: AssociationConfig::default(),
            alignment_tolerance: 0.0,
            style_attributes: StyleAttribute::ALL.to_vec(),
            verbose: false,
        }
    }
}

impl ScoreOptions {
    pub fn with_weights(weights: RewardWeights) -> Self {
        Self { weights, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairDiagnostic {
    pub reference: usize,
    pub candidate: usize,
    pub method: MatchMethod,
    pub text_sim: f64,
    pub geo_dist: f64,
    pub rda_score: f64,
    pub quadrant_match: bool,
    pub group_match: bool,
    pub style_sim: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagnostics {
    pub matched: usize,
    pub text_matches: usize,
    pub geometry_matches: usize,
    pub reference_elements: usize,
    pub candidate_elements: usize,
    pub reference_group_count: usize,
    pub candidate_group_count: usize,
    pub unmatched_reference: Vec<usize>,
    pub unmatched_candidate: Vec<usize>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub pairs: Option<Vec<PairDiagnostic>>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScoreReport {
    pub rda: f64,
    pub gda: f64,
    pub sda: f64,
    /// Weighted combination of the three metrics, in `[0, 1]`.
    pub reward: f64,
    pub diagnostics: Diagnostics,
}

pub fn score_pair(
    candidate: &PageSnapshot,
    reference: &PageSnapshot,
    weights: &RewardWeights,
) -> Result<ScoreReport, Error> {
    score_pair_with(candidate, reference, &ScoreOptions::with_weights(*weights))
}

pub fn score_pair_with(
    candidate: &PageSnapshot,
    reference: &PageSnapshot,
    options: &ScoreOptions,
) -> Result<ScoreReport, Error> {
    options.weights.validate()?;
    let assoc = associate_with(candidate, reference, &options.association)?;
    let groups_ref = build_groups_with_tolerance(reference, options.alignment_tolerance);
    let groups_cand = build_groups_with_tolerance(candidate, options.alignment_tolerance);
    let layout = layout_scores(&assoc, &groups_cand, &groups_ref, candidate, reference)?;
    let style = style_scores(&assoc, &groups_ref, candidate, reference, &options.style_attributes)?;
    let reward = combine_reward(layout.rda, layout.gda, style.sda, &options.weights)?;

    let pairs = options.verbose.then(|| {
        assoc
            .pairs
            .iter()
            .zip(&layout.per_pair)
            .zip(&style.per_pair)
            .map(|((p, l), s)| PairDiagnostic {
                reference: p.reference,
                candidate: p.candidate,
                method: p.method,
                text_sim: p.text_sim,
                geo_dist: p.geo_dist,
                rda_score: l.pair_score,
                quadrant_match: l.quadrant_match,
                group_match: l.group_match,
                style_sim: s.element_sim,
            })
            .collect()
    });
    let text_matches = assoc.pairs.iter().filter(|p| p.method == MatchMethod::Text).count();

    Ok(ScoreReport {
        rda: layout.rda,
        gda: layout.gda,
        sda: style.sda,
        reward,
        diagnostics: Diagnostics {
            matched: assoc.pairs.len(),
            text_matches,
            geometry_matches: assoc.pairs.len() - text_matches,
            reference_elements: reference.len(),
            candidate_elements: candidate.len(),
            reference_group_count: groups_ref.group_count(),
            candidate_group_count: groups_cand.group_count(),
            unmatched_reference: assoc.unmatched_reference,
            unmatched_candidate: assoc.unmatched_candidate,
            pairs,
        },
    })
}
