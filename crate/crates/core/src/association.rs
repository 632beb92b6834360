//! One-to-one association of candidate elements with reference elements.
//!
//! Elements that carry text are paired first by LCS similarity; the rest
//! fall back to geometric proximity, gated by a maximum size deviation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::lcs::lcs_similarity;
use crate::snapshot::{ElementSnapshot, PageSnapshot};

/// Minimum LCS similarity for a text match.
pub const TEXT_MATCH_THRESHOLD: f64 = 0.80;
/// Largest width or height deviation (px) accepted for a geometric match.
pub const SIZE_GAP_LIMIT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum MatchMethod {
    Text,
    Geometry,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pair {
    pub candidate: usize,
    pub reference: usize,
    pub method: MatchMethod,
    pub text_sim: f64,
    pub geo_dist: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AssociationMap {
    /// Sorted by reference index.
    pub pairs: Vec<Pair>,
    pub unmatched_reference: Vec<usize>,
    pub unmatched_candidate: Vec<usize>,
}

impl AssociationMap {
    /// Candidate index associated with each reference element.
    pub fn candidate_of(&self, reference_len: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; reference_len];
        for p in &self.pairs {
            out[p.reference] = Some(p.candidate);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationConfig {
    pub text_threshold: f64,
    pub size_gap_limit: f64,
}

impl Default for AssociationConfig {
    fn default() -> Self {
        Self { text_threshold: TEXT_MATCH_THRESHOLD, size_gap_limit: SIZE_GAP_LIMIT }
    }
}

/// L1 distance over `(left, top, width, height)` and the larger of the
/// width and height deviations.
pub fn geo_distance(s: &ElementSnapshot, t: &ElementSnapshot) -> (f64, f64) {
    let (a, b) = (&s.bbox, &t.bbox);
    let dw = (a.width - b.width).abs();
    let dh = (a.height - b.height).abs();
    let dist = (a.left - b.left).abs() + (a.top - b.top).abs() + dw + dh;
    (dist, dw.max(dh))
}

/// Strategy that pairs candidate elements with reference elements.
pub trait Matcher {
    fn associate(&self, candidate: &PageSnapshot, reference: &PageSnapshot) -> Result<AssociationMap, Error>;
}

/// Greedy matcher walking reference elements in document order.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyMatcher {
    pub config: AssociationConfig,
}

impl Matcher for GreedyMatcher {
    fn associate(&self, candidate: &PageSnapshot, reference: &PageSnapshot) -> Result<AssociationMap, Error> {
        associate_with(candidate, reference, &self.config)
    }
}

/// [`associate_with`] using the default thresholds.
pub fn associate(candidate: &PageSnapshot, reference: &PageSnapshot) -> Result<AssociationMap, Error> {
    associate_with(candidate, reference, &AssociationConfig::default())
}

pub fn associate_with(
    candidate: &PageSnapshot,
    reference: &PageSnapshot,
    config: &AssociationConfig,
) -> Result<AssociationMap, Error> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let cands = candidate.elements();
    let refs = reference.elements();
    let mut cand_used = vec![false; cands.len()];
    let mut matched: Vec<Option<Pair>> = vec![None; refs.len()];

    // text phase
    for (ri, t) in refs.iter().enumerate() {
        if t.text.is_empty() {
            continue;
        }
        let mut best: Option<(usize, f64, f64)> = None;
        for (ci, s) in cands.iter().enumerate() {
            if cand_used[ci] || s.text.is_empty() {
                continue;
            }
            let sim = lcs_similarity(&s.text, &t.text);
            if sim < config.text_threshold {
                continue;
            }
            let (dist, _) = geo_distance(s, t);
            if best.is_none_or(|(_, d, _)| dist < d) {
                best = Some((ci, dist, sim));
            }
        }
        if let Some((ci, dist, sim)) = best {
            cand_used[ci] = true;
            matched[ri] = Some(Pair {
                candidate: ci,
                reference: ri,
                method: MatchMethod::Text,
                text_sim: sim,
                geo_dist: dist,
            });
        }
    }

    // geometry phase
    for (ri, t) in refs.iter().enumerate() {
        if matched[ri].is_some() {
            continue;
        }
        let same_tag_exists = cands.iter().enumerate().any(|(ci, s)| !cand_used[ci] && s.tag == t.tag);
        let mut best: Option<(usize, f64, f64)> = None;
        for (ci, s) in cands.iter().enumerate() {
            if cand_used[ci] || (same_tag_exists && s.tag != t.tag) {
                continue;
            }
            let (dist, gap) = geo_distance(s, t);
            if best.is_none_or(|(_, d, _)| dist < d) {
                best = Some((ci, dist, gap));
            }
        }
        if let Some((ci, dist, gap)) = best {
            if gap <= config.size_gap_limit {
                cand_used[ci] = true;
                matched[ri] = Some(Pair {
                    candidate: ci,
                    reference: ri,
                    method: MatchMethod::Geometry,
                    text_sim: lcs_similarity(&cands[ci].text, &t.text),
                    geo_dist: dist,
                });
            }
        }
    }

    let unmatched_reference = (0..refs.len()).filter(|&ri| matched[ri].is_none()).collect();
    let unmatched_candidate = (0..cands.len()).filter(|&ci| !cand_used[ci]).collect();
    Ok(AssociationMap { pairs: matched.into_iter().flatten().collect(), unmatched_reference, unmatched_candidate })
}
