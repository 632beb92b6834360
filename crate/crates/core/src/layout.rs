//! Layout metrics: relative layout of associated elements (RDA) and
//! group-size agreement (GDA).

use alloc::vec::Vec;

use crate::association::AssociationMap;
use crate::error::Error;
use crate::groups::GroupStats;
use crate::snapshot::{ElementSnapshot, PageSnapshot};

/// Closeness of two coordinates relative to `reference`: 1 when equal,
/// falling linearly to 0 at a distance of `reference`.
pub fn pos_sim(a: f64, b: f64, reference: f64) -> Result<f64, Error> {
    if reference.is_nan() || reference <= 0.0 {
        return Err(Error::Domain(reference));
    }
    Ok(pos_sim_unchecked(a, b, reference))
}

fn pos_sim_unchecked(a: f64, b: f64, reference: f64) -> f64 {
    let ratio = (a - b).abs() / reference;
    if ratio > 1.0 {
        0.0
    } else {
        1.0 - ratio
    }
}

/// Side of a page center line an element lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    /// Entirely before the center line (left, or top).
    Before,
    /// Crosses the center line.
    Span,
    /// Entirely after the center line (right, or bottom).
    After,
}

impl Side {
    fn of(start: f64, end: f64, center: f64) -> Self {
        if end <= center {
            Side::Before
        } else if start >= center {
            Side::After
        } else {
            Side::Span
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadrantBias {
    pub horizontal: Side,
    pub vertical: Side,
}

impl QuadrantBias {
    pub fn h_spans(&self) -> bool {
        self.horizontal == Side::Span
    }

    pub fn v_spans(&self) -> bool {
        self.vertical == Side::Span
    }
}

/// Position of `e` relative to the page's vertical and horizontal center
/// lines. An edge lying exactly on a center line does not cross it.
pub fn quadrant(e: &ElementSnapshot, page: &PageSnapshot) -> QuadrantBias {
    let b = &e.bbox;
    QuadrantBias {
        horizontal: Side::of(b.left, b.right(), page.page_width() / 2.0),
        vertical: Side::of(b.top, b.bottom(), page.page_height() / 2.0),
    }
}

/// Score of one associated pair `(s, t)` for race weight `weight`.
///
/// Zero when the quadrants differ; otherwise `100 · weight` scaled by the
/// left and top offsets relative to half the reference page size.
pub fn rda_pair(
    s: &ElementSnapshot,
    t: &ElementSnapshot,
    weight: f64,
    cand_page: &PageSnapshot,
    ref_page: &PageSnapshot,
) -> f64 {
    100.0 * weight * pair_factor(s, t, cand_page, ref_page)
}

/// The part of a pair score that does not depend on the race weight, in
/// `[0, 1]`.
fn pair_factor(s: &ElementSnapshot, t: &ElementSnapshot, cand_page: &PageSnapshot, ref_page: &PageSnapshot) -> f64 {
    if quadrant(s, cand_page) != quadrant(t, ref_page) {
        return 0.0;
    }
    // page dimensions are validated positive
    pos_sim_unchecked(s.bbox.left, t.bbox.left, ref_page.page_width() / 2.0)
        * pos_sim_unchecked(s.bbox.top, t.bbox.top, ref_page.page_height() / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairLayout {
    pub reference: usize,
    pub candidate: usize,
    pub pair_score: f64,
    pub quadrant_match: bool,
    pub group_match: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LayoutScores {
    pub rda: f64,
    pub gda: f64,
    pub per_pair: Vec<PairLayout>,
}

fn ensure_reference(reference: &PageSnapshot, groups_ref: &GroupStats) -> Result<f64, Error> {
    if reference.is_empty() || groups_ref.group_count() == 0 {
        return Err(Error::EmptyReference);
    }
    Ok(groups_ref.total_weight())
}

/// Race-weighted RDA of the page in `[0, 100]`.
pub fn rda_page(
    assoc: &AssociationMap,
    groups_ref: &GroupStats,
    cand: &PageSnapshot,
    reference: &PageSnapshot,
) -> Result<f64, Error> {
    let total = ensure_reference(reference, groups_ref)?;
    let sum: f64 = assoc
        .pairs
        .iter()
        .map(|p| {
            let factor = pair_factor(&cand.elements()[p.candidate], &reference.elements()[p.reference], cand, reference);
            groups_ref.race_weight[p.reference] * factor
        })
        .sum();
    Ok(100.0 * (sum / total))
}

/// Race-weighted share of associated reference elements whose group has
/// exactly as many members as their candidate's group, in `[0, 100]`.
pub fn gda_page(assoc: &AssociationMap, groups_cand: &GroupStats, groups_ref: &GroupStats) -> Result<f64, Error> {
    if groups_ref.group_count() == 0 {
        return Err(Error::EmptyReference);
    }
    let total = groups_ref.total_weight();
    let sum: f64 = assoc
        .pairs
        .iter()
        .filter(|p| groups_cand.group_size(p.candidate) == groups_ref.group_size(p.reference))
        .map(|p| groups_ref.race_weight[p.reference])
        .sum();
    Ok(100.0 * (sum / total))
}

/// RDA, GDA and per-pair diagnostics in one pass.
pub fn layout_scores(
    assoc: &AssociationMap,
    groups_cand: &GroupStats,
    groups_ref: &GroupStats,
    cand: &PageSnapshot,
    reference: &PageSnapshot,
) -> Result<LayoutScores, Error> {
    let rda = rda_page(assoc, groups_ref, cand, reference)?;
    let gda = gda_page(assoc, groups_cand, groups_ref)?;
    let per_pair = assoc
        .pairs
        .iter()
        .map(|p| {
            let s = &cand.elements()[p.candidate];
            let t = &reference.elements()[p.reference];
            PairLayout {
                reference: p.reference,
                candidate: p.candidate,
                pair_score: rda_pair(s, t, groups_ref.race_weight[p.reference], cand, reference),
                quadrant_match: quadrant(s, cand) == quadrant(t, reference),
                group_match: groups_cand.group_size(p.candidate) == groups_ref.group_size(p.reference),
            }
        })
        .collect();
    Ok(LayoutScores { rda, gda, per_pair })
}
