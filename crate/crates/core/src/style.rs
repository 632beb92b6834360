//! Style similarity of associated elements (SDA).

use alloc::vec::Vec;

use crate::association::AssociationMap;
use crate::error::Error;
use crate::groups::GroupStats;
use crate::snapshot::{PageSnapshot, Rgb, Rgba, StyleAttrs};

/// Computed style compared between associated elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StyleAttribute {
    Color,
    BackgroundColor,
    FontSize,
    BorderRadius,
}

impl StyleAttribute {
    pub const ALL: [StyleAttribute; 4] = [
        StyleAttribute::Color,
        StyleAttribute::BackgroundColor,
        StyleAttribute::FontSize,
        StyleAttribute::BorderRadius,
    ];

    pub fn similarity(self, a: &StyleAttrs, b: &StyleAttrs) -> f64 {
        match self {
            StyleAttribute::Color => color_sim(a.color, b.color),
            StyleAttribute::BackgroundColor => background_sim(a.background_color, b.background_color),
            StyleAttribute::FontSize => scalar_sim(a.font_size, b.font_size),
            StyleAttribute::BorderRadius => scalar_sim(a.border_radius, b.border_radius),
        }
    }
}

fn channel_delta(a: u8, b: u8) -> f64 {
    (f64::from(a) - f64::from(b)) / 255.0
}

/// `1 - |a - b| / (255·√3)`: Euclidean RGB distance scaled so black vs
/// white is 0.
pub fn color_sim(a: Rgb, b: Rgb) -> f64 {
    let (dr, dg, db) = (channel_delta(a.0, b.0), channel_delta(a.1, b.1), channel_delta(a.2, b.2));
    let dist = libm::sqrt(dr * dr + dg * dg + db * db) / libm::sqrt(3.0);
    (1.0 - dist).clamp(0.0, 1.0)
}

/// Like [`color_sim`] with alpha as a fourth normalized channel, so a
/// transparent background never matches an opaque one.
pub fn background_sim(a: Rgba, b: Rgba) -> f64 {
    let (dr, dg, db) = (channel_delta(a.rgb.0, b.rgb.0), channel_delta(a.rgb.1, b.rgb.1), channel_delta(a.rgb.2, b.rgb.2));
    let da = a.alpha - b.alpha;
    let dist = libm::sqrt(dr * dr + dg * dg + db * db + da * da) / 2.0;
    (1.0 - dist).clamp(0.0, 1.0)
}

/// Relative agreement of two non-negative lengths: `1 - |a - b| / max(a, b)`,
/// and 1 when both are zero.
pub fn scalar_sim(a: f64, b: f64) -> f64 {
    let largest = a.max(b);
    if largest <= 0.0 {
        return 1.0;
    }
    (1.0 - (a - b).abs() / largest).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairStyle {
    pub reference: usize,
    pub candidate: usize,
    pub color_sim: f64,
    pub bg_sim: f64,
    pub font_sim: f64,
    pub radius_sim: f64,
    /// Mean over the enabled attributes.
    pub element_sim: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StyleScores {
    pub sda: f64,
    pub per_pair: Vec<PairStyle>,
}

/// Mean similarity over `attributes`; 1 when the list is empty.
pub fn element_sim(a: &StyleAttrs, b: &StyleAttrs, attributes: &[StyleAttribute]) -> f64 {
    if attributes.is_empty() {
        return 1.0;
    }
    attributes.iter().map(|attr| attr.similarity(a, b)).sum::<f64>() / attributes.len() as f64
}

/// SDA over all four attributes, in `[0, 100]`.
pub fn sda_page(
    assoc: &AssociationMap,
    groups_ref: &GroupStats,
    cand: &PageSnapshot,
    reference: &PageSnapshot,
) -> Result<f64, Error> {
    style_scores(assoc, groups_ref, cand, reference, &StyleAttribute::ALL).map(|s| s.sda)
}

pub fn style_scores(
    assoc: &AssociationMap,
    groups_ref: &GroupStats,
    cand: &PageSnapshot,
    reference: &PageSnapshot,
    attributes: &[StyleAttribute],
) -> Result<StyleScores, Error> {
    if reference.is_empty() || groups_ref.group_count() == 0 {
        return Err(Error::EmptyReference);
    }
    let mut weighted = 0.0;
    let mut per_pair = Vec::with_capacity(assoc.pairs.len());
    for p in &assoc.pairs {
        let s = &cand.elements()[p.candidate].styles;
        let t = &reference.elements()[p.reference].styles;
        let sim = element_sim(s, t, attributes);
        weighted += groups_ref.race_weight[p.reference] * sim;
        per_pair.push(PairStyle {
            reference: p.reference,
            candidate: p.candidate,
            color_sim: color_sim(s.color, t.color),
            bg_sim: background_sim(s.background_color, t.background_color),
            font_sim: scalar_sim(s.font_size, t.font_size),
            radius_sim: scalar_sim(s.border_radius, t.border_radius),
            element_sim: sim,
        });
    }
    Ok(StyleScores { sda: 100.0 * (weighted / groups_ref.total_weight()), per_pair })
}
