//! Rendered-page snapshot model.
//!
//! A [`PageSnapshot`] holds the visible elements of one rendered page in
//! document order. Construction validates every invariant and normalizes
//! text, so the rest of the crate can assume well-formed input.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::ValidationError;
use crate::geometry::Rect;
use crate::groups::GroupStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rgb(pub u8, pub u8, pub u8);

/// Background color; `alpha` is in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rgba {
    pub rgb: Rgb,
    pub alpha: f64,
}

impl Rgba {
    pub const TRANSPARENT: Rgba = Rgba { rgb: Rgb(0, 0, 0), alpha: 0.0 };

    pub const fn new(r: u8, g: u8, b: u8, alpha: f64) -> Self {
        Self { rgb: Rgb(r, g, b), alpha }
    }
}

/// Computed CSS `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Position {
    #[default]
    Static,
    Relative,
    Absolute,
    Fixed,
    Sticky,
}

impl Position {
    pub fn as_str(self) -> &'static str {
        match self {
            Position::Static => "static",
            Position::Relative => "relative",
            Position::Absolute => "absolute",
            Position::Fixed => "fixed",
            Position::Sticky => "sticky",
        }
    }
}

impl core::str::FromStr for Position {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "static" => Position::Static,
            "relative" => Position::Relative,
            "absolute" => Position::Absolute,
            "fixed" => Position::Fixed,
            "sticky" => Position::Sticky,
            _ => return Err(()),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StyleAttrs {
    pub color: Rgb,
    pub background_color: Rgba,
    pub font_size: f64,
    pub border_radius: f64,
    pub position: Position,
    /// The computed font family string was empty.
    pub font_empty: bool,
}

impl Default for StyleAttrs {
    fn default() -> Self {
        Self {
            color: Rgb(0, 0, 0),
            background_color: Rgba::TRANSPARENT,
            font_size: 16.0,
            border_radius: 0.0,
            position: Position::Static,
            font_empty: false,
        }
    }
}

/// One visible element.
///
/// `text` is the element's own text (direct text-node children only), with
/// whitespace collapsed once the element is part of a [`PageSnapshot`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ElementSnapshot {
    pub index: usize,
    pub parent: Option<usize>,
    pub tag: String,
    pub classes: Vec<String>,
    pub text: String,
    pub bbox: Rect,
    pub styles: StyleAttrs,
    pub visible: bool,
}

impl ElementSnapshot {
    /// A visible element with no parent, classes or text and default styles.
    pub fn new(index: usize, tag: &str, bbox: Rect) -> Self {
        Self {
            index,
            parent: None,
            tag: tag.to_string(),
            classes: Vec::new(),
            text: String::new(),
            bbox,
            styles: StyleAttrs::default(),
            visible: true,
        }
    }

    pub fn with_parent(mut self, parent: usize) -> Self {
        self.parent = Some(parent);
        self
    }

    pub fn with_classes(mut self, classes: &[&str]) -> Self {
        self.classes = classes.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn with_text(mut self, text: &str) -> Self {
        self.text = text.to_string();
        self
    }

    pub fn with_styles(mut self, styles: StyleAttrs) -> Self {
        self.styles = styles;
        self
    }

    /// Same tag and the same set of class names (order and duplicates ignored).
    pub fn same_kind(&self, other: &ElementSnapshot) -> bool {
        self.tag == other.tag
            && self.classes.iter().all(|c| other.classes.contains(c))
            && other.classes.iter().all(|c| self.classes.contains(c))
    }
}

/// A validated page: positive dimensions and well-formed elements in
/// document order.
#[derive(Debug, Clone, PartialEq)]
pub struct PageSnapshot {
    page_width: f64,
    page_height: f64,
    url: Option<String>,
    elements: Vec<ElementSnapshot>,
}

impl PageSnapshot {
    /// Validates and normalizes a page. Tags are lowercased and text has its
    /// whitespace collapsed.
    pub fn new(
        page_width: f64,
        page_height: f64,
        url: Option<String>,
        mut elements: Vec<ElementSnapshot>,
    ) -> Result<Self, ValidationError> {
        if !(page_width.is_finite() && page_width > 0.0) {
            return Err(ValidationError::new("page.width", format!("must be positive, got {page_width}")));
        }
        if !(page_height.is_finite() && page_height > 0.0) {
            return Err(ValidationError::new("page.height", format!("must be positive, got {page_height}")));
        }
        for (pos, el) in elements.iter_mut().enumerate() {
            validate_element(pos, el)?;
            el.tag = el.tag.to_lowercase();
            el.text = normalize_text(&el.text);
        }
        Ok(Self { page_width, page_height, url, elements })
    }

    pub fn page_width(&self) -> f64 {
        self.page_width
    }

    pub fn page_height(&self) -> f64 {
        self.page_height
    }

    pub fn url(&self) -> Option<&str> {
        self.url.as_deref()
    }

    pub fn elements(&self) -> &[ElementSnapshot] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn into_parts(self) -> (f64, f64, Option<String>, Vec<ElementSnapshot>) {
        (self.page_width, self.page_height, self.url, self.elements)
    }

    /// A copy of this page with every element box shifted by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        let mut page = self.clone();
        for el in &mut page.elements {
            el.bbox = el.bbox.translated(dx, dy);
        }
        page
    }
}

fn validate_element(pos: usize, el: &ElementSnapshot) -> Result<(), ValidationError> {
    let at = |field: &str| format!("elements[{pos}].{field}");
    if el.index != pos {
        return Err(ValidationError::new(
            at("index"),
            format!("index {} does not match document position {pos}", el.index),
        ));
    }
    if let Some(parent) = el.parent {
        if parent >= pos {
            return Err(ValidationError::new(
                at("parent"),
                format!("parent {parent} of element {pos} must precede it in document order"),
            ));
        }
    }
    if !el.visible {
        return Err(ValidationError::new(at("visible"), "only visible elements may be recorded"));
    }
    let b = &el.bbox;
    for (name, v) in [("left", b.left), ("top", b.top), ("width", b.width), ("height", b.height)] {
        if !v.is_finite() {
            return Err(ValidationError::new(at(&format!("box.{name}")), format!("element {pos}: not finite")));
        }
    }
    for (name, v) in [("width", b.width), ("height", b.height)] {
        if v < 0.0 {
            return Err(ValidationError::new(
                at(&format!("box.{name}")),
                format!("element {pos}: negative {name} {v}"),
            ));
        }
        if v == 0.0 {
            return Err(ValidationError::new(
                at(&format!("box.{name}")),
                format!("element {pos}: zero-area element is not visible"),
            ));
        }
    }
    let s = &el.styles;
    let alpha = s.background_color.alpha;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(ValidationError::new(
            at("styles.backgroundColor[3]"),
            format!("element {pos}: alpha {alpha} outside [0, 1]"),
        ));
    }
    for (name, v) in [("fontSize", s.font_size), ("borderRadius", s.border_radius)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(ValidationError::new(
                at(&format!("styles.{name}")),
                format!("element {pos}: must be finite and non-negative, got {v}"),
            ));
        }
    }
    Ok(())
}

/// Collapses runs of whitespace into single spaces and trims both ends.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PageStats {
    pub tag_count: usize,
    pub dom_depth: usize,
    pub group_count: usize,
}

/// Structural statistics of a page. `groups` must have been built on `page`.
pub fn page_stats(page: &PageSnapshot, groups: &GroupStats) -> PageStats {
    PageStats {
        tag_count: page.len(),
        dom_depth: dom_depth(page),
        group_count: groups.group_count(),
    }
}

/// Number of elements on the longest root-to-leaf parent chain.
pub fn dom_depth(page: &PageSnapshot) -> usize {
    // parents precede children, so one forward pass suffices
    let mut depth = Vec::with_capacity(page.len());
    for el in page.elements() {
        let d = el.parent.map_or(1, |p| depth[p] + 1);
        depth.push(d);
    }
    depth.into_iter().max().unwrap_or(0)
}

/// Fraction of left-edge (`left == 0`) elements that are statically
/// positioned and have no font family. Pages whose styles failed to load
/// score close to 1. Returns 0 when no element touches the left edge.
pub fn style_quality_score(page: &PageSnapshot) -> f64 {
    let mut at_edge = 0usize;
    let mut unstyled = 0usize;
    for el in page.elements().iter().filter(|e| e.bbox.left == 0.0) {
        at_edge += 1;
        if el.styles.position == Position::Static && el.styles.font_empty {
            unstyled += 1;
        }
    }
    if at_edge == 0 {
        0.0
    } else {
        unstyled as f64 / at_edge as f64
    }
}
