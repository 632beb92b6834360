//! Snapshot JSON documents.
//!
//! ```json
//! { "page": {"width": 1920, "height": 3200, "url": "https://example.com"},
//!   "elements": [ { "index": 0, "parent": null, "tag": "div", "classes": ["hero"],
//!                   "text": "Welcome",
//!                   "box": {"left": 0, "top": 0, "width": 1920, "height": 600},
//!                   "styles": {"color": [0,0,0], "backgroundColor": [255,255,255,1],
//!                              "fontSize": 16, "borderRadius": 0,
//!                              "position": "static", "fontEmpty": false},
//!                   "visible": true } ] }
//! ```

use layoutsim_core::{ElementSnapshot, PageSnapshot, Position, Rect, Rgb, Rgba, StyleAttrs, ValidationError};
use serde::{Deserialize, Serialize};

use crate::error::ErrorBody;

#[derive(Debug, thiserror::Error)]
pub enum SnapshotError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation error at {}: {}", .0.path, .0.message)]
    Validation(#[from] ValidationError),
}

impl SnapshotError {
    pub fn path(&self) -> &str {
        match self {
            SnapshotError::Schema { path, .. } => path,
            SnapshotError::Validation(v) => &v.path,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SnapshotError::Schema { .. } => "schema",
            SnapshotError::Validation(_) => "validation",
        }
    }

    /// The same error with `prefix` prepended to its path, for snapshots
    /// nested inside a larger document.
    pub fn nested(self, prefix: &str) -> Self {
        let join = |p: &str| if p.is_empty() || p == "." { prefix.to_string() } else { format!("{prefix}.{p}") };
        match self {
            SnapshotError::Schema { path, message } => SnapshotError::Schema { path: join(&path), message },
            SnapshotError::Validation(v) => SnapshotError::Validation(ValidationError::new(join(&v.path), v.message)),
        }
    }

    pub fn to_body(&self) -> ErrorBody {
        let message = match self {
            SnapshotError::Schema { message, .. } => message.clone(),
            SnapshotError::Validation(v) => v.message.clone(),
        };
        ErrorBody::new(self.kind(), Some(self.path().to_string()), message)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SnapshotDoc {
    pub page: PageDoc,
    pub elements: Vec<ElementDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PageDoc {
    pub width: f64,
    pub height: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ElementDoc {
    pub index: usize,
    pub parent: Option<usize>,
    pub tag: String,
    pub classes: Vec<String>,
    pub text: String,
    #[serde(rename = "box")]
    pub bbox: BoxDoc,
    pub styles: StylesDoc,
    pub visible: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoxDoc {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StylesDoc {
    pub color: [u8; 3],
    pub background_color: (u8, u8, u8, f64),
    pub font_size: f64,
    pub border_radius: f64,
    pub position: Position,
    pub font_empty: bool,
}

impl SnapshotDoc {
    pub fn into_page(self) -> Result<PageSnapshot, ValidationError> {
        let elements = self
            .elements
            .into_iter()
            .map(|e| {
                let [r, g, b] = e.styles.color;
                let (br, bg, bb, alpha) = e.styles.background_color;
                ElementSnapshot {
                    index: e.index,
                    parent: e.parent,
                    tag: e.tag,
                    classes: e.classes,
                    text: e.text,
                    bbox: Rect::new(e.bbox.left, e.bbox.top, e.bbox.width, e.bbox.height),
                    styles: StyleAttrs {
                        color: Rgb(r, g, b),
                        background_color: Rgba::new(br, bg, bb, alpha),
                        font_size: e.styles.font_size,
                        border_radius: e.styles.border_radius,
                        position: e.styles.position,
                        font_empty: e.styles.font_empty,
                    },
                    visible: e.visible,
                }
            })
            .collect();
        PageSnapshot::new(self.page.width, self.page.height, self.page.url, elements)
    }

    pub fn from_page(page: &PageSnapshot) -> Self {
        SnapshotDoc {
            page: PageDoc { width: page.page_width(), height: page.page_height(), url: page.url().map(str::to_string) },
            elements: page
                .elements()
                .iter()
                .map(|e| {
                    let s = &e.styles;
                    let bg = s.background_color;
                    ElementDoc {
                        index: e.index,
                        parent: e.parent,
                        tag: e.tag.clone(),
                        classes: e.classes.clone(),
                        text: e.text.clone(),
                        bbox: BoxDoc { left: e.bbox.left, top: e.bbox.top, width: e.bbox.width, height: e.bbox.height },
                        styles: StylesDoc {
                            color: [s.color.0, s.color.1, s.color.2],
                            background_color: (bg.rgb.0, bg.rgb.1, bg.rgb.2, bg.alpha),
                            font_size: s.font_size,
                            border_radius: s.border_radius,
                            position: s.position,
                            font_empty: s.font_empty,
                        },
                        visible: e.visible,
                    }
                })
                .collect(),
        }
    }
}

fn schema_error<E: std::fmt::Display>(err: serde_path_to_error::Error<E>) -> SnapshotError {
    let path = err.path().to_string();
    SnapshotError::Schema { path: if path == "." { String::new() } else { path }, message: err.into_inner().to_string() }
}

/// Parses and validates a snapshot document.
pub fn parse_snapshot(document: &[u8]) -> Result<PageSnapshot, SnapshotError> {
    let de = &mut serde_json::Deserializer::from_slice(document);
    let doc: SnapshotDoc = serde_path_to_error::deserialize(de).map_err(schema_error)?;
    Ok(doc.into_page()?)
}

/// Like [`parse_snapshot`], for a snapshot already decoded as a JSON value.
pub fn parse_snapshot_value(value: serde_json::Value) -> Result<PageSnapshot, SnapshotError> {
    let doc: SnapshotDoc = serde_path_to_error::deserialize(value).map_err(schema_error)?;
    Ok(doc.into_page()?)
}

pub fn to_json(page: &PageSnapshot) -> String {
    serde_json::to_string(&SnapshotDoc::from_page(page)).expect("snapshot documents always serialize")
}

pub fn to_json_pretty(page: &PageSnapshot) -> String {
    serde_json::to_string_pretty(&SnapshotDoc::from_page(page)).expect("snapshot documents always serialize")
}
