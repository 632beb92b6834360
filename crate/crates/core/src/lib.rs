//! Layout and style similarity between two rendered pages.
//!
//! The crate works on snapshots of the visible elements of a rendered page
//! (geometry, own text and a handful of computed styles) and scores how well
//! a candidate page reproduces a reference page:
//!
//! * [`layout::rda_page`]: relative layout of associated elements,
//! * [`layout::gda_page`]: agreement of axis-aligned group sizes,
//! * [`style::sda_page`]: style agreement of associated elements.
//!
//! [`score::score_pair`] chains association, grouping and the three metrics
//! into a single reward, and [`reward::advantages`] normalizes a group of
//! rewards for policy-gradient training.
//!
//! The crate is `no_std` and only needs `alloc`. JSON, IO and the HTTP
//! service live in the `layoutsim` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod association;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod layout;
pub mod lcs;
pub mod reward;
pub mod score;
pub mod snapshot;
pub mod style;

pub use association::{associate, AssociationConfig, AssociationMap, MatchMethod, Pair};
pub use error::{Error, ValidationError};
pub use geometry::{Axis, Rect};
pub use groups::{build_groups, GroupStats};
pub use reward::{advantages, combine_reward, RewardWeights};
pub use score::{score_pair, ScoreOptions, ScoreReport};
pub use snapshot::{ElementSnapshot, PageSnapshot, PageStats, Position, Rgb, Rgba, StyleAttrs};
