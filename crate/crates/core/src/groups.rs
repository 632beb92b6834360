//! Axis groups, race groups, Group Count and race weights.
//!
//! An element's group is every element crossed by one of its six alignment
//! axes. Its race group is the subset of that group sharing its tag and class
//! set, which collapses repeated items such as list entries. The Group Count
//! visits elements in document order and counts one representative per
//! not-yet-seen race group.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::Axis;
use crate::snapshot::{ElementSnapshot, PageSnapshot};

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroupStats {
    /// `groups[i]`: ascending indices of the elements in element `i`'s group.
    pub groups: Vec<Vec<usize>>,
    /// `race_groups[i]`: members of `groups[i]` of the same kind as `i`.
    pub race_groups: Vec<Vec<usize>>,
    pub group_count: usize,
    pub race_weight: Vec<f64>,
}

impl GroupStats {
    pub fn group_count(&self) -> usize {
        self.group_count
    }

    pub fn group_size(&self, index: usize) -> usize {
        self.groups[index].len()
    }

    /// Sum of all race weights on the page.
    pub fn total_weight(&self) -> f64 {
        self.race_weight.iter().sum()
    }
}

/// Whether `axis` crosses the closed box of `e`.
pub fn axis_overlaps(e: &ElementSnapshot, axis: Axis) -> bool {
    e.bbox.intersects_axis(axis, 0.0)
}

pub fn build_groups(page: &PageSnapshot) -> GroupStats {
    build_groups_with_tolerance(page, 0.0)
}

/// Like [`build_groups`], but an axis within `tolerance` pixels of a box
/// edge still counts as crossing it.
pub fn build_groups_with_tolerance(page: &PageSnapshot, tolerance: f64) -> GroupStats {
    let els = page.elements();
    let groups: Vec<Vec<usize>> = els
        .iter()
        .map(|ei| {
            let axes = ei.bbox.axes();
            els.iter()
                .enumerate()
                .filter(|(_, ej)| axes.iter().any(|&a| ej.bbox.intersects_axis(a, tolerance)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();

    let race_groups: Vec<Vec<usize>> = groups
        .iter()
        .enumerate()
        .map(|(i, g)| g.iter().copied().filter(|&j| els[j].same_kind(&els[i])).collect())
        .collect();

    let group_count = count_groups(&race_groups);
    let race_weight = race_groups
        .iter()
        .map(|r| 1.0 / (r.len() as f64 * group_count as f64))
        .collect();

    GroupStats { groups, race_groups, group_count, race_weight }
}

fn count_groups(race_groups: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; race_groups.len()];
    let mut count = 0;
    for (i, race) in race_groups.iter().enumerate() {
        if seen[i] {
            continue;
        }
        count += 1;
        seen[i] = true;
        for &r in race {
            seen[r] = true;
        }
    }
    count
}
