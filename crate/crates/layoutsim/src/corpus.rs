//! Corpus tools: Group-Count binning, structural statistics and cleaning
//! filters over a directory of snapshot files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use layoutsim_core::groups::build_groups;
use layoutsim_core::snapshot::{page_stats, style_quality_score, PageStats};
use layoutsim_core::PageSnapshot;
use rayon::prelude::*;
use serde::Serialize;

use crate::json::parse_snapshot;

/// Pages taller than this are dropped by [`filter_corpus`].
pub const DEFAULT_MAX_HEIGHT: f64 = 5000.0;
/// Pages whose style quality score exceeds this are dropped.
pub const DEFAULT_STYLE_THRESHOLD: f64 = 0.9;

/// Group-Count bin edges. Bin `i` is `[edges[i], edges[i + 1])`; the last
/// bin is open-ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinSpec {
    edges: Vec<usize>,
}

impl BinSpec {
    pub fn new(edges: Vec<usize>) -> Result<Self, String> {
        if edges.first() != Some(&0) {
            return Err("bin edges must start at 0".into());
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err("bin edges must be strictly ascending".into());
        }
        Ok(Self { edges })
    }

    /// 0-50, 50-100, 100-150, 150-200, 200-400, 400+.
    pub fn fine() -> Self {
        Self { edges: vec![0, 50, 100, 150, 200, 400] }
    }

    /// 0-200, 200-400, 400+.
    pub fn coarse() -> Self {
        Self { edges: vec![0, 200, 400] }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn bin_of(&self, group_count: usize) -> usize {
        self.edges.partition_point(|&e| e <= group_count) - 1
    }

    pub fn label(&self, bin: usize) -> String {
        match self.edges.get(bin + 1) {
            Some(hi) => format!("{}-{}", self.edges[bin], hi),
            None => format!("{}+", self.edges[bin]),
        }
    }
}

impl Default for BinSpec {
    fn default() -> Self {
        Self::fine()
    }
}

impl FromStr for BinSpec {
    type Err = String;

    /// A preset name (`fine`, `coarse`) or comma-separated edges.
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "fine" => return Ok(Self::fine()),
            "coarse" => return Ok(Self::coarse()),
            _ => {}
        }
        let edges = s
            .split(',')
            .map(|e| e.trim().parse::<usize>().map_err(|err| format!("bad bin edge {e:?}: {err}")))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(edges)
    }
}

impl fmt::Display for BinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct MeanStd {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self::default();
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Self { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinRow {
    pub bin: String,
    pub pages: usize,
    pub tag_count: MeanStd,
    pub dom_depth: MeanStd,
    pub group_count: MeanStd,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub pages: usize,
    pub skipped: usize,
    pub tag_count: MeanStd,
    pub dom_depth: MeanStd,
    pub group_count: MeanStd,
    pub bins: Vec<BinRow>,
}

/// Snapshot files (`*.json`) directly inside `dir`, sorted by file name.
pub fn snapshot_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn load(path: &Path) -> Result<PageSnapshot, String> {
    let bytes = fs::read(path).map_err(|e| e.to_string())?;
    parse_snapshot(&bytes).map_err(|e| e.to_string())
}

fn summarize(label: String, stats: &[PageStats]) -> BinRow {
    let col = |f: fn(&PageStats) -> usize| MeanStd::of(&stats.iter().map(|s| f(s) as f64).collect::<Vec<_>>());
    BinRow {
        bin: label,
        pages: stats.len(),
        tag_count: col(|s| s.tag_count),
        dom_depth: col(|s| s.dom_depth),
        group_count: col(|s| s.group_count),
    }
}

/// Structural statistics over every parseable snapshot in `dir`. Files that
/// fail to load are counted in `skipped`.
pub fn corpus_stats(dir: &Path, bins: &BinSpec) -> std::io::Result<CorpusStats> {
    let files = snapshot_files(dir)?;
    let loaded: Vec<Option<PageStats>> = files
        .par_iter()
        .map(|path| {
            load(path).ok().map(|page| {
                let groups = build_groups(&page);
                page_stats(&page, &groups)
            })
        })
        .collect();
    let skipped = loaded.iter().filter(|s| s.is_none()).count();
    let all: Vec<PageStats> = loaded.into_iter().flatten().collect();
    let rows = (0..bins.len())
        .map(|b| {
            let members: Vec<PageStats> = all.iter().copied().filter(|s| bins.bin_of(s.group_count) == b).collect();
            summarize(bins.label(b), &members)
        })
        .collect();
    let total = summarize(String::new(), &all);
    Ok(CorpusStats {
        pages: all.len(),
        skipped,
        tag_count: total.tag_count,
        dom_depth: total.dom_depth,
        group_count: total.group_count,
        bins: rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DropReason {
    Height,
    Style,
    Parse,
    Io,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dropped {
    pub file: String,
    pub reason: DropReason,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct FilterManifest {
    pub kept: Vec<String>,
    pub dropped: Vec<Dropped>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterConfig {
    pub max_height: f64,
    pub style_threshold: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self { max_height: DEFAULT_MAX_HEIGHT, style_threshold: DEFAULT_STYLE_THRESHOLD }
    }
}

/// Why `page` should be dropped, if at all. Both limits are inclusive.
pub fn drop_reason(page: &PageSnapshot, config: &FilterConfig) -> Option<(DropReason, String)> {
    if page.page_height() > config.max_height {
        return Some((DropReason::Height, format!("page height {} > {}", page.page_height(), config.max_height)));
    }
    let score = style_quality_score(page);
    if score > config.style_threshold {
        return Some((DropReason::Style, format!("style quality score {score} > {}", config.style_threshold)));
    }
    None
}

/// Copies every snapshot in `dir` that passes the cleaning filters into
/// `out_dir`, byte for byte.
pub fn filter_corpus(dir: &Path, out_dir: &Path, config: &FilterConfig) -> std::io::Result<FilterManifest> {
    let files = snapshot_files(dir)?;
    fs::create_dir_all(out_dir)?;
    let verdicts: Vec<(String, Option<Dropped>)> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let drop = |reason, detail: String| Some(Dropped { file: name.clone(), reason, detail });
            let verdict = match fs::read(path) {
                Err(e) => drop(DropReason::Io, e.to_string()),
                Ok(bytes) => match parse_snapshot(&bytes) {
                    Err(e) => drop(DropReason::Parse, e.to_string()),
                    Ok(page) => match drop_reason(&page, config) {
                        Some((reason, detail)) => drop(reason, detail),
                        None => match fs::write(out_dir.join(&name), &bytes) {
                            Ok(()) => None,
                            Err(e) => drop(DropReason::Io, e.to_string()),
                        },
                    },
                },
            };
            (name, verdict)
        })
        .collect();
    let mut manifest = FilterManifest::default();
    for (name, verdict) in verdicts {
        match verdict {
            Some(d) => manifest.dropped.push(d),
            None => manifest.kept.push(name),
        }
    }
    Ok(manifest)
}
