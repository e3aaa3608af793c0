//! Document baselines and the page-line-block tree.

use std::collections::BTreeMap;
use std::path::Path;

use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};

use crate::column_layout::ColumnSlot;
use crate::dom_ingest::TextBlock;
use crate::error::{Error, Result};

/// Thresholds, in pixels unless noted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Thresholds {
    /// Same-line y tolerance.
    pub delta1: f64,
    /// Font-size tolerance around the body size, in points.
    pub delta2: f64,
    /// Minimum width of a major column.
    pub gamma1: f64,
    /// Indentation beyond which a line is a special line.
    pub gamma2: f64,
    /// Whitespace inside a block beyond which its line is a special line.
    pub gamma3: f64,
    /// Line-gap tolerance around the body line spacing.
    pub gamma4: f64,
    /// Density ratio: a line is sparse below `base_cbd / gamma5`.
    pub gamma5: f64,
    /// Fraction of the tallest sweep peak a column peak must reach.
    pub peak_fraction: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { delta1: 5.0, delta2: 3.0, gamma1: 144.0, gamma2: 50.0, gamma3: 50.0, gamma4: 3.0, gamma5: 10.0, peak_fraction: 0.5 }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
            ("gamma5", self.gamma5),
            ("peak_fraction", self.peak_fraction),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be strictly positive, got {v}")));
            }
        }
        if self.peak_fraction > 1.0 {
            return Err(Error::Config("peak_fraction must not exceed 1".into()));
        }
        Ok(())
    }

    /// Reads `key = value` lines; unknown keys are rejected.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let t: Thresholds = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn from_config_file(path: &Path) -> Result<Self> {
        Self::from_config_str(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentStats {
    pub base_fs: f64,
    pub base_ls: f64,
    pub base_cbd: f64,
    pub font_size_histogram: BTreeMap<OrderedFloat<f64>, usize>,
    pub gap_histogram: BTreeMap<i64, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LineId {
    pub page: u32,
    pub seq: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub id: LineId,
    /// Ordered by starting x.
    pub blocks: Vec<TextBlock>,
    /// The y of the first block assigned to the line.
    pub y: f64,
    pub column: Option<ColumnSlot>,
}

impl Line {
    pub fn leftmost_x(&self) -> f64 {
        self.blocks.first().map_or(0.0, TextBlock::x)
    }

    pub fn text(&self) -> String {
        self.blocks.iter().map(|b| b.text.as_str()).collect()
    }

    pub fn preview(&self, max: usize) -> String {
        self.text().trim().chars().take(max).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageLines {
    pub number: u32,
    pub width: f64,
    pub height: f64,
    /// Top to bottom; in reading order once columns are assigned.
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PageLineTree {
    pub pages: Vec<PageLines>,
}

impl PageLineTree {
    pub fn lines(&self) -> impl Iterator<Item = &Line> {
        self.pages.iter().flat_map(|p| p.lines.iter())
    }

    pub fn line_count(&self) -> usize {
        self.pages.iter().map(|p| p.lines.len()).sum()
    }

    pub fn block_count(&self) -> usize {
        self.lines().map(|l| l.blocks.len()).sum()
    }

    /// Keeps lines for which `keep` is true and drops pages' empty lines.
    pub fn retain_lines(&mut self, mut keep: impl FnMut(&Line) -> bool) {
        for p in &mut self.pages {
            p.lines.retain(|l| !l.blocks.is_empty() && keep(l));
        }
    }
}

/// Per-size character counts.
pub fn font_size_histogram<'a>(blocks: impl IntoIterator<Item = &'a TextBlock>) -> BTreeMap<OrderedFloat<f64>, usize> {
    let mut hist = BTreeMap::new();
    for b in blocks {
        let n = b.char_len();
        if n > 0 {
            *hist.entry(OrderedFloat(b.font_size)).or_insert(0) += n;
        }
    }
    hist
}

/// The size carrying the most characters; ties go to the smaller size.
pub fn font_size_mode<'a>(blocks: impl IntoIterator<Item = &'a TextBlock>) -> Result<f64> {
    mode_of(&font_size_histogram(blocks)).map(|k| k.0).ok_or(Error::NoText)
}

/// Smallest key with the maximal count.
fn mode_of<K: Copy + Ord>(hist: &BTreeMap<K, usize>) -> Option<K> {
    let mut best: Option<(K, usize)> = None;
    for (&k, &n) in hist {
        if best.is_none_or(|(_, m)| n > m) {
            best = Some((k, n));
        }
    }
    best.map(|(k, _)| k)
}

/// Groups one page's blocks into lines. Blocks are visited by decreasing y; a
/// block joins the current line when within `delta1` of the line's y,
/// otherwise it opens a new line.
pub fn group_page_lines(page: u32, blocks: Vec<TextBlock>, delta1: f64) -> Vec<Line> {
    let mut blocks = blocks;
    blocks.sort_by(|a, b| b.y().total_cmp(&a.y()).then(a.x().total_cmp(&b.x())).then(a.index.cmp(&b.index)));
    let mut lines: Vec<Line> = Vec::new();
    for b in blocks {
        match lines.last_mut() {
            Some(line) if (line.y - b.y()).abs() <= delta1 => line.blocks.push(b),
            _ => {
                let seq = lines.len() as u32;
                lines.push(Line { id: LineId { page, seq }, y: b.y(), blocks: vec![b], column: None });
            }
        }
    }
    for line in &mut lines {
        line.blocks.sort_by(|a, b| a.x().total_cmp(&b.x()).then(a.index.cmp(&b.index)));
    }
    lines
}

/// Builds the tree from blocks carrying page numbers. `pages` lists
/// `(number, width, height)` in order; pages without blocks get no lines.
pub fn group_lines(blocks: &[TextBlock], pages: &[(u32, f64, f64)], delta1: f64) -> PageLineTree {
    let mut by_page: BTreeMap<u32, Vec<TextBlock>> = BTreeMap::new();
    for b in blocks {
        by_page.entry(b.page).or_default().push(b.clone());
    }
    PageLineTree {
        pages: pages
            .iter()
            .map(|&(number, width, height)| PageLines {
                number,
                width,
                height,
                lines: group_page_lines(number, by_page.remove(&number).unwrap_or_default(), delta1),
            })
            .collect(),
    }
}

/// Rounded gaps between consecutive lines of the same column on each page.
pub fn column_gaps(tree: &PageLineTree) -> Vec<i64> {
    let mut gaps = Vec::new();
    for page in &tree.pages {
        let mut by_column: BTreeMap<ColumnSlot, Vec<f64>> = BTreeMap::new();
        for line in &page.lines {
            by_column.entry(line.column.unwrap_or(ColumnSlot::Major(0))).or_default().push(line.y);
        }
        for ys in by_column.values_mut() {
            ys.sort_by(|a, b| b.total_cmp(a));
            gaps.extend(ys.windows(2).map(|w| (w[0] - w[1]).round() as i64));
        }
    }
    gaps
}

/// Modal gap between column-consecutive lines (ties to the smaller gap),
/// with its histogram.
pub fn line_spacing_mode(tree: &PageLineTree) -> Result<(f64, BTreeMap<i64, usize>)> {
    let mut hist = BTreeMap::new();
    for g in column_gaps(tree) {
        *hist.entry(g).or_insert(0) += 1;
    }
    let mode = mode_of(&hist).ok_or(Error::InsufficientLines)?;
    Ok((mode as f64, hist))
}

/// Non-whitespace characters per block.
pub fn char_tbk_density(line: &Line) -> f64 {
    if line.blocks.is_empty() {
        return 0.0;
    }
    let chars: usize = line.blocks.iter().map(|b| b.text.chars().filter(|c| !c.is_whitespace()).count()).sum();
    chars as f64 / line.blocks.len() as f64
}

/// Mean line density over the tree.
pub fn base_cbd(tree: &PageLineTree) -> Result<f64> {
    let n = tree.line_count();
    if n == 0 {
        return Err(Error::NoLines);
    }
    Ok(tree.lines().map(char_tbk_density).sum::<f64>() / n as f64)
}
