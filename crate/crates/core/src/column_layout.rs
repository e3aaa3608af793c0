//! Column structure from a vertical sweep over block starting points.
//!
//! The sweep counts, for every integer x across the page, how many blocks
//! start there (summed over pages). Body text is mostly flush left, so each
//! column's left boundary shows up as a tall peak.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::text_metrics::{Line, LineId, PageLineTree, PageLines, Thresholds};

/// Where a line sits in the page's reading order. `Spanning` is a one-column
/// region on top of a multi-column page, read before the columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ColumnSlot {
    Spanning,
    Major(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepHistogram {
    /// `counts[i]` is the number of blocks starting at x = i, for i in 0..=W.
    pub counts: Vec<u32>,
}

impl SweepHistogram {
    pub fn zeros(width: f64) -> Self {
        Self { counts: vec![0; width.max(0.0).round() as usize + 1] }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn add(&mut self, other: &SweepHistogram) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,count\n");
        for (x, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{x},{c}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnModel {
    /// Left boundaries of the major columns, increasing.
    pub column_lefts: Vec<f64>,
    pub k: usize,
    pub margin_width: f64,
    pub bt_area: (f64, f64),
    /// Peaks excluded from the major columns (line-number gutters and the like).
    pub minor_columns: Vec<f64>,
    pub page_width: f64,
}

impl ColumnModel {
    pub fn column_left(&self, slot: ColumnSlot) -> f64 {
        match slot {
            ColumnSlot::Spanning => self.column_lefts[0],
            ColumnSlot::Major(i) => self.column_lefts[i.min(self.k - 1)],
        }
    }

    /// The column whose left boundary is the largest one at or before `x`
    /// (with `delta1` of slack).
    pub fn major_for_x(&self, x: f64, delta1: f64) -> usize {
        self.column_lefts.iter().rposition(|&l| l <= x + delta1).unwrap_or(0)
    }
}

/// Column models for the whole document and, when pages of each parity are
/// detected separately, for odd and even pages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnLayout {
    pub combined: ColumnModel,
    pub odd: Option<ColumnModel>,
    pub even: Option<ColumnModel>,
}

impl ColumnLayout {
    pub fn single(model: ColumnModel) -> Self {
        Self { combined: model, odd: None, even: None }
    }

    pub fn for_page(&self, number: u32) -> &ColumnModel {
        let parity = if number % 2 == 1 { &self.odd } else { &self.even };
        parity.as_ref().unwrap_or(&self.combined)
    }
}

pub fn sweep_page(page: &PageLines, width: f64) -> SweepHistogram {
    let mut hist = SweepHistogram::zeros(width);
    let last = hist.counts.len() - 1;
    for line in &page.lines {
        for b in &line.blocks {
            let x = b.x().round().clamp(0.0, last as f64) as usize;
            hist.counts[x] += 1;
        }
    }
    hist
}

/// Histogram of starting x over every block of every page.
pub fn sweep(tree: &PageLineTree, width: f64) -> SweepHistogram {
    let mut hist = SweepHistogram::zeros(width);
    for page in &tree.pages {
        hist.add(&sweep_page(page, width));
    }
    hist
}

/// Peaks: counts reaching `peak_fraction` of the maximum that are the largest
/// within `delta1` pixels (ties resolved to the leftmost).
pub fn find_peaks(hist: &SweepHistogram, t: &Thresholds) -> Vec<usize> {
    let max = hist.counts.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return Vec::new();
    }
    let floor = t.peak_fraction * max as f64;
    let w = t.delta1.round().max(0.0) as usize;
    let n = hist.counts.len();
    let mut peaks: Vec<usize> = Vec::new();
    for i in 0..n {
        let c = hist.counts[i];
        if c == 0 || (c as f64) < floor {
            continue;
        }
        let lo = i.saturating_sub(w);
        let hi = (i + w).min(n - 1);
        let left_ok = hist.counts[lo..i].iter().all(|&o| o < c);
        let right_ok = hist.counts[i + 1..=hi].iter().all(|&o| o <= c);
        if left_ok && right_ok {
            // Equal plateaus further than the window still merge here.
            match peaks.last() {
                Some(&p) if i - p <= w => {
                    if hist.counts[p] < c {
                        *peaks.last_mut().expect("nonempty") = i;
                    }
                }
                _ => peaks.push(i),
            }
        }
    }
    peaks
}

/// Margin width and text area from the first two peaks: the margin is the
/// first boundary, moved to the second one when the first column is
/// narrower than `gamma1`.
pub fn bt_area(peaks: &[f64], width: f64, gamma1: f64) -> (f64, (f64, f64)) {
    let mut margin = peaks.first().copied().unwrap_or(0.0);
    if peaks.len() > 1 && peaks[1] - peaks[0] < gamma1 {
        margin = peaks[1];
    }
    (margin, (margin, width - margin))
}

pub fn detect_columns(hist: &SweepHistogram, t: &Thresholds) -> Result<ColumnModel> {
    let width = (hist.counts.len() - 1) as f64;
    let peaks: Vec<f64> = find_peaks(hist, t).into_iter().map(|p| p as f64).collect();
    if peaks.is_empty() {
        return Err(Error::NoColumns);
    }
    let (margin, area) = bt_area(&peaks, width, t.gamma1);
    let mut lefts: Vec<f64> = Vec::new();
    let mut minor = Vec::new();
    for &p in &peaks {
        let too_close = lefts.last().is_some_and(|&l| p - l < t.gamma1);
        // A major column needs gamma1 of room inside the text area.
        let no_room = p + t.gamma1 > area.1 && !lefts.is_empty();
        if p < margin || too_close || no_room {
            minor.push(p);
        } else {
            lefts.push(p);
        }
    }
    Ok(ColumnModel { k: lefts.len(), column_lefts: lefts, margin_width: margin, bt_area: area, minor_columns: minor, page_width: width })
}

/// Detects columns over the whole tree, or separately for odd and even pages.
pub fn detect_layout(tree: &PageLineTree, width: f64, t: &Thresholds, split_parity: bool) -> Result<ColumnLayout> {
    let hist = sweep(tree, width);
    if !split_parity {
        return Ok(ColumnLayout::single(detect_columns(&hist, t)?));
    }
    let mut odd = SweepHistogram::zeros(width);
    let mut even = SweepHistogram::zeros(width);
    for page in &tree.pages {
        let h = sweep_page(page, width);
        if page.number % 2 == 1 {
            odd.add(&h)
        } else {
            even.add(&h)
        }
    }
    let odd = (odd.total() > 0).then(|| detect_columns(&odd, t)).transpose()?;
    let even = (even.total() > 0).then(|| detect_columns(&even, t)).transpose()?;
    let mut combined = match (&odd, &even) {
        (Some(o), _) => o.clone(),
        (None, Some(e)) => e.clone(),
        (None, None) => return Err(Error::NoColumns),
    };
    if let (Some(o), Some(e)) = (&odd, &even) {
        let mut lefts: Vec<f64> = o.column_lefts.iter().chain(&e.column_lefts).copied().collect();
        lefts.sort_by(f64::total_cmp);
        lefts.dedup();
        let mut minor: Vec<f64> = o.minor_columns.iter().chain(&e.minor_columns).copied().collect();
        minor.sort_by(f64::total_cmp);
        minor.dedup();
        combined.k = lefts.len();
        combined.column_lefts = lefts;
        combined.minor_columns = minor;
        combined.margin_width = o.margin_width.min(e.margin_width);
        combined.bt_area = (combined.margin_width, width - combined.margin_width);
    }
    Ok(ColumnLayout { combined, odd, even })
}

/// Flags the lines of a multi-column page that form a one-column region above
/// all content of the later columns (an abstract spanning the page, say). A
/// page with nothing in the later columns is entirely such a region.
pub fn detect_single_column_insert(page: &PageLines, model: &ColumnModel, delta1: f64) -> Vec<bool> {
    if model.k < 2 {
        return vec![false; page.lines.len()];
    }
    let second = model.column_lefts[1] - delta1;
    let top_of_later = page.lines.iter().filter(|l| l.leftmost_x() >= second).map(|l| l.y).fold(f64::NEG_INFINITY, f64::max);
    page.lines.iter().map(|l| l.leftmost_x() < second && l.y > top_of_later + delta1).collect()
}

/// Splits lines that were grouped across a column boundary: side-by-side
/// columns share baselines, so grouping by y alone merges them.
pub fn split_page_lines(page: &mut PageLines, model: &ColumnModel, delta1: f64) {
    if model.k < 2 {
        return;
    }
    let mut out = Vec::with_capacity(page.lines.len());
    for line in page.lines.drain(..) {
        let mut pieces: Vec<Line> = Vec::new();
        let mut last_col = None;
        for b in line.blocks {
            let col = model.major_for_x(b.x(), delta1);
            match pieces.last_mut() {
                Some(p) if last_col.is_some_and(|c| col <= c) => p.blocks.push(b),
                _ => pieces.push(Line { id: line.id, y: b.y(), blocks: vec![b], column: None }),
            }
            last_col = Some(col);
        }
        out.extend(pieces);
    }
    for (seq, line) in out.iter_mut().enumerate() {
        line.id = LineId { page: page.number, seq: seq as u32 };
    }
    page.lines = out;
}

/// Splits cross-column lines, sets `column` on every line and puts each
/// page's lines in reading order: the spanning region, then each major column,
/// each top to bottom. Line ids are renumbered in that order.
pub fn assign_columns(tree: &mut PageLineTree, layout: &ColumnLayout, delta1: f64) {
    for page in &mut tree.pages {
        let model = layout.for_page(page.number);
        split_page_lines(page, model, delta1);
        let spanning = detect_single_column_insert(page, model, delta1);
        for (line, span) in page.lines.iter_mut().zip(spanning) {
            line.column = Some(if span { ColumnSlot::Spanning } else { ColumnSlot::Major(model.major_for_x(line.leftmost_x(), delta1)) });
        }
        page.lines.sort_by(|a, b| a.column.cmp(&b.column).then(b.y.total_cmp(&a.y)));
        for (seq, line) in page.lines.iter_mut().enumerate() {
            line.id.seq = seq as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dom_ingest::TextBlock;
    use crate::text_metrics::group_lines;

    fn hist_with(points: &[(usize, u32)]) -> SweepHistogram {
        let mut h = SweepHistogram::zeros(612.0);
        for &(x, c) in points {
            h.counts[x] += c;
        }
        h
    }

    fn tree_of(blocks: &[(f64, f64)]) -> PageLineTree {
        let blocks: Vec<_> = blocks.iter().enumerate().map(|(i, &(x, y))| TextBlock::synthetic(i, 1, x, y, 12.0, "text")).collect();
        group_lines(&blocks, &[(1, 612.0, 792.0)], 5.0)
    }

    #[test]
    fn single_column_sweep() {
        let blocks: Vec<_> = (0..10).map(|i| (72.0, 700.0 - 14.0 * i as f64)).collect();
        let h = sweep(&tree_of(&blocks), 612.0);
        assert_eq!(h.counts[72], 10);
        assert_eq!(h.total(), 10);
        assert_eq!(h.counts.len(), 613);
        assert_eq!(sweep(&PageLineTree::default(), 612.0).total(), 0);
    }

    #[test]
    fn two_column_fixture_peaks() {
        let mut blocks = Vec::new();
        for i in 0..40 {
            blocks.push((72.0, 720.0 - 14.0 * i as f64));
        }
        for i in 0..38 {
            blocks.push((312.0, 720.0 - 14.0 * i as f64));
        }
        for (i, x) in [90.0, 150.0, 200.0, 350.0, 400.0, 450.0].into_iter().enumerate() {
            blocks.push((x, 722.0 - 14.0 * i as f64));
        }
        let h = sweep(&tree_of(&blocks), 612.0);
        assert_eq!(h.counts[72], 40);
        assert_eq!(h.counts[312], 38);
        assert_eq!(h.total(), 84);
        let m = detect_columns(&h, &Thresholds::default()).unwrap();
        assert_eq!(m.k, 2);
        assert_eq!(m.column_lefts, vec![72.0, 312.0]);
        assert_eq!(m.bt_area, (72.0, 540.0));
    }

    #[test]
    fn narrow_first_column_promotes_margin() {
        let h = hist_with(&[(30, 35), (72, 40)]);
        let m = detect_columns(&h, &Thresholds::default()).unwrap();
        assert_eq!(m.column_lefts, vec![72.0]);
        assert_eq!(m.minor_columns, vec![30.0]);
        assert_eq!(m.margin_width, 72.0);
        assert_eq!(m.bt_area, (72.0, 540.0));
    }

    #[test]
    fn bt_area_cases() {
        assert_eq!(bt_area(&[72.0], 612.0, 144.0), (72.0, (72.0, 540.0)));
        assert_eq!(bt_area(&[30.0, 72.0], 612.0, 144.0), (72.0, (72.0, 540.0)));
        assert_eq!(bt_area(&[72.0, 312.0], 612.0, 144.0), (72.0, (72.0, 540.0)));
    }

    #[test]
    fn right_gutter_is_not_a_major_column() {
        let h = hist_with(&[(72, 40), (312, 40), (560, 39)]);
        let m = detect_columns(&h, &Thresholds::default()).unwrap();
        assert_eq!(m.column_lefts, vec![72.0, 312.0]);
        assert_eq!(m.minor_columns, vec![560.0]);
    }

    #[test]
    fn noise_below_half_is_ignored_and_jitter_merges() {
        let h = hist_with(&[(72, 40), (74, 30), (200, 19), (312, 21)]);
        let m = detect_columns(&h, &Thresholds::default()).unwrap();
        assert_eq!(m.column_lefts, vec![72.0, 312.0]);
        assert!(matches!(detect_columns(&SweepHistogram::zeros(612.0), &Thresholds::default()), Err(Error::NoColumns)));
    }

    #[test]
    fn spanning_abstract_on_top() {
        let mut blocks = Vec::new();
        for i in 0..4 {
            blocks.push((72.0, 700.0 - 14.0 * i as f64));
        }
        for i in 0..10 {
            blocks.push((72.0, 600.0 - 14.0 * i as f64));
            blocks.push((312.0, 600.0 - 14.0 * i as f64));
        }
        let mut tree = tree_of(&blocks);
        assert_eq!(tree.pages[0].lines.len(), 14);
        let model = ColumnModel {
            column_lefts: vec![72.0, 312.0],
            k: 2,
            margin_width: 72.0,
            bt_area: (72.0, 540.0),
            minor_columns: vec![],
            page_width: 612.0,
        };
        split_page_lines(&mut tree.pages[0], &model, 5.0);
        assert_eq!(tree.pages[0].lines.len(), 24);
        let flags = detect_single_column_insert(&tree.pages[0], &model, 5.0);
        assert_eq!(flags.iter().filter(|&&f| f).count(), 4);
        assert!(flags[..4].iter().all(|&f| f));

        let mut plain = tree_of(&[(72.0, 600.0), (312.0, 600.0), (72.0, 586.0), (312.0, 586.0)]);
        split_page_lines(&mut plain.pages[0], &model, 5.0);
        let ids: Vec<u32> = plain.pages[0].lines.iter().map(|l| l.id.seq).collect();
        assert_eq!(ids, vec![0, 1, 2, 3]);
        assert!(!detect_single_column_insert(&plain.pages[0], &model, 5.0).iter().any(|&f| f));

        let one = ColumnModel { column_lefts: vec![72.0], k: 1, ..model };
        assert!(!detect_single_column_insert(&tree.pages[0], &one, 5.0).iter().any(|&f| f));
    }
}
