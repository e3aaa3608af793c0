//! Removal of non-body text.
//!
//! Shallow filters work on blocks (images, rules, off-size and rotated
//! text, sidings); the rest works on lines using document baselines.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::column_layout::{ColumnLayout, ColumnSlot};
use crate::dom_ingest::{ObjectKind, PageObject, ReplicaDocument, TextBlock};
use crate::text_metrics::{char_tbk_density, DocumentStats, Line, PageLineTree, PageLines, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    Image,
    HorizontalRule,
    FontSize,
    Rotated,
    Siding,
    PageNumber,
    References,
    WideIndent,
    WideGap,
    /// Indented and sparse.
    IndentedSparse,
    /// Set apart by spacing and not ending a sentence.
    DetachedUnterminated,
}

/// Outcome of the four line tests; `true` means the test points to
/// non-body text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct NbtFlags {
    pub spacing: bool,
    pub density: bool,
    pub punctuation: bool,
    pub indentation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "target", rename_all = "snake_case")]
pub enum Verdict {
    Object {
        page: u32,
        offset: usize,
        reason: Reason,
    },
    Block {
        page: u32,
        block: usize,
        text: String,
        reason: Reason,
    },
    Line {
        page: u32,
        line: u32,
        text: String,
        slot: Option<ColumnSlot>,
        /// `None` when the line is kept.
        reason: Option<Reason>,
        #[serde(skip_serializing_if = "Option::is_none")]
        flags: Option<NbtFlags>,
        /// Whether the previously scanned line was removed as indented and sparse.
        #[serde(skip_serializing_if = "Option::is_none")]
        after_indented_removal: Option<bool>,
    },
}

impl Verdict {
    fn for_block(b: &TextBlock, reason: Reason) -> Self {
        Verdict::Block { page: b.page, block: b.index, text: b.text.clone(), reason }
    }

    fn for_line(line: &Line, reason: Reason) -> Self {
        Verdict::Line {
            page: line.id.page,
            line: line.id.seq,
            text: line.preview(80),
            slot: line.column,
            reason: Some(reason),
            flags: None,
            after_indented_removal: None,
        }
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            Verdict::Object { reason, .. } | Verdict::Block { reason, .. } => Some(*reason),
            Verdict::Line { reason, .. } => *reason,
        }
    }

    pub fn is_removal(&self) -> bool {
        self.reason().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReferenceMode {
    /// A "References" or "Bibliography" heading ends the body text.
    #[default]
    Keyword,
    /// Runs of numbered entries aligned at a common indent.
    Sweep,
}

#[derive(Debug, Clone, Default)]
pub struct ShallowOutcome {
    pub kept: Vec<TextBlock>,
    pub verdicts: Vec<Verdict>,
    /// Blocks kept only because they belong to the abstract or keywords.
    pub exempt: Vec<usize>,
}

/// Drops images and rules (their text children stay), blocks whose size is
/// not within `delta2` of the body size, and rotated blocks.
pub fn shallow_remove(
    doc: &ReplicaDocument,
    blocks: Vec<TextBlock>,
    base_fs: f64,
    t: &Thresholds,
    abstract_exemption: bool,
) -> ShallowOutcome {
    fn walk(objs: &[PageObject], page: u32, out: &mut Vec<Verdict>) {
        for o in objs {
            let reason = match o.kind {
                ObjectKind::Image => Some(Reason::Image),
                ObjectKind::Rule => Some(Reason::HorizontalRule),
                _ => None,
            };
            if let Some(reason) = reason {
                out.push(Verdict::Object { page, offset: o.offset, reason });
            }
            walk(&o.children, page, out);
        }
    }
    let mut verdicts = Vec::new();
    for page in &doc.pages {
        walk(&page.objects, page.number, &mut verdicts);
    }

    let exempt = if abstract_exemption { abstract_blocks(&blocks, base_fs, t) } else { HashSet::new() };
    let mut kept = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.rotated {
            verdicts.push(Verdict::for_block(&b, Reason::Rotated));
        } else if (b.font_size - base_fs).abs() >= t.delta2 && !exempt.contains(&b.index) {
            verdicts.push(Verdict::for_block(&b, Reason::FontSize));
        } else {
            kept.push(b);
        }
    }
    let mut exempt: Vec<usize> = exempt.into_iter().collect();
    exempt.sort_unstable();
    ShallowOutcome { kept, verdicts, exempt }
}

fn is_abstract_heading(text: &str) -> bool {
    let lower = text.trim().to_lowercase();
    lower.strip_prefix("abstract").is_some_and(|rest| !rest.starts_with(|c: char| c.is_alphabetic()))
}

/// Strips a leading section number such as `1`, `1.`, `IV.` or `A.`.
fn strip_section_number(text: &str) -> &str {
    let t = text.trim();
    let Some((head, rest)) = t.split_once(char::is_whitespace) else { return t };
    let head = head.trim_end_matches('.');
    let numeric = !head.is_empty() && head.chars().all(|c| c.is_ascii_digit() || c == '.');
    let roman = !head.is_empty() && head.chars().all(|c| "IVXLC".contains(c));
    let letter = head.len() == 1 && head.chars().all(|c| c.is_ascii_uppercase());
    if numeric || roman || letter {
        rest.trim_start()
    } else {
        t
    }
}

fn is_intro_heading(text: &str) -> bool {
    strip_section_number(text).trim().eq_ignore_ascii_case("introduction")
}

/// Blocks of the abstract (and any keywords after it): from the abstract
/// heading down the same column band until body-sized text or an
/// introduction heading.
fn abstract_blocks(blocks: &[TextBlock], base_fs: f64, t: &Thresholds) -> HashSet<usize> {
    let mut out = HashSet::new();
    let Some(head) = blocks.iter().find(|b| !b.rotated && is_abstract_heading(&b.text)) else {
        return out;
    };
    let (page, xa, ya) = (head.page, head.x(), head.y());
    let mut band: Vec<&TextBlock> =
        blocks.iter().filter(|b| b.page == page && b.y() <= ya + t.delta1 && b.x() >= xa - t.delta1 && b.x() < xa + t.gamma1).collect();
    band.sort_by(|a, b| b.y().total_cmp(&a.y()).then(a.x().total_cmp(&b.x())));
    let mut rows = Vec::new();
    for b in band {
        if is_intro_heading(&b.text) {
            break;
        }
        let below_heading = b.y() < ya - t.delta1;
        if below_heading && (b.font_size - base_fs).abs() < t.delta2 {
            break;
        }
        out.insert(b.index);
        rows.push(b.y());
    }
    for b in blocks {
        if b.page == page && b.x() > xa && rows.iter().any(|&y| (b.y() - y).abs() <= t.delta1) {
            out.insert(b.index);
        }
    }
    out
}

/// Removes blocks left of the margin (with `delta1` of slack) or starting
/// right of the text area, then drops emptied lines.
pub fn remove_sidings(tree: &mut PageLineTree, layout: &ColumnLayout, t: &Thresholds) -> Vec<Verdict> {
    let mut verdicts = Vec::new();
    for page in &mut tree.pages {
        let model = layout.for_page(page.number);
        let (lo, hi) = (model.margin_width - t.delta1, model.page_width - model.margin_width);
        for line in &mut page.lines {
            line.blocks.retain(|b| {
                let inside = b.x() >= lo && b.x() <= hi;
                if !inside {
                    verdicts.push(Verdict::for_block(b, Reason::Siding));
                }
                inside
            });
            if let Some(first) = line.blocks.first() {
                line.y = first.y();
            }
        }
        page.lines.retain(|l| !l.blocks.is_empty());
    }
    verdicts
}

fn is_page_number(text: &str) -> bool {
    let t = text.trim().trim_matches(|c: char| c == '-' || c == '\u{2013}' || c.is_whitespace());
    !t.is_empty() && t.len() <= 4 && t.chars().all(|c| c.is_ascii_digit())
}

/// Removes lone page numbers in the top or bottom twentieth of a page.
pub fn remove_page_numbers(tree: &mut PageLineTree) -> Vec<Verdict> {
    let mut verdicts = Vec::new();
    for page in &mut tree.pages {
        let h = page.height;
        page.lines.retain(|l| {
            let edge = l.y < 0.05 * h || l.y > 0.95 * h;
            let hit = edge && is_page_number(&l.text());
            if hit {
                verdicts.push(Verdict::for_line(l, Reason::PageNumber));
            }
            !hit
        });
    }
    verdicts
}

/// Gap to the previous and next line of the same slot, per line of a page.
pub fn slot_gaps(page: &PageLines) -> Vec<(Option<f64>, Option<f64>)> {
    let mut by_slot: BTreeMap<ColumnSlot, Vec<usize>> = BTreeMap::new();
    for (i, l) in page.lines.iter().enumerate() {
        by_slot.entry(l.column.unwrap_or(ColumnSlot::Major(0))).or_default().push(i);
    }
    let mut gaps = vec![(None, None); page.lines.len()];
    for idx in by_slot.values_mut() {
        idx.sort_by(|&a, &b| page.lines[b].y.total_cmp(&page.lines[a].y));
        for w in idx.windows(2) {
            let g = page.lines[w[0]].y - page.lines[w[1]].y;
            gaps[w[0]].1 = Some(g);
            gaps[w[1]].0 = Some(g);
        }
    }
    gaps
}

fn is_reference_heading(text: &str) -> bool {
    let t = strip_section_number(text).trim();
    t.eq_ignore_ascii_case("references") || t.eq_ignore_ascii_case("bibliography")
}

/// Removes the reference section. Returns the verdicts and whether the
/// section was found.
pub fn remove_references(
    tree: &mut PageLineTree,
    stats: &DocumentStats,
    layout: &ColumnLayout,
    t: &Thresholds,
    mode: ReferenceMode,
) -> (Vec<Verdict>, bool) {
    match mode {
        ReferenceMode::Keyword => remove_references_by_heading(tree, stats),
        ReferenceMode::Sweep => remove_references_by_numbering(tree, layout, t),
    }
}

fn remove_references_by_heading(tree: &mut PageLineTree, stats: &DocumentStats) -> (Vec<Verdict>, bool) {
    let mut start = None;
    'pages: for (pi, page) in tree.pages.iter().enumerate() {
        let gaps = slot_gaps(page);
        for (li, line) in page.lines.iter().enumerate() {
            let separated = gaps[li].0.is_none_or(|g| g > stats.base_ls);
            if separated && is_reference_heading(&line.text()) {
                start = Some((pi, li));
                break 'pages;
            }
        }
    }
    let Some((pi, li)) = start else { return (Vec::new(), false) };
    let mut verdicts = Vec::new();
    for (p, page) in tree.pages.iter_mut().enumerate().skip(pi) {
        let from = if p == pi { li } else { 0 };
        for l in page.lines.drain(from..) {
            verdicts.push(Verdict::for_line(&l, Reason::References));
        }
    }
    (verdicts, true)
}

/// `[12]`, `12.` or `12)` as a standalone token.
fn numbering_token(text: &str) -> bool {
    let t = text.trim();
    let inner = if let Some(s) = t.strip_prefix('[') { s.strip_suffix(']') } else { t.strip_suffix('.').or_else(|| t.strip_suffix(')')) };
    inner.is_some_and(|s| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
}

fn starts_with_numbering(line: &Line) -> bool {
    let Some(first) = line.blocks.first() else { return false };
    let head = first.text.split_whitespace().next().unwrap_or("");
    numbering_token(head)
}

fn remove_references_by_numbering(tree: &mut PageLineTree, layout: &ColumnLayout, t: &Thresholds) -> (Vec<Verdict>, bool) {
    // common x of the text after a separate numbering block
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    for page in &tree.pages {
        let model = layout.for_page(page.number);
        for line in &page.lines {
            let slot = line.column.unwrap_or(ColumnSlot::Major(0));
            let at_left = (line.leftmost_x() - model.column_left(slot)).abs() <= t.delta1;
            if at_left && line.blocks.len() > 1 && numbering_token(&line.blocks[0].text) {
                *hist.entry(line.blocks[1].x().round() as i64).or_insert(0) += 1;
            }
        }
    }
    let hanging = hist.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).filter(|(_, &n)| n >= 3).map(|(&x, _)| x as f64);

    let mut verdicts = Vec::new();
    let mut found = false;
    for page in &mut tree.pages {
        let model = layout.for_page(page.number);
        let n = page.lines.len();
        let mut numbered = vec![false; n];
        let mut candidate = vec![false; n];
        for (i, line) in page.lines.iter().enumerate() {
            let left = model.column_left(line.column.unwrap_or(ColumnSlot::Major(0)));
            let x = line.leftmost_x();
            numbered[i] = (x - left).abs() <= t.delta1 && starts_with_numbering(line);
            let continuation = match hanging {
                Some(h) => (x - h).abs() <= t.delta1,
                None => x > left + t.delta1,
            };
            candidate[i] = numbered[i] || continuation;
        }
        let mut remove = vec![false; n];
        let mut i = 0;
        while i < n {
            if !candidate[i] {
                i += 1;
                continue;
            }
            let mut j = i;
            while j < n && candidate[j] {
                j += 1;
            }
            // a run must open with an entry and hold at least two
            let first = (i..j).find(|&k| numbered[k]);
            if let Some(f) = first {
                if numbered[f..j].iter().filter(|&&b| b).count() >= 2 {
                    remove[f..j].iter_mut().for_each(|r| *r = true);
                }
            }
            i = j;
        }
        let mut k = 0;
        page.lines.retain(|l| {
            let r = remove[k];
            k += 1;
            if r {
                found = true;
                verdicts.push(Verdict::for_line(l, Reason::References));
            }
            !r
        });
    }
    (verdicts, found)
}

/// Removes lines indented more than `gamma2` past their column's left
/// boundary, or containing whitespace wider than `gamma3`.
pub fn remove_special_lines(tree: &mut PageLineTree, layout: &ColumnLayout, t: &Thresholds) -> Vec<Verdict> {
    let mut verdicts = Vec::new();
    for page in &mut tree.pages {
        let model = layout.for_page(page.number);
        page.lines.retain(|l| {
            let left = model.column_left(l.column.unwrap_or(ColumnSlot::Major(0)));
            let reason = if l.leftmost_x() - left > t.gamma2 {
                Some(Reason::WideIndent)
            } else if l.blocks.iter().any(|b| b.max_gap() > t.gamma3) {
                Some(Reason::WideGap)
            } else {
                None
            };
            if let Some(r) = reason {
                verdicts.push(Verdict::for_line(l, r));
            }
            reason.is_none()
        });
    }
    verdicts
}

/// Characters that end a sentence or a clause.
pub fn is_terminal_punctuation(c: char) -> bool {
    matches!(
        c,
        '.' | '!'
            | '?'
            | ':'
            | ';'
            | ','
            | ')'
            | ']'
            | '}'
            | '"'
            | '\''
            | '\u{2019}'
            | '\u{201D}'
            | '\u{00BB}'
            | '\u{2026}'
            | '\u{3002}'
            | '\u{FF01}'
            | '\u{FF1F}'
            | '\u{FF1A}'
            | '\u{FF1B}'
            | '\u{FF0C}'
            | '\u{FF09}'
            | '\u{3011}'
            | '\u{300D}'
            | '\u{300F}'
    )
}

/// Whether the line starts more than `delta1` right of `left`.
pub fn is_indented(line: &Line, left: f64, delta1: f64) -> bool {
    line.leftmost_x() > left + delta1
}

pub fn nbt_flags(line: &Line, gaps: (Option<f64>, Option<f64>), left: f64, stats: &DocumentStats, t: &Thresholds) -> NbtFlags {
    let near_body = |g: f64| (g - stats.base_ls).abs() < t.gamma4;
    let spacing = ![gaps.0, gaps.1].into_iter().flatten().any(near_body);
    let density = char_tbk_density(line) < stats.base_cbd / t.gamma5;
    let last = line.text().chars().rev().find(|c| !c.is_whitespace());
    let punctuation = !last.is_some_and(is_terminal_punctuation);
    NbtFlags { spacing, density, punctuation, indentation: is_indented(line, left, t.delta1) }
}

/// Scans all lines from the end of the document in reverse reading order.
/// An indented, sparse line is removed and sets the flag; a set-apart line
/// without terminal punctuation is removed unless the flag is set; any other
/// line is kept. The flag is cleared by every line not matching the first
/// rule. Gaps are measured once, before any removal.
pub fn backward_removal(tree: &mut PageLineTree, stats: &DocumentStats, layout: &ColumnLayout, t: &Thresholds) -> Vec<Verdict> {
    let mut per_page: Vec<Vec<(NbtFlags, bool)>> = Vec::with_capacity(tree.pages.len());
    let mut verdicts = Vec::new();
    let mut flag = false;
    let flags: Vec<Vec<NbtFlags>> = tree
        .pages
        .iter()
        .map(|page| {
            let model = layout.for_page(page.number);
            let gaps = slot_gaps(page);
            page.lines
                .iter()
                .zip(gaps)
                .map(|(l, g)| nbt_flags(l, g, model.column_left(l.column.unwrap_or(ColumnSlot::Major(0))), stats, t))
                .collect()
        })
        .collect();
    for _ in &tree.pages {
        per_page.push(Vec::new());
    }
    for pi in (0..tree.pages.len()).rev() {
        let page = &tree.pages[pi];
        let mut decisions = vec![(NbtFlags::default(), false); page.lines.len()];
        for li in (0..page.lines.len()).rev() {
            let f = flags[pi][li];
            let line = &page.lines[li];
            let before = flag;
            let reason = if f.indentation && f.density {
                flag = true;
                Some(Reason::IndentedSparse)
            } else if !flag && f.spacing && f.punctuation {
                Some(Reason::DetachedUnterminated)
            } else {
                flag = false;
                None
            };
            if reason == Some(Reason::DetachedUnterminated) {
                flag = false;
            }
            decisions[li] = (f, reason.is_some());
            verdicts.push(Verdict::Line {
                page: line.id.page,
                line: line.id.seq,
                text: line.preview(80),
                slot: line.column,
                reason,
                flags: Some(f),
                after_indented_removal: Some(before),
            });
        }
        per_page[pi] = decisions;
    }
    for (page, decisions) in tree.pages.iter_mut().zip(per_page) {
        let mut k = 0;
        page.lines.retain(|_| {
            let removed = decisions[k].1;
            k += 1;
            !removed
        });
    }
    verdicts.reverse();
    verdicts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::column_layout::ColumnModel;
    use crate::text_metrics::LineId;

    fn model(lefts: &[f64]) -> ColumnLayout {
        ColumnLayout::single(ColumnModel {
            column_lefts: lefts.to_vec(),
            k: lefts.len(),
            margin_width: lefts[0],
            bt_area: (lefts[0], 612.0 - lefts[0]),
            minor_columns: vec![],
            page_width: 612.0,
        })
    }

    fn stats(ls: f64, cbd: f64) -> DocumentStats {
        DocumentStats {
            base_fs: 12.0,
            base_ls: ls,
            base_cbd: cbd,
            font_size_histogram: Default::default(),
            gap_histogram: Default::default(),
        }
    }

    fn line(seq: u32, x: f64, y: f64, parts: &[&str]) -> Line {
        let blocks = parts
            .iter()
            .enumerate()
            .map(|(i, p)| TextBlock::synthetic(seq as usize * 100 + i, 1, x + 20.0 * i as f64, y, 12.0, p))
            .collect();
        Line { id: LineId { page: 1, seq }, blocks, y, column: Some(ColumnSlot::Major(0)) }
    }

    fn tree(lines: Vec<Line>) -> PageLineTree {
        PageLineTree { pages: vec![PageLines { number: 1, width: 612.0, height: 792.0, lines }] }
    }

    fn texts(tree: &PageLineTree) -> Vec<String> {
        tree.lines().map(|l| l.text()).collect()
    }

    #[test]
    fn flags_follow_definitions() {
        let s = stats(14.0, 40.0);
        let t = Thresholds::default();
        let l = line(0, 72.0, 700.0, &["body text that ends."]);
        assert_eq!(
            nbt_flags(&l, (Some(14.0), Some(14.0)), 72.0, &s, &t),
            NbtFlags { spacing: false, density: false, punctuation: false, indentation: false }
        );
        let l = line(0, 100.0, 700.0, &["x", "=", "y"]);
        let f = nbt_flags(&l, (Some(30.0), None), 72.0, &s, &t);
        assert!(f.spacing && f.density && f.punctuation && f.indentation);
        // a missing neighbor does not count against spacing
        assert!(nbt_flags(&l, (None, None), 72.0, &s, &t).spacing);
        // 11 and 17 lie on the interval's edges, which are outside it
        assert!(nbt_flags(&l, (Some(11.0), Some(17.0)), 72.0, &s, &t).spacing);
        assert!(!nbt_flags(&l, (Some(11.5), None), 72.0, &s, &t).spacing);
    }

    #[test]
    fn backward_rules_and_flag() {
        let s = stats(14.0, 40.0);
        let t = Thresholds::default();
        let mut tr = tree(vec![
            line(0, 72.0, 700.0, &["A paragraph line that is long enough"]),
            line(1, 72.0, 686.0, &["and it leads into the display"]),
            line(2, 110.0, 660.0, &["a", "+", "b", "=", "c"]),
            line(3, 72.0, 634.0, &["Section Heading"]),
            line(4, 72.0, 606.0, &["Next paragraph starts and ends here."]),
        ]);
        let v = backward_removal(&mut tr, &s, &model(&[72.0]), &t);
        let reasons: Vec<_> = v.iter().map(Verdict::reason).collect();
        assert_eq!(reasons, vec![None, None, Some(Reason::IndentedSparse), Some(Reason::DetachedUnterminated), None]);
        assert_eq!(texts(&tr).len(), 3);
    }

    #[test]
    fn flag_protects_line_above_removed_display() {
        let s = stats(14.0, 40.0);
        let t = Thresholds::default();
        let mut tr = tree(vec![
            line(0, 72.0, 700.0, &["Text before with no stop"]),
            line(1, 110.0, 670.0, &["a", "+", "b"]),
            line(2, 72.0, 640.0, &["Closing line."]),
        ]);
        backward_removal(&mut tr, &s, &model(&[72.0]), &t);
        assert_eq!(texts(&tr), vec!["Text before with no stop", "Closing line."]);
    }

    #[test]
    fn special_lines() {
        let t = Thresholds::default();
        let mut wide = line(2, 72.0, 672.0, &["left   right"]);
        wide.blocks[0].internal_gaps = vec![(4, 80.0)];
        let mut tr = tree(vec![line(0, 72.0, 700.0, &["body"]), line(1, 200.0, 686.0, &["centered"]), wide]);
        let v = remove_special_lines(&mut tr, &model(&[72.0]), &t);
        assert_eq!(v.iter().map(Verdict::reason).collect::<Vec<_>>(), vec![Some(Reason::WideIndent), Some(Reason::WideGap)]);
        assert_eq!(texts(&tr), vec!["body"]);
    }

    #[test]
    fn sidings_and_page_numbers() {
        let t = Thresholds::default();
        let mut l0 = line(0, 30.0, 700.0, &["12"]);
        l0.blocks.push(TextBlock::synthetic(9, 1, 72.0, 700.0, 12.0, "body"));
        let mut tr = tree(vec![l0, line(1, 30.0, 686.0, &["13"]), line(2, 300.0, 30.0, &["4"])]);
        let v = remove_sidings(&mut tr, &model(&[72.0]), &t);
        assert_eq!(v.len(), 2);
        assert_eq!(texts(&tr), vec!["body", "4"]);
        assert_eq!(remove_page_numbers(&mut tr).len(), 1);
        assert_eq!(texts(&tr), vec!["body"]);
    }

    #[test]
    fn references_keyword() {
        let s = stats(14.0, 40.0);
        let t = Thresholds::default();
        let mut tr = tree(vec![
            line(0, 72.0, 700.0, &["See the references below."]),
            line(1, 72.0, 686.0, &["References"]),
            line(2, 72.0, 650.0, &["References"]),
            line(3, 72.0, 636.0, &["[1] A. Author. Title."]),
        ]);
        let (v, found) = remove_references(&mut tr, &s, &model(&[72.0]), &t, ReferenceMode::Keyword);
        assert!(found);
        assert_eq!(v.len(), 2);
        assert_eq!(texts(&tr).len(), 2);

        let mut none = tree(vec![line(0, 72.0, 700.0, &["No bibliography here."])]);
        assert!(!remove_references(&mut none, &s, &model(&[72.0]), &t, ReferenceMode::Keyword).1);
    }

    #[test]
    fn references_numbering_sweep() {
        let s = stats(14.0, 40.0);
        let t = Thresholds::default();
        let mut tr = tree(vec![
            line(0, 72.0, 700.0, &["Closing body sentence."]),
            line(1, 72.0, 672.0, &["[1]", "A. Author. A title."]),
            line(2, 92.0, 658.0, &["Journal, 2001."]),
            line(3, 72.0, 644.0, &["[2]", "B. Author. Another."]),
            line(4, 72.0, 630.0, &["[3]", "C. Author. Third."]),
        ]);
        let (v, found) = remove_references(&mut tr, &s, &model(&[72.0]), &t, ReferenceMode::Sweep);
        assert!(found);
        assert_eq!(v.len(), 4);
        assert_eq!(texts(&tr), vec!["Closing body sentence."]);
    }

    #[test]
    fn headings_and_numbering() {
        assert!(is_abstract_heading("Abstract"));
        assert!(is_abstract_heading("ABSTRACT\u{2014}We study"));
        assert!(!is_abstract_heading("Abstraction layers"));
        assert!(is_intro_heading("1 Introduction"));
        assert!(is_intro_heading("I. INTRODUCTION"));
        assert!(is_reference_heading("7. References"));
        assert!(!is_reference_heading("References to prior work"));
        assert!(numbering_token("[12]") && numbering_token("3.") && !numbering_token("3.5"));
        assert!(is_page_number(" 12 ") && is_page_number("- 3 -") && !is_page_number("2024a"));
    }

    #[test]
    fn abstract_exemption() {
        let t = Thresholds::default();
        let mut blocks = vec![TextBlock::synthetic(0, 1, 72.0, 650.0, 9.0, "Abstract\u{2014}We study things.")];
        blocks.push(TextBlock::synthetic(1, 1, 72.0, 638.0, 9.0, "More abstract text."));
        blocks.push(TextBlock::synthetic(2, 1, 72.0, 600.0, 12.0, "1 Introduction"));
        blocks.push(TextBlock::synthetic(3, 1, 72.0, 40.0, 8.0, "A footnote."));
        let ex = abstract_blocks(&blocks, 12.0, &t);
        assert_eq!(ex, HashSet::from([0, 1]));
    }
}
