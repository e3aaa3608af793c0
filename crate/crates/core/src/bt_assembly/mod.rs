//! Paragraph and sentence reconstruction from the surviving lines, caption
//! removal, and the BT.txt format.

pub mod tagger;

use std::collections::HashSet;
use std::ops::Range;
use std::path::Path;

use serde::Serialize;

use crate::column_layout::{ColumnLayout, ColumnSlot};
use crate::dom_ingest::CharRef;
use crate::error::Result;
use crate::text_metrics::{DocumentStats, Line, LineId, PageLineTree, Thresholds};

pub use tagger::{CoarseTag, LexiconTagger, PosTagger, TagError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sentence {
    pub text: String,
    /// One entry per character of `text`; `None` for inserted join spaces.
    pub provenance: Vec<Option<CharRef>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Paragraph {
    pub sentences: Vec<Sentence>,
}

impl Paragraph {
    pub fn text(&self) -> String {
        self.sentences.iter().map(|s| s.text.as_str()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct BodyText {
    pub paragraphs: Vec<Paragraph>,
}

impl BodyText {
    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.paragraphs.iter().flat_map(|p| p.sentences.iter())
    }
}

/// A paragraph before sentence segmentation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawParagraph {
    pub text: String,
    pub provenance: Vec<Option<CharRef>>,
    pub lines: Vec<LineId>,
}

/// Hyphenated compounds whose line-end hyphen is kept.
#[derive(Debug, Clone, Default)]
pub struct HyphenDict {
    words: HashSet<String>,
}

impl HyphenDict {
    pub fn parse(text: &str) -> Self {
        Self { words: text.lines().map(|l| l.trim().to_lowercase()).filter(|l| !l.is_empty()).collect() }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }
}

/// The line's characters with provenance, whitespace runs collapsed to one
/// space and the ends trimmed.
pub fn line_chars(line: &Line) -> (String, Vec<Option<CharRef>>) {
    let mut text = String::new();
    let mut prov = Vec::new();
    let mut pending_space: Option<CharRef> = None;
    for b in &line.blocks {
        for (t, c) in b.text.chars().enumerate() {
            let r = CharRef { c, b: b.index, t };
            if c.is_whitespace() {
                if !text.is_empty() && pending_space.is_none() {
                    pending_space = Some(r);
                }
                continue;
            }
            if let Some(s) = pending_space.take() {
                text.push(' ');
                prov.push(Some(CharRef { c: ' ', ..s }));
            }
            text.push(c);
            prov.push(Some(r));
        }
    }
    (text, prov)
}

fn is_wrap_hyphen(c: char) -> bool {
    matches!(c, '-' | '\u{2010}' | '\u{00AD}')
}

/// Appends a line to a paragraph, removing a line-end hyphen unless the
/// dictionary lists the compound it forms.
pub fn join_line(par: &mut RawParagraph, text: &str, prov: &[Option<CharRef>], dict: Option<&HyphenDict>) {
    if text.is_empty() {
        return;
    }
    if par.text.is_empty() {
        par.text.push_str(text);
        par.provenance.extend_from_slice(prov);
        return;
    }
    let mut rev = par.text.chars().rev();
    let last = rev.next();
    let before = rev.next();
    let hyphenated = last.is_some_and(is_wrap_hyphen) && before.is_some_and(char::is_alphanumeric);
    if hyphenated {
        let keep = last != Some('\u{00AD}') && dict.is_some_and(|d| d.contains(&compound(&par.text, text)));
        if !keep {
            par.text.pop();
            par.provenance.pop();
        }
    } else {
        par.text.push(' ');
        par.provenance.push(None);
    }
    par.text.push_str(text);
    par.provenance.extend_from_slice(prov);
}

fn compound(left: &str, right: &str) -> String {
    let head = left.rsplit(char::is_whitespace).next().unwrap_or("");
    let tail = right.split(char::is_whitespace).next().unwrap_or("");
    let tail = tail.trim_end_matches(|c: char| !c.is_alphanumeric());
    format!("{head}{tail}")
}

/// Whether a line opens a paragraph: its gap to the line above exceeds the
/// body spacing by more than `gamma4`, or it is indented further than the
/// line above (both relative to their own column's left boundary).
pub fn starts_paragraph(gap_above: Option<f64>, indent: f64, indent_above: f64, stats: &DocumentStats, t: &Thresholds) -> bool {
    gap_above.is_some_and(|g| g > stats.base_ls + t.gamma4) || indent > indent_above + t.delta1
}

/// Joins the kept lines, in reading order, into paragraphs.
pub fn assemble(
    tree: &PageLineTree,
    layout: &ColumnLayout,
    stats: &DocumentStats,
    t: &Thresholds,
    dict: Option<&HyphenDict>,
) -> Vec<RawParagraph> {
    let mut out: Vec<RawParagraph> = Vec::new();
    // page, slot, y and indent of the previous kept line
    let mut above: Option<(u32, ColumnSlot, f64, f64)> = None;
    for page in &tree.pages {
        let model = layout.for_page(page.number);
        for line in &page.lines {
            let (text, prov) = line_chars(line);
            if text.is_empty() {
                continue;
            }
            let slot = line.column.unwrap_or(ColumnSlot::Major(0));
            let indent = line.leftmost_x() - model.column_left(slot);
            let new_par = match above {
                None => true,
                Some((p, s, y, prev_indent)) => {
                    // a spanning region sits directly above every column
                    let stacked = s == slot || s == ColumnSlot::Spanning;
                    let gap = (p == page.number && stacked && y > line.y).then_some(y - line.y);
                    starts_paragraph(gap, indent, prev_indent, stats, t)
                }
            };
            if new_par || out.is_empty() {
                out.push(RawParagraph::default());
            }
            let par = out.last_mut().expect("nonempty");
            join_line(par, &text, &prov, dict);
            par.lines.push(line.id);
            above = Some((page.number, slot, line.y, indent));
        }
    }
    out.retain(|p| !p.text.is_empty());
    out
}

const ABBREVIATIONS: &[&str] = &[
    "fig", "figs", "eq", "eqs", "sec", "secs", "tab", "ref", "refs", "al", "e.g", "i.e", "dr", "mr", "mrs", "ms", "prof", "vs", "cf", "no",
    "resp", "approx",
];

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{2019}' | '\u{201D}')
}

fn is_opener(c: char) -> bool {
    c.is_uppercase() || c.is_ascii_digit() || matches!(c, '"' | '\'' | '\u{201C}' | '\u{2018}')
}

fn guarded(chars: &[char], dot: usize) -> bool {
    let mut start = dot;
    while start > 0 && !chars[start - 1].is_whitespace() {
        start -= 1;
    }
    let token: String = chars[start..dot].iter().collect();
    let token = token.trim_start_matches(['(', '[', '"', '\'', '\u{201C}']);
    let lower = token.to_lowercase();
    if ABBREVIATIONS.contains(&lower.as_str()) {
        return true;
    }
    let mut it = token.chars();
    matches!((it.next(), it.next()), (Some(c), None) if c.is_uppercase())
}

/// Character ranges of the sentences of `text`. A sentence ends after `.`,
/// `!` or `?` (plus closing quotes or brackets) when whitespace and an
/// uppercase letter, digit or opening quote follow; periods of known
/// abbreviations and initials do not end sentences.
pub fn sentence_ranges(text: &str) -> Vec<Range<usize>> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut out = Vec::new();
    let mut start = 0;
    while start < n && chars[start].is_whitespace() {
        start += 1;
    }
    let mut i = start;
    while i < n {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') && !(c == '.' && guarded(&chars, i)) {
            let mut end = i + 1;
            while end < n && is_closer(chars[end]) {
                end += 1;
            }
            let mut next = end;
            while next < n && chars[next].is_whitespace() {
                next += 1;
            }
            if next > end && next < n && is_opener(chars[next]) {
                out.push(start..end);
                start = next;
                i = next;
                continue;
            }
        }
        i += 1;
    }
    let mut end = n;
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if end > start {
        out.push(start..end);
    }
    out
}

/// Sentences of `text`, whitespace-collapsed.
pub fn segment_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    sentence_ranges(text)
        .into_iter()
        .map(|r| chars[r].iter().collect::<String>().split_whitespace().collect::<Vec<_>>().join(" "))
        .collect()
}

pub fn to_body_text(raw: &[RawParagraph]) -> BodyText {
    let paragraphs = raw
        .iter()
        .map(|p| {
            let chars: Vec<char> = p.text.chars().collect();
            let sentences = sentence_ranges(&p.text)
                .into_iter()
                .map(|r| Sentence { text: chars[r.clone()].iter().collect(), provenance: p.provenance[r].to_vec() })
                .collect();
            Paragraph { sentences }
        })
        .filter(|p: &Paragraph| !p.sentences.is_empty())
        .collect();
    BodyText { paragraphs }
}

fn is_label_number(word: &str) -> bool {
    let w = word.strip_suffix(['.', ':']).unwrap_or(word);
    !w.is_empty() && w.split('.').all(|part| !part.is_empty() && part.chars().all(|c| c.is_ascii_digit()))
}

/// Whether the paragraph opens with a table or figure label.
pub fn has_caption_label(text: &str) -> bool {
    let mut words = text.split_whitespace();
    matches!(words.next(), Some("Table" | "Figure" | "Fig.")) && words.next().is_some_and(is_label_number)
}

/// Drops labelled paragraphs whose third word is not a verb. Returns the
/// texts of removed paragraphs and warnings for tagger failures (the
/// paragraph is kept then).
pub fn remove_captions(bt: BodyText, tagger: &dyn PosTagger) -> (BodyText, Vec<String>, Vec<String>) {
    let mut removed = Vec::new();
    let mut warnings = Vec::new();
    let mut kept = Vec::new();
    for p in bt.paragraphs {
        let text = p.text();
        if !has_caption_label(&text) {
            kept.push(p);
            continue;
        }
        let caption = match text.split_whitespace().nth(2) {
            None => true,
            Some(w) => match tagger.tag(w, 2) {
                Ok(tag) => tag != CoarseTag::Verb,
                Err(e) => {
                    warnings.push(format!("caption check skipped: {e}"));
                    false
                }
            },
        };
        if caption {
            removed.push(text);
        } else {
            kept.push(p);
        }
    }
    (BodyText { paragraphs: kept }, removed, warnings)
}

/// BT.txt: one paragraph per line, paragraphs separated by a blank line.
pub fn emit(bt: &BodyText) -> String {
    if bt.paragraphs.is_empty() {
        return String::new();
    }
    let mut out = bt.paragraphs.iter().map(Paragraph::text).collect::<Vec<_>>().join("\n\n");
    out.push('\n');
    out
}
