//! Locating body-text sentences in the replica and coloring them in place.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::bt_assembly::line_chars;
use crate::dom_ingest::html::{decode_text, Token, Tokenizer};
use crate::dom_ingest::{CharRef, TextBlock};
use crate::error::{Error, Result};
use crate::text_metrics::PageLineTree;

pub const HIGHLIGHT_CLASS: &str = "pdfbot-hl";

#[derive(Debug, Clone, Copy, PartialEq)]
struct Item {
    c: char,
    r: Option<CharRef>,
    /// A line-end hyphen, which the body text may have dropped.
    optional: bool,
}

/// The body-text character sequence: kept lines in reading order, with one
/// space between lines except after a line-end hyphen.
#[derive(Debug, Clone, Default)]
pub struct CharStream {
    items: Vec<Item>,
}

impl CharStream {
    pub fn from_tree(tree: &PageLineTree) -> Self {
        let mut items: Vec<Item> = Vec::new();
        for line in tree.lines() {
            let (text, prov) = line_chars(line);
            if text.is_empty() {
                continue;
            }
            if !items.is_empty() {
                let n = items.len();
                let hyphen = matches!(items[n - 1].c, '-' | '\u{2010}' | '\u{00AD}') && n >= 2 && items[n - 2].c.is_alphanumeric();
                if hyphen {
                    items[n - 1].optional = true;
                } else {
                    items.push(Item { c: ' ', r: None, optional: false });
                }
            }
            items.extend(text.chars().zip(prov).map(|(c, r)| Item { c, r, optional: false }));
        }
        Self { items }
    }

    pub fn text(&self) -> String {
        self.items.iter().map(|i| i.c).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Stream positions matched by `pattern` starting at `start`.
    fn match_at(&self, start: usize, pattern: &[char]) -> Option<Vec<usize>> {
        fn go(items: &[Item], i: usize, p: &[char], j: usize, acc: &mut Vec<usize>) -> bool {
            if j == p.len() {
                return true;
            }
            let Some(it) = items.get(i) else { return false };
            if it.c == p[j] {
                acc.push(i);
                if go(items, i + 1, p, j + 1, acc) {
                    return true;
                }
                acc.pop();
            }
            it.optional && j > 0 && go(items, i + 1, p, j, acc)
        }
        let mut acc = Vec::with_capacity(pattern.len());
        go(&self.items, start, pattern, 0, &mut acc).then_some(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceMatch {
    /// Provenance of the matched characters, in stream order.
    pub chars: Vec<CharRef>,
    pub occurrences: usize,
}

impl SentenceMatch {
    pub fn start(&self) -> CharRef {
        self.chars[0]
    }

    pub fn end(&self) -> CharRef {
        self.chars[self.chars.len() - 1]
    }
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Finds the first occurrence of `sentence` (whitespace-normalized).
pub fn locate_sentence(stream: &CharStream, sentence: &str) -> Result<SentenceMatch> {
    let pattern: Vec<char> = normalize(sentence).chars().collect();
    if pattern.is_empty() {
        return Err(Error::SentenceAbsent);
    }
    let mut first = None;
    let mut occurrences = 0;
    for start in 0..stream.items.len() {
        if let Some(hit) = stream.match_at(start, &pattern) {
            occurrences += 1;
            if first.is_none() {
                first = Some(hit);
            }
        }
    }
    let hit = first.ok_or(Error::SentenceAbsent)?;
    let chars: Vec<CharRef> = hit.into_iter().filter_map(|i| stream.items[i].r).collect();
    if chars.is_empty() {
        return Err(Error::SentenceAbsent);
    }
    Ok(SentenceMatch { chars, occurrences })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighlightSpan {
    pub start: CharRef,
    pub end: CharRef,
    pub color: String,
    pub chars: Vec<CharRef>,
}

impl HighlightSpan {
    pub fn new(m: SentenceMatch, color: &str) -> Result<Self> {
        validate_color(color)?;
        Ok(Self { start: m.start(), end: m.end(), color: color.to_string(), chars: m.chars })
    }
}

fn validate_color(color: &str) -> Result<()> {
    let ok = !color.trim().is_empty()
        && color.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '#' | '(' | ')' | ',' | '.' | '%' | ' ' | '-'));
    if ok {
        Ok(())
    } else {
        Err(Error::Format(format!("invalid color {color:?}")))
    }
}

fn open_tag(color: &str) -> String {
    format!("<span class=\"{HIGHLIGHT_CLASS}\" style=\"color:{color}\">")
}

const CLOSE_TAG: &str = "</span>";

/// Wraps each span's characters in colored tags. A block whose text is
/// covered entirely gets its whole content wrapped; otherwise each run of
/// byte-adjacent characters is wrapped. Every other byte is unchanged.
pub fn inject_colors(html: &[u8], blocks: &HashMap<usize, &TextBlock>, spans: &[HighlightSpan]) -> Result<Vec<u8>> {
    let mut seen = HashSet::new();
    for s in spans {
        for r in &s.chars {
            if !seen.insert(r.position()) {
                return Err(Error::OverlappingHighlights(format!("block {} char {}", r.b, r.t)));
            }
        }
    }
    // (offset, 0 = close / 1 = open, tag)
    let mut edits: Vec<(usize, u8, String)> = Vec::new();
    for s in spans {
        let mut per_block: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for r in &s.chars {
            let e = per_block.entry(r.b).or_insert((r.t, r.t));
            e.0 = e.0.min(r.t);
            e.1 = e.1.max(r.t);
        }
        for (b, (lo, hi)) in per_block {
            let block = blocks.get(&b).ok_or_else(|| Error::Consistency(format!("no block {b}")))?;
            let src = block.source.as_ref().ok_or_else(|| Error::Consistency(format!("block {b} has no source")))?;
            if hi >= src.char_spans.len() {
                return Err(Error::Consistency(format!("char {hi} beyond block {b}")));
            }
            let chars: Vec<char> = block.text.chars().collect();
            let first = chars.iter().position(|c| !c.is_whitespace()).unwrap_or(0);
            let last = chars.iter().rposition(|c| !c.is_whitespace()).unwrap_or(0);
            if lo <= first && hi >= last {
                edits.push((src.content.start, 1, open_tag(&s.color)));
                edits.push((src.content.end, 0, CLOSE_TAG.to_string()));
                continue;
            }
            let mut run_start = lo;
            for t in lo..=hi {
                let ends_run = t == hi || src.char_spans[t].end != src.char_spans[t + 1].start;
                if ends_run {
                    edits.push((src.char_spans[run_start].start, 1, open_tag(&s.color)));
                    edits.push((src.char_spans[t].end, 0, CLOSE_TAG.to_string()));
                    run_start = t + 1;
                }
            }
        }
    }
    edits.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out = Vec::with_capacity(html.len() + edits.len() * 48);
    let mut pos = 0;
    for (offset, _, tag) in edits {
        if offset > html.len() {
            return Err(Error::Consistency(format!("edit offset {offset} beyond document")));
        }
        out.extend_from_slice(&html[pos..offset]);
        out.extend_from_slice(tag.as_bytes());
        pos = offset;
    }
    out.extend_from_slice(&html[pos..]);
    Ok(out)
}

fn is_highlight_tag(attrs: &[(String, String)]) -> bool {
    attrs.iter().any(|(k, v)| k == "class" && v.split_whitespace().any(|c| c == HIGHLIGHT_CLASS))
}

/// Removes highlight tags and their matching end tags.
pub fn strip_highlights(html: &[u8]) -> Result<Vec<u8>> {
    let mut cut = Vec::new();
    let mut stack = Vec::new();
    for tok in Tokenizer::new(html) {
        match tok? {
            Token::StartTag { name, attrs, self_closing, range } if name == "span" && !self_closing => {
                let hl = is_highlight_tag(&attrs);
                if hl {
                    cut.push(range);
                }
                stack.push(hl);
            }
            Token::EndTag { name, range } if name == "span" && stack.pop() == Some(true) => {
                cut.push(range);
            }
            _ => {}
        }
    }
    cut.sort_by_key(|r| r.start);
    let mut out = Vec::with_capacity(html.len());
    let mut pos = 0;
    for r in cut {
        out.extend_from_slice(&html[pos..r.start]);
        pos = r.end;
    }
    out.extend_from_slice(&html[pos..]);
    Ok(out)
}

/// Text content of the markup, outside tags, scripts and styles.
pub fn visible_text(html: &[u8]) -> Result<String> {
    let mut out = String::new();
    for tok in Tokenizer::new(html) {
        if let Token::Text { range } = tok? {
            out.extend(decode_text(html, range).into_iter().map(|(c, _)| c));
        }
    }
    Ok(out)
}
