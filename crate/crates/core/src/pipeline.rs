//! End-to-end extraction and highlighting.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::bt_assembly::{assemble, emit, remove_captions, to_body_text, BodyText, HyphenDict, LexiconTagger, PosTagger};
use crate::column_layout::{assign_columns, detect_layout, sweep, ColumnLayout, SweepHistogram};
use crate::dom_ingest::html::{Token, Tokenizer};
use crate::dom_ingest::{enumerate_blocks, parse_replica, resolve_absolute, IngestOptions, ReplicaDocument, TextBlock};
use crate::error::{Error, Result};
use crate::nbt_removal::{
    backward_removal, remove_page_numbers, remove_references, remove_sidings, remove_special_lines, shallow_remove, ReferenceMode, Verdict,
};
use crate::sentence_highlight::{inject_colors, locate_sentence, CharStream, HighlightSpan};
use crate::text_metrics::{base_cbd, font_size_mode, group_lines, line_spacing_mode, DocumentStats, PageLineTree, Thresholds};

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub thresholds: Thresholds,
    pub strict: bool,
    pub split_parity: bool,
    /// Keep the abstract and keywords even when set in a smaller font.
    pub abstract_exemption: bool,
    pub references: ReferenceMode,
    pub keep_captions: bool,
    pub dict: Option<HyphenDict>,
}

impl Options {
    pub fn new() -> Self {
        Self { abstract_exemption: true, ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub document: ReplicaDocument,
    /// Every text block, in document order.
    pub blocks: Vec<TextBlock>,
    pub stats: DocumentStats,
    pub histogram: SweepHistogram,
    pub layout: ColumnLayout,
    /// Lines left after all removal, in reading order.
    pub kept: PageLineTree,
    pub verdicts: Vec<Verdict>,
    pub body_text: BodyText,
    pub removed_captions: Vec<String>,
    pub warnings: Vec<String>,
}

impl Extraction {
    pub fn bt_txt(&self) -> String {
        emit(&self.body_text)
    }
}

pub fn extract(html: &[u8], sheets: &[&str], opts: &Options) -> Result<Extraction> {
    extract_with_tagger(html, sheets, opts, &LexiconTagger::new())
}

pub fn extract_with_tagger(html: &[u8], sheets: &[&str], opts: &Options, tagger: &dyn PosTagger) -> Result<Extraction> {
    let t = &opts.thresholds;
    t.validate()?;
    let document = resolve_absolute(parse_replica(html, sheets, IngestOptions { strict: opts.strict })?);
    let mut warnings = document.warnings.clone();
    let blocks = enumerate_blocks(&document);
    let base_fs = font_size_mode(&blocks)?;

    let shallow = shallow_remove(&document, blocks.clone(), base_fs, t, opts.abstract_exemption);
    let mut verdicts = shallow.verdicts;
    let pages: Vec<(u32, f64, f64)> = document.pages.iter().map(|p| (p.number, p.width, p.height)).collect();
    let mut tree = group_lines(&shallow.kept, &pages, t.delta1);
    if tree.line_count() == 0 {
        return Err(Error::NoLines);
    }

    let histogram = sweep(&tree, document.page_width);
    let layout = detect_layout(&tree, document.page_width, t, opts.split_parity)?;
    verdicts.extend(remove_sidings(&mut tree, &layout, t));
    assign_columns(&mut tree, &layout, t.delta1);

    let (base_ls, gap_histogram) = line_spacing_mode(&tree)?;
    let stats = DocumentStats {
        base_fs,
        base_ls,
        base_cbd: base_cbd(&tree)?,
        font_size_histogram: crate::text_metrics::font_size_histogram(&blocks),
        gap_histogram,
    };

    let (refs, found) = remove_references(&mut tree, &stats, &layout, t, opts.references);
    if !found {
        warnings.push("no reference section found".into());
    }
    verdicts.extend(refs);
    verdicts.extend(remove_page_numbers(&mut tree));
    verdicts.extend(remove_special_lines(&mut tree, &layout, t));
    verdicts.extend(backward_removal(&mut tree, &stats, &layout, t));

    let raw = assemble(&tree, &layout, &stats, t, opts.dict.as_ref());
    let mut body_text = to_body_text(&raw);
    let mut removed_captions = Vec::new();
    if !opts.keep_captions {
        let (kept, removed, tag_warnings) = remove_captions(body_text, tagger);
        body_text = kept;
        removed_captions = removed;
        warnings.extend(tag_warnings);
    }

    Ok(Extraction { document, blocks, stats, histogram, layout, kept: tree, verdicts, body_text, removed_captions, warnings })
}

/// The sweep histogram and column layout, without the later stages.
pub fn sweep_debug(html: &[u8], sheets: &[&str], opts: &Options) -> Result<(SweepHistogram, ColumnLayout)> {
    let t = &opts.thresholds;
    let document = resolve_absolute(parse_replica(html, sheets, IngestOptions { strict: opts.strict })?);
    let blocks = enumerate_blocks(&document);
    let base_fs = font_size_mode(&blocks)?;
    let shallow = shallow_remove(&document, blocks, base_fs, t, opts.abstract_exemption);
    let pages: Vec<(u32, f64, f64)> = document.pages.iter().map(|p| (p.number, p.width, p.height)).collect();
    let tree = group_lines(&shallow.kept, &pages, t.delta1);
    let histogram = sweep(&tree, document.page_width);
    let layout = detect_layout(&tree, document.page_width, t, opts.split_parity)?;
    Ok((histogram, layout))
}

/// Colors each `(sentence, color)` request in the replica. Returns the new
/// markup and warnings (repeated sentences are colored at their first
/// occurrence).
pub fn highlight(html: &[u8], sheets: &[&str], opts: &Options, requests: &[(String, String)]) -> Result<(Vec<u8>, Vec<String>)> {
    let ex = extract(html, sheets, opts)?;
    let stream = CharStream::from_tree(&ex.kept);
    let mut warnings = Vec::new();
    let mut spans = Vec::with_capacity(requests.len());
    for (sentence, color) in requests {
        let m = locate_sentence(&stream, sentence)?;
        if m.occurrences > 1 {
            warnings.push(format!("{} occurrences of {sentence:?}; coloring the first", m.occurrences));
        }
        spans.push(HighlightSpan::new(m, color)?);
    }
    let by_index: HashMap<usize, &TextBlock> = ex.blocks.iter().map(|b| (b.index, b)).collect();
    Ok((inject_colors(html, &by_index, &spans)?, warnings))
}

/// `href`s of `<link rel="stylesheet">` elements, in document order.
pub fn linked_stylesheets(html: &[u8]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for tok in Tokenizer::new(html) {
        if let Token::StartTag { name, attrs, .. } = tok? {
            if name != "link" {
                continue;
            }
            let get = |k: &str| attrs.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str());
            let sheet = get("rel").is_some_and(|r| r.split_whitespace().any(|t| t.eq_ignore_ascii_case("stylesheet")));
            if let (true, Some(href)) = (sheet, get("href")) {
                out.push(href.to_string());
            }
        }
    }
    Ok(out)
}

/// Reads the style sheets for a replica file: linked sheets resolved next
/// to it (remote ones are skipped with a warning), then the `extra` paths;
/// a directory stands for its `.css` files in name order.
pub fn load_stylesheets(html_path: &Path, html: &[u8], extra: &[PathBuf]) -> Result<(Vec<String>, Vec<String>)> {
    let mut sheets = Vec::new();
    let mut warnings = Vec::new();
    let base = html_path.parent().unwrap_or(Path::new("."));
    for href in linked_stylesheets(html)? {
        if href.contains("://") {
            warnings.push(format!("skipping remote style sheet {href}"));
            continue;
        }
        let path = base.join(&href);
        match std::fs::read_to_string(&path) {
            Ok(s) => sheets.push(s),
            Err(e) => warnings.push(format!("cannot read linked style sheet {}: {e}", path.display())),
        }
    }
    for p in extra {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "css"))
                .collect();
            files.sort();
            for f in files {
                sheets.push(std::fs::read_to_string(f)?);
            }
        } else {
            sheets.push(std::fs::read_to_string(p)?);
        }
    }
    Ok((sheets, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn links_found_in_order() {
        let html = b"<html><head><link rel=\"stylesheet\" href=\"base.min.css\"/><link rel=icon href=x.png>\
            <link href=\"doc.css\" rel=\"Stylesheet\"></head></html>";
        assert_eq!(linked_stylesheets(html).unwrap(), vec!["base.min.css", "doc.css"]);
    }

    #[test]
    fn empty_input_is_a_format_error() {
        let e = extract(b"", &[], &Options::new()).unwrap_err();
        assert!(e.is_input_format());
    }
}
