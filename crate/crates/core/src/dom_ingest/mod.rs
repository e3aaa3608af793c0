//! Reading the HTML replica into a positioned object tree.
//!
//! The replica places every object with CSS classes (one class per distinct
//! coordinate, size, font, ...). Those classes are resolved against the
//! merged style sheets here, so later stages only deal with numbers.
//!
//! Coordinates use a lower-left page origin with `y` increasing upward. The
//! converter positions objects with `bottom`, which already matches; objects
//! placed with `top` are flipped against their parent's height.

pub mod css;
pub mod html;

use std::collections::HashMap;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use css::{parse_declarations, parse_length, parse_matrix, ClassMap};
use html::{Element, Node};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectKind {
    Text(Box<TextBlock>),
    Image,
    /// A drawn rule (`<hr>` or an element with class `ln`).
    Rule,
    Container,
}

impl ObjectKind {
    pub fn is_text(&self) -> bool {
        matches!(self, ObjectKind::Text(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageObject {
    pub kind: ObjectKind,
    pub relative_start: Point,
    pub absolute_start: Point,
    /// `None` for text blocks, whose width is implied by their text.
    pub width: Option<f64>,
    pub height: f64,
    pub children: Vec<PageObject>,
    /// Byte offset of the element's start tag.
    pub offset: usize,
}

/// Where a text block's characters live in the replica bytes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BlockSource {
    /// Between the end of the block's start tag and the start of its end tag.
    pub content: Range<usize>,
    /// One byte range per character of `TextBlock::text`.
    pub char_spans: Vec<Range<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextBlock {
    /// Position in document order: page order, then pre-order within a page.
    pub index: usize,
    pub page: u32,
    pub absolute_start: Point,
    pub height: f64,
    /// Effective size: declared size scaled by the block's transform.
    pub font_size: f64,
    pub font_style: String,
    pub font_color: String,
    pub shadow_color: String,
    pub word_spacing: f64,
    pub letter_spacing: f64,
    /// Transform with its uniform scale divided out.
    pub rotation: [f64; 4],
    pub rotated: bool,
    pub text: String,
    /// `(char offset, width)` of inserted spacing elements.
    pub internal_gaps: Vec<(usize, f64)>,
    pub source: Option<BlockSource>,
}

impl TextBlock {
    /// A block built directly rather than read from markup.
    pub fn synthetic(index: usize, page: u32, x: f64, y: f64, font_size: f64, text: &str) -> Self {
        Self {
            index,
            page,
            absolute_start: Point::new(x, y),
            height: font_size,
            font_size,
            font_style: String::new(),
            font_color: String::new(),
            shadow_color: String::new(),
            word_spacing: 0.0,
            letter_spacing: 0.0,
            rotation: IDENTITY,
            rotated: false,
            text: text.to_string(),
            internal_gaps: Vec::new(),
            source: None,
        }
    }

    pub fn x(&self) -> f64 {
        self.absolute_start.x
    }

    pub fn y(&self) -> f64 {
        self.absolute_start.y
    }

    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    pub fn max_gap(&self) -> f64 {
        self.internal_gaps.iter().map(|g| g.1).fold(0.0, f64::max)
    }
}

pub const IDENTITY: [f64; 4] = [1.0, 0.0, 0.0, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Page {
    pub number: u32,
    pub width: f64,
    pub height: f64,
    pub objects: Vec<PageObject>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaDocument {
    pub pages: Vec<Page>,
    pub page_width: f64,
    pub page_height: f64,
    /// Style sheets referenced by `<link rel="stylesheet">`, in document order.
    pub linked_stylesheets: Vec<String>,
    pub warnings: Vec<String>,
    /// Offsets of objects whose absolute start falls outside the page.
    pub out_of_bounds: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    /// Unresolvable feature classes become errors instead of warnings.
    pub strict: bool,
}

/// A character's provenance: the `t`-th character of block `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharRef {
    pub c: char,
    pub b: usize,
    pub t: usize,
}

impl CharRef {
    pub fn position(&self) -> (usize, usize) {
        (self.b, self.t)
    }
}

#[derive(Debug, Default, Clone)]
struct Features {
    left: Option<f64>,
    bottom: Option<f64>,
    top: Option<f64>,
    width: Option<f64>,
    height: Option<f64>,
    font_size: Option<f64>,
    font_family: Option<String>,
    color: Option<String>,
    shadow: Option<String>,
    word_spacing: Option<f64>,
    letter_spacing: Option<f64>,
    matrix: Option<[f64; 4]>,
    margin_left: Option<f64>,
}

impl Features {
    fn apply(&mut self, prop: &str, value: &str) {
        match prop {
            "left" => self.left = parse_length(value),
            "bottom" => self.bottom = parse_length(value),
            "top" => self.top = parse_length(value),
            "width" => self.width = parse_length(value),
            "height" => self.height = parse_length(value),
            "font-size" => self.font_size = parse_length(value),
            "font-family" => self.font_family = Some(value.to_string()),
            "color" => self.color = Some(value.to_string()),
            "text-shadow" => self.shadow = Some(value.to_string()),
            "word-spacing" => self.word_spacing = parse_length(value),
            "letter-spacing" => self.letter_spacing = parse_length(value),
            "margin-left" => self.margin_left = parse_length(value),
            "transform" | "-webkit-transform" | "-ms-transform" => {
                if let Some(m) = parse_matrix(value) {
                    self.matrix = Some(m);
                }
            }
            _ => {}
        }
    }
}

/// Class-name prefixes the converter uses for numeric or font features.
const FEATURE_PREFIXES: &[&str] = &["ff", "fs", "fc", "sc", "ls", "ws", "x", "y", "h", "w", "m", "_"];

fn is_feature_class(class: &str) -> bool {
    FEATURE_PREFIXES
        .iter()
        .any(|p| class.strip_prefix(p).is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_hexdigit())))
}

struct Ingest<'a> {
    src: &'a [u8],
    classes: ClassMap,
    options: IngestOptions,
    warnings: Vec<String>,
}

impl Ingest<'_> {
    fn features(&mut self, el: &Element) -> Result<Features> {
        let mut f = Features::default();
        let mut tokens: Vec<String> = Vec::new();
        for class in el.classes() {
            tokens.push(class.to_string());
        }
        for class in &tokens {
            match self.classes.get(class) {
                Some(decls) => {
                    for (k, v) in decls {
                        f.apply(k, v);
                    }
                }
                None if is_feature_class(class) => {
                    if self.options.strict {
                        return Err(Error::UnresolvedClass { class: class.clone(), offset: el.start_tag.start });
                    }
                    self.warnings.push(format!("unresolved class `{class}` at byte {}; using defaults", el.start_tag.start));
                }
                None => {}
            }
        }
        if let Some(style) = el.attr("style") {
            for (k, v) in parse_declarations(style) {
                f.apply(&k, &v);
            }
        }
        // Font and colour tokens fall back to the class names themselves.
        if f.font_family.is_none() {
            f.font_family = tokens.iter().find(|c| c.starts_with("ff")).cloned();
        }
        if f.color.is_none() {
            f.color = tokens.iter().find(|c| c.starts_with("fc")).cloned();
        }
        if f.shadow.is_none() {
            f.shadow = tokens.iter().find(|c| c.starts_with("sc")).cloned();
        }
        Ok(f)
    }

    fn relative_start(f: &Features, parent_height: f64, own_height: f64) -> Point {
        let x = f.left.unwrap_or(0.0);
        let y = match (f.bottom, f.top) {
            (Some(b), _) => b,
            (None, Some(t)) => parent_height - t - own_height,
            (None, None) => 0.0,
        };
        Point::new(x, y)
    }

    fn convert_children(&mut self, el: &Element, parent: (f64, f64), page: u32, out: &mut Vec<PageObject>) -> Result<()> {
        for child in &el.children {
            match child {
                Node::Element(c) => {
                    if let Some(obj) = self.convert(c, parent, page)? {
                        out.push(obj);
                    }
                }
                Node::Text(range) => {
                    let raw = &self.src[range.clone()];
                    if raw.iter().any(|b| !b.is_ascii_whitespace()) {
                        self.warnings.push(format!("text outside a text block at byte {} ignored", range.start));
                    }
                }
            }
        }
        Ok(())
    }

    fn convert(&mut self, el: &Element, parent: (f64, f64), page: u32) -> Result<Option<PageObject>> {
        if matches!(el.name.as_str(), "script" | "style" | "noscript" | "link" | "meta") || el.has_class("pi") {
            return Ok(None);
        }
        let f = self.features(el)?;
        if el.name == "img" {
            let width = f.width.or_else(|| el.attr("width").and_then(parse_length)).unwrap_or(0.0);
            let height = f.height.or_else(|| el.attr("height").and_then(parse_length)).unwrap_or(0.0);
            let rel = Self::relative_start(&f, parent.1, height);
            return Ok(Some(PageObject {
                kind: ObjectKind::Image,
                relative_start: rel,
                absolute_start: rel,
                width: Some(width),
                height,
                children: Vec::new(),
                offset: el.start_tag.start,
            }));
        }
        if el.name == "hr" || el.has_class("ln") {
            let width = f.width.unwrap_or(0.0);
            let height = f.height.unwrap_or(0.0);
            let rel = Self::relative_start(&f, parent.1, height);
            return Ok(Some(PageObject {
                kind: ObjectKind::Rule,
                relative_start: rel,
                absolute_start: rel,
                width: Some(width),
                height,
                children: Vec::new(),
                offset: el.start_tag.start,
            }));
        }
        if el.name == "div" && el.has_class("t") {
            let height = f.height.unwrap_or(0.0);
            let rel = Self::relative_start(&f, parent.1, height);
            let block = self.text_block(el, &f, page)?;
            return Ok(Some(PageObject {
                kind: ObjectKind::Text(Box::new(block)),
                relative_start: rel,
                absolute_start: rel,
                width: None,
                height,
                children: Vec::new(),
                offset: el.start_tag.start,
            }));
        }
        let width = f.width.unwrap_or(parent.0);
        let height = f.height.unwrap_or(parent.1);
        let rel = Self::relative_start(&f, parent.1, height);
        let mut children = Vec::new();
        self.convert_children(el, (width, height), page, &mut children)?;
        Ok(Some(PageObject {
            kind: ObjectKind::Container,
            relative_start: rel,
            absolute_start: rel,
            width: Some(width),
            height,
            children,
            offset: el.start_tag.start,
        }))
    }

    fn text_block(&mut self, el: &Element, f: &Features, page: u32) -> Result<TextBlock> {
        let mut text = String::new();
        let mut spans = Vec::new();
        let mut gaps = Vec::new();
        self.collect_text(el, &mut text, &mut spans, &mut gaps)?;

        let matrix = f.matrix.unwrap_or(IDENTITY);
        let det = matrix[0] * matrix[3] - matrix[1] * matrix[2];
        let scale = det.abs().sqrt();
        let (rotation, scale) = if scale > 0.0 {
            (matrix.map(|v| v / scale), scale)
        } else {
            self.warnings.push(format!("degenerate transform at byte {}", el.start_tag.start));
            (IDENTITY, 1.0)
        };
        let rotated = rotation.iter().zip(IDENTITY).any(|(a, b)| (a - b).abs() > 1e-6);

        Ok(TextBlock {
            index: 0,
            page,
            absolute_start: Point::default(),
            height: f.height.unwrap_or(0.0),
            font_size: f.font_size.unwrap_or(0.0) * scale,
            font_style: f.font_family.clone().unwrap_or_default(),
            font_color: f.color.clone().unwrap_or_default(),
            shadow_color: f.shadow.clone().unwrap_or_default(),
            word_spacing: f.word_spacing.unwrap_or(0.0),
            letter_spacing: f.letter_spacing.unwrap_or(0.0),
            rotation,
            rotated,
            text,
            internal_gaps: gaps,
            source: Some(BlockSource { content: el.content_start()..el.content_end, char_spans: spans }),
        })
    }

    fn collect_text(&mut self, el: &Element, text: &mut String, spans: &mut Vec<Range<usize>>, gaps: &mut Vec<(usize, f64)>) -> Result<()> {
        for child in &el.children {
            match child {
                Node::Text(range) => {
                    for (c, span) in html::decode_text(self.src, range.clone()) {
                        let c = if matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}') { ' ' } else { c };
                        text.push(c);
                        spans.push(span);
                    }
                }
                Node::Element(c) => {
                    if c.has_class("_") || c.classes().any(|k| k.starts_with('_') && k.len() > 1) {
                        let g = self.features(c)?;
                        if let Some(w) = g.width.or(g.margin_left) {
                            gaps.push((spans.len(), w));
                        }
                    }
                    self.collect_text(c, text, spans, gaps)?;
                }
            }
        }
        Ok(())
    }
}

fn find_by_id<'e>(nodes: &'e [Node], id: &str) -> Option<&'e Element> {
    for n in nodes {
        if let Node::Element(el) = n {
            if el.attr("id") == Some(id) {
                return Some(el);
            }
            if let Some(found) = find_by_id(&el.children, id) {
                return Some(found);
            }
        }
    }
    None
}

fn collect_styles(nodes: &[Node], src: &[u8], sheets: &mut Vec<String>, links: &mut Vec<String>) {
    for n in nodes {
        if let Node::Element(el) = n {
            if el.name == "style" {
                if let Some(r) = &el.raw_text {
                    sheets.push(String::from_utf8_lossy(&src[r.clone()]).into_owned());
                }
            } else if el.name == "link" && el.attr("rel").is_some_and(|r| r.eq_ignore_ascii_case("stylesheet")) {
                if let Some(href) = el.attr("href") {
                    links.push(href.to_string());
                }
            }
            collect_styles(&el.children, src, sheets, links);
        }
    }
}

fn collect_pages<'e>(el: &'e Element, out: &mut Vec<&'e Element>) {
    for n in &el.children {
        if let Node::Element(c) = n {
            if c.has_class("pf") {
                out.push(c);
            } else {
                collect_pages(c, out);
            }
        }
    }
}

fn parse_page_number(el: &Element, ordinal: usize) -> u32 {
    // the converter writes page numbers in hexadecimal
    if let Some(v) = el.attr("data-page-no") {
        if let Ok(n) = u32::from_str_radix(v.trim(), 16) {
            return n;
        }
    }
    if let Some(id) = el.attr("id").and_then(|i| i.strip_prefix("pf")) {
        if let Ok(n) = u32::from_str_radix(id, 16) {
            return n;
        }
    }
    ordinal as u32 + 1
}

/// Parses the replica. `external_sheets` are merged first (in order), then
/// `<style>` elements in document order; later rules win.
pub fn parse_replica(html_bytes: &[u8], external_sheets: &[&str], options: IngestOptions) -> Result<ReplicaDocument> {
    let mut warnings = Vec::new();
    let dom = html::parse_dom(html_bytes, &mut warnings)?;

    let mut embedded = Vec::new();
    let mut links = Vec::new();
    collect_styles(&dom, html_bytes, &mut embedded, &mut links);
    let mut classes = ClassMap::new();
    for sheet in external_sheets {
        classes.merge_sheet(sheet);
    }
    for sheet in &embedded {
        classes.merge_sheet(sheet);
    }

    let container = find_by_id(&dom, "page-container").ok_or_else(|| Error::Format("missing page-container root".into()))?;
    let mut page_elements = Vec::new();
    collect_pages(container, &mut page_elements);

    let mut ingest = Ingest { src: html_bytes, classes, options, warnings };
    let mut pages = Vec::with_capacity(page_elements.len());
    for (ordinal, el) in page_elements.iter().enumerate() {
        let number = parse_page_number(el, ordinal);
        let f = ingest.features(el)?;
        let width = f.width.unwrap_or(0.0);
        let height = f.height.unwrap_or(0.0);
        let mut objects = Vec::new();
        ingest.convert_children(el, (width, height), number, &mut objects)?;
        pages.push(Page { number, width, height, objects });
    }
    pages.sort_by_key(|p| p.number);
    if let Some(w) = pages.windows(2).find(|w| w[0].number == w[1].number) {
        return Err(Error::Format(format!("duplicate page number {}", w[0].number)));
    }

    let page_width = pages.iter().map(|p| p.width).fold(0.0, f64::max);
    let page_height = pages.iter().map(|p| p.height).fold(0.0, f64::max);
    if !pages.is_empty() && (page_width <= 0.0 || page_height <= 0.0) {
        return Err(Error::Format("page size is not positive".into()));
    }

    let mut doc =
        ReplicaDocument { pages, page_width, page_height, linked_stylesheets: links, warnings: ingest.warnings, out_of_bounds: Vec::new() };
    number_blocks(&mut doc);
    Ok(doc)
}

fn number_blocks(doc: &mut ReplicaDocument) {
    fn walk(objs: &mut [PageObject], next: &mut usize, page: u32) {
        for o in objs {
            if let ObjectKind::Text(b) = &mut o.kind {
                b.index = *next;
                b.page = page;
                *next += 1;
            }
            walk(&mut o.children, next, page);
        }
    }
    let mut next = 0;
    for page in &mut doc.pages {
        walk(&mut page.objects, &mut next, page.number);
    }
}

/// Assigns absolute starting points breadth-first: first-level objects keep
/// their coordinates, deeper objects add their parent's absolute start.
pub fn resolve_absolute(mut doc: ReplicaDocument) -> ReplicaDocument {
    let mut out_of_bounds = Vec::new();
    for page in &mut doc.pages {
        let (w, h) = (page.width, page.height);
        let mut queue: std::collections::VecDeque<(&mut PageObject, Point)> =
            page.objects.iter_mut().map(|o| (o, Point::default())).collect();
        while let Some((obj, parent_abs)) = queue.pop_front() {
            obj.absolute_start = obj.relative_start + parent_abs;
            let abs = obj.absolute_start;
            if !(0.0..=w).contains(&abs.x) || !(0.0..=h).contains(&abs.y) {
                out_of_bounds.push(obj.offset);
            }
            if let ObjectKind::Text(b) = &mut obj.kind {
                b.absolute_start = abs;
            }
            for child in obj.children.iter_mut() {
                queue.push_back((child, abs));
            }
        }
    }
    out_of_bounds.sort_unstable();
    doc.out_of_bounds = out_of_bounds;
    doc
}

/// Text blocks in document order; the position of a block in this list is its
/// `index`.
pub fn enumerate_blocks(doc: &ReplicaDocument) -> Vec<TextBlock> {
    fn walk(objs: &[PageObject], out: &mut Vec<TextBlock>) {
        for o in objs {
            if let ObjectKind::Text(b) = &o.kind {
                out.push((**b).clone());
            }
            walk(&o.children, out);
        }
    }
    let mut out = Vec::new();
    for page in &doc.pages {
        walk(&page.objects, &mut out);
    }
    out
}

/// Lookup from block index to the byte layout of its characters.
pub fn block_sources(doc: &ReplicaDocument) -> HashMap<usize, BlockSource> {
    enumerate_blocks(doc).into_iter().filter_map(|b| b.source.map(|s| (b.index, s))).collect()
}
