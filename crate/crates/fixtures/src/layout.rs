//! Flows article content into columns and pages, recording the body text
//! that an ideal extraction returns.

use crate::replica::{Element, Font, Piece, ReplicaWriter, TextRun, Transform, PAGE_WIDTH};

pub const BODY_SIZE: f64 = 12.0;
pub const LINE_STEP: f64 = 14.0;
pub const TOP: f64 = 720.0;
pub const BOTTOM: f64 = 72.0;
pub const INDENT: f64 = 15.0;
const CHAR_WIDTH: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gutter {
    Left,
    Right,
    /// One block per line holding both numbers, far apart.
    Paired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyphenation {
    Off,
    /// Split long words at the line end.
    Split,
    /// Also break hyphenated compounds after their first hyphen.
    Compounds,
}

#[derive(Debug, Clone)]
pub struct Style {
    /// Left edge of each column.
    pub lefts: Vec<f64>,
    /// Characters per full line.
    pub wrap: usize,
    /// Paragraphs separated by a blank line instead of an indent.
    pub flush_paragraphs: bool,
    pub hyphenation: Hyphenation,
    /// Declare sizes four times larger and scale them back with a matrix.
    pub scaled_fonts: bool,
    /// Split some lines into two blocks.
    pub split_blocks: bool,
}

impl Style {
    pub fn columns(lefts: &[f64], wrap: usize) -> Self {
        Self {
            lefts: lefts.to_vec(),
            wrap,
            flush_paragraphs: false,
            hyphenation: Hyphenation::Off,
            scaled_fonts: false,
            split_blocks: false,
        }
    }

    pub fn column_width(&self) -> f64 {
        self.wrap as f64 * CHAR_WIDTH
    }
}

#[derive(Debug, Clone, Default)]
pub struct Furniture {
    pub running_header: Option<String>,
    pub page_numbers: bool,
    pub gutters: Vec<Gutter>,
    pub watermark: Option<String>,
    pub side_stamp: Option<String>,
}

/// Per-page column lefts that differ from the style's (odd/even layouts).
pub type LeftsForPage = fn(page: usize) -> Option<Vec<f64>>;

pub struct ArticleBuilder {
    style: Style,
    furniture: Furniture,
    lefts_for_page: Option<LeftsForPage>,
    pages: Vec<Vec<Element>>,
    /// Baselines of numbered lines per page.
    numbered: Vec<Vec<f64>>,
    page: usize,
    col: usize,
    y: f64,
    first_page_top: f64,
    after_heading: bool,
    heading_opened_column: bool,
    /// Page and column of the last body line placed.
    last_body: Option<(usize, usize)>,
    line_counter: usize,
    footnotes_on_page: usize,
    /// Flush-left lines per column left edge.
    flush_counts: std::collections::BTreeMap<(usize, u64), usize>,
    gold: Vec<String>,
    lines: Vec<String>,
    tables: Vec<String>,
    dict: Vec<String>,
    violations: Vec<String>,
}

pub struct Article {
    pub html: String,
    pub stylesheet: String,
    pub gold: Vec<String>,
    /// Lines that survive line-level removal, in reading order: body text
    /// and captions.
    pub lines: Vec<String>,
    pub tables: Vec<String>,
    pub dict: Vec<String>,
    /// Places where the layout breaks an assumption of the extractor.
    pub violations: Vec<String>,
    pub pages: usize,
    /// Column left edges of each page.
    pub page_lefts: Vec<Vec<f64>>,
}

impl Article {
    pub fn gold_txt(&self) -> String {
        lines_file(&self.gold, "\n\n")
    }

    pub fn tables_txt(&self) -> String {
        lines_file(&self.tables, "\n")
    }

    pub fn dict_txt(&self) -> String {
        lines_file(&self.dict, "\n")
    }
}

fn lines_file(items: &[String], sep: &str) -> String {
    if items.is_empty() {
        String::new()
    } else {
        items.join(sep) + "\n"
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic()
}

impl ArticleBuilder {
    pub fn new(style: Style, furniture: Furniture) -> Self {
        Self {
            style,
            furniture,
            lefts_for_page: None,
            pages: vec![Vec::new()],
            numbered: vec![Vec::new()],
            page: 0,
            col: 0,
            y: TOP,
            first_page_top: TOP,
            after_heading: false,
            heading_opened_column: false,
            last_body: None,
            line_counter: 0,
            footnotes_on_page: 0,
            flush_counts: Default::default(),
            gold: Vec::new(),
            lines: Vec::new(),
            tables: Vec::new(),
            dict: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn with_page_lefts(mut self, f: LeftsForPage) -> Self {
        self.lefts_for_page = Some(f);
        self
    }

    fn lefts(&self) -> Vec<f64> {
        self.lefts_at(self.page)
    }

    fn lefts_at(&self, page: usize) -> Vec<f64> {
        self.lefts_for_page.and_then(|f| f(page)).unwrap_or_else(|| self.style.lefts.clone())
    }

    fn left(&self) -> f64 {
        self.lefts()[self.col]
    }

    fn col_top(&self) -> f64 {
        if self.page == 0 {
            self.first_page_top
        } else {
            TOP
        }
    }

    fn at_top(&self) -> bool {
        self.y == self.col_top()
    }

    pub fn next_column(&mut self) {
        self.col += 1;
        if self.col >= self.style.lefts.len() {
            self.col = 0;
            self.page += 1;
            self.pages.push(Vec::new());
            self.numbered.push(Vec::new());
            self.footnotes_on_page = 0;
        }
        self.y = self.col_top();
    }

    fn skip(&mut self, px: f64) {
        if !self.at_top() {
            self.y -= px;
        }
    }

    fn push(&mut self, e: Element) {
        self.pages[self.page].push(e);
    }

    fn run(&self, x: f64, y: f64, size: f64, font: Font, pieces: Vec<Piece>) -> TextRun {
        let transform = if self.style.scaled_fonts { Transform::Scaled(4.0) } else { Transform::Identity };
        TextRun { x, y, size, font, transform, pieces }
    }

    /// Places one line of body-sized text at `indent` from the column left.
    fn line(&mut self, indent: f64, text: &str, font: Font) {
        if self.y < BOTTOM {
            self.next_column();
        }
        let (x, y) = (self.left() + indent, self.y);
        self.line_counter += 1;
        let split = self.style.split_blocks && self.line_counter % 5 == 3;
        match text.char_indices().filter(|&(_, c)| c == ' ').nth(2).filter(|_| split) {
            Some((at, _)) => {
                let (head, tail) = text.split_at(at + 1);
                let dx = head.chars().count() as f64 * CHAR_WIDTH;
                let a = self.run(x, y, BODY_SIZE, font, pieces(head, self.line_counter));
                let b = self.run(x + dx, y, BODY_SIZE, Font::Italic, pieces(tail, self.line_counter + 1));
                self.push(Element::Text(a));
                self.push(Element::Text(b));
            }
            None => {
                let r = self.run(x, y, BODY_SIZE, font, pieces(text, self.line_counter));
                self.push(Element::Text(r));
            }
        }
        if indent == 0.0 {
            let parity = if self.lefts_for_page.is_some() { self.page % 2 } else { 0 };
            *self.flush_counts.entry((parity, x.to_bits())).or_default() += 1;
        }
        self.numbered[self.page].push(y);
        self.y -= LINE_STEP;
    }

    /// Title, authors and an optional abstract across the top of page one.
    pub fn front_matter(&mut self, title: &str, authors: &[&str], abstract_text: Option<&str>) {
        let centered = |len: usize, size: f64| (PAGE_WIDTH - len as f64 * size * 0.5) / 2.0;
        let mut y = 740.0;
        let t = self.run(centered(title.chars().count(), 17.0), y, 17.0, Font::Bold, vec![Piece::Text(title.into())]);
        self.push(Element::Text(t));
        y -= 24.0;
        for a in authors {
            let r = self.run(centered(a.chars().count(), 11.0), y, 11.0, Font::Regular, vec![Piece::Text(a.to_string())]);
            self.push(Element::Text(r));
            y -= 13.0;
        }
        if let Some(text) = abstract_text {
            y -= 12.0;
            let left = self.style.lefts[0];
            let width = ((PAGE_WIDTH - 2.0 * left) / 4.5) as usize;
            for l in wrap_words(text, width, 0, Hyphenation::Off) {
                let r = self.run(left, y, 9.0, Font::Regular, pieces(&l, 0));
                self.push(Element::Text(r));
                self.lines.push(l);
                y -= 12.0;
            }
            self.gold.push(text.to_string());
            self.last_body = Some((0, 0));
        }
        self.first_page_top = y - 20.0;
        self.y = self.first_page_top;
    }

    pub fn heading(&mut self, text: &str) {
        self.skip(LINE_STEP);
        // keep the heading with two lines of what follows
        if self.y - 3.0 * LINE_STEP < BOTTOM {
            self.next_column();
        }
        self.heading_opened_column = self.at_top();
        self.line(0.0, text, Font::Bold);
        self.y -= LINE_STEP;
        self.after_heading = true;
    }

    pub fn paragraph(&mut self, text: &str) {
        // an indent is the only cue left when the heading above opened the column
        let flush = self.style.flush_paragraphs || self.after_heading && !self.heading_opened_column;
        if self.style.flush_paragraphs && !self.after_heading {
            self.skip(LINE_STEP);
        }
        let indent = if flush { 0.0 } else { INDENT };
        let first_cut = (indent / CHAR_WIDTH).ceil() as usize;
        let lines = wrap_words(text, self.style.wrap, first_cut, self.style.hyphenation);
        // no single opening line at the foot of a column
        if self.y < BOTTOM || lines.len() > 1 && self.y - LINE_STEP < BOTTOM {
            self.next_column();
        }
        if flush && self.last_body.is_some_and(|b| b != (self.page, self.col)) {
            self.violations.push(format!("flush paragraph opens a column: {}", preview(text)));
        }
        if lines.len() == 1 && !flush {
            self.violations.push(format!("one-line indented paragraph: {}", preview(text)));
        }
        for (i, l) in lines.iter().enumerate() {
            self.line(if i == 0 { indent } else { 0.0 }, l, Font::Regular);
        }
        self.lines.extend(lines);
        if self.style.hyphenation == Hyphenation::Compounds {
            for w in text.split_whitespace() {
                let w = w.trim_matches(|c: char| !c.is_alphanumeric());
                if w.contains('-') && !self.dict.iter().any(|d| d == w) {
                    self.dict.push(w.to_string());
                }
            }
        }
        self.gold.push(text.to_string());
        self.after_heading = false;
        self.last_body = Some((self.page, self.col));
    }

    /// One paragraph interrupted by a sparse equation; the text after it
    /// resumes flush left.
    pub fn paragraph_around_equation(&mut self, before: &str, symbols: &[&str], number: &str, after: &str) {
        let gold = self.gold.len();
        self.paragraph(before);
        self.sparse_equation(symbols, number);
        self.after_heading = true;
        self.paragraph(after);
        self.gold.truncate(gold);
        self.gold.push(format!("{before} {after}"));
    }

    /// A line of single-character blocks, indented but sparse.
    pub fn sparse_equation(&mut self, symbols: &[&str], number: &str) {
        self.skip(10.0);
        if self.y < BOTTOM {
            self.next_column();
        }
        let (left, y) = (self.left(), self.y);
        for (i, s) in symbols.iter().enumerate() {
            let r = self.run(left + 30.0 + 9.0 * i as f64, y, BODY_SIZE, Font::Italic, vec![Piece::Text(s.to_string())]);
            self.push(Element::Text(r));
        }
        let r = self.run(left + self.style.column_width() - 20.0, y, BODY_SIZE, Font::Regular, vec![Piece::Text(number.into())]);
        self.push(Element::Text(r));
        self.numbered[self.page].push(y);
        self.y -= LINE_STEP + 10.0;
        self.after_heading = false;
    }

    /// A centered equation typeset as one block.
    pub fn display_equation(&mut self, formula: &str, number: &str) {
        self.skip(10.0);
        if self.y < BOTTOM {
            self.next_column();
        }
        let (left, y) = (self.left(), self.y);
        let r = self.run(left + 60.0, y, BODY_SIZE, Font::Italic, vec![Piece::Text(formula.into())]);
        self.push(Element::Text(r));
        let r = self.run(left + self.style.column_width() - 20.0, y, BODY_SIZE, Font::Regular, vec![Piece::Text(number.into())]);
        self.push(Element::Text(r));
        self.numbered[self.page].push(y);
        self.y -= LINE_STEP + 10.0;
        self.after_heading = false;
    }

    /// Flush-left caption lines; expected to be dropped.
    pub fn caption(&mut self, text: &str) {
        self.caption_above(text, 0.0);
    }

    /// A caption kept in one column with `below` units of material after it.
    fn caption_above(&mut self, text: &str, below: f64) {
        let lines = wrap_words(text, self.style.wrap, 0, Hyphenation::Off);
        self.skip(LINE_STEP);
        if self.y - LINE_STEP * (lines.len() - 1) as f64 - below < BOTTOM {
            self.next_column();
        }
        if self.last_body.is_some_and(|b| b != (self.page, self.col)) {
            self.violations.push(format!("caption opens a column: {}", preview(text)));
        }
        for l in &lines {
            self.line(0.0, l, Font::Regular);
        }
        self.lines.extend(lines);
        self.y -= LINE_STEP;
        self.tables.push(text.to_string());
        self.after_heading = false;
        self.last_body = Some((self.page, self.col));
    }

    pub fn table(&mut self, caption: &str, rows: &[&[&str]]) {
        let height = rows.len() as f64 * LINE_STEP;
        self.caption_above(caption, height);
        let left = self.left();
        let width = self.style.column_width();
        self.push(Element::Rule { x: left + 50.0, y: self.y + 10.0, w: width - 50.0 });
        for row in rows {
            let cell_w = (width - 55.0) / row.len() as f64;
            for (i, cell) in row.iter().enumerate() {
                let r = self.run(left + 55.0 + cell_w * i as f64, self.y, BODY_SIZE, Font::Regular, vec![Piece::Text(cell.to_string())]);
                self.push(Element::Text(r));
                self.tables.push(cell.to_string());
            }
            self.numbered[self.page].push(self.y);
            self.y -= LINE_STEP;
        }
        self.push(Element::Rule { x: left + 50.0, y: self.y + 10.0, w: width - 50.0 });
        self.y -= LINE_STEP;
    }

    /// An image with labels drawn over it, then its caption.
    pub fn figure(&mut self, height: f64, labels: &[&str], small_labels: bool, caption: &str) {
        let caption_lines = wrap_words(caption, self.style.wrap, 0, Hyphenation::Off).len() as f64;
        self.skip(LINE_STEP);
        if self.y - height - LINE_STEP * caption_lines < BOTTOM {
            self.next_column();
        }
        let (left, width) = (self.left(), self.style.column_width());
        let bottom = self.y - height + 10.0;
        let mut children = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            let (size, x) = if small_labels { (8.0, left + 10.0 + 40.0 * i as f64) } else { (BODY_SIZE, left + 60.0 + 30.0 * i as f64) };
            let y = bottom + height / 2.0 - 12.0 * (i % 2) as f64;
            children.push(Element::Text(self.run(x, y, size, Font::Regular, vec![Piece::Text(label.to_string())])));
            self.tables.push(label.to_string());
        }
        self.push(Element::Image { x: left, y: bottom, w: width, h: height });
        self.push(Element::Group { x: left, y: bottom, w: width, h: height, top_anchored: true, children });
        self.y = bottom - 10.0;
        self.caption(caption);
    }

    /// A small-print note at the foot of the current page.
    pub fn footnote(&mut self, text: &str) {
        let y = 58.0 - 10.0 * self.footnotes_on_page as f64;
        self.footnotes_on_page += 1;
        let r = self.run(self.lefts()[0], y, 9.0, Font::Regular, vec![Piece::Text(text.into())]);
        self.push(Element::Text(r));
    }

    /// A reference list with bracketed labels and hanging lines.
    pub fn references(&mut self, heading: Option<&str>, entries: &[&str]) {
        if let Some(h) = heading {
            self.heading(h);
            self.after_heading = false;
        } else {
            self.skip(LINE_STEP);
        }
        for (i, e) in entries.iter().enumerate() {
            let label = format!("[{}]", i + 1);
            for (j, l) in wrap_words(e, self.style.wrap - 4, 0, Hyphenation::Off).iter().enumerate() {
                if self.y < BOTTOM {
                    self.next_column();
                }
                let (left, y) = (self.left(), self.y);
                if j == 0 {
                    let r = self.run(left, y, BODY_SIZE, Font::Regular, vec![Piece::Text(label.clone())]);
                    self.push(Element::Text(r));
                    let parity = if self.lefts_for_page.is_some() { self.page % 2 } else { 0 };
                    *self.flush_counts.entry((parity, left.to_bits())).or_default() += 1;
                }
                let r = self.run(left + 24.0, y, BODY_SIZE, Font::Regular, vec![Piece::Text(l.clone())]);
                self.push(Element::Text(r));
                self.numbered[self.page].push(y);
                self.y -= LINE_STEP;
            }
        }
    }

    /// Content after which nothing counts as body text.
    pub fn trailing_heading(&mut self, text: &str) {
        self.heading(text);
    }

    pub fn trailing_paragraph(&mut self, text: &str) {
        let (gold, lines) = (self.gold.len(), self.lines.len());
        self.paragraph(text);
        self.gold.truncate(gold);
        self.lines.truncate(lines);
    }

    fn furniture(&self, page: usize) -> Vec<Element> {
        let mut out = Vec::new();
        let f = &self.furniture;
        let scaled = if self.style.scaled_fonts { Transform::Scaled(4.0) } else { Transform::Identity };
        if let Some(h) = &f.running_header {
            out.push(Element::Text(TextRun { transform: scaled, ..TextRun::new(self.style.lefts[0], 752.0, 8.0, h) }));
        }
        if f.page_numbers {
            out.push(Element::Text(TextRun { transform: scaled, ..TextRun::new(300.0, 30.0, BODY_SIZE, &(page + 1).to_string()) }));
        }
        let mut n = 0;
        for &y in &self.numbered[page] {
            n += 1;
            for g in &f.gutters {
                let label = format!("{:03}", page * 100 + n);
                let run = match g {
                    Gutter::Left => TextRun::new(30.0, y, BODY_SIZE, &label),
                    Gutter::Right => TextRun::new(560.0, y, BODY_SIZE, &label),
                    Gutter::Paired => TextRun {
                        pieces: vec![Piece::Text(label.clone()), Piece::Gap { width: 520.0, text: " ".into() }, Piece::Text(label.clone())],
                        ..TextRun::new(20.0, y, BODY_SIZE, "")
                    },
                };
                out.push(Element::Text(run));
            }
        }
        if let Some(w) = &f.watermark {
            out.push(Element::Text(TextRun { transform: Transform::Rotated(45.0), ..TextRun::new(180.0, 300.0, 60.0, w) }));
        }
        if let Some(s) = &f.side_stamp {
            if page == 0 {
                out.push(Element::Text(TextRun { transform: Transform::Rotated(90.0), ..TextRun::new(24.0, 220.0, 20.0, s) }));
            }
        }
        out
    }

    /// Each page's elements, furniture included.
    pub fn into_pages(self) -> Vec<Vec<Element>> {
        (0..self.pages.len())
            .map(|i| {
                let mut all = self.furniture(i);
                all.extend(self.pages[i].iter().cloned());
                all
            })
            .collect()
    }

    /// Page, column and baseline of the next line.
    pub fn cursor(&self) -> (usize, usize, f64) {
        (self.page, self.col, self.y)
    }

    /// Vertical space left in the current column.
    pub fn remaining(&self) -> f64 {
        self.y - BOTTOM
    }

    pub fn at_column_top(&self) -> bool {
        self.at_top()
    }

    pub fn column_count(&self) -> usize {
        self.style.lefts.len()
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    pub fn finish(self) -> Article {
        self.finish_with(ReplicaWriter::new())
    }

    pub fn finish_with(mut self, mut writer: ReplicaWriter) -> Article {
        for (&(parity, left), &n) in &self.flush_counts {
            let most = self.flush_counts.iter().filter(|((p, _), _)| *p == parity).map(|(_, &m)| m).max().unwrap_or(0);
            if 2 * n < most {
                self.violations.push(format!("column at {} has {n} flush lines against {most}", f64::from_bits(left)));
            }
        }
        let page_lefts: Vec<Vec<f64>> = (0..self.pages.len()).map(|i| self.lefts_at(i)).collect();
        for (i, lefts) in page_lefts.iter().enumerate() {
            let parity = if self.lefts_for_page.is_some() { i % 2 } else { 0 };
            for left in lefts {
                if !self.flush_counts.contains_key(&(parity, left.to_bits())) {
                    self.violations.push(format!("column at {left} holds no flush lines"));
                }
            }
        }
        self.violations.dedup();
        for (i, elements) in self.pages.iter().enumerate() {
            let mut all = self.furniture(i);
            all.extend(elements.iter().cloned());
            writer.add_page(&all);
        }
        Article {
            html: writer.finish(),
            stylesheet: writer.stylesheet(),
            gold: self.gold,
            lines: self.lines,
            tables: self.tables,
            dict: self.dict,
            violations: self.violations,
            pages: self.pages.len(),
            page_lefts,
        }
    }
}

fn preview(text: &str) -> String {
    text.chars().take(40).collect()
}

/// Text of one line as pieces, with every fourth space a spacing span.
fn pieces(text: &str, salt: usize) -> Vec<Piece> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut spaces = salt;
    for c in text.chars() {
        if c == ' ' {
            spaces += 1;
            if spaces.is_multiple_of(4) {
                if !cur.is_empty() {
                    out.push(Piece::Text(std::mem::take(&mut cur)));
                }
                out.push(Piece::Gap { width: 3.0, text: " ".into() });
                continue;
            }
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        out.push(Piece::Text(cur));
    }
    out
}

/// Greedy word wrap. `first_cut` characters are lost to the first line's
/// indent. Hyphenation splits long words that would not fit.
pub fn wrap_words(text: &str, width: usize, first_cut: usize, hyphenation: Hyphenation) -> Vec<String> {
    let mut lines = Vec::new();
    let mut cur = String::new();
    let mut room = width.saturating_sub(first_cut);
    let mut words: std::collections::VecDeque<String> = text.split_whitespace().map(String::from).collect();
    while let Some(w) = words.pop_front() {
        let len = cur.chars().count();
        let need = if cur.is_empty() { w.chars().count() } else { len + 1 + w.chars().count() };
        if need <= room || cur.is_empty() && w.chars().count() > room {
            if !cur.is_empty() {
                cur.push(' ');
            }
            cur.push_str(&w);
            continue;
        }
        let avail = room.saturating_sub(if cur.is_empty() { 0 } else { len + 1 });
        if let Some((head, tail)) = hyphen_split(&w, avail, hyphenation) {
            if !cur.is_empty() {
                cur.push(' ');
            }
            cur.push_str(&head);
            words.push_front(tail);
        } else {
            words.push_front(w);
        }
        lines.push(std::mem::take(&mut cur));
        room = width;
    }
    if !cur.is_empty() {
        lines.push(cur);
    }
    lines
}

/// Splits `word` so the head (with its hyphen) fits in `avail` characters.
fn hyphen_split(word: &str, avail: usize, hyphenation: Hyphenation) -> Option<(String, String)> {
    if hyphenation == Hyphenation::Off {
        return None;
    }
    let chars: Vec<char> = word.chars().collect();
    if let Some(at) = chars.iter().position(|&c| c == '-') {
        if hyphenation != Hyphenation::Compounds || at + 1 > avail || at == 0 || at + 1 == chars.len() {
            return None;
        }
        if !chars[..at].iter().all(|&c| is_word_char(c)) || !chars[at + 1].is_alphabetic() {
            return None;
        }
        return Some((chars[..=at].iter().collect(), chars[at + 1..].iter().collect()));
    }
    let letters = chars.iter().take_while(|&&c| is_word_char(c)).count();
    if letters < 7 {
        return None;
    }
    let cut = letters / 2;
    if cut + 1 > avail || cut < 3 {
        return None;
    }
    Some((chars[..cut].iter().collect::<String>() + "-", chars[cut..].iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_respects_width() {
        let text = "alpha beta gamma delta epsilon zeta eta theta iota kappa lambda";
        for l in wrap_words(text, 20, 0, Hyphenation::Off) {
            assert!(l.chars().count() <= 20, "{l}");
        }
        assert_eq!(wrap_words(text, 20, 0, Hyphenation::Off).join(" "), text);
    }

    #[test]
    fn hyphenation_splits_long_words() {
        let lines = wrap_words("the extraction pipeline", 10, 0, Hyphenation::Split);
        assert_eq!(lines[0], "the extra-");
        assert!(lines[1].starts_with("ction"));
    }

    #[test]
    fn compounds_break_after_hyphen() {
        let lines = wrap_words("a truly self-aware design", 13, 0, Hyphenation::Compounds);
        assert_eq!(lines, ["a truly self-", "aware design"]);
    }
}
