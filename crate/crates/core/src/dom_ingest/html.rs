//! A small, offset-preserving HTML reader.
//!
//! Highlighting rewrites the replica in place, so every node keeps the byte
//! ranges it was read from. The reader is lenient about tree structure (stray
//! end tags are dropped, unclosed elements end at their parent's end tag) but
//! strict about lexical errors such as an unterminated tag or comment.

use std::ops::Range;

use crate::error::{Error, Result};

const VOID_ELEMENTS: &[&str] =
    &["area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr"];

const RAW_TEXT_ELEMENTS: &[&str] = &["script", "style"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    StartTag {
        name: String,
        attrs: Vec<(String, String)>,
        self_closing: bool,
        range: Range<usize>,
    },
    EndTag {
        name: String,
        range: Range<usize>,
    },
    Text {
        range: Range<usize>,
    },
    /// Content of `<script>` or `<style>`.
    RawText {
        range: Range<usize>,
    },
    /// Comments, doctypes and processing instructions.
    Other {
        range: Range<usize>,
    },
}

pub struct Tokenizer<'a> {
    src: &'a [u8],
    pos: usize,
    raw_until: Option<String>,
}

impl<'a> Tokenizer<'a> {
    pub fn new(src: &'a [u8]) -> Self {
        Self { src, pos: 0, raw_until: None }
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Markup { offset, message: message.into() }
    }

    fn find_from(&self, from: usize, needle: &[u8]) -> Option<usize> {
        self.src[from..].windows(needle.len()).position(|w| w == needle).map(|p| p + from)
    }

    fn find_ci(&self, from: usize, needle: &[u8]) -> Option<usize> {
        self.src[from..].windows(needle.len()).position(|w| w.eq_ignore_ascii_case(needle)).map(|p| p + from)
    }

    fn raw_text(&mut self, name: String) -> Token {
        let start = self.pos;
        let needle = format!("</{name}");
        let end = self.find_ci(start, needle.as_bytes()).unwrap_or(self.src.len());
        self.pos = end;
        Token::RawText { range: start..end }
    }

    fn tag_name(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() || c == b'>' || c == b'/' {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).to_ascii_lowercase()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn start_tag(&mut self, start: usize) -> Result<Token> {
        self.pos = start + 1;
        let name = self.tag_name();
        let mut attrs = Vec::new();
        let mut self_closing = false;
        loop {
            self.skip_ws();
            let Some(&c) = self.src.get(self.pos) else {
                return Err(self.err(start, format!("unterminated <{name}> tag")));
            };
            match c {
                b'>' => {
                    self.pos += 1;
                    break;
                }
                b'/' => {
                    self.pos += 1;
                    if self.src.get(self.pos) == Some(&b'>') {
                        self_closing = true;
                        self.pos += 1;
                        break;
                    }
                }
                _ => {
                    let name_start = self.pos;
                    while self.pos < self.src.len() {
                        let c = self.src[self.pos];
                        if c.is_ascii_whitespace() || c == b'=' || c == b'>' || c == b'/' {
                            break;
                        }
                        self.pos += 1;
                    }
                    let attr = String::from_utf8_lossy(&self.src[name_start..self.pos]).to_ascii_lowercase();
                    self.skip_ws();
                    let mut value = String::new();
                    if self.src.get(self.pos) == Some(&b'=') {
                        self.pos += 1;
                        self.skip_ws();
                        match self.src.get(self.pos) {
                            Some(&q) if q == b'"' || q == b'\'' => {
                                let vstart = self.pos + 1;
                                let Some(vend) = self.find_from(vstart, &[q]) else {
                                    return Err(self.err(self.pos, "unterminated attribute value"));
                                };
                                value = decode_entities(&self.src[vstart..vend]);
                                self.pos = vend + 1;
                            }
                            Some(_) => {
                                let vstart = self.pos;
                                while self.pos < self.src.len() {
                                    let c = self.src[self.pos];
                                    if c.is_ascii_whitespace() || c == b'>' {
                                        break;
                                    }
                                    self.pos += 1;
                                }
                                value = decode_entities(&self.src[vstart..self.pos]);
                            }
                            None => return Err(self.err(start, format!("unterminated <{name}> tag"))),
                        }
                    }
                    if !attr.is_empty() {
                        attrs.push((attr, value));
                    }
                }
            }
        }
        if !self_closing && RAW_TEXT_ELEMENTS.contains(&name.as_str()) {
            self.raw_until = Some(name.clone());
        }
        Ok(Token::StartTag { name, attrs, self_closing, range: start..self.pos })
    }
}

impl Iterator for Tokenizer<'_> {
    type Item = Result<Token>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(name) = self.raw_until.take() {
            if self.pos < self.src.len() {
                let tok = self.raw_text(name);
                if let Token::RawText { range } = &tok {
                    if !range.is_empty() {
                        return Some(Ok(tok));
                    }
                }
            }
        }
        if self.pos >= self.src.len() {
            return None;
        }
        let start = self.pos;
        if self.src[start] != b'<' {
            let end = self.find_from(start, b"<").unwrap_or(self.src.len());
            self.pos = end;
            return Some(Ok(Token::Text { range: start..end }));
        }
        let rest = &self.src[start..];
        if rest.starts_with(b"<!--") {
            return Some(match self.find_from(start + 4, b"-->") {
                Some(end) => {
                    self.pos = end + 3;
                    Ok(Token::Other { range: start..self.pos })
                }
                None => Err(self.err(start, "unterminated comment")),
            });
        }
        if rest.starts_with(b"<!") || rest.starts_with(b"<?") {
            return Some(match self.find_from(start, b">") {
                Some(end) => {
                    self.pos = end + 1;
                    Ok(Token::Other { range: start..self.pos })
                }
                None => Err(self.err(start, "unterminated declaration")),
            });
        }
        if rest.starts_with(b"</") {
            return Some(match self.find_from(start, b">") {
                Some(end) => {
                    self.pos = start + 2;
                    let name = self.tag_name();
                    self.pos = end + 1;
                    Ok(Token::EndTag { name, range: start..self.pos })
                }
                None => Err(self.err(start, "unterminated end tag")),
            });
        }
        match rest.get(1) {
            Some(c) if c.is_ascii_alphabetic() => Some(self.start_tag(start)),
            _ => {
                // A lone '<' is text.
                let end = self.find_from(start + 1, b"<").unwrap_or(self.src.len());
                self.pos = end;
                Some(Ok(Token::Text { range: start..end }))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Node {
    Element(Element),
    Text(Range<usize>),
}

#[derive(Debug, Clone)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub start_tag: Range<usize>,
    /// Byte offset where the element's content ends (start of its end tag, or
    /// the point where it was implicitly closed).
    pub content_end: usize,
    pub children: Vec<Node>,
    /// For `<style>` and `<script>`.
    pub raw_text: Option<Range<usize>>,
}

impl Element {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.attr("class").unwrap_or("").split_ascii_whitespace()
    }

    pub fn has_class(&self, class: &str) -> bool {
        self.classes().any(|c| c == class)
    }

    pub fn content_start(&self) -> usize {
        self.start_tag.end
    }
}

/// Parses `src` into a forest of nodes; `warnings` receives structural
/// repairs (stray end tags).
pub fn parse_dom(src: &[u8], warnings: &mut Vec<String>) -> Result<Vec<Node>> {
    let mut roots: Vec<Node> = Vec::new();
    let mut stack: Vec<Element> = Vec::new();

    fn attach(stack: &mut [Element], roots: &mut Vec<Node>, node: Node) {
        match stack.last_mut() {
            Some(parent) => parent.children.push(node),
            None => roots.push(node),
        }
    }

    for token in Tokenizer::new(src) {
        match token? {
            Token::StartTag { name, attrs, self_closing, range } => {
                let el = Element { name, attrs, content_end: range.end, start_tag: range, children: Vec::new(), raw_text: None };
                if self_closing || VOID_ELEMENTS.contains(&el.name.as_str()) {
                    attach(&mut stack, &mut roots, Node::Element(el));
                } else {
                    stack.push(el);
                }
            }
            Token::EndTag { name, range } => match stack.iter().rposition(|e| e.name == name) {
                Some(idx) => {
                    while stack.len() > idx {
                        let mut el = stack.pop().expect("stack nonempty");
                        el.content_end = range.start;
                        attach(&mut stack, &mut roots, Node::Element(el));
                    }
                }
                None => {
                    if !VOID_ELEMENTS.contains(&name.as_str()) {
                        warnings.push(format!("stray end tag </{name}> at byte {} ignored", range.start));
                    }
                }
            },
            Token::Text { range } => attach(&mut stack, &mut roots, Node::Text(range)),
            Token::RawText { range } => {
                if let Some(top) = stack.last_mut() {
                    top.raw_text = Some(range);
                }
            }
            Token::Other { .. } => {}
        }
    }
    while let Some(mut el) = stack.pop() {
        el.content_end = src.len();
        attach(&mut stack, &mut roots, Node::Element(el));
    }
    Ok(roots)
}

/// Decodes character references in an attribute value.
fn decode_entities(raw: &[u8]) -> String {
    let s = String::from_utf8_lossy(raw);
    html_escape::decode_html_entities(&s).into_owned()
}

/// Decodes a text node into characters, each paired with the byte range it
/// came from. A character reference maps to the whole reference.
pub fn decode_text(src: &[u8], range: Range<usize>) -> Vec<(char, Range<usize>)> {
    let text = String::from_utf8_lossy(&src[range.clone()]);
    let bytes = text.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    // Offsets assume valid UTF-8; lossy replacement would shift them, so fall
    // back to byte-per-char spans in that case.
    let exact = std::str::from_utf8(&src[range.clone()]).is_ok();
    while i < bytes.len() {
        if bytes[i] == b'&' {
            if let Some(len) = entity_len(&bytes[i..]) {
                let entity = &text[i..i + len];
                let decoded = html_escape::decode_html_entities(entity);
                if decoded != entity {
                    for c in decoded.chars() {
                        out.push((c, range.start + i..range.start + i + len));
                    }
                    i += len;
                    continue;
                }
            }
        }
        let c = text[i..].chars().next().expect("in bounds");
        let w = c.len_utf8();
        let span = if exact { range.start + i..range.start + i + w } else { range.start + i..range.start + i + 1 };
        out.push((c, span));
        i += w;
    }
    out
}

fn entity_len(bytes: &[u8]) -> Option<usize> {
    let end = bytes.iter().take(34).position(|&b| b == b';')?;
    if end < 2 {
        return None;
    }
    let body = &bytes[1..end];
    let ok = if body[0] == b'#' {
        body.len() > 1
            && (body[1..].iter().all(u8::is_ascii_digit)
                || ((body[1] == b'x' || body[1] == b'X') && body.len() > 2 && body[2..].iter().all(u8::is_ascii_hexdigit)))
    } else {
        body.iter().all(u8::is_ascii_alphanumeric)
    };
    ok.then_some(end + 1)
}
