//! Writes pdf2htmlEX-style markup from positioned page elements.

use std::collections::HashMap;
use std::fmt::Write;

pub const PAGE_WIDTH: f64 = 612.0;
pub const PAGE_HEIGHT: f64 = 792.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Piece {
    Text(String),
    /// A spacing span holding `text`.
    Gap {
        width: f64,
        text: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Font {
    Regular,
    Bold,
    Italic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Identity,
    /// Declared size multiplied by the factor, undone by the matrix.
    Scaled(f64),
    /// Counter-clockwise, in degrees.
    Rotated(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextRun {
    pub x: f64,
    pub y: f64,
    pub size: f64,
    pub font: Font,
    pub transform: Transform,
    pub pieces: Vec<Piece>,
}

impl TextRun {
    pub fn new(x: f64, y: f64, size: f64, text: &str) -> Self {
        Self { x, y, size, font: Font::Regular, transform: Transform::Identity, pieces: vec![Piece::Text(text.into())] }
    }

    pub fn text(&self) -> String {
        self.pieces
            .iter()
            .map(|p| match p {
                Piece::Text(t) | Piece::Gap { text: t, .. } => t.as_str(),
            })
            .collect()
    }
}

/// Positions are page coordinates with the origin at the lower left, also
/// for the children of a group.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Text(TextRun),
    Image {
        x: f64,
        y: f64,
        w: f64,
        h: f64,
    },
    Rule {
        x: f64,
        y: f64,
        w: f64,
    },
    /// A positioned box; `top_anchored` children are placed with `top`.
    Group {
        x: f64,
        y: f64,
        w: f64,
        h: f64,
        top_anchored: bool,
        children: Vec<Element>,
    },
}

struct Interner {
    prefix: &'static str,
    ids: HashMap<String, usize>,
    decls: Vec<String>,
}

impl Interner {
    fn new(prefix: &'static str) -> Self {
        Self { prefix, ids: HashMap::new(), decls: Vec::new() }
    }

    fn class(&mut self, decl: String) -> String {
        let n = match self.ids.get(&decl) {
            Some(&n) => n,
            None => {
                self.decls.push(decl.clone());
                self.ids.insert(decl, self.decls.len() - 1);
                self.decls.len() - 1
            }
        };
        format!("{}{:x}", self.prefix, n)
    }

    fn css(&self, out: &mut String) {
        for (i, d) in self.decls.iter().enumerate() {
            let _ = writeln!(out, ".{}{:x}{{{d}}}", self.prefix, i);
        }
    }
}

fn px(v: f64) -> String {
    format!("{v:.6}px")
}

fn matrix(m: [f64; 4]) -> String {
    let v = format!("matrix({:.6},{:.6},{:.6},{:.6},0,0)", m[0], m[1], m[2], m[3]);
    format!("transform:{v};-ms-transform:{v};-webkit-transform:{v};")
}

fn escape(text: &str, out: &mut String) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\u{e9}' => out.push_str("&#233;"),
            _ => out.push(c),
        }
    }
}

const BASE_CSS: &str = "#sidebar{position:absolute;top:0;left:0;bottom:0;width:250px;padding:0;margin:0;overflow:auto}
#page-container{position:absolute;top:0;left:0;margin:0;padding:0;border:0}
.pf{position:relative;background-color:white;overflow:hidden;margin:0;border:0}
.pc{position:absolute;border:0;padding:0;margin:0;top:0;left:0;width:100%;height:100%;overflow:hidden;display:block}
.bi{position:absolute;border:0;margin:0}
.c{position:absolute;border:0;padding:0;margin:0;overflow:hidden;display:block}
.t{position:absolute;white-space:pre;font-size:1px;transform-origin:0 100%;unicode-bidi:bidi-override}
._{display:inline-block;}
.pi{display:none}
";

/// Accumulates pages and renders the final document.
pub struct ReplicaWriter {
    x: Interner,
    y: Interner,
    w: Interner,
    h: Interner,
    fs: Interner,
    ff: Interner,
    m: Interner,
    gap: Interner,
    pages: Vec<String>,
    /// Also write `<link>` headers for these sheet names.
    pub linked: Vec<String>,
    /// Style rules emitted into the linked sheet instead of the page.
    pub external_rules: bool,
}

impl Default for ReplicaWriter {
    fn default() -> Self {
        Self::new()
    }
}

impl ReplicaWriter {
    pub fn new() -> Self {
        Self {
            x: Interner::new("x"),
            y: Interner::new("y"),
            w: Interner::new("w"),
            h: Interner::new("h"),
            fs: Interner::new("fs"),
            ff: Interner::new("ff"),
            m: Interner::new("m"),
            gap: Interner::new("_"),
            pages: Vec::new(),
            linked: Vec::new(),
            external_rules: false,
        }
    }

    pub fn add_page(&mut self, elements: &[Element]) {
        let n = self.pages.len() + 1;
        let (w, h) = (self.w.class(format!("width:{};", px(PAGE_WIDTH))), self.h.class(format!("height:{};", px(PAGE_HEIGHT))));
        let (x0, y0) = (self.x.class(format!("left:{};", px(0.0))), self.y.class(format!("bottom:{};", px(0.0))));
        let mut out = String::new();
        let _ = write!(
            out,
            "<div id=\"pf{n:x}\" class=\"pf {w} {h}\" data-page-no=\"{n:x}\"><div class=\"pc pc{n:x} {w} {h}\">\
             <img class=\"bi {x0} {y0} {w} {h}\" alt=\"\" src=\"data:image/png;base64,iVBORw0KGgo=\"/>"
        );
        for e in elements {
            self.element(e, (0.0, 0.0), PAGE_HEIGHT, false, &mut out);
        }
        let _ = writeln!(
            out,
            "</div><div class=\"pi\" data-data='{{\"ctm\":[1.000000,0.000000,0.000000,1.000000,0.000000,0.000000]}}'></div></div>"
        );
        self.pages.push(out);
    }

    fn position(&mut self, x: f64, y: f64, own_h: f64, origin: (f64, f64), parent_h: f64, top: bool) -> (String, String) {
        let rx = self.x.class(format!("left:{};", px(x - origin.0)));
        let ry = y - origin.1;
        let cy =
            if top { self.y.class(format!("top:{};", px(parent_h - ry - own_h))) } else { self.y.class(format!("bottom:{};", px(ry))) };
        (rx, cy)
    }

    fn element(&mut self, e: &Element, origin: (f64, f64), parent_h: f64, top: bool, out: &mut String) {
        match e {
            Element::Text(run) => self.text(run, origin, parent_h, top, out),
            Element::Image { x, y, w, h } => {
                let (cx, cy) = self.position(*x, *y, *h, origin, parent_h, top);
                let (cw, ch) = (self.w.class(format!("width:{};", px(*w))), self.h.class(format!("height:{};", px(*h))));
                let _ = write!(out, "<img class=\"bi {cx} {cy} {cw} {ch}\" alt=\"\" src=\"data:image/png;base64,iVBORw0KGgo=\"/>");
            }
            Element::Rule { x, y, w } => {
                let (cx, cy) = self.position(*x, *y, 0.5, origin, parent_h, top);
                let (cw, ch) = (self.w.class(format!("width:{};", px(*w))), self.h.class(format!("height:{};", px(0.5))));
                let _ = write!(out, "<div class=\"ln {cx} {cy} {cw} {ch}\"></div>");
            }
            Element::Group { x, y, w, h, top_anchored, children } => {
                let (cx, cy) = self.position(*x, *y, *h, origin, parent_h, top);
                let (cw, ch) = (self.w.class(format!("width:{};", px(*w))), self.h.class(format!("height:{};", px(*h))));
                let _ = write!(out, "<div class=\"c {cx} {cy} {cw} {ch}\">");
                for c in children {
                    self.element(c, (*x, *y), *h, *top_anchored, out);
                }
                out.push_str("</div>");
            }
        }
    }

    fn text(&mut self, run: &TextRun, origin: (f64, f64), parent_h: f64, top: bool, out: &mut String) {
        let (cx, cy) = self.position(run.x, run.y, run.size, origin, parent_h, top);
        let ch = self.h.class(format!("height:{};", px(run.size)));
        let (declared, m) = match run.transform {
            Transform::Identity => (run.size, [1.0, 0.0, 0.0, 1.0]),
            Transform::Scaled(k) => (run.size * k, [1.0 / k, 0.0, 0.0, 1.0 / k]),
            Transform::Rotated(deg) => {
                let (s, c) = deg.to_radians().sin_cos();
                (run.size, [c, -s, s, c])
            }
        };
        let cm = self.m.class(matrix(m));
        let cfs = self.fs.class(format!("font-size:{};", px(declared)));
        let weight = match run.font {
            Font::Regular => "font-style:normal;font-weight:normal;",
            Font::Bold => "font-style:normal;font-weight:bold;",
            Font::Italic => "font-style:italic;font-weight:normal;",
        };
        let cff = self.ff.class(format!("font-family:sans-serif;line-height:0.913;{weight}visibility:visible;"));
        let _ = write!(out, "<div class=\"t {cm} {cx} {ch} {cy} {cff} {cfs} fc0 sc0 ls0 ws0\">");
        for p in &run.pieces {
            match p {
                Piece::Text(t) => escape(t, out),
                Piece::Gap { width, text } => {
                    let g = self.gap.class(format!("width:{};", px(*width)));
                    let _ = write!(out, "<span class=\"_ {g}\">");
                    escape(text, out);
                    out.push_str("</span>");
                }
            }
        }
        out.push_str("</div>");
    }

    /// The generated style rules.
    pub fn stylesheet(&self) -> String {
        let mut css =
            String::from(".fc0{color:rgb(0,0,0);}\n.sc0{text-shadow:none;}\n.ls0{letter-spacing:0px;}\n.ws0{word-spacing:0px;}\n");
        for i in [&self.ff, &self.m, &self.fs, &self.x, &self.y, &self.w, &self.h, &self.gap] {
            i.css(&mut css);
        }
        css
    }

    pub fn finish(&self) -> String {
        let mut out = String::from("<!DOCTYPE html>\n<html xmlns=\"http://www.w3.org/1999/xhtml\">\n<head>\n<meta charset=\"utf-8\"/>\n");
        out.push_str("<meta name=\"generator\" content=\"pdf2htmlEX\"/>\n");
        for l in &self.linked {
            let _ = writeln!(out, "<link rel=\"stylesheet\" href=\"{l}\"/>");
        }
        out.push_str("<style type=\"text/css\">\n");
        out.push_str(BASE_CSS);
        if !self.external_rules {
            out.push_str(&self.stylesheet());
        }
        out.push_str("</style>\n<script>\ntry{if(window.innerWidth < 1 && 2 > 1){pdf2htmlEX.defaultViewer = new pdf2htmlEX.Viewer({});}}catch(e){}\n</script>\n");
        out.push_str(
            "<title></title>\n</head>\n<body>\n<div id=\"sidebar\"><div id=\"outline\"></div></div>\n<div id=\"page-container\">\n",
        );
        for p in &self.pages {
            out.push_str(p);
        }
        out.push_str("</div>\n<div class=\"loading-indicator\"></div>\n</body>\n</html>\n");
        out
    }
}
