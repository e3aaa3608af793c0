//! Randomized invariant checks.

use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use pdfbot::bt_assembly::{assemble, has_caption_label, line_chars, remove_captions, BodyText, LexiconTagger, Paragraph, Sentence};
use pdfbot::column_layout::{assign_columns, detect_columns, sweep, ColumnLayout, ColumnModel};
use pdfbot::dom_ingest::{enumerate_blocks, parse_replica, resolve_absolute, IngestOptions, TextBlock};
use pdfbot::eval::{parse_body_text, report, score};
use pdfbot::nbt_removal::{backward_removal, Reason, Verdict};
use pdfbot::sentence_highlight::{inject_colors, locate_sentence, strip_highlights, visible_text, CharStream, HighlightSpan};
use pdfbot::text_metrics::{
    base_cbd, font_size_histogram, font_size_mode, group_lines, line_spacing_mode, DocumentStats, PageLineTree, Thresholds,
};

pub struct PropertyResult {
    pub name: &'static str,
    pub cases: u32,
    pub failure: Option<String>,
}

fn run<S: Strategy>(name: &'static str, cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> PropertyResult
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let failure = runner.run(&strategy, test).err().map(|e| e.to_string());
    PropertyResult { name, cases, failure }
}

// ---------------------------------------------------------------- ingest

#[derive(Debug, Clone)]
struct NodeSpec {
    parent: usize,
    container: bool,
    /// Quarter pixels.
    left: i32,
    offset: i32,
    from_top: bool,
    height: i32,
    text: String,
}

fn node_spec() -> impl Strategy<Value = NodeSpec> {
    (any::<usize>(), any::<bool>(), 0..1600i32, 0..2400i32, any::<bool>(), 8..300i32, "[a-zA-Z &<>\u{e9}]{1,10}").prop_map(
        |(parent, container, left, offset, from_top, height, text)| NodeSpec { parent, container, left, offset, from_top, height, text },
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('\u{e9}', "&#233;")
}

/// Absolute start and text of one block.
type Placed = ((f64, f64), String);

/// Renders nested boxes and returns the markup with each text block's
/// expected absolute start (summed along its path) and text.
fn nested_replica(specs: &[NodeSpec]) -> (String, Vec<Placed>) {
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); specs.len() + 1];
    let mut containers: Vec<usize> = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        let k = s.parent % (containers.len() + 1);
        let parent = if k == 0 { 0 } else { containers[k - 1] + 1 };
        children[parent].push(i);
        if s.container {
            containers.push(i);
        }
    }
    let mut css = String::from(".w0{width:612px;}.h0{height:792px;}\n");
    let mut body = String::new();
    let mut expected = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn walk(
        node: usize,
        origin: (f64, f64),
        parent_h: f64,
        specs: &[NodeSpec],
        children: &[Vec<usize>],
        css: &mut String,
        body: &mut String,
        expected: &mut Vec<Placed>,
    ) {
        for &i in &children[node] {
            let s = &specs[i];
            let left = s.left as f64 / 4.0;
            let offset = s.offset as f64 / 4.0;
            let h = s.height as f64;
            let vertical = if s.from_top { format!("top:{offset}px;") } else { format!("bottom:{offset}px;") };
            let rel_y = if s.from_top { parent_h - offset - h } else { offset };
            let abs = (origin.0 + left, origin.1 + rel_y);
            css.push_str(&format!(".n{i}{{left:{left}px;{vertical}height:{h}px;width:300px;font-size:10px;}}\n"));
            if s.container {
                body.push_str(&format!("<div class=\"c n{i}\">"));
                walk(i + 1, abs, h, specs, children, css, body, expected);
                body.push_str("</div>");
            } else {
                body.push_str(&format!("<div class=\"t n{i}\">{}</div>", escape(&s.text)));
                expected.push((abs, s.text.clone()));
            }
        }
    }
    walk(0, (0.0, 0.0), 792.0, specs, &children, &mut css, &mut body, &mut expected);
    let html = format!(
        "<html><head><style>{css}</style></head><body><div id=\"page-container\"><div class=\"pf w0 h0\" data-page-no=\"1\">\
         <div class=\"pc w0 h0\">{body}</div></div></div></body></html>"
    );
    (html, expected)
}

fn coordinate_resolution() -> PropertyResult {
    run("coordinate resolution", 1000, prop::collection::vec(node_spec(), 1..14), |specs| {
        let (html, expected) = nested_replica(&specs);
        let doc = parse_replica(html.as_bytes(), &[], IngestOptions { strict: true }).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let once = resolve_absolute(doc);
        prop_assert_eq!(&resolve_absolute(once.clone()), &once, "resolution is not idempotent");
        let blocks = enumerate_blocks(&once);
        prop_assert_eq!(blocks.len(), expected.len());
        for (b, ((x, y), text)) in blocks.iter().zip(&expected) {
            prop_assert_eq!((b.x(), b.y()), (*x, *y), "block {:?}", b.text);
            prop_assert_eq!(&b.text, text, "text changed at ingest");
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- lines

fn random_blocks() -> impl Strategy<Value = Vec<TextBlock>> {
    prop::collection::vec(
        (1..=3u32, 0..560u32, 0..48u32, -2..=2i32, prop::sample::select(vec![9.0, 10.0, 12.0, 14.0]), "[a-z ]{1,12}"),
        1..80,
    )
    .prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (page, x, row, jitter, fs, text))| {
                TextBlock::synthetic(i, page, x as f64, 720.0 - 14.0 * row as f64 + jitter as f64, fs, &text)
            })
            .collect()
    })
}

const PAGES: [(u32, f64, f64); 3] = [(1, 612.0, 792.0), (2, 612.0, 792.0), (3, 612.0, 792.0)];

fn line_grouping() -> PropertyResult {
    run("line grouping", 1000, (random_blocks(), any::<u64>()), |(blocks, seed)| {
        let tree = group_lines(&blocks, &PAGES, 5.0);
        let mut seen: Vec<usize> = Vec::new();
        for page in &tree.pages {
            for line in &page.lines {
                prop_assert!(line.blocks.windows(2).all(|w| w[0].x() <= w[1].x()), "x decreases within a line");
                for b in &line.blocks {
                    prop_assert_eq!(b.page, page.number);
                    seen.push(b.index);
                }
            }
        }
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..blocks.len()).collect::<Vec<_>>(), "lines do not partition the blocks");
        let mut shuffled = blocks.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(font_size_mode(&blocks).ok(), font_size_mode(&shuffled).ok(), "font mode depends on order");
        Ok(())
    })
}

fn density() -> PropertyResult {
    run("density", 1000, random_blocks(), |blocks| {
        let tree = group_lines(&blocks, &PAGES, 5.0);
        let mut total = 0.0;
        let mut lines = 0usize;
        for page in tree.pages.iter().rev() {
            for line in page.lines.iter().rev() {
                let mut chars = 0usize;
                for b in &line.blocks {
                    for c in b.text.chars() {
                        if !c.is_whitespace() {
                            chars += 1;
                        }
                    }
                }
                total += chars as f64 / line.blocks.len() as f64;
                lines += 1;
            }
        }
        let got = base_cbd(&tree).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!((got - total / lines as f64).abs() < 1e-9, "{} vs {}", got, total / lines as f64);
        Ok(())
    })
}

fn histogram_totals() -> PropertyResult {
    run("histogram totals", 1000, (random_blocks(), 0..6usize), |(blocks, rotate)| {
        let tree = group_lines(&blocks, &PAGES, 5.0);
        let hist = sweep(&tree, 612.0);
        prop_assert_eq!(hist.total(), tree.block_count() as u64);
        let mut permuted = tree.clone();
        let n = permuted.pages.len();
        permuted.pages.rotate_left(rotate % n);
        permuted.pages.reverse();
        let t = Thresholds::default();
        prop_assert_eq!(detect_columns(&hist, &t).ok(), detect_columns(&sweep(&permuted, 612.0), &t).ok());
        Ok(())
    })
}

// ---------------------------------------------------------------- removal and assembly

#[derive(Debug, Clone)]
struct LineSpec {
    indent: Option<u32>,
    gap: u32,
    blocks: usize,
    words: usize,
    end: char,
    hyphen: bool,
}

fn line_spec() -> impl Strategy<Value = LineSpec> {
    (
        prop::option::weighted(0.35, 1..60u32),
        prop::sample::select(vec![14u32, 14, 14, 14, 12, 20, 28, 40]),
        1..4usize,
        1..7usize,
        prop::sample::select(vec!['.', '.', 'x', ',', ':', 'z', '?']),
        prop::bool::weighted(0.15),
    )
        .prop_map(|(indent, gap, blocks, words, end, hyphen)| LineSpec { indent, gap, blocks, words, end, hyphen })
}

const WORDS: &[&str] = &["alpha", "beta", "gamma", "delta", "omega", "kappa", "sigma", "theta"];

fn single_column() -> ColumnLayout {
    ColumnLayout::single(ColumnModel {
        column_lefts: vec![72.0],
        k: 1,
        margin_width: 72.0,
        bt_area: (72.0, 540.0),
        minor_columns: Vec::new(),
        page_width: 612.0,
    })
}

/// A one-column tree of lines over up to two pages, top to bottom.
fn text_tree(specs: &[LineSpec], dy: f64) -> PageLineTree {
    let mut blocks = Vec::new();
    let mut page = 1;
    let mut y = 720.0;
    for (li, s) in specs.iter().enumerate() {
        y -= s.gap as f64;
        if y < 72.0 {
            page += 1;
            y = 720.0;
        }
        let mut words: Vec<String> = (0..s.words).map(|w| WORDS[(li * 7 + w * 3) % WORDS.len()].to_string()).collect();
        let last = words.last_mut().expect("at least one word");
        if s.hyphen {
            last.push('-');
        } else {
            last.push(s.end);
        }
        let text = words.join(" ");
        let per = text.len().div_ceil(s.blocks);
        let mut x = 72.0 + s.indent.unwrap_or(0) as f64;
        let chars: Vec<char> = text.chars().collect();
        for chunk in chars.chunks(per.max(1)) {
            let t: String = chunk.iter().collect();
            blocks.push(TextBlock::synthetic(blocks.len(), page, x, y + dy, 12.0, &t));
            x += 7.0 * chunk.len() as f64;
        }
    }
    let mut tree = group_lines(&blocks, &PAGES[..2], 5.0);
    assign_columns(&mut tree, &single_column(), 5.0);
    tree
}

fn stats_for(tree: &PageLineTree) -> Option<DocumentStats> {
    let (base_ls, gap_histogram) = line_spacing_mode(tree).ok()?;
    Some(DocumentStats {
        base_fs: 12.0,
        base_ls,
        base_cbd: base_cbd(tree).ok()?,
        font_size_histogram: font_size_histogram(&[]),
        gap_histogram,
    })
}

fn removal() -> PropertyResult {
    run("removal monotonicity and determinism", 1000, prop::collection::vec(line_spec(), 2..60), |specs| {
        let tree = text_tree(&specs, 0.0);
        let Some(stats) = stats_for(&tree) else { return Ok(()) };
        let (t, layout) = (Thresholds::default(), single_column());
        let (mut a, mut b) = (tree.clone(), tree.clone());
        let va = backward_removal(&mut a, &stats, &layout, &t);
        let vb = backward_removal(&mut b, &stats, &layout, &t);
        prop_assert_eq!(&va, &vb, "verdicts differ between runs");
        prop_assert_eq!(&a, &b);
        let before: HashMap<_, _> = tree.lines().map(|l| (l.id, l.leftmost_x())).collect();
        for l in a.lines() {
            prop_assert!(before.contains_key(&l.id), "line {:?} appeared", l.id);
        }
        let removed = va.iter().filter(|v| v.is_removal()).count();
        prop_assert_eq!(a.line_count() + removed, tree.line_count());
        for (i, v) in va.iter().enumerate() {
            if let Verdict::Line { page, line, reason: Some(r), after_indented_removal, .. } = v {
                let id = pdfbot::text_metrics::LineId { page: *page, seq: *line };
                if *r == Reason::IndentedSparse {
                    prop_assert!(before[&id] > 72.0 + t.delta1, "a line within the indent tolerance was removed as indented");
                }
                if *r == Reason::DetachedUnterminated {
                    prop_assert_eq!(*after_indented_removal, Some(false));
                    // the line scanned just before sits next in reading order
                    if let Some(prev) = va.get(i + 1) {
                        prop_assert!(prev.reason() != Some(Reason::IndentedSparse), "rule 2 fired right after rule 1");
                    }
                }
            }
        }
        Ok(())
    })
}

fn paragraphs_of(tree: &PageLineTree) -> Option<Vec<String>> {
    let stats = stats_for(tree)?;
    let raw = assemble(tree, &single_column(), &stats, &Thresholds::default(), None);
    Some(raw.into_iter().map(|p| p.text).collect())
}

fn assembly_provenance() -> PropertyResult {
    run("assembly provenance and hyphens", 500, prop::collection::vec(line_spec(), 2..50), |specs| {
        let tree = text_tree(&specs, 0.0);
        let Some(stats) = stats_for(&tree) else { return Ok(()) };
        let stream: Vec<_> = tree.lines().flat_map(|l| line_chars(l).1).flatten().collect();
        let raw = assemble(&tree, &single_column(), &stats, &Thresholds::default(), None);
        let mut pos = 0;
        for p in &raw {
            prop_assert_eq!(p.text.chars().count(), p.provenance.len());
            for (c, r) in p.text.chars().zip(&p.provenance) {
                match r {
                    None => prop_assert_eq!(c, ' ', "only join spaces lack provenance"),
                    Some(r) => {
                        prop_assert_eq!(r.c, c);
                        let at = stream[pos..].iter().position(|s| s == r);
                        prop_assert!(at.is_some(), "provenance out of traversal order");
                        pos += at.unwrap_or(0) + 1;
                    }
                }
            }
            if let Some(i) = p.text.find('-') {
                prop_assert_eq!(i + 1, p.text.len(), "a wrap hyphen survived inside {:?}", p.text);
            }
        }
        Ok(())
    })
}

fn translation_invariance() -> PropertyResult {
    run("paragraph breaks under vertical translation", 500, (prop::collection::vec(line_spec(), 2..40), -60..60i32), |(specs, dy)| {
        let a = paragraphs_of(&text_tree(&specs, 0.0));
        let b = paragraphs_of(&text_tree(&specs, dy as f64));
        prop_assert_eq!(a, b);
        Ok(())
    })
}

fn caption_triggers() -> PropertyResult {
    let first = prop::sample::select(vec!["Table", "Figure", "Fig.", "The", "Tables", "Figures", "Our", "In"]);
    let second = prop::sample::select(vec!["1", "2.", "3:", "4.1", "shows", "of", "a"]);
    let third = prop::sample::select(vec!["shows", "Results", "summary", "compares", "the", "of", ""]);
    run("caption removal keeps unlabeled paragraphs", 500, prop::collection::vec((first, second, third), 1..12), |ps| {
        let bt = BodyText {
            paragraphs: ps
                .iter()
                .map(|(a, b, c)| {
                    let text = format!("{a} {b} {c} rest.").split_whitespace().collect::<Vec<_>>().join(" ");
                    Paragraph { sentences: vec![Sentence { provenance: vec![None; text.chars().count()], text }] }
                })
                .collect(),
        };
        let (kept, removed, _) = remove_captions(bt.clone(), &LexiconTagger::new());
        for r in &removed {
            prop_assert!(has_caption_label(r), "removed unlabeled {:?}", r);
        }
        for p in &bt.paragraphs {
            if !has_caption_label(&p.text()) {
                prop_assert!(kept.paragraphs.contains(p));
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- highlight

#[derive(Debug, Clone)]
struct HlLine {
    blocks: Vec<String>,
    gap_at: Option<usize>,
}

fn hl_lines() -> impl Strategy<Value = Vec<HlLine>> {
    prop::collection::vec(
        (prop::collection::vec("[A-Za-z]{1,6}( [a-z&\u{e9}]{1,5}){0,3}[ .,-]?", 1..4), prop::option::of(0..3usize))
            .prop_map(|(blocks, gap_at)| HlLine { blocks, gap_at }),
        2..9,
    )
}

fn hl_replica(lines: &[HlLine]) -> String {
    let mut body = String::new();
    for (i, l) in lines.iter().enumerate() {
        let y = 700 - 14 * i;
        let mut x = 72;
        for (j, b) in l.blocks.iter().enumerate() {
            let content = match l.gap_at.filter(|&g| g == j).and_then(|_| b.find(' ')) {
                Some(at) => format!("{}<span class=\"_ _0\"> </span>{}", escape(&b[..at]), escape(&b[at + 1..])),
                None => escape(b),
            };
            body.push_str(&format!("<div class=\"t fs0\" style=\"left:{x}px;bottom:{y}px\">{content}</div>"));
            x += 8 * b.chars().count() + 4;
        }
    }
    format!(
        "<html><head><style>.fs0{{font-size:12px;}}._0{{width:3px;}}</style></head><body><div id=\"page-container\">\
         <div class=\"pf\" style=\"width:612px;height:792px\" data-page-no=\"1\">{body}</div></div></body></html>"
    )
}

fn highlight_round_trip() -> PropertyResult {
    run(
        "highlight round trip",
        1000,
        (hl_lines(), any::<Index>(), any::<Index>(), prop::sample::select(vec!["red", "#ff0000", "rgb(0, 128, 0)"])),
        |(lines, a, b, color)| {
            let html = hl_replica(&lines);
            let doc = resolve_absolute(
                parse_replica(html.as_bytes(), &[], IngestOptions::default()).map_err(|e| TestCaseError::fail(e.to_string()))?,
            );
            let blocks = enumerate_blocks(&doc);
            let tree = group_lines(&blocks, &[(1, 612.0, 792.0)], 5.0);
            let stream = CharStream::from_tree(&tree);
            let text: Vec<char> = stream.text().chars().collect();
            let (i, j) = (a.index(text.len()), b.index(text.len()));
            let (i, j) = (i.min(j), i.max(j));
            let pattern: String = text[i..=j].iter().collect();
            if pattern.trim().is_empty() {
                return Ok(());
            }
            let m = locate_sentence(&stream, &pattern).map_err(|e| TestCaseError::fail(format!("{pattern:?}: {e}")))?;
            let span = HighlightSpan::new(m, color).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let by_index: HashMap<usize, &TextBlock> = blocks.iter().map(|b| (b.index, b)).collect();
            let out = inject_colors(html.as_bytes(), &by_index, &[span]).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(out != html.as_bytes(), "nothing was injected");
            let stripped = strip_highlights(&out).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&stripped[..], html.as_bytes(), "strip does not restore the replica");
            prop_assert_eq!(visible_text(&out).ok(), visible_text(html.as_bytes()).ok());
            let again = enumerate_blocks(&resolve_absolute(
                parse_replica(&out, &[], IngestOptions::default()).map_err(|e| TestCaseError::fail(e.to_string()))?,
            ));
            let texts = |v: &[TextBlock]| v.iter().map(|b| (b.text.clone(), b.x(), b.y())).collect::<Vec<_>>();
            prop_assert_eq!(texts(&again), texts(&blocks), "highlighting changed the extracted blocks");
            Ok(())
        },
    )
}

// ---------------------------------------------------------------- eval

const SENTENCES: &[&str] =
    &["Cats sleep.", "Dogs bark loudly.", "Birds sing at dawn.", "Fish swim.", "Rain falls.", "Wind blows hard.", "The sun rises."];

fn body_text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::collection::vec(prop::sample::select(SENTENCES.to_vec()), 1..4), 1..6)
        .prop_map(|ps| ps.iter().map(|p| p.join(" ")).collect::<Vec<_>>().join("\n\n") + "\n")
}

fn eval_counts() -> PropertyResult {
    run("eval counting", 500, (body_text(), body_text(), any::<u64>()), |(ex, gold, seed)| {
        let r = score(ex.as_bytes(), gold.as_bytes(), None).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let count = |s: &str| parse_body_text(s.as_bytes()).map(|ps| ps.iter().map(Vec::len).sum::<usize>()).unwrap_or(0);
        prop_assert_eq!(r.sentences.tp + r.sentences.fn_, count(&gold));
        prop_assert_eq!(r.sentences.tp + r.sentences.fp, count(&ex));
        let same = score(gold.as_bytes(), gold.as_bytes(), None).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!((same.sentences.f1, same.paragraphs.f1), (Some(1.0), Some(1.0)));
        let docs = vec![("a".to_string(), r.clone()), ("b".to_string(), same.clone()), ("c".to_string(), r)];
        let mut rotated = docs.clone();
        rotated.rotate_left((seed % 3) as usize);
        let agg = |d| report(d).map(|x| x.aggregate).ok();
        let (x, y): (Option<BTreeMap<_, _>>, Option<BTreeMap<_, _>>) = (agg(docs), agg(rotated));
        prop_assert_eq!(x, y, "aggregates depend on document order");
        Ok(())
    })
}

pub fn all() -> Vec<PropertyResult> {
    vec![
        coordinate_resolution(),
        line_grouping(),
        density(),
        histogram_totals(),
        removal(),
        highlight_round_trip(),
        assembly_provenance(),
        translation_invariance(),
        caption_triggers(),
        eval_counts(),
    ]
}
