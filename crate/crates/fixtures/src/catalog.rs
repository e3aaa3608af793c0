//! The hand-built fixture corpus.

use serde::Serialize;

use crate::layout::{Article, ArticleBuilder, Furniture, Gutter, Hyphenation, Style};
use crate::prose::Prose;
use crate::replica::ReplicaWriter;

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct FixtureOptions {
    pub use_dict: bool,
    pub split_parity: bool,
    pub keep_captions: bool,
    pub refs_sweep: bool,
    /// Style rules live in a linked `replica.css` next to the page.
    pub linked_stylesheet: bool,
}

/// Scores a fixture must produce: false positives and negatives per category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ExpectedCounts {
    pub sentence_fp: usize,
    pub sentence_fn: usize,
    pub paragraph_fp: usize,
    pub paragraph_fn: usize,
    pub table_fn: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    Perfect,
    Documented { reason: &'static str, counts: ExpectedCounts },
}

pub struct Fixture {
    pub name: &'static str,
    pub article: Article,
    pub options: FixtureOptions,
    pub expectation: Expectation,
}

const TWO_COL: [f64; 2] = [72.0, 312.0];
const THREE_COL: [f64; 3] = [50.0, 230.0, 410.0];

const REFERENCES: &[&str] = &[
    "A. Okafor and B. Lindqvist. Reading order in scanned pages. In Proc. of the Workshop on Documents, pages 1-9, 2015.",
    "C. Marchetti. Column segmentation without training data. Journal of Layout Studies 12(3):44-61, 2017.",
    "D. Tanaka, E. Novak and F. Haddad. Locating captions with part of speech cues. Tech. report, 2019.",
    "G. Petrov. Sweeping lines over positioned text. arXiv preprint, 2020.",
];

fn basic_furniture() -> Furniture {
    Furniture { running_header: Some("Preprint submitted for review".into()), page_numbers: true, ..Furniture::default() }
}

fn standard_abstract(prose: &mut Prose) -> String {
    format!("Abstract. {}", prose.paragraph(3))
}

/// Headed sections of plain paragraphs.
fn sections(b: &mut ArticleBuilder, prose: &mut Prose, headings: &[&str], paragraphs: usize, sentences: usize) {
    for h in headings {
        b.heading(h);
        for _ in 0..paragraphs {
            b.paragraph(&prose.paragraph(sentences));
        }
    }
}

/// Adds paragraphs until the last column of a page is half full, so that
/// every column carries a similar number of lines.
fn fill(b: &mut ArticleBuilder, prose: &mut Prose, sentences: usize) {
    loop {
        let (_, col, y) = b.cursor();
        if col + 1 == b.column_count() && y < 400.0 {
            return;
        }
        b.paragraph(&prose.paragraph(sentences));
    }
}

/// Adds paragraphs until `need` units fit below text in the current column.
fn room_for(b: &mut ArticleBuilder, prose: &mut Prose, need: f64) {
    while b.at_column_top() || b.remaining() < need {
        b.paragraph(&prose.paragraph(3));
    }
}

fn single_column_basic() -> Fixture {
    let mut prose = Prose::new(1);
    let mut b = ArticleBuilder::new(Style::columns(&[72.0], 78), basic_furniture());
    b.front_matter("Positioned Text and Where to Find It", &["Ada Quarry", "Institute of Layout"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Background", "3 Method", "4 Discussion"], 3, 4);
    Fixture { name: "single_column_basic", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn two_column_basic() -> Fixture {
    let mut prose = Prose::new(2);
    let mut style = Style::columns(&TWO_COL, 37);
    style.split_blocks = true;
    style.scaled_fonts = true;
    let mut b = ArticleBuilder::new(style, basic_furniture());
    b.front_matter("A Study of Two Columns", &["Bo Lindqvist", "Cy Marchetti"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results", "4 Conclusion"], 3, 3);
    let mut w = ReplicaWriter::new();
    w.linked.push("replica.css".into());
    w.external_rules = true;
    Fixture {
        name: "two_column_basic",
        article: b.finish_with(w),
        options: FixtureOptions { linked_stylesheet: true, ..FixtureOptions::default() },
        expectation: Expectation::Perfect,
    }
}

fn two_column_abstract() -> Fixture {
    let mut prose = Prose::new(3);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    let abs = standard_abstract(&mut prose);
    b.front_matter("Spanning Abstracts Above Columns", &["Dee Okafor", "University of Margins"], Some(&abs));
    sections(&mut b, &mut prose, &["1 Introduction", "2 Approach", "3 Evaluation"], 3, 3);
    Fixture { name: "two_column_abstract", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn tables_figures() -> Fixture {
    let mut prose = Prose::new(4);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    b.front_matter("Tables, Figures and Captions", &["Eve Tanaka"], None);
    b.heading("1 Introduction");
    for _ in 0..3 {
        b.paragraph(&prose.paragraph(3));
    }
    room_for(&mut b, &mut prose, 120.0);
    b.table(
        "Table 1: Results on the qxv benchmark per zkw split.",
        &[&["Qa17", "Qb28", "Qc39"], &["Qd41", "Qe52", "Qf63"], &["Qg74", "Qh85", "Qi96"]],
    );
    b.paragraph(&prose.paragraph(3));
    b.paragraph(&prose.paragraph(3));
    room_for(&mut b, &mut prose, 190.0);
    b.figure(120.0, &["Lx1", "Lx2", "Lx3"], true, "Figure 1. Overview of the vrq stages from input to output.");
    b.heading("2 Analysis");
    for _ in 0..3 {
        b.paragraph(&prose.paragraph(3));
    }
    room_for(&mut b, &mut prose, 160.0);
    b.figure(90.0, &["Ly1", "Ly2"], false, "Fig. 2: Distribution of zfw gaps between neighbouring lines in the qxv corpus.");
    b.paragraph(&prose.paragraph(4));
    b.paragraph(&prose.paragraph(3));
    fill(&mut b, &mut prose, 3);
    Fixture { name: "tables_figures", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn display_math() -> Fixture {
    let mut prose = Prose::new(5);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    b.front_matter("Display Mathematics Between Paragraphs", &["Fay Haddad"], None);
    b.heading("1 Model");
    b.paragraph(&prose.paragraph(3));
    b.paragraph(&prose.paragraph(3));
    b.sparse_equation(&["x", "=", "a", "+", "b", "y"], "(1)");
    b.paragraph(&prose.paragraph(3));
    b.display_equation("f(x) = sum of g(x, k)", "(2)");
    b.paragraph(&prose.paragraph(3));
    b.heading("2 Estimation");
    b.paragraph(&prose.paragraph(4));
    b.sparse_equation(&["p", "(", "z", ")", "<", "q"], "(3)");
    b.paragraph(&prose.paragraph(3));
    b.paragraph(&prose.paragraph(3));
    b.display_equation("h(t) = max over s of u(s, t)", "(4)");
    b.paragraph(&prose.paragraph(4));
    b.paragraph(&prose.paragraph(3));
    Fixture { name: "display_math", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn line_numbers() -> Fixture {
    let mut prose = Prose::new(6);
    let furniture = Furniture { gutters: vec![Gutter::Left, Gutter::Right], page_numbers: true, ..Furniture::default() };
    let mut b = ArticleBuilder::new(Style::columns(&[72.0], 78), furniture);
    b.front_matter("Review Copy With Line Numbers", &["Gus Petrov"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results"], 3, 4);
    Fixture { name: "line_numbers", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn paired_line_numbers() -> Fixture {
    let mut prose = Prose::new(16);
    let furniture = Furniture { gutters: vec![Gutter::Paired], page_numbers: true, ..Furniture::default() };
    let mut b = ArticleBuilder::new(Style::columns(&[72.0], 78), furniture);
    b.front_matter("Line Numbers in One Block", &["Hal Brisk"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method"], 3, 4);
    Fixture { name: "paired_line_numbers", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn watermark_footnotes() -> Fixture {
    let mut prose = Prose::new(7);
    let furniture = Furniture {
        running_header: Some("Draft manuscript".into()),
        page_numbers: true,
        watermark: Some("DRAFT".into()),
        side_stamp: Some("arXiv:2401.01234v1 [cs.DL] 9 Jan 2024".into()),
        ..Furniture::default()
    };
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), furniture);
    b.front_matter("Stamped Pages and Footnotes", &["Ida Reyes"], None);
    b.heading("1 Introduction");
    b.paragraph(&prose.paragraph(3));
    b.footnote("1 Code and data are available from the authors on request.");
    b.paragraph(&prose.paragraph(3));
    b.footnote("2 This work was supported by a small grant.");
    sections(&mut b, &mut prose, &["2 Method", "3 Results"], 3, 3);
    b.footnote("3 Results are averaged over five runs.");
    fill(&mut b, &mut prose, 3);
    Fixture { name: "watermark_footnotes", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn references() -> Fixture {
    let mut prose = Prose::new(8);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    b.front_matter("References and Appendices", &["Jo Kimura"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Conclusion"], 3, 3);
    fill(&mut b, &mut prose, 3);
    b.references(Some("References"), REFERENCES);
    b.trailing_heading("A Appendix");
    b.trailing_paragraph(&prose.paragraph(3));
    b.trailing_paragraph(&prose.paragraph(3));
    Fixture { name: "references", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn references_sweep() -> Fixture {
    let mut prose = Prose::new(9);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    b.front_matter("A Bibliography Without a Heading", &["Kai Novak"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Conclusion"], 3, 3);
    b.references(None, REFERENCES);
    Fixture {
        name: "references_sweep",
        article: b.finish(),
        options: FixtureOptions { refs_sweep: true, ..FixtureOptions::default() },
        expectation: Expectation::Perfect,
    }
}

fn hyphenation() -> Fixture {
    let mut prose = Prose::new(10);
    let mut style = Style::columns(&TWO_COL, 37);
    style.hyphenation = Hyphenation::Split;
    let mut b = ArticleBuilder::new(style, basic_furniture());
    b.front_matter("Words Broken Across Lines", &["Lea Fontaine"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results"], 3, 3);
    Fixture { name: "hyphenation", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn hyphenation_dict() -> Fixture {
    let mut prose = Prose::with_compounds(11);
    let mut style = Style::columns(&TWO_COL, 37);
    style.hyphenation = Hyphenation::Compounds;
    let mut b = ArticleBuilder::new(style, basic_furniture());
    b.front_matter("Compounds at the Line End", &["Max Ueda"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results"], 3, 3);
    fill(&mut b, &mut prose, 3);
    Fixture {
        name: "hyphenation_dict",
        article: b.finish(),
        options: FixtureOptions { use_dict: true, ..FixtureOptions::default() },
        expectation: Expectation::Perfect,
    }
}

fn three_column() -> Fixture {
    let mut prose = Prose::new(12);
    let mut b = ArticleBuilder::new(Style::columns(&THREE_COL, 25), basic_furniture());
    b.front_matter("Three Narrow Columns", &["Ned Olsen"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results"], 3, 2);
    fill(&mut b, &mut prose, 2);
    Fixture { name: "three_column", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn nonindented_paragraphs() -> Fixture {
    let mut prose = Prose::new(13);
    let mut style = Style::columns(&TWO_COL, 37);
    style.flush_paragraphs = true;
    let mut b = ArticleBuilder::new(style, basic_furniture());
    b.front_matter("Paragraphs Separated by Space", &["Ola Berg"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results"], 3, 3);
    Fixture { name: "nonindented_paragraphs", article: b.finish(), options: FixtureOptions::default(), expectation: Expectation::Perfect }
}

fn parity_lefts(page: usize) -> Option<Vec<f64>> {
    (page % 2 == 1).then(|| vec![60.0, 300.0])
}

fn split_parity() -> Fixture {
    let mut prose = Prose::new(14);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture()).with_page_lefts(parity_lefts);
    b.front_matter("Mirrored Margins on Facing Pages", &["Pia Castell"], None);
    sections(&mut b, &mut prose, &["1 Introduction", "2 Method", "3 Results", "4 Discussion", "5 Conclusion"], 3, 3);
    fill(&mut b, &mut prose, 3);
    Fixture {
        name: "split_parity",
        article: b.finish(),
        options: FixtureOptions { split_parity: true, ..FixtureOptions::default() },
        expectation: Expectation::Perfect,
    }
}

fn math_mid_paragraph() -> Fixture {
    let mut prose = Prose::new(15);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    b.front_matter("An Equation Inside a Paragraph", &["Quin Adler"], None);
    b.heading("1 Model");
    b.paragraph(&prose.paragraph(3));
    let before = format!("{} The width of a column is computed as", prose.sentence());
    let after = format!("where w is the page width and m the margin. {}", prose.sentence());
    b.paragraph_around_equation(&before, &["w", "-", "2", "m"], "(1)", &after);
    b.paragraph(&prose.paragraph(3));
    fill(&mut b, &mut prose, 3);
    Fixture {
        name: "math_mid_paragraph",
        article: b.finish(),
        options: FixtureOptions::default(),
        expectation: Expectation::Documented {
            reason: "text resuming after a display equation starts a new paragraph, splitting the sentence around the equation",
            counts: ExpectedCounts { sentence_fp: 2, sentence_fn: 1, paragraph_fp: 1, ..ExpectedCounts::default() },
        },
    }
}

fn caption_verb() -> Fixture {
    let mut prose = Prose::new(17);
    let mut b = ArticleBuilder::new(Style::columns(&TWO_COL, 37), basic_furniture());
    b.front_matter("A Caption That Reads Like Prose", &["Rae Dunmore"], None);
    b.heading("1 Introduction");
    b.paragraph(&prose.paragraph(3));
    b.paragraph(&prose.paragraph(3));
    room_for(&mut b, &mut prose, 160.0);
    b.figure(100.0, &["Lz1", "Lz2"], true, "Figure 2 shows the spread of gaps.");
    b.paragraph(&prose.paragraph(3));
    fill(&mut b, &mut prose, 3);
    Fixture {
        name: "caption_verb",
        article: b.finish(),
        options: FixtureOptions::default(),
        expectation: Expectation::Documented {
            reason: "a caption whose third word is a verb is kept as a paragraph",
            counts: ExpectedCounts { sentence_fp: 1, paragraph_fp: 1, table_fn: 1, ..ExpectedCounts::default() },
        },
    }
}

fn unindented_column_top() -> Fixture {
    let mut prose = Prose::new(18);
    let mut style = Style::columns(&TWO_COL, 37);
    style.flush_paragraphs = true;
    let mut b = ArticleBuilder::new(style, basic_furniture());
    b.front_matter("A Paragraph Opening a Column", &["Sol Varga"], None);
    b.heading("1 Introduction");
    b.paragraph(&prose.paragraph(3));
    b.paragraph(&prose.paragraph(3));
    b.next_column();
    b.paragraph(&prose.paragraph(3));
    b.paragraph(&prose.paragraph(3));
    Fixture {
        name: "unindented_column_top",
        article: b.finish(),
        options: FixtureOptions::default(),
        expectation: Expectation::Documented {
            reason: "a flush-left paragraph at the top of a column continues the paragraph ending the previous column",
            counts: ExpectedCounts { paragraph_fn: 1, ..ExpectedCounts::default() },
        },
    }
}

/// Every fixture, in a fixed order.
pub fn all() -> Vec<Fixture> {
    vec![
        single_column_basic(),
        two_column_basic(),
        two_column_abstract(),
        tables_figures(),
        display_math(),
        line_numbers(),
        paired_line_numbers(),
        watermark_footnotes(),
        references(),
        references_sweep(),
        hyphenation(),
        hyphenation_dict(),
        three_column(),
        nonindented_paragraphs(),
        split_parity(),
        math_mid_paragraph(),
        caption_verb(),
        unindented_column_top(),
    ]
}
