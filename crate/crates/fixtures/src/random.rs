//! Generated layouts with known column boundaries, and a family of
//! documents that differ only in length.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::layout::{ArticleBuilder, Furniture, Style, BODY_SIZE, LINE_STEP, TOP};
use crate::prose::Prose;
use crate::replica::{Element, ReplicaWriter, TextRun, PAGE_WIDTH};

pub struct RandomLayout {
    pub html: String,
    pub k: usize,
    pub lefts: Vec<f64>,
    pub margin: f64,
}

const WORDS: &[&str] = &["lorem", "ipsum", "dolor", "sit", "amet", "elit", "sed", "tempor", "magna", "aliqua", "enim", "minim"];

fn filler(rng: &mut impl Rng, chars: usize) -> String {
    let mut s = String::new();
    while s.len() < chars {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(WORDS[rng.random_range(0..WORDS.len())]);
    }
    s
}

/// At least 60% of each column's lines start at the column's left edge;
/// the rest are indented by up to 48 units. A few stray blocks land
/// anywhere inside the text area.
pub fn random_layout(seed: u64) -> RandomLayout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=3usize);
    let margin = rng.random_range(36..=80) as f64;
    let pitch = (PAGE_WIDTH - 2.0 * margin) / k as f64;
    let lefts: Vec<f64> = (0..k).map(|i| (margin + i as f64 * pitch).round()).collect();
    let chars = ((pitch - 30.0) / 6.0) as usize;
    let mut writer = ReplicaWriter::new();
    for _ in 0..rng.random_range(1..=3) {
        let mut page = Vec::new();
        for &left in &lefts {
            let n = rng.random_range(25..=45usize);
            let flush = (n as f64 * rng.random_range(0.6..0.95)).ceil() as usize;
            let mut rows: Vec<bool> = (0..n).map(|i| i < flush).collect();
            for i in (1..rows.len()).rev() {
                rows.swap(i, rng.random_range(0..=i));
            }
            for (i, is_flush) in rows.into_iter().enumerate() {
                let x = if is_flush { left } else { left + rng.random_range(1..=48) as f64 };
                let y = TOP - LINE_STEP * i as f64;
                let len = rng.random_range(chars / 2..=chars);
                page.push(Element::Text(TextRun::new(x, y, BODY_SIZE, &filler(&mut rng, len))));
            }
        }
        for _ in 0..rng.random_range(0..=4) {
            let x = rng.random_range(margin + 1.0..PAGE_WIDTH - margin - 30.0).round();
            let y = rng.random_range(80.0..700.0f64).round() + 0.5;
            page.push(Element::Text(TextRun::new(x, y, BODY_SIZE, &filler(&mut rng, 4))));
        }
        writer.add_page(&page);
    }
    RandomLayout { html: writer.finish(), k, lefts, margin }
}

/// A two-column page filled with prose, repeated `pages` times.
pub fn repeated_pages(pages: usize) -> String {
    let mut prose = Prose::new(99);
    let furniture = Furniture { running_header: Some("Proceedings of a workshop".into()), page_numbers: true, ..Furniture::default() };
    let mut b = ArticleBuilder::new(Style::columns(&[72.0, 312.0], 37), furniture);
    let mut section = 1;
    while b.page_count() == 1 {
        b.heading(&format!("{section} Section"));
        section += 1;
        for _ in 0..3 {
            b.paragraph(&prose.paragraph(3));
        }
    }
    let first = b.into_pages().swap_remove(0);
    let mut writer = ReplicaWriter::new();
    for _ in 0..pages {
        writer.add_page(&first);
    }
    writer.finish()
}
