//! Deterministic filler prose with no repeated sentences.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUBJECTS: &[&str] = &[
    "The extractor",
    "Each column",
    "The histogram",
    "Our method",
    "A replica page",
    "The reading order",
    "Every text block",
    "The removal stage",
    "This heuristic",
    "The sweep line",
    "A short line",
    "The corpus",
    "The assembler",
    "Our evaluation",
    "The baseline system",
    "A careful reader",
];

const VERBS: &[&str] = &[
    "preserves",
    "separates",
    "measures",
    "aligns",
    "records",
    "ignores",
    "combines",
    "reorders",
    "estimates",
    "tracks",
    "summarizes",
    "filters",
    "inspects",
    "compares",
];

const OBJECTS: &[&str] = &[
    "the spacing between consecutive lines",
    "each paragraph boundary",
    "the dominant font size",
    "several hundred documents",
    "the left margin of the page",
    "the character density of a line",
    "all remaining headings",
    "the structure of the article",
    "an approximate reading order",
    "every detected column",
    "the layout &amp; spacing cues",
    "the r\u{e9}sum\u{e9} of each section",
    "the vertical position of each block",
    "the widths of neighbouring gaps",
];

const COMPOUND_OBJECTS: &[&str] = &[
    "a well-known baseline",
    "the long-range structure",
    "a self-contained module",
    "the right-hand column",
    "every two-column page",
    "the cross-page links",
    "a state-of-the-art parser",
    "the fine-grained spacing",
];

const TAILS: &[&str] = &[
    "",
    " in most cases",
    " without manual tuning",
    " across all pages",
    " for every document",
    " under typical conditions",
    " with little overhead",
    " before assembly",
    " on the first pass",
    " at negligible cost",
];

pub struct Prose {
    rng: ChaCha8Rng,
    used: HashSet<String>,
    compounds: bool,
}

impl Prose {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), used: HashSet::new(), compounds: false }
    }

    /// Objects include hyphenated compounds.
    pub fn with_compounds(seed: u64) -> Self {
        Self { compounds: true, ..Self::new(seed) }
    }

    pub fn sentence(&mut self) -> String {
        loop {
            let s = SUBJECTS.choose(&mut self.rng).expect("nonempty");
            let v = VERBS.choose(&mut self.rng).expect("nonempty");
            let pool = if self.compounds && self.rng.random_bool(0.6) { COMPOUND_OBJECTS } else { OBJECTS };
            let o = pool.choose(&mut self.rng).expect("nonempty").replace("&amp;", "&");
            let t = TAILS.choose(&mut self.rng).expect("nonempty");
            let sentence = format!("{s} {v} {o}{t}.");
            if self.used.insert(sentence.clone()) {
                return sentence;
            }
        }
    }

    pub fn paragraph(&mut self, sentences: usize) -> String {
        (0..sentences).map(|_| self.sentence()).collect::<Vec<_>>().join(" ")
    }
}
