//! Scoring extracted body text against gold annotations.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::Serialize;

use crate::bt_assembly::segment_sentences;
use crate::error::{Error, Result};

/// Paragraphs of a BT.txt file, each split into sentences.
pub fn parse_body_text(bytes: &[u8]) -> Result<Vec<Vec<String>>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::BodyTextFormat(format!("not UTF-8: {e}")))?;
    if let Some(c) = text.chars().find(|&c| c.is_control() && !matches!(c, '\n' | '\r' | '\t')) {
        return Err(Error::BodyTextFormat(format!("control character U+{:04X}", c as u32)));
    }
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(segment_sentences).filter(|s| !s.is_empty()).collect())
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CategoryScore {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// False positives that are a substring or superstring of a gold item.
    pub incomplete: usize,
    /// False positives with no gold counterpart.
    pub extra: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

impl CategoryScore {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |a: usize, b: usize| (b > 0).then(|| a as f64 / b as f64);
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        Self { tp, fp, fn_, incomplete: 0, extra: 0, precision, recall, f1 }
    }

    pub fn metric(&self, m: Metric) -> Option<f64> {
        match m {
            Metric::Precision => self.precision,
            Metric::Recall => self.recall,
            Metric::F1 => self.f1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Precision,
    Recall,
    F1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Sentences,
    Paragraphs,
    TableFigureText,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub sentences: CategoryScore,
    pub paragraphs: CategoryScore,
    pub table_figure_text: Option<CategoryScore>,
}

impl EvalReport {
    pub fn category(&self, c: Category) -> Option<&CategoryScore> {
        match c {
            Category::Sentences => Some(&self.sentences),
            Category::Paragraphs => Some(&self.paragraphs),
            Category::TableFigureText => self.table_figure_text.as_ref(),
        }
    }
}

/// Multiset matching: returns tp and the unmatched items of both sides.
fn match_multiset<'a>(extracted: &[&'a str], gold: &[&'a str]) -> (usize, Vec<&'a str>, Vec<&'a str>) {
    let mut pool: HashMap<&str, usize> = HashMap::new();
    for g in gold {
        *pool.entry(g).or_insert(0) += 1;
    }
    let mut tp = 0;
    let mut left_extracted = Vec::new();
    for e in extracted {
        match pool.get_mut(e) {
            Some(n) if *n > 0 => {
                *n -= 1;
                tp += 1;
            }
            _ => left_extracted.push(*e),
        }
    }
    let mut left_gold = Vec::new();
    for g in gold {
        if let Some(n) = pool.get_mut(g) {
            if *n > 0 {
                *n -= 1;
                left_gold.push(*g);
            }
        }
    }
    (tp, left_extracted, left_gold)
}

/// Whether `needle` occurs in `hay` at word boundaries.
fn contains_words(hay: &str, needle: &str) -> bool {
    if needle.is_empty() {
        return false;
    }
    let boundary = |c: Option<char>| !c.is_some_and(char::is_alphanumeric);
    hay.match_indices(needle).any(|(i, m)| {
        let before = hay[..i].chars().next_back();
        let after = hay[i + m.len()..].chars().next();
        let edge_ok = |inner: Option<char>, outer: Option<char>| !inner.is_some_and(char::is_alphanumeric) || boundary(outer);
        edge_ok(m.chars().next(), before) && edge_ok(m.chars().next_back(), after)
    })
}

/// Scores one document. `tables` lists texts of table and figure blocks
/// that should be absent from the extraction, one per line.
pub fn score(extracted: &[u8], gold: &[u8], tables: Option<&[u8]>) -> Result<EvalReport> {
    let ext = parse_body_text(extracted)?;
    let gold_pars = parse_body_text(gold)?;
    if gold_pars.is_empty() {
        return Err(Error::BodyTextFormat("gold body text is empty".into()));
    }

    let ext_sent: Vec<String> = ext.iter().flatten().map(|s| normalize(s)).collect();
    let gold_sent: Vec<String> = gold_pars.iter().flatten().map(|s| normalize(s)).collect();
    let e: Vec<&str> = ext_sent.iter().map(String::as_str).collect();
    let g: Vec<&str> = gold_sent.iter().map(String::as_str).collect();
    let (tp, left_e, left_g) = match_multiset(&e, &g);
    let mut sentences = CategoryScore::from_counts(tp, left_e.len(), left_g.len());
    for s in &left_e {
        if g.iter().any(|gs| gs.contains(s) || s.contains(gs)) {
            sentences.incomplete += 1;
        } else {
            sentences.extra += 1;
        }
    }

    let ext_first: Vec<&str> = ext.iter().map(|p| p[0].as_str()).collect();
    let gold_first: Vec<&str> = gold_pars.iter().map(|p| p[0].as_str()).collect();
    let (ptp, pleft_e, pleft_g) = match_multiset(&ext_first, &gold_first);
    let mut paragraphs = CategoryScore::from_counts(ptp, pleft_e.len(), pleft_g.len());
    for p in &pleft_e {
        if gold_first.iter().any(|gs| gs.contains(p) || p.contains(gs)) {
            paragraphs.incomplete += 1;
        } else {
            paragraphs.extra += 1;
        }
    }

    let table_figure_text = match tables {
        None => None,
        Some(bytes) => {
            let text = std::str::from_utf8(bytes).map_err(|e| Error::BodyTextFormat(format!("table list not UTF-8: {e}")))?;
            let hay = normalize(&ext.iter().flatten().cloned().collect::<Vec<_>>().join(" "));
            let (mut tp, mut fn_) = (0, 0);
            for item in text.lines().map(normalize).filter(|l| !l.is_empty()) {
                if contains_words(&hay, &item) {
                    fn_ += 1;
                } else {
                    tp += 1;
                }
            }
            Some(CategoryScore::from_counts(tp, 0, fn_))
        }
    };

    Ok(EvalReport { sentences, paragraphs, table_figure_text })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Aggregate {
    pub avg: f64,
    pub median: f64,
    pub max: f64,
    pub min: f64,
    /// Population standard deviation.
    pub std: f64,
    /// Documents with a defined value.
    pub n: usize,
}

impl Aggregate {
    /// `None` when no value is given.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let avg = sorted.iter().sum::<f64>() / n as f64;
        let median = if n % 2 == 1 { sorted[n / 2] } else { (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0 };
        let var = sorted.iter().map(|v| (v - avg).powi(2)).sum::<f64>() / n as f64;
        Some(Self { avg, median, max: sorted[n - 1], min: sorted[0], std: var.sqrt(), n })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub documents: Vec<(String, EvalReport)>,
    pub aggregate: BTreeMap<Category, BTreeMap<Metric, Option<Aggregate>>>,
}

pub const CATEGORIES: [Category; 3] = [Category::Sentences, Category::Paragraphs, Category::TableFigureText];
pub const METRICS: [Metric; 3] = [Metric::Precision, Metric::Recall, Metric::F1];

/// Aggregates over documents; undefined values are left out.
pub fn report(documents: Vec<(String, EvalReport)>) -> Result<CorpusReport> {
    if documents.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut aggregate = BTreeMap::new();
    for c in CATEGORIES {
        let mut per_metric = BTreeMap::new();
        for m in METRICS {
            let values: Vec<f64> = documents.iter().filter_map(|(_, r)| r.category(c).and_then(|s| s.metric(m))).collect();
            per_metric.insert(m, Aggregate::of(&values));
        }
        aggregate.insert(c, per_metric);
    }
    Ok(CorpusReport { documents, aggregate })
}

/// Two decimals, except that exact 0 and 1 print as integers and a value
/// below 1 that would print as 1.00 gets as many decimals as needed.
pub fn format_metric(v: f64) -> String {
    if v == 1.0 || v == 0.0 {
        return format!("{}", v as i64);
    }
    let mut digits = 2;
    loop {
        let s = format!("{v:.digits$}");
        let rounds_to_one = v < 1.0 && s.parse::<f64>() == Ok(1.0);
        if !rounds_to_one || digits >= 12 {
            return s;
        }
        digits += 1;
    }
}

fn category_name(c: Category) -> &'static str {
    match c {
        Category::Sentences => "sentences",
        Category::Paragraphs => "paragraphs",
        Category::TableFigureText => "table/figure",
    }
}

fn metric_name(m: Metric) -> &'static str {
    match m {
        Metric::Precision => "precision",
        Metric::Recall => "recall",
        Metric::F1 => "f1",
    }
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), format_metric)
}

/// The human-readable table: per-document counts and metrics, then
/// Avg/Med/Max/Min/Std rows.
pub fn render_table(r: &CorpusReport) -> String {
    let mut out = String::new();
    for (name, doc) in &r.documents {
        out.push_str(&format!("{name}\n"));
        for c in CATEGORIES {
            if let Some(s) = doc.category(c) {
                out.push_str(&format!(
                    "  {:<13} tp={:<4} fp={:<4} fn={:<4} P={:<6} R={:<6} F1={}\n",
                    category_name(c),
                    s.tp,
                    s.fp,
                    s.fn_,
                    cell(s.precision),
                    cell(s.recall),
                    cell(s.f1)
                ));
            }
        }
    }
    out.push_str(&format!("\n{:<13} {:<10} {:>7} {:>7} {:>7} {:>7} {:>7}\n", "category", "metric", "Avg", "Med", "Max", "Min", "Std"));
    for (c, metrics) in &r.aggregate {
        for (m, agg) in metrics {
            let cols = match agg {
                Some(a) => [a.avg, a.median, a.max, a.min, a.std].map(format_metric),
                None => std::array::from_fn(|_| "n/a".to_string()),
            };
            out.push_str(&format!(
                "{:<13} {:<10} {:>7} {:>7} {:>7} {:>7} {:>7}\n",
                category_name(*c),
                metric_name(*m),
                cols[0],
                cols[1],
                cols[2],
                cols[3],
                cols[4]
            ));
        }
    }
    out
}

/// Scores every subdirectory of `dir` holding `BT.txt` and `gold.txt`
/// (and optionally `tables.txt`), in name order.
pub fn score_corpus(dir: &Path) -> Result<CorpusReport> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.join("BT.txt").is_file() && p.join("gold.txt").is_file())
        .collect();
    entries.sort();
    let mut docs = Vec::new();
    for p in entries {
        let tables = p.join("tables.txt");
        let tables = tables.is_file().then(|| std::fs::read(&tables)).transpose()?;
        let r = score(&std::fs::read(p.join("BT.txt"))?, &std::fs::read(p.join("gold.txt"))?, tables.as_deref())?;
        let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        docs.push((name, r));
    }
    report(docs)
}
