//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any failure.

#[path = "../common/mod.rs"]
mod common;
mod properties;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pdfbot::dom_ingest::TextBlock;
use pdfbot::eval::{format_metric, render_table, report, score, CategoryScore, EvalReport};
use pdfbot::pipeline::sweep_debug;
use pdfbot::sentence_highlight::{inject_colors, locate_sentence, strip_highlights, CharStream, HighlightSpan};
use pdfbot::{extract, Options};
use pdfbot_fixtures::{random_layout, repeated_pages, Expectation, Fixture};

struct Outcome {
    name: &'static str,
    problems: Vec<String>,
    detail: String,
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn counts(r: &EvalReport) -> [usize; 5] {
    let t = r.table_figure_text.unwrap_or_default();
    [r.sentences.fp, r.sentences.fn_, r.paragraphs.fp, r.paragraphs.fn_, t.fn_]
}

/// No errors; F1 is 1, or undefined when there is nothing to find.
fn perfect(s: &CategoryScore) -> bool {
    s.fp == 0 && s.fn_ == 0 && (s.f1 == Some(1.0) || s.tp == 0)
}

fn fixture_extraction(fixtures: &[Fixture]) -> Outcome {
    let started = Instant::now();
    let mut problems = Vec::new();
    for f in fixtures {
        let (ex, r) = common::run(f);
        match &f.expectation {
            Expectation::Perfect => {
                let table_ok = r.table_figure_text.is_none_or(|t| perfect(&t));
                if !(perfect(&r.sentences) && perfect(&r.paragraphs) && table_ok) {
                    problems.push(format!("{}: fp/fn counts {:?}", f.name, counts(&r)));
                }
                if !f.article.violations.is_empty() {
                    problems.push(format!("{}: layout violations {:?}", f.name, f.article.violations));
                }
                let kept: Vec<String> = ex.kept.lines().map(|l| normalize(&l.text())).filter(|t| !t.is_empty()).collect();
                let want: Vec<String> = f.article.lines.iter().map(|l| normalize(l)).collect();
                if kept != want {
                    let at = kept.iter().zip(&want).position(|(a, b)| a != b).unwrap_or(kept.len().min(want.len()));
                    problems.push(format!("{}: kept lines differ at {at}: {:?} vs {:?}", f.name, kept.get(at), want.get(at)));
                }
            }
            Expectation::Documented { counts: c, .. } => {
                let want = [c.sentence_fp, c.sentence_fn, c.paragraph_fp, c.paragraph_fn, c.table_fn];
                if counts(&r) != want {
                    problems.push(format!("{}: counts {:?}, expected {want:?}", f.name, counts(&r)));
                }
            }
        }
        for (i, lefts) in f.article.page_lefts.iter().enumerate() {
            let found = &ex.layout.for_page(i as u32 + 1).column_lefts;
            if found != lefts {
                problems.push(format!("{}: page {} columns {found:?}, expected {lefts:?}", f.name, i + 1));
                break;
            }
        }
        let (lo, hi) = ex.layout.combined.bt_area;
        if !(0.0 <= lo && lo < hi && hi <= ex.layout.combined.page_width) {
            problems.push(format!("{}: text area {lo}..{hi} outside the page", f.name));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(5) {
        problems.push(format!("suite took {elapsed:?}"));
    }
    Outcome { name: "fixture extraction", problems, detail: format!("{} fixtures in {:.2?}", fixtures.len(), elapsed) }
}

fn column_detection() -> Outcome {
    let mut problems = Vec::new();
    let seeds = 100;
    for seed in 0..seeds {
        let l = random_layout(seed);
        match sweep_debug(l.html.as_bytes(), &[], &Options::new()) {
            Err(e) => problems.push(format!("seed {seed}: {e}")),
            Ok((_, layout)) => {
                let m = &layout.combined;
                if m.k != l.k || m.column_lefts != l.lefts {
                    problems.push(format!("seed {seed}: found k={} {:?}, expected k={} {:?}", m.k, m.column_lefts, l.k, l.lefts));
                }
            }
        }
    }
    Outcome { name: "column detection on generated layouts", problems, detail: format!("{seeds} seeds") }
}

fn invariants() -> Outcome {
    let results = properties::all();
    let detail = results.iter().map(|r| format!("{} x{}", r.name, r.cases)).collect::<Vec<_>>().join("; ");
    let problems = results.into_iter().filter_map(|r| r.failure.map(|f| format!("{}: {f}", r.name))).collect();
    Outcome { name: "invariants", problems, detail }
}

/// Least-squares line through the points; returns (slope, r squared).
fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) })
}

fn scaling() -> Outcome {
    let mut problems = Vec::new();
    let mut points = Vec::new();
    for pages in [1, 2, 4, 8, 16, 32, 48, 64] {
        let html = repeated_pages(pages);
        let best = (0..3)
            .map(|_| {
                let t = Instant::now();
                let ex = extract(html.as_bytes(), &[], &Options::new());
                let d = t.elapsed();
                if let Err(e) = ex {
                    panic!("{pages} pages: {e}");
                }
                d
            })
            .min()
            .unwrap_or_default();
        points.push((pages as f64, best.as_secs_f64()));
    }
    let (slope, r2) = linear_fit(&points);
    let last = points.last().map_or(0.0, |p| p.1);
    if r2 < 0.95 {
        problems.push(format!("r^2 {r2:.3} below 0.95"));
    }
    if last >= 2.0 {
        problems.push(format!("64 pages took {last:.2}s"));
    }
    Outcome {
        name: "linear scaling",
        problems,
        detail: format!("r^2 {r2:.3}, {:.1} ms/page, 64 pages in {:.0} ms", slope * 1000.0, last * 1000.0),
    }
}

fn highlight_round_trip(fixtures: &[Fixture]) -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for f in fixtures {
        let (ex, _) = common::run(f);
        let html = f.article.html.as_bytes();
        let stream = CharStream::from_tree(&ex.kept);
        let by_index: HashMap<usize, &TextBlock> = ex.blocks.iter().map(|b| (b.index, b)).collect();
        let bt = ex.bt_txt();
        for s in ex.body_text.sentences() {
            checked += 1;
            let out = locate_sentence(&stream, &s.text)
                .and_then(|m| HighlightSpan::new(m, "red"))
                .and_then(|span| inject_colors(html, &by_index, &[span]));
            let out = match out {
                Ok(out) => out,
                Err(e) => {
                    problems.push(format!("{}: {:?}: {e}", f.name, s.text));
                    continue;
                }
            };
            match strip_highlights(&out) {
                Ok(back) if back == html => {}
                _ => problems.push(format!("{}: strip does not restore the replica after {:?}", f.name, s.text)),
            }
            match extract(&out, &common::sheets(f), &common::options(f)) {
                Ok(again) if again.bt_txt() == bt => {}
                _ => problems.push(format!("{}: highlighting {:?} changes the body text", f.name, s.text)),
            }
        }
    }
    problems.truncate(10);
    Outcome { name: "highlight round trip", problems, detail: format!("{checked} sentences") }
}

fn evaluation(fixtures: &[Fixture]) -> Outcome {
    let mut problems = Vec::new();
    let mut docs = Vec::new();
    for f in fixtures {
        let gold = f.article.gold_txt();
        match score(gold.as_bytes(), gold.as_bytes(), None) {
            Ok(r) if perfect(&r.sentences) && perfect(&r.paragraphs) => docs.push((f.name.to_string(), r)),
            Ok(r) => problems.push(format!("{}: gold against itself gives {:?}", f.name, counts(&r))),
            Err(e) => problems.push(format!("{}: {e}", f.name)),
        }
    }
    for (v, want) in [(0.999, "0.999"), (1.0, "1"), (0.98, "0.98"), (0.0, "0"), (0.5, "0.50"), (0.9996, "0.9996")] {
        if format_metric(v) != want {
            problems.push(format!("{v} prints as {}", format_metric(v)));
        }
    }
    // 999 of 1000 sentences found
    let gold: String = (0..1000).map(|i| format!("Sentence number {i} ends here.\n")).collect();
    let ex: String = gold.lines().skip(1).map(|l| format!("{l}\n")).collect();
    match score(ex.as_bytes(), gold.as_bytes(), None).and_then(|r| {
        docs.push(("near".into(), r));
        report(docs)
    }) {
        Ok(corpus) => {
            let table = render_table(&corpus);
            if !table.contains("0.999") {
                problems.push(format!("recall 0.999 missing from the report:\n{table}"));
            }
        }
        Err(e) => problems.push(e.to_string()),
    }
    Outcome { name: "evaluation", problems, detail: format!("{} gold files", fixtures.len()) }
}

fn main() -> ExitCode {
    let fixtures = pdfbot_fixtures::all();
    let outcomes = [
        fixture_extraction(&fixtures),
        column_detection(),
        invariants(),
        scaling(),
        highlight_round_trip(&fixtures),
        evaluation(&fixtures),
    ];
    let mut failed = false;
    for o in &outcomes {
        let verdict = if o.problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {} ({})", o.name, o.detail);
        for p in &o.problems {
            println!("    {p}");
        }
        failed |= !o.problems.is_empty();
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
