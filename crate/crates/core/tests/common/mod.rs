#![allow(dead_code)]

use pdfbot::bt_assembly::HyphenDict;
use pdfbot::eval::{score, EvalReport};
use pdfbot::nbt_removal::ReferenceMode;
use pdfbot::{extract, Extraction, Options};
use pdfbot_fixtures::Fixture;

pub fn options(f: &Fixture) -> Options {
    let mut o = Options::new();
    o.split_parity = f.options.split_parity;
    o.keep_captions = f.options.keep_captions;
    if f.options.refs_sweep {
        o.references = ReferenceMode::Sweep;
    }
    if f.options.use_dict {
        o.dict = Some(HyphenDict::parse(&f.article.dict_txt()));
    }
    o
}

pub fn sheets(f: &Fixture) -> Vec<&str> {
    if f.options.linked_stylesheet {
        vec![f.article.stylesheet.as_str()]
    } else {
        Vec::new()
    }
}

pub fn run(f: &Fixture) -> (Extraction, EvalReport) {
    let ex = extract(f.article.html.as_bytes(), &sheets(f), &options(f)).unwrap_or_else(|e| panic!("{}: {e}", f.name));
    let report = score(ex.bt_txt().as_bytes(), f.article.gold_txt().as_bytes(), Some(f.article.tables_txt().as_bytes()))
        .unwrap_or_else(|e| panic!("{}: {e}", f.name));
    (ex, report)
}
