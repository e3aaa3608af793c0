use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;

use pdfbot::bt_assembly::HyphenDict;
use pdfbot::error::{Error, Result};
use pdfbot::eval::{render_table, report, score, score_corpus};
use pdfbot::nbt_removal::ReferenceMode;
use pdfbot::pipeline::{extract, highlight, load_stylesheets, sweep_debug, Options};
use pdfbot::text_metrics::Thresholds;

#[derive(Parser)]
#[command(name = "pdfbot", version, about = "Body-text extraction from HTML replicas of PDF articles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract body text into BT.txt.
    Extract {
        html: PathBuf,
        #[arg(short, long, default_value = "BT.txt")]
        output: PathBuf,
        /// Write one JSON line per removal decision.
        #[arg(long, value_name = "PATH")]
        dump_verdicts: Option<PathBuf>,
        /// Write the sweep histogram as CSV (x,count).
        #[arg(long, value_name = "PATH")]
        dump_histogram: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Color body-text sentences in the replica.
    Highlight {
        html: PathBuf,
        #[arg(long, required = true)]
        sentence: Vec<String>,
        #[arg(long, required = true)]
        color: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Score extracted body text against gold.
    Eval {
        #[arg(required_unless_present = "corpus")]
        extracted: Option<PathBuf>,
        #[arg(required_unless_present = "corpus")]
        gold: Option<PathBuf>,
        /// Table and figure texts expected to be removed, one per line.
        #[arg(long)]
        tables: Option<PathBuf>,
        /// Directory of documents, each a subdirectory with BT.txt, gold.txt and optionally tables.txt.
        #[arg(long, conflicts_with_all = ["extracted", "gold", "tables"])]
        corpus: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Print the sweep histogram and the detected columns.
    SweepDebug {
        html: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RefsArg {
    Keyword,
    Sweep,
}

#[derive(Args)]
struct PipelineArgs {
    /// Style sheet file or directory of .css files; repeatable.
    #[arg(long)]
    css: Vec<PathBuf>,
    /// Threshold file (key = value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    delta1: Option<f64>,
    #[arg(long)]
    delta2: Option<f64>,
    #[arg(long)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    #[arg(long)]
    gamma3: Option<f64>,
    #[arg(long)]
    gamma4: Option<f64>,
    #[arg(long)]
    gamma5: Option<f64>,
    #[arg(long)]
    peak_fraction: Option<f64>,
    /// Fail on style classes that do not resolve.
    #[arg(long)]
    strict: bool,
    /// Detect columns separately on odd and even pages.
    #[arg(long)]
    split_parity: bool,
    /// Treat a small-font abstract like any other off-size text.
    #[arg(long)]
    no_abstract_keywords: bool,
    #[arg(long, value_enum, default_value = "keyword")]
    refs: RefsArg,
    #[arg(long)]
    keep_captions: bool,
    /// Hyphenated compounds (one per line) whose line-end hyphen is kept.
    #[arg(long)]
    dict: Option<PathBuf>,
}

impl PipelineArgs {
    fn options(&self) -> Result<Options> {
        let mut t = match &self.config {
            Some(p) => Thresholds::from_config_file(p)?,
            None => Thresholds::default(),
        };
        let overrides = [
            (&mut t.delta1, self.delta1),
            (&mut t.delta2, self.delta2),
            (&mut t.gamma1, self.gamma1),
            (&mut t.gamma2, self.gamma2),
            (&mut t.gamma3, self.gamma3),
            (&mut t.gamma4, self.gamma4),
            (&mut t.gamma5, self.gamma5),
            (&mut t.peak_fraction, self.peak_fraction),
        ];
        for (slot, v) in overrides {
            if let Some(v) = v {
                *slot = v;
            }
        }
        t.validate()?;
        Ok(Options {
            thresholds: t,
            strict: self.strict,
            split_parity: self.split_parity,
            abstract_exemption: !self.no_abstract_keywords,
            references: match self.refs {
                RefsArg::Keyword => ReferenceMode::Keyword,
                RefsArg::Sweep => ReferenceMode::Sweep,
            },
            keep_captions: self.keep_captions,
            dict: self.dict.as_deref().map(HyphenDict::load).transpose()?,
        })
    }

    fn load(&self, html_path: &Path) -> Result<(Vec<u8>, Vec<String>, Options)> {
        let html = fs::read(html_path)?;
        let (sheets, warnings) = load_stylesheets(html_path, &html, &self.css)?;
        for w in warnings {
            warn!("{w}");
        }
        Ok((html, sheets, self.options()?))
    }
}

fn sheet_refs(sheets: &[String]) -> Vec<&str> {
    sheets.iter().map(String::as_str).collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract { html, output, dump_verdicts, dump_histogram, pipeline } => {
            let (bytes, sheets, opts) = pipeline.load(&html)?;
            let ex = extract(&bytes, &sheet_refs(&sheets), &opts)?;
            for w in &ex.warnings {
                warn!("{w}");
            }
            fs::write(&output, ex.bt_txt())?;
            if let Some(p) = dump_verdicts {
                let mut f = fs::File::create(p)?;
                for v in &ex.verdicts {
                    let line = serde_json::to_string(v).map_err(|e| Error::Consistency(e.to_string()))?;
                    writeln!(f, "{line}")?;
                }
            }
            if let Some(p) = dump_histogram {
                fs::write(p, ex.histogram.to_csv())?;
            }
        }
        Command::Highlight { html, sentence, color, output, pipeline } => {
            if sentence.len() != color.len() {
                return Err(Error::Config(format!("{} sentences but {} colors", sentence.len(), color.len())));
            }
            let (bytes, sheets, opts) = pipeline.load(&html)?;
            let requests: Vec<(String, String)> = sentence.into_iter().zip(color).collect();
            let (out, warnings) = highlight(&bytes, &sheet_refs(&sheets), &opts, &requests)?;
            for w in warnings {
                warn!("{w}");
            }
            fs::write(output, out)?;
        }
        Command::Eval { extracted, gold, tables, corpus, json } => {
            let r = match corpus {
                Some(dir) => score_corpus(&dir)?,
                None => {
                    let (e, g) = (extracted.expect("required by clap"), gold.expect("required by clap"));
                    let t = tables.map(fs::read).transpose()?;
                    let doc = score(&fs::read(&e)?, &fs::read(&g)?, t.as_deref())?;
                    report(vec![(e.display().to_string(), doc)])?
                }
            };
            print!("{}", render_table(&r));
            if let Some(p) = json {
                let s = serde_json::to_string_pretty(&r).map_err(|e| Error::Consistency(e.to_string()))?;
                fs::write(p, s)?;
            }
        }
        Command::SweepDebug { html, pipeline } => {
            let (bytes, sheets, opts) = pipeline.load(&html)?;
            let (histogram, layout) = sweep_debug(&bytes, &sheet_refs(&sheets), &opts)?;
            print!("{}", histogram.to_csv());
            let model = &layout.combined;
            eprintln!(
                "columns: {} at {:?}; minor: {:?}; margin {}; text area {:?}",
                model.k, model.column_lefts, model.minor_columns, model.margin_width, model.bt_area
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_format() { 2 } else { 3 })
        }
    }
}
