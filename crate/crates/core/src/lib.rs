//! Body-text extraction from HTML replicas of PDF articles.

pub mod bt_assembly;
pub mod column_layout;
pub mod dom_ingest;
pub mod error;
pub mod eval;
pub mod nbt_removal;
pub mod pipeline;
pub mod sentence_highlight;
pub mod text_metrics;

pub use error::{Error, Result};
pub use pipeline::{extract, highlight, Extraction, Options};
