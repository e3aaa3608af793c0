//! Coarse part-of-speech tagging behind a pluggable interface.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoarseTag {
    Verb,
    Noun,
    Other,
    Num,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TagError {
    #[error("nothing to tag in {0:?}")]
    Empty(String),
    #[error("tagger unavailable: {0}")]
    Unavailable(String),
}

pub trait PosTagger {
    /// Tags `word` found at `position` (0-based) in its sentence.
    fn tag(&self, word: &str, position: usize) -> Result<CoarseTag, TagError>;
}

const BASE_VERBS: &str = include_str!("verbs.txt");

#[rustfmt::skip]
const IRREGULAR: &[&str] = &[
    "is", "are", "was", "were", "been", "being", "am", "has", "had", "having", "does", "did", "done", "doing", "can", "could", "will",
    "would", "shall", "should", "may", "might", "must", "went", "gone", "made", "took", "taken", "gave", "given", "saw", "seen",
    "shown", "showed", "found", "thought", "brought", "bought", "built", "became", "began", "begun", "broke", "broken", "chose",
    "chosen", "came", "drew", "drawn", "drove", "driven", "fell", "fallen", "felt", "fought", "forgot", "forgotten", "froze", "frozen",
    "got", "gotten", "grew", "grown", "held", "hid", "hidden", "kept", "knew", "known", "laid", "led", "left", "lent", "lost", "meant",
    "met", "paid", "ran", "rose", "risen", "said", "sent", "sold", "shook", "shrank", "sat", "slept", "spoke", "spoken", "spent",
    "stood", "stuck", "struck", "strove", "taught", "told", "threw", "thrown", "understood", "undertook", "underwent", "undergone",
    "won", "wore", "worn", "wrote", "written", "withdrew", "yielded", "arose", "arisen", "bore", "borne", "bound", "fed", "fled",
    "hung", "lay", "lain", "overcame", "read", "sought", "spread", "split", "set", "put", "cut", "let", "hit", "cast", "cost", "hurt",
    "shut", "quit",
];

const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "the", "and", "or", "but", "nor", "of", "in", "on", "at", "by", "for", "with", "from", "to", "into", "onto", "over",
    "under", "about", "above", "below", "between", "among", "through", "during", "after", "before", "via", "per", "versus", "vs", "as",
    "than", "that", "this", "these", "those", "which", "who", "whom", "whose", "what", "where", "when", "while", "if", "then", "so", "not",
    "no", "its", "it", "their", "our", "we", "they", "he", "she", "his", "her", "each", "every", "all", "both", "some", "any",
];

/// Lexicon-backed tagger. Inflected forms of listed base verbs (-s,
/// -ed, -ing and their spelling variants) are verbs; so is any other
/// lowercase word ending in -ed or -ing. A capitalized word after the first
/// position is a noun.
#[derive(Debug, Clone)]
pub struct LexiconTagger {
    verbs: HashSet<String>,
}

impl Default for LexiconTagger {
    fn default() -> Self {
        let mut verbs: HashSet<String> = BASE_VERBS.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect();
        verbs.extend(IRREGULAR.iter().map(|s| s.to_string()));
        Self { verbs }
    }
}

impl LexiconTagger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_verbs<I: IntoIterator<Item = S>, S: Into<String>>(verbs: I) -> Self {
        Self { verbs: verbs.into_iter().map(Into::into).collect() }
    }

    fn is_verb_form(&self, w: &str) -> bool {
        if self.verbs.contains(w) {
            return true;
        }
        let known = |stem: &str| !stem.is_empty() && self.verbs.contains(stem);
        let undouble = |stem: &str| {
            let b = stem.as_bytes();
            b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] && known(&stem[..stem.len() - 1])
        };
        if let Some(stem) = w.strip_suffix("ies") {
            if known(&format!("{stem}y")) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix("es") {
            if known(stem) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix('s') {
            if known(stem) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix("ied") {
            if known(&format!("{stem}y")) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix("ed") {
            if known(stem) || known(&format!("{stem}e")) || undouble(stem) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix("ing") {
            if known(stem) || known(&format!("{stem}e")) || undouble(stem) {
                return true;
            }
        }
        false
    }
}

impl PosTagger for LexiconTagger {
    fn tag(&self, word: &str, position: usize) -> Result<CoarseTag, TagError> {
        let w = word.trim_matches(|c: char| !c.is_alphanumeric());
        if w.is_empty() {
            return Err(TagError::Empty(word.to_string()));
        }
        if w.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',') {
            return Ok(CoarseTag::Num);
        }
        let capitalized = w.chars().next().is_some_and(char::is_uppercase);
        let lower = w.to_lowercase();
        if FUNCTION_WORDS.contains(&lower.as_str()) {
            return Ok(CoarseTag::Other);
        }
        if capitalized && position > 0 {
            return Ok(CoarseTag::Noun);
        }
        if self.is_verb_form(&lower) {
            return Ok(CoarseTag::Verb);
        }
        if !capitalized && (lower.ends_with("ed") || lower.ends_with("ing")) && lower.len() > 4 {
            return Ok(CoarseTag::Verb);
        }
        Ok(CoarseTag::Noun)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inflections() {
        let t = LexiconTagger::new();
        for w in ["shows", "applies", "applied", "planned", "running", "using", "compares", "is", "illustrates", "summarized"] {
            assert_eq!(t.tag(w, 2), Ok(CoarseTag::Verb), "{w}");
        }
        for w in ["architecture", "overview", "accuracy"] {
            assert_eq!(t.tag(w, 2), Ok(CoarseTag::Noun), "{w}");
        }
        assert_eq!(t.tag("Results", 2), Ok(CoarseTag::Noun));
        assert_eq!(t.tag("Shows", 0), Ok(CoarseTag::Verb));
        assert_eq!(t.tag("the", 2), Ok(CoarseTag::Other));
        assert_eq!(t.tag("3.", 1), Ok(CoarseTag::Num));
        assert!(t.tag("--", 2).is_err());
    }

    #[test]
    fn deterministic() {
        let a = LexiconTagger::new();
        let b = LexiconTagger::new();
        for w in ["present", "Table", "data", "derived"] {
            assert_eq!(a.tag(w, 2), b.tag(w, 2));
        }
    }
}
