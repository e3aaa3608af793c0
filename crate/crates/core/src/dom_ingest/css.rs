//! Class-rule extraction from replica style sheets.
//!
//! Only top-level rules whose selector is a single class (`.x1`, possibly in
//! a comma-separated list) contribute. At-rules (`@font-face`, `@media`, ...)
//! are skipped whole, which drops the print-media duplicates the converter
//! emits.

use std::collections::HashMap;

#[derive(Debug, Clone, Default)]
pub struct ClassMap {
    rules: HashMap<String, HashMap<String, String>>,
}

impl ClassMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Merges a style sheet; later declarations win.
    pub fn merge_sheet(&mut self, sheet: &str) {
        for (selectors, body) in top_level_rules(sheet) {
            let decls = parse_declarations(&body);
            if decls.is_empty() {
                continue;
            }
            for sel in selectors.split(',') {
                let sel = sel.trim();
                let Some(name) = sel.strip_prefix('.') else { continue };
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
                    continue;
                }
                let entry = self.rules.entry(name.to_string()).or_default();
                for (k, v) in &decls {
                    entry.insert(k.clone(), v.clone());
                }
            }
        }
    }

    pub fn get(&self, class: &str) -> Option<&HashMap<String, String>> {
        self.rules.get(class)
    }

    pub fn contains(&self, class: &str) -> bool {
        self.rules.contains_key(class)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn strip_comments(sheet: &str) -> String {
    let mut out = String::with_capacity(sheet.len());
    let mut rest = sheet;
    while let Some(i) = rest.find("/*") {
        out.push_str(&rest[..i]);
        match rest[i + 2..].find("*/") {
            Some(j) => rest = &rest[i + 2 + j + 2..],
            None => {
                rest = "";
                break;
            }
        }
    }
    out.push_str(rest);
    out
}

/// Splits a sheet into `(selector, body)` pairs, skipping at-rules.
fn top_level_rules(sheet: &str) -> Vec<(String, String)> {
    let sheet = strip_comments(sheet);
    let bytes = sheet.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut prelude_start = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'"' | b'\'' => {
                let q = bytes[i];
                i += 1;
                while i < bytes.len() && bytes[i] != q {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                i += 1;
            }
            b';' => {
                // statement at-rule such as @import or @charset
                i += 1;
                prelude_start = i;
            }
            b'{' => {
                let prelude = sheet[prelude_start..i].trim().to_string();
                let body_start = i + 1;
                let body_end = matching_brace(bytes, i);
                if !prelude.starts_with('@') {
                    out.push((prelude, sheet[body_start..body_end].to_string()));
                }
                i = (body_end + 1).min(bytes.len());
                prelude_start = i;
            }
            _ => i += 1,
        }
    }
    out
}

fn matching_brace(bytes: &[u8], open: usize) -> usize {
    let mut depth = 0usize;
    let mut i = open;
    while i < bytes.len() {
        match bytes[i] {
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth == 0 {
                    return i;
                }
            }
            b'"' | b'\'' => {
                let q = bytes[i];
                i += 1;
                while i < bytes.len() && bytes[i] != q {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
            }
            _ => {}
        }
        i += 1;
    }
    bytes.len()
}

/// Parses `prop: value; ...` into lowercase property names.
pub fn parse_declarations(body: &str) -> Vec<(String, String)> {
    body.split(';')
        .filter_map(|decl| {
            let (k, v) = decl.split_once(':')?;
            let k = k.trim().to_ascii_lowercase();
            let v = v.trim().trim_end_matches("!important").trim();
            (!k.is_empty()).then(|| (k, v.to_string()))
        })
        .collect()
}

/// Leading number of a CSS length (`72.5px`, `-3pt`, `0`).
pub fn parse_length(value: &str) -> Option<f64> {
    let v = value.trim();
    let end = v
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_digit() || c == '.' || ((c == '-' || c == '+') && i == 0) || c == 'e' && i > 0))
        .map(|(i, _)| i)
        .unwrap_or(v.len());
    v[..end].parse().ok()
}

/// Parses `matrix(a,b,c,d,e,f)` into its 2x2 linear part.
pub fn parse_matrix(value: &str) -> Option<[f64; 4]> {
    let v = value.trim();
    let inner = v.strip_prefix("matrix(")?.strip_suffix(')')?;
    let nums: Vec<f64> = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    (nums.len() == 6).then(|| [nums[0], nums[1], nums[2], nums[3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_class_rules_last_wins() {
        let mut map = ClassMap::new();
        map.merge_sheet(".x1{left:72.000000px;}\n.y1{bottom:700px;}\n/* c */ .x1{left:80px}");
        assert_eq!(map.get("x1").unwrap()["left"], "80px");
        assert_eq!(map.get("y1").unwrap()["bottom"], "700px");
    }

    #[test]
    fn skips_at_rules_and_compound_selectors() {
        let mut map = ClassMap::new();
        map.merge_sheet(
            "@font-face{font-family:ff1;src:url('data:x;base64,AAA{}')}\n\
             @media print{.x1{left:1pt;}}\n.pf .t{left:3px}\n.fs0,.fs1{font-size:12px}",
        );
        assert!(!map.contains("x1"));
        assert_eq!(map.len(), 2);
        assert_eq!(map.get("fs1").unwrap()["font-size"], "12px");
    }

    #[test]
    fn lengths_and_matrices() {
        assert_eq!(parse_length("72.000000px"), Some(72.0));
        assert_eq!(parse_length("-1.5pt"), Some(-1.5));
        assert_eq!(parse_length("px"), None);
        assert_eq!(parse_matrix("matrix(0.25,0.000000,0,0.25,0,0)"), Some([0.25, 0.0, 0.0, 0.25]));
        assert_eq!(parse_matrix("none"), None);
    }
}
