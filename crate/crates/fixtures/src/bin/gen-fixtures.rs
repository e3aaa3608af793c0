//! Writes every fixture to a directory: `gen-fixtures [OUT_DIR]`.

use std::fs;
use std::path::PathBuf;

use serde_json::json;

fn main() -> std::io::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    let mut manifest = Vec::new();
    for f in pdfbot_fixtures::all() {
        let dir = out.join(f.name);
        fs::create_dir_all(&dir)?;
        fs::write(dir.join("replica.html"), &f.article.html)?;
        if f.options.linked_stylesheet {
            fs::write(dir.join("replica.css"), &f.article.stylesheet)?;
        }
        fs::write(dir.join("gold.txt"), f.article.gold_txt())?;
        fs::write(dir.join("tables.txt"), f.article.tables_txt())?;
        if f.options.use_dict {
            fs::write(dir.join("dict.txt"), f.article.dict_txt())?;
        }
        manifest.push(json!({
            "name": f.name,
            "pages": f.article.pages,
            "options": f.options,
            "expectation": f.expectation,
            "violations": f.article.violations,
        }));
    }
    let text = serde_json::to_string_pretty(&manifest).map_err(std::io::Error::other)?;
    fs::write(out.join("manifest.json"), text + "\n")?;
    println!("wrote {} fixtures to {}", manifest.len(), out.display());
    Ok(())
}
