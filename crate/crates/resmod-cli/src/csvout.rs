//! CSV serialization with a frozen numeric format: LF endings, '.' decimal
//! separator, 17 significant digits so every f64 round-trips exactly.

use std::io;
use std::path::Path;

/// Full-precision float field.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the header and rows. Rows must be rectangular.
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> io::Result<()> {
    let cols = header.split(',').count();
    let mut text = String::with_capacity(32 * (rows.len() + 1));
    text.push_str(header);
    text.push('\n');
    for row in rows {
        assert_eq!(row.len(), cols, "ragged csv row");
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(path, text)
}
