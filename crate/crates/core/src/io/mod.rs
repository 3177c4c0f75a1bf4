//! File formats, text syntax and the end-to-end check.

pub mod json;
pub mod pipeline;
pub mod problem;
pub mod text;

pub use text::{
    format_monomial, format_poly, format_poly_ordered, parse_monomial, parse_poly, parse_rational,
};

use std::fs;
use std::io::Write;
use std::path::Path;

/// Writes via a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}
