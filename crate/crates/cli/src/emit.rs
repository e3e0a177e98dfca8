//! Output plumbing: shortest round-trip float formatting and atomic file
//! writes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// Shortest decimal form that parses back to the same f64.
pub fn csv_escape_float(value: f64) -> String {
    format!("{value}")
}

/// Writes to stdout, or atomically to `path` via a sibling temp file so a
/// failed run never leaves a truncated artifact behind.
pub fn write_output(payload: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        None => {
            io::stdout().write_all(payload.as_bytes())?;
            io::stdout().flush()
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let file_name = path
                .file_name()
                .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "bad output path"))?;
            let mut temp = std::ffi::OsString::from(".");
            temp.push(file_name);
            temp.push(format!(".tmp{}", std::process::id()));
            let temp_path = match dir {
                Some(dir) => dir.join(&temp),
                None => std::path::PathBuf::from(&temp),
            };
            fs::write(&temp_path, payload)?;
            fs::rename(&temp_path, path)
        }
    }
}
