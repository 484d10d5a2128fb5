//! Atomic file output.
//!
//! Every artifact is written to a temporary file in the destination
//! directory and renamed into place, so readers only ever observe either
//! the previous file or the complete new one.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};

/// Writes `path` by streaming into a sibling temp file, then renaming it over
/// the destination once `fill` returns successfully.
pub fn write_atomic<F>(path: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let tmp = NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        fill(&mut w)?;
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn write_string_atomic(path: &Path, contents: &str) -> Result<()> {
    write_atomic(path, |w| {
        w.write_all(contents.as_bytes())?;
        Ok(())
    })
}
