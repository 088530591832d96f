use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Output directory; every file is written to a temporary sibling first and
/// renamed into place once complete.
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: impl AsRef<Path>) -> CliResult<Self> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root)
            .map_err(|e| CliError::Usage(format!("cannot create output directory {}: {e}", root.display())))?;
        Ok(Self { root })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write<F>(&self, name: &str, body: F) -> CliResult<PathBuf>
    where
        F: FnOnce(&mut dyn Write) -> resmotif::Result<()>,
    {
        let target = self.path(name);
        let dir = target.parent().unwrap_or(&self.root);
        fs::create_dir_all(dir)?;
        let tmp = NamedTempFile::new_in(dir)?;
        let mut w = BufWriter::new(tmp);
        body(&mut w)?;
        let tmp = w.into_inner().map_err(|e| e.into_error())?;
        tmp.persist(&target).map_err(|e| e.error)?;
        log::info!("wrote {}", target.display());
        Ok(target)
    }
}
