use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the recorded config's JSON.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let text = serde_json::to_string(&config.recorded()).expect("config serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Serialize)]
struct Wrapped<'a, T> {
    version: &'a str,
    config_hash: &'a str,
    result: &'a T,
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'a str,
    config_hash: &'a str,
    task: &'a str,
    config: ExperimentConfig,
    files: &'a [String],
    warnings: &'a [String],
}

/// Writes the files of one run into a directory, stamping each with the
/// version and config hash.
pub struct OutputDir {
    dir: PathBuf,
    hash: String,
    files: Vec<String>,
}

impl OutputDir {
    pub fn create(config: &ExperimentConfig) -> Result<Self, CliError> {
        let dir = config.out_dir();
        fs::create_dir_all(&dir).map_err(|e| CliError::Other(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Self {
            dir,
            hash: config_hash(config),
            files: Vec::new(),
        })
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    /// CSV with a leading `# landau <version> config=<hash>` line; `body`
    /// writes everything after it.
    pub fn csv<F>(&mut self, name: &str, body: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<(), CliError>,
    {
        let mut buf = format!("# landau {VERSION} config={}\n", self.hash).into_bytes();
        body(&mut buf)?;
        self.write(name, &buf)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, result: &T) -> Result<(), CliError> {
        let w = Wrapped {
            version: VERSION,
            config_hash: &self.hash,
            result,
        };
        let mut text = serde_json::to_string_pretty(&w).map_err(|e| CliError::Other(e.to_string()))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    pub fn finish(mut self, task: &str, config: &ExperimentConfig, warnings: &[String]) -> Result<(), CliError> {
        let files = std::mem::take(&mut self.files);
        let m = Manifest {
            version: VERSION,
            config_hash: &self.hash,
            task,
            config: config.recorded(),
            files: &files,
            warnings,
        };
        let mut text = serde_json::to_string_pretty(&m).map_err(|e| CliError::Other(e.to_string()))?;
        text.push('\n');
        self.write("manifest.json", text.as_bytes())
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        let mut f =
            fs::File::create(&path).map_err(|e| CliError::Other(format!("cannot write {}: {e}", path.display())))?;
        f.write_all(bytes)?;
        self.files.push(name.to_string());
        Ok(())
    }
}

/// Shortest round-trip formatting; `-inf` and `inf` spelled out.
pub fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

/// Comma-joined row terminated by a newline.
pub fn row(out: &mut Vec<u8>, fields: &[String]) {
    out.extend_from_slice(fields.join(",").as_bytes());
    out.push(b'\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_output_path() {
        let mut a = ExperimentConfig::default();
        let h = config_hash(&a);
        a.out = Some(PathBuf::from("/tmp/elsewhere"));
        assert_eq!(config_hash(&a), h);
        a.b = 2.0;
        assert_ne!(config_hash(&a), h);
        assert_eq!(h.len(), 64);
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
    }
}
