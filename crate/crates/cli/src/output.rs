use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::CliError;

/// CSV sink over a file or stdout.
pub struct Table {
    inner: csv::Writer<Box<dyn Write>>,
}

impl Table {
    pub fn stdout(header: &[&str]) -> Result<Self, CliError> {
        Self::new(Box::new(std::io::stdout().lock()), header)
    }

    pub fn file(path: &Path, header: &[&str]) -> Result<Self, CliError> {
        let f = fs::File::create(path).map_err(CliError::io(path))?;
        Self::new(Box::new(std::io::BufWriter::new(f)), header)
    }

    fn new(w: Box<dyn Write>, header: &[&str]) -> Result<Self, CliError> {
        let mut inner = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        inner.write_record(header)?;
        Ok(Table { inner })
    }

    pub fn row<I, T>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        Ok(self.inner.write_record(fields)?)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.inner.flush().map_err(CliError::io("<csv>"))
    }
}

/// Record of one file-emitting run, written as `manifest.json`.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    /// Input spins, twice-encoded.
    pub spins_twice: Vec<i64>,
    pub outputs: Vec<String>,
    pub version: String,
    pub elapsed_ms: f64,
}

/// Output directory that tracks every file written into it.
pub struct OutDir {
    dir: PathBuf,
    written: Vec<String>,
    started: Instant,
}

impl OutDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(CliError::io(dir))?;
        Ok(OutDir { dir: dir.to_path_buf(), written: Vec::new(), started: Instant::now() })
    }

    pub fn table(&mut self, name: &str, header: &[&str]) -> Result<Table, CliError> {
        self.written.push(name.to_string());
        Table::file(&self.dir.join(name), header)
    }

    pub fn text(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(CliError::io(&path))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn finish(
        self,
        command: &str,
        parameters: serde_json::Value,
        spins_twice: Vec<i64>,
    ) -> Result<Vec<String>, CliError> {
        let manifest = RunManifest {
            command: command.to_string(),
            parameters,
            spins_twice,
            outputs: self.written.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
        };
        let path = self.dir.join("manifest.json");
        let body = serde_json::to_string_pretty(&manifest)? + "\n";
        fs::write(&path, body).map_err(CliError::io(&path))?;
        Ok(self.written)
    }
}

pub fn num(x: f64) -> String {
    format!("{x:?}")
}
