//! Output bookkeeping: every file a command writes is registered so a failed
//! run can remove it, and every run leaves a JSON manifest next to its outputs.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// Environment variable overriding the default output directory.
pub const OUT_DIR_ENV: &str = "HYPERFF_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "hyperff-out";

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

/// Files and directories created by the current run.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<PathBuf>,
    created_dirs: Vec<PathBuf>,
    committed: bool,
}

impl Outputs {
    pub fn new() -> Self {
        Self::default()
    }

    /// Creates `dir` (and parents) if needed, remembering what was new.
    pub fn ensure_dir(&mut self, dir: &Path) -> Result<(), CliError> {
        if dir.as_os_str().is_empty() || dir.is_dir() {
            return Ok(());
        }
        let mut missing = Vec::new();
        let mut cur = Some(dir);
        while let Some(d) = cur {
            if d.as_os_str().is_empty() || d.exists() {
                break;
            }
            missing.push(d.to_path_buf());
            cur = d.parent();
        }
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        // innermost first so cleanup removes children before parents
        self.created_dirs.extend(missing);
        Ok(())
    }

    pub fn create(&mut self, path: &Path) -> Result<BufWriter<fs::File>, CliError> {
        if let Some(parent) = path.parent() {
            self.ensure_dir(parent)?;
        }
        let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        self.files.push(path.to_path_buf());
        Ok(BufWriter::new(file))
    }

    /// Writes a whole file through `body`.
    pub fn write_with(
        &mut self,
        path: &Path,
        body: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>,
    ) -> Result<(), CliError> {
        let mut w = self.create(path)?;
        body(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
    }

    pub fn files(&self) -> &[PathBuf] {
        &self.files
    }

    pub fn commit(mut self) {
        self.committed = true;
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if self.committed {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        for d in &self.created_dirs {
            let _ = fs::remove_dir(d);
        }
    }
}

#[derive(Debug, Serialize)]
struct InputRecord {
    path: PathBuf,
    bytes: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    inputs: Vec<InputRecord>,
    params: Value,
    seed: Option<u64>,
    threads: usize,
    outputs: Vec<PathBuf>,
    summary: Value,
    wall_time_seconds: f64,
}

/// Run record written after all outputs succeed.
pub struct RunRecord {
    pub command: &'static str,
    pub inputs: Vec<PathBuf>,
    pub params: Value,
    pub seed: Option<u64>,
    pub summary: Value,
    pub started: Instant,
}

impl RunRecord {
    pub fn new(command: &'static str, params: &impl Serialize, seed: Option<u64>) -> Self {
        Self {
            command,
            inputs: Vec::new(),
            params: serde_json::to_value(params).unwrap_or(Value::Null),
            seed,
            summary: Value::Object(Default::default()),
            started: Instant::now(),
        }
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.inputs.push(path.to_path_buf());
        self
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        if let Value::Object(map) = &mut self.summary {
            map.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        }
    }

    /// Writes the manifest to `path` and registers it as an output.
    pub fn write(self, outputs: &mut Outputs, path: &Path) -> Result<(), CliError> {
        let manifest = Manifest {
            tool: "hyperff",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            inputs: self
                .inputs
                .iter()
                .map(|p| InputRecord { path: p.clone(), bytes: fs::metadata(p).ok().map(|m| m.len()) })
                .collect(),
            params: self.params,
            seed: self.seed,
            threads: rayon::current_num_threads(),
            outputs: outputs.files().to_vec(),
            summary: self.summary,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        };
        outputs.write_with(path, |w| {
            serde_json::to_writer_pretty(&mut *w, &manifest).map_err(std::io::Error::other)?;
            writeln!(w)
        })
    }
}

/// `<file>.manifest.json` for single-file outputs.
pub fn sidecar_manifest(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    path.with_file_name(name)
}

/// Shortest round-trip float text; integers print without a fraction and
/// very small or large magnitudes use exponent notation.
pub fn num(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else if x != 0.0 && x.is_finite() && (x.abs() < 1e-4 || x.abs() >= 1e15) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
