//! Readers and writers for hyperedge sequences.
//!
//! Two on-disk layouts are supported:
//!
//! * **native**: one record per line, `timestamp label label ...`, whitespace
//!   separated.
//! * **triple**: the three-file benchmark layout (`*-nverts.txt`,
//!   `*-simplices.txt`, `*-times.txt`), one integer per line. The i-th entry
//!   of `nverts` says how many consecutive `simplices` entries form the i-th
//!   hyperedge, stamped with the i-th entry of `times`.
//!
//! Raw labels are densified to [`NodeId`]s in first-appearance order over the
//! timestamp-sorted records, so every prefix of the sequence touches exactly
//! the ids `0..n`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::hypergraph::{Hyperedge, NodeId, Timestamp, TimestampedHyperedgeSequence};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{path}: no hyperedge records")]
    Empty { path: PathBuf },
}

impl IngestError {
    fn io(path: &Path, source: io::Error) -> Self {
        IngestError::Io { path: path.to_path_buf(), source }
    }
}

/// Input layout selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Native,
    Triple,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "native" => Ok(Format::Native),
            "triple" => Ok(Format::Triple),
            other => Err(format!("unknown format `{other}` (expected native|triple)")),
        }
    }
}

/// Paths of a three-file dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleFileSet {
    pub nverts: PathBuf,
    pub simplices: PathBuf,
    pub times: PathBuf,
}

impl TripleFileSet {
    /// Resolves `<prefix>-nverts.txt`, `<prefix>-simplices.txt`, `<prefix>-times.txt`.
    ///
    /// `prefix` may also name a dataset directory `dir/name`, in which case
    /// the files are looked up as `dir/name/name-*.txt`.
    pub fn from_prefix(prefix: impl AsRef<Path>) -> Self {
        let prefix = prefix.as_ref();
        let base = if prefix.is_dir() {
            let name = prefix.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            prefix.join(name)
        } else {
            prefix.to_path_buf()
        };
        let with = |suffix: &str| {
            let mut s = base.clone().into_os_string();
            s.push(suffix);
            PathBuf::from(s)
        };
        Self { nverts: with("-nverts.txt"), simplices: with("-simplices.txt"), times: with("-times.txt") }
    }
}

/// A parsed sequence together with the label mapping used to densify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ingested {
    pub sequence: TimestampedHyperedgeSequence,
    /// `labels[id]` is the raw label that was mapped to node `id`.
    pub labels: Vec<String>,
    /// Repeated labels within a single record that were collapsed.
    pub collapsed_duplicates: usize,
}

struct RawRecord {
    timestamp: Timestamp,
    labels: Vec<String>,
}

/// Sorts raw records stably by timestamp and assigns first-appearance ids.
fn densify(mut raw: Vec<RawRecord>) -> Ingested {
    raw.sort_by_key(|r| r.timestamp);
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut collapsed = 0usize;
    let mut records = Vec::with_capacity(raw.len());
    for rec in raw {
        let mut members: Vec<NodeId> = Vec::with_capacity(rec.labels.len());
        for label in rec.labels {
            let next = ids.len() as NodeId;
            let id = *ids.entry(label).or_insert_with_key(|l| {
                labels.push(l.clone());
                next
            });
            members.push(id);
        }
        let before = members.len();
        members.sort_unstable();
        members.dedup();
        collapsed += before - members.len();
        records.push(Hyperedge::from_sorted(rec.timestamp, members));
    }
    Ingested {
        sequence: TimestampedHyperedgeSequence::from_records_unchecked(records),
        labels,
        collapsed_duplicates: collapsed,
    }
}

/// Parses native-format text. `path` is used for error context only.
pub fn parse_native<R: Read>(reader: R, path: &Path) -> Result<Ingested, IngestError> {
    let reader = BufReader::new(reader);
    let mut raw = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| IngestError::io(path, e))?;
        let mut tokens = line.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let timestamp: Timestamp = first.parse().map_err(|_| IngestError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("invalid timestamp `{first}`"),
        })?;
        let labels: Vec<String> = tokens.map(str::to_owned).collect();
        if labels.is_empty() {
            return Err(IngestError::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: "record has no members".into(),
            });
        }
        raw.push(RawRecord { timestamp, labels });
    }
    if raw.is_empty() {
        return Err(IngestError::Empty { path: path.to_path_buf() });
    }
    Ok(densify(raw))
}

pub fn read_native(path: impl AsRef<Path>) -> Result<Ingested, IngestError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| IngestError::io(path, e))?;
    parse_native(file, path)
}

fn read_int_column(path: &Path) -> Result<Vec<i64>, IngestError> {
    let file = File::open(path).map_err(|e| IngestError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| IngestError::io(path, e))?;
        let tok = line.trim();
        if tok.is_empty() {
            continue;
        }
        let v = tok.parse().map_err(|_| IngestError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("expected an integer, found `{tok}`"),
        })?;
        out.push(v);
    }
    Ok(out)
}

pub fn read_triple(files: &TripleFileSet) -> Result<Ingested, IngestError> {
    let nverts = read_int_column(&files.nverts)?;
    let simplices = read_int_column(&files.simplices)?;
    let times = read_int_column(&files.times)?;
    if nverts.len() != times.len() {
        return Err(IngestError::Format {
            path: files.times.clone(),
            message: format!("{} timestamps for {} hyperedges", times.len(), nverts.len()),
        });
    }
    if let Some(i) = nverts.iter().position(|&n| n < 1) {
        return Err(IngestError::Format {
            path: files.nverts.clone(),
            message: format!("entry {} declares {} vertices", i + 1, nverts[i]),
        });
    }
    let total: i64 = nverts.iter().sum();
    if total != simplices.len() as i64 {
        return Err(IngestError::Format {
            path: files.simplices.clone(),
            message: format!("{} entries but nverts sums to {}", simplices.len(), total),
        });
    }
    if nverts.is_empty() {
        return Err(IngestError::Empty { path: files.nverts.clone() });
    }
    let mut raw = Vec::with_capacity(nverts.len());
    let mut offset = 0usize;
    for (&n, &t) in nverts.iter().zip(&times) {
        let n = n as usize;
        let labels = simplices[offset..offset + n].iter().map(i64::to_string).collect();
        offset += n;
        raw.push(RawRecord { timestamp: t, labels });
    }
    Ok(densify(raw))
}

pub fn write_native_to<W: Write>(seq: &TimestampedHyperedgeSequence, mut w: W) -> io::Result<()> {
    for rec in seq.records() {
        writeln!(w, "{rec}")?;
    }
    w.flush()
}

pub fn write_native(seq: &TimestampedHyperedgeSequence, path: impl AsRef<Path>) -> Result<(), IngestError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| IngestError::io(path, e))?;
    write_native_to(seq, BufWriter::new(file)).map_err(|e| IngestError::io(path, e))
}
