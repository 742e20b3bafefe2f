//! Text cache for echelon forms.
//!
//! ```text
//! altcenter-echelon 1
//! degree 6
//! vars 6
//! ncols 5000
//! rank 3920
//! hash <sha256 of the enumeration parameters>
//! <col>:<value> <col>:<value> ...     one reduced row per line, pivot first
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::sparse::{RowEchelonBasis, SparseVec};

pub const CACHE_VERSION: u32 = 1;

fn params_hash(degree: usize) -> String {
    let desc = format!("alternative-laws;linearized;tower;order=mask-basis;pivot=lowest;degree={degree}");
    let digest = Sha256::digest(desc.as_bytes());
    digest.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn cache_path(dir: &Path, degree: usize) -> PathBuf {
    dir.join(format!("echelon-d{degree}-v{CACHE_VERSION}.txt"))
}

pub fn save(dir: &Path, degree: usize, b: &RowEchelonBasis) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let path = cache_path(dir, degree);
    let tmp = path.with_extension("tmp");
    let mut w = BufWriter::new(fs::File::create(&tmp).map_err(io)?);
    writeln!(w, "altcenter-echelon {CACHE_VERSION}").map_err(io)?;
    writeln!(w, "degree {degree}").map_err(io)?;
    writeln!(w, "vars {degree}").map_err(io)?;
    writeln!(w, "ncols {}", b.ncols()).map_err(io)?;
    writeln!(w, "rank {}", b.rank()).map_err(io)?;
    writeln!(w, "hash {}", params_hash(degree)).map_err(io)?;
    for row in b.rows() {
        let mut line = String::new();
        for (i, (c, v)) in row.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{c}:{v}");
        }
        writeln!(w, "{line}").map_err(io)?;
    }
    w.flush().map_err(io)?;
    drop(w);
    fs::rename(&tmp, &path).map_err(io)
}

/// Loads a cached echelon form; `Ok(None)` when absent or stale.
pub fn load(dir: &Path, degree: usize, ncols: usize) -> Result<Option<RowEchelonBasis>> {
    let path = cache_path(dir, degree);
    let Ok(f) = fs::File::open(&path) else { return Ok(None) };
    let io = |e: std::io::Error| Error::Cache(e.to_string());
    let mut lines = BufReader::new(f).lines();
    let mut header = Vec::new();
    for _ in 0..6 {
        match lines.next() {
            Some(l) => header.push(l.map_err(io)?),
            None => return Ok(None),
        }
    }
    let expected = [
        format!("altcenter-echelon {CACHE_VERSION}"),
        format!("degree {degree}"),
        format!("vars {degree}"),
        format!("ncols {ncols}"),
    ];
    if header[..4] != expected || header[5] != format!("hash {}", params_hash(degree)) {
        return Ok(None);
    }
    let rank: usize = header[4]
        .strip_prefix("rank ")
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| Error::Cache("bad rank line".into()))?;
    let mut rows = Vec::with_capacity(rank);
    for line in lines {
        let line = line.map_err(io)?;
        let mut entries = Vec::new();
        for tok in line.split_whitespace() {
            let (c, v) = tok.split_once(':').ok_or_else(|| Error::Cache(format!("bad entry `{tok}`")))?;
            let c: u32 = c.parse().map_err(|_| Error::Cache(format!("bad column `{c}`")))?;
            let v: Scalar = v.parse().map_err(|_| Error::Cache(format!("bad value `{v}`")))?;
            entries.push((c, v));
        }
        rows.push(SparseVec::from_entries(entries));
    }
    if rows.len() != rank {
        return Err(Error::Cache(format!("expected {rank} rows, found {}", rows.len())));
    }
    RowEchelonBasis::from_rows(ncols, rows).map(Some)
}
