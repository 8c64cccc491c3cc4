//! On-disk cache of sieved segments.
//!
//! Layout: the magic `ZRL1`, then `lo` and `hi` as 8-byte little-endian
//! unsigned integers, then the packed odd-only bitmap of
//! [`PrimeTable::odd_bitmap_bytes`]. A cached table is only ever a shortcut;
//! reading it back yields exactly the table the sieve would build.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use super::sieve::{PrimeTable, Sieve};
use super::PrimeError;

pub const TABLE_MAGIC: &[u8; 4] = b"ZRL1";

pub fn write_table<W: Write>(table: &PrimeTable, mut out: W) -> io::Result<()> {
    out.write_all(TABLE_MAGIC)?;
    out.write_all(&table.lo().to_le_bytes())?;
    out.write_all(&table.hi().to_le_bytes())?;
    out.write_all(&table.odd_bitmap_bytes())?;
    out.flush()
}

pub fn read_table<R: Read>(mut input: R) -> Result<PrimeTable, PrimeError> {
    let mut header = [0u8; 20];
    input.read_exact(&mut header).map_err(|e| PrimeError::Cache(e.to_string()))?;
    if &header[..4] != TABLE_MAGIC {
        return Err(PrimeError::Cache("bad magic".into()));
    }
    let lo = u64::from_le_bytes(header[4..12].try_into().expect("8 bytes"));
    let hi = u64::from_le_bytes(header[12..20].try_into().expect("8 bytes"));
    let mut bitmap = Vec::new();
    input.read_to_end(&mut bitmap).map_err(|e| PrimeError::Cache(e.to_string()))?;
    PrimeTable::from_odd_bitmap(lo, hi, &bitmap)
        .ok_or_else(|| PrimeError::Cache(format!("bitmap length does not match [{lo}, {hi})")))
}

/// A directory of cached segments keyed by their range.
#[derive(Clone, Debug)]
pub struct SegmentCache {
    dir: PathBuf,
}

impl SegmentCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SegmentCache { dir: dir.into() }
    }

    pub fn path_for(&self, lo: u64, hi: u64) -> PathBuf {
        self.dir.join(format!("segment-{lo}-{hi}.zrl"))
    }

    /// Loads `[lo, hi)` from the cache, or sieves it and stores the result.
    /// Unreadable cache entries are rebuilt.
    pub fn segment(&self, sieve: &Sieve, lo: u64, hi: u64) -> Result<PrimeTable, PrimeError> {
        sieve.check_range(lo, hi)?;
        let path = self.path_for(lo, hi);
        if let Ok(table) = load(&path) {
            if table.lo() == lo && table.hi() == hi {
                return Ok(table);
            }
        }
        let table = sieve.segment(lo, hi)?;
        fs::create_dir_all(&self.dir).map_err(|e| PrimeError::Cache(e.to_string()))?;
        let file = fs::File::create(&path).map_err(|e| PrimeError::Cache(e.to_string()))?;
        write_table(&table, io::BufWriter::new(file)).map_err(|e| PrimeError::Cache(e.to_string()))?;
        Ok(table)
    }
}

fn load(path: &Path) -> Result<PrimeTable, PrimeError> {
    let file = fs::File::open(path).map_err(|e| PrimeError::Cache(e.to_string()))?;
    read_table(io::BufReader::new(file))
}
