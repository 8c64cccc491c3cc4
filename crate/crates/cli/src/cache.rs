//! Zero-cache files on disk.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use zrl::numeric::fmt_g12;
use zrl::zeta::{build_catalog_adaptive, load_catalog, store_catalog, ZeroCatalog};

use crate::CliError;

/// Step halvings allowed when the zero count disagrees with the smooth count.
const MAX_HALVINGS: u32 = 3;

/// Reads and validates a zero cache file.
pub fn load_zero_cache(path: &Path) -> Result<ZeroCatalog, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    load_catalog(BufReader::new(file)).map_err(|e| CliError::Cache {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Writes a zero cache file, creating its directory.
pub fn store_zero_cache(path: &Path, catalog: &ZeroCatalog) -> Result<(), CliError> {
    let io_err = |e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    // write then rename so an interrupted run never leaves half a file
    let tmp = path.with_extension("tmp");
    let file = File::create(&tmp).map_err(io_err)?;
    store_catalog(catalog, BufWriter::new(file)).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// `<dir>/zeros-T<height>-step<step>.txt`.
pub fn default_zero_cache_path(dir: &Path, height: f64, step: f64) -> PathBuf {
    dir.join(format!("zeros-T{}-step{}.txt", fmt_g12(height), fmt_g12(step)))
}

/// Where a catalog came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogSource {
    Cache,
    Scan,
}

/// A catalog up to `height`, read from `path` when it holds one at least that
/// high, otherwise scanned and written there.
///
/// A fresh scan is passed through the text format before it is returned, so
/// the first run and every later run from the cache see the same numbers.
pub fn obtain_catalog(height: f64, step: f64, path: &Path) -> Result<(ZeroCatalog, CatalogSource), CliError> {
    if path.exists() {
        let cached = load_zero_cache(path)?;
        if cached.height() >= height {
            return Ok((truncate(cached, height)?, CatalogSource::Cache));
        }
    }
    let fresh = build_catalog_adaptive(height, step, MAX_HALVINGS)?;
    store_zero_cache(path, &fresh)?;
    let reloaded = load_zero_cache(path)?;
    Ok((reloaded, CatalogSource::Scan))
}

fn truncate(catalog: ZeroCatalog, height: f64) -> Result<ZeroCatalog, CliError> {
    if catalog.height() == height {
        return Ok(catalog);
    }
    let zeros = catalog.zeros().iter().copied().filter(|z| z.ordinate < height).collect();
    Ok(ZeroCatalog::new(zeros, height, catalog.scan_step())?)
}
