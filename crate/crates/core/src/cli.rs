//! Output formats and the on-disk count cache used by the `olives` binary.
//!
//! Count records:
//!
//! * table: right-aligned columns `n`, `count`
//! * csv: header `n,count`, one row per `n`
//! * json: one object per line, `{"n":4,"count":"772","variant":"first-return"}`
//!
//! Counts are exact decimal strings everywhere.
//!
//! The cache is a JSON file `{"version": ..., "entries": {variant: {n: count}}}`.
//! A file with any other version tag is discarded whole.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::analysis::{BoundReport, RatioReport, ENVELOPE_NOTE};
use crate::counting::Counter;

pub const CACHE_VERSION: &str = "plates-olives-counts/1";
pub const CACHE_ENV: &str = "OLIVE_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, clap::ValueEnum)]
pub enum Variant {
    /// Games: first returns to the empty table.
    #[default]
    FirstReturn,
    /// Closed walks of length 2n+2, interim returns allowed.
    Closed,
    /// Closed Young's-lattice walks of length 2n+2.
    Young,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::FirstReturn => "first-return",
            Variant::Closed => "closed",
            Variant::Young => "young",
        }
    }

    pub fn compute(self, counter: &mut Counter, n: usize) -> crate::Result<BigUint> {
        match self {
            Variant::FirstReturn => counter.count_games(n),
            Variant::Closed => counter.count_closed_walks(n),
            Variant::Young => counter.count_young_walks(2 * n + 2),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub n: usize,
    pub count: String,
    pub variant: String,
}

/// Right-aligned columns separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(cell, &width)| format!("{cell:>width$}"))
            .collect();
        padded.join("  ") + "\n"
    };
    let mut out = line(headers.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn render_csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = headers.join(",") + "\n";
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn render_json_lines<T: Serialize>(records: &[T]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

pub fn render_counts(records: &[CountRecord], format: Format) -> String {
    let headers = ["n", "count"];
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| vec![r.n.to_string(), r.count.clone()])
        .collect();
    match format {
        Format::Table => render_table(&headers, &rows),
        Format::Csv => render_csv(&headers, &rows),
        Format::Json => render_json_lines(records),
    }
}

#[derive(Serialize)]
struct RatioRecord {
    n: usize,
    count: String,
    ratio: String,
    decreasing: Option<bool>,
}

pub fn render_ratios(reports: &[RatioReport], precision: usize, format: Format) -> String {
    let records: Vec<RatioRecord> = reports
        .iter()
        .map(|r| RatioRecord {
            n: r.n,
            count: r.count.to_string(),
            ratio: r.ratio.to_decimal(precision),
            decreasing: r.decreasing,
        })
        .collect();
    let flag = |d: Option<bool>, table: bool| match (d, table) {
        (None, true) => "-".to_string(),
        (None, false) => String::new(),
        (Some(true), true) => "yes".to_string(),
        (Some(false), true) => "NO".to_string(),
        (Some(b), false) => b.to_string(),
    };
    let rows = |table: bool| -> Vec<Vec<String>> {
        records
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.count.clone(),
                    r.ratio.clone(),
                    flag(r.decreasing, table),
                ]
            })
            .collect()
    };
    match format {
        Format::Table => render_table(&["n", "count", "ratio", "decreasing"], &rows(true)),
        Format::Csv => render_csv(&["n", "count", "ratio", "decreasing"], &rows(false)),
        Format::Json => render_json_lines(&records),
    }
}

#[derive(Serialize)]
struct BoundRecord {
    n: usize,
    count: String,
    double_factorial: String,
    lower_bound_holds: bool,
    lower_envelope: f64,
    upper_envelope: f64,
    crude_bound: f64,
}

pub fn render_bounds(reports: &[BoundReport], format: Format) -> String {
    let records: Vec<BoundRecord> = reports
        .iter()
        .map(|r| BoundRecord {
            n: r.n,
            count: r.count.to_string(),
            double_factorial: r.double_factorial.to_string(),
            lower_bound_holds: r.lower_bound_holds,
            lower_envelope: r.lower_envelope,
            upper_envelope: r.upper_envelope,
            crude_bound: r.crude_bound,
        })
        .collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.count.clone(),
                r.double_factorial.clone(),
                r.lower_bound_holds.to_string(),
                format!("{:.6e}", r.lower_envelope),
                format!("{:.6e}", r.upper_envelope),
                format!("{:.6e}", r.crude_bound),
            ]
        })
        .collect();
    match format {
        Format::Table => {
            let headers = [
                "n",
                "M_n",
                "(2n-1)!!",
                "M_n>=(2n-1)!!",
                "(2/e)^n n^n",
                "(4/e)^n n^n",
                "108^n n^n",
            ];
            let mut out = render_table(&headers, &rows);
            out.push_str(&format!("last three columns: {ENVELOPE_NOTE}\n"));
            out
        }
        Format::Csv => render_csv(
            &[
                "n",
                "count",
                "double_factorial",
                "lower_bound_holds",
                "lower_envelope",
                "upper_envelope",
                "crude_bound",
            ],
            &rows,
        ),
        Format::Json => render_json_lines(&records),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: String,
    pub entries: BTreeMap<String, BTreeMap<usize, String>>,
}

impl Default for CacheFile {
    fn default() -> Self {
        CacheFile {
            version: CACHE_VERSION.to_string(),
            entries: BTreeMap::new(),
        }
    }
}

/// Count cache bound to a file path.
#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    file: CacheFile,
    dirty: bool,
}

impl CountCache {
    /// Loads the cache at `path`. A missing, unreadable or differently
    /// versioned file yields an empty cache.
    pub fn load(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let file = fs::read_to_string(&path)
            .ok()
            .and_then(|text| serde_json::from_str::<CacheFile>(&text).ok())
            .filter(|file| file.version == CACHE_VERSION)
            .unwrap_or_default();
        CountCache {
            path,
            file,
            dirty: false,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, variant: Variant, n: usize) -> Option<BigUint> {
        self.file
            .entries
            .get(variant.name())
            .and_then(|by_n| by_n.get(&n))
            .and_then(|text| text.parse().ok())
    }

    pub fn insert(&mut self, variant: Variant, n: usize, count: &BigUint) {
        let text = count.to_string();
        let slot = self
            .file
            .entries
            .entry(variant.name().to_string())
            .or_default();
        if slot.get(&n) != Some(&text) {
            slot.insert(n, text);
            self.dirty = true;
        }
    }

    /// Writes the cache if it changed: under an exclusive lock on
    /// `<path>.lock`, into a temporary file that is then renamed over `path`.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating cache directory {}", dir.display()))?;
        }
        let lock_path = suffixed(&self.path, ".lock");
        let lock = File::create(&lock_path)
            .with_context(|| format!("opening {}", lock_path.display()))?;
        lock.lock()
            .with_context(|| format!("locking {}", lock_path.display()))?;

        let tmp_path = suffixed(&self.path, ".tmp");
        let mut tmp = File::create(&tmp_path)
            .with_context(|| format!("writing {}", tmp_path.display()))?;
        serde_json::to_writer_pretty(&mut tmp, &self.file)?;
        tmp.write_all(b"\n")?;
        tmp.sync_all()?;
        fs::rename(&tmp_path, &self.path)
            .with_context(|| format!("replacing {}", self.path.display()))?;
        lock.unlock()?;
        self.dirty = false;
        Ok(())
    }
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// `--cache`, then `$OLIVE_CACHE`, then the per-user cache directory.
pub fn resolve_cache_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .or_else(|| {
            let base = std::env::var_os("XDG_CACHE_HOME")
                .map(PathBuf::from)
                .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
            Some(base.join("plates-olives").join("counts.json"))
        })
}

/// Counts for `n = 0..=max_n`, served from the cache where possible.
///
/// With `self_check`, cached values are recomputed and any disagreement is
/// an error.
pub fn counts_with_cache(
    counter: &mut Counter,
    mut cache: Option<&mut CountCache>,
    variant: Variant,
    max_n: usize,
    self_check: bool,
) -> Result<Vec<BigUint>> {
    let mut counts = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let cached = cache.as_ref().and_then(|c| c.get(variant, n));
        let count = match cached {
            Some(hit) if !self_check => hit,
            Some(hit) => {
                let fresh = variant.compute(counter, n)?;
                if fresh != hit {
                    bail!("cache mismatch for {variant} n={n}: cached {hit}, computed {fresh}");
                }
                fresh
            }
            None => variant.compute(counter, n)?,
        };
        if let Some(cache) = cache.as_deref_mut() {
            cache.insert(variant, n, &count);
        }
        counts.push(count);
    }
    if let Some(cache) = cache {
        cache.save()?;
    }
    Ok(counts)
}

pub fn count_records(counts: &[BigUint], variant: Variant) -> Vec<CountRecord> {
    counts
        .iter()
        .enumerate()
        .map(|(n, count)| CountRecord {
            n,
            count: count.to_string(),
            variant: variant.name().to_string(),
        })
        .collect()
}
