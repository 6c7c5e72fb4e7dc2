//! `cache warm|verify|clear` over a directory of structure-polynomial files.

use std::fs;
use std::path::{Path, PathBuf};

use katoforge::witt::cache::{cache_file_name, parse_cache_file_name, render_cache, verify_cache_file};
use katoforge::witt::structure::check_bounds;
use katoforge::witt::WittStructure;
use katoforge::{Error, Result};

/// Outcome of a cache command: one line per file plus an overall verdict.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub ok: bool,
}

fn io(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), message: e.to_string() }
}

/// Cache files in `dir`, sorted by name.
pub fn cache_files(dir: &Path) -> Result<Vec<(PathBuf, u64, usize)>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| io(dir, e))? {
        let entry = entry.map_err(|e| io(dir, e))?;
        let name = entry.file_name();
        if let Some((p, i)) = name.to_str().and_then(parse_cache_file_name) {
            out.push((entry.path(), p, i));
        }
    }
    out.sort();
    Ok(out)
}

/// Compute and store every `(p, i)` with `i ≤ max_level` that fits the
/// resource bound; files already holding the right bytes are left alone.
pub fn warm(dir: &Path, primes: &[u64], max_level: usize) -> Result<Report> {
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut report = Report { ok: true, ..Report::default() };
    for &p in primes {
        for i in 1..=max_level {
            let name = cache_file_name(p, i);
            if let Err(e) = check_bounds(p, i) {
                report.lines.push(format!("skipped {name}: {e}"));
                continue;
            }
            let st = WittStructure::compute(p, i)?;
            let text = render_cache(&st);
            let path = dir.join(&name);
            if fs::read(&path).is_ok_and(|b| b == text.as_bytes()) {
                report.lines.push(format!("present {name}"));
            } else {
                katoforge::witt::cache::write_cache_file(dir, &st)?;
                report.lines.push(format!("wrote {name}"));
            }
        }
    }
    Ok(report)
}

/// Recompute every cache file in `dir` and byte-compare.
pub fn verify(dir: &Path) -> Result<Report> {
    let files = cache_files(dir)?;
    let mut report = Report { ok: true, ..Report::default() };
    if files.is_empty() {
        report.lines.push(format!("no cache files in {}", dir.display()));
    }
    for (path, p, i) in files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        match verify_cache_file(&path, p, i) {
            Ok(()) => report.lines.push(format!("ok {name}")),
            Err(e) => {
                report.ok = false;
                report.lines.push(format!("mismatch {name}: {e}"));
            }
        }
    }
    Ok(report)
}

/// Remove every cache file in `dir`.
pub fn clear(dir: &Path) -> Result<Report> {
    let mut report = Report { ok: true, ..Report::default() };
    for (path, _, _) in cache_files(dir)? {
        fs::remove_file(&path).map_err(|e| io(&path, e))?;
        report.lines.push(format!("removed {}", path.display()));
    }
    Ok(report)
}
