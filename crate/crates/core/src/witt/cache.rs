//! Process-wide registry of Witt structures, backed by an optional on-disk cache.
//!
//! File format (`wittpoly-v1-p{p}-i{i}.txt`):
//!
//! ```text
//! WITTPOLY v1 p=2 i=2
//! S 0 1 1 0 0 0
//! ...
//! ```
//!
//! Each line after the header is `<S|P> <n> <coefficient> <exponents…>` with
//! one exponent per variable `a_0..a_{i-1}, b_0..b_{i-1}`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::structure::{check_bounds, Family, IntPoly, WittStructure};
use crate::error::{Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "KATOFORGE_CACHE";

type Slot = Arc<Mutex<Option<Arc<WittStructure>>>>;

static REGISTRY: OnceLock<Mutex<HashMap<(u64, usize), Slot>>> = OnceLock::new();
static CACHE_DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn cache_dir_cell() -> &'static Mutex<Option<PathBuf>> {
    CACHE_DIR.get_or_init(|| Mutex::new(std::env::var_os(CACHE_ENV).map(PathBuf::from)))
}

/// Set (or unset) the directory used to persist structure polynomials.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_cell().lock().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_cell().lock().unwrap().clone()
}

pub fn cache_file_name(p: u64, i: usize) -> String {
    format!("wittpoly-v1-p{p}-i{i}.txt")
}

/// The structure for `(p, i)`: memory first, then disk, then computed.
///
/// Concurrent first use of the same key blocks on a per-key lock, so exactly
/// one thread builds the structure and every caller sees the finished value.
pub fn witt_structure(p: u64, i: usize) -> Result<Arc<WittStructure>> {
    check_bounds(p, i)?;
    let slot = {
        let mut map = REGISTRY.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
        map.entry((p, i)).or_default().clone()
    };
    let mut guard = slot.lock().unwrap();
    if let Some(st) = guard.as_ref() {
        return Ok(st.clone());
    }
    let st = Arc::new(load_or_compute(p, i)?);
    *guard = Some(st.clone());
    Ok(st)
}

fn load_or_compute(p: u64, i: usize) -> Result<WittStructure> {
    let dir = cache_dir();
    if let Some(dir) = &dir {
        let path = dir.join(cache_file_name(p, i));
        if path.exists() {
            return read_cache_file(&path, p, i);
        }
    }
    let st = WittStructure::compute(p, i)?;
    if let Some(dir) = &dir {
        // A read-only cache directory is not fatal for the computation itself.
        let _ = write_cache_file(dir, &st);
    }
    Ok(st)
}

/// Serialize in the versioned text format.
pub fn render_cache(st: &WittStructure) -> String {
    let mut out = format!("WITTPOLY v1 p={} i={}\n", st.p(), st.length());
    for (tag, family) in [("S", Family::Sum), ("P", Family::Product)] {
        for (n, poly) in st.polys(family).iter().enumerate() {
            for (m, c) in poly {
                let _ = write!(out, "{tag} {n} {c}");
                for e in m {
                    let _ = write!(out, " {e}");
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Write `wittpoly-v1-p{p}-i{i}.txt` into `dir` atomically; returns the path.
pub fn write_cache_file(dir: &Path, st: &WittStructure) -> Result<PathBuf> {
    let io = |path: &Path, e: std::io::Error| Error::Io { path: path.to_path_buf(), message: e.to_string() };
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let path = dir.join(cache_file_name(st.p(), st.length()));
    let tmp = dir.join(format!(
        ".{}.{}.{}.tmp",
        cache_file_name(st.p(), st.length()),
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, render_cache(st)).map_err(|e| io(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| io(&path, e))?;
    Ok(path)
}

/// Parse a cache file, checking that it describes `(p, i)`.
pub fn read_cache_file(path: &Path, p: u64, i: usize) -> Result<WittStructure> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), message: e.to_string() })?;
    parse_cache(&text, p, i).map_err(|message| Error::CacheFormat { path: path.to_path_buf(), message })
}

fn parse_cache(text: &str, p: u64, i: usize) -> std::result::Result<WittStructure, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let expected = format!("WITTPOLY v1 p={p} i={i}");
    if header != expected {
        return Err(format!("header {header:?}, expected {expected:?}"));
    }
    let mut sum = vec![IntPoly::new(); i];
    let mut prod = vec![IntPoly::new(); i];
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 + 2 * i {
            return Err(format!("line {lineno}: expected {} fields", 3 + 2 * i));
        }
        let n: usize = fields[1].parse().map_err(|_| format!("line {lineno}: bad index"))?;
        if n >= i {
            return Err(format!("line {lineno}: index {n} out of range"));
        }
        let c: BigInt = fields[2].parse().map_err(|_| format!("line {lineno}: bad coefficient"))?;
        let m = fields[3..]
            .iter()
            .map(|s| s.parse::<u32>())
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|_| format!("line {lineno}: bad exponent"))?;
        let target = match fields[0] {
            "S" => &mut sum[n],
            "P" => &mut prod[n],
            other => return Err(format!("line {lineno}: unknown family {other:?}")),
        };
        if target.insert(m, c).is_some() {
            return Err(format!("line {lineno}: duplicate monomial"));
        }
    }
    Ok(WittStructure::from_parts(p, i, sum, prod))
}

/// Compare a cache file byte-for-byte with a fresh computation.
pub fn verify_cache_file(path: &Path, p: u64, i: usize) -> Result<()> {
    let on_disk = fs::read(path).map_err(|e| Error::Io { path: path.to_path_buf(), message: e.to_string() })?;
    let fresh = render_cache(&WittStructure::compute(p, i)?);
    if on_disk == fresh.as_bytes() {
        Ok(())
    } else {
        Err(Error::VerifyMismatch(path.to_path_buf()))
    }
}

/// Parse `wittpoly-v1-p{p}-i{i}.txt` back into `(p, i)`.
pub fn parse_cache_file_name(name: &str) -> Option<(u64, usize)> {
    let rest = name.strip_prefix("wittpoly-v1-p")?.strip_suffix(".txt")?;
    let (p, i) = rest.split_once("-i")?;
    Some((p.parse().ok()?, i.parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_text() {
        let st = WittStructure::compute(3, 2).unwrap();
        let text = render_cache(&st);
        assert!(text.starts_with("WITTPOLY v1 p=3 i=2\n"));
        let back = parse_cache(&text, 3, 2).unwrap();
        assert_eq!(back, st);
        assert!(parse_cache(&text, 3, 3).is_err());
    }

    #[test]
    fn file_names() {
        assert_eq!(cache_file_name(2, 3), "wittpoly-v1-p2-i3.txt");
        assert_eq!(parse_cache_file_name("wittpoly-v1-p2-i3.txt"), Some((2, 3)));
        assert_eq!(parse_cache_file_name("other.txt"), None);
    }
}
