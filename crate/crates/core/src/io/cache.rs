//! Ground-state cache. One file per key, named by the SHA-256 of the key:
//!
//! ```text
//! "LDRENT01" | version u8 | key_len u32 | key bytes | e0 f64 | e1 f64 |
//! dim u64 | psi0 f64 x dim | checksum u64
//! ```
//!
//! All integers and floats are little-endian. The checksum is the first
//! eight bytes of SHA-256 over everything between the version byte and the
//! checksum itself. Unreadable, corrupt or foreign-version files are misses.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::ladder::LadderSpec;
use crate::scan::SolverSettings;
use crate::{Error, Result};

pub const MAGIC: &[u8; 8] = b"LDRENT01";
pub const VERSION: u8 = 1;

/// Canonical text identifying a solve. Floats are written as their bit
/// patterns so distinct inputs never share a key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey(String);

impl CacheKey {
    pub fn new(spec: &LadderSpec, solver: &SolverSettings) -> Self {
        CacheKey(format!(
            "n_sites={};sz=0;j_leg={:016x};j_rung={:016x};delta={:016x};boundary={:?};\
             convention={};tol={:016x};max_krylov={};seed={}",
            spec.n_sites(),
            spec.j_leg.to_bits(),
            spec.j_rung.to_bits(),
            spec.delta.to_bits(),
            spec.boundary,
            spec.convention.as_str(),
            solver.tol.to_bits(),
            solver.max_krylov,
            solver.seed,
        ))
    }

    pub fn from_raw(key: impl Into<String>) -> Self {
        CacheKey(key.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn file_name(&self) -> String {
        format!("{}.bin", hex(&Sha256::digest(self.0.as_bytes())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CachedState {
    pub e0: f64,
    pub e1: f64,
    pub psi0: Vec<f64>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn checksum(bytes: &[u8]) -> u64 {
    let digest = Sha256::digest(bytes);
    u64::from_le_bytes(digest[..8].try_into().expect("sha256 has 32 bytes"))
}

pub fn encode_entry(key: &CacheKey, entry: &CachedState) -> Vec<u8> {
    let key = key.as_str().as_bytes();
    let mut out = Vec::with_capacity(8 + 1 + 4 + key.len() + 24 + 8 * entry.psi0.len() + 8);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(key.len() as u32).to_le_bytes());
    out.extend_from_slice(key);
    out.extend_from_slice(&entry.e0.to_le_bytes());
    out.extend_from_slice(&entry.e1.to_le_bytes());
    out.extend_from_slice(&(entry.psi0.len() as u64).to_le_bytes());
    for x in &entry.psi0 {
        out.extend_from_slice(&x.to_le_bytes());
    }
    let sum = checksum(&out[9..]);
    out.extend_from_slice(&sum.to_le_bytes());
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.bytes.len() - self.pos < n {
            return Err(Error::Cache(format!("truncated {what}")));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Parses a cache file, returning the stored key text and payload.
pub fn decode_entry(bytes: &[u8]) -> Result<(String, CachedState)> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(8, "magic")? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = r.take(1, "version")?[0];
    if version != VERSION {
        return Err(Error::Cache(format!("version {version}, expected {VERSION}")));
    }
    let key_len = u32::from_le_bytes(r.take(4, "key length")?.try_into().unwrap()) as usize;
    let key = std::str::from_utf8(r.take(key_len, "key")?)
        .map_err(|_| Error::Cache("key is not UTF-8".into()))?
        .to_string();
    let e0 = r.f64("e0")?;
    let e1 = r.f64("e1")?;
    let dim = r.u64("dimension")?;
    let remaining = (bytes.len() - r.pos) as u64;
    if remaining < 8 || dim > (remaining - 8) / 8 {
        return Err(Error::Cache(format!("dimension {dim} exceeds file size")));
    }
    let raw = r.take(8 * dim as usize, "amplitudes")?;
    let psi0 = raw
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let end = r.pos;
    let stored = r.u64("checksum")?;
    if r.pos != bytes.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    if checksum(&bytes[9..end]) != stored {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    Ok((key, CachedState { e0, e1, psi0 }))
}

/// Directory of cache entries. Safe to share between workers: stores go
/// through a temporary file and an atomic rename, so readers never see a
/// partial entry and the last writer of a key wins.
#[derive(Debug, Clone)]
pub struct StateCache {
    dir: PathBuf,
}

impl StateCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(StateCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn lookup(&self, key: &CacheKey) -> Option<CachedState> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("cache read {}: {e}", path.display());
                return None;
            }
        };
        match decode_entry(&bytes) {
            Ok((stored, entry)) if stored == key.as_str() => Some(entry),
            Ok(_) => {
                log::warn!("cache file {} holds a different key", path.display());
                None
            }
            Err(e) => {
                log::warn!("ignoring cache file {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &CacheKey, entry: &CachedState) -> Result<()> {
        let path = self.path_for(key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        tmp.write_all(&encode_entry(key, entry))
            .map_err(|e| Error::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| Error::io(&path, e.error))?;
        Ok(())
    }
}
