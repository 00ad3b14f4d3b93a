//! On-disk cache of enumerated groups and their class partitions.
//!
//! One file per `(family, n, kind, p, f, r)`, little-endian throughout:
//!
//! ```text
//! "KKG1"            magic
//! u32               format version
//! u8 u8             family (0 = GL, 1 = SL), kind (0 = poly, 1 = witt)
//! u32 u64 u32 u32   n, p, f, r
//! (u32, u64*k) * 2  residue field modulus, then the lifted modulus (empty for poly)
//! u64               element count N
//! u128 * N          packed element keys, in id order
//! u32 * N           class id of every element
//! u32               CRC-32 of all preceding bytes
//! ```
//!
//! Anything that fails to validate is reported as a miss and the caller recomputes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use kkg_core::classes::ClassPartition;
use kkg_core::{ElementTable, Family, GroupDesc, RingKind};

pub const MAGIC: &[u8; 4] = b"KKG1";
pub const VERSION: u32 = 1;
/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "KKG_CACHE_DIR";

#[derive(Debug)]
#[allow(clippy::large_enum_variant)] // built once per group, never stored in bulk
pub enum Lookup {
    Hit(ElementTable, ClassPartition),
    /// No file, or one that failed validation (with the reason).
    Miss(Option<String>),
}

pub fn file_name(group: &GroupDesc) -> String {
    let ring = group.ring();
    let kind = match ring.kind() {
        RingKind::Poly => "poly",
        RingKind::Witt => "witt",
    };
    format!(
        "{}_{}_{}_{}_{}_{}.kkg",
        group.family(),
        group.n(),
        kind,
        ring.p(),
        ring.f(),
        ring.r()
    )
}

fn header(group: &GroupDesc) -> Vec<u8> {
    let ring = group.ring();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(match group.family() {
        Family::GL => 0,
        Family::SL => 1,
    });
    out.push(match ring.kind() {
        RingKind::Poly => 0,
        RingKind::Witt => 1,
    });
    out.extend_from_slice(&(group.n() as u32).to_le_bytes());
    out.extend_from_slice(&ring.p().to_le_bytes());
    out.extend_from_slice(&ring.f().to_le_bytes());
    out.extend_from_slice(&ring.r().to_le_bytes());
    for modulus in [ring.field().modulus(), ring.mhat()] {
        out.extend_from_slice(&(modulus.len() as u32).to_le_bytes());
        for c in modulus {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    out
}

pub fn encode(table: &ElementTable, part: &ClassPartition) -> Vec<u8> {
    let mut out = header(table.group());
    out.extend_from_slice(&(table.size() as u64).to_le_bytes());
    for k in table.keys() {
        out.extend_from_slice(&k.to_le_bytes());
    }
    for c in &part.class_of {
        out.extend_from_slice(&c.to_le_bytes());
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

pub fn decode(group: &GroupDesc, bytes: &[u8]) -> Result<(ElementTable, ClassPartition), String> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err("bad magic".into());
    }
    let (body, crc) = bytes.split_at(bytes.len().saturating_sub(4));
    if crc.len() != 4
        || crc32fast::hash(body) != u32::from_le_bytes(crc.try_into().expect("4 bytes"))
    {
        return Err("checksum mismatch".into());
    }
    let expected = header(group);
    if body.len() < expected.len() + 8 || body[..expected.len()] != expected[..] {
        return Err("version or parameter header mismatch".into());
    }
    let rest = &body[expected.len()..];
    let count = u64::from_le_bytes(rest[..8].try_into().expect("8 bytes")) as usize;
    let rest = &rest[8..];
    if Some(rest.len()) != count.checked_mul(20) {
        return Err("truncated or oversized payload".into());
    }
    let (key_bytes, class_bytes) = rest.split_at(count * 16);
    let keys: Vec<u128> = key_bytes
        .chunks_exact(16)
        .map(|c| u128::from_le_bytes(c.try_into().expect("16 bytes")))
        .collect();
    let class_of: Vec<u32> = class_bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
        .collect();
    let table = ElementTable::from_keys(group.clone(), keys).map_err(|e| e.to_string())?;
    let part = ClassPartition::from_class_of(class_of);
    let order = table.size() as u64;
    if part.sizes.iter().any(|&s| !order.is_multiple_of(s))
        || part.class_of[0] != 0
        || part.sizes[0] != 1
    {
        return Err("class partition fails sanity checks".into());
    }
    Ok((table, part))
}

/// A cache rooted at a directory; `None` disables caching.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    /// The explicit directory if given, else the `KKG_CACHE_DIR` environment variable.
    pub fn from_env(explicit: Option<PathBuf>) -> Self {
        Cache::new(explicit.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path(&self, group: &GroupDesc) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(file_name(group)))
    }

    pub fn load(&self, group: &GroupDesc) -> Lookup {
        let Some(path) = self.path(group) else {
            return Lookup::Miss(None);
        };
        match fs::read(&path) {
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Lookup::Miss(None),
            Err(e) => Lookup::Miss(Some(format!("{}: {e}", path.display()))),
            Ok(bytes) => match decode(group, &bytes) {
                Ok((t, p)) => Lookup::Hit(t, p),
                Err(e) => Lookup::Miss(Some(format!("{}: {e}", path.display()))),
            },
        }
    }

    /// Writes atomically via a temporary file; errors are returned for the caller to report.
    pub fn store(&self, table: &ElementTable, part: &ClassPartition) -> std::io::Result<()> {
        let Some(path) = self.path(table.group()) else {
            return Ok(());
        };
        let dir = path.parent().expect("file inside the cache dir");
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(table, part))?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    }
}
