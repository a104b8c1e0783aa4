//! Versioned on-disk snapshot of the structure-constant memo.
//!
//! Layout: the 8-byte magic `PSCMEMO\0`, a little-endian `u32` format
//! version, then the bincode-encoded entry list.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::structure::{MemoEntry, StructureEngine};

pub const CACHE_MAGIC: [u8; 8] = *b"PSCMEMO\0";
pub const CACHE_VERSION: u32 = 1;

pub fn encode(entries: &[MemoEntry]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(12 + entries.len() * 48);
    out.extend_from_slice(&CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    bincode::serialize_into(&mut out, entries).map_err(|e| Error::Cache(e.to_string()))?;
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<Vec<MemoEntry>> {
    let mut reader = bytes;
    let mut magic = [0u8; 8];
    let mut version = [0u8; 4];
    reader
        .read_exact(&mut magic)
        .and_then(|_| reader.read_exact(&mut version))
        .map_err(|_| Error::Cache("truncated header".into()))?;
    if magic != CACHE_MAGIC {
        return Err(Error::Cache("not a memo snapshot".into()));
    }
    let version = u32::from_le_bytes(version);
    if version != CACHE_VERSION {
        return Err(Error::Cache(format!(
            "snapshot version {version}, expected {CACHE_VERSION}"
        )));
    }
    bincode::deserialize(reader).map_err(|e| Error::Cache(e.to_string()))
}

/// Loads `path` into `engine`. A missing file is not an error.
pub fn load_into(engine: &StructureEngine, path: &Path) -> Result<usize> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let entries = decode(&bytes)?;
    engine.load(&entries)?;
    Ok(entries.len())
}

/// Writes the memo of `engine` to `path`, replacing it atomically.
pub fn save(engine: &StructureEngine, path: &Path) -> Result<usize> {
    let entries = engine.snapshot();
    let bytes = encode(&entries)?;
    let tmp = path.with_extension("tmp");
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    let mut file = fs::File::create(&tmp).map_err(io)?;
    file.write_all(&bytes).map_err(io)?;
    file.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)?;
    Ok(entries.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::StructureConstantKey;
    use crate::subset::SubsetMask;

    fn engine_with_entries() -> StructureEngine {
        let engine = StructureEngine::new();
        let set = |s| SubsetMask::parse(7, s).unwrap();
        engine.expand_product(&set("1,2,4,5"), &set("2-4")).unwrap();
        engine
    }

    #[test]
    fn round_trip() {
        let engine = engine_with_entries();
        let bytes = encode(&engine.snapshot()).unwrap();
        let restored = StructureEngine::new();
        restored.load(&decode(&bytes).unwrap()).unwrap();
        assert_eq!(restored.snapshot(), engine.snapshot());
    }

    #[test]
    fn rejects_foreign_and_future_files() {
        assert!(decode(b"short").is_err());
        assert!(decode(b"GARBAGE!\x01\0\0\0").is_err());
        let mut bytes = encode(&[]).unwrap();
        bytes[8] = 2;
        assert!(matches!(decode(&bytes), Err(Error::Cache(msg)) if msg.contains("version 2")));
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("peterson-cache-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("memo.bin");
        let engine = engine_with_entries();
        let saved = save(&engine, &path).unwrap();
        let restored = StructureEngine::new();
        assert_eq!(load_into(&restored, &path).unwrap(), saved);
        let key = StructureConstantKey::new(
            SubsetMask::parse(7, "1,2,4,5").unwrap(),
            SubsetMask::parse(7, "2-4").unwrap(),
            SubsetMask::parse(7, "1-6").unwrap(),
        )
        .unwrap();
        assert_eq!(restored.b_general(&key).to_string(), "280*t^1");
        assert_eq!(load_into(&restored, &dir.join("absent.bin")).unwrap(), 0);
        fs::remove_dir_all(&dir).unwrap();
    }
}
