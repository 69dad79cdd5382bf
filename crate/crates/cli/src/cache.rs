//! On-disk cache of the smallest-prime-factor table.
//!
//! Layout: magic `FELABSV1`, the limit as little-endian u64, the table as
//! little-endian u32 entries, then a SHA-256 digest of everything before it.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use felab_core::arith::Sieve;
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 8] = b"FELABSV1";
const DIGEST_LEN: usize = 32;

pub fn encode(sieve: &Sieve) -> Vec<u8> {
    let table = sieve.table();
    let mut buf = Vec::with_capacity(16 + table.len() * 4 + DIGEST_LEN);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&sieve.limit().to_le_bytes());
    for &v in table {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest);
    buf
}

pub fn decode(bytes: &[u8]) -> Result<Sieve> {
    if bytes.len() < 16 + DIGEST_LEN || &bytes[..8] != MAGIC {
        bail!("not a sieve cache file");
    }
    let (body, digest) = bytes.split_at(bytes.len() - DIGEST_LEN);
    if Sha256::digest(body).as_slice() != digest {
        bail!("sieve cache digest mismatch");
    }
    let limit = u64::from_le_bytes(body[8..16].try_into().expect("8 bytes"));
    let table: Vec<u32> = body[16..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
        .collect();
    Ok(Sieve::from_table(limit, table)?)
}

/// Loads a cached sieve covering `limit`, or builds one and stores it.
/// A damaged or too-small cache is rebuilt, with a note on stderr.
pub fn load_or_build(path: &Path, limit: u64) -> Result<Sieve> {
    if let Ok(bytes) = fs::read(path) {
        match decode(&bytes) {
            Ok(s) if s.limit() >= limit => return Ok(s),
            Ok(_) => {}
            Err(e) => eprintln!("note: ignoring sieve cache {}: {e}", path.display()),
        }
    }
    let sieve = Sieve::new(limit)?;
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
    f.write_all(&encode(&sieve))?;
    drop(f);
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(sieve)
}
