//! Binary snapshot format.
//!
//! Header: magic `AHDO1`, kind `u8`, then `u64` little-endian fields n,
//! seed, C (f64 bits), level count, aux. Each level: sample count, samples,
//! hop cap, table count, then every table as `i64` little-endian values with
//! `i64::MAX` for `inf`.

use std::fs;
use std::path::Path;

use crate::dist::Dist;
use crate::error::{Error, Result};

use super::{Oracle, OracleKind, OracleLevel};

const MAGIC: &[u8; 5] = b"AHDO1";

impl Oracle {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(64 + 8 * self.cells());
        out.extend_from_slice(MAGIC);
        out.push(self.kind.code());
        let put = |out: &mut Vec<u8>, x: u64| out.extend_from_slice(&x.to_le_bytes());
        put(&mut out, self.n as u64);
        put(&mut out, self.seed);
        put(&mut out, self.c.to_bits());
        put(&mut out, self.levels.len() as u64);
        put(&mut out, self.aux);
        for level in &self.levels {
            put(&mut out, level.samples.len() as u64);
            for &s in &level.samples {
                put(&mut out, s as u64);
            }
            put(&mut out, level.hops as u64);
            put(&mut out, level.tables.len() as u64);
            for t in &level.tables {
                for d in t {
                    out.extend_from_slice(&d.raw().to_le_bytes());
                }
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Oracle> {
        let mut r = Reader { bytes, at: 0 };
        if r.take(5)? != MAGIC {
            return Err(Error::Snapshot("bad magic, not an oracle snapshot".into()));
        }
        let code = r.take(1)?[0];
        let kind = OracleKind::from_code(code).ok_or_else(|| Error::Snapshot(format!("unknown oracle kind {code}")))?;
        let n = r.usize()?;
        let seed = r.u64()?;
        let c = f64::from_bits(r.u64()?);
        let count = r.usize()?;
        let aux = r.u64()?;
        let mut levels = Vec::new();
        for _ in 0..count {
            let ns = r.usize()?;
            let mut samples = Vec::with_capacity(ns.min(n));
            for _ in 0..ns {
                let s = r.usize()?;
                if s >= n {
                    return Err(Error::Snapshot(format!("sample vertex {s} out of range")));
                }
                samples.push(s);
            }
            let hops = r.usize()?;
            let nt = r.usize()?;
            let len = ns
                .checked_mul(hops)
                .and_then(|x| x.checked_mul(n))
                .ok_or_else(|| Error::Snapshot("table size overflows".into()))?;
            let mut tables = Vec::with_capacity(nt.min(2));
            for _ in 0..nt {
                let raw = r.take(len.checked_mul(8).ok_or_else(|| Error::Snapshot("table size overflows".into()))?)?;
                tables.push(
                    raw.chunks_exact(8)
                        .map(|c| Dist::from_raw(i64::from_le_bytes(c.try_into().expect("8 bytes"))))
                        .collect(),
                );
            }
            levels.push(OracleLevel { samples, hops, tables });
        }
        if r.at != bytes.len() {
            return Err(Error::Snapshot("trailing bytes after last level".into()));
        }
        Ok(Oracle {
            kind,
            n,
            seed,
            c,
            aux,
            levels,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Oracle> {
        Self::from_bytes(&fs::read(path)?)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.at.checked_add(k).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Snapshot("truncated snapshot".into()))?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Snapshot("value does not fit usize".into()))
    }
}
