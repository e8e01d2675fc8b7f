//! Index persistence: a fixed little-endian layout, byte-identical across
//! runs for the same index.
//!
//! Layout: magic `IVPQ`, u32 version, u32 d, u32 k_c, u32 m_sub, u64 n,
//! u64 id_base, then k_c×d coarse centroids (f32), m_sub×256×(d/m_sub)
//! codebook centroids (f32), n×m_sub codes (u8), and k_c inverted lists,
//! each a u64 length followed by that many u64 global ids.

use std::path::Path;

use super::pq::{PqCodebooks, PQ_CENTROIDS};
use super::{IndexError, IvfPqIndex, Result};

pub const INDEX_MAGIC: [u8; 4] = *b"IVPQ";
pub const INDEX_VERSION: u32 = 1;

pub fn serialize_index(index: &IvfPqIndex) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&INDEX_MAGIC);
    out.extend_from_slice(&INDEX_VERSION.to_le_bytes());
    out.extend_from_slice(&(index.d as u32).to_le_bytes());
    out.extend_from_slice(&(index.k_c as u32).to_le_bytes());
    out.extend_from_slice(&(index.m_sub as u32).to_le_bytes());
    out.extend_from_slice(&(index.n as u64).to_le_bytes());
    out.extend_from_slice(&index.id_base.to_le_bytes());
    for &v in &index.coarse_centroids {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for &v in index.codebooks.raw() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&index.codes);
    for list in &index.inverted_lists {
        out.extend_from_slice(&(list.len() as u64).to_le_bytes());
        for &id in list {
            out.extend_from_slice(&id.to_le_bytes());
        }
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let available = self.buf.len() - self.pos;
        if available < len {
            return Err(IndexError::Store {
                offset: self.pos,
                reason: format!("truncated reading {what}: need {len} bytes, have {available}"),
            });
        }
        let slice = &self.buf[self.pos..self.pos + len];
        self.pos += len;
        Ok(slice)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn f32s(&mut self, count: usize, what: &str) -> Result<Vec<f32>> {
        let bytes = self.take(count * 4, what)?;
        Ok(bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
}

fn store_err<T>(offset: usize, reason: impl Into<String>) -> Result<T> {
    Err(IndexError::Store { offset, reason: reason.into() })
}

pub fn parse_index(bytes: &[u8]) -> Result<IvfPqIndex> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(4, "magic")? != INDEX_MAGIC {
        return store_err(0, "bad magic, expected IVPQ");
    }
    let version = r.u32("version")?;
    if version != INDEX_VERSION {
        return store_err(4, format!("unsupported version {version}"));
    }
    let d = r.u32("dimension")? as usize;
    if d == 0 {
        return store_err(8, "dimension must be positive");
    }
    let k_c = r.u32("cluster count")? as usize;
    if k_c == 0 {
        return store_err(12, "cluster count must be positive");
    }
    let m_sub = r.u32("subspace count")? as usize;
    if m_sub == 0 || !d.is_multiple_of(m_sub) {
        return store_err(16, format!("subspace count {m_sub} must divide dimension {d}"));
    }
    let n_offset = r.pos;
    let n64 = r.u64("vector count")?;
    let Ok(n) = usize::try_from(n64) else {
        return store_err(n_offset, format!("vector count {n64} exceeds the address space"));
    };
    let id_base = r.u64("id base")?;

    let coarse_centroids = r.f32s(k_c * d, "coarse centroids")?;
    let codebook_raw = r.f32s(m_sub * PQ_CENTROIDS * (d / m_sub), "codebooks")?;
    let codes = r.take(n * m_sub, "codes")?.to_vec();

    let mut inverted_lists = Vec::with_capacity(k_c);
    let mut seen = vec![false; n];
    for cell in 0..k_c {
        let len_offset = r.pos;
        let len64 = r.u64("list length")?;
        let Some(len) = usize::try_from(len64).ok().filter(|&l| l <= n) else {
            return store_err(len_offset, format!("list {cell} claims {len64} ids, index holds {n}"));
        };
        let mut list = Vec::with_capacity(len);
        for _ in 0..len {
            let id_offset = r.pos;
            let id = r.u64("list id")?;
            let local = id
                .checked_sub(id_base)
                .and_then(|l| usize::try_from(l).ok())
                .filter(|&l| l < n);
            let Some(local) = local else {
                return store_err(id_offset, format!("id {id} outside shard range"));
            };
            if seen[local] {
                return store_err(id_offset, format!("id {id} appears in two lists"));
            }
            seen[local] = true;
            list.push(id);
        }
        inverted_lists.push(list);
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return store_err(
            r.pos,
            format!("id {} is in no inverted list", id_base + missing as u64),
        );
    }
    if r.pos != bytes.len() {
        return store_err(r.pos, format!("{} trailing bytes", bytes.len() - r.pos));
    }

    Ok(IvfPqIndex {
        d,
        k_c,
        m_sub,
        id_base,
        n,
        coarse_centroids,
        codebooks: PqCodebooks::from_raw(m_sub, d / m_sub, codebook_raw),
        codes,
        inverted_lists,
    })
}

pub fn save_index(path: &Path, index: &IvfPqIndex) -> Result<()> {
    std::fs::write(path, serialize_index(index)).map_err(|source| IndexError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_index(path: &Path) -> Result<IvfPqIndex> {
    let bytes = std::fs::read(path).map_err(|source| IndexError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_index(&bytes)
}
