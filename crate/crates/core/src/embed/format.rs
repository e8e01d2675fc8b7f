//! The EMBF binary embedding format.
//!
//! Layout: `EMBF` magic, u32 LE version (=1), u32 LE n, u32 LE d, u8
//! normalized flag, then n·d little-endian f32 values row-major. The format
//! is byte-deterministic, so write-then-read round trips are bit-identical.

use super::{EmbeddingMatrix, EmbedError, Result};

pub const EMBF_MAGIC: [u8; 4] = *b"EMBF";
pub const EMBF_VERSION: u32 = 1;

const HEADER_LEN: usize = 4 + 4 + 4 + 4 + 1;

fn format_err(offset: usize, reason: impl Into<String>) -> EmbedError {
    EmbedError::Format { offset, reason: reason.into() }
}

fn read_u32(bytes: &[u8], offset: usize, what: &str) -> Result<u32> {
    let end = offset + 4;
    let slice = bytes
        .get(offset..end)
        .ok_or_else(|| format_err(offset, format!("truncated before {what}")))?;
    Ok(u32::from_le_bytes(slice.try_into().unwrap()))
}

/// Parses EMBF bytes, verifying the header against the payload size.
pub fn parse_embf(bytes: &[u8]) -> Result<EmbeddingMatrix> {
    let magic = bytes
        .get(0..4)
        .ok_or_else(|| format_err(0, "truncated before magic"))?;
    if magic != EMBF_MAGIC {
        return Err(format_err(0, format!("bad magic {magic:?}, expected `EMBF`")));
    }
    let version = read_u32(bytes, 4, "version")?;
    if version != EMBF_VERSION {
        return Err(format_err(4, format!("unsupported version {version}")));
    }
    let n = read_u32(bytes, 8, "row count")? as usize;
    let d = read_u32(bytes, 12, "dimension")? as usize;
    if d == 0 {
        return Err(format_err(12, "dimension must be nonzero"));
    }
    let normalized = match bytes.get(16) {
        Some(0) => false,
        Some(1) => true,
        Some(v) => return Err(format_err(16, format!("bad normalized flag {v}"))),
        None => return Err(format_err(16, "truncated before normalized flag")),
    };
    let expected = n
        .checked_mul(d)
        .and_then(|c| c.checked_mul(4))
        .ok_or_else(|| format_err(8, format!("payload size overflows for n={n} d={d}")))?;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() != expected {
        return Err(format_err(
            HEADER_LEN + payload.len().min(expected),
            format!(
                "payload holds {} bytes but header declares {} ({n}x{d} f32)",
                payload.len(),
                expected
            ),
        ));
    }
    let data: Vec<f32> = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    EmbeddingMatrix::new(n, d, data, normalized)
}

/// Serializes a matrix to EMBF bytes.
pub fn serialize_embf(matrix: &EmbeddingMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + matrix.data().len() * 4);
    out.extend_from_slice(&EMBF_MAGIC);
    out.extend_from_slice(&EMBF_VERSION.to_le_bytes());
    out.extend_from_slice(&(matrix.n() as u32).to_le_bytes());
    out.extend_from_slice(&(matrix.d() as u32).to_le_bytes());
    out.push(u8::from(matrix.is_normalized()));
    for value in matrix.data() {
        out.extend_from_slice(&value.to_le_bytes());
    }
    out
}
