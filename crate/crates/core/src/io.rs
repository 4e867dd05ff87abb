//! Little-endian byte sections used by every persistent structure.
//!
//! A section is a 4-byte tag, a `u64` body length and the body itself.

use crate::error::{Error, Result};

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn put_u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    /// Writes the first `nbits` bits of `words` using the fewest whole bytes.
    pub fn put_bits(&mut self, words: &[u64], nbits: usize) {
        let nbytes = nbits.div_ceil(8);
        for (i, w) in words.iter().enumerate() {
            let take = (nbytes - (i * 8).min(nbytes)).min(8);
            if take == 0 {
                break;
            }
            self.buf.extend_from_slice(&w.to_le_bytes()[..take]);
        }
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn bytes(&self) -> &[u8] {
        &self.buf
    }
}

pub struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.data.len() - self.pos
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::Malformed(format!(
                "truncated: need {n} bytes at offset {}, have {}",
                self.pos,
                self.remaining()
            )));
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn get_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn get_u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub fn get_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn get_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Reads a `u64` that must fit in `usize` and not exceed `max`.
    pub fn get_len(&mut self, max: usize) -> Result<usize> {
        let v = self.get_u64()?;
        if v > max as u64 {
            return Err(Error::Malformed(format!("length {v} exceeds limit {max}")));
        }
        Ok(v as usize)
    }

    /// Inverse of [`Writer::put_bits`].
    pub fn get_bits(&mut self, nbits: usize) -> Result<Vec<u64>> {
        let nbytes = nbits.div_ceil(8);
        let raw = self.take(nbytes)?;
        let mut words = vec![0u64; nbits.div_ceil(64)];
        for (i, chunk) in raw.chunks(8).enumerate() {
            let mut b = [0u8; 8];
            b[..chunk.len()].copy_from_slice(chunk);
            words[i] = u64::from_le_bytes(b);
        }
        if nbits % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (nbits % 64)) - 1;
            }
        }
        Ok(words)
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Malformed(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }
}

/// A structure with a tagged binary encoding.
pub trait Persist: Sized {
    const TAG: [u8; 4];

    fn write_body(&self, w: &mut Writer);

    fn read_body(r: &mut Reader<'_>) -> Result<Self>;

    fn write_section(&self, w: &mut Writer) {
        let mut body = Writer::new();
        self.write_body(&mut body);
        w.put_bytes(&Self::TAG);
        w.put_u64(body.len() as u64);
        w.put_bytes(body.bytes());
    }

    fn read_section(r: &mut Reader<'_>) -> Result<Self> {
        let tag = r.take(4)?;
        if tag != Self::TAG {
            return Err(Error::Malformed(format!(
                "expected section {:?}, found {:?}",
                String::from_utf8_lossy(&Self::TAG),
                String::from_utf8_lossy(tag)
            )));
        }
        let len = r.get_len(r.remaining())?;
        let mut sub = Reader::new(r.take(len)?);
        let v = Self::read_body(&mut sub)?;
        sub.expect_end()?;
        Ok(v)
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.write_section(&mut w);
        w.into_bytes()
    }

    fn from_bytes(data: &[u8]) -> Result<Self> {
        let mut r = Reader::new(data);
        let v = Self::read_section(&mut r)?;
        r.expect_end()?;
        Ok(v)
    }
}
