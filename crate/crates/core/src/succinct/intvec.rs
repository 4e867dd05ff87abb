//! Packed array of fixed-width integers.

use super::bits::{bit_width, read_bits, BitBuf};
use crate::error::{Error, Result};
use crate::io::{Persist, Reader, Writer};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntVector {
    words: Vec<u64>,
    len: usize,
    width: u32,
}

impl IntVector {
    /// Packs `values` using the smallest width that fits their maximum.
    pub fn from_slice(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::with_width(values.iter().copied(), bit_width(max))
    }

    pub fn with_width<I: IntoIterator<Item = u64>>(values: I, width: u32) -> Self {
        assert!((1..=64).contains(&width));
        let mut b = BitBuf::new();
        let mut len = 0;
        for v in values {
            assert!(width == 64 || v >> width == 0, "value {v} does not fit in {width} bits");
            b.push_bits(v, width);
            len += 1;
        }
        let (words, _) = b.into_parts();
        Self { words, len, width }
    }

    pub fn from_usizes(values: &[usize]) -> Self {
        let v: Vec<u64> = values.iter().map(|&x| x as u64).collect();
        Self::from_slice(&v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Element at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} beyond length {}", self.len);
        read_bits(&self.words, i * self.width as usize, self.width)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * 8 + 24
    }
}

impl Persist for IntVector {
    const TAG: [u8; 4] = *b"INTV";

    fn write_body(&self, w: &mut Writer) {
        w.put_u8(self.width as u8);
        w.put_u64(self.len as u64);
        w.put_bits(&self.words, self.len * self.width as usize);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let width = r.get_u8()? as u32;
        if !(1..=64).contains(&width) {
            return Err(Error::Malformed(format!("bad integer width {width}")));
        }
        let len = r.get_len(r.remaining().saturating_mul(8))?;
        let words = r.get_bits(len * width as usize)?;
        Ok(Self { words, len, width })
    }
}
