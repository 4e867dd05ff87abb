//! Directly addressable codes: variable-length integers with random access.
//!
//! Level `i` stores the `i`-th `b`-bit chunk of every value that has one,
//! plus a bitmap telling whether that value continues on the next level.

use super::bitvec::BitVector;
use super::bits::bit_width;
use super::intvec::IntVector;
use crate::error::{Error, Result};
use crate::io::{Persist, Reader, Writer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dac {
    b: u32,
    len: usize,
    chunks: Vec<IntVector>,
    more: Vec<BitVector>,
}

fn chunk_count(v: u64, b: u32) -> usize {
    bit_width(v).div_ceil(b) as usize
}

impl Dac {
    pub fn new(values: &[u64], b: u32) -> Self {
        assert!((1..=64).contains(&b));
        let levels = values.iter().map(|&v| chunk_count(v, b)).max().unwrap_or(0);
        let mask = if b == 64 { u64::MAX } else { (1u64 << b) - 1 };
        let mut chunks = Vec::with_capacity(levels);
        let mut more = Vec::with_capacity(levels.saturating_sub(1));
        let mut cur: Vec<u64> = values.to_vec();
        for lvl in 0..levels {
            chunks.push(IntVector::with_width(cur.iter().map(|&v| v & mask), b));
            let rest: Vec<u64> = cur.iter().map(|&v| if b == 64 { 0 } else { v >> b }).collect();
            if lvl + 1 < levels {
                more.push(BitVector::from_bits(rest.iter().map(|&r| r != 0)));
            }
            cur = rest.into_iter().filter(|&r| r != 0).collect();
        }
        Self { b, len: values.len(), chunks, more }
    }

    /// Picks the chunk width in `1..=16` that minimises the stored bits.
    pub fn with_best_width(values: &[u64]) -> Self {
        let mut hist = [0usize; 65];
        for &v in values {
            hist[bit_width(v) as usize] += 1;
        }
        let best = (1..=16u32)
            .min_by_key(|&b| {
                (1..=64usize)
                    .map(|w| hist[w] * w.div_ceil(b as usize) * (b as usize + 1))
                    .sum::<usize>()
            })
            .unwrap();
        Self::new(values, best)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn chunk_width(&self) -> u32 {
        self.b
    }

    pub fn levels(&self) -> usize {
        self.chunks.len()
    }

    /// Value at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} beyond length {}", self.len);
        let mut v = 0u64;
        let mut idx = i;
        let mut shift = 0u32;
        for lvl in 0..self.chunks.len() {
            v |= self.chunks[lvl].get(idx) << shift;
            if lvl == self.more.len() || !self.more[lvl].get(idx) {
                break;
            }
            idx = self.more[lvl].rank1(idx);
            shift += self.b;
        }
        v
    }

    /// The `(continues, chunk)` pairs of element `i`, least significant first.
    pub fn chunks_of(&self, i: usize) -> Vec<(bool, u64)> {
        let mut out = Vec::new();
        let mut idx = i;
        for lvl in 0..self.chunks.len() {
            let c = self.chunks[lvl].get(idx);
            let cont = lvl < self.more.len() && self.more[lvl].get(idx);
            out.push((cont, c));
            if !cont {
                break;
            }
            idx = self.more[lvl].rank1(idx);
        }
        out
    }

    pub fn size_in_bytes(&self) -> usize {
        self.chunks.iter().map(|c| c.size_in_bytes()).sum::<usize>()
            + self.more.iter().map(|m| m.size_in_bytes()).sum::<usize>()
            + 32
    }
}

impl Persist for Dac {
    const TAG: [u8; 4] = *b"DACS";

    fn write_body(&self, w: &mut Writer) {
        w.put_u8(self.b as u8);
        w.put_u64(self.len as u64);
        w.put_u8(self.chunks.len() as u8);
        for c in &self.chunks {
            c.write_section(w);
        }
        for m in &self.more {
            m.write_section(w);
        }
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let b = r.get_u8()? as u32;
        let len = r.get_len(usize::MAX >> 1)?;
        let levels = r.get_u8()? as usize;
        if !(1..=64).contains(&b) || levels * b as usize > 64 + b as usize {
            return Err(Error::Malformed("bad DAC parameters".into()));
        }
        let mut chunks = Vec::with_capacity(levels);
        for _ in 0..levels {
            chunks.push(IntVector::read_section(r)?);
        }
        let mut more = Vec::with_capacity(levels.saturating_sub(1));
        for _ in 1..levels {
            more.push(BitVector::read_section(r)?);
        }
        // level sizes must chain through the continuation bitmaps
        let mut expect = len;
        for lvl in 0..levels {
            if chunks[lvl].len() != expect || chunks[lvl].width() != b {
                return Err(Error::Malformed("DAC level size mismatch".into()));
            }
            if lvl < more.len() {
                if more[lvl].len() != expect {
                    return Err(Error::Malformed("DAC level size mismatch".into()));
                }
                expect = more[lvl].count_ones();
            }
        }
        if levels == 0 && len != 0 {
            return Err(Error::Malformed("DAC without levels".into()));
        }
        Ok(Self { b, len, chunks, more })
    }
}
