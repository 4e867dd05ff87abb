//! Plain bitvector with constant-time rank and logarithmic select.
//!
//! Positions follow the usual succinct conventions: `rank1(i)` counts the
//! ones among the first `i` bits and `select1(j)` returns the 1-based
//! position of the `j`-th one.

use super::bits::{select_in_word, BitBuf};
use crate::error::{out_of_range, Error, Result};
use crate::io::{Persist, Reader, Writer};

const SAMPLE_WORDS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    // ones before word `k * SAMPLE_WORDS`
    samples: Vec<u64>,
}

impl Default for BitVector {
    fn default() -> Self {
        Self::from_words(Vec::new(), 0)
    }
}

impl BitVector {
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if len % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let mut samples = Vec::with_capacity(words.len() / SAMPLE_WORDS + 2);
        let mut acc = 0u64;
        for (i, w) in words.iter().enumerate() {
            if i % SAMPLE_WORDS == 0 {
                samples.push(acc);
            }
            acc += w.count_ones() as u64;
        }
        samples.push(acc);
        Self { words, len, ones: acc as usize, samples }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut b = BitBuf::new();
        for bit in bits {
            b.push(bit);
        }
        b.into()
    }

    /// Parses a string of `0`/`1` characters; other characters are ignored.
    pub fn from_str01(s: &str) -> Self {
        Self::from_bits(s.chars().filter(|c| *c == '0' || *c == '1').map(|c| c == '1'))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Bit at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(out_of_range(i, 1, self.len));
        }
        Ok(self.get(i - 1))
    }

    /// Ones among the first `i` bits. Panics if `i > len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} beyond length {}", self.len);
        let w = i / 64;
        let s = w / SAMPLE_WORDS;
        let mut r = self.samples[s] as usize;
        for k in s * SAMPLE_WORDS..w {
            r += self.words[k].count_ones() as usize;
        }
        if i % 64 != 0 {
            r += (self.words[w] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn rank(&self, bit: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(out_of_range(i, 0, self.len));
        }
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    /// 1-based position of the `j`-th one.
    pub fn select1(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.ones {
            return None;
        }
        let j = j as u64;
        // last sample block whose count is below j
        let s = self.samples.partition_point(|&c| c < j) - 1;
        let mut cnt = self.samples[s];
        for k in s * SAMPLE_WORDS..self.words.len() {
            let pc = self.words[k].count_ones() as u64;
            if cnt + pc >= j {
                return Some(k * 64 + select_in_word(self.words[k], (j - cnt - 1) as u32) as usize + 1);
            }
            cnt += pc;
        }
        unreachable!()
    }

    /// 1-based position of the `j`-th zero.
    pub fn select0(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.count_zeros() {
            return None;
        }
        let zeros_before = |s: usize| (s * SAMPLE_WORDS * 64).min(self.len) - self.samples[s] as usize;
        let (mut lo, mut hi) = (0usize, self.samples.len() - 1);
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if zeros_before(mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut cnt = zeros_before(lo);
        for k in lo * SAMPLE_WORDS..self.words.len() {
            let valid = (self.len - k * 64).min(64);
            let inv = if valid == 64 { !self.words[k] } else { !self.words[k] & ((1u64 << valid) - 1) };
            let pc = inv.count_ones() as usize;
            if cnt + pc >= j {
                return Some(k * 64 + select_in_word(inv, (j - cnt - 1) as u32) as usize + 1);
            }
            cnt += pc;
        }
        unreachable!()
    }

    pub fn select(&self, bit: bool, j: usize) -> Result<usize> {
        let r = if bit { self.select1(j) } else { self.select0(j) };
        r.ok_or_else(|| {
            let count = if bit { self.ones } else { self.count_zeros() };
            out_of_range(j, 1, count)
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_string01(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * 8 + self.samples.len() * 8 + 24
    }
}

impl From<BitBuf> for BitVector {
    fn from(b: BitBuf) -> Self {
        let (words, len) = b.into_parts();
        Self::from_words(words, len)
    }
}

impl Persist for BitVector {
    const TAG: [u8; 4] = *b"BITV";

    fn write_body(&self, w: &mut Writer) {
        w.put_u64(self.len as u64);
        w.put_bits(&self.words, self.len);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.get_len(r.remaining().saturating_mul(8))?;
        let words = r.get_bits(len)?;
        if words.len() != len.div_ceil(64) {
            return Err(Error::Malformed("bitvector length mismatch".into()));
        }
        Ok(Self::from_words(words, len))
    }
}
