//! Sparse bitmap storing the gaps between consecutive ones as delta codes.
//!
//! Every `SAMPLE`-th one keeps its absolute position and the bit offset of the
//! next code, so select decodes at most `SAMPLE` codes and rank adds a binary
//! search over the samples.

use super::bits::BitBuf;
use super::codes::{delta_decode, delta_decode_checked, delta_encode};
use crate::error::{out_of_range, Error, Result};
use crate::io::{Persist, Reader, Writer};

const SAMPLE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseBitmap {
    len: usize,
    ones: usize,
    stream: Vec<u64>,
    stream_bits: usize,
    // position of one number `k * SAMPLE` (0 for k = 0)
    sample_pos: Vec<u64>,
    // offset of the code for one number `k * SAMPLE + 1`
    sample_off: Vec<u64>,
}

impl SparseBitmap {
    /// Builds from strictly increasing 1-based positions, all `<= len`.
    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut b = BitBuf::new();
        let mut prev = 0;
        for &p in positions {
            assert!(p > prev && p <= len, "positions must be increasing and within 1..={len}");
            delta_encode((p - prev) as u64, &mut b);
            prev = p;
        }
        let (stream, stream_bits) = b.into_parts();
        let mut s = Self { len, ones: positions.len(), stream, stream_bits, ..Default::default() };
        s.build_samples();
        s
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut pos = Vec::new();
        let mut len = 0;
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                pos.push(i + 1);
            }
            len = i + 1;
        }
        Self::from_positions(len, &pos)
    }

    fn build_samples(&mut self) {
        self.sample_pos = Vec::with_capacity(self.ones / SAMPLE + 1);
        self.sample_off = Vec::with_capacity(self.ones / SAMPLE + 1);
        let mut off = 0;
        let mut cur = 0u64;
        for k in 0..self.ones {
            if k % SAMPLE == 0 {
                self.sample_pos.push(cur);
                self.sample_off.push(off as u64);
            }
            cur += delta_decode(&self.stream, &mut off);
        }
        if self.ones % SAMPLE == 0 {
            self.sample_pos.push(cur);
            self.sample_off.push(off as u64);
        }
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

    /// 1-based position of the `j`-th one.
    pub fn select1(&self, j: usize) -> Option<usize> {
        if j > self.ones {
            return None;
        }
        if j == 0 {
            return None;
        }
        let k = (j - 1) / SAMPLE;
        let mut off = self.sample_off[k] as usize;
        let mut cur = self.sample_pos[k];
        for _ in k * SAMPLE..j {
            cur += delta_decode(&self.stream, &mut off);
        }
        Some(cur as usize)
    }

    /// Positions of the `j`-th and `(j+1)`-th ones with a single decode run.
    /// `j` may be 0, in which case the first value is 0.
    pub fn select1_pair(&self, j: usize) -> (usize, Option<usize>) {
        assert!(j <= self.ones);
        let k = j.saturating_sub(1) / SAMPLE;
        let mut off = self.sample_off[k] as usize;
        let mut cur = self.sample_pos[k];
        for _ in k * SAMPLE..j {
            cur += delta_decode(&self.stream, &mut off);
        }
        let next = (j < self.ones).then(|| (cur + delta_decode(&self.stream, &mut off)) as usize);
        (cur as usize, next)
    }

    /// Ones among positions `1..=i`, with the bit at `i`.
    pub fn rank1_with_bit(&self, i: usize) -> (usize, bool) {
        if i == 0 {
            return (0, false);
        }
        let i = i as u64;
        let k = self.sample_pos.partition_point(|&p| p <= i) - 1;
        let mut off = self.sample_off[k] as usize;
        let mut cur = self.sample_pos[k];
        let mut cnt = k * SAMPLE;
        let mut hit = cur == i && cnt > 0;
        while cnt < self.ones {
            let next = cur + delta_decode(&self.stream, &mut off);
            if next > i {
                break;
            }
            cur = next;
            cnt += 1;
            hit = cur == i;
        }
        (cnt, hit)
    }

    /// Ones among the first `i` positions. Panics if `i > len`.
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} beyond length {}", self.len);
        self.rank1_with_bit(i).0
    }

    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn rank(&self, bit: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(out_of_range(i, 0, self.len));
        }
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    /// Bit at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(out_of_range(i, 1, self.len));
        }
        Ok(self.rank1_with_bit(i).1)
    }

    /// 1-based position of the `j`-th zero.
    pub fn select0(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.count_zeros() {
            return None;
        }
        // zeros up to the sampled one k are sample_pos[k] - k * SAMPLE
        let (mut lo, mut hi) = (0usize, self.sample_pos.len());
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if (self.sample_pos[mid] as usize) - mid * SAMPLE < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut off = self.sample_off[lo] as usize;
        let mut cur = self.sample_pos[lo] as usize;
        let mut cnt = lo * SAMPLE;
        while cnt < self.ones {
            let next = cur + delta_decode(&self.stream, &mut off) as usize;
            if next - 1 - cnt >= j {
                break;
            }
            cur = next;
            cnt += 1;
        }
        Some(j + cnt)
    }

    pub fn select(&self, bit: bool, j: usize) -> Result<usize> {
        let r = if bit { self.select1(j) } else { self.select0(j) };
        r.ok_or_else(|| {
            let count = if bit { self.ones } else { self.count_zeros() };
            out_of_range(j, 1, count)
        })
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut off = 0;
        let mut cur = 0usize;
        (0..self.ones).map(move |_| {
            cur += delta_decode(&self.stream, &mut off) as usize;
            cur
        })
    }

    pub fn stream_bits(&self) -> usize {
        self.stream_bits
    }

    pub fn size_in_bytes(&self) -> usize {
        self.stream.len() * 8 + self.sample_pos.len() * 16 + 40
    }
}

impl Persist for SparseBitmap {
    const TAG: [u8; 4] = *b"SPBM";

    fn write_body(&self, w: &mut Writer) {
        w.put_u64(self.len as u64);
        w.put_u64(self.ones as u64);
        w.put_u64(self.stream_bits as u64);
        w.put_bits(&self.stream, self.stream_bits);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.get_len(usize::MAX >> 1)?;
        let ones = r.get_len(len)?;
        let stream_bits = r.get_len(r.remaining().saturating_mul(8))?;
        let stream = r.get_bits(stream_bits)?;
        // every code is at least one bit and the gaps must stay within len
        if ones > stream_bits {
            return Err(Error::Malformed("sparse bitmap stream too short".into()));
        }
        let mut off = 0;
        let mut cur = 0usize;
        for _ in 0..ones {
            let g = delta_decode_checked(&stream, &mut off, stream_bits)
                .ok_or_else(|| Error::Malformed("bad gap code in sparse bitmap".into()))?;
            cur = cur.saturating_add(g as usize);
        }
        if off != stream_bits || cur > len {
            return Err(Error::Malformed("sparse bitmap stream inconsistent".into()));
        }
        let mut s = Self { len, ones, stream, stream_bits, ..Default::default() };
        s.build_samples();
        Ok(s)
    }
}
