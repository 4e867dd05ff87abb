//! Raw bit storage shared by the succinct structures.
//!
//! Bit `i` of a stream lives in word `i / 64` at bit `i % 64`.

/// Growable bit buffer.
#[derive(Clone, Debug, Default)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_len(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % 64 == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `v`, least significant first.
    pub fn push_bits(&mut self, v: u64, width: u32) {
        if width == 0 {
            return;
        }
        debug_assert!(width == 64 || v >> width == 0);
        let off = (self.len % 64) as u32;
        if off == 0 {
            self.words.push(v);
        } else {
            *self.words.last_mut().unwrap() |= v << off;
            if off + width > 64 {
                self.words.push(v >> (64 - off));
            }
        }
        self.len += width as usize;
    }

    /// Appends the low `width` bits of `v`, most significant first.
    pub fn push_msb_first(&mut self, v: u64, width: u32) {
        if width == 0 {
            return;
        }
        self.push_bits(v.reverse_bits() >> (64 - width), width);
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn into_parts(self) -> (Vec<u64>, usize) {
        (self.words, self.len)
    }
}

/// Reads `width <= 64` bits starting at bit `pos`, least significant first.
/// Bits past the end of `words` read as zero.
#[inline]
pub fn read_bits(words: &[u64], pos: usize, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    let w = pos / 64;
    let off = (pos % 64) as u32;
    let lo = words.get(w).copied().unwrap_or(0) >> off;
    let v = if off == 0 {
        lo
    } else {
        lo | words.get(w + 1).copied().unwrap_or(0) << (64 - off)
    };
    if width == 64 {
        v
    } else {
        v & ((1u64 << width) - 1)
    }
}

/// Reads `width` bits starting at `pos` as a most-significant-first value.
#[inline]
pub fn read_msb_first(words: &[u64], pos: usize, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    read_bits(words, pos, width).reverse_bits() >> (64 - width)
}

/// Position (0-based) of the `k`-th (0-based) set bit of `w`.
#[inline]
pub fn select_in_word(mut w: u64, k: u32) -> u32 {
    debug_assert!(k < w.count_ones());
    for _ in 0..k {
        w &= w - 1;
    }
    w.trailing_zeros()
}

/// Number of bits needed to write `v` (at least 1).
#[inline]
pub fn bit_width(v: u64) -> u32 {
    (64 - v.leading_zeros()).max(1)
}
