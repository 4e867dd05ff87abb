//! Universal integer codes, written most significant bit first.
//!
//! Unary writes `v >= 1` as `v - 1` ones and a terminating zero. Gamma writes
//! the bit length of `v` in unary followed by `v` without its leading one.
//! Delta does the same but gamma-codes the length.

use super::bits::{read_bits, read_msb_first, BitBuf};

pub fn unary_encode(v: u64, out: &mut BitBuf) {
    debug_assert!(v >= 1);
    for _ in 1..v {
        out.push(true);
    }
    out.push(false);
}

pub fn unary_decode(words: &[u64], pos: &mut usize) -> u64 {
    let mut n = 0u64;
    loop {
        let ones = read_bits(words, *pos, 64).trailing_ones() as usize;
        *pos += ones;
        n += ones as u64;
        if ones < 64 {
            *pos += 1;
            return n + 1;
        }
    }
}

pub fn gamma_encode(v: u64, out: &mut BitBuf) {
    debug_assert!(v >= 1);
    let len = 64 - v.leading_zeros();
    unary_encode(len as u64, out);
    out.push_msb_first(v & !(1u64 << (len - 1)), len - 1);
}

pub fn gamma_decode(words: &[u64], pos: &mut usize) -> u64 {
    let len = unary_decode(words, pos) as u32;
    let rest = read_msb_first(words, *pos, len - 1);
    *pos += (len - 1) as usize;
    (1u64 << (len - 1)) | rest
}

pub fn delta_encode(v: u64, out: &mut BitBuf) {
    assert!(v >= 1, "delta codes start at 1");
    let len = 64 - v.leading_zeros();
    gamma_encode(len as u64, out);
    out.push_msb_first(v & !(1u64 << (len - 1)), len - 1);
}

/// `width` bits stored most significant first at offset `off` of `w`.
#[inline]
fn msb_field(w: u64, off: u32, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    ((w >> off) & ((1u64 << width) - 1)).reverse_bits() >> (64 - width)
}

#[inline]
pub fn delta_decode(words: &[u64], pos: &mut usize) -> u64 {
    // fast path: the whole code sits in one 64-bit window
    let w = read_bits(words, *pos, 64);
    let ones = w.trailing_ones();
    if ones < 6 {
        let llen = ones + 1;
        let len = (1u32 << (llen - 1)) | msb_field(w, llen, llen - 1) as u32;
        let head = 2 * llen - 1;
        if head + len - 1 <= 64 {
            *pos += (head + len - 1) as usize;
            return (1u64 << (len - 1)) | msb_field(w, head, len - 1);
        }
    }
    let len = gamma_decode(words, pos) as u32;
    let rest = read_msb_first(words, *pos, len - 1);
    *pos += (len - 1) as usize;
    (1u64 << (len - 1)) | rest
}

/// Like [`delta_decode`] but rejects codes that run past `limit` bits or
/// describe values wider than 64 bits.
pub fn delta_decode_checked(words: &[u64], pos: &mut usize, limit: usize) -> Option<u64> {
    let ones = read_bits(words, *pos, 64).trailing_ones() as usize;
    if ones > 6 || *pos + ones + 1 > limit {
        return None;
    }
    let llen = ones as u32 + 1;
    let len = (1u64 << (llen - 1)) | read_msb_first(words, *pos + ones + 1, llen - 1);
    let total = ones + 1 + (llen as usize - 1) + (len as usize - 1);
    if len > 64 || *pos + total > limit {
        return None;
    }
    let v = delta_decode(words, pos);
    Some(v)
}

pub fn delta_len(v: u64) -> usize {
    let len = 64 - v.leading_zeros();
    let llen = 32 - len.leading_zeros();
    (llen as usize) * 2 - 1 + len as usize - 1
}

fn bits_string(b: &BitBuf) -> String {
    (0..b.len()).map(|i| if b.get(i) { '1' } else { '0' }).collect()
}

/// The delta code of `v` as a `0`/`1` string.
pub fn delta_string(v: u64) -> String {
    let mut b = BitBuf::new();
    delta_encode(v, &mut b);
    bits_string(&b)
}

pub fn gamma_string(v: u64) -> String {
    let mut b = BitBuf::new();
    gamma_encode(v, &mut b);
    bits_string(&b)
}

pub fn unary_string(v: u64) -> String {
    let mut b = BitBuf::new();
    unary_encode(v, &mut b);
    bits_string(&b)
}

/// Vbyte-style rendering of `v` in `b`-bit chunks: most significant chunk
/// first, each prefixed by a flag that is 1 on every chunk but the first.
pub fn vbyte_string(v: u64, b: u32) -> String {
    let mut chunks = Vec::new();
    let mut x = v;
    loop {
        chunks.push(x & ((1u64 << b) - 1));
        x >>= b;
        if x == 0 {
            break;
        }
    }
    let parts: Vec<String> = chunks
        .iter()
        .rev()
        .enumerate()
        .map(|(i, c)| format!("{}{:0w$b}", u8::from(i > 0), c, w = b as usize))
        .collect();
    parts.join("·")
}
