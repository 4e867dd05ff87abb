//! Compact phrase encoding and substring extraction.
//!
//! The encoding keeps the trailing symbols, the sources and a sparse bitmap
//! `B` marking the last position of every phrase. Extraction walks from the
//! right end of the requested range: a phrase end yields its trailing
//! symbol, anything else jumps into the phrase's source.

use super::{ParseKind, Parsing, Phrase};
use crate::error::{out_of_range, Error, Result};
use crate::io::{Persist, Reader, Writer};
use crate::succinct::bits::bit_width;
use crate::succinct::{IntVector, SparseBitmap};

/// What extraction needs to know about a phrase layout.
pub trait PhraseLayout {
    /// Phrase-end bitmap over positions `1..=n`.
    fn phrase_ends(&self) -> &SparseBitmap;

    /// Trailing symbol of phrase `p` (1-based).
    fn trail(&self, p: usize) -> u8;

    /// Text position where the copy of phrase `p` starts, given that the
    /// phrase spans `[first, last]` and its copy is not empty.
    fn copy_start(&self, p: usize, first: usize, last: usize) -> usize;
}

/// Writes `T[start, start + len - 1]` into `out` and returns the number of
/// extraction steps. Positions are 1-based and must lie within `1..=n`.
pub fn extract_with<L: PhraseLayout + ?Sized>(layout: &L, start: usize, len: usize, out: &mut Vec<u8>) -> usize {
    let b = layout.phrase_ends();
    assert!(len == 0 || (start >= 1 && start + len - 1 <= b.len()), "extract range out of bounds");
    let base = out.len();
    out.resize(base + len, 0);
    let mut steps = 0;
    let mut stack = vec![(start, len, base)];
    while let Some((mut st, mut l, mut off)) = stack.pop() {
        while l > 0 {
            steps += 1;
            let end = st + l - 1;
            let (p, at_end) = b.rank1_with_bit(end);
            if at_end {
                out[off + l - 1] = layout.trail(p);
                l -= 1;
                continue;
            }
            let (prev_end, next_end) = b.select1_pair(p);
            let first = prev_end + 1;
            let last = next_end.expect("position beyond the last phrase");
            if st < first {
                stack.push((st, first - st, off));
                off += first - st;
                l = end + 1 - first;
                st = first;
            }
            st = layout.copy_start(p + 1, first, last) + (st - first);
        }
    }
    steps
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedParsing {
    kind: ParseKind,
    chars: IntVector,
    sources: IntVector,
    ends: SparseBitmap,
}

/// Encodes a parsing. LZ77 and LZ78 sources are stored as text positions,
/// LZ-End sources as phrase ids.
pub fn encode_parsing(p: &Parsing) -> EncodedParsing {
    let chars: Vec<u64> = p.phrases.iter().map(|ph| ph.trail as u64).collect();
    let sources: Vec<u64> = match p.kind {
        ParseKind::LzEnd => p.phrases.iter().map(|ph| ph.source as u64).collect(),
        _ => p.source_starts().iter().map(|&s| s as u64).collect(),
    };
    let max_char = chars.iter().copied().max().unwrap_or(0);
    EncodedParsing {
        kind: p.kind,
        chars: IntVector::with_width(chars, bit_width(max_char)),
        sources: IntVector::from_slice(&sources),
        ends: SparseBitmap::from_positions(p.n, &p.ends()),
    }
}

impl PhraseLayout for EncodedParsing {
    fn phrase_ends(&self) -> &SparseBitmap {
        &self.ends
    }

    fn trail(&self, p: usize) -> u8 {
        self.chars.get(p - 1) as u8
    }

    fn copy_start(&self, p: usize, first: usize, last: usize) -> usize {
        let s = self.sources.get(p - 1) as usize;
        match self.kind {
            ParseKind::LzEnd => self.ends.select1(s).unwrap() + 1 - (last - first),
            _ => s,
        }
    }
}

impl EncodedParsing {
    pub fn kind(&self) -> ParseKind {
        self.kind
    }

    /// Text length including the sentinel.
    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn phrase_count(&self) -> usize {
        self.chars.len()
    }

    /// Phrase `p` (1-based) as stored: source, copy length, trailing symbol.
    pub fn phrase(&self, p: usize) -> Phrase {
        let (prev, last) = self.ends.select1_pair(p - 1);
        let len = last.unwrap() - prev - 1;
        let raw = self.sources.get(p - 1) as usize;
        let source = match self.kind {
            ParseKind::Lz78 if len > 0 => self.ends.rank1(raw - 1) + 1,
            _ => raw,
        };
        Phrase { source, len, trail: self.chars.get(p - 1) as u8 }
    }

    /// Symbols `T[start, start + len - 1]`, 1-based.
    pub fn extract(&self, start: usize, len: usize) -> Result<Vec<u8>> {
        Ok(self.extract_counted(start, len)?.0)
    }

    /// Like [`Self::extract`], also returning the number of steps taken.
    pub fn extract_counted(&self, start: usize, len: usize) -> Result<(Vec<u8>, usize)> {
        if len > 0 && (start == 0 || start + len - 1 > self.len()) {
            return Err(out_of_range(start + len.saturating_sub(1), 1, self.len()));
        }
        let mut out = Vec::with_capacity(len);
        let steps = extract_with(self, start, len, &mut out);
        Ok((out, steps))
    }

    pub fn size_in_bytes(&self) -> usize {
        self.chars.size_in_bytes() + self.sources.size_in_bytes() + self.ends.size_in_bytes()
    }
}

impl Persist for EncodedParsing {
    const TAG: [u8; 4] = *b"ENCP";

    fn write_body(&self, w: &mut Writer) {
        w.put_u8(self.kind.code());
        self.chars.write_section(w);
        self.sources.write_section(w);
        self.ends.write_section(w);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let kind = ParseKind::from_code(r.get_u8()?).ok_or_else(|| Error::Malformed("unknown parsing kind".into()))?;
        let chars = IntVector::read_section(r)?;
        let sources = IntVector::read_section(r)?;
        let ends = SparseBitmap::read_section(r)?;
        let m = chars.len();
        if sources.len() != m || ends.count_ones() != m || (m > 0 && ends.select1(m) != Some(ends.len())) {
            return Err(Error::Malformed("encoded parsing parts disagree".into()));
        }
        let enc = Self { kind, chars, sources, ends };
        // each copy must come from strictly earlier text
        for p in 1..=m {
            let (prev, last) = enc.ends.select1_pair(p - 1);
            let len = last.unwrap() - prev - 1;
            let s = enc.sources.get(p - 1) as usize;
            let ok = match (len, kind) {
                (0, _) => true,
                (_, ParseKind::LzEnd) => s >= 1 && s < p && enc.ends.select1(s).unwrap() >= len,
                _ => s >= 1 && s + len <= prev + 1,
            };
            if !ok {
                return Err(Error::Malformed(format!("phrase {p} has an invalid source")));
            }
        }
        Ok(enc)
    }
}
