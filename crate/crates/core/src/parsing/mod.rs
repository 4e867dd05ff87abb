//! LZ77, LZ78 and LZ-End parsings, their compact encoding and extraction.
//!
//! A phrase is a copied part followed by one explicit trailing symbol. How
//! the copy is described depends on the parsing:
//!
//! * LZ77: `source` is the 1-based text position where the copy starts.
//! * LZ78: `source` is the 1-based id of the earlier phrase being extended.
//! * LZ-End: `source` is the 1-based id of the phrase at whose end the copy ends.
//!
//! `source == 0` exactly when the copy is empty.

mod encoded;
mod height;
mod lz;
mod lz78;

pub use encoded::{encode_parsing, extract_with, EncodedParsing, PhraseLayout};
pub use height::{compute_height, position_heights, HeightStats};
pub use lz::{parse_lz77, parse_lz77_with, parse_lzend, parse_lzend_with};
pub use lz78::parse_lz78;

use crate::error::{Error, Result};
use crate::text::{Alphabet, Text};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseKind {
    Lz77,
    Lz78,
    LzEnd,
}

impl ParseKind {
    pub fn code(self) -> u8 {
        match self {
            ParseKind::Lz77 => 1,
            ParseKind::Lz78 => 2,
            ParseKind::LzEnd => 3,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        match c {
            1 => Some(ParseKind::Lz77),
            2 => Some(ParseKind::Lz78),
            3 => Some(ParseKind::LzEnd),
            _ => None,
        }
    }
}

impl fmt::Display for ParseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseKind::Lz77 => "lz77",
            ParseKind::Lz78 => "lz78",
            ParseKind::LzEnd => "lzend",
        })
    }
}

impl FromStr for ParseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "lz77" => Ok(ParseKind::Lz77),
            "lz78" => Ok(ParseKind::Lz78),
            "lzend" => Ok(ParseKind::LzEnd),
            _ => Err(Error::InvalidArgument(format!("unknown parsing '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phrase {
    pub source: usize,
    /// Length of the copied part; the phrase is one symbol longer.
    pub len: usize,
    pub trail: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsing {
    pub kind: ParseKind,
    /// Text length including the sentinel.
    pub n: usize,
    pub phrases: Vec<Phrase>,
    /// Symbols examined by the construction (backward-search steps plus one
    /// per phrase); equals `n` for LZ77 and LZ78.
    pub symbols_processed: usize,
}

impl Parsing {
    pub fn phrase_count(&self) -> usize {
        self.phrases.len()
    }

    /// Phrase count of the text without its sentinel: a final phrase made of
    /// the sentinel alone is not counted.
    pub fn text_phrase_count(&self) -> usize {
        let lone = self.phrases.last().is_some_and(|p| p.len == 0 && p.trail == 0);
        self.phrases.len() - lone as usize
    }

    /// 1-based last position of every phrase.
    pub fn ends(&self) -> Vec<usize> {
        let mut acc = 0;
        self.phrases
            .iter()
            .map(|p| {
                acc += p.len + 1;
                acc
            })
            .collect()
    }

    /// 1-based start of every phrase's copy, 0 for empty copies.
    pub fn source_starts(&self) -> Vec<usize> {
        let ends = self.ends();
        self.phrases
            .iter()
            .map(|p| {
                if p.len == 0 {
                    return 0;
                }
                match self.kind {
                    ParseKind::Lz77 => p.source,
                    ParseKind::Lz78 => if p.source == 1 { 1 } else { ends[p.source - 2] + 1 },
                    ParseKind::LzEnd => ends[p.source - 1] + 1 - p.len,
                }
            })
            .collect()
    }

    /// Checks that every source refers to earlier text of the right shape.
    pub fn validate(&self) -> Result<()> {
        let bad = |i: usize, why: &str| Err(Error::Malformed(format!("phrase {}: {why}", i + 1)));
        let ends = self.ends();
        if ends.last().copied().unwrap_or(0) != self.n {
            return Err(Error::Malformed("phrase lengths do not add up to n".into()));
        }
        for (i, p) in self.phrases.iter().enumerate() {
            if (p.source == 0) != (p.len == 0) {
                return bad(i, "empty source must have zero length");
            }
            if p.len == 0 {
                continue;
            }
            let first = ends[i] - p.len;
            match self.kind {
                ParseKind::Lz77 => {
                    if p.source + p.len > first {
                        return bad(i, "source does not end before the phrase");
                    }
                }
                ParseKind::Lz78 | ParseKind::LzEnd => {
                    if p.source > i {
                        return bad(i, "source phrase is not earlier");
                    }
                    let q_len = ends[p.source - 1] - if p.source == 1 { 0 } else { ends[p.source - 2] };
                    if self.kind == ParseKind::Lz78 && q_len != p.len {
                        return bad(i, "LZ78 copy length differs from its source phrase");
                    }
                    if self.kind == ParseKind::LzEnd && ends[p.source - 1] < p.len {
                        return bad(i, "source runs before the text start");
                    }
                }
            }
        }
        Ok(())
    }

    /// Rebuilds the symbol sequence, sentinel included.
    pub fn decode(&self) -> Result<Vec<u8>> {
        self.validate()?;
        let starts = self.source_starts();
        let mut t = Vec::with_capacity(self.n);
        for (p, &s) in self.phrases.iter().zip(&starts) {
            for k in 0..p.len {
                let c = t[s - 1 + k];
                t.push(c);
            }
            t.push(p.trail);
        }
        Ok(t)
    }

    /// Phrase strings with the sentinel shown as `$`.
    pub fn render(&self, alphabet: &Alphabet) -> Result<Vec<String>> {
        let t = self.decode()?;
        let mut start = 0;
        Ok(self
            .ends()
            .iter()
            .map(|&e| {
                let s = alphabet.render(&t[start..e]);
                start = e;
                s
            })
            .collect())
    }
}

/// Parses `text` with the chosen scheme.
pub fn parse(text: &Text, kind: ParseKind) -> Parsing {
    match kind {
        ParseKind::Lz77 => parse_lz77(text),
        ParseKind::Lz78 => parse_lz78(text),
        ParseKind::LzEnd => parse_lzend(text),
    }
}
