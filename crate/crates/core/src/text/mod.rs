//! Texts, suffix arrays, backward search and empirical entropy.
//!
//! A [`Text`] maps its bytes to compact symbols `1..sigma` and ends with the
//! sentinel symbol `0`, which is smaller than every other symbol. Positions
//! are 1-based and the sentinel is position `n`.

pub mod bundle;
pub mod rmq;
pub mod sais;
pub mod stats;

pub use bundle::SuffixArrayBundle;

use crate::error::{Error, Result};
use crate::io::{Persist, Reader, Writer};

/// Mapping between bytes and compact symbols. Symbol 0 is the sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    to_byte: Vec<u8>,
    to_sym: [u8; 256],
}

impl Alphabet {
    pub fn of_text(bytes: &[u8]) -> Self {
        let mut present = [false; 256];
        for &b in bytes {
            present[b as usize] = true;
        }
        present[0] = false;
        let used: Vec<u8> = (1..=255u8).filter(|&b| present[b as usize]).collect();
        Self::from_used(&used)
    }

    fn from_used(used: &[u8]) -> Self {
        let mut to_byte = vec![0u8];
        let mut to_sym = [0u8; 256];
        for &b in used {
            to_sym[b as usize] = to_byte.len() as u8;
            to_byte.push(b);
        }
        Self { to_byte, to_sym }
    }

    /// Number of symbols including the sentinel.
    pub fn sigma(&self) -> usize {
        self.to_byte.len()
    }

    pub fn symbol(&self, b: u8) -> Option<u8> {
        match self.to_sym[b as usize] {
            0 => None,
            s => Some(s),
        }
    }

    pub fn byte(&self, sym: u8) -> u8 {
        self.to_byte[sym as usize]
    }

    /// Maps a pattern to symbols. `Ok(None)` means some byte never occurs in
    /// the text, so the pattern cannot occur either.
    pub fn map_pattern(&self, p: &[u8]) -> Result<Option<Vec<u8>>> {
        if p.contains(&0) {
            return Err(Error::ReservedInPattern);
        }
        Ok(p.iter().map(|&b| self.symbol(b)).collect())
    }

    /// Bytes of a symbol string, with the sentinel shown as `$`.
    pub fn render(&self, syms: &[u8]) -> String {
        syms.iter()
            .map(|&s| if s == 0 { '$' } else { self.byte(s) as char })
            .collect()
    }

    pub fn unmap(&self, syms: &[u8]) -> Vec<u8> {
        syms.iter().map(|&s| self.byte(s)).collect()
    }
}

impl Persist for Alphabet {
    const TAG: [u8; 4] = *b"ALPH";

    fn write_body(&self, w: &mut Writer) {
        w.put_u16(self.to_byte.len() as u16 - 1);
        w.put_bytes(&self.to_byte[1..]);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let k = r.get_u16()? as usize;
        let used = r.take(k)?;
        if used.contains(&0) || used.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed("alphabet must be strictly increasing nonzero bytes".into()));
        }
        Ok(Self::from_used(used))
    }
}

/// A text over compact symbols, terminated by the sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    alphabet: Alphabet,
    sym: Vec<u8>,
}

impl Text {
    /// Rejects empty input and input containing the reserved byte `0x00`.
    pub fn new(bytes: &[u8]) -> Result<Self> {
        if let Some(i) = bytes.iter().position(|&b| b == 0) {
            return Err(Error::ReservedByte(i));
        }
        if bytes.is_empty() {
            return Err(Error::InvalidArgument("empty text".into()));
        }
        if bytes.len() >= u32::MAX as usize - 1 {
            return Err(Error::InvalidArgument("text too long".into()));
        }
        let alphabet = Alphabet::of_text(bytes);
        let mut sym: Vec<u8> = bytes.iter().map(|&b| alphabet.to_sym[b as usize]).collect();
        sym.push(0);
        Ok(Self { alphabet, sym })
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.sym.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.sigma()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Symbols including the trailing sentinel.
    pub fn symbols(&self) -> &[u8] {
        &self.sym
    }

    /// Symbol at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> u8 {
        self.sym[i - 1]
    }

    /// The original bytes, without the sentinel.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.alphabet.unmap(&self.sym[..self.sym.len() - 1])
    }

    /// The reversed text `T[n-1] .. T[1]` followed by the sentinel.
    pub fn reversed(&self) -> Vec<u8> {
        let n = self.sym.len();
        let mut r: Vec<u8> = self.sym[..n - 1].iter().rev().copied().collect();
        r.push(0);
        r
    }
}
