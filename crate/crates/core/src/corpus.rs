//! Deterministic generators for repetitive test texts.
//!
//! Binary sequences use the ASCII digits `0` and `1`, since byte 0x00 is
//! reserved for the sentinel. Random generators use ChaCha8 seeded from a
//! `u64`, so a spec and seed always give the same bytes.

use crate::error::{Error, Result};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Default output cap for the generators, in bytes.
pub const DEFAULT_CAP: usize = 1 << 30;

/// Fibonacci word: `F1 = 0`, `F2 = 1`, `Fn = F(n-1) F(n-2)`.
pub fn fibonacci(n: usize) -> Result<Vec<u8>> {
    fibonacci_capped(n, DEFAULT_CAP)
}

pub fn fibonacci_capped(n: usize, cap: usize) -> Result<Vec<u8>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Fibonacci order starts at 1".into()));
    }
    let (mut a, mut b) = (1usize, 1usize);
    for _ in 2..n {
        (a, b) = (b, a.saturating_add(b));
    }
    if b > cap {
        return Err(Error::InvalidArgument(format!("F{n} has {b} bytes, above the cap of {cap}")));
    }
    if n == 1 {
        return Ok(b"0".to_vec());
    }
    let (mut older, mut last) = (b"0".to_vec(), b"1".to_vec());
    for _ in 2..n {
        let next = [&last[..], &older[..]].concat();
        older = std::mem::replace(&mut last, next);
    }
    Ok(last)
}

/// Thue–Morse word: `T1 = 0`, `Tn = T(n-1)` followed by its complement, so
/// `|Tn| = 2^(n-1)`.
pub fn thue_morse(n: usize) -> Result<Vec<u8>> {
    thue_morse_capped(n, DEFAULT_CAP)
}

pub fn thue_morse_capped(n: usize, cap: usize) -> Result<Vec<u8>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Thue-Morse order starts at 1".into()));
    }
    if n > 63 || (1usize << (n - 1)) > cap {
        return Err(Error::InvalidArgument(format!("T{n} is above the cap of {cap} bytes")));
    }
    let mut t = b"0".to_vec();
    for _ in 1..n {
        let flipped: Vec<u8> = t.iter().map(|&c| if c == b'0' { b'1' } else { b'0' }).collect();
        t.extend(flipped);
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Every copy mutates the original base.
    FromBase,
    /// Every copy mutates the previous copy.
    Chained,
}

impl Scheme {
    pub fn number(self) -> u8 {
        match self {
            Scheme::FromBase => 1,
            Scheme::Chained => 2,
        }
    }

    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Scheme::FromBase),
            2 => Ok(Scheme::Chained),
            _ => Err(Error::InvalidArgument(format!("mutation scheme must be 1 or 2, got {k}"))),
        }
    }
}

/// Number of characters changed in each mutated copy.
pub fn mutations_per_copy(base_len: usize, rate: f64) -> usize {
    (rate * base_len as f64).round() as usize
}

/// Concatenates `copies` versions of `base`. The first copy is the base
/// itself; each later one changes `round(rate * |base|)` distinct positions
/// to a different character drawn from the base's alphabet.
pub fn mutated(base: &[u8], copies: usize, rate: f64, scheme: Scheme, seed: u64) -> Result<Vec<u8>> {
    if base.is_empty() {
        return Err(Error::InvalidArgument("empty base text".into()));
    }
    if !(0.0..1.0).contains(&rate) {
        return Err(Error::InvalidArgument(format!("mutation rate {rate} outside [0, 1)")));
    }
    let mut alphabet = [false; 256];
    for &b in base {
        alphabet[b as usize] = true;
    }
    let symbols: Vec<u8> = (0..=255u8).filter(|&b| alphabet[b as usize]).collect();
    if rate > 0.0 && symbols.len() < 2 {
        return Err(Error::InvalidArgument("base has a single distinct character; nothing to mutate to".into()));
    }
    let k = mutations_per_copy(base.len(), rate);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(base.len() * copies);
    let mut prev = base.to_vec();
    for copy in 0..copies {
        if copy > 0 {
            let mut next = match scheme {
                Scheme::FromBase => base.to_vec(),
                Scheme::Chained => prev,
            };
            for pos in sample(&mut rng, base.len(), k) {
                let old = next[pos];
                // uniform among the other symbols
                let r = rng.gen_range(0..symbols.len() - 1);
                let mut c = symbols[r];
                if c >= old {
                    c = symbols[r + 1];
                }
                next[pos] = c;
            }
            prev = next;
        }
        out.extend_from_slice(&prev);
    }
    Ok(out)
}

/// English-like text of exactly `len` bytes: words drawn from a
/// Zipf-distributed vocabulary, with sentence breaks and line breaks.
pub fn words(len: usize, seed: u64) -> Vec<u8> {
    const LETTERS: &[u8] = b"etaoinshrdlcumwfgypbvkjxqz";
    const FREQ: [u32; 26] = [127, 91, 82, 75, 70, 67, 63, 61, 60, 43, 40, 28, 28, 24, 24, 22, 20, 20, 19, 15, 10, 8, 2, 2, 1, 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letter = WeightedIndex::new(FREQ).unwrap();
    let vocab: Vec<Vec<u8>> = (0..4096)
        .map(|_| {
            let l = 1 + rng.gen_range(0..4) + rng.gen_range(0..5);
            (0..l).map(|_| LETTERS[letter.sample(&mut rng)]).collect()
        })
        .collect();
    let zipf = WeightedIndex::new((1..=vocab.len()).map(|r| 1.0 / r as f64)).unwrap();
    let mut out = Vec::with_capacity(len + 16);
    let mut capital = true;
    while out.len() < len {
        let w = &vocab[zipf.sample(&mut rng)];
        let start = out.len();
        out.extend_from_slice(w);
        if capital {
            out[start] = out[start].to_ascii_uppercase();
            capital = false;
        }
        match rng.gen_range(0..100) {
            0..=5 => {
                out.extend_from_slice(b". ");
                capital = true;
            }
            6..=8 => out.extend_from_slice(b", "),
            9 => {
                out.extend_from_slice(b".\n");
                capital = true;
            }
            _ => out.push(b' '),
        }
    }
    out.truncate(len);
    out
}

/// A full generator description, as recorded next to generated files.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Fibonacci { order: usize },
    ThueMorse { order: usize },
    Mutated { copies: usize, rate: f64, scheme: Scheme, seed: u64 },
    Words { len: usize, seed: u64 },
}

impl Generator {
    /// Produces the text; mutation needs a base.
    pub fn generate(&self, base: Option<&[u8]>) -> Result<Vec<u8>> {
        match *self {
            Generator::Fibonacci { order } => fibonacci(order),
            Generator::ThueMorse { order } => thue_morse(order),
            Generator::Mutated { copies, rate, scheme, seed } => {
                let base = base.ok_or_else(|| Error::InvalidArgument("mutation needs a base text".into()))?;
                mutated(base, copies, rate, scheme, seed)
            }
            Generator::Words { len, seed } => Ok(words(len, seed)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Fibonacci { order } => write!(f, "family=fib order={order}"),
            Generator::ThueMorse { order } => write!(f, "family=thue-morse order={order}"),
            Generator::Mutated { copies, rate, scheme, seed } => write!(
                f,
                "family=mutate{} copies={copies} rate={rate} seed={seed} first_copy=unmutated",
                scheme.number()
            ),
            Generator::Words { len, seed } => write!(f, "family=words len={len} seed={seed}"),
        }
    }
}
