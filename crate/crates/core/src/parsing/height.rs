//! Parsing height: how many nested copies a symbol goes through before it
//! is written explicitly.

use super::Parsing;

#[derive(Clone, Debug, PartialEq)]
pub struct HeightStats {
    pub height: usize,
    pub mean: f64,
    pub max_phrase_len: usize,
}

/// `C[k]` for every 1-based position `k`: 1 at phrase ends, and one more
/// than the value at the copied position elsewhere.
pub fn position_heights(p: &Parsing) -> Vec<u32> {
    let mut c = vec![0u32; p.n + 1];
    let starts = p.source_starts();
    let mut a = 1;
    for (ph, &s) in p.phrases.iter().zip(&starts) {
        for k in 0..ph.len {
            c[a + k] = c[s + k] + 1;
        }
        c[a + ph.len] = 1;
        a += ph.len + 1;
    }
    c
}

pub fn compute_height(p: &Parsing) -> HeightStats {
    let c = position_heights(p);
    let height = c[1..].iter().copied().max().unwrap_or(0) as usize;
    let mean = c[1..].iter().map(|&v| v as f64).sum::<f64>() / p.n.max(1) as f64;
    let max_phrase_len = p.phrases.iter().map(|ph| ph.len + 1).max().unwrap_or(0);
    HeightStats { height, mean, max_phrase_len }
}
