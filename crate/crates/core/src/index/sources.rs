//! Phrase sources: their bitmap, the phrase-to-source permutation and the
//! depth of every source.

use crate::error::Result;
use crate::succinct::perm::DEFAULT_STEP;
use crate::succinct::{CyclePermutation, SparseBitmap, WaveletTree};

/// A copy source: 1-based start and length. Empty sources have length 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Source {
    pub start: usize,
    pub len: usize,
}

/// Depth of every source, in input order. A non-empty source is covered by
/// another one that starts strictly earlier and ends no earlier; its depth is
/// one more than the deepest source covering it, or 0 when none does.
pub fn compute_depths(sources: &[Source]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..sources.len()).filter(|&i| sources[i].len > 0).collect();
    order.sort_by_key(|&i| sources[i]);
    let mut depth = vec![0u32; sources.len()];
    // reach[d]: furthest end among processed sources of depth >= d
    let mut reach: Vec<usize> = Vec::new();
    let mut g = 0;
    while g < order.len() {
        let start = sources[order[g]].start;
        let mut h = g;
        while h < order.len() && sources[order[h]].start == start {
            let s = sources[order[h]];
            let end = s.start + s.len - 1;
            // reach is non-increasing, so covering depths form a prefix
            let covering = reach.partition_point(|&e| e >= end);
            depth[order[h]] = covering as u32;
            h += 1;
        }
        for &i in &order[g..h] {
            let s = sources[i];
            let end = s.start + s.len - 1;
            let d = depth[i] as usize;
            if reach.len() <= d {
                reach.resize(d + 1, 0);
            }
            for r in reach[..=d].iter_mut().rev() {
                if *r >= end {
                    break;
                }
                *r = end;
            }
        }
        g = h;
    }
    depth
}

/// Source structures of a parsing with text length `n`.
pub struct SourceLayout {
    pub bitmap: SparseBitmap,
    pub perm: CyclePermutation,
    pub depths: WaveletTree,
    pub max_depth: u64,
}

/// Orders sources as empty ones first, then by start and increasing length;
/// source `sid` starting at text position `s` is the 1 at `sid + s`.
pub fn layout_sources(n: usize, sources: &[Source]) -> Result<SourceLayout> {
    let k = sources.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (sources[i].len > 0, sources[i], i));
    let mut pi = vec![0usize; k];
    let mut ones = Vec::with_capacity(k);
    for (sid0, &i) in order.iter().enumerate() {
        pi[i] = sid0 + 1;
        let s = sources[i];
        let start = if s.len == 0 { 0 } else { s.start };
        ones.push(sid0 + 1 + start);
    }
    let depth_by_phrase = compute_depths(sources);
    let by_sid: Vec<u64> = order.iter().map(|&i| depth_by_phrase[i] as u64).collect();
    let max_depth = by_sid.iter().copied().max().unwrap_or(0);
    Ok(SourceLayout {
        bitmap: SparseBitmap::from_positions(k + n + 1, &ones),
        perm: CyclePermutation::new(&pi, DEFAULT_STEP)?,
        depths: WaveletTree::new(&by_sid, max_depth + 1),
        max_depth,
    })
}
