//! The LZ77 / LZ-End self-index.
//!
//! Occurrences come in three kinds. Primary ones span a phrase boundary and
//! are found by splitting the pattern, looking the left part up in a trie of
//! reversed phrases and the right part in a trie of suffixes starting at
//! phrase beginnings, and joining both ranges on a wavelet-tree grid.
//! Special primaries lie inside one phrase and end with it. Every other
//! occurrence is a copy of an earlier one and is reached by walking the
//! sources that cover it.

mod file;
mod sources;
mod trie;

pub use sources::{compute_depths, Source};
pub use trie::Patricia;

use crate::error::{out_of_range, Error, Result};
use crate::parsing::{extract_with, parse, ParseKind, Parsing, PhraseLayout};
use crate::succinct::bits::bit_width;
use crate::succinct::{CyclePermutation, IntVector, SparseBitmap, WaveletTree};
use crate::text::sais::{lcp_array, suffix_array};
use crate::text::{Alphabet, Text};
use std::collections::HashSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OccKind {
    Primary,
    Special,
    Secondary,
}

impl fmt::Display for OccKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OccKind::Primary => "primary",
            OccKind::Special => "special",
            OccKind::Secondary => "secondary",
        })
    }
}

/// A pattern occurrence starting at 1-based text position `pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub pos: usize,
    pub kind: OccKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfIndex {
    kind: ParseKind,
    alphabet: Alphabet,
    chars: IntVector,
    ends: SparseBitmap,
    sst: Patricia,
    rev: Patricia,
    /// Phrase id of every reverse-trie leaf, with `rev_ids[0] = 0`.
    rev_ids: IntVector,
    /// For each suffix-trie leaf, the reverse-trie rank of the phrase before it.
    grid: WaveletTree,
    src_bits: SparseBitmap,
    src_perm: CyclePermutation,
    depths: WaveletTree,
    max_depth: u64,
}

/// Parses `text` and builds the index over the parsing.
pub fn build_index(text: &Text, kind: ParseKind) -> Result<SelfIndex> {
    if kind == ParseKind::Lz78 {
        return Err(Error::InvalidArgument("the index supports lz77 and lzend parsings".into()));
    }
    SelfIndex::from_parsing(text, &parse(text, kind))
}

impl PhraseLayout for SelfIndex {
    fn phrase_ends(&self) -> &SparseBitmap {
        &self.ends
    }

    fn trail(&self, p: usize) -> u8 {
        self.chars.get(p - 1) as u8
    }

    fn copy_start(&self, p: usize, _first: usize, _last: usize) -> usize {
        let sid = self.src_perm.apply(p);
        self.src_bits.select1(sid).unwrap() - sid
    }
}

impl SelfIndex {
    pub fn from_parsing(text: &Text, parsing: &Parsing) -> Result<Self> {
        if parsing.kind == ParseKind::Lz78 {
            return Err(Error::InvalidArgument("the index supports lz77 and lzend parsings".into()));
        }
        if parsing.n != text.len() {
            return Err(Error::InvalidArgument("parsing does not belong to this text".into()));
        }
        let t = text.symbols();
        let n = t.len();
        let np = parsing.phrase_count();
        let ends = parsing.ends();
        let starts: Vec<usize> = (0..np).map(|k| if k == 0 { 1 } else { ends[k - 1] + 1 }).collect();

        // suffixes starting at phrase beginnings, in suffix-array order
        let sa = suffix_array(t);
        let lcp = lcp_array(t, &sa);
        let mut is_start = vec![u32::MAX; n + 1];
        for (k, &s) in starts.iter().enumerate() {
            is_start[s] = k as u32;
        }
        let mut sst_phrases = Vec::with_capacity(np);
        let mut sst_lcp = Vec::with_capacity(np);
        let mut run = u32::MAX;
        for (r, &p) in sa.iter().enumerate() {
            run = run.min(lcp[r]);
            let k = is_start[p as usize + 1];
            if k != u32::MAX {
                sst_phrases.push(k as usize);
                sst_lcp.push(if sst_phrases.len() == 1 { 0 } else { run as usize });
                run = u32::MAX;
            }
        }
        let sst = Patricia::build(np, &sst_lcp, |j, d| {
            let p = starts[sst_phrases[j]] - 1 + d;
            t.get(p).copied().unwrap_or(0)
        })?;

        // reversed phrases 1..n'-1; the last one holds the sentinel and
        // never precedes another phrase
        let rev_sym = |k: usize, d: usize| -> u8 {
            let len = ends[k] + 1 - starts[k];
            if d < len {
                t[ends[k] - 1 - d]
            } else {
                0
            }
        };
        let mut rev_order: Vec<usize> = (0..np - 1).collect();
        rev_order.sort_by(|&a, &b| {
            let (la, lb) = (ends[a] + 1 - starts[a], ends[b] + 1 - starts[b]);
            let ra = t[starts[a] - 1..ends[a]].iter().rev();
            let rb = t[starts[b] - 1..ends[b]].iter().rev();
            ra.cmp(rb).then(la.cmp(&lb)).then(a.cmp(&b))
        });
        let rev_lcp: Vec<usize> = (0..rev_order.len())
            .map(|j| {
                if j == 0 {
                    return 0;
                }
                let (a, b) = (rev_order[j - 1], rev_order[j]);
                let mut d = 0;
                while rev_sym(a, d) == rev_sym(b, d) && rev_sym(a, d) != 0 {
                    d += 1;
                }
                d
            })
            .collect();
        let rev = Patricia::build(rev_order.len(), &rev_lcp, |j, d| rev_sym(rev_order[j], d))?;

        let mut rev_rank = vec![0u64; np];
        let mut rev_ids = vec![0u64; np];
        for (j, &k) in rev_order.iter().enumerate() {
            rev_rank[k] = j as u64 + 1;
            rev_ids[j + 1] = k as u64 + 1;
        }
        let grid_vals: Vec<u64> = sst_phrases.iter().map(|&k| if k == 0 { 0 } else { rev_rank[k - 1] }).collect();

        let srcs: Vec<Source> = parsing
            .source_starts()
            .iter()
            .zip(&parsing.phrases)
            .map(|(&start, ph)| Source { start, len: ph.len })
            .collect();
        let layout = sources::layout_sources(n, &srcs)?;
        let chars: Vec<u64> = parsing.phrases.iter().map(|p| p.trail as u64).collect();
        let max_char = chars.iter().copied().max().unwrap_or(0);

        Ok(SelfIndex {
            kind: parsing.kind,
            alphabet: text.alphabet().clone(),
            chars: IntVector::with_width(chars, bit_width(max_char)),
            ends: SparseBitmap::from_positions(n, &ends),
            sst,
            rev,
            rev_ids: IntVector::from_slice(&rev_ids),
            grid: WaveletTree::new(&grid_vals, np as u64),
            src_bits: layout.bitmap,
            src_perm: layout.perm,
            depths: layout.depths,
            max_depth: layout.max_depth,
        })
    }

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

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Largest source depth.
    pub fn max_depth(&self) -> u64 {
        self.max_depth
    }

    pub fn suffix_trie(&self) -> &Patricia {
        &self.sst
    }

    pub fn reverse_trie(&self) -> &Patricia {
        &self.rev
    }

    pub fn grid(&self) -> &WaveletTree {
        &self.grid
    }

    pub fn source_bitmap(&self) -> &SparseBitmap {
        &self.src_bits
    }

    pub fn source_permutation(&self) -> &CyclePermutation {
        &self.src_perm
    }

    /// Phrase id stored at 1-based reverse-trie leaf `r`; 0 for `r = 0`.
    pub fn rev_id(&self, r: usize) -> usize {
        self.rev_ids.get(r) as usize
    }

    /// Depth of the source with 1-based id `sid`.
    pub fn source_depth(&self, sid: usize) -> u64 {
        self.depths.get(sid - 1)
    }

    /// Phrase containing text position `pos`.
    pub fn phrase_of(&self, pos: usize) -> Result<usize> {
        if pos == 0 || pos > self.len() {
            return Err(out_of_range(pos, 1, self.len()));
        }
        Ok(1 + self.ends.rank1(pos - 1))
    }

    pub fn first_pos(&self, id: usize) -> Result<usize> {
        self.check_phrase(id)?;
        Ok(self.first_pos_unchecked(id))
    }

    pub fn last_pos(&self, id: usize) -> Result<usize> {
        self.check_phrase(id)?;
        Ok(self.last_pos_unchecked(id))
    }

    /// Phrase length, trailing symbol included.
    pub fn phrase_len(&self, id: usize) -> Result<usize> {
        self.check_phrase(id)?;
        Ok(self.last_pos_unchecked(id) + 1 - self.first_pos_unchecked(id))
    }

    fn check_phrase(&self, id: usize) -> Result<()> {
        if id == 0 || id > self.phrase_count() {
            return Err(out_of_range(id, 1, self.phrase_count()));
        }
        Ok(())
    }

    fn first_pos_unchecked(&self, id: usize) -> usize {
        if id == 1 {
            1
        } else {
            self.ends.select1(id - 1).unwrap() + 1
        }
    }

    /// First and last position of phrase `id`.
    fn bounds_unchecked(&self, id: usize) -> (usize, usize) {
        let (prev, last) = self.ends.select1_pair(id - 1);
        (prev + 1, last.unwrap())
    }

    fn last_pos_unchecked(&self, id: usize) -> usize {
        self.ends.select1(id).unwrap()
    }

    /// Symbols `T[start, start + len - 1]`, sentinel included when reached.
    pub fn extract_symbols(&self, start: usize, len: usize) -> Result<Vec<u8>> {
        Ok(self.extract_counted(start, len)?.0)
    }

    /// As `extract_symbols`, also returning the number of extraction steps.
    pub fn extract_counted(&self, start: usize, len: usize) -> Result<(Vec<u8>, usize)> {
        if len > 0 && (start == 0 || start + len - 1 > self.len()) {
            return Err(Error::OutOfRange { pos: start, valid: format!("ranges within 1..={}", self.len()) });
        }
        let mut out = Vec::with_capacity(len);
        let steps = extract_with(self, start, len, &mut out);
        Ok((out, steps))
    }

    /// Original bytes of `T[start, start + len - 1]`; the range must stay
    /// clear of the sentinel.
    pub fn extract(&self, start: usize, len: usize) -> Result<Vec<u8>> {
        if len > 0 && (start == 0 || start + len - 1 >= self.len()) {
            return Err(Error::OutOfRange { pos: start, valid: format!("ranges within 1..={}", self.len() - 1) });
        }
        Ok(self.alphabet.unmap(&self.extract_symbols(start, len)?))
    }

    fn matches_at(&self, pos: usize, pat: &[u8]) -> bool {
        if pos == 0 || pos + pat.len() - 1 > self.len() {
            return false;
        }
        let mut out = Vec::with_capacity(pat.len());
        extract_with(self, pos, pat.len(), &mut out);
        out == pat
    }

    /// Leaf range of the suffix trie reached by `piece`, unverified.
    pub fn search_sst(&self, piece: &[u8]) -> Option<(usize, usize)> {
        self.sst.search(piece)
    }

    /// Leaf range of the reverse trie reached by `piece_reversed`, unverified.
    pub fn search_rev(&self, piece_reversed: &[u8]) -> Option<(usize, usize)> {
        self.rev.search(piece_reversed)
    }

    /// Occurrences spanning a phrase boundary, over pattern symbols. With
    /// `first_only`, stops after one verified split.
    fn primaries(&self, pat: &[u8], first_only: bool, out: &mut Vec<usize>) {
        let m = pat.len();
        let mut left_rev: Vec<u8> = Vec::with_capacity(m);
        for i in 1..m {
            left_rev.clear();
            left_rev.extend(pat[..i].iter().rev());
            let Some((r1, r2)) = self.rev.search(&left_rev) else { continue };
            let Some((c1, c2)) = self.sst.search(&pat[i..]) else { continue };
            let mut points = Vec::new();
            self.grid.for_each_value(c1 - 1, c2, r1 as u64, r2 as u64, &mut |row, count| {
                points.extend(std::iter::repeat(row as usize).take(count));
            });
            let Some(&row0) = points.first() else { continue };
            if !self.primary_candidate_ok(row0, i, pat) {
                continue;
            }
            debug_assert!(points.iter().all(|&r| self.primary_candidate_ok(r, i, pat)));
            for &row in &points {
                out.push(self.last_pos_unchecked(self.rev_id(row)) + 1 - i);
            }
            if first_only {
                return;
            }
        }
    }

    fn primary_candidate_ok(&self, row: usize, i: usize, pat: &[u8]) -> bool {
        let k = self.rev_id(row);
        let last = self.last_pos_unchecked(k);
        last + 1 - self.first_pos_unchecked(k) >= i && self.matches_at(last + 1 - i, pat)
    }

    /// Occurrences inside one phrase that end with it.
    fn specials(&self, pat: &[u8], first_only: bool, out: &mut Vec<usize>) {
        let m = pat.len();
        let rev: Vec<u8> = pat.iter().rev().copied().collect();
        let Some((r1, r2)) = self.rev.search(&rev) else { return };
        let fits = |r: usize| {
            let k = self.rev_id(r);
            let last = self.last_pos_unchecked(k);
            (last + 1 - self.first_pos_unchecked(k) >= m).then(|| last + 1 - m)
        };
        match fits(r1) {
            Some(pos) if self.matches_at(pos, pat) => {}
            _ => return,
        }
        for r in r1..=r2 {
            let pos = fits(r).expect("verified range shares the pattern");
            debug_assert!(self.matches_at(pos, pat));
            out.push(pos);
            if first_only {
                return;
            }
        }
    }

    /// Occurrences copied, directly or transitively, from the occurrence of
    /// length `m` at `seed`; the seed itself is not included.
    pub fn secondary_occurrences(&self, seed: usize, m: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.expand(vec![seed], m, &mut out, usize::MAX);
        out
    }

    /// Every occurrence inside a phrase copy has exactly one parent, the one
    /// at the same offset of the phrase's source, so no occurrence is
    /// reached twice.
    fn expand(&self, mut todo: Vec<usize>, m: usize, out: &mut Vec<usize>, cap: usize) {
        while let Some(start) = todo.pop() {
            let Some(pos) = self.src_bits.select0(start + 1) else { continue };
            let mut sid = pos - start - 1;
            let mut d = self.max_depth;
            while sid > 0 {
                let phrase = self.src_perm.inverse(sid);
                let src_start = self.src_bits.select1(sid).unwrap() - sid;
                let (first, last) = self.bounds_unchecked(phrase);
                if src_start + (last - first) >= start + m {
                    let occ = first + start - src_start;
                    out.push(occ);
                    if out.len() >= cap {
                        return;
                    }
                    todo.push(occ);
                } else {
                    let dep = self.depths.get(sid - 1);
                    if dep == 0 {
                        break;
                    }
                    d = dep - 1;
                }
                match self.depths.prev_less_unchecked(sid, d) {
                    Some(p) => sid = p,
                    None => break,
                }
            }
        }
    }

    /// All occurrences of `pattern` (original bytes), in no particular order.
    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<Occurrence>> {
        self.locate_capped(pattern, None)
    }

    /// As `locate`, stopping once `max` occurrences have been collected.
    pub fn locate_capped(&self, pattern: &[u8], max: Option<usize>) -> Result<Vec<Occurrence>> {
        let Some(pat) = self.map(pattern)? else { return Ok(Vec::new()) };
        Ok(self.locate_symbols(&pat, max))
    }

    /// Locate over mapped pattern symbols.
    pub fn locate_symbols(&self, pat: &[u8], max: Option<usize>) -> Vec<Occurrence> {
        let cap = max.unwrap_or(usize::MAX);
        if pat.is_empty() || cap == 0 || pat.len() >= self.len() {
            return Vec::new();
        }
        let (mut prim, mut spec) = (Vec::new(), Vec::new());
        self.primaries(pat, false, &mut prim);
        self.specials(pat, false, &mut spec);
        let mut seen: HashSet<usize> = HashSet::new();
        let mut occs = Vec::new();
        for (list, kind) in [(&prim, OccKind::Primary), (&spec, OccKind::Special)] {
            for &pos in list.iter() {
                if occs.len() < cap && seen.insert(pos) {
                    occs.push(Occurrence { pos, kind });
                }
            }
        }
        let seeds: Vec<usize> = occs.iter().map(|o| o.pos).collect();
        let mut sec = Vec::new();
        if occs.len() < cap {
            self.expand(seeds, pat.len(), &mut sec, cap - occs.len());
        }
        occs.extend(sec.into_iter().map(|pos| Occurrence { pos, kind: OccKind::Secondary }));
        occs
    }

    /// Sorted occurrence positions.
    pub fn locate_positions(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        let mut v: Vec<usize> = self.locate(pattern)?.into_iter().map(|o| o.pos).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Whether `pattern` occurs; stops at the first verified occurrence.
    pub fn exists(&self, pattern: &[u8]) -> Result<bool> {
        let Some(pat) = self.map(pattern)? else { return Ok(false) };
        if pat.len() >= self.len() {
            return Ok(false);
        }
        let mut hits = Vec::new();
        self.specials(&pat, true, &mut hits);
        if hits.is_empty() {
            self.primaries(&pat, true, &mut hits);
        }
        Ok(!hits.is_empty())
    }

    fn map(&self, pattern: &[u8]) -> Result<Option<Vec<u8>>> {
        if pattern.is_empty() {
            return Err(Error::InvalidArgument("empty pattern".into()));
        }
        self.alphabet.map_pattern(pattern)
    }

    /// In-memory size of every component, in bytes.
    pub fn component_sizes(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("chars", self.chars.size_in_bytes()),
            ("phrase_ends", self.ends.size_in_bytes()),
            ("suffix_trie", self.sst.tree().size_in_bytes()),
            ("suffix_skips", self.sst.skips().size_in_bytes()),
            ("reverse_trie", self.rev.tree().size_in_bytes()),
            ("reverse_skips", self.rev.skips().size_in_bytes()),
            ("rev_ids", self.rev_ids.size_in_bytes()),
            ("grid", self.grid.size_in_bytes()),
            ("source_bitmap", self.src_bits.size_in_bytes()),
            ("source_perm", self.src_perm.size_in_bytes()),
            ("depths", self.depths.size_in_bytes()),
        ]
    }

    pub fn size_in_bytes(&self) -> usize {
        self.component_sizes().iter().map(|c| c.1).sum()
    }
}
