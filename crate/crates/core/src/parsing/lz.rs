//! LZ77 and LZ-End construction by backward search over the reversed text.
//!
//! Extending the current phrase by `T[i + j]` is one backward-search step on
//! the suffix array of `T^rev`, whose suffixes are the reversed prefixes of
//! `T`. The largest suffix start in the range identifies the occurrence that
//! ends leftmost in `T`; if it does not end before `i` the phrase is over.
//! LZ-End additionally keeps the ranks of the reversed prefixes that end at
//! a phrase boundary and only accepts lengths for which one of them falls
//! inside the range.

use super::{ParseKind, Parsing, Phrase};
use crate::text::{SuffixArrayBundle, Text};
use std::collections::BTreeMap;

pub fn parse_lz77(text: &Text) -> Parsing {
    parse_lz77_with(text, &SuffixArrayBundle::for_reversed(text))
}

pub fn parse_lzend(text: &Text) -> Parsing {
    parse_lzend_with(text, &SuffixArrayBundle::for_reversed(text))
}

/// LZ77 using a prebuilt bundle over the reversed text.
pub fn parse_lz77_with(text: &Text, rev: &SuffixArrayBundle) -> Parsing {
    run(text, rev, false)
}

/// LZ-End using a prebuilt bundle over the reversed text.
pub fn parse_lzend_with(text: &Text, rev: &SuffixArrayBundle) -> Parsing {
    run(text, rev, true)
}

fn run(text: &Text, rev: &SuffixArrayBundle, lzend: bool) -> Parsing {
    let n = text.len();
    assert_eq!(rev.len(), n);
    // rank in the reversed suffix array -> id of the phrase ending there
    let mut ends_at: BTreeMap<usize, usize> = BTreeMap::new();
    let mut phrases = Vec::new();
    let mut processed = 0;
    let mut i = 1;
    while i <= n {
        let (mut sp, mut ep) = (1, n);
        let mut j = 0;
        let mut len = 0;
        let mut source = 0;
        // never copy the sentinel
        while i + j < n {
            match rev.bws_step(sp, ep, text.at(i + j)) {
                Some(r) => (sp, ep) = r,
                None => break,
            }
            let m = rev.sa(rev.rmq_max(sp, ep));
            if m <= n - i {
                break;
            }
            j += 1;
            if lzend {
                if let Some((&f, &q)) = ends_at.range(sp..).next() {
                    if f <= ep {
                        len = j;
                        source = q;
                    }
                }
            } else {
                len = j;
                source = (n - m) + 1 - j;
            }
        }
        processed += j + 1;
        phrases.push(Phrase { source, len, trail: text.at(i + len) });
        let end = i + len;
        if lzend && end < n {
            ends_at.insert(rev.isa(n - end), phrases.len());
        }
        i = end + 1;
    }
    let kind = if lzend { ParseKind::LzEnd } else { ParseKind::Lz77 };
    Parsing { kind, n, phrases, symbols_processed: processed }
}
