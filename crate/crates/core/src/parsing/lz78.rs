//! LZ78 parsing with an explicit dictionary trie.

use super::{ParseKind, Parsing, Phrase};
use crate::text::Text;
use std::collections::HashMap;

pub fn parse_lz78(text: &Text) -> Parsing {
    let t = text.symbols();
    let n = t.len();
    // (trie node, symbol) -> child node; node k > 0 is phrase k
    let mut child: HashMap<(usize, u8), usize> = HashMap::new();
    let mut lens = vec![0usize];
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < n {
        let mut node = 0;
        while i < n - 1 {
            match child.get(&(node, t[i])) {
                Some(&c) => {
                    node = c;
                    i += 1;
                }
                None => break,
            }
        }
        phrases.push(Phrase { source: node, len: lens[node], trail: t[i] });
        lens.push(lens[node] + 1);
        child.insert((node, t[i]), phrases.len());
        i += 1;
    }
    Parsing { kind: ParseKind::Lz78, n, phrases, symbols_processed: n }
}
