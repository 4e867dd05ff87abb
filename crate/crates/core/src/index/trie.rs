//! PATRICIA tries over sorted strings, stored as DFUDS plus skips.
//!
//! Edge labels hold the first symbol of each edge. Skips count the symbols
//! after the first one and are kept for internal nodes only; leaves never
//! need them because a search stops as soon as it reaches one.

use crate::error::Result;
use crate::io::{Persist, Reader, Writer};
use crate::succinct::{Dac, DfudsTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patricia {
    tree: DfudsTree,
    skips: Dac,
}

struct Node {
    depth: usize,
    // any leaf below, to read edge labels from
    witness: usize,
    children: Vec<usize>,
}

impl Patricia {
    /// Builds the trie of `k` strings given in sorted order. `lcp[i]` is the
    /// longest common prefix of strings `i - 1` and `i` (`lcp[0]` unused) and
    /// `symbol(j, d)` is the `d`-th symbol (0-based) of string `j`, or 0 past
    /// its end.
    pub fn build<F: Fn(usize, usize) -> u8>(k: usize, lcp: &[usize], symbol: F) -> Result<Self> {
        let mut nodes = vec![Node { depth: 0, witness: 0, children: Vec::new() }];
        let mut stack = vec![0usize];
        for j in 0..k {
            if j > 0 {
                let l = lcp[j];
                let mut last = None;
                while nodes[*stack.last().unwrap()].depth > l {
                    last = stack.pop();
                }
                let top = *stack.last().unwrap();
                if nodes[top].depth < l {
                    let v = nodes.len();
                    let moved = last.expect("deeper node popped");
                    nodes.push(Node { depth: l, witness: nodes[moved].witness, children: vec![moved] });
                    *nodes[top].children.last_mut().unwrap() = v;
                    stack.push(v);
                }
            }
            let top = *stack.last().unwrap();
            let leaf = nodes.len();
            nodes.push(Node { depth: usize::MAX, witness: j, children: Vec::new() });
            nodes[top].children.push(leaf);
            stack.push(leaf);
        }
        // preorder layout
        let mut degrees = Vec::with_capacity(nodes.len());
        let mut labels = Vec::new();
        let mut skips = Vec::new();
        let mut todo = vec![(0usize, 0usize)];
        while let Some((v, parent_depth)) = todo.pop() {
            let node = &nodes[v];
            degrees.push(node.children.len());
            if v != 0 && !node.children.is_empty() {
                skips.push((node.depth - parent_depth - 1) as u64);
            }
            for &c in &node.children {
                labels.push(symbol(nodes[c].witness, node.depth) as u64);
            }
            for &c in node.children.iter().rev() {
                todo.push((c, node.depth));
            }
        }
        Ok(Patricia { tree: DfudsTree::from_preorder(&degrees, &labels)?, skips: Dac::with_best_width(&skips) })
    }

    pub fn tree(&self) -> &DfudsTree {
        &self.tree
    }

    pub fn skips(&self) -> &Dac {
        &self.skips
    }

    pub fn leaf_count(&self) -> usize {
        self.tree.leaf_count()
    }

    fn skip(&self, x: usize) -> usize {
        let t = &self.tree;
        self.skips.get(t.preorder(x) - t.leaf_rank(x) - 1) as usize
    }

    /// Blind descent with `pat`: returns the 1-based leaf range of the node
    /// where the pattern is exhausted or a leaf is reached. Only the symbols
    /// at branching points are compared, so candidates must be verified.
    pub fn search(&self, pat: &[u8]) -> Option<(usize, usize)> {
        let t = &self.tree;
        let mut x = t.root();
        let mut d = 0;
        if t.is_leaf(x) {
            return None;
        }
        while d < pat.len() {
            let y = t.labeled_child(x, pat[d] as u64)?;
            if t.is_leaf(y) {
                return Some(t.leaf_range(y));
            }
            d += 1 + self.skip(y);
            x = y;
        }
        Some(t.leaf_range(x))
    }

    pub fn size_in_bytes(&self) -> usize {
        self.tree.size_in_bytes() + self.skips.size_in_bytes()
    }

    pub(crate) fn write(&self, tree: &mut Writer, skips: &mut Writer) {
        self.tree.write_body(tree);
        self.skips.write_body(skips);
    }

    pub(crate) fn read(tree: &mut Reader<'_>, skips: &mut Reader<'_>) -> Result<Self> {
        let tree = DfudsTree::read_body(tree)?;
        let skips = Dac::read_body(skips)?;
        let internal = tree.node_count() - tree.leaf_count();
        if internal.saturating_sub(1) != skips.len() {
            return Err(crate::Error::Malformed("skip count does not match the trie".into()));
        }
        Ok(Patricia { tree, skips })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(strings: &[&[u8]]) -> Patricia {
        let mut sorted: Vec<&[u8]> = strings.to_vec();
        sorted.sort();
        let lcp: Vec<usize> = (0..sorted.len())
            .map(|j| if j == 0 { 0 } else { sorted[j - 1].iter().zip(sorted[j]).take_while(|(a, b)| a == b).count() })
            .collect();
        Patricia::build(sorted.len(), &lcp, |j, d| sorted[j].get(d).copied().unwrap_or(0)).unwrap()
    }

    #[test]
    fn ranges_on_small_set() {
        let t = build(&[b"abc\0", b"abd\0", b"b\0", b"abcd\0"]);
        // sorted: abc, abcd, abd, b
        assert_eq!(t.leaf_count(), 4);
        assert_eq!(t.search(b"a"), Some((1, 3)));
        assert_eq!(t.search(b"ab"), Some((1, 3)));
        assert_eq!(t.search(b"abc"), Some((1, 2)));
        assert_eq!(t.search(b"abd"), Some((3, 3)));
        assert_eq!(t.search(b"b"), Some((4, 4)));
        assert_eq!(t.search(b"c"), None);
        // blind: the skipped symbol is not compared
        assert_eq!(t.search(b"axc"), Some((1, 2)));
    }

    #[test]
    fn single_and_empty() {
        let t = build(&[b"xyz\0"]);
        assert_eq!(t.search(b"x"), Some((1, 1)));
        assert_eq!(t.search(b"q"), None);
        let e = Patricia::build(0, &[], |_, _| 0).unwrap();
        assert_eq!(e.search(b"a"), None);
    }
}
