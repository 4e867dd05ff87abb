//! Ordinal trees in depth-first unary degree sequence (DFUDS) form.
//!
//! The sequence starts with an extra `1`; then every node, in preorder,
//! writes one `1` per child followed by a `0`. A node is identified by the
//! 0-based position of its first bit, so the root is at position 1 and a
//! tree of `k` nodes uses `2k` bits. Leaves are the positions whose bit and
//! previous bit are both `0` (plus the root when it has no children).
//! Child labels are grouped by parent, parents in preorder, so the labels
//! of one node sit next to each other.

use super::bits::{read_bits, select_in_word};
use super::bitvec::BitVector;
use super::intvec::IntVector;
use crate::error::{Error, Result};
use crate::io::{Persist, Reader, Writer};

const SAMPLE_WORDS: usize = 20;

#[derive(Clone, Debug)]
pub struct DfudsTree {
    bits: BitVector,
    labels: IntVector,
    // leaf patterns before word `k * SAMPLE_WORDS`
    leaf_samples: Vec<u64>,
    // min-excess segment tree over words, leaves at `tree_base..`
    tree_base: usize,
    min_tree: Vec<i64>,
}

impl PartialEq for DfudsTree {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.labels == other.labels
    }
}

impl Eq for DfudsTree {}

impl DfudsTree {
    /// Builds from the degree of every node in preorder and the child labels
    /// of every node, nodes taken in preorder.
    pub fn from_preorder(degrees: &[usize], labels: &[u64]) -> Result<Self> {
        let total: usize = degrees.iter().sum();
        if degrees.is_empty() || total + 1 != degrees.len() || labels.len() != total {
            return Err(Error::InvalidArgument("degree sequence does not describe a tree".into()));
        }
        let mut bits = Vec::with_capacity(2 * degrees.len());
        bits.push(true);
        for &d in degrees {
            bits.extend(std::iter::repeat(true).take(d));
            bits.push(false);
        }
        let bv = BitVector::from_bits(bits);
        let t = Self::with_parts(bv, IntVector::from_slice(labels))?;
        Ok(t)
    }

    /// Builds from explicit child lists; node 0 is the root and `children[v]`
    /// lists `(label, child)` pairs in order.
    pub fn from_children(children: &[Vec<(u64, usize)>]) -> Result<Self> {
        let mut degrees = Vec::with_capacity(children.len());
        let mut labels = Vec::with_capacity(children.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            degrees.push(children[v].len());
            labels.extend(children[v].iter().map(|e| e.0));
            for &(_, c) in children[v].iter().rev() {
                stack.push(c);
            }
        }
        Self::from_preorder(&degrees, &labels)
    }

    fn with_parts(bits: BitVector, labels: IntVector) -> Result<Self> {
        let n = bits.len();
        if n < 2 || n % 2 != 0 || !bits.get(0) || bits.count_ones() * 2 != n {
            return Err(Error::Malformed("not a DFUDS sequence".into()));
        }
        if labels.len() != n / 2 - 1 {
            return Err(Error::Malformed("label count mismatch".into()));
        }
        let mut t = Self { bits, labels, leaf_samples: Vec::new(), tree_base: 1, min_tree: Vec::new() };
        t.build_support()?;
        Ok(t)
    }

    fn build_support(&mut self) -> Result<()> {
        let words = self.bits.words();
        let nw = words.len();
        self.leaf_samples = Vec::with_capacity(nw / SAMPLE_WORDS + 2);
        let mut acc = 0u64;
        for k in 0..nw {
            if k % SAMPLE_WORDS == 0 {
                self.leaf_samples.push(acc);
            }
            acc += self.leaf_mask(k).count_ones() as u64;
        }
        self.leaf_samples.push(acc);

        let base = nw.next_power_of_two().max(1);
        let mut tree = vec![i64::MAX; 2 * base];
        let mut exc = 0i64;
        let len = self.bits.len();
        for k in 0..nw {
            let mut m = i64::MAX;
            let valid = (len - k * 64).min(64);
            let w = words[k];
            for b in 0..valid {
                exc += if w >> b & 1 == 1 { 1 } else { -1 };
                m = m.min(exc);
                if exc < 0 {
                    return Err(Error::Malformed("unbalanced DFUDS sequence".into()));
                }
            }
            tree[base + k] = m;
        }
        if exc != 0 {
            return Err(Error::Malformed("unbalanced DFUDS sequence".into()));
        }
        for v in (1..base).rev() {
            tree[v] = tree[2 * v].min(tree[2 * v + 1]);
        }
        self.tree_base = base;
        self.min_tree = tree;
        Ok(())
    }

    fn leaf_mask(&self, k: usize) -> u64 {
        let words = self.bits.words();
        let w = words[k];
        let shifted = if k == 0 { (w & !1) << 1 } else { (w << 1) | (words[k - 1] >> 63) };
        let mut m = !w & !shifted;
        let len = self.bits.len();
        if k == 0 {
            m &= !1;
        }
        let valid = (len - k * 64).min(64);
        if valid < 64 {
            m &= (1u64 << valid) - 1;
        }
        m
    }

    /// Leaves at positions `< x`.
    fn rank_leaf(&self, x: usize) -> usize {
        let w = x / 64;
        let s = w / SAMPLE_WORDS;
        let mut r = self.leaf_samples[s] as usize;
        for k in s * SAMPLE_WORDS..w {
            r += self.leaf_mask(k).count_ones() as usize;
        }
        if x % 64 != 0 {
            r += (self.leaf_mask(w) & ((1u64 << (x % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    /// Position of the `j`-th leaf (1-based) in DFUDS order.
    fn select_leaf(&self, j: usize) -> usize {
        let j64 = j as u64;
        let s = self.leaf_samples.partition_point(|&c| c < j64) - 1;
        let mut cnt = self.leaf_samples[s] as usize;
        for k in s * SAMPLE_WORDS.. {
            let m = self.leaf_mask(k);
            let pc = m.count_ones() as usize;
            if cnt + pc >= j {
                return k * 64 + select_in_word(m, (j - cnt - 1) as u32) as usize;
            }
            cnt += pc;
        }
        unreachable!()
    }

    #[inline]
    fn excess_through(&self, i: usize) -> i64 {
        2 * self.bits.rank1(i + 1) as i64 - (i as i64 + 1)
    }

    /// First `j > i` whose excess drops to `excess_through(i) - 1`.
    fn fwd_below(&self, i: usize) -> usize {
        let target = self.excess_through(i) - 1;
        let words = self.bits.words();
        let len = self.bits.len();
        let mut exc = target + 1;
        let mut j = i + 1;
        while j < len && j % 64 != 0 {
            exc += if words[j / 64] >> (j % 64) & 1 == 1 { 1 } else { -1 };
            if exc == target {
                return j;
            }
            j += 1;
        }
        let w = self.first_word_reaching(j / 64, target).expect("unmatched parenthesis");
        let mut exc = 2 * self.bits.rank1(w * 64) as i64 - (w * 64) as i64;
        let word = read_bits(words, w * 64, 64);
        for b in 0..64 {
            exc += if word >> b & 1 == 1 { 1 } else { -1 };
            if exc == target {
                return w * 64 + b;
            }
        }
        unreachable!()
    }

    fn first_word_reaching(&self, from: usize, target: i64) -> Option<usize> {
        let base = self.tree_base;
        if from >= base {
            return None;
        }
        let mut v = base + from;
        loop {
            if self.min_tree[v] <= target {
                break;
            }
            while v & 1 == 1 {
                v >>= 1;
            }
            if v == 0 {
                return None;
            }
            v += 1;
        }
        while v < base {
            v *= 2;
            if self.min_tree[v] > target {
                v += 1;
            }
        }
        Some(v - base)
    }

    pub fn root(&self) -> usize {
        1
    }

    pub fn node_count(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn leaf_count(&self) -> usize {
        *self.leaf_samples.last().unwrap() as usize
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    #[inline]
    pub fn is_leaf(&self, x: usize) -> bool {
        !self.bits.get(x)
    }

    /// Position of the `0` that closes the description of `x`.
    #[inline]
    fn desc_end(&self, x: usize) -> usize {
        self.bits.select0(self.bits.rank0(x) + 1).unwrap() - 1
    }

    pub fn degree(&self, x: usize) -> usize {
        self.desc_end(x) - x
    }

    /// The `i`-th child of `x`, 1-based.
    pub fn child(&self, x: usize, i: usize) -> Option<usize> {
        let d = self.degree(x);
        if i == 0 || i > d {
            return None;
        }
        Some(self.child_unchecked(x, d, i))
    }

    #[inline]
    fn child_unchecked(&self, x: usize, d: usize, i: usize) -> usize {
        self.fwd_below(x + d - i) + 1
    }

    /// Label of the edge to the `i`-th child of `x`.
    pub fn child_label(&self, x: usize, i: usize) -> u64 {
        self.labels.get(self.bits.rank1(x) - 1 + i - 1)
    }

    /// Child of `x` whose edge label is `c`, assuming labels sorted per node.
    pub fn labeled_child(&self, x: usize, c: u64) -> Option<usize> {
        let d = self.degree(x);
        if d == 0 {
            return None;
        }
        let base = self.bits.rank1(x) - 1;
        let (mut lo, mut hi) = (0usize, d);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let l = self.labels.get(base + mid);
            if l == c {
                return Some(self.child_unchecked(x, d, mid + 1));
            }
            if l < c {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        None
    }

    /// Preorder rank of `x`; the root is 0.
    pub fn preorder(&self, x: usize) -> usize {
        self.bits.rank0(x)
    }

    /// Node with preorder rank `k`.
    pub fn node_at_preorder(&self, k: usize) -> usize {
        if k == 0 {
            1
        } else {
            self.bits.select0(k).unwrap()
        }
    }

    /// Last position of the subtree description of `x`.
    pub fn subtree_end(&self, x: usize) -> usize {
        self.fwd_below(x - 1)
    }

    pub fn subtree_size(&self, x: usize) -> usize {
        (self.subtree_end(x) + 2 - x) / 2
    }

    /// Leaves to the left of `x`.
    pub fn leaf_rank(&self, x: usize) -> usize {
        self.rank_leaf(x)
    }

    pub fn leftmost_leaf(&self, x: usize) -> usize {
        self.select_leaf(self.rank_leaf(x) + 1)
    }

    pub fn rightmost_leaf(&self, x: usize) -> usize {
        self.select_leaf(self.rank_leaf(self.subtree_end(x) + 1))
    }

    /// Leaf with 1-based leaf rank `j`.
    pub fn leaf_select(&self, j: usize) -> Option<usize> {
        (j >= 1 && j <= self.leaf_count()).then(|| self.select_leaf(j))
    }

    /// 1-based leaf ranks covered by the subtree of `x`.
    pub fn leaf_range(&self, x: usize) -> (usize, usize) {
        (self.rank_leaf(x) + 1, self.rank_leaf(self.subtree_end(x) + 1))
    }

    pub fn size_in_bytes(&self) -> usize {
        self.bits.size_in_bytes()
            + self.labels.size_in_bytes()
            + self.leaf_samples.len() * 8
            + self.min_tree.len() * 8
            + 16
    }
}

impl Persist for DfudsTree {
    const TAG: [u8; 4] = *b"DFUD";

    fn write_body(&self, w: &mut Writer) {
        self.bits.write_section(w);
        self.labels.write_section(w);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let bits = BitVector::read_section(r)?;
        let labels = IntVector::read_section(r)?;
        Self::with_parts(bits, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    struct Oracle {
        children: Vec<Vec<(u64, usize)>>,
        pre: Vec<usize>,
    }

    impl Oracle {
        fn new(children: Vec<Vec<(u64, usize)>>) -> Self {
            let mut pre = Vec::new();
            let mut stack = vec![0];
            while let Some(v) = stack.pop() {
                pre.push(v);
                for &(_, c) in children[v].iter().rev() {
                    stack.push(c);
                }
            }
            Self { children, pre }
        }

        fn leaves_in(&self, v: usize, out: &mut Vec<usize>) {
            if self.children[v].is_empty() {
                out.push(v);
            }
            for &(_, c) in &self.children[v] {
                self.leaves_in(c, out);
            }
        }

        fn size(&self, v: usize) -> usize {
            1 + self.children[v].iter().map(|&(_, c)| self.size(c)).sum::<usize>()
        }
    }

    fn random_tree(parents: &[usize]) -> Vec<Vec<(u64, usize)>> {
        // node i + 1 hangs from some earlier node
        let n = parents.len() + 1;
        let mut ch = vec![Vec::new(); n];
        for (i, &p) in parents.iter().enumerate() {
            let par = p % (i + 1);
            let lab = ch[par].len() as u64 * 3 + 1;
            ch[par].push((lab, i + 1));
        }
        ch
    }

    #[test]
    fn two_leaf_root_encoding() {
        let t = DfudsTree::from_children(&[vec![(1, 1), (2, 2)], vec![], vec![]]).unwrap();
        assert_eq!(t.bits().to_string01(), "111000");
        assert_eq!(t.degree(1), 2);
        assert_eq!(t.child(1, 1), Some(4));
        assert_eq!(t.child(1, 2), Some(5));
        assert_eq!(t.leaf_count(), 2);
        assert_eq!(t.labeled_child(1, 2), Some(5));
        assert_eq!(t.labeled_child(1, 3), None);
    }

    #[test]
    fn single_node_is_leaf() {
        let t = DfudsTree::from_children(&[vec![]]).unwrap();
        assert_eq!(t.bits().to_string01(), "10");
        assert!(t.is_leaf(1));
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.leftmost_leaf(1), 1);
        assert_eq!(t.rightmost_leaf(1), 1);
    }

    #[test]
    fn string_set_trie_has_one_leaf_per_string() {
        // {alabar$, a$, la$, alabarda$} as a character trie with '$' = 0
        let words: [&[u8]; 4] = [b"alabar\0", b"a\0", b"la\0", b"alabarda\0"];
        let mut ch: Vec<Vec<(u64, usize)>> = vec![Vec::new()];
        for w in words {
            let mut v = 0;
            for &c in w {
                v = match ch[v].iter().find(|e| e.0 == c as u64) {
                    Some(&(_, u)) => u,
                    None => {
                        ch.push(Vec::new());
                        let u = ch.len() - 1;
                        ch[v].push((c as u64, u));
                        ch[v].sort_unstable();
                        u
                    }
                };
            }
        }
        let t = DfudsTree::from_children(&ch).unwrap();
        assert_eq!(t.leaf_count(), 4);
    }

    proptest! {
        #[test]
        fn navigation_matches_explicit_tree(parents in proptest::collection::vec(any::<usize>(), 0..300)) {
            let ch = random_tree(&parents);
            let t = DfudsTree::from_children(&ch).unwrap();
            let o = Oracle::new(ch);
            let n = o.pre.len();
            prop_assert_eq!(t.node_count(), n);
            // handle of every node by preorder
            let handle: Vec<usize> = (0..n).map(|k| t.node_at_preorder(k)).collect();
            let mut handle_of = vec![0; n];
            for (k, &v) in o.pre.iter().enumerate() {
                handle_of[v] = handle[k];
            }
            let mut all_leaves = Vec::new();
            o.leaves_in(0, &mut all_leaves);
            prop_assert_eq!(t.leaf_count(), all_leaves.len());
            for (k, &v) in o.pre.iter().enumerate() {
                let x = handle_of[v];
                prop_assert_eq!(t.preorder(x), k);
                prop_assert_eq!(t.degree(x), o.children[v].len());
                prop_assert_eq!(t.is_leaf(x), o.children[v].is_empty());
                prop_assert_eq!(t.subtree_size(x), o.size(v));
                for (i, &(lab, c)) in o.children[v].iter().enumerate() {
                    prop_assert_eq!(t.child(x, i + 1), Some(handle_of[c]));
                    prop_assert_eq!(t.child_label(x, i + 1), lab);
                    prop_assert_eq!(t.labeled_child(x, lab), Some(handle_of[c]));
                }
                let mut lv = Vec::new();
                o.leaves_in(v, &mut lv);
                let first = all_leaves.iter().position(|&l| l == lv[0]).unwrap();
                prop_assert_eq!(t.leaf_rank(x), first);
                prop_assert_eq!(t.leftmost_leaf(x), handle_of[lv[0]]);
                prop_assert_eq!(t.rightmost_leaf(x), handle_of[*lv.last().unwrap()]);
                prop_assert_eq!(t.leaf_range(x), (first + 1, first + lv.len()));
            }
            let back = DfudsTree::from_bytes(&t.to_bytes()).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
