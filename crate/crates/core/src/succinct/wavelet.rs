//! Balanced wavelet tree over an integer sequence, stored level by level.
//!
//! A node covering the value interval `[lo, hi]` sends values `<= mid` to
//! the left (bit 0) and the rest to the right, with `mid = (lo + hi) / 2`.
//! Each level keeps one bitvector of the full sequence length in which every
//! node occupies the same positions as its parent; elements that already
//! reached a leaf keep a 0 bit that no query reads.

use super::bitvec::BitVector;
use super::bits::BitBuf;
use crate::error::{out_of_range, Error, Result};
use crate::io::{Persist, Reader, Writer};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WaveletTree {
    len: usize,
    sigma: u64,
    levels: Vec<BitVector>,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    lo: u64,
    hi: u64,
    s: usize,
    e: usize,
}

impl Node {
    fn mid(&self) -> u64 {
        self.lo + (self.hi - self.lo) / 2
    }
}

impl WaveletTree {
    /// Builds over values in `0..sigma`.
    pub fn new(values: &[u64], sigma: u64) -> Self {
        assert!(values.iter().all(|&v| v < sigma), "value outside alphabet");
        let depth = if sigma <= 1 { 0 } else { 64 - (sigma - 1).leading_zeros() } as usize;
        let n = values.len();
        let mut cur = values.to_vec();
        let mut segs = vec![(0usize, n, 0u64, sigma.saturating_sub(1))];
        let mut levels = Vec::with_capacity(depth);
        for _ in 0..depth {
            let mut bits = BitBuf::with_len(n);
            let mut next = Vec::with_capacity(n);
            let mut next_segs = Vec::with_capacity(segs.len() * 2);
            for &(s, e, lo, hi) in &segs {
                if lo == hi {
                    next.extend_from_slice(&cur[s..e]);
                    next_segs.push((s, e, lo, hi));
                    continue;
                }
                let mid = lo + (hi - lo) / 2;
                let left: Vec<u64> = cur[s..e].iter().copied().filter(|&v| v <= mid).collect();
                for (k, &v) in cur[s..e].iter().enumerate() {
                    if v > mid {
                        bits.set(s + k, true);
                    }
                }
                let z = left.len();
                next.extend_from_slice(&left);
                next.extend(cur[s..e].iter().copied().filter(|&v| v > mid));
                next_segs.push((s, s + z, lo, mid));
                next_segs.push((s + z, e, mid + 1, hi));
            }
            levels.push(BitVector::from(bits));
            cur = next;
            segs = next_segs;
        }
        Self { len: n, sigma, levels }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn root(&self) -> Node {
        Node { lo: 0, hi: self.sigma.saturating_sub(1), s: 0, e: self.len }
    }

    #[inline]
    fn left(&self, lvl: usize, n: &Node) -> Node {
        let bv = &self.levels[lvl];
        let z = bv.rank0(n.e) - bv.rank0(n.s);
        Node { lo: n.lo, hi: n.mid(), s: n.s, e: n.s + z }
    }

    #[inline]
    fn right(&self, lvl: usize, n: &Node) -> Node {
        let bv = &self.levels[lvl];
        let z = bv.rank0(n.e) - bv.rank0(n.s);
        Node { lo: n.mid() + 1, hi: n.hi, s: n.s + z, e: n.e }
    }

    /// Value at 0-based index `i`.
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len);
        let mut n = self.root();
        let mut p = i;
        let mut lvl = 0;
        while n.lo < n.hi {
            let bv = &self.levels[lvl];
            if bv.get(n.s + p) {
                p = bv.rank1(n.s + p) - bv.rank1(n.s);
                n = self.right(lvl, &n);
            } else {
                p = bv.rank0(n.s + p) - bv.rank0(n.s);
                n = self.left(lvl, &n);
            }
            lvl += 1;
        }
        n.lo
    }

    /// Value at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.len {
            return Err(out_of_range(i, 1, self.len));
        }
        Ok(self.get(i - 1))
    }

    /// Occurrences of `c` among the first `i` elements.
    pub fn rank(&self, c: u64, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(out_of_range(i, 0, self.len));
        }
        Ok(self.rank_unchecked(c, i))
    }

    #[inline]
    pub fn rank_unchecked(&self, c: u64, i: usize) -> usize {
        if c >= self.sigma {
            return 0;
        }
        let mut n = self.root();
        let mut p = i;
        let mut lvl = 0;
        while n.lo < n.hi && p > 0 {
            let bv = &self.levels[lvl];
            if c <= n.mid() {
                p = bv.rank0(n.s + p) - bv.rank0(n.s);
                n = self.left(lvl, &n);
            } else {
                p = bv.rank1(n.s + p) - bv.rank1(n.s);
                n = self.right(lvl, &n);
            }
            lvl += 1;
        }
        p
    }

    /// 1-based position of the `j`-th occurrence of `c`.
    pub fn select(&self, c: u64, j: usize) -> Result<usize> {
        let bad = || Error::OutOfRange { pos: j, valid: format!("occurrences of {c}") };
        if c >= self.sigma || j == 0 {
            return Err(bad());
        }
        let mut path = Vec::with_capacity(self.levels.len());
        let mut n = self.root();
        let mut lvl = 0;
        while n.lo < n.hi {
            let go_right = c > n.mid();
            path.push((n.s, go_right));
            n = if go_right { self.right(lvl, &n) } else { self.left(lvl, &n) };
            lvl += 1;
        }
        if j > n.e - n.s {
            return Err(bad());
        }
        let mut p = j;
        for (lvl, &(s, go_right)) in path.iter().enumerate().rev() {
            let bv = &self.levels[lvl];
            p = if go_right {
                bv.select1(bv.rank1(s) + p).unwrap() - s
            } else {
                bv.select0(bv.rank0(s) + p).unwrap() - s
            };
        }
        Ok(p)
    }

    fn check_range(&self, x1: usize, x2: usize) -> Result<()> {
        if x1 == 0 || x1 > x2 + 1 || x2 > self.len {
            return Err(Error::InvalidArgument(format!("bad position range [{x1},{x2}]")));
        }
        Ok(())
    }

    /// Number of positions in `[x1, x2]` (1-based) whose value lies in `[y1, y2]`.
    pub fn range_count(&self, x1: usize, x2: usize, y1: u64, y2: u64) -> Result<usize> {
        self.check_range(x1, x2)?;
        Ok(self.count_rec(0, self.root(), x1 - 1, x2, y1, y2))
    }

    fn count_rec(&self, lvl: usize, n: Node, a: usize, b: usize, y1: u64, y2: u64) -> usize {
        if a >= b || n.hi < y1 || n.lo > y2 {
            return 0;
        }
        if y1 <= n.lo && n.hi <= y2 {
            return b - a;
        }
        let bv = &self.levels[lvl];
        let (r0s, r1s) = (bv.rank0(n.s), bv.rank1(n.s));
        let (a0, b0) = (bv.rank0(n.s + a) - r0s, bv.rank0(n.s + b) - r0s);
        let (a1, b1) = (bv.rank1(n.s + a) - r1s, bv.rank1(n.s + b) - r1s);
        self.count_rec(lvl + 1, self.left(lvl, &n), a0, b0, y1, y2)
            + self.count_rec(lvl + 1, self.right(lvl, &n), a1, b1, y1, y2)
    }

    /// Values in `[y1, y2]` found at positions `[x1, x2]`, each with its
    /// multiplicity, in increasing value order.
    pub fn range_values(&self, x1: usize, x2: usize, y1: u64, y2: u64) -> Result<Vec<(u64, usize)>> {
        self.check_range(x1, x2)?;
        let mut out = Vec::new();
        self.values_rec(0, self.root(), x1 - 1, x2, y1, y2, &mut |v, c| out.push((v, c)));
        Ok(out)
    }

    /// Visits values in `[y1, y2]` at 0-based positions `[a, b)` without
    /// checking the arguments.
    pub fn for_each_value<F: FnMut(u64, usize)>(&self, a: usize, b: usize, y1: u64, y2: u64, f: &mut F) {
        self.values_rec(0, self.root(), a, b, y1, y2, f);
    }

    #[allow(clippy::too_many_arguments)]
    fn values_rec<F: FnMut(u64, usize)>(&self, lvl: usize, n: Node, a: usize, b: usize, y1: u64, y2: u64, f: &mut F) {
        if a >= b || n.hi < y1 || n.lo > y2 {
            return;
        }
        if n.lo == n.hi {
            f(n.lo, b - a);
            return;
        }
        let bv = &self.levels[lvl];
        let (r0s, r1s) = (bv.rank0(n.s), bv.rank1(n.s));
        let (a0, b0) = (bv.rank0(n.s + a) - r0s, bv.rank0(n.s + b) - r0s);
        self.values_rec(lvl + 1, self.left(lvl, &n), a0, b0, y1, y2, f);
        let (a1, b1) = (bv.rank1(n.s + a) - r1s, bv.rank1(n.s + b) - r1s);
        self.values_rec(lvl + 1, self.right(lvl, &n), a1, b1, y1, y2, f);
    }

    /// All points `(x, y)` with `x` in `[x1, x2]` (1-based) and `y` in `[y1, y2]`.
    pub fn range_report(&self, x1: usize, x2: usize, y1: u64, y2: u64) -> Result<Vec<(usize, u64)>> {
        self.check_range(x1, x2)?;
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.report_rec(0, self.root(), x1 - 1, x2, y1, y2, &mut path, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn report_rec(
        &self,
        lvl: usize,
        n: Node,
        a: usize,
        b: usize,
        y1: u64,
        y2: u64,
        path: &mut Vec<(usize, bool)>,
        out: &mut Vec<(usize, u64)>,
    ) {
        if a >= b || n.hi < y1 || n.lo > y2 {
            return;
        }
        if n.lo == n.hi {
            for k in a..b {
                // walk back up to the root position
                let mut p = k + 1;
                for (l, &(s, right)) in path.iter().enumerate().rev() {
                    let bv = &self.levels[l];
                    p = if right {
                        bv.select1(bv.rank1(s) + p).unwrap() - s
                    } else {
                        bv.select0(bv.rank0(s) + p).unwrap() - s
                    };
                }
                out.push((p, n.lo));
            }
            return;
        }
        let bv = &self.levels[lvl];
        let (r0s, r1s) = (bv.rank0(n.s), bv.rank1(n.s));
        let (a0, b0) = (bv.rank0(n.s + a) - r0s, bv.rank0(n.s + b) - r0s);
        path.push((n.s, false));
        self.report_rec(lvl + 1, self.left(lvl, &n), a0, b0, y1, y2, path, out);
        path.pop();
        let (a1, b1) = (bv.rank1(n.s + a) - r1s, bv.rank1(n.s + b) - r1s);
        path.push((n.s, true));
        self.report_rec(lvl + 1, self.right(lvl, &n), a1, b1, y1, y2, path, out);
        path.pop();
    }

    /// Largest 1-based position `p < pos` whose value is at most `v`.
    pub fn prev_less(&self, pos: usize, v: u64) -> Result<Option<usize>> {
        if pos == 0 || pos > self.len + 1 {
            return Err(out_of_range(pos, 1, self.len + 1));
        }
        Ok(self.prev_less_unchecked(pos, v))
    }

    #[inline]
    pub fn prev_less_unchecked(&self, pos: usize, v: u64) -> Option<usize> {
        self.prev_rec(0, self.root(), pos - 1, v).map(|p| p + 1)
    }

    // rightmost 0-based offset among the first k elements of node n with value <= v
    fn prev_rec(&self, lvl: usize, n: Node, k: usize, v: u64) -> Option<usize> {
        if k == 0 || n.lo > v {
            return None;
        }
        if n.hi <= v {
            return Some(k - 1);
        }
        let bv = &self.levels[lvl];
        let (r0s, r1s) = (bv.rank0(n.s), bv.rank1(n.s));
        let k0 = bv.rank0(n.s + k) - r0s;
        let k1 = k - k0;
        let from_left = |r: usize| bv.select0(r0s + r + 1).unwrap() - 1 - n.s;
        if v <= n.mid() {
            self.prev_rec(lvl + 1, self.left(lvl, &n), k0, v).map(from_left)
        } else {
            // every left value is <= mid < v
            let l = (k0 > 0).then(|| from_left(k0 - 1));
            let r = self
                .prev_rec(lvl + 1, self.right(lvl, &n), k1, v)
                .map(|r| bv.select1(r1s + r + 1).unwrap() - 1 - n.s);
            l.max(r)
        }
    }

    pub fn size_in_bytes(&self) -> usize {
        self.levels.iter().map(|l| l.size_in_bytes()).sum::<usize>() + 24
    }
}

impl Persist for WaveletTree {
    const TAG: [u8; 4] = *b"WVTR";

    fn write_body(&self, w: &mut Writer) {
        w.put_u64(self.len as u64);
        w.put_u64(self.sigma);
        w.put_u8(self.levels.len() as u8);
        for l in &self.levels {
            l.write_section(w);
        }
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.get_len(usize::MAX >> 1)?;
        let sigma = r.get_u64()?;
        let depth = r.get_u8()? as usize;
        let expect = if sigma <= 1 { 0 } else { 64 - (sigma - 1).leading_zeros() } as usize;
        if depth != expect {
            return Err(Error::Malformed("wavelet tree depth mismatch".into()));
        }
        let mut levels = Vec::with_capacity(depth);
        for _ in 0..depth {
            let l = BitVector::read_section(r)?;
            if l.len() != len {
                return Err(Error::Malformed("wavelet level length mismatch".into()));
            }
            levels.push(l);
        }
        Ok(Self { len, sigma, levels })
    }
}
