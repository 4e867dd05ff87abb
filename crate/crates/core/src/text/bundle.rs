//! Suffix array, inverse, BWT, cumulative counts and range maximum over a
//! sentinel-terminated sequence, with 1-based accessors.

use super::rmq::RangeMax;
use super::sais::suffix_array;
use super::Text;
use crate::succinct::WaveletTree;

pub struct SuffixArrayBundle {
    n: usize,
    sa: Vec<u32>,
    isa: Vec<u32>,
    bwt: WaveletTree,
    c: Vec<usize>,
    rmq: RangeMax,
}

impl SuffixArrayBundle {
    /// Builds over `seq`, which must end with a unique sentinel `0`.
    pub fn new(seq: &[u8]) -> Self {
        let n = seq.len();
        let sa0 = suffix_array(seq);
        let sigma = seq.iter().copied().max().unwrap() as usize + 1;
        let sa: Vec<u32> = sa0.iter().map(|&p| p + 1).collect();
        let mut isa = vec![0u32; n];
        for (k, &p) in sa.iter().enumerate() {
            isa[p as usize - 1] = k as u32 + 1;
        }
        let bwt_vals: Vec<u64> = sa0
            .iter()
            .map(|&p| if p == 0 { seq[n - 1] } else { seq[p as usize - 1] } as u64)
            .collect();
        let mut c = vec![0usize; sigma + 1];
        for &s in seq {
            c[s as usize + 1] += 1;
        }
        for i in 1..=sigma {
            c[i] += c[i - 1];
        }
        let rmq = RangeMax::new(sa.clone());
        Self { n, sa, isa, bwt: WaveletTree::new(&bwt_vals, sigma as u64), c, rmq }
    }

    /// Bundle over the reversed text `T[n-1] .. T[1] $`.
    pub fn for_reversed(text: &Text) -> Self {
        Self::new(&text.reversed())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `A[k]`: start of the `k`-th smallest suffix.
    #[inline]
    pub fn sa(&self, k: usize) -> usize {
        self.sa[k - 1] as usize
    }

    /// `A^{-1}[j]`: rank of the suffix starting at `j`.
    #[inline]
    pub fn isa(&self, j: usize) -> usize {
        self.isa[j - 1] as usize
    }

    /// BWT symbol at rank `k`.
    pub fn bwt(&self, k: usize) -> u8 {
        self.bwt.get(k - 1) as u8
    }

    /// Symbols smaller than `c`.
    pub fn c(&self, c: u8) -> usize {
        self.c[c as usize]
    }

    /// One backward-search step: the range of suffixes prefixed by `c`
    /// followed by the pattern whose range is `[sp, ep]`.
    #[inline]
    pub fn bws_step(&self, sp: usize, ep: usize, c: u8) -> Option<(usize, usize)> {
        if c as usize + 1 >= self.c.len() {
            return None;
        }
        let base = self.c[c as usize];
        let nsp = base + self.bwt.rank_unchecked(c as u64, sp - 1) + 1;
        let nep = base + self.bwt.rank_unchecked(c as u64, ep);
        (nsp <= nep).then_some((nsp, nep))
    }

    /// Suffix range of `pattern`, processed right to left.
    pub fn bws(&self, pattern: &[u8]) -> Option<(usize, usize)> {
        let mut r = (1, self.n);
        for &c in pattern.iter().rev() {
            r = self.bws_step(r.0, r.1, c)?;
        }
        Some(r)
    }

    /// Rank in `[sp, ep]` holding the largest suffix start.
    #[inline]
    pub fn rmq_max(&self, sp: usize, ep: usize) -> usize {
        self.rmq.argmax(sp - 1, ep - 1) + 1
    }

    pub fn size_in_bytes(&self) -> usize {
        self.sa.len() * 8 + self.bwt.size_in_bytes() + self.c.len() * 8 + self.rmq.size_in_bytes()
    }
}
