//! Range maximum queries: a sparse table over block maxima plus scans of the
//! partial blocks at both ends. Ties go to the leftmost position.

const BLOCK: usize = 16;

#[derive(Clone, Debug)]
pub struct RangeMax {
    vals: Vec<u32>,
    // table[k][b]: argmax over blocks b .. b + 2^k
    table: Vec<Vec<u32>>,
}

impl RangeMax {
    pub fn new(vals: Vec<u32>) -> Self {
        let nb = vals.len().div_ceil(BLOCK);
        let mut level0 = Vec::with_capacity(nb);
        for b in 0..nb {
            let (s, e) = (b * BLOCK, ((b + 1) * BLOCK).min(vals.len()));
            level0.push(Self::scan(&vals, s, e) as u32);
        }
        let mut table = vec![level0];
        let mut k = 1;
        while (1 << k) <= nb {
            let prev = &table[k - 1];
            let half = 1 << (k - 1);
            let cur: Vec<u32> = (0..=nb - (1 << k))
                .map(|b| Self::better(&vals, prev[b], prev[b + half]))
                .collect();
            table.push(cur);
            k += 1;
        }
        Self { vals, table }
    }

    #[inline]
    fn better(vals: &[u32], a: u32, b: u32) -> u32 {
        let (va, vb) = (vals[a as usize], vals[b as usize]);
        if vb > va || (vb == va && b < a) {
            b
        } else {
            a
        }
    }

    fn scan(vals: &[u32], s: usize, e: usize) -> usize {
        let mut best = s;
        for i in s + 1..e {
            if vals[i] > vals[best] {
                best = i;
            }
        }
        best
    }

    /// 0-based position of the maximum in `[i, j]` (0-based, inclusive).
    pub fn argmax(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.vals.len());
        let (bi, bj) = (i / BLOCK, j / BLOCK);
        if bi == bj {
            return Self::scan(&self.vals, i, j + 1);
        }
        let mut best = Self::scan(&self.vals, i, (bi + 1) * BLOCK) as u32;
        if bi + 1 < bj {
            let (l, r) = (bi + 1, bj - 1);
            let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
            let m = Self::better(&self.vals, self.table[k][l], self.table[k][r + 1 - (1 << k)]);
            best = Self::better(&self.vals, best, m);
        }
        let tail = Self::scan(&self.vals, bj * BLOCK, j + 1) as u32;
        Self::better(&self.vals, best, tail) as usize
    }

    pub fn values(&self) -> &[u32] {
        &self.vals
    }

    pub fn size_in_bytes(&self) -> usize {
        self.table.iter().map(|t| t.len() * 4).sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_scan(vals in proptest::collection::vec(0u32..50, 1..300), qs in proptest::collection::vec((0usize..300, 0usize..300), 1..30)) {
            let r = RangeMax::new(vals.clone());
            for (a, b) in qs {
                let (i, j) = (a.min(b) % vals.len(), a.max(b) % vals.len());
                let (i, j) = (i.min(j), i.max(j));
                let mut best = i;
                for k in i..=j {
                    if vals[k] > vals[best] { best = k; }
                }
                prop_assert_eq!(r.argmax(i, j), best);
            }
        }
    }
}
