//! Empirical entropy, context counts and inverse probability of match.

/// One row of the entropy table.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyRow {
    pub k: usize,
    /// Bits per symbol.
    pub h: f64,
    /// `h` as a percentage of 8 bits.
    pub percent: f64,
    /// Distinct substrings of length `k`.
    pub contexts: usize,
}

fn pack(ctx: &[u8]) -> u128 {
    ctx.iter().fold(0u128, |acc, &b| acc << 8 | b as u128)
}

/// Zero-order empirical entropy in bits per symbol.
pub fn entropy0(t: &[u8]) -> f64 {
    if t.is_empty() {
        return 0.0;
    }
    let mut cnt = [0usize; 256];
    for &b in t {
        cnt[b as usize] += 1;
    }
    let n = t.len() as f64;
    cnt.iter()
        .filter(|&&c| c > 0)
        .map(|&c| c as f64 / n * (n / c as f64).log2())
        .sum()
}

/// `k`-th order empirical entropy (bits per symbol) and the number of
/// distinct length-`k` contexts. Supports `k <= 15`.
pub fn entropy_k(t: &[u8], k: usize) -> (f64, usize) {
    assert!(k <= 15, "context order above 15 is not supported");
    if k == 0 {
        return (entropy0(t), 1);
    }
    let n = t.len();
    if n <= k {
        return (0.0, usize::from(n == k));
    }
    // key = context followed by the next symbol
    let mut keys: Vec<u128> = (k..n).map(|i| pack(&t[i - k..i]) << 8 | t[i] as u128).collect();
    keys.sort_unstable();
    let mut total = 0.0;
    let mut contexts = 0;
    let mut i = 0;
    while i < keys.len() {
        let ctx = keys[i] >> 8;
        let mut j = i;
        let mut runs = Vec::new();
        while j < keys.len() && keys[j] >> 8 == ctx {
            let mut r = j;
            while r < keys.len() && keys[r] == keys[j] {
                r += 1;
            }
            runs.push(r - j);
            j = r;
        }
        let m = (j - i) as f64;
        total += runs.iter().map(|&c| c as f64 * (m / c as f64).log2()).sum::<f64>();
        contexts += 1;
        i = j;
    }
    // the final context is followed by nothing
    let last = pack(&t[n - k..]);
    if keys.binary_search_by(|&x| (x >> 8).cmp(&last)).is_err() {
        contexts += 1;
    }
    (total / n as f64, contexts)
}

/// Rows for `k = 0..=kmax`.
pub fn entropy_table(t: &[u8], kmax: usize) -> Vec<EntropyRow> {
    (0..=kmax)
        .map(|k| {
            let (h, contexts) = entropy_k(t, k);
            EntropyRow { k, h, percent: h / 8.0 * 100.0, contexts }
        })
        .collect()
}

/// Inverse probability of match: `1 / sum_c p_c^2`.
pub fn inverse_match_probability(t: &[u8]) -> f64 {
    let mut cnt = [0usize; 256];
    for &b in t {
        cnt[b as usize] += 1;
    }
    let n = t.len() as f64;
    1.0 / cnt.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet};

    fn oracle(t: &[u8], k: usize) -> (f64, usize) {
        let mut groups: HashMap<&[u8], Vec<u8>> = HashMap::new();
        for i in k..t.len() {
            groups.entry(&t[i - k..i]).or_default().push(t[i]);
        }
        let h: f64 = groups.values().map(|g| g.len() as f64 * entropy0(g)).sum::<f64>() / t.len() as f64;
        let ctx: HashSet<&[u8]> = (0..=t.len() - k).map(|i| &t[i..i + k]).collect();
        (h, ctx.len())
    }

    #[test]
    fn uniform_and_constant() {
        assert!((entropy0(b"abcd") - 2.0).abs() < 1e-12);
        assert_eq!(entropy0(b"aaaa"), 0.0);
        assert!((inverse_match_probability(b"abab") - 2.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn matches_grouping_oracle(t in proptest::collection::vec(b'a'..b'e', 1..300), k in 0usize..5) {
            prop_assume!(t.len() > k);
            let (h, c) = entropy_k(&t, k);
            let (ho, co) = oracle(&t, k);
            prop_assert!((h - ho).abs() < 1e-9);
            prop_assert_eq!(c, co);
        }

        #[test]
        fn doubling_does_not_lower_entropy(t in proptest::collection::vec(b'a'..b'd', 1..200), k in 0usize..4) {
            let tt: Vec<u8> = t.iter().chain(t.iter()).copied().collect();
            prop_assert!(entropy_k(&tt, k).0 + 1e-9 >= entropy_k(&t, k).0);
        }
    }
}
