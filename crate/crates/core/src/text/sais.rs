//! Suffix array construction by induced sorting (SA-IS) and LCP by Kasai.

const EMPTY: u32 = u32::MAX;

/// Suffix array (0-based starts) of `s`, whose last symbol must be a unique
/// minimum `0`.
pub fn suffix_array(s: &[u8]) -> Vec<u32> {
    assert!(!s.is_empty() && *s.last().unwrap() == 0, "text must end with the sentinel");
    assert!(s.len() < u32::MAX as usize);
    debug_assert!(s[..s.len() - 1].iter().all(|&c| c != 0));
    let v: Vec<u32> = s.iter().map(|&c| c as u32).collect();
    let k = s.iter().copied().max().unwrap() as usize + 1;
    sais(&v, k)
}

fn buckets(s: &[u32], k: usize, ends: bool) -> Vec<u32> {
    let mut cnt = vec![0u32; k];
    for &c in s {
        cnt[c as usize] += 1;
    }
    let mut sum = 0;
    for c in cnt.iter_mut() {
        sum += *c;
        *c = if ends { sum } else { sum - *c };
    }
    cnt
}

fn induce(s: &[u32], k: usize, stype: &[bool], sa: &mut [u32], lms_sorted: &[u32]) {
    let n = s.len();
    sa.fill(EMPTY);
    let mut bkt = buckets(s, k, true);
    for &p in lms_sorted.iter().rev() {
        let c = s[p as usize] as usize;
        bkt[c] -= 1;
        sa[bkt[c] as usize] = p;
    }
    let mut bkt = buckets(s, k, false);
    for i in 0..n {
        let p = sa[i];
        if p != EMPTY && p > 0 && !stype[p as usize - 1] {
            let c = s[p as usize - 1] as usize;
            sa[bkt[c] as usize] = p - 1;
            bkt[c] += 1;
        }
    }
    let mut bkt = buckets(s, k, true);
    for i in (0..n).rev() {
        let p = sa[i];
        if p != EMPTY && p > 0 && stype[p as usize - 1] {
            let c = s[p as usize - 1] as usize;
            bkt[c] -= 1;
            sa[bkt[c] as usize] = p - 1;
        }
    }
}

fn sais(s: &[u32], k: usize) -> Vec<u32> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    let lms: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();

    let mut sa = vec![EMPTY; n];
    induce(s, k, &stype, &mut sa, &lms);

    // name the LMS substrings in sorted order
    let sorted: Vec<u32> = sa.iter().copied().filter(|&p| is_lms(p as usize)).collect();
    let mut name_of = vec![EMPTY; n / 2 + 1];
    let mut name = 0u32;
    let mut prev: Option<usize> = None;
    for &p in &sorted {
        let p = p as usize;
        let differs = match prev {
            None => true,
            Some(q) => {
                let mut d = 0;
                loop {
                    if s[p + d] != s[q + d] || stype[p + d] != stype[q + d] {
                        break true;
                    }
                    if d > 0 && (is_lms(p + d) || is_lms(q + d)) {
                        break !(is_lms(p + d) && is_lms(q + d));
                    }
                    d += 1;
                }
            }
        };
        if differs {
            name += 1;
        }
        name_of[p / 2] = name - 1;
        prev = Some(p);
    }
    let reduced: Vec<u32> = lms.iter().map(|&p| name_of[p as usize / 2]).collect();

    let lms_sorted: Vec<u32> = if (name as usize) < lms.len() {
        sais(&reduced, name as usize).iter().map(|&r| lms[r as usize]).collect()
    } else {
        let mut out = vec![0u32; lms.len()];
        for (i, &nm) in reduced.iter().enumerate() {
            out[nm as usize] = lms[i];
        }
        out
    };
    induce(s, k, &stype, &mut sa, &lms_sorted);
    sa
}

/// LCP array: `lcp[r]` is the longest common prefix of the suffixes at ranks
/// `r - 1` and `r`, with `lcp[0] = 0`.
pub fn lcp_array(s: &[u8], sa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut rank = vec![0u32; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p as usize] = r as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r > 0 {
            let j = sa[r - 1] as usize;
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(s: &[u8]) -> Vec<u32> {
        let mut v: Vec<u32> = (0..s.len() as u32).collect();
        v.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        v
    }

    #[test]
    fn abba() {
        assert_eq!(suffix_array(&[1, 2, 2, 1, 0]), vec![4, 3, 0, 2, 1]);
    }

    proptest! {
        #[test]
        fn matches_naive_sort(mut s in proptest::collection::vec(1u8..5, 0..400)) {
            s.push(0);
            let sa = suffix_array(&s);
            prop_assert_eq!(&sa, &naive(&s));
            let lcp = lcp_array(&s, &sa);
            for r in 1..s.len() {
                let (a, b) = (sa[r - 1] as usize, sa[r] as usize);
                let l = s[a..].iter().zip(&s[b..]).take_while(|(x, y)| x == y).count();
                prop_assert_eq!(lcp[r] as usize, l);
            }
        }

        #[test]
        fn matches_naive_wide_alphabet(mut s in proptest::collection::vec(1u8..=255, 0..300)) {
            s.push(0);
            prop_assert_eq!(suffix_array(&s), naive(&s));
        }
    }
}
