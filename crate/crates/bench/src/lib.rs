//! Fixtures shared by the benchmarks in `benches/`.

use lzsix::corpus::{self, Scheme};

/// Named benchmark texts of roughly `len` bytes.
pub fn corpora(len: usize) -> Vec<(&'static str, Vec<u8>)> {
    let mut fib = 2;
    while corpus::fibonacci(fib + 1).unwrap().len() <= len {
        fib += 1;
    }
    let tm = (len.max(2).ilog2() + 1) as usize;
    let base = corpus::words(len / 10, 1);
    vec![
        ("fib", corpus::fibonacci(fib).unwrap()),
        ("thue-morse", corpus::thue_morse(tm).unwrap()),
        ("words-x10", corpus::mutated(&base, 10, 0.001, Scheme::FromBase, 7).unwrap()),
    ]
}

/// `count` patterns of length `m` cut from `text` at scattered positions.
pub fn patterns(text: &[u8], m: usize, count: usize) -> Vec<Vec<u8>> {
    let span = (text.len() - m + 1) as u64;
    (0..count as u64)
        .map(|i| {
            let at = (i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 7) % span;
            text[at as usize..at as usize + m].to_vec()
        })
        .collect()
}
