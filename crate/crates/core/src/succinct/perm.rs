//! Permutation with fast inverse via cycle shortcuts.
//!
//! Along every cycle longer than `t`, each `t`-th element stores a back
//! pointer to the element `t` steps earlier, so the inverse costs at most
//! about `2t` forward steps. Positions are 1-based.

use super::bitvec::BitVector;
use super::intvec::IntVector;
use crate::error::{out_of_range, Error, Result};
use crate::io::{Persist, Reader, Writer};

pub const DEFAULT_STEP: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePermutation {
    step: usize,
    forward: IntVector,
    marked: BitVector,
    back: IntVector,
}

impl CyclePermutation {
    /// `pi[i - 1]` is the image of `i`; it must be a permutation of `1..=n`.
    pub fn new(pi: &[usize], step: usize) -> Result<Self> {
        assert!(step >= 1);
        let n = pi.len();
        let mut seen = vec![false; n];
        for &v in pi {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidArgument("not a permutation of 1..=n".into()));
            }
            seen[v - 1] = true;
        }
        let mut visited = vec![false; n];
        let mut mark = vec![false; n];
        let mut back_of = vec![0usize; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x);
                x = pi[x] - 1;
            }
            let len = cycle.len();
            if len <= step {
                continue;
            }
            let last = (len - 1) / step * step;
            for k in (0..len).step_by(step) {
                let prev = if k == 0 { last } else { k - step };
                mark[cycle[k]] = true;
                back_of[cycle[k]] = cycle[prev];
            }
        }
        let back: Vec<u64> = (0..n).filter(|&i| mark[i]).map(|i| back_of[i] as u64).collect();
        Ok(Self {
            step,
            forward: IntVector::from_slice(&pi.iter().map(|&v| (v - 1) as u64).collect::<Vec<_>>()),
            marked: BitVector::from_bits(mark),
            back: IntVector::from_slice(&back),
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    #[inline]
    fn fwd0(&self, i: usize) -> usize {
        self.forward.get(i) as usize
    }

    /// Image of `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.fwd0(i - 1) + 1
    }

    /// Preimage of `i`.
    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverse_with_steps(i).0
    }

    /// Preimage of `i` and the number of forward or back steps taken.
    pub fn inverse_with_steps(&self, i: usize) -> (usize, usize) {
        let target = i - 1;
        let mut j = target;
        let mut jumped = false;
        let mut steps = 0;
        loop {
            let nx = self.fwd0(j);
            steps += 1;
            if nx == target {
                return (j + 1, steps);
            }
            if !jumped && self.marked.get(j) {
                j = self.back.get(self.marked.rank1(j)) as usize;
                jumped = true;
            } else {
                j = nx;
            }
        }
    }

    pub fn try_apply(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(out_of_range(i, 1, self.len()));
        }
        Ok(self.apply(i))
    }

    pub fn try_inverse(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(out_of_range(i, 1, self.len()));
        }
        Ok(self.inverse(i))
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn size_in_bytes(&self) -> usize {
        self.forward.size_in_bytes() + self.marked.size_in_bytes() + self.back.size_in_bytes() + 8
    }
}

impl Persist for CyclePermutation {
    const TAG: [u8; 4] = *b"PERM";

    fn write_body(&self, w: &mut Writer) {
        w.put_u32(self.step as u32);
        self.forward.write_section(w);
        self.marked.write_section(w);
        self.back.write_section(w);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let step = r.get_u32()? as usize;
        let forward = IntVector::read_section(r)?;
        let marked = BitVector::read_section(r)?;
        let back = IntVector::read_section(r)?;
        let n = forward.len();
        let ok = step >= 1
            && marked.len() == n
            && back.len() == marked.count_ones()
            && forward.iter().all(|v| (v as usize) < n)
            && back.iter().all(|v| (v as usize) < n);
        if !ok {
            return Err(Error::Malformed("inconsistent permutation".into()));
        }
        let mut seen = vec![false; n];
        for v in forward.iter() {
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::Malformed("permutation has repeated values".into()));
            }
        }
        Ok(Self { step, forward, marked, back })
    }
}
