//! On-disk format: a fixed header, a section table and the component
//! bodies. All integers are little-endian.
//!
//! ```text
//! "LZSIX" | version u16 | kind u8 | n u64 | n' u64 | sigma u64
//! count u32 | count x (tag [4], offset u64, length u64) | bodies
//! ```

use super::{Patricia, SelfIndex};
use crate::error::{Error, Result};
use crate::io::{Persist, Reader, Writer};
use crate::parsing::ParseKind;
use crate::succinct::{CyclePermutation, IntVector, SparseBitmap, WaveletTree};
use crate::text::Alphabet;
use std::path::Path;

pub const MAGIC: &[u8; 5] = b"LZSIX";
pub const VERSION: u16 = 1;

const TAGS: [&[u8; 4]; 12] = [
    b"ALPH", b"CHRS", b"PEND", b"SSTT", b"SSTK", b"REVT", b"REVK", b"RVID", b"GRID", b"SRCB", b"SRCP", b"DPTH",
];

impl SelfIndex {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bodies: Vec<Writer> = (0..TAGS.len()).map(|_| Writer::new()).collect();
        {
            let [alph, chrs, pend, sstt, sstk, revt, revk, rvid, grid, srcb, srcp, dpth] = &mut bodies[..] else {
                unreachable!()
            };
            self.alphabet.write_body(alph);
            self.chars.write_body(chrs);
            self.ends.write_body(pend);
            self.sst.write(sstt, sstk);
            self.rev.write(revt, revk);
            self.rev_ids.write_body(rvid);
            self.grid.write_body(grid);
            self.src_bits.write_body(srcb);
            self.src_perm.write_body(srcp);
            self.depths.write_body(dpth);
        }
        let mut w = Writer::new();
        w.put_bytes(MAGIC);
        w.put_u16(VERSION);
        w.put_u8(self.kind.code());
        w.put_u64(self.len() as u64);
        w.put_u64(self.phrase_count() as u64);
        w.put_u64(self.alphabet.sigma() as u64);
        w.put_u32(TAGS.len() as u32);
        let mut offset = w.len() + TAGS.len() * 20;
        for (tag, body) in TAGS.iter().zip(&bodies) {
            w.put_bytes(&tag[..]);
            w.put_u64(offset as u64);
            w.put_u64(body.len() as u64);
            offset += body.len();
        }
        for body in &bodies {
            w.put_bytes(body.bytes());
        }
        w.into_bytes()
    }

    pub fn from_bytes(data: &[u8]) -> Result<Self> {
        let mut r = Reader::new(data);
        if data.len() < MAGIC.len() || &data[..MAGIC.len()] != MAGIC {
            return Err(Error::BadMagic);
        }
        r.take(MAGIC.len())?;
        let version = r.get_u16()?;
        if version != VERSION {
            return Err(Error::BadVersion(version));
        }
        let kind = ParseKind::from_code(r.get_u8()?)
            .filter(|k| *k != ParseKind::Lz78)
            .ok_or_else(|| Error::Malformed("unknown parsing kind".into()))?;
        let n = r.get_u64()? as usize;
        let np = r.get_u64()? as usize;
        let sigma = r.get_u64()? as usize;
        let count = r.get_u32()? as usize;
        if count != TAGS.len() {
            return Err(Error::Malformed(format!("expected {} sections, found {count}", TAGS.len())));
        }
        let mut sections = Vec::with_capacity(count);
        for tag in TAGS {
            let t = r.take(4)?;
            if t != &tag[..] {
                return Err(Error::Malformed(format!("unexpected section {:?}", String::from_utf8_lossy(t))));
            }
            let off = r.get_u64()? as usize;
            let len = r.get_u64()? as usize;
            let body = off
                .checked_add(len)
                .and_then(|end| data.get(off..end))
                .ok_or_else(|| Error::Malformed("section outside the file".into()))?;
            sections.push(body);
        }
        fn whole<T: Persist>(body: &[u8]) -> Result<T> {
            let mut r = Reader::new(body);
            let v = T::read_body(&mut r)?;
            r.expect_end()?;
            Ok(v)
        }
        let alphabet: Alphabet = whole(sections[0])?;
        let chars: IntVector = whole(sections[1])?;
        let ends: SparseBitmap = whole(sections[2])?;
        let read_trie = |t: &[u8], s: &[u8]| -> Result<Patricia> {
            let (mut rt, mut rs) = (Reader::new(t), Reader::new(s));
            let p = Patricia::read(&mut rt, &mut rs)?;
            rt.expect_end()?;
            rs.expect_end()?;
            Ok(p)
        };
        let sst = read_trie(sections[3], sections[4])?;
        let rev = read_trie(sections[5], sections[6])?;
        let rev_ids: IntVector = whole(sections[7])?;
        let grid: WaveletTree = whole(sections[8])?;
        let src_bits: SparseBitmap = whole(sections[9])?;
        let src_perm: CyclePermutation = whole(sections[10])?;
        let depths: WaveletTree = whole(sections[11])?;

        let bad = |what: &str| Err(Error::Malformed(format!("inconsistent index: {what}")));
        if np < 2 || alphabet.sigma() != sigma || n < 2 {
            return bad("header");
        }
        if chars.len() != np || chars.iter().any(|c| c as usize >= sigma) {
            return bad("trailing symbols");
        }
        if ends.len() != n || ends.count_ones() != np || ends.select1(np) != Some(n) {
            return bad("phrase bitmap");
        }
        if sst.leaf_count() != np || rev.leaf_count() + 1 != np {
            return bad("tries");
        }
        if rev_ids.len() != np || rev_ids.iter().any(|v| v as usize >= np) {
            return bad("reverse ids");
        }
        if grid.len() != np || grid.sigma() != np as u64 {
            return bad("grid");
        }
        if src_bits.len() != np + n + 1 || src_bits.count_ones() != np || src_perm.len() != np {
            return bad("sources");
        }
        if depths.len() != np || depths.sigma() == 0 {
            return bad("depths");
        }
        let max_depth = depths.sigma() - 1;
        Ok(SelfIndex {
            kind,
            alphabet,
            chars,
            ends,
            sst,
            rev,
            rev_ids,
            grid,
            src_bits,
            src_perm,
            depths,
            max_depth,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
