//! Compact building blocks: bitvectors, integer codes, wavelet trees,
//! permutations and succinct trees.

pub mod bits;
pub mod bitvec;
pub mod codes;
pub mod dac;
pub mod dfuds;
pub mod intvec;
pub mod perm;
pub mod sparse;
pub mod wavelet;

pub use bitvec::BitVector;
pub use dac::Dac;
pub use dfuds::DfudsTree;
pub use intvec::IntVector;
pub use perm::CyclePermutation;
pub use sparse::SparseBitmap;
pub use wavelet::WaveletTree;
