//! Finite-field ground truth: subspaces of `F_q^d`, partial flags, orbit
//! classification of `(flag, flag, vector)` triples, and brute-force
//! convolution.

pub mod flags;
pub mod oracle;
pub mod space;

pub use flags::{classify_triple, enumerate_flags, FlagRep, PairTable};
pub use oracle::{max_work_from_env, GeneratorCounts, InvarianceReport, Oracle, OrbitEntry, OrbitTable, DEFAULT_MAX_WORK, MAX_WORK_ENV};
pub use space::{Ambient, SubspaceRref};
