//! Codecs for fragment-based molecular string representations.
//!
//! The toolkit reads molecules from a defined SMILES subset, cuts them into
//! fragments whose attachment points are paired dummy atoms `[n*]`, and
//! serializes the result as TSIS (fragment tree in BFS order, `^`-joined),
//! TSID (full-binary-tree BFS with `&` empty markers) or SAFE (size-sorted
//! fragments joined by `.` with attachments written as ring-closure numbers).
//! Decoders for all three dialects rebuild the molecular graph, and the
//! `analysis` and `bench` modules provide paired-symbol validation,
//! dependency-span profiling and a seeded distribution-learning benchmark.

pub mod amtree;
pub mod analysis;
pub mod bench;
pub mod codecs;
pub mod fragmenter;
pub mod molgraph;
pub mod testdata;

pub use molgraph::{Dialect, MolGraph};
