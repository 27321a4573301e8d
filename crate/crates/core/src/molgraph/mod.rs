//! Molecular graphs in a defined SMILES subset: tokenizer, parser, writer,
//! canonicalization and descriptors.
//!
//! The supported subset covers organic-subset atoms, bracket atoms with
//! isotope/charge/explicit hydrogens, aromatic lowercase b/c/n/o/p/s, bonds
//! `- = # :`, ring closures 0-9 and %nn, branches, dots, and dummy atoms
//! `[n*]` whose number is an attachment ID. Stereo marks (`/`, `\`, `@`,
//! `@@`) are parsed and carried through verbatim but ignored by
//! canonicalization. No valence model is enforced.

mod canon;
mod descriptors;
mod element;
mod graph;
mod parse;
mod token;
mod write;

pub use canon::canonical_smiles;
pub use descriptors::{descriptors, Descriptors};
pub use element::Element;
pub use graph::{Atom, Bond, BondOrder, Chirality, GraphError, MolGraph};
pub use parse::{parse_smiles, ParseError};
pub use token::{tokenize, Dialect, Token, TokenKind, TokenizeError};
pub use write::{write_smiles, write_smiles_ranked};

pub(crate) use token::{dummy_attach_id, tokenize_prefix};
pub(crate) use write::{write_fragment, write_safe_fragment, SafeRender};
