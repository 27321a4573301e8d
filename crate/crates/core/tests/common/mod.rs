//! Shared fixtures: a six-fragment reference molecule with hand-checked
//! encodings in every dialect, plus known-broken strings for the validator.

#![allow(dead_code)]

use molcodec::molgraph::{canonical_smiles, parse_smiles};

pub const REF_SMILES: &str =
    "CCCCC1C(=O)N(C(C2SCCCS2)C2OC(C)(C)OC2C2COC(C)(C)O2)C1C(C)=Cc1ccccc1";

/// Caret code for the reference molecule under its five-cut fragmentation.
/// The stray spaces after two separators are intentional: decoders must
/// tolerate whitespace around separators.
pub const REF_TSIS: &str = "[5*]CCCC^[1*]=C(C)C1C([5*])C(=O)N1[2*]^ [1*]=CC1=CC=CC=C1^[2*]C([3*])[4*]^ [3*]C1SCCCS1^[4*]C1OC(C)(C)OC1C1COC(C)(C)O1";

/// Marker code for the same fragment set (marker layout from a different
/// but compatible tree serialization; decoding is marker-insensitive).
pub const REF_TSID: &str = "[5*]CCCC&[1*]=C(C)C1C([5*])C(=O)N1[2*]&[2*]C([3*])[4*]&[3*]C1SCCCS1^[1*]=CC1=CC=CC=C1&[4*]C1OC(C)(C)OC1C1COC(C)(C)O1&&&&";

/// Dot code for the same fragment set, attachments spelled as cross-dot
/// ring closures.
pub const REF_SAFE: &str =
    "C16OC(C)(C)OC1C1COC(C)(C)O1.C17C(=O)N4C1C=3C.C=3c1ccccc1.C15SCCCS1.CCCC7.C456";

pub const BAD_SAFE_1: &str = "c13cc(F)c(O)c(C2=CCc3c-2c(C)nn2C)c1.CO3";
pub const BAD_SAFE_2: &str = "N15CCC3CCC1)CCCO2.Cc1cccc4c15.c16ccc7o1.C36=O.C7(F)F.N34";
pub const BAD_SAFE_3: &str =
    "c1%18c[nH]c2cccc12.c17ncc(Cl)c%10n1.N16CCCC9C1.C56=O.CC7.N57.N89";

/// The five cut bonds (by atom index in REF_SMILES parse order) that produce
/// the six reference fragments.
pub const REF_CUTS: [(usize, usize); 5] = [(3, 4), (7, 8), (8, 9), (8, 15), (30, 32)];

pub fn canon(s: &str) -> String {
    canonical_smiles(&parse_smiles(s, false).expect(s))
}
