//! Deterministic corpus generation for tests and benchmarks: a hand-curated
//! base set of drug-like molecules, expanded by seeded atom-order shuffling
//! and fragment-swap recombination. Every emitted line is guaranteed to
//! parse as a single-component molecule.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codecs::{fragment_set_from_strings, reassemble};
use crate::fragmenter::{apply_cuts, find_cut_bonds, CutRule, CutSet};
use crate::molgraph::{parse_smiles, write_smiles, MolGraph};

pub const BASE_SMILES: &[&str] = &[
    "CC(=O)Nc1ccc(O)cc1",
    "CC(=O)Oc1ccccc1C(=O)O",
    "CC(C)Cc1ccc(C(C)C(=O)O)cc1",
    "CN1CCC(c2ccccc2)CC1",
    "Clc1ccc(Cl)cc1",
    "Oc1ccc(Cl)cc1",
    "NC(=O)c1ccccc1",
    "COc1ccc(CCN)cc1",
    "CCN(CC)CC",
    "OCC(O)CO",
    "C1CCNCC1",
    "C1CCOC1",
    "O=C1CCCCC1",
    "CC1=CC(=O)CC(C)(C)C1",
    "c1ccc2ccccc2c1",
    "Cc1ccc2ccccc2c1",
    "c1ccc2[nH]ccc2c1",
    "CC(N)C(=O)O",
    "NCCc1ccc(O)c(O)c1",
    "OC(=O)c1ccccc1O",
    "CC(=O)c1ccccc1",
    "c1ccsc1",
    "c1ccoc1",
    "c1cc[nH]c1",
    "c1ccncc1",
    "Cc1ccccn1",
    "Nc1ncnc2[nH]cnc12",
    "OCC1OC(O)C(O)C(O)C1O",
    "CCCCCC(=O)O",
    "CCCCCCCCCC",
    "CC(C)(C)OC(=O)N1CCCC1",
    "FC(F)(F)c1ccccc1",
    "BrCCBr",
    "ICCI",
    "CSc1ccccc1",
    "CS(=O)(=O)N",
    "NS(=O)(=O)c1ccc(N)cc1",
    "O=C(O)CCCCC(=O)O",
    "C1CC2CCC1CC2",
    "C1CC12CC2",
    "CC(C)=CCCC(C)=CCO",
    "C/C=C/C(=O)O",
    "N#Cc1ccccc1",
    "CC#CC",
    "C=CC=C",
    "c1ccc(-c2ccccc2)cc1",
    "CN(C)c1ccc(C=O)cc1",
    "COC(=O)c1ccccc1C(=O)OC",
    "Oc1cccc2cccnc12",
    "CC12CCC(CC1)C2",
    "O=[N+]([O-])c1ccccc1",
    "C[N+](C)(C)CCO",
    "CCOC(=O)C",
    "CC(C)NCC(O)COc1ccccc1",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "OC(=O)C1CCCN1",
    "NC(Cc1ccccc1)C(=O)O",
    "NC(CO)C(=O)O",
    "NC(CS)C(=O)O",
    "CSCCC(N)C(=O)O",
    "NC(CCC(=O)O)C(=O)O",
    "Nc1ccccc1",
    "OB(O)c1ccccc1",
    "CC(C)(C)c1ccc(O)cc1",
    "O=C(Nc1ccccc1)c1ccccc1",
    "Clc1ccccc1Cl",
    "COc1cc2c(cc1OC)CCN2",
    "O=C1NC(=O)NC(=O)C1",
    "c1cnc2[nH]ccc2c1",
    "OCCN1CCN(CCO)CC1",
    "CC(=O)NC1CCCCC1",
    "O=S(=O)(O)c1ccccc1",
    "CCOP(=O)(OCC)OCC",
    "NC(N)=N",
    "CN=C=O",
    "CC1(C)OC(=O)CC1",
    "Fc1ccc(F)cc1",
    "COC(=O)CCC(=O)OC",
    "C1=CC2=CC=CC=C2C=C1",
    "Oc1ccc2c(c1)OCO2",
    "O=C(NCc1ccccc1)C1CCN(Cc2ccccc2)CC1",
    "COc1ccc(C(=O)NCCN2CCOCC2)cc1",
    "CN1CCN(c2ccc(OCC3CC3)cc2)CC1",
    "[13CH4]",
    "CCS(=O)(=O)c1ccc(CO)cc1",
    "CC(C)Oc1ccccc1C(N)=O",
];

fn shuffled_rendering(g: &MolGraph, rng: &mut ChaCha8Rng) -> String {
    let mut perm: Vec<usize> = (0..g.atoms().len()).collect();
    perm.shuffle(rng);
    write_smiles(&g.permute_atoms(&perm))
}

/// Swap halves of two molecules across one random cut each.
fn recombined(a: &MolGraph, b: &MolGraph, rng: &mut ChaCha8Rng) -> String {
    let one_cut = |g: &MolGraph, rng: &mut ChaCha8Rng| {
        let cuts = find_cut_bonds(g, &CutRule::ExocyclicSingle).unwrap();
        let pick = cuts.bond_refs[rng.gen_range(0..cuts.bond_refs.len())];
        apply_cuts(g, &CutSet { bond_refs: vec![pick] })
    };
    let fa = one_cut(a, rng);
    let fb = one_cut(b, rng);
    let fs = fragment_set_from_strings(vec![
        fa.strings()[0].clone(),
        fb.strings()[1].clone(),
    ])
    .expect("half fragments pair on ID 1");
    write_smiles(&reassemble(&fs).expect("one pair always reconnects"))
}

/// `n` SMILES lines, deterministic in `seed`. Roughly a quarter are base
/// molecules verbatim, a quarter are shuffled renderings, and half are
/// cross-molecule recombinants.
pub fn sample_corpus(n: usize, seed: u64) -> Vec<String> {
    let pool: Vec<MolGraph> = BASE_SMILES
        .iter()
        .map(|s| parse_smiles(s, false).expect(s))
        .collect();
    let cuttable: Vec<usize> = (0..pool.len())
        .filter(|&i| !find_cut_bonds(&pool[i], &CutRule::ExocyclicSingle).unwrap().is_empty())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| match rng.gen_range(0..4u8) {
            0 => BASE_SMILES[rng.gen_range(0..BASE_SMILES.len())].to_string(),
            1 => {
                let g = &pool[rng.gen_range(0..pool.len())];
                shuffled_rendering(g, &mut rng)
            }
            _ => {
                let a = &pool[cuttable[rng.gen_range(0..cuttable.len())]];
                let b = &pool[cuttable[rng.gen_range(0..cuttable.len())]];
                recombined(a, b, &mut rng)
            }
        })
        .collect()
}
