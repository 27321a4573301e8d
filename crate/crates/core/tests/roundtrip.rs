//! Encode-side integration tests: explicit and rule-based cuts on the
//! reference molecule and on a sampled corpus, round-tripped through every
//! dialect.

mod common;

use common::*;
use molcodec::codecs::{
    decode, decode_safe, decode_tsid, decode_tsis, encode, encode_safe, encode_tsid, encode_tsis,
};
use molcodec::fragmenter::{apply_cuts, find_cut_bonds, CutRule, CutSet};
use molcodec::molgraph::{canonical_smiles, parse_smiles, tokenize, BondOrder, Dialect, TokenKind};
use molcodec::testdata::sample_corpus;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn explicit_five_cut_tsis_reproduces_the_reference_fragments_in_order() {
    let g = parse_smiles(REF_SMILES, false).unwrap();
    let cuts = find_cut_bonds(&g, &CutRule::Explicit(REF_CUTS.to_vec())).unwrap();
    assert_eq!(cuts.bond_refs.len(), 5);

    let enc = encode_tsis(&g, &cuts).unwrap();
    assert_eq!(enc.fragment_count, 6);
    let frags: Vec<&str> = enc.text.split('^').collect();

    // Attachment ids are assigned by sorted bond endpoints, which maps the
    // reference numbering through a 1<->5 swap.
    let expected = [
        "[1*]CCCC",
        "[5*]=C(C)C1C([1*])C(=O)N1[2*]",
        "[5*]=CC1=CC=CC=C1",
        "[2*]C([3*])[4*]",
        "[3*]C1SCCCS1",
        "[4*]C1OC(C)(C)OC1C1COC(C)(C)O1",
    ];
    assert_eq!(frags.len(), expected.len());
    for (got, want) in frags.iter().zip(expected) {
        assert_eq!(canon(got), canon(want), "fragment mismatch: {got} vs {want}");
    }

    let back = decode_tsis(&enc.text).unwrap();
    assert_eq!(canonical_smiles(&back), canon(REF_SMILES));
}

#[test]
fn explicit_five_cut_tsid_has_the_expected_marker_shape() {
    let g = parse_smiles(REF_SMILES, false).unwrap();
    let cuts = find_cut_bonds(&g, &CutRule::Explicit(REF_CUTS.to_vec())).unwrap();
    let enc = encode_tsid(&g, &cuts).unwrap();

    assert_eq!(enc.text.matches('^').count(), 2);
    assert_eq!(enc.text.matches('&').count(), 7);
    let back = decode_tsid(&enc.text).unwrap();
    assert_eq!(canonical_smiles(&back), canon(REF_SMILES));

    // Same fragment multiset as the caret code.
    let tsis = encode_tsis(&g, &cuts).unwrap();
    let mut a: Vec<String> = enc
        .text
        .split(['^', '&'])
        .filter(|s| !s.is_empty())
        .map(canon)
        .collect();
    let mut b: Vec<String> = tsis.text.split('^').map(canon).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn explicit_five_cut_safe_roundtrips_with_five_dots() {
    let g = parse_smiles(REF_SMILES, false).unwrap();
    let cuts = find_cut_bonds(&g, &CutRule::Explicit(REF_CUTS.to_vec())).unwrap();
    let enc = encode_safe(&g, &cuts).unwrap();

    assert_eq!(enc.fragment_count, 6);
    assert_eq!(enc.text.matches('.').count(), 5);
    // Largest fragment (the bis-acetal, 14 heavy atoms) leads. Dot parts keep
    // half-open attachment closures, so count atom tokens instead of parsing.
    let atom_count = |part: &str| {
        tokenize(part, Dialect::Safe)
            .unwrap()
            .iter()
            .filter(|t| matches!(t.kind, TokenKind::Atom | TokenKind::BracketAtom))
            .count()
    };
    assert_eq!(atom_count(enc.text.split('.').next().unwrap()), 14);
    let back = decode_safe(&enc.text).unwrap();
    assert_eq!(canonical_smiles(&back), canon(REF_SMILES));
}

#[test]
fn rule_based_cuts_roundtrip_the_reference_molecule_in_every_dialect() {
    let g = parse_smiles(REF_SMILES, false).unwrap();
    let cuts = find_cut_bonds(&g, &CutRule::ExocyclicSingle).unwrap();
    assert!(!cuts.bond_refs.is_empty());
    let reference = canon(REF_SMILES);
    for dialect in [Dialect::Smiles, Dialect::Tsis, Dialect::Tsid, Dialect::Safe] {
        let enc = encode(&g, &cuts, dialect).unwrap();
        let back = decode(&enc.text, dialect).unwrap();
        assert_eq!(canonical_smiles(&back), reference, "{dialect} roundtrip");
    }
}

#[test]
fn random_explicit_cuts_roundtrip_across_a_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tried = 0usize;
    for line in sample_corpus(100, 11) {
        let g = parse_smiles(&line, false).unwrap();
        // Pick up to two acyclic non-aromatic bonds that survive validation.
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (i, bond) in g.bonds().iter().enumerate() {
            if bond.in_ring || bond.order == BondOrder::Aromatic {
                continue;
            }
            let pair = (bond.a.min(bond.b), bond.a.max(bond.b));
            if find_cut_bonds(&g, &CutRule::Explicit(vec![pair])).is_ok() {
                candidates.push(pair);
                let _ = i;
            }
        }
        candidates.shuffle(&mut rng);
        candidates.truncate(2);
        if candidates.is_empty() {
            continue;
        }
        let cuts = find_cut_bonds(&g, &CutRule::Explicit(candidates)).unwrap();
        let reference = canonical_smiles(&g);
        for dialect in [Dialect::Tsis, Dialect::Tsid, Dialect::Safe] {
            let enc = encode(&g, &cuts, dialect).unwrap();
            let back = decode(&enc.text, dialect).unwrap();
            assert_eq!(canonical_smiles(&back), reference, "{dialect}: {line}");
        }
        tried += 1;
    }
    assert!(tried > 50, "too few cuttable corpus lines: {tried}");
}

#[test]
fn single_cut_fragment_pair_survives_manual_reassembly() {
    let g = parse_smiles("CCOc1ccccc1", false).unwrap();
    let cuts = CutSet {
        bond_refs: find_cut_bonds(&g, &CutRule::ExocyclicSingle)
            .unwrap()
            .bond_refs,
    };
    let set = apply_cuts(&g, &cuts);
    assert_eq!(set.len(), cuts.bond_refs.len() + 1);
    let texts: Vec<String> = set.strings().to_vec();
    let rebuilt = molcodec::codecs::fragment_set_from_strings(texts).unwrap();
    let back = molcodec::codecs::reassemble(&rebuilt).unwrap();
    assert_eq!(canonical_smiles(&back), canonical_smiles(&g));
}
