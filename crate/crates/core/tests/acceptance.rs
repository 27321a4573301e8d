//! End-to-end gate: each test exercises one release criterion and prints a
//! single PASS line with its measured wall time. Timing bounds are part of
//! the criteria, so they are asserted, not just reported.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use itertools::Itertools;
use molcodec::analysis::{dependency_profile, validate_pairs};
use molcodec::bench::{sample, train_ngram, Corpus};
use molcodec::codecs::{decode, decode_safe, decode_tsid, decode_tsis, encode, encode_tsis};
use molcodec::fragmenter::{find_cut_bonds, CutRule};
use molcodec::molgraph::{canonical_smiles, parse_smiles, Dialect};
use molcodec::testdata::sample_corpus;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn criterion_1_every_dialect_fixture_decodes_to_one_canonical_form() {
    let t = Instant::now();
    let reference = canon(REF_SMILES);
    assert_eq!(canonical_smiles(&decode_tsis(REF_TSIS).unwrap()), reference);
    assert_eq!(canonical_smiles(&decode_tsid(REF_TSID).unwrap()), reference);
    assert_eq!(canonical_smiles(&decode_safe(REF_SAFE).unwrap()), reference);
    let elapsed = t.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "fixture decoding took {elapsed:.3}s");
    println!("PASS criterion 1: caret, marker, and dot fixtures all decode to one canonical form ({elapsed:.3}s)");
}

#[test]
fn criterion_2_validator_pinpoints_the_known_defects() {
    let r1 = validate_pairs(BAD_SAFE_1, Dialect::Safe);
    assert!(!r1.balanced);
    assert!(
        r1.unpaired_ring_numbers.contains(&"3".to_string()),
        "first fixture must report ring number 3, got {:?}",
        r1.unpaired_ring_numbers
    );

    let r2 = validate_pairs(BAD_SAFE_2, Dialect::Safe);
    assert!(!r2.balanced);
    let mut set2: BTreeSet<String> = r2.unpaired_ring_numbers.iter().cloned().collect();
    set2.extend(r2.unpaired_parens.iter().map(|&(_, c)| c.to_string()));
    let want2: BTreeSet<String> = [")", "2", "3"].iter().map(|s| s.to_string()).collect();
    assert_eq!(set2, want2);

    let r3 = validate_pairs(BAD_SAFE_3, Dialect::Safe);
    assert!(!r3.balanced);
    assert!(r3.unpaired_parens.is_empty());
    let set3: BTreeSet<String> = r3.unpaired_ring_numbers.iter().cloned().collect();
    let want3: BTreeSet<String> = ["%18", "%10", "7", "8"].iter().map(|s| s.to_string()).collect();
    assert_eq!(set3, want3);

    println!("PASS criterion 2: validator reports exactly the planted defects in all three fixtures");
}

#[test]
fn criterion_3_profile_lengths_match_the_fixture_strings() {
    let p_smiles = dependency_profile(REF_SMILES, Dialect::Smiles);
    assert_eq!(p_smiles.string_length, 67);
    let p_safe = dependency_profile(REF_SAFE, Dialect::Safe);
    assert_eq!(p_safe.string_length, 77);
    println!("PASS criterion 3: profiled string lengths are 67 and 77");
}

#[test]
fn criterion_4_corpus_roundtrips_without_a_single_failure() {
    let t = Instant::now();
    let lines = sample_corpus(500, 4242);
    let mut failures = Vec::new();
    for line in &lines {
        let g = parse_smiles(line, false).unwrap();
        let reference = canonical_smiles(&g);
        let cuts = find_cut_bonds(&g, &CutRule::ExocyclicSingle).unwrap();
        for dialect in [Dialect::Tsis, Dialect::Tsid, Dialect::Safe] {
            let outcome = encode(&g, &cuts, dialect)
                .map_err(|e| e.to_string())
                .and_then(|enc| decode(&enc.text, dialect).map_err(|e| e.to_string()))
                .map(|back| canonical_smiles(&back));
            match outcome {
                Ok(c) if c == reference => {}
                Ok(c) => failures.push(format!("{dialect} {line}: got {c}")),
                Err(e) => failures.push(format!("{dialect} {line}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{} failures: {:#?}", failures.len(), failures);
    let elapsed = t.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "roundtrips took {elapsed:.1}s");
    println!(
        "PASS criterion 4: {} molecules x 3 dialects round-tripped with 0 failures ({elapsed:.2}s)",
        lines.len()
    );
}

#[test]
fn criterion_5_canonical_form_is_stable_under_atom_permutation() {
    let lines = sample_corpus(100, 31);
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    for line in &lines {
        let g = parse_smiles(line, false).unwrap();
        let mut forms = BTreeSet::new();
        forms.insert(canonical_smiles(&g));
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..g.atoms().len()).collect();
            perm.shuffle(&mut rng);
            forms.insert(canonical_smiles(&g.permute_atoms(&perm)));
        }
        assert_eq!(forms.len(), 1, "canonical form diverged for {line}: {forms:?}");
    }
    println!("PASS criterion 5: 100 molecules x 20 atom orders each collapse to one canonical form");
}

#[test]
fn criterion_6_encoder_output_is_structurally_clean() {
    let lines = sample_corpus(500, 4242);
    for line in &lines {
        let g = parse_smiles(line, false).unwrap();
        let cuts = find_cut_bonds(&g, &CutRule::ExocyclicSingle).unwrap();

        let tsis = encode(&g, &cuts, Dialect::Tsis).unwrap();
        assert_eq!(tsis.text.matches('^').count(), tsis.fragment_count - 1, "{line}");
        assert_eq!(tsis.text.matches('&').count(), 0, "{line}");

        let tsid = encode(&g, &cuts, Dialect::Tsid).unwrap();
        for (enc, dialect) in [(&tsis, Dialect::Tsis), (&tsid, Dialect::Tsid)] {
            let report = validate_pairs(&enc.text, dialect);
            assert!(report.balanced, "{dialect} {line}: {report:?}");
            assert!(report.unpaired_attach_ids.is_empty(), "{dialect} {line}");
            let profile = dependency_profile(&enc.text, dialect);
            assert_eq!(profile.ring_closure.cross_fragment_pairs, 0, "{dialect} {line}");
            assert_eq!(profile.parenthesis.cross_fragment_pairs, 0, "{dialect} {line}");
        }
    }
    println!(
        "PASS criterion 6: caret/marker output for {} molecules has exact separators, paired ids, and no cross-fragment pairs",
        lines.len()
    );
}

#[test]
fn criterion_7_fragment_order_never_changes_the_decoded_molecule() {
    let t = Instant::now();
    let reference = canon(REF_SMILES);
    let frags: Vec<&str> = REF_TSIS.split('^').collect();
    assert_eq!(frags.len(), 6);
    let mut forms = BTreeSet::new();
    let mut count = 0usize;
    for perm in frags.iter().permutations(frags.len()) {
        let text = perm.iter().map(|s| **s).collect::<Vec<_>>().join("^");
        forms.insert(canonical_smiles(&decode_tsis(&text).unwrap()));
        count += 1;
    }
    assert_eq!(count, 720);
    assert_eq!(forms.len(), 1);
    assert_eq!(forms.into_iter().next().unwrap(), reference);
    let elapsed = t.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "permutation sweep took {elapsed:.1}s");
    println!("PASS criterion 7: all 720 fragment orders decode to the same canonical form ({elapsed:.2}s)");
}

#[test]
fn criterion_8_generation_benchmark_is_sane_and_reproducible() {
    let t = Instant::now();
    const SAMPLE_SEED: u64 = 7;

    let lines = sample_corpus(10_000, 99);
    let tsis_lines: Vec<String> = lines
        .iter()
        .map(|line| {
            let g = parse_smiles(line, false).unwrap();
            let cuts = find_cut_bonds(&g, &CutRule::ExocyclicSingle).unwrap();
            encode_tsis(&g, &cuts).unwrap().text
        })
        .collect();
    let train = Corpus::from_lines(tsis_lines.clone(), Dialect::Tsis).unwrap();
    assert_eq!(train.skipped, 0);
    let model = train_ngram(&train, 5, 0.0).unwrap();

    let run = || {
        let gen = sample(&model, 1000, 200, SAMPLE_SEED);
        let mut report = molcodec::bench::evaluate(&gen, &train, Dialect::Tsis).unwrap();
        report.seed = Some(SAMPLE_SEED);
        serde_json::to_string(&report).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "benchmark is not reproducible");

    let report: molcodec::bench::BenchmarkReport = serde_json::from_str(&first).unwrap();
    assert!(report.novelty >= 0.0);
    assert!(report.novelty <= report.unique + 1e-12);
    assert!(report.unique <= report.valid + 1e-12);
    assert!(report.valid <= 1.0);
    assert_eq!(report.sample_count, 1000);

    // Identical generation and training sets must show no divergence.
    let sub: Vec<String> = tsis_lines.iter().take(1000).cloned().collect();
    let sub_corpus = Corpus::from_lines(sub.clone(), Dialect::Tsis).unwrap();
    let identical = molcodec::bench::evaluate(&sub, &sub_corpus, Dialect::Tsis).unwrap();
    for (name, d) in &identical.kld {
        assert!(*d < 1e-9, "{name} diverged on identical sets: {d}");
    }

    let elapsed = t.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "benchmark pipeline took {elapsed:.1}s");
    println!(
        "PASS criterion 8: 10k-line pipeline gives valid={:.3} unique={:.3} novelty={:.3}, byte-identical reruns, zero self-divergence ({elapsed:.1}s)",
        report.valid, report.unique, report.novelty
    );
}
