//! Pairing diagnostics and dependency-span statistics for encoded strings.
//!
//! Everything here is lexical: strings are tokenized, never parsed into
//! graphs, so broken strings — the main use case — still produce output.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::molgraph::{dummy_attach_id, tokenize_prefix, Dialect, TokenKind};

/// Which symbols failed to pair, and where.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub balanced: bool,
    /// Closure labels ("3", "%18") with at least one unpaired occurrence,
    /// in order of first unpaired occurrence.
    pub unpaired_ring_numbers: Vec<String>,
    /// (position, which paren) for every '(' or ')' without a partner.
    pub unpaired_parens: Vec<(usize, char)>,
    /// Closure labels whose total occurrence count is odd, with the count.
    pub odd_count_labels: Vec<(String, usize)>,
    /// Attachment IDs occurring a number of times other than two.
    pub unpaired_attach_ids: Vec<u32>,
    /// Character position where tokenization failed, if it did.
    pub lexical_error_position: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CategoryProfile {
    pub pair_count: usize,
    /// Character distance between a pair's two occurrences.
    pub mean_span: f64,
    pub max_span: usize,
    /// Same distances counted in tokens rather than characters.
    pub mean_token_span: f64,
    pub max_token_span: usize,
    /// Pairs with a fragment separator strictly between the occurrences.
    pub cross_fragment_pairs: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DependencyProfile {
    pub string_length: usize,
    pub ring_closure: CategoryProfile,
    pub parenthesis: CategoryProfile,
    pub attach_id: CategoryProfile,
    pub cross_fragment_pairs: usize,
}

/// A matched pair: token indices and character positions of both ends.
#[derive(Debug, Clone, Copy)]
struct PairEvent {
    open_tok: usize,
    close_tok: usize,
    open_pos: usize,
    close_pos: usize,
}

struct Analysis {
    report: PairReport,
    ring_pairs: Vec<PairEvent>,
    paren_pairs: Vec<PairEvent>,
    attach_pairs: Vec<PairEvent>,
    /// Token indices of fragment separators (dialect-dependent).
    separators: Vec<usize>,
}

/// A closure token's display label: the number with any bond prefix
/// stripped, `%` form preserved.
fn closure_label(text: &str) -> String {
    let rest = text.trim_start_matches(['-', '=', '#', ':', '/', '\\']);
    rest.to_string()
}

fn analyze(s: &str, dialect: Dialect) -> Analysis {
    let (tokens, lexical) = tokenize_prefix(s, dialect);
    let cross_dot = dialect.cross_dot_closures();

    let mut ring_pairs = Vec::new();
    let mut paren_pairs = Vec::new();
    let mut attach_pairs = Vec::new();
    let mut separators = Vec::new();

    // label -> open (token index, position); reused after each pairing
    let mut open_rings: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut ring_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut unpaired_rings: Vec<(String, usize)> = Vec::new();
    let mut paren_stack: Vec<(usize, usize)> = Vec::new();
    let mut unpaired_parens: Vec<(usize, char)> = Vec::new();
    let mut attach_seen: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();

    let flush_rings = |open_rings: &mut BTreeMap<String, (usize, usize)>,
                           unpaired_rings: &mut Vec<(String, usize)>| {
        for (label, (_, pos)) in std::mem::take(open_rings) {
            unpaired_rings.push((label, pos));
        }
    };

    for (ti, tok) in tokens.iter().enumerate() {
        match tok.kind {
            TokenKind::RingClosure => {
                let label = closure_label(&tok.text);
                *ring_counts.entry(label.clone()).or_insert(0) += 1;
                if let Some((open_tok, open_pos)) = open_rings.remove(&label) {
                    ring_pairs.push(PairEvent {
                        open_tok,
                        close_tok: ti,
                        open_pos,
                        close_pos: tok.position,
                    });
                } else {
                    open_rings.insert(label, (ti, tok.position));
                }
            }
            TokenKind::OpenParen => paren_stack.push((ti, tok.position)),
            TokenKind::CloseParen => {
                if let Some((open_tok, open_pos)) = paren_stack.pop() {
                    paren_pairs.push(PairEvent {
                        open_tok,
                        close_tok: ti,
                        open_pos,
                        close_pos: tok.position,
                    });
                } else {
                    unpaired_parens.push((tok.position, ')'));
                }
            }
            TokenKind::BracketAtom => {
                if dialect.has_separators() {
                    if let Some(id) = dummy_attach_id(&tok.text) {
                        attach_seen.entry(id).or_default().push((ti, tok.position));
                    }
                }
            }
            TokenKind::Dot => {
                if !cross_dot {
                    flush_rings(&mut open_rings, &mut unpaired_rings);
                }
                if cross_dot {
                    separators.push(ti);
                }
            }
            TokenKind::CaretSep | TokenKind::AmpSep => {
                flush_rings(&mut open_rings, &mut unpaired_rings);
                for (_, pos) in paren_stack.drain(..) {
                    unpaired_parens.push((pos, '('));
                }
                separators.push(ti);
            }
            _ => {}
        }
    }
    flush_rings(&mut open_rings, &mut unpaired_rings);
    for (_, pos) in paren_stack.drain(..) {
        unpaired_parens.push((pos, '('));
    }
    unpaired_parens.sort();

    let mut unpaired_attach_ids = Vec::new();
    for (&id, places) in &attach_seen {
        if places.len() == 2 {
            attach_pairs.push(PairEvent {
                open_tok: places[0].0,
                close_tok: places[1].0,
                open_pos: places[0].1,
                close_pos: places[1].1,
            });
        } else {
            unpaired_attach_ids.push(id);
        }
    }

    unpaired_rings.sort_by_key(|&(_, pos)| pos);
    let mut unpaired_ring_numbers = Vec::new();
    for (label, _) in &unpaired_rings {
        if !unpaired_ring_numbers.contains(label) {
            unpaired_ring_numbers.push(label.clone());
        }
    }
    let odd_count_labels: Vec<(String, usize)> = ring_counts
        .into_iter()
        .filter(|&(_, n)| n % 2 == 1)
        .collect();

    let balanced = lexical.is_none()
        && unpaired_ring_numbers.is_empty()
        && unpaired_parens.is_empty()
        && odd_count_labels.is_empty()
        && unpaired_attach_ids.is_empty();
    Analysis {
        report: PairReport {
            balanced,
            unpaired_ring_numbers,
            unpaired_parens,
            odd_count_labels,
            unpaired_attach_ids,
            lexical_error_position: lexical.map(|e| e.position()),
        },
        ring_pairs,
        paren_pairs,
        attach_pairs,
        separators,
    }
}

pub fn validate_pairs(s: &str, dialect: Dialect) -> PairReport {
    analyze(s, dialect).report
}

fn category(pairs: &[PairEvent], separators: &[usize]) -> CategoryProfile {
    if pairs.is_empty() {
        return CategoryProfile::default();
    }
    let mut span_sum = 0usize;
    let mut tok_sum = 0usize;
    let mut max_span = 0usize;
    let mut max_tok = 0usize;
    let mut cross = 0usize;
    for p in pairs {
        let span = p.close_pos - p.open_pos;
        let tok = p.close_tok - p.open_tok;
        span_sum += span;
        tok_sum += tok;
        max_span = max_span.max(span);
        max_tok = max_tok.max(tok);
        let lo = separators.partition_point(|&s| s < p.open_tok);
        if separators[lo..].iter().take_while(|&&s| s < p.close_tok).next().is_some() {
            cross += 1;
        }
    }
    CategoryProfile {
        pair_count: pairs.len(),
        mean_span: span_sum as f64 / pairs.len() as f64,
        max_span,
        mean_token_span: tok_sum as f64 / pairs.len() as f64,
        max_token_span: max_tok,
        cross_fragment_pairs: cross,
    }
}

pub fn dependency_profile(s: &str, dialect: Dialect) -> DependencyProfile {
    let a = analyze(s, dialect);
    let ring_closure = category(&a.ring_pairs, &a.separators);
    let parenthesis = category(&a.paren_pairs, &a.separators);
    let attach_id = category(&a.attach_pairs, &a.separators);
    let cross_fragment_pairs = ring_closure.cross_fragment_pairs
        + parenthesis.cross_fragment_pairs
        + attach_id.cross_fragment_pairs;
    DependencyProfile {
        string_length: s.chars().count(),
        ring_closure,
        parenthesis,
        attach_id,
        cross_fragment_pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BAD_SAFE_1: &str = "c13cc(F)c(O)c(C2=CCc3c-2c(C)nn2C)c1.CO3";
    const BAD_SAFE_2: &str = "N15CCC3CCC1)CCCO2.Cc1cccc4c15.c16ccc7o1.C36=O.C7(F)F.N34";
    const BAD_SAFE_3: &str =
        "c1%18c[nH]c2cccc12.c17ncc(Cl)c%10n1.N16CCCC9C1.C56=O.CC7.N57.N89";
    const LONG_SMILES: &str =
        "CCCCC1C(=O)N(C(C2SCCCS2)C2OC(C)(C)OC2C2COC(C)(C)O2)C1C(C)=Cc1ccccc1";
    const LONG_SAFE: &str =
        "C16OC(C)(C)OC1C1COC(C)(C)O1.C17C(=O)N4C1C=3C.C=3c1ccccc1.C15SCCCS1.CCCC7.C456";

    fn set(v: &[String]) -> std::collections::BTreeSet<&str> {
        v.iter().map(String::as_str).collect()
    }

    #[test]
    fn balanced_ring_reuse() {
        let r = validate_pairs("C1CC1C1CC1", Dialect::Smiles);
        assert!(r.balanced);
        let r = validate_pairs("C1CC2", Dialect::Smiles);
        assert!(!r.balanced);
        assert_eq!(set(&r.unpaired_ring_numbers), ["1", "2"].into());
    }

    #[test]
    fn first_bad_string_has_three_threes() {
        let r = validate_pairs(BAD_SAFE_1, Dialect::Safe);
        assert!(!r.balanced);
        assert_eq!(set(&r.unpaired_ring_numbers), ["2", "3"].into());
        assert!(r.odd_count_labels.contains(&("3".into(), 3)));
        assert!(r.unpaired_parens.is_empty());
    }

    #[test]
    fn second_bad_string_has_paren_and_two_rings() {
        let r = validate_pairs(BAD_SAFE_2, Dialect::Safe);
        assert_eq!(set(&r.unpaired_ring_numbers), ["2", "3"].into());
        assert_eq!(r.unpaired_parens, vec![(11, ')')]);
    }

    #[test]
    fn third_bad_string_has_percent_labels() {
        let r = validate_pairs(BAD_SAFE_3, Dialect::Safe);
        assert_eq!(set(&r.unpaired_ring_numbers), ["%10", "%18", "7", "8"].into());
        assert!(r.unpaired_parens.is_empty());
    }

    #[test]
    fn dots_block_pairing_outside_safe() {
        assert!(!validate_pairs("C1.C1", Dialect::Smiles).balanced);
        assert!(validate_pairs("C1.C1", Dialect::Safe).balanced);
    }

    #[test]
    fn separators_flush_rings_and_parens() {
        let r = validate_pairs("C1^C1", Dialect::Tsis);
        assert_eq!(set(&r.unpaired_ring_numbers), ["1"].into());
        assert!(r.odd_count_labels.is_empty(), "two occurrences, both unpaired");
        let r = validate_pairs("C(C^CC", Dialect::Tsis);
        assert_eq!(r.unpaired_parens, vec![(1, '(')]);
    }

    #[test]
    fn attach_ids_counted_across_whole_string() {
        assert!(validate_pairs("[1*]C^[1*]c1ccccc1", Dialect::Tsis).balanced);
        let r = validate_pairs("[1*]C^[2*]N[2*]", Dialect::Tsis);
        assert_eq!(r.unpaired_attach_ids, vec![1]);
        // plain * and isotopes never count as attachments
        assert!(validate_pairs("[13C]C[*]", Dialect::Tsis).balanced);
    }

    #[test]
    fn lexical_errors_reported_with_position() {
        let r = validate_pairs("C$C", Dialect::Smiles);
        assert!(!r.balanced);
        assert_eq!(r.lexical_error_position, Some(1));
        assert_eq!(dependency_profile("C$C", Dialect::Smiles).string_length, 3);
    }

    #[test]
    fn triangle_profile() {
        let p = dependency_profile("C1CC1", Dialect::Smiles);
        assert_eq!(p.string_length, 5);
        assert_eq!(p.ring_closure.pair_count, 1);
        assert_eq!(p.ring_closure.max_span, 3);
        assert_eq!(p.ring_closure.mean_span, 3.0);
        assert_eq!(p.ring_closure.max_token_span, 3);
        assert_eq!(p.cross_fragment_pairs, 0);
    }

    #[test]
    fn long_example_lengths_and_spans() {
        assert_eq!(dependency_profile(LONG_SMILES, Dialect::Smiles).string_length, 67);
        let p = dependency_profile(LONG_SAFE, Dialect::Safe);
        assert_eq!(p.string_length, 77);
        assert_eq!(p.ring_closure.pair_count, 10);
        assert_eq!(p.ring_closure.max_span, 74, "the '6' pair reaches across the string");
        assert_eq!(p.ring_closure.cross_fragment_pairs, 5);
        assert!(validate_pairs(LONG_SAFE, Dialect::Safe).balanced);
    }

    #[test]
    fn tsis_output_crosses_fragments_only_via_attach_ids() {
        let p = dependency_profile("[1*]C^[1*]c1ccccc1", Dialect::Tsis);
        assert_eq!(p.attach_id.pair_count, 1);
        assert_eq!(p.attach_id.cross_fragment_pairs, 1);
        assert_eq!(p.ring_closure.cross_fragment_pairs, 0);
        assert_eq!(p.parenthesis.cross_fragment_pairs, 0);
    }

    #[test]
    fn profile_spans_are_positive() {
        let p = dependency_profile("C1CC1", Dialect::Smiles);
        assert!(p.ring_closure.max_span >= 1);
        assert!(p.ring_closure.cross_fragment_pairs <= p.ring_closure.pair_count);
    }
}
