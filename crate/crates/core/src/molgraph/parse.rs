//! SMILES parser for the supported subset. No valence model: anything that
//! tokenizes, pairs its closures and parentheses, and keeps aromatic atoms
//! on rings is accepted.

use std::collections::BTreeMap;

use thiserror::Error;

use super::element::Element;
use super::graph::{Atom, BondOrder, GraphError, MolGraph};
use super::token::{
    closure_parts, parse_bracket_fields, tokenize, Dialect, TokenKind, TokenizeError,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error(transparent)]
    Lexical(#[from] TokenizeError),
    #[error("input is empty")]
    EmptyInput,
    #[error("unexpected token at position {0}")]
    UnexpectedToken(usize),
    #[error("ring closure {0} never paired")]
    UnmatchedRingClosure(u16),
    #[error("unbalanced parenthesis at position {0}")]
    UnbalancedParenthesis(usize),
    #[error("conflicting bond symbols on ring closure {0}")]
    BondOrderConflict(u16),
    #[error("ring closure {0} connects an atom to itself")]
    SelfClosure(u16),
    #[error("ring closure {0} duplicates an existing bond")]
    DuplicateBond(u16),
    #[error("aromatic atom {0} is not in a ring")]
    AromaticAtomNotInRing(usize),
}

/// Bond spec attached to a closure digit or pending between two atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct BondSpec {
    order: BondOrder,
    stereo_mark: Option<char>,
}

fn bond_spec(symbol: char) -> BondSpec {
    match symbol {
        '-' => BondSpec { order: BondOrder::Single, stereo_mark: None },
        '=' => BondSpec { order: BondOrder::Double, stereo_mark: None },
        '#' => BondSpec { order: BondOrder::Triple, stereo_mark: None },
        ':' => BondSpec { order: BondOrder::Aromatic, stereo_mark: None },
        '/' | '\\' => BondSpec { order: BondOrder::Single, stereo_mark: Some(symbol) },
        _ => unreachable!("tokenizer only produces known bond symbols"),
    }
}

/// Parse a smiles/safe string. `allow_cross_dot_closures` lets a ring number
/// opened before a `.` close after it, which is how attachment-order strings
/// stitch fragments together; plain smiles treats that as an error at the dot.
pub fn parse_smiles(s: &str, allow_cross_dot_closures: bool) -> Result<MolGraph, ParseError> {
    let tokens = tokenize(s, Dialect::Smiles)?;
    if tokens.is_empty() {
        return Err(ParseError::EmptyInput);
    }

    let mut g = MolGraph::new();
    // Bonds are created with a placeholder order when the input leaves the
    // symbol out; they are resolved after ring perception.
    let mut unspecified: Vec<usize> = Vec::new();
    let mut prev: Option<usize> = None;
    let mut pending: Option<(BondSpec, usize)> = None;
    let mut paren_stack: Vec<(usize, usize)> = Vec::new(); // (saved prev, position)
    let mut open: BTreeMap<u16, (usize, Option<char>, usize)> = BTreeMap::new();

    let add_atom = |g: &mut MolGraph,
                        atom: Atom,
                        prev: &mut Option<usize>,
                        pending: &mut Option<(BondSpec, usize)>,
                        unspecified: &mut Vec<usize>|
     -> Result<(), ParseError> {
        let idx = g.add_atom(atom);
        if let Some(p) = *prev {
            let spec = pending.take();
            let (order, mark, fixed) = match spec {
                Some((bs, _)) => (bs.order, bs.stereo_mark, true),
                None => (BondOrder::Single, None, false),
            };
            let bidx = g
                .add_bond(p, idx, order, mark)
                .expect("fresh atom cannot duplicate a bond");
            if !fixed {
                unspecified.push(bidx);
            }
        } else if let Some((_, pos)) = *pending {
            return Err(ParseError::UnexpectedToken(pos));
        }
        *prev = Some(idx);
        Ok(())
    };

    for token in &tokens {
        match token.kind {
            TokenKind::Atom => {
                let text = token.text.as_str();
                let aromatic = text.chars().next().unwrap().is_ascii_lowercase();
                let element = if text == "*" {
                    Element::Star
                } else if aromatic {
                    Element::from_symbol(&text.to_ascii_uppercase())
                        .expect("tokenizer only passes known symbols")
                } else {
                    Element::from_symbol(text).expect("tokenizer only passes known symbols")
                };
                let mut atom = Atom::new(element);
                atom.aromatic = aromatic;
                add_atom(&mut g, atom, &mut prev, &mut pending, &mut unspecified)?;
            }
            TokenKind::BracketAtom => {
                let fields = parse_bracket_fields(&token.text, token.position)
                    .expect("tokenizer validated the bracket");
                let atom = Atom {
                    element: fields.element,
                    aromatic: fields.aromatic,
                    formal_charge: fields.charge,
                    isotope_or_attach_id: fields.isotope,
                    explicit_h: Some(fields.explicit_h),
                    chirality: fields.chirality,
                    in_ring: false,
                };
                add_atom(&mut g, atom, &mut prev, &mut pending, &mut unspecified)?;
            }
            TokenKind::Bond => {
                if pending.is_some() || prev.is_none() {
                    return Err(ParseError::UnexpectedToken(token.position));
                }
                let symbol = token.text.chars().next().unwrap();
                pending = Some((bond_spec(symbol), token.position));
            }
            TokenKind::RingClosure => {
                let here = match prev {
                    Some(p) => p,
                    None => return Err(ParseError::UnexpectedToken(token.position)),
                };
                if pending.is_some() {
                    return Err(ParseError::UnexpectedToken(token.position));
                }
                let (symbol, number) = closure_parts(&token.text);
                match open.remove(&number) {
                    None => {
                        open.insert(number, (here, symbol, token.position));
                    }
                    Some((other, other_symbol, _)) => {
                        if other == here {
                            return Err(ParseError::SelfClosure(number));
                        }
                        let spec = match (other_symbol, symbol) {
                            (None, None) => None,
                            (Some(a), None) => Some(bond_spec(a)),
                            (None, Some(b)) => Some(bond_spec(b)),
                            (Some(a), Some(b)) => {
                                let (sa, sb) = (bond_spec(a), bond_spec(b));
                                if sa.order != sb.order {
                                    return Err(ParseError::BondOrderConflict(number));
                                }
                                Some(sa)
                            }
                        };
                        let (order, mark, fixed) = match spec {
                            Some(bs) => (bs.order, bs.stereo_mark, true),
                            None => (BondOrder::Single, None, false),
                        };
                        match g.add_bond(other, here, order, mark) {
                            Ok(bidx) => {
                                if !fixed {
                                    unspecified.push(bidx);
                                }
                            }
                            Err(GraphError::DuplicateBond(..)) => {
                                return Err(ParseError::DuplicateBond(number));
                            }
                            Err(GraphError::SelfBond(..)) => {
                                return Err(ParseError::SelfClosure(number));
                            }
                        }
                    }
                }
            }
            TokenKind::OpenParen => {
                let p = match prev {
                    Some(p) => p,
                    None => return Err(ParseError::UnexpectedToken(token.position)),
                };
                if pending.is_some() {
                    return Err(ParseError::UnexpectedToken(token.position));
                }
                paren_stack.push((p, token.position));
            }
            TokenKind::CloseParen => {
                if pending.is_some() {
                    return Err(ParseError::UnexpectedToken(token.position));
                }
                match paren_stack.pop() {
                    Some((saved, _)) => prev = Some(saved),
                    None => return Err(ParseError::UnbalancedParenthesis(token.position)),
                }
            }
            TokenKind::Dot => {
                if pending.is_some() || prev.is_none() {
                    return Err(ParseError::UnexpectedToken(token.position));
                }
                if !allow_cross_dot_closures {
                    if let Some((&number, _)) = open.iter().next() {
                        return Err(ParseError::UnmatchedRingClosure(number));
                    }
                }
                prev = None;
            }
            TokenKind::AmpSep | TokenKind::CaretSep => {
                unreachable!("smiles dialect rejects separators at tokenize time")
            }
        }
    }

    if let Some((_, pos)) = pending {
        return Err(ParseError::UnexpectedToken(pos));
    }
    if prev.is_none() {
        // the string ended with a dot
        let last = tokens.last().unwrap();
        return Err(ParseError::UnexpectedToken(last.position));
    }
    if let Some(&(_, pos)) = paren_stack.first() {
        return Err(ParseError::UnbalancedParenthesis(pos));
    }
    if let Some((&number, _)) = open.iter().next() {
        return Err(ParseError::UnmatchedRingClosure(number));
    }

    g.perceive_rings();
    for bidx in unspecified {
        let (a, b) = (g.bonds[bidx].a, g.bonds[bidx].b);
        if g.atoms[a].aromatic && g.atoms[b].aromatic && g.bonds[bidx].in_ring {
            g.bonds[bidx].order = BondOrder::Aromatic;
        }
    }
    g.kekule_normalize();
    for (i, atom) in g.atoms().iter().enumerate() {
        if atom.aromatic && !atom.in_ring {
            return Err(ParseError::AromaticAtomNotInRing(i));
        }
    }
    Ok(g)
}
