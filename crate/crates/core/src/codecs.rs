//! The three fragment codecs and their shared reassembler.
//!
//! - caret code: fragments in attachment-tree BFS order, joined by `^`,
//!   connectivity carried entirely by `[n*]` IDs;
//! - marker code: binary-tree BFS where `&` marks an empty leaf and `^`
//!   separates adjacent fragments;
//! - dot code: size-sorted fragments joined by `.`, attachments rendered as
//!   extra ring-closure digits readable by a cross-dot SMILES parse.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::amtree::{amt_bfs, amt_to_fbt, build_amt, fbt_bfs, AmtError};
use crate::fragmenter::{apply_cuts, CutSet, FragmentSet};
use crate::molgraph::{
    canonical_smiles, parse_smiles, write_safe_fragment, write_smiles, Atom, BondOrder, Dialect,
    MolGraph, ParseError, SafeRender,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedString {
    pub text: String,
    pub dialect: Dialect,
    pub fragment_count: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error(transparent)]
    Tree(#[from] AmtError),
    #[error("ring-closure numbers exhausted")]
    ClosureNumberExhausted,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("fragment {index} does not parse: {cause}")]
    FragmentParseError { index: usize, cause: ParseError },
    #[error("attachment ID {id} appears {count} times, expected 2")]
    UnpairedAttachment { id: u32, count: usize },
    #[error("attachment dummy for ID {0} must have exactly one neighbor")]
    AttachmentDegree(u32),
    #[error("attachment {0} carries conflicting bond orders")]
    BondOrderConflict(u32),
    #[error("attachment {0} would bond an atom to itself")]
    SelfBond(u32),
    #[error("attachment {0} duplicates an existing bond")]
    DuplicateBond(u32),
    #[error("result splits into {0} components")]
    DisconnectedResult(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub fn encode_tsis(g: &MolGraph, cuts: &CutSet) -> Result<EncodedString, EncodeError> {
    let fs = apply_cuts(g, cuts);
    let order = amt_bfs(&build_amt(&fs)?);
    let parts: Vec<&str> = order.iter().map(|&i| fs.strings()[i].as_str()).collect();
    Ok(EncodedString {
        text: parts.join("^"),
        dialect: Dialect::Tsis,
        fragment_count: fs.len(),
    })
}

pub fn encode_tsid(g: &MolGraph, cuts: &CutSet) -> Result<EncodedString, EncodeError> {
    let fs = apply_cuts(g, cuts);
    let emission = fbt_bfs(&amt_to_fbt(&build_amt(&fs)?));
    let mut text = String::new();
    let mut prev_was_fragment = false;
    for node in emission {
        match node {
            Some(i) => {
                if prev_was_fragment {
                    text.push('^');
                }
                text.push_str(&fs.strings()[i]);
                prev_was_fragment = true;
            }
            None => {
                text.push('&');
                prev_was_fragment = false;
            }
        }
    }
    Ok(EncodedString {
        text,
        dialect: Dialect::Tsid,
        fragment_count: fs.len(),
    })
}

pub fn encode_safe(g: &MolGraph, cuts: &CutSet) -> Result<EncodedString, EncodeError> {
    let fs = apply_cuts(g, cuts);
    let mut order: Vec<usize> = (0..fs.len()).collect();
    let sort_key: Vec<(Reverse<usize>, String)> = fs
        .fragments()
        .iter()
        .map(|f| (Reverse(f.heavy_atom_count()), canonical_smiles(f)))
        .collect();
    order.sort_by(|&a, &b| sort_key[a].cmp(&sort_key[b]));

    // Dry run: internal ring digits per fragment and the order in which
    // attachment IDs will first be emitted.
    let mut internal_digits = BTreeSet::new();
    let mut id_order: Vec<u32> = Vec::new();
    for &i in &order {
        let dry = write_safe_fragment(&fs.fragments()[i], &SafeRender::default())
            .map_err(|_| EncodeError::ClosureNumberExhausted)?;
        internal_digits.extend(dry.used_digits);
        for id in dry.attach_order {
            if !id_order.contains(&id) {
                id_order.push(id);
            }
        }
    }

    // Attachment digits: smallest numbers unused anywhere in the output,
    // granted in first-emission order.
    let mut render = SafeRender::default();
    for id in id_order {
        let digit = (1..=99u16)
            .find(|d| !internal_digits.contains(d) && !render.banned.contains(d))
            .ok_or(EncodeError::ClosureNumberExhausted)?;
        render.digits.insert(id, digit);
        render.banned.insert(digit);
    }

    let mut parts = Vec::with_capacity(order.len());
    for &i in &order {
        let rendered = write_safe_fragment(&fs.fragments()[i], &render)
            .map_err(|_| EncodeError::ClosureNumberExhausted)?;
        parts.extend(rendered.components);
    }
    Ok(EncodedString {
        text: parts.join("."),
        dialect: Dialect::Safe,
        fragment_count: fs.len(),
    })
}

/// Split a separator-delimited string into trimmed fragment texts.
fn fragment_texts(s: &str) -> Vec<String> {
    s.split(['^', '&'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(String::from)
        .collect()
}

pub fn decode_tsis(s: &str) -> Result<MolGraph, DecodeError> {
    reassemble(&fragment_set_from_strings(fragment_texts(s))?)
}

/// Tree markers carry no connectivity — `&` and `^` are both treated as
/// fragment boundaries and attachment is driven entirely by the IDs.
pub fn decode_tsid(s: &str) -> Result<MolGraph, DecodeError> {
    decode_tsis(s)
}

pub fn decode_safe(s: &str) -> Result<MolGraph, DecodeError> {
    let g = parse_smiles(s, true)?;
    match g.components() {
        1 => Ok(g),
        n => Err(DecodeError::DisconnectedResult(n)),
    }
}

/// Parse fragment strings and pair their dummies into a FragmentSet.
pub fn fragment_set_from_strings(strings: Vec<String>) -> Result<FragmentSet, DecodeError> {
    if strings.is_empty() {
        return Err(DecodeError::FragmentParseError {
            index: 0,
            cause: ParseError::EmptyInput,
        });
    }
    let mut fragments = Vec::with_capacity(strings.len());
    for (index, s) in strings.iter().enumerate() {
        let g = parse_smiles(s, false)
            .map_err(|cause| DecodeError::FragmentParseError { index, cause })?;
        fragments.push(g);
    }

    let mut locations: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (fi, frag) in fragments.iter().enumerate() {
        for (ai, atom) in frag.atoms().iter().enumerate() {
            if let Some(id) = atom.attach_id() {
                locations.entry(id).or_default().push((fi, ai));
            }
        }
    }

    let mut attach_pairs = BTreeMap::new();
    let mut bond_order_of = BTreeMap::new();
    for (id, places) in locations {
        if places.len() != 2 {
            return Err(DecodeError::UnpairedAttachment { id, count: places.len() });
        }
        let mut orders = [BondOrder::Single; 2];
        for (slot, &(fi, ai)) in places.iter().enumerate() {
            let frag = &fragments[fi];
            if frag.degree(ai) != 1 {
                return Err(DecodeError::AttachmentDegree(id));
            }
            orders[slot] = frag.bond(frag.neighbors(ai)[0].1).order;
        }
        if orders[0] != orders[1] {
            return Err(DecodeError::BondOrderConflict(id));
        }
        attach_pairs.insert(id, [places[0], places[1]]);
        bond_order_of.insert(id, orders[0]);
    }
    Ok(FragmentSet {
        fragments,
        strings,
        attach_pairs,
        bond_order_of,
    })
}

/// Delete every dummy pair and bond the two neighbor atoms with the pair's
/// order. IDs are processed in ascending order on the live graph, so chains
/// of directly-bonded dummies resolve without special cases.
pub fn reassemble(fs: &FragmentSet) -> Result<MolGraph, DecodeError> {
    // union graph in fragment order
    let mut atoms: Vec<Atom> = Vec::new();
    let mut offsets = Vec::with_capacity(fs.len());
    for frag in fs.fragments() {
        offsets.push(atoms.len());
        atoms.extend(frag.atoms().iter().cloned());
    }
    #[derive(Clone)]
    struct Edge {
        a: usize,
        b: usize,
        order: BondOrder,
        stereo_mark: Option<char>,
        live: bool,
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut live_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edge_of_atom: Vec<Vec<usize>> = vec![Vec::new(); atoms.len()];
    let push_edge =
        |edges: &mut Vec<Edge>, edge_of_atom: &mut Vec<Vec<usize>>, e: Edge| -> usize {
            let idx = edges.len();
            edge_of_atom[e.a].push(idx);
            edge_of_atom[e.b].push(idx);
            edges.push(e);
            idx
        };
    for (fi, frag) in fs.fragments().iter().enumerate() {
        for b in frag.bonds() {
            let e = Edge {
                a: offsets[fi] + b.a,
                b: offsets[fi] + b.b,
                order: b.order,
                stereo_mark: b.stereo_mark,
                live: true,
            };
            live_pairs.insert((e.a.min(e.b), e.a.max(e.b)));
            push_edge(&mut edges, &mut edge_of_atom, e);
        }
    }

    let sole_live_edge = |edges: &Vec<Edge>, edge_of_atom: &Vec<Vec<usize>>, atom: usize| {
        let mut found = None;
        for &ei in &edge_of_atom[atom] {
            if edges[ei].live {
                if found.is_some() {
                    return None; // more than one
                }
                found = Some(ei);
            }
        }
        found
    };

    for (&id, &[(fa, da), (fb, db)]) in fs.attach_pairs() {
        let ga = offsets[fa] + da;
        let gb = offsets[fb] + db;
        let ea = sole_live_edge(&edges, &edge_of_atom, ga).ok_or(DecodeError::AttachmentDegree(id))?;
        let eb = sole_live_edge(&edges, &edge_of_atom, gb).ok_or(DecodeError::AttachmentDegree(id))?;
        let order = fs.bond_order_of()[&id];
        let na = if edges[ea].a == ga { edges[ea].b } else { edges[ea].a };
        let nb = if edges[eb].a == gb { edges[eb].b } else { edges[eb].a };

        edges[ea].live = false;
        live_pairs.remove(&(edges[ea].a.min(edges[ea].b), edges[ea].a.max(edges[ea].b)));
        if eb != ea {
            edges[eb].live = false;
            live_pairs.remove(&(edges[eb].a.min(edges[eb].b), edges[eb].a.max(edges[eb].b)));
        }
        if na == gb {
            // the pair's dummies were bonded to each other; nothing to join
            continue;
        }
        if na == nb {
            return Err(DecodeError::SelfBond(id));
        }
        if !live_pairs.insert((na.min(nb), na.max(nb))) {
            return Err(DecodeError::DuplicateBond(id));
        }
        push_edge(
            &mut edges,
            &mut edge_of_atom,
            Edge { a: na, b: nb, order, stereo_mark: None, live: true },
        );
    }

    // rebuild without the (now isolated) dummies
    let mut keep = vec![usize::MAX; atoms.len()];
    let mut g = MolGraph::new();
    for (i, atom) in atoms.iter().enumerate() {
        if !atom.is_dummy() {
            let mut atom = atom.clone();
            atom.in_ring = false;
            keep[i] = g.add_atom(atom);
        }
    }
    for e in edges.iter().filter(|e| e.live) {
        debug_assert!(keep[e.a] != usize::MAX && keep[e.b] != usize::MAX);
        g.add_bond(keep[e.a], keep[e.b], e.order, e.stereo_mark)
            .expect("live pairs are unique");
    }
    g.perceive_rings();
    g.kekule_normalize();
    match g.components() {
        1 => Ok(g),
        n => Err(DecodeError::DisconnectedResult(n)),
    }
}

/// Dialect dispatch for corpus-level callers. Plain SMILES is the identity
/// codec: no cutting on encode, a plain parse on decode.
pub fn encode(g: &MolGraph, cuts: &CutSet, dialect: Dialect) -> Result<EncodedString, EncodeError> {
    match dialect {
        Dialect::Smiles => Ok(EncodedString {
            text: write_smiles(g),
            dialect,
            fragment_count: 1,
        }),
        Dialect::Tsis => encode_tsis(g, cuts),
        Dialect::Tsid => encode_tsid(g, cuts),
        Dialect::Safe => encode_safe(g, cuts),
    }
}

pub fn decode(s: &str, dialect: Dialect) -> Result<MolGraph, DecodeError> {
    match dialect {
        Dialect::Smiles => {
            let g = parse_smiles(s, false)?;
            match g.components() {
                1 => Ok(g),
                n => Err(DecodeError::DisconnectedResult(n)),
            }
        }
        Dialect::Tsis | Dialect::Tsid => decode_tsis(s),
        Dialect::Safe => decode_safe(s),
    }
}
