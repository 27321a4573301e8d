//! Bond selection and molecule splitting. Cutting replaces each selected
//! bond a-b with a pair of dummy atoms `[k*]` of equal ID, one per side, so
//! fragments can be reassembled by matching IDs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::molgraph::{write_fragment, Atom, BondOrder, Element, MolGraph};

/// How to choose cut bonds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutRule {
    /// Every single, non-ring bond touching at least one ring atom, as long
    /// as both sides keep at least one heavy atom.
    ExocyclicSingle,
    /// An explicit list of atom-index pairs, validated against the graph.
    Explicit(Vec<(usize, usize)>),
}

/// Bond indices (into the source graph) chosen for cutting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CutSet {
    pub bond_refs: Vec<usize>,
}

impl CutSet {
    pub fn len(&self) -> usize {
        self.bond_refs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bond_refs.is_empty()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("bond {a}-{b} cannot be cut: {reason}")]
    NotCuttable { a: usize, b: usize, reason: &'static str },
}

/// Fragments plus the bookkeeping that pairs their dummies back together.
/// `attach_pairs[id]` lists the two (fragment, dummy-atom) locations of `id`;
/// `bond_order_of[id]` is the order of the bond that was cut.
#[derive(Debug, Clone, Default)]
pub struct FragmentSet {
    pub(crate) fragments: Vec<MolGraph>,
    /// one written string per fragment, same order as `fragments`
    pub(crate) strings: Vec<String>,
    pub(crate) attach_pairs: BTreeMap<u32, [(usize, usize); 2]>,
    pub(crate) bond_order_of: BTreeMap<u32, BondOrder>,
}

impl FragmentSet {
    pub fn fragments(&self) -> &[MolGraph] {
        &self.fragments
    }

    pub fn strings(&self) -> &[String] {
        &self.strings
    }

    pub fn attach_pairs(&self) -> &BTreeMap<u32, [(usize, usize); 2]> {
        &self.attach_pairs
    }

    pub fn bond_order_of(&self) -> &BTreeMap<u32, BondOrder> {
        &self.bond_order_of
    }

    pub fn len(&self) -> usize {
        self.fragments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fragments.is_empty()
    }
}

/// Heavy atoms reachable from `from` without crossing `skip_bond`.
fn side_heavy_count(g: &MolGraph, from: usize, skip_bond: usize) -> usize {
    let mut seen = vec![false; g.atoms().len()];
    let mut stack = vec![from];
    seen[from] = true;
    let mut heavy = 0;
    while let Some(u) = stack.pop() {
        let a = g.atom(u);
        if a.element != Element::H && a.element != Element::Star {
            heavy += 1;
        }
        for &(v, bidx) in g.neighbors(u) {
            if bidx != skip_bond && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    heavy
}

pub fn find_cut_bonds(g: &MolGraph, rule: &CutRule) -> Result<CutSet, CutError> {
    // Ring flags must be current regardless of where the graph came from.
    let mut g = g.clone();
    g.perceive_rings();

    match rule {
        CutRule::ExocyclicSingle => {
            let mut bond_refs = Vec::new();
            for (i, bond) in g.bonds().iter().enumerate() {
                if bond.order != BondOrder::Single || bond.in_ring {
                    continue;
                }
                if !g.atom(bond.a).in_ring && !g.atom(bond.b).in_ring {
                    continue;
                }
                if side_heavy_count(&g, bond.a, i) == 0 || side_heavy_count(&g, bond.b, i) == 0 {
                    continue;
                }
                bond_refs.push(i);
            }
            Ok(CutSet { bond_refs })
        }
        CutRule::Explicit(pairs) => {
            let mut bond_refs = Vec::new();
            let mut seen = BTreeSet::new();
            for &(a, b) in pairs {
                let not_cuttable = |reason| CutError::NotCuttable { a, b, reason };
                let bidx = g
                    .bond_between(a, b)
                    .ok_or_else(|| not_cuttable("no such bond"))?;
                let bond = g.bond(bidx);
                if bond.in_ring {
                    return Err(not_cuttable("bond is in a ring"));
                }
                if bond.order == BondOrder::Aromatic {
                    return Err(not_cuttable("bond is aromatic"));
                }
                if !seen.insert(bidx) {
                    return Err(not_cuttable("bond listed twice"));
                }
                if side_heavy_count(&g, bond.a, bidx) == 0
                    || side_heavy_count(&g, bond.b, bidx) == 0
                {
                    return Err(not_cuttable("one side has no heavy atom"));
                }
                bond_refs.push(bidx);
            }
            Ok(CutSet { bond_refs })
        }
    }
}

/// Split `g` along `cuts`. Fragments are ordered by their smallest source
/// atom; within a fragment, real atoms keep ascending source order and the
/// dummies are appended in ascending ID order. IDs continue past any
/// attachment IDs already present in the input.
pub fn apply_cuts(g: &MolGraph, cuts: &CutSet) -> FragmentSet {
    let n = g.atoms().len();
    let cut_bonds: BTreeSet<usize> = cuts.bond_refs.iter().copied().collect();

    // connected components of the graph minus the cut bonds
    let mut comp = vec![usize::MAX; n];
    let mut comp_count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = comp_count;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, bidx) in g.neighbors(u) {
                if !cut_bonds.contains(&bidx) && comp[v] == usize::MAX {
                    comp[v] = comp_count;
                    stack.push(v);
                }
            }
        }
        comp_count += 1;
    }
    // component labels were assigned in first-visit order, which for an
    // ascending scan is exactly "ordered by smallest source atom"

    let mut fragments = vec![MolGraph::new(); comp_count];
    let mut new_index = vec![usize::MAX; n];
    for (i, atom) in g.atoms().iter().enumerate() {
        let mut atom = atom.clone();
        atom.in_ring = false;
        new_index[i] = fragments[comp[i]].add_atom(atom);
    }
    for (bidx, bond) in g.bonds().iter().enumerate() {
        if cut_bonds.contains(&bidx) {
            continue;
        }
        fragments[comp[bond.a]]
            .add_bond(new_index[bond.a], new_index[bond.b], bond.order, bond.stereo_mark)
            .expect("source bonds are unique");
    }

    // fresh IDs continue past anything already in the input
    let base = g
        .atoms()
        .iter()
        .filter_map(|a| a.attach_id())
        .max()
        .unwrap_or(0);
    let mut ordered_cuts: Vec<usize> = cuts.bond_refs.clone();
    ordered_cuts.sort_by_key(|&bidx| {
        let b = g.bond(bidx);
        (b.a.min(b.b), b.a.max(b.b))
    });

    let mut attach_pairs = BTreeMap::new();
    let mut bond_order_of = BTreeMap::new();
    for (offset, &bidx) in ordered_cuts.iter().enumerate() {
        let id = base + 1 + offset as u32;
        let bond = g.bond(bidx);
        let (first, second) = if bond.a < bond.b {
            (bond.a, bond.b)
        } else {
            (bond.b, bond.a)
        };
        let mut place = |src: usize| {
            let frag = comp[src];
            let mut dummy = Atom::new(Element::Star);
            dummy.isotope_or_attach_id = Some(id);
            let didx = fragments[frag].add_atom(dummy);
            fragments[frag]
                .add_bond(new_index[src], didx, bond.order, None)
                .expect("dummy atom is fresh");
            (frag, didx)
        };
        let pair = [place(first), place(second)];
        attach_pairs.insert(id, pair);
        bond_order_of.insert(id, bond.order);
    }

    for frag in &mut fragments {
        frag.perceive_rings();
    }
    let strings = fragments.iter().map(write_fragment).collect();
    FragmentSet {
        fragments,
        strings,
        attach_pairs,
        bond_order_of,
    }
}
