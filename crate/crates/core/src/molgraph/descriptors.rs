//! Whole-molecule descriptors used by the benchmark histograms.

use serde::{Deserialize, Serialize};

use super::element::Element;
use super::graph::MolGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Descriptors {
    pub heavy_atoms: usize,
    pub ring_count: usize,
    pub aromatic_fraction: f64,
    pub mol_weight: f64,
}

/// Hydrogens a bare (unbracketed) atom carries implicitly: the gap between
/// the element's default valence and the sum of its bond orders, floored.
/// Bracket atoms carry exactly their written H count and nothing implicit.
fn hydrogen_count(g: &MolGraph, i: usize) -> usize {
    let atom = g.atom(i);
    if let Some(h) = atom.explicit_h {
        return h as usize;
    }
    let bonded: f64 = g
        .neighbors(i)
        .iter()
        .map(|&(_, bidx)| g.bond(bidx).order.value())
        .sum();
    let deficit = atom.element.default_valence() as f64 - bonded;
    if deficit > 0.0 {
        deficit.floor() as usize
    } else {
        0
    }
}

pub fn descriptors(g: &MolGraph) -> Descriptors {
    let heavy_atoms = g.heavy_atom_count();
    let aromatic_heavy = g
        .atoms()
        .iter()
        .filter(|a| a.aromatic && a.element != Element::H && a.element != Element::Star)
        .count();
    let aromatic_fraction = if heavy_atoms == 0 {
        0.0
    } else {
        aromatic_heavy as f64 / heavy_atoms as f64
    };
    let mut mol_weight = 0.0;
    for (i, atom) in g.atoms().iter().enumerate() {
        mol_weight += atom.element.mass();
        mol_weight += hydrogen_count(g, i) as f64 * Element::H.mass();
    }
    Descriptors {
        heavy_atoms,
        ring_count: g.ring_count(),
        aromatic_fraction,
        mol_weight,
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_smiles;
    use super::*;

    fn of(s: &str) -> Descriptors {
        descriptors(&parse_smiles(s, false).unwrap())
    }

    #[test]
    fn benzene() {
        let d = of("c1ccccc1");
        assert_eq!(d.heavy_atoms, 6);
        assert_eq!(d.ring_count, 1);
        assert!((d.aromatic_fraction - 1.0).abs() < 1e-12);
        assert!((d.mol_weight - 78.11).abs() < 0.01, "got {}", d.mol_weight);
    }

    #[test]
    fn ethanol() {
        let d = of("CCO");
        assert_eq!(d.heavy_atoms, 3);
        assert_eq!(d.ring_count, 0);
        assert_eq!(d.aromatic_fraction, 0.0);
        assert!((d.mol_weight - 46.07).abs() < 0.01, "got {}", d.mol_weight);
    }

    #[test]
    fn acyclic_chain_has_no_rings() {
        assert_eq!(of("CCCC").ring_count, 0);
    }

    #[test]
    fn bracket_hydrogens_are_exact() {
        // methane written both ways
        assert!((of("C").mol_weight - of("[CH4]").mol_weight).abs() < 1e-9);
        // [C] carries no hydrogens at all
        assert!((of("[C]").mol_weight - 12.011).abs() < 1e-9);
    }

    #[test]
    fn explicit_hydrogen_atoms_count_toward_weight() {
        let d = of("[H]O[H]");
        assert_eq!(d.heavy_atoms, 1);
        assert!((d.mol_weight - 18.015).abs() < 0.01);
    }

    #[test]
    fn dummies_are_weightless_and_not_heavy() {
        let d = of("[1*]CC");
        assert_eq!(d.heavy_atoms, 2);
        let plain = of("CC");
        // the dummy consumes one valence slot that would have held an H
        assert!((plain.mol_weight - d.mol_weight - Element::H.mass()).abs() < 1e-9);
    }

    #[test]
    fn kekule_and_aromatic_agree_on_weight() {
        assert!((of("C1=CC=CC=C1").mol_weight - of("c1ccccc1").mol_weight).abs() < 1e-9);
    }
}
