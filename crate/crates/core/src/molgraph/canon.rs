//! Canonical string generation. Atom ranks come from iterative neighborhood
//! refinement; remaining ties are broken by splitting every member of the
//! lowest tied cell and keeping the lexicographically smallest result, which
//! makes the output independent of input atom order.

use super::graph::{BondOrder, MolGraph};
use super::write::write_canonical_parts;

/// Stable per-atom key that ignores atom numbering. `explicit_h` of None is
/// kept distinct from Some(0): `C` and `[C]` are different inputs.
fn seed_key(g: &MolGraph, i: usize) -> (u8, bool, i8, usize, bool, u32, i16) {
    let a = g.atom(i);
    (
        a.element.atomic_number(),
        a.aromatic,
        a.formal_charge,
        g.degree(i),
        a.in_ring,
        a.isotope_or_attach_id.unwrap_or(0),
        a.explicit_h.map_or(-1, |h| h as i16),
    )
}

fn bond_class(order: BondOrder) -> u8 {
    match order {
        BondOrder::Single => 0,
        BondOrder::Double => 1,
        BondOrder::Triple => 2,
        BondOrder::Aromatic => 3,
    }
}

/// Renumber `keys` into dense ranks 0..distinct-1, preserving order.
fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

fn distinct_count(ranks: &[usize]) -> usize {
    let mut seen = ranks.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Refine ranks until the partition stops splitting.
fn refine(g: &MolGraph, ranks: &mut Vec<usize>) {
    loop {
        let before = distinct_count(ranks);
        let keys: Vec<(usize, Vec<(u8, usize)>)> = (0..g.atoms().len())
            .map(|i| {
                let mut nbrs: Vec<(u8, usize)> = g
                    .neighbors(i)
                    .iter()
                    .map(|&(v, bidx)| (bond_class(g.bond(bidx).order), ranks[v]))
                    .collect();
                nbrs.sort_unstable();
                (ranks[i], nbrs)
            })
            .collect();
        *ranks = dense_ranks(&keys);
        if distinct_count(ranks) == before {
            return;
        }
    }
}

fn smallest_string(g: &MolGraph, ranks: Vec<usize>) -> String {
    let n = g.atoms().len();
    if distinct_count(&ranks) == n {
        let mut parts = write_canonical_parts(g, &ranks);
        parts.sort();
        return parts.join(".");
    }
    // lowest rank shared by more than one atom
    let mut count = vec![0usize; n];
    for &r in &ranks {
        count[r] += 1;
    }
    let tied = count.iter().position(|&c| c > 1).unwrap();
    let cell: Vec<usize> = (0..n).filter(|&i| ranks[i] == tied).collect();
    cell.into_iter()
        .map(|chosen| {
            let mut forced: Vec<usize> = ranks.iter().map(|&r| r * 2 + 1).collect();
            forced[chosen] -= 1;
            let mut forced = dense_ranks(&forced);
            refine(g, &mut forced);
            smallest_string(g, forced)
        })
        .min()
        .unwrap()
}

/// Canonical form: stereo-free, aromatic-normalized, permutation-invariant.
pub fn canonical_smiles(g: &MolGraph) -> String {
    let mut g = g.clone();
    g.perceive_rings();
    g.kekule_normalize();
    let seeds: Vec<_> = (0..g.atoms().len()).map(|i| seed_key(&g, i)).collect();
    let mut ranks = dense_ranks(&seeds);
    refine(&g, &mut ranks);
    smallest_string(&g, ranks)
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_smiles;
    use super::*;

    fn canon(s: &str) -> String {
        canonical_smiles(&parse_smiles(s, false).unwrap())
    }

    #[test]
    fn atom_order_does_not_matter() {
        assert_eq!(canon("OCC"), canon("CCO"));
        assert_eq!(canon("C(C)O"), canon("CCO"));
        assert_ne!(canon("CCO"), canon("CC=O"));
    }

    #[test]
    fn kekule_and_aromatic_forms_agree() {
        assert_eq!(canon("C1=CC=CC=C1"), canon("c1ccccc1"));
    }

    #[test]
    fn ring_entry_point_does_not_matter() {
        assert_eq!(canon("C1CCCCC1C"), canon("CC1CCCCC1"));
        assert_eq!(canon("c1ccccc1C"), canon("Cc1ccccc1"));
    }

    #[test]
    fn stereo_is_ignored() {
        assert_eq!(canon("F/C=C/F"), canon("F/C=C\\F"));
        assert_eq!(canon("C[C@@H](N)O"), canon("C[CH](N)O"));
    }

    #[test]
    fn distinct_molecules_stay_distinct() {
        assert_ne!(canon("CCO"), canon("CCN"));
        assert_ne!(canon("C1CC1"), canon("CCC"));
        assert_ne!(canon("Cc1ccccc1"), canon("c1ccccc1"));
        assert_ne!(canon("[13CH4]"), canon("[CH4]"));
        assert_ne!(canon("[NH4+]"), canon("[NH3]"));
    }

    #[test]
    fn dummy_ids_distinguish_fragments() {
        assert_ne!(canon("[1*]CC"), canon("[2*]CC"));
        assert_eq!(canon("CC[1*]"), canon("[1*]CC"));
    }

    #[test]
    fn permutations_of_reference_molecule_agree() {
        let s = "CCCCC1C(=O)N(C(C2SCCCS2)C2OC(C)(C)OC2C2COC(C)(C)O2)C1C(C)=Cc1ccccc1";
        let g = parse_smiles(s, false).unwrap();
        let reference = canonical_smiles(&g);
        let n = g.atoms().len();
        // a fixed set of deterministic shuffles
        for step in 1..20 {
            let perm: Vec<usize> = (0..n).map(|i| (i * (step * 2 + 1) + step) % n).collect();
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                continue; // not a permutation for this step size
            }
            let h = g.permute_atoms(&perm);
            assert_eq!(canonical_smiles(&h), reference, "step {step}");
        }
    }

    #[test]
    fn components_sort_in_output() {
        let a = canonical_smiles(&parse_smiles("CC.O", false).unwrap());
        let b = canonical_smiles(&parse_smiles("O.CC", false).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_output_reparses_to_itself() {
        for s in ["CCO", "c1ccccc1", "CC(=O)Nc1ccccc1", "C1CC2CCC1CC2"] {
            let c = canon(s);
            assert_eq!(canon(&c), c);
        }
    }
}
