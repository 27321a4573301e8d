//! Molecular graph: atoms, bonds, adjacency, and the derived ring flags.

use thiserror::Error;

use super::element::Element;

/// Tetrahedral parity marks, preserved verbatim from input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    /// `@`
    Anticlockwise,
    /// `@@`
    Clockwise,
}

impl Chirality {
    pub fn symbol(self) -> &'static str {
        match self {
            Chirality::Anticlockwise => "@",
            Chirality::Clockwise => "@@",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    /// Fractional order used by the implicit-hydrogen model.
    pub(crate) fn value(self) -> f64 {
        match self {
            BondOrder::Single => 1.0,
            BondOrder::Double => 2.0,
            BondOrder::Triple => 3.0,
            BondOrder::Aromatic => 1.5,
        }
    }

    pub(crate) fn explicit_symbol(self) -> char {
        match self {
            BondOrder::Single => '-',
            BondOrder::Double => '=',
            BondOrder::Triple => '#',
            BondOrder::Aromatic => ':',
        }
    }
}

/// `isotope_or_attach_id` doubles as the attachment ID for `*` atoms:
/// `[5*]` has element Star and isotope_or_attach_id Some(5).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub element: Element,
    pub aromatic: bool,
    pub formal_charge: i8,
    pub isotope_or_attach_id: Option<u32>,
    pub explicit_h: Option<u8>,
    pub chirality: Option<Chirality>,
    pub in_ring: bool,
}

impl Atom {
    pub fn new(element: Element) -> Atom {
        Atom {
            element,
            aromatic: false,
            formal_charge: 0,
            isotope_or_attach_id: None,
            explicit_h: None,
            chirality: None,
            in_ring: false,
        }
    }

    /// A numbered attachment point `[n*]`. A bare `*` (no ID) is an
    /// ordinary atom, not a dummy.
    pub fn is_dummy(&self) -> bool {
        self.element == Element::Star && self.isotope_or_attach_id.is_some()
    }

    pub fn attach_id(&self) -> Option<u32> {
        if self.element == Element::Star {
            self.isotope_or_attach_id
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: BondOrder,
    /// `/` or `\` directional mark, preserved verbatim for re-emission.
    pub stereo_mark: Option<char>,
    pub in_ring: bool,
}

impl Bond {
    pub fn other(&self, atom: usize) -> usize {
        if atom == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("bond endpoints are the same atom {0}")]
    SelfBond(usize),
    #[error("duplicate bond between atoms {0} and {1}")]
    DuplicateBond(usize, usize),
}

/// Undirected multigraph-free molecular graph. Adjacency is kept in sync by
/// `add_bond`; ring flags are derived, call `perceive_rings` after edits.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MolGraph {
    pub(crate) atoms: Vec<Atom>,
    pub(crate) bonds: Vec<Bond>,
    /// adjacency[u] = (neighbor, bond index), in bond insertion order.
    pub(crate) adjacency: Vec<Vec<(usize, usize)>>,
}

impl MolGraph {
    pub fn new() -> MolGraph {
        MolGraph::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn atom(&self, i: usize) -> &Atom {
        &self.atoms[i]
    }

    pub fn bond(&self, i: usize) -> &Bond {
        &self.bonds[i]
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn add_atom(&mut self, atom: Atom) -> usize {
        self.atoms.push(atom);
        self.adjacency.push(Vec::new());
        self.atoms.len() - 1
    }

    pub fn add_bond(
        &mut self,
        a: usize,
        b: usize,
        order: BondOrder,
        stereo_mark: Option<char>,
    ) -> Result<usize, GraphError> {
        if a == b {
            return Err(GraphError::SelfBond(a));
        }
        if self.bond_between(a, b).is_some() {
            return Err(GraphError::DuplicateBond(a, b));
        }
        let idx = self.bonds.len();
        self.bonds.push(Bond {
            a,
            b,
            order,
            stereo_mark,
            in_ring: false,
        });
        self.adjacency[a].push((b, idx));
        self.adjacency[b].push((a, idx));
        Ok(idx)
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency
            .get(a)?
            .iter()
            .find(|&&(nbr, _)| nbr == b)
            .map(|&(_, idx)| idx)
    }

    /// Heavy atoms: everything except H and `*`.
    pub fn heavy_atom_count(&self) -> usize {
        self.atoms
            .iter()
            .filter(|a| a.element != Element::H && a.element != Element::Star)
            .count()
    }

    /// Connected-component label per atom, labels in first-visit order.
    pub(crate) fn component_labels(&self) -> Vec<usize> {
        let n = self.atoms.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn components(&self) -> usize {
        self.component_labels()
            .iter()
            .max()
            .map_or(0, |&m| m + 1)
    }

    /// bonds − atoms + components; equals the number of independent rings.
    pub fn ring_count(&self) -> usize {
        self.bonds.len() + self.components() - self.atoms.len()
    }

    /// Mark ring bonds (non-bridges, found via DFS lowlinks) and ring atoms
    /// (atoms incident to a ring bond).
    pub fn perceive_rings(&mut self) {
        let n = self.atoms.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_bridge = vec![false; self.bonds.len()];
        let mut timer = 0usize;

        // Iterative DFS: (node, parent bond index, neighbor cursor).
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while !stack.is_empty() {
                let top = stack.len() - 1;
                let (u, pbond, cursor) = stack[top];
                if cursor < self.adjacency[u].len() {
                    stack[top].2 += 1;
                    let (v, bidx) = self.adjacency[u][cursor];
                    if bidx == pbond {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        stack.push((v, bidx, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            is_bridge[pbond] = true;
                        }
                    }
                }
            }
        }

        for atom in &mut self.atoms {
            atom.in_ring = false;
        }
        for (i, bond) in self.bonds.iter_mut().enumerate() {
            bond.in_ring = !is_bridge[i];
        }
        for i in 0..self.bonds.len() {
            if self.bonds[i].in_ring {
                let (a, b) = (self.bonds[i].a, self.bonds[i].b);
                self.atoms[a].in_ring = true;
                self.atoms[b].in_ring = true;
            }
        }
    }

    /// Rewrite six-membered carbon/nitrogen rings with alternating
    /// single/double bonds as aromatic. All qualifying cycles are found
    /// against a snapshot of the bond orders, then converted together, so
    /// the result does not depend on atom numbering.
    pub fn kekule_normalize(&mut self) {
        let cycles = self.alternating_six_cycles();
        if cycles.is_empty() {
            return;
        }
        let mut atom_set = vec![false; self.atoms.len()];
        let mut bond_set = vec![false; self.bonds.len()];
        for (atoms, bonds) in &cycles {
            for &a in atoms {
                atom_set[a] = true;
            }
            for &b in bonds {
                bond_set[b] = true;
            }
        }
        for (i, flag) in atom_set.iter().enumerate() {
            if *flag {
                self.atoms[i].aromatic = true;
            }
        }
        for (i, flag) in bond_set.iter().enumerate() {
            if *flag {
                self.bonds[i].order = BondOrder::Aromatic;
            }
        }
    }

    /// Simple 6-cycles whose atoms are plain C/N and whose bond orders
    /// alternate single/double. Each cycle is reported once (smallest atom
    /// first, direction fixed by its smaller neighbor).
    fn alternating_six_cycles(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.atoms.len();
        let eligible: Vec<bool> = self
            .atoms
            .iter()
            .map(|a| {
                !a.aromatic
                    && a.formal_charge == 0
                    && matches!(a.element, Element::C | Element::N)
            })
            .collect();
        let mut found = Vec::new();
        let mut path = Vec::with_capacity(6);
        let mut path_bonds = Vec::with_capacity(6);
        for root in 0..n {
            if !eligible[root] {
                continue;
            }
            path.clear();
            path.push(root);
            self.extend_cycle(root, root, &eligible, &mut path, &mut path_bonds, &mut found);
        }
        found
    }

    fn extend_cycle(
        &self,
        root: usize,
        u: usize,
        eligible: &[bool],
        path: &mut Vec<usize>,
        path_bonds: &mut Vec<usize>,
        found: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        for &(v, bidx) in &self.adjacency[u] {
            let order = self.bonds[bidx].order;
            if order != BondOrder::Single && order != BondOrder::Double {
                continue;
            }
            if let Some(&prev) = path_bonds.last() {
                if self.bonds[prev].order == order {
                    continue; // must alternate
                }
            }
            if path.len() == 6 {
                // Cycle closes only if the sixth bond returns to the root and
                // alternates with both its neighbors in the ring.
                if v == root && self.bonds[path_bonds[0]].order != order {
                    // Canonical orientation: root is minimal, and the walk
                    // starts toward its smaller eligible neighbor.
                    if path[1] < path[5] {
                        let mut bonds = path_bonds.clone();
                        bonds.push(bidx);
                        found.push((path.clone(), bonds));
                    }
                }
                continue;
            }
            if v <= root || !eligible[v] || path.contains(&v) {
                continue;
            }
            path.push(v);
            path_bonds.push(bidx);
            self.extend_cycle(root, v, eligible, path, path_bonds, found);
            path.pop();
            path_bonds.pop();
        }
    }

    /// Rebuild the graph with atom `i` taken from `perm[i]` in the original.
    /// `perm` must be a permutation of 0..atoms.len().
    pub fn permute_atoms(&self, perm: &[usize]) -> MolGraph {
        assert_eq!(perm.len(), self.atoms.len());
        let mut inverse = vec![usize::MAX; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            assert!(inverse[old] == usize::MAX, "perm must be a permutation");
            inverse[old] = new;
        }
        let mut g = MolGraph::new();
        for &old in perm {
            g.add_atom(self.atoms[old].clone());
        }
        let mut order: Vec<usize> = (0..self.bonds.len()).collect();
        order.sort_by_key(|&i| {
            let b = &self.bonds[i];
            let (x, y) = (inverse[b.a], inverse[b.b]);
            (x.min(y), x.max(y))
        });
        for i in order {
            let b = &self.bonds[i];
            g.add_bond(inverse[b.a], inverse[b.b], b.order, b.stereo_mark)
                .expect("source graph had no duplicate bonds");
        }
        g.perceive_rings();
        g
    }
}
