//! Fragment-connectivity trees. The attachment tree (one node per fragment,
//! one edge per attachment pair) drives the caret-separated serialization;
//! its left-child/right-sibling binary form, padded with empty leaves,
//! drives the ampersand-marked one.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fragmenter::FragmentSet;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AmtError {
    #[error("fragment adjacency contains a cycle")]
    CyclicFragmentGraph,
    #[error("fragment adjacency is not connected")]
    DisconnectedFragmentGraph,
}

/// Attachment tree over fragment indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amt {
    pub root: usize,
    /// children[u] in serialization order
    pub children: Vec<Vec<usize>>,
    /// (parent, child) -> attachment ID
    pub edge_id: BTreeMap<(usize, usize), u32>,
}

/// Build the attachment tree rooted at fragment 0 (the fragment holding the
/// source molecule's first atom on the encode path, the first fragment in
/// string order otherwise). A node's children are ordered by where their
/// linking `[id*]` first appears in the node's fragment string, skipping the
/// dummy that leads back to the parent.
pub fn build_amt(fs: &FragmentSet) -> Result<Amt, AmtError> {
    let n = fs.len();
    let mut adjacency: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (&id, &[(fa, _), (fb, _)]) in fs.attach_pairs() {
        if fa == fb {
            return Err(AmtError::CyclicFragmentGraph);
        }
        adjacency[fa].push((fb, id));
        adjacency[fb].push((fa, id));
    }

    let root = 0;
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edge_id = BTreeMap::new();
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(u) = stack.pop() {
        let mut kids: Vec<(usize, usize, u32)> = Vec::new(); // (string pos, child, id)
        for &(v, id) in &adjacency[u] {
            if v == parent[u] && edge_id.get(&(v, u)) == Some(&id) {
                continue;
            }
            if visited[v] {
                return Err(AmtError::CyclicFragmentGraph);
            }
            let marker = format!("[{id}*]");
            let pos = fs.strings()[u]
                .find(&marker)
                .expect("fragment string contains its own attachment IDs");
            kids.push((pos, v, id));
        }
        kids.sort();
        for (_, v, id) in kids {
            visited[v] = true;
            parent[v] = u;
            children[u].push(v);
            edge_id.insert((u, v), id);
            stack.push(v);
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(AmtError::DisconnectedFragmentGraph);
    }
    Ok(Amt { root, children, edge_id })
}

/// Level-order fragment indices, honoring child order.
pub fn amt_bfs(t: &Amt) -> Vec<usize> {
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::from([t.root]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        queue.extend(&t.children[u]);
    }
    order
}

/// Binary form of the attachment tree: left = first child, right = next
/// sibling, with every missing link padded by an empty leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fbt {
    /// Some(fragment index) or None for an empty leaf
    pub nodes: Vec<Option<usize>>,
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub root: usize,
}

pub fn amt_to_fbt(t: &Amt) -> Fbt {
    let n = t.children.len();
    // fragment u occupies node u; empty leaves are appended after
    let mut fbt = Fbt {
        nodes: (0..n).map(Some).collect(),
        left: vec![None; n],
        right: vec![None; n],
        root: t.root,
    };
    let pad = |fbt: &mut Fbt| {
        fbt.nodes.push(None);
        fbt.left.push(None);
        fbt.right.push(None);
        fbt.nodes.len() - 1
    };
    for u in 0..n {
        fbt.left[u] = t.children[u].first().copied();
        for pair in t.children[u].windows(2) {
            fbt.right[pair[0]] = Some(pair[1]);
        }
    }
    for u in 0..n {
        if fbt.left[u].is_none() {
            let leaf = pad(&mut fbt);
            fbt.left[u] = Some(leaf);
        }
        if fbt.right[u].is_none() {
            let leaf = pad(&mut fbt);
            fbt.right[u] = Some(leaf);
        }
    }
    fbt
}

/// Level-order emission: Some(fragment) or None per empty leaf. Empty
/// leaves have no children, so nothing is enqueued beneath them.
pub fn fbt_bfs(t: &Fbt) -> Vec<Option<usize>> {
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::from([t.root]);
    while let Some(u) = queue.pop_front() {
        order.push(t.nodes[u]);
        if t.nodes[u].is_some() {
            queue.push_back(t.left[u].expect("fragment nodes are padded"));
            queue.push_back(t.right[u].expect("fragment nodes are padded"));
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::fragment_set_from_strings;
    use crate::fragmenter::{apply_cuts, find_cut_bonds, CutRule, CutSet};
    use crate::molgraph::parse_smiles;

    fn from_strings(parts: &[&str]) -> FragmentSet {
        fragment_set_from_strings(parts.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn single_fragment_tree() {
        let g = parse_smiles("CCO", false).unwrap();
        let fs = apply_cuts(&g, &CutSet::default());
        let t = build_amt(&fs).unwrap();
        assert_eq!(t.root, 0);
        assert!(t.children[0].is_empty());
        assert_eq!(amt_bfs(&t), vec![0]);
        let fbt = amt_to_fbt(&t);
        assert_eq!(fbt_bfs(&fbt), vec![Some(0), None, None]);
    }

    #[test]
    fn chain_of_three_is_a_path() {
        let fs = from_strings(&["C[1*]", "[1*]N[2*]", "[2*]O"]);
        let t = build_amt(&fs).unwrap();
        assert_eq!(amt_bfs(&t), vec![0, 1, 2]);
        let fbt = amt_to_fbt(&t);
        assert_eq!(
            fbt_bfs(&fbt),
            vec![Some(0), Some(1), None, Some(2), None, None, None]
        );
    }

    #[test]
    fn child_order_follows_id_position_in_string() {
        // root's string mentions [2*] before [1*]
        let fs = from_strings(&["C([2*])[1*]", "[1*]N", "[2*]O"]);
        let t = build_amt(&fs).unwrap();
        assert_eq!(t.children[0], vec![2, 1]);
        assert_eq!(amt_bfs(&t), vec![0, 2, 1]);
    }

    #[test]
    fn empty_count_is_fragments_plus_one() {
        let g = parse_smiles("CC(=O)Nc1ccc(O)cc1", false).unwrap();
        let cuts = find_cut_bonds(&g, &CutRule::ExocyclicSingle).unwrap();
        let fs = apply_cuts(&g, &cuts);
        let t = build_amt(&fs).unwrap();
        let emitted = fbt_bfs(&amt_to_fbt(&t));
        let fragments = emitted.iter().filter(|e| e.is_some()).count();
        let empties = emitted.iter().filter(|e| e.is_none()).count();
        assert_eq!(fragments, fs.len());
        assert_eq!(empties, fs.len() + 1);
    }

    #[test]
    fn cyclic_adjacency_is_rejected() {
        // three fragments joined in a triangle
        let fs = from_strings(&["C([1*])[3*]", "[1*]C[2*]", "[2*]C[3*]"]);
        assert_eq!(build_amt(&fs), Err(AmtError::CyclicFragmentGraph));
    }

    #[test]
    fn bfs_visits_each_fragment_once() {
        let fs = from_strings(&["C([1*])[2*]", "[1*]N[3*]", "[2*]O", "[3*]F"]);
        let t = build_amt(&fs).unwrap();
        let mut order = amt_bfs(&t);
        order.sort_unstable();
        assert_eq!(order, vec![0, 1, 2, 3]);
    }
}
