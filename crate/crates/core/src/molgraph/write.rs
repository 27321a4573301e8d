//! Graph-to-string writer. One engine drives the plain writer, the ranked
//! (canonical) writer, the fragment writer, and the attachment-closure
//! renderer used by the dot-separated dialect.

use std::collections::{BTreeMap, BTreeSet};

use super::graph::{Atom, BondOrder, MolGraph};

/// Extra state for rendering a fragment with its dummies replaced by
/// ring-closure digits. With an empty digit map this is a dry run: no
/// attachment text is emitted, but the emission order of attachment IDs and
/// the set of internal digits are still collected.
#[derive(Debug, Clone, Default)]
pub(crate) struct SafeRender {
    /// attachment ID -> preassigned closure digit
    pub digits: BTreeMap<u32, u16>,
    /// digits internal closures must avoid (every preassigned digit)
    pub banned: BTreeSet<u16>,
}

#[derive(Debug, Clone)]
pub(crate) struct Rendered {
    pub components: Vec<String>,
    /// attachment IDs in the order their closures were emitted
    pub attach_order: Vec<u32>,
    /// internal closure digits that appeared
    pub used_digits: BTreeSet<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ClosureOverflow;

#[derive(Debug, Clone, Copy, Default)]
struct WriteOptions<'a> {
    ranks: Option<&'a [usize]>,
    start: Option<usize>,
    keep_stereo: bool,
    safe: Option<&'a SafeRender>,
}

/// Write every component, joined by `.`, in atom-index order.
pub fn write_smiles(g: &MolGraph) -> String {
    render(g, WriteOptions { keep_stereo: true, ..Default::default() })
        .expect("closure numbers exhausted")
        .components
        .join(".")
}

/// Write with an explicit atom ordering: each component starts at its
/// lowest-ranked atom and neighbors are visited in ascending rank.
pub fn write_smiles_ranked(g: &MolGraph, ranks: &[usize]) -> String {
    assert_eq!(ranks.len(), g.atoms().len());
    render(
        g,
        WriteOptions { ranks: Some(ranks), keep_stereo: true, ..Default::default() },
    )
    .expect("closure numbers exhausted")
    .components
    .join(".")
}

/// Ranked component strings without stereo annotations; the caller decides
/// the component order.
pub(crate) fn write_canonical_parts(g: &MolGraph, ranks: &[usize]) -> Vec<String> {
    render(
        g,
        WriteOptions { ranks: Some(ranks), keep_stereo: false, ..Default::default() },
    )
    .expect("closure numbers exhausted")
    .components
}

/// Write a fragment with its dummy atoms emitted as `[n*]`. The walk starts
/// at the dummy with the smallest attachment ID so the ID leads the string.
pub(crate) fn write_fragment(g: &MolGraph) -> String {
    let start = smallest_dummy(g).unwrap_or(0);
    let rendered = render(
        g,
        WriteOptions { start: Some(start), keep_stereo: true, ..Default::default() },
    )
    .expect("closure numbers exhausted");
    rendered.components.join(".")
}

/// Render a fragment with dummies omitted and attachment closures in their
/// place. The walk starts at the real neighbor of the smallest-ID dummy.
pub(crate) fn write_safe_fragment(
    g: &MolGraph,
    safe: &SafeRender,
) -> Result<Rendered, ClosureOverflow> {
    let start = smallest_dummy(g)
        .map(|d| g.neighbors(d)[0].0)
        .unwrap_or(0);
    render(
        g,
        WriteOptions { start: Some(start), keep_stereo: true, safe: Some(safe), ..Default::default() },
    )
}

fn smallest_dummy(g: &MolGraph) -> Option<usize> {
    g.atoms()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.is_dummy())
        .min_by_key(|(_, a)| a.attach_id())
        .map(|(i, _)| i)
}

struct Walker<'a> {
    g: &'a MolGraph,
    opts: WriteOptions<'a>,
    visited: Vec<bool>,
    disc: Vec<usize>,
    timer: usize,
    /// tree children of each atom, in visit order
    children: Vec<Vec<(usize, usize)>>,
    /// back-edge bonds opened (ancestor side) / closed (descendant side) here
    openers: Vec<Vec<usize>>,
    closers: Vec<Vec<usize>>,
    /// digit assigned to a back-edge bond, filled during emission
    digit_of: Vec<Option<u16>>,
    in_use: BTreeSet<u16>,
    out: String,
    attach_order: Vec<u32>,
    used_digits: BTreeSet<u16>,
}

fn render(g: &MolGraph, opts: WriteOptions<'_>) -> Result<Rendered, ClosureOverflow> {
    let n = g.atoms().len();
    let omit_dummies = opts.safe.is_some();
    let mut w = Walker {
        g,
        opts,
        visited: vec![false; n],
        disc: vec![0; n],
        timer: 0,
        children: vec![Vec::new(); n],
        openers: vec![Vec::new(); n],
        closers: vec![Vec::new(); n],
        digit_of: vec![None; g.bonds().len()],
        in_use: BTreeSet::new(),
        out: String::new(),
        attach_order: Vec::new(),
        used_digits: BTreeSet::new(),
    };
    if omit_dummies {
        for (i, atom) in g.atoms().iter().enumerate() {
            if atom.is_dummy() {
                w.visited[i] = true;
            }
        }
    }

    let mut starts: Vec<usize> = (0..n).collect();
    if let Some(ranks) = w.opts.ranks {
        starts.sort_by_key(|&i| ranks[i]);
    }
    if let Some(s) = w.opts.start {
        starts.retain(|&i| i != s);
        starts.insert(0, s);
    }

    let mut components = Vec::new();
    for s in starts {
        if w.visited[s] {
            continue;
        }
        w.visited[s] = true;
        w.explore(s, usize::MAX);
        w.out.clear();
        w.emit(s)?;
        components.push(std::mem::take(&mut w.out));
    }
    Ok(Rendered {
        components,
        attach_order: w.attach_order,
        used_digits: w.used_digits,
    })
}

impl<'a> Walker<'a> {
    fn ordered_neighbors(&self, u: usize) -> Vec<(usize, usize)> {
        let mut nbrs: Vec<(usize, usize)> = self.g.neighbors(u).to_vec();
        if let Some(ranks) = self.opts.ranks {
            nbrs.sort_by_key(|&(v, _)| ranks[v]);
        } else {
            nbrs.sort_by_key(|&(v, _)| v);
        }
        nbrs
    }

    fn explore(&mut self, u: usize, parent_bond: usize) {
        self.disc[u] = self.timer;
        self.timer += 1;
        for (v, bidx) in self.ordered_neighbors(u) {
            if bidx == parent_bond {
                continue;
            }
            if !self.visited[v] {
                self.visited[v] = true;
                self.children[u].push((v, bidx));
                self.explore(v, bidx);
            } else if self.opts.safe.is_none() || !self.g.atom(v).is_dummy() {
                // Each back edge is recorded once, from the descendant side.
                if self.disc[v] < self.disc[u] {
                    self.openers[v].push(bidx);
                    self.closers[u].push(bidx);
                }
            }
        }
    }

    fn emit(&mut self, u: usize) -> Result<(), ClosureOverflow> {
        self.out.push_str(&atom_text(self.g.atom(u), self.opts.keep_stereo));

        // closures that end here, in ascending digit order
        let mut closing = self.closers[u].clone();
        closing.sort_by_key(|&b| self.digit_of[b]);
        let mut freed = Vec::new();
        for bidx in closing {
            let digit = self.digit_of[bidx].expect("opener emitted before closer");
            if let Some(sym) = self.closure_symbol(bidx) {
                self.out.push(sym);
            }
            self.out.push_str(&digit_text(digit));
            freed.push(digit);
        }

        // closures that begin here, in partner discovery order
        for bidx in self.openers[u].clone() {
            let digit = self.alloc_digit()?;
            self.digit_of[bidx] = Some(digit);
            self.used_digits.insert(digit);
            if let Some(sym) = self.closure_symbol(bidx) {
                self.out.push(sym);
            }
            if let Some(mark) = self.stereo_closure_mark(bidx) {
                self.out.push(mark);
            }
            self.out.push_str(&digit_text(digit));
        }

        // attachment closures replacing omitted dummies, ascending ID
        if let Some(safe) = self.opts.safe {
            let mut attachments: Vec<(u32, usize)> = self
                .g
                .neighbors(u)
                .iter()
                .filter(|&&(v, _)| self.g.atom(v).is_dummy())
                .map(|&(v, bidx)| (self.g.atom(v).attach_id().unwrap(), bidx))
                .collect();
            attachments.sort();
            for (id, bidx) in attachments {
                self.attach_order.push(id);
                if let Some(&digit) = safe.digits.get(&id) {
                    match self.g.bond(bidx).order {
                        BondOrder::Single => {}
                        other => self.out.push(other.explicit_symbol()),
                    }
                    self.out.push_str(&digit_text(digit));
                }
            }
        }

        // a digit closed here may be reused further along, not at this atom
        for digit in freed {
            self.in_use.remove(&digit);
        }

        let children = self.children[u].clone();
        let last = children.len().saturating_sub(1);
        for (i, (v, bidx)) in children.into_iter().enumerate() {
            let branch = i < last;
            if branch {
                self.out.push('(');
            }
            if let Some(sym) = self.tree_bond_symbol(bidx, u) {
                self.out.push(sym);
            }
            self.emit(v)?;
            if branch {
                self.out.push(')');
            }
        }
        Ok(())
    }

    fn alloc_digit(&mut self) -> Result<u16, ClosureOverflow> {
        let banned = self.opts.safe.map(|s| &s.banned);
        for d in 1..=99u16 {
            if self.in_use.contains(&d) {
                continue;
            }
            if banned.is_some_and(|b| b.contains(&d)) {
                continue;
            }
            self.in_use.insert(d);
            return Ok(d);
        }
        Err(ClosureOverflow)
    }

    /// Symbol a ring-closure digit needs so both sides re-parse to the
    /// stored order. Emitted identically at the opening and closing digit.
    fn closure_symbol(&self, bidx: usize) -> Option<char> {
        let bond = self.g.bond(bidx);
        let aromatic_pair =
            self.g.atom(bond.a).aromatic && self.g.atom(bond.b).aromatic && bond.in_ring;
        match bond.order {
            BondOrder::Single => {
                if aromatic_pair {
                    Some('-')
                } else {
                    None
                }
            }
            BondOrder::Double => Some('='),
            BondOrder::Triple => Some('#'),
            BondOrder::Aromatic => {
                if aromatic_pair {
                    None
                } else {
                    Some(':')
                }
            }
        }
    }

    /// Directional mark for a single ring-closure bond, opening side only.
    fn stereo_closure_mark(&self, bidx: usize) -> Option<char> {
        if !self.opts.keep_stereo {
            return None;
        }
        let bond = self.g.bond(bidx);
        if bond.order == BondOrder::Single {
            bond.stereo_mark
        } else {
            None
        }
    }

    fn tree_bond_symbol(&self, bidx: usize, from: usize) -> Option<char> {
        let bond = self.g.bond(bidx);
        if self.opts.keep_stereo && bond.order == BondOrder::Single {
            if let Some(mark) = bond.stereo_mark {
                // marks are stored in a->b reading order; flip when walked b->a
                let flipped = if from == bond.a {
                    mark
                } else if mark == '/' {
                    '\\'
                } else {
                    '/'
                };
                return Some(flipped);
            }
        }
        self.closure_symbol(bidx)
    }
}

fn digit_text(d: u16) -> String {
    if d <= 9 {
        d.to_string()
    } else {
        format!("%{d:02}")
    }
}

fn atom_text(atom: &Atom, keep_stereo: bool) -> String {
    let chirality = if keep_stereo { atom.chirality } else { None };
    let symbol = if atom.element == super::element::Element::Star {
        "*".to_string()
    } else if atom.aromatic {
        atom.element.symbol().to_ascii_lowercase()
    } else {
        atom.element.symbol().to_string()
    };
    let needs_bracket = atom.isotope_or_attach_id.is_some()
        || atom.formal_charge != 0
        || atom.explicit_h.is_some()
        || chirality.is_some()
        || atom.element == super::element::Element::H;
    if !needs_bracket {
        return symbol;
    }
    let mut s = String::from("[");
    if let Some(iso) = atom.isotope_or_attach_id {
        s.push_str(&iso.to_string());
    }
    s.push_str(&symbol);
    if let Some(ch) = chirality {
        s.push_str(ch.symbol());
    }
    match atom.explicit_h {
        None | Some(0) => {}
        Some(1) => s.push('H'),
        Some(h) => {
            s.push('H');
            s.push_str(&h.to_string());
        }
    }
    match atom.formal_charge {
        0 => {}
        1 => s.push('+'),
        -1 => s.push('-'),
        c if c > 1 => s.push_str(&format!("+{c}")),
        c => s.push_str(&format!("-{}", -c)),
    }
    s.push(']');
    s
}
