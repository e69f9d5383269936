//! Leaf-labelled trees realizing pairwise compatible split systems.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::splits::{taxon_bit, Split, WeightedSplitSystem};

#[derive(Debug, Clone, PartialEq)]
pub struct TreeEdge<T> {
    pub parent: usize,
    pub child: usize,
    pub length: T,
    /// The bipartition obtained by cutting this edge.
    pub split: Split,
}

/// An unrooted tree stored rooted at an internal hub.
///
/// Vertices `0..n` are the leaves (vertex `i - 1` carries taxon `i`), followed
/// by internal vertices; vertex `n` is the hub. Pendant edges whose trivial
/// split is absent from the input get length zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafLabeledTree<T> {
    n: usize,
    vertex_count: usize,
    edges: Vec<TreeEdge<T>>,
}

impl<T: Scalar> LeafLabeledTree<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[TreeEdge<T>] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.parent == v || e.child == v).count()
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = &TreeEdge<T>> {
        self.edges.iter().filter(|e| e.child >= self.n)
    }

    /// Nontrivial splits induced by internal edges.
    pub fn internal_splits(&self) -> BTreeSet<Split> {
        self.internal_edges().map(|e| e.split).collect()
    }

    /// Length of the path between leaves `i` and `j` (taxa, 1-based).
    pub fn path_length(&self, i: usize, j: usize) -> T {
        self.edges.iter().filter(|e| e.split.separates(i, j)).fold(T::zero(), |acc, e| acc + e.length.clone())
    }

    /// Newick text with taxa as leaf names.
    pub fn to_newick(&self) -> String {
        let mut children = vec![Vec::new(); self.vertex_count];
        for (k, e) in self.edges.iter().enumerate() {
            children[e.parent].push(k);
        }
        let mut out = String::new();
        self.write_newick(self.n, &children, &mut out);
        out.push(';');
        out
    }

    fn write_newick(&self, v: usize, children: &[Vec<usize>], out: &mut String) {
        if v < self.n {
            out.push_str(&(v + 1).to_string());
            return;
        }
        out.push('(');
        for (i, &k) in children[v].iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let e = &self.edges[k];
            self.write_newick(e.child, children, out);
            out.push(':');
            out.push_str(&e.length.render());
        }
        out.push(')');
    }
}

/// Builds the tree whose internal edges are exactly the nontrivial splits of
/// a pairwise compatible system.
///
/// With the hub placed on the side of taxon `n`, the canonical blocks of a
/// compatible system are laminar (nested or disjoint), so each block hangs
/// below the smallest block strictly containing it.
pub fn buneman_tree<T: Scalar>(sys: &WeightedSplitSystem<T>) -> Result<LeafLabeledTree<T>> {
    let n = sys.n();
    if let Some((a, b)) = sys.splits().first_incompatible_pair() {
        return Err(Error::Incompatible(a, b));
    }
    let mut clusters: Vec<(Split, T)> =
        sys.iter().filter(|(s, _)| !s.is_trivial()).map(|(s, w)| (*s, w.clone())).collect();
    // larger blocks first so parents precede children
    clusters.sort_by(|a, b| b.0.block_len().cmp(&a.0.block_len()).then(a.0.cmp(&b.0)));

    let hub = n;
    let vertex_count = n + 1 + clusters.len();
    let mut edges = Vec::with_capacity(n + clusters.len());
    let smallest_container = |mask: u64, upto: usize| -> usize {
        clusters[..upto]
            .iter()
            .enumerate()
            .filter(|(_, (c, _))| c.mask() & mask == mask && c.mask() != mask)
            .min_by_key(|(_, (c, _))| c.block_len())
            .map_or(hub, |(k, _)| n + 1 + k)
    };
    for (k, (split, weight)) in clusters.iter().enumerate() {
        edges.push(TreeEdge {
            parent: smallest_container(split.mask(), k),
            child: n + 1 + k,
            length: weight.clone(),
            split: *split,
        });
    }
    for taxon in 1..=n {
        let pendant = Split::from_side_mask(n, taxon_bit(taxon))?;
        let parent = if taxon == n { hub } else { smallest_container(taxon_bit(taxon), clusters.len()) };
        edges.push(TreeEdge {
            parent,
            child: taxon - 1,
            length: sys.weight(&pendant).cloned().unwrap_or_else(T::zero),
            split: pendant,
        });
    }
    Ok(LeafLabeledTree { n, vertex_count, edges })
}
