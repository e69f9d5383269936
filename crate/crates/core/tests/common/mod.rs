//! Brute-force references shared by the integration tests. None of these
//! call into the library beyond constructing values.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use csn::metric::DissimilarityMatrix;
use csn::{CircularOrdering, Rational, Scalar, Split};

/// Every permutation of `1..=n` starting with 1 whose second entry is below
/// its last: one representative per circular ordering up to reflection.
pub fn orderings(n: usize) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let mut tail: Vec<usize> = (2..=n).collect();
    let mut out = Vec::new();
    permute(&mut tail, 0, &mut out);
    let mut keep: Vec<Vec<usize>> =
        out.into_iter().filter(|t| t[0] < t[t.len() - 1]).map(|t| std::iter::once(1).chain(t).collect()).collect();
    keep.sort();
    keep
}

/// Side of `s` as a plain set of taxa.
pub fn side(s: &Split) -> BTreeSet<usize> {
    s.block().into_iter().collect()
}

/// Whether the taxa of `set` occupy a cyclically contiguous run of `seq`.
pub fn is_run(seq: &[usize], set: &BTreeSet<usize>) -> bool {
    let n = seq.len();
    let inside: Vec<bool> = seq.iter().map(|t| set.contains(t)).collect();
    // a run has exactly two boundaries around the cycle (or none)
    let changes = (0..n).filter(|&i| inside[i] != inside[(i + 1) % n]).count();
    changes <= 2
}

pub fn supported_by(seq: &[usize], splits: &[Split]) -> bool {
    splits.iter().all(|s| is_run(seq, &side(s)))
}

/// Orderings (from [`orderings`]) for which every split is a run.
pub fn supporting(n: usize, splits: &[Split]) -> Vec<Vec<usize>> {
    orderings(n).into_iter().filter(|o| supported_by(o, splits)).collect()
}

/// All splits with both sides of size at least two.
pub fn nontrivial_splits(n: usize) -> Vec<Split> {
    let mut out = Vec::new();
    for mask in 1u64..1 << (n - 1) {
        let taxa: Vec<usize> = (1..n).filter(|t| mask >> (t - 1) & 1 == 1).collect();
        if taxa.len() >= 2 && taxa.len() <= n - 2 {
            out.push(Split::new(n, &taxa).unwrap());
        }
    }
    out.sort();
    out
}

/// The split cut off by the chord from polygon vertex `a` to `b` (`a < b`),
/// where vertex `i` sits between edges `i - 1` and `i`.
pub fn chord_split(seq: &[usize], a: usize, b: usize) -> Split {
    Split::new(seq.len(), &seq[a..b]).unwrap()
}

/// Every triangulation of a convex polygon on vertices `0..n`, as chord sets.
pub fn triangulations(n: usize) -> Vec<BTreeSet<(usize, usize)>> {
    fn of(vertices: &[usize]) -> Vec<BTreeSet<(usize, usize)>> {
        if vertices.len() < 3 {
            return vec![BTreeSet::new()];
        }
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        let mut out = Vec::new();
        // the triangle on edge (first, last) has apex vertices[k]
        for k in 1..vertices.len() - 1 {
            let left = of(&vertices[..=k]);
            let right = of(&vertices[k..]);
            for l in &left {
                for r in &right {
                    let mut t: BTreeSet<(usize, usize)> = l.union(r).copied().collect();
                    if k > 1 {
                        t.insert((first, vertices[k]));
                    }
                    if k < vertices.len() - 2 {
                        t.insert((vertices[k], last));
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    let vertices: Vec<usize> = (0..n).collect();
    of(&vertices)
}

pub fn ordering(seq: &[usize]) -> CircularOrdering {
    CircularOrdering::new(seq.to_vec()).unwrap()
}

/// Random binary tree on leaves `1..=n` by repeated edge subdivision, with
/// positive rational edge weights; returns its path-length matrix.
pub fn tree_metric(n: usize, picks: &[usize], weights: &[(i64, i64)]) -> DissimilarityMatrix<Rational> {
    let centre = n + 1;
    let mut edges: Vec<(usize, usize)> = vec![(centre, 1), (centre, 2), (centre, 3)];
    for (next, (leaf, &pick)) in (n + 2..).zip((4..=n).zip(picks)) {
        let (u, v) = edges.swap_remove(pick % edges.len());
        edges.extend([(u, next), (next, v), (next, leaf)]);
    }
    let mut adj: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (&(u, v), &(p, q)) in edges.iter().zip(weights) {
        let w = Rational::from_ratio(p, q);
        adj.entry(u).or_default().push((v, w.clone()));
        adj.entry(v).or_default().push((u, w));
    }
    let mut rows = vec![vec![Rational::from_int(0); n]; n];
    for i in 1..=n {
        let mut stack = vec![(i, 0usize, Rational::from_int(0))];
        while let Some((v, parent, dist)) = stack.pop() {
            if v <= n {
                rows[i - 1][v - 1] = dist.clone();
            }
            for (w, len) in &adj[&v] {
                if *w != parent {
                    stack.push((*w, v, dist.clone() + len.clone()));
                }
            }
        }
    }
    DissimilarityMatrix::from_rows(rows).unwrap()
}
