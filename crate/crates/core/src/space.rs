//! The space of circular split networks on `n` taxa.
//!
//! Each nontrivial split is a coordinate axis of `R^delta`; a circular
//! ordering spans the orthant (chamber) of its `n(n-3)/2` circular splits.
//! The link of the origin is a simplicial complex whose cells are the split
//! systems circular for at least one ordering.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ordering::{all_orderings, common_ordering, ArcSearch, CircularOrdering};
use crate::polygon::{chord_endpoints, PolygonRep};
use crate::scalar::Scalar;
use crate::splits::{check_taxon_count, full_mask, taxon_bit, Split, SplitSystem};

/// Default exhaustive bound for cell enumeration.
pub const DEFAULT_CELL_BOUND: usize = 7;
/// Cells are packed into 128-bit masks over split indices, so enumeration
/// stops at `n = 8` (`delta(8) = 119`).
pub const MAX_CELL_N: usize = 8;
/// Largest `n` for which the full coordinate list is materialized.
pub const MAX_DENSE_N: usize = 20;
/// Largest `n` whose census formulas fit in `u128`.
pub const MAX_FORMULA_N: usize = 30;

/// Dimension of the ambient coordinate space: `2^(n-1) - n - 1`.
pub fn delta(n: usize) -> Result<u64> {
    check_taxon_count(n, 3)?;
    Ok((1u64 << (n - 1)) - n as u64 - 1)
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of subsets `S` of `{m+1..n-1}` with `len + |S|` a nontrivial block size.
fn completions(n: usize, len: usize, m: usize) -> u128 {
    let free = (n - 1 - m) as u64;
    (0..=free)
        .filter(|&j| {
            let size = len + j as usize;
            size >= 2 && size + 2 <= n
        })
        .map(|j| binomial(free, j))
        .sum()
}

/// Rank of the canonical block of `s` among all nontrivial canonical blocks,
/// ordered lexicographically as ascending taxon lists.
pub fn split_index(s: &Split) -> Result<usize> {
    if s.is_trivial() {
        return Err(Error::TrivialSplit(*s));
    }
    let n = s.n();
    let block = s.block();
    let mut rank: u128 = 0;
    let mut prev = 0;
    for (i, &b) in block.iter().enumerate() {
        // blocks equal to the first i entries of ours
        if i >= 2 && i + 2 <= n {
            rank += 1;
        }
        for c in prev + 1..b {
            rank += completions(n, i + 1, c);
        }
        prev = b;
    }
    Ok(rank as usize)
}

/// Inverse of [`split_index`].
pub fn split_at_index(n: usize, index: usize) -> Result<Split> {
    let len = delta(n)? as usize;
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    let mut rest = index as u128;
    let mut block = 0u64;
    let (mut size, mut last) = (0usize, 0usize);
    loop {
        if size >= 2 && size + 2 <= n {
            if rest == 0 {
                return Split::from_side_mask(n, block);
            }
            rest -= 1;
        }
        let mut advanced = false;
        for c in last + 1..n {
            let k = completions(n, size + 1, c);
            if rest < k {
                block |= taxon_bit(c);
                size += 1;
                last = c;
                advanced = true;
                break;
            }
            rest -= k;
        }
        if !advanced {
            return Err(Error::Consistency(format!("index {index} did not resolve")));
        }
    }
}

/// All nontrivial splits in coordinate order.
pub fn coordinate_splits(n: usize) -> Result<Vec<Split>> {
    check_taxon_count(n, 3)?;
    if n > MAX_DENSE_N {
        return Err(Error::Capacity { n, bound: MAX_DENSE_N });
    }
    let mut out: Vec<Split> = (1..full_mask(n - 1))
        .filter_map(|block| Split::from_side_mask(n, block).ok())
        .filter(|s| !s.is_trivial() && s.mask() & taxon_bit(n) == 0)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// A point of network space: nonnegative weights on a jointly circular set
/// of nontrivial splits.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkPoint<T> {
    n: usize,
    coords: BTreeMap<Split, T>,
}

impl<T: Scalar> NetworkPoint<T> {
    /// Zero coordinates are dropped; the support must be circular for some ordering.
    pub fn new(n: usize, entries: impl IntoIterator<Item = (Split, T)>) -> Result<Self> {
        check_taxon_count(n, 3)?;
        let mut coords = BTreeMap::new();
        for (s, w) in entries {
            if s.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: s.n() });
            }
            if s.is_trivial() {
                return Err(Error::TrivialSplit(s));
            }
            if w.is_negative_beyond(&T::zero()) {
                return Err(Error::NegativeWeight { split: s, weight: w.render() });
            }
            if coords.contains_key(&s) {
                return Err(Error::DuplicateSplit(s));
            }
            if !w.is_zero() {
                coords.insert(s, w);
            }
        }
        let support: Vec<Split> = coords.keys().copied().collect();
        if !ArcSearch::new(n, &support).exists() {
            return Err(Error::NoCircularOrdering);
        }
        Ok(Self { n, coords })
    }

    pub fn origin(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coordinate(&self, s: &Split) -> T {
        self.coords.get(s).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero coordinates in split order.
    pub fn iter(&self) -> impl Iterator<Item = (&Split, &T)> {
        self.coords.iter()
    }

    pub fn support(&self) -> SplitSystem {
        SplitSystem::new(self.n, self.coords.keys().copied()).expect("support shares n")
    }

    pub fn total(&self) -> T {
        self.coords.values().fold(T::zero(), |acc, w| acc + w.clone())
    }

    /// The least ordering whose chamber contains the point.
    pub fn chamber(&self) -> CircularOrdering {
        let support: Vec<Split> = self.coords.keys().copied().collect();
        common_ordering(self.n, &support).expect("support is circular")
    }

    /// Full coordinate vector of length `delta(n)`.
    pub fn dense(&self) -> Result<Vec<T>> {
        let mut out = vec![T::zero(); coordinate_splits(self.n)?.len()];
        for (s, w) in &self.coords {
            out[split_index(s)?] = w.clone();
        }
        Ok(out)
    }
}

/// Network coordinates of a polygon representation: each diagonal's weight,
/// or 1 when the representation is unweighted.
pub fn to_network_point<T: Scalar>(p: &PolygonRep<T>) -> Result<NetworkPoint<T>> {
    let entries: Vec<(Split, T)> = match p.weights() {
        Some(w) => w.iter().map(|(s, v)| (*s, v.clone())).collect(),
        None => p.diagonals().iter().map(|s| (*s, T::one())).collect(),
    };
    NetworkPoint::new(p.n(), entries)
}

/// True iff the support is pairwise compatible (a tree).
pub fn in_tree_subspace<T: Scalar>(x: &NetworkPoint<T>) -> bool {
    x.support().is_pairwise_compatible()
}

/// A simplex of the link: a nonempty split system circular for some ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkCell {
    splits: SplitSystem,
}

impl LinkCell {
    pub fn new(splits: SplitSystem) -> Result<Self> {
        if splits.is_empty() {
            return Err(Error::InvalidFace("a link cell needs at least one split".into()));
        }
        if let Some(s) = splits.iter().find(|s| s.is_trivial()) {
            return Err(Error::TrivialSplit(*s));
        }
        let v: Vec<Split> = splits.iter().copied().collect();
        if !ArcSearch::new(splits.n(), &v).exists() {
            return Err(Error::NoCircularOrdering);
        }
        Ok(Self { splits })
    }

    pub fn n(&self) -> usize {
        self.splits.n()
    }

    pub fn splits(&self) -> &SplitSystem {
        &self.splits
    }

    pub fn dim(&self) -> usize {
        self.splits.len() - 1
    }
}

impl fmt::Display for LinkCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.splits.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Chambers and split indices packed as bitmasks, shared by the enumerations.
struct Complex {
    n: usize,
    splits: Vec<Split>,
    chambers: Vec<CircularOrdering>,
    /// Global split indices of each chamber's diagonals, ascending.
    locals: Vec<Vec<usize>>,
    masks: Vec<u128>,
}

impl Complex {
    fn build(n: usize, bound: usize) -> Result<Self> {
        check_taxon_count(n, 4)?;
        let limit = bound.min(MAX_CELL_N);
        if n > limit {
            return Err(Error::Capacity { n, bound: limit });
        }
        let splits = coordinate_splits(n)?;
        let index: HashMap<Split, usize> = splits.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let chambers = all_orderings(n)?;
        let locals: Vec<Vec<usize>> =
            chambers.iter().map(|o| o.diagonal_splits().iter().map(|s| index[s]).collect()).collect();
        let masks = locals.iter().map(|l| l.iter().fold(0u128, |m, &i| m | 1 << i)).collect();
        Ok(Self { n, splits, chambers, locals, masks })
    }

    fn chamber_dim(&self) -> usize {
        self.n * (self.n - 3) / 2 - 1
    }

    fn cell(&self, mask: u128) -> LinkCell {
        let splits = mask_indices(mask).into_iter().map(|i| self.splits[i]);
        LinkCell { splits: SplitSystem::new(self.n, splits).expect("distinct splits") }
    }

    fn supported(&self, mask: u128) -> bool {
        self.masks.iter().any(|&m| m & mask == mask)
    }

    /// Global masks of every nonempty face of every chamber, by size.
    fn faces_by_size(&self) -> Vec<HashSet<u128>> {
        let m = self.chamber_dim() + 1;
        let mut out = vec![HashSet::new(); m + 1];
        for local in &self.locals {
            for sub in 1u32..(1 << m) {
                out[sub.count_ones() as usize].insert(globalize(sub, local));
            }
        }
        out
    }

    fn faces_of_size(&self, size: usize) -> HashSet<u128> {
        let m = self.chamber_dim() + 1;
        let mut out = HashSet::new();
        if size == 0 || size > m {
            return out;
        }
        for local in &self.locals {
            let mut sub: u32 = (1 << size) - 1;
            while sub < (1 << m) {
                out.insert(globalize(sub, local));
                // next subset of the same size
                let c = sub & sub.wrapping_neg();
                let r = sub + c;
                sub = (((r ^ sub) >> 2) / c) | r;
            }
        }
        out
    }
}

fn globalize(sub: u32, local: &[usize]) -> u128 {
    let mut mask = 0u128;
    let mut s = sub;
    while s != 0 {
        mask |= 1 << local[s.trailing_zeros() as usize];
        s &= s - 1;
    }
    mask
}

fn mask_indices(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn sorted_cells(complex: &Complex, masks: HashSet<u128>) -> Vec<LinkCell> {
    let mut keyed: Vec<(Vec<usize>, u128)> = masks.into_iter().map(|m| (mask_indices(m), m)).collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, m)| complex.cell(m)).collect()
}

/// All canonical orderings, one per chamber, lexicographically.
pub fn chambers(n: usize, bound: usize) -> Result<Vec<CircularOrdering>> {
    check_taxon_count(n, 3)?;
    if n > bound {
        return Err(Error::Capacity { n, bound });
    }
    all_orderings(n)
}

/// Cells of dimension `k`, deduplicated across chambers, in split order.
pub fn link_cells(n: usize, k: usize, bound: usize) -> Result<Vec<LinkCell>> {
    let complex = Complex::build(n, bound)?;
    Ok(sorted_cells(&complex, complex.faces_of_size(k + 1)))
}

/// Chambers whose ordering supports the cell.
pub fn chambers_containing(cell: &LinkCell, bound: usize) -> Result<Vec<CircularOrdering>> {
    crate::polygon::compatible_orderings(cell.splits(), bound)
}

/// Closed-form counts for the link complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusFormulas {
    pub n: usize,
    /// `(n-1)!/2`
    pub chambers: u128,
    /// `n(n-3)/2 - 1`
    pub dimension: usize,
    /// chambers times `dimension + 1`, assuming no ridge is shared
    pub ridges: u128,
    pub vertices: u128,
    /// `delta` choose 2
    pub edges: u128,
}

impl CensusFormulas {
    pub fn new(n: usize) -> Result<Self> {
        check_taxon_count(n, 4)?;
        if n > MAX_FORMULA_N {
            return Err(Error::Capacity { n, bound: MAX_FORMULA_N });
        }
        let chambers = (2..n as u128).product::<u128>() / 2;
        let dimension = n * (n - 3) / 2 - 1;
        let vertices = delta(n)? as u128;
        Ok(Self {
            n,
            chambers,
            dimension,
            ridges: chambers * (dimension as u128 + 1),
            vertices,
            edges: vertices * (vertices - 1) / 2,
        })
    }
}

/// Enumerated counts of the link complex next to the formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub formulas: CensusFormulas,
    pub chambers: usize,
    pub dimension: usize,
    /// Number of cells of each dimension `0..=dimension`.
    pub cells_by_dim: Vec<usize>,
    pub ridges: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Most chambers sharing a single ridge.
    pub max_chambers_per_ridge: usize,
}

pub fn census(n: usize, bound: usize) -> Result<Census> {
    let formulas = CensusFormulas::new(n)?;
    let complex = Complex::build(n, bound)?;
    let d = complex.chamber_dim();
    let faces = complex.faces_by_size();
    let cells_by_dim: Vec<usize> = faces[1..].iter().map(HashSet::len).collect();
    let mut ridge_count: HashMap<u128, usize> = HashMap::new();
    for &m in &complex.masks {
        let mut rest = m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            *ridge_count.entry(m & !bit).or_default() += 1;
            rest &= rest - 1;
        }
    }
    Ok(Census {
        formulas,
        chambers: complex.chambers.len(),
        dimension: d,
        ridges: cells_by_dim[d - 1],
        vertices: cells_by_dim[0],
        edges: cells_by_dim.get(1).copied().unwrap_or(0),
        max_chambers_per_ridge: ridge_count.values().copied().max().unwrap_or(0),
        cells_by_dim,
    })
}

/// Largest dimension of a face shared by two distinct chambers; `-1` when no
/// two chambers share a split.
pub fn max_shared_face_dim(n: usize, bound: usize) -> Result<i64> {
    let complex = Complex::build(n, bound)?;
    let mut best = -1i64;
    for (i, a) in complex.masks.iter().enumerate() {
        for b in &complex.masks[i + 1..] {
            best = best.max((a & b).count_ones() as i64 - 1);
        }
    }
    Ok(best)
}

/// The lexicographically least triple of splits (by coordinate index) that
/// spans three edges of the link but no 2-cell, if one exists.
pub fn empty_triangle_witness(n: usize, bound: usize) -> Result<Option<[Split; 3]>> {
    let complex = Complex::build(n, bound)?;
    let len = complex.splits.len();
    let edge = |i: usize, j: usize| complex.supported(1 << i | 1 << j);
    for i in 0..len {
        for j in i + 1..len {
            if !edge(i, j) {
                continue;
            }
            for k in j + 1..len {
                if edge(i, k) && edge(j, k) && !complex.supported(1 << i | 1 << j | 1 << k) {
                    return Ok(Some([complex.splits[i], complex.splits[j], complex.splits[k]]));
                }
            }
        }
    }
    Ok(None)
}

/// Unlabelled shape of a cell: its chord diagram on the `n`-gon, minimized
/// over every ordering that supports it and every dihedral symmetry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellType {
    pub n: usize,
    pub chords: Vec<(usize, usize)>,
}

impl CellType {
    pub fn dim(&self) -> usize {
        self.chords.len().saturating_sub(1)
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chords.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}-gon [{}]", self.n, parts.join(" "))
    }
}

pub fn classify_cell(cell: &LinkCell, bound: usize) -> Result<CellType> {
    let n = cell.n();
    let orderings = chambers_containing(cell, bound)?;
    let mut best: Option<Vec<(usize, usize)>> = None;
    for o in &orderings {
        let chords: Vec<(usize, usize)> =
            cell.splits().iter().map(|s| chord_endpoints(o, s).expect("supported")).collect();
        for reflect in [false, true] {
            for r in 0..n {
                let map = |v: usize| {
                    let v = if reflect { (n - v) % n } else { v };
                    (v + r) % n
                };
                let mut image: Vec<(usize, usize)> = chords
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (map(a), map(b));
                        (x.min(y), x.max(y))
                    })
                    .collect();
                image.sort_unstable();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
    }
    let chords = best.ok_or(Error::NoCircularOrdering)?;
    Ok(CellType { n, chords })
}

/// How many cells of each type the link has.
pub fn cell_type_counts(n: usize, bound: usize) -> Result<BTreeMap<CellType, usize>> {
    let complex = Complex::build(n, bound)?;
    let mut out = BTreeMap::new();
    for faces in complex.faces_by_size().into_iter().skip(1) {
        for m in faces {
            *out.entry(classify_cell(&complex.cell(m), bound)?).or_default() += 1;
        }
    }
    Ok(out)
}
