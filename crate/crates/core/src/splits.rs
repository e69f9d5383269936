//! Splits of the taxon set `{1..n}` and systems of them.
//!
//! A split is stored canonically as the side that does not contain taxon `n`,
//! packed into a bitmask (bit `i - 1` for taxon `i`). Splits order
//! lexicographically by their canonical block, which fixes the coordinate
//! order of network space.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ordering::CircularOrdering;
use crate::scalar::Scalar;

/// Largest supported taxon count.
pub const MAX_TAXA: usize = 64;

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn taxon_bit(taxon: usize) -> u64 {
    1u64 << (taxon - 1)
}

pub(crate) fn check_taxon_count(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_TAXA {
        return Err(Error::TaxonCount { n, min, max: MAX_TAXA });
    }
    Ok(())
}

/// The labelled taxon set `{1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaxonSet {
    n: usize,
}

impl TaxonSet {
    pub fn new(n: usize) -> Result<Self> {
        check_taxon_count(n, 3)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn taxa(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }
}

/// A bipartition of `{1..n}` into two nonempty sides.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Split {
    n: u8,
    block: u64,
}

impl Split {
    /// Builds a split from either of its sides.
    pub fn new(n: usize, side: &[usize]) -> Result<Self> {
        check_taxon_count(n, 2)?;
        let mut mask = 0u64;
        for &t in side {
            if t == 0 || t > n {
                return Err(Error::MalformedPartition(format!("taxon {t} is outside 1..={n}")));
            }
            if mask & taxon_bit(t) != 0 {
                return Err(Error::MalformedPartition(format!("taxon {t} repeated")));
            }
            mask |= taxon_bit(t);
        }
        Self::from_side_mask(n, mask)
    }

    /// Canonicalizes an explicit pair of sides, checking that they partition `{1..n}`.
    pub fn canonicalize(a: &[usize], b: &[usize], n: usize) -> Result<Self> {
        check_taxon_count(n, 2)?;
        let collect = |side: &[usize]| -> Result<u64> {
            let mut mask = 0u64;
            for &t in side {
                if t == 0 || t > n {
                    return Err(Error::MalformedPartition(format!("taxon {t} is outside 1..={n}")));
                }
                mask |= taxon_bit(t);
            }
            Ok(mask)
        };
        let (ma, mb) = (collect(a)?, collect(b)?);
        if ma & mb != 0 {
            return Err(Error::MalformedPartition("the two sides overlap".into()));
        }
        if ma | mb != full_mask(n) {
            return Err(Error::MalformedPartition("some taxa are missing".into()));
        }
        Self::from_side_mask(n, ma)
    }

    pub(crate) fn from_side_mask(n: usize, side: u64) -> Result<Self> {
        let full = full_mask(n);
        let side = side & full;
        if side == 0 || side == full {
            return Err(Error::MalformedPartition("a side is empty".into()));
        }
        let block = if side & taxon_bit(n) != 0 { full & !side } else { side };
        Ok(Self { n: n as u8, block })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Bitmask of the canonical block.
    pub fn mask(&self) -> u64 {
        self.block
    }

    pub fn complement_mask(&self) -> u64 {
        full_mask(self.n()) & !self.block
    }

    /// The canonical block: the side without taxon `n`, ascending.
    pub fn block(&self) -> Vec<usize> {
        taxa_of(self.block)
    }

    pub fn complement(&self) -> Vec<usize> {
        taxa_of(self.complement_mask())
    }

    pub fn block_len(&self) -> usize {
        self.block.count_ones() as usize
    }

    pub fn contains(&self, taxon: usize) -> bool {
        self.block & taxon_bit(taxon) != 0
    }

    /// True if `i` and `j` lie on different sides.
    pub fn separates(&self, i: usize, j: usize) -> bool {
        self.contains(i) != self.contains(j)
    }

    /// True when one side is a single taxon.
    pub fn is_trivial(&self) -> bool {
        let k = self.block_len();
        k == 1 || k + 1 == self.n()
    }

    /// At least one of the four cross intersections is empty.
    pub fn compatible_with(&self, other: &Split) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch { left: self.n(), right: other.n() });
        }
        Ok(self.compatible_unchecked(other))
    }

    pub(crate) fn compatible_unchecked(&self, other: &Split) -> bool {
        let (a1, b1) = (self.block, self.complement_mask());
        let (a2, b2) = (other.block, other.complement_mask());
        a1 & a2 == 0 || a1 & b2 == 0 || b1 & a2 == 0 || b1 & b2 == 0
    }
}

/// Free-function form of [`Split::compatible_with`].
pub fn pairwise_compatible(s1: &Split, s2: &Split) -> Result<bool> {
    s1.compatible_with(s2)
}

pub(crate) fn taxa_of(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

/// Lexicographic comparison of the ascending taxon sequences of two masks.
pub(crate) fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b).trailing_zeros();
    let above = if low == 63 { 0 } else { !0u64 << (low + 1) };
    if a & (1 << low) != 0 {
        // a continues with `low`; b either ends here or continues with something larger
        if b & above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & above == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for Split {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| lex_cmp_masks(self.block, other.block))
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join(taxa: &[usize]) -> String {
    taxa.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}|{}}}", join(&self.block()), join(&self.complement()))
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of splits over a common taxon set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSystem {
    n: usize,
    splits: BTreeSet<Split>,
}

impl SplitSystem {
    pub fn new(n: usize, splits: impl IntoIterator<Item = Split>) -> Result<Self> {
        check_taxon_count(n, 3)?;
        let mut set = BTreeSet::new();
        for s in splits {
            if s.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: s.n() });
            }
            if !set.insert(s) {
                return Err(Error::DuplicateSplit(s));
            }
        }
        Ok(Self { n, splits: set })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Split> {
        self.splits.iter()
    }

    pub fn contains(&self, s: &Split) -> bool {
        self.splits.contains(s)
    }

    pub fn as_set(&self) -> &BTreeSet<Split> {
        &self.splits
    }

    /// Copy without the trivial splits.
    pub fn nontrivial(&self) -> SplitSystem {
        SplitSystem { n: self.n, splits: self.splits.iter().filter(|s| !s.is_trivial()).copied().collect() }
    }

    /// The lexicographically first incompatible pair, if any.
    pub fn first_incompatible_pair(&self) -> Option<(Split, Split)> {
        let v: Vec<_> = self.splits.iter().collect();
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                if !a.compatible_unchecked(b) {
                    return Some((**a, **b));
                }
            }
        }
        None
    }

    pub fn is_pairwise_compatible(&self) -> bool {
        self.first_incompatible_pair().is_none()
    }

    /// Every split is a contiguous arc of `ordering`.
    pub fn is_circular(&self, ordering: &CircularOrdering) -> Result<bool> {
        if ordering.n() != self.n {
            return Err(Error::AmbientMismatch { left: self.n, right: ordering.n() });
        }
        Ok(self.splits.iter().all(|s| ordering.supports(s)))
    }
}

/// Free-function form of [`SplitSystem::is_circular`].
pub fn is_circular(sys: &SplitSystem, ordering: &CircularOrdering) -> Result<bool> {
    sys.is_circular(ordering)
}

/// Splits with strictly positive weights. Zero weights are dropped on
/// construction; trivial splits are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSplitSystem<T> {
    n: usize,
    weights: BTreeMap<Split, T>,
}

impl<T: Scalar> WeightedSplitSystem<T> {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (Split, T)>) -> Result<Self> {
        check_taxon_count(n, 3)?;
        let mut weights = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (s, w) in entries {
            if s.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: s.n() });
            }
            if !seen.insert(s) {
                return Err(Error::DuplicateSplit(s));
            }
            if w.is_negative() {
                return Err(Error::NegativeWeight { split: s, weight: w.render() });
            }
            if !w.is_zero() {
                weights.insert(s, w);
            }
        }
        Ok(Self { n, weights })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, s: &Split) -> Option<&T> {
        self.weights.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Split, &T)> {
        self.weights.iter()
    }

    pub fn splits(&self) -> SplitSystem {
        SplitSystem { n: self.n, splits: self.weights.keys().copied().collect() }
    }

    pub fn nontrivial(&self) -> WeightedSplitSystem<T> {
        WeightedSplitSystem {
            n: self.n,
            weights: self.weights.iter().filter(|(s, _)| !s.is_trivial()).map(|(s, w)| (*s, w.clone())).collect(),
        }
    }
}
