//! Circular orderings of `{1..n}` up to rotation and reflection.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splits::{check_taxon_count, full_mask, taxon_bit, Split};

/// A cyclic arrangement of the taxa, stored canonically: it starts with taxon
/// 1 and its second entry is smaller than its last.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CircularOrdering(Vec<usize>);

impl CircularOrdering {
    /// Canonicalizes any permutation of `1..=n` read around the circle.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        check_taxon_count(n, 3)
            .map_err(|_| Error::MalformedOrdering(format!("an ordering needs 3..=64 taxa, got {n}")))?;
        let mut seen = 0u64;
        for &t in &seq {
            if t == 0 || t > n || seen & taxon_bit(t) != 0 {
                return Err(Error::MalformedOrdering(format!("{seq:?} is not a permutation of 1..={n}")));
            }
            seen |= taxon_bit(t);
        }
        Ok(Self(canonical_form(&seq)))
    }

    /// `(1, 2, ..., n)`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.clone()
    }

    /// Index of `taxon` in the canonical sequence.
    pub fn position(&self, taxon: usize) -> usize {
        self.0.iter().position(|&t| t == taxon).expect("taxon in range")
    }

    /// True if the split's sides are contiguous arcs of this ordering.
    pub fn supports(&self, split: &Split) -> bool {
        split.n() == self.n() && is_arc(&self.0, split.mask())
    }

    /// The `n(n-3)/2` nontrivial splits whose sides are arcs of this ordering,
    /// in split order.
    pub fn diagonal_splits(&self) -> Vec<Split> {
        let seq = &self.0;
        let n = seq.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(3) / 2);
        for s in 1..n {
            let mut side = 0u64;
            for (len, &taxon) in seq[s..].iter().enumerate().map(|(k, t)| (k + 1, t)) {
                side |= taxon_bit(taxon);
                if len >= 2 && len + 2 <= n {
                    out.push(Split::from_side_mask(n, side).expect("proper side"));
                }
            }
        }
        out.sort();
        out
    }

    /// Reverses the arc occupied by `side` (a taxon bitmask forming an arc).
    pub fn reflect_arc(&self, side: u64) -> Option<CircularOrdering> {
        reflect_arc_in(&self.0, side).map(|seq| Self(canonical_form(&seq)))
    }
}

impl fmt::Display for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<usize>> for CircularOrdering {
    type Error = Error;

    fn try_from(seq: Vec<usize>) -> Result<Self> {
        Self::new(seq)
    }
}

impl From<CircularOrdering> for Vec<usize> {
    fn from(o: CircularOrdering) -> Self {
        o.0
    }
}

pub(crate) fn canonical_form(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let start = seq.iter().position(|&t| t == 1).unwrap_or(0);
    let mut out: Vec<usize> = (0..n).map(|i| seq[(start + i) % n]).collect();
    if n > 2 && out[1] > out[n - 1] {
        out[1..].reverse();
    }
    out
}

/// Whether the taxa in `mask` occupy a contiguous arc of the cyclic sequence.
pub(crate) fn is_arc(seq: &[usize], mask: u64) -> bool {
    let n = seq.len();
    let inside = |i: usize| mask & taxon_bit(seq[i]) != 0;
    let changes = (0..n).filter(|&i| inside(i) != inside((i + 1) % n)).count();
    changes <= 2
}

/// Reverses the arc of `seq` holding exactly the taxa of `side`.
pub(crate) fn reflect_arc_in(seq: &[usize], side: u64) -> Option<Vec<usize>> {
    let n = seq.len();
    let k = side.count_ones() as usize;
    if k == 0 || k >= n || !is_arc(seq, side) {
        return None;
    }
    let inside = |i: usize| side & taxon_bit(seq[i % n]) != 0;
    // arc start: an inside position whose predecessor is outside
    let start = (0..n).find(|&i| inside(i) && !inside(i + n - 1))?;
    let mut out = seq.to_vec();
    for j in 0..k {
        out[(start + j) % n] = seq[(start + k - 1 - j) % n];
    }
    Some(out)
}

/// All `(n-1)!/2` canonical orderings in lexicographic order.
pub fn all_orderings(n: usize) -> Result<Vec<CircularOrdering>> {
    check_taxon_count(n, 3)?;
    let mut out = Vec::new();
    ArcSearch::new(n, &[]).run(&mut |seq| {
        out.push(CircularOrdering(seq.to_vec()));
        true
    });
    Ok(out)
}

/// Backtracking search for orderings in which a set of splits are all arcs.
///
/// Taxon 1 is fixed first, so every split's side avoiding taxon 1 has to be a
/// contiguous run of the remaining linear sequence; a partial sequence is
/// abandoned as soon as some such run is interrupted.
pub(crate) struct ArcSearch {
    n: usize,
    runs: Vec<u64>,
}

impl ArcSearch {
    pub(crate) fn new(n: usize, splits: &[Split]) -> Self {
        let full = full_mask(n);
        let runs = splits
            .iter()
            .map(|s| if s.mask() & 1 != 0 { full & !s.mask() } else { s.mask() })
            .filter(|&r| r.count_ones() > 1)
            .collect();
        Self { n, runs }
    }

    /// Calls `visit` with each canonical ordering, lexicographically, until it returns false.
    pub(crate) fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut seq = Vec::with_capacity(self.n);
        seq.push(1);
        self.extend(&mut seq, 1, visit);
    }

    fn extend(&self, seq: &mut Vec<usize>, placed: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.n;
        if seq.len() == n {
            if n < 3 || seq[1] < seq[n - 1] {
                return visit(seq);
            }
            return true;
        }
        for t in 2..=n {
            let bit = taxon_bit(t);
            if placed & bit != 0 {
                continue;
            }
            let blocked = self.runs.iter().any(|&run| {
                let done = placed & run;
                run & bit == 0 && done != 0 && done != run
            });
            if blocked {
                continue;
            }
            seq.push(t);
            let keep_going = self.extend(seq, placed | bit, visit);
            seq.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    pub(crate) fn first(&self) -> Option<CircularOrdering> {
        let mut found = None;
        self.run(&mut |seq| {
            found = Some(CircularOrdering(seq.to_vec()));
            false
        });
        found
    }

    pub(crate) fn exists(&self) -> bool {
        self.first().is_some()
    }

    #[cfg(test)]
    pub(crate) fn count(&self) -> usize {
        let mut count = 0;
        self.run(&mut |_| {
            count += 1;
            true
        });
        count
    }

    pub(crate) fn all(&self) -> Vec<CircularOrdering> {
        let mut out = Vec::new();
        self.run(&mut |seq| {
            out.push(CircularOrdering(seq.to_vec()));
            true
        });
        out
    }
}

/// The lexicographically least ordering for which every split is circular.
pub fn common_ordering(n: usize, splits: &[Split]) -> Option<CircularOrdering> {
    ArcSearch::new(n, splits).first()
}

/// True when some ordering makes every split circular.
pub fn jointly_circular(n: usize, splits: &[Split]) -> bool {
    ArcSearch::new(n, splits).exists()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_fixes_rotation_and_reflection() {
        let a = CircularOrdering::new(vec![3, 2, 1, 4, 5, 6]).unwrap();
        assert_eq!(a.as_slice(), &[1, 2, 3, 6, 5, 4]);
        let b = CircularOrdering::new(vec![4, 5, 6, 1, 2, 3]).unwrap();
        assert_eq!(b.as_slice(), &[1, 2, 3, 4, 5, 6]);
        assert!(CircularOrdering::new(vec![1, 2, 2]).is_err());
        assert!(CircularOrdering::new(vec![1, 2]).is_err());
    }

    #[test]
    fn counts_all_orderings() {
        assert_eq!(all_orderings(4).unwrap().len(), 3);
        assert_eq!(all_orderings(5).unwrap().len(), 12);
        assert_eq!(all_orderings(6).unwrap().len(), 60);
        let five = all_orderings(5).unwrap();
        assert!(five.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn reflecting_an_arc() {
        let o = CircularOrdering::identity(6).unwrap();
        let side = taxon_bit(1) | taxon_bit(2) | taxon_bit(3);
        let r = o.reflect_arc(side).unwrap();
        assert_eq!(r, CircularOrdering::new(vec![3, 2, 1, 4, 5, 6]).unwrap());
        assert!(o.reflect_arc(taxon_bit(1) | taxon_bit(3)).is_none());
    }

    #[test]
    fn diagonal_split_counts() {
        for n in 4..=8 {
            let d = CircularOrdering::identity(n).unwrap().diagonal_splits();
            assert_eq!(d.len(), n * (n - 3) / 2);
            assert!(d.iter().all(|s| !s.is_trivial()));
        }
    }

    #[test]
    fn search_finds_crossing_free_orderings() {
        let s = |side: &[usize]| Split::new(5, side).unwrap();
        // 1 adjacent to each of 2, 3, 4 is impossible
        assert!(!jointly_circular(5, &[s(&[1, 2]), s(&[1, 3]), s(&[1, 4])]));
        assert!(jointly_circular(5, &[s(&[1, 2]), s(&[1, 3])]));
        assert_eq!(ArcSearch::new(6, &[Split::new(6, &[1, 2, 3]).unwrap()]).count(), 18);
    }
}
