//! The dual polygon of a circular split system and the twist calculus.
//!
//! An `n`-gon has its edges labelled by a circular ordering; each split that
//! is circular for the ordering is drawn as the chord separating its two arcs
//! of edges. A chord is identified with the taxon bipartition it induces, so a
//! twist changes the ordering but never the stored splits.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::ordering::{ArcSearch, CircularOrdering};
use crate::scalar::Scalar;
use crate::splits::{taxon_bit, Split, SplitSystem, WeightedSplitSystem};

/// Default exhaustive bound for ordering enumeration.
pub const DEFAULT_ORDERING_BOUND: usize = 9;

/// Chord endpoints `(a, b)`, `a < b`, on polygon vertices `0..n`, where vertex
/// `i` sits between the edges labelled `ordering[i-1]` and `ordering[i]`.
pub fn chord_endpoints(ordering: &CircularOrdering, split: &Split) -> Option<(usize, usize)> {
    if !ordering.supports(split) {
        return None;
    }
    let seq = ordering.as_slice();
    let n = seq.len();
    // the side avoiding seq[0] is a run of positions start..end
    let first = seq[0];
    let side = if split.contains(first) { split.complement_mask() } else { split.mask() };
    let inside = |i: usize| side & taxon_bit(seq[i]) != 0;
    let start = (1..n).find(|&i| inside(i))?;
    let end = (start..n).find(|&i| !inside(i)).unwrap_or(n);
    Some(if end == n { (0, start) } else { (start, end) })
}

/// Whether two chords of the same polygon interleave.
pub fn chords_cross(c1: (usize, usize), c2: (usize, usize)) -> bool {
    let ((a, b), (c, d)) = (c1, c2);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Geometric crossing test for two diagonals drawn on `ordering`.
pub fn diagonals_cross(ordering: &CircularOrdering, d1: &Split, d2: &Split) -> Result<bool> {
    let endpoints = |d: &Split| {
        chord_endpoints(ordering, d).ok_or_else(|| Error::NotCircular { split: *d, ordering: ordering.to_string() })
    };
    Ok(chords_cross(endpoints(d1)?, endpoints(d2)?))
}

/// Which side of a chord a twist reflects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwistSide {
    /// The chord's canonical block (the side without taxon `n`).
    Block,
    /// The side containing taxon `n`.
    Complement,
    /// The side not containing taxon 1.
    #[default]
    AwayFromFirst,
}

impl TwistSide {
    fn mask(self, chord: &Split) -> u64 {
        match self {
            TwistSide::Block => chord.mask(),
            TwistSide::Complement => chord.complement_mask(),
            TwistSide::AwayFromFirst => {
                if chord.contains(1) {
                    chord.complement_mask()
                } else {
                    chord.mask()
                }
            }
        }
    }
}

/// A labelled polygon with noncrossing-or-crossing diagonals, one per split.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonRep<T> {
    ordering: CircularOrdering,
    diagonals: BTreeSet<Split>,
    weights: Option<BTreeMap<Split, T>>,
}

impl<T: Scalar> PolygonRep<T> {
    /// Unweighted representation; trivial splits are not drawn.
    pub fn new(sys: &SplitSystem, ordering: &CircularOrdering) -> Result<Self> {
        if sys.n() != ordering.n() {
            return Err(Error::AmbientMismatch { left: sys.n(), right: ordering.n() });
        }
        let mut diagonals = BTreeSet::new();
        for s in sys.iter().filter(|s| !s.is_trivial()) {
            if !ordering.supports(s) {
                return Err(Error::NotCircular { split: *s, ordering: ordering.to_string() });
            }
            diagonals.insert(*s);
        }
        Ok(Self { ordering: ordering.clone(), diagonals, weights: None })
    }

    /// Weighted representation; weights of trivial splits are dropped.
    pub fn weighted(sys: &WeightedSplitSystem<T>, ordering: &CircularOrdering) -> Result<Self> {
        let mut rep = Self::new(&sys.splits(), ordering)?;
        rep.weights = Some(sys.iter().filter(|(s, _)| !s.is_trivial()).map(|(s, w)| (*s, w.clone())).collect());
        Ok(rep)
    }

    pub fn n(&self) -> usize {
        self.ordering.n()
    }

    pub fn ordering(&self) -> &CircularOrdering {
        &self.ordering
    }

    pub fn diagonals(&self) -> &BTreeSet<Split> {
        &self.diagonals
    }

    pub fn weights(&self) -> Option<&BTreeMap<Split, T>> {
        self.weights.as_ref()
    }

    pub fn split_system(&self) -> SplitSystem {
        SplitSystem::new(self.n(), self.diagonals.iter().copied()).expect("diagonals share n")
    }

    /// Endpoints of every diagonal, in split order.
    pub fn chords(&self) -> Vec<(Split, (usize, usize))> {
        self.diagonals
            .iter()
            .map(|d| (*d, chord_endpoints(&self.ordering, d).expect("diagonals are circular")))
            .collect()
    }

    /// The first diagonal crossed by `chord`, if any.
    pub fn first_crossing(&self, chord: &Split) -> Option<Split> {
        self.diagonals.iter().find(|d| !d.compatible_unchecked(chord)).copied()
    }

    /// Breaks the polygon along `chord`, reflects one side and reglues.
    ///
    /// `chord` may be one of the diagonals or an auxiliary chord; it must not
    /// cross any diagonal.
    pub fn twist(&self, chord: &Split, side: TwistSide) -> Result<Self> {
        if chord.n() != self.n() {
            return Err(Error::AmbientMismatch { left: self.n(), right: chord.n() });
        }
        if chord.is_trivial() {
            return Err(Error::TrivialSplit(*chord));
        }
        if !self.ordering.supports(chord) {
            return Err(Error::NotCircular { split: *chord, ordering: self.ordering.to_string() });
        }
        if let Some(crossing) = self.first_crossing(chord) {
            return Err(Error::IllegalTwist { chord: *chord, crossing });
        }
        let ordering = self.ordering.reflect_arc(side.mask(chord)).expect("chord sides are arcs");
        Ok(Self { ordering, diagonals: self.diagonals.clone(), weights: self.weights.clone() })
    }

    /// Representations reachable by repeated single twists, as orderings.
    pub fn twist_closure(&self) -> BTreeSet<CircularOrdering> {
        let sys: Vec<Split> = self.diagonals.iter().copied().collect();
        let n = self.n();
        let mut seen = BTreeSet::from([self.ordering.clone()]);
        let mut queue = VecDeque::from([self.ordering.clone()]);
        while let Some(current) = queue.pop_front() {
            let seq = current.as_slice();
            for s in 1..n {
                for e in s + 1..n {
                    let Some(next) = arc_twist(&sys, seq, s, e) else { continue };
                    let next = CircularOrdering::new(next).expect("permutation");
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen
    }
}

/// Reverses `seq[s..=e]` if that arc is a nontrivial chord crossing no split.
fn arc_twist(sys: &[Split], seq: &[usize], s: usize, e: usize) -> Option<Vec<usize>> {
    let n = seq.len();
    let len = e + 1 - s;
    if len < 2 || len > n - 2 {
        return None;
    }
    let side = seq[s..=e].iter().fold(0u64, |m, &t| m | taxon_bit(t));
    let chord = Split::from_side_mask(n, side).ok()?;
    if sys.iter().any(|d| !d.compatible_unchecked(&chord)) {
        return None;
    }
    let mut out = seq.to_vec();
    out[s..=e].reverse();
    Some(out)
}

/// Fewest legal twists inside `seq[t+1..]` that put `goal` right after the
/// fixed run `seq[..=t]`, as arcs `(s, e)` to reverse in turn.
///
/// For `t == 0` the run is the single taxon `seq[0]`, so either neighbour
/// will do. Breadth-first over arc reversals; the state space is bounded by
/// the orderings compatible with the diagonals.
fn placing_twists(sys: &[Split], seq: &[usize], t: usize, goal: usize) -> Option<Vec<(usize, usize)>> {
    let n = seq.len();
    let placed = |v: &[usize]| v[t + 1] == goal || (t == 0 && v[n - 1] == goal);
    if placed(seq) {
        return Some(Vec::new());
    }
    // child ordering -> (parent ordering, arc twisted)
    type Back = (Vec<usize>, (usize, usize));
    let mut parent: HashMap<Vec<usize>, Back> = HashMap::new();
    let mut queue = VecDeque::from([seq.to_vec()]);
    while let Some(current) = queue.pop_front() {
        for s in t + 1..n {
            for e in s + 1..n {
                let Some(next) = arc_twist(sys, &current, s, e) else { continue };
                if next == seq || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), (current.clone(), (s, e)));
                if placed(&next) {
                    let mut path = Vec::new();
                    let mut at = next;
                    while at != seq {
                        let (prev, arc) = parent.remove(&at).expect("visited");
                        path.push(arc);
                        at = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(next);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistStep {
    pub chord: Split,
    /// Taxa on the reflected side, ascending.
    pub side: Vec<usize>,
    /// Canonical ordering after the twist.
    pub ordering: CircularOrdering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistPath {
    Sequence(Vec<TwistStep>),
    /// `split` is not circular for the target ordering.
    Incompatible {
        split: Split,
    },
}

/// Finds twists carrying `rep` to the representation with ordering `target`.
///
/// The target is read as `y_0 = 1, y_1, ..., y_{n-1}`. Iteration `t` holds
/// `y_0..y_t` as a fixed run and brings `y_{t+1}` next to `y_t` with the
/// fewest twists along chords inside the unplaced arc. Usually that is the
/// single chord cutting off everything from just after `y_t` through
/// `y_{t+1}`; when that chord crosses a diagonal, more may be needed.
pub fn twist_sequence<T: Scalar>(rep: &PolygonRep<T>, target: &CircularOrdering) -> Result<TwistPath> {
    let n = rep.n();
    if target.n() != n {
        return Err(Error::AmbientMismatch { left: n, right: target.n() });
    }
    if let Some(split) = rep.diagonals.iter().find(|d| !target.supports(d)) {
        return Ok(TwistPath::Incompatible { split: *split });
    }
    let sys: Vec<Split> = rep.diagonals.iter().copied().collect();
    let y = target.as_slice();
    let mut seq = rep.ordering.to_vec();
    let mut steps = Vec::new();
    let record = |seq: &[usize], s: usize, e: usize, steps: &mut Vec<TwistStep>| {
        let side = seq[s..=e].iter().fold(0u64, |m, &t| m | taxon_bit(t));
        let mut taxa: Vec<usize> = seq[s..=e].to_vec();
        taxa.sort_unstable();
        let mut next = seq.to_vec();
        next[s..=e].reverse();
        steps.push(TwistStep {
            chord: Split::from_side_mask(n, side).expect("nontrivial arc"),
            side: taxa,
            ordering: CircularOrdering::new(next.clone()).expect("permutation"),
        });
        next
    };
    for t in 0..n.saturating_sub(2) {
        let goal = y[t + 1];
        let Some(path) = placing_twists(&sys, &seq, t, goal) else {
            return Err(Error::Consistency(format!(
                "no twist places {goal} after {} in {seq:?} with diagonals {sys:?}",
                y[t]
            )));
        };
        for (s, e) in path {
            seq = record(&seq, s, e, &mut steps);
        }
        // reading direction is free: a global reflection is not a twist
        if t == 0 && seq[1] != goal {
            seq[1..].reverse();
        }
    }
    let reached = CircularOrdering::new(seq).expect("permutation");
    if &reached != target {
        return Err(Error::Consistency(format!("twists reached {reached}, not {target}")));
    }
    Ok(TwistPath::Sequence(steps))
}

/// Replays a twist sequence from `rep`, validating every step.
pub fn replay_twists<T: Scalar>(rep: &PolygonRep<T>, steps: &[TwistStep]) -> Result<PolygonRep<T>> {
    let mut current = rep.clone();
    for step in steps {
        let side_mask = step.side.iter().fold(0u64, |m, &t| m | taxon_bit(t));
        let side = if side_mask == step.chord.mask() { TwistSide::Block } else { TwistSide::Complement };
        current = current.twist(&step.chord, side)?;
    }
    Ok(current)
}

/// All canonical orderings for which every split of `sys` is circular.
pub fn compatible_orderings(sys: &SplitSystem, bound: usize) -> Result<Vec<CircularOrdering>> {
    if sys.n() > bound {
        return Err(Error::Capacity { n: sys.n(), bound });
    }
    let splits: Vec<Split> = sys.iter().copied().collect();
    Ok(ArcSearch::new(sys.n(), &splits).all())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Rep = PolygonRep<Rational>;

    fn s(n: usize, side: &[usize]) -> Split {
        Split::new(n, side).unwrap()
    }

    fn ord(seq: &[usize]) -> CircularOrdering {
        CircularOrdering::new(seq.to_vec()).unwrap()
    }

    fn sys(n: usize, sides: &[&[usize]]) -> SplitSystem {
        SplitSystem::new(n, sides.iter().map(|x| s(n, x))).unwrap()
    }

    fn full_pentagon() -> SplitSystem {
        sys(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1]])
    }

    #[test]
    fn builds_representations() {
        let hex = Rep::new(&sys(6, &[&[1, 2, 3]]), &CircularOrdering::identity(6).unwrap()).unwrap();
        assert_eq!(hex.diagonals().len(), 1);
        let pent = Rep::new(&full_pentagon(), &CircularOrdering::identity(5).unwrap()).unwrap();
        assert_eq!(pent.diagonals().len(), 5);
        let err = Rep::new(&sys(6, &[&[1, 3, 5]]), &CircularOrdering::identity(6).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotCircular { .. }));
    }

    #[test]
    fn crossing_examples() {
        let p = CircularOrdering::identity(5).unwrap();
        let a = s(5, &[1, 2]);
        assert!(!diagonals_cross(&p, &a, &s(5, &[4, 5])).unwrap());
        assert!(diagonals_cross(&p, &a, &s(5, &[2, 3])).unwrap());
        assert!(!diagonals_cross(&p, &a, &a).unwrap());
    }

    #[test]
    fn chord_endpoints_on_hexagon() {
        let p = CircularOrdering::identity(6).unwrap();
        assert_eq!(chord_endpoints(&p, &s(6, &[2, 3])), Some((1, 3)));
        assert_eq!(chord_endpoints(&p, &s(6, &[5, 6])), Some((0, 4)));
        assert_eq!(chord_endpoints(&p, &s(6, &[1, 3])), None);
    }

    #[test]
    fn twist_reflects_an_arc_and_keeps_splits() {
        let d = s(6, &[1, 2, 3]);
        let hex = Rep::new(&sys(6, &[&[1, 2, 3]]), &CircularOrdering::identity(6).unwrap()).unwrap();
        let twisted = hex.twist(&d, TwistSide::Block).unwrap();
        assert_eq!(twisted.ordering(), &ord(&[3, 2, 1, 4, 5, 6]));
        assert_eq!(twisted.split_system(), hex.split_system());
        assert_eq!(twisted.twist(&d, TwistSide::Block).unwrap(), hex);
        // both sides give the same canonical result
        assert_eq!(hex.twist(&d, TwistSide::Complement).unwrap(), twisted);
    }

    #[test]
    fn illegal_twist_names_the_crossing_diagonal() {
        let pent = Rep::new(&full_pentagon(), &CircularOrdering::identity(5).unwrap()).unwrap();
        let err = pent.twist(&s(5, &[1, 2]), TwistSide::Block).unwrap_err();
        assert!(matches!(err, Error::IllegalTwist { .. }));
    }

    #[test]
    fn twist_sequence_examples() {
        let hex = Rep::new(&sys(6, &[&[1, 2, 3]]), &CircularOrdering::identity(6).unwrap()).unwrap();
        assert_eq!(twist_sequence(&hex, &CircularOrdering::identity(6).unwrap()).unwrap(), TwistPath::Sequence(vec![]));
        let target = ord(&[3, 2, 1, 4, 5, 6]);
        let TwistPath::Sequence(steps) = twist_sequence(&hex, &target).unwrap() else { panic!("target is compatible") };
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].chord, s(6, &[1, 2, 3]));
        assert_eq!(replay_twists(&hex, &steps).unwrap().ordering(), &target);

        let pent = Rep::new(&full_pentagon(), &CircularOrdering::identity(5).unwrap()).unwrap();
        let path = twist_sequence(&pent, &ord(&[1, 3, 2, 4, 5])).unwrap();
        assert!(matches!(path, TwistPath::Incompatible { .. }));
    }

    #[test]
    fn preliminary_twist_repairs_a_crossing_chord() {
        // the direct chord cutting {5,3} off (1,2,5,3,4,6) crosses {3,4}
        let rep = Rep::new(&sys(6, &[&[3, 4]]), &ord(&[1, 2, 5, 3, 4, 6])).unwrap();
        let target = CircularOrdering::identity(6).unwrap();
        let TwistPath::Sequence(steps) = twist_sequence(&rep, &target).unwrap() else { panic!("compatible") };
        assert_eq!(replay_twists(&rep, &steps).unwrap().ordering(), &target);
        assert!(steps.len() <= 2 * (6 - 2));
    }

    #[test]
    fn compatible_orderings_examples() {
        assert_eq!(compatible_orderings(&sys(6, &[&[1, 2, 3]]), 9).unwrap().len(), 18);
        assert_eq!(compatible_orderings(&full_pentagon(), 9).unwrap(), vec![CircularOrdering::identity(5).unwrap()]);
        assert_eq!(compatible_orderings(&SplitSystem::empty(4).unwrap(), 9).unwrap().len(), 3);
        assert!(matches!(compatible_orderings(&SplitSystem::empty(10).unwrap(), 9), Err(Error::Capacity { .. })));
    }
}
