//! Faces of the associahedron `K_{n-1}` as sets of noncrossing diagonals of
//! a labelled `n`-gon.
//!
//! A face with `k` diagonals has codimension `k`; the empty set is the whole
//! polytope and triangulations are its vertices. Within one chamber a face is
//! also kept as a bitmask over the chamber's diagonals in split order.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ordering::CircularOrdering;
use crate::polygon::{chord_endpoints, chords_cross};
use crate::splits::Split;

/// Largest polygon handled by the bitmask face encoding (`n(n-3)/2 <= 64`).
pub const MAX_POLYGON_N: usize = 12;
/// Default exhaustive bound for flag enumeration.
pub const DEFAULT_FLAG_BOUND: usize = 7;

/// `C_k = binom(2k, k) / (k + 1)`; `C_{n-2}` counts triangulations of an `n`-gon.
///
/// Panics past `k = 60`, where intermediate values leave `u128`.
pub fn catalan(k: usize) -> u128 {
    assert!(k <= 60, "catalan({k}) overflows u128");
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc = binom(2k, i + 1) built incrementally
        acc = acc * (2 * k as u128 - i) / (i + 1);
    }
    acc / (k as u128 + 1)
}

/// A face of the associahedron of one chamber.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssocFace {
    labeling: CircularOrdering,
    diagonals: BTreeSet<Split>,
}

impl AssocFace {
    pub fn new(labeling: &CircularOrdering, diagonals: impl IntoIterator<Item = Split>) -> Result<Self> {
        let n = labeling.n();
        let diagonals: BTreeSet<Split> = diagonals.into_iter().collect();
        let mut chords = Vec::with_capacity(diagonals.len());
        for d in &diagonals {
            if d.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: d.n() });
            }
            if d.is_trivial() {
                return Err(Error::InvalidFace(format!("{d} is a polygon edge, not a diagonal")));
            }
            let chord = chord_endpoints(labeling, d)
                .ok_or_else(|| Error::NotCircular { split: *d, ordering: labeling.to_string() })?;
            chords.push((*d, chord));
        }
        for (i, (a, ca)) in chords.iter().enumerate() {
            for (b, cb) in &chords[i + 1..] {
                if chords_cross(*ca, *cb) {
                    return Err(Error::InvalidFace(format!("diagonals {a} and {b} cross")));
                }
            }
        }
        Ok(Self { labeling: labeling.clone(), diagonals })
    }

    /// The whole polytope.
    pub fn top(labeling: &CircularOrdering) -> Self {
        Self { labeling: labeling.clone(), diagonals: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.labeling.n()
    }

    pub fn labeling(&self) -> &CircularOrdering {
        &self.labeling
    }

    pub fn diagonals(&self) -> &BTreeSet<Split> {
        &self.diagonals
    }

    pub fn codim(&self) -> usize {
        self.diagonals.len()
    }

    pub fn dim(&self) -> usize {
        self.n() - 3 - self.codim()
    }

    pub fn is_vertex(&self) -> bool {
        self.codim() + 3 == self.n()
    }

    /// Nested parenthesization of the leaves `labeling[1..]`, rooted at taxon 1.
    pub fn bracketing(&self) -> String {
        let seq = self.labeling.as_slice();
        let n = seq.len();
        // each diagonal is the run of leaf positions on its side away from taxon 1
        let mut runs: Vec<(usize, usize)> = self
            .diagonals
            .iter()
            .map(|d| {
                let (a, b) = chord_endpoints(&self.labeling, d).expect("validated");
                if a == 0 {
                    (b, n - 1)
                } else {
                    (a, b - 1)
                }
            })
            .collect();
        runs.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        let mut out = String::new();
        let mut open: Vec<usize> = Vec::new();
        for (pos, taxon) in seq.iter().enumerate().skip(1) {
            for &(_, e) in runs.iter().filter(|r| r.0 == pos) {
                out.push('(');
                open.push(e);
            }
            out.push_str(&taxon.to_string());
            while open.last() == Some(&pos) {
                out.push(')');
                open.pop();
            }
            if pos + 1 < n {
                out.push(' ');
            }
        }
        out.replace(" )", ")")
    }
}

impl fmt::Display for AssocFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|s| s.to_string()).collect();
        write!(f, "{} [{}]", self.labeling, parts.join(", "))
    }
}

/// The diagonals of one labelled polygon with crossing data, for bitmask work.
#[derive(Debug, Clone)]
pub struct Chamber {
    labeling: CircularOrdering,
    diagonals: Vec<Split>,
    chords: Vec<(usize, usize)>,
    crossing: Vec<u64>,
}

impl Chamber {
    pub fn new(labeling: &CircularOrdering) -> Result<Self> {
        let n = labeling.n();
        if !(4..=MAX_POLYGON_N).contains(&n) {
            return Err(Error::Capacity { n, bound: MAX_POLYGON_N });
        }
        let diagonals = labeling.diagonal_splits();
        let chords: Vec<(usize, usize)> =
            diagonals.iter().map(|d| chord_endpoints(labeling, d).expect("circular")).collect();
        let crossing = chords
            .iter()
            .map(|&c| chords.iter().enumerate().filter(|(_, &o)| chords_cross(c, o)).fold(0u64, |m, (j, _)| m | 1 << j))
            .collect();
        Ok(Self { labeling: labeling.clone(), diagonals, chords, crossing })
    }

    pub fn n(&self) -> usize {
        self.labeling.n()
    }

    pub fn labeling(&self) -> &CircularOrdering {
        &self.labeling
    }

    /// Diagonals in split order; bit `i` of a local mask is `diagonals()[i]`.
    pub fn diagonals(&self) -> &[Split] {
        &self.diagonals
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// Mask of the diagonals crossing diagonal `i`.
    pub fn crossing(&self, i: usize) -> u64 {
        self.crossing[i]
    }

    pub fn index_of(&self, d: &Split) -> Option<usize> {
        self.diagonals.binary_search(d).ok()
    }

    pub fn is_noncrossing(&self, mask: u64) -> bool {
        bits(mask).all(|i| self.crossing[i] & mask == 0)
    }

    pub fn face_mask(&self, face: &AssocFace) -> Result<u64> {
        if face.labeling() != &self.labeling {
            return Err(Error::InvalidFace(format!(
                "face drawn on {} used in chamber {}",
                face.labeling(),
                self.labeling
            )));
        }
        Ok(face.diagonals().iter().map(|d| self.index_of(d).expect("validated face")).fold(0, |m, i| m | 1 << i))
    }

    /// Caller guarantees `mask` is noncrossing.
    pub fn face(&self, mask: u64) -> AssocFace {
        debug_assert!(self.is_noncrossing(mask));
        AssocFace { labeling: self.labeling.clone(), diagonals: bits(mask).map(|i| self.diagonals[i]).collect() }
    }

    /// Every noncrossing diagonal set, by size and then mask order.
    pub fn local_faces(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.grow(0, 0, 0, &mut |m| out.push(m));
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// Triangulations (maximal noncrossing sets) containing `mask`.
    pub fn extensions(&self, mask: u64) -> Vec<u64> {
        let target = self.n() - 3;
        let mut out = Vec::new();
        self.grow(0, mask, self.blocked(mask), &mut |m| {
            if m.count_ones() as usize == target {
                out.push(m);
            }
        });
        out
    }

    pub fn triangulations(&self) -> Vec<u64> {
        self.extensions(0)
    }

    fn blocked(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |b, i| b | self.crossing[i])
    }

    /// Visits every noncrossing superset of `mask` using only diagonals `>= from`.
    fn grow(&self, from: usize, mask: u64, blocked: u64, visit: &mut dyn FnMut(u64)) {
        visit(mask);
        for i in from..self.diagonals.len() {
            let bit = 1u64 << i;
            if mask & bit != 0 || blocked & bit != 0 {
                continue;
            }
            self.grow(i + 1, mask | bit, blocked | self.crossing[i], visit);
        }
    }

    /// Every chain `f_0 < f_1 < ... < f_m` of faces under strict inclusion,
    /// including single faces, in lexicographic order of face positions.
    pub fn local_chains(&self) -> Vec<Vec<u64>> {
        let faces = self.local_faces();
        let above: Vec<Vec<usize>> =
            faces.iter().map(|&f| (0..faces.len()).filter(|&j| faces[j] != f && faces[j] & f == f).collect()).collect();
        let mut out = Vec::new();
        let mut chain = Vec::new();
        for start in 0..faces.len() {
            walk_chains(start, &faces, &above, &mut chain, &mut out);
        }
        out
    }

    /// Chains holding one face of every size `0..=n-3`.
    pub fn local_flags(&self) -> Vec<Vec<u64>> {
        let top = self.n() - 3;
        let mut out = Vec::new();
        for t in self.triangulations() {
            let mut chain = vec![t];
            drop_one(t, &mut chain, &mut out);
        }
        out.iter_mut().for_each(|c| c.reverse());
        out.sort();
        debug_assert!(out.iter().all(|c| c.len() == top + 1));
        out
    }
}

fn drop_one(mask: u64, chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if mask == 0 {
        out.push(chain.clone());
        return;
    }
    for i in bits(mask) {
        let smaller = mask & !(1 << i);
        chain.push(smaller);
        drop_one(smaller, chain, out);
        chain.pop();
    }
}

fn walk_chains(at: usize, faces: &[u64], above: &[Vec<usize>], chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    chain.push(faces[at]);
    out.push(chain.clone());
    for &next in &above[at] {
        walk_chains(next, faces, above, chain, out);
    }
    chain.pop();
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// All faces with exactly `k` diagonals, in canonical order.
pub fn faces(labeling: &CircularOrdering, k: usize) -> Result<Vec<AssocFace>> {
    let chamber = Chamber::new(labeling)?;
    if k + 3 > labeling.n() {
        return Err(Error::InvalidFace(format!("codimension {k} exceeds {}", labeling.n() - 3)));
    }
    let mut out: Vec<AssocFace> =
        chamber.local_faces().into_iter().filter(|m| m.count_ones() as usize == k).map(|m| chamber.face(m)).collect();
    out.sort();
    Ok(out)
}

/// Triangulations containing `face`, in canonical order.
pub fn face_vertices(face: &AssocFace) -> Result<Vec<AssocFace>> {
    let chamber = Chamber::new(face.labeling())?;
    let mask = chamber.face_mask(face)?;
    let mut out: Vec<AssocFace> = chamber.extensions(mask).into_iter().map(|m| chamber.face(m)).collect();
    out.sort();
    Ok(out)
}

/// A strictly increasing chain of faces of one associahedron.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subflag {
    faces: Vec<AssocFace>,
}

impl Subflag {
    pub fn new(faces: Vec<AssocFace>) -> Result<Self> {
        let Some(first) = faces.first() else {
            return Err(Error::InvalidFace("a subflag needs at least one face".into()));
        };
        for w in faces.windows(2) {
            if w[1].labeling() != first.labeling() {
                return Err(Error::InvalidFace("faces of a subflag share one labeling".into()));
            }
            let strict = w[0].codim() < w[1].codim() && w[0].diagonals().is_subset(w[1].diagonals());
            if !strict {
                return Err(Error::InvalidFace(format!("{} does not strictly contain {}", w[1], w[0])));
            }
        }
        Ok(Self { faces })
    }

    pub fn faces(&self) -> &[AssocFace] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn labeling(&self) -> &CircularOrdering {
        self.faces[0].labeling()
    }

    /// One face of every codimension `0..=n-3`.
    pub fn is_full(&self) -> bool {
        let n = self.labeling().n();
        self.faces.len() + 2 == n && self.faces.iter().enumerate().all(|(i, f)| f.codim() == i)
    }
}

fn check_flag_bound(labeling: &CircularOrdering, bound: usize) -> Result<()> {
    if labeling.n() > bound {
        return Err(Error::Capacity { n: labeling.n(), bound });
    }
    Ok(())
}

/// Full flags of the associahedron drawn on `labeling`.
pub fn flags(labeling: &CircularOrdering, bound: usize) -> Result<Vec<Subflag>> {
    check_flag_bound(labeling, bound)?;
    let chamber = Chamber::new(labeling)?;
    Ok(chamber
        .local_flags()
        .into_iter()
        .map(|c| Subflag { faces: c.into_iter().map(|m| chamber.face(m)).collect() })
        .collect())
}

/// Every nonempty subchain of `flag`.
pub fn subflags(flag: &Subflag) -> Vec<Subflag> {
    let k = flag.len();
    (1u64..1 << k).map(|pick| Subflag { faces: bits(pick).map(|i| flag.faces[i].clone()).collect() }).collect()
}

/// Every nonempty chain of faces of the associahedron drawn on `labeling`.
pub fn all_subflags(labeling: &CircularOrdering, bound: usize) -> Result<Vec<Subflag>> {
    check_flag_bound(labeling, bound)?;
    let chamber = Chamber::new(labeling)?;
    Ok(chamber
        .local_chains()
        .into_iter()
        .map(|c| Subflag { faces: c.into_iter().map(|m| chamber.face(m)).collect() })
        .collect())
}
