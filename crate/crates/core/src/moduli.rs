//! The coordinate map from barycentric subdivisions of associahedra into
//! network space, its inverse, and the twist gluing of chamber copies.
//!
//! In the chamber of a labelling, a triangulation `v` maps to `1/(n-3)` on
//! each of its diagonals. A face maps to the centroid of its triangulations,
//! which has the closed form
//!
//! * `1/(n-3)` on diagonals of the face,
//! * `0` on diagonals crossing the face,
//! * `C_{s-2} C_{t-2} / ((n-3) C_{r-2})` on a diagonal cutting an `r`-vertex
//!   region of the face into an `s`-gon and a `t`-gon.
//!
//! A chain of faces with barycentric weights maps to the weighted sum.

use std::collections::HashMap;

use crate::assoc::{bits, catalan, AssocFace, Chamber, Subflag};
use crate::error::{Error, Result};
use crate::ordering::{all_orderings, CircularOrdering};
use crate::scalar::ExactScalar;
use crate::space::NetworkPoint;
use crate::splits::Split;

/// Default exhaustive bound for the gluing atlas.
pub const DEFAULT_ATLAS_BOUND: usize = 7;

/// A point of one chamber's associahedron in barycentric coordinates of a subflag.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliPoint<T> {
    subflag: Subflag,
    coefficients: Vec<T>,
}

impl<T: ExactScalar> ModuliPoint<T> {
    /// Coefficients must be positive, one per face, and sum to 1.
    pub fn new(subflag: Subflag, coefficients: Vec<T>) -> Result<Self> {
        if coefficients.len() != subflag.len() {
            return Err(Error::InvalidModuliPoint(format!(
                "{} coefficients for {} faces",
                coefficients.len(),
                subflag.len()
            )));
        }
        if let Some(a) = coefficients.iter().find(|a| !a.is_positive()) {
            return Err(Error::InvalidModuliPoint(format!("coefficient {} is not positive", a.render())));
        }
        let total = coefficients.iter().fold(T::zero(), |acc, a| acc + a.clone());
        if !total.is_one() {
            return Err(Error::InvalidModuliPoint(format!("coefficients sum to {}", total.render())));
        }
        Ok(Self { subflag, coefficients })
    }

    pub fn subflag(&self) -> &Subflag {
        &self.subflag
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn labeling(&self) -> &CircularOrdering {
        self.subflag.labeling()
    }
}

/// An image point together with the chamber it was embedded from.
///
/// The chamber matters on shared faces: the same coordinates can come from
/// several chambers, and decoding reads the point in the given one.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPoint<T> {
    chamber: CircularOrdering,
    point: NetworkPoint<T>,
}

impl<T: ExactScalar> EmbeddedPoint<T> {
    /// Every nonzero coordinate has to be a diagonal of the chamber.
    pub fn new(chamber: CircularOrdering, point: NetworkPoint<T>) -> Result<Self> {
        if chamber.n() != point.n() {
            return Err(Error::AmbientMismatch { left: chamber.n(), right: point.n() });
        }
        if let Some((s, _)) = point.iter().find(|(s, _)| !chamber.supports(s)) {
            return Err(Error::NotCircular { split: *s, ordering: chamber.to_string() });
        }
        Ok(Self { chamber, point })
    }

    pub fn chamber(&self) -> &CircularOrdering {
        &self.chamber
    }

    pub fn point(&self) -> &NetworkPoint<T> {
        &self.point
    }

    pub fn coordinate(&self, s: &Split) -> T {
        self.point.coordinate(s)
    }
}

/// Per-face data: the image and, for each region with at least four
/// vertices, its ears and the common ear coordinate ratio.
#[derive(Debug, Clone)]
struct FaceData<T> {
    phi: Vec<T>,
    regions: Vec<Region<T>>,
}

#[derive(Debug, Clone)]
struct Region<T> {
    ears: Vec<usize>,
    /// `C_{r-3} / C_{r-2}` times `1/(n-3)`.
    ear_value: T,
}

/// One chamber's associahedron with every face image precomputed.
#[derive(Debug, Clone)]
pub struct ChamberEmbedding<T> {
    chamber: Chamber,
    unit: T,
    faces: HashMap<u64, FaceData<T>>,
}

/// Vertex sets (ascending, so in cyclic order) of the regions cut out by a face.
fn regions_of(chamber: &Chamber, mask: u64) -> Vec<Vec<usize>> {
    let mut regions = vec![(0..chamber.n()).collect::<Vec<usize>>()];
    for i in bits(mask) {
        let (a, b) = chamber.chords()[i];
        let k =
            regions.iter().position(|r| r.contains(&a) && r.contains(&b)).expect("noncrossing chords split one region");
        let region = regions.swap_remove(k);
        let inner: Vec<usize> = region.iter().copied().filter(|&v| a <= v && v <= b).collect();
        let outer: Vec<usize> = region.iter().copied().filter(|&v| v <= a || v >= b).collect();
        regions.push(inner);
        regions.push(outer);
    }
    regions.sort();
    regions
}

impl<T: ExactScalar> ChamberEmbedding<T> {
    pub fn new(labeling: &CircularOrdering) -> Result<Self> {
        let chamber = Chamber::new(labeling)?;
        let n = chamber.n();
        let unit = T::from_ratio(1, n as i64 - 3);
        let chord_index: HashMap<(usize, usize), usize> =
            chamber.chords().iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let cat = |k: usize| catalan(k) as i64;
        let mut faces = HashMap::new();
        for mask in chamber.local_faces() {
            let regions = regions_of(&chamber, mask);
            let mut phi = vec![T::zero(); chamber.diagonals().len()];
            let blocked = bits(mask).fold(0u64, |b, i| b | chamber.crossing(i));
            for (i, value) in phi.iter_mut().enumerate() {
                if mask & 1 << i != 0 {
                    *value = unit.clone();
                    continue;
                }
                if blocked & 1 << i != 0 {
                    continue;
                }
                let (p, q) = chamber.chords()[i];
                let region = regions
                    .iter()
                    .find(|r| r.contains(&p) && r.contains(&q))
                    .expect("a free diagonal lies in one region");
                let r = region.len();
                let s = region.iter().filter(|&&v| p <= v && v <= q).count();
                let t = r + 2 - s;
                *value = unit.clone() * T::from_ratio(cat(s - 2) * cat(t - 2), cat(r - 2));
            }
            let regions = regions
                .iter()
                .filter(|r| r.len() >= 4)
                .map(|r| {
                    let len = r.len();
                    let ears = (0..len)
                        .map(|k| {
                            let (a, b) = (r[(k + len - 1) % len], r[(k + 1) % len]);
                            chord_index[&(a.min(b), a.max(b))]
                        })
                        .collect();
                    Region { ears, ear_value: unit.clone() * T::from_ratio(cat(len - 3), cat(len - 2)) }
                })
                .collect();
            faces.insert(mask, FaceData { phi, regions });
        }
        Ok(Self { chamber, unit, faces })
    }

    pub fn chamber(&self) -> &Chamber {
        &self.chamber
    }

    /// `1/(n-3)`.
    pub fn unit(&self) -> &T {
        &self.unit
    }

    /// Image of a local face, indexed like [`Chamber::diagonals`].
    pub fn phi_local(&self, mask: u64) -> Result<&[T]> {
        self.faces
            .get(&mask)
            .map(|f| f.phi.as_slice())
            .ok_or_else(|| Error::InvalidFace(format!("mask {mask:#b} is not a noncrossing diagonal set")))
    }

    /// Image of a triangulation straight from the definition.
    pub fn phi_vertex_local(&self, mask: u64) -> Result<Vec<T>> {
        if !self.chamber.is_noncrossing(mask) || mask.count_ones() as usize + 3 != self.chamber.n() {
            return Err(Error::InvalidFace(format!("mask {mask:#b} is not a triangulation")));
        }
        Ok((0..self.chamber.diagonals().len())
            .map(|i| if mask & 1 << i != 0 { self.unit.clone() } else { T::zero() })
            .collect())
    }

    /// Centroid of the images of the triangulations extending a face.
    pub fn phi_centroid_local(&self, mask: u64) -> Result<Vec<T>> {
        let vertices = self.chamber.extensions(mask);
        if vertices.is_empty() {
            return Err(Error::InvalidFace(format!("mask {mask:#b} is not a noncrossing diagonal set")));
        }
        let mut sum = vec![T::zero(); self.chamber.diagonals().len()];
        for v in &vertices {
            for (acc, x) in sum.iter_mut().zip(self.phi_vertex_local(*v)?) {
                *acc = acc.clone() + x;
            }
        }
        let count = T::from_int(vertices.len() as i64);
        Ok(sum.into_iter().map(|x| x / count.clone()).collect())
    }

    /// `sum_i a_i phi(f_i)` for a chain of local faces.
    pub fn embed_local(&self, chain: &[u64], coefficients: &[T]) -> Result<Vec<T>> {
        let mut x = vec![T::zero(); self.chamber.diagonals().len()];
        for (mask, a) in chain.iter().zip(coefficients) {
            for (xi, p) in x.iter_mut().zip(self.phi_local(*mask)?) {
                if !p.is_zero() {
                    *xi = xi.clone() + a.clone() * p.clone();
                }
            }
        }
        Ok(x)
    }

    /// Recovers the unique chain and coefficients whose image is `x`.
    ///
    /// Starting from the face of diagonals at `1/(n-3)`, each step reads the
    /// weight of the current face off the smallest ear coordinate of every
    /// region with at least four vertices, then takes the next face to be
    /// the diagonals whose remaining coordinate is saturated. Points outside
    /// the image are reported with the first check that fails.
    pub fn decode_local(&self, x: &[T]) -> Result<(Vec<u64>, Vec<T>)> {
        let m = self.chamber.diagonals().len();
        if x.len() != m {
            return Err(Error::Decode(format!("expected {m} coordinates, got {}", x.len())));
        }
        if let Some(v) = x.iter().find(|v| v.is_negative()) {
            return Err(Error::Decode(format!("negative coordinate {}", v.render())));
        }
        let saturated = |y: &[T], level: &T| -> u64 {
            let target = self.unit.clone() * level.clone();
            (0..m).filter(|&i| y[i] == target).fold(0u64, |acc, i| acc | 1 << i)
        };
        let mut residual = x.to_vec();
        let mut remaining = T::one();
        let mut face = saturated(&residual, &remaining);
        let mut chain = Vec::new();
        let mut coefficients = Vec::new();
        loop {
            let data = self
                .faces
                .get(&face)
                .ok_or_else(|| Error::Decode(format!("saturated diagonals {face:#b} cross each other")))?;
            let mut weight = remaining.clone();
            for region in &data.regions {
                let least = region.ears.iter().map(|&i| &residual[i]).min().expect("regions have ears");
                let share = least.clone() / region.ear_value.clone();
                if share < weight {
                    weight = share;
                }
            }
            if !weight.is_positive() {
                return Err(Error::Decode(format!("face {face:#b} gets nonpositive weight {}", weight.render())));
            }
            for (r, p) in residual.iter_mut().zip(&data.phi) {
                if !p.is_zero() {
                    *r = r.clone() - weight.clone() * p.clone();
                }
            }
            remaining = remaining - weight.clone();
            chain.push(face);
            coefficients.push(weight);
            if remaining.is_zero() {
                break;
            }
            if remaining.is_negative() {
                return Err(Error::Decode("weights exceed 1".into()));
            }
            let next = saturated(&residual, &remaining);
            if next & face != face || next == face {
                return Err(Error::Decode(format!("next face {next:#b} does not strictly contain {face:#b}")));
            }
            if chain.len() + 2 > self.chamber.n() {
                return Err(Error::Decode("chain longer than a full flag".into()));
            }
            face = next;
        }
        if let Some(i) = (0..m).find(|&i| !residual[i].is_zero()) {
            return Err(Error::Decode(format!(
                "coordinate of {} is off by {}",
                self.chamber.diagonals()[i],
                residual[i].render()
            )));
        }
        Ok((chain, coefficients))
    }

    fn local_chain(&self, subflag: &Subflag) -> Result<Vec<u64>> {
        subflag.faces().iter().map(|f| self.chamber.face_mask(f)).collect()
    }

    fn network_point(&self, x: &[T]) -> EmbeddedPoint<T> {
        let entries = self.chamber.diagonals().iter().copied().zip(x.iter().cloned());
        let point = NetworkPoint::new(self.chamber.n(), entries).expect("chamber diagonals are circular");
        EmbeddedPoint { chamber: self.chamber.labeling().clone(), point }
    }

    fn local_coordinates(&self, x: &EmbeddedPoint<T>) -> Result<Vec<T>> {
        if x.chamber() != self.chamber.labeling() {
            return Err(Error::Decode(format!("point belongs to chamber {}", x.chamber())));
        }
        Ok(self.chamber.diagonals().iter().map(|d| x.coordinate(d)).collect())
    }
}

/// Image of a triangulation: `1/(n-3)` on each of its diagonals.
pub fn phi_vertex<T: ExactScalar>(v: &AssocFace) -> Result<EmbeddedPoint<T>> {
    let emb = ChamberEmbedding::<T>::new(v.labeling())?;
    let mask = emb.chamber.face_mask(v)?;
    Ok(emb.network_point(&emb.phi_vertex_local(mask)?))
}

/// Image of a face barycenter, by the closed form.
pub fn phi_face<T: ExactScalar>(f: &AssocFace) -> Result<EmbeddedPoint<T>> {
    let emb = ChamberEmbedding::<T>::new(f.labeling())?;
    let mask = emb.chamber.face_mask(f)?;
    Ok(emb.network_point(emb.phi_local(mask)?))
}

/// Image of a face barycenter as the average over its triangulations.
pub fn phi_face_centroid<T: ExactScalar>(f: &AssocFace) -> Result<EmbeddedPoint<T>> {
    let emb = ChamberEmbedding::<T>::new(f.labeling())?;
    let mask = emb.chamber.face_mask(f)?;
    Ok(emb.network_point(&emb.phi_centroid_local(mask)?))
}

pub fn phi_point<T: ExactScalar>(p: &ModuliPoint<T>) -> Result<EmbeddedPoint<T>> {
    let emb = ChamberEmbedding::<T>::new(p.labeling())?;
    let chain = emb.local_chain(p.subflag())?;
    Ok(emb.network_point(&emb.embed_local(&chain, p.coefficients())?))
}

pub fn decode<T: ExactScalar>(x: &EmbeddedPoint<T>) -> Result<ModuliPoint<T>> {
    let emb = ChamberEmbedding::<T>::new(x.chamber())?;
    let (chain, coefficients) = emb.decode_local(&emb.local_coordinates(x)?)?;
    let faces = chain.iter().map(|&m| emb.chamber.face(m)).collect();
    let point = ModuliPoint::new(Subflag::new(faces)?, coefficients)
        .map_err(|e| Error::Consistency(format!("decoded point is invalid: {e}")))?;
    if phi_point(&point)?.point() != x.point() {
        return Err(Error::Consistency("decoded point does not reproduce the input".into()));
    }
    Ok(point)
}

/// Rank of a list of vectors over an exact field.
pub fn exact_rank<T: ExactScalar>(rows: &[Vec<T>]) -> usize {
    let mut rows: Vec<Vec<T>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone() / pivot.clone();
            for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        rank += 1;
    }
    rank
}

/// Affine dimension of the images of the faces of a subflag.
pub fn flag_simplex_dim<T: ExactScalar>(s: &Subflag) -> Result<usize> {
    let emb = ChamberEmbedding::<T>::new(s.labeling())?;
    let chain = emb.local_chain(s)?;
    emb.simplex_dim(&chain)
}

impl<T: ExactScalar> ChamberEmbedding<T> {
    /// Affine dimension of the images of a chain of local faces.
    pub fn simplex_dim(&self, chain: &[u64]) -> Result<usize> {
        let Some((first, rest)) = chain.split_first() else { return Ok(0) };
        let base = self.phi_local(*first)?;
        let diffs = rest
            .iter()
            .map(|m| Ok(self.phi_local(*m)?.iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect()))
            .collect::<Result<Vec<Vec<T>>>>()?;
        Ok(exact_rank(&diffs))
    }
}

/// A face of one chamber copy, named by chamber position and local mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtlasFace {
    pub chamber: usize,
    pub mask: u64,
}

/// One twist identification: twisting `from` along `diagonal` gives `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub from: AtlasFace,
    pub to: AtlasFace,
    pub diagonal: Split,
}

/// The chamber copies of the associahedron with their twist identifications.
#[derive(Debug, Clone)]
pub struct ModuliAtlas {
    pub n: usize,
    pub chambers: Vec<Chamber>,
    /// Every identification from a face along one of its own diagonals, in
    /// `(from, diagonal)` order.
    pub gluings: Vec<Gluing>,
    /// Classes of identified faces, each sorted, ordered by first member.
    pub cells: Vec<Vec<AtlasFace>>,
}

impl ModuliAtlas {
    /// Dimension of a cell: `n - 3` minus its number of diagonals.
    pub fn cell_dim(&self, cell: &[AtlasFace]) -> usize {
        self.n - 3 - cell[0].mask.count_ones() as usize
    }

    pub fn cells_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.n - 2];
        for c in &self.cells {
            out[self.cell_dim(c)] += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells_by_dim().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn face(&self, f: AtlasFace) -> AssocFace {
        self.chambers[f.chamber].face(f.mask)
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Glues the `(n-1)!/2` chamber copies of `K_{n-1}`: a face is identified
/// with the face obtained by twisting along any of its own diagonals.
/// Identified faces are checked to have equal images in network space.
pub fn glue_moduli<T: ExactScalar>(n: usize, bound: usize) -> Result<ModuliAtlas> {
    if n > bound {
        return Err(Error::Capacity { n, bound });
    }
    let orderings = all_orderings(n)?;
    let position: HashMap<CircularOrdering, usize> =
        orderings.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
    let embeddings = orderings.iter().map(ChamberEmbedding::<T>::new).collect::<Result<Vec<_>>>()?;
    let mut nodes: Vec<AtlasFace> = Vec::new();
    for (c, emb) in embeddings.iter().enumerate() {
        nodes.extend(emb.chamber.local_faces().into_iter().map(|mask| AtlasFace { chamber: c, mask }));
    }
    let id: HashMap<AtlasFace, usize> = nodes.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    let mut gluings = Vec::new();
    for from in &nodes {
        let emb = &embeddings[from.chamber];
        for i in bits(from.mask) {
            let d = emb.chamber.diagonals()[i];
            let side = if d.contains(1) { d.complement_mask() } else { d.mask() };
            let twisted = emb.chamber.labeling().reflect_arc(side).expect("diagonal sides are arcs");
            let c2 = position[&twisted];
            let target = &embeddings[c2].chamber;
            let mask = bits(from.mask)
                .map(|j| target.index_of(&emb.chamber.diagonals()[j]).expect("twists keep diagonals circular"))
                .fold(0u64, |m, j| m | 1 << j);
            let to = AtlasFace { chamber: c2, mask };
            if !target.is_noncrossing(mask) {
                return Err(Error::Consistency(format!("twisting along {d} made diagonals cross")));
            }
            let image_from = embeddings[from.chamber].network_point(embeddings[from.chamber].phi_local(from.mask)?);
            let image_to = embeddings[c2].network_point(embeddings[c2].phi_local(mask)?);
            if image_from.point() != image_to.point() {
                return Err(Error::Consistency(format!("faces identified along {d} have different images")));
            }
            let (a, b) = (find(&mut parent, id[from]), find(&mut parent, id[&to]));
            parent[a.max(b)] = a.min(b);
            gluings.push(Gluing { from: *from, to, diagonal: d });
        }
    }
    let mut classes: HashMap<usize, Vec<AtlasFace>> = HashMap::new();
    for (i, f) in nodes.iter().enumerate() {
        classes.entry(find(&mut parent, i)).or_default().push(*f);
    }
    let mut cells: Vec<Vec<AtlasFace>> = classes.into_values().collect();
    cells.iter_mut().for_each(|c| c.sort());
    cells.sort();
    Ok(ModuliAtlas { n, chambers: embeddings.into_iter().map(|e| e.chamber).collect(), gluings, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn s(n: usize, side: &[usize]) -> Split {
        Split::new(n, side).unwrap()
    }

    #[test]
    fn pentagon_top_face_is_uniform() {
        let o = CircularOrdering::identity(5).unwrap();
        let x = phi_face::<Rational>(&AssocFace::top(&o)).unwrap();
        for d in o.diagonal_splits() {
            assert_eq!(x.coordinate(&d), q(1, 5));
        }
        assert_eq!(x.point().total(), q(1, 1));
    }

    #[test]
    fn hexagon_top_face() {
        let o = CircularOrdering::identity(6).unwrap();
        let x = phi_face::<Rational>(&AssocFace::top(&o)).unwrap();
        assert_eq!(x.coordinate(&s(6, &[1, 2])), q(5, 42));
        assert_eq!(x.coordinate(&s(6, &[1, 2, 3])), q(2, 21));
    }

    #[test]
    fn pentagon_edge_face() {
        let o = CircularOrdering::identity(5).unwrap();
        let f = AssocFace::new(&o, [s(5, &[1, 2])]).unwrap();
        let x = phi_face::<Rational>(&f).unwrap();
        assert_eq!(x.coordinate(&s(5, &[1, 2])), q(1, 2));
        assert_eq!(x.coordinate(&s(5, &[4, 5])), q(1, 4));
        assert_eq!(x.coordinate(&s(5, &[3, 4])), q(1, 4));
        assert_eq!(x.coordinate(&s(5, &[2, 3])), q(0, 1));
        assert_eq!(x, phi_face_centroid(&f).unwrap());
    }

    #[test]
    fn vertex_images() {
        let o = CircularOrdering::identity(5).unwrap();
        let v = AssocFace::new(&o, [s(5, &[1, 2]), s(5, &[4, 5])]).unwrap();
        let x = phi_vertex::<Rational>(&v).unwrap();
        assert_eq!(x.point().iter().count(), 2);
        assert_eq!(x.coordinate(&s(5, &[1, 2])), q(1, 2));
        let not_vertex = AssocFace::new(&o, [s(5, &[1, 2])]).unwrap();
        assert!(phi_vertex::<Rational>(&not_vertex).is_err());
    }

    #[test]
    fn decode_round_trips() {
        let o = CircularOrdering::identity(5).unwrap();
        let f = AssocFace::new(&o, [s(5, &[1, 2])]).unwrap();
        let v = AssocFace::new(&o, [s(5, &[1, 2]), s(5, &[4, 5])]).unwrap();
        let p = ModuliPoint::new(Subflag::new(vec![f, v]).unwrap(), vec![q(1, 4), q(3, 4)]).unwrap();
        let x = phi_point(&p).unwrap();
        assert_eq!(decode(&x).unwrap(), p);

        let top = ModuliPoint::new(Subflag::new(vec![AssocFace::top(&o)]).unwrap(), vec![q(1, 1)]).unwrap();
        assert_eq!(decode(&phi_point(&top).unwrap()).unwrap(), top);
    }

    #[test]
    fn decode_rejects_points_outside_the_image() {
        let o = CircularOrdering::identity(5).unwrap();
        let point = NetworkPoint::new(5, [(s(5, &[1, 2]), q(1, 3))]).unwrap();
        let x = EmbeddedPoint::new(o, point).unwrap();
        assert!(matches!(decode(&x), Err(Error::Decode(_))));
    }

    #[test]
    fn simplex_dimension_of_full_flag() {
        let o = CircularOrdering::identity(5).unwrap();
        for flag in crate::assoc::flags(&o, 7).unwrap() {
            assert_eq!(flag_simplex_dim::<Rational>(&flag).unwrap(), 2);
        }
    }

    #[test]
    fn atlas_at_four_is_a_triangle() {
        let atlas = glue_moduli::<Rational>(4, 7).unwrap();
        assert_eq!(atlas.cells_by_dim(), vec![3, 3]);
        assert_eq!(atlas.euler_characteristic(), 0);
    }

    #[test]
    fn atlas_at_five() {
        let atlas = glue_moduli::<Rational>(5, 7).unwrap();
        assert_eq!(atlas.cells_by_dim(), vec![15, 30, 12]);
        assert_eq!(atlas.euler_characteristic(), -3);
    }
}
