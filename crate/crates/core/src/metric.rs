//! Dissimilarity matrices: the four-point and Kalmanson tests, metrics of
//! weighted split networks, and exact split-weight recovery for a circular
//! ordering.
//!
//! Comparisons use an absolute tolerance of `tol * max|d(i,j)|`; for exact
//! scalars `tol` is ignored and every comparison is exact. Equality in a
//! Kalmanson inequality counts as a pass.

use crate::error::{Error, Result};
use crate::ordering::{all_orderings, CircularOrdering};
use crate::scalar::{max_abs, Scalar};
use crate::splits::{check_taxon_count, Split, WeightedSplitSystem};

/// Symmetric, nonnegative, zero-diagonal matrix over taxa `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> DissimilarityMatrix<T> {
    /// Validates rows; symmetry is checked with the scalar's default tolerance.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        check_taxon_count(n, 1)?;
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::MalformedMatrix(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        let eps = T::default_tolerance() * max_abs(&entries);
        for i in 0..n {
            if !entries[i * n + i].is_zero() {
                return Err(Error::MalformedMatrix(format!("nonzero diagonal entry at {}", i + 1)));
            }
            for j in 0..n {
                let v = &entries[i * n + j];
                if v.is_negative() {
                    return Err(Error::MalformedMatrix(format!(
                        "negative entry d({},{}) = {}",
                        i + 1,
                        j + 1,
                        v.render()
                    )));
                }
                if !v.eq_within(&entries[j * n + i], &eps) {
                    return Err(Error::MalformedMatrix(format!("d({},{}) != d({},{})", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_taxon_count(n, 1)?;
        Ok(Self { n, entries: vec![T::zero(); n * n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance between taxa `i` and `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    fn add_symmetric(&mut self, i: usize, j: usize, w: &T) {
        let n = self.n;
        let a = (i - 1) * n + (j - 1);
        let b = (j - 1) * n + (i - 1);
        self.entries[a] = self.entries[a].clone() + w.clone();
        self.entries[b] = self.entries[a].clone();
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn scaled(&self, factor: &T) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|v| v.clone() * factor.clone()).collect() }
    }

    pub fn max_entry(&self) -> T {
        max_abs(&self.entries)
    }

    fn absolute_eps(&self, tol: &T) -> T {
        if T::EXACT {
            T::zero()
        } else {
            tol.clone() * self.max_entry()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// A quadruple whose largest pairing sum is attained only once.
#[derive(Debug, Clone, PartialEq)]
pub struct FourPointWitness<T> {
    pub quadruple: [usize; 4],
    /// `d(i,j)+d(k,l)`, `d(i,l)+d(j,k)`, `d(i,k)+d(j,l)`.
    pub sums: [T; 3],
}

/// Tree-metric test: for every quadruple the maximum of the three pairing
/// sums is attained at least twice. Reports the lexicographically least
/// violating quadruple.
pub fn four_point_check<T: Scalar>(d: &DissimilarityMatrix<T>, tol: &T) -> Result<Verdict<FourPointWitness<T>>> {
    let n = d.n();
    check_taxon_count(n, 4)?;
    let eps = d.absolute_eps(tol);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let sums = [
                        d.get(i, j).clone() + d.get(k, l).clone(),
                        d.get(i, l).clone() + d.get(j, k).clone(),
                        d.get(i, k).clone() + d.get(j, l).clone(),
                    ];
                    let mut sorted = sums.clone();
                    sorted.sort_by(|a, b| a.partial_cmp(b).expect("comparable scalars"));
                    if !sorted[2].eq_within(&sorted[1], &eps) {
                        return Ok(Verdict::Fail(FourPointWitness { quadruple: [i, j, k, l], sums }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Which Kalmanson inequality failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KalmansonInequality {
    /// `d(xi,xj) + d(xk,xl) <= d(xi,xk) + d(xj,xl)`
    Adjacent,
    /// `d(xi,xl) + d(xj,xk) <= d(xi,xk) + d(xj,xl)`
    Wrapped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KalmansonWitness<T> {
    /// The taxa `x_i, x_j, x_k, x_l` in ordering order.
    pub taxa: [usize; 4],
    pub inequality: KalmansonInequality,
    pub lhs: T,
    pub rhs: T,
}

/// Checks both Kalmanson inequalities for every `i<j<k<l` along `ordering`.
pub fn kalmanson_check<T: Scalar>(
    d: &DissimilarityMatrix<T>,
    ordering: &CircularOrdering,
    tol: &T,
) -> Result<Verdict<KalmansonWitness<T>>> {
    let n = d.n();
    check_taxon_count(n, 4)?;
    if ordering.n() != n {
        return Err(Error::AmbientMismatch { left: n, right: ordering.n() });
    }
    let eps = d.absolute_eps(tol);
    let x = ordering.as_slice();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (a, b, c, e) = (x[i], x[j], x[k], x[l]);
                    let rhs = d.get(a, c).clone() + d.get(b, e).clone();
                    let first = d.get(a, b).clone() + d.get(c, e).clone();
                    let second = d.get(a, e).clone() + d.get(b, c).clone();
                    for (lhs, inequality) in
                        [(first, KalmansonInequality::Adjacent), (second, KalmansonInequality::Wrapped)]
                    {
                        if !lhs.le_within(&rhs, &eps) {
                            return Ok(Verdict::Fail(KalmansonWitness {
                                taxa: [a, b, c, e],
                                inequality,
                                lhs,
                                rhs: rhs.clone(),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Exhaustive search over the `(n-1)!/2` orderings; returns the least passing one.
pub fn find_kalmanson_ordering<T: Scalar>(
    d: &DissimilarityMatrix<T>,
    tol: &T,
    bound: usize,
) -> Result<Option<CircularOrdering>> {
    let n = d.n();
    if n > bound {
        return Err(Error::Capacity { n, bound });
    }
    for ordering in all_orderings(n)? {
        if kalmanson_check(d, &ordering, tol)?.is_pass() {
            return Ok(Some(ordering));
        }
    }
    Ok(None)
}

/// `d(i,j)` is the total weight of the splits separating `i` and `j`.
pub fn metric_from_network<T: Scalar>(w: &WeightedSplitSystem<T>) -> DissimilarityMatrix<T> {
    let n = w.n();
    let mut d = DissimilarityMatrix::zeros(n).expect("split systems have a valid taxon count");
    for (split, weight) in w.iter() {
        for i in 1..=n {
            for j in i + 1..=n {
                if split.separates(i, j) {
                    d.add_symmetric(i, j, weight);
                }
            }
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityReport<T> {
    /// Largest absolute entry of `D - metric(w)` with negative weights clamped to zero.
    pub residual: T,
    /// Splits whose solved weight is negative beyond tolerance.
    pub offending: Vec<(Split, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Recovery<T> {
    Realized { weights: WeightedSplitSystem<T>, residual: T },
    Infeasible(InfeasibilityReport<T>),
}

/// Solves for the weights of the `n(n-1)/2` splits circular for `ordering`
/// (nontrivial and trivial) that reproduce `d`.
///
/// The system is square and triangular in the arc basis: the arc
/// `x_a..x_b` has weight
/// `(d(x_{a-1},x_b) + d(x_a,x_{b+1}) - d(x_{a-1},x_{b+1}) - d(x_a,x_b)) / 2`.
pub fn recover_split_weights<T: Scalar>(
    d: &DissimilarityMatrix<T>,
    ordering: &CircularOrdering,
    tol: &T,
) -> Result<Recovery<T>> {
    let n = d.n();
    check_taxon_count(n, 3)?;
    if ordering.n() != n {
        return Err(Error::AmbientMismatch { left: n, right: ordering.n() });
    }
    let eps = d.absolute_eps(tol);
    let x = ordering.as_slice();
    let two = T::from_int(2);
    let mut kept = Vec::new();
    let mut offending = Vec::new();
    for a in 1..n {
        for b in a..n {
            let before = x[a - 1];
            let after = x[(b + 1) % n];
            let w = (d.get(before, x[b]).clone() + d.get(x[a], after).clone()
                - d.get(before, after).clone()
                - d.get(x[a], x[b]).clone())
                / two.clone();
            let split = Split::new(n, &x[a..=b])?;
            if w.is_negative_beyond(&eps) {
                offending.push((split, w));
            } else if w.is_positive() {
                kept.push((split, w));
            }
        }
    }
    let weights = WeightedSplitSystem::new(n, kept)?;
    let fitted = metric_from_network(&weights);
    let residual =
        max_abs(&fitted.entries.iter().zip(&d.entries).map(|(f, e)| f.clone() - e.clone()).collect::<Vec<_>>());
    if !offending.is_empty() || !residual.le_within(&T::zero(), &eps) {
        return Ok(Recovery::Infeasible(InfeasibilityReport { residual, offending }));
    }
    Ok(Recovery::Realized { weights, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn matrix(rows: &[&[i64]]) -> DissimilarityMatrix<Rational> {
        DissimilarityMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect(),
        )
        .unwrap()
    }

    fn crossing_pair() -> DissimilarityMatrix<Rational> {
        matrix(&[&[0, 1, 2, 1], &[1, 0, 1, 2], &[2, 1, 0, 1], &[1, 2, 1, 0]])
    }

    fn unit_quartet() -> DissimilarityMatrix<Rational> {
        matrix(&[&[0, 2, 3, 3], &[2, 0, 3, 3], &[3, 3, 0, 2], &[3, 3, 2, 0]])
    }

    fn zero() -> Rational {
        Rational::from_int(0)
    }

    #[test]
    fn rejects_malformed_matrices() {
        let bad = |rows: Vec<Vec<f64>>| DissimilarityMatrix::from_rows(rows).unwrap_err();
        assert!(matches!(bad(vec![vec![0.0, 1.0], vec![2.0, 0.0]]), Error::MalformedMatrix(_)));
        assert!(matches!(bad(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]), Error::MalformedMatrix(_)));
        assert!(matches!(bad(vec![vec![1.0, 1.0], vec![1.0, 0.0]]), Error::MalformedMatrix(_)));
        assert!(matches!(bad(vec![vec![0.0, 1.0], vec![1.0]]), Error::MalformedMatrix(_)));
    }

    #[test]
    fn four_point_examples() {
        let z = DissimilarityMatrix::<Rational>::zeros(5).unwrap();
        assert!(four_point_check(&z, &zero()).unwrap().is_pass());
        assert!(four_point_check(&unit_quartet(), &zero()).unwrap().is_pass());

        let bad = matrix(&[&[0, 2, 2, 3], &[2, 0, 3, 3], &[2, 3, 0, 2], &[3, 3, 2, 0]]);
        let witness = four_point_check(&bad, &zero()).unwrap();
        let w = witness.witness().unwrap();
        assert_eq!(w.quadruple, [1, 2, 3, 4]);
        assert_eq!(w.sums, [4, 6, 5].map(Rational::from_int));

        let v = four_point_check(&crossing_pair(), &zero()).unwrap();
        assert_eq!(v.witness().unwrap().sums, [2, 2, 4].map(Rational::from_int));
    }

    #[test]
    fn kalmanson_examples() {
        let id = CircularOrdering::identity(4).unwrap();
        let z = DissimilarityMatrix::<Rational>::zeros(4).unwrap();
        assert!(kalmanson_check(&z, &id, &zero()).unwrap().is_pass());
        assert!(kalmanson_check(&crossing_pair(), &id, &zero()).unwrap().is_pass());
        let other = CircularOrdering::new(vec![1, 3, 2, 4]).unwrap();
        let v = kalmanson_check(&crossing_pair(), &other, &zero()).unwrap();
        assert_eq!(v.witness().unwrap().taxa, [1, 3, 2, 4]);
    }

    #[test]
    fn ordering_search() {
        assert_eq!(
            find_kalmanson_ordering(&crossing_pair(), &zero(), 9).unwrap(),
            Some(CircularOrdering::identity(4).unwrap())
        );
        let z = DissimilarityMatrix::<f64>::zeros(6).unwrap();
        assert_eq!(find_kalmanson_ordering(&z, &1e-9, 9).unwrap(), Some(CircularOrdering::identity(6).unwrap()));
        let big = DissimilarityMatrix::<f64>::zeros(10).unwrap();
        assert_eq!(find_kalmanson_ordering(&big, &1e-9, 9), Err(Error::Capacity { n: 10, bound: 9 }));
    }

    #[test]
    fn four_point_violator_has_a_kalmanson_ordering() {
        // sums over pairings: {12,34}=4, {14,23}=6, {13,24}=5
        let bad = matrix(&[&[0, 2, 2, 3], &[2, 0, 3, 3], &[2, 3, 0, 2], &[3, 3, 2, 0]]);
        let found = find_kalmanson_ordering(&bad, &zero(), 9).unwrap();
        assert_eq!(found, Some(CircularOrdering::new(vec![1, 2, 4, 3]).unwrap()));
    }

    #[test]
    fn recovers_quartet_weights() {
        let id = CircularOrdering::identity(4).unwrap();
        let Recovery::Realized { weights, residual } = recover_split_weights(&unit_quartet(), &id, &zero()).unwrap()
        else {
            panic!("quartet metric is circular for the identity ordering");
        };
        assert_eq!(residual, zero());
        let one = Rational::from_int(1);
        assert_eq!(weights.weight(&Split::new(4, &[1, 2]).unwrap()), Some(&one));
        assert_eq!(weights.weight(&Split::new(4, &[2, 3]).unwrap()), None);
        for t in 1..=4 {
            assert_eq!(weights.weight(&Split::new(4, &[t]).unwrap()), Some(&one));
        }
        assert_eq!(weights.len(), 5);
    }

    #[test]
    fn zero_matrix_recovers_empty_system() {
        let z = DissimilarityMatrix::<Rational>::zeros(5).unwrap();
        let id = CircularOrdering::identity(5).unwrap();
        match recover_split_weights(&z, &id, &zero()).unwrap() {
            Recovery::Realized { weights, .. } => assert!(weights.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_kalmanson_ordering_is_infeasible() {
        let order = CircularOrdering::new(vec![1, 3, 2, 4]).unwrap();
        match recover_split_weights(&crossing_pair(), &order, &zero()).unwrap() {
            Recovery::Infeasible(report) => assert!(!report.offending.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
