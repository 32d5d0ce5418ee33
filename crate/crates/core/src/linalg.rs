//! Sparse exact linear algebra: incremental row echelon forms over a
//! [`Scalar`] field.

use std::collections::{BTreeSet, HashMap};

use crate::scalar::Scalar;

/// Sparse vector as `(index, value)` pairs, strictly increasing index,
/// no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Scalar> SparseVec<T> {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Builds a vector from unsorted entries, summing duplicates.
    pub fn from_entries(mut entries: Vec<(usize, T)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, T)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.clone() + v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<&(usize, T)> {
        self.entries.first()
    }

    pub fn scale(&mut self, factor: &T) {
        for (_, v) in &mut self.entries {
            *v = v.clone() * factor.clone();
        }
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: &T, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, factor.clone() * y.clone()));
                        b.next();
                    } else {
                        let v = x.clone() + factor.clone() * y.clone();
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, factor.clone() * y.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }
}

impl<T: Scalar> Default for SparseVec<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Incremental echelon basis: vectors are reduced against the stored pivots
/// on insertion and kept only if independent.
///
/// Stored rows are normalized so their leading entry is one.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<T> {
    pivots: HashMap<usize, SparseVec<T>>,
    order: Vec<usize>,
}

impl<T: Scalar> EchelonBuilder<T> {
    pub fn new() -> Self {
        EchelonBuilder {
            pivots: HashMap::new(),
            order: Vec::new(),
        }
    }

    pub fn reduce(&self, mut v: SparseVec<T>) -> SparseVec<T> {
        while let Some((lead, value)) = v.lead() {
            match self.pivots.get(lead) {
                Some(row) => {
                    let factor = -value.clone();
                    v = v.axpy(&factor, row);
                }
                None => break,
            }
        }
        v
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: SparseVec<T>) -> bool {
        let mut v = self.reduce(v);
        let Some((lead, value)) = v.lead().cloned() else {
            return false;
        };
        let inv = T::one() / value;
        v.scale(&inv);
        self.pivots.insert(lead, v);
        self.order.push(lead);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The stored rows in insertion order. They span the inserted vectors.
    pub fn basis(&self) -> Vec<SparseVec<T>> {
        self.order.iter().map(|i| self.pivots[i].clone()).collect()
    }
}

impl<T: Scalar> Default for EchelonBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Rank by sparse elimination with Markowitz-style pivoting: the pivot is
/// taken from the sparsest remaining row, in its least-populated column.
pub fn rank<T: Scalar>(rows: impl IntoIterator<Item = SparseVec<T>>) -> usize {
    let mut rows: Vec<Option<SparseVec<T>>> = rows
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(Some)
        .collect();
    let mut columns: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap().entries() {
            columns.entry(*c).or_default().insert(i);
        }
    }
    // Rows bucketed by length so the sparsest is found quickly.
    let mut by_len: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_ref().unwrap().entries().len(), i))
        .collect();
    let mut rank = 0;
    while let Some((_, pivot_row)) = by_len.pop_first() {
        let pivot = rows[pivot_row].take().unwrap();
        for (c, _) in pivot.entries() {
            columns.get_mut(c).unwrap().remove(&pivot_row);
        }
        let (pivot_col, pivot_val) = pivot
            .entries()
            .iter()
            .min_by_key(|(c, _)| columns[c].len())
            .cloned()
            .unwrap();
        rank += 1;
        let targets: Vec<usize> = columns[&pivot_col].iter().copied().collect();
        for t in targets {
            let row = rows[t].take().unwrap();
            by_len.remove(&(row.entries().len(), t));
            let factor = -(row.entries().iter().find(|(c, _)| *c == pivot_col).unwrap().1.clone()
                / pivot_val.clone());
            let reduced = row.axpy(&factor, &pivot);
            for (c, _) in row.entries() {
                columns.get_mut(c).unwrap().remove(&t);
            }
            if reduced.is_zero() {
                continue;
            }
            for (c, _) in reduced.entries() {
                columns.entry(*c).or_default().insert(t);
            }
            by_len.insert((reduced.entries().len(), t));
            rows[t] = Some(reduced);
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, Rational64};
    use num_traits::One;
    use proptest::prelude::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec<Rational64> {
        SparseVec::from_entries(entries.iter().map(|&(i, x)| (i, Rational64::from_integer(x))).collect())
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 3)])];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let x = v(&[(3, 1), (1, 2), (3, -1)]);
        assert_eq!(x.entries().len(), 1);
        assert_eq!(x.entries()[0].0, 1);
    }

    #[test]
    fn basis_rows_are_normalized() {
        let mut eb = EchelonBuilder::<Rational>::new();
        assert!(eb.insert(SparseVec::from_entries(vec![(2, Rational::from_integer(5.into()))])));
        assert!(eb.basis()[0].entries()[0].1.is_one());
    }

    // Dense Gaussian elimination as an independent reference.
    fn dense_rank(mut m: Vec<Vec<Rational64>>) -> usize {
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Rational64::from_integer(0)) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][c] != Rational64::from_integer(0) {
                    let f = m[r][c] / m[rank][c];
                    let pivot_row = m[rank].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn matches_dense_rank(m in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 0..7)) {
            let dense: Vec<Vec<Rational64>> =
                m.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
            let sparse = m.iter().map(|r| {
                SparseVec::from_entries(r.iter().enumerate().map(|(i, &x)| (i, Rational64::from_integer(x))).collect())
            });
            prop_assert_eq!(rank(sparse), dense_rank(dense));
        }
    }
}
