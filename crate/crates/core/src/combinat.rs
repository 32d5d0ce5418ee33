//! Pointed-multiset calculus over finite pointed sets, and enumeration of the
//! wedge summands indexing the rank filtration on finite sets.
//!
//! A summand of `G_{k,l}([t])` is labelled by a tuple `(m_1, …, m_t)` of
//! non-negative integers; its rank is `Σ m_i` and it is non-empty only when
//! `l · rank ≤ k`. The all-zero tuple is the basepoint and is never stored in
//! a [`SummandSet`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

/// A basepoint-preserving map `[t] → [s]`; `values[i - 1]` is the image of
/// `i`, and `0` is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedMap {
    target_size: usize,
    values: Vec<usize>,
}

impl PointedMap {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v > target_size) {
            return contract(format!("value {v} outside [{target_size}]"));
        }
        Ok(PointedMap {
            target_size,
            values,
        })
    }

    pub fn identity(t: usize) -> Self {
        PointedMap {
            target_size: t,
            values: (1..=t).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.values[i - 1]
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &PointedMap) -> Result<PointedMap> {
        if first.target_size != self.source_size() {
            return contract(format!(
                "cannot compose [{}]→[{}] after [{}]→[{}]",
                self.source_size(),
                self.target_size,
                first.source_size(),
                first.target_size
            ));
        }
        Ok(PointedMap {
            target_size: self.target_size,
            values: first.values.iter().map(|&v| self.apply(v)).collect(),
        })
    }
}

/// The pair `(k, l)`: a summand sits in `G_{k,l}`, maps `M_l^t → M_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankContext {
    pub k: u32,
    pub l: u32,
}

impl RankContext {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k == 0 || l == 0 {
            return contract(format!("k and l must be positive, got k={k}, l={l}"));
        }
        Ok(RankContext { k, l })
    }

    /// `⌊k/l⌋`, the length of the rank filtration.
    pub fn max_rank(&self) -> u32 {
        self.k / self.l
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple {
    pub context: RankContext,
    pub entries: Vec<u32>,
}

impl IndexTuple {
    pub fn new(context: RankContext, entries: Vec<u32>) -> Self {
        IndexTuple { context, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn is_basepoint(&self) -> bool {
        self.rank() == 0
    }

    /// Whether the summand is non-empty, `l · rank ≤ k`.
    pub fn is_realizable(&self) -> bool {
        self.context.l * self.rank() <= self.context.k
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `α_*(m_1, …, m_t) = (n_1, …, n_s)` with `n_j = Σ_{α(i) = j} m_i`.
pub fn pushforward(alpha: &PointedMap, tuple: &IndexTuple) -> Result<IndexTuple> {
    if alpha.source_size() != tuple.len() {
        return contract(format!(
            "map has source [{}] but tuple has length {}",
            alpha.source_size(),
            tuple.len()
        ));
    }
    let mut out = vec![0; alpha.target_size()];
    for (i, &m) in tuple.entries.iter().enumerate() {
        let j = alpha.apply(i + 1);
        if j > 0 {
            out[j - 1] += m;
        }
    }
    Ok(IndexTuple::new(tuple.context, out))
}

/// Upper bound on rank; `Unbounded` is the unfiltered `G_{k,l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxRank {
    Finite(u32),
    Unbounded,
}

impl MaxRank {
    fn resolve(self, context: RankContext) -> u32 {
        match self {
            MaxRank::Finite(m) => m.min(context.max_rank()),
            MaxRank::Unbounded => context.max_rank(),
        }
    }
}

/// A duplicate-free, lexicographically ordered set of non-basepoint summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandSet {
    pub context: RankContext,
    pub t: usize,
    pub tuples: Vec<IndexTuple>,
}

impl SummandSet {
    fn collect(context: RankContext, t: usize, tuples: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let set: BTreeSet<Vec<u32>> = tuples.into_iter().collect();
        SummandSet {
            context,
            t,
            tuples: set.into_iter().map(|e| IndexTuple::new(context, e)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, entries: &[u32]) -> bool {
        self.tuples
            .binary_search_by(|tuple| tuple.entries.as_slice().cmp(entries))
            .is_ok()
    }
}

/// All tuples of length `t` with entries `≥ min_entry` and rank in `lo..=hi`.
fn tuples_with_rank(t: usize, lo: u32, hi: u32, min_entry: u32) -> Vec<Vec<u32>> {
    struct Walk {
        t: usize,
        lo: u32,
        hi: u32,
        min_entry: u32,
        out: Vec<Vec<u32>>,
    }
    impl Walk {
        fn go(&mut self, so_far: u32, cur: &mut Vec<u32>) {
            let slot = cur.len();
            if slot == self.t {
                if so_far >= self.lo {
                    self.out.push(cur.clone());
                }
                return;
            }
            // Leave room for the minimum in every remaining slot.
            let reserve = self.min_entry * (self.t - slot - 1) as u32;
            if so_far + self.min_entry + reserve > self.hi {
                return;
            }
            for m in self.min_entry..=self.hi - so_far - reserve {
                cur.push(m);
                self.go(so_far + m, cur);
                cur.pop();
            }
        }
    }
    let mut walk = Walk {
        t,
        lo,
        hi,
        min_entry,
        out: Vec::new(),
    };
    if min_entry * t as u32 <= hi {
        walk.go(0, &mut Vec::with_capacity(t));
    }
    walk.out
}

/// Summands of `G_{k,l,m}([t])`: non-zero tuples with `Σ m_i ≤ min(m, ⌊k/l⌋)`.
pub fn enumerate_summands(context: RankContext, t: usize, max_rank: MaxRank) -> SummandSet {
    let bound = max_rank.resolve(context);
    SummandSet::collect(context, t, tuples_with_rank(t, 1, bound, 0))
}

/// Summands of the subquotient at rank exactly `m`; with `positive_only`,
/// only tuples with every entry `≥ 1` (the functor on unpointed sets).
pub fn subquotient_summands(context: RankContext, t: usize, m: u32, positive_only: bool) -> SummandSet {
    if m == 0 || context.l * m > context.k {
        return SummandSet::collect(context, t, []);
    }
    let min_entry = u32::from(positive_only);
    SummandSet::collect(context, t, tuples_with_rank(t, m, m, min_entry))
}

/// Summands of the latching quotient: every entry `≥ 1`, rank `≤ min(m, ⌊k/l⌋)`.
///
/// Empty exactly when `t > min(m, ⌊k/l⌋)`.
pub fn latching_quotient(context: RankContext, t: usize, max_rank: MaxRank) -> SummandSet {
    let bound = max_rank.resolve(context);
    SummandSet::collect(context, t, tuples_with_rank(t, 1, bound, 1))
}

pub fn compose_rank(r: u32, s: u32) -> u32 {
    r * s
}

/// Composes a summand of `G_{k,l}` with one of `G_{l,n}`: the entries are the
/// products `m_i · n_j`, `i` outer, and the result lives over `(k, n)`.
pub fn compose_indices(outer: &IndexTuple, inner: &IndexTuple) -> Result<IndexTuple> {
    if outer.context.l != inner.context.k {
        return contract(format!(
            "cannot compose summand over (k={}, l={}) with one over (k={}, l={})",
            outer.context.k, outer.context.l, inner.context.k, inner.context.l
        ));
    }
    let context = RankContext::new(outer.context.k, inner.context.l)?;
    let entries = outer
        .entries
        .iter()
        .flat_map(|&m| inner.entries.iter().map(move |&n| m * n))
        .collect();
    Ok(IndexTuple::new(context, entries))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Whether `m = p^e` for a prime `p` and `e ≥ 1`.
pub fn is_prime_power(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d)).unwrap_or(m);
    let mut rest = m;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

/// The stage index `i` of the `p`-local regrading, `p^i ≤ m < p^{i+1}`.
pub fn regrade_p(m: u64, p: u64) -> Result<u32> {
    if m == 0 {
        return contract("regrading needs m ≥ 1");
    }
    if !is_prime(p) {
        return contract(format!("{p} is not prime"));
    }
    let mut i = 0;
    let mut power = p;
    while power <= m {
        i += 1;
        match power.checked_mul(p) {
            Some(next) => power = next,
            None => break,
        }
    }
    Ok(i)
}

/// Splits a summand index of `[s] ∨ [t]` into its `[s]` and `[t]` parts.
pub fn split_wedge(tuple: &IndexTuple, s: usize) -> Result<(IndexTuple, IndexTuple)> {
    if s > tuple.len() {
        return contract(format!("cannot split a length {} tuple at {s}", tuple.len()));
    }
    let (a, b) = tuple.entries.split_at(s);
    Ok((
        IndexTuple::new(tuple.context, a.to_vec()),
        IndexTuple::new(tuple.context, b.to_vec()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: u32, l: u32) -> RankContext {
        RankContext::new(k, l).unwrap()
    }

    fn entries(set: &SummandSet) -> BTreeSet<Vec<u32>> {
        set.tuples.iter().map(|t| t.entries.clone()).collect()
    }

    fn set_of(v: &[&[u32]]) -> BTreeSet<Vec<u32>> {
        v.iter().map(|t| t.to_vec()).collect()
    }

    #[test]
    fn pushforward_examples() {
        let alpha = PointedMap::new(2, vec![0, 1, 1]).unwrap();
        let m = IndexTuple::new(ctx(9, 1), vec![4, 2, 3]);
        assert_eq!(pushforward(&alpha, &m).unwrap().entries, vec![5, 0]);

        let id = PointedMap::identity(3);
        assert_eq!(pushforward(&id, &m).unwrap(), m);

        let fold = PointedMap::new(1, vec![1, 1]).unwrap();
        let m = IndexTuple::new(ctx(3, 1), vec![1, 2]);
        assert_eq!(pushforward(&fold, &m).unwrap().entries, vec![3]);
    }

    #[test]
    fn pushforward_length_mismatch() {
        let alpha = PointedMap::identity(2);
        let m = IndexTuple::new(ctx(3, 1), vec![1, 1, 1]);
        assert!(pushforward(&alpha, &m).is_err());
        assert!(PointedMap::new(1, vec![2]).is_err());
    }

    #[test]
    fn summand_examples() {
        assert!(enumerate_summands(ctx(1, 2), 1, MaxRank::Unbounded).is_empty());
        assert_eq!(
            entries(&enumerate_summands(ctx(2, 1), 1, MaxRank::Unbounded)),
            set_of(&[&[1], &[2]])
        );
        let s = enumerate_summands(ctx(4, 1), 2, MaxRank::Finite(2));
        assert_eq!(s.len(), 5);
        assert_eq!(
            entries(&s),
            set_of(&[&[1, 0], &[0, 1], &[2, 0], &[0, 2], &[1, 1]])
        );
        assert!(enumerate_summands(ctx(4, 1), 0, MaxRank::Unbounded).is_empty());
    }

    #[test]
    fn summands_are_lexicographic() {
        let s = enumerate_summands(ctx(6, 1), 3, MaxRank::Finite(3));
        assert!(s.tuples.windows(2).all(|w| w[0].entries < w[1].entries));
        assert!(s.contains(&[0, 1, 2]));
        assert!(!s.contains(&[0, 0, 0]));
    }

    #[test]
    fn subquotient_examples() {
        assert_eq!(
            entries(&subquotient_summands(ctx(2, 1), 2, 2, false)),
            set_of(&[&[2, 0], &[0, 2], &[1, 1]])
        );
        assert_eq!(
            entries(&subquotient_summands(ctx(2, 1), 2, 2, true)),
            set_of(&[&[1, 1]])
        );
        for t in 0..5 {
            assert!(subquotient_summands(ctx(3, 2), t, 2, false).is_empty());
        }
    }

    #[test]
    fn latching_examples() {
        assert!(latching_quotient(ctx(4, 1), 3, MaxRank::Finite(2)).is_empty());
        assert_eq!(
            entries(&latching_quotient(ctx(4, 2), 2, MaxRank::Finite(2))),
            set_of(&[&[1, 1]])
        );
        assert_eq!(
            entries(&latching_quotient(ctx(4, 1), 1, MaxRank::Finite(2))),
            set_of(&[&[1], &[2]])
        );
    }

    #[test]
    fn composition_examples() {
        assert_eq!(compose_rank(2, 3), 6);
        assert_eq!(compose_rank(1, 1), 1);
        let m = IndexTuple::new(ctx(6, 2), vec![2, 1]);
        let n = IndexTuple::new(ctx(2, 1), vec![1, 1]);
        let c = compose_indices(&m, &n).unwrap();
        assert_eq!(c.entries, vec![2, 2, 1, 1]);
        assert_eq!(c.rank(), 6);
        assert_eq!(c.context, ctx(6, 1));
        assert!(c.is_realizable());
        assert!(compose_indices(&n, &n).is_err());
    }

    #[test]
    fn regrading() {
        assert_eq!(regrade_p(8, 2).unwrap(), 3);
        assert_eq!(regrade_p(1, 5).unwrap(), 0);
        assert_eq!(regrade_p(7, 2).unwrap(), 2);
        assert!(regrade_p(8, 4).is_err());
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
        assert!([2, 3, 4, 5, 7, 8, 9, 16, 27].iter().all(|&m| is_prime_power(m)));
        assert!(![10, 12, 15, 18].iter().any(|&m| is_prime_power(m)));
    }

    #[test]
    fn wedge_split() {
        let m = IndexTuple::new(ctx(5, 1), vec![1, 0, 2]);
        let (a, b) = split_wedge(&m, 1).unwrap();
        assert_eq!(a.entries, vec![1]);
        assert_eq!(b.entries, vec![0, 2]);
        assert!(split_wedge(&m, 4).is_err());
    }
}
