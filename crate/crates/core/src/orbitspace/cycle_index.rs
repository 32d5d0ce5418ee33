//! Cycle indices of permutation groups, stored as class-size-weighted
//! cycle types: `Z(G) = (1/|G|) Σ_g p_{type(g)}`.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Partitions of `n` as weakly decreasing part lists, in reverse
/// lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into exactly `parts` positive parts.
pub fn partitions_into(n: u32, parts: u32) -> Vec<Vec<u32>> {
    partitions(n)
        .into_iter()
        .filter(|p| p.len() == parts as usize)
        .collect()
}

/// Size of the centralizer of a permutation with cycle type `lambda`:
/// `z_λ = ∏_i i^{m_i} m_i!`.
pub fn centralizer_order(lambda: &[u32]) -> u64 {
    let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
    for &p in lambda {
        *mult.entry(p).or_insert(0) += 1;
    }
    mult.iter()
        .map(|(&i, &m)| (i as u64).pow(m as u32) * (1..=m).product::<u64>())
        .product()
}

/// A cycle index over a scalar field; keys are decreasing cycle-length lists.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleIndex<T> {
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> CycleIndex<T> {
    /// The trivial group on zero points.
    pub fn identity() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), T::one());
        CycleIndex { terms }
    }

    /// `Z(S_n) = Σ_{λ ⊢ n} p_λ / z_λ`.
    pub fn symmetric(n: u32) -> Self {
        let terms = partitions(n)
            .into_iter()
            .map(|lambda| {
                let w = T::one() / T::from_i64(centralizer_order(&lambda) as i64);
                (lambda, w)
            })
            .collect();
        CycleIndex { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.terms
    }

    fn add_term(terms: &mut BTreeMap<Vec<u32>, T>, key: Vec<u32>, w: T) {
        let entry = terms.entry(key).or_insert_with(T::zero);
        *entry = entry.clone() + w;
    }

    /// Direct product acting on disjoint point sets.
    pub fn product(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut key: Vec<u32> = a.iter().chain(b).copied().collect();
                key.sort_unstable_by(|p, q| q.cmp(p));
                Self::add_term(&mut terms, key, x.clone() * y.clone());
            }
        }
        terms.retain(|_, w| !w.is_zero());
        CycleIndex { terms }
    }

    /// `self` with every cycle length multiplied by `j`.
    fn stretched(&self, j: u32) -> Self {
        CycleIndex {
            terms: self
                .terms
                .iter()
                .map(|(k, w)| (k.iter().map(|&p| p * j).collect(), w.clone()))
                .collect(),
        }
    }

    /// Cycle index of the wreath product `self ≀ inner` in its imprimitive
    /// action, where `self` permutes the copies of `inner`'s point set:
    /// substitute `p_j ↦ inner(p_i ↦ p_{ij})`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (lambda, w) in &self.terms {
            let expanded = lambda
                .iter()
                .fold(Self::identity(), |acc, &j| acc.product(&inner.stretched(j)));
            for (key, x) in expanded.terms {
                Self::add_term(&mut terms, key, w.clone() * x);
            }
        }
        terms.retain(|_, w| !w.is_zero());
        CycleIndex { terms }
    }

    /// Sum of the weights, which is 1 for any group.
    pub fn total_weight(&self) -> T {
        self.terms.values().fold(T::zero(), |a, w| a + w.clone())
    }
}
