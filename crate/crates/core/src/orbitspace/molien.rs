//! Poincaré polynomials of torus-commensurable orbit spaces by averaging the
//! graded character of the `S_k` coinvariant algebra.
//!
//! For `H ⊇ T` with Weyl-type group `W ≤ S_k` acting on the torus
//! coordinates, `H*(U(k)/H; ℚ)` is the `W`-invariant part of the coinvariant
//! algebra `ℚ[x_1, …, x_k]/(e_1, …, e_k)`. Its graded dimension is the
//! average over `W` of the graded trace
//! `∏_{i=1}^{k} (1 − q^i) / ∏_{cycles c} (1 − q^{|c|})`, summed over cycle
//! types weighted by class size. `q` has cohomological degree 2.

use crate::error::{contract, Error, Result};
use crate::orbitspace::descriptor::{Factor, OrbitDescriptor};
use crate::poly::{PoincarePoly, Poly};
use crate::scalar::Scalar;

/// Graded character of the `S_k` coinvariant algebra at a permutation of
/// the given cycle type, as a polynomial in `q`.
pub fn graded_char_coinv<T: Scalar>(cycle_type: &[u32], k: u32) -> Result<Poly<T>> {
    if cycle_type.contains(&0) || cycle_type.iter().sum::<u32>() != k {
        return contract(format!("{cycle_type:?} is not a partition of {k}"));
    }
    let denominator = cycle_type
        .iter()
        .fold(Poly::one(), |acc, &c| acc.mul(&Poly::one_minus_power(c as usize)));
    Poly::q_pochhammer(k as usize).div_exact(&denominator)
}

/// Molien average over the Weyl-type group of `descriptor`, in any exact field.
pub fn molien_series<T: Scalar>(descriptor: &OrbitDescriptor) -> Result<Poly<T>> {
    if !descriptor.is_torus_commensurable() {
        return Err(Error::NotTorusCommensurable(descriptor.to_string()));
    }
    let k = descriptor.ambient();
    let mut index = descriptor.group().coordinate_cycle_index::<T>();
    if descriptor.complement() > 0 {
        index = index.product(&Factor::block(descriptor.complement(), 1).coordinate_cycle_index());
    }
    let mut sum = Poly::zero();
    for (cycle_type, weight) in index.terms() {
        sum = sum.add(&graded_char_coinv::<T>(cycle_type, k)?.scale(weight));
    }
    Ok(sum)
}

pub fn molien_poincare_in<T: Scalar>(descriptor: &OrbitDescriptor) -> Result<PoincarePoly> {
    let series = molien_series::<T>(descriptor)?;
    PoincarePoly::from_q_poly(&series).map_err(|e| {
        Error::InvariantViolation(format!("Molien average for {descriptor} is not a Poincaré polynomial: {e}"))
    })
}

/// `H*(U(k)/H; ℚ)` for torus-commensurable `H`, over the rationals.
pub fn molien_poincare(descriptor: &OrbitDescriptor) -> Result<PoincarePoly> {
    molien_poincare_in::<crate::Rational>(descriptor)
}

/// Gaussian binomial `[n choose r]_q` by the q-Pascal recurrence.
fn gaussian_binomial(n: usize, r: usize) -> Vec<u64> {
    if r > n {
        return vec![];
    }
    // row[r] for the current n
    let mut rows: Vec<Vec<Vec<u64>>> = vec![vec![vec![1]]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            // [m, j] = [m-1, j-1] + q^j [m-1, j]
            let mut c = vec![0u64; j * (m - j) + 1];
            if j >= 1 {
                for (d, &x) in prev[j - 1].iter().enumerate() {
                    c[d] += x;
                }
            }
            if j < m {
                for (d, &x) in prev[j].iter().enumerate() {
                    c[d + j] += x;
                }
            }
            row.push(c);
        }
        rows.push(row);
    }
    rows[n][r].clone()
}

/// `[k]_q! / ∏ [k_i]_q!` at `q = t²`: the Poincaré polynomial of the partial
/// flag manifold `U(k)/∏ U(k_i)`, built independently of the coinvariant
/// engine.
pub fn flag_poincare_oracle(composition: &[u32]) -> PoincarePoly {
    let mut acc = vec![1u64];
    let mut total = 0usize;
    for &part in composition {
        total += part as usize;
        let binom = gaussian_binomial(total, part as usize);
        let mut next = vec![0u64; acc.len() + binom.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in binom.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    PoincarePoly::from_pairs(acc.iter().enumerate().map(|(d, &c)| (2 * d as u32, c)))
}

/// Every composition of `k` (ordered, positive parts).
pub fn compositions(k: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    (1..=k)
        .flat_map(|first| {
            compositions(k - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}
