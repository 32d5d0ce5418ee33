//! Univariate polynomials over an exact [`Scalar`] field, and the
//! non-negative integer [`PoincarePoly`] in which graded dimensions are
//! reported.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense polynomial in one variable, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    /// `1 - q^n`.
    pub fn one_minus_power(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[0] = T::one();
        coeffs[n] = coeffs[n].clone() - T::one();
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    /// Long division; fails if `divisor` does not divide `self` exactly.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::NonExactDivision("division by zero polynomial".into()));
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Err(Error::NonExactDivision(format!(
                "degree {nd} dividend by degree {dd} divisor"
            )));
        }
        let mut quot = vec![T::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision(format!(
                "remainder {} left dividing {} by {}",
                Self::from_coeffs(rem),
                self,
                divisor
            )));
        }
        Ok(Self::from_coeffs(quot))
    }

    /// `∏_{i=1}^{n} (1 - q^i)`.
    pub fn q_pochhammer(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, i| acc.mul(&Self::one_minus_power(i)))
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Graded dimensions of rational cohomology: degree → Betti number.
///
/// `truncation` is `Some(n)` when only degrees `≤ n` were computed; the
/// coefficients above it are unknown rather than zero.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoincarePoly {
    coeffs: BTreeMap<u32, u64>,
    #[serde(skip)]
    truncation: Option<u32>,
}

impl PoincarePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_pairs([(0, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in pairs {
            if c != 0 {
                *coeffs.entry(d).or_insert(0) += c;
            }
        }
        PoincarePoly {
            coeffs,
            truncation: None,
        }
    }

    /// Dense coefficient list, index = degree.
    pub fn from_dense(coeffs: &[u64]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(d, &c)| (d as u32, c)))
    }

    /// Substitutes `q = t^2` into an integer polynomial in `q`.
    ///
    /// Fails if a coefficient is negative or not an integer.
    pub fn from_q_poly<T: Scalar>(poly: &Poly<T>) -> Result<Self> {
        let mut pairs = Vec::new();
        for (d, c) in poly.coeffs().iter().enumerate() {
            let value = c.to_exact_i64().ok_or_else(|| {
                Error::InvariantViolation(format!("non-integral coefficient {c} in degree {d}"))
            })?;
            let value = u64::try_from(value).map_err(|_| {
                Error::InvariantViolation(format!("negative coefficient {value} in degree {d}"))
            })?;
            pairs.push((2 * d as u32, value));
        }
        Ok(Self::from_pairs(pairs))
    }

    pub fn truncated(mut self, cutoff: u32) -> Self {
        self.coeffs.retain(|&d, _| d <= cutoff);
        self.truncation = Some(self.truncation.map_or(cutoff, |t| t.min(cutoff)));
        self
    }

    pub(crate) fn with_truncation(mut self, truncation: Option<u32>) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn coeff(&self, degree: u32) -> u64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, u64> {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0) == 1
    }

    /// Total rank, `P(1)`.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::from_pairs(
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(&d, &c)| (d, c)),
        );
        out.truncation = match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(t) = out.truncation {
            out.coeffs.retain(|&d, _| d <= t);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut pairs = Vec::new();
        for (&a, &x) in &self.coeffs {
            for (&b, &y) in &other.coeffs {
                pairs.push((a + b, x * y));
            }
        }
        let mut out = Self::from_pairs(pairs);
        // An unknown coefficient above the cutoff can only feed degrees above it.
        let limit = match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(t) = limit {
            out = out.truncated(t);
        }
        out
    }

    /// True when both agree in every degree `≤ degree`.
    pub fn agrees_through(&self, other: &Self, degree: u32) -> bool {
        (0..=degree).all(|d| self.coeff(d) == other.coeff(d))
    }

    /// Equality in all degrees known to both sides.
    pub fn agrees_with(&self, other: &Self) -> bool {
        match (self.truncation, other.truncation) {
            (None, None) => self.coeffs == other.coeffs,
            (a, b) => {
                let limit = match (a, b) {
                    (Some(a), Some(b)) => a.min(b),
                    (a, b) => a.or(b).unwrap_or(0),
                };
                self.agrees_through(other, limit)
            }
        }
    }

    /// `P(t) = t^d P(1/t)` with `d` the top degree.
    pub fn is_palindromic(&self) -> bool {
        let Some(top) = self.degree() else {
            return true;
        };
        self.coeffs.iter().all(|(&d, &c)| self.coeff(top - d) == c)
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (&d, &c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (1, c) => write!(f, "{c}t")?,
                (d, c) => write!(f, "{c}t^{d}")?,
            }
        }
        if let Some(t) = self.truncation {
            write!(f, " + O(t^{})", t + 1)?;
        }
        Ok(())
    }
}

/// Integer polynomial with signs, used for alternating sums over cubes.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedPoly {
    coeffs: BTreeMap<u32, i64>,
}

impl SignedPoly {
    pub fn add_scaled(&mut self, p: &PoincarePoly, sign: i64) {
        for (&d, &c) in p.coefficients() {
            let entry = self.coeffs.entry(d).or_insert(0);
            *entry += sign * c as i64;
            if *entry == 0 {
                self.coeffs.remove(&d);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, i64> {
        &self.coeffs
    }
}

impl fmt::Display for SignedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| if *d == 0 { format!("{c}") } else { format!("{c}t^{d}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
