//! Cartan-model computation of `H*(U(k)/H; ℚ)`.
//!
//! For connected `H₀` the cohomology of `U(k)/H₀` is that of the Koszul
//! complex `H*(BH₀) ⊗ Λ(y_1, …, y_k)` with `deg y_i = 2i − 1`, `d = 0` on
//! the base and `d(y_i) = ρ*(c_i)`, the `i`-th Chern class of `ℂ^k`
//! restricted to `H₀`. A block `U(a) ⊗ I_l` contributes Chern classes
//! `e_1, …, e_a` and a factor `c(V)^l` to the total Chern class; the
//! complement `U(c)` contributes `c(W)`; framed dimensions contribute 1.
//! A finite group of block permutations acts on the base only, and over `ℚ`
//! the cohomology of `U(k)/H` is the cohomology of the invariant subcomplex.
//!
//! Every generator has a weight: `i` for the `i`-th Chern class of a block
//! and for `y_i`. The differential preserves weight, and in total degree `n`
//! and weight `w` exactly `s = 2w − n` exterior generators occur. Each degree
//! is therefore a direct sum of small weight pieces that are reduced
//! independently with exact sparse elimination.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{contract, Error, Result};
use crate::linalg::{self, EchelonBuilder, SparseVec};
use crate::orbitspace::{molien_poincare, OrbitDescriptor, PoincareCache};
use crate::poly::PoincarePoly;
use crate::scalar::Scalar;

type Exponents = Vec<u16>;

/// Polynomial in the base generators.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<T> {
    terms: BTreeMap<Exponents, T>,
}

impl<T: Scalar> MPoly<T> {
    fn constant(n_gens: usize, value: T) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(vec![0; n_gens], value);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, T> {
        &self.terms
    }

    fn mul_truncated(&self, other: &Self, weights: &[u32], max_weight: u32) -> Self {
        let mut terms: BTreeMap<Exponents, T> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Exponents = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if weight_of(&e, weights) > max_weight {
                    continue;
                }
                let entry = terms.entry(e).or_insert_with(T::zero);
                *entry = entry.clone() + x.clone() * y.clone();
            }
        }
        terms.retain(|_, v| !v.is_zero());
        MPoly { terms }
    }

    fn homogeneous_part(&self, weights: &[u32], weight: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weight_of(e, weights) == weight)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    fn permuted(&self, gen_perm: &[usize]) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (permute_exponents(e, gen_perm), v.clone()))
                .collect(),
        }
    }
}

fn weight_of(e: &[u16], weights: &[u32]) -> u32 {
    e.iter().zip(weights).map(|(&p, &w)| p as u32 * w).sum()
}

fn permute_exponents(e: &[u16], gen_perm: &[usize]) -> Exponents {
    let mut out = vec![0; e.len()];
    for (g, &p) in e.iter().enumerate() {
        out[gen_perm[g]] = p;
    }
    out
}

/// A base generator: the `index`-th Chern class of block `block`. The
/// complement, if any, is the block after the last group block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub block: usize,
    pub index: u32,
}

/// `ρ*: H*(BU(k)) → H*(BH₀)` on the Chern classes.
#[derive(Clone, Debug)]
pub struct RestrictionMap<T> {
    ambient: u32,
    generators: Vec<Generator>,
    weights: Vec<u32>,
    chern_images: Vec<MPoly<T>>,
}

impl<T: Scalar> RestrictionMap<T> {
    pub fn from_descriptor(descriptor: &OrbitDescriptor) -> Self {
        let k = descriptor.ambient();
        let mut factors: Vec<(u32, u32)> = descriptor
            .blocks()
            .iter()
            .map(|b| (b.size, b.multiplicity))
            .collect();
        if descriptor.complement() > 0 {
            factors.push((descriptor.complement(), 1));
        }
        let mut generators = Vec::new();
        for (block, &(size, _)) in factors.iter().enumerate() {
            for index in 1..=size {
                generators.push(Generator { block, index });
            }
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.index).collect();
        let n = generators.len();

        let mut total = MPoly::constant(n, T::one());
        let mut offset = 0;
        for &(size, multiplicity) in &factors {
            let mut chern = MPoly::constant(n, T::one());
            for j in 0..size as usize {
                let mut e = vec![0; n];
                e[offset + j] = 1;
                chern.terms.insert(e, T::one());
            }
            for _ in 0..multiplicity {
                total = total.mul_truncated(&chern, &weights, k);
            }
            offset += size as usize;
        }
        let chern_images = (1..=k).map(|i| total.homogeneous_part(&weights, i)).collect();
        RestrictionMap {
            ambient: k,
            generators,
            weights,
            chern_images,
        }
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `ρ*(c_i)`, `1 ≤ i ≤ k`.
    pub fn chern_image(&self, i: u32) -> &MPoly<T> {
        &self.chern_images[i as usize - 1]
    }

    /// Every `ρ*(c_i)` is homogeneous of weight `i`, i.e. of degree `2i`.
    pub fn is_graded(&self) -> bool {
        self.chern_images.iter().enumerate().all(|(i, p)| {
            p.terms
                .keys()
                .all(|e| weight_of(e, &self.weights) == i as u32 + 1)
        })
    }

    /// Lifts block permutations to permutations of the generators.
    fn lift(&self, block_perm: &[usize]) -> Option<Vec<usize>> {
        let position: HashMap<(usize, u32), usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| ((g.block, g.index), i))
            .collect();
        self.generators
            .iter()
            .map(|g| {
                let target = block_perm.get(g.block).copied().unwrap_or(g.block);
                position.get(&(target, g.index)).copied()
            })
            .collect()
    }
}

/// Resource limits for the Cartan engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanConfig {
    /// Largest weight piece (basis size) the engine will reduce.
    pub max_piece_dim: usize,
}

impl Default for CartanConfig {
    fn default() -> Self {
        CartanConfig {
            max_piece_dim: 250_000,
        }
    }
}

/// A basis element `x^e · y_S`; bit `i − 1` of the mask is `y_i`.
type Term = (Exponents, u32);

struct Piece {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
}

/// Koszul complex `H*(BH₀) ⊗ Λ(y)` with a finite group acting on the base.
pub struct KoszulComplex<T> {
    restriction: RestrictionMap<T>,
    group: Vec<Vec<usize>>,
    config: CartanConfig,
}

/// Graded dimensions of a truncated computation, with the data needed to
/// audit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanResult {
    pub poincare: PoincarePoly,
    /// Dimension of the (invariant) cochains in each degree `0..=cutoff`.
    pub cochain_dims: Vec<usize>,
    /// Rank of `d` leaving each degree `0..=cutoff`.
    pub ranks: Vec<usize>,
}

impl CartanResult {
    /// Rank–nullity audit: `Σ_{n≤N} (−1)^n (dim C^n − dim H^n) = (−1)^N rank d_N`.
    pub fn euler_audit(&self) -> bool {
        let n = self.cochain_dims.len();
        if n == 0 {
            return true;
        }
        let mut lhs: i64 = 0;
        for d in 0..n {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            lhs += sign * (self.cochain_dims[d] as i64 - self.poincare.coeff(d as u32) as i64);
        }
        let top = n - 1;
        let rhs = if top.is_multiple_of(2) { 1 } else { -1 } * self.ranks[top] as i64;
        lhs == rhs
    }
}

impl<T: Scalar> KoszulComplex<T> {
    /// Complex for `descriptor`, with its block-permutation group.
    pub fn from_descriptor(descriptor: &OrbitDescriptor, config: CartanConfig) -> Result<Self> {
        let restriction = RestrictionMap::from_descriptor(descriptor);
        let block_perms = descriptor.group().block_permutations();
        Self::with_group(restriction, &block_perms, config)
    }

    /// Complex with an explicit group given as permutations of the blocks.
    /// Fails if some element does not commute with `d`.
    pub fn with_group(
        restriction: RestrictionMap<T>,
        block_perms: &[Vec<usize>],
        config: CartanConfig,
    ) -> Result<Self> {
        let mut group = Vec::with_capacity(block_perms.len());
        for bp in block_perms {
            let gp = restriction.lift(bp).ok_or_else(|| {
                Error::InvariantViolation(format!("block permutation {bp:?} mixes blocks of different sizes"))
            })?;
            for i in 1..=restriction.ambient {
                let image = restriction.chern_image(i);
                if image.permuted(&gp) != *image {
                    return Err(Error::InvariantViolation(format!(
                        "block permutation {bp:?} moves ρ*(c_{i}), so it does not commute with d"
                    )));
                }
            }
            group.push(gp);
        }
        if group.is_empty() {
            group.push((0..restriction.generators.len()).collect());
        }
        Ok(KoszulComplex {
            restriction,
            group,
            config,
        })
    }

    pub fn restriction(&self) -> &RestrictionMap<T> {
        &self.restriction
    }

    fn is_trivial_group(&self) -> bool {
        self.group.len() == 1
    }

    /// Weights occurring in total degree `n`.
    fn weights_in_degree(&self, n: u32) -> impl Iterator<Item = u32> {
        let k = self.restriction.ambient;
        (n.div_ceil(2)..=(n + k) / 2).filter(move |w| 2 * w >= n && 2 * w - n <= k)
    }

    fn build_piece(&self, n: u32, w: u32) -> Result<Piece> {
        let k = self.restriction.ambient;
        let s = 2 * w - n;
        let weights = &self.restriction.weights;
        let mut terms = Vec::new();
        for mask in subsets_of_size(k, s) {
            let ext_weight: u32 = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
            if ext_weight > w {
                continue;
            }
            for e in monomials_of_weight(weights, w - ext_weight) {
                terms.push((e, mask));
                if terms.len() > self.config.max_piece_dim {
                    return Err(Error::ResourceLimit {
                        degree: n,
                        dimension: terms.len(),
                        limit: self.config.max_piece_dim,
                    });
                }
            }
        }
        let index = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(Piece { terms, index })
    }

    /// `d` of a single basis element, as a list of terms.
    fn d_term(&self, term: &Term) -> Vec<(Term, T)> {
        let (e, mask) = term;
        let mut out = Vec::new();
        let mut before = 0;
        for i in 0..self.restriction.ambient {
            if mask >> i & 1 == 0 {
                continue;
            }
            let sign = if before % 2 == 0 { T::one() } else { -T::one() };
            before += 1;
            let rest = mask & !(1 << i);
            for (f, c) in &self.restriction.chern_image(i + 1).terms {
                let prod: Exponents = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.push(((prod, rest), sign.clone() * c.clone()));
            }
        }
        out
    }

    /// `d` of an arbitrary cochain.
    pub fn differential(&self, element: &HashMap<Term, T>) -> HashMap<Term, T> {
        let mut out: HashMap<Term, T> = HashMap::new();
        for (term, c) in element {
            for (t, v) in self.d_term(term) {
                let entry = out.entry(t).or_insert_with(T::zero);
                *entry = entry.clone() + c.clone() * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Checks `d ∘ d = 0` on every basis element of degree `n`.
    pub fn check_d_squared(&self, n: u32) -> Result<()> {
        for w in self.weights_in_degree(n) {
            for term in self.build_piece(n, w)?.terms {
                let single = HashMap::from([(term.clone(), T::one())]);
                let dd = self.differential(&self.differential(&single));
                if !dd.is_empty() {
                    return Err(Error::InvariantViolation(format!("d² ≠ 0 on {term:?}")));
                }
            }
        }
        Ok(())
    }

    /// Basis of the invariant subspace of a piece: the image of the
    /// averaging projector, extracted by column reduction.
    fn invariant_basis(&self, piece: &Piece) -> Vec<SparseVec<T>> {
        if self.is_trivial_group() {
            return (0..piece.terms.len())
                .map(|i| SparseVec::from_entries(vec![(i, T::one())]))
                .collect();
        }
        let order = T::from_i64(self.group.len() as i64);
        let mut echelon = EchelonBuilder::new();
        for (e, mask) in &piece.terms {
            let column = self
                .group
                .iter()
                .map(|g| {
                    let image = (permute_exponents(e, g), *mask);
                    (piece.index[&image], T::one() / order.clone())
                })
                .collect();
            echelon.insert(SparseVec::from_entries(column));
        }
        echelon.basis()
    }

    fn rank_of_d(&self, source: &Piece, basis: &[SparseVec<T>], target: &Piece) -> usize {
        let images = basis.iter().map(|v| {
            let mut image = Vec::new();
            for (i, c) in v.entries() {
                for (t, x) in self.d_term(&source.terms[*i]) {
                    image.push((target.index[&t], c.clone() * x));
                }
            }
            SparseVec::from_entries(image)
        });
        linalg::rank(images)
    }

    /// Graded dimensions of the invariant cohomology in degrees `0..=cutoff`.
    pub fn invariant_dims(&self, cutoff: u32) -> Result<CartanResult> {
        let keys: Vec<(u32, u32)> = (0..=cutoff + 1)
            .flat_map(|n| self.weights_in_degree(n).map(move |w| (n, w)))
            .collect();
        let pieces: HashMap<(u32, u32), Piece> = keys
            .par_iter()
            .map(|&(n, w)| self.build_piece(n, w).map(|p| ((n, w), p)))
            .collect::<Result<_>>()?;

        // (dim of invariants, rank of d out of it) per piece up to the cutoff
        let stats: HashMap<(u32, u32), (usize, usize)> = keys
            .par_iter()
            .filter(|(n, _)| *n <= cutoff)
            .map(|&(n, w)| {
                let source = &pieces[&(n, w)];
                let basis = self.invariant_basis(source);
                let rank = match pieces.get(&(n + 1, w)) {
                    Some(target) => self.rank_of_d(source, &basis, target),
                    None => 0,
                };
                ((n, w), (basis.len(), rank))
            })
            .collect();

        let mut cochain_dims = Vec::new();
        let mut ranks = Vec::new();
        let mut betti = Vec::new();
        for n in 0..=cutoff {
            let mut dim = 0;
            let mut rank_out = 0;
            let mut h = 0i64;
            for w in self.weights_in_degree(n) {
                let (d, r) = stats[&(n, w)];
                let r_in = if n > 0 { stats.get(&(n - 1, w)).map_or(0, |s| s.1) } else { 0 };
                dim += d;
                rank_out += r;
                h += d as i64 - r as i64 - r_in as i64;
            }
            if h < 0 {
                return Err(Error::InvariantViolation(format!("negative Betti number in degree {n}")));
            }
            cochain_dims.push(dim);
            ranks.push(rank_out);
            betti.push(h as u64);
        }
        Ok(CartanResult {
            poincare: PoincarePoly::from_dense(&betti).truncated(cutoff),
            cochain_dims,
            ranks,
        })
    }
}

/// Bit masks of `s`-element subsets of a `k`-element set.
fn subsets_of_size(k: u32, s: u32) -> Vec<u32> {
    (0u32..1 << k).filter(|m| m.count_ones() == s).collect()
}

/// Exponent vectors with `Σ e_g · weight_g = target`.
fn monomials_of_weight(weights: &[u32], target: u32) -> Vec<Exponents> {
    fn go(i: usize, rest: u32, weights: &[u32], cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == weights.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in 0..=rest / weights[i] {
            cur[i] = p as u16;
            go(i + 1, rest - p * weights[i], weights, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, target, weights, &mut vec![0; weights.len()], &mut out);
    out
}

/// Cohomology cutoff used when none is given: the manifold dimension, above
/// which all rational cohomology vanishes.
pub fn default_cutoff(descriptor: &OrbitDescriptor) -> u32 {
    descriptor.real_dimension()
}

/// `H*(U(k)/H; ℚ)` through degree `cutoff` by the Cartan model, over `T`.
///
/// A cutoff at or above the real dimension yields the full (untruncated)
/// polynomial.
pub fn cartan_cohomology_in<T: Scalar>(
    descriptor: &OrbitDescriptor,
    cutoff: u32,
    config: CartanConfig,
) -> Result<CartanResult> {
    let dim = descriptor.real_dimension();
    let effective = cutoff.min(dim);
    let complex = KoszulComplex::<T>::from_descriptor(descriptor, config)?;
    let mut result = complex.invariant_dims(effective)?;
    if cutoff >= dim {
        result.poincare = result.poincare.with_truncation(None);
    } else {
        result.poincare = result.poincare.truncated(cutoff);
    }
    Ok(result)
}

/// `H*(U(k)/H; ℚ)` through degree `cutoff`, over the rationals.
pub fn cartan_cohomology(descriptor: &OrbitDescriptor, cutoff: u32) -> Result<PoincarePoly> {
    Ok(cartan_cohomology_in::<crate::Rational>(descriptor, cutoff, CartanConfig::default())?.poincare)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Molien,
    Cartan,
    #[default]
    Auto,
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Molien => "molien",
            Engine::Cartan => "cartan",
            Engine::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "molien" => Ok(Engine::Molien),
            "cartan" => Ok(Engine::Cartan),
            "auto" => Ok(Engine::Auto),
            other => contract(format!("unknown engine {other:?}")),
        }
    }
}

/// Settings for the engine dispatcher.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub cartan: CartanConfig,
    /// Upper bound on any Cartan cutoff.
    pub cutoff_cap: u32,
    /// In `Auto` mode, torus-commensurable descriptors with ambient rank up
    /// to this bound are also run through the Cartan engine and compared.
    pub cross_check_max_rank: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cartan: CartanConfig::default(),
            cutoff_cap: 64,
            cross_check_max_rank: 3,
        }
    }
}

/// Poincaré polynomial by the requested engine.
///
/// `Auto` uses the coinvariant engine whenever it applies and the Cartan
/// engine otherwise; for small ambient rank it runs both and fails with
/// [`Error::EngineMismatch`] if they disagree.
pub fn poincare(
    descriptor: &OrbitDescriptor,
    cutoff: Option<u32>,
    engine: Engine,
    config: &EngineConfig,
) -> Result<PoincarePoly> {
    let cutoff = cutoff
        .unwrap_or_else(|| default_cutoff(descriptor))
        .min(config.cutoff_cap);
    let run_cartan = || -> Result<PoincarePoly> {
        Ok(cartan_cohomology_in::<crate::Rational>(descriptor, cutoff, config.cartan)?.poincare)
    };
    match engine {
        Engine::Molien => molien_poincare(descriptor),
        Engine::Cartan => run_cartan(),
        Engine::Auto if descriptor.is_torus_commensurable() => {
            let exact = molien_poincare(descriptor)?;
            if descriptor.ambient() <= config.cross_check_max_rank {
                let cartan = run_cartan()?;
                if !exact.agrees_with(&cartan) {
                    return Err(Error::EngineMismatch {
                        descriptor: descriptor.to_string(),
                        molien: exact.to_string(),
                        cartan: cartan.to_string(),
                    });
                }
            }
            Ok(exact)
        }
        Engine::Auto => run_cartan(),
    }
}

/// Engine dispatch with an optional memo shared between threads.
#[derive(Clone, Debug, Default)]
pub struct Evaluator {
    pub engine: Engine,
    pub config: EngineConfig,
    pub cache: Option<Arc<PoincareCache>>,
}

impl Evaluator {
    pub fn new(engine: Engine, config: EngineConfig) -> Self {
        Evaluator {
            engine,
            config,
            cache: None,
        }
    }

    pub fn with_cache(mut self, cache: Arc<PoincareCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Cache key; the cutoff is recorded only when it truncates.
    pub fn cache_key(&self, descriptor: &OrbitDescriptor, cutoff: Option<u32>) -> String {
        let effective = cutoff
            .unwrap_or_else(|| default_cutoff(descriptor))
            .min(self.config.cutoff_cap);
        let truncating = (effective < descriptor.real_dimension()).then_some(effective);
        PoincareCache::key(&descriptor.canonical_string(), self.engine.name(), truncating)
    }

    pub fn poincare(&self, descriptor: &OrbitDescriptor, cutoff: Option<u32>) -> Result<PoincarePoly> {
        let compute = || poincare(descriptor, cutoff, self.engine, &self.config);
        match &self.cache {
            Some(cache) => cache.get_or_compute(self.cache_key(descriptor, cutoff), compute),
            None => compute(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbitspace::descriptor::Factor;
    use crate::Rational;

    fn d(s: &str) -> OrbitDescriptor {
        s.parse().unwrap()
    }

    fn full(s: &str) -> PoincarePoly {
        let desc = d(s);
        cartan_cohomology(&desc, desc.real_dimension()).unwrap()
    }

    #[test]
    fn projective_spaces() {
        for k in 2..=4u32 {
            let p = full(&format!("U({k})/[(1)]xU({})", k - 1));
            let expected = PoincarePoly::from_pairs((0..k).map(|i| (2 * i, 1)));
            assert_eq!(p, expected);
        }
    }

    #[test]
    fn three_sphere_and_pu2() {
        assert_eq!(full("U(2)/U(1)").to_string(), "1 + t^3");
        assert_eq!(full("U(2)/[(1,2)]").to_string(), "1 + t^3");
    }

    #[test]
    fn pu2_restriction() {
        let r = RestrictionMap::<Rational>::from_descriptor(&d("U(2)/[(1,2)]"));
        // c(ℂ²) restricts to (1 + u)², so d(y_1) = 2u and d(y_2) = u².
        assert_eq!(r.chern_image(1).terms().get(&vec![1]), Some(&Rational::from_integer(2.into())));
        assert_eq!(r.chern_image(2).terms().get(&vec![2]), Some(&Rational::from_integer(1.into())));
        assert!(r.is_graded());
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(full("U(2)/[S2wr(1)]"), PoincarePoly::one());
        assert_eq!(full("U(3)/[S2wr(1)x(1)]").to_string(), "1 + t^2 + t^4");
        let trivial = full("U(3)/[(1)x(1)x(1)]");
        assert_eq!(trivial, crate::orbitspace::flag_poincare_oracle(&[1, 1, 1]));
    }

    #[test]
    fn truncation_marks_unknown_degrees() {
        let p = cartan_cohomology(&d("U(3)/[(1)x(1)x(1)]"), 3).unwrap();
        assert_eq!(p.truncation(), Some(3));
        assert_eq!(p.to_string(), "1 + 2t^2 + O(t^4)");
    }

    #[test]
    fn d_squared_vanishes() {
        let complex =
            KoszulComplex::<Rational>::from_descriptor(&d("U(4)/[(2,1)x(1,2)]"), CartanConfig::default())
                .unwrap();
        for n in 0..12 {
            complex.check_d_squared(n).unwrap();
        }
    }

    #[test]
    fn euler_audit_holds() {
        for s in ["U(3)/[S2wr(1)x(1)]", "U(4)/[(1,2)]xU(2)", "U(3)/[]"] {
            let r = cartan_cohomology_in::<Rational>(&d(s), 14, CartanConfig::default()).unwrap();
            assert!(r.euler_audit(), "{s}");
        }
    }

    #[test]
    fn non_commuting_action_is_rejected() {
        // Swapping a U(1) block with a U(2) block is not a symmetry.
        let desc = OrbitDescriptor::new(3, Factor::Product(vec![Factor::block(1, 1), Factor::block(2, 1)]), 0)
            .unwrap();
        let r = RestrictionMap::<Rational>::from_descriptor(&desc);
        let err = KoszulComplex::with_group(r, &[vec![0, 1], vec![1, 0]], CartanConfig::default());
        assert!(matches!(err, Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn resource_limit_reports_degree() {
        let cfg = CartanConfig { max_piece_dim: 3 };
        let err = cartan_cohomology_in::<Rational>(&d("U(3)/[(1)x(1)x(1)]"), 6, cfg);
        match err {
            Err(Error::ResourceLimit { degree, .. }) => assert!(degree <= 6),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn dispatcher_routes() {
        let cfg = EngineConfig::default();
        let p = poincare(&d("U(2)/[(1)]xU(1)"), None, Engine::Auto, &cfg).unwrap();
        assert_eq!(p.to_string(), "1 + t^2");
        let p = poincare(&d("U(4)/[(1,2)]xU(2)"), None, Engine::Auto, &cfg).unwrap();
        assert_eq!(p.coeff(0), 1);
        assert!(poincare(&d("U(4)/[(1,2)]xU(2)"), None, Engine::Molien, &cfg).is_err());
        let p = poincare(&d("U(3)/[S3wr(1)]"), None, Engine::Auto, &cfg).unwrap();
        assert_eq!(p, PoincarePoly::one());
    }
}
