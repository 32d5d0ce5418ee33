//! Per-`(k, l)` reports on the rank filtration of `𝕊^{k,l}`.
//!
//! The filtration has `⌊k/l⌋` stages. The first is `Σ^∞ (Inj(ℂ^l, ℂ^k)/U(1))₊`
//! and carries all of the rational homology; the subquotient at stage
//! `m ≥ 2` is `Inj(ℂ^{lm}, ℂ^k)₊ ∧_{U(m)} 𝓛_m^◇`, checked to be rationally
//! trivial through the generalized cube of [`crate::decomp`].
//!
//! Polynomials are those of the underlying spaces `X`. The suspension
//! spectrum of `X₊` has the same rational homology; the disjoint basepoint
//! is what makes the degree-0 term appear.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cartan::Evaluator;
use crate::combinat::{enumerate_summands, is_prime_power, split_wedge, MaxRank, RankContext};
use crate::decomp::{connectivity, cube_report, CubeParams, CubeReport};
use crate::error::{contract, Error, Result};
use crate::orbitspace::OrbitDescriptor;
use crate::poly::PoincarePoly;

/// Whether `𝕊^{k,l}` is contractible, which happens exactly when `l > k`.
/// The answer is cross-checked against the summand enumeration: no
/// non-basepoint summand may exist on `[t]` for `t ≤ k + 1`.
pub fn vanishing_check(k: u32, l: u32) -> Result<bool> {
    let context = RankContext::new(k, l)?;
    let vanishes = l > k;
    let no_summands = (1..=k as usize + 1).all(|t| enumerate_summands(context, t, MaxRank::Unbounded).is_empty());
    if vanishes != no_summands {
        return Err(Error::InvariantViolation(format!(
            "(k={k}, l={l}): l > k is {vanishes} but empty summands is {no_summands}"
        )));
    }
    Ok(vanishes)
}

/// `Inj(ℂ^l, ℂ^k)/U(1) = U(k)/(U(1) ⊗ I_l × U(k − l))`.
pub fn first_stage_descriptor(k: u32, l: u32) -> Result<OrbitDescriptor> {
    if l == 0 || l > k {
        return contract(format!("l > k: S^{{{k},{l}}} is contractible and has no first stage"));
    }
    OrbitDescriptor::levi(k, &[(1, l)], k - l)
}

/// Rational homology of the first stage, which is that of `𝕊^{k,l}`.
pub fn first_stage_poincare(k: u32, l: u32, cutoff: Option<u32>, evaluator: &Evaluator) -> Result<PoincarePoly> {
    evaluator.poincare(&first_stage_descriptor(k, l)?, cutoff)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    RationallyTrivial,
    Failed { failures: Vec<String> },
    /// Not run, e.g. because the cube is beyond the configured size.
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Failed { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubquotientCheck {
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub verdict: Verdict,
    pub cube: CubeReport,
}

/// Runs the generalized cube for stage `m` of `𝕊^{k,l}`.
pub fn subquotient_rational_check(
    k: u32,
    l: u32,
    m: u32,
    cutoff: Option<u32>,
    evaluator: &Evaluator,
) -> Result<SubquotientCheck> {
    let context = RankContext::new(k, l)?;
    if m < 2 || m > context.max_rank() {
        return contract(format!("stage m = {m} is not in 2..={}", context.max_rank()));
    }
    let cube = cube_report(CubeParams { m, l, k, cutoff }, evaluator)?;
    let verdict = if cube.all_verified {
        Verdict::RationallyTrivial
    } else {
        Verdict::Failed {
            failures: cube.failures.clone(),
        }
    };
    Ok(SubquotientCheck { k, l, m, verdict, cube })
}

/// Rank of `H_0(𝕊^{k,l})`: the number of components of the first stage,
/// provided every higher subquotient is connected (so `1`-connected after
/// the smash with `𝓛_m^◇`); `0` when `l > k`.
pub fn pi0_check(k: u32, l: u32, evaluator: &Evaluator) -> Result<u32> {
    if vanishing_check(k, l)? {
        return Ok(0);
    }
    let b0 = first_stage_poincare(k, l, Some(0), evaluator)?.coeff(0);
    if let Some(m) = (2..=k / l).find(|&m| !connectivity(m).is_connected()) {
        return Err(Error::InvariantViolation(format!(
            "decomposition complex for m = {m} is not connected; π₀ is not determined by the first stage"
        )));
    }
    Ok(b0 as u32)
}

/// `P(BU(a)) = ∏_{i=1}^{a} 1/(1 − t^{2i})` through degree `cutoff`.
pub fn bu_poincare(a: u32, cutoff: u32) -> PoincarePoly {
    // Coefficient of t^{2d} is the number of partitions of d into parts ≤ a.
    let half = (cutoff / 2) as usize;
    let mut counts = vec![0u64; half + 1];
    counts[0] = 1;
    for part in 1..=a as usize {
        for d in part..=half {
            counts[d] += counts[d - part];
        }
    }
    PoincarePoly::from_pairs(counts.iter().enumerate().map(|(d, &c)| (2 * d as u32, c))).truncated(cutoff)
}

/// `∏_i P(BU(m_i))`, the series of the summand indexed by the tuple in the
/// colimit over `k`.
pub fn summand_series(tuple: &[u32], cutoff: u32) -> PoincarePoly {
    tuple
        .iter()
        .fold(PoincarePoly::one(), |acc, &a| acc.mul(&bu_poincare(a, cutoff)))
        .truncated(cutoff)
}

/// One comparison of a finite-`k` summand with its `k → ∞` limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationSample {
    pub tuple: Vec<u32>,
    pub k: u32,
    pub descriptor: OrbitDescriptor,
    pub poincare: PoincarePoly,
    /// The summand agrees with the limit through this degree.
    pub agrees_through: u32,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuSeries {
    pub l: u32,
    pub t: u32,
    pub max_rank: u32,
    pub cutoff: u32,
    /// Sum of the summand series over all non-zero tuples of rank
    /// `≤ max_rank`.
    pub series: PoincarePoly,
    pub summands: Vec<(Vec<u32>, PoincarePoly)>,
    pub stabilization: Vec<StabilizationSample>,
}

impl KuSeries {
    pub fn stabilizes(&self) -> bool {
        self.stabilization.iter().all(|s| s.agrees)
    }
}

/// The pre-group-completion series of `G_{∞,l}([t])` restricted to tuples of
/// rank `≤ max_rank`, with a stabilization check: for each tuple of rank
/// `r`, `Inj(ℂ^{rl}, ℂ^k)/∏ U(m_i)` at `k = rl + ⌈cutoff/2⌉ + extra_k`
/// must agree with the limit through `cutoff`.
pub fn ku_limit_series(
    l: u32,
    t: u32,
    max_rank: u32,
    cutoff: u32,
    extra_k: &[u32],
    evaluator: &Evaluator,
) -> Result<KuSeries> {
    if l == 0 || t == 0 || max_rank == 0 {
        return contract("ku series needs l, t, max_rank ≥ 1");
    }
    // Any k with k/l ≥ max_rank enumerates every tuple of rank ≤ max_rank.
    let context = RankContext::new(l * max_rank, l)?;
    let tuples = enumerate_summands(context, t as usize, MaxRank::Finite(max_rank));
    let mut series = PoincarePoly::zero();
    let mut summands = Vec::new();
    let mut stabilization = Vec::new();
    for tuple in &tuples.tuples {
        let s = summand_series(&tuple.entries, cutoff);
        series = series.add(&s);
        summands.push((tuple.entries.clone(), s.clone()));
        let blocks: Vec<(u32, u32)> = tuple.entries.iter().filter(|&&a| a > 0).map(|&a| (a, l)).collect();
        let used = l * tuple.rank();
        for &extra in extra_k {
            let k = used + cutoff.div_ceil(2) + extra;
            let descriptor = OrbitDescriptor::levi(k, &blocks, k - used)?;
            let poincare = evaluator.poincare(&descriptor, Some(cutoff))?;
            let agrees = poincare.agrees_through(&s, cutoff);
            stabilization.push(StabilizationSample {
                tuple: tuple.entries.clone(),
                k,
                descriptor,
                poincare,
                agrees_through: cutoff,
                agrees,
            });
        }
    }
    Ok(KuSeries {
        l,
        t,
        max_rank,
        cutoff,
        series: series.truncated(cutoff),
        summands,
        stabilization,
    })
}

/// Summands over `[s] ∨ [t]` biject with pairs of summands (or basepoints)
/// over `[s]` and `[t]` whose ranks add up to at most `max_rank`.
pub fn special_gamma_check(l: u32, s: usize, t: usize, max_rank: u32) -> Result<bool> {
    let context = RankContext::new(l * max_rank, l)?;
    let bound = MaxRank::Finite(max_rank);
    let wedge = enumerate_summands(context, s + t, bound);
    let mut split = BTreeSet::new();
    for tuple in &wedge.tuples {
        let (a, b) = split_wedge(tuple, s)?;
        split.insert((a.entries, b.entries));
    }
    let with_base = |n: usize| {
        let mut v: Vec<Vec<u32>> = enumerate_summands(context, n, bound)
            .tuples
            .into_iter()
            .map(|x| x.entries)
            .collect();
        v.push(vec![0; n]);
        v
    };
    let mut pairs = BTreeSet::new();
    for a in with_base(s) {
        for b in with_base(t) {
            let rank: u32 = a.iter().chain(&b).sum();
            if rank >= 1 && rank <= max_rank {
                pairs.insert((a.clone(), b));
            }
        }
    }
    Ok(split.len() == wedge.len() && split == pairs)
}

/// A summary of one stage of the filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub m: u32,
    pub prime_power: bool,
    /// The stage as a space: the first stage, or
    /// `Inj(ℂ^{lm}, ℂ^k)₊ ∧_{U(m)} 𝓛_m^◇` for `m ≥ 2`.
    pub model: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Reduced rational homology of the subquotient: the first-stage
    /// polynomial at `m = 1`, zero for verified higher stages.
    pub poincare: Option<PoincarePoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstStage {
    pub descriptor: OrbitDescriptor,
    pub poincare: PoincarePoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub k: u32,
    pub l: u32,
    pub length: u32,
    pub vanishes: bool,
    pub one_stage: bool,
    pub stages: Vec<StageReport>,
    pub first_stage: Option<FirstStage>,
    /// Rational homology of `𝕊^{k,l}`, equal to that of the first stage.
    pub rational_homology: Option<PoincarePoly>,
    pub pi0: u32,
    /// `P(PU(k))`, present when `k = l`.
    pub endomorphism: Option<PoincarePoly>,
    pub all_verified: bool,
    pub notes: Vec<String>,
}

/// Knobs for [`small_range_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub cutoff: Option<u32>,
    /// Largest `m` whose cube is run.
    pub max_cube_m: u32,
    /// Largest `k` accepted.
    pub max_k: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            cutoff: None,
            max_cube_m: 4,
            max_k: 8,
        }
    }
}

const BASEPOINT_NOTE: &str = "polynomials are those of the spaces X; the suspension spectrum of X₊ has the same \
rational homology, with the degree-0 term coming from the disjoint basepoint";

/// The full report for `𝕊^{k,l}`.
pub fn small_range_report(k: u32, l: u32, options: &ReportOptions, evaluator: &Evaluator) -> Result<FiltrationReport> {
    let context = RankContext::new(k, l)?;
    if k > options.max_k {
        return contract(format!("k = {k} exceeds the configured cap {}", options.max_k));
    }
    let vanishes = vanishing_check(k, l)?;
    let length = context.max_rank();
    let mut notes = vec![BASEPOINT_NOTE.to_string()];
    if vanishes {
        notes.push(format!("l > k: S^{{{k},{l}}} is contractible"));
        return Ok(FiltrationReport {
            k,
            l,
            length,
            vanishes,
            one_stage: false,
            stages: Vec::new(),
            first_stage: None,
            rational_homology: None,
            pi0: 0,
            endomorphism: None,
            all_verified: true,
            notes,
        });
    }
    let descriptor = first_stage_descriptor(k, l)?;
    let poincare = evaluator.poincare(&descriptor, options.cutoff)?;
    let mut stages = vec![StageReport {
        m: 1,
        prime_power: is_prime_power(1),
        model: format!("Inj(C^{l}, C^{k})/U(1) = {descriptor}"),
        verdict: Verdict::Skipped {
            reason: "the first stage carries the rational homology".into(),
        },
        poincare: Some(poincare.clone()),
    }];
    for m in 2..=length {
        let model = format!("Inj(C^{}, C^{k})+ ^_U({m}) L_{m}^", l * m);
        let (verdict, poincare) = if m > options.max_cube_m {
            let reason = format!("cube for m = {m} exceeds the configured limit {}", options.max_cube_m);
            (Verdict::Skipped { reason }, None)
        } else {
            let check = subquotient_rational_check(k, l, m, options.cutoff, evaluator)?;
            let p = (!check.verdict.is_failure()).then(PoincarePoly::zero);
            (check.verdict, p)
        };
        stages.push(StageReport {
            m,
            prime_power: is_prime_power(m as u64),
            model,
            verdict,
            poincare,
        });
    }
    let pi0 = pi0_check(k, l, evaluator)?;
    let one_stage = length == 1;
    if one_stage {
        notes.push("l ≤ k ≤ 2l − 1: the filtration has one stage".to_string());
    }
    let all_verified = !stages.iter().any(|s| s.verdict.is_failure()) && poincare.coeff(0) == 1;
    Ok(FiltrationReport {
        k,
        l,
        length,
        vanishes,
        one_stage,
        stages,
        first_stage: Some(FirstStage {
            descriptor,
            poincare: poincare.clone(),
        }),
        rational_homology: Some(poincare.clone()),
        pi0,
        endomorphism: (k == l).then_some(poincare),
        all_verified,
        notes,
    })
}
