//! Types of orthogonal direct-sum decompositions of `ℂ^m`, chains of them,
//! and the cube of chain spaces `X(U)`, `U ⊆ {2, …, m}`, whose total
//! homotopy cofiber is the unreduced suspension of the decomposition
//! complex `𝓛_m`.
//!
//! Each `X(U)` is a finite disjoint union of `U(m)`-orbits, one per
//! [`ChainType`], so the cube is recorded orbit by orbit. The edge in
//! direction `m` appends the decomposition into lines below the finest level
//! of a chain; its isotropy is then a finite extension of the maximal torus
//! of the base isotropy, and the edge map is a rational equivalence.
//!
//! For the subquotients of the `(k, l)` filtration every isotropy group is
//! tensored with `I_l` and completed by `U(k − lm)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::cartan::Evaluator;
use crate::error::{contract, Error, Result};
use crate::orbitspace::cycle_index::{partitions, partitions_into};
use crate::orbitspace::descriptor::Factor;
use crate::orbitspace::OrbitDescriptor;
use crate::poly::{PoincarePoly, SignedPoly};

/// The `U(m)`-orbit of a decomposition: the multiset of part dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompositionType {
    ambient: u32,
    parts: Vec<u32>,
}

impl DecompositionType {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return contract(format!("decomposition parts {parts:?} must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DecompositionType {
            ambient: parts.iter().sum(),
            parts,
        })
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    /// Part dimensions, decreasing.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_proper(&self) -> bool {
        self.parts.len() >= 2
    }

    /// Whether `coarse` is obtained by merging groups of parts of `self`.
    pub fn refines(&self, coarse: &DecompositionType) -> bool {
        fn fill(parts: &[u32], bins: &mut Vec<u32>) -> bool {
            let Some((&first, rest)) = parts.split_first() else {
                return bins.iter().all(|&b| b == 0);
            };
            let mut tried = BTreeSet::new();
            for i in 0..bins.len() {
                if bins[i] >= first && tried.insert(bins[i]) {
                    bins[i] -= first;
                    let ok = fill(rest, bins);
                    bins[i] += first;
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        self.ambient == coarse.ambient
            && self.parts.len() >= coarse.parts.len()
            && fill(&self.parts, &mut coarse.parts.clone())
    }
}

impl fmt::Display for DecompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All decomposition types of `ℂ^m` with exactly `parts` summands.
pub fn enumerate_decomposition_types(m: u32, parts: u32) -> Result<Vec<DecompositionType>> {
    if parts == 0 || parts > m {
        return contract(format!("need 1 ≤ parts ≤ m, got parts = {parts}, m = {m}"));
    }
    partitions_into(m, parts)
        .into_iter()
        .map(DecompositionType::new)
        .collect()
}

/// `a ⊗ b`: the decomposition of `ℂ^m ⊗ ℂ^n` into pairwise tensor products.
pub fn tensor(a: &DecompositionType, b: &DecompositionType) -> DecompositionType {
    let parts = a
        .parts
        .iter()
        .flat_map(|x| b.parts.iter().map(move |y| x * y))
        .collect();
    DecompositionType::new(parts).expect("products of positive parts are positive")
}

/// Shape of the orbit-incidence graph of proper decompositions of `ℂ^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    Connected,
    Disconnected,
    /// No proper decompositions (`m = 1`): the complex is empty and its
    /// unreduced suspension is `S⁰`.
    Empty,
}

impl Connectivity {
    pub fn is_connected(&self) -> bool {
        *self == Connectivity::Connected
    }
}

/// Connectivity of the graph whose vertices are proper decomposition types
/// of `ℂ^m`, joined when one refines the other. Every orbit is connected,
/// so this decides whether `𝓛_m` is path-connected.
pub fn connectivity(m: u32) -> Connectivity {
    let types: Vec<DecompositionType> = partitions(m)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .map(|p| DecompositionType::new(p).unwrap())
        .collect();
    if types.is_empty() {
        return Connectivity::Empty;
    }
    let mut seen = vec![false; types.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..types.len() {
            if !seen[j] && (types[i].refines(&types[j]) || types[j].refines(&types[i])) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Connectivity::Connected
    } else {
        Connectivity::Disconnected
    }
}

/// A node of a refinement tree: a subspace of dimension `dim`, refined by
/// its children at the next level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainNode {
    pub dim: u32,
    pub children: Vec<ChainNode>,
}

impl ChainNode {
    pub fn leaf(dim: u32) -> Self {
        ChainNode {
            dim,
            children: Vec::new(),
        }
    }

    fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        self.children.sort_by(|a, b| b.cmp(a));
    }

    fn depth(&self) -> usize {
        self.children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    fn level_counts(&self, depth: usize, counts: &mut [u32]) {
        if depth > 0 {
            counts[depth - 1] += 1;
        }
        for c in &self.children {
            c.level_counts(depth + 1, counts);
        }
    }

    fn validate(&self, depth: usize, levels: usize) -> Result<()> {
        if self.dim == 0 {
            return contract("tree nodes must have positive dimension");
        }
        if self.children.is_empty() {
            if depth != levels {
                return contract("every branch of a chain must reach the finest level");
            }
            return Ok(());
        }
        let sum: u32 = self.children.iter().map(|c| c.dim).sum();
        if sum != self.dim {
            return contract(format!("children of a {}-dimensional node sum to {sum}", self.dim));
        }
        self.children.iter().try_for_each(|c| c.validate(depth + 1, levels))
    }

    fn leaves(&self, out: &mut Vec<u32>) {
        if self.children.is_empty() {
            out.push(self.dim);
        }
        for c in &self.children {
            c.leaves(out);
        }
    }

    /// Replaces the leaves, in depth-first order, by the given refinements.
    fn refine_leaves(&self, parts: &mut impl Iterator<Item = Vec<u32>>) -> ChainNode {
        if self.children.is_empty() {
            let children = parts.next().unwrap().into_iter().map(ChainNode::leaf).collect();
            return ChainNode {
                dim: self.dim,
                children,
            };
        }
        ChainNode {
            dim: self.dim,
            children: self.children.iter().map(|c| c.refine_leaves(parts)).collect(),
        }
    }

    fn drop_finest(&self, levels_below: usize) -> ChainNode {
        if levels_below == 1 {
            return ChainNode::leaf(self.dim);
        }
        ChainNode {
            dim: self.dim,
            children: self.children.iter().map(|c| c.drop_finest(levels_below - 1)).collect(),
        }
    }

    /// Tree automorphisms acting on leaf blocks: identical siblings are
    /// permuted, recursively.
    fn isotropy(&self, l: u32) -> Factor {
        if self.children.is_empty() {
            return Factor::block(self.dim, l);
        }
        let mut runs: Vec<(usize, &ChainNode)> = Vec::new();
        for c in &self.children {
            match runs.last_mut() {
                Some((n, prev)) if *prev == c => *n += 1,
                _ => runs.push((1, c)),
            }
        }
        Factor::Product(
            runs.into_iter()
                .map(|(n, c)| Factor::wreath(n as u32, c.isotropy(l)))
                .collect(),
        )
    }
}

impl fmt::Display for ChainNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dim)?;
        if !self.children.is_empty() {
            write!(f, "{{")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Orbit type of a chain `Λ_1 < ⋯ < Λ_r` of proper decompositions of `ℂ^m`,
/// as a refinement tree in canonical (sorted) form. The root is `ℂ^m`; its
/// children form the coarsest decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainType {
    root: ChainNode,
}

impl ChainType {
    /// Validates and canonicalizes a refinement tree.
    pub fn new(mut root: ChainNode) -> Result<Self> {
        let levels = root.depth();
        root.validate(0, levels)?;
        let mut counts = vec![0; levels];
        root.level_counts(0, &mut counts);
        if counts.first().is_some_and(|&c| c < 2) || counts.windows(2).any(|w| w[0] >= w[1]) {
            return contract(format!("level component counts {counts:?} must start at 2 or more and strictly increase"));
        }
        root.canonicalize();
        Ok(ChainType { root })
    }

    /// The empty chain in `ℂ^m`.
    pub fn empty(m: u32) -> Self {
        ChainType {
            root: ChainNode::leaf(m),
        }
    }

    pub fn ambient(&self) -> u32 {
        self.root.dim
    }

    pub fn root(&self) -> &ChainNode {
        &self.root
    }

    pub fn levels(&self) -> usize {
        self.root.depth()
    }

    /// Number of components at each level, coarsest first. These are the
    /// elements of `U` in increasing order.
    pub fn level_counts(&self) -> Vec<u32> {
        let mut counts = vec![0; self.levels()];
        self.root.level_counts(0, &mut counts);
        counts
    }

    /// Dimensions of the finest decomposition.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.root.leaves(&mut out);
        out
    }

    /// Whether the finest level is the decomposition into lines.
    pub fn ends_in_lines(&self) -> bool {
        self.levels() > 0 && self.leaves().iter().all(|&d| d == 1)
    }

    /// The chain with the decomposition into lines appended below the
    /// finest level. Returns `None` if the finest level already consists of
    /// lines.
    pub fn append_lines(&self) -> Option<ChainType> {
        if self.leaves().iter().all(|&d| d == 1) && self.levels() > 0 {
            return None;
        }
        let leaves = self.leaves();
        let root = self
            .root
            .refine_leaves(&mut leaves.into_iter().map(|d| vec![1; d as usize]));
        Some(ChainType::new(root).expect("refining by lines keeps a valid chain"))
    }

    /// The chain with its finest level removed.
    pub fn drop_finest(&self) -> Option<ChainType> {
        let levels = self.levels();
        if levels == 0 {
            return None;
        }
        let root = self.root.drop_finest(levels);
        Some(ChainType::new(root).expect("a prefix of a chain is a chain"))
    }
}

impl fmt::Display for ChainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl FromStr for ChainType {
    type Err = Error;

    /// Parses trees written as `3{2{1,1},1{1}}`.
    fn from_str(s: &str) -> Result<Self> {
        fn node(s: &[u8], pos: &mut usize, input: &str) -> Result<ChainNode> {
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let dim = input[start..*pos].parse::<u32>().map_err(|_| Error::Parse {
                input: input.to_string(),
                position: start,
                message: "expected a dimension".into(),
            })?;
            let mut children = Vec::new();
            if s.get(*pos) == Some(&b'{') {
                *pos += 1;
                loop {
                    children.push(node(s, pos, input)?);
                    match s.get(*pos) {
                        Some(b',') => *pos += 1,
                        Some(b'}') => {
                            *pos += 1;
                            break;
                        }
                        _ => {
                            return Err(Error::Parse {
                                input: input.to_string(),
                                position: *pos,
                                message: "expected ',' or '}'".into(),
                            })
                        }
                    }
                }
            }
            Ok(ChainNode { dim, children })
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let root = node(bytes, &mut pos, &compact)?;
        if pos != bytes.len() {
            return Err(Error::Parse {
                input: compact.clone(),
                position: pos,
                message: "trailing input".into(),
            });
        }
        ChainType::new(root)
    }
}

impl Serialize for ChainType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ChainType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_subset(m: u32, subset: &[u32]) -> Result<Vec<u32>> {
    let set: BTreeSet<u32> = subset.iter().copied().collect();
    if set.len() != subset.len() || set.iter().any(|&u| u < 2 || u > m) {
        return contract(format!("{subset:?} is not a subset of {{2, …, {m}}}"));
    }
    Ok(set.into_iter().collect())
}

/// Every way to split `dims` into exactly `total` parts, one partition per
/// entry, in order.
fn distribute(dims: &[u32], total: u32) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = dims.split_first() else {
        return if total == 0 { vec![vec![]] } else { vec![] };
    };
    let rest_max: u32 = rest.iter().sum();
    let rest_min = rest.len() as u32;
    let mut out = Vec::new();
    for p in 1..=first.min(total) {
        let remaining = total - p;
        if remaining < rest_min || remaining > rest_max {
            continue;
        }
        let tails = distribute(rest, remaining);
        for part in partitions_into(first, p) {
            for tail in &tails {
                let mut v = vec![part.clone()];
                v.extend(tail.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// All orbit types of chains in `ℂ^m` whose levels have the elements of
/// `subset` as component counts. The empty subset gives the empty chain.
pub fn enumerate_chain_types(m: u32, subset: &[u32]) -> Result<Vec<ChainType>> {
    if m == 0 {
        return contract("ambient dimension must be positive");
    }
    let counts = check_subset(m, subset)?;
    let mut current: BTreeSet<ChainType> = BTreeSet::from([ChainType::empty(m)]);
    for &count in &counts {
        let mut next = BTreeSet::new();
        for chain in &current {
            let leaves = chain.leaves();
            for split in distribute(&leaves, count) {
                let root = chain.root.refine_leaves(&mut split.into_iter());
                next.insert(ChainType::new(root)?);
            }
        }
        current = next;
    }
    Ok(current.into_iter().collect())
}

/// Isotropy of a chain in `U(m)`: the product of `U(d)` over the finest
/// parts, extended by the automorphisms of the tree.
pub fn stabilizer(chain: &ChainType) -> OrbitDescriptor {
    generalized_stabilizer(chain, 1, chain.ambient()).expect("l = 1, k = m always fits")
}

/// The isotropy tensored with `I_l` inside `U(k)`, completed by
/// `U(k − lm)` on the orthogonal complement.
pub fn generalized_stabilizer(chain: &ChainType, l: u32, k: u32) -> Result<OrbitDescriptor> {
    let used = l * chain.ambient();
    if l == 0 || used > k {
        return contract(format!("need l ≥ 1 and l·m ≤ k, got l = {l}, m = {}, k = {k}", chain.ambient()));
    }
    OrbitDescriptor::new(k, chain.root.isotropy(l), k - used)
}

/// Parameters of a (possibly generalized) cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeParams {
    pub m: u32,
    pub l: u32,
    pub k: u32,
    /// Degree cutoff handed to the engines; `None` means the full range.
    pub cutoff: Option<u32>,
}

impl CubeParams {
    /// The cube for `𝓛_m` itself: `l = 1`, `k = m`.
    pub fn plain(m: u32) -> Self {
        CubeParams {
            m,
            l: 1,
            k: m,
            cutoff: None,
        }
    }
}

/// One orbit in a cube vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrbit {
    pub chain: ChainType,
    pub descriptor: OrbitDescriptor,
    pub poincare: PoincarePoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeVertex {
    pub subset: Vec<u32>,
    pub orbits: Vec<VertexOrbit>,
    /// Sum over the orbits.
    pub poincare: PoincarePoly,
}

/// A matched pair of orbits across an edge in direction `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePair {
    pub base: ChainType,
    pub extended: ChainType,
    /// The connected part of the extended isotropy is a maximal torus.
    pub torus: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeEdge {
    pub base: Vec<u32>,
    pub extended: Vec<u32>,
    /// Appending lines is a bijection between the two sets of chain types.
    pub bijective: bool,
    pub pairs: Vec<EdgePair>,
    pub verified: bool,
}

/// The cube `U ↦ X(U)` orbit by orbit, with the verdicts for the edges in
/// direction `m` and the alternating sum of vertex polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeReport {
    pub params: CubeParams,
    pub vertices: Vec<CubeVertex>,
    pub edges: Vec<CubeEdge>,
    pub signed_sum: SignedPoly,
    pub signed_sum_zero: bool,
    pub all_verified: bool,
    /// Human-readable descriptions of every failed check.
    pub failures: Vec<String>,
}

impl CubeReport {
    pub fn vertex(&self, subset: &[u32]) -> Option<&CubeVertex> {
        self.vertices.iter().find(|v| v.subset == subset)
    }
}

/// All subsets of `{2, …, top}`, each sorted, in lexicographic order.
fn subsets(top: u32) -> Vec<Vec<u32>> {
    let elems: Vec<u32> = (2..=top).collect();
    let mut out: Vec<Vec<u32>> = (0u32..1 << elems.len())
        .map(|mask| {
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// Builds the cube and checks every edge in direction `m`.
///
/// Polynomial mismatches are recorded in the report; only engine errors are
/// returned as `Err`.
pub fn cube_report(params: CubeParams, evaluator: &Evaluator) -> Result<CubeReport> {
    let CubeParams { m, l, k, cutoff } = params;
    if m == 0 || l == 0 || l * m > k {
        return contract(format!("need m, l ≥ 1 and l·m ≤ k, got m = {m}, l = {l}, k = {k}"));
    }
    let all = subsets(m);
    let mut chains: BTreeMap<Vec<u32>, Vec<ChainType>> = BTreeMap::new();
    for u in &all {
        chains.insert(u.clone(), enumerate_chain_types(m, u)?);
    }
    let jobs: Vec<(Vec<u32>, ChainType, OrbitDescriptor)> = chains
        .iter()
        .flat_map(|(u, cs)| cs.iter().map(move |c| (u.clone(), c.clone())))
        .map(|(u, c)| {
            let d = generalized_stabilizer(&c, l, k)?;
            Ok((u, c, d))
        })
        .collect::<Result<_>>()?;
    let polys: Vec<PoincarePoly> = jobs
        .par_iter()
        .map(|(_, _, d)| evaluator.poincare(d, cutoff))
        .collect::<Result<_>>()?;

    let mut vertices: BTreeMap<Vec<u32>, CubeVertex> = all
        .iter()
        .map(|u| {
            let v = CubeVertex {
                subset: u.clone(),
                orbits: Vec::new(),
                poincare: PoincarePoly::zero(),
            };
            (u.clone(), v)
        })
        .collect();
    for ((u, chain, descriptor), poincare) in jobs.into_iter().zip(polys) {
        let vertex = vertices.get_mut(&u).unwrap();
        vertex.poincare = vertex.poincare.add(&poincare);
        vertex.orbits.push(VertexOrbit {
            chain,
            descriptor,
            poincare,
        });
    }

    let mut failures = Vec::new();
    let mut edges = Vec::new();
    for base in subsets(m.saturating_sub(1)).into_iter().filter(|_| m >= 2) {
        let mut extended = base.clone();
        extended.push(m);
        let (bv, ev) = (&vertices[&base], &vertices[&extended]);
        let stripped: Vec<Option<ChainType>> = ev.orbits.iter().map(|o| o.chain.drop_finest()).collect();
        let stripped_set: BTreeSet<&ChainType> = stripped.iter().flatten().collect();
        let base_set: BTreeSet<&ChainType> = bv.orbits.iter().map(|o| &o.chain).collect();
        let bijective = ev.orbits.iter().all(|o| o.chain.ends_in_lines())
            && stripped.iter().all(Option::is_some)
            && stripped_set.len() == ev.orbits.len()
            && stripped_set == base_set;
        if !bijective {
            failures.push(format!("{} → {}: chain types do not pair up", fmt_set(&extended), fmt_set(&base)));
        }
        let mut pairs = Vec::new();
        for b in &bv.orbits {
            let Some(appended) = b.chain.append_lines() else {
                continue;
            };
            let Some(e) = ev.orbits.iter().find(|o| o.chain == appended) else {
                failures.push(format!("{}: no partner for {}", fmt_set(&extended), b.chain));
                continue;
            };
            let torus = e.descriptor.blocks().iter().all(|blk| blk.size == 1)
                && e.descriptor.blocks().len() as u32 == m;
            let equal = b.poincare.agrees_with(&e.poincare);
            if !torus {
                failures.push(format!("{}: isotropy of {} is not a torus extension", fmt_set(&extended), e.chain));
            }
            if !equal {
                failures.push(format!(
                    "{} / {}: P({}) = {} but P({}) = {}",
                    fmt_set(&base),
                    fmt_set(&extended),
                    b.chain,
                    b.poincare,
                    e.chain,
                    e.poincare
                ));
            }
            pairs.push(EdgePair {
                base: b.chain.clone(),
                extended: e.chain.clone(),
                torus,
                equal,
            });
        }
        let verified = bijective && pairs.iter().all(|p| p.torus && p.equal);
        edges.push(CubeEdge {
            base,
            extended,
            bijective,
            pairs,
            verified,
        });
    }

    let mut signed_sum = SignedPoly::default();
    for v in vertices.values() {
        let sign = if v.subset.len() % 2 == 0 { 1 } else { -1 };
        signed_sum.add_scaled(&v.poincare, sign);
    }
    let signed_sum_zero = signed_sum.is_zero();
    if m >= 2 && !signed_sum_zero {
        failures.push(format!("signed sum is {signed_sum}, not 0"));
    }
    let all_verified = failures.is_empty() && edges.iter().all(|e| e.verified);
    Ok(CubeReport {
        params,
        vertices: vertices.into_values().collect(),
        edges,
        signed_sum,
        signed_sum_zero,
        all_verified,
        failures,
    })
}

fn fmt_set(u: &[u32]) -> String {
    let parts: Vec<String> = u.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}
