//! Canonical descriptors of unitary orbit spaces `U(k)/H`.
//!
//! `H` is built from blocks `U(a) ⊗ I_l` (a copy of `U(a)` acting diagonally
//! on `ℂ^a ⊗ ℂ^l`), a full `U(c)` on a complementary subspace, and a finite
//! group permuting identical blocks. The finite part is a tree of wreath
//! products: `S_n wr F` is `n` copies of `F` permuted by `S_n`. Any
//! dimensions of `ℂ^k` left over after the blocks and the complement are
//! acted on trivially (they are framed, as in a Stiefel manifold).
//!
//! # Grammar
//!
//! ```text
//! descriptor := "U(" INT ")" [ "/" list ]
//! list       := item ( ("x" | "|x") item )*
//! item       := primary ( "|S" INT )*
//! primary    := "[" [ list ] "]"          product of the listed factors
//!             | "S" INT "wr" primary      wreath product
//!             | INT "x" primary           INT copies, not permuted
//!             | "(" INT [ "," INT ] ")"   block U(a) ⊗ I_l, l defaults to 1
//!             | "U(" INT ")"              the complement (top level only)
//! ```
//!
//! The postfix `|Sn` turns `n` identical copies into their wreath product, so
//! `[2x(1,1)|S2]` and `S2wr(1)` describe the same group. Canonical strings
//! print every wreath as `SnwrF`, omit `l = 1`, and sort factors:
//! `U(4)/[S2wr(1)]xU(2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::orbitspace::cycle_index::CycleIndex;
use crate::scalar::Scalar;

/// `U(size) ⊗ I_multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub size: u32,
    pub multiplicity: u32,
}

impl Block {
    pub fn new(size: u32, multiplicity: u32) -> Self {
        Block { size, multiplicity }
    }

    pub fn dimension(&self) -> u32 {
        self.size * self.multiplicity
    }
}

/// The connected blocks of `H` together with the finite permutation group
/// acting on them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Wreath { copies: u32, inner: Box<Factor> },
    Product(Vec<Factor>),
    Block(Block),
}

impl Factor {
    pub fn block(size: u32, multiplicity: u32) -> Self {
        Factor::Block(Block::new(size, multiplicity))
    }

    pub fn wreath(copies: u32, inner: Factor) -> Self {
        Factor::Wreath {
            copies,
            inner: Box::new(inner),
        }
    }

    pub fn trivial() -> Self {
        Factor::Product(Vec::new())
    }

    pub fn canonical(&self) -> Factor {
        match self {
            Factor::Block(b) => Factor::Block(*b),
            Factor::Wreath { copies, inner } => {
                let inner = inner.canonical();
                if *copies == 1 || inner == Factor::trivial() {
                    inner
                } else {
                    Factor::wreath(*copies, inner)
                }
            }
            Factor::Product(children) => {
                let mut flat = Vec::new();
                for c in children {
                    match c.canonical() {
                        Factor::Product(grand) => flat.extend(grand),
                        other => flat.push(other),
                    }
                }
                flat.sort();
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    Factor::Product(flat)
                }
            }
        }
    }

    /// Blocks in tree order, with repetition.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        self.collect_blocks(&mut out);
        out
    }

    fn collect_blocks(&self, out: &mut Vec<Block>) {
        match self {
            Factor::Block(b) => out.push(*b),
            Factor::Product(cs) => cs.iter().for_each(|c| c.collect_blocks(out)),
            Factor::Wreath { copies, inner } => {
                for _ in 0..*copies {
                    inner.collect_blocks(out);
                }
            }
        }
    }

    /// Order of the finite block-permutation group.
    pub fn finite_order(&self) -> u128 {
        match self {
            Factor::Block(_) => 1,
            Factor::Product(cs) => cs.iter().map(Factor::finite_order).product(),
            Factor::Wreath { copies, inner } => {
                let fact: u128 = (1..=*copies as u128).product();
                fact * inner.finite_order().pow(*copies)
            }
        }
    }

    /// The finite group as permutations of the [`Factor::blocks`] list:
    /// `perm[i]` is the image of block `i`.
    pub fn block_permutations(&self) -> Vec<Vec<usize>> {
        match self {
            Factor::Block(_) => vec![vec![0]],
            Factor::Product(cs) => {
                let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                for c in cs {
                    let offset = acc[0].len();
                    let perms = c.block_permutations();
                    acc = acc
                        .iter()
                        .flat_map(|a| {
                            perms.iter().map(move |p| {
                                let mut v = a.clone();
                                v.extend(p.iter().map(|&x| x + offset));
                                v
                            })
                        })
                        .collect();
                }
                acc
            }
            Factor::Wreath { copies, inner } => {
                let n = *copies as usize;
                let inner_perms = inner.block_permutations();
                let width = inner_perms[0].len();
                // One inner element per copy, then a permutation of the copies.
                let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
                for _ in 0..n {
                    tuples = tuples
                        .iter()
                        .flat_map(|t| {
                            (0..inner_perms.len()).map(move |g| {
                                let mut t = t.clone();
                                t.push(g);
                                t
                            })
                        })
                        .collect();
                }
                let mut out = Vec::new();
                for sigma in permutations(n) {
                    for t in &tuples {
                        let mut perm = vec![0; n * width];
                        for copy in 0..n {
                            let g = &inner_perms[t[copy]];
                            for i in 0..width {
                                perm[copy * width + i] = sigma[copy] * width + g[i];
                            }
                        }
                        out.push(perm);
                    }
                }
                out
            }
        }
    }

    /// Cycle index of the Weyl-type group acting on the coordinates of the
    /// maximal torus of the blocks (each block of size `a` contributes `S_a`).
    pub fn coordinate_cycle_index<T: Scalar>(&self) -> CycleIndex<T> {
        match self {
            Factor::Block(b) => CycleIndex::symmetric(b.size),
            Factor::Product(cs) => cs
                .iter()
                .fold(CycleIndex::identity(), |acc, c| acc.product(&c.coordinate_cycle_index())),
            Factor::Wreath { copies, inner } => {
                CycleIndex::symmetric(*copies).compose(&inner.coordinate_cycle_index())
            }
        }
    }

    fn fmt_item(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Block(b) if b.multiplicity == 1 => write!(f, "({})", b.size),
            Factor::Block(b) => write!(f, "({},{})", b.size, b.multiplicity),
            Factor::Wreath { copies, inner } => {
                write!(f, "S{copies}wr")?;
                inner.fmt_item(f)
            }
            Factor::Product(cs) => {
                write!(f, "[")?;
                fmt_list(cs, f)?;
                write!(f, "]")
            }
        }
    }
}

fn fmt_list(items: &[Factor], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            write!(f, "x")?;
        }
        c.fmt_item(f)?;
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// A canonical `U(k)/H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitDescriptor {
    ambient: u32,
    group: Factor,
    complement: u32,
}

impl OrbitDescriptor {
    pub fn new(ambient: u32, group: Factor, complement: u32) -> Result<Self> {
        if ambient == 0 {
            return contract("ambient rank must be positive");
        }
        validate_factor(&group)?;
        let group = group.canonical();
        let used: u32 = group.blocks().iter().map(Block::dimension).sum::<u32>() + complement;
        if used > ambient {
            return contract(format!(
                "blocks and complement use {used} dimensions of ℂ^{ambient}"
            ));
        }
        Ok(OrbitDescriptor {
            ambient,
            group,
            complement,
        })
    }

    /// `U(k)/(∏ U(a_b) ⊗ I_{l_b} × U(c))` with no finite part.
    pub fn levi(ambient: u32, blocks: &[(u32, u32)], complement: u32) -> Result<Self> {
        let group = Factor::Product(blocks.iter().map(|&(a, l)| Factor::block(a, l)).collect());
        Self::new(ambient, group, complement)
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn group(&self) -> &Factor {
        &self.group
    }

    pub fn complement(&self) -> u32 {
        self.complement
    }

    pub fn blocks(&self) -> Vec<Block> {
        self.group.blocks()
    }

    /// Dimensions of `ℂ^k` on which `H` acts trivially.
    pub fn framed(&self) -> u32 {
        self.ambient - self.complement - self.blocks().iter().map(Block::dimension).sum::<u32>()
    }

    pub fn has_finite_part(&self) -> bool {
        self.group.finite_order() > 1
    }

    /// `dim U(k)/H = k² − Σ a_b² − c²`.
    pub fn real_dimension(&self) -> u32 {
        let k = self.ambient;
        let h: u32 = self.blocks().iter().map(|b| b.size * b.size).sum::<u32>()
            + self.complement * self.complement;
        k * k - h
    }

    /// Whether the identity component of `H` contains a maximal torus of `U(k)`.
    pub fn is_torus_commensurable(&self) -> bool {
        self.framed() == 0 && self.blocks().iter().all(|b| b.multiplicity == 1)
    }

    /// The same descriptor with every block tensored with `I_l` and the
    /// complement enlarged to fill `ℂ^ambient`.
    pub fn tensored(&self, l: u32, ambient: u32) -> Result<Self> {
        let group = map_blocks(&self.group, &|b| Block::new(b.size, b.multiplicity * l));
        let used: u32 = group.blocks().iter().map(Block::dimension).sum();
        if used > ambient {
            return contract(format!("{used} > {ambient} after tensoring with I_{l}"));
        }
        Self::new(ambient, group, ambient - used)
    }

    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn map_blocks(f: &Factor, map: &impl Fn(Block) -> Block) -> Factor {
    match f {
        Factor::Block(b) => Factor::Block(map(*b)),
        Factor::Product(cs) => Factor::Product(cs.iter().map(|c| map_blocks(c, map)).collect()),
        Factor::Wreath { copies, inner } => Factor::wreath(*copies, map_blocks(inner, map)),
    }
}

fn validate_factor(f: &Factor) -> Result<()> {
    match f {
        Factor::Block(b) if b.size == 0 || b.multiplicity == 0 => {
            contract(format!("block ({},{}) must have positive entries", b.size, b.multiplicity))
        }
        Factor::Block(_) => Ok(()),
        Factor::Product(cs) => cs.iter().try_for_each(validate_factor),
        Factor::Wreath { copies: 0, .. } => contract("wreath product with zero copies"),
        Factor::Wreath { inner, .. } => validate_factor(inner),
    }
}

impl fmt::Display for OrbitDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({})/[", self.ambient)?;
        match &self.group {
            Factor::Product(cs) => fmt_list(cs, f)?,
            other => other.fmt_item(f)?,
        }
        write!(f, "]")?;
        if self.complement > 0 {
            write!(f, "xU({})", self.complement)?;
        }
        Ok(())
    }
}

impl FromStr for OrbitDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).descriptor()
    }
}

impl Serialize for OrbitDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrbitDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

enum Node {
    Factor(Factor),
    Complement(u32),
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            input: self.input.to_string(),
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.bytes[self.pos..].starts_with(token.as_bytes())
    }

    fn accept(&mut self, token: &str) -> bool {
        let hit = self.peek(token);
        if hit {
            self.pos += token.len();
        }
        hit
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.accept(token) {
            Ok(())
        } else {
            self.error(format!("expected {token:?}"))
        }
    }

    fn peek_int(&mut self) -> bool {
        self.skip_ws();
        self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit)
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        match self.input[start..self.pos].parse() {
            Ok(n) => Ok(n),
            Err(_) => self.error("integer out of range"),
        }
    }

    fn descriptor(mut self) -> Result<OrbitDescriptor> {
        self.expect("U(")?;
        let ambient = self.int()?;
        self.expect(")")?;
        let mut factors = Vec::new();
        let mut complement = None;
        if self.accept("/") {
            for node in self.list(true)? {
                match node {
                    Node::Factor(f) => factors.push(f),
                    Node::Complement(c) if complement.is_none() => complement = Some(c),
                    Node::Complement(_) => return self.error("more than one complement factor"),
                }
            }
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.error("trailing input");
        }
        OrbitDescriptor::new(ambient, Factor::Product(factors), complement.unwrap_or(0))
    }

    fn list(&mut self, top: bool) -> Result<Vec<Node>> {
        let mut nodes = self.item(top)?;
        while self.accept("|x") || self.accept("x") {
            nodes.extend(self.item(top)?);
        }
        Ok(nodes)
    }

    fn item(&mut self, top: bool) -> Result<Vec<Node>> {
        let mut nodes = self.primary(top)?;
        while self.accept("|S") {
            let n = self.int()?;
            let [Node::Factor(f)] = nodes.as_slice() else {
                return self.error("|S applies to a single group factor");
            };
            let wreath = match f.clone() {
                _ if n == 1 => f.clone(),
                Factor::Product(cs) if cs.len() == n as usize && cs.iter().all(|c| *c == cs[0]) => {
                    Factor::wreath(n, cs[0].clone())
                }
                _ => return self.error(format!("|S{n} needs {n} identical copies")),
            };
            nodes = vec![Node::Factor(wreath)];
        }
        Ok(nodes)
    }

    fn primary(&mut self, top: bool) -> Result<Vec<Node>> {
        if self.accept("[") {
            if self.accept("]") {
                return Ok(vec![Node::Factor(Factor::trivial())]);
            }
            let inner = self.list(top)?;
            self.expect("]")?;
            let mut factors = Vec::new();
            let mut out = Vec::new();
            for node in inner {
                match node {
                    Node::Factor(f) => factors.push(f),
                    c @ Node::Complement(_) => out.push(c),
                }
            }
            out.insert(0, Node::Factor(Factor::Product(factors)));
            Ok(out)
        } else if self.accept("S") {
            let copies = self.int()?;
            self.expect("wr")?;
            let inner = self.single_factor()?;
            Ok(vec![Node::Factor(Factor::wreath(copies, inner))])
        } else if self.peek_int() {
            let copies = self.int()?;
            self.expect("x")?;
            let inner = self.single_factor()?;
            Ok(vec![Node::Factor(Factor::Product(vec![inner; copies as usize]))])
        } else if self.accept("(") {
            let size = self.int()?;
            let multiplicity = if self.accept(",") { self.int()? } else { 1 };
            self.expect(")")?;
            Ok(vec![Node::Factor(Factor::block(size, multiplicity))])
        } else if self.peek("U(") {
            if !top {
                return self.error("the complement U(c) may only appear at the top level");
            }
            self.expect("U(")?;
            let c = self.int()?;
            self.expect(")")?;
            Ok(vec![Node::Complement(c)])
        } else {
            self.error("expected a group factor")
        }
    }

    fn single_factor(&mut self) -> Result<Factor> {
        match self.primary(false)?.pop() {
            Some(Node::Factor(f)) => Ok(f),
            _ => self.error("expected a group factor"),
        }
    }
}

/// Multiset of block types, used in summaries.
pub fn block_counts(d: &OrbitDescriptor) -> BTreeMap<Block, usize> {
    let mut counts = BTreeMap::new();
    for b in d.blocks() {
        *counts.entry(b).or_insert(0) += 1;
    }
    counts
}
