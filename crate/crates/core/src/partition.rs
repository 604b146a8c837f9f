//! Partition value types for the three families.
//!
//! All types are immutable after construction and always held in canonical
//! form: each block sorted, blocks ordered by their minimum. Signed labels are
//! ordered `1, 2, .., n, -1, -2, .., -n`, which is also the clockwise order of
//! the points in the circular picture.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Position (0-based, clockwise) of a signed label among `1..n, -1..-n`.
pub fn signed_position(label: i32, half: usize) -> usize {
    if label > 0 {
        label as usize - 1
    } else {
        half + (-label) as usize - 1
    }
}

/// Inverse of [`signed_position`].
pub fn signed_label(position: usize, half: usize) -> i32 {
    if position < half {
        position as i32 + 1
    } else {
        -((position - half) as i32 + 1)
    }
}

/// Groups positions `0..owner.len()` by owner id into canonical blocks.
fn blocks_from_owner(owner: &[usize]) -> Vec<Vec<usize>> {
    let ids = owner.iter().max().map_or(0, |&m| m + 1);
    let mut index = vec![usize::MAX; ids];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (pos, &id) in owner.iter().enumerate() {
        if index[id] == usize::MAX {
            index[id] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[id]].push(pos);
    }
    blocks
}

/// A set partition of `{1..N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalPartition {
    size: usize,
    blocks: Vec<Vec<u32>>,
}

impl ClassicalPartition {
    /// Validates and canonicalizes `blocks` as a partition of `{1..size}`.
    pub fn new(size: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::NotAPartition("ground set must be nonempty".into()));
        }
        let mut seen = vec![false; size + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &x in block {
                if x == 0 || x as usize > size {
                    return Err(Error::NotAPartition(format!("element {x} outside 1..{size}")));
                }
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::NotAPartition(format!("element {x} appears twice")));
                }
            }
        }
        if let Some(missing) = (1..=size).find(|&x| !seen[x]) {
            return Err(Error::NotAPartition(format!("element {missing} is not covered")));
        }
        Ok(Self::canonical(size, blocks))
    }

    fn canonical(size: usize, mut blocks: Vec<Vec<u32>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { size, blocks }
    }

    /// Builds a partition from a block id per 0-based position.
    pub fn from_owner(owner: &[usize]) -> Self {
        let blocks = blocks_from_owner(owner)
            .into_iter()
            .map(|b| b.into_iter().map(|p| p as u32 + 1).collect())
            .collect();
        Self {
            size: owner.len(),
            blocks,
        }
    }

    pub fn singletons(size: usize) -> Self {
        Self {
            size,
            blocks: (1..=size as u32).map(|x| vec![x]).collect(),
        }
    }

    pub fn full(size: usize) -> Self {
        Self {
            size,
            blocks: vec![(1..=size as u32).collect()],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index (in canonical order) of every 0-based position.
    pub fn owner(&self) -> Vec<usize> {
        let mut owner = vec![0; self.size];
        for (id, block) in self.blocks.iter().enumerate() {
            for &x in block {
                owner[x as usize - 1] = id;
            }
        }
        owner
    }

    /// True when `a` and `b` lie in the same block.
    pub fn same_block(&self, a: u32, b: u32) -> bool {
        self.blocks.iter().any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    pub fn block_type(&self) -> BlockSizeVector {
        let mut r = vec![0; self.size];
        for block in &self.blocks {
            r[block.len() - 1] += 1;
        }
        BlockSizeVector { r, s: 0 }
    }
}

impl fmt::Display for ClassicalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, self.blocks.iter().map(|b| b.iter().map(|&x| x as i64)))
    }
}

fn write_blocks<I, B>(f: &mut fmt::Formatter<'_>, blocks: I) -> fmt::Result
where
    I: Iterator<Item = B>,
    B: Iterator<Item = i64>,
{
    write!(f, "{{")?;
    for (i, block) in blocks.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{{")?;
        for (j, x) in block.enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")?;
    }
    write!(f, "}}")
}

/// A centrally symmetric partition of `{±1..±n}` with at most one zero-block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPartition {
    half: usize,
    blocks: Vec<Vec<i32>>,
}

impl SignedPartition {
    pub fn new(half: usize, blocks: Vec<Vec<i32>>) -> Result<Self> {
        if half == 0 {
            return Err(Error::NotAPartition("ground set must be nonempty".into()));
        }
        let mut seen = vec![false; 2 * half];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &x in block {
                if x == 0 || x.unsigned_abs() as usize > half {
                    return Err(Error::NotAPartition(format!("element {x} outside ±1..±{half}")));
                }
                if std::mem::replace(&mut seen[signed_position(x, half)], true) {
                    return Err(Error::NotAPartition(format!("element {x} appears twice")));
                }
            }
        }
        if let Some(p) = seen.iter().position(|&s| !s) {
            return Err(Error::NotAPartition(format!(
                "element {} is not covered",
                signed_label(p, half)
            )));
        }
        let candidate = Self::canonical(half, blocks);
        let mut zero_blocks = 0;
        for block in &candidate.blocks {
            let mirror = candidate.mirror_of(block);
            if &mirror == block {
                zero_blocks += 1;
            } else if !candidate.blocks.contains(&mirror) {
                return Err(Error::NotSymmetric(block.clone()));
            }
        }
        if zero_blocks > 1 {
            return Err(Error::MultipleZeroBlocks);
        }
        Ok(candidate)
    }

    fn canonical(half: usize, mut blocks: Vec<Vec<i32>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable_by_key(|&x| signed_position(x, half));
        }
        blocks.sort_unstable_by_key(|b| signed_position(b[0], half));
        Self { half, blocks }
    }

    fn mirror_of(&self, block: &[i32]) -> Vec<i32> {
        let mut m: Vec<i32> = block.iter().map(|&x| -x).collect();
        m.sort_unstable_by_key(|&x| signed_position(x, self.half));
        m
    }

    /// Builds a partition from a block id per position; the caller guarantees symmetry.
    pub(crate) fn from_owner_unchecked(half: usize, owner: &[usize]) -> Self {
        let blocks = blocks_from_owner(owner)
            .into_iter()
            .map(|b| b.into_iter().map(|p| signed_label(p, half)).collect())
            .collect();
        Self { half, blocks }
    }

    pub fn singletons(half: usize) -> Self {
        let owner: Vec<usize> = (0..2 * half).collect();
        Self::from_owner_unchecked(half, &owner)
    }

    pub fn half_size(&self) -> usize {
        self.half
    }

    pub fn blocks(&self) -> &[Vec<i32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn zero_block(&self) -> Option<&[i32]> {
        self.blocks.iter().find(|b| b.contains(&-b[0])).map(Vec::as_slice)
    }

    /// Block index of every clockwise position `0..2n`.
    pub fn owner(&self) -> Vec<usize> {
        let mut owner = vec![0; 2 * self.half];
        for (id, block) in self.blocks.iter().enumerate() {
            for &x in block {
                owner[signed_position(x, self.half)] = id;
            }
        }
        owner
    }

    /// The same partition with labels `1..n, -1..-n` renamed `1..2n` clockwise.
    pub fn unsigned(&self) -> ClassicalPartition {
        ClassicalPartition::from_owner(&self.owner())
    }

    /// `r_t` counts unordered non-zero pairs `{V, -V}` of size `t`; `s` is the
    /// zero-block half-size.
    pub fn block_type(&self) -> BlockSizeVector {
        let mut r = vec![0; self.half];
        let mut s = 0;
        for block in &self.blocks {
            if block.contains(&-block[0]) {
                s = block.len() / 2;
            } else {
                r[block.len() - 1] += 1;
            }
        }
        // each non-zero pair was seen twice
        for x in &mut r {
            *x /= 2;
        }
        BlockSizeVector { r, s }
    }
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, self.blocks.iter().map(|b| b.iter().map(|&x| x as i64)))
    }
}

/// A signed partition of `{±1..±kn}` read on the `(2k(n-1), 2k)` annulus.
///
/// Labels of magnitude at most `k(n-1)` sit clockwise on the outer circle, the
/// remaining `2k` labels counterclockwise on the inner circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnulusPartition {
    n: usize,
    k: usize,
    base: SignedPartition,
}

impl AnnulusPartition {
    pub fn new(n: usize, k: usize, base: SignedPartition) -> Result<Self> {
        if n < 2 || k == 0 {
            return Err(Error::OutOfRange(format!(
                "annulus needs n >= 2 and k >= 1, got n={n} k={k}"
            )));
        }
        if base.half_size() != k * n {
            return Err(Error::NotAPartition(format!(
                "annulus (n={n}, k={k}) needs half-size {}, got {}",
                k * n,
                base.half_size()
            )));
        }
        Ok(Self { n, k, base })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &SignedPartition {
        &self.base
    }

    /// Number of outer labels of each sign, `k(n-1)`.
    pub fn outer_half(&self) -> usize {
        self.k * (self.n - 1)
    }

    pub fn is_inner(&self, label: i32) -> bool {
        label.unsigned_abs() as usize > self.outer_half()
    }

    pub fn block_type(&self) -> BlockSizeVector {
        self.base.block_type()
    }
}

impl fmt::Display for AnnulusPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.base.fmt(f)
    }
}

/// Multiplicities of block (or pair) sizes: `r[t-1]` blocks of size `t`, plus
/// the zero-block half-size `s` (0 when absent).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSizeVector {
    pub r: Vec<usize>,
    pub s: usize,
}

impl BlockSizeVector {
    pub fn new(r: Vec<usize>, s: usize) -> Self {
        Self { r, s }
    }

    /// `r_t` for 1-based `t`; zero beyond the stored length.
    pub fn count(&self, t: usize) -> usize {
        if t == 0 {
            return 0;
        }
        self.r.get(t - 1).copied().unwrap_or(0)
    }

    /// Number of blocks (type A) or non-zero pairs (types B/D), `m`.
    pub fn m(&self) -> usize {
        self.r.iter().sum()
    }

    /// `s + Σ t·r_t`.
    pub fn mass(&self) -> usize {
        self.s + self.r.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum::<usize>()
    }

    /// `p_r = Π r_t!`.
    pub fn p_r(&self) -> BigUint {
        self.r.iter().fold(BigUint::one(), |acc, &c| {
            acc * (1..=c).fold(BigUint::one(), |f, i| f * BigUint::from(i))
        })
    }

    pub fn sizes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.r
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
    }
}

/// Which divisibility property to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divisibility {
    /// Every block (pair, zero-block half) size is a multiple of `k`.
    Divisible,
    /// Every block (pair) has size exactly `k` and there is no zero-block.
    Equal,
}

pub fn divisibility(block_type: &BlockSizeVector, k: usize, mode: Divisibility) -> bool {
    match mode {
        Divisibility::Divisible => block_type.s.is_multiple_of(k) && block_type.sizes().all(|(t, _)| t % k == 0),
        Divisibility::Equal => block_type.s == 0 && block_type.sizes().all(|(t, _)| t == k),
    }
}

/// Any member of a family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyPartition {
    A(ClassicalPartition),
    B(SignedPartition),
    D(AnnulusPartition),
}

impl AnyPartition {
    pub fn block_type(&self) -> BlockSizeVector {
        match self {
            AnyPartition::A(p) => p.block_type(),
            AnyPartition::B(p) => p.block_type(),
            AnyPartition::D(p) => p.block_type(),
        }
    }

    /// Blocks as plain integers, signed labels negative.
    pub fn blocks_i64(&self) -> Vec<Vec<i64>> {
        match self {
            AnyPartition::A(p) => p
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&x| x as i64).collect())
                .collect(),
            AnyPartition::B(p) => signed_i64(p),
            AnyPartition::D(p) => signed_i64(p.base()),
        }
    }

    pub fn num_blocks(&self) -> usize {
        match self {
            AnyPartition::A(p) => p.num_blocks(),
            AnyPartition::B(p) => p.num_blocks(),
            AnyPartition::D(p) => p.base().num_blocks(),
        }
    }
}

fn signed_i64(p: &SignedPartition) -> Vec<Vec<i64>> {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|&x| x as i64).collect())
        .collect()
}

impl fmt::Display for AnyPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPartition::A(p) => p.fmt(f),
            AnyPartition::B(p) => p.fmt(f),
            AnyPartition::D(p) => p.fmt(f),
        }
    }
}

/// Ground set descriptor for [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ground {
    /// `{1..N}`.
    Classical(usize),
    /// `{±1..±n}`.
    Signed(usize),
}

/// Checks raw integer blocks against a ground set and returns the canonical partition.
pub fn validate(blocks: &[Vec<i64>], ground: Ground) -> Result<AnyPartition> {
    match ground {
        Ground::Classical(size) => {
            let blocks = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&x| {
                            u32::try_from(x).map_err(|_| Error::NotAPartition(format!("element {x} outside 1..{size}")))
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            ClassicalPartition::new(size, blocks).map(AnyPartition::A)
        }
        Ground::Signed(half) => {
            let blocks = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&x| {
                            i32::try_from(x).map_err(|_| Error::NotAPartition(format!("element {x} out of range")))
                        })
                        .collect::<Result<Vec<i32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            SignedPartition::new(half, blocks).map(AnyPartition::B)
        }
    }
}
