//! Block-size statistics over a whole family, gathered by streaming enumeration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::enumerate::{enumerate_with_limit, DEFAULT_MAX_POINTS};
use crate::error::Result;
use crate::family::FamilySpec;
use crate::partition::BlockSizeVector;

/// Exact census of a family.
///
/// Sizes are raw: `t` is a block (or pair) size and `s` a zero-block
/// half-size, both multiples of `k` in a `k`-divisible family. `m` counts the
/// blocks (type A) or non-zero pairs (types B, D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    spec: FamilySpec,
    members: BigUint,
    /// `(t, m, s)` → number of blocks of size `t` over members with `m`
    /// blocks and zero-block half-size `s`.
    cells: BTreeMap<(usize, usize, usize), BigUint>,
    /// `(s, m)` → members with a zero-block of half-size `s >= 1`.
    zero_blocks: BTreeMap<(usize, usize), BigUint>,
    types: BTreeMap<BlockSizeVector, BigUint>,
}

impl CensusTable {
    pub fn empty(spec: FamilySpec) -> Self {
        Self {
            spec,
            members: BigUint::zero(),
            cells: BTreeMap::new(),
            zero_blocks: BTreeMap::new(),
            types: BTreeMap::new(),
        }
    }

    /// Records one member with the given block type.
    pub fn add(&mut self, bt: &BlockSizeVector) {
        self.members += 1u32;
        let m = bt.m();
        for (t, count) in bt.sizes() {
            *self.cells.entry((t, m, bt.s)).or_default() += count;
        }
        if bt.s > 0 {
            *self.zero_blocks.entry((bt.s, m)).or_default() += 1u32;
        }
        *self.types.entry(bt.clone()).or_default() += 1u32;
    }

    /// Cellwise sum with a table of the same family.
    pub fn merge(&mut self, other: &CensusTable) {
        assert_eq!(self.spec, other.spec, "merging censuses of different families");
        self.members += &other.members;
        for (key, v) in &other.cells {
            *self.cells.entry(*key).or_default() += v;
        }
        for (key, v) in &other.zero_blocks {
            *self.zero_blocks.entry(*key).or_default() += v;
        }
        for (key, v) in &other.types {
            *self.types.entry(key.clone()).or_default() += v;
        }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn members(&self) -> &BigUint {
        &self.members
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize, usize), BigUint> {
        &self.cells
    }

    /// Members per exact block type.
    pub fn types(&self) -> &BTreeMap<BlockSizeVector, BigUint> {
        &self.types
    }

    fn sum_cells(&self, keep: impl Fn(usize, usize, usize) -> bool) -> BigUint {
        self.cells
            .iter()
            .filter(|((t, m, s), _)| keep(*t, *m, *s))
            .map(|(_, v)| v)
            .sum()
    }

    /// Blocks or pairs of size `tk`; with `include_zero_blocks`, each zero-block
    /// of half-size `tk` also counts as one pair.
    pub fn block_total(&self, t: usize, include_zero_blocks: bool) -> BigUint {
        let size = t * self.spec.k;
        let mut total = self.sum_cells(|tt, _, _| tt == size);
        if include_zero_blocks {
            total += self.zero_blocks_of_size(t);
        }
        total
    }

    /// Blocks or non-zero pairs of size `tk` over members with `m` of them and
    /// zero-block half-size `sk`.
    pub fn block_total_given(&self, t: usize, m: usize, s: usize) -> BigUint {
        let k = self.spec.k;
        self.cells.get(&(t * k, m, s * k)).cloned().unwrap_or_default()
    }

    /// Blocks or non-zero pairs of size `tk` over members with `m` of them.
    pub fn block_total_given_m(&self, t: usize, m: usize) -> BigUint {
        let size = t * self.spec.k;
        self.sum_cells(|tt, mm, _| tt == size && mm == m)
    }

    /// Members whose zero-block has half-size `tk`.
    pub fn zero_blocks_of_size(&self, t: usize) -> BigUint {
        let s = t * self.spec.k;
        self.zero_blocks
            .iter()
            .filter(|((ss, _), _)| *ss == s)
            .map(|(_, v)| v)
            .sum()
    }

    /// Blocks summed over the family; a pair `{V, -V}` and a zero-block each count once.
    pub fn total_blocks(&self) -> BigUint {
        let pairs: BigUint = self.cells.values().sum();
        let zeros: BigUint = self.zero_blocks.values().sum();
        pairs + zeros
    }

    /// `Σ t·count + Σ s·(zero-blocks)`; equals `kn` times the number of members.
    pub fn mass(&self) -> BigUint {
        let blocks: BigUint = self.cells.iter().map(|((t, _, _), v)| v * *t).sum();
        let zeros: BigUint = self.zero_blocks.iter().map(|((s, _), v)| v * *s).sum();
        blocks + zeros
    }

    /// CSV with header `family,n,k,t,m,s,count`.
    ///
    /// Block rows carry the block count of a `(t, m, s)` cell; rows with `t = 0`
    /// count the members having a zero-block of half-size `s` and `m` non-zero pairs.
    pub fn to_csv(&self) -> String {
        let mut rows: BTreeMap<(usize, usize, usize), &BigUint> = BTreeMap::new();
        for (key, v) in &self.cells {
            rows.insert(*key, v);
        }
        for ((s, m), v) in &self.zero_blocks {
            rows.insert((0, *m, *s), v);
        }
        let mut out = String::from("family,n,k,t,m,s,count\n");
        for ((t, m, s), v) in rows {
            let _ = writeln!(
                out,
                "{},{},{},{t},{m},{s},{v}",
                self.spec.label(),
                self.spec.n,
                self.spec.k
            );
        }
        out
    }
}

pub fn census(spec: &FamilySpec) -> Result<CensusTable> {
    census_with_limit(spec, DEFAULT_MAX_POINTS)
}

pub fn census_with_limit(spec: &FamilySpec, max_points: usize) -> Result<CensusTable> {
    let mut table = CensusTable::empty(*spec);
    for p in enumerate_with_limit(spec, max_points)? {
        table.add(&p.block_type());
    }
    Ok(table)
}

/// Members per block type, without the size tables.
pub fn type_histogram(spec: &FamilySpec, max_points: usize) -> Result<BTreeMap<BlockSizeVector, BigUint>> {
    let mut hist: BTreeMap<BlockSizeVector, BigUint> = BTreeMap::new();
    let one = BigUint::one();
    for p in enumerate_with_limit(spec, max_points)? {
        *hist.entry(p.block_type()).or_default() += &one;
    }
    Ok(hist)
}
