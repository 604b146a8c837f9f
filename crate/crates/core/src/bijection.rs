//! Gluing maps between `(k+1)`-equal and `k`-divisible non-crossing partitions,
//! the absolute-value map from type B, and the residue-class split of the
//! Kreweras complement.

use crate::error::{Error, Result};
use crate::noncrossing::{is_noncrossing, kreweras};
use crate::partition::{ClassicalPartition, SignedPartition};

/// Selects which boundary pairs are identified: `{x, x+1}` for every
/// `x ≡ i (mod k+1)`. Index 0 glues `{k+1, k+2}, …, {n(k+1), 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlueIndex {
    k: usize,
    i: usize,
}

impl GlueIndex {
    pub fn new(k: usize, i: usize) -> Result<Self> {
        if k == 0 || i > k {
            return Err(Error::OutOfRange(format!(
                "glue index needs k >= 1 and 0 <= i <= k, got k={k} i={i}"
            )));
        }
        Ok(Self { k, i })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn i(&self) -> usize {
        self.i
    }
}

fn check_equal(p: &ClassicalPartition, size: usize) -> Result<usize> {
    let n = p.size() / size;
    if !p.size().is_multiple_of(size) || p.blocks().iter().any(|b| b.len() != size) {
        return Err(Error::NotKEqual { k: size });
    }
    if !is_noncrossing(p) {
        return Err(Error::NotNoncrossing);
    }
    Ok(n)
}

/// New label (0-based) of every original 0-based point after gluing.
fn glue_labels(total: usize, step: usize, i: usize) -> Vec<usize> {
    // point x (1-based) is absorbed into x-1 when x-1 ≡ i (mod step), cyclically
    let absorbed = |x: usize| {
        let prev = if x == 1 { total } else { x - 1 };
        prev % step == i
    };
    let start = if absorbed(1) { total } else { 1 };
    let mut labels = vec![0; total];
    let mut next = 0;
    for offset in 0..total {
        let x = (start - 1 + offset) % total + 1;
        if !absorbed(x) {
            next += 1;
        }
        labels[x - 1] = next - 1;
    }
    labels
}

/// Identifies the selected boundary pairs of a `(k+1)`-equal partition of
/// `[n(k+1)]`, giving a `k`-divisible partition of `[nk]`.
pub fn glue(p: &ClassicalPartition, idx: GlueIndex) -> Result<ClassicalPartition> {
    let step = idx.k + 1;
    let n = check_equal(p, step)?;
    let labels = glue_labels(p.size(), step, idx.i);
    // union the original blocks that meet at a glued point
    let owner = p.owner();
    let mut parent: Vec<usize> = (0..p.num_blocks()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut first_at = vec![usize::MAX; n * idx.k];
    for (x, &label) in labels.iter().enumerate() {
        let b = owner[x];
        if first_at[label] == usize::MAX {
            first_at[label] = b;
        } else {
            let (ra, rb) = (find(&mut parent, first_at[label]), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let new_owner: Vec<usize> = first_at.iter().map(|&b| find(&mut parent, b)).collect();
    Ok(ClassicalPartition::from_owner(&new_owner))
}

/// Inverse of [`glue`] with index 0.
pub fn split(p: &ClassicalPartition, k: usize) -> Result<ClassicalPartition> {
    if k == 0 || !p.size().is_multiple_of(k) || p.blocks().iter().any(|b| b.len() % k != 0) {
        return Err(Error::NotKDivisible { k });
    }
    if !is_noncrossing(p) {
        return Err(Error::NotNoncrossing);
    }
    let n = p.size() / k;
    let big = n * (k + 1);
    // label qk+1 is the glued point {q(k+1), q(k+1)+1}; other labels qk+r+1 are q(k+1)+r+1
    let left = |label: u32| {
        let q = (label as usize - 1) / k;
        if q == 0 {
            big
        } else {
            q * (k + 1)
        }
    };
    let right = |label: u32| (label as usize - 1) / k * (k + 1) + 1;
    let plain = |label: u32| {
        let l = label as usize - 1;
        (l / k) * (k + 1) + l % k + 1
    };
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for block in p.blocks() {
        // within a block, labels run through the residues 1, 2, .., k mod k cyclically
        let starts: Vec<usize> = (0..block.len())
            .filter(|&j| ((block[j] - 1) as usize).is_multiple_of(k))
            .collect();
        for &j in &starts {
            let mut small = vec![right(block[j]) as u32];
            for step in 1..k {
                small.push(plain(block[(j + step) % block.len()]) as u32);
            }
            small.push(left(block[(j + k) % block.len()]) as u32);
            blocks.push(small);
        }
    }
    ClassicalPartition::new(big, blocks).map_err(|_| Error::NotKDivisible { k })
}

/// `{Abs(V) : V ∈ p}` as a partition of `[n]`.
pub fn abs_map(p: &SignedPartition) -> ClassicalPartition {
    let mut blocks: Vec<Vec<u32>> = p
        .blocks()
        .iter()
        .map(|b| {
            let mut a: Vec<u32> = b.iter().map(|x| x.unsigned_abs()).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    blocks.sort();
    blocks.dedup();
    ClassicalPartition::new(p.half_size(), blocks).expect("absolute values of a symmetric partition")
}

/// Splits `Kr(p)` of a `(k+1)`-equal `p` along residues mod `k+1`.
///
/// Complement point `c` sits between `c` and `c+1`; every block of the
/// complement stays inside one residue class. Entry `j` restricts the
/// complement to the points `c ≡ j (mod k+1)`, relabeled `1..n` in order, and
/// has as many blocks as `glue(p, j)`.
pub fn kreweras_decompose(p: &ClassicalPartition, k: usize) -> Result<Vec<ClassicalPartition>> {
    let step = k + 1;
    let n = check_equal(p, step)?;
    let kr = kreweras(p)?;
    let owner = kr.owner();
    Ok((0..step)
        .map(|j| {
            // points c with c ≡ j, in increasing order
            let points: Vec<usize> = (1..=p.size()).filter(|c| c % step == j).collect();
            debug_assert_eq!(points.len(), n);
            let restricted: Vec<usize> = points.iter().map(|&c| owner[c - 1]).collect();
            ClassicalPartition::from_owner(&restricted)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: Vec<Vec<u32>>) -> ClassicalPartition {
        ClassicalPartition::new(n, blocks).unwrap()
    }

    #[test]
    fn glue_small() {
        let idx = GlueIndex::new(1, 0).unwrap();
        assert_eq!(
            glue(&part(4, vec![vec![1, 2], vec![3, 4]]), idx).unwrap(),
            ClassicalPartition::full(2)
        );
        assert_eq!(
            glue(&part(4, vec![vec![1, 4], vec![2, 3]]), idx).unwrap(),
            ClassicalPartition::singletons(2)
        );
        assert_eq!(
            glue(&part(4, vec![vec![1, 2, 3], vec![4]]), idx),
            Err(Error::NotKEqual { k: 2 })
        );
        assert_eq!(
            glue(&part(4, vec![vec![1, 3], vec![2, 4]]), idx),
            Err(Error::NotNoncrossing)
        );
    }

    #[test]
    fn split_small() {
        assert_eq!(
            split(&ClassicalPartition::full(2), 1).unwrap(),
            part(4, vec![vec![1, 2], vec![3, 4]])
        );
        let pre = split(&ClassicalPartition::full(4), 2).unwrap();
        assert!(pre.blocks().iter().all(|b| b.len() == 3));
        assert_eq!(
            glue(&pre, GlueIndex::new(2, 0).unwrap()).unwrap(),
            ClassicalPartition::full(4)
        );
        assert_eq!(
            split(&part(3, vec![vec![1, 2], vec![3]]), 2),
            Err(Error::NotKDivisible { k: 2 })
        );
    }

    #[test]
    fn label_map_index_zero() {
        // k=2, n=2: points 1..6, pairs {3,4} and {6,1} glued
        assert_eq!(glue_labels(6, 3, 0), vec![0, 1, 2, 2, 3, 0]);
        assert_eq!(glue_labels(6, 3, 1), vec![0, 0, 1, 2, 2, 3]);
    }

    #[test]
    fn abs_examples() {
        let z = SignedPartition::new(2, vec![vec![1, -1], vec![2], vec![-2]]).unwrap();
        assert_eq!(abs_map(&z), ClassicalPartition::singletons(2));
        let pair = SignedPartition::new(2, vec![vec![1, 2], vec![-1, -2]]).unwrap();
        assert_eq!(abs_map(&pair), ClassicalPartition::full(2));
    }

    #[test]
    fn decompose_small() {
        let p = part(4, vec![vec![1, 2], vec![3, 4]]);
        let parts = kreweras_decompose(&p, 1).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts.iter().map(|q| q.num_blocks()).sum::<usize>(), 3);
        let single = kreweras_decompose(&ClassicalPartition::singletons(3), 0).unwrap();
        assert_eq!(single, vec![ClassicalPartition::full(3)]);
    }
}
