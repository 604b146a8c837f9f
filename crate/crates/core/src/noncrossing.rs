//! Non-crossing predicates on a circle and the Kreweras complement.

use crate::error::{Error, Result};
use crate::partition::{ClassicalPartition, SignedPartition};

/// Single left-to-right scan with a stack of open blocks.
///
/// `owner[i]` is the block id of position `i`; ids need not be dense.
pub fn owner_is_noncrossing(owner: &[usize]) -> bool {
    let ids = owner.iter().copied().max().map_or(0, |m| m + 1);
    let mut last = vec![0usize; ids];
    for (i, &b) in owner.iter().enumerate() {
        last[b] = i;
    }
    let mut opened = vec![false; ids];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &b) in owner.iter().enumerate() {
        if opened[b] {
            if stack.last() != Some(&b) {
                return false;
            }
        } else {
            opened[b] = true;
            stack.push(b);
        }
        if last[b] == i {
            stack.pop();
        }
    }
    true
}

pub fn is_noncrossing(p: &ClassicalPartition) -> bool {
    owner_is_noncrossing(&p.owner())
}

/// Direct test: no `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_noncrossing_by_quadruples(p: &ClassicalPartition) -> bool {
    let owner = p.owner();
    let n = owner.len();
    for a in 0..n {
        for c in a + 2..n {
            if owner[a] != owner[c] {
                continue;
            }
            for b in a + 1..c {
                if owner[b] == owner[a] {
                    continue;
                }
                if (c + 1..n).any(|d| owner[d] == owner[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Repeatedly strips a block made of consecutive remaining elements.
pub fn is_noncrossing_by_interval_removal(p: &ClassicalPartition) -> bool {
    let mut rest: Vec<usize> = p.owner();
    while !rest.is_empty() {
        let mut stripped = None;
        let mut start = 0;
        while start < rest.len() {
            let id = rest[start];
            let mut end = start;
            while end < rest.len() && rest[end] == id {
                end += 1;
            }
            if !rest[..start].contains(&id) && !rest[end..].contains(&id) {
                stripped = Some((start, end));
                break;
            }
            start = end;
        }
        match stripped {
            Some((s, e)) => {
                rest.drain(s..e);
            }
            None => return false,
        }
    }
    true
}

/// Non-crossing test of the clockwise relabeling to `{1..2n}`.
pub fn is_noncrossing_signed(p: &SignedPartition) -> bool {
    owner_is_noncrossing(&p.owner())
}

/// Kreweras complement.
///
/// Point `i` of the complement sits between `i` and `i+1` on the circle; the
/// result is the coarsest partition of those points whose union with `p` stays
/// non-crossing. Computed as the cycles of `p⁻¹ ∘ (1 2 .. n)`.
pub fn kreweras(p: &ClassicalPartition) -> Result<ClassicalPartition> {
    if !is_noncrossing(p) {
        return Err(Error::CrossingInput);
    }
    let n = p.size();
    // predecessor of each element inside its block, cyclically
    let mut pred = vec![0usize; n];
    for block in p.blocks() {
        for (i, &x) in block.iter().enumerate() {
            let prev = block[(i + block.len() - 1) % block.len()];
            pred[x as usize - 1] = prev as usize - 1;
        }
    }
    let mut owner = vec![usize::MAX; n];
    let mut next_id = 0;
    for start in 0..n {
        if owner[start] != usize::MAX {
            continue;
        }
        let mut i = start;
        while owner[i] == usize::MAX {
            owner[i] = next_id;
            i = pred[(i + 1) % n];
        }
        next_id += 1;
    }
    Ok(ClassicalPartition::from_owner(&owner))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: Vec<Vec<u32>>) -> ClassicalPartition {
        ClassicalPartition::new(n, blocks).unwrap()
    }

    #[test]
    fn figure_examples() {
        let nc = part(
            12,
            vec![vec![1, 2, 5, 9], vec![3, 4], vec![6], vec![7, 8], vec![10, 11, 12]],
        );
        let cr = part(12, vec![vec![1, 4, 7], vec![2, 9], vec![3, 11, 12], vec![5, 6, 8, 10]]);
        for f in [
            is_noncrossing,
            is_noncrossing_by_quadruples,
            is_noncrossing_by_interval_removal,
        ] {
            assert!(f(&nc));
            assert!(!f(&cr));
            assert!(f(&ClassicalPartition::singletons(7)));
        }
    }

    #[test]
    fn signed_examples() {
        let cases = [
            vec![vec![1, -1], vec![2], vec![-2]],
            vec![vec![1, 2], vec![-1, -2]],
            vec![vec![1, -2], vec![2, -1]],
        ];
        for blocks in cases {
            assert!(is_noncrossing_signed(&SignedPartition::new(2, blocks).unwrap()));
        }
        let crossing = SignedPartition::new(3, vec![vec![1, 3], vec![-1, -3], vec![2, -2]]).unwrap();
        assert!(!is_noncrossing_signed(&crossing));
    }

    #[test]
    fn kreweras_small() {
        let p = part(3, vec![vec![1, 2], vec![3]]);
        assert_eq!(kreweras(&p).unwrap().blocks(), &[vec![1], vec![2, 3]]);
        assert_eq!(
            kreweras(&ClassicalPartition::singletons(5)).unwrap(),
            ClassicalPartition::full(5)
        );
        assert_eq!(
            kreweras(&ClassicalPartition::full(5)).unwrap(),
            ClassicalPartition::singletons(5)
        );
        let crossing = part(4, vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(kreweras(&crossing), Err(Error::CrossingInput));
    }
}
