//! Enumeration and the decision procedures checked against brute force over
//! all set partitions, using definitions written out independently here.

use std::collections::BTreeSet;

use noncross::enumerate::enumerate;
use noncross::noncrossing::kreweras;
use noncross::sampler::Sampler;
use noncross::{AnyPartition, ClassicalPartition, FamilySpec};

type Blocks = Vec<Vec<i64>>;

/// All set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(n, cur, if b == max { max + 1 } else { max }, out);
            cur.pop();
        }
    }
    go(n, &mut cur, 0, &mut out);
    out
}

/// No a < b < c < d with a, c in one block and b, d in another.
fn crossing_free(owner: &[usize]) -> bool {
    let n = owner.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if owner[a] == owner[c] && owner[b] == owner[d] && owner[a] != owner[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn block_sizes(owner: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0; owner.len()];
    for &b in owner {
        sizes[b] += 1;
    }
    sizes.retain(|&s| s > 0);
    sizes
}

fn normalize(mut blocks: Blocks) -> Blocks {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

fn to_blocks(owner: &[usize], label: impl Fn(usize) -> i64) -> Blocks {
    let mut blocks: Blocks = vec![Vec::new(); owner.len()];
    for (p, &b) in owner.iter().enumerate() {
        blocks[b].push(label(p));
    }
    blocks.retain(|b| !b.is_empty());
    normalize(blocks)
}

fn enumerated(spec: &FamilySpec) -> BTreeSet<Blocks> {
    enumerate(spec).unwrap().map(|p| normalize(p.blocks_i64())).collect()
}

/// Signed label of clockwise position `p` among `1..h, -1..-h`.
fn signed(p: usize, h: usize) -> i64 {
    if p < h {
        p as i64 + 1
    } else {
        -((p - h) as i64 + 1)
    }
}

/// The partition is closed under negation.
fn symmetric(owner: &[usize], h: usize) -> bool {
    let mirror = |p: usize| (p + h) % (2 * h);
    (0..2 * h).all(|p| (0..2 * h).all(|q| (owner[p] == owner[q]) == (owner[mirror(p)] == owner[mirror(q)])))
}

fn is_zero_block(owner: &[usize], h: usize, b: usize) -> bool {
    (0..2 * h).any(|p| owner[p] == b && owner[(p + h) % (2 * h)] == b)
}

#[test]
fn type_a_families_match_brute_force() {
    for size in 1..=9 {
        for k in 1..=size {
            if size % k != 0 {
                continue;
            }
            let n = size / k;
            let all = set_partitions(size);
            let nc = all.iter().filter(|o| crossing_free(o));
            let div: BTreeSet<Blocks> = nc
                .clone()
                .filter(|o| block_sizes(o).iter().all(|s| s % k == 0))
                .map(|o| to_blocks(o, |p| p as i64 + 1))
                .collect();
            let spec = if k == 1 {
                FamilySpec::nc(n)
            } else {
                FamilySpec::divisible(n, k)
            };
            assert_eq!(enumerated(&spec), div, "NC^{k}({n})");
            if k > 1 {
                let eq: BTreeSet<Blocks> = nc
                    .filter(|o| block_sizes(o).iter().all(|&s| s == k))
                    .map(|o| to_blocks(o, |p| p as i64 + 1))
                    .collect();
                assert_eq!(enumerated(&FamilySpec::equal(n, k)), eq, "NC_{k}({n})");
            }
        }
    }
}

#[test]
fn type_b_families_match_brute_force() {
    for h in 1..=5 {
        let candidates: Vec<Vec<usize>> = set_partitions(2 * h)
            .into_iter()
            .filter(|o| symmetric(o, h) && crossing_free(o))
            .collect();
        for k in (1..=h).filter(|k| h % k == 0) {
            // zero-block half-size and pair sizes divisible by k
            let expected: BTreeSet<Blocks> = candidates
                .iter()
                .filter(|o| {
                    (0..2 * h).all(|p| {
                        let size = o.iter().filter(|&&b| b == o[p]).count();
                        let size = if is_zero_block(o, h, o[p]) { size / 2 } else { size };
                        size % k == 0
                    })
                })
                .map(|o| to_blocks(o, |p| signed(p, h)))
                .collect();
            assert_eq!(
                enumerated(&FamilySpec::type_b(h / k, k)),
                expected,
                "B n={} k={k}",
                h / k
            );
        }
    }
}

/// Type D with `k = 1`: `±1..±(n-1)` on a circle, `±n` both at the centre.
///
/// Blocks are convex hulls. A zero-block must hold the centre and at least
/// one outer pair; otherwise the blocks of `n` and `-n` meet only at the
/// centre, so the outer part of either lies in an open half-plane, and no
/// other block may reach around the pair of sectors.
fn center_vertex_ok(owner: &[usize], n: usize) -> bool {
    let h = n;
    let outer: Vec<usize> = (0..2 * h).filter(|&p| p != h - 1 && p != 2 * h - 1).collect();
    let (plus_n, minus_n) = (h - 1, 2 * h - 1);
    let zero: Vec<usize> = {
        let mut z: Vec<usize> = (0..2 * h)
            .map(|p| owner[p])
            .filter(|&b| is_zero_block(owner, h, b))
            .collect();
        z.sort_unstable();
        z.dedup();
        z
    };
    if zero.len() > 1 {
        return false;
    }
    if let Some(&z) = zero.first() {
        let outer_in_zero = outer.iter().filter(|&&p| owner[p] == z).count();
        if owner[plus_n] != z || outer_in_zero < 2 {
            return false;
        }
    }
    let restricted: Vec<usize> = outer.iter().map(|&p| owner[p]).collect();
    if !crossing_free(&restricted) {
        return false;
    }
    if zero.is_empty() {
        let ring = outer.len();
        let o: Vec<usize> = (0..ring).filter(|&i| restricted[i] == owner[plus_n]).collect();
        // n-1 consecutive ring points span less than a half-turn
        let fits = (0..ring).any(|s| o.iter().all(|&i| (i + ring - s) % ring < n - 1));
        if !fits {
            return false;
        }
        // the two sectors form one barrier through the centre
        let merged: Vec<usize> = restricted
            .iter()
            .map(|&b| if b == owner[minus_n] { owner[plus_n] } else { b })
            .collect();
        if !crossing_free(&merged) {
            return false;
        }
    }
    true
}

#[test]
fn type_d_matches_center_vertex_model() {
    for n in 2..=5 {
        let expected: BTreeSet<Blocks> = set_partitions(2 * n)
            .into_iter()
            .filter(|o| symmetric(o, n) && center_vertex_ok(o, n))
            .map(|o| to_blocks(&o, |p| signed(p, n)))
            .collect();
        let got = enumerated(&FamilySpec::type_d(n, 1, None));
        assert_eq!(got, expected, "D n={n}");
    }
}

/// The coarsest partition of the points interleaved between `p`'s points
/// (point `i'` right after `i`) that does not cross `p`.
fn kreweras_by_search(p: &ClassicalPartition) -> Blocks {
    let n = p.size();
    let owner = p.owner();
    let compatible: Vec<Vec<usize>> = set_partitions(n)
        .into_iter()
        .filter(|s| {
            let mut joint = vec![0; 2 * n];
            for i in 0..n {
                joint[2 * i] = owner[i];
                joint[2 * i + 1] = n + s[i];
            }
            crossing_free(&joint)
        })
        .collect();
    let fewest = compatible.iter().map(|s| block_sizes(s).len()).min().unwrap();
    let best: Vec<&Vec<usize>> = compatible.iter().filter(|s| block_sizes(s).len() == fewest).collect();
    assert_eq!(best.len(), 1, "maximum is unique");
    // every compatible partition refines the maximum
    let top = best[0];
    for s in &compatible {
        for i in 0..n {
            for j in 0..n {
                assert!(s[i] != s[j] || top[i] == top[j]);
            }
        }
    }
    to_blocks(top, |i| i as i64 + 1)
}

#[test]
fn kreweras_is_the_maximal_compatible_partition() {
    for n in 1..=7 {
        for p in enumerate(&FamilySpec::nc(n)).unwrap() {
            let AnyPartition::A(p) = p else { unreachable!() };
            let kr = kreweras(&p).unwrap();
            assert_eq!(
                normalize(AnyPartition::A(kr).blocks_i64()),
                kreweras_by_search(&p),
                "{p}"
            );
        }
    }
}

#[test]
fn kreweras_example_with_interleaved_points() {
    let p = ClassicalPartition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
    assert_eq!(
        kreweras(&p).unwrap(),
        ClassicalPartition::new(3, vec![vec![1], vec![2, 3]]).unwrap()
    );
}

#[test]
fn sampler_is_uniform() {
    // 42 members, 1000 expected draws each; 0.999 quantile of chi-square with 41 df
    const CRITICAL: f64 = 74.74;
    let sampler = Sampler::new(FamilySpec::nc(5)).unwrap();
    let cells = sampler.len();
    assert_eq!(cells, 42);
    let draws = 1000 * cells;
    let mut counts = vec![0usize; cells];
    for r in sampler.sample_ranks(20_240_601, draws) {
        counts[r] += 1;
    }
    let expected = (draws / cells) as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    assert!(chi2 < CRITICAL, "chi-square {chi2}");
}
