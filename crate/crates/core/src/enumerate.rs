//! Streaming enumeration of every family by depth-first search over positions.
//!
//! The search always extends the block of the smallest uncovered position, so
//! members come out in canonical lexicographic order without duplicates. For
//! type A, a block may only jump over positions that are still uncovered, which
//! is exactly the non-crossing condition; symmetric families place each element
//! together with its mirror and filter completed candidates.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::annulus::is_type_d;
use crate::error::{Error, Result};
use crate::family::{DSubfamily, Family, FamilySpec, Mode};
use crate::noncrossing::owner_is_noncrossing;
use crate::partition::{AnnulusPartition, AnyPartition, ClassicalPartition, SignedPartition};

pub const DEFAULT_MAX_POINTS: usize = 16;

const FREE: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
enum Applied {
    Closed { started: bool },
    Extended,
    Converted { mirror_len: usize },
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    cur: usize,
    mirror: Option<usize>,
    /// Next candidate position; `None` until closing has been tried.
    next: Option<usize>,
    /// A zero-block that was just formed can only be closed.
    frozen: bool,
    applied: Option<Applied>,
}

/// Iterator over the members of a family, in canonical order.
pub struct Members {
    spec: FamilySpec,
    points: usize,
    /// Mirror offset for the symmetric families.
    half: Option<usize>,
    k: usize,
    owner: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    closed: Vec<bool>,
    zero: Option<usize>,
    frames: Vec<Frame>,
}

impl Members {
    fn new(spec: FamilySpec) -> Self {
        let points = spec.points();
        let half = (spec.family != Family::A).then_some(points / 2);
        let mut it = Self {
            spec,
            points,
            half,
            k: spec.k,
            owner: vec![FREE; points],
            blocks: Vec::new(),
            closed: Vec::new(),
            zero: None,
            frames: Vec::new(),
        };
        let (cur, mirror) = it.start_block(0);
        it.frames.push(Frame {
            cur,
            mirror,
            next: None,
            frozen: false,
            applied: None,
        });
        it
    }

    fn mirror(&self, x: usize) -> usize {
        let h = self.half.expect("symmetric family");
        (x + h) % (2 * h)
    }

    fn start_block(&mut self, a: usize) -> (usize, Option<usize>) {
        let id = self.blocks.len();
        self.blocks.push(vec![a]);
        self.closed.push(false);
        self.owner[a] = id;
        if self.half.is_some() {
            let m = self.mirror(a);
            self.blocks.push(vec![m]);
            self.closed.push(false);
            self.owner[m] = id + 1;
            (id, Some(id + 1))
        } else {
            (id, None)
        }
    }

    fn drop_block(&mut self) {
        let b = self.blocks.pop().expect("block to drop");
        self.closed.pop();
        for x in b {
            self.owner[x] = FREE;
        }
    }

    /// Gaps between consecutive block elements must hold whole blocks, hence a
    /// multiple of `k` points. Sound for A and B; type D is left to the leaf test.
    fn gap_pruning(&self) -> bool {
        self.spec.family != Family::D
    }

    fn can_close(&self, cur: usize) -> bool {
        let len = self.blocks[cur].len();
        if self.zero == Some(cur) {
            return match self.spec.family {
                Family::D => len.is_multiple_of(self.k),
                _ => (len / 2).is_multiple_of(self.k),
            };
        }
        match self.spec.mode {
            Mode::Equal => len == self.k,
            _ => len.is_multiple_of(self.k),
        }
    }

    /// Smallest candidate `x >= from` that may join the open block `cur`.
    fn next_candidate(&self, f: &Frame, from: usize) -> Option<usize> {
        if f.frozen || (self.spec.mode == Mode::Equal && self.blocks[f.cur].len() >= self.k) {
            return None;
        }
        let first = self.blocks[f.cur][0];
        let last = *self.blocks[f.cur].last().expect("nonempty");
        let mirror_of_first = self.half.map(|_| self.mirror(first));
        let prune = self.gap_pruning();
        // mirror blocks are placed out of order, so only type A may stop at a closed block
        let stop_at_closed = self.spec.family == Family::A;
        for x in from..self.points {
            if stop_at_closed && x > last + 1 {
                let skipped = x - 1;
                if self.owner[skipped] != FREE && self.closed[self.owner[skipped]] {
                    return None;
                }
            }
            if Some(x) == mirror_of_first {
                if self.zero.is_none() && (!prune || (x - last - 1).is_multiple_of(self.k)) {
                    return Some(x);
                }
                continue;
            }
            if self.owner[x] != FREE || (self.half.is_some() && self.owner[self.mirror(x)] != FREE) {
                continue;
            }
            if prune && !(x - last - 1).is_multiple_of(self.k) {
                continue;
            }
            return Some(x);
        }
        None
    }

    fn undo(&mut self, f: Frame, applied: Applied) {
        match applied {
            Applied::Closed { started } => {
                if started {
                    if self.half.is_some() {
                        self.drop_block();
                    }
                    self.drop_block();
                }
                self.closed[f.cur] = false;
                if let Some(m) = f.mirror {
                    self.closed[m] = false;
                }
            }
            Applied::Extended => {
                let x = self.blocks[f.cur].pop().expect("extended");
                self.owner[x] = FREE;
                if let Some(m) = f.mirror {
                    let y = self.blocks[m].pop().expect("extended");
                    self.owner[y] = FREE;
                }
            }
            Applied::Converted { mirror_len } => {
                let m = f.mirror.expect("symmetric");
                let at = self.blocks[f.cur].len() - mirror_len - 1;
                let mut tail = self.blocks[f.cur].split_off(at);
                tail.sort_unstable();
                for &y in &tail {
                    self.owner[y] = m;
                }
                self.blocks[m] = tail;
                self.zero = None;
            }
        }
    }

    fn leaf(&self) -> Option<AnyPartition> {
        match self.spec.family {
            Family::A => Some(AnyPartition::A(ClassicalPartition::from_owner(&self.owner))),
            Family::B => owner_is_noncrossing(&self.owner)
                .then(|| AnyPartition::B(SignedPartition::from_owner_unchecked(self.points / 2, &self.owner))),
            Family::D => {
                match self.spec.subfamily {
                    Some(DSubfamily::D1) if self.zero.is_none() => return None,
                    Some(DSubfamily::D2) if self.zero.is_some() => return None,
                    _ => {}
                }
                let base = SignedPartition::from_owner_unchecked(self.points / 2, &self.owner);
                let p = AnnulusPartition::new(self.spec.n, self.k, base).expect("n >= 2");
                is_type_d(&p).then_some(AnyPartition::D(p))
            }
        }
    }
}

impl Iterator for Members {
    type Item = AnyPartition;

    fn next(&mut self) -> Option<AnyPartition> {
        loop {
            let top = self.frames.len().checked_sub(1)?;
            let mut f = self.frames[top];
            if let Some(applied) = f.applied.take() {
                self.undo(f, applied);
                self.frames[top].applied = None;
            }
            let from = match f.next {
                None => {
                    let first = *self.blocks[f.cur].last().expect("nonempty") + 1;
                    self.frames[top].next = Some(first);
                    if self.can_close(f.cur) {
                        self.closed[f.cur] = true;
                        if let Some(m) = f.mirror {
                            self.closed[m] = true;
                        }
                        match self.owner.iter().position(|&o| o == FREE) {
                            None => {
                                self.frames[top].applied = Some(Applied::Closed { started: false });
                                if let Some(p) = self.leaf() {
                                    return Some(p);
                                }
                            }
                            Some(a) => {
                                self.frames[top].applied = Some(Applied::Closed { started: true });
                                let (cur, mirror) = self.start_block(a);
                                self.frames.push(Frame {
                                    cur,
                                    mirror,
                                    next: None,
                                    frozen: false,
                                    applied: None,
                                });
                            }
                        }
                    }
                    continue;
                }
                Some(from) => from,
            };
            match self.next_candidate(&f, from) {
                None => {
                    self.frames.pop();
                }
                Some(x) => {
                    self.frames[top].next = Some(x + 1);
                    let first = self.blocks[f.cur][0];
                    if self.half.is_some() && x == self.mirror(first) {
                        let m = f.mirror.expect("symmetric");
                        let moved = std::mem::take(&mut self.blocks[m]);
                        for &y in &moved {
                            self.owner[y] = f.cur;
                        }
                        let mirror_len = moved.len() - 1;
                        // keep the mirror of `first` last so undo can find the split point
                        let (head, rest) = moved.split_first().expect("nonempty");
                        self.blocks[f.cur].extend(rest.iter().copied());
                        self.blocks[f.cur].push(*head);
                        self.zero = Some(f.cur);
                        self.frames[top].applied = Some(Applied::Converted { mirror_len });
                        self.frames.push(Frame {
                            frozen: true,
                            next: None,
                            applied: None,
                            ..f
                        });
                    } else {
                        self.blocks[f.cur].push(x);
                        self.owner[x] = f.cur;
                        if let Some(m) = f.mirror {
                            let y = self.mirror(x);
                            self.blocks[m].push(y);
                            self.owner[y] = m;
                        }
                        self.frames[top].applied = Some(Applied::Extended);
                        self.frames.push(Frame {
                            next: None,
                            applied: None,
                            ..f
                        });
                    }
                }
            }
        }
    }
}

fn check_size(spec: &FamilySpec, max_points: usize) -> Result<()> {
    let points = spec.points();
    if points > max_points {
        return Err(Error::GroundTooLarge {
            points,
            limit: max_points,
        });
    }
    Ok(())
}

/// Members of `spec`, refusing ground sets above [`DEFAULT_MAX_POINTS`].
pub fn enumerate(spec: &FamilySpec) -> Result<Members> {
    enumerate_with_limit(spec, DEFAULT_MAX_POINTS)
}

pub fn enumerate_with_limit(spec: &FamilySpec, max_points: usize) -> Result<Members> {
    check_size(spec, max_points)?;
    Ok(Members::new(*spec))
}

/// Family size by streaming enumeration.
pub fn count_by_enumeration(spec: &FamilySpec) -> Result<BigUint> {
    count_with_limit(spec, DEFAULT_MAX_POINTS)
}

pub fn count_with_limit(spec: &FamilySpec, max_points: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    let one = BigUint::one();
    for _ in enumerate_with_limit(spec, max_points)? {
        total += &one;
    }
    Ok(total)
}
