//! Non-crossing partitions on the `(2k(n-1), 2k)` annulus and the type D predicate.
//!
//! Points are indexed `0..P` clockwise on the outer circle (labels `1..K`, then
//! `-1..-K`, with `K = k(n-1)`) followed by `P..P+Q` counterclockwise on the
//! inner circle. A drawing of the blocks is encoded as a permutation whose
//! cycles run through each block: outer elements clockwise, then inner elements
//! counterclockwise. When some block meets both circles, a drawing without
//! intersections exists iff some such permutation `σ` has genus zero against the
//! boundary rotation `γ`, i.e. `#cycles(σ) + #cycles(σ⁻¹γ) = P + Q`.

use crate::noncrossing::owner_is_noncrossing;
use crate::partition::AnnulusPartition;

struct Layout {
    outer: usize,
    inner: usize,
    k: usize,
    /// Per block: (outer point indices ascending, inner point indices ascending).
    blocks: Vec<(Vec<usize>, Vec<usize>)>,
    /// Label magnitude of each point index.
    magnitude: Vec<usize>,
    zero_block: Option<usize>,
}

impl Layout {
    fn new(p: &AnnulusPartition) -> Self {
        let half_outer = p.outer_half();
        let k = p.k();
        let outer = 2 * half_outer;
        let inner = 2 * k;
        let mut magnitude = vec![0; outer + inner];
        let index = |label: i32| -> usize {
            let mag = label.unsigned_abs() as usize;
            if mag <= half_outer {
                if label > 0 {
                    mag - 1
                } else {
                    half_outer + mag - 1
                }
            } else {
                let j = mag - half_outer - 1;
                if label > 0 {
                    outer + j
                } else {
                    outer + k + j
                }
            }
        };
        let mut blocks = Vec::new();
        let mut zero_block = None;
        for (id, block) in p.base().blocks().iter().enumerate() {
            let mut o = Vec::new();
            let mut i = Vec::new();
            for &x in block {
                let idx = index(x);
                magnitude[idx] = x.unsigned_abs() as usize;
                if idx < outer {
                    o.push(idx);
                } else {
                    i.push(idx);
                }
            }
            o.sort_unstable();
            i.sort_unstable();
            if block.contains(&-block[0]) {
                zero_block = Some(id);
            }
            blocks.push((o, i));
        }
        Self {
            outer,
            inner,
            k,
            blocks,
            magnitude,
            zero_block,
        }
    }

    fn points(&self) -> usize {
        self.outer + self.inner
    }

    fn gamma(&self, x: usize) -> usize {
        if x < self.outer {
            (x + 1) % self.outer
        } else {
            self.outer + (x - self.outer + 1) % self.inner
        }
    }

    fn through_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| !self.blocks[b].0.is_empty() && !self.blocks[b].1.is_empty())
            .collect()
    }

    /// Consecutive magnitudes along a cyclic order step by `+1 mod k`.
    fn steps_by_one(&self, cycle: &[usize]) -> bool {
        let k = self.k;
        (0..cycle.len()).all(|i| {
            let a = self.magnitude[cycle[i]];
            let b = self.magnitude[cycle[(i + 1) % cycle.len()]];
            (b + k - (a + 1) % k).is_multiple_of(k)
        })
    }

    fn cycle_of(outer: &[usize], inner: &[usize], outer_start: usize, inner_start: usize) -> Vec<usize> {
        let mut cycle = Vec::with_capacity(outer.len() + inner.len());
        cycle.extend(outer[outer_start..].iter().chain(&outer[..outer_start]));
        cycle.extend(inner[inner_start..].iter().chain(&inner[..inner_start]));
        cycle
    }

    fn genus_zero(&self, cycles: &[Vec<usize>]) -> bool {
        let n = self.points();
        let mut sigma_inv = vec![0; n];
        for cycle in cycles {
            for i in 0..cycle.len() {
                sigma_inv[cycle[(i + 1) % cycle.len()]] = cycle[i];
            }
        }
        let mut seen = vec![false; n];
        let mut composite_cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            composite_cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = sigma_inv[self.gamma(x)];
            }
        }
        cycles.len() + composite_cycles == n
    }

    fn disc_noncrossing(&self) -> bool {
        let mut outer_owner = vec![0; self.outer];
        let mut inner_owner = vec![0; self.inner];
        for (id, (o, i)) in self.blocks.iter().enumerate() {
            for &x in o {
                outer_owner[x] = id;
            }
            for &x in i {
                inner_owner[x - self.outer] = id;
            }
        }
        owner_is_noncrossing(&outer_owner) && owner_is_noncrossing(&inner_owner)
    }

    /// Searches the cyclic alignments of every through-block for a genus-zero
    /// drawing, optionally also requiring the `+1 mod k` stepping rule.
    fn drawable(&self, require_steps: bool) -> bool {
        let through = self.through_blocks();
        if through.is_empty() {
            if !self.disc_noncrossing() {
                return false;
            }
            return !require_steps
                || self
                    .blocks
                    .iter()
                    .all(|(o, i)| self.steps_by_one(if o.is_empty() { i } else { o }));
        }
        let mut fixed = Vec::new();
        for (o, i) in &self.blocks {
            if o.is_empty() || i.is_empty() {
                let cycle = if o.is_empty() { i.clone() } else { o.clone() };
                if require_steps && !self.steps_by_one(&cycle) {
                    return false;
                }
                fixed.push(cycle);
            }
        }
        // per through-block, the alignments that pass the stepping rule
        let mut options: Vec<Vec<Vec<usize>>> = Vec::new();
        for &b in &through {
            let (o, i) = &self.blocks[b];
            let opts: Vec<Vec<usize>> = (0..o.len())
                .flat_map(|os| (0..i.len()).map(move |is| (os, is)))
                .map(|(os, is)| Self::cycle_of(o, i, os, is))
                .filter(|c| !require_steps || self.steps_by_one(c))
                .collect();
            if opts.is_empty() {
                return false;
            }
            options.push(opts);
        }
        let mut choice = vec![0; options.len()];
        loop {
            let mut cycles = fixed.clone();
            cycles.extend(choice.iter().zip(&options).map(|(&c, opts)| opts[c].clone()));
            if self.genus_zero(&cycles) {
                return true;
            }
            // odometer over alignment choices
            let mut slot = 0;
            loop {
                if slot == choice.len() {
                    return false;
                }
                choice[slot] += 1;
                if choice[slot] < options[slot].len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
        }
    }

    /// Blocks of a centrally symmetric circle partition that border its
    /// central face, each with the position that follows the bordering gap.
    ///
    /// `circle[x]` is `(block id, position of the previous element of that block
    /// in circle order)` for every position `x`.
    fn central_face(circle: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let p = circle.len();
        let half = p / 2;
        // faces are the cycles of pred ∘ (+1); gap j lies between positions j and j+1
        let mut face = vec![usize::MAX; p];
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for start in 0..p {
            if face[start] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start;
            while face[j] == usize::MAX {
                face[j] = faces.len();
                cyc.push(j);
                j = circle[(j + 1) % p].1;
            }
            faces.push(cyc);
        }
        faces
            .into_iter()
            .find(|f| f.contains(&((f[0] + half) % p)))
            .map(|f| f.into_iter().map(|j| (circle[(j + 1) % p].0, (j + 1) % p)).collect())
            .unwrap_or_default()
    }

    fn circle(&self, inner: bool) -> Vec<(usize, usize)> {
        let (size, offset) = if inner {
            (self.inner, self.outer)
        } else {
            (self.outer, 0)
        };
        let mut circle = vec![(0, 0); size];
        for (id, (o, i)) in self.blocks.iter().enumerate() {
            let pts = if inner { i } else { o };
            for (j, &x) in pts.iter().enumerate() {
                circle[x - offset] = (id, pts[(j + pts.len() - 1) % pts.len()] - offset);
            }
        }
        circle
    }

    /// Merging an inner block with a visible outer block opens both at the gap
    /// facing the other circle; the merged cycle must still step by one.
    fn merged_blocks_step(&self) -> bool {
        let outer = Self::central_face(&self.circle(false));
        let inner = Self::central_face(&self.circle(true));
        outer.iter().all(|&(vo, start_o)| {
            let o = &self.blocks[vo].0;
            let os = o.iter().position(|&x| x == start_o).expect("own element");
            inner.iter().all(|&(vi, start_i)| {
                let i = &self.blocks[vi].1;
                let is = i.iter().position(|&x| x == start_i + self.outer).expect("own element");
                self.steps_by_one(&Self::cycle_of(o, i, os, is))
            })
        })
    }
}

/// True iff the blocks can be drawn inside the annulus without intersections.
pub fn is_annular_noncrossing(p: &AnnulusPartition) -> bool {
    Layout::new(p).drawable(false)
}

/// Membership in the k-divisible type D family on the annulus.
pub fn is_type_d(p: &AnnulusPartition) -> bool {
    let layout = Layout::new(p);
    let base = p.base();
    // symmetry: every block's negation is a block
    let symmetric = base.blocks().iter().all(|b| {
        let mut m: Vec<i32> = b.iter().map(|&x| -x).collect();
        m.sort_unstable();
        base.blocks().iter().any(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c == m
        })
    });
    if !symmetric {
        return false;
    }
    if let Some(z) = layout.zero_block {
        let (o, i) = &layout.blocks[z];
        if i.len() != layout.inner || o.len() < 2 {
            return false;
        }
    }
    if !layout.drawable(true) {
        return false;
    }
    if layout.through_blocks().is_empty() {
        return layout.merged_blocks_step();
    }
    true
}
