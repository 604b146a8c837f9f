//! Grid cross-checks of every closed form against exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bijection::{abs_map, glue, kreweras_decompose, split, GlueIndex};
use crate::census::{census_with_limit, CensusTable};
use crate::enumerate::enumerate_with_limit;
use crate::error::{Error, Result};
use crate::family::{DSubfamily, Family, FamilySpec};
use crate::formulas::{self, Identity};
use crate::noncrossing::{is_noncrossing, kreweras};
use crate::partition::{AnyPartition, BlockSizeVector, ClassicalPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    #[serde(serialize_with = "as_decimal")]
    pub formula_value: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub oracle_value: BigUint,
    pub status: Status,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl VerifyOutcome {
    fn new(check_id: &str, params: &[(&str, String)], formula_value: BigUint, oracle_value: BigUint) -> Self {
        let status = if formula_value == oracle_value {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            check_id: check_id.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            formula_value,
            oracle_value,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerifyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.check_id)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        write!(f, " formula={} oracle={}", self.formula_value, self.oracle_value)
    }
}

/// Suite names with the largest ground (in points) each checks by default.
pub const SUITES: &[(&str, usize)] = &[
    ("type-counts-A", 8),
    ("type-counts-B", 8),
    ("type-counts-D", 12),
    ("theorem1", 12),
    ("prop3k", 12),
    ("theorem2", 12),
    ("lemma3b", 12),
    ("theorem3", 12),
    ("p1d", 12),
    ("p0d", 12),
    ("p2d", 12),
    ("family-counts", 12),
    ("bijection-f", 12),
    ("fi-sum", 12),
    ("abs-fibers", 12),
    ("kreweras-rank", 12),
    ("identities", 24),
    ("first-two", 10),
];

/// Default bound of a suite, in points.
pub fn suite_bound(suite: &str) -> Result<usize> {
    SUITES
        .iter()
        .find(|(name, _)| *name == suite)
        .map(|&(_, b)| b)
        .ok_or_else(|| Error::UnknownSuite(suite.to_string()))
}

/// Runs one suite over every grid cell within `max_points` (the suite's own
/// bound when `None`). Larger bounds than the suite declares need `force`.
pub fn verify_grid(suite: &str, max_points: Option<usize>, force: bool) -> Result<Vec<VerifyOutcome>> {
    let declared = suite_bound(suite)?;
    let bound = match max_points {
        None => declared,
        Some(b) if b > declared && !force => {
            return Err(Error::OutOfRange(format!(
                "suite `{suite}` is bounded at {declared} points; pass --force to go to {b}"
            )))
        }
        Some(b) => b,
    };
    let mut out = Vec::new();
    match suite {
        "type-counts-A" => type_counts(&a_grid(bound), bound, &mut out)?,
        "type-counts-B" => type_counts(&b_grid(bound), bound, &mut out)?,
        "type-counts-D" => type_counts(&d_grid(bound, None), bound, &mut out)?,
        "theorem1" => block_totals_a(bound, &mut out)?,
        "prop3k" => refined_totals_a(bound, &mut out)?,
        "theorem2" => block_totals_b(bound, &mut out)?,
        "lemma3b" => refined_totals_b(bound, &mut out)?,
        "theorem3" => block_totals_d(bound, &mut out)?,
        "p1d" => d_sub(bound, DSubfamily::D1, &mut out)?,
        "p0d" => p0d(bound, &mut out)?,
        "p2d" => d_sub(bound, DSubfamily::D2, &mut out)?,
        "family-counts" => family_counts(bound, &mut out)?,
        "bijection-f" => bijection_f(bound, &mut out)?,
        "fi-sum" => fi_sum(bound, &mut out)?,
        "abs-fibers" => abs_fibers(bound, &mut out)?,
        "kreweras-rank" => kreweras_rank(bound, &mut out)?,
        "identities" => identities(bound, &mut out)?,
        "first-two" => first_two(bound, &mut out)?,
        _ => unreachable!("checked by suite_bound"),
    }
    Ok(out)
}

/// `(passed, failed)`.
pub fn summarize(outcomes: &[VerifyOutcome]) -> (usize, usize) {
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    (passed, outcomes.len() - passed)
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn p(pairs: &[(&'static str, usize)]) -> Vec<(&'static str, String)> {
    pairs.iter().map(|&(k, v)| (k, v.to_string())).collect()
}

fn family_params(spec: &FamilySpec) -> Vec<(&'static str, String)> {
    vec![
        ("family", spec.label().to_string()),
        ("n", spec.n.to_string()),
        ("k", spec.k.to_string()),
    ]
}

fn with(spec: &FamilySpec, extra: &[(&'static str, usize)]) -> Vec<(&'static str, String)> {
    let mut v = family_params(spec);
    v.extend(p(extra));
    v
}

/// `NC^k(n)` (`NC(n)` at `k = 1`) with `kn <= bound`.
fn a_grid(bound: usize) -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for k in 1..=bound {
        for n in 1..=bound / k {
            v.push(if k == 1 {
                FamilySpec::nc(n)
            } else {
                FamilySpec::divisible(n, k)
            });
        }
    }
    v
}

fn b_grid(bound: usize) -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for k in 1..=bound / 2 {
        for n in 1..=bound / (2 * k) {
            v.push(FamilySpec::type_b(n, k));
        }
    }
    v
}

fn d_grid(bound: usize, sub: Option<DSubfamily>) -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for k in 1..=bound / 4 {
        for n in 2..=bound / (2 * k) {
            v.push(FamilySpec::type_d(n, k, sub));
        }
    }
    v
}

fn table(spec: &FamilySpec, bound: usize) -> Result<CensusTable> {
    census_with_limit(spec, bound)
}

fn members(spec: &FamilySpec, bound: usize) -> Result<Vec<ClassicalPartition>> {
    Ok(enumerate_with_limit(spec, bound)?
        .map(|p| match p {
            AnyPartition::A(p) => p,
            _ => unreachable!("type A family"),
        })
        .collect())
}

/// Every block type a member of `spec` could have, in raw sizes.
fn candidate_types(spec: &FamilySpec) -> Vec<BlockSizeVector> {
    let half = spec.half_size();
    let zero_sizes: Vec<usize> = match spec.family {
        Family::A => vec![0],
        _ => (0..=half).collect(),
    };
    let mut out = Vec::new();
    for s in zero_sizes {
        let rest = half - s;
        for m in 0..=rest {
            for r in formulas::partition_types(rest, m) {
                let mut full = vec![0; half];
                full[..r.len()].copy_from_slice(&r);
                out.push(BlockSizeVector::new(full, s));
            }
        }
    }
    out
}

fn type_counts(grid: &[FamilySpec], bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in grid {
        let hist = table(spec, bound)?;
        for bt in candidate_types(spec) {
            let formula = formulas::type_count(spec, &bt)?;
            let oracle = hist.types().get(&bt).cloned().unwrap_or_default();
            let mut params = family_params(spec);
            let r: Vec<String> = bt.r.iter().map(usize::to_string).collect();
            params.push(("r", format!("({})", r.join(","))));
            params.push(("s", bt.s.to_string()));
            out.push(VerifyOutcome::new("type-count", &params, formula, oracle));
        }
    }
    Ok(())
}

fn block_totals_a(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in a_grid(bound) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            out.push(VerifyOutcome::new(
                "theorem1",
                &with(&spec, &[("t", t)]),
                formulas::block_total_formula(&spec, t)?,
                c.block_total(t, false),
            ));
        }
    }
    Ok(())
}

fn refined_totals_a(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in a_grid(bound) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            for m in 1..=spec.n {
                out.push(VerifyOutcome::new(
                    "prop3k",
                    &with(&spec, &[("t", t), ("m", m)]),
                    formulas::block_total_given_m_formula(&spec, t, m, 0)?,
                    c.block_total_given_m(t, m),
                ));
            }
        }
    }
    Ok(())
}

fn block_totals_b(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in b_grid(bound) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            out.push(VerifyOutcome::new(
                "theorem2-pairs",
                &with(&spec, &[("t", t)]),
                formulas::block_total_formula(&spec, t)?,
                c.block_total(t, false),
            ));
            out.push(VerifyOutcome::new(
                "theorem2-zero-blocks",
                &with(&spec, &[("t", t)]),
                formulas::zero_block_total_formula(&spec, t)?,
                c.zero_blocks_of_size(t),
            ));
        }
    }
    Ok(())
}

fn refined_totals_b(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in b_grid(bound) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            for m in 1..=spec.n {
                for s in 0..spec.n {
                    out.push(VerifyOutcome::new(
                        "lemma3b",
                        &with(&spec, &[("t", t), ("m", m), ("s", s)]),
                        formulas::block_total_given_m_formula(&spec, t, m, s)?,
                        c.block_total_given(t, m, s),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn block_totals_d(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in d_grid(bound, None) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            out.push(VerifyOutcome::new(
                "theorem3",
                &with(&spec, &[("t", t)]),
                formulas::block_total_formula(&spec, t)?,
                c.block_total(t, true),
            ));
        }
    }
    Ok(())
}

fn d_sub(bound: usize, sub: DSubfamily, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    let id = match sub {
        DSubfamily::D1 => "p1d",
        DSubfamily::D2 => "p2d",
    };
    for spec in d_grid(bound, Some(sub)) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            out.push(VerifyOutcome::new(
                id,
                &with(&spec, &[("t", t)]),
                formulas::d_subfamily_block_total(spec.n, spec.k, t, sub)?,
                c.block_total(t, false),
            ));
        }
        if sub == DSubfamily::D1 {
            // the m-refined count, summed over the zero-block size
            for t in 1..=spec.n {
                for m in 1..spec.n {
                    for s in 2..=spec.n {
                        out.push(VerifyOutcome::new(
                            "p1d-refined",
                            &with(&spec, &[("t", t), ("m", m), ("s", s)]),
                            formulas::block_total_given_m_formula(&spec, t, m, s)?,
                            c.block_total_given(t, m, s),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn p0d(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for spec in d_grid(bound, None) {
        let c = table(&spec, bound)?;
        for t in 1..=spec.n {
            // a zero-block needs the two inner labels and two outer ones
            let formula = if t == 1 {
                BigUint::default()
            } else {
                formulas::zero_block_total_formula(&spec, t)?
            };
            out.push(VerifyOutcome::new(
                "p0d",
                &with(&spec, &[("t", t)]),
                formula,
                c.zero_blocks_of_size(t),
            ));
        }
    }
    Ok(())
}

fn family_counts(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    let mut grid = a_grid(bound);
    for k in 2..=bound {
        for n in 1..=bound / k {
            grid.push(FamilySpec::equal(n, k));
        }
    }
    grid.extend(b_grid(bound));
    grid.extend(d_grid(bound, None));
    for spec in grid {
        let count = enumerate_with_limit(&spec, bound)?.count();
        let mut params = family_params(&spec);
        params.push(("mode", format!("{:?}", spec.mode).to_lowercase()));
        out.push(VerifyOutcome::new(
            "family-count",
            &params,
            formulas::family_count(&spec)?,
            big(count),
        ));
    }
    Ok(())
}

/// `(k, n)` with `n(k+1) <= bound`.
fn glue_grid(bound: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for k in 1..bound {
        for n in 1..=bound / (k + 1) {
            v.push((k, n));
        }
    }
    v
}

fn bijection_f(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for (k, n) in glue_grid(bound) {
        let equal = members(&FamilySpec::equal(n, k + 1), bound)?;
        let target = FamilySpec::divisible(n, k);
        let target_set: BTreeSet<ClassicalPartition> = members(&target, bound)?.into_iter().collect();
        for i in 0..=k {
            let idx = GlueIndex::new(k, i)?;
            let image: BTreeSet<ClassicalPartition> = equal.iter().map(|q| glue(q, idx)).collect::<Result<_>>()?;
            // distinct images inside NC^k(n): injective and, by size, onto
            let inside = image.intersection(&target_set).count();
            let oracle = if image.len() == equal.len() { inside } else { 0 };
            out.push(VerifyOutcome::new(
                "glue-bijective",
                &p(&[("n", n), ("k", k), ("i", i)]),
                big(target_set.len()),
                big(oracle),
            ));
        }
        let round_trips = equal
            .iter()
            .filter(|q| {
                GlueIndex::new(k, 0)
                    .and_then(|idx| glue(q, idx))
                    .and_then(|g| split(&g, k))
                    .is_ok_and(|back| back == **q)
            })
            .count();
        out.push(VerifyOutcome::new(
            "split-glue",
            &p(&[("n", n), ("k", k)]),
            big(equal.len()),
            big(round_trips),
        ));
        let reverse = target_set
            .iter()
            .filter(|q| {
                split(q, k)
                    .and_then(|s| glue(&s, GlueIndex::new(k, 0)?))
                    .is_ok_and(|back| back == **q)
            })
            .count();
        out.push(VerifyOutcome::new(
            "glue-split",
            &p(&[("n", n), ("k", k)]),
            big(target_set.len()),
            big(reverse),
        ));
    }
    Ok(())
}

fn fi_sum(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for (k, n) in glue_grid(bound) {
        let equal = members(&FamilySpec::equal(n, k + 1), bound)?;
        let mut holds = 0;
        for q in &equal {
            let mut sum = 0;
            for i in 0..=k {
                sum += glue(q, GlueIndex::new(k, i)?)?.num_blocks();
            }
            holds += usize::from(sum == k * n + 1);
        }
        out.push(VerifyOutcome::new(
            "fi-sum",
            &p(&[("n", n), ("k", k)]),
            big(equal.len()),
            big(holds),
        ));
    }
    Ok(())
}

fn abs_fibers(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for n in 1..=bound / 2 {
        let mut fibers: BTreeMap<ClassicalPartition, usize> = BTreeMap::new();
        for q in enumerate_with_limit(&FamilySpec::type_b(n, 1), bound)? {
            if let AnyPartition::B(q) = q {
                *fibers.entry(abs_map(&q)).or_default() += 1;
            }
        }
        let base = members(&FamilySpec::nc(n), bound)?;
        let good = base.iter().filter(|a| fibers.get(a) == Some(&(n + 1))).count();
        let stray = fibers.keys().filter(|a| !is_noncrossing(a)).count();
        out.push(VerifyOutcome::new(
            "abs-fibers",
            &p(&[("n", n)]),
            big(base.len()),
            big(good - stray.min(good)),
        ));
    }
    Ok(())
}

fn kreweras_rank(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for n in 1..=bound.min(10) {
        let all = members(&FamilySpec::nc(n), bound)?;
        let mut images = BTreeSet::new();
        let mut rank_ok = 0;
        for q in &all {
            let kr = kreweras(q)?;
            rank_ok += usize::from(q.num_blocks() + kr.num_blocks() == n + 1);
            images.insert(kr);
        }
        out.push(VerifyOutcome::new(
            "kreweras-rank",
            &p(&[("n", n)]),
            big(all.len()),
            big(rank_ok),
        ));
        out.push(VerifyOutcome::new(
            "kreweras-bijective",
            &p(&[("n", n)]),
            big(all.len()),
            big(images.len()),
        ));
    }
    for (k, n) in glue_grid(bound) {
        let equal = members(&FamilySpec::equal(n, k + 1), bound)?;
        let mut mass_ok = 0;
        let mut matches_glue = 0;
        for q in &equal {
            let parts = kreweras_decompose(q, k)?;
            mass_ok += usize::from(parts.iter().map(ClassicalPartition::num_blocks).sum::<usize>() == k * n + 1);
            let mut same = true;
            for (i, part) in parts.iter().enumerate() {
                same &= part.num_blocks() == glue(q, GlueIndex::new(k, i)?)?.num_blocks();
            }
            matches_glue += usize::from(same);
        }
        out.push(VerifyOutcome::new(
            "decompose-mass",
            &p(&[("n", n), ("k", k)]),
            big(equal.len()),
            big(mass_ok),
        ));
        out.push(VerifyOutcome::new(
            "decompose-glue",
            &p(&[("n", n), ("k", k)]),
            big(equal.len()),
            big(matches_glue),
        ));
    }
    Ok(())
}

fn identities(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    let n_max = (bound / 2).max(1);
    for n in 1..=n_max {
        for m in 1..=n {
            let (lhs, rhs) = formulas::identity_check(Identity::Lemma0 { n, m })?;
            out.push(VerifyOutcome::new("lemma0", &p(&[("n", n), ("m", m)]), rhs, lhs));
            for t in 1..=n {
                let (lhs, rhs) = formulas::identity_check(Identity::Lemma1 { n, m, t })?;
                out.push(VerifyOutcome::new(
                    "lemma1",
                    &p(&[("n", n), ("m", m), ("t", t)]),
                    rhs,
                    lhs,
                ));
            }
        }
    }
    for x in 0..=bound {
        for y in 0..=bound - x {
            for s in 0..=x + y {
                let (lhs, rhs) = formulas::identity_check(Identity::Chu { x, y, s })?;
                out.push(VerifyOutcome::new("chu", &p(&[("x", x), ("y", y), ("s", s)]), rhs, lhs));
            }
        }
    }
    Ok(())
}

fn first_two(bound: usize, out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for k in 1..=bound / 2 {
        for n in 2..=bound / k {
            let together = members(&FamilySpec::divisible(n, k), bound)?
                .iter()
                .filter(|q| q.same_block(1, 2))
                .count();
            out.push(VerifyOutcome::new(
                "first-two",
                &p(&[("n", n), ("k", k)]),
                formulas::first_two_together_count(n, k)?,
                big(together),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(
            verify_grid("nope", None, false),
            Err(Error::UnknownSuite("nope".into()))
        );
    }

    #[test]
    fn bound_needs_force() {
        assert!(matches!(
            verify_grid("first-two", Some(14), false),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn small_suites_pass() {
        for suite in ["theorem1", "theorem2", "theorem3", "p0d", "fi-sum", "first-two"] {
            let outcomes = verify_grid(suite, Some(6), false).unwrap();
            assert!(!outcomes.is_empty(), "{suite}");
            assert_eq!(
                summarize(&outcomes).1,
                0,
                "{suite}: {:?}",
                outcomes.iter().find(|o| !o.passed())
            );
        }
    }

    #[test]
    fn outcome_rendering() {
        let o = VerifyOutcome::new("theorem1", &p(&[("n", 3), ("t", 1)]), big(6), big(6));
        assert_eq!(o.to_string(), "PASS theorem1 n=3 t=1 formula=6 oracle=6");
    }
}
