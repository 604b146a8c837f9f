//! Closed forms: family sizes, type counts, block totals, expectations, and
//! brute-force evaluation of the summation identities behind them.
//!
//! Block sizes passed as `t` and `s` are in units of `k` (a block of size `tk`),
//! except in [`type_count`], which takes the raw block type of a member.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::{DSubfamily, Family, FamilySpec, Mode};
use crate::partition::BlockSizeVector;

pub type BigCount = BigUint;

/// `C(a, b)`, zero outside `0 <= b <= a`.
///
/// The single exception is `C(-1, -1) = 1`: the number of ways to split 0 into
/// 0 positive parts. The summation formulas rely on it at their boundary cells
/// (one block, or a single pair taking everything).
pub fn binomial(a: i64, b: i64) -> BigCount {
    if a == -1 && b == -1 {
        return BigUint::one();
    }
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `n!`, or `None` for negative `n`.
pub fn factorial(n: i64) -> Option<BigCount> {
    (n >= 0).then(|| (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i))
}

fn exact_div(num: BigCount, den: &BigCount, what: &str) -> Result<BigCount> {
    if den.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: division by zero")));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: remainder {r}")));
    }
    Ok(q)
}

fn int(x: usize) -> i64 {
    x as i64
}

/// Number of members of the family.
pub fn family_count(spec: &FamilySpec) -> Result<BigCount> {
    let (n, k) = (int(spec.n), int(spec.k));
    match (spec.family, spec.mode) {
        (Family::A, Mode::All | Mode::Divisible) => exact_div(
            binomial((k + 1) * n, n),
            &BigUint::from((k * n + 1) as u64),
            "Fuss-Catalan",
        ),
        (Family::A, Mode::Equal) => exact_div(
            binomial(k * n, n),
            &BigUint::from(((k - 1) * n + 1) as u64),
            "k-equal count",
        ),
        (Family::B, _) => Ok(binomial((k + 1) * n, n)),
        (Family::D, _) => {
            let all = binomial((k + 1) * (n - 1), n) + binomial((k + 1) * (n - 1) + 1, n);
            let d1 = d1_count(spec.n, spec.k);
            Ok(match spec.subfamily {
                None => all,
                Some(DSubfamily::D1) => d1,
                Some(DSubfamily::D2) => all - d1,
            })
        }
    }
}

/// Members of `NC^k_D(n)` with a zero-block: the sum of the zero-block counts.
fn d1_count(n: usize, k: usize) -> BigCount {
    (2..=n).map(|t| p0d(n, k, t)).sum()
}

/// Number of members whose block type is exactly `bt` (raw sizes).
pub fn type_count(spec: &FamilySpec, bt: &BlockSizeVector) -> Result<BigCount> {
    let expected = spec.half_size();
    if bt.mass() != expected {
        return Err(Error::MassMismatch(format!(
            "type has mass {}, family needs {expected}",
            bt.mass()
        )));
    }
    let k = spec.k;
    let divisible = |x: usize| match spec.mode {
        Mode::Equal => x == k,
        _ => x.is_multiple_of(k),
    };
    if !bt.sizes().all(|(t, _)| divisible(t)) || !bt.s.is_multiple_of(k) {
        return Ok(BigUint::zero());
    }
    let m = int(bt.m());
    let p_r = bt.p_r();
    let ratio = |num: Option<BigCount>, den: Option<BigCount>, what: &str| -> Result<BigCount> {
        match (num, den) {
            (Some(num), Some(den)) => exact_div(num, &(den * &p_r), what),
            _ => Ok(BigUint::zero()),
        }
    };
    match spec.family {
        Family::A => {
            if bt.s != 0 {
                return Ok(BigUint::zero());
            }
            let total = int(expected);
            ratio(factorial(total), factorial(total - m + 1), "type A")
        }
        Family::B => {
            let h = int(expected);
            ratio(factorial(h), factorial(h - m), "type B")
        }
        Family::D => {
            // unit sizes: divide every pair size and the zero-block by k
            let units = BlockSizeVector::new((1..=spec.n).map(|i| bt.count(i * k)).collect(), bt.s / k);
            let big_k = int(k * (spec.n - 1));
            let p_r = units.p_r();
            let term = |num: Option<BigCount>, den: Option<BigCount>| -> Result<BigCount> {
                match (num, den) {
                    (Some(num), Some(den)) => exact_div(num, &(den * &p_r), "type D"),
                    _ => Ok(BigUint::zero()),
                }
            };
            let count = match units.s {
                0 => {
                    let first = term(factorial(big_k).map(|f| f * 2u32), factorial(big_k - m))?;
                    let r1 = units.count(1);
                    let second = term(factorial(big_k).map(|f| f * r1), factorial(big_k - m + 1))?;
                    first + second
                }
                1 => BigUint::zero(),
                _ => term(factorial(big_k), factorial(big_k - m))?,
            };
            Ok(match (spec.subfamily, units.s) {
                (Some(DSubfamily::D1), 0) | (Some(DSubfamily::D2), 1..) => BigUint::zero(),
                _ => count,
            })
        }
    }
}

fn check_t(spec: &FamilySpec, t: usize) -> Result<()> {
    if t == 0 || t > spec.n {
        return Err(Error::OutOfRange(format!("t={t} outside 1..={}", spec.n)));
    }
    Ok(())
}

/// Total number of blocks (A) or pairs (B: non-zero only; D: zero-blocks
/// included) of size `tk`, summed over the family.
pub fn block_total_formula(spec: &FamilySpec, t: usize) -> Result<BigCount> {
    check_t(spec, t)?;
    let (n, k, ti) = (int(spec.n), int(spec.k), int(t));
    match spec.family {
        Family::A => Ok(binomial(n * (k + 1) - ti - 1, n * k - 1)),
        Family::B => Ok(binomial(n * (k + 1) - ti - 1, n * k - 1) * (spec.n * spec.k)),
        Family::D => match spec.subfamily {
            None => {
                let big_k = k * (n - 1);
                Ok(
                    binomial((k + 1) * (n - 1) - ti, big_k - 1) * BigUint::from((big_k + 1) as u64)
                        + binomial((k + 1) * (n - 1) - ti - 1, big_k - 2) * BigUint::from(big_k as u64),
                )
            }
            Some(DSubfamily::D1) => {
                let zero = if t >= 2 {
                    p0d(spec.n, spec.k, t)
                } else {
                    BigUint::zero()
                };
                Ok(d_subfamily_block_total(spec.n, spec.k, t, DSubfamily::D1)? + zero)
            }
            Some(DSubfamily::D2) => d_subfamily_block_total(spec.n, spec.k, t, DSubfamily::D2),
        },
    }
}

/// Blocks (A) or non-zero pairs (B, D1) of size `tk` over the members with
/// exactly `m` blocks or non-zero pairs and zero-block half-size `sk`.
pub fn block_total_given_m_formula(spec: &FamilySpec, t: usize, m: usize, s: usize) -> Result<BigCount> {
    check_t(spec, t)?;
    let (n, k, ti, mi, si) = (int(spec.n), int(spec.k), int(t), int(m), int(s));
    match (spec.family, spec.subfamily) {
        (Family::A, _) => Ok(binomial(n * k, mi - 1) * binomial(n - ti - 1, mi - 2)),
        (Family::B, _) => {
            Ok(binomial(n * k - 1, mi - 1) * binomial(n - ti - si - 1, mi - 2) * BigUint::from((n * k) as u64))
        }
        (Family::D, Some(DSubfamily::D1)) => {
            if s < 2 {
                return Err(Error::OutOfRange("a type D zero-block has s >= 2".into()));
            }
            let big_k = k * (n - 1);
            Ok(binomial(big_k - 1, mi - 1) * binomial(n - ti - si - 1, mi - 2) * BigUint::from(big_k as u64))
        }
        (Family::D, _) => Err(Error::OutOfRange("the m-refined count is stated for D1 only".into())),
    }
}

fn p0d(n: usize, k: usize, t: usize) -> BigCount {
    let (n, k, t) = (int(n), int(k), int(t));
    binomial((k + 1) * (n - 1) - t, k * (n - 1) - 1)
}

/// Members whose zero-block has `2tk` elements.
pub fn zero_block_total_formula(spec: &FamilySpec, t: usize) -> Result<BigCount> {
    check_t(spec, t)?;
    let (n, k, ti) = (int(spec.n), int(spec.k), int(t));
    match spec.family {
        Family::A => Err(Error::InvalidSpec("type A has no zero-blocks".into())),
        Family::B => Ok(binomial(n * (k + 1) - ti - 1, n * k - 1)),
        Family::D if spec.subfamily == Some(DSubfamily::D2) => Ok(BigUint::zero()),
        Family::D => {
            if t < 2 {
                return Err(Error::OutOfRange("a type D zero-block has at least 4 elements".into()));
            }
            Ok(p0d(spec.n, spec.k, t))
        }
    }
}

/// Non-zero pairs of size `tk` summed over D1 or D2.
pub fn d_subfamily_block_total(n: usize, k: usize, t: usize, sub: DSubfamily) -> Result<BigCount> {
    if n < 2 || k == 0 || t == 0 || t > n {
        return Err(Error::OutOfRange(format!("n={n}, k={k}, t={t}")));
    }
    let (ni, ki, ti) = (int(n), int(k), int(t));
    let big_k = ki * (ni - 1);
    let outer = (ki + 1) * (ni - 1);
    let kn1 = BigUint::from(big_k as u64);
    Ok(match sub {
        DSubfamily::D1 => binomial(outer - ti - 2, big_k - 1) * kn1,
        DSubfamily::D2 if t > 1 => {
            (binomial(outer - ti - 2, big_k - 2) + binomial(outer - ti - 1, big_k - 2) * 2u32) * kn1
        }
        DSubfamily::D2 => {
            (binomial(outer - 3, big_k - 2) + binomial(outer - 2, big_k - 2) * 2u32) * kn1
                + binomial(outer - 1, big_k - 1)
        }
    })
}

/// Quantities about a uniform member of `NC^k(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Expected number of blocks.
    BlocksTotal,
    /// Expected number of blocks of size `tk`.
    BlocksOfSize(usize),
    /// Large-`n` approximation of the previous one.
    Asymptotic(usize),
    /// Number of blocks summed over the family.
    TotalBlockSum,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExpectationValue {
    /// Exact value, kept as the unreduced quotient it is derived from.
    Ratio {
        numerator: BigCount,
        denominator: BigCount,
    },
    Count(BigCount),
    Approx(f64),
}

impl ExpectationValue {
    pub fn ratio(&self) -> Option<BigRational> {
        match self {
            ExpectationValue::Ratio { numerator, denominator } => Some(BigRational::new(
                BigInt::from(numerator.clone()),
                BigInt::from(denominator.clone()),
            )),
            ExpectationValue::Count(c) => Some(BigRational::from_integer(BigInt::from(c.clone()))),
            ExpectationValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for ExpectationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectationValue::Ratio { numerator, denominator } => {
                write!(f, "{numerator}/{denominator} = {}", self.ratio().expect("exact"))
            }
            ExpectationValue::Count(c) => write!(f, "{c}"),
            ExpectationValue::Approx(x) => write!(f, "{x}"),
        }
    }
}

pub fn expectation(n: usize, k: usize, which: Expectation) -> Result<ExpectationValue> {
    if n == 0 || k == 0 {
        return Err(Error::OutOfRange(format!("n={n}, k={k}")));
    }
    let (ni, ki) = (int(n), int(k));
    let t_ok = |t: usize| {
        if t == 0 || t > n {
            Err(Error::OutOfRange(format!("t={t} outside 1..={n}")))
        } else {
            Ok(int(t))
        }
    };
    Ok(match which {
        Expectation::BlocksTotal => ExpectationValue::Ratio {
            numerator: BigUint::from((k * n + 1) as u64),
            denominator: BigUint::from((k + 1) as u64),
        },
        Expectation::BlocksOfSize(t) => {
            let t = t_ok(t)?;
            ExpectationValue::Ratio {
                numerator: binomial(ni * (ki + 1) - t - 1, ni * ki - 1) * (n * k + 1),
                denominator: binomial((ki + 1) * ni, ni),
            }
        }
        Expectation::Asymptotic(t) => {
            let t = t_ok(t)?;
            ExpectationValue::Approx((n * k) as f64 / ((k + 1) as f64).powi(t as i32 + 1))
        }
        Expectation::TotalBlockSum => ExpectationValue::Count(binomial(ni * (ki + 1) - 1, ni * ki)),
    })
}

/// Multiplicity vectors `r` (with `r[i-1]` parts equal to `i`) of the
/// partitions of `n` into exactly `m` parts.
pub fn partition_types(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, parts: usize, max: usize, r: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(r.clone());
            }
            return;
        }
        // parts of size at most `max`, each at least 1
        let hi = max.min(rest.saturating_sub(parts - 1));
        for size in (1..=hi).rev() {
            if size * parts < rest {
                break;
            }
            r[size - 1] += 1;
            rec(rest - size, parts - 1, size, r, out);
            r[size - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut r = vec![0; n];
    rec(n, m, n, &mut r, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `Σ m!/p_r = C(n-1, m-1)` over types of `n` with `m` parts.
    Lemma0 { n: usize, m: usize },
    /// `Σ (m-1)! r_t / p_r = C(n-t-1, m-2)` over the same types.
    Lemma1 { n: usize, m: usize, t: usize },
    /// `Σ_j C(y, j) C(x, s-j) = C(x+y, s)`.
    Chu { x: usize, y: usize, s: usize },
}

const MAX_IDENTITY_N: usize = 40;

/// Evaluates both sides of an identity; the left side by explicit summation.
pub fn identity_check(which: Identity) -> Result<(BigCount, BigCount)> {
    let too_large = |n: usize| {
        if n > MAX_IDENTITY_N {
            Err(Error::DomainTooLarge(format!("n={n} exceeds {MAX_IDENTITY_N}")))
        } else {
            Ok(())
        }
    };
    let multinomial = |top: usize, r: &[usize]| -> BigCount {
        let p: BigCount = r.iter().map(|&c| factorial(int(c)).expect("nonnegative")).product();
        factorial(int(top)).expect("nonnegative") / p
    };
    match which {
        Identity::Lemma0 { n, m } => {
            too_large(n)?;
            let lhs = partition_types(n, m).iter().map(|r| multinomial(m, r)).sum();
            Ok((lhs, binomial(int(n) - 1, int(m) - 1)))
        }
        Identity::Lemma1 { n, m, t } => {
            too_large(n)?;
            let mut lhs = BigUint::zero();
            if m >= 1 && t >= 1 && t <= n {
                for r in partition_types(n, m) {
                    let rt = r[t - 1];
                    if rt > 0 {
                        // (m-1)! r_t / p_r = (m-1)! / (p_r / r_t)
                        let mut reduced = r.clone();
                        reduced[t - 1] -= 1;
                        lhs += multinomial(m - 1, &reduced);
                    }
                }
            }
            Ok((lhs, binomial(int(n) - int(t) - 1, int(m) - 2)))
        }
        Identity::Chu { x, y, s } => {
            too_large(x + y)?;
            let (x, y, s) = (int(x), int(y), int(s));
            let lhs = (0..=s).map(|j| binomial(y, j) * binomial(x, s - j)).sum();
            Ok((lhs, binomial(x + y, s)))
        }
    }
}

/// Members of `NC^k(n)` with 1 and 2 in the same block.
pub fn first_two_together_count(n: usize, k: usize) -> Result<BigCount> {
    if n < 2 || k == 0 {
        return Err(Error::OutOfRange(format!("n={n}, k={k}")));
    }
    let (ni, ki) = (int(n), int(k));
    exact_div(
        binomial((ki + 1) * ni - 2, ni - 2) * k,
        &BigUint::from((n - 1) as u64),
        "first-two count",
    )
}

/// Lossy conversion for reporting ratios as decimals.
pub fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
