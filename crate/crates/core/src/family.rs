//! Family descriptors shared by enumeration, census and formulas.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Every non-crossing partition; requires `k = 1`.
    All,
    /// Block (pair, zero-block half) sizes are multiples of `k`.
    Divisible,
    /// Every block has exactly `k` elements (type A only).
    Equal,
}

/// Type D split by presence (D1) or absence (D2) of a zero-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DSubfamily {
    D1,
    D2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub subfamily: Option<DSubfamily>,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, k: usize, mode: Mode, subfamily: Option<DSubfamily>) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidSpec(format!("n and k must be positive (n={n}, k={k})")));
        }
        if mode == Mode::All && k != 1 {
            return Err(Error::InvalidSpec("mode `all` requires k = 1".into()));
        }
        if mode == Mode::Equal && family != Family::A {
            return Err(Error::InvalidSpec("k-equal families exist for type A only".into()));
        }
        if family == Family::D && n < 2 {
            return Err(Error::InvalidSpec("type D needs n >= 2".into()));
        }
        if subfamily.is_some() && family != Family::D {
            return Err(Error::InvalidSpec("D1/D2 only apply to type D".into()));
        }
        Ok(Self {
            family,
            n,
            k,
            mode,
            subfamily,
        })
    }

    /// NC(n).
    pub fn nc(n: usize) -> Self {
        Self::new(Family::A, n, 1, Mode::All, None).expect("valid")
    }

    /// NC^k(n): k-divisible partitions of `[kn]`.
    pub fn divisible(n: usize, k: usize) -> Self {
        Self::new(Family::A, n, k, Mode::Divisible, None).expect("valid")
    }

    /// NC_k(n): k-equal partitions of `[kn]`.
    pub fn equal(n: usize, k: usize) -> Self {
        Self::new(Family::A, n, k, Mode::Equal, None).expect("valid")
    }

    /// NC^k_B(n).
    pub fn type_b(n: usize, k: usize) -> Self {
        Self::new(Family::B, n, k, Mode::Divisible, None).expect("valid")
    }

    /// NC^k_D(n), optionally restricted to D1 or D2.
    pub fn type_d(n: usize, k: usize, subfamily: Option<DSubfamily>) -> Self {
        Self::new(Family::D, n, k, Mode::Divisible, subfamily).expect("n >= 2")
    }

    /// Number of points on the circle (A) or of signed labels (B, D).
    pub fn points(&self) -> usize {
        match self.family {
            Family::A if self.mode == Mode::All => self.n,
            Family::A => self.k * self.n,
            Family::B | Family::D => 2 * self.k * self.n,
        }
    }

    /// `kn`: ground size for type A, half-size for types B and D.
    pub fn half_size(&self) -> usize {
        self.k * self.n
    }

    pub fn label(&self) -> &'static str {
        match (self.family, self.subfamily) {
            (Family::A, _) => "A",
            (Family::B, _) => "B",
            (Family::D, None) => "D",
            (Family::D, Some(DSubfamily::D1)) => "D1",
            (Family::D, Some(DSubfamily::D2)) => "D2",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            Mode::All => "all",
            Mode::Divisible => "divisible",
            Mode::Equal => "equal",
        };
        write!(f, "{}(n={}, k={}, {mode})", self.label(), self.n, self.k)
    }
}
