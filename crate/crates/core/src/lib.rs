//! Non-crossing partitions of types A, B and D: enumeration, block-size
//! censuses, closed-form counts, bijections and uniform sampling.

pub mod annulus;
pub mod bijection;
pub mod census;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod formulas;
pub mod noncrossing;
pub mod partition;
pub mod sampler;
pub mod verify;

pub use error::{Error, Result};
pub use family::{DSubfamily, Family, FamilySpec, Mode};
pub use partition::{AnnulusPartition, AnyPartition, BlockSizeVector, ClassicalPartition, SignedPartition};
