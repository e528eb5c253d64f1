//! Fuss noncrossing parking spaces `Park^NC_W(k)` for the finite reflection
//! groups of types A, B/C, D and I2(m), with the companion objects they are
//! compared against: root-of-unity loci, classical Fuss parking functions,
//! geometric multichains of filters and the finite torus `Q/(kh+1)Q`.
//!
//! Everything is exact. Roots of unity are exponents, polynomials have
//! big-integer coefficients, and every check is an integer equality.

pub mod error;
pub mod locus;
pub mod ncw;
pub mod nonnesting;
pub mod parkspace;
pub mod qcatalan;
pub mod reflgroup;
pub mod setpart;

pub use error::{Error, Result};
pub use reflgroup::{Dihedral, DihedralFlat, Family, Flat, Group, GroupElem, GroupSpec, SignedPerm};
pub use setpart::{Ground, LabeledPartition, SetPartition};

/// Default enumeration cap on group or set sizes.
pub const DEFAULT_CAP: u64 = 1_000_000;
