//! Computational toolkit for finite p-groups, their modular group algebras,
//! and isomorphism testing driven by small-group-algebra invariants.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: exact dense linear algebra over F_p.
//! - [`pcgroup`]: polycyclic presentations of finite p-groups, collection,
//!   subgroup machinery, characteristic series, quotients.
//! - [`grpalg`]: the group algebra F_pG, its augmentation ideals, quotient
//!   algebras, and unit-group computations.
//! - [`mip`]: invariants of FG that constrain the isomorphism type of G,
//!   presentation recovery from a small quotient algebra, and the two
//!   recognition theorems built on top.
//! - [`catalog`]: built-in example groups with frozen expected facts, plus
//!   JSON import/export of presentations.
//! - [`suites`]: end-to-end verification scenarios shared by the test suite
//!   and the command line `selftest`.

pub mod catalog;
pub mod error;
pub mod linalg;
pub mod grpalg;
pub mod mip;
pub mod pcgroup;
pub mod suites;

pub use error::{Error, Result};
