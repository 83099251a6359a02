//! Quivers with relations for special modules over Jordan algebras with
//! square-zero radical, together with the exact engines used to build and
//! check them.

#![allow(clippy::needless_range_loop)]

pub mod appendix;
pub mod catalog;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod par;
pub mod path_algebra;
pub mod quiver;
pub mod report;
pub mod tkk;
pub mod weights;

pub use error::{Error, Result};
