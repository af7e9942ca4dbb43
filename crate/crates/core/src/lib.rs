//! Exact combinatorics behind Uhlenbeck flag spaces of the affine `sl_n`.
//!
//! * [`root_data`]: dimension vectors, segments, Kostant partitions, the Cartan pairing.
//! * [`quiver`]: nilpotent cyclic-quiver representations over `F_q` and subrepresentation counts.
//! * [`hall`]: Hall polynomials by interpolation, the generic and `q = 1` Hall algebras.
//! * [`ic`]: stalk polynomials on the defect strata, decomposition and dimension audits.
//! * [`adhm`]: ADHM quadruples over `Q`, the affine action and the spectral divisor map.
//!
//! Everything here is pure and allocation-only; persistence and the command
//! line live in the `affq` crate.
#![no_std]

extern crate alloc;

pub mod adhm;
pub mod error;
pub mod field;
pub mod hall;
pub mod ic;
pub mod poly;
pub mod quiver;
pub mod root_data;

pub use error::{Error, Result};
pub use poly::HallPolynomial;
pub use root_data::{delta, DimVector, Flavor, Multisegment, Segment};
