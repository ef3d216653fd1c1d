//! wzlab: a verification laboratory for hypergeometric identities attached to
//! Ramanujan-type series for 1/pi and 1/pi^2.
//!
//! The crate has three layers:
//!
//! * exact arithmetic ([`exact`], [`wz`]): arbitrary-size rationals, bivariate
//!   rational functions, and WZ-pair telescoping checks that run entirely in
//!   exact arithmetic;
//! * arbitrary-precision numerics ([`mpreal`], [`jet`], [`trig`],
//!   [`summation`]): MPFR-backed reals, truncated Taylor jets, and the three
//!   summation engines (geometric direct sums, alternating-series
//!   acceleration, and zeta-regularized power tails);
//! * verification ([`catalog`], [`analysis`]): the declarative catalog of
//!   series/identities/lemmas and the residual, periodicity, expansion,
//!   lemma, and reconstruction checks built on top of it.
//!
//! Everything is pure and `Send + Sync`; per-point checks can run in
//! parallel.

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod jet;
pub mod mpreal;
pub mod report;
pub mod summation;
pub mod trig;
pub mod wz;

pub use error::{Error, Result};
pub use exact::{Int, Rat};
pub use rug::Float;
