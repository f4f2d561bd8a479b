//! Legendre and Ferrers functions of fractional degree, evaluated in
//! closed form through complete elliptic integrals.
//!
//! The crate has two independent evaluation routes:
//!
//! * a series route ([`hyp2f1`]) built on the Gauss hypergeometric
//!   function, used as the reference oracle, and
//! * an elliptic route ([`kernel`], [`transform`]) that reduces degrees
//!   `nu` in `Z +- 1/r` (r = 2, 3, 4, 6) with integer order to
//!   combinations `a K(m0) + b E(m0)` via algebraic transformation
//!   identities and first-order ladder recurrences.
//!
//! The [`transform`] module also carries the executable catalogue of the
//! transformation identities themselves, each checkable numerically on
//! its parameter interval, and [`curves`] the algebraic L-R curves they
//! come from. [`closed_form`] holds the handful of purely algebraic
//! special values, and [`applications`] the Fourier/Laplace coefficient
//! expansions built on top of the evaluator.

pub mod applications;
pub mod closed_form;
pub mod curves;
pub mod dual;
pub mod elliptic;
pub mod error;
pub mod gamma;
pub mod hyp2f1;
pub mod index;
pub mod kernel;
pub mod selftest;
pub mod transform;

pub use dual::DualScalar;
pub use elliptic::{complete_elliptic_e, complete_elliptic_k, elliptic_derivatives, EllipticModulus};
pub use error::{Error, Result};
pub use gamma::gamma;
pub use hyp2f1::{gauss_2f1, oracle_legendre, HypParams, OracleValue};
pub use index::{Classification, FunctionKind, LegendreIndex};
pub use kernel::{base_half_degree, eval_classical, EllipticCombination};
pub use transform::{catalogue, eval_fractional, identity_sides, EllipticForm};
