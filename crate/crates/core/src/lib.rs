//! Matrix coefficients of unitary representations of SL(2,R) in the SU(1,1)
//! model, the Sobolev-type norms built from them, and the weighted integrals
//! and asymptotic fits used to study those norms.
//!
//! Basis labels are [`KIndex`] values; matrix coefficients follow the
//! convention `coef(n, m, x) = <pi(a_x) e_m, e_n>`.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod group;
pub mod integrals;
pub mod norms;
pub mod quad;
pub mod reps;
pub mod specfun;
pub mod structure;

pub use error::{Error, Result};
pub use group::{CartanCoord, GroupElement, WeightSpec};
pub use reps::{CoefValue, KIndex, Method, RepSpec, Sigma};
