//! Centralizer matrix algebras over Q and GF(p), and exact decisions about
//! whether `S_n(c, F)/F` is a (separable) Frobenius extension.
//!
//! The layers, bottom up:
//!
//! * [`field`], [`poly`], [`matrix`]: exact scalars, polynomials and dense
//!   matrices;
//! * [`canon`]: invariant factors and Jordan structure;
//! * [`centralizer`]: centralizer bases, brute force and block structured;
//! * [`frobsys`]: Frobenius systems, their verification, separability
//!   elements and a Frobenius-algebra oracle;
//! * [`decide`]: the classification report;
//! * [`wire`] and [`cli`]: JSON and the command line.

pub mod canon;
pub mod centralizer;
pub mod cli;
pub mod decide;
pub mod error;
pub mod field;
pub mod frobsys;
pub mod matrix;
pub mod poly;
pub mod wire;

pub use decide::{decide, decide_batch, DecisionReport};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::Mat;
pub use poly::Poly;
