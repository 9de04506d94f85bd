//! Exact computations with Hopf superalgebras and quotients of affine
//! algebraic supergroups 𝒢/ℋ.
//!
//! The crate is organized bottom-up:
//! - [`superlinalg`]: exact ℤ/2-graded linear algebra over ℚ or 𝔽_p (p odd);
//! - [`superpoly`]: presented super-commutative algebras, normal forms, gr;
//! - [`hopf`]: Hopf superalgebra presentations and their derived data;
//! - [`comod`]: comodules, cotensor products, coinvariants, retractions;
//! - [`quotient`]: the quotient pipeline and its checkers;
//! - [`cli`]: the presentation-file format and the command driver.

pub mod cli;
pub mod comod;
pub mod hopf;
pub mod quotient;
pub mod superlinalg;
pub mod superpoly;

mod error;

pub use error::Error;
