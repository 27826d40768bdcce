//! Exact toolkit for varieties of reductions of reductive symmetric pairs.
//!
//! Everything is computed over the rationals (and truncated Laurent series
//! over the rationals). No floating point is involved anywhere.
//!
//! * [`arith`]: rationals, polynomials, Laurent series, matrices.
//! * [`lie`]: Lie algebras by structure constants, Killing forms,
//!   Jordan–Chevalley decomposition.
//! * [`pair`]: symmetric pairs, Cartan subspaces, restricted roots.
//! * [`grassmann`]: planes, Plücker vectors, the Killing quadric, linear
//!   families of planes.
//! * [`analysis`]: regular elements, the centralizer map, decomposition
//!   classes, subvarieties of reductions.
//! * [`degeneration`]: limits of planes along curves in the fixed group.
//! * [`rootsys`]: abstract root systems and abelian root sets.
//! * [`verify`]: the acceptance checks shared by the test suite and the CLI.

pub mod analysis;
pub mod arith;
pub mod degeneration;
pub mod error;
pub mod grassmann;
pub mod lie;
pub mod pair;
pub mod report;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
