//! Torsion-level computations for Kummer-type hyperkähler constructions on
//! abelian surfaces: exact modular linear algebra, Mukai-lattice bookkeeping,
//! the torsion-group description of the automorphism group, Galois
//! representation checks and fixed-locus accounting.

pub mod check;
pub mod error;
pub mod exec;
pub mod fixlocus;
pub mod gav;
pub mod grid;
pub mod mukai;
pub mod reptheory;
pub mod surface;
pub mod zmodmat;

pub use error::{Error, Result};
pub use exec::Exec;
