//! Exact computations with integral lattices: genus symbols, masses,
//! discriminant forms, idoneal genera and the Enriques cover criterion.

pub mod arith;
pub mod classifier;
pub mod cli;
pub mod enriques;
pub mod enumeration;
pub mod error;
pub mod genus;
pub mod interval;
pub mod lattice;
pub mod mass;
pub mod representatives;
pub mod seed;
pub mod torsion;

pub use error::{Error, Result};
pub use genus::{genus_of, GenusSymbol};
pub use lattice::IntLattice;
pub use torsion::TorsionForm;
