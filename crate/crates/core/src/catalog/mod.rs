//! Named lattices, the lattice and homomorphism text formats, lattice
//! generation, and DOT export.

pub mod dot;
pub mod format;
pub mod generate;
pub mod named;

pub use dot::{bitop_to_dot, classical_to_dot, lattice_to_dot, validate_dot};
pub use format::{parse_doc, parse_hom, parse_lattice, render, CatalogError, LatticeDoc};
pub use generate::{enumerate_lattices, GeneratorConfig};
pub use named::catalog;
