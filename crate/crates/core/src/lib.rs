//! Bitopological spectra of finite lattices.
//!
//! A finite lattice `L` is represented by the set of its comaximal
//! (ideal, filter) pairs carrying two topologies, and recovered from that
//! space as the lattice of essential subsets. The crate computes both
//! directions, the classical prime-ideal spectrum, the functorial action on
//! homomorphisms, and checks the resulting duality on concrete lattices.
//!
//! ```
//! use lattice_spectra::catalog::named;
//! use lattice_spectra::duality::EssentialLattice;
//! use lattice_spectra::spectra::BitopSpectrum;
//!
//! let m5 = named::m5();
//! let s = BitopSpectrum::build(&m5);
//! assert_eq!(s.len(), 6);
//! let e = EssentialLattice::build(s.space(), "E(M5)").unwrap();
//! assert_eq!(e.lattice().len(), 5);
//! ```

pub mod bits;
pub mod catalog;
pub mod cli;
pub mod duality;
pub mod lattice;
pub mod par;
pub mod spectra;
pub mod topology;
pub mod verify;

pub use bits::Bits;
pub use lattice::{FiniteLattice, LatticeError, LatticeHom};
