//! Pairwise and global quantum correlations in tripartite states built from
//! nonorthogonal components,
//!
//! ```text
//! |Psi, m> = N ( |psi_1 psi_2 psi_3> + e^{i m pi} |phi_1 phi_2 phi_3> ),   <psi_i|phi_i> = p_i
//! ```
//!
//! The crate maps the state onto qubits (one mode against the other two, or
//! the rank-2 reduced pair densities) and evaluates squared concurrence,
//! entanglement of formation, entropic discord and geometric discord, both in
//! closed form and through generic numeric routines on density matrices.
//! Brute-force verifiers live in [`oracle`]; global averages, monogamy
//! residuals and the discord/EoF conservation identities in [`aggregate`];
//! the three-mode cat-state specialization and figure sweeps in
//! [`catstates`].
//!
//! The crate is `no_std` and only needs `alloc`. Logarithms are base 2, so
//! every entropic quantity is in bits.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod aggregate;
pub mod catstates;
mod error;
pub mod linalg;
pub mod mapping;
mod math;
pub mod measures;
pub mod oracle;

pub use error::{Error, Result};
pub use mapping::{Bipartition, Mode, OverlapConfig, Parity};
pub use measures::Side;
