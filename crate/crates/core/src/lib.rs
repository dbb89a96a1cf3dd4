//! Exact integral cohomology of the line bundles `L(m,0,...,0,-n-d)` on the
//! partial flag scheme `SL_{d+1}/Q` of pairs (line in hyperplane).
//!
//! The only nonzero groups are `H^{d-1}` and `H^d`, the kernel and cokernel of
//! multiplication by `f = X_0 Y_0 + ... + X_d Y_d`. Both split into weight
//! spaces; each dominant weight space of `H^d` is the cokernel of a small
//! matrix of multinomial coefficients ([`reduced_matrix`]), reduced to Smith
//! normal form over the integers ([`snf`]). The raw monomial map is kept as an
//! independent check ([`oracle`]), closed-form determinants live in
//! [`determinants`], and characteristic-`p` consequences in [`modular`].

pub mod combinatorics;
pub mod determinants;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod modular;
pub mod oracle;
pub mod reduced_matrix;
pub mod snf;
pub mod sweep;

pub use error::{Error, Result};
pub use combinatorics::{Composition, HProfile};
pub use lattice::{Regime, STuple, WeightOmega};
pub use matrix::BigMatrix;
pub use snf::CokernelStructure;
pub use sweep::Execution;
