//! Quasi-particle bases and fermionic character formulas for principal
//! subspaces, vacuum spaces and parafermionic spaces of standard modules over
//! untwisted affine Lie algebras, verified at desk scale against independent
//! brute-force and bosonic oracles.
//!
//! Everything is exact: energies are rationals, coefficients are
//! arbitrary-precision integers, and no floating point appears anywhere.
//!
//! - [`root_system`]: types A-G, pairing matrices, level constants, the
//!   rectangular highest weights and the j_t window.
//! - [`series`]: truncated formal series graded by a rational q-exponent and
//!   an integer weight vector.
//! - [`quasiparticles`]: monomial combinatorics, the difference/initial
//!   condition predicate, exhaustive enumeration, conformal energies.
//! - [`characters`]: principal-subspace characters (R- and P-form), the
//!   vacuum-space lattice sum, module characters, parafermionic characters.
//! - [`oracle`]: affine Freudenthal multiplicities and the bosonic
//!   (formula-independent) characters used for verification.
//! - [`verify`]: the identity suite tying all of the above together.

pub mod characters;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod oracle;
pub mod quasiparticles;
pub mod root_system;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use root_system::{Family, HighestWeight, Instance, JtSign, LieType, RootSystem};
pub use series::{Energy, GradedSeries};
