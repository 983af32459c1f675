//! Exact symbolic engine for 't Hooft anomaly indices of finite-group actions
//! on qubit lattices by finite-depth circuits, plus table-level tooling for
//! crossed modules, crossed squares and 2-crossed modules.
//!
//! Operators are restricted to the class `D_f · X_S`: a diagonal `±1` phase
//! polynomial times a string of bit flips. This class contains `Z`, `CZ`,
//! `CCZ`, `X` and the scalar `-1`, and is closed under products, inverses and
//! conjugation, so every quantity in the pipelines is computed exactly.

pub mod anomaly;
pub mod circuits;
pub mod crossed;
pub mod error;
pub mod groups;
pub mod lattice;
pub mod pairing;
pub mod symop;

pub use error::{Error, Result};
pub use groups::{Cochain, FiniteGroup, GroupHom, PhaseValue};
pub use lattice::{Region, RegionKind, Site, Window};
pub use symop::{Monomial, PhasePoly, SymOp};
