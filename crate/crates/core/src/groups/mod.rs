//! Finite groups given by tables, `Z_m`-valued cochains with trivial action,
//! and the cohomology operations the anomaly pipelines need.

mod cochain;
mod group;
mod zmod;

pub use cochain::{cup_1cocycles, Cochain, CochainJson, PhaseValue, SolveOptions};
pub use group::{FiniteGroup, GroupHom, GroupJson};
pub use zmod::solve_mod;
