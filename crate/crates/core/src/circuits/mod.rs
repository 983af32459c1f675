//! Layered circuits: gate rules over regions, their instantiation on a finite
//! window, truncation, conjugation, product collapse and the builtin actions.

mod action;
mod circuit;
mod collapse;
mod rule;

pub use action::{builtin_action, ActionConfig, CircuitAction, ElementCircuit, BUILTIN_ACTIONS};
pub use circuit::Circuit;
pub use collapse::{product_collapse, Collapse};
pub use rule::{GatePattern, GateRule, ProceduralCircuit};
