//! Finite crossed modules, crossed squares and 2-crossed modules given by
//! tables, with exhaustive axiom validators, the Postnikov 3-cocycle of a
//! crossed module, weak morphisms from a group, and lattice instances.

pub mod fixtures;
mod lattice;
mod module;
pub mod mutation;
mod report;
mod square;
mod tables;
mod weak;

pub use lattice::{
    lattice_crossed_module_1d, operator_square, pauli_square, verify_lattice_square, EquationTally, LatticeCrossedModule,
    LatticeSquareReport, SquareSample,
};
pub use module::{
    all_sections, postnikov3, postnikov3_with_lift, validate_crossed_module, CrossedModule, CrossedModuleJson, KernelIso,
};
pub use report::{AxiomCheck, ValidationReport};
pub use square::{
    homotopy_groups, to_two_crossed_module, validate_crossed_square, validate_two_crossed_module, CrossedSquare,
    CrossedSquareJson, HomotopyGroups, TwoCrossedModule, TwoCrossedModuleJson,
};
pub use weak::{check_weak_morphism, extension_group, extensions_isomorphic, twist, WeakMorphismData, WeakMorphismReport};
