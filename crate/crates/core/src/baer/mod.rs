//! Finite-dimensional algebras over `F_q` given by structure constants, with
//! exhaustive (budgeted) tests for the Baer property, Kaplansky type, and the
//! semisimple structure of group algebras.

mod algebra;
mod annihilator;
mod idempotent;
mod pipeline;
mod structure;

pub use algebra::{AlgebraSpec, FieldSpec, StructureAlgebra, ASSOCIATIVITY_CHECK_DIM, DEFAULT_BUDGET};
pub use annihilator::{
    annihilator_lattice, baer_check_lattice, idempotent_generator, is_baer, is_baer_sampled, left_annihilator,
    right_annihilator, sampled_annihilator_lattice, AnnihilatorLattice, BaerCheck, LatticeMode,
};
pub use idempotent::{
    enumerate_idempotents, kaplansky_type, BaerReport, IdempotentInfo, KaplanskyType, FINITE_SCAN_LIMIT,
};
pub use pipeline::{group_baer_pipeline, PipelineReport};
pub use structure::{
    algebra_center, group_wedderburn, maschke_predict, nilpotent_ideal_bruteforce, primitive_central_idempotents,
    wedderburn_components, Center, NilpotentIdeal, Semisimplicity, WedderburnReport,
};

use crate::groups::FiniteGroup;
use crate::scalars::FqField;

/// `F_q[G]` as a structure-constant algebra.
pub fn algebra_from_group(group: &FiniteGroup, field: &FqField) -> StructureAlgebra {
    StructureAlgebra::from_group(group, field)
}
