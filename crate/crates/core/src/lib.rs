//! Operator algebras generated by the regular representations of a discrete
//! group over a non-Archimedean field, their reductions to group algebras over
//! the residue field, and the Baer/Kaplansky classification of those
//! reductions, at finite scale.

pub mod baer;
pub mod error;
pub mod group_algebra;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod operators;
pub mod scalars;

pub use error::{Error, Result};

pub use group_algebra::GroupAlgebraElement;
pub use groups::{FiniteGroup, InfiniteGroup};
pub use operators::OperatorMatrix;
pub use scalars::{Exact, FqElement, FqField, PadicField, PadicScalar};

/// Exact rational numbers.
pub type Rationals = Exact<num_rational::BigRational>;

pub type FqGroupAlgebraElement = GroupAlgebraElement<FiniteGroup, FqField>;
pub type PadicGroupAlgebraElement = GroupAlgebraElement<FiniteGroup, PadicField>;
pub type RationalGroupAlgebraElement = GroupAlgebraElement<FiniteGroup, Rationals>;

pub type FqOperator = OperatorMatrix<FqField>;
pub type PadicOperator = OperatorMatrix<PadicField>;
pub type RationalOperator = OperatorMatrix<Rationals>;
