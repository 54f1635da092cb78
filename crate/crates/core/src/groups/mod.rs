//! Groups: finite groups by Cayley table, a few finitely generated infinite
//! families with normal forms, and conjugacy machinery.

mod finite;
mod infinite;
mod orbit;
mod perm;

pub use finite::{build_finite_group, conjugacy_classes, group_center, FiniteGroup, GroupSpec, MAX_ORDER};
pub use infinite::{FamilyElement, FamilyKind, FamilySpec, InfiniteGroup, DEFAULT_LENGTH_CAP};
pub use orbit::{conjugacy_orbit, icc_check, ConjugacyOrbit, IccVerdict, OrbitStatus};
pub use perm::Perm;

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;

/// A group whose elements have a canonical, totally ordered representation.
pub trait Group: Debug + PartialEq {
    type Elem: Clone + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn label(&self, a: &Self::Elem) -> String;
    fn parse_element(&self, s: &str) -> Result<Self::Elem>;

    /// `c^{-1} a c`
    fn conjugate(&self, a: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(c), a), c)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}
