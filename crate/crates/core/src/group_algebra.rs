//! Finitely supported functions `G -> R`.
//!
//! One type plays two roles: a vector `sum x_a delta_a` of `c_0(G, K)` and an
//! element `eta` of the group algebra, whose product
//! `(eta zeta)_d = sum_l eta_l zeta_{l^{-1} d}` is the matrix product of the
//! corresponding translation-invariant operators.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{conjugacy_classes, FiniteGroup, Group};
use crate::linalg::Matrix;
use crate::scalars::{FqField, PadicField, Ring, Valued};

#[derive(Debug)]
pub struct GroupAlgebraElement<G: Group, R: Ring> {
    group: Arc<G>,
    ring: R,
    coeffs: BTreeMap<G::Elem, R::Elem>,
}

/// Image of a unit-ball element under coefficient-wise reduction.
pub type ReductionImage<G> = GroupAlgebraElement<G, FqField>;

impl<G: Group, R: Ring> Clone for GroupAlgebraElement<G, R> {
    fn clone(&self) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            ring: self.ring.clone(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<G: Group, R: Ring> PartialEq for GroupAlgebraElement<G, R> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl<G: Group, R: Ring> GroupAlgebraElement<G, R> {
    pub fn zero(group: &Arc<G>, ring: &R) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The point mass `delta_g`.
    pub fn delta(group: &Arc<G>, ring: &R, g: G::Elem) -> Self {
        Self::monomial(group, ring, g, ring.one())
    }

    pub fn monomial(group: &Arc<G>, ring: &R, g: G::Elem, c: R::Elem) -> Self {
        let mut x = Self::zero(group, ring);
        x.accumulate(g, c);
        x
    }

    /// Sums repeated entries; rejects elements outside the group.
    pub fn from_terms(group: &Arc<G>, ring: &R, terms: impl IntoIterator<Item = (G::Elem, R::Elem)>) -> Result<Self> {
        let mut x = Self::zero(group, ring);
        for (g, c) in terms {
            if !group.contains(&g) {
                return Err(Error::UnknownElement(format!("{g:?}")));
            }
            x.accumulate(g, c);
        }
        Ok(x)
    }

    fn accumulate(&mut self, g: G::Elem, c: R::Elem) {
        let ring = &self.ring;
        let entry = self.coeffs.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !ring.is_zero(&c) {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(o.get(), &c);
                if ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeff(&self, g: &G::Elem) -> R::Elem {
        self.coeffs.get(g).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Nonzero coefficients in normal-form order.
    pub fn terms(&self) -> impl Iterator<Item = (&G::Elem, &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &G::Elem> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_algebra(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) && self.ring == other.ring
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            out.accumulate(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.group, &self.ring);
        for (g, x) in &self.coeffs {
            out.accumulate(g.clone(), self.ring.mul(c, x));
        }
        out
    }

    /// Convolution product. Each pair `(l, m)` of support points contributes
    /// `eta_l zeta_m` to `d = l m`, i.e. to the term with `m = l^{-1} d`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ring = &self.ring;
        let mut acc: BTreeMap<G::Elem, R::Elem> = BTreeMap::new();
        for (l, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                let d = self.group.mul(l, m);
                let slot = acc.entry(d).or_insert_with(|| ring.zero());
                ring.mul_add_assign(slot, a, b);
            }
        }
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            ring: ring.clone(),
            coeffs: acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect(),
        })
    }

    /// `x y - y x`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.convolve(other)?.sub(&other.convolve(self)?)
    }

    /// Human-readable `[(label, coefficient)]` pairs.
    pub fn labelled_terms(&self) -> Vec<(String, R::Elem)> {
        self.coeffs
            .iter()
            .map(|(g, c)| (self.group.label(g), c.clone()))
            .collect()
    }
}

impl<G: Group, R: Valued> GroupAlgebraElement<G, R> {
    /// `max_g |x_g|` as an exact rational.
    pub fn sup_norm(&self) -> BigRational {
        let p = self.ring.prime();
        self.coeffs
            .values()
            .filter_map(|c| self.ring.valuation(c))
            .min()
            .map(|v| valuation_norm(p, v))
            .unwrap_or_else(BigRational::zero)
    }

    /// Smallest coefficient valuation (`None` for zero).
    pub fn min_valuation(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|c| self.ring.valuation(c)).min()
    }
}

pub(crate) fn valuation_norm(p: u64, v: i64) -> BigRational {
    let pv = num_bigint::BigInt::from(p).pow(v.unsigned_abs() as u32);
    if v >= 0 {
        BigRational::new(1.into(), pv)
    } else {
        BigRational::from_integer(pv)
    }
}

impl<G: Group> GroupAlgebraElement<G, PadicField> {
    /// Coefficient-wise reduction of an element of the unit ball; the kernel
    /// is the open unit ball `{ ||x|| < 1 }`.
    pub fn reduce(&self) -> Result<ReductionImage<G>> {
        if self.min_valuation().is_some_and(|v| v < 0) {
            return Err(Error::NormExceedsOne(self.sup_norm().to_string()));
        }
        let field = self.ring.residue_field();
        let terms = self
            .coeffs
            .iter()
            .map(|(g, c)| Ok((g.clone(), c.reduce(&field)?)))
            .collect::<Result<Vec<_>>>()?;
        GroupAlgebraElement::from_terms(&self.group, &field, terms)
    }
}

/// One indicator element `sum_{d in C} delta_d` per conjugacy class `C`, in
/// the order of [`conjugacy_classes`]. They form a basis of the center.
pub fn center_class_sums<R: Ring>(group: &Arc<FiniteGroup>, ring: &R) -> Vec<GroupAlgebraElement<FiniteGroup, R>> {
    conjugacy_classes(group)
        .into_iter()
        .map(|class| {
            GroupAlgebraElement::from_terms(group, ring, class.into_iter().map(|d| (d, ring.one())))
                .expect("class elements belong to the group")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthonormalityReport {
    pub orthonormal: bool,
    /// Rank over the residue field of the reduced coefficient matrix.
    pub reduction_rank: usize,
    pub count: usize,
}

/// Norm-one vectors of `c_0(G, Q_p)` are orthonormal exactly when their
/// reductions are linearly independent over `F_p`.
pub fn orthonormality_test<G: Group>(vectors: &[GroupAlgebraElement<G, PadicField>]) -> Result<OrthonormalityReport> {
    let Some(first) = vectors.first() else {
        return Ok(OrthonormalityReport {
            orthonormal: true,
            reduction_rank: 0,
            count: 0,
        });
    };
    for (index, v) in vectors.iter().enumerate() {
        first.check(v)?;
        if v.min_valuation() != Some(0) {
            return Err(Error::NormNotOne {
                index,
                norm: v.sup_norm().to_string(),
            });
        }
    }
    let reduced = vectors.iter().map(|v| v.reduce()).collect::<Result<Vec<_>>>()?;
    let columns: Vec<G::Elem> = {
        let mut all: Vec<G::Elem> = reduced.iter().flat_map(|v| v.support().cloned()).collect();
        all.sort();
        all.dedup();
        all
    };
    let field = first.ring.residue_field();
    let rows = reduced
        .iter()
        .map(|v| columns.iter().map(|g| v.coeff(g)).collect())
        .collect();
    let rank = Matrix::from_rows(&field, columns.len(), rows).rank();
    Ok(OrthonormalityReport {
        orthonormal: rank == vectors.len(),
        reduction_rank: rank,
        count: vectors.len(),
    })
}
