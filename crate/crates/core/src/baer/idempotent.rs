use serde::Serialize;

use super::annihilator::{is_baer, BaerCheck};
use super::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalars::{FqElement, FqField};

/// Corners with at most this many elements get the exhaustive
/// Dedekind-finiteness scan; larger ones are finite by dimension.
pub const FINITE_SCAN_LIMIT: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentInfo {
    pub element: Vec<FqElement>,
    pub is_central: bool,
    /// Every idempotent of the corner `eAe` is central in it.
    pub is_abelian: bool,
    /// `xy = e` implies `yx = e` in `eAe`.
    pub is_finite: bool,
    /// Whether `is_finite` came from the exhaustive scan rather than from
    /// finite dimension (a finite-dimensional corner is always finite).
    pub finite_scanned: bool,
    /// Smallest central idempotent `v` with `v e = e`.
    pub central_support: Vec<FqElement>,
}

impl IdempotentInfo {
    pub fn is_faithful(&self, a: &StructureAlgebra) -> bool {
        self.central_support == a.one()
    }
}

fn corner(a: &StructureAlgebra, e: &[FqElement]) -> Subspace<FqField> {
    a.span((0..a.dim()).map(|i| a.mul(&a.mul(e, &a.basis_vector(i)), e)))
}

/// Dedekind-finiteness of `eAe`: for each `x` in the corner, the `y` in the
/// corner with `xy = e` form an affine space `y0 + K`, and all of them satisfy
/// `yx = e` iff `y0 x = e` and `k x = 0` on a basis of `K`.
fn corner_is_finite(a: &StructureAlgebra, e: &[FqElement], c: &Subspace<FqField>) -> bool {
    let f = a.field();
    let basis = c.basis();
    let d = basis.len();
    for x in a.subspace_elements(c) {
        let cols: Vec<Vec<FqElement>> = basis.iter().map(|b| a.mul(&x, b)).collect();
        let rows: Vec<Vec<FqElement>> = (0..a.dim()).map(|k| cols.iter().map(|v| v[k]).collect()).collect();
        let m = Matrix::from_rows(f, d, rows);
        let Some(y0) = m.solve(e) else { continue };
        let combine = |coords: &[FqElement]| {
            coords
                .iter()
                .zip(basis)
                .fold(a.zero(), |acc, (t, b)| a.add(&acc, &a.scale(*t, b)))
        };
        if a.mul(&combine(&y0), &x) != e {
            return false;
        }
        if m.nullspace().iter().any(|k| !a.is_zero(&a.mul(&combine(k), &x))) {
            return false;
        }
    }
    true
}

/// All idempotents in lexicographic coordinate order, annotated.
pub fn enumerate_idempotents(a: &StructureAlgebra, budget: u64) -> Result<Vec<IdempotentInfo>> {
    a.check_budget(budget)?;
    let idems: Vec<Vec<FqElement>> = a.elements().filter(|x| a.mul(x, x) == *x).collect();
    let central: Vec<&Vec<FqElement>> = idems.iter().filter(|e| a.is_central(e)).collect();
    let q = a.field().order();
    let mut out = Vec::with_capacity(idems.len());
    for e in &idems {
        let c = corner(a, e);
        let is_abelian = idems
            .iter()
            .filter(|f| a.mul(e, f) == **f && a.mul(f, e) == **f)
            .all(|f| c.basis().iter().all(|b| a.commutes(f, b)));
        let scan = q.checked_pow(c.dim() as u32).is_some_and(|n| n <= FINITE_SCAN_LIMIT);
        let is_finite = !scan || corner_is_finite(a, e, &c);
        let above: Vec<&Vec<FqElement>> = central.iter().copied().filter(|v| a.mul(v, e) == *e).collect();
        // u <= v iff vu = u; the minimum lies below every other candidate
        let central_support = above
            .iter()
            .find(|u| above.iter().all(|v| a.mul(v, u) == ***u))
            .map(|u| (*u).clone())
            .expect("central idempotents form a Boolean algebra with a minimum above e");
        out.push(IdempotentInfo {
            element: e.clone(),
            is_central: a.is_central(e),
            is_abelian,
            is_finite,
            finite_scanned: scan,
            central_support,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KaplanskyType {
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaerReport {
    #[serde(flatten)]
    pub baer: BaerCheck,
    pub kaplansky_type: Option<KaplanskyType>,
    /// Dedekind-finiteness of the unit.
    pub finite: Option<bool>,
    /// Faithful Abelian idempotent (type I) or faithful finite idempotent
    /// (type II); the first in coordinate order.
    pub certificate: Option<Vec<FqElement>>,
    pub idempotent_count: usize,
}

/// Kaplansky type of a Baer algebra. Finite-dimensional algebras are always
/// Dedekind finite, so type III cannot occur here; a non-Baer algebra is
/// reported through the error.
pub fn kaplansky_type(a: &StructureAlgebra, budget: u64) -> Result<BaerReport> {
    kaplansky_type_with(a, is_baer(a, budget)?, budget)
}

pub(crate) fn kaplansky_type_with(a: &StructureAlgebra, baer: BaerCheck, budget: u64) -> Result<BaerReport> {
    if !baer.is_baer {
        return Err(Error::NotBaer);
    }
    let idems = enumerate_idempotents(a, budget)?;
    let one = a.one();
    let finite = idems.iter().find(|i| i.element == one).map(|i| i.is_finite);
    let nonzero = |i: &&IdempotentInfo| !a.is_zero(&i.element);
    let (kind, certificate) = if let Some(e) = idems.iter().find(|i| i.is_abelian && i.is_faithful(a)) {
        (KaplanskyType::I, Some(e.element.clone()))
    } else if idems.iter().filter(nonzero).all(|i| !i.is_abelian) {
        match idems.iter().find(|i| i.is_finite && i.is_faithful(a)) {
            Some(e) => (KaplanskyType::II, Some(e.element.clone())),
            None => (KaplanskyType::III, None),
        }
    } else if idems.iter().filter(nonzero).all(|i| !i.is_finite) {
        (KaplanskyType::III, None)
    } else {
        // mixed types are direct sums; finite dimension never lands here
        return Err(Error::InvalidAlgebra("Baer algebra of mixed type".into()));
    };
    Ok(BaerReport {
        baer,
        kaplansky_type: Some(kind),
        finite,
        certificate,
        idempotent_count: idems.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_finite_group, GroupSpec};
    use crate::scalars::FqField;

    fn algebra(spec: GroupSpec, p: u64) -> StructureAlgebra {
        StructureAlgebra::from_group(&build_finite_group(&spec).unwrap(), &FqField::prime(p).unwrap())
    }

    #[test]
    fn idempotents_of_small_group_algebras() {
        let a = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        let idems = enumerate_idempotents(&a, 1 << 20).unwrap();
        let elems: Vec<_> = idems.iter().map(|i| i.element.clone()).collect();
        assert_eq!(elems, vec![a.zero(), a.one()]);

        let a = algebra(GroupSpec::Cyclic { n: 2 }, 5);
        let idems = enumerate_idempotents(&a, 1 << 20).unwrap();
        assert_eq!(idems.len(), 4);
        assert!(idems.iter().all(|i| i.is_central && i.is_abelian && i.is_finite));
        // e = (1 + g)/2 = 3 + 3g over F_5
        assert!(idems.iter().any(|i| i.element == vec![FqElement(3), FqElement(3)]));
        for i in &idems {
            assert_eq!(i.central_support, i.element);
        }
    }

    #[test]
    fn commutative_semisimple_is_type_one_with_unit() {
        let a = algebra(GroupSpec::Cyclic { n: 3 }, 2);
        let r = kaplansky_type(&a, 1 << 20).unwrap();
        assert_eq!(r.kaplansky_type, Some(KaplanskyType::I));
        assert_eq!(r.certificate, Some(a.one()));
        assert_eq!(r.finite, Some(true));
    }

    #[test]
    fn non_baer_rejected() {
        let a = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        assert_eq!(kaplansky_type(&a, 1 << 20), Err(Error::NotBaer));
    }

    #[test]
    fn corner_scan_on_matrix_block() {
        // F_2[S_3] has an M_2(F_2) block; its 64-element unit corner is scanned
        let a = algebra(GroupSpec::Symmetric { n: 3 }, 2);
        let idems = enumerate_idempotents(&a, 1 << 20).unwrap();
        let unit = idems.iter().find(|i| i.element == a.one()).unwrap();
        assert!(unit.finite_scanned && unit.is_finite);
        assert!(!unit.is_abelian);
    }
}
