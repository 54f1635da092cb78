//! Matrices indexed by a finite group: the regular representations, the flip,
//! diagonal profiles of commutant members, commutant spaces, truncation of
//! translation-invariant operators and a strong-convergence test for sequences
//! of finitely supported matrices.
//!
//! Rows and columns are indexed by group elements in their canonical order.
//! `U_g` acts by `(U_g x)_a = x_{ag}` and `V_g` by `(V_g x)_a = x_{g^{-1} a}`;
//! the flip is `(W x)_a = x_{a^{-1}}`.

mod commutant;
mod convergence;
mod profile;

pub use commutant::{commutant, profile_space, Commutant};
pub use convergence::{
    builtin_scenario, strong_convergence_check, ConvergenceReport, ConvergenceStage, ConvergenceVerdict, ProbeResult,
    Scenario, SCENARIOS,
};
pub use profile::{
    diagonal_profile, matrix_of, translation_approximation, DiagonalProfile, NotConstant, Side,
    TranslationApproximation,
};

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::valuation_norm;
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;
use crate::scalars::{Ring, Valued};

/// Which regular representation: `Right` gives `U_g`, `Left` gives `V_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Right,
    Left,
}

/// Square matrix whose rows and columns are the elements of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<R: Ring> {
    group: Arc<FiniteGroup>,
    matrix: Matrix<R>,
}

impl<R: Ring> OperatorMatrix<R> {
    pub fn zeros(group: &Arc<FiniteGroup>, ring: &R) -> Self {
        let n = group.order();
        OperatorMatrix {
            group: group.clone(),
            matrix: Matrix::zeros(ring, n, n),
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>, ring: &R) -> Self {
        OperatorMatrix {
            group: group.clone(),
            matrix: Matrix::identity(ring, group.order()),
        }
    }

    pub fn from_fn(group: &Arc<FiniteGroup>, ring: &R, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut m = Self::zeros(group, ring);
        for a in group.elements() {
            for b in group.elements() {
                m.matrix.set(a, b, f(a, b));
            }
        }
        m
    }

    pub fn from_matrix(group: &Arc<FiniteGroup>, matrix: Matrix<R>) -> Result<Self> {
        let n = group.order();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.rows().max(matrix.cols()),
            });
        }
        Ok(OperatorMatrix {
            group: group.clone(),
            matrix,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &R {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.group.order()
    }

    pub fn entry(&self, a: usize, b: usize) -> &R::Elem {
        self.matrix.get(a, b)
    }

    pub fn set(&mut self, a: usize, b: usize, v: R::Elem) {
        self.matrix.set(a, b, v);
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.ring() != other.ring() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(OperatorMatrix {
            group: self.group.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(&self.group, self.ring(), |a, b| {
            f(self.entry(a, b), other.entry(a, b))
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let ring = self.ring().clone();
        self.zip(other, |x, y| ring.add(x, y))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let ring = self.ring().clone();
        self.zip(other, |x, y| ring.sub(x, y))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = self.ring();
        Self::from_fn(&self.group, ring, |a, b| ring.mul(c, self.entry(a, b)))
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn apply(&self, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if x.len() != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                got: x.len(),
            });
        }
        Ok(self.matrix.mul_vec(x))
    }

    /// Entries in row-major order, one row per element.
    pub fn to_vec(&self) -> Vec<R::Elem> {
        self.matrix.row_vectors().into_iter().flatten().collect()
    }

    /// Nonzero entries as `(row, column, value)`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, R::Elem)> {
        let ring = self.ring();
        let mut out = Vec::new();
        for a in self.group.elements() {
            for b in self.group.elements() {
                let v = self.entry(a, b);
                if !ring.is_zero(v) {
                    out.push((a, b, v.clone()));
                }
            }
        }
        out
    }
}

impl<R: Valued> OperatorMatrix<R> {
    /// Operator norm, the supremum of the entry absolute values.
    pub fn op_norm(&self) -> BigRational {
        let ring = self.ring();
        self.to_vec()
            .iter()
            .filter_map(|x| ring.valuation(x))
            .min()
            .map(|v| valuation_norm(ring.prime(), v))
            .unwrap_or_else(BigRational::zero)
    }
}

/// `op_norm` as a free function.
pub fn op_norm<R: Valued>(a: &OperatorMatrix<R>) -> BigRational {
    a.op_norm()
}

fn check_element(group: &FiniteGroup, g: usize) -> Result<()> {
    if g < group.order() {
        Ok(())
    } else {
        Err(Error::UnknownElement(format!(
            "index {g} in group of order {}",
            group.order()
        )))
    }
}

/// `U_g` (right action) or `V_g` (left action) as a permutation matrix.
pub fn regular_representation<R: Ring>(
    group: &Arc<FiniteGroup>,
    ring: &R,
    g: usize,
    action: Action,
) -> Result<OperatorMatrix<R>> {
    check_element(group, g)?;
    let mut m = OperatorMatrix::zeros(group, ring);
    for a in group.elements() {
        let b = match action {
            Action::Right => group.op(a, g),
            Action::Left => group.op(group.inverse_of(g), a),
        };
        m.set(a, b, ring.one());
    }
    Ok(m)
}

/// The flip `W`, with `W^2 = I` and `W U_g W = V_g`.
pub fn flip<R: Ring>(group: &Arc<FiniteGroup>, ring: &R) -> OperatorMatrix<R> {
    let mut m = OperatorMatrix::zeros(group, ring);
    for a in group.elements() {
        m.set(a, group.inverse_of(a), ring.one());
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub holds: bool,
    /// Number of matrix identities verified.
    pub checked: usize,
    pub first_violation: Option<String>,
}

/// Checks `W^2 = I`, `W U_g W = V_g`, `U_g U_h = U_{gh}`, `V_g V_h = V_{gh}` and
/// `U_g V_h = V_h U_g` by explicit matrix products, stopping at the first
/// failure.
pub fn check_relations<R: Ring>(group: &Arc<FiniteGroup>, ring: &R) -> Result<RelationsReport> {
    let n = group.order();
    let u = (0..n)
        .map(|g| regular_representation(group, ring, g, Action::Right))
        .collect::<Result<Vec<_>>>()?;
    let v = (0..n)
        .map(|g| regular_representation(group, ring, g, Action::Left))
        .collect::<Result<Vec<_>>>()?;
    let w = flip(group, ring);
    let mut checked = 0;
    let mut verify = |ok: bool, what: &dyn Fn() -> String| {
        checked += 1;
        if ok {
            None
        } else {
            Some(what())
        }
    };
    let label = |g: usize| group.labels()[g].clone();

    let mut failure = verify(w.mul(&w)? == OperatorMatrix::identity(group, ring), &|| {
        "W^2 != I".into()
    });
    for g in 0..n {
        if failure.is_some() {
            break;
        }
        failure = verify(w.mul(&u[g])?.mul(&w)? == v[g], &|| {
            format!("W U_g W != V_g for g = {}", label(g))
        });
    }
    'pairs: for g in 0..n {
        for h in 0..n {
            if failure.is_some() {
                break 'pairs;
            }
            let gh = group.op(g, h);
            let uv = u[g].mul(&v[h])?;
            failure = verify(u[g].mul(&u[h])? == u[gh], &|| {
                format!("U_g U_h != U_gh for g = {}, h = {}", label(g), label(h))
            })
            .or_else(|| {
                verify(v[g].mul(&v[h]).ok()? == v[gh], &|| {
                    format!("V_g V_h != V_gh for g = {}, h = {}", label(g), label(h))
                })
            })
            .or_else(|| {
                verify(v[h].mul(&u[g]).ok()? == uv, &|| {
                    format!("U_g V_h != V_h U_g for g = {}, h = {}", label(g), label(h))
                })
            });
        }
    }
    Ok(RelationsReport {
        holds: failure.is_none(),
        checked,
        first_violation: failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_finite_group, GroupSpec};
    use crate::scalars::{Exact, PadicField};

    fn group(spec: GroupSpec) -> Arc<FiniteGroup> {
        Arc::new(build_finite_group(&spec).unwrap())
    }

    #[test]
    fn right_representation_moves_point_masses() {
        let g = group(GroupSpec::Symmetric { n: 3 });
        let z = Exact::<i64>::new();
        for h in g.elements() {
            let u = regular_representation(&g, &z, h, Action::Right).unwrap();
            for a in g.elements() {
                let mut delta = vec![0; 6];
                delta[a] = 1;
                let mut expected = vec![0; 6];
                expected[g.op(a, g.inverse_of(h))] = 1;
                assert_eq!(u.apply(&delta).unwrap(), expected);
            }
        }
        assert_eq!(
            regular_representation(&g, &z, 0, Action::Right).unwrap(),
            OperatorMatrix::identity(&g, &z)
        );
        assert!(regular_representation(&g, &z, 6, Action::Right).is_err());
    }

    #[test]
    fn relations_hold() {
        let z = Exact::<i64>::new();
        for spec in [
            GroupSpec::Symmetric { n: 3 },
            GroupSpec::Cyclic { n: 4 },
            GroupSpec::Dihedral { n: 4 },
        ] {
            let g = group(spec);
            let n = g.order();
            let r = check_relations(&g, &z).unwrap();
            assert!(r.holds, "{:?}", r.first_violation);
            assert_eq!(r.checked, 1 + n + 3 * n * n);
        }
    }

    #[test]
    fn norms() {
        let g = group(GroupSpec::Symmetric { n: 3 });
        let q5 = PadicField::with_default_precision(5).unwrap();
        let u = regular_representation(&g, &q5, 3, Action::Right).unwrap();
        assert_eq!(u.op_norm(), BigRational::from_integer(1.into()));
        let five = OperatorMatrix::identity(&g, &q5).scale(&q5.integer(5));
        assert_eq!(op_norm(&five), BigRational::new(1.into(), 5.into()));
        assert_eq!(OperatorMatrix::zeros(&g, &q5).op_norm(), BigRational::zero());
    }
}
