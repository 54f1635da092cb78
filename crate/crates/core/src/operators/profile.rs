use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::OperatorMatrix;
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::groups::FiniteGroup;
use crate::scalars::{PadicField, PadicScalar, Ring};

/// How a group-algebra element is laid out along the diagonals of a matrix.
///
/// `RightCommutant`: `alpha_{a,b} = eta_{a b^{-1}}`; these matrices commute with
/// every `U_g`, and `delta_g` gives `V_g`.
/// `LeftCommutant`: `alpha_{a,b} = zeta_{a^{-1} b}`; these commute with every
/// `V_g`, and `delta_g` gives `U_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    RightCommutant,
    LeftCommutant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalProfile<R: Ring> {
    pub side: Side,
    pub coeffs: GroupAlgebraElement<FiniteGroup, R>,
}

impl<R: Ring> DiagonalProfile<R> {
    pub fn matrix(&self) -> OperatorMatrix<R> {
        matrix_of(&self.coeffs, self.side)
    }
}

/// Position where a matrix leaves its diagonal, together with the reference
/// entry the profile value was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotConstant {
    pub row: usize,
    pub col: usize,
    pub reference: (usize, usize),
}

fn diagonal(group: &FiniteGroup, a: usize, b: usize, side: Side) -> usize {
    match side {
        Side::RightCommutant => group.op(a, group.inverse_of(b)),
        Side::LeftCommutant => group.op(group.inverse_of(a), b),
    }
}

pub fn matrix_of<R: Ring>(x: &GroupAlgebraElement<FiniteGroup, R>, side: Side) -> OperatorMatrix<R> {
    let group = x.group();
    OperatorMatrix::from_fn(group, x.ring(), |a, b| x.coeff(&diagonal(group, a, b, side)))
}

/// Reads the profile off column (right side) or row (left side) of the
/// identity and checks every other entry against it.
pub fn diagonal_profile<R: Ring>(
    a: &OperatorMatrix<R>,
    side: Side,
) -> std::result::Result<DiagonalProfile<R>, NotConstant> {
    let group = a.group();
    let reference = |c: usize| match side {
        Side::RightCommutant => (c, 0),
        Side::LeftCommutant => (0, c),
    };
    let values: Vec<R::Elem> = group
        .elements()
        .map(|c| {
            let (r, s) = reference(c);
            a.entry(r, s).clone()
        })
        .collect();
    for r in group.elements() {
        for s in group.elements() {
            let c = diagonal(group, r, s, side);
            if *a.entry(r, s) != values[c] {
                return Err(NotConstant {
                    row: r,
                    col: s,
                    reference: reference(c),
                });
            }
        }
    }
    let coeffs = GroupAlgebraElement::from_terms(group, a.ring(), values.into_iter().enumerate())
        .expect("indices are group elements");
    Ok(DiagonalProfile { side, coeffs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslationApproximation {
    /// `c_g` with `A_eps = sum_g c_g U_g`, in element order.
    pub coefficients: Vec<(usize, PadicScalar)>,
    pub approximation: OperatorMatrix<PadicField>,
    /// `||A - A_eps||`
    pub error_norm: BigRational,
    /// Largest norm among the dropped diagonals.
    pub truncated_max: BigRational,
}

/// Keeps the diagonals of a left-profile matrix whose value has norm at least
/// `eps`, writing the result as a combination of the `U_g`.
pub fn translation_approximation(
    a: &OperatorMatrix<PadicField>,
    eps: &BigRational,
) -> Result<TranslationApproximation> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let profile =
        diagonal_profile(a, Side::LeftCommutant).map_err(|w| Error::NotDiagonalConstant { row: w.row, col: w.col })?;
    let mut coefficients = Vec::new();
    let mut truncated_max = BigRational::zero();
    for (g, c) in profile.coeffs.terms() {
        let norm = c.norm();
        if norm >= *eps {
            coefficients.push((*g, c.clone()));
        } else if norm > truncated_max {
            truncated_max = norm;
        }
    }
    let group: &Arc<FiniteGroup> = a.group();
    let kept = GroupAlgebraElement::from_terms(group, a.ring(), coefficients.iter().cloned())?;
    let approximation = matrix_of(&kept, Side::LeftCommutant);
    let error_norm = a.sub(&approximation)?.op_norm();
    Ok(TranslationApproximation {
        coefficients,
        approximation,
        error_norm,
        truncated_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_finite_group, GroupSpec};
    use crate::operators::{regular_representation, Action};
    use crate::scalars::{FqElement, FqField};

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(build_finite_group(&GroupSpec::Symmetric { n: 3 }).unwrap())
    }

    #[test]
    fn point_masses_give_regular_representations() {
        let g = s3();
        let f7 = FqField::prime(7).unwrap();
        for h in g.elements() {
            let d = GroupAlgebraElement::delta(&g, &f7, h);
            let u = regular_representation(&g, &f7, h, Action::Right).unwrap();
            let v = regular_representation(&g, &f7, h, Action::Left).unwrap();
            assert_eq!(matrix_of(&d, Side::LeftCommutant), u);
            assert_eq!(matrix_of(&d, Side::RightCommutant), v);
        }
        let e = GroupAlgebraElement::delta(&g, &f7, 0);
        for side in [Side::LeftCommutant, Side::RightCommutant] {
            assert_eq!(matrix_of(&e, side), OperatorMatrix::identity(&g, &f7));
        }
    }

    #[test]
    fn profile_round_trip_and_witness() {
        let g = s3();
        let f7 = FqField::prime(7).unwrap();
        let x = GroupAlgebraElement::from_terms(&g, &f7, (0..6).map(|a| (a, FqElement(a as u64 + 1)))).unwrap();
        for side in [Side::LeftCommutant, Side::RightCommutant] {
            let m = matrix_of(&x, side);
            let p = diagonal_profile(&m, side).unwrap();
            assert_eq!(p.coeffs, x);
            assert_eq!(p.matrix(), m);

            let mut bad = m.clone();
            bad.set(4, 2, FqElement(0));
            let w = diagonal_profile(&bad, side).unwrap_err();
            assert_eq!(diagonal(&g, w.row, w.col, side), diagonal(&g, 4, 2, side));
        }
    }

    #[test]
    fn truncation_by_norm() {
        let g = s3();
        let q5 = PadicField::with_default_precision(5).unwrap();
        let x = GroupAlgebraElement::from_terms(&g, &q5, [(0, q5.integer(2)), (1, q5.integer(5)), (3, q5.integer(25))])
            .unwrap();
        let a = matrix_of(&x, Side::LeftCommutant);
        let t = translation_approximation(&a, &BigRational::new(1.into(), 10.into())).unwrap();
        assert_eq!(t.coefficients.iter().map(|(g, _)| *g).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(t.error_norm, BigRational::new(1.into(), 25.into()));
        assert_eq!(t.error_norm, t.truncated_max);

        let t = translation_approximation(&a, &BigRational::from_integer(2.into())).unwrap();
        assert!(t.coefficients.is_empty());
        assert_eq!(t.error_norm, a.op_norm());

        let u = regular_representation(&g, &q5, 4, Action::Right).unwrap();
        let t = translation_approximation(&u, &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(t.approximation, u);
        assert!(t.error_norm.is_zero());

        let v = regular_representation(&g, &q5, 4, Action::Left).unwrap();
        assert!(matches!(
            translation_approximation(&v, &BigRational::new(1.into(), 2.into())),
            Err(Error::NotDiagonalConstant { .. })
        ));
    }
}
