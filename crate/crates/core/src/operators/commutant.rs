use std::sync::Arc;

use super::{matrix_of, OperatorMatrix, Side};
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::groups::FiniteGroup;
use crate::linalg::{Matrix, RowReducer, Subspace};
use crate::scalars::Field;

/// `{X : XP = PX for all P in S}` as a subspace of the `n^2`-dimensional
/// matrix space, matrices flattened row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Commutant<F: Field> {
    group: Arc<FiniteGroup>,
    space: Subspace<F>,
}

impl<F: Field> Commutant<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// The canonical (row-reduced) basis as matrices.
    pub fn basis(&self) -> Vec<OperatorMatrix<F>> {
        let n = self.group.order();
        self.space
            .basis()
            .iter()
            .map(|v| {
                let m = Matrix::from_rows(self.space.field(), n, v.chunks(n).map(<[_]>::to_vec).collect());
                OperatorMatrix::from_matrix(&self.group, m).expect("square of the group order")
            })
            .collect()
    }

    pub fn contains(&self, a: &OperatorMatrix<F>) -> bool {
        a.size() == self.group.order() && self.space.contains(&a.to_vec())
    }
}

pub fn commutant<F: Field>(group: &Arc<FiniteGroup>, field: &F, ops: &[OperatorMatrix<F>]) -> Result<Commutant<F>> {
    let n = group.order();
    let mut eqs = RowReducer::new(field, n * n);
    for p in ops {
        if !(Arc::ptr_eq(p.group(), group) || **p.group() == **group) {
            return Err(Error::GroupMismatch);
        }
        if p.ring() != field {
            return Err(Error::FieldMismatch);
        }
        // (XP - PX)_{a,c} = sum_b X_{a,b} P_{b,c} - sum_b P_{a,b} X_{b,c}
        for a in 0..n {
            for c in 0..n {
                let mut row = vec![field.zero(); n * n];
                for b in 0..n {
                    let x = &mut row[a * n + b];
                    *x = field.add(x, p.entry(b, c));
                    let y = &mut row[b * n + c];
                    *y = field.sub(y, p.entry(a, b));
                }
                if row.iter().any(|x| !field.is_zero(x)) {
                    eqs.push(row);
                }
            }
        }
    }
    Ok(Commutant {
        group: group.clone(),
        space: Subspace::span(field, n * n, eqs.nullspace()),
    })
}

/// Span of all matrices with a diagonal profile on the given side.
pub fn profile_space<F: Field>(group: &Arc<FiniteGroup>, field: &F, side: Side) -> Subspace<F> {
    let n = group.order();
    Subspace::span(
        field,
        n * n,
        group
            .elements()
            .map(|g| matrix_of(&GroupAlgebraElement::delta(group, field, g), side).to_vec()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_finite_group, GroupSpec};
    use crate::operators::{diagonal_profile, regular_representation, Action};
    use crate::scalars::FqField;

    #[test]
    fn commutant_of_right_translations() {
        let g = Arc::new(build_finite_group(&GroupSpec::Symmetric { n: 3 }).unwrap());
        let f7 = FqField::prime(7).unwrap();
        let u: Vec<_> = g
            .elements()
            .map(|h| regular_representation(&g, &f7, h, Action::Right).unwrap())
            .collect();
        let c = commutant(&g, &f7, &u).unwrap();
        assert_eq!(c.dim(), 6);
        for m in c.basis() {
            assert!(diagonal_profile(&m, Side::RightCommutant).is_ok());
        }
        assert_eq!(*c.space(), profile_space(&g, &f7, Side::RightCommutant));

        let cc = commutant(&g, &f7, &c.basis()).unwrap();
        assert_eq!(cc.dim(), 6);
        assert_eq!(*cc.space(), profile_space(&g, &f7, Side::LeftCommutant));
        for m in &u {
            assert!(cc.contains(m));
        }
    }

    #[test]
    fn commutant_of_identity_is_everything() {
        let g = Arc::new(build_finite_group(&GroupSpec::Cyclic { n: 3 }).unwrap());
        let f2 = FqField::prime(2).unwrap();
        let c = commutant(&g, &f2, &[OperatorMatrix::identity(&g, &f2)]).unwrap();
        assert_eq!(c.dim(), 9);
        assert_eq!(commutant(&g, &f2, &[]).unwrap().dim(), 9);
    }

    #[test]
    fn mixed_index_sets_rejected() {
        let g = Arc::new(build_finite_group(&GroupSpec::Cyclic { n: 3 }).unwrap());
        let h = Arc::new(build_finite_group(&GroupSpec::Cyclic { n: 4 }).unwrap());
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(
            commutant(&g, &f2, &[OperatorMatrix::identity(&h, &f2)]),
            Err(Error::GroupMismatch)
        );
    }
}
