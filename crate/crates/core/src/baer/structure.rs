//! Center, primitive central idempotents, Wedderburn block shapes and the
//! nil-ideal search.

use num_integer::Roots;
use serde::Serialize;

use super::StructureAlgebra;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{Matrix, Subspace};
use crate::scalars::{poly_factor, Field, FqElement, FqField, FqPolynomial, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Center {
    /// The center as a subspace of `A`.
    pub space: Subspace<FqField>,
    /// The center as an algebra in the basis of `space`.
    pub algebra: StructureAlgebra,
}

impl Center {
    /// Coordinates in `A` of a center element given in center coordinates.
    pub fn embed(&self, z: &[FqElement]) -> Vec<FqElement> {
        let f = self.space.field();
        let n = self.space.ambient();
        let mut out = vec![FqElement(0); n];
        for (c, b) in z.iter().zip(self.space.basis()) {
            for (o, x) in out.iter_mut().zip(b) {
                f.mul_add_assign(o, c, x);
            }
        }
        out
    }
}

pub fn algebra_center(a: &StructureAlgebra) -> Center {
    let n = a.dim();
    let f = a.field();
    // z = sum_j z_j e_j is central iff sum_j z_j (e_j e_i - e_i e_j) = 0 for all i
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            rows.push(
                (0..n)
                    .map(|j| f.sub(&a.structure_constant(j, i, k), &a.structure_constant(i, j, k)))
                    .collect(),
            );
        }
    }
    let space = Subspace::span(f, n, Matrix::from_rows(f, n, rows).nullspace());
    let basis = space.basis().to_vec();
    let m = basis.len();
    let coords = |v: &[FqElement]| space.coordinates(v).expect("center is a subalgebra");
    let mut table = Vec::with_capacity(m * m * m);
    for x in &basis {
        for y in &basis {
            table.extend(coords(&a.mul(x, y)));
        }
    }
    let algebra =
        StructureAlgebra::new(f, m, table, coords(&a.one())).expect("center of an associative unital algebra");
    Center { space, algebra }
}

/// Primitive idempotents of a commutative algebra, sorted by coordinates.
///
/// `B = {z : z^q = z}` is a split semisimple subalgebra whose primitive
/// idempotents are those of the whole algebra. Each element of `eB` has a
/// minimal polynomial over `eB` with distinct roots in `F_q`, and Lagrange
/// interpolation on those roots splits `e`.
fn commutative_primitive_idempotents(z: &StructureAlgebra) -> Result<Vec<Vec<FqElement>>> {
    let f = z.field();
    let m = z.dim();
    let q = f.order();
    let frob: Vec<Vec<FqElement>> = (0..m).map(|i| z.pow(&z.basis_vector(i), q)).collect();
    if Matrix::from_rows(f, m, frob.clone()).rank() < m {
        return Err(Error::NotSemisimple("the center has nonzero nilpotent elements".into()));
    }
    let fixed_rows: Vec<Vec<FqElement>> = (0..m).map(|i| z.sub(&frob[i], &z.basis_vector(i))).collect();
    // v in B iff sum_i v_i (frob_i - e_i) = 0
    let b_basis = Matrix::from_rows(f, m, fixed_rows).transpose().nullspace();
    let r = b_basis.len();

    let mut idems = vec![z.one()];
    while idems.len() < r {
        let mut split = None;
        'search: for (pos, e) in idems.iter().enumerate() {
            for b in &b_basis {
                if let Some(parts) = split_by_eigenvalues(z, e, &z.mul(b, e))? {
                    split = Some((pos, parts));
                    break 'search;
                }
            }
        }
        let (pos, parts) = split.expect("B spans all primitive idempotents");
        idems.splice(pos..=pos, parts);
    }
    idems.sort();
    Ok(idems)
}

/// Minimal polynomial of `y` in the unital algebra `eZ` (unit `e`).
fn minimal_polynomial(z: &StructureAlgebra, e: &[FqElement], y: &[FqElement]) -> FqPolynomial {
    let f = z.field();
    let mut powers = vec![e.to_vec()];
    loop {
        let next = z.mul(powers.last().expect("nonempty"), y);
        let span = Subspace::span(f, z.dim(), powers.clone());
        // express next as a combination of the earlier powers, which are
        // independent by construction
        if span.contains(&next) {
            let m = Matrix::from_rows(f, z.dim(), powers.clone()).transpose();
            let c = m.solve(&next).expect("next lies in the span");
            let mut coeffs: Vec<FqElement> = c.iter().map(|x| f.neg(x)).collect();
            coeffs.push(f.one());
            return FqPolynomial::new(f, coeffs);
        }
        powers.push(next);
    }
}

fn split_by_eigenvalues(z: &StructureAlgebra, e: &[FqElement], y: &[FqElement]) -> Result<Option<Vec<Vec<FqElement>>>> {
    let f = z.field();
    let mp = minimal_polynomial(z, e, y);
    if mp.degree() == Some(1) {
        return Ok(None);
    }
    let mut roots = Vec::new();
    for (g, mult) in poly_factor(&mp) {
        if g.degree() != Some(1) || mult != 1 {
            return Err(Error::NotSemisimple(format!(
                "unexpected factor {g} of a split element"
            )));
        }
        roots.push(f.neg(&g.coeff(0)));
    }
    let parts = roots
        .iter()
        .map(|lambda| {
            roots.iter().filter(|mu| *mu != lambda).fold(e.to_vec(), |acc, mu| {
                let num = z.sub(y, &z.scale(*mu, e));
                let inv = f.inv(&f.sub(lambda, mu)).expect("distinct roots");
                z.scale(inv, &z.mul(&acc, &num))
            })
        })
        .collect();
    Ok(Some(parts))
}

/// Orthogonal central idempotents summing to `1`, each primitive among the
/// central idempotents; sorted by coordinates.
pub fn primitive_central_idempotents(a: &StructureAlgebra) -> Result<Vec<Vec<FqElement>>> {
    let center = algebra_center(a);
    let mut out: Vec<Vec<FqElement>> = commutative_primitive_idempotents(&center.algebra)?
        .iter()
        .map(|e| center.embed(e))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semisimplicity {
    /// No nonzero nilpotent ideal in an exhaustive scan.
    RadicalScan,
    /// Group algebra with the characteristic prime to the group order.
    Maschke,
    /// Only the center was checked to be reduced.
    CenterOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WedderburnReport {
    /// `(n_i, d_i)`: block `M_{n_i}(F_{q^{d_i}})`, sorted.
    pub components: Vec<(usize, usize)>,
    /// Primitive central idempotents, in the order of `components`.
    pub idempotents: Vec<Vec<FqElement>>,
    pub dimension: usize,
    pub semisimplicity: Semisimplicity,
}

impl WedderburnReport {
    /// Fails with the extension degree needed to make every block a full
    /// matrix algebra over the ground field.
    pub fn require_split(&self) -> Result<()> {
        let degree = self
            .components
            .iter()
            .fold(1usize, |acc, &(_, d)| num_integer::lcm(acc, d));
        if degree == 1 {
            Ok(())
        } else {
            Err(Error::NeedsFieldExtension { degree: degree as u32 })
        }
    }
}

/// Block shapes of a semisimple algebra. Semisimplicity is established by the
/// nil-ideal scan when `q^n <= budget`; otherwise only the center is checked,
/// which the report records.
pub fn wedderburn_components(a: &StructureAlgebra, budget: u64) -> Result<WedderburnReport> {
    let semisimplicity = if a.check_budget(budget).is_ok() {
        if let Some(r) = nilpotent_ideal_bruteforce(a, budget)? {
            return Err(Error::NotSemisimple(format!(
                "nilpotent ideal of dimension {}",
                r.ideal.dim()
            )));
        }
        Semisimplicity::RadicalScan
    } else {
        Semisimplicity::CenterOnly
    };
    wedderburn_unchecked(a, semisimplicity)
}

/// Block shapes of `F_q[G]` with `p` prime to `|G|`.
pub fn group_wedderburn(group: &FiniteGroup, field: &FqField) -> Result<WedderburnReport> {
    if !maschke_predict(group, field.characteristic()) {
        return Err(Error::NotSemisimple(format!(
            "{} divides |G| = {}",
            field.characteristic(),
            group.order()
        )));
    }
    wedderburn_unchecked(&StructureAlgebra::from_group(group, field), Semisimplicity::Maschke)
}

pub(crate) fn wedderburn_unchecked(a: &StructureAlgebra, semisimplicity: Semisimplicity) -> Result<WedderburnReport> {
    let center = algebra_center(a);
    let idems = primitive_central_idempotents(a)?;
    let mut blocks = Vec::with_capacity(idems.len());
    for e in idems {
        let dim = a.span((0..a.dim()).map(|i| a.mul(&a.basis_vector(i), &e))).dim();
        let degree = a.span(center.space.basis().iter().map(|z| a.mul(z, &e))).dim();
        let n = (dim / degree).sqrt();
        if !dim.is_multiple_of(degree) || n * n * degree != dim {
            return Err(Error::NonSquareDimension { dim, degree });
        }
        blocks.push(((n, degree), e));
    }
    blocks.sort();
    let total: usize = blocks.iter().map(|((n, d), _)| n * n * d).sum();
    if total != a.dim() {
        return Err(Error::NotSemisimple(format!(
            "blocks cover {total} of {} dimensions",
            a.dim()
        )));
    }
    let (components, idempotents) = blocks.into_iter().unzip();
    Ok(WedderburnReport {
        components,
        idempotents,
        dimension: a.dim(),
        semisimplicity,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NilpotentIdeal {
    pub ideal: Subspace<FqField>,
    /// Least `k` with `I^k = 0`.
    pub index: usize,
}

fn nilpotency_index(a: &StructureAlgebra, ideal: &Subspace<FqField>) -> Option<usize> {
    let mut power = ideal.clone();
    for k in 1..=a.dim() + 1 {
        if power.dim() == 0 {
            return Some(k);
        }
        power = a.product_space(&power, ideal);
    }
    None
}

/// The largest nilpotent two-sided ideal, found by scanning every element:
/// each nilpotent `x` whose ideal `AxA` is nilpotent is added. `None` when
/// there is no nonzero nilpotent ideal.
pub fn nilpotent_ideal_bruteforce(a: &StructureAlgebra, budget: u64) -> Result<Option<NilpotentIdeal>> {
    a.check_budget(budget)?;
    let n = a.dim() as u64;
    let zero_ideal = a.span([]);
    let mut radical = zero_ideal.clone();
    for x in a.elements() {
        if a.is_zero(&x) || radical.contains(&x) || !a.is_zero(&a.pow(&x, n)) {
            continue;
        }
        let ideal = a.two_sided_ideal(&a.span([x]));
        if nilpotency_index(a, &ideal).is_some() {
            radical = radical.sum(&ideal);
        }
    }
    if radical == zero_ideal {
        return Ok(None);
    }
    let index = nilpotency_index(a, &radical).expect("sums of nilpotent ideals are nilpotent");
    Ok(Some(NilpotentIdeal { ideal: radical, index }))
}

/// `F_p[G]` is semisimple exactly when `p` does not divide `|G|`.
pub fn maschke_predict(group: &FiniteGroup, p: u64) -> bool {
    !(group.order() as u64).is_multiple_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_finite_group, conjugacy_classes, GroupSpec};
    use crate::scalars::fq_extend;

    fn group(spec: GroupSpec) -> FiniteGroup {
        build_finite_group(&spec).unwrap()
    }

    fn algebra(spec: GroupSpec, p: u64) -> StructureAlgebra {
        StructureAlgebra::from_group(&group(spec), &FqField::prime(p).unwrap())
    }

    #[test]
    fn centers_match_class_counts() {
        for (spec, p) in [(GroupSpec::Symmetric { n: 3 }, 5), (GroupSpec::Dihedral { n: 4 }, 3)] {
            let g = group(spec);
            let a = StructureAlgebra::from_group(&g, &FqField::prime(p).unwrap());
            assert_eq!(algebra_center(&a).space.dim(), conjugacy_classes(&g).len());
        }
        let a = algebra(GroupSpec::Cyclic { n: 4 }, 3);
        assert_eq!(algebra_center(&a).space.dim(), 4);
    }

    #[test]
    fn central_idempotents_of_s3_over_f5() {
        let a = algebra(GroupSpec::Symmetric { n: 3 }, 5);
        let idems = primitive_central_idempotents(&a).unwrap();
        assert_eq!(idems.len(), 3);
        let sum = idems.iter().fold(a.zero(), |acc, e| a.add(&acc, e));
        assert_eq!(sum, a.one());
        for (i, e) in idems.iter().enumerate() {
            assert_eq!(a.mul(e, e), *e);
            assert!(a.is_central(e));
            for f in &idems[i + 1..] {
                assert!(a.is_zero(&a.mul(e, f)));
            }
        }
        // oracle: scan the 125-element center for idempotents; 2^3 of them
        let center = algebra_center(&a);
        let central_idems = center
            .algebra
            .elements()
            .filter(|z| center.algebra.mul(z, z) == *z)
            .count();
        assert_eq!(central_idems, 8);
    }

    #[test]
    fn wedderburn_shapes() {
        let a = algebra(GroupSpec::Symmetric { n: 3 }, 5);
        let w = wedderburn_components(&a, 1 << 20).unwrap();
        assert_eq!(w.components, vec![(1, 1), (1, 1), (2, 1)]);
        assert_eq!(w.semisimplicity, Semisimplicity::RadicalScan);
        assert!(w.require_split().is_ok());

        let a = algebra(GroupSpec::Cyclic { n: 3 }, 2);
        let w = wedderburn_components(&a, 1 << 20).unwrap();
        assert_eq!(w.components, vec![(1, 1), (1, 2)]);
        assert_eq!(w.require_split(), Err(Error::NeedsFieldExtension { degree: 2 }));
        let w4 = wedderburn_components(
            &StructureAlgebra::from_group(&group(GroupSpec::Cyclic { n: 3 }), &fq_extend(2, 2).unwrap()),
            1 << 20,
        )
        .unwrap();
        assert_eq!(w4.components, vec![(1, 1), (1, 1), (1, 1)]);

        let t = algebra(GroupSpec::Trivial, 7);
        assert_eq!(wedderburn_components(&t, 1 << 20).unwrap().components, vec![(1, 1)]);

        let g = group(GroupSpec::Dihedral { n: 4 });
        let w = group_wedderburn(&g, &FqField::prime(3).unwrap()).unwrap();
        assert_eq!(w.components, vec![(1, 1), (1, 1), (1, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn modular_cyclic_radical() {
        let a = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        let r = nilpotent_ideal_bruteforce(&a, 1 << 20).unwrap().unwrap();
        assert_eq!(r.ideal.dim(), 2);
        assert_eq!(r.index, 3);
        assert!(matches!(
            wedderburn_components(&a, 1 << 20),
            Err(Error::NotSemisimple(_))
        ));
        assert!(matches!(
            primitive_central_idempotents(&a),
            Err(Error::NotSemisimple(_))
        ));

        let c2 = algebra(GroupSpec::Cyclic { n: 2 }, 2);
        let r = nilpotent_ideal_bruteforce(&c2, 1 << 20).unwrap().unwrap();
        assert_eq!(r.ideal, c2.span([vec![FqElement(1), FqElement(1)]]));
        assert_eq!(r.index, 2);

        assert_eq!(
            nilpotent_ideal_bruteforce(&algebra(GroupSpec::Trivial, 5), 1 << 20).unwrap(),
            None
        );
    }

    #[test]
    fn maschke() {
        assert!(maschke_predict(&group(GroupSpec::Symmetric { n: 3 }), 5));
        assert!(!maschke_predict(&group(GroupSpec::Cyclic { n: 3 }), 3));
        assert!(maschke_predict(&group(GroupSpec::Dihedral { n: 4 }), 3));
    }
}
