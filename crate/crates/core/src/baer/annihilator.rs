use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalars::{FqElement, FqField};

fn check_dims(a: &StructureAlgebra, s: &[Vec<FqElement>]) -> Result<()> {
    match s.iter().find(|x| x.len() != a.dim()) {
        Some(x) => Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: x.len(),
        }),
        None => Ok(()),
    }
}

/// `{x : x s = 0 for all s in S}`, a left ideal.
pub fn left_annihilator(a: &StructureAlgebra, s: &[Vec<FqElement>]) -> Result<Subspace<FqField>> {
    check_dims(a, s)?;
    // x = sum_i x_i e_i, x s = sum_i x_i (e_i s): the conditions are linear
    // in x with one equation per (s, coordinate k)
    let n = a.dim();
    let mut rows = Vec::new();
    for x in s {
        let m = a.right_products(x).transpose();
        rows.extend(m.row_vectors());
    }
    let null = Matrix::from_rows(a.field(), n, rows).nullspace();
    Ok(Subspace::span(a.field(), n, null))
}

/// `{x : s x = 0 for all s in S}`, a right ideal.
pub fn right_annihilator(a: &StructureAlgebra, s: &[Vec<FqElement>]) -> Result<Subspace<FqField>> {
    check_dims(a, s)?;
    let n = a.dim();
    let mut rows = Vec::new();
    for x in s {
        rows.extend(a.left_products(x).transpose().row_vectors());
    }
    let null = Matrix::from_rows(a.field(), n, rows).nullspace();
    Ok(Subspace::span(a.field(), n, null))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeMode {
    Exhaustive,
    Sampled,
}

/// The left annihilators `l.ann(S)`, each `S` being an intersection of point
/// annihilators, sorted by decreasing dimension then basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorLattice {
    pub members: Vec<Subspace<FqField>>,
    pub mode: LatticeMode,
    /// Elements whose annihilators were computed.
    pub points: u64,
}

type Key = Vec<Vec<FqElement>>;

fn close_under_intersection(a: &StructureAlgebra, points: BTreeSet<Key>) -> Vec<Subspace<FqField>> {
    let mut all: BTreeSet<Key> = points;
    let mut frontier: Vec<Key> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Key> = all.iter().cloned().collect();
        let mut next = Vec::new();
        for f in &frontier {
            let fs = a.span(f.clone());
            for c in &current {
                let key = fs.intersection(&a.span(c.clone())).basis().to_vec();
                if all.insert(key.clone()) {
                    next.push(key);
                }
            }
        }
        frontier = next;
    }
    let mut members: Vec<Subspace<FqField>> = all.into_iter().map(|k| a.span(k)).collect();
    members.sort_by(|x, y| y.dim().cmp(&x.dim()).then_with(|| x.basis().cmp(y.basis())));
    members
}

pub fn annihilator_lattice(a: &StructureAlgebra, budget: u64) -> Result<AnnihilatorLattice> {
    let count = a.check_budget(budget)?;
    let mut points = BTreeSet::new();
    for x in a.elements() {
        points.insert(left_annihilator(a, &[x])?.basis().to_vec());
    }
    Ok(AnnihilatorLattice {
        members: close_under_intersection(a, points),
        mode: LatticeMode::Exhaustive,
        points: count,
    })
}

/// Point annihilators of `samples` uniformly random elements (plus `0` and
/// `1`), closed under intersection. Every member is a genuine annihilator but
/// the lattice may be incomplete.
pub fn sampled_annihilator_lattice(a: &StructureAlgebra, samples: u64, seed: u64) -> Result<AnnihilatorLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = a.field().order();
    let mut points = BTreeSet::new();
    points.insert(left_annihilator(a, &[a.zero()])?.basis().to_vec());
    points.insert(left_annihilator(a, &[a.one()])?.basis().to_vec());
    for _ in 0..samples {
        let x: Vec<FqElement> = (0..a.dim()).map(|_| FqElement(rng.gen_range(0..q))).collect();
        points.insert(left_annihilator(a, &[x])?.basis().to_vec());
    }
    Ok(AnnihilatorLattice {
        members: close_under_intersection(a, points),
        mode: LatticeMode::Sampled,
        points: samples + 2,
    })
}

/// An idempotent `e` with `L = A e`, found by solving `x e = x` for the basis
/// of `L` with `e` ranging over `L`.
pub fn idempotent_generator(a: &StructureAlgebra, l: &Subspace<FqField>) -> Result<Option<Vec<FqElement>>> {
    if l.ambient() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: l.ambient(),
        });
    }
    if !a.is_left_ideal(l) {
        return Err(Error::NotLeftIdeal);
    }
    let f = a.field();
    let basis = l.basis();
    if basis.is_empty() {
        return Ok(Some(a.zero()));
    }
    // unknowns c_j with e = sum_j c_j l_j; equation block for each x = l_i:
    // sum_j c_j (l_i l_j) = l_i
    let d = basis.len();
    let n = a.dim();
    let mut rows = Vec::with_capacity(d * n);
    let mut rhs = Vec::with_capacity(d * n);
    for x in basis {
        let prods: Vec<Vec<FqElement>> = basis.iter().map(|lj| a.mul(x, lj)).collect();
        for k in 0..n {
            rows.push(prods.iter().map(|p| p[k]).collect());
            rhs.push(x[k]);
        }
    }
    let Some(c) = Matrix::from_rows(f, d, rows).solve(&rhs) else {
        return Ok(None);
    };
    let mut e = a.zero();
    for (cj, lj) in c.iter().zip(basis) {
        e = a.add(&e, &a.scale(*cj, lj));
    }
    debug_assert_eq!(a.mul(&e, &e), e);
    Ok(Some(e))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaerCheck {
    pub is_baer: bool,
    pub mode: LatticeMode,
    pub lattice_size: usize,
    /// First annihilator (in lattice order) not generated by an idempotent.
    pub witness: Option<Vec<Vec<FqElement>>>,
    /// Idempotent generator of each lattice member, in lattice order, while
    /// the check succeeds.
    pub generators: Vec<Vec<FqElement>>,
}

pub fn baer_check_lattice(a: &StructureAlgebra, lattice: &AnnihilatorLattice) -> Result<BaerCheck> {
    let mut generators = Vec::new();
    for l in &lattice.members {
        match idempotent_generator(a, l)? {
            Some(e) => generators.push(e),
            None => {
                return Ok(BaerCheck {
                    is_baer: false,
                    mode: lattice.mode,
                    lattice_size: lattice.members.len(),
                    witness: Some(l.basis().to_vec()),
                    generators: Vec::new(),
                })
            }
        }
    }
    Ok(BaerCheck {
        is_baer: true,
        mode: lattice.mode,
        lattice_size: lattice.members.len(),
        witness: None,
        generators,
    })
}

/// Whether every left annihilator is generated by an idempotent, checked on
/// the exhaustive lattice.
pub fn is_baer(a: &StructureAlgebra, budget: u64) -> Result<BaerCheck> {
    baer_check_lattice(a, &annihilator_lattice(a, budget)?)
}

/// Random-element variant of [`is_baer`]: a `false` is exact (the witness is
/// a real annihilator), a `true` is only evidence.
pub fn is_baer_sampled(a: &StructureAlgebra, samples: u64, seed: u64) -> Result<BaerCheck> {
    baer_check_lattice(a, &sampled_annihilator_lattice(a, samples, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_finite_group, GroupSpec};

    fn algebra(spec: GroupSpec, p: u64) -> StructureAlgebra {
        StructureAlgebra::from_group(&build_finite_group(&spec).unwrap(), &FqField::prime(p).unwrap())
    }

    /// `t - 1` and `(t - 1)^2` in `F_3[C_3]`, `t` the generator.
    fn radical_basis(a: &StructureAlgebra) -> (Vec<FqElement>, Vec<FqElement>) {
        let t = a.basis_vector(1);
        let u = a.sub(&t, &a.one());
        let u2 = a.mul(&u, &u);
        (u, u2)
    }

    #[test]
    fn trivial_annihilators() {
        let a = algebra(GroupSpec::Symmetric { n: 3 }, 5);
        assert_eq!(left_annihilator(&a, &[a.one()]).unwrap().dim(), 0);
        assert_eq!(left_annihilator(&a, &[a.zero()]).unwrap().dim(), 6);
        assert_eq!(left_annihilator(&a, &[]).unwrap().dim(), 6);
        assert!(left_annihilator(&a, &[vec![FqElement(0); 2]]).is_err());
    }

    #[test]
    fn annihilator_in_modular_cyclic_algebra() {
        let a = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        let (u, u2) = radical_basis(&a);
        let ann = left_annihilator(&a, std::slice::from_ref(&u2)).unwrap();
        assert_eq!(ann, a.span([u.clone(), u2.clone()]));
        // brute-force oracle over all 27 elements
        let brute: Vec<_> = a.elements().filter(|x| a.is_zero(&a.mul(x, &u2))).collect();
        assert_eq!(brute.len(), 9);
        assert!(brute.iter().all(|x| ann.contains(x)));
        assert_eq!(right_annihilator(&a, &[u2]).unwrap(), ann);
    }

    #[test]
    fn lattices() {
        let a = algebra(GroupSpec::Cyclic { n: 2 }, 5);
        let lat = annihilator_lattice(&a, 1 << 20).unwrap();
        assert_eq!(lat.members.len(), 4);
        assert_eq!(lat.mode, LatticeMode::Exhaustive);

        let a = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        let (u, u2) = radical_basis(&a);
        let lat = annihilator_lattice(&a, 1 << 20).unwrap();
        assert!(lat.members.contains(&a.span([u, u2])));
        assert_eq!(lat.members.len(), 4);

        let a = algebra(GroupSpec::Trivial, 7);
        assert_eq!(annihilator_lattice(&a, 1 << 20).unwrap().members.len(), 2);
        assert!(annihilator_lattice(&algebra(GroupSpec::Symmetric { n: 3 }, 5), 1000).is_err());
    }

    #[test]
    fn idempotent_generators() {
        let a = algebra(GroupSpec::Symmetric { n: 3 }, 5);
        // e = (1 + (1 2)) / 2
        let t = a.basis_vector(1);
        let half = FqElement(3);
        let e = a.scale(half, &a.add(&a.one(), &t));
        assert_eq!(a.mul(&e, &e), e);
        let l = a.ideal_side(&a.span([e.clone()]), true);
        let g = idempotent_generator(&a, &l).unwrap().unwrap();
        assert_eq!(a.mul(&g, &g), g);
        assert_eq!(a.ideal_side(&a.span([g]), true), l);

        assert_eq!(idempotent_generator(&a, &a.span([])).unwrap(), Some(a.zero()));
        let right_only = a.span([e.clone()]);
        assert_eq!(idempotent_generator(&a, &right_only), Err(Error::NotLeftIdeal));

        let c = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        let (u, u2) = radical_basis(&c);
        assert_eq!(idempotent_generator(&c, &c.span([u, u2])).unwrap(), None);
    }

    #[test]
    fn baer_verdicts() {
        let a = algebra(GroupSpec::Cyclic { n: 3 }, 3);
        let r = is_baer(&a, 1 << 20).unwrap();
        assert!(!r.is_baer);
        let (u, u2) = radical_basis(&a);
        assert_eq!(r.witness, Some(a.span([u, u2]).basis().to_vec()));

        let f4 = crate::scalars::fq_extend(2, 2).unwrap();
        let f = StructureAlgebra::from_group(&build_finite_group(&GroupSpec::Trivial).unwrap(), &f4);
        assert!(is_baer(&f, 1 << 20).unwrap().is_baer);

        let s = is_baer_sampled(&algebra(GroupSpec::Cyclic { n: 3 }, 3), 50, 7).unwrap();
        assert_eq!(s.mode, LatticeMode::Sampled);
    }
}
