use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{Matrix, Subspace};
use crate::scalars::{fq_extend, FqElement, FqField, Ring};

/// Largest dimension for which associativity is verified on every basis
/// triple at construction.
pub const ASSOCIATIVITY_CHECK_DIM: usize = 48;

/// Default cap on `q^n` for exhaustive element scans.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Finite-dimensional associative unital algebra over `F_q`, given by
/// structure constants `e_i e_j = sum_k c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureAlgebra {
    field: FqField,
    dim: usize,
    /// `c^k_{ij}` at `(i * dim + j) * dim + k`.
    table: Vec<FqElement>,
    unit: Vec<FqElement>,
    labels: Option<Vec<String>>,
}

impl StructureAlgebra {
    pub fn new(field: &FqField, dim: usize, table: Vec<FqElement>, unit: Vec<FqElement>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if table.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: table.len(),
            });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: unit.len(),
            });
        }
        for &c in table.iter().chain(&unit) {
            field.checked(c)?;
        }
        let a = StructureAlgebra {
            field: field.clone(),
            dim,
            table,
            unit,
            labels: None,
        };
        if dim <= ASSOCIATIVITY_CHECK_DIM {
            a.check_associative()?;
        }
        for i in 0..dim {
            let e = a.basis_vector(i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit does not fix basis element {i}")));
            }
        }
        Ok(a)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        let products: Vec<Vec<FqElement>> = (0..n * n).map(|ij| self.table[ij * n..(ij + 1) * n].to_vec()).collect();
        for i in 0..n {
            for j in 0..n {
                let eij = &products[i * n + j];
                for k in 0..n {
                    let left = self.mul(eij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &products[j * n + k]);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The group algebra `F_q[G]`, basis indexed by group elements.
    pub fn from_group(group: &FiniteGroup, field: &FqField) -> Self {
        let n = group.order();
        let mut table = vec![FqElement(0); n * n * n];
        for i in 0..n {
            for j in 0..n {
                table[(i * n + j) * n + group.op(i, j)] = field.one();
            }
        }
        let mut unit = vec![FqElement(0); n];
        unit[0] = field.one();
        StructureAlgebra {
            field: field.clone(),
            dim: n,
            table,
            unit,
            labels: Some(group.labels().to_vec()),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> FqElement {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn one(&self) -> Vec<FqElement> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<FqElement> {
        vec![FqElement(0); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FqElement> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn is_zero(&self, x: &[FqElement]) -> bool {
        x.iter().all(|c| c.0 == 0)
    }

    pub fn add(&self, x: &[FqElement], y: &[FqElement]) -> Vec<FqElement> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[FqElement], y: &[FqElement]) -> Vec<FqElement> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: FqElement, x: &[FqElement]) -> Vec<FqElement> {
        x.iter().map(|a| self.field.mul(&c, a)).collect()
    }

    pub fn mul(&self, x: &[FqElement], y: &[FqElement]) -> Vec<FqElement> {
        let n = self.dim;
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.0 == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.0 == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                let row = &self.table[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, t) in out.iter_mut().zip(row) {
                    if t.0 != 0 {
                        f.mul_add_assign(o, &c, t);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[FqElement], mut e: u64) -> Vec<FqElement> {
        let mut base = x.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes(&self, x: &[FqElement], y: &[FqElement]) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.commutes(&self.basis_vector(i), &self.basis_vector(j))))
    }

    pub fn is_central(&self, z: &[FqElement]) -> bool {
        (0..self.dim).all(|i| self.commutes(z, &self.basis_vector(i)))
    }

    /// `q^n`, or `None` if it does not fit in `u64`.
    pub fn element_count(&self) -> Option<u64> {
        self.field.order().checked_pow(self.dim as u32)
    }

    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        match self.element_count() {
            Some(c) if c <= budget => Ok(c),
            c => Err(Error::BudgetExceeded {
                required: c.map_or_else(|| format!("{}^{}", self.field.order(), self.dim), |c| c.to_string()),
                budget,
            }),
        }
    }

    /// Every element, in lexicographic coordinate order with the first
    /// coordinate most significant.
    pub fn elements(&self) -> impl Iterator<Item = Vec<FqElement>> + '_ {
        let q = self.field.order();
        let count = self.element_count().expect("callers check the budget first");
        (0..count).map(move |mut idx| {
            let mut v = vec![FqElement(0); self.dim];
            for c in v.iter_mut().rev() {
                *c = FqElement(idx % q);
                idx /= q;
            }
            v
        })
    }

    /// Elements of a subspace by coordinates in its basis, same ordering.
    pub fn subspace_elements<'a>(&'a self, s: &'a Subspace<FqField>) -> impl Iterator<Item = Vec<FqElement>> + 'a {
        let q = self.field.order();
        let d = s.dim();
        let count = q.checked_pow(d as u32).expect("callers check the budget first");
        (0..count).map(move |mut idx| {
            let mut coords = vec![FqElement(0); d];
            for c in coords.iter_mut().rev() {
                *c = FqElement(idx % q);
                idx /= q;
            }
            let mut v = self.zero();
            for (c, b) in coords.iter().zip(s.basis()) {
                if c.0 != 0 {
                    v = self.add(&v, &self.scale(*c, b));
                }
            }
            v
        })
    }

    /// Matrix whose rows are `x e_i`: the left null vectors of this matrix
    /// are the `y` with `y x = 0`.
    pub(crate) fn right_products(&self, x: &[FqElement]) -> Matrix<FqField> {
        let rows = (0..self.dim).map(|i| self.mul(&self.basis_vector(i), x)).collect();
        Matrix::from_rows(&self.field, self.dim, rows)
    }

    pub(crate) fn left_products(&self, x: &[FqElement]) -> Matrix<FqField> {
        let rows = (0..self.dim).map(|i| self.mul(x, &self.basis_vector(i))).collect();
        Matrix::from_rows(&self.field, self.dim, rows)
    }

    pub fn full_space(&self) -> Subspace<FqField> {
        Subspace::full(&self.field, self.dim)
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Vec<FqElement>>) -> Subspace<FqField> {
        Subspace::span(&self.field, self.dim, vectors)
    }

    /// `A S` (left ideal generated) when `left`, else `S A`.
    pub fn ideal_side(&self, s: &Subspace<FqField>, left: bool) -> Subspace<FqField> {
        let mut vs = Vec::new();
        for b in s.basis() {
            for i in 0..self.dim {
                let e = self.basis_vector(i);
                vs.push(if left { self.mul(&e, b) } else { self.mul(b, &e) });
            }
        }
        self.span(vs)
    }

    /// `A S A`
    pub fn two_sided_ideal(&self, s: &Subspace<FqField>) -> Subspace<FqField> {
        self.ideal_side(&self.ideal_side(s, true), false)
    }

    pub fn is_left_ideal(&self, s: &Subspace<FqField>) -> bool {
        s.contains_subspace(&self.ideal_side(s, true))
    }

    /// Span of all products `x y` with `x` in `s`, `y` in `t`.
    pub fn product_space(&self, s: &Subspace<FqField>, t: &Subspace<FqField>) -> Subspace<FqField> {
        let mut vs = Vec::new();
        for x in s.basis() {
            for y in t.basis() {
                vs.push(self.mul(x, y));
            }
        }
        self.span(vs)
    }

    /// Readable form such as `2*(1 2) + (1 2 3)`, using basis labels when known.
    pub fn format_element(&self, x: &[FqElement]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 != 0)
            .map(|(i, c)| {
                let name = match &self.labels {
                    Some(l) => l[i].clone(),
                    None => format!("e{i}"),
                };
                if c.0 == 1 {
                    name
                } else {
                    format!("{}*{name}", c.0)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        let n = self.dim;
        AlgebraSpec {
            field: FieldSpec {
                p: self.field.characteristic(),
                k: self.field.degree(),
            },
            dim: n,
            table: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| self.structure_constant(i, j, k).0).collect())
                        .collect()
                })
                .collect(),
            unit: self.unit.iter().map(|c| c.0).collect(),
            labels: self.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn build(&self) -> Result<FqField> {
        fq_extend(self.p, self.k)
    }
}

/// JSON form of a structure-constant algebra: `table[i][j]` lists the
/// coordinates of `e_i e_j`; field elements use their integer encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub table: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<StructureAlgebra> {
        let field = self.field.build()?;
        let n = self.dim;
        let shape_ok = self.table.len() == n
            && self
                .table
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(Error::InvalidAlgebra(format!("table must be {n} x {n} x {n}")));
        }
        let flat = self.table.iter().flatten().flatten().map(|&c| FqElement(c)).collect();
        let unit = self.unit.iter().map(|&c| FqElement(c)).collect();
        let a = StructureAlgebra::new(&field, n, flat, unit)?;
        match &self.labels {
            Some(l) => a.with_labels(l.clone()),
            None => Ok(a),
        }
    }
}
