//! Dense matrices over a ring context, row reduction over fields, nullspaces
//! and canonical subspaces.

use crate::scalars::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(ring: &R, cols: usize, rows: Vec<Vec<R::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            ring: ring.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[R::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let ring = &self.ring;
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !ring.is_zero(b) {
                        let idx = i * out.cols + j;
                        ring.mul_add_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len());
        let ring = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    ring.mul_add_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let field = self.ring.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = field.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ x : M x = 0 }`, one vector per free column, each with a 1
    /// in its free coordinate.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref();
        nullspace_from_rref(&m, &pivots)
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let field = &self.ring;
        let mut aug = Matrix::zeros(field, self.rows, self.cols + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, br.clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

fn nullspace_from_rref<F: Field>(m: &Matrix<F>, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
    let field = &m.ring;
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m.get(r, free));
            }
            v
        })
        .collect()
}

/// Incremental row reduction: rows are pushed one at a time and reduced
/// against the rows kept so far, so tall sparse systems never have to be
/// materialized.
#[derive(Clone, Debug)]
pub struct RowReducer<F: Field> {
    field: F,
    cols: usize,
    /// Normalized rows (pivot entry 1), reduced against all earlier rows.
    basis: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(field: &F, cols: usize) -> Self {
        RowReducer {
            field: field.clone(),
            cols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Returns whether the row was independent of those already pushed.
    pub fn push(&mut self, mut row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.cols);
        let field = &self.field;
        for (pc, b) in &self.basis {
            let factor = row[*pc].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(b) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        let Some(pc) = row.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&row[pc]).unwrap();
        for x in row.iter_mut() {
            *x = field.mul(x, &inv);
        }
        self.basis.push((pc, row));
        true
    }

    pub fn into_matrix(self) -> Matrix<F> {
        let rows = self.basis.into_iter().map(|(_, r)| r).collect();
        Matrix::from_rows(&self.field, self.cols, rows)
    }

    /// Nullspace of the pushed system.
    pub fn nullspace(self) -> Vec<Vec<F::Elem>> {
        self.into_matrix().nullspace()
    }
}

/// Subspace of `F^n`, stored by its reduced row echelon basis, so two
/// subspaces are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    pub fn span(field: &F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut reducer = RowReducer::new(field, ambient);
        for v in vectors {
            reducer.push(v);
            if reducer.rank() == ambient {
                break;
            }
        }
        let mut m = reducer.into_matrix();
        m.rref();
        Subspace {
            field: field.clone(),
            ambient,
            basis: m.row_vectors(),
        }
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Self::span(field, ambient, std::iter::empty())
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::span(field, ambient, Matrix::identity(field, ambient).row_vectors())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut reducer = RowReducer::new(&self.field, self.ambient);
        for b in &self.basis {
            reducer.push(b.clone());
        }
        !reducer.push(v.to_vec())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(
            &self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Annihilator under the standard pairing: `{ w : <v, w> = 0 for v in self }`.
    pub fn orthogonal(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(&self.field, self.ambient);
        }
        let m = Matrix::from_rows(&self.field, self.ambient, self.basis.clone());
        Self::span(&self.field, self.ambient, m.nullspace())
    }

    /// `U ∩ W = (U^⊥ + W^⊥)^⊥`; valid over any field since `^⊥` is the
    /// dual-space annihilator.
    pub fn intersection(&self, other: &Self) -> Self {
        self.orthogonal().sum(&other.orthogonal()).orthogonal()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if self.basis.is_empty() {
            return v.iter().all(|x| self.field.is_zero(x)).then(Vec::new);
        }
        let m = Matrix::from_rows(&self.field, self.ambient, self.basis.clone()).transpose();
        m.solve(v)
    }
}

impl<F: Field> serde::Serialize for Subspace<F>
where
    F::Elem: serde::Serialize,
{
    /// As its canonical basis.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}
