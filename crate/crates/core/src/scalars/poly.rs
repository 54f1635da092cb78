//! Dense univariate polynomials over `F_q` and deterministic Berlekamp
//! factorization.

use std::cmp::Ordering;
use std::fmt;

use super::fq::{FqElement, FqField};
use super::{Field, Ring};
use crate::linalg::Matrix;

/// Polynomial over `F_q`, little-endian, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPolynomial {
    field: FqField,
    coeffs: Vec<FqElement>,
}

impl fmt::Debug for FqPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FqPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if self.field.is_prime_field() {
                c.0.to_string()
            } else {
                format!("{:?}", self.field.coeffs(*c))
            };
            match (i, c.0 == 1) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FqPolynomial {
    pub fn new(field: &FqField, mut coeffs: Vec<FqElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.0 == 0) {
            coeffs.pop();
        }
        FqPolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// Convenience constructor from small integer coefficients (prime-field
    /// images), little-endian.
    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &FqField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FqField) -> Self {
        Self::constant(field, FqElement(1))
    }

    pub fn constant(field: &FqField, c: FqElement) -> Self {
        Self::new(field, vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(field: &FqField, root: FqElement) -> Self {
        Self::new(field, vec![field.neg(&root), FqElement(1)])
    }

    pub fn x(field: &FqField) -> Self {
        Self::new(field, vec![FqElement(0), FqElement(1)])
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coefficients(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].0 == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FqElement {
        self.coeffs.last().copied().unwrap_or(FqElement(0))
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).copied().unwrap_or(FqElement(0))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: FqElement) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, &c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FqElement(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                f.mul_add_assign(&mut out[i + j], a, b);
            }
        }
        Self::new(f, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(&divisor.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![FqElement(0); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = f.mul(&rem[top], &lead_inv);
            if c.0 == 0 {
                continue;
            }
            quot[top - d] = c;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let t = top - d + i;
                rem[t] = f.sub(&rem[t], &f.mul(&c, b));
            }
        }
        rem.truncate(d);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g = gcd`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let field = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero(field));
        let (mut t0, mut t1) = (Self::zero(field), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = field.inv(&r0.leading()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: FqElement) -> FqElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FqElement(0), |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Irreducible over `F_q`: squarefree with a one-dimensional Berlekamp
    /// kernel.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let f = self.monic();
                f.gcd(&f.derivative()).is_one() && berlekamp_kernel(&f).len() == 1
            }
        }
    }

    fn pth_root(&self) -> Self {
        let field = &self.field;
        let p = field.characteristic() as usize;
        let root_exp = field.order() / field.characteristic();
        Self::new(
            field,
            self.coeffs.iter().step_by(p).map(|c| field.pow(*c, root_exp)).collect(),
        )
    }

    /// Canonical order: degree first, then coefficients from the top.
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Basis of `{ g : deg g < deg f, g^q = g mod f }` as polynomials.
fn berlekamp_kernel(f: &FqPolynomial) -> Vec<FqPolynomial> {
    let field = f.field();
    let n = f.degree().unwrap();
    let q = field.order();
    // column i holds x^{iq} - x^i mod f
    let xq = FqPolynomial::x(field).pow_mod(q, f);
    let mut m = Matrix::zeros(field, n, n);
    let mut power = FqPolynomial::one(field);
    for i in 0..n {
        let col = power.sub(&FqPolynomial::new(field, {
            let mut v = vec![FqElement(0); i + 1];
            v[i] = FqElement(1);
            v
        }));
        for r in 0..n {
            m.set(r, i, col.coeff(r));
        }
        power = power.mul(&xq).rem(f);
    }
    m.nullspace().into_iter().map(|v| FqPolynomial::new(field, v)).collect()
}

/// Squarefree decomposition `f = prod g_i^{m_i}` of a monic polynomial.
fn squarefree_decomposition(f: &FqPolynomial) -> Vec<(FqPolynomial, u32)> {
    let field = f.field();
    let p = field.characteristic() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root().monic()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into its irreducible factors.
fn berlekamp_split(f: &FqPolynomial) -> Vec<FqPolynomial> {
    if f.degree().unwrap_or(0) <= 1 {
        return vec![f.clone()];
    }
    let field = f.field();
    let kernel = berlekamp_kernel(f);
    let r = kernel.len();
    let mut factors = vec![f.clone()];
    for v in kernel.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
        if factors.len() == r {
            break;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree().unwrap() <= 1 {
                next.push(u);
                continue;
            }
            let mut rest = u;
            for s in field.elements() {
                if rest.degree().unwrap() <= 1 {
                    break;
                }
                let g = rest.gcd(&v.sub(&FqPolynomial::constant(field, s)));
                if !g.is_one() && g.degree() != rest.degree() {
                    rest = rest.div_rem(&g).0.monic();
                    next.push(g);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors
}

/// Factorization into monic irreducible factors with multiplicities, sorted
/// canonically (degree, then coefficients from the top). The product equals
/// `f` up to its leading coefficient.
pub fn poly_factor(f: &FqPolynomial) -> Vec<(FqPolynomial, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(&f.monic()) {
        for g in berlekamp_split(&part) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}
