//! Finite fields `F_{p^k} = F_p[x]/(m(x))`.
//!
//! Elements are stored as their canonical integer encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where `c_i` are the coefficients of the
//! residue polynomial. The encoding order is also the enumeration order used by
//! every exhaustive scan in the crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::FqPolynomial;
use super::{Field, Ring};
use crate::error::{Error, Result};

/// Largest supported field order.
const MAX_ORDER: u64 = 1 << 40;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of a finite field, by canonical encoding. Only meaningful together
/// with the [`FqField`] it was produced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FqElement(pub u64);

#[derive(Debug)]
struct FqInner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, little-endian, length `k + 1`.
    modulus: Vec<u64>,
}

/// The field `F_{p^k}` together with its defining modulus.
#[derive(Clone)]
pub struct FqField(Arc<FqInner>);

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl FqField {
    /// The prime field `F_p`, with the conventional modulus `x`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::unchecked(p, vec![0, 1]))
    }

    /// `F_p[x]/(modulus)` where `modulus` is little-endian and monic of
    /// degree `k >= 1`. Irreducibility over `F_p` is verified.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = Self::prime(p)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} must be monic of positive degree with coefficients < {p}"
            )));
        }
        if k == 1 {
            // every linear polynomial is irreducible; normalise to the canonical prime field
            return Ok(base);
        }
        let f = FqPolynomial::new(&base, modulus.iter().map(|&c| FqElement(c)).collect());
        if !f.is_irreducible() {
            return Err(Error::InvalidField(format!("{modulus:?} is reducible over F_{p}")));
        }
        Self::check_order(p, k as u32)?;
        Ok(Self::unchecked(p, modulus))
    }

    fn check_order(p: u64, k: u32) -> Result<()> {
        match p.checked_pow(k) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(Error::InvalidField(format!("F_{p}^{k} is too large"))),
        }
    }

    fn unchecked(p: u64, modulus: Vec<u64>) -> Self {
        let k = (modulus.len() - 1) as u32;
        FqField(Arc::new(FqInner {
            p,
            k,
            q: p.pow(k),
            modulus,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Monic modulus, little-endian.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.0.q).map(FqElement)
    }

    /// Coefficients `c_0..c_{k-1}` of the residue polynomial.
    pub fn coeffs(&self, a: FqElement) -> Vec<u64> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.k)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    /// Inverse of [`FqField::coeffs`]; missing trailing coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElement> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::InvalidField(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.k
            )));
        }
        let p = self.0.p as i64;
        let mut enc = 0u64;
        for &c in coeffs.iter().rev() {
            enc = enc * self.0.p + c.rem_euclid(p) as u64;
        }
        Ok(FqElement(enc))
    }

    /// The residue class of `x`, i.e. the image of the polynomial variable.
    pub fn generator(&self) -> FqElement {
        if self.0.k == 1 {
            FqElement(0)
        } else {
            FqElement(self.0.p)
        }
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut base = a;
        let mut acc = FqElement(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a -> a^p`, the generator of `Gal(F_{p^k}/F_p)`.
    pub fn frobenius(&self, a: FqElement) -> FqElement {
        self.pow(a, self.0.p)
    }

    /// Rejects encodings that do not belong to this field.
    pub fn checked(&self, a: FqElement) -> Result<FqElement> {
        if a.0 < self.0.q {
            Ok(a)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn add_digits(&self, a: u64, b: u64, negate_b: bool) -> u64 {
        let p = self.0.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.k {
            let (da, db) = (a % p, b % p);
            let d = if negate_b { (da + p - db) % p } else { (da + db) % p };
            out += d * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let k = self.0.k as usize;
        let ca = self.coeffs(FqElement(a));
        let cb = self.coeffs(FqElement(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.0.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // x^top = x^{top-k} * x^k, and x^k = -sum m_i x^i
            for (t, mi) in (top - k..top).zip(m) {
                prod[t] = (prod[t] + c * ((p - mi) % p)) % p;
            }
            prod[top] = 0;
        }
        let mut enc = 0u64;
        for &c in prod[..k].iter().rev() {
            enc = enc * p + c;
        }
        enc
    }
}

impl Ring for FqField {
    type Elem = FqElement;

    fn zero(&self) -> FqElement {
        FqElement(0)
    }

    fn one(&self) -> FqElement {
        FqElement(1)
    }

    fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        if self.0.k == 1 {
            FqElement((a.0 + b.0) % self.0.p)
        } else {
            FqElement(self.add_digits(a.0, b.0, false))
        }
    }

    fn neg(&self, a: &FqElement) -> FqElement {
        self.sub(&FqElement(0), a)
    }

    fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        if self.0.k == 1 {
            FqElement((a.0 + self.0.p - b.0) % self.0.p)
        } else {
            FqElement(self.add_digits(a.0, b.0, true))
        }
    }

    fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        if a.0 == 0 || b.0 == 0 {
            return FqElement(0);
        }
        if self.0.k == 1 {
            FqElement(a.0 * b.0 % self.0.p)
        } else {
            FqElement(self.mul_poly(a.0, b.0))
        }
    }

    fn is_zero(&self, a: &FqElement) -> bool {
        a.0 == 0
    }

    fn from_i64(&self, n: i64) -> FqElement {
        FqElement(n.rem_euclid(self.0.p as i64) as u64)
    }
}

impl Field for FqField {
    fn inv(&self, a: &FqElement) -> Option<FqElement> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(*a, self.0.q - 2))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FqArithOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
    Frobenius,
}

/// Tagged field operation with range checks, for untrusted (JSON/CLI) inputs.
pub fn fq_arith(field: &FqField, op: FqArithOp, a: FqElement, b: Option<FqElement>) -> Result<FqElement> {
    let a = field.checked(a)?;
    let second = || -> Result<FqElement> {
        field.checked(b.ok_or_else(|| Error::Parse("operation needs two operands".into()))?)
    };
    match op {
        FqArithOp::Add => Ok(field.add(&a, &second()?)),
        FqArithOp::Mul => Ok(field.mul(&a, &second()?)),
        FqArithOp::Inv => field.inv(&a).ok_or(Error::DivisionByZero),
        FqArithOp::Pow(e) => Ok(field.pow(a, e)),
        FqArithOp::Frobenius => Ok(field.frobenius(a)),
    }
}

/// The field with `p^k` elements, defined by the lexicographically lowest
/// monic irreducible polynomial of degree `k` (coefficients compared from
/// `x^{k-1}` down to `x^0`). `k = 1` gives the prime field.
pub fn fq_extend(p: u64, k: u32) -> Result<FqField> {
    let base = FqField::prime(p)?;
    if k == 0 {
        return Err(Error::InvalidField("extension degree must be >= 1".into()));
    }
    if k == 1 {
        return Ok(base);
    }
    FqField::check_order(p, k)?;
    let count = p.pow(k);
    for tail in 0..count {
        // tail encodes c_0 + c_1 p + ... ; increasing tail is lexicographic from the top
        let mut coeffs: Vec<FqElement> = base_digits(tail, p, k as usize);
        coeffs.push(FqElement(1));
        if coeffs[0].0 == 0 {
            continue;
        }
        let f = FqPolynomial::new(&base, coeffs);
        if f.is_irreducible() {
            let modulus = f.coefficients().iter().map(|c| c.0).collect();
            return Ok(FqField::unchecked(p, modulus));
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn base_digits(mut x: u64, p: u64, len: usize) -> Vec<FqElement> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            FqElement(d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f5 = FqField::prime(5).unwrap();
        assert_eq!(f5.inv(&FqElement(2)), Some(FqElement(3)));
        assert_eq!(f5.inv(&FqElement(0)), None);
    }

    #[test]
    fn f9_relation() {
        let f9 = FqField::with_modulus(3, vec![1, 0, 1]).unwrap();
        let x = f9.generator();
        assert_eq!(f9.mul(&x, &x), FqElement(2));
    }

    #[test]
    fn f9_frobenius_is_involution() {
        let f9 = fq_extend(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        for a in f9.elements() {
            assert_eq!(f9.frobenius(f9.frobenius(a)), a);
        }
        // not the identity: x^3 = -x
        assert_eq!(f9.frobenius(f9.generator()), f9.neg(&f9.generator()));
    }

    #[test]
    fn f4_modulus() {
        let f4 = fq_extend(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.order(), 4);
    }

    #[test]
    fn prime_field_through_extend() {
        let f7 = fq_extend(7, 1).unwrap();
        assert!(f7.is_prime_field());
        assert_eq!(f7.modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        assert!(FqField::with_modulus(5, vec![1, 0, 1]).is_err());
        assert!(FqField::prime(6).is_err());
    }

    #[test]
    fn every_element_fixed_by_full_frobenius() {
        for (p, k) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (3, 3),
            (3, 4),
            (5, 2),
            (7, 2),
        ] {
            let f = fq_extend(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order()), a, "F_{p}^{k}");
            }
        }
    }

    #[test]
    fn tagged_ops() {
        let f5 = FqField::prime(5).unwrap();
        assert_eq!(fq_arith(&f5, FqArithOp::Inv, FqElement(2), None), Ok(FqElement(3)));
        assert_eq!(
            fq_arith(&f5, FqArithOp::Inv, FqElement(0), None),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            fq_arith(&f5, FqArithOp::Add, FqElement(7), Some(FqElement(1))),
            Err(Error::FieldMismatch)
        );
        assert_eq!(fq_arith(&f5, FqArithOp::Pow(3), FqElement(2), None), Ok(FqElement(3)));
    }

    #[test]
    fn coeff_round_trip() {
        let f = fq_extend(3, 3).unwrap();
        for a in f.elements() {
            let c: Vec<i64> = f.coeffs(a).iter().map(|&c| c as i64).collect();
            assert_eq!(f.from_coeffs(&c).unwrap(), a);
        }
    }
}
