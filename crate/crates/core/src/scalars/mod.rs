//! Scalar domains: `Q_p` at fixed relative precision, finite fields `F_{p^k}`,
//! polynomials over them, and exact rationals.
//!
//! Every domain is described by a *context* value implementing [`Ring`]
//! (the prime, the precision, the field modulus...) and the elements are plain
//! values operated on through that context. The group-algebra, operator and
//! linear-algebra layers are generic over the context, so the same code runs
//! over `F_q`, `Q_p` and `Q`.

mod exact;
mod fq;
mod padic;
mod poly;

pub use exact::Exact;
pub use fq::{fq_arith, fq_extend, FqArithOp, FqElement, FqField};
pub use padic::{padic_arith, PadicArithOp, PadicField, PadicLiteral, PadicScalar};
pub use poly::{poly_factor, FqPolynomial};

use std::fmt::Debug;

/// A commutative unital ring described by a runtime context.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer under the canonical map `Z -> R`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b| self.mul(a, &b))
    }
}

/// A ring carrying a discrete valuation to a prime `p`, so that every element
/// has an ultrametric absolute value `p^{-v}`.
pub trait Valued: Ring {
    fn prime(&self) -> u64;
    /// `None` encodes `+inf` (the element is zero).
    fn valuation(&self, a: &Self::Elem) -> Option<i64>;
}
