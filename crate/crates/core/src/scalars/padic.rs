//! Elements of `Q_p` at capped relative precision.
//!
//! A nonzero value is `p^v * u` with `u` a unit known modulo `p^N`; `N` is the
//! number of significant digits the value carries. Products keep the smaller
//! `N` of their operands. Sums are known to the smaller absolute precision of
//! their operands, so cancellation of leading digits lowers `N` of the result.
//! A sum that cancels to zero within its known digits is the zero element, and
//! remembers the absolute precision to which it is known.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fq::{is_prime, FqElement, FqField};
use super::{Field, Ring, Valued};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 32;

/// Context: the prime `p` and the relative precision given to new values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicField {
    p: u64,
    precision: u32,
}

impl PadicField {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidField("p-adic precision must be positive".into()));
        }
        Ok(PadicField { p, precision })
    }

    pub fn with_default_precision(p: u64) -> Result<Self> {
        Self::new(p, DEFAULT_PRECISION)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn integer(&self, n: i64) -> PadicScalar {
        PadicScalar::from_integer(self.p, self.precision, &BigInt::from(n))
    }

    /// `num / den` for integers with `den != 0`.
    pub fn rational(&self, num: i64, den: i64) -> Result<PadicScalar> {
        PadicScalar::from_rational(self.p, self.precision, &BigRational::new(num.into(), den.into()))
    }

    /// `p^k`.
    pub fn prime_power(&self, k: i64) -> PadicScalar {
        PadicScalar {
            p: self.p,
            repr: Repr::Nonzero {
                val: k,
                unit: BigUint::one(),
                prec: self.precision,
            },
        }
    }

    /// The residue field `F_p`.
    pub fn residue_field(&self) -> FqField {
        FqField::prime(self.p).expect("context prime was validated")
    }
}

#[derive(Clone, Debug)]
enum Repr {
    /// Zero known to absolute precision `p^cap`; `None` is an exact zero.
    Zero {
        cap: Option<i64>,
    },
    Nonzero {
        val: i64,
        unit: BigUint,
        prec: u32,
    },
}

#[derive(Clone, Debug)]
pub struct PadicScalar {
    p: u64,
    repr: Repr,
}

fn p_pow(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// Splits `n != 0` into `(v, n / p^v)`.
fn split_valuation(p: u64, n: &BigUint) -> (u32, BigUint) {
    let pb = BigUint::from(p);
    let mut v = 0;
    let mut n = n.clone();
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    (v, n)
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_biguint()
}

impl PadicScalar {
    pub fn zero(p: u64) -> Self {
        PadicScalar {
            p,
            repr: Repr::Zero { cap: None },
        }
    }

    pub fn from_integer(p: u64, precision: u32, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(p);
        }
        let modulus = p_pow(p, precision);
        let (v, u) = split_valuation(p, n.magnitude());
        let mut unit = u % &modulus;
        if n.is_negative() {
            unit = (&modulus - unit) % &modulus;
        }
        PadicScalar {
            p,
            repr: Repr::Nonzero {
                val: v as i64,
                unit,
                prec: precision,
            },
        }
    }

    pub fn from_rational(p: u64, precision: u32, x: &BigRational) -> Result<Self> {
        if x.is_zero() {
            return Ok(Self::zero(p));
        }
        let num = Self::from_integer(p, precision, x.numer());
        let den = Self::from_integer(p, precision, x.denom());
        Ok(num.mul(&den.inv()?))
    }

    /// `p^val * unit` where `unit` is taken modulo `p^precision` and must be
    /// prime to `p`.
    pub fn from_parts(p: u64, precision: u32, val: i64, unit: BigUint) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidField("p-adic precision must be positive".into()));
        }
        if (&unit % p).is_zero() {
            return Err(Error::Parse(format!("unit {unit} is divisible by {p}")));
        }
        Ok(PadicScalar {
            p,
            repr: Repr::Nonzero {
                val,
                unit: unit % p_pow(p, precision),
                prec: precision,
            },
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    /// `None` encodes `+inf`.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero { .. } => None,
            Repr::Nonzero { val, .. } => Some(val),
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Nonzero { unit, .. } => Some(unit),
        }
    }

    /// Significant digits carried; `None` for zero.
    pub fn precision(&self) -> Option<u32> {
        match self.repr {
            Repr::Zero { .. } => None,
            Repr::Nonzero { prec, .. } => Some(prec),
        }
    }

    /// Exponent `A` such that the value is known modulo `p^A`; `None` when exact
    /// (only the exact zero).
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero { cap } => cap,
            Repr::Nonzero { val, prec, .. } => Some(val + prec as i64),
        }
    }

    /// `|x| = p^{-v}`, and `|0| = 0`.
    pub fn norm(&self) -> BigRational {
        match self.valuation() {
            None => BigRational::zero(),
            Some(v) => {
                let pv = BigInt::from(self.p).pow(v.unsigned_abs() as u32);
                if v >= 0 {
                    BigRational::new(BigInt::one(), pv)
                } else {
                    BigRational::from_integer(pv)
                }
            }
        }
    }

    /// Compares `|self|` with `|other|` through valuations.
    pub fn cmp_norm(&self, other: &Self) -> Ordering {
        match (self.valuation(), other.valuation()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Nonzero { val, unit, prec } => {
                let m = p_pow(self.p, *prec);
                PadicScalar {
                    p: self.p,
                    repr: Repr::Nonzero {
                        val: *val,
                        unit: (&m - unit) % &m,
                        prec: *prec,
                    },
                }
            }
        }
    }

    fn truncated_to(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::Zero { cap } => PadicScalar {
                p: self.p,
                repr: Repr::Zero {
                    cap: Some(cap.map_or(abs, |c| c.min(abs))),
                },
            },
            Repr::Nonzero { val, unit, prec } => {
                if abs <= *val {
                    return PadicScalar {
                        p: self.p,
                        repr: Repr::Zero { cap: Some(abs) },
                    };
                }
                let rel = (*prec as i64).min(abs - val) as u32;
                PadicScalar {
                    p: self.p,
                    repr: Repr::Nonzero {
                        val: *val,
                        unit: unit % p_pow(self.p, rel),
                        prec: rel,
                    },
                }
            }
        }
    }

    fn add_same_prime(&self, other: &Self) -> Self {
        let (x, y) = match (&self.repr, &other.repr) {
            (Repr::Zero { cap: None }, _) => return other.clone(),
            (_, Repr::Zero { cap: None }) => return self.clone(),
            (Repr::Zero { cap: Some(c) }, _) => return other.truncated_to(*c),
            (_, Repr::Zero { cap: Some(c) }) => return self.truncated_to(*c),
            _ if self.valuation() <= other.valuation() => (self, other),
            _ => (other, self),
        };
        let (
            Repr::Nonzero {
                val: vx,
                unit: ux,
                prec: px,
            },
            Repr::Nonzero {
                val: vy,
                unit: uy,
                prec: py,
            },
        ) = (&x.repr, &y.repr)
        else {
            unreachable!()
        };
        let abs = (vx + *px as i64).min(vy + *py as i64);
        let rel = (abs - vx) as u32;
        let m = p_pow(self.p, rel);
        let shift = (vy - vx) as u64;
        let mut s = ux % &m;
        if shift < rel as u64 {
            s = (s + uy * p_pow(self.p, shift as u32)) % &m;
        }
        if s.is_zero() {
            return PadicScalar {
                p: self.p,
                repr: Repr::Zero { cap: Some(abs) },
            };
        }
        let (c, unit) = split_valuation(self.p, &s);
        PadicScalar {
            p: self.p,
            repr: Repr::Nonzero {
                val: vx + c as i64,
                unit,
                prec: rel - c,
            },
        }
    }

    fn mul_same_prime(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Zero { cap: None }, _) | (_, Repr::Zero { cap: None }) => Self::zero(self.p),
            (Repr::Zero { cap: Some(a) }, Repr::Zero { cap: Some(b) }) => PadicScalar {
                p: self.p,
                repr: Repr::Zero { cap: Some(a + b) },
            },
            (Repr::Zero { cap: Some(c) }, Repr::Nonzero { val, .. })
            | (Repr::Nonzero { val, .. }, Repr::Zero { cap: Some(c) }) => PadicScalar {
                p: self.p,
                repr: Repr::Zero { cap: Some(c + val) },
            },
            (
                Repr::Nonzero {
                    val: va,
                    unit: ua,
                    prec: pa,
                },
                Repr::Nonzero {
                    val: vb,
                    unit: ub,
                    prec: pb,
                },
            ) => {
                let prec = (*pa).min(*pb);
                PadicScalar {
                    p: self.p,
                    repr: Repr::Nonzero {
                        val: va + vb,
                        unit: (ua * ub) % p_pow(self.p, prec),
                        prec,
                    },
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(self.add_same_prime(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(self.mul_same_prime(other))
    }

    /// Panics on mismatched primes; see [`padic_arith`] for the checked form.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("p-adic operands with different primes")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("p-adic operands with different primes")
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero { .. } => Err(Error::DivisionByZero),
            Repr::Nonzero { val, unit, prec } => {
                let m = p_pow(self.p, *prec);
                let inv = mod_inverse(unit, &m).expect("units are invertible");
                Ok(PadicScalar {
                    p: self.p,
                    repr: Repr::Nonzero {
                        val: -val,
                        unit: inv,
                        prec: *prec,
                    },
                })
            }
        }
    }

    /// The image in the residue field `F_p` of an element of `Z_p`.
    pub fn reduce(&self, target: &FqField) -> Result<FqElement> {
        if !target.is_prime_field() || target.characteristic() != self.p {
            return Err(Error::FieldMismatch);
        }
        match &self.repr {
            Repr::Zero { cap: Some(c) } if *c < 1 => Err(Error::PrecisionExhausted(format!(
                "zero known only modulo {}^{c}; its residue is undetermined",
                self.p
            ))),
            Repr::Zero { .. } => Ok(FqElement(0)),
            Repr::Nonzero { val, .. } if *val < 0 => Err(Error::NegativeValuation(*val)),
            Repr::Nonzero { val, .. } if *val > 0 => Ok(FqElement(0)),
            Repr::Nonzero { unit, .. } => Ok(FqElement((unit % self.p).to_u64().unwrap())),
        }
    }

    pub fn to_literal(&self) -> PadicLiteral {
        PadicLiteral {
            p: self.p,
            val: self.valuation(),
            unit: self.unit().map(|u| u.to_string()),
            prec: self.precision(),
        }
    }
}

/// Two values are equal when they agree to the smaller of their precisions.
impl PartialEq for PadicScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Zero { .. }, Repr::Zero { .. }) => true,
            (
                Repr::Nonzero {
                    val: va,
                    unit: ua,
                    prec: pa,
                },
                Repr::Nonzero {
                    val: vb,
                    unit: ub,
                    prec: pb,
                },
            ) => {
                let m = p_pow(self.p, (*pa).min(*pb));
                va == vb && ua % &m == ub % &m
            }
            _ => false,
        }
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { cap: None } => write!(f, "0"),
            Repr::Zero { cap: Some(c) } => write!(f, "O({}^{c})", self.p),
            Repr::Nonzero { val: 0, unit, prec } => write!(f, "{unit} + O({}^{prec})", self.p),
            Repr::Nonzero { val, unit, prec } => {
                write!(f, "{}^{val} * ({unit} + O({}^{prec}))", self.p, self.p)
            }
        }
    }
}

impl Ring for PadicField {
    type Elem = PadicScalar;

    fn zero(&self) -> PadicScalar {
        PadicScalar::zero(self.p)
    }

    fn one(&self) -> PadicScalar {
        self.integer(1)
    }

    fn add(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        a.add(b)
    }

    fn neg(&self, a: &PadicScalar) -> PadicScalar {
        a.neg()
    }

    fn mul(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        a.mul(b)
    }

    fn is_zero(&self, a: &PadicScalar) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> PadicScalar {
        self.integer(n)
    }
}

impl Field for PadicField {
    fn inv(&self, a: &PadicScalar) -> Option<PadicScalar> {
        a.inv().ok()
    }
}

impl Valued for PadicField {
    fn prime(&self) -> u64 {
        self.p
    }

    fn valuation(&self, a: &PadicScalar) -> Option<i64> {
        a.valuation()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PadicArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// Checked arithmetic front door: mismatched primes, missing operands and
/// division by zero are reported as errors.
pub fn padic_arith(op: PadicArithOp, x: &PadicScalar, y: Option<&PadicScalar>) -> Result<PadicScalar> {
    let second = || y.ok_or_else(|| Error::Parse(format!("{op:?} needs two operands")));
    match op {
        PadicArithOp::Add => x.try_add(second()?),
        PadicArithOp::Sub => x.try_add(&second()?.neg()),
        PadicArithOp::Mul => x.try_mul(second()?),
        PadicArithOp::Inv => x.inv(),
        PadicArithOp::Neg => Ok(x.neg()),
    }
}

/// JSON form `{"p":5,"val":2,"unit":"13","prec":32}`; zero has `val: null`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicLiteral {
    pub p: u64,
    pub val: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<u32>,
}

impl PadicLiteral {
    pub fn to_scalar(&self) -> Result<PadicScalar> {
        let prec = self.prec.unwrap_or(DEFAULT_PRECISION);
        match (self.val, &self.unit) {
            (None, _) => {
                if !is_prime(self.p) {
                    return Err(Error::NotPrime(self.p));
                }
                Ok(PadicScalar::zero(self.p))
            }
            (Some(v), unit) => {
                let unit = match unit {
                    Some(s) => s
                        .parse::<BigUint>()
                        .map_err(|e| Error::Parse(format!("unit {s:?}: {e}")))?,
                    None => BigUint::one(),
                };
                PadicScalar::from_parts(self.p, prec, v, unit)
            }
        }
    }
}
