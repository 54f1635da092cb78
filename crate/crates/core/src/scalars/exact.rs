use std::fmt::Debug;
use std::marker::PhantomData;

use num_integer::Integer;
use num_rational::Ratio;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

use super::{Field, Ring};

/// Context for types that already implement exact arithmetic through
/// `num-traits` (machine integers, big integers, `Ratio<_>`).
pub struct Exact<T>(PhantomData<T>);

impl<T> Exact<T> {
    pub const fn new() -> Self {
        Exact(PhantomData)
    }
}

impl<T> Default for Exact<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Exact<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Exact<T> {}

impl<T> PartialEq for Exact<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Debug for Exact<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Exact<{}>", std::any::type_name::<T>())
    }
}

impl<T> Ring for Exact<T>
where
    T: Num + Neg<Output = T> + Clone + Debug + FromPrimitive,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> T {
        T::from_i64(n).expect("integer does not fit the exact scalar type")
    }
}

impl<T> Field for Exact<Ratio<T>>
where
    T: Integer + Clone + Debug,
    Ratio<T>: Num + Neg<Output = Ratio<T>> + FromPrimitive,
{
    fn inv(&self, a: &Ratio<T>) -> Option<Ratio<T>> {
        if num_traits::Zero::is_zero(a) {
            None
        } else {
            Some(a.recip())
        }
    }
}
