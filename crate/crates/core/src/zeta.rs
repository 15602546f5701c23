//! Subset-lattice zeta transform over integer-scaled masses.
//!
//! Masses are scaled by a common denominator so the transform runs on
//! integers. When that denominator fits in `u128` every partial sum does too
//! (sums never exceed the total), so the fast path avoids big integers.

use std::ops::{AddAssign, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::mass::Mass;

pub(crate) trait Scalar: Clone + Ord + Zero + AddAssign + Sub<Output = Self> {
    fn from_big(value: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Scalar for u128 {
    fn from_big(value: &BigInt) -> Self {
        value.to_u128().expect("scaled mass exceeds u128")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_big(value: &BigInt) -> Self {
        value.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) fn fits_small(denom: &BigInt) -> bool {
    denom.to_u128().is_some()
}

pub(crate) fn common_denominator<'a>(masses: impl IntoIterator<Item = &'a Mass>) -> BigInt {
    masses.into_iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()))
}

/// `mass * denom` placed at each focal bitmask of a `2^n` table.
pub(crate) fn scaled_table<'a, T: Scalar>(
    n: usize,
    focal: impl IntoIterator<Item = (u32, &'a Mass)>,
    denom: &BigInt,
) -> Vec<T> {
    let mut table = vec![T::zero(); 1usize << n];
    for (bits, mass) in focal {
        let scaled = mass.numer() * (denom / mass.denom());
        table[bits as usize] = T::from_big(&scaled);
    }
    table
}

/// In place: `table[S] <- sum of table[T] over T subset of S`, `n * 2^n` additions.
pub(crate) fn zeta<T: Scalar>(table: &mut [T], n: usize) {
    debug_assert_eq!(table.len(), 1usize << n);
    for i in 0..n {
        let bit = 1usize << i;
        for s in 0..table.len() {
            if s & bit != 0 {
                let lower = table[s ^ bit].clone();
                table[s] += lower;
            }
        }
    }
}
