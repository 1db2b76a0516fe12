//! Exact evaluation of nested harmonic sums at non-negative integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::index::IndexVector;

fn step(a: i32, i: u64) -> BigRational {
    let den = BigInt::from(i).pow(a.unsigned_abs());
    let num = if a < 0 && i % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    BigRational::new(num, den)
}

/// `S_v(n)` as an exact rational; `S_v(0) = 0`.
pub fn finite_sum(v: &IndexVector, n: u64) -> BigRational {
    finite_sum_table(v, n).pop().unwrap_or_else(BigRational::zero)
}

/// `[S_v(0), S_v(1), ..., S_v(n)]`.
pub fn finite_sum_table(v: &IndexVector, n: u64) -> Vec<BigRational> {
    let len = n as usize + 1;
    // innermost sum first, working outward
    let mut inner: Vec<BigRational> = vec![BigRational::one(); len];
    for &a in v.indices().iter().rev() {
        let mut outer = Vec::with_capacity(len);
        outer.push(BigRational::zero());
        for i in 1..len {
            let next = &outer[i - 1] + step(a, i as u64) * &inner[i];
            outer.push(next);
        }
        inner = outer;
    }
    inner
}
