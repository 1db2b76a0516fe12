#![allow(dead_code)]

use hsum::finite::finite_sum;
use hsum::{ArgTag, Expression, IndexVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::float::Constant;
use rug::{Complex, Float};

/// Every index vector of weight exactly `w`, signs included.
pub fn all_vectors(w: u32) -> Vec<IndexVector> {
    fn rec(left: u32, cur: &mut Vec<i32>, out: &mut Vec<IndexVector>) {
        if left == 0 {
            out.push(IndexVector::from_slice(cur));
            return;
        }
        for a in 1..=left as i32 {
            for s in [a, -a] {
                cur.push(s);
                rec(left - a as u32, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if w > 0 {
        rec(w, &mut Vec::new(), &mut out);
    }
    out
}

/// Exact value at integer `n` of an expression free of constants and of
/// reflected sums.
pub fn exact_value(e: &Expression, n: u64) -> BigRational {
    let mut total = BigRational::zero();
    for t in e.terms() {
        assert!(t.cmono.is_one(), "constant in a shuffle result");
        let s = match &t.sum {
            Some(s) => {
                assert_eq!(s.tag, ArgTag::Z);
                finite_sum(&s.indices, n)
            }
            None => BigRational::one(),
        };
        total += &t.coeff * s;
    }
    total
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn abs_diff(a: &Complex, b: &Complex) -> f64 {
    Complex::with_val(a.prec().0, a - b).abs().real().to_f64()
}

/// `S_{-1}(z)` from its Mellin form `-ln 2 + int_0^1 x^z / (1 + x) dx`, by
/// tanh-sinh quadrature, for `Re z > -1`.
pub fn mellin_s_minus1(re: f64, im: f64, prec: u32) -> Complex {
    let z = Complex::with_val(prec, (re, im));
    let pi = Float::with_val(prec, Constant::Pi);
    let integrand = |t: &Float| -> Complex {
        // x = 1 / (1 + e^{-pi sinh t}), dx/dt = pi cosh t x (1 - x)
        let s = Float::with_val(prec, &pi * Float::with_val(prec, t.sinh_ref()));
        let e = Float::with_val(prec, (-s).exp());
        let x = Float::with_val(prec, 1u32 / Float::with_val(prec, &e + 1u32));
        let one_minus = Float::with_val(prec, &e * &x);
        let jac = Float::with_val(prec, &pi * Float::with_val(prec, t.cosh_ref())) * &x * &one_minus;
        if x.is_zero() || jac.is_zero() {
            return Complex::new(prec);
        }
        let lx = Float::with_val(prec, x.ln_ref());
        let pow = Complex::with_val(prec, &z * &lx).exp();
        let w = jac / Float::with_val(prec, &x + 1u32);
        pow * w
    };
    let quad = |h: &Float, tmax: f64| -> Complex {
        let mut acc = Complex::new(prec);
        let steps = (tmax / h.to_f64()).ceil() as i64;
        for k in -steps..=steps {
            let t = Float::with_val(prec, h * k as i32);
            acc += integrand(&t);
        }
        acc * h
    };
    let h = Float::with_val(prec, Float::i_exp(1, -7));
    let integral = quad(&h, 4.5);
    let ln2 = Float::with_val(prec, Constant::Log2);
    integral - ln2
}
