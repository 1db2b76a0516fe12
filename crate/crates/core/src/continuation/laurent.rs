//! Laurent coefficients at integer points by discrete contour sampling.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::EvalContext;
use crate::error::{HsumError, Result};

#[derive(Clone, Copy, Debug)]
pub struct LaurentOptions {
    /// Circle radius, in `(0.01, 0.25]`.
    pub radius: f64,
    /// Number of sample points on the circle, at least 64.
    pub points: usize,
}

impl Default for LaurentOptions {
    fn default() -> Self {
        LaurentOptions { radius: 0.25, points: 64 }
    }
}

/// Coefficients `c_m` of `f(z) = sum_m c_m (z - z0)^m` for every `m` in
/// `orders`, from the trapezoid rule on a circle around `z0`.
///
/// The rule is applied with `points` and with `2 * points` nodes; if the two
/// disagree by more than `10^(-digits/2)` the extraction is rejected.
pub fn laurent_coefficients<F>(
    f: F,
    z0: i64,
    orders: std::ops::RangeInclusive<i32>,
    opts: LaurentOptions,
    ctx: &EvalContext,
) -> Result<Vec<Complex>>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    if !(opts.radius > 0.01 && opts.radius <= 0.25) {
        return Err(HsumError::InvalidContext(format!("contour radius {} outside (0.01, 0.25]", opts.radius)));
    }
    if opts.points < 64 {
        return Err(HsumError::InvalidContext(format!("{} contour points, need at least 64", opts.points)));
    }
    let prec = ctx.prec();
    let n = 2 * opts.points;
    let radius = Float::with_val(prec, opts.radius);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;

    // offsets u_j = r e^{2 pi i j / n} and the sampled values
    let mut offsets = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for j in 0..n {
        let angle = Float::with_val(prec, &two_pi * j as u32) / n as u32;
        let unit = Complex::with_val(prec, (Float::with_val(prec, angle.cos_ref()), Float::with_val(prec, angle.sin_ref())));
        let u = Complex::with_val(prec, &unit * &radius);
        let mut z = u.clone();
        z += z0;
        values.push(f(&z)?);
        offsets.push(u);
    }

    let coefficient = |m: i32, stride: usize| -> Complex {
        let mut acc = Complex::new(prec);
        let mut count = 0u32;
        for j in (0..n).step_by(stride) {
            let pow = Complex::with_val(prec, (&offsets[j]).pow(-m));
            acc += Complex::with_val(prec, &values[j] * &pow);
            count += 1;
        }
        acc / count
    };

    let tol = 10f64.powf(-(ctx.digits() as f64) / 2.0);
    let mut out = Vec::new();
    for m in orders {
        let fine = coefficient(m, 1);
        let coarse = coefficient(m, 2);
        let diff = Float::with_val(53, Complex::with_val(prec, &fine - &coarse).abs_ref()).to_f64();
        // relative to the coefficient scale r^{-m}
        let scale = opts.radius.powi(-m).max(1.0);
        if diff > tol * scale {
            return Err(HsumError::PrecisionExhausted { estimate: diff, bound: tol * scale });
        }
        out.push(fine);
    }
    Ok(out)
}
