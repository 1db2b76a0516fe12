//! Truncated asymptotic series `sum_{m,j} c[m][j] ln(x)^j x^{-m}` and the
//! summation operators acting on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::ops::Pow;
use rug::{Complex, Float};

use super::convert::rational_to_float;

#[derive(Clone, Debug)]
pub(crate) struct LogSeries {
    prec: u32,
    order: usize,
    logs: usize,
    c: Vec<Float>,
}

impl LogSeries {
    pub fn zeros(prec: u32, order: usize, logs: usize) -> Self {
        LogSeries {
            prec,
            order,
            logs,
            c: vec![Float::new(prec); (order + 1) * logs],
        }
    }

    pub fn constant(prec: u32, order: usize, logs: usize, value: &Float) -> Self {
        let mut s = Self::zeros(prec, order, logs);
        s.c[0] = Float::with_val(prec, value);
        s
    }

    pub fn logs(&self) -> usize {
        self.logs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, m: usize, j: usize) -> &Float {
        &self.c[m * self.logs + j]
    }

    fn get_mut(&mut self, m: usize, j: usize) -> &mut Float {
        &mut self.c[m * self.logs + j]
    }

    pub fn add_const(&mut self, value: &Float) {
        *self.get_mut(0, 0) += value;
    }

    fn with_logs(&self, logs: usize) -> LogSeries {
        let mut out = LogSeries::zeros(self.prec, self.order, logs);
        for m in 0..=self.order {
            for j in 0..self.logs.min(logs) {
                *out.get_mut(m, j) = self.get(m, j).clone();
            }
        }
        out
    }

    /// Multiplies by `x^{-s}`, dropping orders beyond the truncation.
    pub fn shift_down(&self, s: usize) -> LogSeries {
        let mut out = LogSeries::zeros(self.prec, self.order, self.logs);
        for m in 0..=self.order {
            if m + s > self.order {
                break;
            }
            for j in 0..self.logs {
                *out.get_mut(m + s, j) = self.get(m, j).clone();
            }
        }
        out
    }

    /// `d/dx`: `L^j x^{-m} -> (j L^{j-1} - m L^j) x^{-m-1}`.
    pub fn derivative(&self) -> LogSeries {
        let mut out = LogSeries::zeros(self.prec, self.order, self.logs);
        for m in 0..self.order {
            for j in 0..self.logs {
                let c = self.get(m, j);
                if c.is_zero() {
                    continue;
                }
                if m > 0 {
                    *out.get_mut(m + 1, j) -= Float::with_val(self.prec, c * m as u32);
                }
                if j > 0 {
                    *out.get_mut(m + 1, j - 1) += Float::with_val(self.prec, c * j as u32);
                }
            }
        }
        out
    }

    /// Antiderivative with zero constant term. Requires no `x^0` terms;
    /// raises the log degree by one.
    pub fn integral(&self) -> LogSeries {
        let mut out = LogSeries::zeros(self.prec, self.order, self.logs + 1);
        for j in 0..self.logs {
            debug_assert!(self.get(0, j).is_zero(), "integral of an x^0 term");
            let c = self.get(1, j);
            *out.get_mut(0, j + 1) += Float::with_val(self.prec, c / (j as u32 + 1));
        }
        // int L^j x^{-p} = -sum_i j!/(j-i)! / q^{i+1} L^{j-i} x^{-q}, q = p-1
        for p in 2..=self.order {
            let q = (p - 1) as u32;
            for j in 0..self.logs {
                let c = self.get(p, j);
                if c.is_zero() {
                    continue;
                }
                let mut factor = Float::with_val(self.prec, c / q);
                for i in 0..=j {
                    *out.get_mut(p - 1, j - i) -= &factor;
                    factor *= (j - i) as u32;
                    factor /= q;
                }
            }
        }
        out
    }

    pub fn axpy(&mut self, alpha: &Float, other: &LogSeries) {
        assert_eq!(self.order, other.order);
        if self.logs < other.logs {
            *self = self.with_logs(other.logs);
        }
        for m in 0..=other.order {
            for j in 0..other.logs {
                let o = other.get(m, j);
                if o.is_zero() {
                    continue;
                }
                let prod = Float::with_val(self.prec, o * alpha);
                *self.get_mut(m, j) += prod;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Float::is_zero)
    }

    /// Value and a truncation estimate (size of the two highest orders).
    pub fn eval(&self, at: &SeriesPoint) -> (Complex, f64) {
        let prec = self.prec;
        let mut total = Complex::new(prec);
        // low precision but full exponent range: coefficients near M! and
        // powers of 1/x both leave the f64 range at high orders
        let mut tail = Float::new(53);
        for j in 0..self.logs {
            let mut acc = Complex::new(prec);
            for m in 0..=self.order {
                let c = self.get(m, j);
                if c.is_zero() {
                    continue;
                }
                acc += Complex::with_val(prec, &at.ypow[m] * c);
            }
            if j > 0 {
                acc *= &at.lpow[j];
            }
            total += acc;
            for m in self.order.saturating_sub(1)..=self.order {
                let c = Float::with_val(53, self.get(m, j).abs_ref());
                tail += c * &at.yabs[m] * at.labs.powi(j as i32);
            }
        }
        (total, tail.to_f64())
    }
}

/// Powers of `1/x` and `ln x` shared by every series evaluated at `x`.
pub(crate) struct SeriesPoint {
    ypow: Vec<Complex>,
    lpow: Vec<Complex>,
    yabs: Vec<Float>,
    labs: f64,
}

impl SeriesPoint {
    pub fn new(x: &Complex, order: usize, logs: usize, prec: u32) -> Self {
        let y = Complex::with_val(prec, x.recip_ref());
        let l = Complex::with_val(prec, x.ln_ref());
        let mut ypow = Vec::with_capacity(order + 1);
        ypow.push(Complex::with_val(prec, (1, 0)));
        for m in 1..=order {
            let next = Complex::with_val(prec, &ypow[m - 1] * &y);
            ypow.push(next);
        }
        let mut lpow = Vec::with_capacity(logs);
        lpow.push(Complex::with_val(prec, (1, 0)));
        for j in 1..logs.max(1) {
            let next = Complex::with_val(prec, &lpow[j - 1] * &l);
            lpow.push(next);
        }
        let ya = Float::with_val(53, y.abs_ref());
        let yabs = (0..=order).map(|m| Float::with_val(53, (&ya).pow(m as u32))).collect();
        let labs = Float::with_val(53, l.abs_ref()).to_f64().max(1.0);
        SeriesPoint { ypow, lpow, yabs, labs }
    }

    pub fn logs(&self) -> usize {
        self.lpow.len()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn invert_series(a: &[BigRational]) -> Vec<BigRational> {
    let inv0 = a[0].recip();
    let mut b: Vec<BigRational> = Vec::with_capacity(a.len());
    b.push(inv0.clone());
    for k in 1..a.len() {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            if !a[i].is_zero() && !b[k - i].is_zero() {
                acc += &a[i] * &b[k - i];
            }
        }
        b.push(-acc * &inv0);
    }
    b
}

/// Taylor coefficients of `t / (1 - e^{-t})`: the Euler-Maclaurin weights,
/// `1, 1/2, 1/12, 0, -1/720, ...`.
pub(crate) fn euler_maclaurin_weights(n: usize) -> Vec<BigRational> {
    let a: Vec<BigRational> = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), factorial(k + 1))
        })
        .collect();
    invert_series(&a)
}

/// Taylor coefficients of `1 / (1 + e^{-t})`: the Boole summation weights,
/// `1/2, 1/4, 0, -1/48, ...`.
pub(crate) fn boole_weights(n: usize) -> Vec<BigRational> {
    let a: Vec<BigRational> = (0..=n)
        .map(|k| {
            if k == 0 {
                BigRational::from_integer(BigInt::from(2))
            } else {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                BigRational::new(BigInt::from(sign), factorial(k))
            }
        })
        .collect();
    invert_series(&a)
}

pub(crate) fn to_floats(q: &[BigRational], prec: u32) -> Vec<Float> {
    q.iter().map(|r| rational_to_float(r, prec)).collect()
}

/// Solves `A(x) - A(x-1) = f(x)` with zero constant term.
pub(crate) fn indefinite_sum(f: &LogSeries, weights: &[Float]) -> LogSeries {
    let mut out = f.integral();
    let mut g = f.clone();
    for w in weights.iter().take(f.order() + 1).skip(1) {
        if !w.is_zero() {
            out.axpy(w, &g);
        }
        g = g.derivative();
        if g.is_zero() {
            break;
        }
    }
    out
}

/// Solves `B(x) + B(x-1) = h(x)`; the non-oscillating solution is unique.
pub(crate) fn alternating_sum(h: &LogSeries, weights: &[Float]) -> LogSeries {
    let mut out = LogSeries::zeros(h.prec, h.order, h.logs);
    let mut g = h.clone();
    for w in weights.iter().take(h.order() + 1) {
        if !w.is_zero() {
            out.axpy(w, &g);
        }
        g = g.derivative();
        if g.is_zero() {
            break;
        }
    }
    out
}
