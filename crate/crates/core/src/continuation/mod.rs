//! Analytic continuation of nested harmonic sums from the even integers
//! (`S^+`) to the complex plane, at extended precision.
//!
//! For a sum `S_v(n) = A_v(n) + (-1)^n B_v(n)` with `A_v` and `B_v` smooth,
//! the step relation splits into `A_v(x) - A_v(x-1) = f(x)` and
//! `B_v(x) + B_v(x-1) = h(x)`, where `f` and `h` come from the inner sum. The
//! two parity branches are `S^+ = A + B` and `S^- = A - B`. `A` and `B` are
//! generated as asymptotic series (Euler-Maclaurin and Boole summation over
//! the inner expansions); the free constant of `A` is matched against the
//! exact finite sum at a large even integer. Arguments left of the
//! expansion's range are shifted right with the paired recurrences
//!
//! ```text
//! S+_{a,v}(x) = S-_{a,v}(x-1) + x^{-|a|} S+_v(x)
//! S-_{a,v}(x) = S+_{a,v}(x-1) + sign(a) x^{-|a|} S-_v(x)
//! ```

mod constants;
mod convert;
mod laurent;
mod series;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rug::{Complex, Float};

use crate::constants::{ConstantMonomial, ConstantSymbol};
use crate::error::{HsumError, Result};
use crate::expr::Expression;
use crate::finite::finite_sum;
use crate::index::{ArgTag, IndexVector};

pub use constants::constant_value;
pub use convert::{format_complex, parse_complex, rational_to_float};
pub use laurent::{laurent_coefficients, LaurentOptions};

use constants::{digits_to_bits, ConstantTable};
use series::{alternating_sum, boole_weights, euler_maclaurin_weights, indefinite_sum, to_floats, LogSeries, SeriesPoint};

/// Minimum distance to a pole accepted by [`evaluate`].
pub const POLE_GUARD: f64 = 1e-3;

/// Which integers a continuation interpolates: `Even` is `S^+`, the
/// continuation used everywhere in this crate; `Odd` is `S^-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Even,
    Odd,
}

/// A value together with the evaluator's own estimate of its absolute error.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Complex,
    pub error_bound: f64,
}

#[derive(Debug)]
struct Expansion {
    a: LogSeries,
    b: LogSeries,
    error: f64,
}

type MemoKey = (IndexVector, Branch, String, String);

/// Precision, truncation parameters and caches for the evaluator.
///
/// A context is immutable apart from its caches; the caches only ever hold
/// values that are pure functions of their keys.
pub struct EvalContext {
    digits: u32,
    prec: u32,
    series_prec: u32,
    shift_target: u32,
    tail_order: usize,
    match_point: u64,
    em_weights: Vec<Float>,
    boole_weights: Vec<Float>,
    constants: ConstantTable,
    expansions: Mutex<HashMap<IndexVector, Arc<Expansion>>>,
    memo: Mutex<HashMap<MemoKey, Evaluation>>,
}

impl std::fmt::Debug for EvalContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EvalContext")
            .field("digits", &self.digits)
            .field("shift_target", &self.shift_target)
            .field("tail_order", &self.tail_order)
            .finish()
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Smallest truncation order whose Boole-type remainder `M! / (pi R)^M`
/// falls below `10^-(digits+8)`, capped at the optimal order `pi R`.
fn default_tail_order(digits: u32, shift_target: u32) -> usize {
    let r = shift_target as f64;
    let target = (digits as f64 + 8.0) * std::f64::consts::LN_10 + 5.0 * (r.ln() + 5.0).ln();
    let cap = (std::f64::consts::PI * r).floor() as usize;
    (8..cap)
        .find(|&m| ln_factorial(m) - m as f64 * (std::f64::consts::PI * r).ln() < -target)
        .unwrap_or(cap)
}

impl EvalContext {
    /// Context with the default shift target and truncation order for
    /// `digits` decimal digits (at least 30).
    pub fn new(digits: u32) -> Result<Self> {
        let shift_target = (digits + 10).max(20);
        Self::with_params(digits, shift_target, default_tail_order(digits, shift_target))
    }

    pub fn with_params(digits: u32, shift_target: u32, tail_order: usize) -> Result<Self> {
        if digits < 30 {
            return Err(HsumError::InvalidContext(format!("digits must be at least 30, got {digits}")));
        }
        if shift_target < 20 {
            return Err(HsumError::InvalidContext(format!(
                "shift target must be at least 20, got {shift_target}"
            )));
        }
        if tail_order < 4 {
            return Err(HsumError::InvalidContext(format!("tail order {tail_order} is too small")));
        }
        let prec = digits_to_bits(digits);
        let series_prec = prec + 64;
        let match_point = (shift_target as u64).div_ceil(2) * 2;
        Ok(EvalContext {
            digits,
            prec,
            series_prec,
            shift_target,
            tail_order,
            match_point,
            em_weights: to_floats(&euler_maclaurin_weights(tail_order + 1), series_prec),
            boole_weights: to_floats(&boole_weights(tail_order + 1), series_prec),
            constants: ConstantTable::new(prec),
            expansions: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn shift_target(&self) -> u32 {
        self.shift_target
    }

    pub fn tail_order(&self) -> usize {
        self.tail_order
    }

    /// Absolute error every successful evaluation promises.
    pub fn error_budget(&self) -> f64 {
        10f64.powi(-(self.digits as i32) + 5)
    }

    pub fn constant(&self, sym: ConstantSymbol) -> Float {
        self.constants.get(sym).clone()
    }

    pub fn monomial_value(&self, m: &ConstantMonomial) -> Float {
        self.constants.monomial(m)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.prec, (re, im))
    }

    /// `-1 - z` at working precision.
    pub fn reflect(&self, z: &Complex) -> Complex {
        let mut w = Complex::with_val(self.prec, -z);
        w -= 1u32;
        w
    }

    pub fn clear_cache(&self) {
        self.memo.lock().expect("memo poisoned").clear();
    }

    pub fn cached_values(&self) -> usize {
        self.memo.lock().expect("memo poisoned").len()
    }

    fn expansion(&self, v: &IndexVector) -> Arc<Expansion> {
        if let Some(hit) = self.expansions.lock().expect("expansion cache poisoned").get(v) {
            return Arc::clone(hit);
        }
        let built = Arc::new(self.build_expansion(v));
        Arc::clone(
            self.expansions
                .lock()
                .expect("expansion cache poisoned")
                .entry(v.clone())
                .or_insert(built),
        )
    }

    fn build_expansion(&self, v: &IndexVector) -> Expansion {
        let prec = self.series_prec;
        let order = self.tail_order;
        let (inner_a, inner_b, inner_err) = match v.tail() {
            None => (
                LogSeries::constant(prec, order, 1, &Float::with_val(prec, 1)),
                LogSeries::zeros(prec, order, 1),
                0.0,
            ),
            Some(t) => {
                let e = self.expansion(&t);
                (e.a.clone(), e.b.clone(), e.error)
            }
        };
        let s = v.head().unsigned_abs() as usize;
        let (smooth, alternating) = if v.head() > 0 { (inner_a, inner_b) } else { (inner_b, inner_a) };
        let f = smooth.shift_down(s);
        let h = alternating.shift_down(s);
        let mut a = indefinite_sum(&f, &self.em_weights);
        let b = alternating_sum(&h, &self.boole_weights);

        let n0 = self.match_point;
        let x0 = Complex::with_val(self.prec, (n0, 0));
        let point = SeriesPoint::new(&x0, order, a.logs().max(b.logs()), self.prec);
        let (av, ae) = a.eval(&point);
        let (bv, be) = b.eval(&point);
        let exact = rational_to_float(&finite_sum(v, n0), prec);
        let mut c = Float::with_val(prec, &exact - av.real());
        c -= bv.real();
        a.add_const(&c);
        Expansion {
            a,
            b,
            error: ae + be + inner_err,
        }
    }

    fn check_pole(&self, z: &Complex) -> Result<()> {
        let re = z.real().to_f64();
        let im = z.imag().to_f64();
        if re > -0.5 {
            return Ok(());
        }
        let m = (-re).round().max(1.0);
        let d = ((re + m).powi(2) + im * im).sqrt();
        if d < POLE_GUARD {
            return Err(HsumError::PoleProximity {
                z: format_complex(z, 12),
                pole: -(m as i64),
                distance: d,
            });
        }
        Ok(())
    }

    fn memo_key(v: &IndexVector, branch: Branch, z: &Complex) -> MemoKey {
        (
            v.clone(),
            branch,
            z.real().to_string_radix(16, None),
            z.imag().to_string_radix(16, None),
        )
    }

    /// Both branches of every suffix of `v` at `z`; index `i` holds the
    /// suffix starting at position `i`.
    fn walk(&self, v: &IndexVector, z: &Complex) -> Result<(Vec<Complex>, Vec<Complex>, f64)> {
        self.check_pole(z)?;
        let prec = self.prec;
        let k = v.depth();
        let suffixes: Vec<IndexVector> = v.suffixes().collect();
        let re = z.real().to_f64();
        if !re.is_finite() || !z.imag().to_f64().is_finite() {
            return Err(HsumError::InvalidContext("argument is not finite".into()));
        }
        let shift = (self.shift_target as f64 - re).ceil().max(0.0) as u64;
        let mut x = Complex::with_val(prec, z);
        x += shift;

        let exps: Vec<Arc<Expansion>> = suffixes.iter().map(|u| self.expansion(u)).collect();
        let logs = exps.iter().map(|e| e.a.logs().max(e.b.logs())).max().unwrap_or(1);
        let point = SeriesPoint::new(&x, self.tail_order, logs, prec);
        debug_assert!(point.logs() >= logs);
        let mut plus = Vec::with_capacity(k + 1);
        let mut minus = Vec::with_capacity(k + 1);
        let mut error = 0.0;
        for e in &exps {
            let (av, ae) = e.a.eval(&point);
            let (bv, be) = e.b.eval(&point);
            plus.push(Complex::with_val(prec, &av + &bv));
            minus.push(Complex::with_val(prec, &av - &bv));
            error += ae + be + e.error;
        }
        plus.push(Complex::with_val(prec, (1, 0)));
        minus.push(Complex::with_val(prec, (1, 0)));

        let heads: Vec<i32> = v.indices().to_vec();
        let max_power = heads.iter().map(|a| a.unsigned_abs() as usize).max().unwrap_or(1);
        let mut inv_pow: Vec<Complex> = vec![Complex::new(prec); max_power + 1];
        for j in (1..=shift).rev() {
            let mut xj = Complex::with_val(prec, z);
            xj += j;
            inv_pow[1] = Complex::with_val(prec, xj.recip_ref());
            for p in 2..=max_power {
                inv_pow[p] = Complex::with_val(prec, &inv_pow[p - 1] * &inv_pow[1]);
            }
            // values at xj - 1 from values at xj, outermost first so the
            // inner entries still hold values at xj
            for i in 0..k {
                let a = heads[i];
                let w = &inv_pow[a.unsigned_abs() as usize];
                let mut term_odd = Complex::with_val(prec, w * &minus[i + 1]);
                if a < 0 {
                    term_odd = -term_odd;
                }
                let term_even = Complex::with_val(prec, w * &plus[i + 1]);
                let new_plus = Complex::with_val(prec, &minus[i] - &term_odd);
                let new_minus = Complex::with_val(prec, &plus[i] - &term_even);
                plus[i] = new_plus;
                minus[i] = new_minus;
            }
        }
        plus.pop();
        minus.pop();
        // rounding accumulated over the walk and the tail evaluation
        let scale = plus
            .iter()
            .chain(&minus)
            .map(|c| c.real().to_f64().abs().max(c.imag().to_f64().abs()))
            .fold(1.0, f64::max);
        let steps = (shift as f64 + self.tail_order as f64) * k as f64;
        error += steps * scale * 2f64.powi(8 - prec as i32);
        Ok((plus, minus, error))
    }

    fn evaluate_full(&self, v: &IndexVector, z: &Complex, branch: Branch) -> Result<Evaluation> {
        let z = Complex::with_val(self.prec, z);
        let key = Self::memo_key(v, branch, &z);
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let (plus, minus, error) = self.walk(v, &z)?;
        let bound = self.error_budget();
        if !(error <= bound) {
            return Err(HsumError::PrecisionExhausted { estimate: error, bound });
        }
        let mut memo = self.memo.lock().expect("memo poisoned");
        for (u, (p, m)) in v.suffixes().zip(plus.into_iter().zip(minus)) {
            if !p.real().is_finite() || !p.imag().is_finite() || !m.real().is_finite() || !m.imag().is_finite() {
                return Err(HsumError::PrecisionExhausted { estimate: f64::INFINITY, bound });
            }
            memo.insert(Self::memo_key(&u, Branch::Even, &z), Evaluation { value: p, error_bound: error });
            memo.insert(Self::memo_key(&u, Branch::Odd, &z), Evaluation { value: m, error_bound: error });
        }
        Ok(memo.get(&key).expect("just inserted").clone())
    }
}

/// `S^+_v(z)`: the continuation of `S_v` from the even integers.
pub fn evaluate(v: &IndexVector, z: &Complex, ctx: &EvalContext) -> Result<Complex> {
    Ok(ctx.evaluate_full(v, z, Branch::Even)?.value)
}

/// [`evaluate`] together with the self-reported error bound.
pub fn evaluate_with_error(v: &IndexVector, z: &Complex, ctx: &EvalContext) -> Result<Evaluation> {
    ctx.evaluate_full(v, z, Branch::Even)
}

/// Either parity branch. The odd branch is an internal ingredient of the
/// shift recurrences, exposed for diagnostics only.
#[doc(hidden)]
pub fn evaluate_branch(v: &IndexVector, z: &Complex, branch: Branch, ctx: &EvalContext) -> Result<Complex> {
    Ok(ctx.evaluate_full(v, z, branch)?.value)
}

/// The value of a sum at its tagged argument: `z` or `-1-z`.
pub fn evaluate_tagged(v: &IndexVector, tag: ArgTag, z: &Complex, ctx: &EvalContext) -> Result<Complex> {
    match tag {
        ArgTag::Z => evaluate(v, z, ctx),
        ArgTag::Refl => evaluate(v, &ctx.reflect(z), ctx),
    }
}

/// `sum coeff * value(cmono) * S^+(indices, arg)` over the terms of `e`.
pub fn evaluate_expression(e: &Expression, z: &Complex, ctx: &EvalContext) -> Result<Complex> {
    let prec = ctx.prec();
    let mut total = Complex::new(prec);
    for t in e.terms() {
        let mut scalar = rational_to_float(&t.coeff, prec);
        if !t.cmono.is_one() {
            scalar *= ctx.monomial_value(&t.cmono);
        }
        match &t.sum {
            None => total += scalar,
            Some(s) => {
                let value = evaluate_tagged(&s.indices, s.tag, z, ctx)?;
                total += Complex::with_val(prec, &value * &scalar);
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameters() {
        let ctx = EvalContext::new(30).unwrap();
        assert_eq!(ctx.shift_target(), 40);
        assert!(ctx.tail_order() > 20 && ctx.tail_order() < 126, "{}", ctx.tail_order());
        assert!(EvalContext::new(20).is_err());
        assert!(EvalContext::with_params(30, 10, 40).is_err());
    }

    #[test]
    fn harmonic_number_at_half() {
        // S_1(1/2) = 2 - 2 ln 2
        let ctx = EvalContext::new(30).unwrap();
        let v = evaluate(&IndexVector::from_slice(&[1]), &ctx.complex(0.5, 0.0), &ctx).unwrap();
        let expected = 2.0 - 2.0 * std::f64::consts::LN_2;
        assert!((v.real().to_f64() - expected).abs() < 1e-15);
        assert!(v.imag().to_f64().abs() < 1e-25);
    }

    #[test]
    fn pole_guard() {
        let ctx = EvalContext::new(30).unwrap();
        let v = IndexVector::from_slice(&[1]);
        assert!(matches!(
            evaluate(&v, &ctx.complex(-1.0, 0.0), &ctx),
            Err(HsumError::PoleProximity { pole: -1, .. })
        ));
        assert!(matches!(
            evaluate(&v, &ctx.complex(-3.0005, 0.0), &ctx),
            Err(HsumError::PoleProximity { pole: -3, .. })
        ));
        assert!(evaluate(&v, &ctx.complex(-1.002, 0.0), &ctx).is_ok());
        assert!(evaluate(&v, &ctx.complex(0.0, 0.0), &ctx).is_ok());
    }

    #[test]
    fn zero_argument_is_zero() {
        let ctx = EvalContext::new(30).unwrap();
        for v in [&[1][..], &[-2, 1], &[-1, -1, 1]] {
            let val = evaluate(&IndexVector::from_slice(v), &ctx.complex(0.0, 0.0), &ctx).unwrap();
            assert!(Float::with_val(64, val.abs_ref()).to_f64() < 1e-28, "{v:?}");
        }
    }

    #[test]
    fn expression_constants() {
        let ctx = EvalContext::new(30).unwrap();
        let z = ctx.complex(0.3, 0.7);
        assert!(Float::with_val(64, evaluate_expression(&Expression::new(), &z, &ctx).unwrap().abs_ref()).is_zero());
    }
}
