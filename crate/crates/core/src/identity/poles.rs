use rug::Complex;

use super::record::IdentityRecord;
use super::verify::evaluate_left;
use crate::continuation::{evaluate_expression, laurent_coefficients, EvalContext, LaurentOptions};
use crate::error::{HsumError, Result};
use crate::expr::Expression;
use crate::index::ArgTag;

pub const POLE_TOLERANCE: f64 = 1e-8;

/// Singular part comparison at one pole.
#[derive(Clone, Debug)]
pub struct PoleSide {
    pub z0: i64,
    /// Orders `-4..=-1`, most singular first.
    pub orders: Vec<i32>,
    pub lhs: Vec<Complex>,
    /// Laurent coefficients of the right-hand terms expected to carry the pole.
    pub singular_terms: Vec<Complex>,
    /// `max |lhs_k - singular_terms_k|`.
    pub mismatch: f64,
    /// Largest singular coefficient of the remaining terms, which must be regular.
    pub leak: f64,
}

#[derive(Clone, Debug)]
pub struct PoleReport {
    pub m: u32,
    /// At `z = -m`, where only sums of argument `z` may be singular.
    pub negative: PoleSide,
    /// At `z = m - 1`, where only sums of argument `-1-z` may be singular.
    pub positive: PoleSide,
    /// `|c_{-5}|` of the left side at `z = -m`.
    pub order_minus5: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn split(e: &Expression, tag: ArgTag) -> (Expression, Expression) {
    let (hit, rest): (Vec<_>, Vec<_>) = e
        .terms()
        .iter()
        .cloned()
        .partition(|t| t.sum.as_ref().is_some_and(|s| s.tag == tag));
    (Expression::from_terms(hit), Expression::from_terms(rest))
}

fn abs(z: &Complex) -> f64 {
    Complex::with_val(53, z).abs().real().to_f64()
}

fn side(id: &IdentityRecord, z0: i64, tag: ArgTag, ctx: &EvalContext) -> Result<(PoleSide, f64)> {
    let opts = LaurentOptions::default();
    let orders = -5..=-1;
    let (singular, regular) = split(id.right(), tag);
    let lhs = laurent_coefficients(|z| evaluate_left(id, z, ctx), z0, orders.clone(), opts, ctx)?;
    let sing = laurent_coefficients(|z| evaluate_expression(&singular, z, ctx), z0, orders.clone(), opts, ctx)?;
    let reg = laurent_coefficients(|z| evaluate_expression(&regular, z, ctx), z0, orders.clone(), opts, ctx)?;
    let mismatch = lhs
        .iter()
        .zip(&sing)
        .map(|(a, b)| abs(&Complex::with_val(ctx.prec(), a - b)))
        .fold(0.0, f64::max);
    let leak = reg.iter().map(abs).fold(0.0, f64::max);
    let minus5 = abs(&lhs[0]);
    Ok((
        PoleSide {
            z0,
            orders: (-4..=-1).collect(),
            lhs: lhs[1..].to_vec(),
            singular_terms: sing[1..].to_vec(),
            mismatch,
            leak,
        },
        minus5,
    ))
}

/// Contour-extracted singular parts of both sides at `z = -m` and
/// `z = m - 1`, for `1 <= m <= 4`.
pub fn pole_separation_check(id: &IdentityRecord, m: u32, ctx: &EvalContext) -> Result<PoleReport> {
    if !(1..=4).contains(&m) {
        return Err(HsumError::InvalidContext(format!("pole index {m} outside 1..=4")));
    }
    let (negative, order_minus5) = side(id, -(m as i64), ArgTag::Z, ctx)?;
    let (positive, _) = side(id, m as i64 - 1, ArgTag::Refl, ctx)?;
    let tol = POLE_TOLERANCE;
    let passed = [negative.mismatch, negative.leak, positive.mismatch, positive.leak, order_minus5]
        .iter()
        .all(|&x| x <= tol);
    Ok(PoleReport { m, negative, positive, order_minus5, tolerance: tol, passed })
}
