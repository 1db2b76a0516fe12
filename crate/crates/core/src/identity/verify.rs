use rug::Complex;

use super::record::IdentityRecord;
use super::sample::SamplePlan;
use crate::continuation::{evaluate_expression, evaluate_tagged, EvalContext};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub max_residual: f64,
    /// `|lhs - rhs|` at each point, in sampling order.
    pub residuals: Vec<f64>,
    pub points: Vec<(f64, f64)>,
    pub tolerance: f64,
    pub passed: bool,
}

/// The product on the left side at `z`.
pub fn evaluate_left(id: &IdentityRecord, z: &Complex, ctx: &EvalContext) -> Result<Complex> {
    let mut acc = Complex::with_val(ctx.prec(), (1, 0));
    for s in id.left() {
        acc *= evaluate_tagged(&s.indices, s.tag, z, ctx)?;
    }
    Ok(acc)
}

/// `|lhs(z) - rhs(z)|`.
pub fn residual_at(id: &IdentityRecord, z: &Complex, ctx: &EvalContext) -> Result<f64> {
    let lhs = evaluate_left(id, z, ctx)?;
    let rhs = evaluate_expression(id.right(), z, ctx)?;
    let d = Complex::with_val(ctx.prec(), &lhs - &rhs);
    Ok(d.abs().real().to_f64())
}

/// Checks `id` at `points` seeded random points of the standard strip.
pub fn verify_identity(id: &IdentityRecord, points: usize, tol: f64, seed: u64, ctx: &EvalContext) -> Result<VerifyReport> {
    let plan = SamplePlan::new(points, seed);
    plan.check()?;
    verify_at(id, &plan.points(), tol, ctx)
}

pub fn verify_at(id: &IdentityRecord, points: &[(f64, f64)], tol: f64, ctx: &EvalContext) -> Result<VerifyReport> {
    let mut residuals = Vec::with_capacity(points.len());
    for &(re, im) in points {
        residuals.push(residual_at(id, &ctx.complex(re, im), ctx)?);
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(VerifyReport {
        max_residual,
        residuals,
        points: points.to_vec(),
        tolerance: tol,
        passed: max_residual <= tol,
    })
}
