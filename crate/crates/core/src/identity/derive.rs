//! Identity derivation: sample the left product and every ansatz function at
//! random points, solve the least-squares problem once per product, then
//! split each coefficient into rationals times irreducible constants.
//!
//! Ansatz entries that share a sum differ only by a constant factor, so as
//! functions of `z` they are proportional. The solve therefore runs over one
//! column per distinct function (each tagged sum, plus the constant 1) and
//! the constant structure of each coefficient is recovered afterwards.

use num_traits::Zero;
use rug::{Complex, Float};

use super::reconstruct::reconstruct;
use super::record::{IdentityRecord, Provenance};
use super::sample::{SamplePlan, MIN_DERIVE_POINTS};
use super::verify::{evaluate_left, verify_at};
use crate::basis::build_ansatz;
use crate::constants::ConstantMonomial;
use crate::continuation::{evaluate_tagged, EvalContext};
use crate::db::format_sumref;
use crate::error::{HsumError, Result};
use crate::expr::{Expression, SumRef, Term};
use crate::index::{ArgTag, IndexVector};

/// Minimum working precision for derivations.
pub const MIN_DERIVE_DIGITS: u32 = 60;
/// Precision that leaves the weight-4 solve comfortably inside its budget
/// on the standard sample strip (condition estimate near `1e186`).
pub const DEFAULT_DERIVE_DIGITS: u32 = 250;
/// Correct digits every solved coefficient must keep for reconstruction.
pub const COEFFICIENT_DIGITS: f64 = 30.0;
/// Largest denominator accepted during reconstruction.
pub const MAX_DENOMINATOR: u64 = 1000;
/// Fresh points checked after reconstruction, and their tolerance.
pub const FRESH_POINTS: usize = 20;
pub const FRESH_TOLERANCE: f64 = 1e-10;

/// One function column: a tagged sum (or the constant 1) together with the
/// constant monomials its coefficient may contain.
#[derive(Clone, Debug)]
pub struct Column {
    pub sum: Option<SumRef>,
    pub constants: Vec<ConstantMonomial>,
}

impl Column {
    fn label(&self) -> String {
        match &self.sum {
            Some(s) => format_sumref(s),
            None => "constant term".into(),
        }
    }
}

/// The function columns for weight `w`: the constant first, then every
/// ansatz sum at `z`, then every ansatz sum at `-1-z`.
pub fn columns(w: u32) -> Result<Vec<Column>> {
    let ansatz = build_ansatz(w)?;
    let mut constant = Column { sum: None, constants: Vec::new() };
    let mut sums: Vec<(IndexVector, Vec<ConstantMonomial>)> = Vec::new();
    for e in ansatz {
        match e.sum {
            None => constant.constants.push(e.cmono),
            Some(v) => match sums.iter_mut().find(|(u, _)| *u == v) {
                Some((_, cs)) => cs.push(e.cmono),
                None => sums.push((v, vec![e.cmono])),
            },
        }
    }
    let mut out = vec![constant];
    for tag in [ArgTag::Z, ArgTag::Refl] {
        for (v, cs) in &sums {
            out.push(Column { sum: Some(SumRef::new(v.clone(), tag)), constants: cs.clone() });
        }
    }
    Ok(out)
}

/// Householder QR with column pivoting of a real `m x n` matrix stored by
/// columns.
struct Qr {
    prec: u32,
    /// Householder vectors, `v_k` acting on rows `k..m`.
    reflectors: Vec<Vec<Float>>,
    /// Upper triangle, `r[j][i]` for `i <= j`, in pivoted column order.
    r: Vec<Vec<Float>>,
    perm: Vec<usize>,
}

impl Qr {
    fn factor(mut cols: Vec<Vec<Float>>, prec: u32) -> Qr {
        let n = cols.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut reflectors = Vec::with_capacity(n);
        for k in 0..n {
            // pivot on the largest remaining column norm
            let norms: Vec<f64> = cols[k..]
                .iter()
                .map(|c| c[k..].iter().map(|x| x.to_f64().powi(2)).sum::<f64>())
                .collect();
            let p = k + norms
                .iter()
                .enumerate()
                .fold((0, -1.0), |best, (i, &v)| if v > best.1 { (i, v) } else { best })
                .0;
            cols.swap(k, p);
            perm.swap(k, p);

            let x = &cols[k][k..];
            let mut norm = Float::with_val(prec, 0);
            for xi in x {
                norm += Float::with_val(prec, xi.square_ref());
            }
            norm.sqrt_mut();
            let alpha = if x[0].is_sign_negative() { norm } else { -norm };
            let mut v: Vec<Float> = x.to_vec();
            v[0] -= &alpha;
            let mut vv = Float::with_val(prec, 0);
            for vi in &v {
                vv += Float::with_val(prec, vi.square_ref());
            }
            if !vv.is_zero() {
                for col in cols.iter_mut().skip(k + 1) {
                    apply(&v, &vv, &mut col[k..], prec);
                }
            }
            cols[k][k] = alpha;
            for xi in cols[k][k + 1..].iter_mut() {
                *xi = Float::new(prec);
            }
            reflectors.push((v, vv));
        }
        let r = cols.into_iter().enumerate().map(|(j, c)| c.into_iter().take(j + 1).collect()).collect();
        let reflectors = reflectors
            .into_iter()
            .map(|(mut v, vv)| {
                // store v scaled so that H = I - v v^T
                if !vv.is_zero() {
                    let s = Float::with_val(prec, Float::with_val(prec, 2u32) / &vv).sqrt();
                    for vi in v.iter_mut() {
                        *vi *= &s;
                    }
                } else {
                    v.iter_mut().for_each(|vi| *vi = Float::new(prec));
                }
                v
            })
            .collect();
        Qr { prec, reflectors, r, perm }
    }

    fn diag(&self, k: usize) -> f64 {
        self.r[k][k].to_f64().abs()
    }

    /// Ratio of the largest to the smallest diagonal entry of `R`.
    fn condition(&self) -> f64 {
        let n = self.r.len();
        let smallest = self.diag(n - 1);
        if smallest == 0.0 {
            f64::INFINITY
        } else {
            self.diag(0) / smallest
        }
    }

    /// Least-squares solution of `A x = b`, in the original column order.
    fn solve(&self, b: &[Float]) -> Vec<Float> {
        let prec = self.prec;
        let n = self.r.len();
        let mut y: Vec<Float> = b.to_vec();
        for (k, v) in self.reflectors.iter().enumerate() {
            let mut dot = Float::with_val(prec, 0);
            for (vi, yi) in v.iter().zip(&y[k..]) {
                dot += Float::with_val(prec, vi * yi);
            }
            for (vi, yi) in v.iter().zip(y[k..].iter_mut()) {
                *yi -= Float::with_val(prec, vi * &dot);
            }
        }
        let mut x = vec![Float::new(prec); n];
        for i in (0..n).rev() {
            let mut acc = y[i].clone();
            for j in i + 1..n {
                acc -= Float::with_val(prec, &self.r[j][i] * &x[j]);
            }
            x[i] = acc / &self.r[i][i];
        }
        let mut out = vec![Float::new(prec); n];
        for (k, &p) in self.perm.iter().enumerate() {
            out[p] = x[k].clone();
        }
        out
    }
}

// col -= (2 / vv) (v . col) v
fn apply(v: &[Float], vv: &Float, col: &mut [Float], prec: u32) {
    let mut dot = Float::with_val(prec, 0);
    for (vi, ci) in v.iter().zip(col.iter()) {
        dot += Float::with_val(prec, vi * ci);
    }
    if dot.is_zero() {
        return;
    }
    let f = Float::with_val(prec, &dot * 2u32) / vv;
    for (vi, ci) in v.iter().zip(col.iter_mut()) {
        *ci -= Float::with_val(prec, vi * &f);
    }
}

/// A derived identity with the numbers that certify it.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub record: IdentityRecord,
    /// Relative least-squares residual `|A x - b| / |b|`.
    pub fit_residual: f64,
    /// Largest residual at the fresh verification points.
    pub fresh_residual: f64,
}

/// Sampled column matrix and its factorization, reusable for every product
/// of one weight.
pub struct Deriver<'a> {
    ctx: &'a EvalContext,
    weight: u32,
    plan: SamplePlan,
    columns: Vec<Column>,
    points: Vec<Complex>,
    fresh: Vec<(f64, f64)>,
    scales: Vec<Float>,
    qr: Qr,
}

impl<'a> Deriver<'a> {
    pub fn new(weight: u32, plan: SamplePlan, ctx: &'a EvalContext) -> Result<Self> {
        if ctx.digits() < MIN_DERIVE_DIGITS {
            return Err(HsumError::InvalidContext(format!(
                "derivation needs at least {MIN_DERIVE_DIGITS} digits, got {}",
                ctx.digits()
            )));
        }
        plan.check()?;
        let columns = columns(weight)?;
        if plan.count < MIN_DERIVE_POINTS || 2 * plan.count < columns.len() {
            return Err(HsumError::InvalidContext(format!(
                "{} sample points are too few (need at least {MIN_DERIVE_POINTS})",
                plan.count
            )));
        }
        let prec = ctx.prec();
        let all = plan.points_with_extra(FRESH_POINTS);
        let fresh = all[plan.count..].to_vec();
        let points: Vec<Complex> = all[..plan.count].iter().map(|&(x, y)| ctx.complex(x, y)).collect();

        let mut cols = Vec::with_capacity(columns.len());
        let mut scales = Vec::with_capacity(columns.len());
        for c in &columns {
            let mut col = Vec::with_capacity(2 * points.len());
            for z in &points {
                let v = match &c.sum {
                    None => Complex::with_val(prec, (1, 0)),
                    Some(s) => evaluate_tagged(&s.indices, s.tag, z, ctx)?,
                };
                let (re, im) = v.into_real_imag();
                col.push(re);
                col.push(im);
            }
            let scale = col.iter().fold(Float::with_val(prec, 0), |m, x| m.max(&Float::with_val(prec, x.abs_ref())));
            for x in col.iter_mut() {
                *x /= &scale;
            }
            cols.push(col);
            scales.push(scale);
        }
        let qr = Qr::factor(cols, prec);
        let deriver = Deriver { ctx, weight, plan, columns, points, fresh, scales, qr };
        let cond = deriver.condition();
        if !(cond <= deriver.condition_budget()) {
            return Err(HsumError::IllConditioned(format!(
                "condition estimate {cond:.3e} over {} columns exceeds {:.3e}",
                deriver.columns.len(),
                deriver.condition_budget()
            )));
        }
        Ok(deriver)
    }

    /// Largest condition estimate that still leaves [`COEFFICIENT_DIGITS`]
    /// correct digits after losing 8 digits to evaluation and rounding.
    pub fn condition_budget(&self) -> f64 {
        10f64.powf(self.ctx.digits() as f64 - 8.0 - COEFFICIENT_DIGITS)
    }

    pub fn condition(&self) -> f64 {
        self.qr.condition()
    }

    /// Reconstruction tolerance: `10^(-digits/2)`, widened to the accuracy
    /// the condition estimate actually allows.
    pub fn coefficient_tolerance(&self) -> f64 {
        let digits = self.ctx.digits() as f64;
        10f64.powf(-digits / 2.0).max(self.condition() * 10f64.powf(8.0 - digits))
    }

    /// Numerical rank: diagonal entries of `R` above the rounding floor
    /// `10^(8-digits)` relative to the largest.
    pub fn rank(&self) -> usize {
        let top = self.qr.diag(0);
        let cut = top * 10f64.powf(8.0 - self.ctx.digits() as f64);
        (0..self.qr.r.len()).filter(|&k| self.qr.diag(k) > cut).count()
    }

    /// `|R_kk|` in pivot order, with the label of the pivoted column.
    pub fn pivots(&self) -> Vec<(f64, String)> {
        (0..self.qr.r.len()).map(|k| (self.qr.diag(k), self.columns[self.qr.perm[k]].label())).collect()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn plan(&self) -> &SamplePlan {
        &self.plan
    }

    /// Derives `S_a(z) S_b(-1-z) = ...`.
    pub fn derive(&self, a: &IndexVector, b: &IndexVector) -> Result<Derivation> {
        let left = vec![SumRef::new(a.clone(), ArgTag::Z), SumRef::new(b.clone(), ArgTag::Refl)];
        self.derive_product(left)
    }

    /// Derives the linear form of an arbitrary product of tagged sums whose
    /// weights add up to the deriver's weight.
    pub fn derive_product(&self, left: Vec<SumRef>) -> Result<Derivation> {
        let w: u32 = left.iter().map(|s| s.indices.weight()).sum();
        if w != self.weight {
            return Err(HsumError::WeightOutOfRange(w));
        }
        let ctx = self.ctx;
        let prec = ctx.prec();
        let probe = IdentityRecord::new(left.clone(), Expression::new(), Provenance::Derived)?;
        let mut rhs = Vec::with_capacity(2 * self.points.len());
        for z in &self.points {
            let (re, im) = evaluate_left(&probe, z, ctx)?.into_real_imag();
            rhs.push(re);
            rhs.push(im);
        }
        let mut kappa = self.qr.solve(&rhs);
        for (k, s) in kappa.iter_mut().zip(&self.scales) {
            *k /= s;
        }
        let fit_residual = self.fit_residual(&kappa, &rhs)?;
        let fit_tol = 10f64.powf(-(ctx.digits() as f64) / 2.0);
        if !(fit_residual <= fit_tol) {
            return Err(HsumError::VerificationFailed { max_residual: fit_residual, tolerance: fit_tol });
        }

        let tol = Float::with_val(prec, self.coefficient_tolerance());
        let mut terms = Vec::new();
        for (col, k) in self.columns.iter().zip(&kappa) {
            let basis: Vec<Float> = col.constants.iter().map(|c| ctx.monomial_value(c)).collect();
            let q = reconstruct(k, &basis, MAX_DENOMINATOR, &tol).ok_or_else(|| HsumError::ReconstructionFailed {
                column: col.label(),
                reason: format!("{} is not a small rational combination of its constants", k.to_f64()),
            })?;
            for (c, q) in col.constants.iter().zip(q) {
                if !q.is_zero() {
                    terms.push(Term::new(q, *c, col.sum.clone()));
                }
            }
        }
        let record = IdentityRecord::new(left, Expression::from_terms(terms), Provenance::Derived)?;
        let report = verify_at(&record, &self.fresh, FRESH_TOLERANCE, ctx)?;
        if !report.passed {
            return Err(HsumError::VerificationFailed { max_residual: report.max_residual, tolerance: FRESH_TOLERANCE });
        }
        Ok(Derivation { record, fit_residual, fresh_residual: report.max_residual })
    }

    fn fit_residual(&self, kappa: &[Float], rhs: &[Float]) -> Result<f64> {
        let ctx = self.ctx;
        let prec = ctx.prec();
        let mut num = 0f64;
        let mut den = 0f64;
        for (i, z) in self.points.iter().enumerate() {
            let mut acc = Complex::new(prec);
            for (col, k) in self.columns.iter().zip(kappa) {
                match &col.sum {
                    None => acc += k,
                    Some(s) => acc += evaluate_tagged(&s.indices, s.tag, z, ctx)? * k,
                }
            }
            let b = Complex::with_val(prec, (&rhs[2 * i], &rhs[2 * i + 1]));
            num = num.max(Complex::with_val(prec, &acc - &b).abs().real().to_f64());
            den = den.max(b.abs().real().to_f64());
        }
        Ok(num / den.max(1.0))
    }
}

/// One-shot [`Deriver::derive`] for a product of weight `weight(a) + weight(b)`.
pub fn derive_identity(a: &IndexVector, b: &IndexVector, plan: SamplePlan, ctx: &EvalContext) -> Result<IdentityRecord> {
    let deriver = Deriver::new(a.weight() + b.weight(), plan, ctx)?;
    Ok(deriver.derive(a, b)?.record)
}
