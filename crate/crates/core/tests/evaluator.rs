mod common;

use common::{abs_diff, mellin_s_minus1};
use hsum::continuation::{
    constant_value, evaluate_branch, evaluate_with_error, laurent_coefficients, rational_to_float, Branch, LaurentOptions,
};
use hsum::finite::finite_sum;
use hsum::identity::SamplePlan;
use hsum::{build_basis, evaluate, ConstantSymbol, EvalContext, HsumError, IndexVector};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

fn all_basis() -> Vec<IndexVector> {
    (1..=4).flat_map(|w| build_basis(w).unwrap()).collect()
}

#[test]
fn matches_finite_sums_at_even_integers() {
    let ctx = EvalContext::new(30).unwrap();
    let basis = all_basis();
    assert_eq!(basis.len(), 80);
    let mut worst = 0f64;
    for v in &basis {
        for n in (2..=20u32).step_by(2) {
            let got = evaluate(v, &ctx.complex(n as f64, 0.0), &ctx).unwrap();
            let want = Complex::with_val(ctx.prec(), rational_to_float(&finite_sum(v, n as u64), ctx.prec()));
            let d = abs_diff(&got, &want);
            worst = worst.max(d);
            assert!(d < 1e-10, "S[{v}]({n}) off by {d:e}");
        }
    }
    assert!(worst < 1e-25, "worst {worst:e}");
}

#[test]
fn odd_branch_matches_finite_sums_at_odd_integers() {
    let ctx = EvalContext::new(30).unwrap();
    for v in build_basis(3).unwrap() {
        for n in [1u32, 3, 7, 11] {
            let got = evaluate_branch(&v, &ctx.complex(n as f64, 0.0), Branch::Odd, &ctx).unwrap();
            let want = Complex::with_val(ctx.prec(), rational_to_float(&finite_sum(&v, n as u64), ctx.prec()));
            assert!(abs_diff(&got, &want) < 1e-20, "S-[{v}]({n})");
        }
    }
}

#[test]
fn agrees_with_mellin_integral_for_s_minus1() {
    let ctx = EvalContext::new(30).unwrap();
    let v = IndexVector::from_slice(&[-1]);
    let mut plan = SamplePlan::new(20, 7);
    plan.re = (-0.5, 3.0);
    plan.im = (0.2, 2.0);
    for (i, (re, im)) in plan.points().into_iter().enumerate() {
        let im = if i % 2 == 0 { im } else { -im };
        let got = evaluate(&v, &ctx.complex(re, im), &ctx).unwrap();
        let want = mellin_s_minus1(re, im, 160);
        let d = abs_diff(&got, &want);
        assert!(d < 1e-12, "S[-1]({re}+{im}i): {d:e}");
    }
}

#[test]
fn conjugate_symmetry() {
    let ctx = EvalContext::new(30).unwrap();
    let basis = all_basis();
    for (i, (re, im)) in SamplePlan::new(50, 11).points().into_iter().enumerate() {
        let v = &basis[i * 7 % basis.len()];
        let a = evaluate(v, &ctx.complex(re, im), &ctx).unwrap();
        let b = evaluate(v, &ctx.complex(re, -im), &ctx).unwrap();
        let d = abs_diff(&a, &Complex::with_val(ctx.prec(), b.conj_ref()));
        assert!(d < 1e-20, "S[{v}] at {re}+{im}i: {d:e}");
    }
}

#[test]
fn recurrence_consistency() {
    let ctx = EvalContext::new(30).unwrap();
    let basis = all_basis();
    for (i, (re, im)) in SamplePlan::new(50, 12).points().into_iter().enumerate() {
        let v = &basis[i * 11 % basis.len()];
        let a = v.head();
        let z = ctx.complex(re, im);
        let mut z1 = z.clone();
        z1 += 1;
        let inner = |branch| match v.tail() {
            Some(t) => evaluate_branch(&t, &z1, branch, &ctx).unwrap(),
            None => Complex::with_val(ctx.prec(), 1),
        };
        let w = Complex::with_val(ctx.prec(), (&z1).pow(-(a.abs())));
        // S+(z+1) = S-(z) + (z+1)^{-|a|} S+_tail(z+1)
        let lhs = evaluate_branch(v, &z1, Branch::Even, &ctx).unwrap();
        let rhs = evaluate_branch(v, &z, Branch::Odd, &ctx).unwrap() + Complex::with_val(ctx.prec(), &w * &inner(Branch::Even));
        assert!(abs_diff(&lhs, &rhs) < 1e-20, "even step for S[{v}]");
        // S-(z+1) = S+(z) + sign(a) (z+1)^{-|a|} S-_tail(z+1)
        let mut step = Complex::with_val(ctx.prec(), &w * &inner(Branch::Odd));
        if a < 0 {
            step = -step;
        }
        let lhs = evaluate_branch(v, &z1, Branch::Odd, &ctx).unwrap();
        let rhs = evaluate(v, &z, &ctx).unwrap() + step;
        assert!(abs_diff(&lhs, &rhs) < 1e-20, "odd step for S[{v}]");
    }
}

#[test]
fn error_bound_is_honest() {
    let lo = EvalContext::new(30).unwrap();
    let hi = EvalContext::new(60).unwrap();
    for v in build_basis(4).unwrap().iter().step_by(5) {
        let z = lo.complex(-1.3, 0.6);
        let e = evaluate_with_error(v, &z, &lo).unwrap();
        let exact = evaluate(v, &hi.complex(-1.3, 0.6), &hi).unwrap();
        let d = abs_diff(&Complex::with_val(hi.prec(), &e.value), &exact);
        assert!(d <= e.error_bound, "S[{v}]: actual {d:e} bound {:e}", e.error_bound);
        assert!(e.error_bound < 1e-28);
    }
}

#[test]
fn rejects_points_at_poles() {
    let ctx = EvalContext::new(30).unwrap();
    let v = IndexVector::from_slice(&[1]);
    assert!(matches!(evaluate(&v, &ctx.complex(-1.0, 0.0), &ctx), Err(HsumError::PoleProximity { .. })));
    assert!(matches!(evaluate(&v, &ctx.complex(-3.0, 1e-6), &ctx), Err(HsumError::PoleProximity { .. })));
    assert!(evaluate(&v, &ctx.complex(-3.0, 0.1), &ctx).is_ok());
    assert!(matches!(EvalContext::new(10), Err(HsumError::InvalidContext(_))));
}

#[test]
fn simple_closed_forms() {
    let ctx = EvalContext::new(40).unwrap();
    let prec = ctx.prec();
    // S_1(1/2) = 2 - 2 ln 2 on the even branch (psi(3/2) + gamma)
    let got = evaluate(&IndexVector::from_slice(&[1]), &ctx.complex(0.5, 0.0), &ctx).unwrap();
    let want = Float::with_val(prec, 2) - Float::with_val(prec, Constant::Log2) * 2u32;
    assert!(abs_diff(&got, &Complex::with_val(prec, want)) < 1e-35);
    // S_2(z) -> zeta2 as z -> infinity
    let big = evaluate(&IndexVector::from_slice(&[2]), &ctx.complex(1e6, 0.0), &ctx).unwrap();
    let z2 = constant_value(ConstantSymbol::Zeta2, 40);
    assert!((Float::with_val(prec, big.real() - &z2).abs().to_f64() - 1e-6).abs() < 1e-9);
}

fn laurent_of(v: &[i32], z0: i64, ctx: &EvalContext) -> Vec<Complex> {
    let v = IndexVector::from_slice(v);
    laurent_coefficients(|z| evaluate(&v, z, ctx), z0, -3..=-1, LaurentOptions::default(), ctx).unwrap()
}

#[test]
fn pole_orders_at_negative_integers() {
    let ctx = EvalContext::new(30).unwrap();
    let near = |c: &Complex, re: f64| abs_diff(c, &Complex::with_val(ctx.prec(), (re, 0))) < 1e-15;
    // S_1 = psi(z+1) + gamma: simple poles with residue -1
    for z0 in [-1, -2, -3] {
        let c = laurent_of(&[1], z0, &ctx);
        assert!(near(&c[0], 0.0) && near(&c[1], 0.0) && near(&c[2], -1.0), "S[1] at {z0}");
    }
    // S_-1 = -ln 2 + int x^z/(1+x): residue (-1)^(z0+1)
    let c = laurent_of(&[-1], -1, &ctx);
    assert!(near(&c[2], 1.0));
    let c = laurent_of(&[-1], -2, &ctx);
    assert!(near(&c[2], -1.0));
    // S_2 = zeta2 - psi'(z+1): double pole with coefficient -1
    let c = laurent_of(&[2], -1, &ctx);
    assert!(near(&c[0], 0.0) && near(&c[1], -1.0) && near(&c[2], 0.0));
    // sum_k S_{1^k}(n) x^k = Gamma(n+1) Gamma(1-x) / Gamma(n+1-x) is regular at
    // negative n, so the poles of S_1^3, S_1 S_2 and S_3 cancel in S_{1,1,1}
    let v = IndexVector::from_slice(&[1, 1, 1]);
    let c = laurent_coefficients(|z| evaluate(&v, z, &ctx), -2, -5..=-1, LaurentOptions::default(), &ctx).unwrap();
    assert!(c.iter().all(|x| abs_diff(x, &Complex::new(ctx.prec())) < 1e-15), "{c:?}");
}

#[test]
fn constants_against_independent_series() {
    let prec = 200;
    let f = |x: i64| Float::with_val(prec, x);
    // ln 2 = sum 1/(k 2^k)
    let mut ln2 = f(0);
    // Li4(1/2) = sum 1/(k^4 2^k)
    let mut li4 = f(0);
    for k in 1..=200i64 {
        let p = Float::with_val(prec, Float::i_exp(1, -(k as i32)));
        ln2 += Float::with_val(prec, &p / k);
        li4 += p / (k * k * k * k);
    }
    // zeta3 = 5/2 sum (-1)^{k+1} / (k^3 binom(2k, k))
    // zeta2 = 3 sum 1 / (k^2 binom(2k, k))
    let mut z3 = f(0);
    let mut z2 = f(0);
    let mut binom = rug::Integer::from(1);
    for k in 1..=200u32 {
        binom = binom * (2 * (2 * k - 1)) / k;
        let b = Float::with_val(prec, &binom);
        let k3 = Float::with_val(prec, k).pow(3u32);
        let t = Float::with_val(prec, 1u32 / (k3 * &b));
        if k % 2 == 1 { z3 += t } else { z3 -= t }
        z2 += Float::with_val(prec, 1u32 / (Float::with_val(prec, k * k) * &b));
    }
    z3 = z3 * 5u32 / 2u32;
    z2 *= 3u32;
    for (sym, want) in [
        (ConstantSymbol::Ln2, ln2),
        (ConstantSymbol::Zeta2, z2),
        (ConstantSymbol::Zeta3, z3),
        (ConstantSymbol::Li4Half, li4),
    ] {
        let got = constant_value(sym, 50);
        let d = Float::with_val(prec, &got - &want).abs().to_f64();
        assert!(d < 1e-49, "{sym:?}: {d:e}");
    }
}
