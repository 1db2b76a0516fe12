//! Recovering exact small rationals from high-precision reals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rug::{Float, Integer};

use crate::continuation::rational_to_float;

fn to_bigint(i: &Integer) -> BigInt {
    BigInt::parse_bytes(i.to_string_radix(16).as_bytes(), 16).expect("hex integer")
}

/// Best rational approximation `p/q` of `x` with `q <= max_den`, taken from
/// the continued-fraction convergents; accepted only if within `tol`.
pub fn rational_from_float(x: &Float, max_den: u64, tol: &Float) -> Option<BigRational> {
    let prec = x.prec();
    let mut rest = Float::with_val(prec, x);
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    let mut best: Option<(Integer, Integer)> = None;
    for _ in 0..64 {
        let a = rest.to_integer_round(rug::float::Round::Down)?.0;
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > max_den {
            break;
        }
        let err = Float::with_val(prec, x - Float::with_val(prec, &p2) / &q2).abs();
        best = Some((p2.clone(), q2.clone()));
        if err <= *tol {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = Float::with_val(prec, &rest - &a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    let (p, q) = best?;
    let err = Float::with_val(prec, x - Float::with_val(prec, &p) / &q).abs();
    if err <= *tol {
        Some(BigRational::new(to_bigint(&p), to_bigint(&q)))
    } else {
        None
    }
}

/// Integer relation `m` with `|sum m_i x_i| / |x| < tol` by PSLQ, or `None`
/// if every relation must have norm above `max_norm` or the iteration limit
/// is hit.
pub fn pslq(x: &[Float], tol: &Float, max_norm: f64, max_iter: usize) -> Option<Vec<i128>> {
    let n = x.len();
    assert!(n >= 2);
    let prec = x[0].prec();
    let f = |v: f64| Float::with_val(prec, v);
    let gamma = f((4.0f64 / 3.0).sqrt() + 0.01);
    let threshold = Float::with_val(prec, tol);

    // normalized y and partial norms s
    let mut s = vec![f(0.0); n];
    for k in (0..n).rev() {
        let sq = Float::with_val(prec, x[k].square_ref());
        s[k] = if k + 1 < n { Float::with_val(prec, s[k + 1].square_ref()) + sq } else { sq };
        s[k].sqrt_mut();
    }
    if s[0].is_zero() {
        return None;
    }
    let t0 = s[0].clone();
    let mut y: Vec<Float> = x.iter().map(|v| Float::with_val(prec, v / &t0)).collect();
    for v in s.iter_mut() {
        *v /= &t0;
    }
    let mut h = vec![vec![f(0.0); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            if i == j {
                h[i][j] = Float::with_val(prec, &s[j + 1] / &s[j]);
            } else if j < i {
                let den = Float::with_val(prec, &s[j] * &s[j + 1]);
                h[i][j] = -Float::with_val(prec, &y[i] * &y[j]) / den;
            }
        }
    }
    let mut a = vec![vec![0i128; n]; n];
    let mut b = vec![vec![0i128; n]; n];
    for i in 0..n {
        a[i][i] = 1;
        b[i][i] = 1;
    }

    let reduce = |i: usize, j: usize, h: &mut Vec<Vec<Float>>, y: &mut Vec<Float>, a: &mut Vec<Vec<i128>>, b: &mut Vec<Vec<i128>>| -> bool {
        let q = Float::with_val(prec, &h[i][j] / &h[j][j]);
        let t = q.to_integer().and_then(|t| t.to_i128());
        let Some(t) = t else { return false };
        if t == 0 {
            return true;
        }
        let tf = Float::with_val(prec, Integer::from(t));
        let yi = Float::with_val(prec, &y[i] * &tf);
        y[j] += yi;
        for k in 0..=j {
            let d = Float::with_val(prec, &h[j][k] * &tf);
            h[i][k] -= d;
        }
        for k in 0..n {
            let Some(ak) = t.checked_mul(a[j][k]).and_then(|d| a[i][k].checked_sub(d)) else { return false };
            let Some(bk) = t.checked_mul(b[k][i]).and_then(|d| b[k][j].checked_add(d)) else { return false };
            a[i][k] = ak;
            b[k][j] = bk;
        }
        true
    };

    for i in 1..n {
        for j in (0..i.min(n - 1)).rev() {
            if !reduce(i, j, &mut h, &mut y, &mut a, &mut b) {
                return None;
            }
        }
    }

    for _ in 0..max_iter {
        // exchange
        let mut m = 0;
        let mut best = f(-1.0);
        let mut g = f(1.0);
        for i in 0..n - 1 {
            g *= &gamma;
            let v = Float::with_val(prec, h[i][i].abs_ref()) * &g;
            if v > best {
                best = v;
                m = i;
            }
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 < n {
            let t0 = Float::with_val(prec, h[m][m].square_ref()) + Float::with_val(prec, h[m][m + 1].square_ref());
            let t0 = t0.sqrt();
            let t1 = Float::with_val(prec, &h[m][m] / &t0);
            let t2 = Float::with_val(prec, &h[m][m + 1] / &t0);
            for row in h.iter_mut().skip(m) {
                let t3 = row[m].clone();
                let t4 = row[m + 1].clone();
                row[m] = Float::with_val(prec, &t1 * &t3) + Float::with_val(prec, &t2 * &t4);
                row[m + 1] = Float::with_val(prec, &t1 * &t4) - Float::with_val(prec, &t2 * &t3);
            }
        }
        for i in m + 1..n {
            for j in (0..(i).min(m + 2).min(n - 1)).rev() {
                if !reduce(i, j, &mut h, &mut y, &mut a, &mut b) {
                    return None;
                }
            }
        }

        // a tiny entry of y marks a relation in the matching column of B
        let mut hit = None;
        let mut ymin = f(f64::INFINITY);
        for (j, v) in y.iter().enumerate() {
            let av = Float::with_val(prec, v.abs_ref());
            if av < ymin {
                ymin = av;
                hit = Some(j);
            }
        }
        if ymin < threshold {
            let j = hit.expect("nonempty");
            return Some((0..n).map(|k| b[k][j]).collect());
        }
        // any relation has norm at least 1 / max |H_jj|
        let mut hmax = f(0.0);
        for j in 0..n - 1 {
            let v = Float::with_val(prec, h[j][j].abs_ref());
            if v > hmax {
                hmax = v;
            }
        }
        if hmax.is_zero() || (1.0 / hmax.to_f64()) > max_norm {
            return None;
        }
    }
    None
}

/// Writes `x` as `sum q_i c_i` with rationals `q_i` of denominator at most
/// `max_den`, checked to `tol`. With one basis constant this is a plain
/// continued-fraction rounding of `x / c`.
pub fn reconstruct(x: &Float, basis: &[Float], max_den: u64, tol: &Float) -> Option<Vec<BigRational>> {
    let prec = x.prec();
    if Float::with_val(prec, x.abs_ref()) <= *tol {
        return Some(vec![BigRational::zero(); basis.len()]);
    }
    let coeffs = if basis.len() == 1 {
        let ratio = Float::with_val(prec, x / &basis[0]);
        let scaled_tol = Float::with_val(prec, tol / Float::with_val(prec, basis[0].abs_ref()));
        vec![rational_from_float(&ratio, max_den, &scaled_tol)?]
    } else {
        let mut v = Vec::with_capacity(basis.len() + 1);
        v.push(x.clone());
        v.extend(basis.iter().cloned());
        let norm = v.iter().fold(Float::with_val(prec, 0), |acc, c| acc + Float::with_val(prec, c.square_ref())).sqrt();
        let rel = pslq(&v, &Float::with_val(prec, tol / norm), 1e8, 20_000)?;
        let m0 = rel[0];
        if m0 == 0 || m0.unsigned_abs() > max_den as u128 * max_den as u128 {
            return None;
        }
        let den = BigInt::from(-m0);
        rel[1..].iter().map(|&m| BigRational::new(BigInt::from(m), den.clone())).collect()
    };
    if coeffs.iter().any(|q| q.denom() > &BigInt::from(max_den)) {
        return None;
    }
    let mut approx = Float::with_val(prec, 0);
    for (q, c) in coeffs.iter().zip(basis) {
        approx += rational_to_float(q, prec) * c;
    }
    let err = Float::with_val(prec, x - &approx).abs();
    let scale = Float::with_val(prec, x.abs_ref()).max(&Float::with_val(prec, 1));
    if err <= Float::with_val(prec, tol * scale) {
        Some(coeffs)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    const PREC: u32 = 232;

    fn tol() -> Float {
        Float::with_val(PREC, Float::i_exp(1, -100))
    }

    #[test]
    fn continued_fraction_rounding() {
        let x = Float::with_val(PREC, -61) / 40u32;
        assert_eq!(rational_from_float(&x, 1000, &tol()), Some(BigRational::new((-61).into(), 40.into())));
        let pi = Float::with_val(PREC, Constant::Pi);
        assert_eq!(rational_from_float(&pi, 1000, &tol()), None);
        let three = Float::with_val(PREC, 3);
        assert_eq!(rational_from_float(&three, 1000, &tol()), Some(BigRational::from_integer(3.into())));
    }

    #[test]
    fn pslq_finds_small_relations() {
        let ln2 = Float::with_val(PREC, Constant::Log2);
        let pi = Float::with_val(PREC, Constant::Pi);
        let z2 = Float::with_val(PREC, pi.square_ref()) / 6u32;
        let l2sq = Float::with_val(PREC, ln2.square_ref());
        // x = 33/20 z2 - 7/4 ln2^2
        let x = Float::with_val(PREC, &z2 * 33u32) / 20u32 - Float::with_val(PREC, &l2sq * 7u32) / 4u32;
        let q = reconstruct(&x, &[z2.clone(), l2sq.clone()], 1000, &tol()).unwrap();
        assert_eq!(q, vec![BigRational::new(33.into(), 20.into()), BigRational::new((-7).into(), 4.into())]);
        let zero = Float::with_val(PREC, 0);
        assert_eq!(reconstruct(&zero, &[z2.clone(), l2sq.clone()], 1000, &tol()).unwrap(), vec![BigRational::zero(), BigRational::zero()]);
        // ln 3 has no relation with these
        let ln3 = Float::with_val(PREC, 3).ln();
        assert!(reconstruct(&ln3, &[z2, l2sq], 1000, &tol()).is_none());
    }
}
