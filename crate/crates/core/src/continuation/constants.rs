use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::constants::{ConstantMonomial, ConstantSymbol};

/// Value of a constant symbol at `prec` bits.
pub fn constant_value_prec(sym: ConstantSymbol, prec: u32) -> Float {
    let work = prec + 16;
    let v = match sym {
        ConstantSymbol::Ln2 => Float::with_val(work, Constant::Log2),
        ConstantSymbol::Zeta2 => {
            let pi = Float::with_val(work, Constant::Pi);
            Float::with_val(work, pi.square_ref()) / 6u32
        }
        ConstantSymbol::Zeta3 => Float::with_val(work, 3u32).zeta(),
        ConstantSymbol::Li4Half => li4_half(work),
    };
    Float::with_val(prec, v)
}

/// Value of a constant symbol correct to `digits` decimal digits.
pub fn constant_value(sym: ConstantSymbol, digits: u32) -> Float {
    constant_value_prec(sym, digits_to_bits(digits))
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

// Li_4(1/2) = sum_k 2^{-k} / k^4
fn li4_half(prec: u32) -> Float {
    let mut sum = Float::new(prec);
    let mut pow = Float::with_val(prec, 0.5);
    for k in 1u32.. {
        let k4 = Float::with_val(prec, k).square().square();
        let term = Float::with_val(prec, &pow / &k4);
        if term.get_exp().is_some_and(|e| e < -(prec as i32) - 8) {
            break;
        }
        sum += term;
        pow /= 2u32;
    }
    sum
}

/// Numeric values of the four symbols at a fixed precision.
#[derive(Clone, Debug)]
pub(crate) struct ConstantTable {
    values: [Float; 4],
    prec: u32,
}

impl ConstantTable {
    pub fn new(prec: u32) -> Self {
        ConstantTable {
            values: ConstantSymbol::ALL.map(|s| constant_value_prec(s, prec)),
            prec,
        }
    }

    pub fn get(&self, sym: ConstantSymbol) -> &Float {
        &self.values[sym as usize]
    }

    pub fn monomial(&self, m: &ConstantMonomial) -> Float {
        let mut out = Float::with_val(self.prec, 1);
        for sym in ConstantSymbol::ALL {
            let e = m.exponent(sym);
            if e > 0 {
                out *= Float::with_val(self.prec, self.get(sym).pow(e));
            }
        }
        out
    }
}
