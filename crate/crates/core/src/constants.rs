//! The transcendental constant alphabet `{ln 2, zeta_2, zeta_3, Li_4(1/2)}`
//! and products of its letters.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HsumError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantSymbol {
    Ln2,
    Zeta2,
    Zeta3,
    Li4Half,
}

impl ConstantSymbol {
    pub const ALL: [ConstantSymbol; 4] = [
        ConstantSymbol::Ln2,
        ConstantSymbol::Zeta2,
        ConstantSymbol::Zeta3,
        ConstantSymbol::Li4Half,
    ];

    pub fn weight(self) -> u32 {
        match self {
            ConstantSymbol::Ln2 => 1,
            ConstantSymbol::Zeta2 => 2,
            ConstantSymbol::Zeta3 => 3,
            ConstantSymbol::Li4Half => 4,
        }
    }

    /// Token used by the compact identity notation.
    pub fn token(self) -> &'static str {
        match self {
            ConstantSymbol::Ln2 => "ln2",
            ConstantSymbol::Zeta2 => "z2",
            ConstantSymbol::Zeta3 => "z3",
            ConstantSymbol::Li4Half => "Li4h",
        }
    }

    pub fn from_token(token: &str) -> Option<ConstantSymbol> {
        ConstantSymbol::ALL.into_iter().find(|s| s.token() == token)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// `ln2^e0 * z2^e1 * z3^e2 * Li4h^e3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstantMonomial {
    exponents: [u32; 4],
}

impl ConstantMonomial {
    pub const ONE: ConstantMonomial = ConstantMonomial { exponents: [0; 4] };

    pub fn from_exponents(exponents: [u32; 4]) -> Self {
        ConstantMonomial { exponents }
    }

    pub fn symbol(sym: ConstantSymbol) -> Self {
        Self::power(sym, 1)
    }

    pub fn power(sym: ConstantSymbol, e: u32) -> Self {
        let mut exponents = [0; 4];
        exponents[sym.slot()] = e;
        ConstantMonomial { exponents }
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.exponents
    }

    pub fn exponent(&self, sym: ConstantSymbol) -> u32 {
        self.exponents[sym.slot()]
    }

    pub fn weight(&self) -> u32 {
        ConstantSymbol::ALL
            .iter()
            .map(|s| s.weight() * self.exponent(*s))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents == [0; 4]
    }

    pub fn mul(&self, other: &ConstantMonomial) -> ConstantMonomial {
        let mut exponents = self.exponents;
        for (e, o) in exponents.iter_mut().zip(other.exponents) {
            *e += o;
        }
        ConstantMonomial { exponents }
    }
}

impl Ord for ConstantMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for ConstantMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Writes `ln2^2*z2`; the empty monomial prints as `1`.
impl fmt::Display for ConstantMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for sym in ConstantSymbol::ALL {
            let e = self.exponent(sym);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(sym.token())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Irreducible constant monomials of weight `w`, in the order
/// `C_1 = {ln2}`, `C_2 = {pi^2, ln^2 2}`, `C_3 = {pi^2 ln2, ln^3 2, zeta_3}`,
/// `C_4 = {pi^4, pi^2 ln^2 2, ln^4 2, Li_4(1/2), zeta_3 ln2}`, with every
/// power of pi rewritten through `zeta_2`.
pub fn build_constants(w: u32) -> Result<Vec<ConstantMonomial>> {
    use ConstantSymbol::*;
    let m = ConstantMonomial::from_exponents;
    let out = match w {
        1 => vec![ConstantMonomial::symbol(Ln2)],
        2 => vec![ConstantMonomial::symbol(Zeta2), ConstantMonomial::power(Ln2, 2)],
        3 => vec![m([1, 1, 0, 0]), ConstantMonomial::power(Ln2, 3), ConstantMonomial::symbol(Zeta3)],
        4 => vec![
            ConstantMonomial::power(Zeta2, 2),
            m([2, 1, 0, 0]),
            ConstantMonomial::power(Ln2, 4),
            ConstantMonomial::symbol(Li4Half),
            m([1, 0, 1, 0]),
        ],
        _ => return Err(HsumError::WeightOutOfRange(w)),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sets() {
        assert_eq!(build_constants(1).unwrap().len(), 1);
        assert_eq!(build_constants(2).unwrap().len(), 2);
        let c3 = build_constants(3).unwrap();
        assert_eq!(c3.len(), 3);
        assert_eq!(
            c3.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["ln2*z2", "ln2^3", "z3"]
        );
        assert_eq!(build_constants(4).unwrap().len(), 5);
        for w in 1..=4 {
            assert!(build_constants(w).unwrap().iter().all(|c| c.weight() == w));
        }
        assert!(build_constants(0).is_err());
        assert!(build_constants(5).is_err());
    }

    #[test]
    fn empty_monomial() {
        assert_eq!(ConstantMonomial::ONE.weight(), 0);
        assert_eq!(ConstantMonomial::ONE.to_string(), "1");
        let m = ConstantMonomial::symbol(ConstantSymbol::Zeta3).mul(&ConstantMonomial::symbol(ConstantSymbol::Ln2));
        assert_eq!(m.weight(), 4);
        assert_eq!(m.to_string(), "ln2*z3");
    }

    #[test]
    fn tokens_round_trip() {
        for s in ConstantSymbol::ALL {
            assert_eq!(ConstantSymbol::from_token(s.token()), Some(s));
        }
        assert_eq!(ConstantSymbol::from_token("pi"), None);
    }
}
