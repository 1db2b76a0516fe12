use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::in_basis;
use crate::error::{HsumError, Result};
use crate::expr::{Expression, SumRef};
use crate::index::{ArgTag, IndexVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Corpus,
    Derived,
    Reflected,
    Composed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Corpus => "corpus",
            Provenance::Derived => "derived",
            Provenance::Reflected => "reflected",
            Provenance::Composed => "composed",
        };
        f.write_str(s)
    }
}

/// `prod(left) = right`, where the left side is a product of tagged sums and
/// the right side is linear in single sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRecord {
    left: Vec<SumRef>,
    right: Expression,
    weight: u32,
    provenance: Provenance,
}

impl IdentityRecord {
    /// Validates and canonicalizes: the left factors are sorted, the right
    /// side is merged, and every term must carry the left side's weight with
    /// its sum drawn from `B_1..B_4`.
    pub fn new(mut left: Vec<SumRef>, right: Expression, provenance: Provenance) -> Result<Self> {
        if left.is_empty() {
            return Err(HsumError::Validation("identity has an empty left side".into()));
        }
        left.sort();
        let weight: u32 = left.iter().map(|s| s.indices.weight()).sum();
        let right = right.canonicalize();
        for t in right.terms() {
            if t.weight() != weight {
                return Err(HsumError::Validation(format!(
                    "term of weight {} in an identity of weight {weight}",
                    t.weight()
                )));
            }
            if let Some(s) = &t.sum {
                if !in_basis(&s.indices) {
                    return Err(HsumError::Validation(format!("S_{{{}}} is not a basis sum", s.indices)));
                }
            }
        }
        Ok(IdentityRecord { left, right, weight, provenance })
    }

    /// `S_a(z) S_b(-1-z) = right`.
    pub fn bilinear(a: IndexVector, b: IndexVector, right: Expression, provenance: Provenance) -> Result<Self> {
        Self::new(vec![SumRef::new(a, ArgTag::Z), SumRef::new(b, ArgTag::Refl)], right, provenance)
    }

    pub fn left(&self) -> &[SumRef] {
        &self.left
    }

    pub fn right(&self) -> &Expression {
        &self.right
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// `(a, b)` for a product `S_a(z) S_b(-1-z)`; `None` for other shapes.
    pub fn bilinear_key(&self) -> Option<(&IndexVector, &IndexVector)> {
        match self.left.as_slice() {
            [x, y] if x.tag == ArgTag::Z && y.tag == ArgTag::Refl => Some((&x.indices, &y.indices)),
            _ => None,
        }
    }

    /// The same identity after `z -> -1-z`.
    pub fn reflect(&self) -> IdentityRecord {
        let left = self.left.iter().map(SumRef::reflected).collect();
        IdentityRecord::new(left, self.right.reflected(), Provenance::Reflected)
            .expect("reflection preserves validity")
    }
}

/// The identity with `z` and `-1-z` exchanged; provenance becomes `Reflected`.
pub fn reflect(id: &IdentityRecord) -> IdentityRecord {
    id.reflect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ConstantMonomial, ConstantSymbol};
    use crate::expr::Term;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn s1s3() -> IdentityRecord {
        let z2 = ConstantMonomial::symbol(ConstantSymbol::Zeta2);
        let z3 = ConstantMonomial::symbol(ConstantSymbol::Zeta3);
        let right = Expression::from_terms(vec![
            Term::new(q(8, 5), ConstantMonomial::power(ConstantSymbol::Zeta2, 2), None),
            Term::new(q(-1, 1), z2, Some(SumRef::z(&[2]))),
            Term::new(q(-1, 1), z2, Some(SumRef::refl(&[2]))),
            Term::new(q(1, 1), z3, Some(SumRef::z(&[1]))),
            Term::new(q(-1, 1), z3, Some(SumRef::refl(&[1]))),
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::z(&[3, 1]))),
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::refl(&[1, 3]))),
        ]);
        IdentityRecord::bilinear(IndexVector::from_slice(&[1]), IndexVector::from_slice(&[3]), right, Provenance::Corpus)
            .unwrap()
    }

    #[test]
    fn reflection_is_an_involution() {
        let id = s1s3();
        let r = id.reflect();
        assert_eq!(r.provenance(), Provenance::Reflected);
        assert_eq!(r.right().len(), id.right().len());
        assert_eq!(r.bilinear_key().unwrap().0, &IndexVector::from_slice(&[3]));
        assert_eq!(r.reflect().with_provenance(Provenance::Corpus), id);
    }

    #[test]
    fn weight_mismatch_rejected() {
        let right = Expression::sum(SumRef::z(&[2]));
        let ok = IdentityRecord::bilinear(IndexVector::from_slice(&[1]), IndexVector::from_slice(&[1]), right.clone(), Provenance::Corpus);
        assert!(ok.is_ok());
        let err = IdentityRecord::bilinear(IndexVector::from_slice(&[1]), IndexVector::from_slice(&[2]), right, Provenance::Corpus);
        assert!(matches!(err, Err(HsumError::Validation(_))));
    }
}
