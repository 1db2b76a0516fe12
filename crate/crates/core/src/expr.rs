//! Rational-linear combinations of constant monomials times harmonic sums.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constants::ConstantMonomial;
use crate::index::{ArgTag, IndexVector};

/// A harmonic sum together with the argument it is taken at.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumRef {
    pub tag: ArgTag,
    pub indices: IndexVector,
}

impl SumRef {
    pub fn new(indices: IndexVector, tag: ArgTag) -> Self {
        SumRef { tag, indices }
    }

    pub fn z(indices: &[i32]) -> Self {
        SumRef::new(IndexVector::from_slice(indices), ArgTag::Z)
    }

    pub fn refl(indices: &[i32]) -> Self {
        SumRef::new(IndexVector::from_slice(indices), ArgTag::Refl)
    }

    pub fn reflected(&self) -> SumRef {
        SumRef::new(self.indices.clone(), self.tag.flipped())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub cmono: ConstantMonomial,
    pub sum: Option<SumRef>,
}

/// Identifies the basis element a term multiplies; like terms share a key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermKey {
    pub cmono: ConstantMonomial,
    pub sum: Option<SumRef>,
}

// Pure constants first, then sums carrying a constant factor (ordered by
// the constant), then bare sums; ties broken by argument tag and indices.
impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |k: &TermKey| (k.sum.is_some(), k.cmono.is_one());
        rank(self)
            .cmp(&rank(other))
            .then_with(|| self.cmono.cmp(&other.cmono))
            .then_with(|| self.sum.cmp(&other.sum))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Term {
    pub fn new(coeff: BigRational, cmono: ConstantMonomial, sum: Option<SumRef>) -> Self {
        Term { coeff, cmono, sum }
    }

    pub fn key(&self) -> TermKey {
        TermKey {
            cmono: self.cmono,
            sum: self.sum.clone(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.cmono.weight() + self.sum.as_ref().map_or(0, |s| s.indices.weight())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expression {
    terms: Vec<Term>,
}

impl Expression {
    pub fn new() -> Self {
        Expression { terms: Vec::new() }
    }

    /// Wraps terms as given, without merging or sorting.
    pub fn from_terms(terms: Vec<Term>) -> Self {
        Expression { terms }
    }

    /// A single sum with coefficient one.
    pub fn sum(sum: SumRef) -> Self {
        Expression::from_terms(vec![Term::new(BigRational::one(), ConstantMonomial::ONE, Some(sum))])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: Term) {
        self.terms.push(term);
    }

    pub fn extend(&mut self, other: Expression) {
        self.terms.extend(other.terms);
    }

    /// Merges like terms, drops zero coefficients and sorts by [`TermKey`].
    pub fn canonicalize(&self) -> Expression {
        let mut merged: BTreeMap<TermKey, BigRational> = BTreeMap::new();
        for t in &self.terms {
            let slot = merged.entry(t.key()).or_insert_with(BigRational::zero);
            *slot += &t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Term::new(c, k.cmono, k.sum))
            .collect();
        Expression { terms }
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_zero())
            && self.terms.windows(2).all(|w| w[0].key() < w[1].key())
    }

    pub fn scaled(&self, factor: &BigRational, cmono: &ConstantMonomial) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.coeff * factor, t.cmono.mul(cmono), t.sum.clone()))
                .collect(),
        }
    }

    /// Swaps `z` and `-1-z` in every sum.
    pub fn reflected(&self) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), t.cmono, t.sum.as_ref().map(SumRef::reflected)))
                .collect(),
        }
    }

    /// Replaces every sum's tag with `tag`.
    pub fn with_tag(&self, tag: ArgTag) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let sum = t.sum.as_ref().map(|s| SumRef::new(s.indices.clone(), tag));
                    Term::new(t.coeff.clone(), t.cmono, sum)
                })
                .collect(),
        }
    }

    /// The common total weight of all terms, or `None` when the terms
    /// disagree. The empty expression has no weight.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(Term::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn coefficient(&self, cmono: &ConstantMonomial, sum: Option<&SumRef>) -> BigRational {
        self.terms
            .iter()
            .filter(|t| &t.cmono == cmono && t.sum.as_ref() == sum)
            .fold(BigRational::zero(), |acc, t| acc + &t.coeff)
    }

    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .iter()
            .map(|t| t.coeff.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl std::ops::Sub for &Expression {
    type Output = Expression;

    fn sub(self, rhs: &Expression) -> Expression {
        let mut out = self.clone();
        out.terms.extend(rhs.terms.iter().map(|t| Term::new(-t.coeff.clone(), t.cmono, t.sum.clone())));
        out.canonicalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ConstantSymbol;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cancellation_gives_empty() {
        let e = Expression::from_terms(vec![
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::z(&[1]))),
            Term::new(q(-1, 1), ConstantMonomial::ONE, Some(SumRef::z(&[1]))),
        ]);
        assert!(e.canonicalize().is_empty());
    }

    #[test]
    fn like_terms_merge() {
        let z2 = ConstantMonomial::symbol(ConstantSymbol::Zeta2);
        let e = Expression::from_terms(vec![
            Term::new(q(2, 1), z2, Some(SumRef::z(&[2]))),
            Term::new(q(3, 1), z2, Some(SumRef::z(&[2]))),
        ]);
        let c = e.canonicalize();
        assert_eq!(c.len(), 1);
        assert_eq!(c.terms()[0].coeff, q(5, 1));
        assert_eq!(c.canonicalize(), c);
        assert!(c.is_canonical());
    }

    #[test]
    fn ordering_puts_constants_first() {
        let z2 = ConstantMonomial::symbol(ConstantSymbol::Zeta2);
        let e = Expression::from_terms(vec![
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::refl(&[1, 3]))),
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::z(&[3, 1]))),
            Term::new(q(-1, 1), z2, Some(SumRef::refl(&[2]))),
            Term::new(q(8, 5), ConstantMonomial::power(ConstantSymbol::Zeta2, 2), None),
            Term::new(q(-1, 1), z2, Some(SumRef::z(&[2]))),
        ])
        .canonicalize();
        let keys: Vec<_> = e
            .terms()
            .iter()
            .map(|t| (t.cmono.to_string(), t.sum.as_ref().map(|s| (s.tag, s.indices.to_string()))))
            .collect();
        assert_eq!(keys[0], ("z2^2".to_string(), None));
        assert_eq!(keys[1].1, Some((ArgTag::Z, "2".to_string())));
        assert_eq!(keys[2].1, Some((ArgTag::Refl, "2".to_string())));
        assert_eq!(keys[3].1, Some((ArgTag::Z, "3,1".to_string())));
        assert_eq!(keys[4].1, Some((ArgTag::Refl, "1,3".to_string())));
        assert_eq!(e.homogeneous_weight(), Some(4));
    }

    #[test]
    fn reflection_is_involution() {
        let e = Expression::from_terms(vec![
            Term::new(q(1, 2), ConstantMonomial::ONE, Some(SumRef::z(&[1, -1]))),
            Term::new(q(3, 1), ConstantMonomial::symbol(ConstantSymbol::Ln2), None),
        ])
        .canonicalize();
        assert_eq!(e.reflected().reflected(), e);
        assert_ne!(e.reflected(), e);
    }

    #[test]
    fn mixed_weights_are_detected() {
        let e = Expression::from_terms(vec![
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::z(&[1]))),
            Term::new(q(1, 1), ConstantMonomial::ONE, Some(SumRef::z(&[2]))),
        ]);
        assert_eq!(e.homogeneous_weight(), None);
        assert_eq!(Expression::new().homogeneous_weight(), None);
    }
}
