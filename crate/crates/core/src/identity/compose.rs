use super::record::{IdentityRecord, Provenance};
use crate::db::CorpusFile;
use crate::error::{HsumError, Result};
use crate::expr::{Expression, SumRef};
use crate::index::{ArgTag, IndexVector};
use crate::shuffle::stuffle_product_tagged;

/// Right side for `S_a(z) S_b(-1-z)` from the corpus, directly or through
/// the reflected record `S_b(z) S_a(-1-z)`.
pub fn lookup_bilinear(a: &IndexVector, b: &IndexVector, corpus: &CorpusFile) -> Result<Expression> {
    if let Some(r) = corpus.find(a, b) {
        return Ok(r.right().clone());
    }
    if let Some(r) = corpus.find(b, a) {
        return Ok(r.right().reflected());
    }
    Err(HsumError::MissingBilinear(format!("s[{a}]*sb[{b}]")))
}

/// `S_a(z) S_b(-1-z) S_c(-1-z)`: the two reflected factors are merged by the
/// quasi-shuffle product and each resulting bilinear product is replaced by
/// its corpus identity.
pub fn compose_trilinear(a: &IndexVector, b: &IndexVector, c: &IndexVector, corpus: &CorpusFile) -> Result<IdentityRecord> {
    let product = stuffle_product_tagged(b, c, ArgTag::Refl);
    let mut right = Expression::new();
    for t in product.terms() {
        let u = &t.sum.as_ref().expect("stuffle terms carry sums").indices;
        let rhs = lookup_bilinear(a, u, corpus)?;
        right.extend(rhs.scaled(&t.coeff, &t.cmono));
    }
    let left = vec![SumRef::new(a.clone(), ArgTag::Z), SumRef::new(b.clone(), ArgTag::Refl), SumRef::new(c.clone(), ArgTag::Refl)];
    IdentityRecord::new(left, right, Provenance::Composed)
}
