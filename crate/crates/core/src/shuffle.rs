//! Quasi-shuffle (stuffle) product of two harmonic sums with the same argument.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constants::ConstantMonomial;
use crate::expr::{Expression, SumRef, Term};
use crate::index::{ArgTag, IndexVector};

type Word = Vec<i32>;
type Linear = BTreeMap<Word, BigInt>;

type Cache = Mutex<HashMap<(Word, Word), Arc<Linear>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn contract(a: i32, b: i32) -> i32 {
    let s = a.signum() * b.signum();
    s * (a.abs() + b.abs())
}

fn add_prefixed(out: &mut Linear, head: i32, rest: &Linear, sign: i64) {
    for (w, c) in rest {
        let mut word = Vec::with_capacity(w.len() + 1);
        word.push(head);
        word.extend_from_slice(w);
        let slot = out.entry(word).or_insert_with(BigInt::zero);
        *slot += c * sign;
    }
}

// Words may be empty here; the empty word stands for the constant 1.
fn product(a: &[i32], b: &[i32]) -> Arc<Linear> {
    if a.is_empty() || b.is_empty() {
        let w = if a.is_empty() { b } else { a };
        let mut out = Linear::new();
        out.insert(w.to_vec(), BigInt::one());
        return Arc::new(out);
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(hit) = cache().lock().expect("shuffle cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let mut out = Linear::new();
    add_prefixed(&mut out, a[0], &product(&a[1..], b), 1);
    add_prefixed(&mut out, b[0], &product(a, &b[1..]), 1);
    add_prefixed(&mut out, contract(a[0], b[0]), &product(&a[1..], &b[1..]), -1);
    out.retain(|_, c| !c.is_zero());
    let out = Arc::new(out);
    cache()
        .lock()
        .expect("shuffle cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&out));
    out
}

/// Writes `S_a * S_b` as a linear combination of single sums, each stamped
/// with `tag`. For every `n >= 1` the result evaluated with exact finite sums
/// equals `S_a(n) * S_b(n)`.
pub fn stuffle_product_tagged(a: &IndexVector, b: &IndexVector, tag: ArgTag) -> Expression {
    let lin = product(a.indices(), b.indices());
    let terms = lin
        .iter()
        .map(|(w, c)| {
            let v = IndexVector::new(w.clone()).expect("stuffle words are nonempty");
            Term::new(BigRational::from_integer(c.clone()), ConstantMonomial::ONE, Some(SumRef::new(v, tag)))
        })
        .collect();
    Expression::from_terms(terms).canonicalize()
}

/// [`stuffle_product_tagged`] with the plain argument tag; callers working at
/// `-1-z` can restamp with [`Expression::with_tag`].
pub fn stuffle_product(a: &IndexVector, b: &IndexVector) -> Expression {
    stuffle_product_tagged(a, b, ArgTag::Z)
}

/// Compact rendering without coefficient-one noise, deepest sums first,
/// e.g. `s[1,2]+s[2,1]-s[3]`.
pub fn render_linear(e: &Expression) -> String {
    let mut terms: Vec<_> = e.terms().iter().collect();
    terms.sort_by_key(|t| std::cmp::Reverse(t.sum.as_ref().map_or(0, |s| s.indices.depth())));
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        let neg = t.coeff < BigRational::zero();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        if let Some(s) = &t.sum {
            let name = match s.tag {
                ArgTag::Z => "s",
                ArgTag::Refl => "sb",
            };
            out.push_str(&format!("{name}[{}]", s.indices));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i32]) -> IndexVector {
        IndexVector::from_slice(v)
    }

    #[test]
    fn depth_one_examples() {
        assert_eq!(render_linear(&stuffle_product(&iv(&[1]), &iv(&[1]))), "2*s[1,1]-s[2]");
        assert_eq!(render_linear(&stuffle_product(&iv(&[1]), &iv(&[2]))), "s[1,2]+s[2,1]-s[3]");
        assert_eq!(render_linear(&stuffle_product(&iv(&[-1]), &iv(&[1]))), "s[-1,1]+s[1,-1]-s[-2]");
    }

    #[test]
    fn contraction_sign() {
        assert_eq!(contract(-1, -2), 3);
        assert_eq!(contract(-1, 2), -3);
        assert_eq!(contract(1, 1), 2);
    }

    #[test]
    fn tag_is_stamped() {
        let e = stuffle_product_tagged(&iv(&[1]), &iv(&[2]), ArgTag::Refl);
        assert!(e.terms().iter().all(|t| t.sum.as_ref().unwrap().tag == ArgTag::Refl));
        assert_eq!(render_linear(&e), "sb[1,2]+sb[2,1]-sb[3]");
    }
}
