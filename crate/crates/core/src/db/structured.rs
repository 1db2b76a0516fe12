//! JSON interchange. Keys are emitted in alphabetical order so output is
//! byte-stable; coefficients carry explicit numerator and denominator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::CorpusFile;
use crate::constants::{ConstantMonomial, ConstantSymbol};
use crate::error::{HsumError, Result};
use crate::expr::{Expression, SumRef, Term};
use crate::identity::{IdentityRecord, Provenance};
use crate::index::{ArgTag, IndexVector};

const FORMAT_NAME: &str = "hsum-identities";

// Field order below is alphabetical on purpose: serde emits declaration order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileJson {
    format: String,
    records: Vec<RecordJson>,
    version: String,
    weight: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordJson {
    left: Vec<SumJson>,
    provenance: Provenance,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SumJson {
    arg_tag: ArgTag,
    indices: IndexVector,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    arg_tag: Option<ArgTag>,
    const_exponents: BTreeMap<String, u32>,
    den: String,
    indices: Option<IndexVector>,
    num: String,
}

fn term_to_json(t: &Term) -> TermJson {
    let const_exponents = ConstantSymbol::ALL
        .iter()
        .filter(|&&s| t.cmono.exponent(s) > 0)
        .map(|&s| (s.token().to_string(), t.cmono.exponent(s)))
        .collect();
    TermJson {
        arg_tag: t.sum.as_ref().map(|s| s.tag),
        const_exponents,
        den: t.coeff.denom().to_string(),
        indices: t.sum.as_ref().map(|s| s.indices.clone()),
        num: t.coeff.numer().to_string(),
    }
}

fn term_from_json(t: TermJson) -> Result<Term> {
    let bad = |m: String| HsumError::Validation(m);
    let num: BigInt = t.num.parse().map_err(|_| bad(format!("bad numerator {:?}", t.num)))?;
    let den: BigInt = t.den.parse().map_err(|_| bad(format!("bad denominator {:?}", t.den)))?;
    if den == BigInt::from(0) {
        return Err(bad("zero denominator".into()));
    }
    let mut cmono = ConstantMonomial::ONE;
    for (tok, e) in &t.const_exponents {
        let sym = ConstantSymbol::from_token(tok).ok_or_else(|| bad(format!("unknown constant {tok:?}")))?;
        cmono = cmono.mul(&ConstantMonomial::power(sym, *e));
    }
    let sum = match (t.arg_tag, t.indices) {
        (Some(tag), Some(indices)) => Some(SumRef::new(indices, tag)),
        (None, None) => None,
        _ => return Err(bad("arg_tag and indices must appear together".into())),
    };
    Ok(Term::new(BigRational::new(num, den), cmono, sum))
}

fn record_to_json(r: &IdentityRecord) -> RecordJson {
    RecordJson {
        left: r.left().iter().map(|s| SumJson { arg_tag: s.tag, indices: s.indices.clone() }).collect(),
        provenance: r.provenance(),
        terms: r.right().terms().iter().map(term_to_json).collect(),
    }
}

fn record_from_json(r: RecordJson) -> Result<IdentityRecord> {
    let left = r.left.into_iter().map(|s| SumRef::new(s.indices, s.arg_tag)).collect();
    let terms = r.terms.into_iter().map(term_from_json).collect::<Result<Vec<_>>>()?;
    IdentityRecord::new(left, Expression::from_terms(terms), r.provenance)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_structured(file: &CorpusFile) -> Result<String> {
    let json = FileJson {
        format: FORMAT_NAME.into(),
        records: file.records.iter().map(record_to_json).collect(),
        version: file.version.clone(),
        weight: file.weight,
    };
    let mut s = serde_json::to_string_pretty(&json)?;
    s.push('\n');
    Ok(s)
}

/// Parses and validates a structured file.
pub fn from_structured(text: &str) -> Result<CorpusFile> {
    let file = from_structured_records(text)?;
    file.validate()?;
    Ok(file)
}

pub(super) fn from_structured_records(text: &str) -> Result<CorpusFile> {
    let json: FileJson = serde_json::from_str(text)?;
    if json.format != FORMAT_NAME {
        return Err(HsumError::Validation(format!("unexpected format {:?}", json.format)));
    }
    let records = json.records.into_iter().map(record_from_json).collect::<Result<Vec<_>>>()?;
    let file = CorpusFile { version: json.version, weight: json.weight, records };
    file.validate_records()?;
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::parse_identity;

    #[test]
    fn round_trip_single_record() {
        let id = parse_identity("s[1]*sb[3] = 8/5*z2^2 - z2*s[2] - z2*sb[2] + z3*s[1] - z3*sb[1] + s[3,1] + sb[1,3]")
            .unwrap();
        let file = CorpusFile::new(4, vec![id]);
        let err = to_structured(&file).and_then(|s| from_structured(&s));
        // a lone weight-4 record is not a complete corpus
        assert!(matches!(err, Err(HsumError::Validation(_))));
        let file = CorpusFile::new(2, vec![parse_identity("s[1]*sb[1] = z2 - s[1,1] + s[2]").unwrap()]);
        let text = to_structured(&file).unwrap();
        assert!(text.contains("\"const_exponents\": {\n"));
        assert_eq!(from_structured(&text).unwrap(), file);
    }
}
