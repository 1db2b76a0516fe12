//! Identity files: the compact line format, the structured JSON format, and
//! the shipped weight-4 corpus.

mod compact;
mod structured;

use std::collections::HashSet;
use std::path::Path;

use crate::basis::build_basis;
use crate::error::{HsumError, Result};
use crate::identity::IdentityRecord;
use crate::index::IndexVector;

pub use compact::{
    format_expression, format_identity, format_left, format_sumref, parse_expression, parse_identity,
    parse_identity_with, parse_sumref,
};
pub use structured::{from_structured, to_structured};

const BUILTIN_WEIGHT4: &str = include_str!("../../data/weight4.txt");

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusFile {
    pub version: String,
    pub weight: u32,
    pub records: Vec<IdentityRecord>,
}

impl CorpusFile {
    pub fn new(weight: u32, records: Vec<IdentityRecord>) -> Self {
        CorpusFile { version: FORMAT_VERSION.into(), weight, records }
    }

    /// The bilinear record `S_a(z) S_b(-1-z)`, if present.
    pub fn find(&self, a: &IndexVector, b: &IndexVector) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.bilinear_key() == Some((a, b)))
    }

    pub fn reflected(&self) -> CorpusFile {
        CorpusFile {
            version: self.version.clone(),
            weight: self.weight,
            records: self.records.iter().map(IdentityRecord::reflect).collect(),
        }
    }

    /// [`CorpusFile::validate_records`], and a weight-4 file must also hold
    /// exactly the 36 `B_1 x B_3` products followed by the 21 unordered
    /// `B_2 x B_2` products, either as stored or with every record reflected.
    pub fn validate(&self) -> Result<()> {
        self.validate_records()?;
        if self.weight == 4 {
            self.check_complete()?;
        }
        Ok(())
    }

    /// Checks that records exist, match the declared weight and have
    /// distinct left sides.
    pub fn validate_records(&self) -> Result<()> {
        if self.records.is_empty() {
            return Err(HsumError::Validation("corpus has no records".into()));
        }
        let mut seen = HashSet::new();
        for (i, r) in self.records.iter().enumerate() {
            if r.weight() != self.weight {
                return Err(HsumError::Validation(format!(
                    "record {} has weight {}, file declares {}",
                    i + 1,
                    r.weight(),
                    self.weight
                )));
            }
            if !seen.insert(r.left().to_vec()) {
                return Err(HsumError::Validation(format!(
                    "duplicate left side {} (record {})",
                    compact::format_left(r.left()),
                    i + 1
                )));
            }
        }
        Ok(())
    }

    fn check_complete(&self) -> Result<()> {
        let b1 = build_basis(1)?;
        let b2 = build_basis(2)?;
        let b3 = build_basis(3)?;
        let mut direct: Vec<(IndexVector, IndexVector)> = Vec::new();
        for a in &b1 {
            for b in &b3 {
                direct.push((a.clone(), b.clone()));
            }
        }
        let split = direct.len();
        let expected = split + b2.len() * (b2.len() + 1) / 2;
        if self.records.len() != expected {
            return Err(HsumError::Validation(format!(
                "a weight-4 corpus needs {expected} records, found {}",
                self.records.len()
            )));
        }
        let keys: Vec<(IndexVector, IndexVector)> = self
            .records
            .iter()
            .map(|r| {
                r.bilinear_key()
                    .map(|(a, b)| (a.clone(), b.clone()))
                    .ok_or_else(|| HsumError::Validation(format!("{} is not bilinear", compact::format_left(r.left()))))
            })
            .collect::<Result<_>>()?;
        let oriented = |flip: bool| -> bool {
            let key = |k: &(IndexVector, IndexVector)| if flip { (k.1.clone(), k.0.clone()) } else { k.clone() };
            let first: HashSet<_> = keys[..split].iter().map(key).collect();
            let second: Vec<_> = keys[split..].iter().map(key).collect();
            let first_ok = first.len() == split && direct.iter().all(|k| first.contains(k));
            let mut pairs = HashSet::new();
            let second_ok = second.iter().all(|(a, b)| {
                let pos = |v: &IndexVector| b2.iter().position(|x| x == v);
                match (pos(a), pos(b)) {
                    (Some(i), Some(j)) => pairs.insert((i.min(j), i.max(j))),
                    _ => false,
                }
            });
            first_ok && second_ok
        };
        if oriented(false) || oriented(true) {
            Ok(())
        } else {
            Err(HsumError::Validation(
                "weight-4 corpus must list every B1 x B3 product, then every unordered B2 x B2 product".into(),
            ))
        }
    }
}

/// Parses the line format: `version: ..`, `weight: ..`, then one identity per
/// line. Blank lines are ignored. Error positions are byte offsets into `text`.
pub fn parse_corpus(text: &str) -> Result<CorpusFile> {
    let file = parse_records(text)?;
    file.validate()?;
    Ok(file)
}

/// [`parse_corpus`] without the completeness check, for files holding a few
/// derived or composed records.
pub fn parse_records(text: &str) -> Result<CorpusFile> {
    let mut version = None;
    let mut weight = None;
    let mut records = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.trim_end_matches(['\n', '\r']);
        if body.trim().is_empty() {
            continue;
        }
        if version.is_none() {
            let v = body
                .strip_prefix("version:")
                .ok_or_else(|| HsumError::Syntax { position: start, message: "expected 'version:' header".into() })?;
            version = Some(v.trim().to_string());
            continue;
        }
        if weight.is_none() {
            let w = body
                .strip_prefix("weight:")
                .and_then(|w| w.trim().parse::<u32>().ok())
                .ok_or_else(|| HsumError::Syntax { position: start, message: "expected 'weight: <n>' header".into() })?;
            weight = Some(w);
            continue;
        }
        let rec = parse_identity(body).map_err(|e| match e {
            HsumError::Syntax { position, message } => HsumError::Syntax { position: start + position, message },
            HsumError::UnknownSymbol { position, symbol } => HsumError::UnknownSymbol { position: start + position, symbol },
            other => other,
        })?;
        records.push(rec);
    }
    let (Some(version), Some(weight)) = (version, weight) else {
        return Err(HsumError::Validation("missing version/weight header".into()));
    };
    let file = CorpusFile { version, weight, records };
    file.validate_records()?;
    Ok(file)
}

pub fn serialize_corpus(file: &CorpusFile) -> String {
    let mut out = format!("version: {}\nweight: {}\n", file.version, file.weight);
    for r in &file.records {
        out.push_str(&format_identity(r));
        out.push('\n');
    }
    out
}

/// Reads either format; JSON is recognized by a leading `{`.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<CorpusFile> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        from_structured(&text)
    } else {
        parse_corpus(&text)
    }
}

/// [`load_corpus`] without the completeness check.
pub fn load_records(path: impl AsRef<Path>) -> Result<CorpusFile> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        structured::from_structured_records(&text)
    } else {
        parse_records(&text)
    }
}

/// Writes the line format, or JSON when the path ends in `.json`.
pub fn save_corpus(file: &CorpusFile, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = if path.extension().is_some_and(|e| e == "json") {
        to_structured(file)?
    } else {
        serialize_corpus(file)
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// The 57 weight-4 identities: `B_1 x B_3` products, then `B_2 x B_2`.
pub fn builtin_corpus() -> CorpusFile {
    parse_corpus(BUILTIN_WEIGHT4).expect("shipped corpus is valid")
}

pub fn builtin_corpus_text() -> &'static str {
    BUILTIN_WEIGHT4
}
