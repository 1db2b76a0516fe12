//! Index vectors labelling nested harmonic sums.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::HsumError;

/// The argument a harmonic sum is evaluated at inside an expression:
/// `Z` is the plain argument `z`, `Refl` is the reflected argument `-1-z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArgTag {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "refl")]
    Refl,
}

impl ArgTag {
    pub fn flipped(self) -> ArgTag {
        match self {
            ArgTag::Z => ArgTag::Refl,
            ArgTag::Refl => ArgTag::Z,
        }
    }
}

/// A nonempty sequence of nonzero integers `a_1, ..., a_k`.
///
/// `S_{a_1,...,a_k}(n)` sums over `n >= i_1 >= ... >= i_k >= 1` the product of
/// `sign(a_j)^{i_j} / i_j^{|a_j|}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct IndexVector(Vec<i32>);

impl IndexVector {
    pub fn new(indices: Vec<i32>) -> Result<Self, HsumError> {
        if indices.is_empty() {
            return Err(HsumError::InvalidIndex("index vector must be nonempty".into()));
        }
        if indices.contains(&0) {
            return Err(HsumError::InvalidIndex(format!(
                "index vector {indices:?} contains a zero index"
            )));
        }
        Ok(IndexVector(indices))
    }

    /// Builds an index vector from a literal slice.
    ///
    /// Panics if the slice is empty or contains a zero; meant for constants in
    /// code and tests.
    pub fn from_slice(indices: &[i32]) -> Self {
        IndexVector::new(indices.to_vec()).expect("valid index literal")
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn head(&self) -> i32 {
        self.0[0]
    }

    /// The vector with its first index removed, `None` at depth one.
    pub fn tail(&self) -> Option<IndexVector> {
        if self.0.len() > 1 {
            Some(IndexVector(self.0[1..].to_vec()))
        } else {
            None
        }
    }

    /// Prepends `a` to this vector (or to the empty vector when `rest` is `None`).
    pub fn cons(a: i32, rest: Option<&IndexVector>) -> IndexVector {
        assert!(a != 0, "zero index");
        let mut v = Vec::with_capacity(1 + rest.map_or(0, |r| r.depth()));
        v.push(a);
        if let Some(r) = rest {
            v.extend_from_slice(&r.0);
        }
        IndexVector(v)
    }

    /// Whether any index is negative (the sum alternates somewhere).
    pub fn is_alternating(&self) -> bool {
        self.0.iter().any(|&a| a < 0)
    }

    /// All nonempty suffixes, starting with the vector itself.
    pub fn suffixes(&self) -> impl Iterator<Item = IndexVector> + '_ {
        (0..self.0.len()).map(move |i| IndexVector(self.0[i..].to_vec()))
    }
}

impl TryFrom<Vec<i32>> for IndexVector {
    type Error = HsumError;

    fn try_from(v: Vec<i32>) -> Result<Self, Self::Error> {
        IndexVector::new(v)
    }
}

impl From<IndexVector> for Vec<i32> {
    fn from(v: IndexVector) -> Self {
        v.0
    }
}

// Weight first, then depth, then the indices themselves.
impl Ord for IndexVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IndexVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parses a comma separated index list such as `"-2,1"`.
pub fn parse_index_list(text: &str) -> Result<IndexVector, HsumError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let a: i32 = part
            .parse()
            .map_err(|_| HsumError::InvalidIndex(format!("cannot parse index {part:?} in {text:?}")))?;
        out.push(a);
    }
    IndexVector::new(out)
}
