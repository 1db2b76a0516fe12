//! The minimal linear sets of harmonic sums `B_1..B_4` and the weight-4
//! ansatz built from them.

use crate::constants::{build_constants, ConstantMonomial};
use crate::error::{HsumError, Result};
use crate::index::IndexVector;

const B1: &[&[i32]] = &[&[-1], &[1]];

const B2: &[&[i32]] = &[&[-2], &[2], &[-1, 1], &[1, -1], &[1, 1], &[-1, -1]];

const B3: &[&[i32]] = &[
    &[-3], &[3], &[-2, -1], &[-2, 1], &[2, -1], &[2, 1], &[-1, 1, -1], &[-1, 1, 1],
    &[1, -2], &[1, 2], &[1, -1, -1], &[1, -1, 1], &[1, 1, -1], &[1, 1, 1],
    &[-1, -2], &[-1, 2], &[-1, -1, -1], &[-1, -1, 1],
];

const B4: &[&[i32]] = &[
    &[-4], &[4], &[-3, -1], &[-3, 1], &[2, -2], &[3, -1], &[3, 1], &[-2, -1, -1],
    &[-2, -1, 1], &[-2, 1, -1], &[-2, 1, 1], &[2, -1, -1], &[2, -1, 1], &[2, 1, -1],
    &[2, 1, 1], &[-1, 1, -1, -1], &[-1, 1, -1, 1], &[-1, 1, 1, 1], &[1, -3], &[1, 3],
    &[1, -2, -1], &[1, -2, 1], &[1, -1, -2], &[1, -1, 2], &[1, 1, -2], &[1, 1, 2],
    &[1, 2, -1], &[1, 2, 1], &[1, -1, -1, -1], &[1, -1, -1, 1], &[1, -1, 1, -1],
    &[1, -1, 1, 1], &[1, 1, -1, -1], &[1, 1, -1, 1], &[1, 1, 1, -1], &[1, 1, 1, 1],
    &[-1, -3], &[-1, 3], &[-1, -2, -1], &[-1, -2, 1], &[-1, -1, -2], &[-1, -1, 2],
    &[-1, 1, -2], &[-1, 1, 2], &[-1, 2, -1], &[-1, 2, 1], &[-1, -1, -1, -1],
    &[-1, -1, -1, 1], &[-1, -1, 1, -1], &[-1, -1, 1, 1], &[-1, 1, 1, -1], &[-2, -2],
    &[-2, 2], &[2, 2],
];

/// The basis `B_w` in its published order.
pub fn build_basis(w: u32) -> Result<Vec<IndexVector>> {
    let table = match w {
        1 => B1,
        2 => B2,
        3 => B3,
        4 => B4,
        _ => return Err(HsumError::WeightOutOfRange(w)),
    };
    Ok(table.iter().map(|v| IndexVector::from_slice(v)).collect())
}

/// Whether `v` belongs to one of `B_1..B_4`.
pub fn in_basis(v: &IndexVector) -> bool {
    let w = v.weight();
    (1..=4).contains(&w) && build_basis(w).map(|b| b.contains(v)).unwrap_or(false)
}

/// One ansatz entry: a constant monomial times an optional basis sum. Entries
/// without a sum do not depend on the argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnsatzEntry {
    pub cmono: ConstantMonomial,
    pub sum: Option<IndexVector>,
}

impl AnsatzEntry {
    pub fn is_constant(&self) -> bool {
        self.sum.is_none()
    }

    pub fn weight(&self) -> u32 {
        self.cmono.weight() + self.sum.as_ref().map_or(0, IndexVector::weight)
    }
}

// Published weight-4 ansatz in its printed order. Each row is
// (ln2, z2, z3, Li4h exponents, indices); pi^2 has become z2 and pi^4 z2^2.
const ANZ4: &[([u32; 4], &[i32])] = &[
    ([0, 2, 0, 0], &[]),
    ([2, 1, 0, 0], &[]),
    ([4, 0, 0, 0], &[]),
    ([0, 0, 0, 1], &[]),
    ([0, 0, 0, 0], &[-4]),
    ([1, 0, 0, 0], &[-3]),
    ([0, 1, 0, 0], &[-2]),
    ([2, 0, 0, 0], &[-2]),
    ([1, 1, 0, 0], &[-1]),
    ([3, 0, 0, 0], &[-1]),
    ([1, 1, 0, 0], &[1]),
    ([3, 0, 0, 0], &[1]),
    ([0, 1, 0, 0], &[2]),
    ([2, 0, 0, 0], &[2]),
    ([1, 0, 0, 0], &[3]),
    ([0, 0, 0, 0], &[4]),
    ([0, 0, 0, 0], &[-3, -1]),
    ([0, 0, 0, 0], &[-3, 1]),
    ([0, 0, 0, 0], &[-2, -2]),
    ([1, 0, 0, 0], &[-2, -1]),
    ([1, 0, 0, 0], &[-2, 1]),
    ([0, 0, 0, 0], &[-2, 2]),
    ([0, 0, 0, 0], &[-1, -3]),
    ([1, 0, 0, 0], &[-1, -2]),
    ([0, 1, 0, 0], &[-1, -1]),
    ([2, 0, 0, 0], &[-1, -1]),
    ([0, 1, 0, 0], &[-1, 1]),
    ([2, 0, 0, 0], &[-1, 1]),
    ([1, 0, 0, 0], &[-1, 2]),
    ([0, 0, 0, 0], &[-1, 3]),
    ([0, 0, 0, 0], &[1, -3]),
    ([1, 0, 0, 0], &[1, -2]),
    ([0, 1, 0, 0], &[1, -1]),
    ([2, 0, 0, 0], &[1, -1]),
    ([0, 1, 0, 0], &[1, 1]),
    ([2, 0, 0, 0], &[1, 1]),
    ([1, 0, 0, 0], &[1, 2]),
    ([0, 0, 0, 0], &[1, 3]),
    ([0, 0, 0, 0], &[2, -2]),
    ([1, 0, 0, 0], &[2, -1]),
    ([1, 0, 0, 0], &[2, 1]),
    ([0, 0, 0, 0], &[2, 2]),
    ([0, 0, 0, 0], &[3, -1]),
    ([0, 0, 0, 0], &[3, 1]),
    ([0, 0, 0, 0], &[-2, -1, -1]),
    ([0, 0, 0, 0], &[-2, -1, 1]),
    ([0, 0, 0, 0], &[-2, 1, -1]),
    ([0, 0, 0, 0], &[-2, 1, 1]),
    ([0, 0, 0, 0], &[-1, -2, -1]),
    ([0, 0, 0, 0], &[-1, -2, 1]),
    ([0, 0, 0, 0], &[-1, -1, -2]),
    ([1, 0, 0, 0], &[-1, -1, -1]),
    ([1, 0, 0, 0], &[-1, -1, 1]),
    ([0, 0, 0, 0], &[-1, -1, 2]),
    ([0, 0, 0, 0], &[-1, 1, -2]),
    ([1, 0, 0, 0], &[-1, 1, -1]),
    ([1, 0, 0, 0], &[-1, 1, 1]),
    ([0, 0, 0, 0], &[-1, 1, 2]),
    ([0, 0, 0, 0], &[-1, 2, -1]),
    ([0, 0, 0, 0], &[-1, 2, 1]),
    ([0, 0, 0, 0], &[1, -2, -1]),
    ([0, 0, 0, 0], &[1, -2, 1]),
    ([0, 0, 0, 0], &[1, -1, -2]),
    ([1, 0, 0, 0], &[1, -1, -1]),
    ([1, 0, 0, 0], &[1, -1, 1]),
    ([0, 0, 0, 0], &[1, -1, 2]),
    ([0, 0, 0, 0], &[1, 1, -2]),
    ([1, 0, 0, 0], &[1, 1, -1]),
    ([1, 0, 0, 0], &[1, 1, 1]),
    ([0, 0, 0, 0], &[1, 1, 2]),
    ([0, 0, 0, 0], &[1, 2, -1]),
    ([0, 0, 0, 0], &[1, 2, 1]),
    ([0, 0, 0, 0], &[2, -1, -1]),
    ([0, 0, 0, 0], &[2, -1, 1]),
    ([0, 0, 0, 0], &[2, 1, -1]),
    ([0, 0, 0, 0], &[2, 1, 1]),
    ([0, 0, 0, 0], &[-1, -1, -1, -1]),
    ([0, 0, 0, 0], &[-1, -1, -1, 1]),
    ([0, 0, 0, 0], &[-1, -1, 1, -1]),
    ([0, 0, 0, 0], &[-1, -1, 1, 1]),
    ([0, 0, 0, 0], &[-1, 1, -1, -1]),
    ([0, 0, 0, 0], &[-1, 1, -1, 1]),
    ([0, 0, 0, 0], &[-1, 1, 1, -1]),
    ([0, 0, 0, 0], &[-1, 1, 1, 1]),
    ([0, 0, 0, 0], &[1, -1, -1, -1]),
    ([0, 0, 0, 0], &[1, -1, -1, 1]),
    ([0, 0, 0, 0], &[1, -1, 1, -1]),
    ([0, 0, 0, 0], &[1, -1, 1, 1]),
    ([0, 0, 0, 0], &[1, 1, -1, -1]),
    ([0, 0, 0, 0], &[1, 1, -1, 1]),
    ([0, 0, 0, 0], &[1, 1, 1, -1]),
    ([0, 0, 0, 0], &[1, 1, 1, 1]),
    ([1, 0, 1, 0], &[]),
    ([0, 0, 1, 0], &[-1]),
    ([0, 0, 1, 0], &[1]),
];

/// The expansion ansatz at weight `w`:
/// `B_w + B_{w-1} x C_1 + ... + B_1 x C_{w-1} + C_w`.
///
/// Weight 4 reproduces the published 95-entry list verbatim. Lower weights
/// are assembled from the bases and constant sets in the same pattern.
pub fn build_ansatz(w: u32) -> Result<Vec<AnsatzEntry>> {
    if w == 4 {
        return Ok(ANZ4
            .iter()
            .map(|(e, idx)| AnsatzEntry {
                cmono: ConstantMonomial::from_exponents(*e),
                sum: (!idx.is_empty()).then(|| IndexVector::from_slice(idx)),
            })
            .collect());
    }
    if !(1..=3).contains(&w) {
        return Err(HsumError::WeightOutOfRange(w));
    }
    let mut out: Vec<AnsatzEntry> = build_constants(w)?
        .into_iter()
        .map(|cmono| AnsatzEntry { cmono, sum: None })
        .collect();
    for sw in (1..=w).rev() {
        let consts = if sw == w {
            vec![ConstantMonomial::ONE]
        } else {
            build_constants(w - sw)?
        };
        for v in build_basis(sw)? {
            for c in &consts {
                out.push(AnsatzEntry { cmono: *c, sum: Some(v.clone()) });
            }
        }
    }
    Ok(out)
}

/// Number of unknowns when the ansatz is taken at both `z` and `-1-z` with
/// the argument-independent entries counted once.
pub fn unknown_count(w: u32) -> Result<usize> {
    let ansatz = build_ansatz(w)?;
    let constants = ansatz.iter().filter(|e| e.is_constant()).count();
    Ok(2 * ansatz.len() - constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn basis_lengths() {
        let lens: Vec<usize> = (1..=4).map(|w| build_basis(w).unwrap().len()).collect();
        assert_eq!(lens, vec![2, 6, 18, 54]);
        assert!(build_basis(5).is_err());
    }

    #[test]
    fn bases_are_weight_graded_and_distinct() {
        for w in 1..=4 {
            let b = build_basis(w).unwrap();
            assert!(b.iter().all(|v| v.weight() == w));
            let set: HashSet<_> = b.iter().collect();
            assert_eq!(set.len(), b.len());
        }
        assert_eq!(build_basis(2).unwrap()[2], IndexVector::from_slice(&[-1, 1]));
    }

    #[test]
    fn weight4_ansatz_matches_pattern() {
        let anz = build_ansatz(4).unwrap();
        assert_eq!(anz.len(), 95);
        assert!(anz.iter().all(|e| e.weight() == 4));
        assert_eq!(anz.iter().filter(|e| e.is_constant()).count(), 5);
        let set: HashSet<_> = anz.iter().collect();
        assert_eq!(set.len(), 95);
        // same content as B_4 + B_3 x C_1 + B_2 x C_2 + B_1 x C_3 + C_4
        let mut expected = HashSet::new();
        for c in build_constants(4).unwrap() {
            expected.insert(AnsatzEntry { cmono: c, sum: None });
        }
        for sw in 1..=4u32 {
            let consts = if sw == 4 { vec![ConstantMonomial::ONE] } else { build_constants(4 - sw).unwrap() };
            for v in build_basis(sw).unwrap() {
                for c in &consts {
                    expected.insert(AnsatzEntry { cmono: *c, sum: Some(v.clone()) });
                }
            }
        }
        assert_eq!(set, expected.iter().collect());
    }

    #[test]
    fn lower_weight_ansatz() {
        assert_eq!(build_ansatz(1).unwrap().len(), 2 + 1);
        assert_eq!(build_ansatz(2).unwrap().len(), 6 + 2 + 2);
        assert_eq!(build_ansatz(3).unwrap().len(), 18 + 6 + 2 * 2 + 3);
        assert_eq!(unknown_count(4).unwrap(), 185);
    }
}
