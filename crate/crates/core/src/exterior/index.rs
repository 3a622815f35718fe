use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Dimension of the model space.
pub const DIM: usize = 7;

const FULL_MASK: u8 = (1 << DIM) - 1;

/// Horizontal labels `{0,1,2,3}`.
pub const HORIZONTAL: MultiIndex = MultiIndex(0b000_1111);

/// Vertical labels `{4,5,6}`.
pub const VERTICAL: MultiIndex = MultiIndex(0b111_0000);

/// A strictly increasing set of frame labels in `0..7`, stored as a bit mask.
///
/// Ordering is by degree first, then lexicographic on the sorted labels, so
/// `e01 < e02 < e12 < e012`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);
    pub const FULL: MultiIndex = MultiIndex(FULL_MASK);

    /// Build from a strictly increasing list of labels.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i >= DIM {
                return Err(Error::IndexOutOfRange(i));
            }
            if last.is_some_and(|l| l >= i) {
                return Err(Error::InvalidParameter(format!(
                    "multi-index {indices:?} is not strictly increasing"
                )));
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Ok(MultiIndex(mask))
    }

    /// Sort an arbitrary label sequence, returning the permutation sign, or
    /// `None` when a label repeats (the monomial vanishes).
    pub fn signed(indices: &[usize]) -> Option<(i64, MultiIndex)> {
        let mut sign = 1i64;
        let mut mask = 0u8;
        for (pos, &i) in indices.iter().enumerate() {
            assert!(i < DIM, "frame index {i} out of range");
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
            // inversions against earlier labels
            let larger_before = indices[..pos].iter().filter(|&&j| j > i).count();
            if larger_before % 2 == 1 {
                sign = -sign;
            }
        }
        Some((sign, MultiIndex(mask)))
    }

    pub fn from_bits(bits: u8) -> Self {
        assert!(bits <= FULL_MASK, "mask {bits:#b} has labels beyond 6");
        MultiIndex(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < DIM && self.0 & (1 << i) != 0
    }

    pub fn is_disjoint(self, other: MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> MultiIndex {
        MultiIndex(self.0 & !(1 << i))
    }

    pub fn complement(self) -> MultiIndex {
        MultiIndex(!self.0 & FULL_MASK)
    }

    /// Complement inside an ambient label set.
    pub fn complement_in(self, ambient: MultiIndex) -> MultiIndex {
        MultiIndex(ambient.0 & !self.0)
    }

    pub fn is_subset_of(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..DIM).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Sign of `e^self ∧ e^other`, `None` if they overlap.
    pub fn wedge_sign(self, other: MultiIndex) -> Option<i64> {
        if !self.is_disjoint(other) {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.indices() {
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    /// All multi-indices of the given degree, in canonical order.
    pub fn all_of_degree(degree: usize) -> Vec<MultiIndex> {
        let mut all: Vec<MultiIndex> = (0..=FULL_MASK)
            .map(MultiIndex)
            .filter(|m| m.degree() == degree)
            .collect();
        all.sort();
        all
    }

    /// Monomial name such as `e0123`; the empty index is `1`.
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let mut name = String::from("e");
        for i in self.indices() {
            name.push(char::from(b'0' + i as u8));
        }
        name
    }

    /// Inverse of [`MultiIndex::name`].
    pub fn parse_name(name: &str) -> Option<MultiIndex> {
        if name == "1" {
            return Some(MultiIndex::EMPTY);
        }
        let digits = name.strip_prefix('e')?;
        if digits.is_empty() {
            return None;
        }
        let indices: Option<Vec<usize>> = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect();
        MultiIndex::new(&indices?).ok()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // self holds the lowest differing label
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        let (sign, idx) = MultiIndex::signed(&[3, 1, 5]).unwrap();
        assert_eq!(idx, MultiIndex::new(&[1, 3, 5]).unwrap());
        assert_eq!(sign, -1);
        let (sign, _) = MultiIndex::signed(&[2, 6, 4]).unwrap();
        assert_eq!(sign, -1);
        let (sign, _) = MultiIndex::signed(&[3, 1, 2]).unwrap();
        assert_eq!(sign, 1);
        assert!(MultiIndex::signed(&[1, 2, 1]).is_none());
    }

    #[test]
    fn rejects_unsorted_or_out_of_range() {
        assert!(MultiIndex::new(&[2, 1]).is_err());
        assert!(MultiIndex::new(&[1, 1]).is_err());
        assert_eq!(MultiIndex::new(&[7]), Err(Error::IndexOutOfRange(7)));
    }

    #[test]
    fn canonical_order_and_counts() {
        let two = MultiIndex::all_of_degree(2);
        assert_eq!(two.len(), 21);
        assert_eq!(two[0].name(), "e01");
        assert_eq!(two[1].name(), "e02");
        assert_eq!(two[6].name(), "e12");
        assert_eq!(MultiIndex::all_of_degree(3).len(), 35);
        assert!(MultiIndex::new(&[0, 6]).unwrap() < MultiIndex::new(&[1, 2]).unwrap());
    }

    #[test]
    fn names_round_trip() {
        for d in 0..=DIM {
            for m in MultiIndex::all_of_degree(d) {
                assert_eq!(MultiIndex::parse_name(&m.name()), Some(m));
            }
        }
        assert_eq!(MultiIndex::parse_name("e21"), None);
        assert_eq!(MultiIndex::parse_name("x12"), None);
    }

    #[test]
    fn wedge_sign_matches_sorting() {
        let a = MultiIndex::new(&[4, 5, 6]).unwrap();
        let b = MultiIndex::new(&[0, 1, 2, 3]).unwrap();
        assert_eq!(a.wedge_sign(b), Some(1));
        let c = MultiIndex::new(&[1]).unwrap();
        let d = MultiIndex::new(&[0]).unwrap();
        assert_eq!(c.wedge_sign(d), Some(-1));
        assert_eq!(c.wedge_sign(c), None);
    }
}
