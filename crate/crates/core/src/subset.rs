//! Subsets of [n] as single-word bit masks: element i occupies bit i - 1.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of the ground set, stored as a bit mask. The ground-set size is
/// tracked by the owning `SetFamily`; a bare `Subset` is just the mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements(elements: &[u32]) -> Self {
        let mut mask = 0u64;
        for &e in elements {
            assert!((1..=64).contains(&e), "element {e} out of range");
            mask |= 1u64 << (e - 1);
        }
        Subset(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of the 1-based element `i`.
    pub const fn contains(self, i: u32) -> bool {
        i >= 1 && i <= 64 && (self.0 >> (i - 1)) & 1 == 1
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & other.0 == self.0
    }

    pub const fn is_strict_subset_of(self, other: Subset) -> bool {
        self.0 != other.0 && self.is_subset_of(other)
    }

    pub const fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    /// True when no bit lies at position n or beyond. Requires n <= 63.
    pub const fn fits_ground_set(self, n: u32) -> bool {
        self.0 >> n == 0
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn hex(self) -> String {
        format!("{:x}", self.0)
    }
}

/// Hamming distance |x triangle y|.
pub fn hamming_distance(x: Subset, y: Subset) -> u32 {
    (x.mask() ^ y.mask()).count_ones()
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let t = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(t + 1)
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#x} = {self})", self.0)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        u64::from_str_radix(&s, 16)
            .map(Subset)
            .map_err(|_| serde::de::Error::custom(format!("bad subset mask `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let s = Subset::from_elements(&[1, 3, 7]);
        assert_eq!(s.mask(), 0b100_0101);
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![1, 3, 7]);
        assert_eq!(s.card(), 3);
        assert!(s.contains(3));
        assert!(!s.contains(2));
        assert_eq!(s.to_string(), "{1,3,7}");
    }

    #[test]
    fn distance_examples() {
        // ({1,2}, {2,3}) -> 2
        assert_eq!(
            hamming_distance(Subset::from_elements(&[1, 2]), Subset::from_elements(&[2, 3])),
            2
        );
        // (x, x) -> 0
        let x = Subset::from_elements(&[2, 5]);
        assert_eq!(hamming_distance(x, x), 0);
        // ({1}, {1,2,3}) -> 2
        assert_eq!(
            hamming_distance(
                Subset::from_elements(&[1]),
                Subset::from_elements(&[1, 2, 3])
            ),
            2
        );
    }

    #[test]
    fn strict_subsets_have_smaller_masks() {
        for x in 0u64..64 {
            for y in 0u64..64 {
                let (sx, sy) = (Subset::from_mask(x), Subset::from_mask(y));
                if sx.is_strict_subset_of(sy) {
                    assert!(x < y);
                }
            }
        }
    }

    #[test]
    fn ground_set_fit() {
        assert!(Subset::from_mask(0b111).fits_ground_set(3));
        assert!(!Subset::from_mask(0b1000).fits_ground_set(3));
        assert!(Subset::from_mask(u64::MAX >> 1).fits_ground_set(63));
    }
}
