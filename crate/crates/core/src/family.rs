//! Families of subsets over a shared ground set, kept in canonical order
//! (strictly increasing mask value) with mandatory deduplication.

use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::subset::Subset;

pub const MAX_GROUND_SET: u32 = 63;

/// Largest family any enumerating constructor will materialize.
pub const MAX_FAMILY_MEMBERS: u64 = 1 << 24;

/// A duplicate-free family of subsets of [n], sorted by mask value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SetFamily {
    n: u32,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn empty(n: u32) -> Result<Self> {
        check_ground_set(n)?;
        Ok(SetFamily {
            n,
            members: Vec::new(),
        })
    }

    /// Canonical constructor: validates every member against the ground set,
    /// sorts, and deduplicates.
    pub fn new(n: u32, mut members: Vec<Subset>) -> Result<Self> {
        check_ground_set(n)?;
        for &m in &members {
            if !m.fits_ground_set(n) {
                return Err(Error::MaskOutsideGroundSet { n, mask: m.mask() });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { n, members })
    }

    pub fn from_masks(n: u32, masks: &[u64]) -> Result<Self> {
        Self::new(n, masks.iter().copied().map(Subset::from_mask).collect())
    }

    /// Internal fast path for members already strictly increasing and in range.
    pub(crate) fn from_sorted(n: u32, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.fits_ground_set(n)));
        SetFamily { n, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    fn check_same_ground_set(&self, other: &SetFamily) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        self.check_same_ground_set(other)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.members[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.members[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.members[i..]);
        out.extend_from_slice(&other.members[j..]);
        Ok(SetFamily::from_sorted(self.n, out))
    }

    pub fn intersection(&self, other: &SetFamily) -> Result<SetFamily> {
        self.check_same_ground_set(other)?;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(SetFamily::from_sorted(self.n, out))
    }

    pub fn difference(&self, other: &SetFamily) -> Result<SetFamily> {
        self.check_same_ground_set(other)?;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.len() {
            if j >= other.len() || self.members[i] < other.members[j] {
                out.push(self.members[i]);
                i += 1;
            } else if self.members[i] == other.members[j] {
                i += 1;
                j += 1;
            } else {
                j += 1;
            }
        }
        Ok(SetFamily::from_sorted(self.n, out))
    }

    pub fn is_disjoint_from(&self, other: &SetFamily) -> Result<bool> {
        self.check_same_ground_set(other)?;
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Ok(false),
            }
        }
        Ok(true)
    }

    /// The full layer C([n], k): all subsets of size k, in canonical order.
    pub fn layer(n: u32, k: u32) -> Result<SetFamily> {
        check_ground_set(n)?;
        if k > n {
            return Err(Error::LayerOutOfRange { n, k });
        }
        let count = binomial(n as u64, k as u64);
        if count > MAX_FAMILY_MEMBERS as u128 {
            return Err(Error::FamilyTooLarge {
                size: count,
                cap: MAX_FAMILY_MEMBERS,
            });
        }
        if k == 0 {
            return Ok(SetFamily::from_sorted(n, vec![Subset::EMPTY]));
        }
        let mut members = Vec::with_capacity(count as usize);
        let limit = 1u64 << n;
        let mut mask = (1u64 << k) - 1;
        while mask < limit {
            members.push(Subset::from_mask(mask));
            // Gosper's hack: next mask of equal popcount.
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((mask ^ r) >> 2) / c) | r;
        }
        Ok(SetFamily::from_sorted(n, members))
    }

    /// Members of cardinality exactly k.
    pub fn restrict_to_layer(&self, k: u32) -> Result<SetFamily> {
        if k > self.n {
            return Err(Error::LayerOutOfRange { n: self.n, k });
        }
        let members = self.iter().filter(|m| m.card() == k).collect();
        Ok(SetFamily::from_sorted(self.n, members))
    }

    /// {a triangle x : a in F}. A bijection on members; pairwise distances
    /// are preserved.
    pub fn translate(&self, x: Subset) -> Result<SetFamily> {
        if !x.fits_ground_set(self.n) {
            return Err(Error::MaskOutsideGroundSet {
                n: self.n,
                mask: x.mask(),
            });
        }
        let mut members: Vec<Subset> = self.iter().map(|a| a.symmetric_difference(x)).collect();
        members.sort_unstable();
        Ok(SetFamily::from_sorted(self.n, members))
    }

    /// Parses the family file format: first significant line `n=<int>`, then
    /// one lowercase hex mask per line, strictly increasing; `#` starts a
    /// comment and blank lines are skipped.
    pub fn parse(text: &str) -> Result<SetFamily> {
        let mut n: Option<u32> = None;
        let mut members: Vec<Subset> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            match n {
                None => {
                    let rest = content.strip_prefix("n=").ok_or(Error::Parse {
                        line,
                        msg: format!("expected `n=<int>`, found `{content}`"),
                    })?;
                    let parsed: u32 = rest.trim().parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad ground-set size `{rest}`"),
                    })?;
                    if !(1..=MAX_GROUND_SET).contains(&parsed) {
                        return Err(Error::Parse {
                            line,
                            msg: format!("ground-set size {parsed} outside 1..=63"),
                        });
                    }
                    n = Some(parsed);
                }
                Some(n) => {
                    if !content.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
                    {
                        return Err(Error::Parse {
                            line,
                            msg: format!("expected a lowercase hex mask, found `{content}`"),
                        });
                    }
                    let mask = u64::from_str_radix(content, 16).map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad hex mask `{content}`"),
                    })?;
                    let member = Subset::from_mask(mask);
                    if !member.fits_ground_set(n) {
                        return Err(Error::Parse {
                            line,
                            msg: format!("mask {content} has bits outside [{n}]"),
                        });
                    }
                    if let Some(&last) = members.last() {
                        if member <= last {
                            return Err(Error::Parse {
                                line,
                                msg: format!(
                                    "masks must be strictly increasing ({} then {})",
                                    last.hex(),
                                    content
                                ),
                            });
                        }
                    }
                    members.push(member);
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: text.lines().count() + 1,
            msg: "missing `n=<int>` header".into(),
        })?;
        Ok(SetFamily::from_sorted(n, members))
    }

    /// Emits the family file format, bit-exact for round-tripping.
    pub fn to_file_string(&self) -> String {
        let mut out = String::with_capacity(8 + 8 * self.len());
        out.push_str(&format!("n={}\n", self.n));
        for m in self.iter() {
            out.push_str(&m.hex());
            out.push('\n');
        }
        out
    }
}

fn check_ground_set(n: u32) -> Result<()> {
    if (1..=MAX_GROUND_SET).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSetOutOfRange(n))
    }
}
