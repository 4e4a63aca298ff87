//! Extremal constructions: middle layers, explicit distance-3 Hamming codes,
//! greedy codes of arbitrary designed distance, and the translated-code
//! intersection with the middle layer.

use num::BigInt;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{ball_volume, binomial};
use crate::checks::{is_antichain, min_distance};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::subset::Subset;

/// Enumerating 2^n masks is kept within this ceiling.
pub const MAX_SCAN_GROUND_SET: u32 = 28;

/// Default number of sampled translates above the exhaustive ceiling.
pub const DEFAULT_TRANSLATE_SAMPLES: u64 = 1 << 20;

pub const DEFAULT_TRANSLATE_SEED: u64 = 1;

/// Where a constructed family came from, with enough parameters to re-check
/// the properties it advertises.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum Provenance {
    MiddleLayer {
        n: u32,
        k: u32,
    },
    HammingCode {
        m: u32,
        n: u32,
    },
    GreedyCode {
        n: u32,
        d: u32,
    },
    /// Best translate x of the source family, intersected with the middle
    /// layer. `source_min_distance` uses the n+1 sentinel for families with
    /// at most one member.
    BestTranslate {
        n: u32,
        source_size: u64,
        source_min_distance: u32,
        count: u64,
        exact: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        samples: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionResult {
    pub family: SetFamily,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translate_witness: Option<Subset>,
}

/// Outcome of re-checking a construction against its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Checked,
    /// Pairwise verification skipped: the family exceeds `VERIFY_CAP`.
    SkippedTooLarge,
}

/// Families above this size skip the quadratic distance re-check.
pub const VERIFY_CAP: usize = 100_000;

impl ConstructionResult {
    /// Re-derives the advertised properties from scratch via the checking
    /// primitives. Returns an error describing the first violated property.
    pub fn verify(&self) -> Result<Verification> {
        if self.family.len() > VERIFY_CAP {
            return Ok(Verification::SkippedTooLarge);
        }
        match self.provenance {
            Provenance::MiddleLayer { n, k } => {
                let expect = SetFamily::layer(n, k)?;
                if self.family != expect {
                    return Err(Error::InvalidParameter(
                        "middle layer does not match layer(n, floor(n/2))".into(),
                    ));
                }
            }
            Provenance::HammingCode { m, n } => {
                let expect_size = 1u64 << (n - m);
                if self.family.len() as u64 != expect_size {
                    return Err(Error::InvalidParameter(format!(
                        "Hamming code has {} codewords, expected {expect_size}",
                        self.family.len()
                    )));
                }
                let rep = min_distance(&self.family);
                if rep.min_distance != 3 || rep.is_infinite() {
                    return Err(Error::DistanceTooSmall {
                        required: 3,
                        found: rep.min_distance,
                        x: rep.witness.map_or(0, |(x, _)| x.mask()),
                        y: rep.witness.map_or(0, |(_, y)| y.mask()),
                    });
                }
            }
            Provenance::GreedyCode { n, d } => {
                let rep = min_distance(&self.family);
                if !rep.at_least(d) {
                    let (x, y) = rep.witness.expect("finite distance has a witness");
                    return Err(Error::DistanceTooSmall {
                        required: d,
                        found: rep.min_distance,
                        x: x.mask(),
                        y: y.mask(),
                    });
                }
                // Classical greedy guarantee: size * ball_volume >= 2^n.
                let vol = ball_volume(n as u64, d as u64);
                if (self.family.len() as u128) * vol < 1u128 << n {
                    return Err(Error::InvalidParameter(
                        "greedy code misses the ball-volume lower bound".into(),
                    ));
                }
            }
            Provenance::BestTranslate {
                n,
                source_size,
                source_min_distance,
                count,
                ..
            } => {
                if self.family.len() as u64 != count {
                    return Err(Error::InvalidParameter(
                        "translated intersection size disagrees with the recorded count".into(),
                    ));
                }
                let mid = n / 2;
                if self.family.iter().any(|m| m.card() != mid) {
                    return Err(Error::NotInLayer {
                        k: mid,
                        member: 0,
                        card: 0,
                    });
                }
                let anti = is_antichain(&self.family);
                if !anti.is_antichain {
                    let (x, y) = anti.witness.unwrap();
                    return Err(Error::NotAntichain {
                        x: x.mask(),
                        y: y.mask(),
                    });
                }
                let rep = min_distance(&self.family);
                if !rep.at_least(source_min_distance) {
                    let (x, y) = rep.witness.expect("finite distance has a witness");
                    return Err(Error::DistanceTooSmall {
                        required: source_min_distance,
                        found: rep.min_distance,
                        x: x.mask(),
                        y: y.mask(),
                    });
                }
                // Averaging bound, exact: count * 2^n >= |A| * C(n, n/2).
                let lhs = BigInt::from(count) << n;
                let rhs = BigInt::from(source_size) * BigInt::from(binomial(n as u64, mid as u64));
                if lhs < rhs {
                    return Err(Error::InvalidParameter(
                        "translated intersection misses the averaging bound".into(),
                    ));
                }
            }
        }
        Ok(Verification::Checked)
    }
}

/// The middle layer C([n], floor(n/2)): a maximum antichain.
pub fn middle_layer(n: u32) -> Result<ConstructionResult> {
    let k = n / 2;
    let family = SetFamily::layer(n, k)?;
    Ok(ConstructionResult {
        family,
        provenance: Provenance::MiddleLayer { n, k },
        translate_witness: None,
    })
}

/// The binary Hamming code of length n = 2^m - 1: all masks whose syndrome
/// vanishes, where position i (1-based) is checked against the binary
/// expansion of i. 2^(n-m) codewords, minimum distance exactly 3.
pub fn hamming_code(m: u32) -> Result<ConstructionResult> {
    if !(2..=5).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "Hamming parameter m = {m} outside 2..=5"
        )));
    }
    let n = (1u32 << m) - 1;
    let data_positions: Vec<u32> = (1..=n).filter(|i| !i.is_power_of_two()).collect();
    debug_assert_eq!(data_positions.len() as u32, n - m);
    let words = 1u64 << (n - m);
    let mut members = Vec::with_capacity(words as usize);
    for data in 0..words {
        let mut mask = 0u64;
        let mut syndrome = 0u32;
        for (j, &pos) in data_positions.iter().enumerate() {
            if (data >> j) & 1 == 1 {
                mask |= 1u64 << (pos - 1);
                syndrome ^= pos;
            }
        }
        // Parity positions are the powers of two; setting them flips exactly
        // one syndrome bit each.
        for t in 0..m {
            if (syndrome >> t) & 1 == 1 {
                mask |= 1u64 << ((1u32 << t) - 1);
            }
        }
        members.push(Subset::from_mask(mask));
    }
    let family = SetFamily::new(n, members)?;
    Ok(ConstructionResult {
        family,
        provenance: Provenance::HammingCode { m, n },
        translate_witness: None,
    })
}

/// Greedy distance-d code: scans masks in increasing numeric order, keeping a
/// mask iff it has distance >= d from everything kept so far. Implemented by
/// blocking the radius-(d-1) ball around each kept mask, which keeps the scan
/// linear in 2^n; the result equals the naive pairwise greedy scan.
pub fn greedy_code(n: u32, d: u32) -> Result<ConstructionResult> {
    if n < 1 || n > MAX_SCAN_GROUND_SET {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_SCAN_GROUND_SET,
        });
    }
    if d < 1 || d > n {
        return Err(Error::InvalidParameter(format!(
            "designed distance d = {d} outside 1..={n}"
        )));
    }
    let size = 1usize << n;
    let mut blocked = vec![false; size];
    let mut kept: Vec<Subset> = Vec::new();
    for mask in 0..size as u64 {
        if blocked[mask as usize] {
            continue;
        }
        kept.push(Subset::from_mask(mask));
        for_each_in_ball(mask, n, d - 1, &mut |v| blocked[v as usize] = true);
    }
    let family = SetFamily::from_sorted(n, kept);
    Ok(ConstructionResult {
        family,
        provenance: Provenance::GreedyCode { n, d },
        translate_witness: None,
    })
}

/// Visits every mask at Hamming distance <= radius from `mask` (including
/// `mask` itself).
fn for_each_in_ball(mask: u64, n: u32, radius: u32, f: &mut impl FnMut(u64)) {
    fn rec(mask: u64, n: u32, left: u32, start: u32, f: &mut impl FnMut(u64)) {
        f(mask);
        if left == 0 {
            return;
        }
        for b in start..n {
            rec(mask ^ (1u64 << b), n, left - 1, b + 1, f);
        }
    }
    rec(mask, n, radius, 0, f);
}

/// Exhaustive best translate: maximizes |(A triangle x) ∩ middle layer| over
/// all 2^n translates. Ties break to the smallest x in numeric order.
pub fn best_translate_to_middle(a: &SetFamily) -> Result<ConstructionResult> {
    if a.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if a.n() <= MAX_SCAN_GROUND_SET {
        best_translate_exact(a)
    } else {
        best_translate_sampled(a, DEFAULT_TRANSLATE_SAMPLES, DEFAULT_TRANSLATE_SEED)
    }
}

fn centered_count(a: &SetFamily, x: u64, mid: u32) -> u64 {
    a.iter()
        .filter(|m| (m.mask() ^ x).count_ones() == mid)
        .count() as u64
}

fn assemble_translate(
    a: &SetFamily,
    x: u64,
    count: u64,
    exact: bool,
    samples: Option<u64>,
    seed: Option<u64>,
) -> Result<ConstructionResult> {
    let n = a.n();
    let mid = n / 2;
    let members: Vec<Subset> = a
        .iter()
        .map(|m| m.symmetric_difference(Subset::from_mask(x)))
        .filter(|m| m.card() == mid)
        .collect();
    let family = SetFamily::new(n, members)?;
    debug_assert_eq!(family.len() as u64, count);
    let source_rep = min_distance(a);
    Ok(ConstructionResult {
        family,
        provenance: Provenance::BestTranslate {
            n,
            source_size: a.len() as u64,
            source_min_distance: source_rep.min_distance,
            count,
            exact,
            samples,
            seed,
        },
        translate_witness: Some(Subset::from_mask(x)),
    })
}

fn best_translate_exact(a: &SetFamily) -> Result<ConstructionResult> {
    let n = a.n();
    let mid = n / 2;
    let total = 1u64 << n;
    // (count, x) maximised by count then minimised by x; the merge is
    // associative and commutative so the parallel split does not matter.
    let best = (0..total)
        .into_par_iter()
        .map(|x| (centered_count(a, x, mid), x))
        .reduce(
            || (0, u64::MAX),
            |p, q| {
                if q.0 > p.0 || (q.0 == p.0 && q.1 < p.1) {
                    q
                } else {
                    p
                }
            },
        );
    assemble_translate(a, best.1, best.0, true, None, None)
}

/// Sampled best translate for ground sets beyond the exhaustive ceiling.
/// A derandomized conditional-expectation pass supplies a starting translate
/// that already meets the averaging bound, so the bound holds regardless of
/// how the sample performs.
pub fn best_translate_sampled(a: &SetFamily, samples: u64, seed: u64) -> Result<ConstructionResult> {
    if a.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = a.n();
    let mid = n / 2;
    let guaranteed = derandomized_translate(a);
    let mut best = (centered_count(a, guaranteed, mid), guaranteed);
    let zero = (centered_count(a, 0, mid), 0u64);
    if zero.0 > best.0 || (zero.0 == best.0 && zero.1 < best.1) {
        best = zero;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask_limit = if n == 63 { u64::MAX >> 1 } else { (1u64 << n) - 1 };
    for _ in 0..samples {
        let x = rng.next_u64() & mask_limit;
        let c = centered_count(a, x, mid);
        if c > best.0 || (c == best.0 && x < best.1) {
            best = (c, x);
        }
    }
    assemble_translate(a, best.1, best.0, false, Some(samples), Some(seed))
}

/// Fixes the bits of x one position at a time, always keeping the conditional
/// expectation of |(A triangle x) ∩ middle| at least the unconditional mean
/// |A| C(n, n/2) / 2^n. Comparing the two branches only needs the integer
/// sums of C(free, still-needed) over the members.
fn derandomized_translate(a: &SetFamily) -> u64 {
    let n = a.n();
    let mid = n / 2;
    let mut x = 0u64;
    // matched[i] = |(a_i ^ x) ∩ decided bits| so far.
    let mut matched: Vec<u32> = vec![0; a.len()];
    for bit in 0..n {
        let free = (n - bit - 1) as u64;
        let mut weight_zero: u128 = 0;
        let mut weight_one: u128 = 0;
        for (i, m) in a.iter().enumerate() {
            let has = (m.mask() >> bit) & 1 == 1;
            let m0 = matched[i] + u32::from(has);
            let m1 = matched[i] + u32::from(!has);
            if mid >= m0 {
                weight_zero += binomial(free, (mid - m0) as u64);
            }
            if mid >= m1 {
                weight_one += binomial(free, (mid - m1) as u64);
            }
        }
        let pick_one = weight_one > weight_zero;
        if pick_one {
            x |= 1u64 << bit;
        }
        for (i, m) in a.iter().enumerate() {
            let has = (m.mask() >> bit) & 1 == 1;
            matched[i] += u32::from(has != pick_one);
        }
    }
    x
}
