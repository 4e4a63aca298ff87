//! Antichain, minimum-distance and local-LYM verification.

use serde::Serialize;

use crate::binom::binomial_rat;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ratio::{rat_u128, serde_rat, Rat};
use crate::shadow::shadow;
use crate::subset::{hamming_distance, Subset};

/// Outcome of the antichain check. On failure the witness is the canonical
/// offending pair: smallest container y in mask order, then smallest x with
/// x strictly contained in y.
#[derive(Clone, Debug, Serialize)]
pub struct AntichainReport {
    pub is_antichain: bool,
    pub witness: Option<(Subset, Subset)>,
}

pub fn is_antichain(f: &SetFamily) -> AntichainReport {
    let witness = if use_lattice_scan(f) {
        antichain_witness_lattice(f)
    } else {
        antichain_witness_pairwise(f)
    };
    AntichainReport {
        is_antichain: witness.is_none(),
        witness,
    }
}

fn use_lattice_scan(f: &SetFamily) -> bool {
    let len = f.len() as u64;
    f.n() <= 22 && len * len / 2 > (f.n() as u64) << f.n()
}

fn antichain_witness_pairwise(f: &SetFamily) -> Option<(Subset, Subset)> {
    let members = f.members();
    for (j, &y) in members.iter().enumerate() {
        // A strict subset has a strictly smaller mask, so only earlier
        // members can be contained in y.
        for &x in &members[..j] {
            if x.is_subset_of(y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Subset-lattice sweep for large families: marks every mask that contains a
/// member, in O(2^n * n).
fn antichain_witness_lattice(f: &SetFamily) -> Option<(Subset, Subset)> {
    let n = f.n();
    let size = 1usize << n;
    let mut reach = vec![false; size];
    for m in f.iter() {
        reach[m.mask() as usize] = true;
    }
    for bit in 0..n {
        let b = 1usize << bit;
        for mask in 0..size {
            if mask & b != 0 && reach[mask ^ b] {
                reach[mask] = true;
            }
        }
    }
    for &y in f.members() {
        let ym = y.mask() as usize;
        let mut bits = y.mask();
        let mut hit = false;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if reach[ym ^ low as usize] {
                hit = true;
                break;
            }
            bits ^= low;
        }
        if hit {
            // Recover the canonical witness for this y directly.
            for &x in f.members() {
                if x >= y {
                    break;
                }
                if x.is_subset_of(y) {
                    return Some((x, y));
                }
            }
            unreachable!("lattice sweep found a contained member that the scan missed");
        }
    }
    None
}

/// Minimum pairwise Hamming distance. For families with at most one member
/// the distance is infinite, encoded in machine form as n + 1 with the
/// witness absent.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub n: u32,
    pub min_distance: u32,
    pub witness: Option<(Subset, Subset)>,
}

impl DistanceReport {
    pub fn is_infinite(&self) -> bool {
        self.witness.is_none()
    }

    /// is_code(F, d) in the usual sense: every pair at distance >= d.
    pub fn at_least(&self, d: u32) -> bool {
        self.is_infinite() || self.min_distance >= d
    }

    /// "inf" for the sentinel, the number otherwise.
    pub fn render(&self) -> String {
        if self.is_infinite() {
            "inf".into()
        } else {
            self.min_distance.to_string()
        }
    }
}

pub fn min_distance(f: &SetFamily) -> DistanceReport {
    let members = f.members();
    let mut best: Option<(u32, (Subset, Subset))> = None;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let d = hamming_distance(x, y);
            if best.as_ref().map_or(true, |(b, _)| d < *b) {
                best = Some((d, (x, y)));
            }
        }
    }
    match best {
        Some((d, pair)) => DistanceReport {
            n: f.n(),
            min_distance: d,
            witness: Some(pair),
        },
        None => DistanceReport {
            n: f.n(),
            min_distance: f.n() + 1,
            witness: None,
        },
    }
}

pub fn is_code(f: &SetFamily, d: u32) -> bool {
    min_distance(f).at_least(d)
}

/// Both sides of the local-LYM inequality for S inside layer k, as exact
/// rationals: |dS| / C(n, k-1) >= |S| / C(n, k).
#[derive(Clone, Debug, Serialize)]
pub struct LocalLymReport {
    pub n: u32,
    pub k: u32,
    pub shadow_size: u64,
    pub family_size: u64,
    #[serde(with = "serde_rat")]
    pub lhs: Rat,
    #[serde(with = "serde_rat")]
    pub rhs: Rat,
    pub holds: bool,
}

pub fn check_local_lym(s: &SetFamily, k: u32) -> Result<LocalLymReport> {
    let n = s.n();
    if k < 1 || k > n {
        return Err(Error::LayerOutOfRange { n, k });
    }
    for m in s.iter() {
        if m.card() != k {
            return Err(Error::NotInLayer {
                k,
                member: m.mask(),
                card: m.card(),
            });
        }
    }
    let sh = shadow(s, 1);
    let lhs = rat_u128(sh.len() as u128) / binomial_rat(n as u64, k as u64 - 1);
    let rhs = rat_u128(s.len() as u128) / binomial_rat(n as u64, k as u64);
    Ok(LocalLymReport {
        n,
        k,
        shadow_size: sh.len() as u64,
        family_size: s.len() as u64,
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn fam(n: u32, masks: &[u64]) -> SetFamily {
        SetFamily::from_masks(n, masks).unwrap()
    }

    #[test]
    fn antichain_examples() {
        // {{1},{2}} -> true
        assert!(is_antichain(&fam(2, &[0b1, 0b10])).is_antichain);
        // {{1},{1,2}} -> false with witness ({1},{1,2})
        let rep = is_antichain(&fam(2, &[0b1, 0b11]));
        assert!(!rep.is_antichain);
        assert_eq!(
            rep.witness,
            Some((Subset::from_mask(0b1), Subset::from_mask(0b11)))
        );
        // a single layer is an antichain
        assert!(is_antichain(&SetFamily::layer(5, 2).unwrap()).is_antichain);
        // empty and singleton families
        assert!(is_antichain(&SetFamily::empty(4).unwrap()).is_antichain);
        assert!(is_antichain(&fam(4, &[0b0])).is_antichain);
    }

    #[test]
    fn antichain_witness_is_canonical() {
        // Both ({1},{1,2}) and ({1},{1,3}) violate; smallest container wins.
        let rep = is_antichain(&fam(3, &[0b001, 0b011, 0b101]));
        assert_eq!(
            rep.witness,
            Some((Subset::from_mask(0b001), Subset::from_mask(0b011)))
        );
    }

    #[test]
    fn lattice_scan_agrees_with_pairwise() {
        // Force both paths over the same inputs.
        for masks in [
            vec![0b0001u64, 0b0010, 0b0100, 0b1000],
            vec![0b0011, 0b0111, 0b1100],
            vec![0b0, 0b1, 0b10, 0b11, 0b100, 0b101],
            (0u64..16).collect::<Vec<_>>(),
        ] {
            let f = fam(4, &masks);
            assert_eq!(
                antichain_witness_pairwise(&f),
                antichain_witness_lattice(&f),
                "family {masks:?}"
            );
        }
    }

    #[test]
    fn distance_examples() {
        // {{1},{2}} -> 2
        let rep = min_distance(&fam(2, &[0b1, 0b10]));
        assert_eq!(rep.min_distance, 2);
        assert!(!rep.is_infinite());
        // singleton -> sentinel
        let rep = min_distance(&fam(4, &[0b1]));
        assert!(rep.is_infinite());
        assert_eq!(rep.min_distance, 5);
        assert_eq!(rep.render(), "inf");
        assert!(rep.at_least(100));
        // witness distance matches the reported minimum
        let rep = min_distance(&fam(4, &[0b0001, 0b0110, 0b0111]));
        let (x, y) = rep.witness.unwrap();
        assert_eq!(hamming_distance(x, y), rep.min_distance);
        assert_eq!(rep.min_distance, 1);
    }

    #[test]
    fn local_lym_examples() {
        // Full layer: equality of densities.
        let rep = check_local_lym(&SetFamily::layer(4, 2).unwrap(), 2).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
        assert!(rep.holds);
        // S = {{1,2}} in n=4: lhs 2/4, rhs 1/6.
        let rep = check_local_lym(&fam(4, &[0b11]), 2).unwrap();
        assert_eq!(rep.lhs, rat(2, 4));
        assert_eq!(rep.rhs, rat(1, 6));
        assert!(rep.holds);
        // Empty family: 0 >= 0.
        let rep = check_local_lym(&SetFamily::empty(4).unwrap(), 2).unwrap();
        assert_eq!(rep.lhs, rat(0, 1));
        assert_eq!(rep.rhs, rat(0, 1));
        assert!(rep.holds);
        // Not inside the layer.
        assert!(matches!(
            check_local_lym(&fam(4, &[0b1]), 2),
            Err(Error::NotInLayer { .. })
        ));
        assert!(check_local_lym(&fam(4, &[0b11]), 0).is_err());
    }
}
