//! Exact binomial coefficients for ground sets of at most 63 elements.

use crate::ratio::{rat_u128, Rat};

/// C(n, k), exact. Values for n <= 63 fit comfortably in u128
/// (C(63, 31) is below 2^60).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Exact at every step: the partial product is C(n, i+1) * (i+1)! / ...
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn binomial_rat(n: u64, k: u64) -> Rat {
    rat_u128(binomial(n, k))
}

/// Sum of C(n, i) over 0 <= i < d: the volume of a Hamming ball of
/// radius d - 1.
pub fn ball_volume(n: u64, d: u64) -> u128 {
    (0..d.min(n + 1)).map(|i| binomial(n, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(12, 9), 220);
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn row_symmetry_and_pascal() {
        for n in 0..=63u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
                if n > 0 && k > 0 {
                    assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(ball_volume(4, 3), 1 + 4 + 6);
        assert_eq!(ball_volume(7, 1), 1);
        assert_eq!(ball_volume(5, 10), 32);
    }
}
