//! One-shot generator for the golden files consumed by the acceptance
//! suite: certified antichain-code maxima with construction lower bounds,
//! and the normalized rho column for the 1..n weight vector.

use ach_core::binom::binomial;
use ach_core::littlewood::{rho_with_method, RhoMethod, WeightVector};
use ach_core::ratio::{rat_to_string, Rat};
use ach_core::search::{construction_lower_bound, max_antichain_code, SearchBudget};
use num::{BigInt, ToPrimitive};

fn main() {
    println!("=== golden/antichain_code_table.csv ===");
    println!("n,d,oracle,construction,equal");
    for d in [3u32, 5] {
        for n in 1..=8u32 {
            let res = max_antichain_code(n, d, &SearchBudget::unlimited()).unwrap();
            assert!(res.certified);
            let cons = construction_lower_bound(n, d).unwrap();
            assert!(cons <= res.best_size as u64, "construction exceeds oracle");
            assert!(
                (res.best_size as u128) <= binomial(n as u64, (n / 2) as u64),
                "oracle exceeds the antichain maximum"
            );
            println!(
                "{n},{d},{},{cons},{}",
                res.best_size,
                cons == res.best_size as u64
            );
        }
    }

    println!();
    println!("=== golden/halasz_scan_r1.csv ===");
    println!("n,rho,ratio,ratio_decimal");
    let mut max_ratio: Option<(Rat, u32)> = None; // (rho * n, surd n)
    let mut max_decimal = 0.0f64;
    for n in 8..=28u32 {
        let weights =
            WeightVector::new((1..=n as i64).map(|v| Rat::from_integer(v.into())).collect())
                .unwrap();
        let rep = rho_with_method(&weights, RhoMethod::MeetInMiddle).unwrap();
        let ratio = &rep.rho * Rat::from_integer(BigInt::from(n));
        let decimal = ratio.to_f64().unwrap() * (n as f64).sqrt();
        if decimal > max_decimal {
            max_decimal = decimal;
            max_ratio = Some((ratio.clone(), n));
        }
        println!(
            "{n},{},{},{decimal:.6}",
            rat_to_string(&rep.rho),
            rat_to_string(&ratio)
        );
    }
    let (r, s) = max_ratio.unwrap();
    println!(
        "# max ratio = {} * sqrt({s}) = {max_decimal:.6}",
        rat_to_string(&r)
    );
}
