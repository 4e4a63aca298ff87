//! Empirical lab for the shadow-expansion inequality and the inductive
//! layer chain it drives.
//!
//! An instance fixes n, k, r with n >= 8r and n/2 + 3r <= k <= 3n/4, a
//! family S inside layer k, and a distance-(2r+1) code A inside layer k - r
//! avoiding the r-fold shadow of S. The checked inequality is
//!
//! |d^{3r} S  union  d^{2r} A|  >=  |S| + n^r |A| / (4 (2r)^{3r})
//!
//! with the right side kept as an exact rational and compared without any
//! epsilon.

use num::bigint::BigInt;
use num::{Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::checks::{is_antichain, min_distance};
use crate::error::{Error, HypothesisViolation, Result};
use crate::family::SetFamily;
use crate::ratio::{rat_int, serde_rat, Rat};
use crate::search::{shuffle, uniform_below};
use crate::shadow::shadow;
use crate::subset::Subset;

/// A validated instance of the inequality's hypotheses.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    n: u32,
    k: u32,
    r: u32,
    s: SetFamily,
    a: SetFamily,
}

impl LemmaInstance {
    /// Checks every hypothesis, reporting the first violation by name.
    pub fn new(n: u32, k: u32, r: u32, s: SetFamily, a: SetFamily) -> Result<Self> {
        check_parameters(n, k, r)?;
        if s.n() != n || a.n() != n {
            return Err(HypothesisViolation::GroundSetMismatch { n }.into());
        }
        if let Some(m) = s.iter().find(|m| m.card() != k) {
            return Err(HypothesisViolation::SNotInLayer {
                k,
                member: m.mask(),
            }
            .into());
        }
        let lower = k - r;
        if let Some(m) = a.iter().find(|m| m.card() != lower) {
            return Err(HypothesisViolation::ANotInLayer {
                k: lower,
                member: m.mask(),
            }
            .into());
        }
        let shade = shadow(&s, r);
        let overlap = a.intersection(&shade)?;
        if let Some(&m) = overlap.members().first() {
            return Err(HypothesisViolation::AMeetsShadow { member: m.mask() }.into());
        }
        let required = 2 * r + 1;
        let dist = min_distance(&a);
        if !dist.at_least(required) {
            let (x, y) = dist.witness.expect("finite distance has a witness");
            return Err(HypothesisViolation::ACodeDistance {
                required,
                found: dist.min_distance,
                x: x.mask(),
                y: y.mask(),
            }
            .into());
        }
        Ok(LemmaInstance { n, k, r, s, a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> &SetFamily {
        &self.s
    }

    pub fn a(&self) -> &SetFamily {
        &self.a
    }

    /// JSON wrapper embedding the two families as family-file payloads.
    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n: self.n,
            k: self.k,
            r: self.r,
            s_family: self.s.to_file_string(),
            a_family: self.a.to_file_string(),
        };
        serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad instance JSON: {e}")))?;
        let s = SetFamily::parse(&file.s_family)?;
        let a = SetFamily::parse(&file.a_family)?;
        LemmaInstance::new(file.n, file.k, file.r, s, a)
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: u32,
    k: u32,
    r: u32,
    s_family: String,
    a_family: String,
}

/// Parameter-only hypothesis checks: r >= 1, n >= 8r, and the window
/// n/2 + 3r <= k <= 3n/4, compared exactly via cross-multiplication.
fn check_parameters(n: u32, k: u32, r: u32) -> Result<()> {
    if r < 1 {
        return Err(HypothesisViolation::RTooSmall { r }.into());
    }
    if n < 8 * r {
        return Err(HypothesisViolation::NTooSmall { n, r }.into());
    }
    if 2 * k < n + 6 * r {
        return Err(HypothesisViolation::KBelowWindow { n, k, r }.into());
    }
    if 4 * k > 3 * n {
        return Err(HypothesisViolation::KAboveWindow { n, k }.into());
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s_size: u64,
    pub a_size: u64,
    /// |d^{3r} S union d^{2r} A|.
    pub lhs: u64,
    #[serde(with = "serde_rat")]
    pub rhs: Rat,
    #[serde(with = "serde_rat")]
    pub slack: Rat,
    pub holds: bool,
}

/// Evaluates both sides exactly. Instances are validated on construction,
/// so this cannot fail.
pub fn lemma1_check(inst: &LemmaInstance) -> LemmaReport {
    let lhs_family = shadow(inst.s(), 3 * inst.r)
        .union(&shadow(inst.a(), 2 * inst.r))
        .expect("shared ground set");
    let lhs = lhs_family.len() as u64;
    let rhs = rhs_bound(inst.n, inst.r, inst.s.len() as u64, inst.a.len() as u64);
    let slack = rat_int(lhs as i64) - &rhs;
    LemmaReport {
        n: inst.n,
        k: inst.k,
        r: inst.r,
        s_size: inst.s.len() as u64,
        a_size: inst.a.len() as u64,
        lhs,
        holds: !slack.is_negative(),
        rhs,
        slack,
    }
}

/// |S| + n^r |A| / (4 (2r)^{3r}) as an exact rational.
fn rhs_bound(n: u32, r: u32, s_size: u64, a_size: u64) -> Rat {
    let numer = BigInt::from(n).pow(r) * BigInt::from(a_size);
    let denom = BigInt::from(4u8) * BigInt::from(2 * r).pow(3 * r);
    rat_int(BigInt::from(s_size)) + Rat::new(numer, denom)
}

/// Samples S from layer k with the given density, then grows a maximal
/// distance-(2r+1) code through the leftover candidates in seeded-random
/// order. The returned instance always satisfies every hypothesis.
pub fn random_instance(n: u32, k: u32, r: u32, density: &Rat, seed: u64) -> Result<LemmaInstance> {
    check_parameters(n, k, r)?;
    if density.is_negative() || density > &rat_int(1) {
        return Err(Error::InvalidParameter(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layer_k = SetFamily::layer(n, k)?;
    let s = sample_family(&layer_k, density, &mut rng);
    let a = greedy_code_avoiding(n, k - r, r, &s, &mut rng)?;
    LemmaInstance::new(n, k, r, s, a)
}

fn sample_family(layer: &SetFamily, density: &Rat, rng: &mut impl RngCore) -> SetFamily {
    if density.is_zero() {
        return SetFamily::from_sorted(layer.n(), Vec::new());
    }
    if density == &rat_int(1) {
        return layer.clone();
    }
    // Include a member iff a uniform 64-bit draw falls below density,
    // compared exactly: draw * den < num << 64.
    let num = density.numer().clone();
    let den = density.denom().clone();
    let threshold_num = num << 64u32;
    let members: Vec<Subset> = layer
        .iter()
        .filter(|_| BigInt::from(rng.next_u64()) * &den < threshold_num)
        .collect();
    SetFamily::from_sorted(layer.n(), members)
}

fn greedy_code_avoiding(
    n: u32,
    layer_k: u32,
    r: u32,
    s: &SetFamily,
    rng: &mut impl RngCore,
) -> Result<SetFamily> {
    let layer = SetFamily::layer(n, layer_k)?;
    let shade = shadow(s, r);
    let mut candidates: Vec<Subset> = layer.difference(&shade)?.members().to_vec();
    shuffle(&mut candidates, rng);
    let required = 2 * r + 1;
    let mut kept: Vec<Subset> = Vec::new();
    for cand in candidates {
        if kept
            .iter()
            .all(|&m| crate::subset::hamming_distance(m, cand) >= required)
        {
            kept.push(cand);
        }
    }
    SetFamily::new(n, kept)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdversarialOutcome {
    pub moves_tried: u64,
    pub moves_accepted: u64,
    pub report: LemmaReport,
    #[serde(skip)]
    pub instance: LemmaInstance,
}

/// Local search toward small slack: toggle one layer-k member of S per move,
/// re-derive A greedily, and keep the move iff the slack strictly drops.
/// With budget 0 the seed instance comes back unchanged. A negative slack
/// would falsify the inequality; callers must treat it as a reportable
/// counterexample, not an error.
pub fn adversarial_min_slack(
    n: u32,
    k: u32,
    r: u32,
    budget: u64,
    seed: u64,
) -> Result<AdversarialOutcome> {
    let base_density = Rat::new(BigInt::from(1u8), BigInt::from(2u8));
    let mut current = random_instance(n, k, r, &base_density, seed)?;
    let mut current_report = lemma1_check(&current);
    let layer_k = SetFamily::layer(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x61647665727361); // distinct move stream
    let mut accepted = 0u64;
    for _ in 0..budget {
        let toggle = layer_k.members()[uniform_below(&mut rng, layer_k.len() as u64) as usize];
        let mut masks: Vec<Subset> = current.s().members().to_vec();
        match masks.binary_search(&toggle) {
            Ok(pos) => {
                masks.remove(pos);
            }
            Err(pos) => {
                masks.insert(pos, toggle);
            }
        }
        let s = SetFamily::from_sorted(n, masks);
        let a = greedy_code_avoiding(n, k - r, r, &s, &mut rng)?;
        let candidate = LemmaInstance::new(n, k, r, s, a)?;
        let report = lemma1_check(&candidate);
        if report.slack < current_report.slack {
            current = candidate;
            current_report = report;
            accepted += 1;
        }
    }
    Ok(AdversarialOutcome {
        moves_tried: budget,
        moves_accepted: accepted,
        report: current_report,
        instance: current,
    })
}

// ---------------------------------------------------------------------------
// Inductive chain
// ---------------------------------------------------------------------------

/// One inequality |S_k| >= |S_{k+3r}| + n^r |A_{k+2r}| / (4 (2r)^{3r}) of the
/// layer chain, where S_k collects the size-k sets contained in some member.
#[derive(Clone, Debug, Serialize)]
pub struct ChainRow {
    pub k: u32,
    pub s_k: u64,
    pub s_k_plus_3r: u64,
    pub a_k_plus_2r: u64,
    #[serde(with = "serde_rat")]
    pub rhs: Rat,
    #[serde(with = "serde_rat")]
    pub slack: Rat,
    pub holds: bool,
}

/// The telescoped lower bound on |S_k| over the residue class of levels.
#[derive(Clone, Debug, Serialize)]
pub struct AggregateRow {
    pub k: u32,
    pub s_k: u64,
    pub levels: Vec<u32>,
    pub a_sum: u64,
    #[serde(with = "serde_rat")]
    pub bound: Rat,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub n: u32,
    pub r: u32,
    pub family_size: u64,
    /// The row window n/2 <= k <= 3n/4 - 3r; empty windows are reported
    /// explicitly, never silently passed.
    pub window_empty: bool,
    pub window_note: String,
    pub rows: Vec<ChainRow>,
    pub aggregate: Vec<AggregateRow>,
    pub all_hold: bool,
}

/// Builds every S_k by downward shadow accumulation (S_k = dS_{k+1} union
/// A_k) and evaluates the chain inequalities exactly.
pub fn inductive_chain_check(a: &SetFamily, r: u32) -> Result<ChainReport> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let anti = is_antichain(a);
    if let Some((x, y)) = anti.witness {
        return Err(Error::NotAntichain {
            x: x.mask(),
            y: y.mask(),
        });
    }
    let required = 2 * r + 1;
    let dist = min_distance(a);
    if !dist.at_least(required) {
        let (x, y) = dist.witness.expect("finite distance has a witness");
        return Err(Error::DistanceTooSmall {
            required,
            found: dist.min_distance,
            x: x.mask(),
            y: y.mask(),
        });
    }
    let n = a.n();
    let k_min = n.div_ceil(2);
    // S_k for k_min <= k <= n, accumulated from the top layer down.
    let mut s_fams: Vec<SetFamily> = vec![SetFamily::from_sorted(n, Vec::new()); (n + 1) as usize];
    for k in (k_min..=n).rev() {
        let a_k = a.restrict_to_layer(k)?;
        s_fams[k as usize] = if k == n {
            a_k
        } else {
            shadow(&s_fams[(k + 1) as usize], 1).union(&a_k)?
        };
    }
    let s_size = |k: u32| -> u64 {
        if k > n {
            0
        } else {
            s_fams[k as usize].len() as u64
        }
    };
    let a_size = |k: u32| -> u64 {
        if k > n {
            0
        } else {
            a.iter().filter(|m| m.card() == k).count() as u64
        }
    };

    // Row window: 2k >= n and 4(k + 3r) <= 3n.
    let mut rows = Vec::new();
    for k in k_min..=n {
        if 4 * (k + 3 * r) > 3 * n {
            break;
        }
        let s_k = s_size(k);
        let s_hi = s_size(k + 3 * r);
        let a_mid = a_size(k + 2 * r);
        let rhs = rat_int(BigInt::from(s_hi)) + rhs_bound(n, r, 0, a_mid);
        let slack = rat_int(BigInt::from(s_k)) - &rhs;
        rows.push(ChainRow {
            k,
            s_k,
            s_k_plus_3r: s_hi,
            a_k_plus_2r: a_mid,
            holds: !slack.is_negative(),
            rhs,
            slack,
        });
    }
    let window_empty = rows.is_empty();
    let window_note = if window_empty {
        format!(
            "row window n/2 <= k <= 3n/4 - 3r is empty for n = {n}, r = {r}; \
             nothing to check"
        )
    } else {
        format!("{} row(s) in the window", rows.len())
    };

    // Telescoped bound: |S_k| >= c * sum of |A_l| over l in k..=3n/4 - 3r
    // with l = k + 2r (mod 3r).
    let mut aggregate = Vec::new();
    for k in k_min..=n {
        let mut levels = Vec::new();
        let mut a_sum = 0u64;
        let mut l = k;
        // l <= 3n/4 - 3r, exactly: 4(l + 3r) <= 3n.
        while 4 * (l + 3 * r) <= 3 * n {
            if (l % (3 * r)) == ((k + 2 * r) % (3 * r)) {
                levels.push(l);
                a_sum += a_size(l);
            }
            l += 1;
        }
        let bound = rhs_bound(n, r, 0, a_sum);
        let s_k = s_size(k);
        let holds = rat_int(BigInt::from(s_k)) >= bound;
        aggregate.push(AggregateRow {
            k,
            s_k,
            levels,
            a_sum,
            bound,
            holds,
        });
    }

    let all_hold = rows.iter().all(|r| r.holds) && aggregate.iter().all(|r| r.holds);
    Ok(ChainReport {
        n,
        r,
        family_size: a.len() as u64,
        window_empty,
        window_note,
        rows,
        aggregate,
        all_hold,
    })
}
