//! Lower and upper shadow operators.
//!
//! The r-fold lower shadow of a family contains every set obtainable by
//! deleting r elements from some member; the upper shadow adds r elements
//! instead. Both are computed as r iterated single steps, which keeps the
//! intermediate families deduplicated; the test suite checks the iterated
//! form against direct r-element deletion.

use crate::family::SetFamily;
use crate::subset::Subset;

/// r-fold lower shadow. Members of cardinality below r contribute nothing;
/// r = 0 is the identity.
pub fn shadow(f: &SetFamily, r: u32) -> SetFamily {
    let mut cur = f.clone();
    for _ in 0..r {
        if cur.is_empty() {
            break;
        }
        cur = shadow_step(&cur);
    }
    cur
}

/// r-fold upper shadow. Members of cardinality above n - r contribute
/// nothing; r = 0 is the identity.
pub fn upper_shadow(f: &SetFamily, r: u32) -> SetFamily {
    let mut cur = f.clone();
    for _ in 0..r {
        if cur.is_empty() {
            break;
        }
        cur = upper_shadow_step(&cur);
    }
    cur
}

fn shadow_step(f: &SetFamily) -> SetFamily {
    let mut out: Vec<Subset> = Vec::with_capacity(f.len() * 4);
    for m in f.iter() {
        let mut bits = m.mask();
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            out.push(Subset::from_mask(m.mask() ^ low));
            bits ^= low;
        }
    }
    out.sort_unstable();
    out.dedup();
    SetFamily::new(f.n(), out).expect("shadow stays inside the ground set")
}

fn upper_shadow_step(f: &SetFamily) -> SetFamily {
    let full = if f.n() == 63 {
        u64::MAX >> 1
    } else {
        (1u64 << f.n()) - 1
    };
    let mut out: Vec<Subset> = Vec::with_capacity(f.len() * 4);
    for m in f.iter() {
        let mut bits = full & !m.mask();
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            out.push(Subset::from_mask(m.mask() | low));
            bits ^= low;
        }
    }
    out.sort_unstable();
    out.dedup();
    SetFamily::new(f.n(), out).expect("upper shadow stays inside the ground set")
}
