//! Certified maximum antichain-code search at small n.
//!
//! Vertices are the 2^n subsets of [n]; two vertices conflict when one
//! contains the other or their Hamming distance is below d. A maximum
//! independent set of the conflict graph is found as a maximum clique of its
//! complement, by branch and bound with a greedy-coloring bound. The search
//! is sequential and every tie-break is fixed, so identical inputs give
//! identical results; in certified mode the witness is additionally
//! canonicalized to the lexicographically smallest maximum family.

use num::BigInt;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binom::binomial;
use crate::checks::{is_antichain, min_distance};
use crate::constructions::{best_translate_to_middle, greedy_code, hamming_code};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ratio::{rat, serde_rat, surd_decimal, Rat};
use crate::subset::Subset;

/// Hard cap on the search ground set (4096 vertices). Certification is
/// routinely feasible up to n = 10.
pub const MAX_SEARCH_N: u32 = 12;

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SearchBudget {
    /// Maximum number of branch-and-bound nodes; `None` is unlimited.
    pub max_nodes: Option<u64>,
    /// Extra seeded restarts with shuffled vertex orders, tried only while
    /// the search is still uncertified.
    pub restarts: u32,
    pub seed: u64,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(max: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max),
            ..SearchBudget::default()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: u32,
    pub d: u32,
    pub best_size: u32,
    pub witness: SetFamily,
    /// True iff the branch-and-bound tree was exhausted, so no antichain
    /// distance-d code in 2^[n] exceeds `best_size`.
    pub certified: bool,
    /// All nodes visited, including witness canonicalization.
    pub nodes_explored: u64,
    /// Nodes charged against the budget (the optimization phase only).
    pub budget_spent: u64,
}

/// Maximum antichain distance-d code in 2^[n], by exhausting the conflict
/// graph's independent sets unless the budget runs out first.
pub fn max_antichain_code(n: u32, d: u32, budget: &SearchBudget) -> Result<SearchResult> {
    if n < 1 || n > MAX_SEARCH_N {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_SEARCH_N,
        });
    }
    if d < 1 {
        return Err(Error::InvalidParameter("distance d must be >= 1".into()));
    }
    let graph = CompatGraph::build(n, d);
    let mut searcher = Searcher::new(&graph, budget.max_nodes);

    // Any antichain code supplies a valid starting clique; the constructions
    // give a strong one and make the search a pure optimality proof.
    if let Ok(seed_family) = construction_witness(n, d) {
        searcher.best = seed_family.iter().map(|s| s.mask() as u32).collect();
    }

    let base_order = graph.static_order();
    searcher.run(&base_order);
    if !searcher.certified {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        for _ in 0..budget.restarts {
            let mut order = base_order.clone();
            shuffle(&mut order, &mut rng);
            searcher.run(&order);
            if searcher.certified {
                break;
            }
        }
    }

    let budget_spent = searcher.nodes;
    let best_size = searcher.best.len() as u32;
    let witness_vertices = if searcher.certified {
        searcher.lexmin_maximum(best_size as usize)
    } else {
        let mut w = searcher.best.clone();
        w.sort_unstable();
        w
    };
    let witness = SetFamily::new(
        n,
        witness_vertices
            .iter()
            .map(|&v| Subset::from_mask(v as u64))
            .collect(),
    )?;
    Ok(SearchResult {
        n,
        d,
        best_size,
        witness,
        certified: searcher.certified,
        nodes_explored: searcher.nodes,
        budget_spent,
    })
}

/// Re-checks the witness (antichain, distance, size) without re-certifying
/// optimality.
pub fn verify_result(res: &SearchResult) -> bool {
    res.witness.len() as u32 == res.best_size
        && res.witness.n() == res.n
        && is_antichain(&res.witness).is_antichain
        && min_distance(&res.witness).at_least(res.d)
}

// ---------------------------------------------------------------------------
// Conflict / compatibility graph
// ---------------------------------------------------------------------------

/// Fixed-width bitset over the vertex range.
#[derive(Clone, PartialEq, Eq)]
struct VertexSet {
    blocks: Vec<u64>,
}

impl VertexSet {
    fn empty(nv: usize) -> Self {
        VertexSet {
            blocks: vec![0u64; nv.div_ceil(64)],
        }
    }

    fn full(nv: usize) -> Self {
        let mut s = VertexSet::empty(nv);
        for v in 0..nv {
            s.insert(v as u32);
        }
        s
    }

    fn insert(&mut self, v: u32) {
        self.blocks[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    fn remove(&mut self, v: u32) {
        self.blocks[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    fn contains(&self, v: u32) -> bool {
        (self.blocks[(v / 64) as usize] >> (v % 64)) & 1 == 1
    }

    fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    /// The single common vertex, if the intersection has exactly one.
    fn lone_intersection(&self, other: &VertexSet) -> Option<u32> {
        let mut found: Option<u32> = None;
        for (i, (a, b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            let word = a & b;
            if word == 0 {
                continue;
            }
            if found.is_some() || word.count_ones() > 1 {
                return None;
            }
            found = Some(i as u32 * 64 + word.trailing_zeros());
        }
        found
    }

}

struct CompatGraph {
    n: u32,
    nv: usize,
    /// adj[v] = vertices compatible with v (not comparable, distance >= d),
    /// excluding v itself.
    adj: Vec<VertexSet>,
    compat_degree: Vec<u32>,
}

impl CompatGraph {
    fn build(n: u32, d: u32) -> CompatGraph {
        let nv = 1usize << n;
        let mut adj = vec![VertexSet::empty(nv); nv];
        let mut compat_degree = vec![0u32; nv];
        for x in 0..nv as u64 {
            for y in (x + 1)..nv as u64 {
                let comparable = x & y == x || x & y == y;
                let close = (x ^ y).count_ones() < d;
                if !(comparable || close) {
                    adj[x as usize].insert(y as u32);
                    adj[y as usize].insert(x as u32);
                    compat_degree[x as usize] += 1;
                    compat_degree[y as usize] += 1;
                }
            }
        }
        CompatGraph {
            n,
            nv,
            adj,
            compat_degree,
        }
    }

    /// Root order for coloring and branching: degree descending (in the
    /// compatibility graph, where the clique search runs), ties by mask
    /// ascending. Fixed so runs are reproducible.
    fn static_order(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.nv as u32).collect();
        order.sort_by(|&a, &b| {
            self.compat_degree[b as usize]
                .cmp(&self.compat_degree[a as usize])
                .then(a.cmp(&b))
        });
        order
    }
}

/// Splits every cell by the committed mask, dropping empty pieces.
fn refine_cells(cells: &[u64], w: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(cells.len() * 2);
    for &c in cells {
        let inside = c & w;
        let outside = c & !w;
        if inside != 0 {
            out.push(inside);
        }
        if outside != 0 {
            out.push(outside);
        }
    }
    out
}

/// A known-good starting clique from the construction toolbox.
fn construction_witness(n: u32, d: u32) -> Result<SetFamily> {
    if d > n {
        return Ok(SetFamily::from_sorted(n, vec![Subset::EMPTY]));
    }
    if d == 1 {
        return SetFamily::layer(n, n / 2);
    }
    let greedy = greedy_code(n, d)?;
    let mut best = best_translate_to_middle(&greedy.family)?.family;
    if d == 3 && (n + 1).is_power_of_two() {
        let m = (n + 1).trailing_zeros();
        if (2..=5).contains(&m) {
            let centered = best_translate_to_middle(&hamming_code(m)?.family)?.family;
            if centered.len() > best.len() {
                best = centered;
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

struct Searcher<'g> {
    graph: &'g CompatGraph,
    order: Vec<u32>,
    best: Vec<u32>,
    nodes: u64,
    max_nodes: Option<u64>,
    aborted: bool,
    certified: bool,
    /// Pruning floor for decision runs: subtrees that cannot beat this are
    /// cut even when `best` is still empty.
    floor: usize,
    /// Decision runs stop as soon as a clique of this size is recorded.
    stop_at: usize,
    found_stop: bool,
}

impl<'g> Searcher<'g> {
    fn new(graph: &'g CompatGraph, max_nodes: Option<u64>) -> Self {
        Searcher {
            graph,
            order: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            max_nodes,
            aborted: false,
            certified: false,
            floor: 0,
            stop_at: usize::MAX,
            found_stop: false,
        }
    }

    fn prune_floor(&self) -> usize {
        self.best.len().max(self.floor)
    }

    fn record(&mut self, chosen: &[u32]) {
        if chosen.len() > self.best.len() {
            self.best = chosen.to_vec();
            if self.best.len() >= self.stop_at {
                self.found_stop = true;
            }
        }
    }

    fn run(&mut self, order: &[u32]) {
        self.order = order.to_vec();
        self.aborted = false;
        // Greedy warm start in the root order.
        let mut greedy: Vec<u32> = Vec::new();
        let mut allowed = VertexSet::full(self.graph.nv);
        for &v in &self.order {
            if allowed.contains(v) {
                greedy.push(v);
                allowed.intersect_with(&self.graph.adj[v as usize]);
            }
        }
        if greedy.len() > self.best.len() {
            self.best = greedy;
        }
        let mut chosen = Vec::new();
        let root: Vec<u32> = self.order.clone();
        // Every coordinate permutation is an automorphism of the conflict
        // graph, so the root search runs with the full one-cell partition.
        let root_cells = vec![if self.graph.n == 63 {
            u64::MAX >> 1
        } else {
            (1u64 << self.graph.n) - 1
        }];
        self.sym_expand(&mut chosen, &root, &root_cells);
        if !self.aborted {
            self.certified = true;
        }
    }

    /// Branch over orbits of the candidate set instead of single vertices,
    /// as long as the committed masks leave coordinate symmetry on the table.
    ///
    /// The acting group is the product of symmetric groups on the cells of
    /// the partition of [n] generated by the committed masks; it fixes every
    /// committed mask and maps the candidate set to itself. Two candidates
    /// with the same per-cell intersection counts lie in one orbit, so if a
    /// maximum clique through the current prefix meets an orbit at all, some
    /// automorphic image of it contains the orbit representative. Branch i
    /// therefore commits the representative of orbit i and drops orbits
    /// 1..i-1 entirely.
    fn sym_expand(&mut self, chosen: &mut Vec<u32>, cands: &[u32], cells: &[u64]) {
        if self.aborted || self.found_stop {
            return;
        }
        if cands.is_empty() || cells.iter().all(|c| c.count_ones() <= 1) {
            self.expand(chosen, cands);
            return;
        }
        // Orbit partition by per-cell intersection profile, keyed in list
        // order so everything stays deterministic.
        let orbit_key = |u: u32| -> Vec<u32> {
            cells
                .iter()
                .map(|&c| (u as u64 & c).count_ones())
                .collect()
        };
        let mut orbit_keys: Vec<Vec<u32>> = Vec::new();
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        let mut key_of: Vec<usize> = Vec::with_capacity(cands.len());
        for &u in cands {
            let key = orbit_key(u);
            match orbit_keys.iter().position(|k| *k == key) {
                Some(i) => {
                    orbits[i].push(u);
                    key_of.push(i);
                }
                None => {
                    orbit_keys.push(key);
                    orbits.push(vec![u]);
                    key_of.push(orbits.len() - 1);
                }
            }
        }
        if orbits.len() == cands.len() {
            // No symmetry left to exploit.
            self.expand(chosen, cands);
            return;
        }
        self.nodes += 1;
        if let Some(max) = self.max_nodes {
            if self.nodes > max {
                self.aborted = true;
                return;
            }
        }
        let mut live: Vec<u32> = cands.to_vec();
        let mut live_orbit: Vec<usize> = key_of;
        for i in 0..orbits.len() {
            if self.aborted || self.found_stop {
                return;
            }
            let kmin = self.prune_floor().saturating_sub(chosen.len());
            let colored = self.color_sort(&live, kmin);
            let bound = colored.last().map_or(0, |&(_, c)| c) as usize;
            if chosen.len() + bound <= self.prune_floor() {
                return;
            }
            let rep = *orbits[i].iter().min().expect("orbits are non-empty");
            let adj = &self.graph.adj[rep as usize];
            let next: Vec<u32> = live.iter().copied().filter(|&u| adj.contains(u)).collect();
            let next_cells = refine_cells(cells, rep as u64);
            chosen.push(rep);
            self.sym_expand(chosen, &next, &next_cells);
            chosen.pop();
            // The remaining branches avoid orbit i altogether.
            let mut keep = Vec::with_capacity(live.len());
            let mut keep_orbit = Vec::with_capacity(live.len());
            for (u, o) in live.iter().copied().zip(live_orbit.iter().copied()) {
                if o != i {
                    keep.push(u);
                    keep_orbit.push(o);
                }
            }
            live = keep;
            live_orbit = keep_orbit;
        }
    }

    /// Greedy sequential coloring of the candidate list in its inherited
    /// order, with single-swap recoloring of vertices that land above the
    /// prune threshold `kmin`. Returns (vertex, color) pairs sorted by color
    /// ascending; a clique can use at most one vertex per color class, so
    /// the color bounds any clique inside the vertex's prefix.
    fn color_sort(&self, cands: &[u32], kmin: usize) -> Vec<(u32, u32)> {
        // class_adj[c] = union of the adjacency of everything in class c, so
        // v joins class c iff v is not in class_adj[c]. The unions may stay
        // stale (too large) after a swap, which only wastes classes, never
        // miscolors.
        let mut class_adj: Vec<VertexSet> = Vec::new();
        let mut class_members: Vec<Vec<u32>> = Vec::new();
        let mut member_sets: Vec<VertexSet> = Vec::new();
        'next_vertex: for &v in cands {
            for (c, adj_union) in class_adj.iter_mut().enumerate() {
                if !adj_union.contains(v) {
                    class_members[c].push(v);
                    member_sets[c].insert(v);
                    adj_union.union_with(&self.graph.adj[v as usize]);
                    continue 'next_vertex;
                }
            }
            let fresh = class_adj.len();
            if fresh + 1 > kmin && kmin >= 2 {
                // The new color would be branched on; try to swap v below the
                // threshold instead: a class c1 whose only neighbour of v is
                // w, plus a class c2 < kmin that can absorb w.
                let vadj = &self.graph.adj[v as usize];
                for c1 in 0..kmin.min(fresh) {
                    let Some(w) = member_sets[c1].lone_intersection(vadj) else {
                        continue;
                    };
                    let wadj = &self.graph.adj[w as usize];
                    for c2 in 0..kmin.min(fresh) {
                        if c2 == c1 || !member_sets[c2].is_disjoint(wadj) {
                            continue;
                        }
                        member_sets[c1].remove(w);
                        member_sets[c1].insert(v);
                        let pos = class_members[c1].iter().position(|&u| u == w).unwrap();
                        class_members[c1][pos] = v;
                        class_adj[c1].union_with(vadj);
                        member_sets[c2].insert(w);
                        class_members[c2].push(w);
                        class_adj[c2].union_with(wadj);
                        continue 'next_vertex;
                    }
                }
            }
            class_adj.push(self.graph.adj[v as usize].clone());
            let mut ms = VertexSet::empty(self.graph.nv);
            ms.insert(v);
            member_sets.push(ms);
            class_members.push(vec![v]);
        }
        let mut out = Vec::with_capacity(cands.len());
        for (c, members) in class_members.into_iter().enumerate() {
            for v in members {
                out.push((v, c as u32 + 1));
            }
        }
        out
    }

    fn expand(&mut self, chosen: &mut Vec<u32>, cands: &[u32]) {
        self.nodes += 1;
        if let Some(max) = self.max_nodes {
            if self.nodes > max {
                self.aborted = true;
                return;
            }
        }
        if cands.is_empty() {
            self.record(chosen);
            return;
        }
        let kmin = self.prune_floor().saturating_sub(chosen.len());
        let colored = self.color_sort(cands, kmin);
        for i in (0..colored.len()).rev() {
            if self.aborted || self.found_stop {
                return;
            }
            let (v, color) = colored[i];
            if chosen.len() + color as usize <= self.prune_floor() {
                // Colors ascend along the list, so the whole prefix is bounded.
                return;
            }
            // Candidates for the branch that includes v: the prefix of lower
            // colors restricted to the neighbourhood of v, keeping the color
            // order for the child's coloring pass.
            let adj = &self.graph.adj[v as usize];
            let next: Vec<u32> = colored[..i]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| adj.contains(u))
                .collect();
            chosen.push(v);
            self.expand(chosen, &next);
            chosen.pop();
        }
    }

    /// Lexicographically smallest maximum family: commit the smallest vertex
    /// (in mask order) that still extends to a clique of the target size,
    /// then recurse. Each feasibility query asks for the clique number of
    /// N(committed + v), which is invariant under the committed masks' cell
    /// group, so the decisions reuse the orbit-peeled search. Restricting the
    /// query to vertices above v is unnecessary: a clique through an
    /// already-refuted smaller vertex would contradict that refutation.
    fn lexmin_maximum(&mut self, target: usize) -> Vec<u32> {
        self.max_nodes = None;
        let full_cell = if self.graph.n == 63 {
            u64::MAX >> 1
        } else {
            (1u64 << self.graph.n) - 1
        };
        let mut chosen: Vec<u32> = Vec::new();
        let mut cells = vec![full_cell];
        // Pools stay in the root coloring order; scans sort ascending.
        let mut pool: Vec<u32> = self.order.clone();
        while chosen.len() < target {
            let need = target - chosen.len();
            let floor = *chosen.last().unwrap_or(&0);
            let mut scan: Vec<u32> = pool.to_vec();
            scan.sort_unstable();
            let mut committed = false;
            for v in scan {
                if !chosen.is_empty() && v <= floor {
                    continue;
                }
                let adj = &self.graph.adj[v as usize];
                let sub_pool: Vec<u32> =
                    pool.iter().copied().filter(|&u| adj.contains(u)).collect();
                let sub_cells = refine_cells(&cells, v as u64);
                if need == 1 || self.clique_decision(&sub_pool, &sub_cells, need - 1) {
                    chosen.push(v);
                    cells = sub_cells;
                    pool = sub_pool;
                    committed = true;
                    break;
                }
            }
            assert!(committed, "a maximum clique of the certified size exists");
        }
        chosen
    }

    /// Does the pool contain a clique of at least `need` vertices?
    fn clique_decision(&mut self, pool: &[u32], cells: &[u64], need: usize) -> bool {
        if pool.len() < need {
            return false;
        }
        let saved_best = std::mem::take(&mut self.best);
        let saved_floor = self.floor;
        let saved_stop = self.stop_at;
        self.floor = need - 1;
        self.stop_at = need;
        self.found_stop = false;
        let mut chosen = Vec::new();
        self.sym_expand(&mut chosen, pool, cells);
        let found = self.found_stop;
        self.best = saved_best;
        self.floor = saved_floor;
        self.stop_at = saved_stop;
        self.found_stop = false;
        found
    }
}

/// Unbiased Fisher-Yates over the ChaCha stream; self-contained so shuffles
/// stay stable across dependency upgrades.
pub(crate) fn shuffle<T>(v: &mut [T], rng: &mut impl RngCore) {
    for i in (1..v.len()).rev() {
        let j = uniform_below(rng, i as u64 + 1) as usize;
        v.swap(i, j);
    }
}

/// Uniform draw from 0..bound by rejection.
pub(crate) fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    loop {
        let x = rng.next_u64();
        let r = x % bound;
        if x - r <= u64::MAX - (bound - 1) {
            return r;
        }
    }
}

// ---------------------------------------------------------------------------
// Ratio table
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableMode {
    /// Exhaustive oracle values.
    Certified,
    /// Construction lower bounds.
    Construction,
}

/// One row of the normalized-size table: ratio = size * n^r / 2^n as an exact
/// rational, to be multiplied by sqrt(n).
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub n: u32,
    pub d: u32,
    pub size: u64,
    pub certified: bool,
    #[serde(with = "serde_rat")]
    pub ratio: Rat,
    pub surd: u32,
}

impl RatioRow {
    pub fn decimal(&self) -> String {
        surd_decimal(&self.ratio, self.surd)
    }
}

/// Sizes of extremal (or best-constructed) antichain codes of distance 2r+1,
/// normalized by n^(r+1/2) / 2^n.
pub fn theorem1_ratio_table(
    r: u32,
    n_min: u32,
    n_max: u32,
    mode: TableMode,
    budget: &SearchBudget,
) -> Result<Vec<RatioRow>> {
    if n_min < 1 || n_min > n_max {
        return Err(Error::InvalidParameter(format!(
            "bad n range {n_min}..={n_max}"
        )));
    }
    let d = 2 * r + 1;
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let (size, certified) = match mode {
            TableMode::Certified => {
                let res = max_antichain_code(n, d, budget)?;
                if !res.certified {
                    return Err(Error::BudgetExhausted {
                        budget: budget.max_nodes.unwrap_or(0),
                    });
                }
                (res.best_size as u64, true)
            }
            TableMode::Construction => (construction_lower_bound(n, d)?, false),
        };
        let ratio = rat(
            BigInt::from(size) * BigInt::from(n).pow(r),
            BigInt::from(1u8) << n,
        );
        rows.push(RatioRow {
            n,
            d,
            size,
            certified,
            ratio,
            surd: n,
        });
    }
    Ok(rows)
}

/// Best size among the crate's constructions for the (n, d) cell.
pub fn construction_lower_bound(n: u32, d: u32) -> Result<u64> {
    if d == 1 {
        // The middle layer itself; no need to materialize it.
        return Ok(binomial(n as u64, (n / 2) as u64) as u64);
    }
    if d > n {
        // Any single set is vacuously a distance-d antichain code.
        return Ok(1);
    }
    let mut best = 1u64;
    let greedy = greedy_code(n, d)?;
    let centered = best_translate_to_middle(&greedy.family)?;
    best = best.max(centered.family.len() as u64);
    if d == 3 && (n + 1).is_power_of_two() {
        let m = (n + 1).trailing_zeros();
        if (2..=5).contains(&m) {
            let ham = hamming_code(m)?;
            let centered = best_translate_to_middle(&ham.family)?;
            best = best.max(centered.family.len() as u64);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat_to_string;

    /// Independent oracle: plain recursive maximum independent set over the
    /// conflict relation with only a counting bound, no coloring, no ordering
    /// heuristics.
    fn naive_max_independent(n: u32, d: u32) -> u32 {
        let nv = 1u64 << n;
        fn conflict(x: u64, y: u64, d: u32) -> bool {
            x & y == x || x & y == y || (x ^ y).count_ones() < d
        }
        fn rec(v: u64, nv: u64, chosen: &mut Vec<u64>, d: u32, best: &mut u32) {
            if chosen.len() as u32 + (nv - v) as u32 <= *best {
                return;
            }
            if v == nv {
                *best = (*best).max(chosen.len() as u32);
                return;
            }
            if chosen.iter().all(|&c| !conflict(c, v, d)) {
                chosen.push(v);
                rec(v + 1, nv, chosen, d, best);
                chosen.pop();
            }
            rec(v + 1, nv, chosen, d, best);
        }
        let mut best = 0;
        rec(0, nv, &mut Vec::new(), d, &mut best);
        best
    }

    #[test]
    fn engine_matches_naive_oracle_small() {
        for n in 1..=5u32 {
            for d in 1..=(n + 1) {
                let res = max_antichain_code(n, d, &SearchBudget::unlimited()).unwrap();
                assert!(res.certified);
                assert_eq!(
                    res.best_size,
                    naive_max_independent(n, d),
                    "n={n} d={d}"
                );
                assert!(verify_result(&res));
            }
        }
    }

    #[test]
    fn sperner_values() {
        // d = 1: the conflict graph is the comparability graph, so the
        // maximum is the middle binomial coefficient.
        let expect = [1u32, 2, 3, 6, 10, 20, 35, 70];
        for (i, &want) in expect.iter().enumerate() {
            let n = i as u32 + 1;
            let res = max_antichain_code(n, 1, &SearchBudget::unlimited()).unwrap();
            assert!(res.certified);
            assert_eq!(res.best_size, want, "n={n}");
        }
    }

    #[test]
    fn known_small_codes() {
        // (4, 3) -> 2 and (1, 1) -> 1.
        let res = max_antichain_code(4, 3, &SearchBudget::unlimited()).unwrap();
        assert_eq!(res.best_size, 2);
        let res = max_antichain_code(1, 1, &SearchBudget::unlimited()).unwrap();
        assert_eq!(res.best_size, 1);
        assert_eq!(res.witness.members(), &[Subset::EMPTY]);
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // n=2, d=1: maximum antichains of size 2: {{1},{2}} only.
        let res = max_antichain_code(2, 1, &SearchBudget::unlimited()).unwrap();
        assert_eq!(
            res.witness.members().iter().map(|m| m.mask()).collect::<Vec<_>>(),
            vec![0b01, 0b10]
        );
        // n=4, d=1: the certified witness must be the middle layer (it is the
        // unique maximum antichain for even n) in canonical order.
        let res = max_antichain_code(4, 1, &SearchBudget::unlimited()).unwrap();
        assert_eq!(res.witness, SetFamily::layer(4, 2).unwrap());
    }

    #[test]
    fn budget_abort_reports_uncertified() {
        let res = max_antichain_code(8, 3, &SearchBudget::nodes(500)).unwrap();
        assert!(!res.certified);
        assert!(res.best_size >= 1);
        assert!(verify_result(&res));
        // Identical budgets reproduce bit for bit.
        let res2 = max_antichain_code(8, 3, &SearchBudget::nodes(500)).unwrap();
        assert_eq!(res.best_size, res2.best_size);
        assert_eq!(res.witness, res2.witness);
        assert_eq!(res.nodes_explored, res2.nodes_explored);
    }

    #[test]
    fn restarts_are_deterministic() {
        let budget = SearchBudget {
            max_nodes: Some(50),
            restarts: 3,
            seed: 11,
        };
        let a = max_antichain_code(7, 3, &budget).unwrap();
        let b = max_antichain_code(7, 3, &budget).unwrap();
        assert_eq!(a.best_size, b.best_size);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn monotone_in_d() {
        for n in 2..=7u32 {
            let mut prev = u32::MAX;
            for d in 1..=n {
                let res = max_antichain_code(n, d, &SearchBudget::unlimited()).unwrap();
                assert!(res.best_size <= prev, "n={n} d={d}");
                prev = res.best_size;
            }
        }
    }

    #[test]
    fn verify_result_rejects_tampering() {
        let mut res = max_antichain_code(4, 3, &SearchBudget::unlimited()).unwrap();
        assert!(verify_result(&res));
        // Comparable pair.
        res.witness = SetFamily::from_masks(4, &[0b1, 0b11]).unwrap();
        res.best_size = 2;
        assert!(!verify_result(&res));
        // Size mismatch.
        let mut res = max_antichain_code(4, 3, &SearchBudget::unlimited()).unwrap();
        res.best_size = 3;
        assert!(!verify_result(&res));
        // Distance violation.
        let mut res = max_antichain_code(4, 3, &SearchBudget::unlimited()).unwrap();
        res.witness = SetFamily::from_masks(4, &[0b0011, 0b0110]).unwrap();
        res.best_size = 2;
        assert!(!verify_result(&res));
    }

    #[test]
    fn ratio_table_values() {
        // r=1, n=4: size 2, ratio 2*4/16 = 1/2, times sqrt(4) = 1.
        let rows = theorem1_ratio_table(
            1,
            4,
            4,
            TableMode::Certified,
            &SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(rows[0].size, 2);
        assert_eq!(rat_to_string(&rows[0].ratio), "1/2");
        assert_eq!(rows[0].decimal(), "1.000000");
        // r=0 construction mode: middle binomial.
        let rows = theorem1_ratio_table(
            0,
            1,
            8,
            TableMode::Construction,
            &SearchBudget::unlimited(),
        )
        .unwrap();
        let sizes: Vec<u64> = rows.iter().map(|r| r.size).collect();
        assert_eq!(sizes, vec![1, 2, 3, 6, 10, 20, 35, 70]);
        // r=0 ratio drifts toward sqrt(2/pi) ~ 0.7979 from below.
        let rows = theorem1_ratio_table(
            0,
            20,
            20,
            TableMode::Construction,
            &SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(rows[0].decimal(), "0.788007");
        let wide: f64 = rows[0].decimal().parse().unwrap();
        assert!((0.78..0.7979).contains(&wide));
    }

    #[test]
    fn construction_bound_sandwich() {
        // Construction <= oracle <= middle binomial, for every small cell.
        for n in 1..=7u32 {
            for d in [3u32, 5] {
                let oracle = max_antichain_code(n, d, &SearchBudget::unlimited()).unwrap();
                let lower = construction_lower_bound(n, d).unwrap();
                assert!(
                    lower <= oracle.best_size as u64,
                    "n={n} d={d}: {lower} > {}",
                    oracle.best_size
                );
                assert!(
                    (oracle.best_size as u128) <= binomial(n as u64, (n / 2) as u64),
                    "n={n} d={d}"
                );
            }
        }
    }
}
