//! Brute-force oracles shared by the integration tests. None of them call the
//! search code they are used to check.
#![allow(dead_code)]

use hyperturan::{binomial, Combinations, Hypergraph};

/// Every injective map of `0..v` into `0..n`, as image vectors.
pub fn injections(v: usize, n: usize) -> Vec<Vec<u32>> {
    fn go(v: usize, n: usize, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == v {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x as u32);
                go(v, n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(v, n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Image of `pattern` under `map`, as sorted edges.
fn image(pattern: &Hypergraph, map: &[u32]) -> Vec<Vec<u32>> {
    pattern
        .edges()
        .map(|e| {
            let mut f: Vec<u32> = e.iter().map(|&u| map[u as usize]).collect();
            f.sort_unstable();
            f
        })
        .collect()
}

/// Whether `host` contains a copy of `pattern`, by trying every injective
/// vertex map. `pattern` must have no isolated vertices.
pub fn contains_copy(host: &Hypergraph, pattern: &Hypergraph) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    let edges: std::collections::HashSet<Vec<u32>> = host.edges().map(<[u32]>::to_vec).collect();
    injections(pattern.n(), host.n())
        .iter()
        .any(|map| image(pattern, map).iter().all(|e| edges.contains(e)))
}

/// ex(n, F) by checking every subset of the complete k-graph's edges.
/// Returns the maximum edge count.
pub fn ex_by_enumeration(n: usize, k: usize, family: &[Hypergraph]) -> usize {
    let all: Vec<Vec<u32>> = Combinations::new(n, k).collect();
    assert!(all.len() <= 24, "too many candidate edges for enumeration");
    let index = |e: &Vec<u32>| all.iter().position(|f| f == e).unwrap();
    let mut copies: Vec<u32> = Vec::new();
    for g in family {
        let covered = g.covered_vertices();
        if covered.len() > n {
            continue;
        }
        // relabel onto 0..v
        let relabeled = Hypergraph::new(
            covered.len(),
            g.k(),
            g.edges().map(|e| e.iter().map(|v| covered.binary_search(v).unwrap() as u32).collect::<Vec<_>>()),
        )
        .unwrap();
        for map in injections(relabeled.n(), n) {
            let mask = image(&relabeled, &map).iter().fold(0u32, |m, e| m | 1 << index(e));
            copies.push(mask);
        }
    }
    copies.sort_unstable();
    copies.dedup();
    let mut best = 0;
    for mask in 0u32..(1u32 << all.len()) {
        let size = mask.count_ones() as usize;
        if size > best && copies.iter().all(|&c| c & mask != c) {
            best = size;
        }
    }
    best
}

/// Largest subset of `0..p` that is k-good, by growing from all smaller good
/// sets (goodness is inherited by subsets). Each new element is checked
/// against every coefficient triple and every pair of partners.
pub fn max_good_by_enumeration(p: u64, k: u64) -> usize {
    let pi = p as i64;
    let coeffs: Vec<i64> = (1..=k as i64).flat_map(|m| [m, -m]).collect();
    let mut triples = Vec::new();
    for &a in &coeffs {
        for &b in &coeffs {
            for &c in &coeffs {
                if (a + b + c).rem_euclid(pi) == 0 {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    let size = 1usize << p;
    let mut good = vec![false; size];
    good[0] = true;
    let mut best = 0;
    for mask in 1..size {
        let top = 63 - (mask as u64).leading_zeros() as usize;
        let rest = mask & !(1 << top);
        if !good[rest] {
            continue;
        }
        let elems: Vec<i64> = (0..p as usize).filter(|&i| mask >> i & 1 == 1).map(|i| i as i64).collect();
        let x = top as i64;
        let violated = triples.iter().any(|m| {
            elems.iter().any(|&s2| {
                elems.iter().any(|&s3| {
                    !(s2 == x && s3 == x) && (m[0] * x + m[1] * s2 + m[2] * s3).rem_euclid(pi) == 0
                })
            })
        });
        if !violated {
            good[mask] = true;
            best = best.max(elems.len());
        }
    }
    best
}

/// r_k(n) over {1..n} by the same downward-closed growth.
pub fn r_k_by_enumeration(n: usize, k: usize) -> usize {
    let size = 1usize << n;
    let mut free = vec![false; size];
    free[0] = true;
    let mut best = 0;
    for mask in 1..size {
        let top = 63 - (mask as u64).leading_zeros() as usize;
        let rest = mask & !(1 << top);
        if !free[rest] {
            continue;
        }
        let has = |v: i64| v >= 0 && (v as usize) < n && mask >> v & 1 == 1;
        // progressions ending at the new maximum
        let closes = (0..top as i64).any(|s| {
            let d = top as i64 - s;
            (0..k as i64).all(|j| has(top as i64 - j * d))
        });
        if !closes {
            free[mask] = true;
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Maximum (n, r, t)-packing by subset enumeration over all r-sets.
pub fn max_packing_by_enumeration(n: usize, r: usize, t: usize) -> usize {
    let all: Vec<Vec<u32>> = Combinations::new(n, r).collect();
    assert!(all.len() <= 24);
    let conflict = |a: &Vec<u32>, b: &Vec<u32>| a.iter().filter(|v| b.contains(v)).count() >= t;
    let mut masks: Vec<u32> = vec![0; all.len()];
    for i in 0..all.len() {
        for j in 0..all.len() {
            if i != j && conflict(&all[i], &all[j]) {
                masks[i] |= 1 << j;
            }
        }
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << all.len()) {
        let size = mask.count_ones() as usize;
        if size > best && (0..all.len()).all(|i| mask >> i & 1 == 0 || masks[i] & mask == 0) {
            best = size;
        }
    }
    best
}

pub fn choose(n: usize, k: usize) -> u128 {
    binomial(n as u64, k as u64)
}
