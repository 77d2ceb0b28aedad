use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;
use crate::comb::factorial;
use crate::error::{param, Result};

/// A partition of `0..n` into labelled parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<u32>>,
    part_of: Vec<usize>,
    balanced: bool,
}

impl Partition {
    /// Validates that `parts` are disjoint and cover `0..n`.
    pub fn new(n: usize, parts: Vec<Vec<u32>>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                let slot = part_of
                    .get_mut(v as usize)
                    .ok_or_else(|| crate::Error::Param(format!("vertex {v} outside 0..{n}")))?;
                if *slot != usize::MAX {
                    return param(format!("vertex {v} lies in two parts"));
                }
                *slot = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return param(format!("vertex {v} is not covered by any part"));
        }
        let mut parts = parts;
        for p in &mut parts {
            p.sort_unstable();
        }
        let max = parts.iter().map(Vec::len).max().unwrap_or(0);
        let min = parts.iter().map(Vec::len).min().unwrap_or(0);
        Ok(Partition {
            balanced: max - min <= 1,
            parts,
            part_of,
        })
    }

    /// Parts of `size` consecutive vertices: part i holds `i*size .. (i+1)*size`.
    pub fn blocks(num_parts: usize, size: usize) -> Self {
        let parts = (0..num_parts)
            .map(|i| ((i * size) as u32..((i + 1) * size) as u32).collect())
            .collect();
        Partition::new(num_parts * size, parts).expect("blocks form a partition")
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn balanced(&self) -> bool {
        self.balanced
    }

    pub fn part_of(&self, v: u32) -> usize {
        self.part_of[v as usize]
    }

    /// True when the edge meets every part exactly once.
    pub fn is_transversal(&self, edge: &[u32]) -> bool {
        if edge.len() != self.parts.len() || edge.len() > 64 {
            return false;
        }
        let mut seen = 0u64;
        for &v in edge {
            let bit = 1u64 << self.part_of(v);
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        true
    }
}

/// ⌈(k!/k^k)·m⌉, the guaranteed number of transversal edges.
pub fn transversal_floor(k: usize, m: usize) -> u128 {
    let num = factorial(k as u64) * m as u128;
    let den = (k as u128).pow(k as u32);
    num.div_ceil(den)
}

fn falling(x: u128, len: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..len as u128 {
        acc = acc.checked_mul(x.checked_sub(i)?)?;
    }
    Some(acc)
}

/// Balanced k-partition keeping at least ⌈(k!/k^k)·m⌉ edges transversal.
///
/// Vertices are placed one at a time into the part maximising the exact
/// conditional expectation of the transversal count under a uniformly random
/// completion that honours the part quotas. The expectation never decreases
/// and starts at or above (k!/k^k)·m, so the bound is a hard guarantee. The
/// seed only breaks ties.
pub fn kpartite_reduce(h: &Hypergraph, seed: u64) -> Result<(Partition, Hypergraph)> {
    let (n, k) = (h.n(), h.k());
    if n < k {
        return param(format!("need n >= k for a transversal partition (n = {n}, k = {k})"));
    }
    if k > 64 {
        return param("kpartite_reduce supports k <= 64");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (q, rho) = (n / k, n % k);
    let mut quota: Vec<u128> = (0..k).map(|j| (q + usize::from(j < rho)) as u128).collect();
    let mut remaining = n as u128;
    let mut part_of: Vec<usize> = vec![usize::MAX; n];

    // per-edge: mask of parts already used, or None once two vertices collide
    let mut used: Vec<Option<u64>> = vec![Some(0); h.m()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, e) in h.edges().enumerate() {
        for &v in e {
            incident[v as usize].push(id);
        }
    }
    let fact: Vec<u128> = (0..=k as u64).map(factorial).collect();
    let mut in_edge = vec![false; h.m()];

    for v in 0..n {
        for &id in &incident[v] {
            in_edge[id] = true;
        }
        let slots_after = remaining - 1;
        // common denominator (slots_after)_(depth) for every edge's probability
        let depth = (k as u128).min(slots_after) as usize;
        let mut best: Option<u128> = None;
        let mut ties: Vec<usize> = Vec::new();
        for j in 0..k {
            if quota[j] == 0 {
                continue;
            }
            quota[j] -= 1;
            let mut score: u128 = 0;
            for (id, state) in used.iter().enumerate() {
                let Some(mask) = *state else { continue };
                let mask = if in_edge[id] {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    mask | (1 << j)
                } else {
                    mask
                };
                let unassigned = k - mask.count_ones() as usize;
                let mut term = fact[unassigned];
                for (p, &c) in quota.iter().enumerate() {
                    if mask & (1 << p) == 0 {
                        term = term.checked_mul(c).ok_or_else(overflow)?;
                    }
                }
                let tail = falling(slots_after - unassigned as u128, depth - unassigned).ok_or_else(overflow)?;
                term = term.checked_mul(tail).ok_or_else(overflow)?;
                score = score.checked_add(term).ok_or_else(overflow)?;
            }
            quota[j] += 1;
            match best {
                Some(b) if score < b => {}
                Some(b) if score == b => ties.push(j),
                _ => {
                    best = Some(score);
                    ties.clear();
                    ties.push(j);
                }
            }
        }
        let j = *ties.choose(&mut rng).expect("some part has spare quota");
        part_of[v] = j;
        quota[j] -= 1;
        remaining -= 1;
        for &id in &incident[v] {
            in_edge[id] = false;
            if let Some(mask) = used[id] {
                used[id] = if mask & (1 << j) != 0 { None } else { Some(mask | (1 << j)) };
            }
        }
    }

    let mut parts = vec![Vec::new(); k];
    for (v, &j) in part_of.iter().enumerate() {
        parts[j].push(v as u32);
    }
    let partition = Partition::new(n, parts)?;
    let kept = h.filter_edges(|_, e| partition.is_transversal(e));
    debug_assert!(kept.m() as u128 >= transversal_floor(k, h.m()));
    Ok((partition, kept))
}

fn overflow() -> crate::Error {
    crate::Error::Param("instance too large for exact conditional-expectation arithmetic".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn partition_validation() {
        assert!(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap().balanced());
        assert!(!Partition::new(4, vec![vec![0, 1, 2], vec![3]]).unwrap().balanced());
        assert!(Partition::new(4, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(Partition::new(4, vec![vec![0, 1], vec![2]]).is_err());
        assert!(Partition::new(4, vec![vec![0, 1], vec![2, 7]]).is_err());
        let p = Partition::blocks(3, 2);
        assert!(p.is_transversal(&[0, 2, 4]));
        assert!(!p.is_transversal(&[0, 1, 4]));
    }

    #[test]
    fn floor_values() {
        assert_eq!(transversal_floor(3, 100), 23);
        assert_eq!(transversal_floor(3, 1), 1);
        assert_eq!(transversal_floor(4, 0), 0);
        assert_eq!(transversal_floor(2, 3), 2);
    }

    #[test]
    fn complete_triple_is_kept() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let (p, kept) = kpartite_reduce(&h, 0).unwrap();
        assert!(p.balanced());
        assert_eq!(kept.m(), 1);
    }

    #[test]
    fn empty_input_and_small_n() {
        let h = Hypergraph::empty(7, 3).unwrap();
        let (p, kept) = kpartite_reduce(&h, 9).unwrap();
        assert!(p.balanced() && kept.is_empty());
        assert_eq!(p.num_parts(), 3);
        assert!(kpartite_reduce(&Hypergraph::empty(2, 3).unwrap(), 0).is_err());
    }

    #[test]
    fn hundred_random_triples_on_twelve_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut edges = std::collections::BTreeSet::new();
        while edges.len() < 100 {
            let mut e: Vec<u32> = rand::seq::index::sample(&mut rng, 12, 3).into_iter().map(|v| v as u32).collect();
            e.sort_unstable();
            edges.insert(e);
        }
        let h = Hypergraph::new(12, 3, edges).unwrap();
        let (p, kept) = kpartite_reduce(&h, rng.gen()).unwrap();
        assert!(p.balanced());
        assert!(kept.m() >= 23, "kept {}", kept.m());
        assert!(kept.edges().all(|e| p.is_transversal(e)));
    }

    #[test]
    fn deterministic_given_seed() {
        let h = Hypergraph::new(6, 2, vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![0, 5]]).unwrap();
        assert_eq!(kpartite_reduce(&h, 4).unwrap(), kpartite_reduce(&h, 4).unwrap());
    }
}
