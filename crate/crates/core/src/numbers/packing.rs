use crate::budget::{Budget, NodeCounter};
use crate::comb::{binomial, Combinations};
use crate::error::{param, Result};
use crate::hypercore::Hypergraph;

/// r-subsets of `0..n` with pairwise intersections below t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub edges: Vec<Vec<u32>>,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The packing as an r-uniform hypergraph on `0..n`.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.n, self.r, self.edges.clone()).expect("packing edges are distinct r-sets")
    }

    /// True if every pair of edges shares fewer than t vertices.
    pub fn is_valid(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, e)| {
            self.edges[i + 1..]
                .iter()
                .all(|f| e.iter().filter(|v| f.contains(v)).count() < self.t)
        })
    }
}

fn check(n: usize, r: usize, t: usize) -> Result<()> {
    if !(n >= r && r >= t && t >= 1) {
        return param(format!("packing parameters need n >= r >= t >= 1, got ({n}, {r}, {t})"));
    }
    Ok(())
}

/// Colex ranks of the t-subsets of r-sets, via precomputed position tuples.
struct TRanks {
    positions: Vec<Vec<usize>>,
    binom: Vec<Vec<usize>>,
}

impl TRanks {
    fn new(n: usize, r: usize, t: usize) -> Self {
        let positions = Combinations::new(r, t)
            .map(|c| c.into_iter().map(|i| i as usize).collect())
            .collect();
        let binom = (0..=n)
            .map(|v| (0..=t).map(|i| binomial(v as u64, i as u64) as usize).collect())
            .collect();
        TRanks { positions, binom }
    }

    fn ranks<'a>(&'a self, e: &'a [u32]) -> impl Iterator<Item = usize> + 'a {
        self.positions.iter().map(move |pos| {
            pos.iter()
                .enumerate()
                .map(|(i, &p)| self.binom[e[p] as usize][i + 1])
                .sum()
        })
    }
}

/// Lexicographic greedy packing. The result is maximal, so it has at least
/// C(n,t)/C(r,t)² edges.
pub fn greedy_packing(n: usize, r: usize, t: usize) -> Result<Packing> {
    check(n, r, t)?;
    let ranks = TRanks::new(n, r, t);
    let mut covered = vec![false; binomial(n as u64, t as u64) as usize];
    let mut edges = Vec::new();
    for e in Combinations::new(n, r) {
        if ranks.ranks(&e).all(|x| !covered[x]) {
            for x in ranks.ranks(&e) {
                covered[x] = true;
            }
            edges.push(e);
        }
    }
    let floor = binomial(n as u64, t as u64).div_ceil(binomial(r as u64, t as u64).pow(2));
    assert!(edges.len() as u128 >= floor, "maximal packing below the counting floor");
    Ok(Packing { n, r, t, edges })
}

struct PackSearch {
    cands: Vec<Vec<u32>>,
    cand_ranks: Vec<Vec<usize>>,
    per_edge: usize,
    ceiling: usize,
    counter: NodeCounter,
    best: Vec<usize>,
}

impl PackSearch {
    fn dfs(&mut self, chosen: &mut Vec<usize>, covered: &mut [bool], uncovered: usize, start: usize) -> Result<()> {
        self.counter.tick()?;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        for idx in start..self.cands.len() {
            if self.best.len() == self.ceiling
                || chosen.len() + (uncovered / self.per_edge).min(self.cands.len() - idx) <= self.best.len()
            {
                return Ok(());
            }
            if self.cand_ranks[idx].iter().any(|&x| covered[x]) {
                continue;
            }
            for &x in &self.cand_ranks[idx] {
                covered[x] = true;
            }
            chosen.push(idx);
            let res = self.dfs(chosen, covered, uncovered - self.per_edge, idx + 1);
            chosen.pop();
            for &x in &self.cand_ranks[idx] {
                covered[x] = false;
            }
            res?;
        }
        Ok(())
    }
}

/// A maximum packing; its size is P(n,r,t). Returns the lexicographically
/// least optimum, which always starts with {0..r−1}.
pub fn exact_max_packing(n: usize, r: usize, t: usize, budget: Budget) -> Result<Packing> {
    check(n, r, t)?;
    let ranks = TRanks::new(n, r, t);
    let cands: Vec<Vec<u32>> = Combinations::new(n, r).collect();
    let cand_ranks: Vec<Vec<usize>> = cands.iter().map(|e| ranks.ranks(e).collect()).collect();
    let total = binomial(n as u64, t as u64) as usize;
    let per_edge = binomial(r as u64, t as u64) as usize;
    let mut search = PackSearch {
        cands,
        cand_ranks,
        per_edge,
        ceiling: total / per_edge,
        counter: NodeCounter::new(budget),
        best: Vec::new(),
    };
    let mut covered = vec![false; total];
    for &x in &search.cand_ranks[0] {
        covered[x] = true;
    }
    search.dfs(&mut vec![0], &mut covered, total - per_edge, 1)?;
    let edges = search.best.iter().map(|&i| search.cands[i].clone()).collect();
    Ok(Packing { n, r, t, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_one_packs_consecutive_blocks() {
        for (n, r) in [(7, 3), (10, 2), (12, 4), (5, 5)] {
            let p = greedy_packing(n, r, 1).unwrap();
            assert_eq!(p.len(), n / r);
            assert_eq!(p.edges[0], (0..r as u32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn greedy_is_maximal() {
        for (n, r, t) in [(7, 3, 2), (9, 4, 2), (10, 4, 3), (8, 3, 1)] {
            let p = greedy_packing(n, r, t).unwrap();
            assert!(p.is_valid());
            for e in Combinations::new(n, r) {
                if p.edges.contains(&e) {
                    continue;
                }
                let blocked = p.edges.iter().any(|f| e.iter().filter(|v| f.contains(v)).count() >= t);
                assert!(blocked, "{e:?} could still be added");
            }
        }
    }

    #[test]
    fn exact_values() {
        let b = Budget::default();
        assert_eq!(exact_max_packing(6, 3, 2, b).unwrap().len(), 4);
        assert_eq!(exact_max_packing(7, 3, 2, b).unwrap().len(), 7);
        assert_eq!(exact_max_packing(6, 3, 3, b).unwrap().len(), 20);
        assert!(exact_max_packing(7, 3, 2, b).unwrap().is_valid());
    }

    #[test]
    fn parameter_order() {
        assert!(greedy_packing(3, 4, 2).is_err());
        assert!(greedy_packing(6, 3, 4).is_err());
        assert!(exact_max_packing(6, 3, 0, Budget::default()).is_err());
    }
}
