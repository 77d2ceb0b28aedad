use std::collections::BTreeSet;

use super::{ForbiddenFamily, Member};
use crate::error::{param, Result};
use crate::hypercore::Hypergraph;

/// Every vertex of an e-edge graph has a type: the nonempty set of edges
/// containing it. Up to isomorphism (ignoring isolated vertices) the graph
/// is its vector of type counts, and relabeling edges permutes the types.
fn permute_type(t: usize, perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| t >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

fn permutations(e: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..e).collect();
    heap_permute(e, &mut perm, &mut out);
    out
}

fn heap_permute(len: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if len <= 1 {
        out.push(perm.clone());
        return;
    }
    heap_permute(len - 1, perm, out);
    for i in 0..len - 1 {
        let j = if len.is_multiple_of(2) { i } else { 0 };
        perm.swap(j, len - 1);
        heap_permute(len - 1, perm, out);
    }
}

fn canonical(counts: &[u8], perms: &[Vec<usize>]) -> Vec<u8> {
    perms
        .iter()
        .map(|perm| {
            let mut c = vec![0u8; counts.len()];
            for (t, &x) in counts.iter().enumerate().skip(1) {
                c[permute_type(t, perm)] = x;
            }
            c
        })
        .min()
        .expect("at least one permutation")
}

struct Enumerate {
    k: usize,
    v: usize,
    e: usize,
    counts: Vec<u8>,
    degree: Vec<usize>,
    found: Vec<Vec<u8>>,
}

impl Enumerate {
    fn run(&mut self, t: usize, used: usize) {
        if t == self.counts.len() {
            if self.degree.iter().all(|&d| d == self.k) && self.edges_distinct() {
                self.found.push(self.counts.clone());
            }
            return;
        }
        let room = (0..self.e)
            .filter(|&i| t >> i & 1 == 1)
            .map(|i| self.k - self.degree[i])
            .min()
            .unwrap_or(0)
            .min(self.v - used);
        for x in 0..=room {
            self.counts[t] = x as u8;
            for i in (0..self.e).filter(|&i| t >> i & 1 == 1) {
                self.degree[i] += x;
            }
            self.run(t + 1, used + x);
            for i in (0..self.e).filter(|&i| t >> i & 1 == 1) {
                self.degree[i] -= x;
            }
        }
        self.counts[t] = 0;
    }

    fn edges_distinct(&self) -> bool {
        (0..self.e).all(|i| {
            (i + 1..self.e).all(|j| {
                (1..self.counts.len()).any(|t| self.counts[t] > 0 && ((t >> i) ^ (t >> j)) & 1 == 1)
            })
        })
    }
}

fn realize(k: usize, e: usize, counts: &[u8]) -> Hypergraph {
    let mut edges: Vec<Vec<u32>> = vec![Vec::new(); e];
    let mut next = 0u32;
    for (t, &c) in counts.iter().enumerate().skip(1) {
        for _ in 0..c {
            for (i, edge) in edges.iter_mut().enumerate() {
                if t >> i & 1 == 1 {
                    edge.push(next);
                }
            }
            next += 1;
        }
    }
    Hypergraph::new(next as usize, k, edges).expect("type vectors give distinct k-sets")
}

/// All k-graphs with exactly e edges on at most v vertices, up to
/// isomorphism. Forbidding the family gives ex(n, F) = f_k(n, v, e).
pub fn bes_family(k: usize, v: usize, e: usize) -> Result<ForbiddenFamily> {
    if k == 0 || !(2..=4).contains(&e) || v < k || v > 3 * k {
        return param(format!(
            "family parameters need k >= 1, 2 <= e <= 4 and k <= v <= 3k, got k = {k}, v = {v}, e = {e}"
        ));
    }
    if k > 255 {
        return param("k too large");
    }
    let mut search = Enumerate {
        k,
        v,
        e,
        counts: vec![0; 1 << e],
        degree: vec![0; e],
        found: Vec::new(),
    };
    search.run(1, 0);
    let perms = permutations(e);
    let classes: BTreeSet<Vec<u8>> = search.found.iter().map(|c| canonical(c, &perms)).collect();
    if classes.is_empty() {
        return param(format!("no {k}-graph has {e} edges on at most {v} vertices"));
    }
    let members = classes.iter().map(|c| Member::Graph(realize(k, e, c))).collect();
    Ok(ForbiddenFamily::new(k, members)?.with_id(format!("bes:{k}:{v}:{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intersection_sizes(fam: &ForbiddenFamily) -> Vec<usize> {
        let mut out: Vec<usize> = fam
            .members()
            .iter()
            .map(|m| {
                let g = m.hypergraph();
                g.intersection_len(0, 1)
            })
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn two_edges_are_classified_by_intersection() {
        for k in 2..6 {
            let fam = bes_family(k, 2 * k, 2).unwrap();
            assert_eq!(intersection_sizes(&fam), (0..k).collect::<Vec<_>>());
        }
        assert_eq!(bes_family(3, 6, 2).unwrap().members().len(), 3);
        assert_eq!(intersection_sizes(&bes_family(3, 5, 2).unwrap()), vec![1, 2]);
    }

    #[test]
    fn three_edges_on_six_vertices() {
        let fam = bes_family(3, 6, 3).unwrap();
        let graphs: Vec<Hypergraph> = fam.members().iter().map(Member::hypergraph).collect();
        let linear_triangle = graphs.iter().any(|g| {
            g.n() == 6 && (0..3).all(|a| (a + 1..3).all(|b| g.intersection_len(a, b) == 1)) && {
                let mut common = g.edge_bits(0).clone();
                common.intersect_with(g.edge_bits(1));
                common.intersect_with(g.edge_bits(2));
                common.is_empty()
            }
        });
        let pair_covered_twice = graphs.iter().any(|g| {
            (0..3).any(|a| (a + 1..3).any(|b| g.intersection_len(a, b) == 2))
        });
        assert!(linear_triangle && pair_covered_twice);
    }

    #[test]
    fn members_are_pairwise_non_isomorphic() {
        // brute-force relabeling check on a small instance
        let fam = bes_family(2, 4, 3).unwrap();
        let graphs: Vec<Hypergraph> = fam.members().iter().map(Member::hypergraph).collect();
        let relabels = |g: &Hypergraph, h: &Hypergraph| {
            if g.n() != h.n() {
                return false;
            }
            permutations(g.n()).iter().any(|perm| {
                let edges = g.edges().map(|e| e.iter().map(|&v| perm[v as usize] as u32).collect::<Vec<u32>>());
                Hypergraph::new(g.n(), g.k(), edges).unwrap() == *h
            })
        };
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i + 1..] {
                assert!(!relabels(g, h));
            }
        }
        // triangle, path and star; every other 3-edge graph needs five or more vertices
        assert_eq!(graphs.len(), 3);
    }

    #[test]
    fn guards() {
        assert!(bes_family(3, 6, 5).is_err());
        assert!(bes_family(3, 10, 2).is_err());
        assert!(bes_family(3, 2, 2).is_err());
    }
}
