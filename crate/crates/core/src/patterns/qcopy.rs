//! Q_k(r) detection.
//!
//! Any two edges of a Q_k(r) copy share exactly k − 2 vertices, so copies are
//! r-cliques in the "tight-pair" graph on edges. Cliques are grown in
//! increasing edge-id order. Any j edges of a copy have common intersection
//! A ∪ (B \ {b_i : i ≤ j}) of size exactly k − j, and for j ≥ 2 their union
//! A ∪ B ∪ {c_i : i ≤ j} has size exactly k + j; both are checked at every
//! depth. A full clique is then decomposed by vertex coverage counts
//! (r → A, r − 1 → B, 1 → C) and the decomposition is validated.

use rayon::prelude::*;

use super::{check_uniformity, find_i_copy, IPattern, QEmbedding, QPattern};
use crate::comb::subsets_of;
use crate::error::Result;
use crate::hypercore::{Bitset, Hypergraph};
use crate::setmap::SetMap;

struct CliqueSearch<'a> {
    bits: &'a [Bitset],
    k: usize,
    r: usize,
}

type Parts = (Vec<u32>, Vec<u32>, Vec<u32>);

impl CliqueSearch<'_> {
    /// Walks cliques extending `chosen`; `visit` returns true to stop.
    fn dfs(
        &self,
        chosen: &mut Vec<usize>,
        common: &Bitset,
        union: &Bitset,
        cands: &[usize],
        visit: &mut dyn FnMut(&[usize], Parts) -> bool,
    ) -> bool {
        let depth = chosen.len() + 1;
        for (idx, &e) in cands.iter().enumerate() {
            if chosen.len() + 1 + (cands.len() - idx - 1) < self.r {
                break;
            }
            let mut next_common = common.clone();
            next_common.intersect_with(&self.bits[e]);
            if next_common.len() != self.k - depth {
                continue;
            }
            let mut next_union = union.clone();
            next_union.union_with(&self.bits[e]);
            if next_union.len() != self.k + depth {
                continue;
            }
            chosen.push(e);
            let stop = if depth == self.r {
                match decompose(self.bits, chosen, self.k, self.r) {
                    Some(parts) => visit(chosen, parts),
                    None => false,
                }
            } else {
                let rest: Vec<usize> = cands[idx + 1..]
                    .iter()
                    .copied()
                    .filter(|&f| self.bits[e].intersection_len(&self.bits[f]) == self.k - 2)
                    .collect();
                self.dfs(chosen, &next_common, &next_union, &rest, visit)
            };
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn starting_at(&self, first: usize, cands: &[usize], visit: &mut dyn FnMut(&[usize], Parts) -> bool) -> bool {
        let mut chosen = vec![first];
        self.dfs(&mut chosen, &self.bits[first], &self.bits[first], cands, visit)
    }
}

/// Splits r edges into A, B, C by coverage count; `None` if they are not a Q_k(r).
fn decompose(bits: &[Bitset], ids: &[usize], k: usize, r: usize) -> Option<Parts> {
    debug_assert!(r >= 3);
    let mut union = bits[ids[0]].clone();
    let mut common = bits[ids[0]].clone();
    for &id in &ids[1..] {
        union.union_with(&bits[id]);
        common.intersect_with(&bits[id]);
    }
    if common.len() != k - r || union.len() != k + r {
        return None;
    }
    let mut b_set = Vec::new();
    let mut c_set = Vec::new();
    for v in union.iter().filter(|&v| !common.contains(v)) {
        match ids.iter().filter(|&&id| bits[id].contains(v)).count() {
            c if c == r - 1 => b_set.push(v),
            1 => c_set.push(v),
            _ => return None,
        }
    }
    if b_set.len() != r || c_set.len() != r {
        return None;
    }
    let mut b = Vec::with_capacity(r);
    let mut c = Vec::with_capacity(r);
    for &id in ids {
        let missing: Vec<u32> = b_set.iter().copied().filter(|&v| !bits[id].contains(v)).collect();
        let present: Vec<u32> = c_set.iter().copied().filter(|&v| bits[id].contains(v)).collect();
        if missing.len() != 1 || present.len() != 1 {
            return None;
        }
        b.push(missing[0]);
        c.push(present[0]);
    }
    Some((common.to_vec(), b, c))
}

/// Edge ids `b > a` with |e_a ∩ e_b| = k − 2, ascending.
fn forward_tight_lists(h: &Hypergraph) -> Vec<Vec<usize>> {
    let (k, m) = (h.k(), h.m());
    let target = k - 2;
    if m <= 2000 || target == 0 {
        return (0..m)
            .into_par_iter()
            .map(|a| (a + 1..m).filter(|&b| h.intersection_len(a, b) == target).collect())
            .collect();
    }
    let mut index: SetMap<Vec<u32>> = SetMap::new(h.n(), target);
    for (id, e) in h.edges().enumerate() {
        for s in subsets_of(e, target) {
            index.get_or_default(&s).push(id as u32);
        }
    }
    (0..m)
        .into_par_iter()
        .map(|a| {
            let mut out: Vec<usize> = subsets_of(h.edge(a), target)
                .flat_map(|s| index.get(&s).into_iter().flatten().map(|&b| b as usize))
                .filter(|&b| b > a && h.intersection_len(a, b) == target)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

fn embedding(k: usize, r: usize, ids: &[usize], (a, b, c): Parts) -> QEmbedding {
    QEmbedding {
        k,
        r,
        edge_ids: ids.to_vec(),
        a,
        b,
        c,
    }
}

/// Q_k(2) from a pair sharing k − 2 vertices: b_2 = min(e_1 \ e_2), b_1 = min(e_2 \ e_1).
fn pair_embedding(h: &Hypergraph, x: usize, y: usize) -> QEmbedding {
    let (ex, ey) = (h.edge_bits(x), h.edge_bits(y));
    let mut common = ex.clone();
    common.intersect_with(ey);
    let only_x: Vec<u32> = h.edge(x).iter().copied().filter(|&v| !ey.contains(v)).collect();
    let only_y: Vec<u32> = h.edge(y).iter().copied().filter(|&v| !ex.contains(v)).collect();
    QEmbedding {
        k: h.k(),
        r: 2,
        edge_ids: vec![x, y],
        a: common.to_vec(),
        b: vec![only_y[0], only_x[0]],
        c: vec![only_x[1], only_y[1]],
    }
}

/// Returns a copy of Q_k(r) in `h` if one exists, else `None`.
///
/// The certificate is the lexicographically first by sorted edge-id tuple.
pub fn find_q_copy(h: &Hypergraph, pat: QPattern) -> Result<Option<QEmbedding>> {
    check_uniformity(h, pat.k)?;
    let QPattern { k, r } = pat;
    if r == 2 {
        let pair = find_i_copy(h, IPattern::new(k, k - 2)?)?;
        return Ok(pair.map(|c| pair_embedding(h, c.edges[0], c.edges[1])));
    }
    let forward = forward_tight_lists(h);
    let search = CliqueSearch { bits: h.all_bits(), k, r };
    let found = (0..h.m()).into_par_iter().find_map_first(|first| {
        let mut hit = None;
        search.starting_at(first, &forward[first], &mut |ids, parts| {
            hit = Some(embedding(k, r, ids, parts));
            true
        });
        hit
    });
    Ok(found)
}

/// Every copy of Q_k(r) as an edge set (sorted ids). Exhaustive; meant for small hosts.
pub fn find_all_q_copies(h: &Hypergraph, pat: QPattern) -> Result<Vec<QEmbedding>> {
    check_uniformity(h, pat.k)?;
    let QPattern { k, r } = pat;
    let forward = forward_tight_lists(h);
    if r == 2 {
        return Ok((0..h.m())
            .flat_map(|a| forward[a].iter().map(move |&b| (a, b)))
            .map(|(a, b)| pair_embedding(h, a, b))
            .collect());
    }
    let search = CliqueSearch { bits: h.all_bits(), k, r };
    let mut all = Vec::new();
    for (first, cands) in forward.iter().enumerate() {
        search.starting_at(first, cands, &mut |ids, parts| {
            all.push(embedding(k, r, ids, parts));
            false
        });
    }
    Ok(all)
}

/// True when `existing ∪ {new}` has a Q_k(r) copy using `new`.
pub(crate) fn q_copy_through(existing: &[Bitset], new: &Bitset, k: usize, r: usize) -> bool {
    let mut local: Vec<Bitset> = existing
        .iter()
        .filter(|b| b.intersection_len(new) == k - 2)
        .cloned()
        .collect();
    if r == 2 || local.len() + 1 < r {
        return r == 2 && !local.is_empty();
    }
    let cands: Vec<usize> = (0..local.len()).collect();
    local.push(new.clone());
    let search = CliqueSearch { bits: &local, k, r };
    search.starting_at(local.len() - 1, &cands, &mut |_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::generate_q;

    #[test]
    fn pattern_contains_itself_with_canonical_parts() {
        for k in 2..7 {
            for r in 2..=k {
                let q = generate_q(k, r).unwrap();
                let emb = find_q_copy(&q, QPattern::new(k, r).unwrap()).unwrap().unwrap();
                emb.validate(&q).unwrap();
                let mut a = emb.a.clone();
                a.sort_unstable();
                assert_eq!(a, (0..(k - r) as u32).collect::<Vec<_>>());
                let mut b = emb.b.clone();
                b.sort_unstable();
                let mut c = emb.c.clone();
                c.sort_unstable();
                if r > 2 {
                    assert_eq!(b, ((k - r) as u32..k as u32).collect::<Vec<_>>());
                    assert_eq!(c, (k as u32..(k + r) as u32).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn linear_triangle_is_q33_but_star_is_not() {
        let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5]]).unwrap();
        let emb = find_q_copy(&h, QPattern::new(3, 3).unwrap()).unwrap().unwrap();
        emb.validate(&h).unwrap();
        // pairwise intersections are 1 here too, but the common core is {0}
        let star = Hypergraph::new(7, 3, vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]]).unwrap();
        assert!(find_q_copy(&star, QPattern::new(3, 3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn mismatched_uniformity_is_an_error() {
        let q = generate_q(4, 3).unwrap();
        assert!(find_q_copy(&q, QPattern::new(5, 3).unwrap()).is_err());
    }

    #[test]
    fn through_new_edge_matches_full_search() {
        let q = generate_q(5, 4).unwrap();
        let bits = q.all_bits();
        assert!(q_copy_through(&bits[..3], &bits[3], 5, 4));
        assert!(!q_copy_through(&bits[..2], &bits[3], 5, 4));
        assert!(q_copy_through(&bits[..1], &bits[3], 5, 2));
    }

    #[test]
    fn indexed_tight_lists_agree_with_scan() {
        let h = crate::constructions::centered_family(12, 4).unwrap();
        let scan: Vec<Vec<usize>> = (0..h.m())
            .map(|a| (a + 1..h.m()).filter(|&b| h.intersection_len(a, b) == 2).collect())
            .collect();
        let big = crate::constructions::centered_family(25, 4).unwrap();
        assert!(big.m() > 2000);
        let lists = forward_tight_lists(&big);
        for a in (0..big.m()).step_by(37) {
            let expect: Vec<usize> = (a + 1..big.m()).filter(|&b| big.intersection_len(a, b) == 2).collect();
            assert_eq!(lists[a], expect);
        }
        assert_eq!(forward_tight_lists(&h), scan);
    }
}
