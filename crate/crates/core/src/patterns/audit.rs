use serde::Serialize;

use crate::comb::subsets_of;
use crate::error::{param, Error, Result};
use crate::hypercore::{Hypergraph, Partition};
use crate::setmap::SetMap;

/// D(e): the parts where `e` can be swapped for another host edge that
/// differs from it only inside that part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSet {
    pub edge_id: usize,
    pub d: Vec<usize>,
}

fn require_transversal(h: &Hypergraph, p: &Partition) -> Result<()> {
    if p.num_parts() != h.k() {
        return Err(Error::Structure(format!(
            "partition has {} parts but the host is {}-uniform",
            p.num_parts(),
            h.k()
        )));
    }
    if let Some((id, e)) = h.edges().enumerate().find(|(_, e)| !p.is_transversal(e)) {
        return Err(Error::Structure(format!("edge {id} {e:?} is not transversal to the partition")));
    }
    Ok(())
}

fn without(e: &[u32], skip: usize) -> Vec<u32> {
    e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
}

/// D(e) for every edge of a k-partite host.
pub fn d_sets(h: &Hypergraph, p: &Partition) -> Result<Vec<DSet>> {
    if p.parts().iter().map(|x| x.len()).sum::<usize>() != h.n() {
        return param("partition does not cover the host's vertex set");
    }
    require_transversal(h, p)?;
    // e \ P_i, tagged with i, counted over all edges
    let mut counts: SetMap<u32> = SetMap::new(h.n() + h.k(), h.k());
    let tagged = |e: &[u32], pos: usize| {
        let part = p.part_of(e[pos]);
        let mut key = without(e, pos);
        key.insert(0, (h.n() + part) as u32);
        key
    };
    for e in h.edges() {
        for pos in 0..e.len() {
            *counts.get_or_default(&tagged(e, pos)) += 1;
        }
    }
    Ok(h.edges()
        .enumerate()
        .map(|(edge_id, e)| {
            let mut d: Vec<usize> = (0..e.len())
                .filter(|&pos| counts.get(&tagged(e, pos)).is_some_and(|&c| c >= 2))
                .map(|pos| p.part_of(e[pos]))
                .collect();
            d.sort_unstable();
            DSet { edge_id, d }
        })
        .collect())
}

/// D(e) for a single edge.
pub fn d_set(h: &Hypergraph, p: &Partition, edge_id: usize) -> Result<DSet> {
    if edge_id >= h.m() {
        return param(format!("edge id {edge_id} out of range"));
    }
    require_transversal(h, p)?;
    let e = h.edge(edge_id);
    let mut d: Vec<usize> = (0..e.len())
        .filter(|&pos| {
            let rest = without(e, pos);
            h.edges()
                .enumerate()
                .any(|(id, f)| id != edge_id && rest.iter().all(|v| f.contains(v)))
        })
        .map(|pos| p.part_of(e[pos]))
        .collect();
    d.sort_unstable();
    Ok(DSet { edge_id, d })
}

/// Result of checking that the (k−1)-shadow decomposes into the edge cliques.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub pass: bool,
    /// Every (k−1)-set of the shadow lies in exactly one edge.
    pub unique_containment: bool,
    /// (k−1)-sets lying in two or more edges.
    pub multiply_covered: Vec<Vec<u32>>,
    /// Number of vertex k-sets spanning a complete K_k^(k−1) in the shadow.
    pub clique_count: usize,
    /// Spanning k-sets that are not edges.
    pub extra_cliques: Vec<Vec<u32>>,
    /// Edges whose vertex set does not span a shadow clique (always empty for valid input).
    pub missing_edges: Vec<Vec<u32>>,
    #[serde(skip)]
    pub cliques: Vec<Vec<u32>>,
}

/// Checks unique containment of shadow sets and that the only k-cliques of
/// the (k−1)-shadow are the edges themselves.
pub fn shadow_clique_audit(h: &Hypergraph) -> Result<AuditReport> {
    let k = h.k();
    if k < 2 {
        return param("shadow clique audit needs k >= 2");
    }
    let mut cover: SetMap<u32> = SetMap::new(h.n(), k - 1);
    for e in h.edges() {
        for f in subsets_of(e, k - 1) {
            *cover.get_or_default(&f) += 1;
        }
    }
    let shadow = h.shadow(k - 1)?;
    let multiply_covered: Vec<Vec<u32>> = shadow
        .edges()
        .filter(|f| cover.get(f).is_some_and(|&c| c > 1))
        .map(<[u32]>::to_vec)
        .collect();

    // every k-clique contains a shadow set f and one more vertex v
    use rayon::prelude::*;
    let mut cliques: Vec<Vec<u32>> = (0..shadow.m())
        .into_par_iter()
        .flat_map_iter(|fid| {
            let f = shadow.edge(fid);
            let cover = &cover;
            // each clique is found once, from its lexicographically first (k−1)-subset
            let start = f.last().map_or(0, |&x| x + 1);
            (start..h.n() as u32).filter_map(move |v| {
                let mut kset = f.to_vec();
                kset.push(v);
                let all = (0..k).all(|skip| cover.contains(&without(&kset, skip)));
                all.then_some(kset)
            })
        })
        .collect();
    cliques.sort_unstable();

    let edge_set = h.edge_set();
    let extra_cliques: Vec<Vec<u32>> = cliques
        .iter()
        .filter(|c| !edge_set.contains(c.as_slice()))
        .cloned()
        .collect();
    let missing_edges: Vec<Vec<u32>> = h
        .edges()
        .filter(|e| cliques.binary_search_by(|c| c.as_slice().cmp(e)).is_err())
        .map(<[u32]>::to_vec)
        .collect();
    let unique_containment = multiply_covered.is_empty();
    Ok(AuditReport {
        pass: unique_containment && extra_cliques.is_empty() && missing_edges.is_empty(),
        unique_containment,
        multiply_covered,
        clique_count: cliques.len(),
        extra_cliques,
        missing_edges,
        cliques,
    })
}
