//! The forbidden configurations Q_k(r) and I_k(i): generators, certificate
//! producing detectors, and the structural audits (D(e) sets, shadow cliques).

mod audit;
mod cert;
mod qcopy;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comb::binomial;
use crate::error::{param, Result};
use crate::hypercore::Hypergraph;
use crate::setmap::SetMap;

pub use audit::{d_set, d_sets, shadow_clique_audit, AuditReport, DSet};
pub use cert::{Certificate, ICopy, QEmbedding};
pub use qcopy::{find_all_q_copies, find_q_copy};
pub(crate) use qcopy::q_copy_through;

/// Q_k(r): r edges `A ∪ (B \ {b_i}) ∪ {c_i}` over disjoint A, B, C with
/// |A| = k − r and |B| = |C| = r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPattern {
    pub k: usize,
    pub r: usize,
}

impl QPattern {
    pub fn new(k: usize, r: usize) -> Result<Self> {
        if r < 2 || r > k {
            return param(format!("Q_k(r) needs 2 <= r <= k, got k = {k}, r = {r}"));
        }
        Ok(QPattern { k, r })
    }
}

impl fmt::Display for QPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q:{}:{}", self.k, self.r)
    }
}

/// I_k(i): two k-edges sharing exactly i vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IPattern {
    pub k: usize,
    pub i: usize,
}

impl IPattern {
    pub fn new(k: usize, i: usize) -> Result<Self> {
        if k == 0 || i >= k {
            return param(format!("I_k(i) needs 0 <= i < k, got k = {k}, i = {i}"));
        }
        Ok(IPattern { k, i })
    }
}

impl fmt::Display for IPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I:{}:{}", self.k, self.i)
    }
}

/// Canonical Q_k(r) on `k + r` vertices: A = 0..k−r, B = k−r..k, C = k..k+r.
pub fn generate_q(k: usize, r: usize) -> Result<Hypergraph> {
    QPattern::new(k, r)?;
    let a: Vec<u32> = (0..(k - r) as u32).collect();
    let b: Vec<u32> = ((k - r) as u32..k as u32).collect();
    let edges = (0..r).map(|i| {
        let mut e = a.clone();
        e.extend(b.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
        e.push((k + i) as u32);
        e
    });
    Ok(Hypergraph::new(k + r, k, edges)?.with_meta("pattern", format!("Q:{k}:{r}")))
}

/// Two edges `0..k` and `0..i ∪ k..2k−i` on 2k − i vertices.
pub fn generate_i(k: usize, i: usize) -> Result<Hypergraph> {
    IPattern::new(k, i)?;
    let first: Vec<u32> = (0..k as u32).collect();
    let second: Vec<u32> = (0..i as u32).chain(k as u32..(2 * k - i) as u32).collect();
    Ok(Hypergraph::new(2 * k - i, k, [first, second])?.with_meta("pattern", format!("I:{k}:{i}")))
}

pub(crate) fn check_uniformity(h: &Hypergraph, k: usize) -> Result<()> {
    if h.k() != k {
        return param(format!("uniformity mismatch: host is {}-uniform, pattern is {k}-uniform", h.k()));
    }
    Ok(())
}

/// Smallest partner `b > a` with |e_a ∩ e_b| = i, via an index of i-subsets.
fn indexed_partners(h: &Hypergraph, i: usize) -> impl Fn(usize) -> Option<usize> + Sync + '_ {
    let mut index: SetMap<Vec<u32>> = SetMap::new(h.n(), i);
    for (id, e) in h.edges().enumerate() {
        for s in crate::comb::subsets_of(e, i) {
            index.get_or_default(&s).push(id as u32);
        }
    }
    move |a| {
        crate::comb::subsets_of(h.edge(a), i)
            .filter_map(|s| {
                index
                    .get(&s)?
                    .iter()
                    .map(|&b| b as usize)
                    .find(|&b| b > a && h.intersection_len(a, b) == i)
            })
            .min()
    }
}

/// Lexicographically first pair of edge ids `(a, b)`, `a < b`, whose edges
/// share exactly `pat.i` vertices.
pub fn find_i_copy(h: &Hypergraph, pat: IPattern) -> Result<Option<ICopy>> {
    check_uniformity(h, pat.k)?;
    let m = h.m();
    let i = pat.i;
    let use_index = m > 2000 && i > 0 && binomial(pat.k as u64, i as u64) <= 256;
    let found = if use_index {
        let partner = indexed_partners(h, i);
        (0..m).into_par_iter().find_map_first(|a| partner(a).map(|b| (a, b)))
    } else {
        (0..m)
            .into_par_iter()
            .find_map_first(|a| (a + 1..m).find(|&b| h.intersection_len(a, b) == i).map(|b| (a, b)))
    };
    Ok(found.map(|(a, b)| ICopy {
        k: pat.k,
        i,
        edges: [a, b],
    }))
}
