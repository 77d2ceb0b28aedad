use std::fmt;

use crate::error::{param, Result};
use crate::hypercore::{Bitset, Hypergraph};
use crate::patterns::{
    find_i_copy, find_q_copy, generate_i, generate_q, q_copy_through, Certificate, IPattern, QPattern,
};

/// One forbidden k-graph. Q and I members use the dedicated detectors;
/// anything else goes through the generic embedding search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Q(QPattern),
    I(IPattern),
    Graph(Hypergraph),
}

impl Member {
    pub fn k(&self) -> usize {
        match self {
            Member::Q(q) => q.k,
            Member::I(i) => i.k,
            Member::Graph(g) => g.k(),
        }
    }

    /// The member as an explicit hypergraph on its covered vertices.
    pub fn hypergraph(&self) -> Hypergraph {
        match self {
            Member::Q(q) => generate_q(q.k, q.r).expect("valid pattern"),
            Member::I(i) => generate_i(i.k, i.i).expect("valid pattern"),
            Member::Graph(g) => g.clone(),
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Q(q) => write!(f, "{q}"),
            Member::I(i) => write!(f, "{i}"),
            Member::Graph(g) => write!(f, "G{:?}", g.edges().collect::<Vec<_>>()),
        }
    }
}

/// Relabels the covered vertices of `g` as `0..v` in increasing order.
fn compress(g: &Hypergraph) -> Hypergraph {
    let covered = g.covered_vertices();
    let index = |v: u32| covered.binary_search(&v).expect("covered") as u32;
    let edges = g.edges().map(|e| e.iter().map(|&v| index(v)).collect::<Vec<u32>>());
    Hypergraph::new(covered.len(), g.k(), edges).expect("relabeling keeps edges distinct")
}

/// A finite list of forbidden k-graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    k: usize,
    members: Vec<Member>,
    id: String,
}

impl ForbiddenFamily {
    /// Builds a family; members must share the uniformity k. Graph members are
    /// relabeled onto their covered vertices and exact repeats are dropped.
    pub fn new(k: usize, members: Vec<Member>) -> Result<Self> {
        let mut out: Vec<Member> = Vec::new();
        for m in members {
            if m.k() != k {
                return param(format!("member {m} is {}-uniform, family is {k}-uniform", m.k()));
            }
            let m = match m {
                Member::Graph(g) if g.is_empty() => return param("forbidden graphs need at least one edge"),
                Member::Graph(g) => Member::Graph(compress(&g)),
                other => other,
            };
            if !out.contains(&m) {
                out.push(m);
            }
        }
        if out.is_empty() {
            return param("forbidden family is empty");
        }
        let id = out.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("+");
        Ok(ForbiddenFamily { k, members: out, id })
    }

    pub fn single(m: Member) -> Result<Self> {
        Self::new(m.k(), vec![m])
    }

    /// Replaces the generated id, e.g. with the spec string the family came from.
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// A copy of some member in `h`, if any.
    pub fn find_copy(&self, h: &Hypergraph) -> Result<Option<Certificate>> {
        for (idx, m) in self.members.iter().enumerate() {
            let found = match m {
                Member::Q(q) => find_q_copy(h, *q)?.map(Certificate::Q),
                Member::I(i) => find_i_copy(h, *i)?.map(Certificate::I),
                Member::Graph(g) => {
                    embed(g, h.all_bits(), h.n(), None).map(|edges| Certificate::Member { member: idx, edges })
                }
            };
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// True when `existing ∪ {new}` contains a member copy that uses `new`.
    pub(crate) fn copy_through(&self, existing: &[Bitset], new: &Bitset, n: usize) -> bool {
        self.members.iter().any(|m| match m {
            Member::Q(q) => q_copy_through(existing, new, q.k, q.r),
            Member::I(i) => existing.iter().any(|b| b.intersection_len(new) == i.i),
            Member::Graph(g) => {
                let mut all = existing.to_vec();
                all.push(new.clone());
                embed(g, &all, n, Some(all.len() - 1)).is_some()
            }
        })
    }
}

struct Embedder<'a> {
    pattern: Vec<Vec<u32>>,
    host: &'a [Bitset],
    map: Vec<Option<u32>>,
    used_vertex: Vec<bool>,
    used_edge: Vec<bool>,
    image: Vec<usize>,
}

impl Embedder<'_> {
    fn place(&mut self, j: usize, forced: Option<usize>) -> bool {
        if j == self.pattern.len() {
            return true;
        }
        let g = self.pattern[j].clone();
        let hosts: Vec<usize> = match forced {
            Some(f) => vec![f],
            None => (0..self.host.len()).filter(|&h| !self.used_edge[h]).collect(),
        };
        for h in hosts {
            let hb = &self.host[h];
            if !g.iter().all(|&u| self.map[u as usize].is_none_or(|x| hb.contains(x))) {
                continue;
            }
            let unmapped: Vec<u32> = g.iter().copied().filter(|&u| self.map[u as usize].is_none()).collect();
            let free: Vec<u32> = hb.iter().filter(|&x| !self.used_vertex[x as usize]).collect();
            if free.len() != unmapped.len() {
                continue;
            }
            self.used_edge[h] = true;
            self.image.push(h);
            if self.assign(j, &unmapped, &free, 0) {
                return true;
            }
            self.image.pop();
            self.used_edge[h] = false;
        }
        false
    }

    /// Tries every bijection from `unmapped[i..]` onto the remaining `free` vertices.
    fn assign(&mut self, j: usize, unmapped: &[u32], free: &[u32], i: usize) -> bool {
        if i == unmapped.len() {
            return self.place(j + 1, None);
        }
        for &x in free {
            if self.used_vertex[x as usize] {
                continue;
            }
            self.used_vertex[x as usize] = true;
            self.map[unmapped[i] as usize] = Some(x);
            if self.assign(j, unmapped, free, i + 1) {
                return true;
            }
            self.map[unmapped[i] as usize] = None;
            self.used_vertex[x as usize] = false;
        }
        false
    }
}

/// Orders pattern edges so each one overlaps the earlier ones as much as
/// possible, which keeps the partial vertex map constraining.
fn connected_order(g: &Hypergraph) -> Vec<Vec<u32>> {
    let mut left: Vec<Vec<u32>> = g.edges().map(<[u32]>::to_vec).collect();
    let mut out = vec![left.remove(0)];
    while !left.is_empty() {
        let seen: Vec<u32> = out.iter().flatten().copied().collect();
        let (best, _) = left
            .iter()
            .enumerate()
            .max_by_key(|(i, e)| (e.iter().filter(|v| seen.contains(v)).count(), std::cmp::Reverse(*i)))
            .expect("nonempty");
        out.push(left.remove(best));
    }
    out
}

/// Host edge ids (one per pattern edge, in pattern edge order) of an
/// embedding of `g`; with `forced`, some pattern edge must land on that host edge.
pub(crate) fn embed(g: &Hypergraph, host: &[Bitset], n: usize, forced: Option<usize>) -> Option<Vec<usize>> {
    let order = connected_order(g);
    let starts: Vec<usize> = match forced {
        Some(_) => (0..order.len()).collect(),
        None => vec![0],
    };
    for s in starts {
        let mut pattern = order.clone();
        pattern.swap(0, s);
        let mut emb = Embedder {
            pattern,
            host,
            map: vec![None; g.n()],
            used_vertex: vec![false; n],
            used_edge: vec![false; host.len()],
            image: Vec::new(),
        };
        if emb.place(0, forced) {
            // report host ids in the pattern's own edge order
            let mut ids = vec![0usize; g.m()];
            for (pe, &h) in emb.pattern.iter().zip(&emb.image) {
                let idx = g.find_edge(pe).expect("pattern edge");
                ids[idx] = h;
            }
            return Some(ids);
        }
    }
    None
}
