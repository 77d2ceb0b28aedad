//! k-uniform hypergraphs: representation, shadows, links, transversal
//! partitions and the text/JSON file formats.

mod bitset;
pub mod io;
mod partition;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde_json::Value;

use crate::comb::subsets_of;
use crate::error::{param, Error, Result};

pub use bitset::Bitset;
pub use partition::{kpartite_reduce, transversal_floor, Partition};

/// Construction provenance carried alongside a hypergraph (JSON `meta` block).
pub type Meta = BTreeMap<String, Value>;

/// A k-uniform hypergraph on the vertex set `0..n`.
///
/// Edges are kept in lexicographic order, each as a strictly increasing
/// vertex list with a bitset mirror for constant-time intersection sizes.
/// Equality compares `n`, `k` and the edge set; metadata is ignored.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Box<[u32]>>,
    bits: Vec<Bitset>,
    meta: Meta,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Vec::<Vec<u32>>::new())
    }

    /// Builds a hypergraph, rejecting malformed or duplicate edges.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<u32>>,
    {
        Self::build(n, k, edges, false)
    }

    /// Like [`Hypergraph::new`] but silently merges duplicate edges.
    pub fn from_edges_dedup<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<u32>>,
    {
        Self::build(n, k, edges, true)
    }

    fn build<I, E>(n: usize, k: usize, edges: I, dedup: bool) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<u32>>,
    {
        if k == 0 {
            return param("uniformity k must be positive");
        }
        let mut list: Vec<Box<[u32]>> = Vec::new();
        for e in edges {
            let mut e: Vec<u32> = e.into();
            e.sort_unstable();
            check_edge(n, k, &e).map_err(Error::Param)?;
            list.push(e.into_boxed_slice());
        }
        list.par_sort_unstable();
        if dedup {
            list.dedup();
        } else if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("duplicate edge {:?}", w[0]));
        }
        Ok(Self::from_canonical(n, k, list))
    }

    /// `edges` must already be valid, sorted and distinct.
    pub(crate) fn from_canonical(n: usize, k: usize, edges: Vec<Box<[u32]>>) -> Self {
        let bits = edges.iter().map(|e| Bitset::from_vertices(n, e)).collect();
        Hypergraph {
            n,
            k,
            edges,
            bits,
            meta: Meta::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, id: usize) -> &[u32] {
        &self.edges[id]
    }

    pub fn edge_bits(&self, id: usize) -> &Bitset {
        &self.bits[id]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.edges.iter().map(|e| &e[..])
    }

    pub fn all_bits(&self) -> &[Bitset] {
        &self.bits
    }

    /// Index of `edge` (sorted) in the canonical order, if present.
    pub fn find_edge(&self, edge: &[u32]) -> Option<usize> {
        self.edges.binary_search_by(|e| e[..].cmp(edge)).ok()
    }

    #[inline]
    pub fn intersection_len(&self, a: usize, b: usize) -> usize {
        self.bits[a].intersection_len(&self.bits[b])
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut Meta {
        &mut self.meta
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    /// Vertices lying in at least one edge.
    pub fn covered_vertices(&self) -> Vec<u32> {
        let mut all = Bitset::with_capacity(self.n);
        for b in &self.bits {
            all.union_with(b);
        }
        all.to_vec()
    }

    /// The s-shadow: every s-subset of an edge, deduplicated.
    pub fn shadow(&self, s: usize) -> Result<Hypergraph> {
        if s == 0 || s > self.k {
            return param(format!("shadow size {s} outside 1..={}", self.k));
        }
        if s == self.k {
            let mut h = self.clone();
            h.meta.clear();
            return Ok(h);
        }
        let mut sets: Vec<Box<[u32]>> = self
            .edges
            .par_iter()
            .flat_map_iter(|e| subsets_of(e, s).map(Vec::into_boxed_slice))
            .collect();
        sets.par_sort_unstable();
        sets.dedup();
        Ok(Hypergraph::from_canonical(self.n, s, sets))
    }

    /// The link of `t`: `{ e \ t : t ⊆ e }`, an (k − |t|)-uniform hypergraph.
    pub fn link(&self, t: &VertexSet) -> Result<Hypergraph> {
        if t.len() >= self.k {
            return param(format!("|T| = {} must be below k = {}", t.len(), self.k));
        }
        if let Some(&v) = t.as_slice().last() {
            if v as usize >= self.n {
                return param(format!("vertex {v} outside host of {} vertices", self.n));
            }
        }
        let tb = Bitset::from_vertices(self.n, t.as_slice());
        let edges = self
            .edges
            .iter()
            .zip(&self.bits)
            .filter(|(_, b)| tb.is_subset(b))
            .map(|(e, _)| {
                e.iter()
                    .copied()
                    .filter(|v| !tb.contains(*v))
                    .collect::<Vec<_>>()
                    .into_boxed_slice()
            })
            .collect::<Vec<_>>();
        // removing a common subset keeps edges distinct
        let mut edges = edges;
        edges.sort_unstable();
        Ok(Hypergraph::from_canonical(self.n, self.k - t.len(), edges))
    }

    /// Sub-hypergraph keeping the edges whose ids satisfy `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &[u32]) -> bool) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(_, e)| e.clone())
            .collect();
        Hypergraph::from_canonical(self.n, self.k, edges)
    }

    pub fn edge_set(&self) -> HashSet<&[u32]> {
        self.edges().collect()
    }
}

fn check_edge(n: usize, k: usize, e: &[u32]) -> std::result::Result<(), String> {
    if e.len() != k {
        return Err(format!("edge {e:?} has {} vertices, expected {k}", e.len()));
    }
    if e.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("edge {e:?} has repeated vertices"));
    }
    if let Some(&v) = e.last() {
        if v as usize >= n {
            return Err(format!("vertex {v} out of range 0..{n}"));
        }
    }
    Ok(())
}

/// A strictly increasing set of vertex indices (shadow elements, link centers).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return param(format!("vertex set {vertices:?} has repeated vertices"));
        }
        Ok(VertexSet(vertices))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<u32>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        VertexSet::new(v)
    }
}
