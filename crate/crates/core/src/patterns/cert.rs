use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::numbers::{GoodSetViolation, Progression};

/// A re-checkable copy of Q_k(r): `edges[i] = A ∪ (B \ {b_i}) ∪ {c_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEmbedding {
    pub k: usize,
    pub r: usize,
    pub edge_ids: Vec<usize>,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct QJson {
    pattern: String,
    edges: Vec<usize>,
    #[serde(rename = "A")]
    a: Vec<u32>,
    #[serde(rename = "B")]
    b: Vec<u32>,
    #[serde(rename = "C")]
    c: Vec<u32>,
}

fn parse_tag(tag: &str, prefix: &str) -> Result<(usize, usize)> {
    let bad = || Error::Param(format!("bad pattern tag {tag:?}"));
    let rest = tag.strip_prefix(prefix).ok_or_else(bad)?;
    let (x, y) = rest.split_once(':').ok_or_else(bad)?;
    Ok((x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?))
}

impl QEmbedding {
    /// The edge `A ∪ (B \ {b_i}) ∪ {c_i}` implied by the decomposition.
    pub fn implied_edge(&self, i: usize) -> Vec<u32> {
        let mut e: Vec<u32> = self.a.clone();
        e.extend(self.b.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
        e.push(self.c[i]);
        e.sort_unstable();
        e
    }

    /// Re-validates every invariant against the host, independently of the search.
    pub fn validate(&self, host: &Hypergraph) -> Result<()> {
        let fail = |msg: String| Err(Error::Structure(format!("invalid Q embedding: {msg}")));
        let (k, r) = (self.k, self.r);
        if host.k() != k {
            return fail(format!("host is {}-uniform, certificate claims {k}", host.k()));
        }
        if r < 2 || r > k {
            return fail(format!("r = {r} outside 2..={k}"));
        }
        if self.a.len() != k - r || self.b.len() != r || self.c.len() != r || self.edge_ids.len() != r {
            return fail("part sizes do not match |A| = k - r, |B| = |C| = r".into());
        }
        let mut all: Vec<u32> = self.a.iter().chain(&self.b).chain(&self.c).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return fail("A, B, C are not pairwise disjoint".into());
        }
        let mut ids = self.edge_ids.clone();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return fail("edge ids repeat".into());
        }
        for (i, &id) in self.edge_ids.iter().enumerate() {
            if id >= host.m() {
                return fail(format!("edge id {id} out of range"));
            }
            if host.edge(id) != self.implied_edge(i).as_slice() {
                return fail(format!("edge {id} is not A ∪ (B \\ b_{i}) ∪ c_{i}"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(QJson {
            pattern: format!("Q:{}:{}", self.k, self.r),
            edges: self.edge_ids.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: QJson = serde_json::from_value(v.clone())?;
        let (k, r) = parse_tag(&raw.pattern, "Q:")?;
        Ok(QEmbedding {
            k,
            r,
            edge_ids: raw.edges,
            a: raw.a,
            b: raw.b,
            c: raw.c,
        })
    }
}

/// Two edges sharing exactly `i` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ICopy {
    pub k: usize,
    pub i: usize,
    pub edges: [usize; 2],
}

impl ICopy {
    pub fn validate(&self, host: &Hypergraph) -> Result<()> {
        let [a, b] = self.edges;
        if host.k() != self.k || a == b || a >= host.m() || b >= host.m() || host.intersection_len(a, b) != self.i {
            return Err(Error::Structure(format!(
                "edges {a}, {b} do not form a copy of I_{}({})",
                self.k, self.i
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "pattern": format!("I:{}:{}", self.k, self.i), "edges": self.edges })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            pattern: String,
            edges: [usize; 2],
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let (k, i) = parse_tag(&raw.pattern, "I:")?;
        Ok(ICopy { k, i, edges: raw.edges })
    }
}

/// Any witness that a checked property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Q(QEmbedding),
    I(ICopy),
    /// Copy of an arbitrary family member: host edge ids, one per member edge.
    Member { member: usize, edges: Vec<usize> },
    GoodSet(GoodSetViolation),
    Progression(Progression),
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Q(q) => q.to_json(),
            Certificate::I(i) => i.to_json(),
            Certificate::Member { member, edges } => json!({ "pattern": "member", "member": member, "edges": edges }),
            Certificate::GoodSet(v) => v.to_json(),
            Certificate::Progression(p) => p.to_json(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{find_q_copy, generate_q, QPattern};

    #[test]
    fn json_round_trip_and_revalidation() {
        let q = generate_q(6, 4).unwrap();
        let emb = find_q_copy(&q, QPattern::new(6, 4).unwrap()).unwrap().unwrap();
        let v = emb.to_json();
        assert_eq!(v["pattern"], "Q:6:4");
        let back = QEmbedding::from_json(&v).unwrap();
        assert_eq!(back, emb);
        back.validate(&q).unwrap();
    }

    #[test]
    fn tampered_embeddings_are_rejected() {
        let q = generate_q(5, 3).unwrap();
        let emb = find_q_copy(&q, QPattern::new(5, 3).unwrap()).unwrap().unwrap();
        let mut bad = emb.clone();
        bad.b.swap(0, 1);
        assert!(bad.validate(&q).is_err());
        let mut bad = emb.clone();
        bad.edge_ids[1] = bad.edge_ids[0];
        assert!(bad.validate(&q).is_err());
        let mut bad = emb;
        bad.c[0] = bad.a[0];
        assert!(bad.validate(&q).is_err());
    }

    #[test]
    fn icopy_json() {
        let c = ICopy { k: 3, i: 2, edges: [0, 1] };
        assert_eq!(c.to_json().to_string(), r#"{"edges":[0,1],"pattern":"I:3:2"}"#);
        assert_eq!(ICopy::from_json(&c.to_json()).unwrap(), c);
    }
}
