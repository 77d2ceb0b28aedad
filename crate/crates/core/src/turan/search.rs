use serde::Serialize;
use serde_json::{json, Value};

use super::ForbiddenFamily;
use crate::budget::{Budget, NodeCounter};
use crate::comb::{binomial, Combinations};
use crate::error::{param, Error, Result};
use crate::hypercore::{Bitset, Hypergraph};

/// Default cap on the number of candidate edges C(n, k).
pub const DEFAULT_MAX_CANDIDATES: u128 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub family: String,
    /// ex(n, F) when `budget_hit` is false, otherwise a lower bound.
    pub max_edges: usize,
    #[serde(serialize_with = "witness_edges")]
    pub witness: Hypergraph,
    pub nodes: u64,
    pub budget_hit: bool,
}

fn witness_edges<S: serde::Serializer>(h: &Hypergraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.edges())
}

impl SearchResult {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

struct TuranSearch<'a> {
    fam: &'a ForbiddenFamily,
    n: usize,
    bits: Vec<Bitset>,
    counter: NodeCounter,
    best: Vec<usize>,
}

impl TuranSearch<'_> {
    fn addable(&self, chosen: &[Bitset], cand: usize) -> bool {
        !self.fam.copy_through(chosen, &self.bits[cand], self.n)
    }

    fn dfs(&mut self, ids: &mut Vec<usize>, chosen: &mut Vec<Bitset>, cands: &[usize]) -> Result<()> {
        self.counter.tick()?;
        if ids.len() > self.best.len() {
            self.best = ids.clone();
        }
        for (idx, &x) in cands.iter().enumerate() {
            // candidates blocked now stay blocked deeper in the tree
            if ids.len() + cands.len() - idx <= self.best.len() {
                return Ok(());
            }
            ids.push(x);
            chosen.push(self.bits[x].clone());
            let rest: Vec<usize> = cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&y| self.addable(chosen, y))
                .collect();
            let res = self.dfs(ids, chosen, &rest);
            ids.pop();
            chosen.pop();
            res?;
        }
        Ok(())
    }
}

/// ex(n, F) with the lexicographically least extremal witness, using the
/// default candidate cap.
pub fn ex_exact(n: usize, k: usize, fam: &ForbiddenFamily, budget: Budget) -> Result<SearchResult> {
    ex_exact_capped(n, k, fam, budget, DEFAULT_MAX_CANDIDATES)
}

/// Branch and bound over lexicographic edge inclusion. The first edge is
/// fixed to {0..k−1} (any nonempty F-free graph can be relabeled to contain
/// it), a lexicographic greedy run seeds the lower bound, and each new edge is
/// checked only for copies that use it. When the node budget runs out the
/// best graph found so far is returned with `budget_hit` set.
pub fn ex_exact_capped(
    n: usize,
    k: usize,
    fam: &ForbiddenFamily,
    budget: Budget,
    max_candidates: u128,
) -> Result<SearchResult> {
    if fam.k() != k {
        return param(format!("family is {}-uniform, search is {k}-uniform", fam.k()));
    }
    if k == 0 || n < k {
        return param(format!("need n >= k >= 1, got n = {n}, k = {k}"));
    }
    let total = binomial(n as u64, k as u64);
    if total > max_candidates {
        return param(format!("C({n},{k}) = {total} candidate edges exceeds the cap {max_candidates}"));
    }
    let cands: Vec<Vec<u32>> = Combinations::new(n, k).collect();
    let bits: Vec<Bitset> = cands.iter().map(|e| Bitset::from_vertices(n, e)).collect();
    let mut search = TuranSearch {
        fam,
        n,
        bits,
        counter: NodeCounter::new(budget),
        best: Vec::new(),
    };

    let mut budget_hit = false;
    if search.addable(&[], 0) {
        // greedy seed: the first leaf of the include-first search
        let mut greedy = vec![0usize];
        let mut chosen = vec![search.bits[0].clone()];
        for y in 1..cands.len() {
            if search.addable(&chosen, y) {
                greedy.push(y);
                chosen.push(search.bits[y].clone());
            }
        }
        search.best = greedy;

        let mut chosen = vec![search.bits[0].clone()];
        let rest: Vec<usize> = (1..cands.len()).filter(|&y| search.addable(&chosen, y)).collect();
        match search.dfs(&mut vec![0], &mut chosen, &rest) {
            Ok(()) => {}
            Err(Error::Budget { .. }) => budget_hit = true,
            Err(e) => return Err(e),
        }
    }

    let witness = Hypergraph::new(n, k, search.best.iter().map(|&i| cands[i].clone()))?
        .with_meta("construction", "turan-witness")
        .with_meta("family", fam.id());
    // re-certify with the full detectors, independently of the incremental checks
    if let Some(c) = fam.find_copy(&witness)? {
        return Err(Error::Structure(format!("search produced a witness containing {}", c.to_json())));
    }
    Ok(SearchResult {
        n,
        k,
        family: fam.id().to_string(),
        max_edges: witness.m(),
        witness,
        nodes: search.counter.used,
        budget_hit,
    })
}

/// ex(n, Q_k(r)) for r = 3..=k.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub k: usize,
    /// (r, value, budget_hit)
    pub values: Vec<(usize, usize, bool)>,
    /// Some value is only a lower bound, so the chain cannot be confirmed.
    pub lower_bound_only: bool,
    /// The values are nondecreasing in r. With `lower_bound_only` a failure
    /// here is inconclusive rather than a contradiction.
    pub holds: bool,
}

impl ChainReport {
    pub fn to_json(&self) -> Value {
        json!(self)
    }
}

/// Checks ex(n, Q_k(3)) ≤ ex(n, Q_k(4)) ≤ … ≤ ex(n, Q_k(k)).
pub fn monotone_chain_check(n: usize, k: usize, budget: Budget) -> Result<ChainReport> {
    if k < 3 {
        return param("the Q_k(r) chain needs k >= 3");
    }
    let mut values = Vec::new();
    for r in 3..=k {
        let fam = ForbiddenFamily::single(super::Member::Q(crate::patterns::QPattern::new(k, r)?))?;
        let res = ex_exact(n, k, &fam, budget)?;
        values.push((r, res.max_edges, res.budget_hit));
    }
    let lower_bound_only = values.iter().any(|v| v.2);
    let nondecreasing = values.windows(2).all(|w| w[0].1 <= w[1].1);
    Ok(ChainReport {
        n,
        k,
        lower_bound_only,
        holds: nondecreasing,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{IPattern, QPattern};
    use crate::turan::Member;

    fn q(k: usize, r: usize) -> ForbiddenFamily {
        ForbiddenFamily::single(Member::Q(QPattern::new(k, r).unwrap())).unwrap()
    }

    fn i(k: usize, i: usize) -> ForbiddenFamily {
        ForbiddenFamily::single(Member::I(IPattern::new(k, i).unwrap())).unwrap()
    }

    #[test]
    fn fano_value() {
        let res = ex_exact(7, 3, &i(3, 2), Budget::default()).unwrap();
        assert_eq!(res.max_edges, 7);
        assert!(!res.budget_hit);
    }

    #[test]
    fn single_edge_family_gives_zero() {
        let edge = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let fam = ForbiddenFamily::single(Member::Graph(edge)).unwrap();
        for n in 3..7 {
            assert_eq!(ex_exact(n, 3, &fam, Budget::default()).unwrap().max_edges, 0);
        }
    }

    #[test]
    fn centered_lower_bound() {
        let res = ex_exact(6, 3, &q(3, 3), Budget::default()).unwrap();
        assert!(res.max_edges >= 10);
        assert_eq!(res.witness.edge(0), &[0, 1, 2]);
    }

    #[test]
    fn budget_is_flagged() {
        let res = ex_exact(7, 3, &i(3, 1), Budget::nodes(2)).unwrap();
        assert!(res.budget_hit);
        assert!(res.max_edges >= 1);
    }

    #[test]
    fn candidate_cap() {
        assert!(ex_exact(9, 4, &q(4, 3), Budget::default()).is_err());
    }

    #[test]
    fn chain_at_k3() {
        let rep = monotone_chain_check(6, 3, Budget::default()).unwrap();
        assert_eq!(rep.values.len(), 1);
        assert!(rep.holds && !rep.lower_bound_only);
    }
}
