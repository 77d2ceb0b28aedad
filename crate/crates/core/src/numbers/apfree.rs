use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::{Budget, NodeCounter};
use crate::error::{param, Result};

/// k distinct terms in arithmetic progression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub k: usize,
    pub terms: Vec<u64>,
}

impl Progression {
    pub fn is_valid(&self) -> bool {
        self.terms.len() == self.k
            && self.k >= 2
            && self.terms[1] > self.terms[0]
            && self.terms.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] == self.terms[1] - self.terms[0])
    }

    pub fn to_json(&self) -> Value {
        json!({ "pattern": format!("ap:{}", self.k), "terms": self.terms })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APFreeSet {
    pub n: u64,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
}

/// `None` if `a` has no k-term progression, otherwise the first one found.
pub fn is_ap_free(a: &[u64], n: u64, k: usize) -> Result<Option<Progression>> {
    if k < 3 {
        return param(format!("progression length {k} must be at least 3"));
    }
    if let Some(&bad) = a.iter().find(|&&x| x < 1 || x > n) {
        return param(format!("element {bad} is outside 1..={n}"));
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let member = |x: u64| sorted.binary_search(&x).is_ok();
    for (i, &start) in sorted.iter().enumerate() {
        for &second in &sorted[i + 1..] {
            let d = second - start;
            if (2..k as u64).all(|j| member(start + j * d)) {
                let terms = (0..k as u64).map(|j| start + j * d).collect();
                return Ok(Some(Progression { k, terms }));
            }
        }
    }
    Ok(None)
}

/// True if adding `x` (larger than every member) closes a k-term progression.
fn closes_progression(member: &[bool], set: &[u64], x: u64, k: usize) -> bool {
    set.iter().any(|&s| {
        let d = x - s;
        (2..k as u64).all(|j| j * d <= x && x - j * d >= 1 && member[(x - j * d) as usize])
    })
}

struct ApSearch<'a> {
    n: u64,
    k: usize,
    /// r_k(len) for len < n
    known: &'a [usize],
    counter: NodeCounter,
    best: Vec<u64>,
}

impl ApSearch<'_> {
    fn suffix_bound(&self, len: u64) -> usize {
        if len < self.n {
            self.known[len as usize]
        } else {
            self.known[len as usize - 1] + 1
        }
    }

    fn dfs(&mut self, set: &mut Vec<u64>, member: &mut [bool], next: u64) -> Result<()> {
        self.counter.tick()?;
        if set.len() > self.best.len() {
            self.best = set.clone();
        }
        for x in next..=self.n {
            // any subset of x..=n translates into 1..=n−x+1
            if set.len() + self.suffix_bound(self.n - x + 1) <= self.best.len() {
                return Ok(());
            }
            if closes_progression(member, set, x, self.k) {
                continue;
            }
            set.push(x);
            member[x as usize] = true;
            let res = self.dfs(set, member, x + 1);
            set.pop();
            member[x as usize] = false;
            res?;
        }
        Ok(())
    }
}

/// A maximum AP_k-free subset of {1..n}; its size is r_k(n). Returns the
/// lexicographically least optimum.
pub fn max_ap_free(n: u64, k: usize, budget: Budget) -> Result<APFreeSet> {
    let table = ap_free_table(n, k, budget)?;
    Ok(table.into_iter().last().unwrap_or(APFreeSet { n: 0, k, a: Vec::new() }))
}

/// Optimal sets for every ground set {1..m}, m = 1..=n. The node budget is
/// shared by all levels.
pub fn ap_free_table(n: u64, k: usize, budget: Budget) -> Result<Vec<APFreeSet>> {
    if k < 3 {
        return param(format!("progression length {k} must be at least 3"));
    }
    let mut counter = NodeCounter::new(budget);
    let mut known = vec![0usize];
    let mut out = Vec::new();
    for m in 1..=n {
        let mut search = ApSearch {
            n: m,
            k,
            known: &known,
            counter,
            best: Vec::new(),
        };
        let mut member = vec![false; m as usize + 1];
        search.dfs(&mut Vec::new(), &mut member, 1)?;
        let ApSearch { counter: used, best, .. } = search;
        counter = used;
        known.push(best.len());
        out.push(APFreeSet { n: m, k, a: best });
    }
    Ok(out)
}
