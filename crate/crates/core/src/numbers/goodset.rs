use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::primes::{inv_mod, is_prime, modp};
use crate::budget::{Budget, NodeCounter};
use crate::error::{param, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Behrend,
    User,
}

/// Parameters of a digit-sphere set: integers `Σ x_j·base^j` with
/// `x ∈ {0..digits−1}^dim` and `Σ x_j² = radius`, reduced mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehrendParams {
    pub base: u64,
    pub digits: u64,
    pub dim: u32,
    pub radius: u64,
    /// No carry (`base > 2k(digits−1)`) and no wrap (`2k·max < p`), so the set
    /// is k-good by the sphere argument alone.
    pub guaranteed: bool,
}

/// A k-good subset of Z_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodSet {
    pub p: u64,
    pub k: u64,
    #[serde(rename = "S")]
    pub s: Vec<u64>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BehrendParams>,
    /// Set when the construction degenerated and `{0}` was returned instead.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub warning: bool,
}

impl GoodSet {
    /// Wraps a user-supplied set after checking it.
    pub fn user(p: u64, k: u64, mut s: Vec<u64>) -> Result<Self> {
        s.sort_unstable();
        s.dedup();
        if let Some(v) = is_k_good(&s, p, k)? {
            return Err(Error::Violation(Box::new(crate::patterns::Certificate::GoodSet(v))));
        }
        Ok(GoodSet {
            p,
            k,
            s,
            provenance: Provenance::User,
            params: None,
            warning: false,
        })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

/// Coefficients `m_1, m_2, m_3 ∈ ±{1..k}` and elements of S, not all equal,
/// with `Σ m_i ≡ 0` and `Σ m_i s_i ≡ 0 (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodSetViolation {
    pub p: u64,
    pub k: u64,
    pub m: [i64; 3],
    pub s: [u64; 3],
}

impl GoodSetViolation {
    /// Arithmetic re-check; `set` (if given) must contain all three elements.
    pub fn validate(&self, set: Option<&[u64]>) -> Result<()> {
        let fail = |msg: &str| Err(Error::Structure(format!("invalid good-set violation: {msg}")));
        let (p, k) = (self.p, self.k as i64);
        if self.m.iter().any(|&m| m == 0 || m.abs() > k) {
            return fail("coefficient outside ±{1..k}");
        }
        if self.s.iter().any(|&s| s >= p) {
            return fail("element outside 0..p");
        }
        if self.s[0] == self.s[1] && self.s[1] == self.s[2] {
            return fail("elements are all equal");
        }
        if let Some(set) = set {
            if !self.s.iter().all(|s| set.contains(s)) {
                return fail("element not in the set");
            }
        }
        let sum_m: i128 = self.m.iter().map(|&m| m as i128).sum();
        let sum_ms: i128 = self.m.iter().zip(&self.s).map(|(&m, &s)| m as i128 * s as i128).sum();
        if modp(sum_m, p) != 0 || modp(sum_ms, p) != 0 {
            return fail("congruences do not hold");
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "pattern": format!("goodset:{}:{}", self.p, self.k), "m": self.m, "s": self.s })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            pattern: String,
            m: [i64; 3],
            s: [u64; 3],
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let bad = || Error::Param(format!("bad pattern tag {:?}", raw.pattern));
        let (p, k) = raw
            .pattern
            .strip_prefix("goodset:")
            .and_then(|r| r.split_once(':'))
            .ok_or_else(bad)?;
        Ok(GoodSetViolation {
            p: p.parse().map_err(|_| bad())?,
            k: k.parse().map_err(|_| bad())?,
            m: raw.m,
            s: raw.s,
        })
    }
}

fn check_params(p: u64, k: u64) -> Result<()> {
    if k < 2 {
        return param(format!("k = {k} must be at least 2"));
    }
    if !is_prime(p) {
        return param(format!("p = {p} is not prime"));
    }
    if p <= k {
        return param(format!("p = {p} must exceed k = {k}"));
    }
    Ok(())
}

/// Coefficient triples: every `(m_1, m_2)` with the first `m_3 ∈ ±{1..k}`
/// matching `−m_1 − m_2` as a residue.
fn coefficient_triples(p: u64, k: u64) -> Vec<[i64; 3]> {
    let k = k as i64;
    let coeffs: Vec<i64> = (1..=k).flat_map(|m| [m, -m]).collect();
    let mut out = Vec::new();
    for &m1 in &coeffs {
        for &m2 in &coeffs {
            let target = modp(-(m1 as i128) - m2 as i128, p);
            if let Some(&m3) = coeffs.iter().find(|&&m| modp(m as i128, p) == target) {
                out.push([m1, m2, m3]);
            }
        }
    }
    out
}

struct Checker {
    p: u64,
    k: u64,
    /// (m1, m2, m3, −1/m3 mod p)
    triples: Vec<([i64; 3], u64)>,
}

impl Checker {
    fn new(p: u64, k: u64) -> Self {
        let triples = coefficient_triples(p, k)
            .into_iter()
            .map(|m| (m, modp(-(inv_mod(modp(m[2] as i128, p), p) as i128), p)))
            .collect();
        Checker { p, k, triples }
    }

    #[inline]
    fn solve(&self, m: [i64; 3], neg_inv: u64, s1: u64, s2: u64) -> u64 {
        let p = self.p as i128;
        let lin = (m[0] as i128 * s1 as i128 + m[1] as i128 * s2 as i128).rem_euclid(p);
        (lin * neg_inv as i128 % p) as u64
    }

    /// First violation with `s_1 = x` drawn from `s ∪ {x}`. Because every
    /// ordering of each coefficient triple is enumerated, this covers every
    /// violation that uses `x` in any position.
    fn through(&self, member: &[bool], s: &[u64], x: u64) -> Option<GoodSetViolation> {
        let in_set = |v: u64| v == x || member[v as usize];
        for &(m, neg_inv) in &self.triples {
            for &s2 in s.iter().chain(std::iter::once(&x)) {
                let s3 = self.solve(m, neg_inv, x, s2);
                if in_set(s3) && !(s2 == x && s3 == x) {
                    return Some(GoodSetViolation {
                        p: self.p,
                        k: self.k,
                        m,
                        s: [x, s2, s3],
                    });
                }
            }
        }
        None
    }
}

/// `None` if `s` is k-good in Z_p, otherwise a violation.
pub fn is_k_good(s: &[u64], p: u64, k: u64) -> Result<Option<GoodSetViolation>> {
    check_params(p, k)?;
    if let Some(&bad) = s.iter().find(|&&x| x >= p) {
        return param(format!("element {bad} is outside 0..{p}"));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut member = vec![false; p as usize];
    for &x in &sorted {
        member[x as usize] = true;
    }
    let checker = Checker::new(p, k);
    for &(m, neg_inv) in &checker.triples {
        for &s1 in &sorted {
            for &s2 in &sorted {
                let s3 = checker.solve(m, neg_inv, s1, s2);
                if member[s3 as usize] && !(s1 == s2 && s2 == s3) {
                    return Ok(Some(GoodSetViolation { p, k, m, s: [s1, s2, s3] }));
                }
            }
        }
    }
    Ok(None)
}

struct GoodSearch {
    checker: Checker,
    counter: NodeCounter,
    best: Vec<u64>,
}

impl GoodSearch {
    fn dfs(&mut self, set: &mut Vec<u64>, member: &mut [bool], cands: &[u64]) -> Result<()> {
        self.counter.tick()?;
        if set.len() > self.best.len() {
            self.best = set.clone();
        }
        for (idx, &x) in cands.iter().enumerate() {
            if set.len() + cands.len() - idx <= self.best.len() {
                return Ok(());
            }
            set.push(x);
            member[x as usize] = true;
            let rest: Vec<u64> = cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&y| self.checker.through(member, set, y).is_none())
                .collect();
            let res = self.dfs(set, member, &rest);
            set.pop();
            member[x as usize] = false;
            res?;
        }
        Ok(())
    }
}

/// A maximum k-good set; its size is s_k(p). Returns the lexicographically
/// least optimum, which contains {0, 1} because affine maps of Z_p preserve
/// k-goodness and any two residues form a k-good set.
pub fn max_good_set(p: u64, k: u64, budget: Budget) -> Result<GoodSet> {
    check_params(p, k)?;
    let checker = Checker::new(p, k);
    let mut member = vec![false; p as usize];
    let mut set = vec![0u64, 1];
    member[0] = true;
    member[1] = true;
    let cands: Vec<u64> = (2..p).filter(|&y| checker.through(&member, &set, y).is_none()).collect();
    let mut search = GoodSearch {
        checker,
        counter: NodeCounter::new(budget),
        best: Vec::new(),
    };
    search.dfs(&mut set, &mut member, &cands)?;
    Ok(GoodSet {
        p,
        k,
        s: search.best,
        provenance: Provenance::Exact,
        params: None,
        warning: false,
    })
}

/// Digit bound policy for [`behrend_good_set_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigitPolicy {
    /// Only parameters with no carry and no wrap; the output is k-good by
    /// construction and its size is nondecreasing in p.
    Strict,
    /// Strict candidates plus wider bases, dimensions and radii whose sets are
    /// reduced mod p and kept only if they verify as k-good.
    Tuned,
}

fn sphere_sets(base: u64, digits: u64, dim: u32) -> Vec<(u64, Vec<u64>)> {
    // radius → elements
    let mut by_radius: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    let total = digits.pow(dim);
    for code in 0..total {
        let (mut c, mut value, mut radius, mut scale) = (code, 0u64, 0u64, 1u64);
        for _ in 0..dim {
            let x = c % digits;
            c /= digits;
            value += x * scale;
            radius += x * x;
            scale *= base;
        }
        by_radius.entry(radius).or_default().push(value);
    }
    by_radius.into_iter().collect()
}

fn box_max(base: u64, digits: u64, dim: u32) -> Option<u64> {
    let mut total = 0u64;
    let mut scale = 1u64;
    for _ in 0..dim {
        total = total.checked_add((digits - 1).checked_mul(scale)?)?;
        scale = scale.checked_mul(base)?;
    }
    Some(total)
}

/// Digit-sphere construction with the [`DigitPolicy::Tuned`] policy.
pub fn behrend_good_set(p: u64, k: u64) -> Result<GoodSet> {
    behrend_good_set_with(p, k, DigitPolicy::Tuned)
}

/// Digit-sphere construction. The largest candidate set is returned (ties
/// go to guaranteed parameters, then to the first found), after re-checking it
/// with [`is_k_good`].
pub fn behrend_good_set_with(p: u64, k: u64, policy: DigitPolicy) -> Result<GoodSet> {
    check_params(p, k)?;
    let mut best: Option<(Vec<u64>, BehrendParams)> = None;
    let mut consider = |set: Vec<u64>, params: BehrendParams| -> Result<()> {
        let better = match &best {
            None => true,
            Some((b, bp)) => set.len() > b.len() || (set.len() == b.len() && params.guaranteed && !bp.guaranteed),
        };
        if better && (params.guaranteed || is_k_good(&set, p, k)?.is_none()) {
            best = Some((set, params));
        }
        Ok(())
    };

    // guaranteed parameters: the smallest no-carry base is optimal for each digit bound
    let mut digits = 2u64;
    while 2 * k * (digits - 1) < p {
        let base = 2 * k * (digits - 1) + 1;
        let mut dim = 1u32;
        while box_max(base, digits, dim).is_some_and(|mx| 2 * k * mx < p) {
            for (radius, set) in sphere_sets(base, digits, dim) {
                consider(set, BehrendParams { base, digits, dim, radius, guaranteed: true })?;
            }
            dim += 1;
        }
        digits += 1;
    }

    if policy == DigitPolicy::Tuned {
        for digits in 2..=4u64 {
            for base in digits..=p.min(digits + 4 * k * digits) {
                let mut dim = 1u32;
                // keep boxes small and the top digit below p
                while digits.pow(dim) <= 4096 && base.checked_pow(dim - 1).is_some_and(|s| s < p) {
                    for (radius, raw) in sphere_sets(base, digits, dim) {
                        let mut set: Vec<u64> = raw.iter().map(|&v| v % p).collect();
                        set.sort_unstable();
                        set.dedup();
                        if set.len() != raw.len() {
                            continue;
                        }
                        consider(set, BehrendParams { base, digits, dim, radius, guaranteed: false })?;
                    }
                    dim += 1;
                }
            }
        }
    }

    let out = match best {
        Some((mut s, params)) if !s.is_empty() => {
            s.sort_unstable();
            assert!(is_k_good(&s, p, k)?.is_none(), "digit-sphere output failed verification");
            GoodSet { p, k, s, provenance: Provenance::Behrend, params: Some(params), warning: false }
        }
        _ => GoodSet { p, k, s: vec![0], provenance: Provenance::Behrend, params: None, warning: true },
    };
    Ok(out)
}
