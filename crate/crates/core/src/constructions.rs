//! Lower-bound constructions: the modular family F(S, α, β), the
//! packing-split family, the lift for k = 2r − 1 and the centered family.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::comb::{binomial, subsets_of, Combinations};
use crate::error::{param, Error, Result};
use crate::hypercore::{Hypergraph, Partition};
use crate::numbers::{greedy_packing, inv_mod, is_k_good, is_prime, modp, GoodSet};
use crate::patterns::{find_i_copy, find_q_copy, Certificate, IPattern, QPattern};

#[derive(Clone, Debug, Serialize)]
pub struct ModularConfig {
    pub k: usize,
    pub p: u64,
    pub s: GoodSet,
    pub alpha: u64,
    pub beta: u64,
    /// Distinct weights m_1..m_k, a permutation of 1..=k.
    pub m: Vec<u64>,
}

impl ModularConfig {
    /// Identity weights and α = β = 0.
    pub fn new(k: usize, s: GoodSet) -> Self {
        ModularConfig {
            k,
            p: s.p,
            s,
            alpha: 0,
            beta: 0,
            m: (1..=k as u64).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (k, p) = (self.k, self.p);
        if k < 2 {
            return param("modular construction needs k >= 2");
        }
        if !is_prime(p) || p <= k as u64 {
            return param(format!("p = {p} must be a prime larger than k = {k}"));
        }
        let mut sorted = self.m.clone();
        sorted.sort_unstable();
        if sorted != (1..=k as u64).collect::<Vec<_>>() {
            return param(format!("weights {:?} are not a permutation of 1..={k}", self.m));
        }
        if self.alpha >= p || self.beta >= p {
            return param("alpha and beta must be residues mod p");
        }
        if self.s.p != p || self.s.k != k as u64 {
            return param("good set was built for different (p, k)");
        }
        if self.s.s.is_empty() {
            return param("good set is empty");
        }
        if let Some(v) = is_k_good(&self.s.s, p, k as u64)? {
            return Err(Error::Param(format!("S is not {k}-good: {}", v.to_json())));
        }
        Ok(())
    }

    /// Whether the tuple `x` (one residue per part) is an edge of F.
    pub fn is_edge(&self, x: &[u64]) -> bool {
        let p = self.p;
        let sum: u64 = x.iter().map(|&v| v % p).sum::<u64>() % p;
        let weighted = x.iter().zip(&self.m).map(|(&v, &m)| v * m % p).sum::<u64>() % p;
        sum == self.alpha && self.s.s.contains(&modp(weighted as i128 - self.beta as i128, p))
    }
}

/// Vertex of part `i` (0-based) with residue `j`.
#[inline]
fn vertex(p: u64, i: usize, j: u64) -> u32 {
    (i as u64 * p + j) as u32
}

/// F(S, α, β): the k-partite k-graph on kp vertices whose edges satisfy
/// Σx_i ≡ α and Σm_i x_i ∈ S + β (mod p). Has exactly p^(k−2)·|S| edges.
pub fn construct_modular(cfg: &ModularConfig) -> Result<Hypergraph> {
    cfg.validate()?;
    let (k, p) = (cfg.k, cfg.p);
    let n = k * p as usize;
    if n > u32::MAX as usize {
        return param("vertex count overflows");
    }
    let tail = p.checked_pow(k as u32 - 2).ok_or_else(|| Error::Param("p^(k-2) overflows".into()))?;
    let expected = tail as u128 * cfg.s.len() as u128;
    if expected > 200_000_000 {
        return param(format!("{expected} edges is too many to materialize"));
    }
    let m = &cfg.m;
    let inv = inv_mod(modp(m[0] as i128 - m[1] as i128, p), p) as i128;
    let pi = p as i128;
    let edges: Vec<Box<[u32]>> = cfg
        .s
        .s
        .par_iter()
        .flat_map_iter(|&s| {
            (0..tail).map(move |code| {
                let mut e = vec![0u32; k];
                let (mut c, mut sum, mut weighted) = (code, 0i128, 0i128);
                // x_3..x_k lexicographically, x_k varying fastest
                for i in (2..k).rev() {
                    let x = c % p;
                    c /= p;
                    sum += x as i128;
                    weighted += m[i] as i128 * x as i128;
                    e[i] = vertex(p, i, x);
                }
                // x_1 + x_2 = a, m_1 x_1 + m_2 x_2 = b
                let a = (cfg.alpha as i128 - sum).rem_euclid(pi);
                let b = (s as i128 + cfg.beta as i128 - weighted).rem_euclid(pi);
                let x1 = ((b - m[1] as i128 * a).rem_euclid(pi) * inv).rem_euclid(pi);
                let x2 = (a - x1).rem_euclid(pi);
                e[0] = vertex(p, 0, x1 as u64);
                e[1] = vertex(p, 1, x2 as u64);
                e.into_boxed_slice()
            })
        })
        .collect();
    let count = edges.len();
    let h = Hypergraph::new(n, k, edges.into_iter().map(Vec::from))?;
    assert_eq!(h.m() as u128, expected, "edge count differs from p^(k-2)|S|");
    assert_eq!(count, h.m());
    Ok(h.with_meta("construction", "modular")
        .with_meta("config", serde_json::to_value(cfg)?)
        .with_meta("index_map", "vertex (i, j) with part i in 1..=k, j in 0..p is (i-1)*p + j")
        .with_meta("partition", json!(Partition::blocks(k, p as usize).parts())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitConfig {
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl SplitConfig {
    pub fn validate(&self) -> Result<()> {
        let SplitConfig { n, k, r } = *self;
        if !(3 <= r && r <= k && k <= 2 * r - 2) {
            return param(format!("split construction needs 3 <= r <= k <= 2r - 2, got r = {r}, k = {k}"));
        }
        if n < 2 * k {
            return param(format!("split construction needs n >= 2k, got n = {n}, k = {k}"));
        }
        Ok(())
    }
}

/// Unions of an edge of a greedy (|X|, r−1, r−2)-packing on X and a
/// (k−r+1)-subset of Y, where X is the first ⌊n/2⌋ vertices.
pub fn construct_split(cfg: &SplitConfig) -> Result<Hypergraph> {
    cfg.validate()?;
    let SplitConfig { n, k, r } = *cfg;
    let x_size = n / 2;
    let y: Vec<u32> = (x_size as u32..n as u32).collect();
    let packing = greedy_packing(x_size, r - 1, r - 2)?;
    let upper: Vec<Vec<u32>> = subsets_of(&y, k - r + 1).collect();
    let edges = packing.edges.iter().flat_map(|lower| {
        upper.iter().map(move |up| {
            let mut e = lower.clone();
            e.extend_from_slice(up);
            e
        })
    });
    let h = Hypergraph::new(n, k, edges)?;
    debug_assert_eq!(h.m(), packing.len() * upper.len());
    Ok(h.with_meta("construction", "split")
        .with_meta("config", serde_json::to_value(cfg)?)
        .with_meta("packing_edges", packing.len())
        .with_meta("upper_edges", upper.len()))
}

#[derive(Clone, Debug)]
pub struct LiftConfig {
    pub r: usize,
    /// r-uniform base on V₁ = 0..base.n().
    pub base: Hypergraph,
    /// |V₂|; V₂ follows V₁.
    pub n2: usize,
}

/// All (2r−1)-sets made of a base edge and r − 1 vertices of V₂. The base
/// must be Q_r(r)-free and I_r(r−1)-free; otherwise the offending copy is
/// returned as [`Error::Violation`].
pub fn construct_lift(cfg: &LiftConfig) -> Result<Hypergraph> {
    let r = cfg.r;
    if r < 2 {
        return param("lift needs r >= 2");
    }
    if cfg.base.k() != r {
        return param(format!("base is {}-uniform, expected {r}", cfg.base.k()));
    }
    if let Some(q) = find_q_copy(&cfg.base, QPattern::new(r, r)?)? {
        return Err(Error::Violation(Box::new(Certificate::Q(q))));
    }
    if let Some(i) = find_i_copy(&cfg.base, IPattern::new(r, r - 1)?)? {
        return Err(Error::Violation(Box::new(Certificate::I(i))));
    }
    let n1 = cfg.base.n();
    let v2: Vec<u32> = (n1 as u32..(n1 + cfg.n2) as u32).collect();
    let tails: Vec<Vec<u32>> = subsets_of(&v2, r - 1).collect();
    let edges = cfg.base.edges().flat_map(|e| {
        tails.iter().map(move |t| {
            let mut full = e.to_vec();
            full.extend_from_slice(t);
            full
        })
    });
    let h = Hypergraph::new(n1 + cfg.n2, 2 * r - 1, edges)?;
    debug_assert_eq!(h.m() as u128, cfg.base.m() as u128 * binomial(cfg.n2 as u64, r as u64 - 1));
    Ok(h.with_meta("construction", "lift")
        .with_meta("config", json!({ "r": r, "n1": n1, "n2": cfg.n2, "base_edges": cfg.base.m() })))
}

/// All k-subsets of `0..n` that contain vertex 0.
pub fn centered_family(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || n <= k {
        return param(format!("centered family needs n > k >= 2, got n = {n}, k = {k}"));
    }
    let edges = Combinations::new(n - 1, k - 1).map(|mut e| {
        e.iter_mut().for_each(|v| *v += 1);
        e.insert(0, 0);
        e
    });
    Ok(Hypergraph::new(n, k, edges)?
        .with_meta("construction", "centered")
        .with_meta("config", json!({ "n": n, "k": k })))
}

/// Largest prime p with k < p ≤ ⌊n/k⌋.
pub fn prime_select(n: usize, k: usize) -> Result<u64> {
    if k == 0 {
        return param("k must be positive");
    }
    let top = (n / k) as u64;
    (k as u64 + 1..=top)
        .rev()
        .find(|&p| is_prime(p))
        .ok_or_else(|| Error::Param(format!("no prime p with {k} < p <= {top}")))
}

/// Runs the Q_k(r) checker and records the outcome in the metadata, or
/// returns the copy found as [`Error::Violation`].
pub fn certify_q_free(h: Hypergraph, pat: QPattern) -> Result<Hypergraph> {
    if let Some(q) = find_q_copy(&h, pat)? {
        return Err(Error::Violation(Box::new(Certificate::Q(q))));
    }
    let mut h = h;
    let entry: Value = json!({ "pattern": pat.to_string(), "pass": true });
    match h.meta_mut().get_mut("certified") {
        Some(Value::Array(list)) => list.push(entry),
        _ => {
            h.meta_mut().insert("certified".into(), json!([entry]));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{max_good_set, Provenance};
    use crate::Budget;

    fn singleton(p: u64, k: u64) -> GoodSet {
        GoodSet::user(p, k, vec![0]).unwrap()
    }

    #[test]
    fn modular_edge_count_and_membership() {
        let cfg = ModularConfig::new(5, singleton(7, 5));
        let h = construct_modular(&cfg).unwrap();
        assert_eq!(h.m(), 343);
        let parts = Partition::blocks(5, 7);
        for e in h.edges() {
            assert!(parts.is_transversal(e));
            let x: Vec<u64> = e.iter().map(|&v| v as u64 % 7).collect();
            assert!(cfg.is_edge(&x));
        }
    }

    #[test]
    fn modular_matches_brute_force_definition() {
        let mut cfg = ModularConfig::new(4, GoodSet::user(5, 4, vec![0, 1]).unwrap());
        cfg.alpha = 2;
        cfg.beta = 3;
        cfg.m = vec![3, 1, 4, 2];
        let h = construct_modular(&cfg).unwrap();
        let mut count = 0;
        for code in 0..5u64.pow(4) {
            let x: Vec<u64> = (0..4).map(|i| code / 5u64.pow(3 - i) % 5).collect();
            let e: Vec<u32> = x.iter().enumerate().map(|(i, &j)| vertex(5, i, j)).collect();
            assert_eq!(cfg.is_edge(&x), h.find_edge(&e).is_some());
            count += cfg.is_edge(&x) as usize;
        }
        assert_eq!(count, h.m());
    }

    #[test]
    fn modular_rejects_bad_configs() {
        let mut cfg = ModularConfig::new(5, singleton(7, 5));
        cfg.m = vec![1, 1, 3, 4, 5];
        assert!(matches!(construct_modular(&cfg), Err(Error::Param(_))));
        let mut bad_set = singleton(7, 5);
        bad_set.s = vec![0, 1, 2];
        assert!(matches!(construct_modular(&ModularConfig::new(5, bad_set)), Err(Error::Param(_))));
    }

    #[test]
    fn modular_with_exact_good_set() {
        let s = max_good_set(13, 5, Budget::default()).unwrap();
        assert_eq!(s.provenance, Provenance::Exact);
        let size = s.len();
        let h = construct_modular(&ModularConfig::new(5, s)).unwrap();
        assert_eq!(h.m(), 13usize.pow(3) * size);
    }

    #[test]
    fn proof_algebra_on_synthetic_tuples() {
        // e_j = x with x_j replaced by y_j is an edge iff y_j − x_j ≡ u and v + m_j u ∈ S
        let p = 11u64;
        let mut cfg = ModularConfig::new(5, GoodSet::user(p, 5, vec![0, 1]).unwrap());
        cfg.alpha = 4;
        cfg.beta = 7;
        cfg.m = vec![2, 5, 1, 3, 4];
        let x = [3u64, 9, 0, 6, 2];
        let sum: u64 = x.iter().sum();
        let wsum: u64 = x.iter().zip(&cfg.m).map(|(a, b)| a * b).sum();
        let u = modp(cfg.alpha as i128 - sum as i128, p);
        let v = modp(wsum as i128 - cfg.beta as i128, p);
        let mut s_of = Vec::new();
        for j in 0..3 {
            for y in 0..p {
                let mut e = x;
                e[j] = y;
                let s_j = (v + cfg.m[j] * u) % p;
                let predicted = modp(y as i128 - x[j] as i128, p) == u && cfg.s.s.contains(&s_j);
                assert_eq!(cfg.is_edge(&e), predicted);
            }
            s_of.push((v + cfg.m[j] * u) % p);
        }
        // the eliminated form (m3−m2)s1 + (m1−m3)s2 + (m2−m1)s3 ≡ 0
        let m: Vec<i128> = cfg.m.iter().map(|&v| v as i128).collect();
        let s: Vec<i128> = s_of.iter().map(|&v| v as i128).collect();
        let combo = (m[2] - m[1]) * s[0] + (m[0] - m[2]) * s[1] + (m[1] - m[0]) * s[2];
        assert_eq!(modp(combo, p), 0);
    }

    #[test]
    fn split_examples() {
        let h = construct_split(&SplitConfig { n: 10, k: 4, r: 3 }).unwrap();
        assert_eq!(h.m(), 20);
        assert_eq!(h.meta()["packing_edges"], 2);
        let h = construct_split(&SplitConfig { n: 10, k: 4, r: 4 }).unwrap();
        let packing = greedy_packing(5, 3, 2).unwrap();
        assert_eq!(h.m(), packing.len() * 5);
        assert!(construct_split(&SplitConfig { n: 10, k: 5, r: 3 }).is_err());
        assert!(construct_split(&SplitConfig { n: 7, k: 4, r: 3 }).is_err());
    }

    #[test]
    fn lift_counts_and_rejections() {
        let base = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let h = construct_lift(&LiftConfig { r: 3, base, n2: 4 }).unwrap();
        assert_eq!((h.m(), h.k(), h.n()), (6, 5, 7));
        let tight = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        match construct_lift(&LiftConfig { r: 3, base: tight.clone(), n2: 4 }) {
            Err(Error::Violation(c)) => match *c {
                Certificate::I(copy) => copy.validate(&tight).unwrap(),
                other => panic!("unexpected certificate {other:?}"),
            },
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn centered_counts() {
        assert_eq!(centered_family(6, 3).unwrap().m(), 10);
        assert_eq!(centered_family(9, 4).unwrap().m(), 56);
        assert!(centered_family(3, 3).is_err());
    }

    #[test]
    fn prime_selection() {
        assert_eq!(prime_select(70, 5).unwrap(), 13);
        assert_eq!(prime_select(35, 5).unwrap(), 7);
        assert!(prime_select(20, 5).is_err());
        for n in 10..200 {
            for k in 2..6 {
                if let Ok(p) = prime_select(n, k) {
                    assert!(k < p as usize && p as usize <= n / k && is_prime(p));
                }
            }
        }
    }

    #[test]
    fn certification_records_metadata() {
        let h = certify_q_free(centered_family(7, 3).unwrap(), QPattern::new(3, 3).unwrap()).unwrap();
        assert_eq!(h.meta()["certified"][0]["pattern"], "Q:3:3");
        let q = crate::patterns::generate_q(3, 3).unwrap();
        assert!(matches!(certify_q_free(q, QPattern::new(3, 3).unwrap()), Err(Error::Violation(_))));
    }
}
