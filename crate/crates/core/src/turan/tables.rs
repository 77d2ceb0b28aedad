use std::io::Write;

use serde::Serialize;

use super::{ex_exact, ForbiddenFamily};
use crate::budget::Budget;
use crate::comb::binomial;
use crate::constructions::{construct_modular, construct_split, ModularConfig, SplitConfig};
use crate::error::{param, Result};
use crate::numbers::{behrend_good_set, max_good_set};

pub const CSV_HEADER: &str = "n,k,param,edges,reference";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub k: usize,
    pub param: String,
    pub edges: u128,
    /// n^(k−1)
    pub reference: u128,
}

/// Where the modular construction gets its good set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodSetSource {
    Exact,
    Behrend,
}

#[derive(Clone, Debug)]
pub enum GrowthSpec {
    Modular { k: usize, primes: Vec<u64>, source: GoodSetSource },
    Split { k: usize, r: usize, ns: Vec<usize> },
}

fn reference(n: usize, k: usize) -> u128 {
    (n as u128).pow(k as u32 - 1)
}

/// Edge counts of a construction over a parameter sweep, beside n^(k−1).
pub fn growth_table(spec: &GrowthSpec, budget: Budget) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    match spec {
        GrowthSpec::Modular { k, primes, source } => {
            for &p in primes {
                let s = match source {
                    GoodSetSource::Exact => max_good_set(p, *k as u64, budget)?,
                    GoodSetSource::Behrend => behrend_good_set(p, *k as u64)?,
                };
                let size = s.len();
                let h = construct_modular(&ModularConfig::new(*k, s))?;
                rows.push(GrowthRow {
                    n: h.n(),
                    k: *k,
                    param: format!("p={p} s={size}"),
                    edges: h.m() as u128,
                    reference: reference(h.n(), *k),
                });
            }
        }
        GrowthSpec::Split { k, r, ns } => {
            for &n in ns {
                let h = construct_split(&SplitConfig { n, k: *k, r: *r })?;
                rows.push(GrowthRow {
                    n,
                    k: *k,
                    param: format!("r={r}"),
                    edges: h.m() as u128,
                    reference: reference(n, *k),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[GrowthRow], mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.n, r.k, r.param, r.edges, r.reference)?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityPoint {
    pub n: usize,
    pub ex: usize,
    pub total: u128,
    pub ratio: f64,
    pub budget_hit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub k: usize,
    pub family: String,
    pub points: Vec<DensityPoint>,
    /// ex(n)/C(n,k) never increases between consecutive exact points.
    pub nonincreasing: bool,
}

impl DensityReport {
    pub fn rows(&self) -> Vec<GrowthRow> {
        self.points
            .iter()
            .map(|p| GrowthRow {
                n: p.n,
                k: self.k,
                param: format!("ratio={:.6}", p.ratio),
                edges: p.ex as u128,
                reference: p.total,
            })
            .collect()
    }
}

/// ex(n, F)/C(n, k) over `ns` (each n ≥ k), with the nonincreasing law
/// checked exactly by cross-multiplication.
pub fn density_trend(k: usize, fam: &ForbiddenFamily, ns: &[usize], budget: Budget) -> Result<DensityReport> {
    if let Some(&n) = ns.iter().find(|&&n| n < k) {
        return param(format!("n = {n} is below k = {k}"));
    }
    let mut points = Vec::new();
    for &n in ns {
        let res = ex_exact(n, k, fam, budget)?;
        let total = binomial(n as u64, k as u64);
        points.push(DensityPoint {
            n,
            ex: res.max_edges,
            total,
            ratio: res.max_edges as f64 / total as f64,
            budget_hit: res.budget_hit,
        });
    }
    let nonincreasing = points.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        a.budget_hit || b.budget_hit || b.n < a.n || b.ex as u128 * a.total <= a.ex as u128 * b.total
    });
    Ok(DensityReport {
        k,
        family: fam.id().to_string(),
        points,
        nonincreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::Hypergraph;
    use crate::numbers::greedy_packing;
    use crate::patterns::IPattern;
    use crate::turan::Member;

    #[test]
    fn modular_rows() {
        let spec = GrowthSpec::Modular { k: 5, primes: vec![7, 11, 13], source: GoodSetSource::Exact };
        let rows = growth_table(&spec, Budget::default()).unwrap();
        assert_eq!(rows.len(), 3);
        for (row, p) in rows.iter().zip([7u128, 11, 13]) {
            let s = max_good_set(p as u64, 5, Budget::default()).unwrap().len() as u128;
            assert_eq!(row.edges, p.pow(3) * s);
            assert_eq!(row.reference, (5 * p).pow(4));
        }
    }

    #[test]
    fn split_rows() {
        let rows = growth_table(&GrowthSpec::Split { k: 4, r: 3, ns: vec![12, 16, 20] }, Budget::default()).unwrap();
        for row in &rows {
            let lower = greedy_packing(row.n / 2, 2, 1).unwrap().len() as u128;
            assert_eq!(row.edges, lower * binomial(row.n.div_ceil(2) as u64, 2));
        }
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let rows = growth_table(&GrowthSpec::Split { k: 4, r: 3, ns: vec![] }, Budget::default()).unwrap();
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn densities() {
        let edge = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let fam = ForbiddenFamily::single(Member::Graph(edge)).unwrap();
        let rep = density_trend(3, &fam, &[3, 4, 5], Budget::default()).unwrap();
        assert!(rep.points.iter().all(|p| p.ex == 0) && rep.nonincreasing);
        let fam = ForbiddenFamily::single(Member::I(IPattern::new(3, 2).unwrap())).unwrap();
        let rep = density_trend(3, &fam, &[5, 6, 7], Budget::default()).unwrap();
        assert!(rep.nonincreasing);
    }
}
