//! Greedy packings against their guaranteed floor, and two exact values.

use hyperturan::numbers::{exact_max_packing, greedy_packing};
use hyperturan::{binomial, Budget};

fn main() -> hyperturan::Result<()> {
    for (n, r, t) in [(12, 3, 2), (20, 4, 2), (30, 5, 3)] {
        let p = greedy_packing(n, r, t)?;
        let floor = binomial(n as u64, t as u64).div_ceil(binomial(r as u64, t as u64).pow(2));
        println!("greedy P({n},{r},{t}) >= {} (floor {floor})", p.len());
    }
    let fano = exact_max_packing(7, 3, 2, Budget::default())?;
    println!("P(7,3,2) = {}: {:?}", fano.len(), fano.edges);
    println!("P(6,3,2) = {}", exact_max_packing(6, 3, 2, Budget::default())?.len());
    Ok(())
}
