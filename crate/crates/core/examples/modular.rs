//! Modular construction for k = 5 over a few primes, each certified Q_5(3)-free.

use hyperturan::constructions::{construct_modular, ModularConfig};
use hyperturan::numbers::max_good_set;
use hyperturan::patterns::{find_q_copy, QPattern};
use hyperturan::Budget;

fn main() -> hyperturan::Result<()> {
    let k = 5;
    for p in [7, 11, 13] {
        let s = max_good_set(p, k as u64, Budget::default())?;
        let h = construct_modular(&ModularConfig::new(k, s.clone()))?;
        let free = find_q_copy(&h, QPattern::new(k, 3)?)?.is_none();
        println!("p={p:>2} S={:?} n={} edges={} Q_5(3)-free={free}", s.s, h.n(), h.m());
    }
    Ok(())
}
