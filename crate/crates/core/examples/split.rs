//! Split construction: a packing on one half joined with all small sets of the other.

use hyperturan::constructions::{construct_split, SplitConfig};
use hyperturan::patterns::{find_q_copy, QPattern};

fn main() -> hyperturan::Result<()> {
    for (k, r) in [(4, 3), (5, 4)] {
        for n in [12, 16, 20] {
            let h = construct_split(&SplitConfig { n, k, r })?;
            let free = find_q_copy(&h, QPattern::new(k, r)?)?.is_none();
            println!("k={k} r={r} n={n:>2}: {:>5} edges, Q_{k}({r})-free={free}", h.m());
        }
    }
    Ok(())
}
